"""Chain-constraint quotients of the atom algebra.

A chain x1 -> x2 -> ... -> xn kills every atom that lies inside one of the
regions (x1 + ... + xi) * x(i+1)' * x(i+2).  The closed form below computes
that elimination set directly by bit tests; the critical-pair completion in
:mod:`ims.gsbasis` re-derives it independently and the two are cross-checked
in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import expr as ex
from .atoms import AtomSet, normalize


@dataclass(frozen=True)
class CIConstraint:
    """Conditional-independence constraint: (join of A) * (join of B) given C.

    A and B are non-empty and A, B, C are pairwise disjoint subsets of the
    variable indices 1..n.  The constrained region is (+A) * (+B) with every
    C variable removed, i.e. the atoms meeting A and B and avoiding C.
    """

    a: frozenset
    b: frozenset
    c: frozenset

    def __post_init__(self):
        object.__setattr__(self, "a", frozenset(self.a))
        object.__setattr__(self, "b", frozenset(self.b))
        object.__setattr__(self, "c", frozenset(self.c))
        if not self.a or not self.b:
            raise ValueError("A and B must be non-empty")
        if self.a & self.b or self.a & self.c or self.b & self.c:
            raise ValueError("A, B, C must be pairwise disjoint")

    def validate(self, n: int):
        for i in self.a | self.b | self.c:
            if not 1 <= i <= n:
                raise ValueError(f"variable index {i} out of range 1..{n}")


def _mask(vars_: frozenset) -> int:
    m = 0
    for i in vars_:
        m |= 1 << (i - 1)
    return m


def ci_atoms(c: CIConstraint, n: int) -> AtomSet:
    """Atoms killed by the constraint: meet A and B, avoid C."""
    c.validate(n)
    ma, mb, mc = _mask(c.a), _mask(c.b), _mask(c.c)
    return AtomSet.from_atoms(
        n, (k for k in range(1 << n) if k & ma and k & mb and not k & mc)
    )


@dataclass(frozen=True)
class KSet:
    """Eliminated atoms of the n-variable chain, with per-constraint terms."""

    n: int
    eliminated: tuple
    terms: tuple  # ((i, atoms), ...) for i = 1 .. n-2

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "eliminated": list(self.eliminated),
            "terms": [{"i": i, "atoms": list(atoms)} for i, atoms in self.terms],
        }


def chain_constraint(i: int, n: int) -> CIConstraint:
    """The i-th chain constraint: (x1 + ... + xi) * x(i+1)' * x(i+2)."""
    if not 1 <= i <= n - 2:
        raise ValueError(f"chain position {i} out of range 1..{n - 2}")
    return CIConstraint(frozenset(range(1, i + 1)), frozenset({i + 2}), frozenset({i + 1}))


def k_set(n: int) -> KSet:
    """Elimination set of the n-variable chain (n >= 3)."""
    if n < 3:
        raise ValueError("chain elimination needs n >= 3")
    terms = []
    eliminated = set()
    for i in range(1, n - 1):
        low = (1 << i) - 1  # bits of x1..xi
        atoms = tuple(
            k
            for k in range(1 << n)
            if k & low and not k >> i & 1 and k >> (i + 1) & 1
        )
        terms.append((i, atoms))
        eliminated.update(atoms)
    return KSet(n, tuple(sorted(eliminated)), tuple(terms))


def _k_bits(n: int) -> int:
    bits = 0
    for k in k_set(n).eliminated:
        bits |= 1 << k
    return bits


def reduced_universe(n: int) -> AtomSet:
    """The element 1 of the chain quotient: every surviving atom."""
    return AtomSet(n, ((1 << (1 << n)) - 1) ^ _k_bits(n))


def markov_normalize(e: ex.Expr, n: int) -> AtomSet:
    """Canonical form in the chain quotient: normalize, then drop eliminated atoms."""
    if n < 3:
        raise ValueError("chain quotient needs n >= 3")
    s = normalize(e, n)
    return AtomSet(n, s.bits & ~_k_bits(n))


def check_reversal(n: int) -> bool:
    """Reversed chain xn -> ... -> x1 eliminates exactly the same atoms."""
    if n < 3:
        raise ValueError("chain elimination needs n >= 3")
    reversed_elim = set()
    for i in range(1, n - 1):
        # variables xn .. x(n-i+1) joined, x(n-i) complemented, x(n-i-1) kept
        high = 0
        for v in range(n - i + 1, n + 1):
            high |= 1 << (v - 1)
        mid = 1 << (n - i - 1)
        low = 1 << (n - i - 2)
        reversed_elim.update(
            k for k in range(1 << n) if k & high and not k & mid and k & low
        )
    return tuple(sorted(reversed_elim)) == k_set(n).eliminated
