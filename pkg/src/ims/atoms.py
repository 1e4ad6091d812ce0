"""Canonical atom-set algebra.

Every element of the complemented set algebra over n variables has a unique
normal form: either the identity 1 or a join of distinct atoms y_k.  Atom k
stands for the region in which variable i appears plain when bit (i-1) of k
is set and complemented when it is clear, so the 2^n atoms partition
everything and an element is just a set of atom indices.

``AtomSet`` packs that characteristic vector into an int.  ``eval_expr`` is
the set-theoretic oracle (plain Python sets); ``normalize`` computes the
same value bottom-up the way the rewrite rules collapse a term (generator
expansion, pairwise-disjoint atom products, idempotent joins, full sum = 1).
The two must agree on every expression; the faithful rule-by-rule engine
lives in :mod:`ims.gsbasis` for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal

from . import expr as ex

# Default cap on the variable count (2^16-bit atom vectors).  Raise it for
# sessions that genuinely need more.
MAX_N = 16


def _check_n(n: int):
    if not 1 <= n <= MAX_N:
        raise ValueError(f"variable count n={n} outside 1..{MAX_N}")


@dataclass(frozen=True)
class AtomSet:
    """Set of atom indices over n variables, packed into the int ``bits``."""

    n: int
    bits: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.bits < (1 << (1 << self.n)):
            raise ValueError("bit vector out of range for n")

    @classmethod
    def empty(cls, n: int) -> "AtomSet":
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> "AtomSet":
        return cls(n, (1 << (1 << n)) - 1)

    @classmethod
    def from_atoms(cls, n: int, atoms: Iterable[int]) -> "AtomSet":
        bits = 0
        m = 1 << n
        for k in atoms:
            if not 0 <= k < m:
                raise ValueError(f"atom index {k} out of range 0..{m - 1}")
            bits |= 1 << k
        return cls(n, bits)

    def atoms(self) -> tuple:
        return tuple(k for k in range(1 << self.n) if self.bits >> k & 1)

    def __contains__(self, k: int) -> bool:
        return 0 <= k < (1 << self.n) and bool(self.bits >> k & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    @property
    def is_full(self) -> bool:
        return self.bits == (1 << (1 << self.n)) - 1

    def to_json_dict(self) -> dict:
        if self.is_full:
            return {"n": self.n, "atoms": "one"}
        return {"n": self.n, "atoms": list(self.atoms())}

    @classmethod
    def from_json_dict(cls, d: dict) -> "AtomSet":
        n = d["n"]
        atoms = d["atoms"]
        if atoms == "one":
            return cls.full(n)
        return cls.from_atoms(n, atoms)


def _same_n(a: AtomSet, b: AtomSet):
    if a.n != b.n:
        raise ValueError(f"mismatched variable counts: {a.n} vs {b.n}")


def join(a: AtomSet, b: AtomSet) -> AtomSet:
    _same_n(a, b)
    return AtomSet(a.n, a.bits | b.bits)


def meet(a: AtomSet, b: AtomSet) -> AtomSet:
    _same_n(a, b)
    return AtomSet(a.n, a.bits & b.bits)


def complement(s: AtomSet) -> AtomSet:
    """The unique t with meet(s, t) empty and join(s, t) full."""
    return AtomSet(s.n, s.bits ^ ((1 << (1 << s.n)) - 1))


def gen_atoms(i: int, sign: Literal["present", "absent"], n: int) -> AtomSet:
    """Atoms where variable i appears plain ("present") or complemented."""
    _check_n(n)
    if not 1 <= i <= n:
        raise ValueError(f"variable index {i} out of range 1..{n}")
    if sign not in ("present", "absent"):
        raise ValueError(f"sign must be 'present' or 'absent', got {sign!r}")
    bit = i - 1
    want = 1 if sign == "present" else 0
    return AtomSet.from_atoms(n, (k for k in range(1 << n) if (k >> bit & 1) == want))


def _eval_set(e: ex.Expr, n: int, universe: frozenset) -> frozenset:
    if isinstance(e, ex.Zero):
        return frozenset()
    if isinstance(e, ex.One):
        return universe
    if isinstance(e, ex.Var):
        if not 1 <= e.index <= n:
            raise ValueError(f"variable index {e.index} out of range 1..{n}")
        bit = e.index - 1
        return frozenset(k for k in universe if k >> bit & 1)
    if isinstance(e, ex.AtomVar):
        if e.index not in universe:
            raise ValueError(f"atom index {e.index} out of range")
        return frozenset((e.index,))
    if isinstance(e, ex.Join):
        return frozenset().union(*(_eval_set(c, n, universe) for c in e.children))
    if isinstance(e, ex.Meet):
        out = universe
        for c in e.children:
            out = out & _eval_set(c, n, universe)
        return out
    if isinstance(e, ex.Complement):
        return universe - _eval_set(e.child, n, universe)
    raise TypeError(f"not an expression node: {e!r}")


def eval_expr(e: ex.Expr, n: int) -> AtomSet:
    """Set-theoretic interpretation: union / intersection / set complement."""
    _check_n(n)
    universe = frozenset(range(1 << n))
    return AtomSet.from_atoms(n, _eval_set(e, n, universe))


def _norm_bits(e: ex.Expr, n: int, full: int) -> int:
    # Each branch is the fixpoint of the corresponding rewrite rule family:
    # generators expand to their atom joins, products of atom joins collapse
    # through y_j*y_k = 0 and y_k*y_k = y_k, duplicate joins collapse, and
    # the all-atoms join is the element 1.
    if isinstance(e, ex.Zero):
        return 0
    if isinstance(e, ex.One):
        return full
    if isinstance(e, ex.Var):
        if not 1 <= e.index <= n:
            raise ValueError(f"variable index {e.index} out of range 1..{n}")
        return gen_atoms(e.index, "present", n).bits
    if isinstance(e, ex.AtomVar):
        if not 0 <= e.index < (1 << n):
            raise ValueError(f"atom index {e.index} out of range")
        return 1 << e.index
    if isinstance(e, ex.Join):
        bits = 0
        for c in e.children:
            bits |= _norm_bits(c, n, full)
        return bits
    if isinstance(e, ex.Meet):
        bits = full
        for c in e.children:
            bits &= _norm_bits(c, n, full)
        return bits
    if isinstance(e, ex.Complement):
        return full ^ _norm_bits(e.child, n, full)
    raise TypeError(f"not an expression node: {e!r}")


def normalize(e: ex.Expr, n: int) -> AtomSet:
    """Canonical atom set of ``e``, computed by bottom-up rule collapse.

    Agrees with :func:`eval_expr` on every well-formed expression; the two
    are kept as independent routes on purpose.
    """
    _check_n(n)
    full = (1 << (1 << n)) - 1
    return AtomSet(n, _norm_bits(e, n, full))


def render_atoms(s: AtomSet, universe: AtomSet | None = None) -> str:
    """Canonical text form: "0", "1" (= the given universe) or an atom join."""
    top = universe.bits if universe is not None else (1 << (1 << s.n)) - 1
    if s.bits == 0:
        return "0"
    if s.bits == top:
        return "1"
    return " + ".join(f"y{k}" for k in s.atoms())
