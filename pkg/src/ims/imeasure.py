"""Entropy measures on atom sets.

A joint distribution over discrete variables x1..xn assigns every non-empty
subset T its joint entropy H(X_T) in bits.  There is a unique signed
measure mu on the non-zero atoms, with mu(atom 0) = 0 by convention, such
that summing mu over the atoms meeting T reproduces H(X_T); ``atom_measures``
computes it by signed subset-lattice (Moebius) inversion, and
``atom_measures_dense`` solves the incidence system directly as a
cross-check.  ``symbolic_measure`` inverts the same system with exact
rational coefficients, turning any atom set into a +/- combination of joint
entropies that is valid for every distribution.

Conventions: variable i corresponds to pmf axis i-1 and to bit i-1 of both
atom indices and variable-subset masks; entropies are in bits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import expr as ex
from .atoms import AtomSet, normalize
from .markov import chain_constraint, ci_atoms, k_set, markov_normalize

PMF_TOLERANCE = 1e-12
MEASURE_TOLERANCE = 1e-8
COUNTEREXAMPLE_TOLERANCE = 1e-6


def _sizes(n: int, alphabet_sizes) -> tuple:
    if isinstance(alphabet_sizes, int):
        sizes = (alphabet_sizes,) * n
    else:
        sizes = tuple(alphabet_sizes)
    if len(sizes) != n or any(s < 1 for s in sizes):
        raise ValueError("need one alphabet size >= 1 per variable")
    return sizes


@dataclass(frozen=True)
class JointDistribution:
    """Probability mass table over the product alphabet of n variables."""

    n: int
    alphabets: tuple
    pmf: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "alphabets", _sizes(self.n, self.alphabets))
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.shape != self.alphabets:
            raise ValueError(f"pmf shape {pmf.shape} != alphabets {self.alphabets}")
        if np.any(pmf < 0):
            raise ValueError("negative probability mass")
        total = float(pmf.sum())
        if abs(total - 1.0) > PMF_TOLERANCE:
            raise ValueError(f"total mass {total} is not 1 within {PMF_TOLERANCE}")
        object.__setattr__(self, "pmf", pmf)

    def marginal(self, var_mask: int) -> np.ndarray:
        """Marginal pmf of the variables in ``var_mask`` (bit i-1 = variable i)."""
        drop = tuple(i for i in range(self.n) if not var_mask >> i & 1)
        return self.pmf.sum(axis=drop) if drop else self.pmf

    def to_json_dict(self) -> dict:
        entries = []
        for idx in np.ndindex(*self.alphabets):
            p = float(self.pmf[idx])
            if p > 0:
                entries.append({"outcome": list(idx), "p": p})
        return {"n": self.n, "alphabets": list(self.alphabets), "pmf": entries}

    @classmethod
    def from_json_dict(cls, d: dict) -> "JointDistribution":
        n = d["n"]
        sizes = _sizes(n, d["alphabets"])
        pmf = np.zeros(sizes)
        for entry in d["pmf"]:
            outcome = tuple(entry["outcome"])
            if len(outcome) != n or any(
                not 0 <= o < s for o, s in zip(outcome, sizes)
            ):
                raise ValueError(f"outcome {outcome} out of range")
            pmf[outcome] += entry["p"]
        return cls(n, sizes, pmf)


def load_distribution(path) -> JointDistribution:
    with open(path) as f:
        return JointDistribution.from_json_dict(json.load(f))


def _entropy(p: np.ndarray) -> float:
    flat = p.ravel()
    nz = flat[flat > 0]
    return float(-(nz * np.log2(nz)).sum())


@dataclass(frozen=True)
class EntropyVector:
    """Joint entropies H(X_T) in bits, indexed by variable-subset mask."""

    n: int
    h: np.ndarray  # length 2^n, entry 0 fixed at 0

    def of_mask(self, var_mask: int) -> float:
        return float(self.h[var_mask])

    def of_vars(self, vars_) -> float:
        m = 0
        for i in vars_:
            m |= 1 << (i - 1)
        return float(self.h[m])


def joint_entropies(d: JointDistribution) -> EntropyVector:
    """Shannon entropy in bits of every non-empty marginal."""
    n = d.n
    h = np.zeros(1 << n)
    for mask in range(1, 1 << n):
        h[mask] = _entropy(d.marginal(mask))
    return EntropyVector(n, h)


@dataclass(frozen=True)
class AtomMeasures:
    """Signed measure per atom index; atom 0 carries 0 by convention."""

    n: int
    mu: np.ndarray  # length 2^n


def atom_measures(h: EntropyVector) -> AtomMeasures:
    """Unique measure with sum{mu(k) : k meets T} = H(X_T) for all T.

    Computed by the signed subset-sum inversion of
    G(V) = H(all) - H(complement of V) = sum{mu(k) : k inside V}.
    """
    n = h.n
    m = 1 << n
    full = m - 1
    g = np.empty(m)
    for v in range(m):
        g[v] = h.h[full] - h.h[full ^ v]
    mu = g.copy()
    for b in range(n):
        bit = 1 << b
        for s in range(m):
            if s & bit:
                mu[s] -= mu[s ^ bit]
    mu[0] = 0.0
    return AtomMeasures(n, mu)


def atom_measures_dense(h: EntropyVector) -> AtomMeasures:
    """Same measure via the dense (2^n - 1) x (2^n - 1) linear solve."""
    n = h.n
    m = 1 << n
    size = m - 1
    a = np.zeros((size, size))
    b = np.zeros(size)
    for t in range(1, m):
        b[t - 1] = h.h[t]
        for k in range(1, m):
            if t & k:
                a[t - 1, k - 1] = 1.0
    mu = np.zeros(m)
    mu[1:] = np.linalg.solve(a, b)
    return AtomMeasures(n, mu)


def measure_of(s: AtomSet, m: AtomMeasures) -> float:
    """Measure of an atom set: sum of mu over its atoms."""
    if s.n != m.n:
        raise ValueError(f"mismatched variable counts: {s.n} vs {m.n}")
    return float(sum(m.mu[k] for k in s.atoms()))


@dataclass(frozen=True)
class EntropyCombo:
    """Exact rational combination sum c_T * H(X_T) over non-empty subsets."""

    n: int
    coeffs: dict  # variable-subset mask -> Fraction, no zeros

    def evaluate(self, h: EntropyVector) -> float:
        if h.n != self.n:
            raise ValueError("mismatched variable counts")
        return float(sum(float(c) * h.h[mask] for mask, c in self.coeffs.items()))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        def vars_of(mask):
            return tuple(i + 1 for i in range(self.n) if mask >> i & 1)
        parts = []
        for mask in sorted(self.coeffs, key=vars_of):
            c = self.coeffs[mask]
            name = "H(" + ",".join(f"x{i}" for i in vars_of(mask)) + ")"
            if c == 1:
                parts.append(f"+{name}")
            elif c == -1:
                parts.append(f"-{name}")
            else:
                sign = "+" if c > 0 else "-"
                parts.append(f"{sign}{abs(c)}*{name}")
        return " ".join(parts)

    def to_json_dict(self) -> dict:
        def vars_of(mask):
            return [i + 1 for i in range(self.n) if mask >> i & 1]
        return {
            "n": self.n,
            "terms": [
                {
                    "vars": vars_of(mask),
                    "num": self.coeffs[mask].numerator,
                    "den": self.coeffs[mask].denominator,
                }
                for mask in sorted(self.coeffs, key=lambda m: (m.bit_count(), m))
            ],
        }


def symbolic_measure(s: AtomSet) -> EntropyCombo:
    """Entropy decomposition of an atom set, exact for every distribution.

    Expands each atom's measure as the signed subset sum behind
    :func:`atom_measures`, collecting integer coefficients per subset.
    """
    n = s.n
    full = (1 << n) - 1
    coeffs: dict = {}

    def add(mask, c):
        if mask == 0:
            return
        nc = coeffs.get(mask, 0) + c
        if nc:
            coeffs[mask] = nc
        else:
            coeffs.pop(mask, None)

    for k in s.atoms():
        if k == 0:
            continue
        v = k
        while True:  # subsets v of the variable set of atom k
            sign = -1 if (k ^ v).bit_count() % 2 else 1
            add(full, sign)          # from the H(all) part of G(v)
            add(full ^ v, -sign)     # from the -H(complement of v) part
            if v == 0:
                break
            v = (v - 1) & k
    return EntropyCombo(n, {mask: Fraction(c) for mask, c in coeffs.items()})


def random_distribution(n: int, alphabet_sizes, seed: int) -> JointDistribution:
    """Joint pmf drawn uniformly from the simplex, deterministic per seed."""
    sizes = _sizes(n, alphabet_sizes)
    rng = np.random.default_rng(seed)
    cells = int(np.prod(sizes))
    pmf = rng.dirichlet(np.ones(cells)).reshape(sizes)
    return JointDistribution(n, sizes, pmf)


def random_markov_distribution(n: int, alphabet_sizes, seed: int) -> JointDistribution:
    """Chain-structured pmf: a marginal for x1 and one kernel per step.

    The product construction makes each x(i+1) depend on x_i alone, so the
    chain constraints hold exactly up to float rounding.
    """
    sizes = _sizes(n, alphabet_sizes)
    rng = np.random.default_rng(seed)
    pmf = rng.dirichlet(np.ones(sizes[0]))
    for i in range(1, n):
        kernel = rng.dirichlet(np.ones(sizes[i]), size=sizes[i - 1])
        pmf = pmf[..., None] * kernel
    return JointDistribution(n, sizes, pmf)


@dataclass(frozen=True)
class Counterexample:
    seed: int
    f1: float
    f2: float
    n: int
    alphabets: tuple


@dataclass(frozen=True)
class IdentityVerdict:
    equal: bool
    counterexample: Counterexample | None = None


def check_identity(e1: ex.Expr, e2: ex.Expr, n: int, mode: str = "free",
                   trials: int = 1000, seed: int = 0,
                   alphabet_sizes=2) -> IdentityVerdict:
    """Decide equality by canonical forms; hunt a numeric witness otherwise.

    The verdict rests on the canonical atom sets alone.  When they differ,
    seeded random distributions (chain-structured in markov mode) are
    searched for one separating the two measures by more than the reporting
    tolerance; failing to find one does not flip the verdict.
    """
    if mode not in ("free", "markov"):
        raise ValueError(f"mode must be 'free' or 'markov', got {mode!r}")
    if mode == "markov":
        c1, c2 = markov_normalize(e1, n), markov_normalize(e2, n)
    else:
        c1, c2 = normalize(e1, n), normalize(e2, n)
    if c1 == c2:
        return IdentityVerdict(True)
    # numeric evaluation uses the unquotiented sets: that is the measure a
    # real distribution induces
    s1, s2 = normalize(e1, n), normalize(e2, n)
    sizes = _sizes(n, alphabet_sizes)
    for t in range(trials):
        if mode == "markov":
            d = random_markov_distribution(n, sizes, seed + t)
        else:
            d = random_distribution(n, sizes, seed + t)
        m = atom_measures(joint_entropies(d))
        f1 = measure_of(s1, m)
        f2 = measure_of(s2, m)
        if abs(f1 - f2) > COUNTEREXAMPLE_TOLERANCE:
            return IdentityVerdict(False, Counterexample(seed + t, f1, f2, n, sizes))
    return IdentityVerdict(False)


@dataclass(frozen=True)
class VanishingReport:
    """Per-constraint measure sums and per-atom values for a chain pmf."""

    n: int
    constraint_sums: tuple  # ((i, value), ...)
    atom_values: tuple      # ((atom, value), ...) over the eliminated set
    tolerance: float

    @property
    def ok(self) -> bool:
        return all(abs(v) <= self.tolerance for _, v in self.constraint_sums)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "tolerance": self.tolerance,
            "ok": self.ok,
            "constraints": [
                {"i": i, "sum": v} for i, v in self.constraint_sums
            ],
            "atoms": [{"atom": k, "mu": v} for k, v in self.atom_values],
        }


def verify_markov_vanishing(d: JointDistribution, n: int | None = None,
                            tolerance: float = MEASURE_TOLERANCE) -> VanishingReport:
    """Measure every chain-constraint region of a distribution.

    For a genuine chain each constraint sum vanishes; the per-atom values
    over the eliminated set are reported for inspection but not judged.
    """
    if n is None:
        n = d.n
    if n != d.n:
        raise ValueError("distribution was built for a different n")
    if n < 3:
        raise ValueError("chain verification needs n >= 3")
    m = atom_measures(joint_entropies(d))
    sums = []
    for i in range(1, n - 1):
        region = ci_atoms(chain_constraint(i, n), n)
        sums.append((i, measure_of(region, m)))
    atom_vals = tuple((k, float(m.mu[k])) for k in k_set(n).eliminated)
    return VanishingReport(n, tuple(sums), atom_vals, tolerance)
