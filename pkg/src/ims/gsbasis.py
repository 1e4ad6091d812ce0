"""Exact critical-pair machinery over the free commutative semiring.

Elements of the free commutative semiring on the session's generators
(x1..xn, their formal complements x1'..xn', and the atom symbols
y0..y(2^n-1)) are finite multisets of monomials: a join-sum u1 + ... + uk
with the empty multiset standing for 0.  Polynomials attach exact rational
coefficients to such sums; note that the basis element 0 (the empty sum) is
*not* the zero polynomial.

The monomial ordering ranks generators x1 > x2 > ... > xn > x1' > ... >
xn' > y0 > ... > y(m-1).  Monomials compare by their generator sequences
sorted largest-first, lexicographically, with a proper prefix ranking
below; sums compare the same way one level up, on their monomial sequences
sorted largest-first.  Both comparisons are total, compatible with
multiplication and with extending the sum, and have 0 as minimum, which is
what the reduction and completion loops rely on.

A relation is a monic two-term polynomial lhs - rhs.  Rewriting replaces an
instance a*lhs (joined with any remainder u) by a*rhs, where a is a
monomial multiplier distributed over every summand.  ``compose`` builds the
overlap polynomials of two relations from every pair of leading-sum
monomials, ``try_reduce`` reduces to an irreducible normal form,
``is_gs_basis`` checks that every composition reduces to zero exactly, and
``complete`` adjoins non-trivial remainders until that holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from importlib import resources

from . import expr as ex

# ---------------------------------------------------------------------------
# generators
#
# Generator codes for a session with n variables:
#   x_i  -> i - 1        (0 .. n-1)
#   x_i' -> n + i - 1    (n .. 2n-1)
#   y_k  -> 2n + k       (2n .. 2n + 2^n - 1)
# Smaller code = more senior generator, so int comparison of codes gives the
# generator order reversed.

REDUCE_BUDGET = 200_000


class ReductionBudgetError(RuntimeError):
    """Rewriting exceeded its step budget; signals an engine bug."""


def x_code(i: int, n: int) -> int:
    return i - 1


def xc_code(i: int, n: int) -> int:
    return n + i - 1


def y_code(k: int, n: int) -> int:
    return 2 * n + k


def gen_name(code: int, n: int) -> str:
    if code < n:
        return f"x{code + 1}"
    if code < 2 * n:
        return f"x{code - n + 1}'"
    return f"y{code - 2 * n}"


def _gen_render_key(code: int, n: int) -> tuple:
    # Factor order for printing: x1, x2', x3, ... then atoms; the stored
    # order is by seniority which reads awkwardly in relation files.
    if code < n:
        return (0, code, 0)
    if code < 2 * n:
        return (0, code - n, 1)
    return (1, code - 2 * n, 0)


# ---------------------------------------------------------------------------
# monomials: tuples of (code, exponent) sorted by code ascending

UNIT = ()


def mono(pairs) -> tuple:
    exps: dict = {}
    for c, e in pairs:
        if e < 0:
            raise ValueError("negative exponent")
        if e:
            exps[c] = exps.get(c, 0) + e
    return tuple(sorted(exps.items()))


def cmp_monomial(a: tuple, b: tuple) -> int:
    """Total monomial order; the unit monomial is the minimum.

    Walking both exponent lists most-senior-generator first, the first
    difference decides: holding more of the senior generator wins, which is
    exactly the largest-first sequence comparison with the prefix rule.
    """
    ia = ib = 0
    while ia < len(a) and ib < len(b):
        ca, ea = a[ia]
        cb, eb = b[ib]
        if ca == cb:
            if ea != eb:
                return 1 if ea > eb else -1
            ia += 1
            ib += 1
        elif ca < cb:
            return 1
        else:
            return -1
    if ia < len(a):
        return 1
    if ib < len(b):
        return -1
    return 0


_MONO_KEY = cmp_to_key(cmp_monomial)


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for c, e in b:
        exps[c] = exps.get(c, 0) + e
    return tuple(sorted(exps.items()))


def mono_div(a: tuple, b: tuple) -> tuple | None:
    """a / b, or None when b does not divide a."""
    if not b:
        return a
    exps = dict(a)
    for c, e in b:
        have = exps.get(c, 0)
        if have < e:
            return None
        if have == e:
            del exps[c]
        else:
            exps[c] = have - e
    return tuple(sorted(exps.items()))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    exps = dict(a)
    for c, e in b:
        if exps.get(c, 0) < e:
            exps[c] = e
    return tuple(sorted(exps.items()))


def render_monomial(m: tuple, n: int) -> str:
    if not m:
        return "1"
    factors = []
    for c, e in sorted(m, key=lambda p: _gen_render_key(p[0], n)):
        factors.extend([gen_name(c, n)] * e)
    return " * ".join(factors)


# ---------------------------------------------------------------------------
# sum terms (RigTerms): tuples of monomials sorted descending

THETA = ()
ONE_TERM = (UNIT,)


def rigterm(monomials) -> tuple:
    return tuple(sorted(monomials, key=_MONO_KEY, reverse=True))


def cmp_rigterm(u: tuple, v: tuple) -> int:
    """Total order on sum terms: largest-first lex with the prefix rule."""
    for mu, mv in zip(u, v):
        c = cmp_monomial(mu, mv)
        if c:
            return c
    if len(u) > len(v):
        return 1
    if len(u) < len(v):
        return -1
    return 0


_TERM_KEY = cmp_to_key(cmp_rigterm)


def term_mul_mono(t: tuple, a: tuple) -> tuple:
    # multiplying every summand by a fixed monomial preserves the order
    if not a:
        return t
    return tuple(mono_mul(m, a) for m in t)


def term_union(t: tuple, u: tuple) -> tuple:
    out = []
    i = j = 0
    while i < len(t) and j < len(u):
        if cmp_monomial(t[i], u[j]) >= 0:
            out.append(t[i])
            i += 1
        else:
            out.append(u[j])
            j += 1
    out.extend(t[i:])
    out.extend(u[j:])
    return tuple(out)


def term_sub(t: tuple, u: tuple) -> tuple:
    """Multiset difference t - u; u must be contained in t."""
    out = []
    j = 0
    for m in t:
        if j < len(u) and m == u[j]:
            j += 1
        else:
            out.append(m)
    if j < len(u):
        raise ValueError("not a sub-multiset")
    return tuple(out)


def term_contains(t: tuple, u: tuple) -> bool:
    j = 0
    for m in t:
        if j < len(u) and m == u[j]:
            j += 1
    return j == len(u)


def term_sup(t: tuple, u: tuple) -> tuple:
    """Entry-wise multiplicity maximum (least common join-multiple)."""
    out = []
    i = j = 0
    while i < len(t) and j < len(u):
        c = cmp_monomial(t[i], u[j])
        if c > 0:
            out.append(t[i])
            i += 1
        elif c < 0:
            out.append(u[j])
            j += 1
        else:
            m = t[i]
            ci = cj = 0
            while i < len(t) and t[i] == m:
                ci += 1
                i += 1
            while j < len(u) and u[j] == m:
                cj += 1
                j += 1
            out.extend([m] * max(ci, cj))
    out.extend(t[i:])
    out.extend(u[j:])
    return tuple(out)


def term_product(t: tuple, u: tuple) -> tuple:
    """Semiring product: all pairwise monomial products."""
    return rigterm(mono_mul(a, b) for a in t for b in u)


def render_rigterm(t: tuple, n: int) -> str:
    if not t:
        return "0"
    mons = sorted(
        t, key=lambda m: tuple(_gen_render_key(c, n) for c, e in m for _ in range(e))
    )
    return " + ".join(render_monomial(m, n) for m in mons)


# ---------------------------------------------------------------------------
# polynomials: dict mapping sum term -> non-zero exact coefficient


def poly_add_term(p: dict, t: tuple, c):
    nc = p.get(t, 0) + c
    if nc:
        p[t] = nc
    else:
        p.pop(t, None)


def poly_leading(p: dict) -> tuple:
    """(leading term, coefficient) of a non-zero polynomial."""
    if not p:
        raise ValueError("zero polynomial has no leading term")
    best = None
    for t in p:
        if best is None or cmp_rigterm(t, best) > 0:
            best = t
    return best, p[best]


def poly_monic(p: dict) -> dict:
    if not p:
        return {}
    _, c = poly_leading(p)
    if c == 1:
        return dict(p)
    if c == -1:
        return {t: -v for t, v in p.items()}
    inv = 1 / Fraction(c)
    return {t: v * inv for t, v in p.items()}


def _coeff_norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def freeze_poly(p: dict) -> tuple:
    return tuple(
        sorted(((t, _coeff_norm(c)) for t, c in p.items()), key=lambda tc: _TERM_KEY(tc[0]), reverse=True)
    )


def thaw_poly(fp: tuple) -> dict:
    return dict(fp)


def render_relation(p: dict, n: int) -> str:
    """Render a monic two-term relation as "lhs = rhs"."""
    items = freeze_poly(p)
    if len(items) != 2 or items[0][1] != 1 or items[1][1] != -1:
        raise ValueError("only binomial relations have a text form")
    return f"{render_rigterm(items[0][0], n)} = {render_rigterm(items[1][0], n)}"


# ---------------------------------------------------------------------------
# conversion from expression trees (free semiring reading, no collapsing)


def rigterm_of_expr(e: ex.Expr, n: int) -> tuple:
    """Read an expression as an element of the free semiring.

    Complement is only a formal generator here, so it is accepted on
    variables alone; products distribute, joins concatenate.
    """
    if isinstance(e, ex.Zero):
        return THETA
    if isinstance(e, ex.One):
        return ONE_TERM
    if isinstance(e, ex.Var):
        if not 1 <= e.index <= n:
            raise ValueError(f"variable index {e.index} out of range 1..{n}")
        return (mono([(x_code(e.index, n), 1)]),)
    if isinstance(e, ex.AtomVar):
        if not 0 <= e.index < (1 << n):
            raise ValueError(f"atom index {e.index} out of range")
        return (mono([(y_code(e.index, n), 1)]),)
    if isinstance(e, ex.Complement):
        if isinstance(e.child, ex.Var):
            return (mono([(xc_code(e.child.index, n), 1)]),)
        raise ValueError("free terms only complement variables")
    if isinstance(e, ex.Join):
        out = THETA
        for c in e.children:
            out = term_union(out, rigterm_of_expr(c, n))
        return out
    if isinstance(e, ex.Meet):
        out = ONE_TERM
        for c in e.children:
            out = term_product(out, rigterm_of_expr(c, n))
        return out
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class Presentation:
    """A generator count plus monic relations (frozen polynomials)."""

    n: int
    relations: tuple

    def polys(self) -> list:
        return [thaw_poly(fp) for fp in self.relations]

    def __len__(self) -> int:
        return len(self.relations)


def orient_relation(lhs: tuple, rhs: tuple) -> dict:
    """Monic relation polynomial from a pair of semiring elements."""
    c = cmp_rigterm(lhs, rhs)
    if c == 0:
        raise ValueError("degenerate relation: both sides equal")
    if c < 0:
        lhs, rhs = rhs, lhs
    return {lhs: 1, rhs: -1} if lhs != rhs else {}


def make_presentation(n: int, polys) -> Presentation:
    rels = []
    for p in polys:
        if not p:
            continue
        q = poly_monic(p)
        lead, _ = poly_leading(q)
        if lead == THETA:
            raise ValueError("relation with zero leading term")
        rels.append(freeze_poly(q))
    return Presentation(n, tuple(rels))


def parse_presentation(text: str, n: int) -> Presentation:
    polys = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count("=") != 1:
            raise ValueError(f"line {lineno}: expected exactly one '='")
        left, right = line.split("=")
        try:
            lhs = rigterm_of_expr(ex.parse(left, n), n)
            rhs = rigterm_of_expr(ex.parse(right, n), n)
        except ex.ParseError as err:
            raise ValueError(f"line {lineno}: {err}") from err
        polys.append(orient_relation(lhs, rhs))
    return make_presentation(n, polys)


def render_presentation(p: Presentation) -> str:
    return "\n".join(render_relation(thaw_poly(fp), p.n) for fp in p.relations) + "\n"


def atom_presentation(n: int) -> Presentation:
    """Reduced defining relations of the complemented atom algebra.

    Products of atoms collapse (y_k*y_k = y_k, y_k*y_j = 0), each generator
    and its complement expand to their atom joins, the full atom join is 1,
    and joining anything with 1 gives 1.
    """
    m = 1 << n
    y = lambda k: mono([(y_code(k, n), 1)])
    polys = []
    for k in range(m):
        polys.append(orient_relation((mono_mul(y(k), y(k)),), (y(k),)))
    for k in range(m):
        for j in range(k + 1, m):
            polys.append(orient_relation((mono_mul(y(k), y(j)),), THETA))
    for i in range(1, n + 1):
        bit = i - 1
        present = rigterm(y(k) for k in range(m) if k >> bit & 1)
        absent = rigterm(y(k) for k in range(m) if not k >> bit & 1)
        polys.append(orient_relation((mono([(x_code(i, n), 1)]),), present))
        polys.append(orient_relation((mono([(xc_code(i, n), 1)]),), absent))
    polys.append(orient_relation(rigterm(y(k) for k in range(m)), ONE_TERM))
    for k in range(m):
        polys.append(orient_relation(term_union(ONE_TERM, (y(k),)), ONE_TERM))
    polys.append(orient_relation(term_union(ONE_TERM, ONE_TERM), ONE_TERM))
    return make_presentation(n, polys)


def markov_presentation(n: int) -> Presentation:
    """Atom relations plus the chain constraints (x1+..+xi)*x(i+1)'*x(i+2) = 0."""
    if n < 3:
        raise ValueError("chain presentations need n >= 3")
    base = atom_presentation(n)
    polys = base.polys()
    for i in range(1, n - 1):
        head = rigterm(mono([(x_code(v, n), 1)]) for v in range(1, i + 1))
        tail = (mono([(xc_code(i + 1, n), 1), (x_code(i + 2, n), 1)]),)
        polys.append(orient_relation(term_product(head, tail), THETA))
    return make_presentation(n, polys)


_BUNDLED = {
    "r1_comp": ("r1_comp.pres", 2),
    "markov_3": ("markov_3.pres", 3),
    "markov_4": ("markov_4.pres", 4),
    "markov_5": ("markov_5.pres", 5),
}


def bundled_presentation_names() -> tuple:
    return tuple(sorted(_BUNDLED))


def bundled_presentation_text(name: str) -> tuple:
    """(text, n) of a bundled presentation file."""
    if name not in _BUNDLED:
        raise KeyError(f"no bundled presentation {name!r}")
    fname, n = _BUNDLED[name]
    text = resources.files("ims").joinpath("presentations", fname).read_text()
    return text, n


def bundled_presentation(name: str) -> Presentation:
    text, n = bundled_presentation_text(name)
    return parse_presentation(text, n)


# ---------------------------------------------------------------------------
# rewriting


class _Rewriter:
    """Reduction engine over a fixed relation list.

    Relations are indexed by the most senior generator of their leading
    sum's largest monomial, so finding a rewrite site scans only plausible
    candidates.  Site lookups are cached per term; the cache is only valid
    for this relation list.
    """

    def __init__(self, relations):
        self.rels = []
        self.buckets = {}
        self.unit_rels = []
        for rid, p in enumerate(relations):
            lead, c = poly_leading(p)
            if c != 1:
                raise ValueError("relations must be monic")
            if lead == THETA:
                raise ValueError("relation with zero leading term")
            tail = tuple((t, v) for t, v in p.items() if t != lead)
            mstar = lead[0]
            self.rels.append((lead, tail, mstar))
            if mstar == UNIT:
                self.unit_rels.append(rid)
            else:
                self.buckets.setdefault(mstar[0][0], []).append(rid)
        # deleters: single-monomial lead rewriting to 0; once one is chosen,
        # repeating it on every matching monomial is a legal step sequence
        # and skips the intermediate terms
        self.is_deleter = [
            len(lead) == 1 and tail == ((THETA, -1),) and mstar != UNIT
            for lead, tail, mstar in self.rels
        ]
        self._sites = {}
        self._nf = {}
        self._steps = 0

    def _find_site(self, t: tuple):
        seen_mons = set()
        for u in t:
            if u in seen_mons:
                continue
            seen_mons.add(u)
            cands = set(self.unit_rels)
            for code, _ in u:
                cands.update(self.buckets.get(code, ()))
            for rid in sorted(cands):
                lead, _, mstar = self.rels[rid]
                a = mono_div(u, mstar)
                if a is None:
                    continue
                alead = term_mul_mono(lead, a)
                if term_contains(t, alead):
                    return rid, a, term_sub(t, alead)
        return None

    def site(self, t: tuple):
        try:
            return self._sites[t]
        except KeyError:
            s = self._find_site(t)
            self._sites[t] = s
            return s

    def _expand(self, t: tuple, s) -> list:
        """One rewrite step on a bare term: [(child term, coefficient)]."""
        rid, a, rest = s
        _, tail, _ = self.rels[rid]
        return [(term_union(term_mul_mono(s_, a), rest), -c_) for s_, c_ in tail]

    def nf(self, t: tuple, budget: int = REDUCE_BUDGET) -> dict:
        """Normal form of the single term ``t``, memoized.

        Site choice is a function of the term alone, so reduction is linear
        in the terms and the per-term normal form can be shared across all
        polynomials reduced by this relation set.
        """
        memo = self._nf
        if t in memo:
            return memo[t]
        start = self._steps
        stack = [t]
        while stack:
            cur = stack[-1]
            if cur in memo:
                stack.pop()
                continue
            s = self.site(cur)
            if s is None:
                memo[cur] = {cur: 1}
                stack.pop()
                continue
            rid = s[0]
            if self.is_deleter[rid]:
                mstar = self.rels[rid][2]
                kept = tuple(m for m in cur if mono_div(m, mstar) is None)
                children = [(kept, 1)]
            else:
                children = self._expand(cur, s)
            pending = [c for c, _ in children if c not in memo]
            if pending:
                stack.extend(pending)
                continue
            self._steps += 1
            if self._steps - start > budget:
                raise ReductionBudgetError(f"rewriting exceeded {budget} steps")
            out: dict = {}
            for child, coeff in children:
                for ct, cc in memo[child].items():
                    poly_add_term(out, ct, coeff * cc)
            memo[cur] = out
            stack.pop()
        return memo[t]

    def reduce(self, p: dict, bound: tuple | None = None, budget: int = REDUCE_BUDGET) -> dict:
        h: dict = {}
        for t, c in p.items():
            if bound is not None and cmp_rigterm(t, bound) >= 0:
                poly_add_term(h, t, c)  # sites must stay strictly below the bound
                continue
            for nt, nc in self.nf(t, budget).items():
                poly_add_term(h, nt, nc * c)
        return h


def try_reduce(h: dict, r: Presentation, w: tuple | None = None,
               budget: int = REDUCE_BUDGET) -> tuple:
    """Reduce ``h`` by the relations of ``r``; returns (remainder, trivial).

    With ``w`` given, rewriting only touches terms strictly below ``w``.
    ``trivial`` is True exactly when the remainder is the zero polynomial.
    """
    rw = _Rewriter(r.polys())
    rem = rw.reduce(h, bound=w, budget=budget)
    return rem, not rem


# ---------------------------------------------------------------------------
# compositions


def compose(f: dict, g: dict) -> list:
    """All overlap compositions of two monic polynomials.

    For every pair (u, v) of monomials from the leading sums, with
    L = lcm(u, v) = a*u = b*v, the ambiguity is w = sup(a*fbar, b*gbar) and
    the composition is (f*a + s) - (b*g + t) where s, t are the multiset
    completions making both leading images equal w.  The cancelling +w is
    never materialized.  Returns [(w, composition)], one per distinct
    monomial pair, and checks that every non-zero composition stays
    strictly below its ambiguity.
    """
    lf, cf = poly_leading(f)
    lg, cg = poly_leading(g)
    if cf != 1 or cg != 1:
        raise ValueError("compose needs monic polynomials")
    f_tail = [(t, c) for t, c in f.items() if t != lf]
    g_tail = [(t, c) for t, c in g.items() if t != lg]
    out = []
    seen = set()
    single = len(lf) == 1 and len(lg) == 1
    for u in lf:
        for v in lg:
            if (u, v) in seen:
                continue
            seen.add((u, v))
            lcm_uv = mono_lcm(u, v)
            a = mono_div(lcm_uv, u)
            b = mono_div(lcm_uv, v)
            if single:
                # both leading sums are one monomial, so w = {lcm} and the
                # multiset completions are empty
                w = (lcm_uv,)
                s = t = THETA
            else:
                af = term_mul_mono(lf, a)
                bg = term_mul_mono(lg, b)
                w = term_sup(af, bg)
                s = term_sub(w, af)
                t = term_sub(w, bg)
            h: dict = {}
            for term, c in f_tail:
                poly_add_term(h, term_union(term_mul_mono(term, a), s), c)
            for term, c in g_tail:
                poly_add_term(h, term_union(term_mul_mono(term, b), t), -c)
            if h:
                lead, _ = poly_leading(h)
                if cmp_rigterm(lead, w) >= 0:
                    raise AssertionError("composition not below its ambiguity")
            out.append((w, h))
    return out


@dataclass(frozen=True)
class GsFailure:
    """A composition that did not reduce to zero."""

    w: tuple
    i: int
    j: int
    remainder: tuple


def _pair_iter(count: int):
    for i in range(count):
        for j in range(i, count):
            yield i, j


def is_gs_basis(r: Presentation, n: int | None = None,
                max_failures: int | None = None) -> tuple:
    """Check every composition of every relation pair for triviality.

    Returns (ok, failures).  ``max_failures`` stops the enumeration early
    once that many non-trivial compositions have been collected.
    """
    if n is not None and n != r.n:
        raise ValueError("presentation was built for a different n")
    polys = r.polys()
    rw = _Rewriter(polys)
    failures = []
    for i, j in _pair_iter(len(polys)):
        for w, h in compose(polys[i], polys[j]):
            if not h:
                continue
            rem = rw.reduce(h, bound=w)
            if rem:
                failures.append(GsFailure(w, i, j, freeze_poly(rem)))
                if max_failures is not None and len(failures) >= max_failures:
                    return False, failures
    return not failures, failures


# ---------------------------------------------------------------------------
# completion


@dataclass(frozen=True)
class CompletionResult:
    presentation: Presentation
    converged: bool
    rounds: int
    added: tuple = field(default=())


def _inter_reduce(polys: list) -> list:
    """Rewrite every relation to normal form against the others.

    Relations that reduce to zero are dropped; the rest are re-normalized
    monic.  Each reduction runs against the current live set minus the
    relation itself (never a stale snapshot: two relations must not both
    disappear by reducing against each other), so every drop or rewrite
    keeps the generated ideal intact.  Repeats until stable.
    """
    rels = [dict(p) for p in polys]
    while True:
        changed = False
        for idx in range(len(rels)):
            if rels[idx] is None:
                continue
            others = [p for j, p in enumerate(rels) if j != idx and p is not None]
            rem = _Rewriter(others).reduce(rels[idx])
            if rem != rels[idx]:
                changed = True
                rels[idx] = poly_monic(rem) if rem else None
        if not changed:
            return [p for p in rels if p]


def complete(r: Presentation, n: int | None = None, max_rounds: int = 8) -> CompletionResult:
    """Bounded completion: adjoin non-trivial composition remainders.

    Each round enumerates compositions among the relations present at the
    round start, reduces them, adds the (monic, deduplicated) non-zero
    remainders and inter-reduces.  Stops at a fixpoint, or returns the
    partial result flagged incomplete after ``max_rounds``.
    """
    if n is not None and n != r.n:
        raise ValueError("presentation was built for a different n")
    polys = r.polys()
    keys = {freeze_poly(p) for p in polys}
    added_log = []
    converged = False
    rounds = 0
    for _ in range(max_rounds):
        rounds += 1
        rw = _Rewriter(polys)
        fresh = []
        fresh_keys = set()
        for i, j in _pair_iter(len(polys)):
            for w, h in compose(polys[i], polys[j]):
                if not h:
                    continue
                rem = rw.reduce(h, bound=w)
                if not rem:
                    continue
                m = poly_monic(rem)
                k = freeze_poly(m)
                if k in keys or k in fresh_keys:
                    continue
                fresh.append(m)
                fresh_keys.add(k)
        if not fresh:
            converged = True
            break
        added_log.extend(fresh_keys)
        polys.extend(fresh)
        polys = _inter_reduce(polys)
        keys = {freeze_poly(p) for p in polys}
    polys = _inter_reduce(polys)
    result = Presentation(r.n, tuple(freeze_poly(p) for p in polys))
    return CompletionResult(result, converged, rounds, tuple(added_log))


def singleton_eliminations(p: Presentation) -> tuple:
    """Atom indices k for which the presentation contains y_k = 0."""
    out = []
    for fp in p.relations:
        if len(fp) != 2:
            continue
        (lead, cl), (rhs, cr) = fp
        if cl == 1 and cr == -1 and rhs == THETA and len(lead) == 1:
            m = lead[0]
            if len(m) == 1 and m[0][1] == 1 and m[0][0] >= 2 * p.n:
                out.append(m[0][0] - 2 * p.n)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# irreducible terms


def irr_enumerate(r: Presentation, n: int | None = None, size_bound: int = 4) -> list:
    """Sum terms within the size bound containing no relation instance.

    The bound caps both the monomial degree and the number of summands.
    For a completed presentation these are exactly the canonical forms
    within the bound.
    """
    if n is not None and n != r.n:
        raise ValueError("presentation was built for a different n")
    nn = r.n
    rw = _Rewriter(r.polys()) if r.relations else None

    def irreducible(t: tuple) -> bool:
        return rw is None or rw.site(t) is None

    gens = list(range(2 * nn + (1 << nn)))
    # monomials of degree <= bound not containing a single-monomial lead
    mono_cands = []

    def grow_mono(m: tuple, start: int, degree: int):
        if not irreducible((m,)):
            return
        mono_cands.append(m)
        if degree == size_bound:
            return
        for gi in range(start, len(gens)):
            grow_mono(mono_mul(m, mono([(gens[gi], 1)])), gi, degree + 1)

    grow_mono(UNIT, 0, 0)
    mono_cands.sort(key=_MONO_KEY, reverse=True)

    out = []

    def grow_term(t: tuple, start: int):
        if not irreducible(t):
            return
        out.append(t)
        if len(t) == size_bound:
            return
        for idx in range(start, len(mono_cands)):
            grow_term(t + (mono_cands[idx],), idx)

    grow_term(THETA, 0)
    out.sort(key=_TERM_KEY)
    return out
