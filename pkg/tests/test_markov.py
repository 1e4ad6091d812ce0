import random

import pytest

from ims import expr as ex
from ims.atoms import AtomSet, complement, join, meet, normalize
from ims.gsbasis import complete, markov_presentation, singleton_eliminations
from ims.markov import (
    CIConstraint,
    chain_constraint,
    check_reversal,
    ci_atoms,
    k_set,
    markov_normalize,
    reduced_universe,
)


def brute_k_set(n):
    # straight off the definition, bit strings spelled out
    out = set()
    for i in range(1, n - 1):
        for k in range(2**n):
            bits = [(k >> b) & 1 for b in range(n)]
            if any(bits[:i]) and bits[i] == 0 and bits[i + 1] == 1:
                out.add(k)
    return tuple(sorted(out))


def test_k_set_examples():
    assert k_set(3).eliminated == (5,)
    assert k_set(4).eliminated == (5, 9, 10, 11, 13)
    survivors = tuple(k for k in range(32) if k not in k_set(5).eliminated)
    assert survivors == (0, 1, 2, 3, 4, 6, 7, 8, 12, 14, 15, 16, 24, 28, 30, 31)


def test_k_set_requires_three_variables():
    with pytest.raises(ValueError):
        k_set(2)


@pytest.mark.parametrize("n", range(3, 13))
def test_k_set_matches_brute_force(n):
    assert k_set(n).eliminated == brute_k_set(n)


@pytest.mark.parametrize("n", range(3, 13))
def test_k_set_terms_union_and_chain_form(n):
    ks = k_set(n)
    union = set()
    for i, atoms in ks.terms:
        union.update(atoms)
        assert ci_atoms(chain_constraint(i, n), n).atoms() == atoms
    assert tuple(sorted(union)) == ks.eliminated


@pytest.mark.parametrize("n", range(3, 9))
def test_k_set_grows_with_n(n):
    assert set(k_set(n).eliminated) <= set(k_set(n + 1).eliminated)


def test_ci_atoms_examples():
    assert ci_atoms(CIConstraint({1}, {3}, {2}), 3).atoms() == (5,)
    assert ci_atoms(CIConstraint({1, 2}, {4}, {3}), 4).atoms() == (9, 10, 11)
    assert ci_atoms(CIConstraint({1}, {2}, frozenset()), 2).atoms() == (3,)


def test_ci_constraint_validation():
    with pytest.raises(ValueError):
        CIConstraint({1}, {1}, set())
    with pytest.raises(ValueError):
        CIConstraint(set(), {2}, set())
    with pytest.raises(ValueError):
        CIConstraint({1}, {2}, {2})
    with pytest.raises(ValueError):
        ci_atoms(CIConstraint({1}, {5}, set()), 3)


def test_markov_normalize_examples():
    assert markov_normalize(ex.parse("x1 * x2' * x3", 3), 3).is_empty
    assert markov_normalize(ex.parse("1", 5), 5).atoms() == (
        0, 1, 2, 3, 4, 6, 7, 8, 12, 14, 15, 16, 24, 28, 30, 31,
    )
    # free form {1, 5} loses the eliminated atom
    assert markov_normalize(ex.parse("x1 * x2'", 3), 3).atoms() == (1,)
    with pytest.raises(ValueError):
        markov_normalize(ex.parse("x1", 2), 2)


@pytest.mark.parametrize("n", range(3, 9))
def test_chain_relations_vanish(n):
    for i in range(1, n - 1):
        head = " + ".join(f"x{v}" for v in range(1, i + 1))
        text = f"({head}) * x{i + 1}' * x{i + 2}"
        assert markov_normalize(ex.parse(text, n), n).is_empty


@pytest.mark.parametrize("n", range(3, 13))
def test_check_reversal(n):
    assert check_reversal(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_completion_agrees_with_closed_form(n):
    res = complete(markov_presentation(n), n)
    assert res.converged
    assert singleton_eliminations(res.presentation) == k_set(n).eliminated


@pytest.mark.parametrize("n", [3, 4, 5])
def test_quotient_complement_laws(n):
    universe = reduced_universe(n)
    rng = random.Random(60 + n)
    for _ in range(300):
        s = meet(AtomSet(n, rng.randrange(1 << (1 << n))), universe)
        t = meet(complement(s), universe)  # complement inside the quotient
        assert meet(s, t).is_empty
        assert join(s, t) == universe
        assert meet(s, s) == s and join(s, s) == s


def test_reduced_universe_matches_normalize_of_one():
    for n in (3, 4, 5):
        assert reduced_universe(n) == markov_normalize(ex.One(), n)
        assert normalize(ex.One(), n).is_full
