import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ims import expr as ex
from ims.atoms import (
    AtomSet,
    complement,
    eval_expr,
    gen_atoms,
    join,
    meet,
    normalize,
    render_atoms,
)
from ims.selftest import random_expr


def brute_gen_atoms(i, present, n):
    # independent enumeration straight off the bit definition
    out = []
    for k in range(2**n):
        bit = (k >> (i - 1)) & 1
        if bit == (1 if present else 0):
            out.append(k)
    return tuple(out)


def test_gen_atoms_examples():
    assert gen_atoms(1, "present", 2).atoms() == (1, 3) == brute_gen_atoms(1, True, 2)
    assert gen_atoms(2, "absent", 2).atoms() == (0, 1) == brute_gen_atoms(2, False, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gen_atoms_partition(n):
    for i in range(1, n + 1):
        a = gen_atoms(i, "present", n)
        b = gen_atoms(i, "absent", n)
        assert join(a, b).is_full
        assert meet(a, b).is_empty


def test_gen_atoms_errors():
    with pytest.raises(ValueError):
        gen_atoms(0, "present", 2)
    with pytest.raises(ValueError):
        gen_atoms(3, "present", 2)
    with pytest.raises(ValueError):
        gen_atoms(1, "plain", 2)


def test_eval_expr_examples():
    assert eval_expr(ex.parse("x1 * x1'", 1), 1).is_empty
    assert eval_expr(ex.parse("x1 + x1'", 1), 1).is_full
    expected = tuple(
        k
        for k in range(16)
        if (k & 1 or k >> 1 & 1) and not k >> 2 & 1 and k >> 3 & 1
    )
    assert eval_expr(ex.parse("(x1 + x2) * x3' * x4", 4), 4).atoms() == expected == (9, 10, 11)


def test_normalize_examples():
    assert normalize(ex.parse("x1 * x2'", 2), 2).atoms() == (1,)
    assert normalize(ex.parse("y5 + y5", 3), 3).atoms() == (5,)
    assert normalize(ex.parse("1 + y7", 3), 3).is_full


def test_complement_examples():
    assert complement(AtomSet.from_atoms(2, (1, 3))).atoms() == (0, 2)
    assert complement(AtomSet.full(2)).is_empty
    rng = random.Random(11)
    for _ in range(1000):
        s = AtomSet(3, rng.randrange(256))
        assert complement(complement(s)) == s


def test_join_meet_examples():
    rng = random.Random(12)
    for _ in range(200):
        s = AtomSet(3, rng.randrange(256))
        assert meet(s, complement(s)).is_empty
        assert join(s, complement(s)).is_full
        assert join(s, s) == s
        assert meet(s, s) == s
        assert meet(AtomSet.empty(3), s).is_empty
    with pytest.raises(ValueError):
        join(AtomSet.empty(2), AtomSet.empty(3))


@given(
    a=st.integers(0, 255), b=st.integers(0, 255), c=st.integers(0, 255)
)
def test_distributivity(a, b, c):
    sa, sb, sc = AtomSet(3, a), AtomSet(3, b), AtomSet(3, c)
    assert meet(sa, join(sb, sc)) == join(meet(sa, sb), meet(sa, sc))
    assert join(sa, meet(sb, sc)) == meet(join(sa, sb), join(sa, sc))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_equivalence_random(n):
    rng = random.Random(500 + n)
    for _ in range(800):
        e = random_expr(rng, n, 6)
        assert normalize(e, n) == eval_expr(e, n)


KNOWN_IDENTITIES = [
    ("x1 * (x2 + x3)", "x1 * x2 + x1 * x3", 3, True),
    ("(x1 + x2)'", "x1' * x2'", 2, True),
    ("(x1 * x2)'", "x1' + x2'", 2, True),
    ("x1 + x1 * x2", "x1", 2, True),
    ("x1", "x2", 2, False),
    ("x1 * x2", "x1 + x2", 2, False),
    ("x1 * x2'", "x1 * x2", 2, False),
]


@pytest.mark.parametrize("left,right,n,equal", KNOWN_IDENTITIES)
def test_normal_form_separates_identities(left, right, n, equal):
    same = normalize(ex.parse(left, n), n) == normalize(ex.parse(right, n), n)
    assert same == equal


def test_json_round_trip():
    s = AtomSet.from_atoms(3, (0, 2, 5))
    d = json.loads(json.dumps(s.to_json_dict()))
    assert AtomSet.from_json_dict(d) == s
    assert d == {"n": 3, "atoms": [0, 2, 5]}
    full = AtomSet.full(3)
    assert full.to_json_dict() == {"n": 3, "atoms": "one"}
    assert AtomSet.from_json_dict({"n": 3, "atoms": "one"}) == full


def test_render_atoms():
    assert render_atoms(AtomSet.empty(2)) == "0"
    assert render_atoms(AtomSet.full(2)) == "1"
    assert render_atoms(AtomSet.from_atoms(2, (1, 3))) == "y1 + y3"
    # against a restricted universe the universe itself prints as 1
    uni = AtomSet.from_atoms(3, (0, 1, 2, 3, 4, 6, 7))
    assert render_atoms(uni, uni) == "1"


def test_n_bounds():
    with pytest.raises(ValueError):
        AtomSet(0, 0)
    with pytest.raises(ValueError):
        AtomSet(17, 0)
    with pytest.raises(ValueError):
        AtomSet(2, 16)  # five bits over four atoms
