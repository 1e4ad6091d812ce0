import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ims import expr as ex
from ims.atoms import eval_expr, normalize


def test_parse_meet_of_complement():
    assert ex.parse("x1 * x1'", 1) == ex.Meet((ex.Var(1), ex.Complement(ex.Var(1))))


def test_parse_chain_constraint_shape():
    got = ex.parse("(x1 + x2) * x3' * x4", 4)
    want = ex.Meet(
        (ex.Join((ex.Var(1), ex.Var(2))), ex.Complement(ex.Var(3)), ex.Var(4))
    )
    assert got == want


def test_parse_variable_out_of_range():
    with pytest.raises(ex.ParseError):
        ex.parse("x5 + x1", 4)


def test_parse_atom_out_of_range():
    with pytest.raises(ex.ParseError):
        ex.parse("y8", 3)
    ex.parse("y7", 3)  # top of the range is fine


def test_parse_error_carries_byte_offset():
    with pytest.raises(ex.ParseError) as err:
        ex.parse("x1 + ", 2)
    assert err.value.offset == 5
    with pytest.raises(ex.ParseError) as err:
        ex.parse("x1 ** x2", 2)
    assert err.value.offset == 4


def test_parse_whitespace_insignificant():
    assert ex.parse(" x1*x2 ", 2) == ex.parse("x1 * x2", 2)


def test_parse_flattens_nested_joins():
    assert ex.parse("(x1 + x2) + x3", 3) == ex.parse("x1 + x2 + x3", 3)
    assert ex.parse("(x1 * x2) * x3", 3) == ex.parse("x1 * x2 * x3", 3)


def test_parse_double_complement_needs_parens():
    with pytest.raises(ex.ParseError):
        ex.parse("x1''", 1)
    e = ex.parse("(x1')'", 1)
    assert e == ex.Complement(ex.Complement(ex.Var(1)))


@pytest.mark.parametrize(
    "e,text",
    [
        (ex.Zero(), "0"),
        (ex.One(), "1"),
        (ex.Meet((ex.Var(1), ex.Complement(ex.Var(2)))), "x1 * x2'"),
        (ex.Join((ex.AtomVar(5), ex.AtomVar(13))), "y5 + y13"),
        (
            ex.Meet((ex.Join((ex.Var(1), ex.Var(2))), ex.Complement(ex.Var(3)))),
            "(x1 + x2) * x3'",
        ),
        (ex.Complement(ex.Join((ex.Var(1), ex.Var(2)))), "(x1 + x2)'"),
    ],
)
def test_render(e, text):
    assert ex.render(e) == text


def _exprs(n: int):
    leaves = st.one_of(
        st.just(ex.Zero()),
        st.just(ex.One()),
        st.integers(1, n).map(ex.Var),
        st.integers(0, 2**n - 1).map(ex.AtomVar),
    )

    def extend(children):
        return st.one_of(
            st.lists(children, min_size=2, max_size=3).map(lambda cs: ex.join(*cs)),
            st.lists(children, min_size=2, max_size=3).map(lambda cs: ex.meet(*cs)),
            children.map(ex.Complement),
        )

    return st.recursive(leaves, extend, max_leaves=12)


@given(e=_exprs(3))
def test_render_parse_roundtrip(e):
    assert ex.parse(ex.render(e), 3) == e


@given(e=_exprs(3))
def test_roundtrip_preserves_canonical_form(e):
    again = ex.parse(ex.render(e), 3)
    assert normalize(again, 3) == normalize(e, 3) == eval_expr(e, 3)


@settings(max_examples=300)
@given(text=st.text(max_size=200))
def test_parser_total_on_garbage(text):
    try:
        ex.parse(text, 3)
    except ex.ParseError:
        pass


@pytest.mark.parametrize(
    "blob",
    [
        "(" * 65536,
        "x1 + " * 13000 + "x1",
        "))))" * 16384,
        "y" + "9" * 65536,
    ],
)
def test_parser_survives_large_inputs(blob):
    assert len(blob.encode()) <= 65536 + 8
    try:
        ex.parse(blob, 3)
    except ex.ParseError:
        pass
