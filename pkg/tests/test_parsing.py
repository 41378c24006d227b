import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit.errors import NonHomogeneous, NotQuadratic, ParseError, UnknownVariable, UsageError
from koszulkit.parsing import parse_input, print_input, read_input_file


def test_basic():
    p = parse_input("ring a,b,c,d;\nideal a^2, b^2, a*d - 2*b*c;  # three\n")
    assert p.variables == ("a", "b", "c", "d")
    assert len(p.ideal) == 3
    assert p.ideal[2].terms == {(1, 0, 0, 1): 1, (0, 1, 1, 0): -2}


def test_module_block():
    p = parse_input("ring x,y; ideal x*y; module gens 0,1; rel y, 0; rel x^2, x;")
    assert p.module_degrees == [0, 1]
    assert len(p.relations) == 2
    M = p.module(p.quotient_ring())
    assert M.column_degrees == [1, 2]


def test_coefficients_and_signs():
    p = parse_input("ring x,y; ideal -x^2 + 3*x*y - 2*y^2;")
    assert p.ideal[0].terms == {(2, 0): -1, (1, 1): 3, (0, 2): -2}
    p = parse_input("ring x; ideal x^2 - x^2;")
    assert p.ideal == []


@pytest.mark.parametrize(
    "text,exc,line,col",
    [
        ("ring x,y;\nideal x^2, z;", UnknownVariable, 2, 12),
        ("ring x,y;\nideal x^2 + y;", NonHomogeneous, 2, 7),
        ("ring x,y;\nideal x^2 y;", ParseError, 2, 11),
        ("ideal x;", ParseError, 1, 1),
        ("ring x; frob x;", ParseError, 1, 9),
        ("ring x,x;", ParseError, 1, 1),
        ("ring x; rel x;", ParseError, 1, 9),
        ("ring x,y; module gens 0,0; rel x;", ParseError, 1, 28),
        ("ring x,y; module gens 0,1; rel x, x;", NonHomogeneous, 1, 35),
        ("", ParseError, 1, 1),
    ],
)
def test_errors(text, exc, line, col):
    with pytest.raises(exc) as info:
        parse_input(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_exit_codes():
    assert ParseError("x", 1, 1).exit_code == 2
    assert UnknownVariable("x", 1, 1).exit_code == 2
    assert UsageError("x").exit_code == 1


def test_monomial_ideal_rejects_binomial():
    with pytest.raises(NotQuadratic):
        parse_input("ring x,y; ideal x^2 - y^2;").monomial_ideal()


def test_read_missing_file(tmp_path):
    with pytest.raises(UsageError):
        read_input_file(str(tmp_path / "nope.in"))


def test_shipped_inputs_round_trip():
    import glob

    files = sorted(glob.glob("inputs/*"))
    assert len(files) >= 8
    for f in files:
        p = read_input_file(f)
        assert parse_input(print_input(p)) == p


names = st.lists(st.sampled_from(["a", "b", "c", "x1", "y_2"]), min_size=1, max_size=4, unique=True)


@given(names, st.data())
def test_round_trip_random(variables, data):
    n = len(variables)
    polys = []
    for _ in range(data.draw(st.integers(1, 3))):
        deg = data.draw(st.integers(1, 3))
        terms = []
        for _ in range(data.draw(st.integers(1, 3))):
            e = [0] * n
            for _ in range(deg):
                e[data.draw(st.integers(0, n - 1))] += 1
            c = data.draw(st.integers(-5, 5).filter(bool))
            mono = "*".join(f"{v}^{k}" for v, k in zip(variables, e) if k)
            terms.append(("- " if c < 0 else "+ ") + f"{abs(c)}*{mono}")
        polys.append(" ".join(terms).lstrip("+ "))
    text = f"ring {','.join(variables)}; ideal {', '.join(polys)};"
    p = parse_input(text)
    assert parse_input(print_input(p)) == p
