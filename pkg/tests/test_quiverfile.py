import pytest

from dgsilt import fixtures
from dgsilt.errors import QuiverParseError
from dgsilt.quiver import validate
from dgsilt.quiverfile import parse, serialize


def test_all_fixtures_load_and_validate():
    for name in ("rel", "a2", "tilde_a", "b0", "b1"):
        q = fixtures.load(name)
        assert validate(q).ok, name


def test_round_trip_is_identity_on_canonical_form():
    for name in ("rel", "tilde_a"):
        q = fixtures.load(name)
        text = serialize(q)
        q2 = parse(text).to_quiver()
        assert serialize(q2) == text


def test_unknown_arrow_in_differential_rejected():
    text = """dgquiver 1
vertex 1
vertex 2
arrow a 1 2 0
diff a = 1 nope nope2
"""
    with pytest.raises(QuiverParseError):
        parse(text).to_quiver()


def test_missing_header_rejected():
    with pytest.raises(QuiverParseError) as e:
        parse("vertex 1\n")
    assert e.value.line == 1


def test_bad_coefficient_rejected():
    text = """dgquiver 1
vertex 1
vertex 2
vertex 3
arrow a 1 2 0
arrow b 2 3 0
arrow g 1 3 -1
diff g = one a b
"""
    with pytest.raises(QuiverParseError) as e:
        parse(text)
    assert e.value.line == 8


def test_duplicate_ids_rejected():
    with pytest.raises(QuiverParseError):
        parse("dgquiver 1\nvertex 1\nvertex 1\n")
    with pytest.raises(QuiverParseError):
        parse("dgquiver 1\nvertex 1\narrow a 1 1 0\narrow a 1 1 0\n")


def test_unknown_vertex_in_arrow_rejected():
    with pytest.raises(QuiverParseError):
        parse("dgquiver 1\nvertex 1\narrow a 1 9 0\n").to_quiver()


def test_rational_coefficients_parse():
    text = """dgquiver 1
vertex 1
vertex 2
vertex 3
arrow a 1 2 0
arrow b 2 3 0
arrow c 1 2 0
arrow g 1 3 -1
diff g = 2/3 a b ; -1/2 c b
"""
    q = parse(text).to_quiver()
    assert validate(q).ok
    terms = q.differential["g"].terms
    assert sorted(str(c) for c, _ in terms) == ["-1/2", "2/3"]
