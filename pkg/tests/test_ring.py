import pytest
from hypothesis import given, settings, strategies as st

from quartichilb.graded import graded_slice_dim
from quartichilb.ideal import Ideal, family_ring, parse_ideal_text, format_ideal, standard_ring
from quartichilb.ring import ParseError, Ring, RingError, poly_product, substitute

from conftest import P, slice_dim_oracle


def test_product_identities(S):
    x, y = S.var("x"), S.var("y")
    assert poly_product(x + y, x - y) == x * x - y * y
    f = S("x^3 + 7*z*w - y")
    assert poly_product(f, S.one()) == f


def test_square_coefficient_wraps_mod_p(S):
    q = S("x*w - y*z")
    sq = poly_product(q, q)
    assert sq == S("x^2*w^2 - 2*x*y*z*w + y^2*z^2")
    assert dict(sq.terms())[(1, 1, 1, 1)] == P - 2 == 32001


def test_terms_are_sorted_descending(S):
    f = S("w^2 + x*y + z*x + y^2")
    lms = f.monomials()
    assert lms == sorted(lms, reverse=True)
    assert all(c for _, c in f.terms())


def test_substitute_parameter():
    R = family_ring()
    assert substitute(R("t*w^3 + z"), "t", 0) == standard_ring()("z")
    # a = b = 0, f = z, g = w: x^2 + t (x w - y z) at t = 1
    got = substitute(R("x^2 + t*(x*w - y*z)"), "t", 1)
    assert got == standard_ring()("x^2 + x*w - y*z")
    assert substitute(R("t^2*x"), "t", 2) == standard_ring()("4*x")


def test_slice_dim_examples(S):
    assert graded_slice_dim([S("x"), S("y")], 1) == 2
    dl = [S(g) for g in ("x^2", "x*y", "y^2", "x*w - y*z")]
    assert graded_slice_dim(dl, 2) == 4
    assert 10 - graded_slice_dim(dl, 2) == 2 * 2 + 2  # P(n) = 2n + 2
    ext = [S(g) for g in ("x^2", "x*y", "y^3", "x*z^3 - y^2*w^2")]
    # x^2 * (x,y,z,w), xy * (y,z,w), y^3; the quartic has nothing in degree 3
    assert graded_slice_dim(ext, 3) == slice_dim_oracle(ext, 3) == 8
    for n in range(6):
        assert graded_slice_dim(ext, n) == slice_dim_oracle(ext, n)


def test_parse_errors():
    with pytest.raises(ParseError) as e:
        parse_ideal_text("ring: x y z w\nideal:\nx*^2\n")
    assert (e.value.line, e.value.column) == (3, 3)
    with pytest.raises(ParseError):
        parse_ideal_text("ring: x y z w\nchar: 4\nideal:\nx\n")
    with pytest.raises(ParseError):
        parse_ideal_text("ring: x y z w\nideal:\nx*u\n")
    with pytest.raises(RingError):
        Ring(("x", "y"), 4)


def test_ideal_text_round_trip(S):
    I = Ideal(S, ["x^2", "x*y", "y^2", "x*w - y*z"])
    text = format_ideal(I)
    J = parse_ideal_text(text)
    assert format_ideal(J) == text and J == I


# -- properties ---------------------------------------------------------------------

_S = standard_ring()
terms = st.lists(st.tuples(st.tuples(*[st.integers(0, 3)] * 4), st.integers(-50, 50)), max_size=6)


def _poly(ts):
    f = _S.zero()
    for e, c in ts:
        f = f + _S.monomial(e, c % P)
    return f


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms)
def test_ring_axioms(a, b, c):
    f, g, h = _poly(a), _poly(b), _poly(c)
    assert (f + g).terms() == (g + f).terms()
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()
    lms = (f * g).monomials()
    assert lms == sorted(lms, reverse=True)


forms = st.lists(st.tuples(st.tuples(*[st.integers(0, 2)] * 4), st.integers(1, 40)), min_size=1, max_size=3)


@settings(max_examples=25, deadline=None)
@given(st.lists(forms, min_size=1, max_size=3), forms, st.integers(0, 4))
def test_slice_dim_monotone_and_matches_oracle(gens, extra, n):
    def homog(ts):
        d = max(sum(e) for e, _ in ts)
        return _poly([(e, c) for e, c in ts if sum(e) == d])

    G = [homog(g) for g in gens]
    G = [g for g in G if g]
    if not G:
        return
    small = graded_slice_dim(G, n)
    assert small == slice_dim_oracle(G, n)
    assert graded_slice_dim(G + [homog(extra)], n) >= small
