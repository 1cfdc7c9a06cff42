import itertools

import pytest
from hypothesis import given, settings, strategies as st

from quartichilb.graded import graded_slice_dim
from quartichilb.groebner import groebner_basis, normal_form
from quartichilb.hilbert import hilbert
from quartichilb.ideal import (Ideal, eliminate, intersect, quotient, saturate,
                               saturate_irrelevant, saturate_param, standard_ring)
from quartichilb.modules import GradedComplex, PolyMatrix, free_resolution, minors_ideal, syzygies
from quartichilb.ring import Ring, substitute
from quartichilb.atlas import ThinToThick, extend_family, extend_limit, double_line

from conftest import dim_S, slice_dim_oracle, standard_monomial_count


def _spoly(f, g):
    R = f.ring
    L = R.lcm(f.lm, g.lm)
    return f.shift(L - f.lm, pow(f.lc, R.char - 2, R.char)) - g.shift(L - g.lm, pow(g.lc, R.char - 2, R.char))


def test_small_bases(S):
    G = groebner_basis([S("x"), S("x + y")], S)
    assert set(G.polys) == {S("x"), S("y")}
    dl = [S(g) for g in ("x^2", "x*y", "y^2", "x*w - y*z")]
    G = groebner_basis(dl, S)
    assert set(G.polys) == {g.monic() for g in dl}
    for n in range(5):
        assert graded_slice_dim(list(G.polys), n) == slice_dim_oracle(dl, n)


def test_type_one_double_line_slices(S):
    I = Ideal(S, ["x*w^2 - y*z^2", "x^2", "x*y", "y^2"])
    assert I == double_line(1)
    for n in range(7):
        assert graded_slice_dim(list(I.gb().polys), n) == slice_dim_oracle(I.gens, n)


def test_normal_forms(S):
    G = groebner_basis([S("x"), S("y")], S)
    assert normal_form(S("x^2"), G).is_zero()
    dl = Ideal(S, ["x^2", "x*y", "y^2", "x*z - y*w"]).gb()
    assert normal_form(S("x*y*z - y^2*w"), dl).is_zero()
    assert normal_form(S("z^5"), dl) == S("z^5")


def test_reduced_basis_invariants(corpus):
    for _, _, I in corpus:
        G = I.gb()
        R = I.ring
        polys = list(G.polys)
        assert all(g.lc == 1 for g in polys)
        for i, g in enumerate(polys):
            for j, h in enumerate(polys):
                if i != j:
                    assert not R.divides(h.lm, g.lm)
        for g, h in itertools.combinations(polys[:12], 2):
            assert normal_form(_spoly(g, h), G).is_zero()


def test_engine_matches_oracle_on_corpus(corpus):
    for name, _, I in corpus:
        leads = [I.ring.unpack(m) for m in I.gb().leads]
        gb = list(I.gb().polys)
        for n in range(0, 9):
            assert dim_S(n) - standard_monomial_count(leads, n) == graded_slice_dim(gb, n), (name, n)


def test_elimination():
    R = Ring(("x", "y", "z"))
    E = eliminate(Ideal(R, ["x - z^2", "y - z^3"]), ["z"])
    assert E.contains(E.ring("x^3 - y^2"))
    I = Ideal(R, ["x*y", "z"])
    assert eliminate(I, []) is I
    T = Ring(("x", "t"))
    assert eliminate(Ideal(T, ["t*x", "t - 1"]), ["t"]) == Ideal(T.drop("t"), ["x"])


def test_intersections(S):
    assert intersect(Ideal(S, ["x", "y"]), Ideal(S, ["z", "w"])) == Ideal(S, ["x*z", "x*w", "y*z", "y*w"])
    assert intersect(Ideal(S, ["x", "y"]), Ideal(S, ["x", "z"])) == Ideal(S, ["x", "y*z"])


def test_quotients(S):
    assert quotient(Ideal(S, ["x^2"]), Ideal(S, ["x"])) == Ideal(S, ["x"])
    two = Ideal(S, ["x*z", "x*w", "y*z", "y*w"])
    assert quotient(two, Ideal(S, ["z", "w"])) == Ideal(S, ["x", "y"])


def test_saturation(S):
    m = Ideal(S, ["x", "y", "z", "w"])
    # in P^3 the embedded component of (x^2, xy) is a line, so the ideal is already saturated
    assert saturate_irrelevant(Ideal(S, ["x^2", "x*y"])) == Ideal(S, ["x^2", "x*y"])
    R = Ring(("x", "y"))
    assert saturate(Ideal(R, ["x^2", "x*y"]), Ideal(R, ["x", "y"])) == Ideal(R, ["x"])
    I = Ideal(S, ["x^2", "x*y", "x*z", "x*w"])
    assert saturate(I, m) == Ideal(S, ["x"]) == saturate_irrelevant(I)
    assert saturate(I, I).is_unit()


@pytest.mark.parametrize("a,b", [(0, 0), (1, 1)])
def test_extend_family_limit_by_saturation(S, a, b):
    F = extend_family(a, b)
    J = saturate_param(F.ideal, "t")
    L = saturate_irrelevant(Ideal(S, [S.convert(substitute(f, "t", 0)) for f in J.gens]))
    assert L == extend_limit(a, b)


def test_syzygies():
    S = standard_ring()
    Z = syzygies(PolyMatrix(S, [[S("x"), S("y")]]))
    assert Z.ncols == 1 and {Z[0, 0], Z[1, 0]} in ({S("-y"), S("x")}, {S("y"), S("-x")})
    SL = Ring(("z", "w"))
    M = PolyMatrix(SL, [[SL("z^4"), SL("w^4")]])
    Z = syzygies(M)
    assert Z.ncols == 1 and (M @ Z).is_zero() and Z.col_degrees == [8]
    M = PolyMatrix(SL, [[SL("z^4"), SL("w^4"), SL("z^2*w^2")]], [0], [4, 4, 4])
    Z = syzygies(M)
    assert (M @ Z).is_zero()
    # kernel dimension per degree equals the span of the syzygy columns
    from quartichilb.modules import kernel_dim, span_dim
    for e in range(4, 13):
        assert kernel_dim(M, e) == span_dim(Z, e)


def test_free_resolution_koszul(S):
    C = free_resolution(Ideal(S, ["x", "y"]))
    assert C.betti_numbers() == [1, 2, 1]
    assert C.twists() == [[0], [-1, -1], [-2]]
    assert C.compositions_vanish() and C.degrees_consistent()


def test_resolution_euler_on_corpus(corpus):
    for name, _, I in corpus[:10]:
        C = free_resolution(I)
        H = hilbert(I)
        assert C.compositions_vanish()
        assert all(C.euler_characteristic(n) == H.value(n) for n in range(13)), name


@pytest.mark.parametrize("a,b", [(0, 0), (1, 0), (1, 1)])
def test_triple_line_resolution_shifts(a, b):
    T = ThinToThick(a, b, b)
    M1, M2, M3, _ = T.matrices(1)
    S = M1.ring
    assert sorted(T.F1) == sorted([3] * 4 + [a + 3] * 2 + [a + b + 2])
    C = free_resolution(Ideal(S, M1.rows[0]))
    printed = GradedComplex(S, [[0], T.F1, T.F2, T.F3], [M1, M2, M3])
    # the displayed complex is exact but minimal only when no shifts coincide across steps
    assert C.numerator() == printed.numerator()
    if (a, b) == (1, 1):
        assert [sorted(m) for m in C.modules] == [sorted(m) for m in printed.modules]


def test_minors(S):
    I2 = PolyMatrix(S, [[S.one(), S.zero()], [S.zero(), S.one()]])
    assert minors_ideal(I2, 2).is_unit()
    M1, M2, M3, _ = ThinToThick(0, 0, 0).matrices()
    R = M1.ring
    I3 = minors_ideal(M3, 3)
    assert all(I3.contains(R(f)) for f in ("x^3", "y^3", "z^2"))
    I6 = minors_ideal(M2, 6)
    assert I6.contains(R("x^6")) and I6.contains(R("y^6"))


# -- properties ---------------------------------------------------------------------

_S = standard_ring()
_mons = ["x", "y", "z", "w"]
quad = st.lists(st.tuples(st.sampled_from(_mons), st.sampled_from(_mons), st.integers(1, 50)), min_size=1, max_size=3)


def _form(ts):
    f = _S.zero()
    for u, v, c in ts:
        f = f + _S(f"{c}*{u}*{v}")
    return f


@settings(max_examples=20, deadline=None)
@given(st.lists(quad, min_size=1, max_size=3), st.lists(quad, min_size=1, max_size=2))
def test_colon_and_intersection_laws(a, b):
    I = Ideal(_S, [f for f in map(_form, a) if f])
    J = Ideal(_S, [f for f in map(_form, b) if f])
    if not I.gens or not J.gens:
        return
    Q = quotient(I, J)
    assert Q.contains_ideal(I)
    K = intersect(I, J)
    assert I.contains_ideal(K) and J.contains_ideal(K)
    # every product lies in the intersection
    assert all(K.contains(f * g) for f in I.gens for g in J.gens)
    m = Ideal(_S, _mons)
    sat = saturate_irrelevant(I)
    assert saturate_irrelevant(sat) == sat
    assert sat == saturate(I, m)
