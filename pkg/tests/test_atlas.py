import pytest
from hypothesis import assume, given, settings, strategies as st

from quartichilb import atlas
from quartichilb.atlas import ConstructionError
from quartichilb.cohomology import is_curve
from quartichilb.hilbert import degree_genus
from quartichilb.ideal import Ideal

from conftest import slice_dim_oracle


def test_double_line_examples(S):
    I = atlas.double_line(0, "z", "w")
    assert I == Ideal(S, ["x^2", "x*y", "y^2", "x*w - y*z"])
    assert degree_genus(I) == (2, -1)
    assert degree_genus(atlas.double_line(1, "z^2", "w^2")) == (2, -2)
    with pytest.raises(ConstructionError):
        atlas.double_line(0, "z", "z")
    with pytest.raises(ConstructionError):
        atlas.double_line(1, "z", "w")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(0, 32002), min_size=6, max_size=6))
def test_double_line_genus_for_random_forms(a, cs):
    terms = lambda cs: " + ".join(f"{c}*z^{a + 1 - i}*w^{i}" for i, c in enumerate(cs[: a + 2]))
    f, g = terms(cs), terms(cs[::-1])
    try:
        I = atlas.double_line(a, f, g)
    except ConstructionError:
        assume(False)
    assert degree_genus(I) == (2, -a - 1)
    assert is_curve(I).is_curve


def test_ferrand_line_matches_double_line(S):
    for a in (0, 1, 2):
        D = atlas.ferrand_double(Ideal(S, ["x", "y"]), a, f"s^{a + 1}", f"t^{a + 1}")
        assert D == atlas.double_line(a)


@pytest.mark.parametrize("g", [-2, -5])
def test_double_conic(S, g):
    D = atlas.double_conic(g)
    assert degree_genus(D) == (4, g)
    conic = Ideal(S, ["w", "x*z - y^2"])
    assert conic.contains_ideal(D)
    assert D.contains_ideal(conic**2)
    assert is_curve(D).is_curve


def test_ferrand_rejects_common_zero(S):
    with pytest.raises(ConstructionError):
        atlas.ferrand_double(Ideal(S, ["x", "y"]), 0, "s", "s")


def test_phi_triple_witness_and_errors(S):
    a, b = 1, 1
    Z, q = atlas._wl_Z(a, 32003)
    h = S(f"z^{b}") * q - S(f"x^2*w^{a + b}")
    W = atlas.phi_triple(Z, h)
    assert degree_genus(W) == (3, -3 * a - b - 2)
    assert atlas.triple_line_type(W) == (a, b)
    # h irreducible modulo I_Y I_Z: the ideal (I_Y I_Z, h) is already saturated
    IY = Ideal(S, ["x", "y"])
    assert W == Ideal(S, [u * v for u in IY.gens for v in Z.gens] + [h])
    # the quadric generator itself gives the type (a, 0) triple line (x,y)^3 + (q)
    assert atlas.triple_line_type(atlas.phi_triple(Z, q)) == (a, 0)


@pytest.mark.parametrize("a,b", [(1, 0), (2, 0), (2, 1)])
def test_phi_triple_types_below_a(S, a, b):
    Z, q = atlas._wl_Z(a, 32003)
    W = atlas.phi_triple(Z, S(f"z^{b}") * q - S(f"x^2*w^{a + b}"))
    assert atlas.triple_line_type(W) == (a, b)
    assert is_curve(W).is_curve
    with pytest.raises(ConstructionError):
        atlas.phi_triple(Z, "x*z^3")  # not in I_Z
    with pytest.raises(ConstructionError):
        atlas.phi_triple(Z, "x^2*z^2")  # in I_Y^2


def test_thick_4line_examples(S):
    I = atlas.thick_4line(-3, "z^4", "w^4", "z^2*w^2")
    assert degree_genus(I) == (4, -3)
    assert atlas.is_thick(I)
    I0 = atlas.thick_4line(0, "z", "w", "z + w")
    assert degree_genus(I0) == (4, 0)
    with pytest.raises(ConstructionError):
        atlas.thick_4line(-3, "z^4", "z^3*w", "z^2*w^2")
    with pytest.raises(ConstructionError):
        atlas.thick_witness(-3, 7)


@pytest.mark.parametrize("abc,genus", [((0, 0, 0), -3), ((1, 0, 1), -10)])
def test_quasiprimitive_examples(abc, genus):
    I = atlas.quasiprimitive_4line(*abc, 1)
    assert degree_genus(I) == (4, genus)
    assert not atlas.is_thick(I)
    assert atlas.multiline_type(I) == abc


def test_quasiprimitive_errors():
    with pytest.raises(ConstructionError):
        atlas.quasiprimitive_4line(1, 1, 0, 1)
    with pytest.raises(ConstructionError):
        atlas.quasiprimitive_4line(0, 0, 0, 0)


def test_filtration_at_ideal_level(S):
    a, b, c = 1, 0, 1
    fam = atlas.ThinToThick(a, b, c)
    C = fam.fiber(1)
    W = fam.triple_line(1)
    Z = atlas.double_line(a)
    IY = Ideal(S, ["x", "y"])
    assert W.contains_ideal(C) and Z.contains_ideal(W) and IY.contains_ideal(Z)
    assert [degree_genus(J)[0] for J in (IY, Z, W, C)] == [1, 2, 3, 4]
    assert degree_genus(W)[1] == -3 * a - b - 2


def test_thick_versus_quasiprimitive_slices(S):
    """A thick ideal lies in (x,y)^2; a quasiprimitive one leaves it in degree 3."""
    thick = atlas.thick_witness(-3, 3)
    qp = atlas.quasiprimitive_4line(0, 0, 0, 1)
    sq = Ideal(S, ["x^2", "x*y", "y^2"])
    for n in (3, 4):
        joint = slice_dim_oracle(list(sq.gens) + list(qp.gens), n)
        assert joint > slice_dim_oracle(list(sq.gens), n)
        assert slice_dim_oracle(list(sq.gens) + list(thick.gens), n) == slice_dim_oracle(list(sq.gens), n)
    assert sq.contains_ideal(thick)
    assert not sq.contains_ideal(qp)


@pytest.mark.parametrize("g", [0, -1, -7])
def test_extremal_degree_genus(g):
    assert degree_genus(atlas.extremal_quartic(g)) == (4, g)


def test_extremal_errors_and_shape(S):
    with pytest.raises(ConstructionError):
        atlas.extremal_quartic(1)
    assert atlas.extremal_triple_line(0) == Ideal(S, ["x^2", "x*y", "y^3", "x*z^3 - y^2*w^2"])


def test_union_lengths(S):
    r = atlas.union_curves(Ideal(S, ["x", "y"]), Ideal(S, ["z", "w"]))
    assert (r.length, r.genus, r.consistent) == (0, -1, True)
    fam = atlas.extend_family(0, 0)
    W1 = Ideal(S, ["x^3", "x^2*y", "x*y^2", "y^3", "x^2*z - x*y*w", "x*y*z - y^2*w", "x*z - y*w - x^2"])
    r = atlas.union_curves(W1, Ideal(S, ["x", "w"]))
    assert r.length == 3 and r.consistent
    assert r.genus == degree_genus(W1)[1] + 0 + 3 - 1
    assert fam.parameters == {"a": 0, "b": 0}


def test_wl_members():
    d = atlas.wl_witness("F1", 1, -6)
    assert d.b == 3
    C = atlas.wl_family_member("F1", 1, -6)
    assert degree_genus(C) == (4, -6)
    assert atlas.union_curves(atlas.wl_triple(d), d.L).length == 3
    d = atlas.wl_witness("F3", 1, -7)
    assert d.b == 3
    assert atlas.union_curves(atlas.wl_triple(d), d.L).length == 2
    assert atlas.intersection_length(d.Z, d.L) == 1
    assert degree_genus(atlas.wl_family_member("F3", 1, -7)) == (4, -7)


def test_wl_errors():
    with pytest.raises(ConstructionError):
        atlas.wl_family_member("F1", 5, -6)
    with pytest.raises(ConstructionError):
        atlas.wl_family_member("F2", 3, -7)
    with pytest.raises(ConstructionError):
        atlas.wl_family_member("F5", 0, -6)
    with pytest.raises(ConstructionError):
        atlas.wl_witness("F2", 1, -7)


@pytest.mark.parametrize("kind,g", [("F2", -6), ("F4", -7)])
def test_wl_limits_keep_double_line_type(kind, g):
    sp = atlas.wl_special(kind, 1, g)
    W0 = atlas.wl_triple(sp)
    a0, b0 = atlas.triple_line_type(W0)
    assert a0 <= 1 and (a0, b0) == (1, sp.b)
    C = atlas.wl_family_member(kind, 1, g)
    assert degree_genus(C) == (4, g)
    assert W0.contains_ideal(C) and sp.L.contains_ideal(C)


@pytest.mark.parametrize("name,params,dg", [
    ("double_line_two_lines", {"g": -3}, (4, -3)),
    ("double_line_conic", {"g": -3}, (4, -3)),
    ("double_line_tangent_line_plus_line", {"g": -3}, (4, -3)),
    ("triple_line_disjoint_line", {"a": 1, "g": -6}, (4, -6)),
    ("triple_line_disjoint_line", {"a": 1, "g": -8}, (4, -8)),
    ("disjoint_double_lines", {"g1": -1, "g2": -2}, (4, -4)),
    ("extend_limit", {"a": 0, "b": 1}, (4, -1)),
])
def test_further_representatives(name, params, dg):
    I = atlas.build(name, params)
    assert degree_genus(I) == dg
    assert is_curve(I).is_curve


def test_corpus_is_curves(corpus):
    for name, params, I in corpus:
        assert is_curve(I).is_curve, name


def test_build_rejects_unknown():
    with pytest.raises(ConstructionError):
        atlas.build("no_such_curve", {})


def test_write_corpus(tmp_path):
    entries = atlas.CORPUS[:3]
    manifest = atlas.write_corpus(tmp_path, entries=entries)
    assert len(manifest) == 3
    assert (tmp_path / "manifest.json").exists()
    for rec in manifest:
        assert "expected" in rec or "degree" in str(rec)
