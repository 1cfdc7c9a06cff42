import json

import pytest
from hypothesis import given, settings, strategies as st

from quartichilb import atlas
from quartichilb.atlas import ConstructionError, CurveFamily
from quartichilb.cohomology import spectrum
from quartichilb.deformation import (DegenerateTriple, NonFlatFamily, family_fiber, flat_limit_zero,
                                     generic_hilbert, residual_triple, semicontinuity, verify_disjoint_doubles,
                                     verify_extend, verify_perrin, verify_thick_witness, verify_thintothick,
                                     verify_wl_closure)
from quartichilb.hilbert import degree_genus, hilbert
from quartichilb.ideal import Ideal, family_ring

from conftest import dim_S, slice_dim_oracle


def _constant_hp(cert):
    polys = {tuple(f["hilbert_poly"]) for f in cert.fiber_invariants if f.get("hilbert_poly")}
    return len(polys) == 1


def test_constant_family(S):
    R = family_ring()
    F = CurveFamily("const", Ideal(R, ["x^2", "x*y", "y^2", "x*w - y*z"]))
    D = atlas.double_line(0, "z", "w")
    for t0 in (0, 1, 7):
        assert family_fiber(F, t0) == D
    assert flat_limit_zero(F) == D


def test_non_flat_family_rejected():
    R = family_ring()
    F = CurveFamily("jump", Ideal(R, ["x", "y", "(t - 2)*z"]))
    with pytest.raises(NonFlatFamily):
        flat_limit_zero(F)


def test_extend_fiber_and_limit(S):
    F = atlas.extend_family(0, 0)
    C1 = family_fiber(F, 1)
    assert degree_genus(C1) == (4, 0)
    assert flat_limit_zero(F) == atlas.extend_limit(0, 0)
    H = generic_hilbert(F.ideal)
    assert tuple(H.poly) == tuple(hilbert(C1).poly)


def test_thintothick_fiber_and_limit():
    fam = atlas.ThinToThick(0, 0, 0)
    C2 = fam.fiber(2)
    assert degree_genus(C2) == (4, -3)
    assert not atlas.is_thick(C2)
    C0 = atlas.ThinToThick(1, 0, 1).fiber(0)
    assert atlas.is_thick(C0)
    assert degree_genus(C0) == (4, -10)


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 32002))
def test_extend_fibres_share_hilbert_polynomial(t0):
    F = atlas.extend_family(1, 0)
    C = family_fiber(F, t0)
    assert degree_genus(C) == (4, -3)
    for n in (2, 5):
        assert hilbert(C).value(n) == dim_S(n) - slice_dim_oracle(list(C.gens), n)


@pytest.mark.parametrize("abc", [(0, 0, 0), (1, 0, 1), (1, 1, 2), (0, 1, 3), (1, 1, 1)])
def test_verify_thintothick(abc):
    cert = verify_thintothick(*abc)
    assert cert.passed, cert.failures()
    assert _constant_hp(cert)
    a, b, c = abc
    assert all(f["genus"] == -6 * a - b - c - 3 for f in cert.fiber_invariants)


def test_thintothick_rejects_bad_type():
    with pytest.raises(ConstructionError):
        verify_thintothick(0, 2, 1)


@settings(max_examples=4, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2))
def test_thintothick_certificates_hold_on_small_types(a, b, dc):
    cert = verify_thintothick(a, b, b + dc, samples=(0, 1, 3))
    assert cert.passed, cert.failures()
    ids = {c.id for c in cert.checks}
    assert {"semicontinuity", "constant Hilbert polynomial", "t=0 fibre thick"} <= ids


@pytest.mark.parametrize("ab,genus", [((0, 0), 0), ((1, 1), -4)])
def test_verify_extend(ab, genus):
    cert = verify_extend(*ab)
    assert cert.passed, cert.failures()
    assert all(f["genus"] == genus for f in cert.fiber_invariants)
    assert _constant_hp(cert)
    assert "limit = I_0 ∩ I_L" in {c.id for c in cert.checks}


@pytest.mark.parametrize("kind,a,g", [("F2<F1", 1, -7), ("F4<F3", 1, -7), ("F2", 1, -6), ("F4", 0, -4)])
def test_verify_wl_closure(kind, a, g):
    cert = verify_wl_closure(kind, a, g)
    assert cert.passed, cert.failures()
    assert _constant_hp(cert)


def test_wl_closure_range():
    with pytest.raises(ConstructionError):
        verify_wl_closure("F2<F1", 3, -7)


@pytest.mark.parametrize("bc", [(0, 0), (0, 1), (1, 3), (2, 2)])
def test_verify_disjoint_doubles(bc):
    cert = verify_disjoint_doubles(*bc)
    assert cert.passed, cert.failures()
    assert cert.provenance == "cited-external"
    b, c = bc
    assert cert.fiber_invariants[0]["genus"] == -b - c - 3


def test_disjoint_doubles_hilbert_polynomial():
    D = atlas.disjoint_double_lines(-1, -1)
    H = hilbert(D)
    assert [H.poly_value(n) for n in range(4)] == [4 * n + 4 for n in range(4)]
    with pytest.raises(ConstructionError):
        verify_disjoint_doubles(1, 0)


@pytest.mark.parametrize("g", [-3, -4])
def test_verify_perrin(g):
    cert = verify_perrin(g, seed=11)
    assert cert.passed, cert.failures()
    MJ = cert.parameters["dims"]["M/J"]
    assert [MJ[n] for n in range(g, 1)] == [1] * (1 - g)
    assert cert.seed == 11
    with pytest.raises(ConstructionError):
        verify_perrin(-2)


@pytest.mark.parametrize("g,j", [(-2, 2), (-3, 3), (-5, 2), (-5, 4)])
def test_verify_thick_witness(g, j):
    if j > 3:
        with pytest.raises(ConstructionError):
            verify_thick_witness(g, j)
        return
    cert = verify_thick_witness(g, j)
    assert cert.passed, cert.failures()


def test_semicontinuity_direction():
    general = atlas.quasiprimitive_4line(0, 0, 1, 1)
    special = atlas.ThinToThick(0, 0, 1).fiber(0)
    ok, _ = semicontinuity(general, special)
    assert ok
    # the reverse comparison must fail somewhere when the tables differ
    ok_rev, detail = semicontinuity(special, general)
    assert spectrum(general) != spectrum(special)
    assert not ok_rev and detail.startswith("h^")


def test_residual_triple_examples(S):
    T = residual_triple(atlas.double_line(0, "z", "w"), "x")
    assert T.consistent and T.z_degree == 1
    assert T.R == T.P == Ideal(S, ["x", "y"])
    C = atlas.quasiprimitive_4line(0, 0, 1, 1)
    T = residual_triple(C, "x*w - y*z")
    assert T.consistent and T.z_degree == 5
    assert T.R == T.P
    with pytest.raises(DegenerateTriple):
        residual_triple(Ideal(S, ["x", "y*z - w^2"]), "x")
    with pytest.raises(ConstructionError):
        residual_triple(atlas.double_line(0), "z")
    assert set(T.to_json()) == {"z_degree", "z_degree_direct", "R", "P"}


def test_certificate_json_round_trip():
    cert = verify_extend(0, 0)
    data = json.loads(cert.dumps())
    assert {"name", "parameters", "seed", "sampled_t", "fiber_invariants", "limit_ideal", "checks",
            "provenance"} <= set(data)
    assert data["verdict"] == "pass"
    assert cert.digest() == verify_extend(0, 0).digest()
