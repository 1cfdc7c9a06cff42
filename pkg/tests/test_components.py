import csv
import io
import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from quartichilb import atlas, components as C
from quartichilb.cohomology import cohomology_table, spectrum
from quartichilb.hilbert import degree_genus

from conftest import slice_dim_oracle


def _d(m):
    return 8 if m in (0, 1) else 5 + 2 * m


def table_oracle(g, inclusive_g8=True):
    """Independent re-encoding of the table rows as (label, dimension, four_line)."""
    rows = [("G1", 15 - 2 * g, False), ("G2", 13 - 2 * g, False), ("G3", 13 - 2 * g, False),
            ("G5", 13 - 2 * g, False)]
    if g <= -3:
        rows += [("G4", 9 - 3 * g, True), ("G6", 11 - 2 * g, False)]
        rows += [(f"G7,{a}", 11 - 2 * g - a, False) for a in range(1, -g + 1) if Fr(a) <= Fr(-g, 3)]
    if g <= -6:
        for a in range(1, -g + 1):
            bound = Fr(-g - 1, 3)
            if Fr(a) < bound or (inclusive_g8 and Fr(a) == bound):
                rows.append((f"G8,{a}", 10 - 2 * g - a, False))
        rows += [(f"G9,{a}", 8 - 2 * g - a, False) for a in range(1, -g + 1) if Fr(a) <= Fr(-g - 3, 3)]
    rows += [(f"G10,{m}", _d(m) + _d(-(g + m + 1)), False) for m in range(0, -g + 1) if Fr(m) <= Fr(-g - 1, 2)]
    if g <= -9:
        for a in range(1, -g + 1):
            if Fr(a) <= Fr(-g - 3, 6):
                rows += [(f"G11,{a},{b}", 7 - 2 * g - 3 * a, True)
                         for b in range(0, -g + 1) if Fr(b) <= Fr(-6 * a - g - 3, 2)]
    return rows


@pytest.mark.parametrize("g", [-2, -3, -5, -6, -7, -9, -10, -13, -30, -100])
def test_enumeration_matches_table_oracle(g):
    got = sorted((c.label, c.dimension, c.four_line) for c in C.enumerate_components(g))
    assert got == sorted(table_oracle(g))
    got = sorted((c.label, c.dimension, c.four_line) for c in C.enumerate_components(g, "strict"))
    assert got == sorted(table_oracle(g, inclusive_g8=False))


def test_published_counts():
    for g, four, strict, inclusive in [(-100, 377, 529, 530), (-1000, 41252, 42754, 42755)]:
        rep = C.count_report(g)
        assert rep["four_line"] == four
        assert (rep["total_strict"], rep["total_inclusive"]) == (strict, inclusive)
        assert rep["conventions_differ"]
        assert C.count_components(g).total == inclusive


def test_count_matches_oracle_at_minus_1000():
    rows = table_oracle(-1000)
    assert (len(rows), sum(r[2] for r in rows)) == (42755, 41252)


def test_special_cases():
    dims = sorted((c.dimension for c in C.enumerate_components(-2)), reverse=True)
    assert dims == [19, 17, 17, 17, 16]
    facts = C.special_hilbert_facts(-1)
    assert sorted((c["dimension"] for c in facts["components"]), reverse=True) == [17, 16, 16]
    assert C.special_hilbert_facts(2)["components"] == [] and not C.special_hilbert_facts(2)["nonempty"]
    assert [c["dimension"] for c in C.special_hilbert_facts(3)["components"]] == [17]
    assert [c["dimension"] for c in C.special_hilbert_facts(1)["components"]] == [16]
    assert len(C.special_hilbert_facts(0)["components"]) == 2
    with pytest.raises(ValueError):
        list(C.enumerate_components(-1))


def test_enumeration_examples():
    labels9 = {c.label: c.dimension for c in C.enumerate_components(-9)}
    assert "G11,1,0" in labels9
    assert not any(l.startswith("G11") for l in (c.label for c in C.enumerate_components(-8)))
    labels3 = {c.label: c.dimension for c in C.enumerate_components(-3)}
    assert labels3["G4"] == 18 and labels3["G6"] == 17
    assert not any(l.startswith(("G8", "G9", "G11")) for l in labels3)


@settings(max_examples=60, deadline=None)
@given(st.integers(-400, -2), st.sampled_from(C.G8_CONVENTIONS))
def test_dimensions_are_positive_integers(g, conv):
    for c in C.enumerate_components(g, conv):
        assert isinstance(c.dimension, int) and c.dimension > 0
        if c.family == "G11":
            a, b = c.params
            cc = -6 * a - b - g - 3
            assert 0 <= b <= cc
            assert c.dimension == 9 * a + 2 * b + 2 * cc + 13
    counts = C.count_components(g, conv)
    assert counts.four_line == sum(1 for r in table_oracle(g, conv == "inclusive") if r[2])


def test_asymptotics():
    rep = {r["g"]: r for r in C.asymptotic_check([-10, -100, -1000])}
    assert 0.97 <= rep[-1000]["total_ratio"] <= 1.03
    assert 150 <= rep[-100]["total"] - rep[-100]["four_line"] <= 155
    assert rep[-1000]["other_ratio"] == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize("g", list(range(-2, -13, -1)))
def test_representatives_have_degree_4_genus_g(g):
    skipped = []
    for desc in C.enumerate_components(g):
        try:
            I = C.representative(desc, g)
        except atlas.ConstructionError:
            skipped.append(desc.label)
            continue
        assert degree_genus(I) == (4, g), desc.label
    # only the inclusive G8 boundary lacks an explicit member
    assert all(l.startswith("G8") and 3 * int(l.split(",")[1]) == -g - 1 for l in skipped)


@pytest.mark.parametrize("g", [-3, -5, -8])
def test_no_inclusion_quadric_spot_checks(g):
    reps = {d.family: C.representative(d, g) for d in C.enumerate_components(g)
            if d.family in ("G1", "G2", "G4", "G5")}
    assert slice_dim_oracle(list(reps["G4"].gens), 2) == 0
    assert cohomology_table(reps["G4"], (2, 2)).rows[2]["h0"] == 0
    for fam in ("G1", "G2", "G5"):
        assert slice_dim_oracle(list(reps[fam].gens), 2) >= 1, fam


@pytest.mark.parametrize("g", [-3, -5])
def test_g3_representative_lies_on_no_quadric(g):
    """The double line plus conic member has h^0 I(2) = 0, so quadrics do not separate G3 from G4."""
    D = atlas.double_line_conic(g)
    assert sorted(spectrum(D)) == sorted([g + 1, 0, 1, 1])
    assert slice_dim_oracle(list(D.gens), 2) == 0
    assert cohomology_table(D, (2, 2)).rows[2]["h0"] == 0


@pytest.mark.parametrize("g", [-2, -3, -9])
def test_connectedness_examples(g):
    cert = C.connectedness_certificate(g)
    assert cert.connected and cert.internal_ok and cert.verdict == "pass"
    edges = {(e.source, e.target): e for e in cert.edges}
    if g == -2:
        assert len(cert.nodes) == 5
    if g == -3:
        assert not any(n.startswith("G11") for n in cert.nodes)
        assert edges[("G7,1", "G1")].provenance == "verified-internal"
    if g == -9:
        assert edges[("G11,1,0", "G4")].provenance == "verified-internal"
    data = cert.to_json()
    assert {"nodes", "edges"} <= set(data)
    assert all({"from", "to", "provenance"} <= set(e) for e in data["edges"])


def test_connectedness_large_genus_uses_samples():
    cert = C.connectedness_certificate(-100)
    assert cert.verdict == "pass"
    internal = [e for e in cert.edges if e.provenance == "verified-internal"]
    assert internal and all(e.sampled for e in internal)


def test_failed_internal_certificate_breaks_verdict():
    store = C._Store()
    cert = C.connectedness_certificate(-3, store=store)
    key = next(iter(cert.certificates))
    bad = cert.certificates[key]
    bad.check("forced failure", False)
    assert not cert.internal_ok and cert.verdict == "fail"


def test_exports():
    data = C.components_json(-6)
    assert data["counts"]["four_line"] == 1
    assert json.loads(json.dumps(data)) == data
    rows = list(csv.DictReader(io.StringIO(C.components_csv(-6))))
    assert [r["label"] for r in rows] == [c["label"] for c in data["components"]]
    assert set(rows[0]) == {"label", "params", "dimension", "four_line", "description"}
