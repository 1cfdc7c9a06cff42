"""Certificates for flat families, flat limits and specializations."""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import asdict, dataclass, field

from .atlas import (ConstructionError, CurveFamily, ThinToThick, binary_resultant_vanishes, disjoint_double_lines,
                    double_line_conic, double_line_two_lines, extend_family, extend_limit, extremal_quartic,
                    intersection_length, is_thick, multiline_type, quasiprimitive_4line, thick_4line, thick_witness,
                    triple_line_type, wl_closure_family, wl_special, wl_witness)
from .cohomology import cohomology_table, curve_part, default_window, is_curve, rao_presentation
from .hilbert import HilbertData, degree_genus, hilbert, hilbert_from_leads
from .ideal import (Ideal, intersect, line_ring, minimal_generators, quotient, quotient_by_poly,
                    saturate_irrelevant, saturate_param, standard_ring)
from .modules import GradedComplex, minors_ideal
from .ring import Poly, substitute

DEFAULT_SAMPLES = (1, 2, 3, 5)


class NonFlatFamily(ValueError):
    """Sampled fibres or the limit do not share one Hilbert polynomial."""


@dataclass
class Check:
    id: str
    status: bool
    detail: str = ""


@dataclass
class SpecializationCertificate:
    name: str
    parameters: dict
    sampled_t: list
    seed: int | None = None
    fiber_invariants: list = field(default_factory=list)
    limit_ideal: str | None = None
    checks: list[Check] = field(default_factory=list)
    provenance: str = "verified-internal"

    def check(self, id: str, status, detail: str = "") -> bool:
        self.checks.append(Check(id, bool(status), detail))
        return bool(status)

    @property
    def verdict(self) -> str:
        return "pass" if self.checks and all(c.status for c in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def failures(self) -> list[str]:
        return [c.id for c in self.checks if not c.status]

    def to_json(self) -> dict:
        return {"name": self.name, "parameters": self.parameters, "seed": self.seed,
                "sampled_t": list(self.sampled_t), "fiber_invariants": self.fiber_invariants,
                "limit_ideal": self.limit_ideal,
                "checks": [asdict(c) for c in self.checks],
                "provenance": self.provenance, "verdict": self.verdict}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()[:16]


# -- fibres and limits -------------------------------------------------------------

def family_fiber(F: CurveFamily, t0: int) -> Ideal:
    """Substitute t = t0 and saturate by the irrelevant ideal."""
    S = standard_ring(F.ideal.ring.char)
    return saturate_irrelevant(Ideal(S, F.fiber_generators(t0)))


def _hp(I: Ideal) -> tuple:
    H = hilbert(I)
    return H.dimension, tuple(H.poly)


def _hp_text(key) -> str:
    dim, poly = key
    return f"dim {dim}: " + " + ".join(f"{c}*n^{k}" for k, c in enumerate(poly))


def generic_hilbert(J: Ideal, param: str = "t") -> HilbertData:
    """Hilbert data of the generic fibre of a family over k[t].

    With t in the last block, a Groebner basis over k[t] stays one over k(t), so
    the generic initial ideal is generated by the x,y,z,w parts of the leads.
    """
    R = J.ring
    i = R.index(param)
    keep = [k for k in range(R.nvars) if k != i]
    leads = [tuple(R.unpack(m)[k] for k in keep) for m in J.gb().leads]
    return hilbert_from_leads(leads, len(keep))


def flat_limit_zero(F: CurveFamily, samples=DEFAULT_SAMPLES) -> Ideal:
    """((J : t^inf) + (t)) restricted to k[x,y,z,w], then saturated.

    Raises NonFlatFamily if sampled fibres disagree or the limit has a
    different Hilbert polynomial.
    """
    keys = {t0: _hp(family_fiber(F, t0)) for t0 in samples}
    if len(set(keys.values())) != 1:
        raise NonFlatFamily(f"Hilbert polynomial jumps across samples: {keys}")
    J = saturate_param(F.ideal, F.param)
    S = standard_ring(F.ideal.ring.char)
    L = saturate_irrelevant(Ideal(S, [S.convert(substitute(f, F.param, 0)) for f in J.gens]))
    if _hp(L) != next(iter(keys.values())):
        raise NonFlatFamily("flat limit has a different Hilbert polynomial")
    return minimal_generators(L)


def _table_rows(I: Ideal, window):
    return cohomology_table(I, window).rows


def semicontinuity(general: Ideal, special: Ideal, window=None) -> tuple[bool, str]:
    """h^i(I_general(n)) <= h^i(I_special(n)) for i = 0, 1, 2 on the window."""
    if window is None:
        lo1, hi1 = default_window(general)
        lo2, hi2 = default_window(special)
        window = (min(lo1, lo2), max(hi1, hi2))
    A, B = _table_rows(general, window), _table_rows(special, window)
    for n in range(window[0], window[1] + 1):
        for key in ("h0", "h1", "h2"):
            if A[n][key] > B[n][key]:
                return False, f"h^{key[1]} at n={n}: {A[n][key]} > {B[n][key]}"
    return True, f"window {window}"


def _fiber_record(t0, I: Ideal, **extra) -> dict:
    d, g = degree_genus(I)
    rec = {"t": t0, "degree": d, "genus": g, "hilbert_poly": [str(c) for c in hilbert(I).poly]}
    rec.update(extra)
    return rec


def _mod_xy(f: Poly) -> Poly:
    return substitute(substitute(f, "x", 0, drop=False), "y", 0, drop=False)


# -- thin to thick ----------------------------------------------------------------

def verify_thintothick(a: int, b: int, c: int, samples=(0, 1, 2, 3, 5), exact_upto: int = 12
                       ) -> SpecializationCertificate:
    T = ThinToThick(a, b, c)
    cert = SpecializationCertificate("thintothick", {"a": a, "b": b, "c": c}, list(samples))
    M1, M2, M3, P = T.matrices()
    R = M1.ring
    cert.check("M1*M2=0", (M1 @ M2).is_zero())
    cert.check("M2*M3=0", (M2 @ M3).is_zero())
    cert.check("matrices-homogeneous", all(M.is_homogeneous() for M in (M1, M2, M3, P)))
    PM2 = P @ M2
    cert.check("P*M2=0 mod (x,y)", all(not _mod_xy(e) for row in PM2.rows for e in row))
    I3 = minors_ideal(M3, 3)
    x, y, z = R.var("x"), R.var("y"), R.var("z")
    cert.check("x^3,y^3,z^(3a+b+2) in I_3(M3)",
               all(I3.contains(f) for f in (x**3, y**3, z ** (3 * a + b + 2))))
    I6 = minors_ideal(M2, 6)
    cert.check("x^6,y^6 in I_6(M2)", I6.contains(x**6) and I6.contains(y**6))
    # triple-line family: exactness per degree and flatness
    JW = Ideal(R, M1.rows[0])
    W_hp = set()
    gen_W = generic_hilbert(JW)
    for t0 in samples:
        mats = T.matrices(t0)
        S = mats[0].ring
        Cx = GradedComplex(S, [[0], T.F1, T.F2, T.F3], list(mats[:3]))
        W = Ideal(S, mats[0].rows[0])
        HW = hilbert(W)
        W_hp.add(tuple(HW.poly))
        ok = all(Cx.euler_characteristic(n) == HW.value(n) for n in range(0, exact_upto + 1))
        cert.check(f"W-resolution-euler t={t0}", ok and Cx.compositions_vanish())
    cert.check("W-family-flat", len(W_hp) == 1 and tuple(gen_W.poly) in W_hp,
               f"generic {[str(c) for c in gen_W.poly]}")
    # 4-line fibres
    hps = set()
    fibers = {}
    for t0 in samples:
        C = T.fiber(t0)
        fibers[t0] = C
        d, g = degree_genus(C)
        hps.add(_hp(C))
        thick = is_thick(C)
        rec = {"thick": thick}
        cert.check(f"genus t={t0}", (d, g) == (4, T.genus), f"(d,g)=({d},{g})")
        cert.check(f"curve t={t0}", is_curve(C).is_curve)
        if t0 % R.char == 0:
            cert.check("t=0 fibre thick", thick)
        else:
            typ = multiline_type(C)
            rec["type"] = list(typ)
            cert.check(f"type t={t0}", typ == (a, b, c) and not thick, f"type {typ}")
        cert.fiber_invariants.append(_fiber_record(t0, C, **rec))
    cert.check("constant Hilbert polynomial", len(hps) == 1)
    if 0 in fibers:
        general = next(t0 for t0 in samples if t0)
        ok, detail = semicontinuity(fibers[general], fibers[0])
        cert.check("semicontinuity", ok, detail)
        cert.limit_ideal = fibers[0].to_text()
    return cert


# -- extend ----------------------------------------------------------------------

def verify_extend(a: int, b: int, samples=DEFAULT_SAMPLES) -> SpecializationCertificate:
    if a < 0 or b < 0:
        raise ConstructionError("need a, b >= 0")
    F = extend_family(a, b)
    g = -3 * a - b
    cert = SpecializationCertificate("extend", {"a": a, "b": b}, list(samples))
    S = standard_ring()
    L = Ideal(S, ["x", "w"])
    hps = set()
    fibers = {}
    for t0 in samples:
        C = family_fiber(F, t0)
        fibers[t0] = C
        hps.add(_hp(C))
        d, gg = degree_genus(C)
        Wt = Ideal(S, [S.convert(substitute(f, "t", t0)) for f in _extend_triple_gens(a, b)])
        length = intersection_length(Wt, L)
        typ = triple_line_type(Wt)
        cert.check(f"genus t={t0}", (d, gg) == (4, g), f"(d,g)=({d},{gg})")
        cert.check(f"F1 member t={t0}", length == 3 and typ == (a, b) and is_curve(Wt).is_curve,
                   f"length {length}, type {typ}")
        cert.fiber_invariants.append(_fiber_record(t0, C, length=length, type=list(typ)))
    gen = generic_hilbert(F.ideal)
    cert.check("constant Hilbert polynomial", len(hps) == 1 and (gen.dimension, tuple(gen.poly)) in hps)
    try:
        lim = flat_limit_zero(F, samples)
    except NonFlatFamily as e:
        cert.check("flat limit", False, str(e))
        return cert
    cert.limit_ideal = lim.to_text()
    cert.check("limit = I_0 ∩ I_L", lim == extend_limit(a, b))
    rec = is_curve(lim)
    cert.check("limit extremal", rec.is_curve and rec.spectrum_class == "extremal", str(rec.spectrum))
    W0 = curve_part(lim + Ideal(S, ["x", "y"]) ** 3)
    a0 = triple_line_type(W0)[0]
    cert.check("double-line type does not grow", a0 <= a, f"a' = {a0}")
    ok, detail = semicontinuity(fibers[samples[0]], lim)
    cert.check("semicontinuity", ok, detail)
    return cert


def _extend_triple_gens(a: int, b: int) -> list[Poly]:
    from .ideal import family_ring

    R = family_ring()
    qt = R(f"x*z^{a + 1} - t*y*w^{a + 1}")
    x, y = R.var("x"), R.var("y")
    return [x**3, x * x * y, x * y * y, y**3, x * qt, y * qt, R(f"z^{b}*t^2") * qt - R(f"x^2*w^{a + b}")]


# -- residual triples on a double surface ---------------------------------------------

@dataclass
class ResidualTriple:
    z_degree: int
    z_degree_direct: int
    R: Ideal
    P: Ideal
    Z: Ideal

    @property
    def consistent(self) -> bool:
        return self.z_degree == self.z_degree_direct

    def to_json(self) -> dict:
        return {"z_degree": self.z_degree, "z_degree_direct": self.z_degree_direct,
                "R": self.R.to_text(), "P": self.P.to_text()}


class DegenerateTriple(ValueError):
    """The residual curve is empty (C lies on F itself)."""


def residual_triple(I_C: Ideal, f) -> ResidualTriple:
    """Triple {Z, R, P} of a curve C on the double surface 2F.

    P is the curve part of C ∩ F, R = (I_C : f), and deg Z is obtained both
    from the genus relation g(C) = g(P) + g(R) + deg(R) deg(F) - deg Z - 1 and
    directly as the length of ((I_C + (f)) : I_P).
    """
    S = I_C.ring
    f = S(f) if not isinstance(f, Poly) else f
    if not I_C.contains(f * f):
        raise ConstructionError("C is not contained in the double surface 2F")
    Rr = saturate_irrelevant(quotient_by_poly(I_C, f))
    if Rr.is_unit():
        raise DegenerateTriple("C lies on F: the residual curve is empty")
    CF = I_C + Ideal(S, [f])
    P = curve_part(CF)
    dR, gR = degree_genus(Rr)
    _, gP = degree_genus(P)
    _, gC = degree_genus(I_C)
    z_eq = gP + gR + dR * f.degree() - gC - 1
    Zpts = saturate_irrelevant(quotient(CF, P))
    H = hilbert(Zpts)
    z_direct = 0 if H.dimension <= 0 else int(H.poly[0]) if H.dimension == 1 else -1
    return ResidualTriple(z_eq, z_direct, minimal_generators(Rr), P, Zpts)


def _h1_line(m: int) -> int:
    """h^1(O_{P^1}(m)) = dim k[z,w]_{-m-2}."""
    return max(0, -m - 1)


def verify_disjoint_doubles(b: int, c: int) -> SpecializationCertificate:
    """Necessary conditions for a type-(0,b,c) 4-line to be a limit of disjoint double lines."""
    if not 0 <= b <= c:
        raise ConstructionError("need 0 <= b <= c")
    cert = SpecializationCertificate("disjoint_doubles", {"b": b, "c": c}, [1], provenance="cited-external")
    C = quasiprimitive_4line(0, b, c, 1)
    S = C.ring
    Q = S("x*w - y*z")
    Y = Ideal(S, ["x", "y"])
    D = curve_part(C + Y**2)
    cert.check("D on Q", D.contains(Q))
    cert.check("C on 2Q", C.contains(Q * Q))
    U = disjoint_double_lines(-1 - b, -1 - c)
    cert.check("equal Hilbert polynomials", _hp(C) == _hp(U),
               f"genus {degree_genus(C)[1]} vs {degree_genus(U)[1]}")
    T = residual_triple(C, Q)
    cert.check("triple shape R = P = D", T.R == D and T.P == D)
    cert.check("deg Z = (c-b) + 2(b+2)", T.z_degree == T.z_degree_direct == (c - b) + 2 * (b + 2),
               f"{T.z_degree} / {T.z_degree_direct}")
    on_line = intersection_length(T.Z, Y)
    rest = T.z_degree_direct - on_line
    cert.check("deg(Z ∩ L) = c+2", on_line == c + 2, str(on_line))
    h1 = _h1_line(on_line - 2) + _h1_line(rest - 2)
    cert.check("H^1(O_D(Z+D-Q)) = 0", h1 == 0, f"bound {h1}")
    cert.fiber_invariants.append(_fiber_record(1, C, type=[0, b, c]))
    return cert


# -- the subquotient example ---------------------------------------------------------

def _random_form(SL, d: int, rng: random.Random) -> Poly:
    f = SL.zero()
    for k in range(d + 1):
        f = f + SL.monomial((d - k, k), rng.randrange(SL.char))
    return f


def _quot_dims(SL, gens, lo: int, hi: int, shift: int) -> dict[int, int]:
    H = hilbert(Ideal(SL, gens))
    return {n: H.value(n - shift) for n in range(lo, hi + 1)}


def verify_perrin(g: int, seed: int = 0, retries: int = 20) -> SpecializationCertificate:
    """Graded identities comparing a general thick 4-line C and an extremal curve E.

    M = S_L/(a, lf)(-g) is the Rao module of E, J = lM ≅ S_L/(a, f)(-g-1), and
    J/M_1 ≅ S_L/(a,b,c)(-g-1) with M_1 = (lb, lc).
    """
    if g > -3:
        raise ConstructionError("need g <= -3")
    SL = line_ring()
    S = standard_ring()
    rng = random.Random(seed)
    for _ in range(retries):
        A, B, Cc = (_random_form(SL, 1 - g, rng) for _ in range(3))
        l = _random_form(SL, 1, rng)
        f = _random_form(SL, 1, rng) * B + _random_form(SL, 1, rng) * Cc
        if (hilbert(Ideal(SL, [A, B, Cc])).dimension == 0 and not binary_resultant_vanishes(A, l)
                and not binary_resultant_vanishes(A, f)):
            break
    else:
        raise ConstructionError("no admissible random forms found")
    cert = SpecializationCertificate("perrin", {"g": g}, [], seed=seed)
    C = thick_4line(g, S.convert(A), S.convert(B), S.convert(Cc))
    E = extremal_quartic(g)
    lo, hi = g - 2, 8
    tc, te = _table_rows(C, (lo, hi)), _table_rows(E, (lo, hi))
    M = _quot_dims(SL, [A, l * f], lo, hi, g)
    MJ = _quot_dims(SL, [A, l], lo, hi, g)
    Q = _quot_dims(SL, [A, l * B, l * Cc, l * f], lo, hi, g)
    JM1 = {n: Q[n] - MJ[n] for n in Q}
    M1 = {n: M[n] - MJ[n] - JM1[n] for n in M}
    rng_n = range(lo, hi + 1)
    cert.check("M = Rao module of E (dims)", all(M[n] == te[n]["h1"] for n in rng_n))
    cert.check("J/M1 = Rao module of C (dims)", all(JM1[n] == tc[n]["h1"] for n in rng_n))
    cert.check("dim(M/J)_n = 1 exactly for g <= n <= 0",
               all(MJ[n] == (1 if g <= n <= 0 else 0) for n in rng_n))
    cert.check("dim(M/J)_n = h2 I_E - h2 I_C", all(MJ[n] == te[n]["h2"] - tc[n]["h2"] for n in rng_n))
    cert.check("dim(M1)_n = h0 I_E - h0 I_C", all(M1[n] == te[n]["h0"] - tc[n]["h0"] for n in rng_n))
    cert.check("thick fibre in (x,y)^2", is_thick(C))
    cert.check("extremal fibre not in (x,y)^2", not (Ideal(S, ["x", "y"]) ** 2).contains_ideal(E))
    ok, detail = semicontinuity(C, E, (lo, hi))
    cert.check("semicontinuity C <= E", ok, detail)
    cert.fiber_invariants = [{"curve": "thick", **_fiber_record(None, C)},
                             {"curve": "extremal", **_fiber_record(None, E)}]
    cert.parameters["dims"] = {"M": M, "M/J": MJ, "J/M1": JM1, "M1": M1}
    return cert


# -- triple line union a line: closures ------------------------------------------------

def verify_wl_closure(kind: str, a: int, g: int, samples=DEFAULT_SAMPLES) -> SpecializationCertificate:
    """The family (1-t) l h0 + t h joining an F2 (resp. F4) curve to F1 (resp. F3)."""
    kind = {"F2<F1": "F2", "F4<F3": "F4"}.get(kind, kind)
    F = wl_closure_family(kind, a, g)  # raises on range violations
    base = "F1" if kind == "F2" else "F3"
    wit = wl_witness(base, a, g)
    sp = wl_special(kind, a, g)
    S = wit.Z.ring
    IY = Ideal(S, ["x", "y"])
    cert = SpecializationCertificate("wl_closure", {"kind": kind, "a": a, "g": g}, list(samples))
    want_len = 3 if base == "F1" else 2
    hps, fibers = set(), {}
    for t0 in samples:
        C = family_fiber(F, t0)
        fibers[t0] = C
        hps.add(_hp(C))
        ht = S.convert(wit.L.gens[1]) * sp.h.scale((1 - t0) % S.char) + wit.h.scale(t0)
        Wt = minimal_generators(Ideal(S, [u * v for u in IY.gens for v in wit.Z.gens] + [ht]))
        ok = is_curve(Wt).is_curve
        typ = triple_line_type(Wt) if ok else None
        length = intersection_length(Wt, wit.L)
        d, gg = degree_genus(C)
        cert.check(f"genus t={t0}", (d, gg) == (4, g), f"(d,g)=({d},{gg})")
        cert.check(f"{base} member t={t0}", ok and typ == (a, wit.b) and length == want_len,
                   f"type {typ}, length {length}")
        cert.fiber_invariants.append(_fiber_record(t0, C, length=length))
    gen = generic_hilbert(F.ideal)
    cert.check("constant Hilbert polynomial", len(hps) == 1 and (gen.dimension, tuple(gen.poly)) in hps)
    W0 = minimal_generators(Ideal(S, [u * v for u in IY.gens for v in sp.Z.gens] + [sp.h]))
    rec = is_curve(W0)
    cert.check("W0 locally CM of type (a, b-1)", rec.is_curve and triple_line_type(W0) == (a, sp.b))
    l0 = intersection_length(W0, sp.L)
    lz = intersection_length(sp.Z, sp.L)
    want = (2, 2) if kind == "F2" else (1, 1)
    cert.check(f"{kind} lengths", (l0, lz) == want, f"W0∩L {l0}, Z∩L {lz}")
    try:
        lim = flat_limit_zero(F, samples)
    except NonFlatFamily as e:
        cert.check("flat limit", False, str(e))
        return cert
    cert.limit_ideal = lim.to_text()
    declared = minimal_generators(intersect(W0, sp.L))
    cert.check("limit contains W0 ∪ L", declared.contains_ideal(lim))
    cert.check("equal genus", degree_genus(lim) == degree_genus(declared) == (4, g))
    cert.check("limit = W0 ∪ L", lim == declared)
    ok, detail = semicontinuity(fibers[samples[0]], lim)
    cert.check("semicontinuity", ok, detail)
    return cert


# -- thick 4-lines with small j ------------------------------------------------------

def verify_thick_witness(g: int, j: int) -> SpecializationCertificate:
    """A thick 4-line built from (w^{1-g}, w^{3-g-j} z^{j-2}, z^{1-g}) and a non-thick
    curve (double line with two lines for j = 2, with a conic for j = 3) share the
    spectrum {g+1, 0, 1, 1} and the Rao invariant j, so both lie in one family H_j."""
    if j not in (2, 3) or g > -1:
        raise ConstructionError("need j in {2, 3} and g <= -1")
    cert = SpecializationCertificate("thick_witness", {"g": g, "j": j}, [])
    T = thick_witness(g, j)
    other = double_line_two_lines(g) if j == 2 else double_line_conic(g)
    want = sorted([g + 1, 0, 1, 1])
    for name, I in (("thick", T), ("other", other)):
        rec = is_curve(I)
        pres = rao_presentation(I)
        cert.check(f"{name} genus", (rec.degree, rec.genus) == (4, g), f"({rec.degree},{rec.genus})")
        cert.check(f"{name} spectrum", rec.spectrum is not None and sorted(rec.spectrum) == want,
                   str(rec.spectrum))
        cert.check(f"{name} j (resolution)", pres.j == j, str(pres.j))
        cert.check(f"{name} j (Hilbert series)", pres.j_from_dims == j, str(pres.j_from_dims))
        cert.fiber_invariants.append({"curve": name, "spectrum": rec.spectrum, "j": pres.j})
    cert.check("witness is thick", is_thick(T))
    cert.check("other is not thick", not is_thick(other))
    return cert
