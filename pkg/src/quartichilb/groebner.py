"""Buchberger's algorithm with sugar selection and the Gebauer-Moeller criteria."""

from __future__ import annotations

import heapq
import threading
from typing import Iterable, Sequence

from .ring import Poly, Ring


def _inv(a: int, p: int) -> int:
    return pow(a, p - 2, p)


class _Reducer:
    """Basis elements prepared for fast reduction (monic, tail terms cached)."""

    __slots__ = ("ring", "leads", "lows", "tails", "polys")

    def __init__(self, ring: Ring, polys: Iterable[Poly] = ()):
        self.ring = ring
        self.leads: list[int] = []
        self.lows: list[int] = []
        self.tails: list[list[tuple[int, int]]] = []
        self.polys: list[Poly] = []
        for g in polys:
            self.add(g)

    def add(self, g: Poly) -> int:
        g = g.monic()
        lm = g.lm
        self.leads.append(lm)
        self.lows.append(lm & self.ring._d["lowmask"])
        self.tails.append([(m, c) for m, c in g._t.items() if m != lm])
        self.polys.append(g)
        return len(self.polys) - 1

    def find(self, m: int, active=None) -> int:
        d = self.ring._d
        G = d["guard"]
        ml = (m & d["lowmask"]) | G
        lows = self.lows
        idx = range(len(lows)) if active is None else active
        for i in idx:
            if (ml - lows[i]) & G == G:
                return i
        return -1

    def reduce(self, f: Poly, full: bool = True, active=None) -> Poly:
        ring = self.ring
        p = ring.char
        t = dict(f._t)
        if not t:
            return f
        heap = [-m for m in t]
        heapq.heapify(heap)
        rem: dict[int, int] = {}
        leads, tails = self.leads, self.tails
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            m = -pop(heap)
            c = t.pop(m, 0)
            if not c:
                continue
            i = self.find(m, active)
            if i < 0:
                rem[m] = c
                if not full:
                    rem.update(t)
                    break
                continue
            q = m - leads[i]
            for gm, gc in tails[i]:
                k = gm + q
                old = t.get(k)
                if old is None:
                    t[k] = (-c * gc) % p
                    push(heap, -k)
                else:
                    v = (old - c * gc) % p
                    if v:
                        t[k] = v
                    else:
                        del t[k]
        return Poly._raw(ring, rem)


def _sugar_deg(ring: Ring, m: int) -> int:
    return ring.tdeg(m)


def buchberger(polys: Sequence[Poly], ring: Ring | None = None) -> list[Poly]:
    """Reduced Groebner basis of the ideal generated by ``polys``."""
    polys = [f for f in polys if f]
    if not polys:
        return []
    ring = ring or polys[0].ring
    red = _Reducer(ring)
    sugar: list[int] = []
    active: list[int] = []
    pairs: list[tuple] = []  # heap of (sugar, i, j, lcm)
    pair_set: dict[tuple[int, int], int] = {}

    def lcm(a, b):
        return ring.lcm(a, b)

    def update(h: int):
        nonlocal pairs
        lh = red.leads[h]
        # candidate pairs (g, h)
        cands = [(g, lcm(red.leads[g], lh)) for g in active]
        keep = []
        for k, (g, L) in enumerate(cands):
            if ring.coprime(red.leads[g], lh):
                keep.append((g, L, True))
                continue
            dominated = False
            for k2, (g2, L2) in enumerate(cands):
                if k2 == k:
                    continue
                if ring.divides(L2, L) and (L2 != L or k2 < k):
                    # earlier equal lcm or a proper divisor makes this pair redundant,
                    # unless the dominating pair is itself coprime-redundant
                    dominated = True
                    break
            if not dominated:
                keep.append((g, L, False))
        # chain criterion on old pairs
        new_pairs = []
        for entry in pairs:
            s, i, j, L = entry
            if ring.divides(lh, L):
                Li = lcm(red.leads[i], lh)
                Lj = lcm(red.leads[j], lh)
                if Li != L and Lj != L:
                    pair_set.pop((i, j), None)
                    continue
            new_pairs.append(entry)
        for g, L, coprime in keep:
            if coprime:
                continue
            s = max(sugar[g] + _sugar_deg(ring, L - red.leads[g]), sugar[h] + _sugar_deg(ring, L - lh))
            new_pairs.append((s, g, h, L))
            pair_set[(g, h)] = s
        heapq.heapify(new_pairs)
        pairs = new_pairs
        active[:] = [g for g in active if not ring.divides(lh, red.leads[g])]
        active.append(h)

    # seed with the generators, sorted for determinism
    seeds = sorted(polys, key=lambda f: (f.total_degree(), f.lm))
    for f in seeds:
        r = red.reduce(f, full=True, active=active)
        if r:
            h = red.add(r)
            sugar.append(r.total_degree())
            update(h)
    while pairs:
        s, i, j, L = heapq.heappop(pairs)
        if pair_set.pop((i, j), None) is None:
            continue
        gi, gj = red.polys[i], red.polys[j]
        sp = gi.shift(L - red.leads[i]) - gj.shift(L - red.leads[j])
        r = red.reduce(sp, full=True, active=active)
        if r:
            h = red.add(r)
            sugar.append(max(s, r.total_degree()))
            update(h)
    return _interreduce([red.polys[i] for i in active], ring)


def _interreduce(polys: list[Poly], ring: Ring) -> list[Poly]:
    polys = sorted((g.monic() for g in polys), key=lambda g: g.lm)
    minimal = []
    for g in polys:
        if not any(ring.divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = _Reducer(ring, minimal[:k] + minimal[k + 1:])
        lm = g.lm
        tail = Poly._raw(ring, {m: c for m, c in g._t.items() if m != lm})
        r = others.reduce(tail)
        r._t[lm] = 1
        out.append(Poly._raw(ring, r._t))
    return out


class GroebnerBasis:
    """A reduced Groebner basis, sorted by increasing leading monomial."""

    def __init__(self, ring: Ring, polys: Sequence[Poly]):
        self.ring = ring
        self.polys = tuple(sorted(polys, key=lambda g: g.lm))
        self._red = _Reducer(ring, self.polys)

    @property
    def order(self):
        return self.ring.order

    @property
    def leads(self) -> list[int]:
        return [g.lm for g in self.polys]

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __eq__(self, other):
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.polys == other.polys

    def __hash__(self):
        return hash(self.polys)

    def is_unit(self) -> bool:
        return len(self.polys) == 1 and self.polys[0].is_constant()

    def normal_form(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            f = self.ring.convert(f)
        return self._red.reduce(f)

    def contains(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def standard_monomials(self, degree: int) -> list[int]:
        leads = self.leads
        div = self.ring.divides
        return [m for m in self.ring.monomials(degree) if not any(div(l, m) for l in leads)]

    def __repr__(self):
        return f"GroebnerBasis({[str(g) for g in self.polys]})"


def normal_form(f: Poly, G: GroebnerBasis) -> Poly:
    return G.normal_form(f)


_memo: dict = {}
_memo_lock = threading.Lock()


def groebner_basis(polys: Sequence[Poly], ring: Ring | None = None) -> GroebnerBasis:
    """Memoized reduced Groebner basis; the memo is write-once per key."""
    polys = [f for f in polys if f]
    if ring is None:
        if not polys:
            raise ValueError("ring required for the zero ideal")
        ring = polys[0].ring
    key = (ring, frozenset(frozenset(f.monic()._t.items()) for f in polys))
    hit = _memo.get(key)
    if hit is not None:
        return hit
    G = GroebnerBasis(ring, buchberger(polys, ring))
    with _memo_lock:
        return _memo.setdefault(key, G)
