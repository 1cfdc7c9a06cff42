"""Hilbert series and Hilbert polynomials from leading-term ideals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .ideal import Ideal


def _padd(a: list[int], b: list[int], shift: int = 0, sign: int = 1) -> list[int]:
    n = max(len(a), len(b) + shift)
    out = a + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += sign * c
    return out


def _pmul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _minimalize(gens: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    gens = sorted(set(gens), key=sum)
    out: list[tuple[int, ...]] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def monomial_numerator(gens: Sequence[tuple[int, ...]]) -> list[int]:
    """Numerator N(t) of the Hilbert series of k[x_1..x_n]/(gens) over (1-t)^n.

    Bigatti-style pivoting: N(I) = N(I + (p)) + t^deg(p) N(I : p).
    """
    gens = _minimalize([tuple(g) for g in gens])
    if not gens:
        return [1]
    if any(sum(g) == 0 for g in gens):
        return [0]
    # base case: pairwise coprime generators
    support = [0] * len(gens[0])
    coprime = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if support[i]:
                    coprime = False
                support[i] = 1
    if coprime:
        out = [1]
        for g in gens:
            d = sum(g)
            out = _pmul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the most frequent variable among non-pure generators
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    i = max(range(n), key=lambda k: counts[k])
    exps = sorted(g[i] for g in gens if g[i] and sum(1 for e in g if e) > 1)
    e = exps[len(exps) // 2]
    pivot = tuple(e if k == i else 0 for k in range(n))
    plus = gens + [pivot]
    colon = [tuple(max(0, a - b) for a, b in zip(g, pivot)) for g in gens]
    return _padd(monomial_numerator(plus), monomial_numerator(colon), shift=e)


@dataclass
class HilbertData:
    numerator: list[int]
    nvars: int
    dimension: int  # Krull dimension of S/I
    poly: list[Fraction]  # Hilbert polynomial coefficients, constant term first

    def value(self, n: int) -> int:
        """dim (S/I)_n exactly, from the series."""
        if n < 0:
            return 0
        k = self.nvars
        return sum(c * comb(n - i + k - 1, k - 1) for i, c in enumerate(self.numerator) if n - i >= 0)

    def poly_value(self, n: int) -> int:
        v = sum(c * n**k for k, c in enumerate(self.poly))
        assert v.denominator == 1
        return int(v)

    @property
    def is_empty(self) -> bool:
        return not any(self.numerator)

    @property
    def degree(self) -> int:
        """Leading coefficient times (dim-1)!, i.e. the degree of the scheme."""
        if self.dimension <= 0:
            return sum(self.numerator) if self.dimension == 0 else 0
        from math import factorial

        return int(self.poly[self.dimension - 1] * factorial(self.dimension - 1))

    def regularity_index(self) -> int:
        """Smallest n0 with value(n) = poly_value(n) for all n >= n0."""
        last = len(self.numerator) + self.nvars
        n0 = last
        for n in range(last, -1, -1):
            if self.value(n) != self.poly_value(n):
                break
            n0 = n
        return n0


def _fit_poly(values: list[tuple[int, int]]) -> list[Fraction]:
    """Lagrange interpolation returning coefficients (constant first)."""
    m = len(values)
    coeffs = [Fraction(0)] * m
    for i, (xi, yi) in enumerate(values):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(values):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        for k in range(m):
            coeffs[k] += yi * basis[k] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_from_leads(leads: Sequence[tuple[int, ...]], nvars: int) -> HilbertData:
    num = monomial_numerator(leads) if leads else [1]
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    # Krull dimension: order of vanishing of N at t = 1 subtracted from nvars
    q = list(num)
    k = 0
    while any(q) and sum(q) == 0:
        # divide by (1 - t)
        out, acc = [], 0
        for c in q[:-1]:
            acc += c
            out.append(acc)
        q = out
        k += 1
    dim = nvars - k if any(num) else -1
    data = HilbertData(num, nvars, dim, [Fraction(0)])
    if dim <= 0:
        data.poly = [Fraction(sum(num))] if dim == 0 else [Fraction(0)]
        return data
    start = len(num) + 1
    pts = [(n, data.value(n)) for n in range(start, start + dim + 2)]
    data.poly = _fit_poly(pts)
    return data


def hilbert(I: Ideal) -> HilbertData:
    """Hilbert function and polynomial of S/I (weight-1 variables only)."""
    R = I.ring
    if R.params:
        raise ValueError("hilbert needs an ideal in a positively graded ring")
    G = I.gb()
    leads = [R.unpack(m) for m in G.leads]
    return hilbert_from_leads(leads, R.nvars)


def degree_genus(I: Ideal) -> tuple[int, int]:
    """(d, g) from P(n) = d n + 1 - g."""
    H = hilbert(I)
    if H.dimension != 2:
        raise ValueError(f"not a curve: projective dimension {H.dimension - 1}")
    p = H.poly + [Fraction(0)] * (2 - len(H.poly))
    d, c = p[1], p[0]
    return int(d), int(1 - c)
