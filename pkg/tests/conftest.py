"""Shared fixtures and independent oracles.

The oracles here use plain Python lists and modular Gaussian elimination so that
they share no code with the engine they check.
"""

from __future__ import annotations

import itertools
from math import comb

import pytest

from quartichilb import atlas
from quartichilb.ideal import Ideal, standard_ring

P = 32003


def rank_mod_p(rows, p=P) -> int:
    rows = [[c % p for c in r] for r in rows if any(c % p for c in r)]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [c * inv % p for c in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def exponents(n: int, nvars: int = 4):
    """All exponent vectors of total degree n."""
    for cut in itertools.combinations(range(n + nvars - 1), nvars - 1):
        prev, out = -1, []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(n + nvars - 2 - prev)
        yield tuple(out)


def poly_dict(f) -> dict:
    return {e: c for e, c in f.terms()}


def slice_dim_oracle(gens, n: int, nvars: int = 4) -> int:
    """dim of the degree-n part of the ideal, by spanning all monomial multiples."""
    basis = {e: i for i, e in enumerate(exponents(n, nvars))}
    rows = []
    for g in gens:
        d = g.degree()
        if d > n:
            continue
        terms = poly_dict(g)
        for m in exponents(n - d, nvars):
            row = [0] * len(basis)
            for e, c in terms.items():
                row[basis[tuple(a + b for a, b in zip(e, m))]] += c
            rows.append(row)
    return rank_mod_p(rows) if rows else 0


def standard_monomial_count(leads, n: int, nvars: int = 4) -> int:
    return sum(1 for e in exponents(n, nvars)
               if not any(all(a >= b for a, b in zip(e, l)) for l in leads))


def dim_S(n: int, nvars: int = 4) -> int:
    return comb(n + nvars - 1, nvars - 1) if n >= 0 else 0


@pytest.fixture(scope="session")
def S():
    return standard_ring()


@pytest.fixture(scope="session")
def corpus():
    return [(name, params, atlas.build(name, params)) for name, params in atlas.CORPUS]


def ideal(S, *gens) -> Ideal:
    return Ideal(S, list(gens))


# -- acceptance summary ------------------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


class criterion:
    """Record a PASS/FAIL line for acceptance criterion ``n``; failures still raise."""

    def __init__(self, n: int, what: str):
        self.n, self.what = n, what

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"{status} criterion {self.n}: {self.what}"
        if exc is not None:
            line += f" ({exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        ACCEPTANCE[self.n] = line
        print(line)
        return False


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
