"""Graded polynomial rings over a prime field and sparse polynomials.

Monomials are packed into single Python integers.  The high bits hold the
rows of a weight matrix describing the monomial order, the low bits hold the
raw exponent vector (one guarded field per variable).  Because every field is
linear in the exponents, multiplying monomials is integer addition and
comparing them in the monomial order is integer comparison.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

DEFAULT_CHAR = 32003

_EXP_BITS = 16  # raw exponent field, top bit is a guard
_KEY_BITS = 26
_EXP_MASK = (1 << (_EXP_BITS - 1)) - 1


class RingError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed polynomial or ideal text; carries a line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _grevlex_rows(idx: Sequence[int], n: int) -> list[list[int]]:
    rows = []
    for k in range(len(idx), 0, -1):
        row = [0] * n
        for i in idx[:k]:
            row[i] = 1
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Ring:
    """Polynomial ring k[vars] over F_p with a grading and a monomial order.

    ``order`` is ``"grevlex"``, ``"lex"`` or a tuple of variable blocks; a
    block order compares blocks left to right, grevlex inside each block.
    Variables listed in ``params`` have weight 0 (deformation parameters).
    """

    variables: tuple[str, ...]
    char: int = DEFAULT_CHAR
    order: object = None
    params: tuple[str, ...] = ()
    _d: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise RingError("duplicate variable names")
        if not is_prime(self.char) or self.char >= 2**31:
            raise RingError(f"characteristic {self.char} is not a prime below 2^31")
        for v in self.variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise RingError(f"bad variable name {v!r}")
        for t in self.params:
            if t not in self.variables:
                raise RingError(f"parameter {t} is not a ring variable")
        order = self.order
        if order is None:
            if self.params:
                order = (tuple(v for v in self.variables if v not in self.params), tuple(self.params))
            else:
                order = "grevlex"
        elif isinstance(order, list):
            order = tuple(tuple(b) for b in order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_d", self._derive())

    def _derive(self) -> dict:
        n = len(self.variables)
        pos = {v: i for i, v in enumerate(self.variables)}
        if self.order == "grevlex":
            rows = _grevlex_rows(list(range(n)), n)
        elif self.order == "lex":
            rows = [[int(i == j) for j in range(n)] for i in range(n)]
        elif isinstance(self.order, tuple):
            blocks = self.order
            flat = [v for b in blocks for v in b]
            if sorted(flat) != sorted(self.variables):
                raise RingError("block order must partition the variables")
            rows = []
            for b in blocks:
                rows += _grevlex_rows([pos[v] for v in b], n)
        else:
            raise RingError(f"unknown monomial order {self.order!r}")
        low = _EXP_BITS * n
        nrows = len(rows)
        unit = []
        for i in range(n):
            c = 1 << (_EXP_BITS * i)
            for r, row in enumerate(rows):
                c += row[i] << (low + _KEY_BITS * (nrows - 1 - r))
            unit.append(c)
        guard = 0
        for i in range(n):
            guard |= 1 << (_EXP_BITS * i + _EXP_BITS - 1)
        weights = tuple(0 if v in self.params else 1 for v in self.variables)
        return {
            "n": n,
            "pos": pos,
            "unit": tuple(unit),
            "lowmask": (1 << low) - 1,
            "guard": guard,
            "weights": weights,
        }

    # -- basic data -----------------------------------------------------
    @property
    def nvars(self) -> int:
        return self._d["n"]

    @property
    def p(self) -> int:
        return self.char

    @property
    def weights(self) -> tuple[int, ...]:
        return self._d["weights"]

    @property
    def graded_vars(self) -> tuple[str, ...]:
        return tuple(v for v in self.variables if v not in self.params)

    def index(self, var: str) -> int:
        try:
            return self._d["pos"][var]
        except KeyError:
            raise RingError(f"unknown variable {var!r}") from None

    def __str__(self):
        return f"F_{self.char}[{','.join(self.variables)}]"

    # -- monomials ------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        m = 0
        for e, c in zip(exps, self._d["unit"]):
            if e:
                if e < 0 or e > _EXP_MASK:
                    raise RingError("exponent out of range")
                m += e * c
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return _unpack(m, self._d["n"])

    def divides(self, a: int, b: int) -> bool:
        """True when monomial ``a`` divides monomial ``b``."""
        g = self._d["guard"]
        lm = self._d["lowmask"]
        return (((b & lm) | g) - (a & lm)) & g == g

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.unpack(a), self.unpack(b)
        return self.pack([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.unpack(a), self.unpack(b)
        return not any(x and y for x, y in zip(ea, eb))

    def mdeg(self, m: int) -> int:
        """Weighted degree (parameters have weight 0)."""
        return sum(e * w for e, w in zip(self.unpack(m), self._d["weights"]))

    def tdeg(self, m: int) -> int:
        return sum(self.unpack(m))

    def monomials(self, degree: int) -> list[int]:
        """All monomials of the given degree in the weight-1 variables, descending."""
        return list(_monomials(self, degree))

    def monomial_index(self, degree: int) -> dict[int, int]:
        return _monomial_index(self, degree)

    # -- construction ---------------------------------------------------
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})

    def const(self, c: int) -> "Poly":
        c %= self.char
        return Poly(self, {0: c} if c else {})

    def var(self, name: str) -> "Poly":
        return Poly(self, {self._d["unit"][self.index(name)]: 1})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Poly":
        c = coeff % self.char
        return Poly(self, {self.pack(exps): c} if c else {})

    def __call__(self, text) -> "Poly":
        if isinstance(text, Poly):
            return self.convert(text)
        if isinstance(text, int):
            return self.const(text)
        return parse_poly(self, text)

    def with_order(self, order) -> "Ring":
        return Ring(self.variables, self.char, order, self.params)

    def extend(self, new_vars: Sequence[str], order=None, params: Sequence[str] = ()) -> "Ring":
        """Ring with extra variables appended (default: they form a leading block)."""
        variables = tuple(new_vars) + self.variables
        if order is None:
            order = (tuple(new_vars), self.variables)
        return Ring(variables, self.char, order, tuple(params) + self.params)

    def drop(self, var: str) -> "Ring":
        variables = tuple(v for v in self.variables if v != var)
        order = self.order
        if isinstance(order, tuple):
            blocks = tuple(tuple(v for v in b if v != var) for b in order)
            blocks = tuple(b for b in blocks if b)
            order = blocks if len(blocks) > 1 else "grevlex"
        params = tuple(t for t in self.params if t != var)
        return Ring(variables, self.char, order, params)

    def convert(self, f: "Poly") -> "Poly":
        """Map a polynomial from another ring sharing variable names."""
        if f.ring == self:
            return f
        if f.ring.char != self.char:
            raise RingError("characteristic mismatch")
        src = f.ring
        idx = [self.index(v) if v in self._d["pos"] else None for v in src.variables]
        out = {}
        for m, c in f._t.items():
            e = src.unpack(m)
            ne = [0] * self.nvars
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise RingError(f"variable {src.variables[i]} absent from target ring")
                    ne[idx[i]] = k
            out[self.pack(ne)] = c
        return Poly(self, out)


@lru_cache(maxsize=1 << 16)
def _unpack(m: int, n: int) -> tuple[int, ...]:
    return tuple((m >> (_EXP_BITS * i)) & _EXP_MASK for i in range(n))


@lru_cache(maxsize=4096)
def _monomials(ring: Ring, degree: int) -> tuple[int, ...]:
    if degree < 0:
        return ()
    graded = [ring.index(v) for v in ring.graded_vars]
    out = []
    for combo in combinations_with_replacement(graded, degree):
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        out.append(ring.pack(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=4096)
def _monomial_index(ring: Ring, degree: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(_monomials(ring, degree))}


class Poly:
    """Sparse polynomial; immutable by convention.

    ``_t`` maps packed monomials to nonzero coefficients in ``[1, p)``.
    """

    __slots__ = ("ring", "_t")

    def __init__(self, ring: Ring, terms: Mapping[int, int] | None = None):
        self.ring = ring
        self._t = dict(terms) if terms else {}

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        f = cls.__new__(cls)
        f.ring = ring
        f._t = terms
        return f

    # -- inspection -----------------------------------------------------
    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """(exponent vector, coefficient) pairs, descending in the ring order."""
        return [(self.ring.unpack(m), self._t[m]) for m in sorted(self._t, reverse=True)]

    def monomials(self) -> list[int]:
        return sorted(self._t, reverse=True)

    def coeff(self, m: int) -> int:
        return self._t.get(m, 0)

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __len__(self):
        return len(self._t)

    @property
    def lm(self) -> int:
        return max(self._t)

    @property
    def lc(self) -> int:
        return self._t[max(self._t)]

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def degree(self) -> int:
        """Weighted degree (max over terms); -1 for the zero polynomial."""
        if not self._t:
            return -1
        return max(self.ring.mdeg(m) for m in self._t)

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(self.ring.tdeg(m) for m in self._t)

    def is_homogeneous(self) -> bool:
        degs = {self.ring.mdeg(m) for m in self._t}
        return len(degs) <= 1

    def variables_used(self) -> set[str]:
        used = set()
        for m in self._t:
            for v, e in zip(self.ring.variables, self.ring.unpack(m)):
                if e:
                    used.add(v)
        return used

    # -- arithmetic -----------------------------------------------------
    def _check(self, other) -> "Poly":
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.char
        t = dict(self._t)
        for m, c in other._t.items():
            v = (t.get(m, 0) + c) % p
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.char
        return Poly._raw(self.ring, {m: p - c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.char
        t: dict[int, int] = {}
        for m1, c1 in self._t.items():
            for m2, c2 in other._t.items():
                k = m1 + m2
                t[k] = (t.get(k, 0) + c1 * c2) % p
        return Poly._raw(self.ring, {m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c: int) -> "Poly":
        p = self.ring.char
        c %= p
        if not c:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: (v * c) % p for m, v in self._t.items()})

    def shift(self, mono: int, c: int = 1) -> "Poly":
        """Multiply by the monomial ``mono`` (packed) times scalar c."""
        p = self.ring.char
        return Poly._raw(self.ring, {m + mono: (v * c) % p for m, v in self._t.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self) -> "Poly":
        if not self._t:
            return self
        inv = pow(self.lc, self.ring.char - 2, self.ring.char)
        return self.scale(inv)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self._t == other._t

    def __hash__(self):
        return hash((self.ring, frozenset(self._t.items())))

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw(self.ring, {m: c for m, c in self._t.items() if self.ring.mdeg(m) == d})

    # -- printing -------------------------------------------------------
    def __str__(self):
        if not self._t:
            return "0"
        p = self.ring.char
        out = []
        for m in sorted(self._t, reverse=True):
            c = self._t[m]
            neg = c > p // 2
            a = p - c if neg else c
            e = self.ring.unpack(m)
            factors = [v if k == 1 else f"{v}^{k}" for v, k in zip(self.ring.variables, e) if k]
            body = "*".join(factors)
            if not body:
                s = str(a)
            elif a == 1:
                s = body
            else:
                s = f"{a}*{body}"
            if not out:
                out.append(("-" if neg else "") + s)
            else:
                out.append((" - " if neg else " + ") + s)
        return "".join(out)

    def __repr__(self):
        return f"Poly({self})"


# -- ring-core operations ---------------------------------------------------

def poly_product(f: Poly, g: Poly) -> Poly:
    return f * g


def substitute(f: Poly, var: str, value, drop: bool = True) -> Poly:
    """Replace ``var`` by a scalar or polynomial.

    With a scalar value the result lives in the ring without ``var``.  Weight-1
    variables may only be replaced by 0 or a linear form, so homogeneity is
    never broken.
    """
    R = f.ring
    i = R.index(var)
    weight = R.weights[i]
    if isinstance(value, Poly):
        if value.ring != R:
            value = R.convert(value)
        if value.is_constant():
            value = value.coeff(0)
    if isinstance(value, int):
        if weight and value % R.char and not f.is_constant():
            raise RingError(f"substituting a nonzero scalar for {var} breaks homogeneity")
        target = R.drop(var) if drop else R
        p = R.char
        out: dict[int, int] = {}
        powers: dict[int, int] = {}
        for m, c in f._t.items():
            e = list(R.unpack(m))
            k = e[i]
            e[i] = 0
            if k not in powers:
                powers[k] = pow(value, k, p)
            v = c * powers[k] % p
            if not v:
                continue
            if drop:
                e = e[:i] + e[i + 1:]
            mm = target.pack(e)
            out[mm] = (out.get(mm, 0) + v) % p
        return Poly._raw(target, {m: c for m, c in out.items() if c})
    if weight:
        if not (value.is_homogeneous() and value.degree() == 1):
            raise RingError(f"{var} may only be replaced by a linear form")
    result = R.zero()
    cache = {0: R.one()}
    for m, c in f._t.items():
        e = list(R.unpack(m))
        k = e[i]
        e[i] = 0
        if k not in cache:
            cache[k] = value ** k
        result = result + cache[k].shift(R.pack(e), c)
    return result


def linear_change(f: Poly, images: Mapping[str, Poly]) -> Poly:
    """Apply the ring endomorphism sending each named variable to a polynomial."""
    R = f.ring
    imgs = [images.get(v, R.var(v)) for v in R.variables]
    imgs = [R.convert(g) for g in imgs]
    pw: list[dict[int, Poly]] = [{0: R.one(), 1: g} for g in imgs]
    result: dict[int, int] = {}
    p = R.char
    for m, c in f._t.items():
        term = R.const(c)
        for i, k in enumerate(R.unpack(m)):
            if k:
                if k not in pw[i]:
                    pw[i][k] = imgs[i] ** k
                term = term * pw[i][k]
        for mm, cc in term._t.items():
            result[mm] = (result.get(mm, 0) + cc) % p
    return Poly._raw(R, {m: c for m, c in result.items() if c})


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^|\*|\+|-|\(|\)))")


def _tokenize(text: str, line: int):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", line, col)
        start = m.start(m.lastindex)
        toks.append((m.group(m.lastindex), m.lastindex, start + 1))
        pos = m.end()
    toks.append(("", 0, n + 1))
    return toks


class _Parser:
    def __init__(self, ring: Ring, text: str, line: int):
        self.R = ring
        self.toks = _tokenize(text, line)
        self.i = 0
        self.line = line

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self) -> Poly:
        if self.peek()[1] == 0:
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[1] != 0:
            self.fail(f"unexpected token {self.peek()[0]!r}")
        return f

    def expr(self) -> Poly:
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[1] == 3:
            sign = -1 if self.take()[0] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while self.peek()[1] == 3 and self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Poly:
        f = self.factor()
        while self.peek()[1] == 3 and self.peek()[0] == "*":
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[1] == 3 and self.peek()[0] == "^":
            self.take()
            tok = self.take()
            if tok[1] != 1:
                self.fail("expected integer exponent", tok)
            base = base ** int(tok[0])
        return base

    def atom(self) -> Poly:
        tok = self.take()
        text, kind, _ = tok
        if kind == 1:
            return self.R.const(int(text))
        if kind == 2:
            if text not in self.R.variables:
                self.fail(f"unknown variable {text!r}", tok)
            return self.R.var(text)
        if kind == 3 and text == "(":
            f = self.expr()
            if self.take()[0] != ")":
                self.fail("expected ')'", self.toks[self.i - 1])
            return f
        if kind == 3 and text == "-":
            return -self.factor()
        self.fail(f"unexpected token {text!r}" if text else "unexpected end of input", tok)


def parse_poly(ring: Ring, text: str, line: int = 1) -> Poly:
    return _Parser(ring, text, line).parse()


def parse_polys(ring: Ring, texts: Iterable[str]) -> list[Poly]:
    return [parse_poly(ring, s) for s in texts]
