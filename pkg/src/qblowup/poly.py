"""Exact multivariate polynomials over the rationals.

Coefficients are GMP rationals (``gmpy2.mpq``). A :class:`Polynomial` is an
immutable map from exponent tuples to nonzero coefficients living in a
:class:`PolyRing`, which fixes the variable names and the monomial order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import gmpy2
from gmpy2 import mpq

Rational = type(mpq(0))

INFINITY = float("inf")


def Q(value, den=None) -> Rational:
    """Coerce ``value`` (int, str, Fraction, mpq) to an exact rational."""
    if den is not None:
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return mpq(value, den)
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return mpq(int(value.numerator), int(value.denominator))
    return mpq(value)


def format_rational(c: Rational) -> str:
    if c.denominator == 1:
        return str(int(c.numerator))
    return f"{int(c.numerator)}/{int(c.denominator)}"


# ---------------------------------------------------------------------------
# monomial orders


def _grevlex_key(e):
    return (sum(e),) + tuple(-a for a in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``lex``, ``grevlex`` or ``block`` with a split index.

    ``block(k)`` compares the first ``k`` exponents by grevlex and breaks
    ties with grevlex on the rest; any monomial involving the first block is
    larger than every monomial in the second block alone.
    """

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.split <= 0:
            raise ValueError("block order needs a positive split index")

    def key(self, e):
        """Flat integer tuple; larger key means larger monomial."""
        if self.kind == "grevlex":
            return (sum(e),) + tuple(-a for a in reversed(e))
        if self.kind == "lex":
            return tuple(e)
        k = self.split
        return _grevlex_key(e[:k]) + _grevlex_key(e[k:])

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        m = re.fullmatch(r"block\((\d+)\)", text)
        if m:
            return cls("block", int(m.group(1)))
        return cls(text)


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k: int) -> MonomialOrder:
    return MonomialOrder("block", k)


@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring over the rationals in named variables."""

    variables: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for v in self.variables:
            if not _NAME.fullmatch(v):
                raise ValueError(f"invalid variable name {v!r}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        if order == self.order:
            return self
        return PolyRing(self.variables, order)

    def extend(self, names: Sequence[str], order: MonomialOrder | None = None) -> "PolyRing":
        """Ring with ``names`` appended to the variable list."""
        return PolyRing(self.variables + tuple(names), order or self.order)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = Q(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): mpq(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector length does not match ring arity")
        return Polynomial(self, {exps: Q(coeff)} if coeff != 0 else {})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def __call__(self, text) -> "Polynomial":
        if isinstance(text, Polynomial):
            return text.to_ring(self)
        if isinstance(text, str):
            return parse_polynomial(self, text)
        return self.const(text)

    def __str__(self):
        return f"Q[{', '.join(self.variables)}] ({self.order})"


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Immutable sparse polynomial; iteration is in descending ring order."""

    __slots__ = ("ring", "_terms", "_sorted", "_hash")

    def __init__(self, ring: PolyRing, terms: Mapping):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c != 0}
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # terms already free of zeros and owned by the caller
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    # -- structure -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in descending monomial order."""
        if self._sorted is None:
            key = self.ring.order.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Rational:
        return self._terms.get((0,) * self.ring.nvars, mpq(0))

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.items()[0]

    def LM(self):
        return self.leading_term()[0]

    def LC(self) -> Rational:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def variables_used(self) -> set:
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        lc = self.LC()
        if lc == 1:
            return self
        return Polynomial._raw(self.ring, {e: c / lc for e, c in self._terms.items()})

    def primitive(self) -> "Polynomial":
        """Scalar multiple with coprime integer coefficients and positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = gmpy2.lcm(den, c.denominator)
        num = 0
        for c in self._terms.values():
            num = gmpy2.gcd(num, (c * den).numerator)
        scale = mpq(den, num)
        if self.LC() < 0:
            scale = -scale
        return self.scale(scale)

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-home into ``ring``, matching variables by name."""
        if ring == self.ring:
            return self
        if ring.variables == self.ring.variables:
            return Polynomial._raw(ring, dict(self._terms))
        pos = []
        for i, v in enumerate(self.ring.variables):
            try:
                pos.append(ring.variables.index(v))
            except ValueError:
                if any(e[i] for e in self._terms):
                    raise ValueError(f"variable {v!r} does not exist in target ring") from None
                pos.append(None)
        n = ring.nvars
        out = {}
        for e, c in self._terms.items():
            f = [0] * n
            for i, a in enumerate(e):
                if a:
                    f[pos[i]] = a
            out[tuple(f)] = c
        return Polynomial._raw(ring, out)

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.variables == self.ring.variables:
                    return other.to_ring(self.ring)
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        c = Q(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: a * c for e, a in self._terms.items()})

    def mul_term(self, mono, c) -> "Polynomial":
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(e, mono)): a_c * c for e, a_c in self._terms.items()},
        )

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            raise TypeError("use exact_div for polynomial division")
        return self.scale(1 / Q(c))

    def exact_div(self, d: "Polynomial") -> "Polynomial":
        """Quotient of an exact division in the polynomial ring; raises if not exact."""
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q, r = self.ring.zero(), self
        lm, lc = d.leading_term()
        while r:
            e, c = r.leading_term()
            diff = tuple(a - b for a, b in zip(e, lm))
            if min(diff) < 0:
                raise ArithmeticError("division is not exact")
            t = Polynomial._raw(self.ring, {diff: c / lc})
            q = q + t
            r = r - d.mul_term(diff, c / lc)
        return q

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.variables == other.ring.variables and self._terms == other._terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation ------------------------------------------
    def diff(self, var) -> "Polynomial":
        return partial_derivative(self, var)

    def evaluate(self, point: Sequence) -> Rational:
        if len(point) != self.ring.nvars:
            raise ValueError("point arity does not match ring")
        pt = [Q(v) for v in point]
        total = mpq(0)
        for e, c in self._terms.items():
            t = c
            for v, a in zip(pt, e):
                if a:
                    t *= v**a
            total += t
        return total

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


# ---------------------------------------------------------------------------
# parsing and printing

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PolynomialSyntaxError(ValueError):
    """Raised for malformed polynomial text; ``offset`` is a byte offset."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class UnknownVariableError(PolynomialSyntaxError):
    def __init__(self, name: str, offset: int, text: str = ""):
        super().__init__(f"unknown variable {name!r}", offset, text)
        self.name = name


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos), text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse ``text`` such as ``"3/2*x*y - y^2 + 1"`` into a polynomial of ``ring``."""
    toks = _tokenize(text)
    i = 0
    n = ring.nvars
    out: dict = {}

    def err(msg, tok):
        raise PolynomialSyntaxError(msg, _byte_offset(text, tok[2]), text)

    if toks[0][0] == "end":
        raise PolynomialSyntaxError("empty polynomial", 0, text)
    first = True
    while True:
        sign = 1
        tok = toks[i]
        if tok[0] == "op" and tok[1] in "+-":
            if first and tok[1] == "+":
                err("unexpected '+'", tok)
            sign = -1 if tok[1] == "-" else 1
            i += 1
        elif not first:
            err("expected '+' or '-'", tok)
        first = False
        coeff = mpq(sign)
        exps = [0] * n
        expect_factor = True
        seen_factor = False
        tok = toks[i]
        if tok[0] == "int":
            num = int(tok[1])
            i += 1
            if toks[i][0] == "op" and toks[i][1] == "/":
                i += 1
                if toks[i][0] != "int":
                    err("expected denominator", toks[i])
                den = int(toks[i][1])
                if den == 0:
                    err("zero denominator", toks[i])
                i += 1
                coeff *= mpq(num, den)
            else:
                coeff *= num
            seen_factor = True
            expect_factor = False
            if toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
                expect_factor = True
        while expect_factor:
            tok = toks[i]
            if tok[0] != "name":
                err("expected variable name", tok)
            try:
                idx = ring.index(tok[1])
            except KeyError:
                raise UnknownVariableError(tok[1], _byte_offset(text, tok[2]), text) from None
            i += 1
            power = 1
            if toks[i][0] == "op" and toks[i][1] == "^":
                i += 1
                if toks[i][0] != "int" or int(toks[i][1]) == 0:
                    err("expected positive integer exponent", toks[i])
                power = int(toks[i][1])
                i += 1
            exps[idx] += power
            seen_factor = True
            if toks[i][0] == "op" and toks[i][1] == "*":
                i += 1
            else:
                expect_factor = False
        if not seen_factor:
            err("empty term", toks[i])
        e = tuple(exps)
        s = out.get(e, 0) + coeff
        if s:
            out[e] = s
        else:
            out.pop(e, None)
        if toks[i][0] == "end":
            break
        if not (toks[i][0] == "op" and toks[i][1] in "+-"):
            err(f"unexpected token {toks[i][1]!r}", toks[i])
    return Polynomial._raw(ring, out)


def _format_monomial(ring: PolyRing, e) -> str:
    parts = []
    for v, a in zip(ring.variables, e):
        if a == 1:
            parts.append(v)
        elif a:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Canonical text: descending ring order, lowest-terms coefficients."""
    if f.is_zero():
        return "0"
    chunks = []
    for k, (e, c) in enumerate(f.items()):
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(f.ring, e)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if k == 0:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


# ---------------------------------------------------------------------------
# operations


def partial_derivative(f: Polynomial, var) -> Polynomial:
    """Formal partial derivative with respect to a variable index or name."""
    if isinstance(var, str):
        var = f.ring.index(var)
    if not 0 <= var < f.ring.nvars:
        raise IndexError(f"variable index {var} out of range")
    out = {}
    for e, c in f._terms.items():
        a = e[var]
        if a:
            e2 = list(e)
            e2[var] = a - 1
            out[tuple(e2)] = c * a
    return Polynomial._raw(f.ring, out)


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Evaluate the ring homomorphism sending variable i to ``images[i]``."""
    if len(images) != f.ring.nvars:
        raise ValueError(f"expected {f.ring.nvars} images, got {len(images)}")
    images = list(images)
    rings = {g.ring.variables for g in images if isinstance(g, Polynomial)}
    if len(rings) > 1:
        raise ValueError("images live in different rings")
    if not rings:
        raise ValueError("images must be polynomials")
    target = next(g.ring for g in images if isinstance(g, Polynomial))
    images = [g if isinstance(g, Polynomial) else target.const(g) for g in images]
    powers: list[dict] = [{0: target.one()} for _ in images]

    def power(i, a):
        cache = powers[i]
        if a not in cache:
            cache[a] = images[i] ** a
        return cache[a]

    result = target.zero()
    for e, c in f._terms.items():
        t = target.const(c)
        for i, a in enumerate(e):
            if a:
                t = t * power(i, a)
        result = result + t
    return result


def translate(f: Polynomial, point: Sequence) -> Polynomial:
    """``f(x + p)``: move ``point`` to the origin."""
    R = f.ring
    if len(point) != R.nvars:
        raise ValueError("point arity does not match ring")
    images = [R.gen(i) + Q(p) for i, p in enumerate(point)]
    return substitute(f, images)


def order_at_point(f: Polynomial, point: Sequence):
    """Lowest total degree of ``f`` after translating ``point`` to the origin.

    Returns ``INFINITY`` for the zero polynomial.
    """
    if len(point) != f.ring.nvars:
        raise ValueError("point arity does not match ring")
    if f.is_zero():
        return INFINITY
    g = translate(f, point)
    return min(sum(e) for e in g._terms)


def embed(f: Polynomial, ring: PolyRing) -> Polynomial:
    """Map ``f`` into a ring containing all its variables (by name)."""
    return f.to_ring(ring)


def polys(ring: PolyRing, texts: Iterable) -> list:
    return [ring(t) for t in texts]
