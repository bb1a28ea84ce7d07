"""Exact scalars: Q, the cyclotomic fields Q(zeta_N) and the rational function field Q(t).

All three live behind :class:`FieldSpec` / :class:`FieldElement`.  Elements are
kept in canonical form so that ``==`` is an exact test.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Poly = tuple  # tuple[Fraction, ...], constant term first, no trailing zeros

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q
# ---------------------------------------------------------------------------

def _trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def _pscale(a: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return (), _trim(rem)
    quot = [_ZERO] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        c = c / lead
        quot[k - db] = c
        for j, y in enumerate(b):
            rem[k - db + j] -= c * y
    return _trim(quot), _trim(rem[:db])


def _monic(a: Poly) -> Poly:
    return _pscale(a, 1 / a[-1])


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _monic(a) if a else ()


def _pinvmod(a: Poly, m: Poly) -> Poly:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = m, _pdivmod(a, m)[1]
    s0, s1 = (), (_ONE,)
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pneg(_pmul(q, s1)))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible modulo the cyclotomic polynomial")
    return _pdivmod(_pscale(s0, 1 / r0[0]), m)[1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Poly:
    """Coefficients of Phi_n, computed as (t^n - 1) divided by Phi_d for the proper divisors d."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    p: Poly = tuple([Fraction(-1)] + [_ZERO] * (n - 1) + [_ONE])
    for d in range(1, n):
        if n % d == 0:
            p, rem = _pdivmod(p, cyclotomic_polynomial(d))
            assert not rem
    return p


def _pstr(a: Poly, var: str) -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if k == 0:
            body = str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if c == 1 else f"{c}*{mono}"
        terms.append((sign, body))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# field specs and elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Which field the scalars live in.

    ``mode`` is one of ``"rational"``, ``"cyclotomic"`` (with ``order`` N) or
    ``"generic"`` (the transcendental parameter t).
    """

    mode: str = "rational"
    order: int | None = None

    def __post_init__(self):
        if self.mode not in ("rational", "cyclotomic", "generic"):
            raise ValueError(f"unknown field mode {self.mode!r}")
        if self.mode == "cyclotomic":
            if self.order is None or self.order < 1:
                raise ValueError("cyclotomic field needs a positive order N")
        elif self.order is not None:
            raise ValueError(f"{self.mode} field takes no order")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @classmethod
    def cyclotomic(cls, n: int) -> FieldSpec:
        return cls("cyclotomic", n)

    @classmethod
    def generic(cls) -> FieldSpec:
        return cls("generic")

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``rational``, ``cyclotomic:N`` or ``generic``."""
        text = text.strip()
        if text in ("rational", "generic"):
            return cls(text)
        m = re.fullmatch(r"cyclotomic:(\d+)", text)
        if m:
            return cls("cyclotomic", int(m.group(1)))
        raise ValueError(f"cannot parse field spec {text!r}")

    def __str__(self) -> str:
        return f"cyclotomic:{self.order}" if self.mode == "cyclotomic" else self.mode

    @property
    def modulus(self) -> Poly:
        return cyclotomic_polynomial(self.order)

    @property
    def degree(self) -> int:
        """Dimension over Q; 0 stands for infinite (generic mode)."""
        if self.mode == "rational":
            return 1
        if self.mode == "cyclotomic":
            return len(self.modulus) - 1
        return 0

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def zero(self) -> FieldElement:
        return self.coerce(0)

    def one(self) -> FieldElement:
        return self.coerce(1)

    def gen(self) -> FieldElement:
        """The distinguished generator: zeta_N in cyclotomic mode, t in generic mode."""
        if self.mode == "cyclotomic":
            return FieldElement._cyc(self, (_ZERO, _ONE))
        if self.mode == "generic":
            return FieldElement._gen(self, (_ZERO, _ONE), (_ONE,))
        raise ValueError("the rational field has no generator")

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise ValueError(f"scalar from {value.spec} used in {self}")
            return value
        if isinstance(value, (int, Fraction)):
            c = Fraction(value)
            if self.mode == "rational":
                return FieldElement(self, c)
            if self.mode == "cyclotomic":
                return FieldElement._cyc(self, _trim((c,)))
            return FieldElement._gen(self, _trim((c,)), (_ONE,))
        if isinstance(value, str):
            return parse_scalar(value, self)
        if isinstance(value, (list, tuple)):
            return self.from_coeffs(value)
        raise TypeError(f"cannot interpret {value!r} as a scalar of {self}")

    def from_coeffs(self, coeffs, den=None) -> FieldElement:
        """Build from a coefficient list in the generator (constant term first)."""
        num = _trim(Fraction(c) for c in coeffs)
        if self.mode == "rational":
            if len(num) > 1 or den is not None:
                raise ValueError("coefficient lists need a cyclotomic or generic field")
            return FieldElement(self, num[0] if num else _ZERO)
        if self.mode == "cyclotomic":
            if den is not None:
                return self.from_coeffs(coeffs) / self.from_coeffs(den)
            return FieldElement._cyc(self, num)
        d = _trim(Fraction(c) for c in den) if den is not None else (_ONE,)
        return FieldElement._gen(self, num, d)


Scalar = Union["FieldElement", int, Fraction]


class FieldElement:
    """Immutable exact scalar in canonical form."""

    __slots__ = ("spec", "_v")

    def __init__(self, spec: FieldSpec, value):
        # value is already canonical; use the constructors on FieldSpec otherwise
        self.spec = spec
        self._v = value

    @classmethod
    def _cyc(cls, spec: FieldSpec, poly: Poly) -> FieldElement:
        mod = spec.modulus
        if len(poly) >= len(mod):
            poly = _pdivmod(poly, mod)[1]
        return cls(spec, poly)

    @classmethod
    def _gen(cls, spec: FieldSpec, num: Poly, den: Poly) -> FieldElement:
        if not den:
            raise ZeroDivisionError("division by zero in Q(t)")
        if not num:
            return cls(spec, ((), (_ONE,)))
        g = _pgcd(num, den)
        if len(g) > 1:
            num = _pdivmod(num, g)[0]
            den = _pdivmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = _pscale(num, 1 / lead)
            den = _pscale(den, 1 / lead)
        return cls(spec, (num, den))

    # -- inspection ---------------------------------------------------------

    @property
    def value(self):
        return self._v

    def is_zero(self) -> bool:
        if self.spec.mode == "rational":
            return self._v == 0
        if self.spec.mode == "cyclotomic":
            return not self._v
        return not self._v[0]

    def is_one(self) -> bool:
        return self == self.spec.one()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients in the power basis (cyclotomic) or of the numerator (generic)."""
        if self.spec.mode == "rational":
            return _trim((self._v,))
        if self.spec.mode == "cyclotomic":
            return self._v
        return self._v[0]

    def normalized(self) -> FieldElement:
        """Re-run canonicalization; a no-op on values built through the public API."""
        if self.spec.mode == "rational":
            return FieldElement(self.spec, Fraction(self._v))
        if self.spec.mode == "cyclotomic":
            return FieldElement._cyc(self.spec, _trim(self._v))
        return FieldElement._gen(self.spec, _trim(self._v[0]), _trim(self._v[1]))

    # -- arithmetic ---------------------------------------------------------

    def _other(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise ValueError(f"field mismatch: {self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.spec.coerce(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        mode = self.spec.mode
        if mode == "rational":
            return FieldElement(self.spec, self._v + o._v)
        if mode == "cyclotomic":
            return FieldElement(self.spec, _padd(self._v, o._v))
        (a, b), (c, d) = self._v, o._v
        if b == d:
            return FieldElement._gen(self.spec, _padd(a, c), b)
        return FieldElement._gen(self.spec, _padd(_pmul(a, d), _pmul(c, b)), _pmul(b, d))

    __radd__ = __add__

    def __neg__(self):
        mode = self.spec.mode
        if mode == "rational":
            return FieldElement(self.spec, -self._v)
        if mode == "cyclotomic":
            return FieldElement(self.spec, _pneg(self._v))
        return FieldElement(self.spec, (_pneg(self._v[0]), self._v[1]))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        mode = self.spec.mode
        if mode == "rational":
            return FieldElement(self.spec, self._v * o._v)
        if mode == "cyclotomic":
            return FieldElement._cyc(self.spec, _pmul(self._v, o._v))
        (a, b), (c, d) = self._v, o._v
        return FieldElement._gen(self.spec, _pmul(a, c), _pmul(b, d))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.spec}")
        mode = self.spec.mode
        if mode == "rational":
            return FieldElement(self.spec, 1 / self._v)
        if mode == "cyclotomic":
            return FieldElement(self.spec, _pinvmod(self._v, self.spec.modulus))
        return FieldElement._gen(self.spec, self._v[1], self._v[0])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> FieldElement:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = self.spec.one()
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self._v == other._v
        if isinstance(other, (int, Fraction)):
            return self._v == self.spec.coerce(other)._v
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec, self._v))

    def __str__(self) -> str:
        mode = self.spec.mode
        if mode == "rational":
            return str(self._v)
        if mode == "cyclotomic":
            return _pstr(self._v, "q")
        num, den = self._v
        if den == (_ONE,):
            return _pstr(num, "t")
        return f"({_pstr(num, 't')})/({_pstr(den, 't')})"

    def __repr__(self) -> str:
        return f"FieldElement({self.spec}, {self})"


# ---------------------------------------------------------------------------
# the operation surface, as free functions
# ---------------------------------------------------------------------------

def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def is_root_of_unity(a: FieldElement, bound: int) -> int | None:
    """Smallest k in [1, bound] with a**k == 1, or None."""
    if a.is_zero():
        return None
    p = a
    for k in range(1, bound + 1):
        if p.is_one():
            return k
        p = p * a
    return None


# ---------------------------------------------------------------------------
# scalar literals
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(\*\*|[-+*/^()]))")
_GENERATOR_NAMES = {"q", "t", "z", "zeta"}


class _Parser:
    def __init__(self, text: str, spec: FieldSpec):
        self.spec = spec
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"bad scalar literal {text!r} at offset {pos}")
            num, name, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> FieldElement:
        if not self.tokens:
            raise ValueError("empty scalar literal")
        v = self.expr()
        if self.i != len(self.tokens):
            raise ValueError(f"trailing input in scalar literal {self.text!r}")
        return v

    def expr(self):
        kind, tok = self.peek()
        sign = 1
        if (kind, tok) in (("op", "-"), ("op", "+")):
            self.take()
            sign = -1 if tok == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.power()
        while True:
            kind, tok = self.peek()
            if (kind, tok) in (("op", "*"), ("op", "/")):
                self.take()
                w = self.power()
                v = v * w if tok == "*" else v / w
            elif kind in ("num", "name") or (kind, tok) == ("op", "("):
                v = v * self.power()  # implicit multiplication: 3q, 2(1+t)
            else:
                return v

    def power(self):
        v = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.peek()
            sign = 1
            if (kind, tok) == ("op", "-"):
                self.take()
                sign = -1
            kind, tok = self.take()
            if kind != "num":
                raise ValueError(f"exponent must be an integer in {self.text!r}")
            v = v ** (sign * tok)
        return v

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.spec.coerce(tok)
        if kind == "name":
            if tok not in _GENERATOR_NAMES:
                raise ValueError(f"unknown symbol {tok!r} in scalar literal")
            return self.spec.gen()
        if (kind, tok) == ("op", "("):
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return v
        raise ValueError(f"unexpected token {tok!r} in scalar literal {self.text!r}")


def parse_scalar(text, spec: FieldSpec) -> FieldElement:
    """Parse a scalar literal.

    Accepted: integers, ``p/q``, expressions in the generator (``q``, ``t``,
    ``z`` or ``zeta`` all name it) using ``+ - * / ^`` and parentheses, and
    JSON coefficient lists ``[c0, c1, ...]`` in the generator.
    """
    if isinstance(text, (int, Fraction)):
        return spec.coerce(text)
    if isinstance(text, (list, tuple)):
        return spec.from_coeffs([Fraction(str(c)) for c in text])
    s = str(text).strip()
    if s.startswith("["):
        return spec.from_coeffs([Fraction(str(c)) for c in json.loads(s)])
    return _Parser(s, spec).parse()
