"""Exact scalars: Gaussian rationals, optionally rational functions of parameters.

A parameter-free :class:`Scalar` is a pair of ``gmpy2.mpq`` (real, imaginary).
A parametric one is a reduced fraction of polynomials with coefficients in
Q(i), backed by sympy's sparse polynomial rings.  The canonical form is:

* numerator and denominator coprime,
* denominator monic in lex order,
* only parameters that actually occur are kept, and a result without any
  parameter collapses to the constant representation.

Equality is therefore structural, and scalars are hashable.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

from gmpy2 import mpq
from sympy import QQ_I
from sympy.polys.rings import ring as _sympy_ring

from ._parse import ParseError, parse_expression

__all__ = [
    "Scalar",
    "ParseError",
    "parse_scalar",
    "format_scalar",
    "scalar_arith",
    "scalar_conjugate",
    "conj_name",
    "ZERO",
    "ONE",
    "I",
]

_Q0 = mpq(0)
_Q1 = mpq(1)

CONJ_PREFIX = "conj_"


def conj_name(name: str, real: Iterable[str] = ()) -> str:
    """Name paired with ``name`` under complex conjugation."""
    real = set(real)
    if name.startswith(CONJ_PREFIX):
        base = name[len(CONJ_PREFIX):]
        return base if base not in real else name
    return name if name in real else CONJ_PREFIX + name


@lru_cache(maxsize=None)
def _ring(names: tuple[str, ...]):
    return _sympy_ring(",".join(names), QQ_I)[0]


def _gauss(re, im) -> object:
    return QQ_I(re, im)


class Scalar:
    """Immutable exact scalar.  Build with :func:`parse_scalar`, :meth:`of` or :meth:`param`."""

    __slots__ = ("_re", "_im", "_num", "_den", "_hash")

    # -- construction -----------------------------------------------------

    def __init__(self, value=0, imag=0):
        if isinstance(value, Scalar):
            if imag:
                raise TypeError("imag not allowed with a Scalar value")
            for slot in Scalar.__slots__:
                setattr(self, slot, getattr(value, slot))
            return
        self._re = mpq(value)
        self._im = mpq(imag)
        self._num = None
        self._den = None
        self._hash = None

    @classmethod
    def _const(cls, re, im) -> "Scalar":
        s = object.__new__(cls)
        s._re = re
        s._im = im
        s._num = None
        s._den = None
        s._hash = None
        return s

    @classmethod
    def _frac(cls, num, den) -> "Scalar":
        """Normalize ``num/den`` (same ring) into canonical form."""
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        if not num:
            return ZERO
        _, num, den = num.cofactors(den)
        lc = den.LC
        if lc != QQ_I.one:
            inv = QQ_I.one / lc
            num = num.mul_ground(inv)
            den = den.mul_ground(inv)
        R = num.ring
        used = set()
        for poly in (num, den):
            for monom in poly.itermonoms():
                for k, e in enumerate(monom):
                    if e:
                        used.add(k)
        if not used:
            c = num.LC  # both are constants; den == 1
            return cls._const(mpq(c.x), mpq(c.y))
        if len(used) < len(R.gens):
            names = tuple(str(R.symbols[k]) for k in sorted(used))
            R2 = _ring(names)
            num = num.set_ring(R2)
            den = den.set_ring(R2)
        s = object.__new__(cls)
        s._re = None
        s._im = None
        s._num = num
        s._den = den
        s._hash = None
        return s

    @classmethod
    def of(cls, value) -> "Scalar":
        """Coerce ints, rationals and scalars."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex numbers are not exact scalars")
        if isinstance(value, float):
            raise TypeError("floats are not exact scalars")
        return cls._const(mpq(value), _Q0)

    @classmethod
    def gauss(cls, re, im=0) -> "Scalar":
        return cls._const(mpq(re), mpq(im))

    @classmethod
    def param(cls, name: str) -> "Scalar":
        R = _ring((name,))
        return cls._frac(R.gens[0], R.one)

    # -- inspection -------------------------------------------------------

    @property
    def is_constant(self) -> bool:
        return self._num is None

    @property
    def names(self) -> tuple[str, ...]:
        """Parameters occurring in this scalar, sorted."""
        if self._num is None:
            return ()
        return tuple(str(s) for s in self._num.ring.symbols)

    @property
    def real(self):
        """Real part (mpq) of a constant scalar."""
        self._require_const()
        return self._re

    @property
    def imag(self):
        self._require_const()
        return self._im

    def _require_const(self):
        if self._num is not None:
            raise ValueError(f"scalar {self} depends on parameters {self.names}")

    def is_zero(self) -> bool:
        return self._num is None and not self._re and not self._im

    def __bool__(self) -> bool:
        return self._num is not None or bool(self._re) or bool(self._im)

    def is_one(self) -> bool:
        return self._num is None and self._re == _Q1 and not self._im

    def numerator_denominator(self):
        """(numerator, denominator) as sympy polynomials in a common ring."""
        if self._num is None:
            R = _ring(("_c",))
            return R(_gauss(self._re, self._im)), R.one
        return self._num, self._den

    # -- arithmetic -------------------------------------------------------

    def _lift(self, R):
        if self._num is None:
            return R(_gauss(self._re, self._im)), R.one
        if self._num.ring is R:
            return self._num, self._den
        return self._num.set_ring(R), self._den.set_ring(R)

    @staticmethod
    def _common(a: "Scalar", b: "Scalar"):
        names = tuple(sorted(set(a.names) | set(b.names)))
        R = _ring(names)
        return a._lift(R), b._lift(R)

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_Q0))):
                other = Scalar._const(mpq(other), _Q0)
            else:
                return NotImplemented
        if self._num is None and other._num is None:
            return Scalar._const(self._re + other._re, self._im + other._im)
        (an, ad), (bn, bd) = Scalar._common(self, other)
        if ad == bd:
            return Scalar._frac(an + bn, ad)
        return Scalar._frac(an * bd + bn * ad, ad * bd)

    __radd__ = __add__

    def __neg__(self):
        if self._num is None:
            return Scalar._const(-self._re, -self._im)
        s = object.__new__(Scalar)
        s._re = None
        s._im = None
        s._num = -self._num
        s._den = self._den
        s._hash = None
        return s

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_Q0))):
                other = Scalar._const(mpq(other), _Q0)
            else:
                return NotImplemented
        if self._num is None and other._num is None:
            return Scalar._const(self._re - other._re, self._im - other._im)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_Q0))):
                other = Scalar._const(mpq(other), _Q0)
            else:
                return NotImplemented
        if self._num is None and other._num is None:
            a, b, c, d = self._re, self._im, other._re, other._im
            if not b and not d:
                return Scalar._const(a * c, _Q0)
            return Scalar._const(a * c - b * d, a * d + b * c)
        if self.is_zero() or other.is_zero():
            return ZERO
        (an, ad), (bn, bd) = Scalar._common(self, other)
        return Scalar._frac(an * bn, ad * bd)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if self._num is None:
            a, b = self._re, self._im
            if not b:
                if not a:
                    raise ZeroDivisionError("division by zero scalar")
                return Scalar._const(1 / a, _Q0)
            n = a * a + b * b
            return Scalar._const(a / n, -b / n)
        # num/den is already reduced; swap and renormalize the leading coefficient
        return Scalar._frac(self._den, self._num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_Q0))):
                other = Scalar._const(mpq(other), _Q0)
            else:
                return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero scalar")
        if self._num is None and other._num is None and not other._im:
            return Scalar._const(self._re / other._re, self._im / other._re)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.of(other) / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, real: Iterable[str] = ()) -> "Scalar":
        """Complex conjugate; parameters map to their ``conj_`` partners.

        Names listed in ``real`` (without prefix) are self-conjugate.
        """
        if self._num is None:
            return Scalar._const(self._re, -self._im)
        real = tuple(real)
        old = self._num.ring
        names = [str(s) for s in old.symbols]
        mapped = [conj_name(n, real) for n in names]
        order = sorted(range(len(names)), key=lambda k: mapped[k])
        R = _ring(tuple(mapped[k] for k in order))

        def conv(poly):
            terms = {}
            for monom, c in poly.terms():
                terms[tuple(monom[k] for k in order)] = QQ_I(c.x, -c.y)
            return R(terms)

        return Scalar._frac(conv(self._num), conv(self._den))

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, type(_Q0))):
                return self._num is None and self._re == other and not self._im
            return NotImplemented
        if self._num is None or other._num is None:
            return (
                self._num is None
                and other._num is None
                and self._re == other._re
                and self._im == other._im
            )
        if self._num.ring.symbols != other._num.ring.symbols:
            return False
        return self._num == other._num.set_ring(self._num.ring) and self._den == other._den.set_ring(
            self._num.ring
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        h = self._hash
        if h is None:
            if self._num is None:
                h = hash((self._re, self._im)) if self._im else hash(self._re)
            else:
                h = hash((self.names, frozenset(self._num.terms()), frozenset(self._den.terms())))
            self._hash = h
        return h

    # -- evaluation and printing -----------------------------------------

    def evaluate(self, values: Mapping[str, complex] | None = None) -> complex:
        """Numerical value with parameters substituted from ``values``."""
        if self._num is None:
            return complex(float(self._re), float(self._im))
        values = values or {}
        missing = [n for n in self.names if n not in values]
        if missing:
            raise KeyError(f"unassigned parameter(s): {', '.join(missing)}")
        point = [complex(values[n]) for n in self.names]

        def ev(poly):
            total = 0j
            for monom, c in poly.terms():
                term = complex(float(c.x), float(c.y))
                for x, e in zip(point, monom):
                    if e:
                        term *= x**e
                total += term
            return total

        return ev(self._num) / ev(self._den)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


ZERO = Scalar._const(_Q0, _Q0)
ONE = Scalar._const(_Q1, _Q0)
I = Scalar._const(_Q0, _Q1)


# -- formatting -------------------------------------------------------------


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_imag(im) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{_fmt_q(im)}*i"


def _fmt_gauss(re, im) -> str:
    if not im:
        return _fmt_q(re)
    if not re:
        return _fmt_imag(im)
    imag = _fmt_imag(abs(im))
    return f"{_fmt_q(re)}{'+' if im > 0 else '-'}{imag}"


def _fmt_poly(poly) -> tuple[str, int]:
    """Polynomial in the scalar grammar; also returns the number of terms."""
    names = [str(s) for s in poly.ring.symbols]
    terms = sorted(poly.terms(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))
    parts = []
    for monom, c in terms:
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, monom) if e]
        mono = "*".join(factors)
        re, im = mpq(c.x), mpq(c.y)
        if not mono:
            s = _fmt_gauss(re, im)
            if re and im:
                s = f"({s})" if parts else s
        elif not im and re == 1:
            s = mono
        elif not im and re == -1:
            s = "-" + mono
        elif not im:
            s = f"{_fmt_q(re)}*{mono}"
        elif not re:
            s = f"{_fmt_imag(im)}*{mono}"
        else:
            s = f"({_fmt_gauss(re, im)})*{mono}"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    count = len(terms)
    if count == 1 and not any(terms[0][0]) and terms[0][1].x and terms[0][1].y:
        count = 2  # a lone constant like 1+i needs brackets just like a sum
    return "".join(parts), count


def format_scalar(s: Scalar) -> str:
    """Canonical text in the scalar grammar; ``parse_scalar`` inverts it."""
    if s._num is None:
        return _fmt_gauss(s._re, s._im)
    num, nterms = _fmt_poly(s._num)
    if s._den == s._den.ring.one:
        return num
    den, dterms = _fmt_poly(s._den)
    if nterms > 1:
        num = f"({num})"
    simple_den = dterms == 1 and sum(1 for e in next(iter(s._den.itermonoms())) if e) == 1
    if not simple_den:
        den = f"({den})"
    return f"{num}/{den}"


# -- parsing ----------------------------------------------------------------


class _ScalarBuilder:
    def __init__(self, params: Iterable[str]):
        self.params = set(params)

    def integer(self, value: int) -> Scalar:
        return Scalar._const(mpq(value), _Q0)

    def symbol(self, name: str, pos: int) -> Scalar:
        if name == "i":
            return I
        if name not in self.params:
            raise ParseError(f"undeclared parameter {name!r}", pos)
        return Scalar.param(name)

    def call(self, name: str, arg, pos: int):
        raise ParseError(f"unknown function {name!r}", pos)

    def div(self, a: Scalar, b: Scalar, pos: int) -> Scalar:
        if b.is_zero():
            raise ParseError("division by the zero polynomial", pos)
        return a / b


def declared_params(params: Iterable[str], real: Iterable[str] = ()) -> set[str]:
    """Declared parameters plus their implicit ``conj_`` partners."""
    real = set(real)
    out = set()
    for p in params:
        out.add(p)
        out.add(conj_name(p, real))
    return out


def parse_scalar(text: str, params: Iterable[str] = ()) -> Scalar:
    """Parse ``text`` in the scalar grammar.

    Every identifier other than ``i`` must appear in ``params``.
    """
    builder = _ScalarBuilder(params)
    try:
        return parse_expression(text, builder)
    except ParseError as exc:
        if not exc.text:
            raise ParseError(exc.message, exc.position, text) from None
        raise


def scalar_arith(lhs: Scalar, rhs: Scalar, op: str) -> Scalar:
    if op == "add":
        return lhs + rhs
    if op == "sub":
        return lhs - rhs
    if op == "mul":
        return lhs * rhs
    if op == "div":
        return lhs / rhs
    raise ValueError(f"unknown operation {op!r}")


def scalar_conjugate(s: Scalar, real: Iterable[str] = ()) -> Scalar:
    return s.conjugate(real)
