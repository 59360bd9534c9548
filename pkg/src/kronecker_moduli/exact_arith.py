"""Exact Laurent polynomials and rational functions in one formal variable.

Coefficients are Python ints or :class:`fractions.Fraction` (a Fraction with
denominator 1 is always stored as an int, so the integer-coefficient case stays
on the fast path).  Nothing in this module ever rounds.

The variable is formal.  The Reineke engine reads it as ``q``, the MPS code as
``y`` with ``q = y**2``, and the polynomial-in-``m`` code as ``m``; the name only
matters when rendering or parsing text.

>>> y = LaurentPolynomial.monomial(1)
>>> ((y + y**-1) * (y - y**-1)).to_text("y")
'-y^-2 + y^2'
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence, Union

from .errors import NotPolynomial, ZeroDenominator

Scalar = Union[int, Fraction]

__all__ = [
    "LaurentPolynomial",
    "RationalFunction",
    "ZERO",
    "ONE",
    "laurent_combine",
    "ratfun_combine",
    "ratfun_to_laurent",
    "evaluate_at_one",
    "substitute_power",
    "exact_divide",
    "poly_gcd",
    "interpolate",
    "q_integer",
    "parse_laurent",
]


def _coerce(c) -> Scalar:
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _coerce(Fraction(c.numerator, c.denominator))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


def _div(a: Scalar, b: Scalar) -> Scalar:
    if isinstance(a, int) and isinstance(b, int) and a % b == 0:
        return a // b
    return _coerce(Fraction(a) / b)


class LaurentPolynomial:
    """Sparse Laurent polynomial: a map exponent -> nonzero exact coefficient.

    Instances are immutable and hashable.  Arithmetic mixes freely with ints
    and Fractions.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[int(e)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPolynomial:
        # caller guarantees: int exponents, coerced nonzero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coefficient: Scalar = 1) -> LaurentPolynomial:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, c: Scalar) -> LaurentPolynomial:
        return cls({0: c})

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[Scalar], shift: int = 0) -> LaurentPolynomial:
        """Dense ascending coefficient list, lowest exponent ``shift``."""
        return cls({shift + i: c for i, c in enumerate(coefficients)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, Scalar]:
        """Copy of the term map, sorted by ascending exponent."""
        return dict(sorted(self._terms.items()))

    def items(self):
        return sorted(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no degree")
        return max(self._terms)

    @property
    def valuation(self) -> int:
        if not self._terms:
            raise ValueError("the zero polynomial has no valuation")
        return min(self._terms)

    def coefficient(self, exponent: int) -> Scalar:
        return self._terms.get(exponent, 0)

    def coefficients(self) -> list[Scalar]:
        """Dense coefficients from valuation to degree."""
        if not self._terms:
            return []
        lo, hi = self.valuation, self.degree
        return [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for e in self._terms)

    def has_integer_coefficients(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def is_palindromic(self) -> bool:
        if not self._terms:
            return True
        lo, hi = self.valuation, self.degree
        return all(self._terms.get(lo + hi - e) == c for e, c in self._terms.items())

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _wrap(other) -> LaurentPolynomial | None:
        if isinstance(other, LaurentPolynomial):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return LaurentPolynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _coerce(s)
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Scalar] = {}
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial._raw({e: _coerce(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDenominator("division by zero scalar")
            return LaurentPolynomial._raw({e: _div(c, _coerce(other)) for e, c in self._terms.items()})
        if isinstance(other, (LaurentPolynomial, RationalFunction)):
            return RationalFunction(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return RationalFunction(LaurentPolynomial.constant(other), self)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise NotPolynomial("negative power of a non-monomial")
            (e, c), = self._terms.items()
            return LaurentPolynomial({e * n: Fraction(1, 1) / Fraction(c) ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- transformations --------------------------------------------------

    def shift(self, k: int) -> LaurentPolynomial:
        """Multiply by ``var**k``."""
        if k == 0:
            return self
        return LaurentPolynomial._raw({e + k: c for e, c in self._terms.items()})

    def substitute_power(self, m: int) -> LaurentPolynomial:
        """Replace the variable by its ``m``-th power (``m`` may be negative)."""
        if m == 0:
            raise ValueError("substitution exponent must be nonzero")
        return LaurentPolynomial._raw({e * m: c for e, c in self._terms.items()})

    def scale(self, c: Scalar) -> LaurentPolynomial:
        return self * LaurentPolynomial.constant(c)

    # -- evaluation -------------------------------------------------------

    def evaluate_at_one(self) -> Scalar:
        return _coerce(sum(self._terms.values(), 0))

    def evaluate(self, x: Scalar) -> Scalar:
        """Exact value at a nonzero rational point (zero allowed for polynomials)."""
        x = _coerce(x)
        total: Scalar = 0
        for e, c in self._terms.items():
            if e < 0:
                if x == 0:
                    raise ZeroDenominator("negative exponent evaluated at 0")
                total += c * Fraction(1) / Fraction(x) ** (-e)
            else:
                total += c * x ** e
        return _coerce(total)

    # -- text -------------------------------------------------------------

    def to_text(self, var: str = "q") -> str:
        """Canonical form: ascending exponents, e.g. ``1 + 2*q + q^2``."""
        if not self._terms:
            return "0"
        pieces = []
        for e, c in sorted(self._terms.items()):
            neg = c < 0
            a = -c if neg else c
            if e == 0:
                body = str(a)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not pieces:
                pieces.append(f"-{body}" if neg else body)
            else:
                pieces.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(pieces)

    def __str__(self):
        return self.to_text("q")

    def __repr__(self):
        return f"LaurentPolynomial({self.to_text('q')!r})"


ZERO = LaurentPolynomial()
ONE = LaurentPolynomial.constant(1)


# -- dense polynomial helpers (nonnegative exponents, index = exponent) -----

def _dense(p: LaurentPolynomial) -> list[Scalar]:
    if p.is_zero:
        return []
    out = [0] * (p.degree + 1)
    for e, c in p._terms.items():
        out[e] = c
    return out


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    """Long division of dense polynomials; ``b`` must be trimmed and nonzero."""
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], _trim(a)
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c == 0:
            continue
        f = _div(c, lead)
        quot[i] = f
        for j, bj in enumerate(b):
            if bj:
                a[i + j] = _coerce(a[i + j] - f * bj)
    return _trim(quot), _trim(a[:db])


def exact_divide(p: LaurentPolynomial, d: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``h`` with ``h * d == p`` or raise :class:`NotPolynomial`."""
    if d.is_zero:
        raise ZeroDenominator("division by the zero polynomial")
    if p.is_zero:
        return ZERO
    vp, vd = p.valuation, d.valuation
    if d.is_monomial():
        (_, c), = d._terms.items()
        return LaurentPolynomial._raw({e - vd: _div(x, c) for e, x in p._terms.items()})
    quot, rem = _poly_divmod(_dense(p.shift(-vp)), _dense(d.shift(-vd)))
    if rem:
        raise NotPolynomial(f"({p}) is not divisible by ({d})")
    return LaurentPolynomial.from_coefficients(quot, vp - vd)


def poly_gcd(p: LaurentPolynomial, d: LaurentPolynomial) -> LaurentPolynomial:
    """Monic gcd of the polynomial parts (monomial factors stripped)."""
    if p.is_zero and d.is_zero:
        return ZERO
    if p.is_zero:
        a, b = _dense(d.shift(-d.valuation)), []
    elif d.is_zero:
        a, b = _dense(p.shift(-p.valuation)), []
    else:
        a = _dense(p.shift(-p.valuation))
        b = _dense(d.shift(-d.valuation))
        if len(a) < len(b):
            a, b = b, a
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = a[-1]
    return LaurentPolynomial.from_coefficients([_div(c, lead) for c in a])


class RationalFunction:
    """Quotient of two Laurent polynomials in normalized form.

    Normal form: numerator and denominator are coprime, the denominator has
    valuation 0 and a positive constant term, and the pair carries integer
    coefficients with no common content.  Two equal rational functions
    therefore have identical representations.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator=ZERO, denominator=ONE):
        num = _as_laurent(numerator)
        den = _as_laurent(denominator)
        if den.is_zero:
            raise ZeroDenominator("rational function with zero denominator")
        self.numerator, self.denominator = _normalize(num, den)

    @classmethod
    def _raw(cls, num: LaurentPolynomial, den: LaurentPolynomial) -> RationalFunction:
        obj = cls.__new__(cls)
        obj.numerator, obj.denominator = num, den
        return obj

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def is_laurent(self) -> bool:
        return self.denominator.is_constant()

    def to_laurent(self) -> LaurentPolynomial:
        return ratfun_to_laurent(self)

    @staticmethod
    def _wrap(other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, LaurentPolynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction, Rational)):
            return RationalFunction(LaurentPolynomial.constant(other))
        return None

    def __add__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDenominator("division by the zero function")
        return RationalFunction(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return RationalFunction(ONE) / (self ** -n)
        return RationalFunction(self.numerator ** n, self.denominator ** n)

    def __eq__(self, other):
        other = self._wrap(other)
        if other is None:
            return NotImplemented
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def value_at_one(self) -> Scalar:
        """Exact value at 1; raises if 1 is a pole."""
        return self.evaluate(1)

    def evaluate(self, x: Scalar) -> Scalar:
        den = self.denominator.evaluate(x)
        if den == 0:
            raise ZeroDenominator(f"pole at {x}")
        return _coerce(Fraction(self.numerator.evaluate(x)) / den)

    def to_text(self, var: str = "q") -> str:
        if self.is_laurent():
            return self.to_laurent().to_text(var)
        return f"({self.numerator.to_text(var)}) / ({self.denominator.to_text(var)})"

    def __str__(self):
        return self.to_text("q")

    def __repr__(self):
        return f"RationalFunction({self.to_text('q')!r})"


def _as_laurent(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return LaurentPolynomial.constant(x)
    raise TypeError(f"cannot convert {type(x).__name__} to LaurentPolynomial")


def _normalize(num: LaurentPolynomial, den: LaurentPolynomial):
    if num.is_zero:
        return ZERO, ONE
    shift = num.valuation - den.valuation
    n0 = num.shift(-num.valuation)
    d0 = den.shift(-den.valuation)
    if not d0.is_constant():
        g = poly_gcd(n0, d0)
        if not g.is_constant():
            n0 = exact_divide(n0, g)
            d0 = exact_divide(d0, g)
    coeffs = list(n0._terms.values()) + list(d0._terms.values())
    lcm = 1
    for c in coeffs:
        if isinstance(c, Fraction):
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    factor = Fraction(lcm, g)
    if d0.coefficient(0) < 0:
        factor = -factor
    if factor != 1:
        n0 = n0.scale(factor)
        d0 = d0.scale(factor)
    return n0.shift(shift), d0


# -- functional API ---------------------------------------------------------

def laurent_combine(op: str, p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def ratfun_combine(op: str, r, s) -> RationalFunction:
    r = RationalFunction._wrap(r)
    s = RationalFunction._wrap(s)
    if op == "add":
        return r + s
    if op == "sub":
        return r - s
    if op == "mul":
        return r * s
    if op == "div":
        return r / s
    raise ValueError(f"unknown operation {op!r}")


def ratfun_to_laurent(r: RationalFunction) -> LaurentPolynomial:
    """Collapse ``r`` to a Laurent polynomial or raise :class:`NotPolynomial`."""
    if isinstance(r, LaurentPolynomial):
        return r
    return exact_divide(r.numerator, r.denominator)


def evaluate_at_one(p: LaurentPolynomial) -> Scalar:
    return p.evaluate_at_one()


def substitute_power(p: LaurentPolynomial, m: int) -> LaurentPolynomial:
    if m < 1:
        raise ValueError("m must be a positive integer")
    return p.substitute_power(m)


def q_integer(n: int) -> LaurentPolynomial:
    """``1 + q + ... + q**(n-1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return LaurentPolynomial({i: 1 for i in range(n)})


def interpolate(xs: Sequence[Scalar], ys: Sequence[Scalar]) -> LaurentPolynomial:
    """Unique polynomial of degree < len(xs) through the given points (Newton form)."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    n = len(xs)
    xs = [Fraction(x) for x in xs]
    table = [Fraction(y) for y in ys]
    coef = [table[0]]
    for k in range(1, n):
        table = [(table[i + 1] - table[i]) / (xs[i + k] - xs[i]) for i in range(n - k)]
        coef.append(table[0])
    # Horner expansion of the Newton form
    result = ZERO
    for k in range(n - 1, -1, -1):
        result = result * LaurentPolynomial({1: 1, 0: -xs[k]}) + coef[k]
    return result


_NUMBER = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"(?P<sign>[+-])?(?:(?P<coef>{_NUMBER})(?P<star>\*(?=[A-Za-z]))?)?"
    r"(?:(?P<var>[A-Za-z]\w*)(?:\^(?P<exp>-?\d+))?)?"
)


def parse_laurent(text: str, var: str | None = None) -> LaurentPolynomial:
    """Inverse of :meth:`LaurentPolynomial.to_text`.

    Accepts any whitespace; if ``var`` is given, every term must use it.
    """
    if re.search(r"[\w^*/]\s+[\w^*/]", text):
        raise ValueError(f"stray whitespace inside a term of {text!r}")
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return ZERO
    terms: dict[int, Scalar] = {}
    pos = 0
    seen_var = var
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"cannot parse polynomial text {text!r} at offset {pos}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        if m.group("coef") and m.group("var") and not m.group("star"):
            raise ValueError(f"missing '*' between coefficient and variable in {text!r}")
        coef: Scalar = _coerce(Fraction(m.group("coef"))) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        exp = 0
        if m.group("var"):
            name = m.group("var")
            if seen_var is None:
                seen_var = name
            elif name != seen_var:
                raise ValueError(f"mixed variables {seen_var!r} and {name!r} in {text!r}")
            exp = int(m.group("exp")) if m.group("exp") else 1
        elif m.group("exp"):
            raise ValueError(f"exponent without variable in {text!r}")
        terms[exp] = _coerce(terms.get(exp, 0) + coef)
        pos = m.end()
    return LaurentPolynomial(terms)


def laurent_sum(items: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    """Sum many polynomials with one accumulator dict."""
    acc: dict[int, Scalar] = {}
    for p in items:
        for e, c in p._terms.items():
            acc[e] = acc.get(e, 0) + c
    return LaurentPolynomial(acc)
