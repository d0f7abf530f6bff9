"""Laurent polynomials and reduced rational functions in q over CycNumber.

QLaurent is a finitely supported map from integer exponents to cyclotomic
coefficients.  QRational keeps a gcd-reduced numerator/denominator pair with
the denominator a monic polynomial of valuation 0, which makes the
representation unique and lets evaluation detect genuine poles only.
"""
from __future__ import annotations

from fractions import Fraction

from .cyclo import CycNumber, cyc
from .errors import DomainError, PoleError

_ZERO = CycNumber.zero()
_ONE = CycNumber.one()


def _coerce_coeff(x) -> CycNumber:
    if isinstance(x, CycNumber):
        return x
    return cyc(x)


class QLaurent:
    """Laurent polynomial in q with CycNumber coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        cc = {}
        if coeffs:
            for k, v in coeffs.items():
                v = _coerce_coeff(v)
                if not v.is_zero():
                    cc[k] = v
        self.coeffs = cc

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero() -> "QLaurent":
        return QLaurent()

    @staticmethod
    def one() -> "QLaurent":
        return QLaurent({0: _ONE})

    @staticmethod
    def const(c) -> "QLaurent":
        return QLaurent({0: _coerce_coeff(c)})

    @staticmethod
    def q(k: int = 1, c=1) -> "QLaurent":
        """The monomial c*q^k."""
        return QLaurent({k: _coerce_coeff(c)})

    @staticmethod
    def from_terms(terms) -> "QLaurent":
        """Sum of (exponent, coefficient) pairs; repeated exponents accumulate."""
        acc: dict[int, CycNumber] = {}
        for k, v in terms:
            v = _coerce_coeff(v)
            s = acc.get(k, _ZERO) + v
            if s.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = s
        out = QLaurent()
        out.coeffs = acc
        return out

    # -- structure ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> int:
        if not self.coeffs:
            raise DomainError("valuation of the zero polynomial")
        return min(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            raise DomainError("degree of the zero polynomial")
        return max(self.coeffs)

    def leading_coeff(self) -> CycNumber:
        return self.coeffs[self.degree()]

    def __getitem__(self, k: int) -> CycNumber:
        return self.coeffs.get(k, _ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QLaurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "QLaurent") -> "QLaurent":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, _ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        r = QLaurent()
        r.coeffs = out
        return r

    def __neg__(self) -> "QLaurent":
        r = QLaurent()
        r.coeffs = {k: -v for k, v in self.coeffs.items()}
        return r

    def __sub__(self, other: "QLaurent") -> "QLaurent":
        return self + (-other)

    def __mul__(self, other) -> "QLaurent":
        if not isinstance(other, QLaurent):
            other = QLaurent.const(other)
        out: dict[int, CycNumber] = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                k = i + j
                s = out.get(k, _ZERO) + x * y
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        r = QLaurent()
        r.coeffs = out
        return r

    __rmul__ = __mul__

    def scale(self, c) -> "QLaurent":
        c = _coerce_coeff(c)
        r = QLaurent()
        if not c.is_zero():
            r.coeffs = {k: v * c for k, v in self.coeffs.items()}
        return r

    def shift(self, k: int) -> "QLaurent":
        r = QLaurent()
        r.coeffs = {e + k: v for e, v in self.coeffs.items()}
        return r

    def __pow__(self, n: int) -> "QLaurent":
        if n < 0:
            raise DomainError("negative power of a Laurent polynomial")
        result = QLaurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation -------------------------------------------------------

    def eval_at(self, z: CycNumber) -> CycNumber:
        z = _coerce_coeff(z)
        if z.is_zero() and self.coeffs and min(self.coeffs) < 0:
            raise PoleError("evaluation at 0 with negative exponents")
        total = _ZERO
        zpows: dict[int, CycNumber] = {}

        def zp(k: int) -> CycNumber:
            if k not in zpows:
                zpows[k] = z ** k
            return zpows[k]

        for k, v in self.coeffs.items():
            total = total + v * zp(k)
        return total

    def derivative_at_one(self) -> CycNumber:
        total = _ZERO
        for k, v in self.coeffs.items():
            if k:
                total = total + k * v
        return total

    # -- polynomial division (nonnegative exponents) ------------------------

    def _poly_divmod(self, other: "QLaurent") -> tuple["QLaurent", "QLaurent"]:
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        assert self.is_zero() or self.valuation() >= 0
        assert other.valuation() >= 0
        rem = dict(self.coeffs)
        dd = other.degree()
        lead_inv = other.leading_coeff().inverse()
        quo: dict[int, CycNumber] = {}
        while rem and max(rem) >= dd:
            k = max(rem)
            f = rem[k] * lead_inv
            quo[k - dd] = f
            for j, v in other.coeffs.items():
                t = rem.get(k - dd + j, _ZERO) - f * v
                if t.is_zero():
                    rem.pop(k - dd + j, None)
                else:
                    rem[k - dd + j] = t
        q, r = QLaurent(), QLaurent()
        q.coeffs, r.coeffs = quo, rem
        return q, r

    def exact_div(self, other: "QLaurent") -> "QLaurent":
        """self / other when the division is exact (Laurent units allowed)."""
        if other.is_zero():
            raise DomainError("division by the zero polynomial")
        if self.is_zero():
            return QLaurent.zero()
        vs, vo = self.valuation(), other.valuation()
        q, r = self.shift(-vs)._poly_divmod(other.shift(-vo))
        if not r.is_zero():
            raise DomainError("inexact Laurent division")
        return q.shift(vs - vo)

    def monic(self) -> "QLaurent":
        if self.is_zero():
            return self
        return self.scale(self.leading_coeff().inverse())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            cs = str(c)
            if "+" in cs[1:] or "-" in cs[1:]:
                cs = f"({cs})"
            if k == 0:
                term = cs
            else:
                qq = "q" if k == 1 else f"q^{k}"
                term = qq if cs == "1" else ("-" + qq if cs == "-1" else f"{cs}*{qq}")
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    __repr__ = __str__


def laurent_gcd(a: QLaurent, b: QLaurent) -> QLaurent:
    """Monic valuation-0 gcd via the Euclidean algorithm over Q(zeta)[q]."""
    if a.is_zero():
        return b.shift(-b.valuation()).monic() if not b.is_zero() else QLaurent.zero()
    if b.is_zero():
        return a.shift(-a.valuation()).monic()
    x = a.shift(-a.valuation())
    y = b.shift(-b.valuation())
    while not y.is_zero():
        _, r = x._poly_divmod(y)
        x, y = y, r.shift(-r.valuation()) if not r.is_zero() else r
    return x.monic()


class QRational:
    """Reduced rational function num/den, den a monic polynomial with valuation 0."""

    __slots__ = ("num", "den")

    def __init__(self, num: QLaurent, den: QLaurent | None = None):
        if den is None:
            den = QLaurent.one()
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.is_zero():
            self.num, self.den = QLaurent.zero(), QLaurent.one()
            return
        vd = den.valuation()
        num, den = num.shift(-vd), den.shift(-vd)
        g = laurent_gcd(num, den)
        if g.degree() > 0:
            vn = num.valuation()
            num = num.shift(-vn)._poly_divmod(g)[0].shift(vn)
            den = den._poly_divmod(g)[0]
        lead = den.leading_coeff()
        if not (lead == _ONE):
            inv = lead.inverse()
            num, den = num.scale(inv), den.scale(inv)
        self.num, self.den = num, den

    @staticmethod
    def from_laurent(p: QLaurent) -> "QRational":
        return QRational(p)

    @staticmethod
    def const(c) -> "QRational":
        return QRational(QLaurent.const(c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == QLaurent.one()

    def as_laurent(self) -> QLaurent:
        if not self.is_laurent():
            raise DomainError(f"{self} is not a Laurent polynomial")
        return self.num

    def __eq__(self, other) -> bool:
        if isinstance(other, QLaurent):
            other = QRational(other)
        if not isinstance(other, QRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: "QRational") -> "QRational":
        if isinstance(other, QLaurent):
            other = QRational(other)
        return QRational(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "QRational":
        r = QRational.const(0)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other) -> "QRational":
        if isinstance(other, QLaurent):
            other = QRational(other)
        return QRational(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> "QRational":
        if isinstance(other, QLaurent):
            other = QRational(other)
        if other.is_zero():
            raise DomainError("division by zero rational function")
        return QRational(self.num * other.den, self.den * other.num)

    def inverse(self) -> "QRational":
        if self.is_zero():
            raise DomainError("inversion of zero")
        return QRational(self.den, self.num)

    def eval_at(self, z) -> CycNumber:
        z = _coerce_coeff(z)
        dv = self.den.eval_at(z)
        if dv.is_zero():
            raise PoleError(f"pole at {z}")
        return self.num.eval_at(z) * dv.inverse()

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def q_int(m: int) -> QLaurent:
    """q^m - 1."""
    return QLaurent({m: _ONE, 0: -_ONE})


def q_minus(c) -> QLaurent:
    """q - c."""
    return QLaurent({1: _ONE, 0: -_coerce_coeff(c)})
