"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A value is stored as a vector of rational coordinates over the power basis
1, z, ..., z^(phi(N)-1) of Q(zeta_N), reduced modulo the N-th cyclotomic
polynomial, with N always lowered to the smallest possible conductor.  Two
values are equal iff their canonical forms are identical, so CycNumber is
hashable and usable as a dict key.

The text form follows the E(N)^k convention, e.g. ``1/2*E(3)+1/2*E(3)^2``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import CapExceededError, DomainError

# Hard ceiling on conductors; fail loudly instead of degrading.
CONDUCTOR_CAP = 10_000


def set_conductor_cap(cap: int) -> None:
    global CONDUCTOR_CAP
    if cap < 1:
        raise DomainError("conductor cap must be positive")
    CONDUCTOR_CAP = cap


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            result *= (p - 1) * p ** (e - 1)
        p += 1
    if m > 1:
        result *= m - 1
    return result


@lru_cache(maxsize=None)
def prime_divisors(n: int) -> tuple[int, ...]:
    out, m, p = [], n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return tuple(out)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    # x^n - 1 divided by Phi_d for every proper divisor d of n.
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            div = cyclotomic_poly(d)
            poly = _exact_poly_div(poly, list(div))
    return tuple(poly)


def _exact_poly_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1]
        assert c % den[-1] == 0
        q = c // den[-1]
        out[i] = q
        for j, dc in enumerate(den):
            num[i + j] -= q * dc
    assert all(c == 0 for c in num)
    return out


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k = coordinates of zeta_n^k over the power basis, for 0 <= k < n."""
    d = euler_phi(n)
    phi = cyclotomic_poly(n)
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by zeta: shift, then fold the overflow with zeta^d = -sum phi_j zeta^j
        top = cur[d - 1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            for j in range(d):
                nxt[j] -= top * phi[j]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def _descent_solver(big: int, small: int):
    """Precomputed eliminator for expressing a Q(zeta_big) vector in Q(zeta_small).

    Returns (ops, pivots, dim_small) where ops replays the row reduction of the
    embedding matrix transpose on any target vector.
    """
    db, ds = euler_phi(big), euler_phi(small)
    step = big // small
    ptab = _power_table(big)
    # column j of A = coordinates of zeta_small^j inside Q(zeta_big)
    cols = [ptab[(j * step) % big] for j in range(ds)]
    a = [[cols[j][i] for j in range(ds)] for i in range(db)]  # db x ds
    ops: list[tuple] = []
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ds):
        pr = next((i for i in range(r, db) if a[i][c] != 0), None)
        if pr is None:
            continue
        if pr != r:
            ops.append(("swap", r, pr))
            a[r], a[pr] = a[pr], a[r]
        inv = Fraction(1) / a[r][c]
        if inv != 1:
            ops.append(("scale", r, inv))
            a[r] = [x * inv for x in a[r]]
        for i in range(db):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ops.append(("axpy", i, r, f))
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append((r, c))
        r += 1
    return ops, pivots, ds, db


def _try_descend(coords: tuple[Fraction, ...], big: int, small: int):
    """Coordinates of the value over Q(zeta_small), or None if it does not live there."""
    ops, pivots, ds, db = _descent_solver(big, small)
    t = list(coords)
    for op in ops:
        if op[0] == "swap":
            _, i, j = op
            t[i], t[j] = t[j], t[i]
        elif op[0] == "scale":
            _, i, f = op
            t[i] *= f
        else:
            _, i, r, f = op
            t[i] -= f * t[r]
    if any(t[i] != 0 for i in range(len(pivots), db)):
        return None
    sol = [Fraction(0)] * ds
    for r, c in pivots:
        sol[c] = t[r]
    return tuple(sol)


_E_TERM = re.compile(r"^(?:(-?\d+(?:/\d+)?)\*)?E\((\d+)\)(?:\^(\d+))?$")


class CycNumber:
    """An element of some cyclotomic field, in canonical form."""

    __slots__ = ("conductor", "coords", "_hash")

    def __init__(self, conductor: int, coords, _canonical: bool = False):
        coords = tuple(Fraction(c) for c in coords)
        if not _canonical:
            conductor, coords = _canonicalize(conductor, coords)
        self.conductor = conductor
        self.coords = coords
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(x) -> "CycNumber":
        return CycNumber(1, (Fraction(x),), _canonical=True)

    @staticmethod
    def zero() -> "CycNumber":
        return _ZERO

    @staticmethod
    def one() -> "CycNumber":
        return _ONE

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return self.conductor == 1 and self.coords[0] == 0

    def is_rational(self) -> bool:
        return self.conductor == 1

    def rational_value(self) -> Fraction:
        if self.conductor != 1:
            raise DomainError(f"{self} is not rational")
        return self.coords[0]

    def is_integer(self) -> bool:
        return self.conductor == 1 and self.coords[0].denominator == 1

    # -- arithmetic ---------------------------------------------------

    def _lift(self, n: int) -> tuple[Fraction, ...]:
        """Coordinates of self inside Q(zeta_n); self.conductor must divide n."""
        if n == self.conductor:
            return self.coords
        step = n // self.conductor
        ptab = _power_table(n)
        out = [Fraction(0)] * euler_phi(n)
        for k, c in enumerate(self.coords):
            if c:
                row = ptab[(k * step) % n]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return tuple(out)

    def __add__(self, other) -> "CycNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n = _merged_conductor(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        return CycNumber(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "CycNumber":
        return CycNumber(self.conductor, tuple(-c for c in self.coords), _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "CycNumber":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.conductor == 1:
            c = self.coords[0]
            return CycNumber(other.conductor, tuple(c * x for x in other.coords))
        if other.conductor == 1:
            c = other.coords[0]
            return CycNumber(self.conductor, tuple(c * x for x in self.coords))
        n = _merged_conductor(self.conductor, other.conductor)
        a, b = self._lift(n), other._lift(n)
        d = euler_phi(n)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        ptab = _power_table(n)
        out = list(conv[:d])
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = ptab[k % n]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return CycNumber(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CycNumber":
        if self.is_zero():
            raise DomainError("inversion of zero")
        if self.conductor == 1:
            return CycNumber(1, (Fraction(1) / self.coords[0],), _canonical=True)
        n = self.conductor
        d = euler_phi(n)
        ptab = _power_table(n)
        # columns of M = coordinates of self * zeta^j; solve M x = e_0
        cols = []
        for j in range(d):
            shifted = [Fraction(0)] * (d + j)
            for k, c in enumerate(self.coords):
                shifted[k + j] = c
            col = list(shifted[:d])
            for k in range(d, d + j):
                c = shifted[k]
                if c:
                    row = ptab[k % n]
                    for t, r in enumerate(row):
                        if r:
                            col[t] += c * r
            cols.append(col)
        aug = [[cols[j][i] for j in range(d)] + [Fraction(1 if i == 0 else 0)] for i in range(d)]
        # gaussian elimination
        for c in range(d):
            pr = next(i for i in range(c, d) if aug[i][c] != 0)
            aug[c], aug[pr] = aug[pr], aug[c]
            inv = Fraction(1) / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(d):
                if i != c and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return CycNumber(n, tuple(aug[i][d] for i in range(d)))

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "CycNumber":
        if k < 0:
            return self.inverse() ** (-k)
        result = _ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- Galois -------------------------------------------------------

    def galois(self, k: int) -> "CycNumber":
        """Image under the automorphism zeta_N -> zeta_N^k; k must be coprime to N."""
        n = self.conductor
        if gcd(k, n) != 1:
            raise DomainError(f"galois twist {k} not coprime to conductor {n}")
        if n == 1:
            return self
        ptab = _power_table(n)
        out = [Fraction(0)] * euler_phi(n)
        for j, c in enumerate(self.coords):
            if c:
                row = ptab[(j * k) % n]
                for t, r in enumerate(row):
                    if r:
                        out[t] += c * r
        return CycNumber(n, tuple(out))

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    # -- comparisons / hashing ----------------------------------------

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.conductor == other.conductor and self.coords == other.coords

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.conductor, self.coords))
        return self._hash

    # -- conversions ---------------------------------------------------

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(complex(c) * z ** k for k, c in enumerate(self.coords) if c)

    def __str__(self) -> str:
        if self.conductor == 1:
            return str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            e = f"E({self.conductor})" + (f"^{k}" if k > 1 else "") if k else "1"
            if k == 0:
                term = str(c)
            elif c == 1:
                term = e
            elif c == -1:
                term = "-" + e
            else:
                term = f"{c}*{e}"
            if parts and not term.startswith("-"):
                parts.append("+" + term)
            else:
                parts.append(term)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CycNumber({self})"


def _canonicalize(n: int, coords: tuple[Fraction, ...]) -> tuple[int, tuple[Fraction, ...]]:
    if len(coords) != euler_phi(n):
        raise DomainError(f"coordinate vector of length {len(coords)} for conductor {n}")
    if all(c == 0 for c in coords[1:]):
        return 1, (coords[0],)
    changed = True
    while changed and n > 1:
        changed = False
        for p in prime_divisors(n):
            small = n // p
            low = _try_descend(coords, n, small)
            if low is not None:
                n, coords = small, low
                changed = True
                break
    return n, coords


def _merged_conductor(a: int, b: int) -> int:
    n = lcm(a, b)
    if n > CONDUCTOR_CAP:
        raise CapExceededError(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
    return n


def _coerce(x):
    if isinstance(x, CycNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return CycNumber.from_rational(x)
    return NotImplemented


_ZERO = CycNumber(1, (Fraction(0),), _canonical=True)
_ONE = CycNumber(1, (Fraction(1),), _canonical=True)


def root_of_unity(n: int, k: int = 1) -> CycNumber:
    """zeta_n^k in canonical form."""
    if n < 1:
        raise DomainError("root order must be positive")
    if n > CONDUCTOR_CAP:
        raise CapExceededError(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
    k %= n
    d = euler_phi(n)
    if k == 0:
        return _ONE
    row = _power_table(n)[k]
    return CycNumber(n, row)


def cyc(x) -> CycNumber:
    """Coerce a rational or CycNumber to CycNumber."""
    v = _coerce(x)
    if v is NotImplemented:
        raise DomainError(f"cannot interpret {x!r} as a cyclotomic number")
    return v


def parse_cyc(text: str) -> CycNumber:
    """Parse the E(N)^k text form produced by str()."""
    s = text.replace(" ", "")
    if not s:
        raise DomainError("empty cyclotomic literal")
    # split into signed terms
    terms = []
    buf = ""
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "+-*^(/":
            terms.append(buf)
            buf = ch if ch == "-" else ""
        else:
            buf += ch
    terms.append(buf)
    total = _ZERO
    for t in terms:
        if not t:
            continue
        neg = t.startswith("-")
        if neg:
            t = t[1:]
        if "E(" not in t:
            val = CycNumber.from_rational(Fraction(t))
        else:
            m = _E_TERM.match(t)
            if not m:
                raise DomainError(f"bad cyclotomic term {t!r} in {text!r}")
            coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            n = int(m.group(2))
            k = int(m.group(3)) if m.group(3) else 1
            val = coeff * root_of_unity(n, k)
        total = total + (-val if neg else val)
    return total
