"""Closed-form Schur elements and generic degrees of hook characters.

The displayed product formulas for S_(chi_k) and Deg(U_(chi_k)) of G(e,1,n)
and G(e,e,n) are transcribed verbatim as lists of atomic factors; all
cancellation is delegated to QRational reduction (identical atomic factors
are cancelled structurally first, which changes nothing mathematically and
keeps the Euclidean gcd small).  The manual simplification steps of the
derivation are asserted in the test suite, not re-implemented here.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .cyclo import CycNumber, root_of_unity
from .errors import DomainError
from .laurent import QLaurent, QRational
from .chars import tuple_period

_ONE = CycNumber.one()


@dataclass(frozen=True)
class HookIndex:
    """Hook character chi_k of G(e,p,n), labeled ((n-k),(1^k),empty,...)."""

    e: int
    p: int
    n: int
    k: int

    def __post_init__(self):
        e, p, n, k = self.e, self.p, self.n, self.k
        if e < 1 or n < 1:
            raise DomainError("e, n must be positive")
        if p not in (1, e):
            raise DomainError("p must be 1 or e")
        if p == e and e >= 2:
            if n < 2:
                raise DomainError("G(e,e,n) needs n >= 2")
            if (e, n) == (2, 2):
                raise DomainError("G(2,2,2) is not irreducible")
        kmax = n - 1 if e == 1 else n
        if not 0 <= k <= kmax:
            raise DomainError(f"hook index k={k} outside 0..{kmax}")
        if p == e and e >= 3 and n == 2 and k == 1:
            # the label ((1),(1),(),...) must not be rotation-degenerate
            parts = [()] * e
            parts[0] = (1,)
            parts[1] = (1,)
            if tuple_period(tuple(parts), e) != e:
                raise DomainError("hook label unexpectedly splits")

    @property
    def coxeter_number(self) -> int:
        if self.p == 1:
            return self.e * self.n
        return max(self.e * (self.n - 1), self.n)

    def label_parts(self) -> tuple:
        width = max(self.e, 2) if self.k > 0 else max(self.e, 1)
        parts = [()] * width
        parts[0] = (self.n - self.k,) if self.n > self.k else ()
        if self.k:
            parts[1] = (1,) * self.k
        return tuple(parts[: self.e]) if self.e >= 2 else ((self.n - self.k,) + (1,) * self.k,)


def _qp(m: int, c=None) -> QLaurent:
    """q^m - c (c defaults to 1)."""
    cc = _ONE if c is None else c
    return QLaurent.from_terms([(m, _ONE), (0, -cc)])


def _cancel(num: list[QLaurent], den: list[QLaurent]):
    remaining = list(den)
    out_num = []
    for f in num:
        if f in remaining:
            remaining.remove(f)
        else:
            out_num.append(f)
    return out_num, remaining


def _build(num_factors, den_factors) -> QRational:
    num_factors, den_factors = _cancel(list(num_factors), list(den_factors))
    num = QLaurent.one()
    for f in num_factors:
        num = num * f
    den = QLaurent.one()
    for f in den_factors:
        den = den * f
    return QRational(num, den)


def poincare_polynomial(e: int, p: int, n: int) -> QRational:
    """S_Id: the Poincare polynomial prod (q^(d_i)-1)/(q-1)."""
    if p == 1:
        num = [_qp(e * i) for i in range(1, n + 1)]
    else:
        num = [_qp(n)] + [_qp(e * i) for i in range(1, n)]
    return _build(num, [_qp(1)] * n)


def schur_hook(idx: HookIndex) -> QRational:
    e, n, k = idx.e, idx.n, idx.k
    if idx.p == 1:
        if k == 0:
            return poincare_polynomial(e, 1, n)
        ze = root_of_unity(e)
        num = [QLaurent.const(e), _qp(k), _qp(n, ze)]
        num += [_qp(e * i) for i in range(1, n - k + 1)]
        num += [_qp(e * i) for i in range(1, k)]
        den = [QLaurent.q(k + e * comb(k, 2))]
        den += [_qp(1)] * n
        den += [_qp(n - k, ze)]
        return _build(num, den)
    ze = root_of_unity(e)
    zei = root_of_unity(e, -1)
    a = 1 if k in (0, n) else e
    num = [QLaurent.const(a), _qp(n - 1, ze), _qp(1, zei)]
    if k != n:
        num.append(_qp(n - k))
    if k != 0:
        num.append(_qp(k))
    num += [_qp(e * i) for i in range(1, n - k)]
    num += [_qp(e * i) for i in range(1, k)]
    den = [QLaurent.q(1 + e * comb(k, 2))]
    den.append(QLaurent.from_terms([(n - k - 1, zei), (0, -_ONE)]))  # q^(n-k-1) zeta^-1 - 1
    den.append(QLaurent.from_terms([(0, ze), (k - 1, -_ONE)]))  # zeta - q^(k-1)
    den += [_qp(1)] * n
    return _build(num, den)


def degree_hook(idx: HookIndex) -> QRational:
    """Deg(U_(chi_k)) as a reduced rational function; a polynomial in q."""
    e, n, k = idx.e, idx.n, idx.k
    if k == 0:
        return QRational(QLaurent.one())
    if idx.p == 1:
        ze = root_of_unity(e)
        num = [QLaurent.q(k + e * comb(k, 2)), _qp(n - k, ze)]
        num += [_qp(e * i) for i in range(k, n + 1)]
        den = [QLaurent.const(e), _qp(k), _qp(n, ze)]
        den += [_qp(e * i) for i in range(1, n - k + 1)]
    else:
        ze = root_of_unity(e)
        zei = root_of_unity(e, -1)
        a = 1 if k in (0, n) else e
        num = [
            QLaurent.q(1 + e * comb(k, 2)),
            QLaurent.from_terms([(n - k - 1, zei), (0, -_ONE)]),
            QLaurent.from_terms([(0, ze), (k - 1, -_ONE)]),
            _qp(n),
        ]
        num += [_qp(e * i) for i in range(k, n)]
        den = [QLaurent.const(a), _qp(n - 1, ze), _qp(1, zei)]
        if k != n:
            den.append(_qp(n - k))
        den.append(_qp(k))
        den += [_qp(e * i) for i in range(1, n - k)]
    deg = _build(num, den)
    if not deg.is_laurent() or (not deg.num.is_zero() and deg.num.valuation() < 0):
        raise DomainError(
            f"Deg(U_chi_{k}) of G({e},{idx.p},{n}) did not reduce to a polynomial: {deg}"
        )
    return deg


def a_A_hook(idx: HookIndex) -> tuple[int, int]:
    """(valuation, degree) in q of the reduced generic degree."""
    deg = degree_hook(idx).as_laurent()
    return deg.valuation(), deg.degree()


def degree_at_coxeter_root(idx: HookIndex) -> CycNumber:
    return degree_hook(idx).eval_at(root_of_unity(idx.coxeter_number))


def degree_at_one(idx: HookIndex) -> CycNumber:
    return degree_hook(idx).eval_at(_ONE)
