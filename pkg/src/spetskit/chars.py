"""Exact character tables, exterior powers, fake degrees, Coxeter numbers.

G(e,1,n) tables come from the wreath-product Murnaghan-Nakayama rule on
e-tuples of partitions.  G(e,e,n) tables restrict those characters along
rotation orbits of labels; orbits with nontrivial stabilizer split, and the
constituents are computed exactly by specht.split_character_values.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycNumber, root_of_unity
from .errors import DomainError
from .laurent import QLaurent, QRational, q_int
from .refgroup import Group, cycle_type
from . import specht

_ZERO = CycNumber.zero()
_ONE = CycNumber.one()


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []

    def grow(rem: int, maxpart: int, acc: tuple[int, ...]):
        if rem == 0:
            out.append(acc)
            return
        for p in range(min(rem, maxpart), 0, -1):
            grow(rem - p, p, acc + (p,))

    grow(n, n, ())
    return tuple(out)


@lru_cache(maxsize=None)
def e_partition_tuples(n: int, e: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All e-tuples of partitions with total size n, sorted."""
    out = []

    def grow(slot: int, rem: int, acc: tuple):
        if slot == e - 1:
            for p in partitions(rem):
                out.append(acc + (p,))
            return
        for k in range(rem + 1):
            for p in partitions(k):
                grow(slot + 1, rem - k, acc + (p,))

    grow(0, n, ())
    return tuple(sorted(out))


def strip_removals(lam: tuple[int, ...], l: int) -> list[tuple[tuple[int, ...], int]]:
    """(partition after removing a border strip of size l, strip height)."""
    k = len(lam)
    if l == 0 or sum(lam) < l:
        return []
    beta = [lam[i] + (k - 1 - i) for i in range(k)]
    bset = set(beta)
    out = []
    for b in beta:
        nb = b - l
        if nb < 0 or nb in bset:
            continue
        height = sum(1 for x in beta if nb < x < b)
        newbeta = sorted((bset - {b}) | {nb}, reverse=True)
        parts = tuple(x - (k - 1 - i) for i, x in enumerate(newbeta))
        parts = tuple(p for p in parts if p > 0)
        out.append((parts, height))
    return out


_mn_cache: dict = {}


def mn_value(e: int, lam: tuple, cycles: tuple) -> CycNumber:
    """Wreath Murnaghan-Nakayama: character of lam at the class with these cycles."""
    if not cycles:
        return _ONE
    key = (e, lam, cycles)
    v = _mn_cache.get(key)
    if v is not None:
        return v
    (l, c), rest = cycles[0], cycles[1:]
    total = _ZERO
    for j in range(e):
        comp = lam[j]
        if sum(comp) < l:
            continue
        zeta = root_of_unity(e, j * c) if e > 1 else _ONE
        for newcomp, height in strip_removals(comp, l):
            sub = lam[:j] + (newcomp,) + lam[j + 1:]
            term = zeta * mn_value(e, sub, rest)
            if height % 2:
                term = -term
            total = total + term
    _mn_cache[key] = total
    return total


def class_cycles(group: Group, class_index: int) -> tuple:
    """Cycles (l, c) of the class representative, largest first."""
    rep = group.elements[group.conjugacy_classes()[class_index].rep]
    cyc = [(l, c) for l, c in _elem_cycles(rep, group.e)]
    return tuple(sorted(cyc, reverse=True))


def _elem_cycles(elem, e):
    from .refgroup import elem_cycles

    return elem_cycles(elem, e)


@dataclass(frozen=True)
class Label:
    """Row label: e-tuple of partitions, plus a split index for degenerate orbits."""

    parts: tuple
    split: int = -1

    def __str__(self) -> str:
        body = ".".join("(" + ",".join(str(x) for x in p) + ")" for p in self.parts)
        if self.split < 0:
            return body
        if self.split < 2:
            return body + ("+" if self.split == 0 else "-")
        return f"{body}[{self.split}]"

    def sort_key(self):
        return (self.parts, self.split)


def rotations(lam: tuple, e: int) -> list[tuple]:
    return [tuple(lam[(j + t) % e] for j in range(e)) for t in range(e)]


def tuple_period(lam: tuple, e: int) -> int:
    for r in range(1, e + 1):
        if e % r == 0 and all(lam[(j + r) % e] == lam[j] for j in range(e)):
            return r
    return e


class CharTable:
    """Exact irreducible character table with combinatorial labels."""

    def __init__(self, group: Group):
        self.group = group
        classes = group.conjugacy_classes()
        self.class_cycles = [class_cycles(group, i) for i in range(len(classes))]
        e, p, n = group.spec.e, group.spec.p, group.spec.n
        rows: list[tuple[Label, tuple[CycNumber, ...]]] = []
        if p == 1:
            for lam in e_partition_tuples(n, e):
                vals = tuple(mn_value(e, lam, cyc) for cyc in self.class_cycles)
                rows.append((Label(lam), vals))
        else:
            seen = set()
            reps = [group.elements[c.rep] for c in classes]
            for lam in e_partition_tuples(n, e):
                canon = min(rotations(lam, e))
                if canon in seen:
                    continue
                seen.add(canon)
                r = tuple_period(canon, e)
                b = e // r
                res = tuple(mn_value(e, canon, cyc) for cyc in self.class_cycles)
                if b == 1:
                    rows.append((Label(canon), res))
                else:
                    split_rows = specht.split_character_values(e, canon, r, reps)
                    total = [
                        sum((row[c] for row in split_rows), _ZERO)
                        for c in range(len(classes))
                    ]
                    if tuple(total) != res:
                        raise DomainError(
                            f"split constituents of {canon} do not sum to the restriction"
                        )
                    for j, row in enumerate(split_rows):
                        rows.append((Label(canon, j), tuple(row)))
        rows.sort(key=lambda r: r[0].sort_key())
        self.labels = [r[0] for r in rows]
        self.values = [r[1] for r in rows]
        self.row_index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.labels) != len(classes):
            raise DomainError(
                f"{group.spec}: {len(self.labels)} irreducibles vs {len(classes)} classes"
            )
        self.identity_class = group.class_of(group.identity)
        self._feg: dict[int, QLaurent] = {}

    # -- basics ---------------------------------------------------------

    def nrows(self) -> int:
        return len(self.labels)

    def degree(self, i: int) -> CycNumber:
        return self.values[i][self.identity_class]

    def inner(self, phi, psi) -> CycNumber:
        classes = self.group.conjugacy_classes()
        total = _ZERO
        for c, cls in enumerate(classes):
            total = total + cls.size * phi[c] * psi[c].conjugate()
        return Fraction(1, len(self.group.elements)) * total

    def conjugate_row(self, i: int) -> int:
        target = tuple(v.conjugate() for v in self.values[i])
        for j, vals in enumerate(self.values):
            if vals == target:
                return j
        raise DomainError("conjugate character missing from table")

    def row_of_values(self, vals) -> int | None:
        vals = tuple(vals)
        for j, v in enumerate(self.values):
            if v == vals:
                return j
        return None

    # -- exterior powers -------------------------------------------------

    def ext_power_char(self, k: int) -> tuple[CycNumber, ...]:
        rank = self.group.spec.rank
        if not 0 <= k <= rank:
            raise DomainError(f"exterior power {k} outside 0..{rank}")
        e = self.group.e
        out = []
        for cyc in self.class_cycles:
            # prod over cycles of (1 + (-1)^(l+1) x^l zeta^c), coefficient of x^k
            poly = {0: _ONE}
            for l, c in cyc:
                zc = root_of_unity(e, c) if e > 1 else _ONE
                if l % 2 == 0:
                    zc = -zc
                newpoly = dict(poly)
                for d, v in poly.items():
                    t = newpoly.get(d + l, _ZERO) + v * zc
                    if t.is_zero():
                        newpoly.pop(d + l, None)
                    else:
                        newpoly[d + l] = t
                poly = newpoly
            if e == 1:
                # quotient by the trivial eigenvalue: divide by (1 + x)
                quot = {}
                carry = _ZERO
                for d in range(0, max(poly) + 1):
                    cur = poly.get(d, _ZERO) - carry
                    if d <= max(poly) - 1:
                        quot[d] = cur
                        carry = cur
                poly = {d: v for d, v in quot.items() if not v.is_zero()}
            out.append(poly.get(k, _ZERO))
        return tuple(out)

    def det_v_values(self) -> tuple[CycNumber, ...]:
        return self.ext_power_char(self.group.spec.rank)

    # -- fake degrees, Coxeter numbers ------------------------------------

    def _det_factor(self, class_index: int) -> QLaurent:
        """det_V(1 - q w) on the essential reflection representation."""
        e = self.group.e
        poly = QLaurent.one()
        for l, c in self.class_cycles[class_index]:
            zc = root_of_unity(e, c) if e > 1 else _ONE
            poly = poly * QLaurent({0: _ONE, l: -zc})
        if e == 1:
            poly = poly.exact_div(QLaurent({0: _ONE, 1: -_ONE}))
        return poly

    def fake_degree(self, i: int) -> QLaurent:
        if i not in self._feg:
            grp = self.group
            classes = grp.conjugacy_classes()
            pfac = QLaurent.one()
            for d in grp.spec.degrees:
                pfac = pfac * (-q_int(d))  # 1 - q^d
            total = QRational(QLaurent.zero())
            for c, cls in enumerate(classes):
                num = QLaurent.const(cls.size * self.values[i][c].conjugate())
                total = total + QRational(num, self._det_factor(c))
            feg = total * QRational(pfac.scale(Fraction(1, len(grp.elements))))
            self._feg[i] = feg.as_laurent()
        return self._feg[i]

    def n_of(self, i: int) -> CycNumber:
        return self.fake_degree(i).derivative_at_one()

    def n_of_reflection_formula(self, i: int) -> CycNumber:
        """|Refl| chi(1)/2 - sum_s chi(s)/(1 - conj(det_V(s)))."""
        grp = self.group
        refl = set(grp.reflections())
        det_vals = self.det_v_values()
        total = Fraction(len(refl), 2) * self.degree(i)
        for c, cls in enumerate(grp.conjugacy_classes()):
            if cls.rep in refl:
                denom = _ONE - det_vals[c].conjugate()
                total = total - cls.size * self.values[i][c] * denom.inverse()
        return total

    def coxeter_number(self, i: int) -> CycNumber:
        grp = self.group
        refl = set(grp.reflections())
        deg_inv = self.degree(i).inverse()
        total = _ZERO
        for c, cls in enumerate(grp.conjugacy_classes()):
            if cls.rep in refl:
                total = total + cls.size * (_ONE - self.values[i][c] * deg_inv)
        return total


@lru_cache(maxsize=None)
def char_table(spec_text: str) -> CharTable:
    from .refgroup import group

    return CharTable(group(spec_text))
