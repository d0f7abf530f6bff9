"""Jucys-Murphy tower elements, tower equivalence, and its kernel.

For a tower T the elements J_T^i = sum of reflections of W_i not in W_{i-1}
generate a commutative subalgebra of the group algebra.  Two class functions
are tower equivalent iff they agree on every monomial in the J's for every
tower.  Monomials are spanned with exponents below the degree m_i of each
J_T^i's minimal polynomial; products beyond that reduce, because the J's
commute and each satisfies its own minimal polynomial.

J-monomials have integer coefficients, so products and class projections run
over plain Python ints; only the final projections are lifted to CycNumber.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycNumber
from .errors import CapExceededError
from .refgroup import Group, Tower
from . import linalg

_ZERO = CycNumber.zero()


class GroupAlgElt:
    """Sparse group-algebra element: element index -> CycNumber coefficient."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: Group, coeffs: dict[int, CycNumber] | None = None):
        self.group = group
        cc = {}
        if coeffs:
            for k, v in coeffs.items():
                if not v.is_zero():
                    cc[k] = v
        self.coeffs = cc

    def __add__(self, other: "GroupAlgElt") -> "GroupAlgElt":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, _ZERO) + v
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return GroupAlgElt(self.group, out)

    def __mul__(self, other: "GroupAlgElt") -> "GroupAlgElt":
        g = self.group
        out: dict[int, CycNumber] = {}
        for i, x in self.coeffs.items():
            for j, y in other.coeffs.items():
                k = g.mul(i, j)
                s = out.get(k, _ZERO) + x * y
                if s.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = s
        return GroupAlgElt(g, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupAlgElt) and self.coeffs == other.coeffs

    def class_project(self) -> tuple[CycNumber, ...]:
        """Per-class sums of coefficients."""
        g = self.group
        out = [_ZERO] * len(g.conjugacy_classes())
        for i, v in self.coeffs.items():
            c = g.class_of(i)
            out[c] = out[c] + v
        return tuple(out)


def jt_elements(group: Group, tower: Tower) -> list[GroupAlgElt]:
    """J_T^i = sum over Refl(W_i) - Refl(W_{i-1}), i = 1..rank."""
    paras = group.parabolic_lattice()
    one = CycNumber.one()
    out = []
    for i in range(1, len(tower.chain)):
        cur = paras[tower.chain[i]].refl_set
        prev = paras[tower.chain[i - 1]].refl_set
        out.append(GroupAlgElt(group, {s: one for s in cur - prev}))
    return out


@dataclass
class MonomialSet:
    """Class projections of the spanning monomials prod_i (J_T^i)^(a_i), a_i < m_i."""

    tower: Tower
    power_bounds: tuple[int, ...]
    projections: list[tuple[CycNumber, ...]]


# -- integer fast path --------------------------------------------------------


def _support_perms(group: Group, support) -> list[tuple[int, ...]]:
    return [group.right_mul_perm(s) for s in support]


def _mul_by_j(vec: list[int], perms) -> list[int]:
    out = [0] * len(vec)
    for perm in perms:
        for g, v in enumerate(vec):
            if v:
                out[perm[g]] += v
    return out


def _min_poly_degree(group: Group, perms, max_deg: int = 200) -> int:
    """Degree of the minimal polynomial of J in the regular representation.

    Finds the first linear dependence among 1, J, J^2, ... applied to the
    identity basis vector; since J lies in the group algebra acting by right
    multiplication, this is its minimal polynomial over Q.
    """
    n = len(group.elements)
    vec = [0] * n
    vec[group.identity] = 1
    rows: list[list[Fraction]] = []
    pivots: list[int] = []
    powers = [list(vec)]
    for deg in range(1, max_deg + 1):
        vec = _mul_by_j(vec, perms)
        powers.append(list(vec))
        # eliminate the new vector against the echelon rows of the previous powers
        cur = [Fraction(x) for x in powers[deg - 1]]
        for row, p in zip(rows, pivots):
            if cur[p]:
                f = cur[p]
                cur = [x - f * y for x, y in zip(cur, row)]
        p = next((i for i, x in enumerate(cur) if x), None)
        if p is None:
            return deg - 1
        inv = Fraction(1) / cur[p]
        rows.append([x * inv for x in cur])
        pivots.append(p)
        # now test whether the latest power is dependent
        cur = [Fraction(x) for x in powers[deg]]
        for row, pp in zip(rows, pivots):
            if cur[pp]:
                f = cur[pp]
                cur = [x - f * y for x, y in zip(cur, row)]
        if all(x == 0 for x in cur):
            return deg
    raise CapExceededError("minimal polynomial degree above cap")


def monomial_set(group: Group, tower: Tower) -> MonomialSet:
    paras = group.parabolic_lattice()
    supports = []
    for i in range(1, len(tower.chain)):
        cur = paras[tower.chain[i]].refl_set
        prev = paras[tower.chain[i - 1]].refl_set
        supports.append(sorted(cur - prev))
    perms_per_j = [_support_perms(group, s) for s in supports]
    bounds = tuple(_min_poly_degree(group, perms) for perms in perms_per_j)
    n = len(group.elements)
    ident = [0] * n
    ident[group.identity] = 1

    cls_of = [group.class_of(i) for i in range(n)]
    ncls = len(group.conjugacy_classes())

    def project(vec: list[int]) -> tuple[CycNumber, ...]:
        out = [0] * ncls
        for g, v in enumerate(vec):
            if v:
                out[cls_of[g]] += v
        return tuple(CycNumber.from_rational(x) for x in out)

    projections: list[tuple[CycNumber, ...]] = []

    def walk(i: int, vec: list[int]):
        if i == len(supports):
            projections.append(project(vec))
            return
        cur = vec
        for a in range(bounds[i]):
            if a > 0:
                cur = _mul_by_j(cur, perms_per_j[i])
            walk(i + 1, cur)

    walk(0, ident)
    return MonomialSet(tower, bounds, projections)


def _pair_against(phi, proj, class_sizes) -> CycNumber:
    """Evaluation of the class function phi on a group-algebra element given its
    class projection (projection already carries multiplicities, not averages)."""
    total = _ZERO
    for v, p in zip(phi, proj):
        if not p.is_zero() and not v.is_zero():
            total = total + v * p
    return total


def tower_equivalent(group: Group, phi, psi, towers=None) -> bool:
    """phi == psi on C[J_T] for every tower (representatives up to conjugacy)."""
    if towers is None:
        towers = group.towers("conj")
    diff = tuple(a - b for a, b in zip(phi, psi))
    if all(v.is_zero() for v in diff):
        return True
    sizes = [c.size for c in group.conjugacy_classes()]
    for tw in towers:
        ms = monomial_set(group, tw)
        for proj in ms.projections:
            if not _pair_against(diff, proj, sizes).is_zero():
                return False
    return True


def tower_kernel(group: Group, towers=None):
    """Reduced-echelon basis of {phi : phi tower equivalent to 0}."""
    if towers is None:
        towers = group.towers("conj")
    rows = []
    for tw in towers:
        ms = monomial_set(group, tw)
        rows.extend(ms.projections)
    ncls = len(group.conjugacy_classes())
    return linalg.nullspace(rows, ncls)
