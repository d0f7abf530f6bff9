"""Concrete models of the imprimitive reflection groups G(e,1,n) and G(e,e,n).

Elements are (permutation, phase-vector) pairs realizing monomial matrices
with entry (perm(j), j) = zeta_e^(phases(j)).  Conjugacy classes, the flat
lattice of the reflection arrangement, maximal parabolic chains (towers) and
Coxeter elements are all computed exactly.

For e = 1 the natural n-dimensional action is not essential; codimensions of
flats are measured by the rank of their defining equations, which makes the
type-A case (rank n-1) come out right with no special casing.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import NamedTuple

from .cyclo import CycNumber, root_of_unity
from .errors import CapExceededError, DomainError
from . import linalg

DEFAULT_ORDER_CAP = 20160

_SPEC_RE = re.compile(r"^G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)$")


class Element(NamedTuple):
    """Group element: perm maps position j to perm[j]; phases are mod-e residues."""

    perm: tuple[int, ...]
    phases: tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    """Parameters (e, p, n) of an irreducible imprimitive spetsial group."""

    e: int
    p: int
    n: int

    def __post_init__(self):
        e, p, n = self.e, self.p, self.n
        if e < 1 or n < 1:
            raise DomainError("e and n must be positive")
        if p not in (1, e):
            raise DomainError(f"p must be 1 or e, got {p}")
        if e == 1 and n == 1:
            raise DomainError("G(1,1,1) is trivial, not an irreducible reflection group")
        if p == e and e >= 2 and n < 2:
            raise DomainError("G(e,e,n) needs n >= 2")
        if (e, p, n) == (2, 2, 2):
            raise DomainError("G(2,2,2) is not irreducible")

    @staticmethod
    def parse(text: str) -> "GroupSpec":
        m = _SPEC_RE.match(text.strip())
        if not m:
            raise DomainError(f"bad group spec {text!r}; expected G(e,p,n)")
        return GroupSpec(int(m.group(1)), int(m.group(2)), int(m.group(3)))

    @property
    def order(self) -> int:
        if self.p == 1:
            return self.e ** self.n * factorial(self.n)
        return self.e ** (self.n - 1) * factorial(self.n)

    @property
    def rank(self) -> int:
        return self.n - 1 if self.e == 1 else self.n

    @property
    def degrees(self) -> tuple[int, ...]:
        e, p, n = self.e, self.p, self.n
        if e == 1:
            return tuple(range(2, n + 1))
        if p == 1:
            return tuple(e * i for i in range(1, n + 1))
        return tuple(sorted([e * i for i in range(1, n)] + [n]))

    @property
    def coxeter_number(self) -> int:
        return max(self.degrees)

    @property
    def num_reflections(self) -> int:
        e, p, n = self.e, self.p, self.n
        diag = n * (e - 1) if p == 1 else 0
        return diag + e * n * (n - 1) // 2

    def __str__(self) -> str:
        return f"G({self.e},{self.p},{self.n})"


def elem_mul(a: Element, b: Element, e: int) -> Element:
    """Product with the monomial-matrix law M(a)M(b) = M(ab)."""
    perm = tuple(a.perm[b.perm[j]] for j in range(len(a.perm)))
    if e == 1:
        return Element(perm, a.phases)
    phases = tuple((a.phases[b.perm[j]] + b.phases[j]) % e for j in range(len(a.perm)))
    return Element(perm, phases)


def elem_inv(a: Element, e: int) -> Element:
    n = len(a.perm)
    ip = [0] * n
    for j, t in enumerate(a.perm):
        ip[t] = j
    if e == 1:
        return Element(tuple(ip), a.phases)
    phases = tuple((-a.phases[ip[j]]) % e for j in range(n))
    return Element(tuple(ip), phases)


def elem_cycles(a: Element, e: int) -> list[tuple[int, int]]:
    """(length, phase-sum mod e) for each cycle of the permutation."""
    n = len(a.perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        l, c, j = 0, 0, start
        while not seen[j]:
            seen[j] = True
            c += a.phases[j]
            j = a.perm[j]
            l += 1
        out.append((l, c % e if e > 1 else 0))
    return out

def elem_order(a: Element, e: int) -> int:
    o = 1
    for l, c in elem_cycles(a, e):
        oc = l * (e // gcd(e, c) if c else 1)
        o = lcm(o, oc)
    return o


def cycle_type(a: Element, e: int) -> tuple[tuple[int, ...], ...]:
    """e-tuple of partitions: component c collects lengths of cycles with product c."""
    comps: list[list[int]] = [[] for _ in range(e)]
    for l, c in elem_cycles(a, e):
        comps[c].append(l)
    return tuple(tuple(sorted(comp, reverse=True)) for comp in comps)


@dataclass(frozen=True)
class ConjClass:
    rep: int
    members: tuple[int, ...]
    size: int
    label: str


@dataclass
class Parabolic:
    index: int
    eqs: tuple  # rref rows of the linear forms vanishing on the flat
    codim: int
    basis: tuple  # spanning vectors of the flat
    members: frozenset
    refl_set: frozenset


@dataclass(frozen=True)
class Tower:
    chain: tuple[int, ...]  # parabolic indices, codims 0..rank


class Group:
    """Fully enumerated G(e,p,n) with index-based multiplication."""

    def __init__(self, spec: GroupSpec, order_cap: int = DEFAULT_ORDER_CAP):
        if spec.order > order_cap:
            raise CapExceededError(
                f"{spec} has order {spec.order}, above the cap {order_cap}"
            )
        self.spec = spec
        e, p, n = spec.e, spec.p, spec.n
        self.e, self.n = e, n
        elements: list[Element] = []
        for perm in itertools.permutations(range(n)):
            for phases in itertools.product(range(e), repeat=n):
                if p == e and e > 1 and sum(phases) % e:
                    continue
                elements.append(Element(perm, phases))
        self.elements = elements
        self.index = {g: i for i, g in enumerate(elements)}
        assert len(elements) == spec.order
        ident = Element(tuple(range(n)), (0,) * n)
        self.identity = self.index[ident]
        self._inv = [self.index[elem_inv(g, e)] for g in elements]
        self._classes: list[ConjClass] | None = None
        self._class_of: list[int] | None = None
        self._reflections: tuple[int, ...] | None = None
        self._parabolics: list[Parabolic] | None = None
        self._hyperplanes: tuple | None = None
        self._coxeter: tuple[int, tuple] | None = None
        self._rmul_perm: dict[int, tuple[int, ...]] = {}

    # -- elementary operations -----------------------------------------

    def mul(self, i: int, j: int) -> int:
        return self.index[elem_mul(self.elements[i], self.elements[j], self.e)]

    def inv(self, i: int) -> int:
        return self._inv[i]

    def order_of(self, i: int) -> int:
        return elem_order(self.elements[i], self.e)

    def right_mul_perm(self, s: int) -> tuple[int, ...]:
        """Permutation g -> g*s of element indices (cached)."""
        if s not in self._rmul_perm:
            sel = self.elements[s]
            e = self.e
            self._rmul_perm[s] = tuple(
                self.index[elem_mul(g, sel, e)] for g in self.elements
            )
        return self._rmul_perm[s]

    def generators(self) -> list[int]:
        e, p, n = self.spec.e, self.spec.p, self.spec.n
        gens = []
        for i in range(n - 1):
            perm = list(range(n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            gens.append(self.index[Element(tuple(perm), (0,) * n)])
        if e > 1:
            if p == 1:
                phases = tuple(1 if j == 0 else 0 for j in range(n))
                gens.append(self.index[Element(tuple(range(n)), phases)])
            else:
                perm = list(range(n))
                perm[0], perm[1] = 1, 0
                phases = tuple([1, e - 1] + [0] * (n - 2))
                gens.append(self.index[Element(tuple(perm), phases)])
        return gens

    @property
    def exponent(self) -> int:
        m = 1
        for cls in self.conjugacy_classes():
            m = lcm(m, self.order_of(cls.rep))
        return m

    # -- conjugacy classes ----------------------------------------------

    def conjugacy_classes(self) -> list[ConjClass]:
        if self._classes is None:
            e = self.e
            gens = self.generators()
            gen_elems = [(self.elements[g], self.elements[self._inv[g]]) for g in gens]
            assigned = [-1] * len(self.elements)
            classes: list[ConjClass] = []
            label_seen: dict[str, int] = {}
            for start in range(len(self.elements)):
                if assigned[start] >= 0:
                    continue
                ci = len(classes)
                orbit = {start}
                frontier = [start]
                assigned[start] = ci
                while frontier:
                    x = frontier.pop()
                    xe = self.elements[x]
                    for ge, gie in gen_elems:
                        y = self.index[elem_mul(elem_mul(ge, xe, e), gie, e)]
                        if assigned[y] < 0:
                            assigned[y] = ci
                            orbit.add(y)
                            frontier.append(y)
                base = _type_label(cycle_type(self.elements[start], e))
                occ = label_seen.get(base, 0)
                label_seen[base] = occ + 1
                label = base if occ == 0 else f"{base}'{occ}"
                classes.append(
                    ConjClass(start, tuple(sorted(orbit)), len(orbit), label)
                )
            self._classes = classes
            self._class_of = assigned
        return self._classes

    def class_of(self, i: int) -> int:
        self.conjugacy_classes()
        return self._class_of[i]

    def inverse_class_map(self) -> tuple[int, ...]:
        classes = self.conjugacy_classes()
        return tuple(self.class_of(self._inv[c.rep]) for c in classes)

    # -- reflections and matrices -----------------------------------------

    def fixed_codim(self, i: int) -> int:
        """Codimension of the fixed space in C^n (equals essential codim)."""
        cycles = elem_cycles(self.elements[i], self.e)
        return self.n - sum(1 for _, c in cycles if c == 0)

    def reflections(self) -> tuple[int, ...]:
        if self._reflections is None:
            self._reflections = tuple(
                i for i in range(len(self.elements)) if self.fixed_codim(i) == 1
            )
        return self._reflections

    def matrix(self, i: int):
        g = self.elements[i]
        n = self.n
        zero = CycNumber.zero()
        rows = [[zero] * n for _ in range(n)]
        for j in range(n):
            rows[g.perm[j]][j] = root_of_unity(self.e, g.phases[j])
        return tuple(tuple(r) for r in rows)

    def act(self, i: int, vec):
        g = self.elements[i]
        out = [CycNumber.zero()] * self.n
        for j in range(self.n):
            v = vec[j]
            if not v.is_zero():
                out[g.perm[j]] = root_of_unity(self.e, g.phases[j]) * v
        return tuple(out)

    def act_form(self, i: int, row):
        """Image of a linear form under g: form o g^{-1}."""
        gi = self.elements[self._inv[i]]
        out = []
        for j in range(self.n):
            out.append(row[gi.perm[j]] * root_of_unity(self.e, gi.phases[j]))
        return tuple(out)

    # -- arrangement geometry ----------------------------------------------

    def hyperplanes(self) -> tuple:
        """Canonical equations of the reflecting hyperplanes (one row each)."""
        if self._hyperplanes is None:
            seen = {}
            one = CycNumber.one()
            for r in self.reflections():
                m = self.matrix(r)
                rows = []
                for i in range(self.n):
                    row = list(m[i])
                    row[i] = row[i] - one
                    if any(not x.is_zero() for x in row):
                        rows.append(tuple(row))
                red, _ = linalg.rref(rows)
                assert len(red) == 1
                seen.setdefault(red[0], []).append(r)
            self._hyperplanes = tuple(sorted(seen, key=_row_key))
        return self._hyperplanes

    def parabolic_lattice(self) -> list[Parabolic]:
        if self._parabolics is None:
            hyps = self.hyperplanes()
            flats = {(): 0}
            order: list[tuple] = [()]
            frontier = [()]
            while frontier:
                nxt = []
                for eqs in frontier:
                    r0 = len(eqs)
                    for h in hyps:
                        red, _ = linalg.rref(list(eqs) + [h])
                        if len(red) > r0 and red not in flats:
                            flats[red] = len(order)
                            order.append(red)
                            nxt.append(red)
                frontier = nxt
            order.sort(key=lambda eqs: (len(eqs), tuple(_row_key(r) for r in eqs)))
            paras = []
            for idx, eqs in enumerate(order):
                basis = linalg.nullspace(eqs, self.n) if eqs else linalg.identity(self.n)
                members = frozenset(
                    g
                    for g in range(len(self.elements))
                    if all(self.act(g, v) == v for v in basis)
                )
                refl = frozenset(members) & set(self.reflections())
                paras.append(
                    Parabolic(idx, eqs, len(eqs), basis, members, frozenset(refl))
                )
            self._parabolics = paras
        return self._parabolics

    def flat_action(self, g: int) -> tuple[int, ...]:
        """Permutation of parabolic-lattice indices induced by g."""
        paras = self.parabolic_lattice()
        lookup = {p.eqs: p.index for p in paras}
        out = []
        for p in paras:
            rows = [self.act_form(g, r) for r in p.eqs]
            red, _ = linalg.rref(rows)
            out.append(lookup[red])
        return tuple(out)

    # -- towers ---------------------------------------------------------------

    def towers(self, mode: str = "conj", seed: int = 0, count: int = 0) -> list[Tower]:
        paras = self.parabolic_lattice()
        rank = self.spec.rank
        by_codim: dict[int, list[Parabolic]] = {}
        for p in paras:
            by_codim.setdefault(p.codim, []).append(p)
        # covers: flat of codim i contains flat of codim i+1
        chains: list[tuple[int, ...]] = []

        def grow(chain: tuple[int, ...], cur: Parabolic):
            if cur.codim == rank:
                chains.append(chain)
                return
            for q in by_codim.get(cur.codim + 1, []):
                if linalg.subspace_leq(cur.eqs, q.eqs):
                    grow(chain + (q.index,), q)

        top = by_codim[0][0]
        grow((top.index,), top)
        chains.sort()
        if mode == "all":
            return [Tower(c) for c in chains]
        if mode == "sample":
            rng = random.Random(seed)
            k = min(count, len(chains)) if count else len(chains)
            return [Tower(c) for c in sorted(rng.sample(chains, k))]
        if mode != "conj":
            raise DomainError(f"unknown tower mode {mode!r}")
        gen_perms = [self.flat_action(g) for g in self.generators()]
        seen: set[tuple[int, ...]] = set()
        reps = []
        for c in chains:
            if c in seen:
                continue
            orbit = {c}
            frontier = [c]
            while frontier:
                x = frontier.pop()
                for gp in gen_perms:
                    y = tuple(gp[i] for i in x)
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            seen |= orbit
            reps.append(min(orbit))
        return [Tower(c) for c in sorted(reps)]

    # -- Coxeter element ---------------------------------------------------

    def coxeter_element(self) -> int:
        """First element (in enumeration order) that is zeta_h-regular."""
        if self._coxeter is None:
            h = self.spec.coxeter_number
            zh = root_of_unity(h)
            hyps = self.hyperplanes()
            one = CycNumber.one()
            for i in range(len(self.elements)):
                if self.order_of(i) != h:
                    continue
                m = self.matrix(i)
                rows = [
                    tuple(m[r][c] - (zh if r == c else CycNumber.zero()) for c in range(self.n))
                    for r in range(self.n)
                ]
                ns = linalg.nullspace(rows, self.n)
                if len(ns) != 1:
                    continue
                v = ns[0]
                if all(
                    not linalg.sum_prod(hrow, v).is_zero() for hrow in hyps
                ):
                    self._coxeter = (i, v)
                    break
            else:
                raise DomainError(f"no regular element of order {h} in {self.spec}")
        return self._coxeter[0]

    def coxeter_eigenvector(self):
        self.coxeter_element()
        return self._coxeter[1]


def _type_label(ct: tuple[tuple[int, ...], ...]) -> str:
    return "|".join(",".join(str(x) for x in comp) for comp in ct)


def _row_key(row) -> tuple:
    return tuple(str(x) for x in row)


@lru_cache(maxsize=None)
def group(spec_text: str, order_cap: int = DEFAULT_ORDER_CAP) -> Group:
    """Cached group construction from a spec string like "G(2,1,3)"."""
    return Group(GroupSpec.parse(spec_text), order_cap)
