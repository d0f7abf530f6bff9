"""Seminormal Specht matrices and wreath-product modules.

Used to resolve the split restrictions G(e,1,n) -> G(e,e,n): when an e-tuple
of partitions is invariant under rotating its components by r, the module
below carries a combinatorial intertwiner (rotate colors by r) whose b-th
power is exactly the identity (b = e/r).  Its eigenspaces are the split
constituents, so their character values come out of plain traces with no
root extraction.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .cyclo import CycNumber, root_of_unity
from .refgroup import Element

_ZERO = CycNumber.zero()
_ONE = CycNumber.one()


@lru_cache(maxsize=None)
def standard_tableaux(shape: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All standard Young tableaux of the given shape, as row tuples of letters 1..m."""
    m = sum(shape)
    if m == 0:
        return ((),)
    out = []

    def grow(rows: list[list[int]], letter: int):
        if letter > m:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, width in enumerate(shape):
            if len(rows[i]) < width and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(letter)
                grow(rows, letter + 1)
                rows[i].pop()

    grow([[] for _ in shape], 1)
    return tuple(out)


def _letter_positions(tab) -> dict[int, tuple[int, int]]:
    pos = {}
    for i, row in enumerate(tab):
        for j, letter in enumerate(row):
            pos[letter] = (i, j)
    return pos


@lru_cache(maxsize=None)
def seminormal_action(shape: tuple[int, ...], r: int):
    """Column-sparse matrix of the adjacent transposition (r, r+1) on S^shape.

    Returns cols with cols[j] = ((i, Fraction), ...): image of basis vector j.
    Young's seminormal form; all entries rational.
    """
    tabs = standard_tableaux(shape)
    index = {t: i for i, t in enumerate(tabs)}
    cols = []
    for t in tabs:
        pos = _letter_positions(t)
        (ri, ci), (rj, cj) = pos[r], pos[r + 1]
        if ri == rj:
            cols.append(((index[t], Fraction(1)),))
            continue
        if ci == cj:
            cols.append(((index[t], Fraction(-1)),))
            continue
        d = (cj - rj) - (ci - ri)  # content(r+1) - content(r)
        swapped = tuple(
            tuple(r + 1 if x == r else r if x == r + 1 else x for x in row) for row in t
        )
        other = index[swapped]
        if d > 0:
            cols.append(((index[t], Fraction(1, d)), (other, Fraction(1))))
        else:
            dd = -d
            cols.append(
                ((index[t], Fraction(-1, dd)), (other, Fraction(1) - Fraction(1, dd * dd)))
            )
    return cols


def _adjacent_word(perm: tuple[int, ...]) -> list[int]:
    """Word (i_1..i_k) with perm = s_{i_k} o ... o s_{i_1}; bubble sort by positions."""
    arr = list(perm)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(arr) - 1):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                word.append(j)
                changed = True
    return word


class WreathModule:
    """The irreducible G(e,1,n)-module for an e-tuple of partitions.

    Basis: (coloring f of positions with |f^{-1}(j)| = |lam[j]|) x (tuple of
    standard tableaux, one per component).
    """

    def __init__(self, e: int, lam: tuple[tuple[int, ...], ...]):
        self.e = e
        self.lam = lam
        self.n = sum(sum(p) for p in lam)
        sizes = [sum(p) for p in lam]
        colorings = sorted(set(itertools.permutations(
            [j for j, s in enumerate(sizes) for _ in range(s)]
        )))
        tab_lists = [standard_tableaux(p) for p in lam]
        self.basis: list[tuple] = []
        for f in colorings:
            for tt in itertools.product(*tab_lists):
                self.basis.append((f, tt))
        self.bindex = {b: i for i, b in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._s_cols: dict[int, list] = {}

    # -- generator actions ------------------------------------------------

    def s_columns(self, i: int):
        """Column-sparse action of the transposition of positions (i, i+1)."""
        if i not in self._s_cols:
            cols = []
            for f, tt in self.basis:
                if f[i] != f[i + 1]:
                    f2 = list(f)
                    f2[i], f2[i + 1] = f2[i + 1], f2[i]
                    cols.append(((self.bindex[(tuple(f2), tt)], _ONE),))
                else:
                    j = f[i]
                    rank = sum(1 for p in range(i) if f[p] == j)  # 0-based letter rank
                    action = seminormal_action(self.lam[j], rank + 1)
                    col = []
                    for ti, coeff in action[standard_tableaux(self.lam[j]).index(tt[j])]:
                        tt2 = list(tt)
                        tt2[j] = standard_tableaux(self.lam[j])[ti]
                        col.append(
                            (self.bindex[(f, tuple(tt2))], CycNumber.from_rational(coeff))
                        )
                    cols.append(tuple(col))
            self._s_cols[i] = cols
        return self._s_cols[i]

    def rho_perm(self, perm: tuple[int, ...]):
        """Dense matrix (rows x cols) of the permutation part."""
        mat = [[_ONE if i == j else _ZERO for j in range(self.dim)] for i in range(self.dim)]
        for i in _adjacent_word(perm):
            cols = self.s_columns(i)
            # mat <- S_i * mat, with S_i column-sparse
            new = [[_ZERO] * self.dim for _ in range(self.dim)]
            for c in range(self.dim):
                for r in range(self.dim):
                    v = mat[r][c]
                    if v.is_zero():
                        continue
                    for rr, coeff in cols[r]:
                        new[rr][c] = new[rr][c] + coeff * v
            mat = new
        return mat

    def phase_scalar(self, f, phases) -> CycNumber:
        s = 0
        for i, z in enumerate(phases):
            s += f[i] * z
        return root_of_unity(self.e, s)

    def rho_columns(self, g: Element):
        """Column c of rho(g) as list of (row, coeff): rho(g) = rho(perm) o diag(phases)."""
        pm = self.rho_perm(g.perm)
        cols = []
        for c, (f, tt) in enumerate(self.basis):
            scale = self.phase_scalar(f, g.phases)
            col = [
                (r, scale * pm[r][c]) for r in range(self.dim) if not pm[r][c].is_zero()
            ]
            cols.append(col)
        return cols

    # -- rotation intertwiner ------------------------------------------------

    def rotation_map(self, r: int) -> tuple[int, ...]:
        """Basis permutation phi: (f, T) -> (f - r, T rotated); phi^(e/r-fold) = id."""
        out = []
        for f, tt in self.basis:
            f2 = tuple((x - r) % self.e for x in f)
            tt2 = tuple(tt[(j + r) % self.e] for j in range(self.e))
            out.append(self.bindex[(f2, tt2)])
        return tuple(out)

    def twisted_traces(self, g: Element, r: int, b: int) -> list[CycNumber]:
        """tr(Phi^k rho(g)) for k = 0..b-1, Phi the rotation intertwiner."""
        phi = self.rotation_map(r)
        cols = self.rho_columns(g)
        # phi_k[x] = Phi^k applied to basis index x
        traces = []
        cur = list(range(self.dim))
        for k in range(b):
            t = _ZERO
            # trace of Phi^k rho(g): sum over c of entry at row phi^{-k}... use
            # (Phi^k A)[bb, c] = A[x, c] where Phi^k maps x -> bb; want bb == c.
            inv = [0] * self.dim
            for x, y in enumerate(cur):
                inv[y] = x
            for c in range(self.dim):
                want = inv[c]
                for rr, coeff in cols[c]:
                    if rr == want:
                        t = t + coeff
                        break
            traces.append(t)
            cur = [phi[x] for x in cur]
        return traces


def split_character_values(
    e: int,
    lam: tuple[tuple[int, ...], ...],
    period: int,
    reps: list[Element],
) -> list[list[CycNumber]]:
    """Values of the b = e/period split constituents on the given class reps.

    Constituent j is the omega^j-eigenspace of the rotation intertwiner,
    omega = zeta_e^period.
    """
    b = e // period
    mod = WreathModule(e, lam)
    omega = root_of_unity(e, period)
    rows: list[list[CycNumber]] = [[] for _ in range(b)]
    binv = Fraction(1, b)
    for g in reps:
        traces = mod.twisted_traces(g, period, b)
        for j in range(b):
            val = _ZERO
            for k in range(b):
                val = val + (omega ** (-j * k)) * traces[k]
            rows[j].append(binv * val)
    return rows
