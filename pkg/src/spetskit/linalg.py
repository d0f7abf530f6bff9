"""Exact linear algebra over cyclotomic fields: rref, rank, null spaces.

Matrices are sequences of rows, each row a sequence of CycNumber.  All
functions return tuples so results are hashable and safe to share.
"""
from __future__ import annotations

from .cyclo import CycNumber

_ZERO = CycNumber.zero()
_ONE = CycNumber.one()

Row = tuple[CycNumber, ...]


def rref(rows) -> tuple[tuple[Row, ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return (), ()
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(mat)) if not mat[i][c].is_zero()), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    out = tuple(tuple(row) for row in mat[:r])
    return out, tuple(pivots)


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows, ncols: int) -> tuple[Row, ...]:
    """Basis of {x : A x = 0}, in reduced echelon form (free variables set to 1)."""
    red, pivots = rref(rows)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        vec = [_ZERO] * ncols
        vec[f] = _ONE
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(tuple(vec))
    return tuple(basis)


def mat_vec(rows, vec) -> Row:
    out = []
    for row in rows:
        s = _ZERO
        for a, x in zip(row, vec):
            if not a.is_zero() and not x.is_zero():
                s = s + a * x
        out.append(s)
    return tuple(out)


def mat_mul(a, b) -> tuple[Row, ...]:
    bt = list(zip(*b))
    return tuple(tuple(sum_prod(row, col) for col in bt) for row in a)


def sum_prod(xs, ys) -> CycNumber:
    s = _ZERO
    for x, y in zip(xs, ys):
        if not x.is_zero() and not y.is_zero():
            s = s + x * y
    return s


def in_rowspace(vec, basis_rref) -> bool:
    """Whether vec lies in the span of rows already in rref form."""
    v = list(vec)
    for row in basis_rref:
        p = next((i for i, x in enumerate(row) if not x.is_zero()), None)
        if p is None:
            continue
        if not v[p].is_zero():
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return all(x.is_zero() for x in v)


def subspace_leq(rows_a, rows_b) -> bool:
    """Row space of A contained in row space of B."""
    red_b, _ = rref(rows_b)
    return all(in_rowspace(r, red_b) for r in rows_a)


def identity(n: int) -> tuple[Row, ...]:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))
