"""Lusztig families and truncated Fourier matrices for types A, B, D and
dihedral groups, the transform f, and the image of Id - f.

Families in types A/B/D are grouped by symbol content.  Inside a family the
matrix follows the subsets-of-singles pairing: member -> M = (singles in top
row) symmetric-difference (same for the special symbol), and the entry for
(M, M') is (-1)^|M cap M'| / 2^d (type B, |singles| = 2d+1) or / 2^(d-1)
(type D, |singles| = 2d, M taken modulo complement).  Sign and embedding
conventions are pinned empirically: every constructed matrix must pass the
axiom suite (symmetry, rational-integer values of f(chi), block-constant
Coxeter numbers, the Coxeter column pattern, f applied to the Coxeter class
function) before it is returned.

Dihedral G(e,e,2) blocks are data, not code: built in for e in {3,4,6} and
ingested from JSON files otherwise, with the same validation gate.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction

from .cyclo import CycNumber, parse_cyc, root_of_unity
from .errors import UnsupportedGroupError, ValidationError
from .chars import CharTable, Label, rotations
from . import linalg

_ZERO = CycNumber.zero()
_ONE = CycNumber.one()

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@dataclass
class FamilyPartition:
    blocks: list[tuple[int, ...]]  # row indices into the character table


@dataclass
class FourierData:
    table: CharTable
    blocks: list[tuple[int, ...]]
    matrices: list[tuple]  # per block, square tuple-of-tuples over CycNumber
    provenance: str
    validation: dict

    def full_matrix(self):
        n = self.table.nrows()
        mat = [[_ZERO] * n for _ in range(n)]
        for rows, m in zip(self.blocks, self.matrices):
            for a, i in enumerate(rows):
                for b, j in enumerate(rows):
                    mat[i][j] = m[a][b]
        return tuple(tuple(r) for r in mat)


# -- symbols ---------------------------------------------------------------


def _beta_set(part: tuple[int, ...], length: int) -> tuple[int, ...]:
    padded = list(part) + [0] * (length - len(part))
    return tuple(padded[i] + (length - 1 - i) for i in range(length))


def _symbol(label: Label, spec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(top, bottom) beta-sets; defect 1 for G(2,1,n), defect 0 for G(2,2,n)."""
    n = spec.n
    if spec.e == 1:
        return (_beta_set(label.parts[0], n), ())
    alpha, beta = label.parts[0], label.parts[1]
    if spec.p == 1:
        return (_beta_set(alpha, n + 1), _beta_set(beta, n))
    return (_beta_set(alpha, n), _beta_set(beta, n))


def _content(sym) -> tuple[int, ...]:
    return tuple(sorted(sym[0] + sym[1]))


def _singles_doubles(content):
    from collections import Counter

    cnt = Counter(content)
    singles = tuple(sorted(v for v, k in cnt.items() if k == 1))
    return singles


def _special_top(content) -> frozenset:
    """Top row of the special symbol: even positions of the sorted content."""
    return frozenset(content[i] for i in range(0, len(content), 2))


def _m_set(sym, content) -> frozenset:
    singles = set(_singles_doubles(content))
    a = frozenset(singles & set(sym[0]))
    a0 = frozenset(singles & _special_top(content))
    return a ^ a0


def _d_canonical(m: frozenset, singles: tuple) -> frozenset:
    comp = frozenset(singles) - m
    return min(m, comp, key=lambda s: tuple(sorted(s)))


# -- construction ------------------------------------------------------------


def families_and_fourier(table: CharTable, dihedral_path: str | None = None) -> FourierData:
    spec = table.group.spec
    if spec.e == 1:
        fd = _type_a(table)
    elif (spec.e, spec.p) == (2, 1):
        fd = _classical_symbols(table, defect=1)
    elif (spec.e, spec.p) == (2, 2) and spec.n >= 3:
        fd = _classical_symbols(table, defect=0)
    elif spec.p == spec.e and spec.n == 2:
        fd = _dihedral(table, dihedral_path)
    else:
        raise UnsupportedGroupError(
            f"no Fourier construction for {spec}; supported: G(1,1,n), G(2,1,n), G(2,2,n), G(e,e,2)"
        )
    fd.validation = validate(fd)
    bad = [k for k, v in fd.validation.items() if v is not True]
    if bad:
        raise ValidationError(f"{spec} Fourier data failed axioms: {', '.join(bad)}")
    return fd


def _type_a(table: CharTable) -> FourierData:
    spec = table.group.spec
    contents = [_content(_symbol(lab, spec)) for lab in table.labels]
    if len(set(contents)) != len(contents):
        raise ValidationError("type A symbol contents are not distinct")
    blocks = [(i,) for i in range(table.nrows())]
    mats = [((_ONE,),) for _ in blocks]
    return FourierData(table, blocks, mats, "built_in: type A, identity on singletons", {})


def _classical_symbols(table: CharTable, defect: int) -> FourierData:
    spec = table.group.spec
    swaps = (False, True) if defect == 1 else (False,)
    last_err = None
    for swap in swaps:
        try:
            fd = _symbol_families(table, defect, swap)
            fd.validation = validate(fd)
            if all(v is True for v in fd.validation.values()):
                return fd
            last_err = ValidationError(
                f"{spec} convention swap={swap} failed: "
                + ", ".join(k for k, v in fd.validation.items() if v is not True)
            )
        except ValidationError as ex:
            last_err = ex
    raise last_err


def _symbol_families(table: CharTable, defect: int, swap: bool) -> FourierData:
    spec = table.group.spec
    fams: dict[tuple, list[int]] = {}
    syms = {}
    for i, lab in enumerate(table.labels):
        parts = lab.parts
        if swap:
            parts = (parts[1], parts[0])
        sym = _symbol(Label(parts), spec)
        syms[i] = sym
        fams.setdefault(_content(sym), []).append(i)
    blocks, mats = [], []
    for content in sorted(fams):
        rows = tuple(sorted(fams[content]))
        singles = _singles_doubles(content)
        if defect == 1:
            d = (len(singles) - 1) // 2
            msets = [_m_set(syms[i], content) for i in rows]
            denom = Fraction(1, 2 ** d)
            mat = tuple(
                tuple(
                    CycNumber.from_rational(denom * (-1) ** len(ma & mb))
                    for mb in msets
                )
                for ma in msets
            )
        else:
            if not singles:
                # degenerate family: a split pair, transform acts diagonally
                if len(rows) != 2 or any(table.labels[i].split < 0 for i in rows):
                    raise ValidationError(
                        f"degenerate D family {content} is not a split pair"
                    )
                mat = ((_ONE, _ZERO), (_ZERO, _ONE))
            else:
                d = len(singles) // 2
                msets = [
                    _d_canonical(_m_set(syms[i], content), singles) for i in rows
                ]
                denom = Fraction(1, 2 ** (d - 1))
                mat = tuple(
                    tuple(
                        CycNumber.from_rational(denom * (-1) ** len(ma & mb))
                        for mb in msets
                    )
                    for ma in msets
                )
        blocks.append(rows)
        mats.append(mat)
    kind = "B" if defect == 1 else "D"
    note = f"built_in: type {kind} symbols, subsets-of-singles pairing, swap={swap}"
    return FourierData(table, blocks, mats, note, {})


# -- dihedral ----------------------------------------------------------------


def dihedral_block(e: int):
    """Member labels and matrix of the big dihedral family for G(e,e,2).

    Two-dimensional characters chi_a pair with (2 - z^(ab) - z^(-ab))/e; for
    even e the degenerate chi_(e/2) splits and its pair couples with half
    weights plus the +-1/2 diagonal correction.
    """
    members: list[Label] = []
    kinds: list[tuple] = []
    for a in range(1, (e - 1) // 2 + 1):
        parts = [()] * e
        parts[0] = (1,)
        parts[a] = (1,)
        canon = min(rotations(tuple(parts), e))
        members.append(Label(canon))
        kinds.append(("two", a))
    if e % 2 == 0:
        parts = [()] * e
        parts[0] = (1,)
        parts[e // 2] = (1,)
        canon = min(rotations(tuple(parts), e))
        for j in range(2):
            members.append(Label(canon, j))
            kinds.append(("split", j))

    def pair(ka, kb) -> CycNumber:
        inv_e = Fraction(1, e)
        if ka[0] == "two" and kb[0] == "two":
            ab = ka[1] * kb[1]
            return inv_e * (2 - root_of_unity(e, ab) - root_of_unity(e, -ab))
        if ka[0] == "split" and kb[0] == "split":
            m = (e // 2) * (e // 2)
            v = inv_e * (2 - root_of_unity(e, m) - root_of_unity(e, -m))
            corr = Fraction(1, 2) if ka[1] == kb[1] else Fraction(-1, 2)
            return Fraction(1, 4) * v + corr
        a = ka[1] if ka[0] == "two" else kb[1]
        return CycNumber.from_rational(inv_e * (1 - (-1) ** a))

    mat = tuple(tuple(pair(ka, kb) for kb in kinds) for ka in kinds)
    return members, mat


def _dihedral(table: CharTable, path: str | None) -> FourierData:
    spec = table.group.spec
    e = spec.e
    if path is None and e in (3, 4, 6):
        members, mat = dihedral_block(e)
        note = f"built_in: dihedral family pairing for Weyl G({e},{e},2)"
    else:
        if path is None:
            path = os.path.join(DATA_DIR, f"dihedral_{e}.json")
        if not os.path.exists(path):
            raise UnsupportedGroupError(
                f"{spec} needs a dihedral Fourier data file; none at {path}"
            )
        with open(path) as fh:
            doc = json.load(fh)
        if doc.get("group") != str(spec):
            raise ValidationError(
                f"data file {path} is for {doc.get('group')}, not {spec}"
            )
        fams = doc["families"]
        if len(fams) != 1:
            raise ValidationError("dihedral data file must hold exactly the big family")
        members = [_parse_label(s) for s in fams[0]["members"]]
        mat = tuple(
            tuple(parse_cyc(x) for x in row) for row in fams[0]["matrix"]
        )
        note = f"data_file: {os.path.basename(path)} ({doc.get('source', 'unsourced')}); validated, not derived"
    big_rows = []
    for lab in members:
        if lab not in table.row_index:
            raise ValidationError(f"dihedral family member {lab} not in the table")
        big_rows.append(table.row_index[lab])
    in_big = set(big_rows)
    blocks: list[tuple[int, ...]] = []
    mats: list[tuple] = []
    for i in range(table.nrows()):
        if i not in in_big:
            blocks.append((i,))
            mats.append(((_ONE,),))
    blocks.append(tuple(big_rows))
    mats.append(mat)
    return FourierData(table, blocks, mats, note, {})


def _parse_label(text: str) -> Label:
    body = text
    split = -1
    if body.endswith("+"):
        split, body = 0, body[:-1]
    elif body.endswith("-"):
        split, body = 1, body[:-1]
    elif body.endswith("]") and "[" in body:
        body, _, idx = body[:-1].rpartition("[")
        split = int(idx)
    parts = []
    for chunk in body.split("."):
        chunk = chunk.strip("()")
        parts.append(tuple(int(x) for x in chunk.split(",") if x))
    return Label(tuple(parts), split)


def write_dihedral_file(e: int, path: str, source: str) -> None:
    members, mat = dihedral_block(e)
    doc = {
        "group": f"G({e},{e},2)",
        "families": [
            {
                "members": [str(m) for m in members],
                "matrix": [[str(x) for x in row] for row in mat],
            }
        ],
        "source": source,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


# -- the transform -----------------------------------------------------------


def transform_rows(fd: FourierData):
    """Values of f(chi_i) on every class, for each row i; f(chi) = sum_j F_ij conj(chi_j)."""
    table = fd.table
    n = table.nrows()
    ncls = len(table.group.conjugacy_classes())
    full = fd.full_matrix()
    conj_vals = [tuple(v.conjugate() for v in table.values[j]) for j in range(n)]
    out = []
    for i in range(n):
        row = [_ZERO] * ncls
        for j in range(n):
            fij = full[i][j]
            if fij.is_zero():
                continue
            for c in range(ncls):
                row[c] = row[c] + fij * conj_vals[j][c]
        out.append(tuple(row))
    return out


def transform_f(fd: FourierData, phi) -> tuple[CycNumber, ...]:
    """Extend f linearly to any class function given by its values."""
    table = fd.table
    coeffs = [table.inner(phi, table.values[i]) for i in range(table.nrows())]
    frows = transform_rows(fd)
    ncls = len(table.group.conjugacy_classes())
    out = [_ZERO] * ncls
    for ci, frow in zip(coeffs, frows):
        if ci.is_zero():
            continue
        for c in range(ncls):
            out[c] = out[c] + ci * frow[c]
    return tuple(out)


def image_id_minus_f(fd: FourierData):
    """Reduced basis of the span of chi - f(chi) in class-function coordinates."""
    table = fd.table
    frows = transform_rows(fd)
    rows = []
    for i in range(table.nrows()):
        rows.append(tuple(a - b for a, b in zip(table.values[i], frows[i])))
    red, _ = linalg.rref(rows)
    return red


def compare_kernel_image(fd: FourierData, kernel_basis) -> dict:
    image = image_id_minus_f(fd)
    img_in_ker = linalg.subspace_leq(image, kernel_basis)
    ker_in_img = linalg.subspace_leq(kernel_basis, image)
    return {
        "image_dim": len(image),
        "kernel_dim": len(kernel_basis),
        "image_in_kernel": img_in_ker,
        "equal": img_in_ker and ker_in_img,
    }


# -- validation ---------------------------------------------------------------


def validate(fd: FourierData) -> dict:
    table = fd.table
    group = table.group
    checks: dict[str, object] = {}
    full = fd.full_matrix()
    n = table.nrows()
    checks["symmetric"] = all(
        full[i][j] == full[j][i] for i in range(n) for j in range(n)
    ) or "matrix not symmetric"
    cox = [table.coxeter_number(i) for i in range(n)]
    ok = True
    for rows in fd.blocks:
        if any(cox[i] != cox[rows[0]] for i in rows):
            ok = f"Coxeter number not constant on family {rows}"
    checks["family_coxeter_constant"] = ok
    frows = transform_rows(fd)
    intval = True
    for i in range(n):
        for v in frows[i]:
            if not v.is_integer():
                intval = f"f(chi_{i}) has a non-integer value {v}"
                break
        if intval is not True:
            break
    checks["f_integer_valued"] = intval
    # trivial character fixed
    triv = next(
        i
        for i in range(n)
        if all(v == _ONE for v in table.values[i])
    )
    checks["f_fixes_trivial"] = (frows[triv] == table.values[triv]) or "f(triv) != triv"
    # Coxeter column: f(chi)(c) = (-1)^i on exterior powers, 0 elsewhere
    c = group.coxeter_element()
    ccls = group.class_of(c)
    ext_rows = {}
    for k in range(group.spec.rank + 1):
        r = table.row_of_values(table.ext_power_char(k))
        if r is None:
            return {"exterior_power_irreducible": f"Lambda^{k} not an irreducible"}
        ext_rows[r] = k
    colok = True
    for i in range(n):
        want = (
            CycNumber.from_rational((-1) ** ext_rows[i]) if i in ext_rows else _ZERO
        )
        if frows[i][ccls] != want:
            colok = f"f(chi_{i})(c) = {frows[i][ccls]}, expected {want}"
            break
    checks["coxeter_column"] = colok
    # step 2: f(sum chi(c) chi) = sum (-1)^k Lambda^k
    ncls = len(group.conjugacy_classes())
    lhs_fun = [_ZERO] * ncls
    for i in range(n):
        coef = table.values[i][ccls]
        if coef.is_zero():
            continue
        for cc in range(ncls):
            lhs_fun[cc] = lhs_fun[cc] + coef * table.values[i][cc]
    got = transform_f(fd, tuple(lhs_fun))
    want = [_ZERO] * ncls
    for k in range(group.spec.rank + 1):
        ek = table.ext_power_char(k)
        for cc in range(ncls):
            want[cc] = want[cc] + ((-1) ** k) * ek[cc]
    checks["coxeter_class_function"] = (got == tuple(want)) or "f(sum chi(c)chi) mismatch"
    return checks
