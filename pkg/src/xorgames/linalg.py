"""Exact linear algebra over GF(2), the integers, and the rationals.

Everything in this module is exact: GF(2) rows are bit-packed into Python
ints, integer work uses arbitrary-precision ints (fixed-width arithmetic
would overflow Hermite-form intermediates), and rational results are
`fractions.Fraction`. No floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

IntMatrix = list[list[int]]


# ---------------------------------------------------------------------------
# GF(2)


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over GF(2); row i is a bitmask with bit j = entry (i, j)."""

    rows: tuple[int, ...]
    ncols: int

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "F2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged rows in F2Matrix.from_dense")
            acc = 0
            for j, v in enumerate(row):
                if v & 1:
                    acc |= 1 << j
            packed.append(acc)
        return cls(tuple(packed), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def dense(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.ncols)] for r in self.rows]


def _f2_rref(rows: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if (rows[i] >> col) & 1:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def f2_rank(mat: F2Matrix) -> int:
    _, pivots = _f2_rref(list(mat.rows), mat.ncols)
    return len(pivots)


def f2_solve(mat: F2Matrix, rhs: Sequence[int]) -> list[int] | None:
    """One solution of M x = b over GF(2) (free variables 0), or None."""
    if len(rhs) != mat.nrows:
        raise ValueError(f"rhs length {len(rhs)} != {mat.nrows} rows")
    n = mat.ncols
    aug = [row | ((b & 1) << n) for row, b in zip(mat.rows, rhs)]
    aug, pivots = _f2_rref(aug, n)
    for i in range(len(pivots), len(aug)):
        if aug[i]:
            return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = (aug[i] >> n) & 1
    return x


def f2_kernel_basis(mat: F2Matrix) -> list[list[int]]:
    """Basis of {x : M x = 0} over GF(2); one vector per free column."""
    rows, pivots = _f2_rref(list(mat.rows), mat.ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(mat.ncols):
        if free in pivot_set:
            continue
        vec = [0] * mat.ncols
        vec[free] = 1
        for i, col in enumerate(pivots):
            if (rows[i] >> free) & 1:
                vec[col] = 1
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Integers: column-style Hermite normal form and kernel lattices


def _col_submul(dst: list[int], src: list[int], q: int, start: int = 0) -> None:
    """dst -= q * src, in place, from index `start` on."""
    if q == 1:
        for i in range(start, len(dst)):
            dst[i] -= src[i]
    elif q == -1:
        for i in range(start, len(dst)):
            dst[i] += src[i]
    else:
        for i in range(start, len(dst)):
            dst[i] -= q * src[i]


def hnf(mat: IntMatrix, ncols: int | None = None) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns (H, U) with U unimodular and H = M U: H is in column echelon
    form, pivots (first nonzero entry of each nonzero column) are positive,
    and entries in a pivot's row to the left of it lie in [0, pivot). Zero
    columns of H are pushed to the right; the corresponding columns of U
    span the integer kernel of M.
    """
    nrows = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    cols = [[mat[i][j] for i in range(nrows)] for j in range(ncols)]
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]

    piv = 0
    for row in range(nrows):
        if piv == ncols:
            break
        # Euclidean passes across columns piv.. until one nonzero remains.
        found = False
        while True:
            best = None
            best_abs = 0
            for j in range(piv, ncols):
                v = cols[j][row]
                if v and (best is None or -best_abs < v < best_abs):
                    best = j
                    best_abs = abs(v)
            if best is None:
                break
            p = cols[best][row]
            clean = True
            for j in range(piv, ncols):
                if j == best:
                    continue
                v = cols[j][row]
                if v:
                    q = v // p
                    if q:
                        _col_submul(cols[j], cols[best], q, row)
                        _col_submul(ucols[j], ucols[best], q)
                    if cols[j][row]:
                        clean = False
            if clean:
                if best != piv:
                    cols[piv], cols[best] = cols[best], cols[piv]
                    ucols[piv], ucols[best] = ucols[best], ucols[piv]
                found = True
                break
        if not found:
            continue
        if cols[piv][row] < 0:
            cols[piv] = [-v for v in cols[piv]]
            ucols[piv] = [-v for v in ucols[piv]]
        p = cols[piv][row]
        for j in range(piv):
            q = cols[j][row] // p
            if q:
                _col_submul(cols[j], cols[piv], q, row)
                _col_submul(ucols[j], ucols[piv], q)
        piv += 1

    h_rows = [[cols[j][i] for j in range(ncols)] for i in range(nrows)]
    u_rows = [[ucols[j][i] for j in range(ncols)] for i in range(ncols)]
    return h_rows, u_rows


def integer_kernel_basis(mat: IntMatrix, ncols: int | None = None) -> list[list[int]]:
    """Lattice basis of the full integer kernel {x in Z^n : M x = 0}.

    The basis is saturated: every integer kernel vector is an integer
    combination of the returned vectors. They are the columns of the
    unimodular HNF transform sitting over zero columns of H.
    """
    nrows = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    h, u = hnf(mat, ncols)
    basis = []
    for j in range(ncols):
        if all(h[i][j] == 0 for i in range(nrows)):
            basis.append([u[i][j] for i in range(ncols)])
    return basis


# ---------------------------------------------------------------------------
# Rationals


def rational_solve(
    mat: IntMatrix, rhs: Sequence[int], ncols: int | None = None
) -> list[Fraction] | None:
    """Exact solution of M x = b over Q, or None if inconsistent.

    Fraction-free (Bareiss) forward elimination keeps everything in
    integers; back-substitution produces Fractions. Free variables are 0.
    Pivot choice: largest absolute entry in the current column, which for
    integer working rows is the largest numerator.
    """
    nrows = len(mat)
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if len(rhs) != nrows:
        raise ValueError(f"rhs length {len(rhs)} != {nrows} rows")
    if nrows == 0:
        return [Fraction(0)] * ncols

    rows = [[int(v) for v in row] + [int(b)] for row, b in zip(mat, rhs)]
    prev = 1
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        best = 0
        for i in range(r, nrows):
            v = rows[i][col]
            if v and (-best > v or v > best):
                best = abs(v)
                piv = i
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        prow = rows[r]
        for i in range(r + 1, nrows):
            f = rows[i][col]
            if f:
                rows[i] = [(p * a - f * b) // prev for a, b in zip(rows[i], prow)]
            elif p != prev:
                rows[i] = [(p * a) // prev for a in rows[i]]
        prev = p
        pivots.append(col)
        r += 1

    for i in range(r, nrows):
        if rows[i][ncols] != 0:
            return None

    x = [Fraction(0)] * ncols
    for idx in range(len(pivots) - 1, -1, -1):
        row = rows[idx]
        col = pivots[idx]
        acc = Fraction(row[ncols])
        for c in range(col + 1, ncols):
            if row[c] and x[c]:
                acc -= row[c] * x[c]
        x[col] = acc / row[col]
    return x


# ---------------------------------------------------------------------------
# Debug text form (test fixtures)


def format_matrix(mat: Sequence[Sequence[int]]) -> str:
    """Row-major, space-separated debug form."""
    return "\n".join(" ".join(str(v) for v in row) for row in mat)
