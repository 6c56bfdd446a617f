"""Exact integer matrices: Smith and Hermite normal forms, kernels, solving.

Matrices are tuples of row tuples of Python ints, so arithmetic never
overflows.  ``smith_form`` tracks the unimodular transforms on both sides
together with their inverses.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]


def mat(rows: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    out = tuple(tuple(int(x) for x in r) for r in rows)
    if cols is not None and any(len(r) != cols for r in out):
        raise ValueError("ragged matrix")
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def shape(a: Matrix, cols: int | None = None) -> tuple[int, int]:
    if not a:
        return (0, cols or 0)
    return (len(a), len(a[0]))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    m, n = shape(a, cols)
    return tuple(tuple(a[i][j] for i in range(m)) for j in range(n))


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    m = len(a)
    k = len(a[0]) if a else (inner or 0)
    n = len(b[0]) if b else (cols or 0)
    if b and len(b) != k:
        raise ValueError(f"shape mismatch {m}x{k} @ {len(b)}x{n}")
    bt = transpose(b) if b else tuple(() for _ in range(n))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def columns(a: Matrix) -> list[tuple[int, ...]]:
    return list(transpose(a)) if a else []


def from_columns(cols: Sequence[Sequence[int]], rows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(rows))
    return transpose(tuple(tuple(c) for c in cols))


def det(a: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithForm:
    """``A = U · S · V`` with U, V unimodular; ``L = U⁻¹`` and ``R = V⁻¹`` are kept too."""

    U: Matrix
    S: Matrix
    V: Matrix
    L: Matrix
    R: Matrix
    diag: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith_form(a: Sequence[Sequence[int]], rows: int | None = None, cols: int | None = None) -> SmithForm:
    """Smith normal form with transforms; pivots chosen by least absolute value."""
    A = mat(a)
    m = len(A) if A else (rows or 0)
    n = len(A[0]) if A else (cols or 0)
    S = [list(r) for r in A] if A else [[0] * n for _ in range(m)]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    Li = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(n)] for i in range(n)]
    Ri = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        S[i], S[j] = S[j], S[i]
        L[i], L[j] = L[j], L[i]
        for r in Li:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in R:
            r[i], r[j] = r[j], r[i]
        Ri[i], Ri[j] = Ri[j], Ri[i]

    def add_row(i: int, j: int, c: int) -> None:  # row_i += c * row_j
        if c == 0:
            return
        si, sj = S[i], S[j]
        for k in range(n):
            si[k] += c * sj[k]
        li, lj = L[i], L[j]
        for k in range(m):
            li[k] += c * lj[k]
        for r in Li:
            r[j] -= c * r[i]

    def add_col(i: int, j: int, c: int) -> None:  # col_i += c * col_j
        if c == 0:
            return
        for r in S:
            r[i] += c * r[j]
        for r in R:
            r[i] += c * r[j]
        ri, rj = Ri[i], Ri[j]
        for k in range(n):
            rj[k] -= c * ri[k]

    def neg_row(i: int) -> None:
        S[i] = [-x for x in S[i]]
        L[i] = [-x for x in L[i]]
        for r in Li:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    if S[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    if S[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest leftover in row/column t to the pivot
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            neg_row(t)
        t += 1
    diag = tuple(S[i][i] for i in range(min(m, n)))
    return SmithForm(
        U=mat(Li) if m else (),
        S=mat(S) if m else (),
        V=mat(Ri) if n else (),
        L=mat(L) if m else (),
        R=mat(R) if n else (),
        diag=diag,
    )


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``; zero rows dropped."""
    M = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(ncols):
        while True:
            nz = [r for r in M if r[col]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda r: abs(r[col]))
            for r in nz:
                if r is not piv:
                    q = r[col] // piv[col]
                    for k in range(ncols):
                        r[k] -= q * piv[k]
            M = [r for r in M if any(r)]
        nz = [r for r in M if r[col]]
        if not nz:
            continue
        piv = nz[0]
        M = [r for r in M if r is not piv]
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for k in range(ncols):
                    r[k] -= q * piv[k]
        out.append(piv)
    return mat(out) if out else ()


def column_lattice_equal(a: Matrix, b: Matrix, rows: int) -> bool:
    """Whether the columns of ``a`` and ``b`` span the same sublattice of ℤ^rows."""
    return hnf_rows(columns(a), rows) == hnf_rows(columns(b), rows)


def kernel_basis(a: Sequence[Sequence[int]], cols: int | None = None) -> list[tuple[int, ...]]:
    """A lattice basis of {x : A x = 0}, in Hermite form; [] when the kernel is trivial."""
    A = mat(a)
    n = len(A[0]) if A else (cols or 0)
    if not A:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    sf = smith_form(A)
    r = sf.rank
    basis = [tuple(sf.R[i][j] for i in range(n)) for j in range(r, n)]
    return [tuple(v) for v in hnf_rows(basis, n)]


def solve(b_cols: Sequence[Sequence[int]], v: Sequence[int], rows: int) -> tuple[int, ...] | None:
    """Integer x with (columns b) · x = v, or None if v is outside their span."""
    B = from_columns(b_cols, rows)
    k = len(b_cols)
    if k == 0:
        return () if not any(v) else None
    sf = smith_form(B)
    y = matvec(sf.L, v)
    z = []
    for i in range(rows):
        d = sf.diag[i] if i < len(sf.diag) else 0
        if d == 0:
            if y[i] != 0:
                return None
            if i < k:
                z.append(0)
        else:
            if y[i] % d:
                return None
            z.append(y[i] // d)
    z = z[:k] + [0] * (k - len(z))
    return matvec(sf.R, z)


def is_unimodular(a: Matrix) -> bool:
    return len(a) == (len(a[0]) if a else 0) and abs(det(a)) == 1
