"""Exact dense linear algebra over Q(i).

Matrices are lists of rows; vectors are tuples.  Everything is exact:
row reduction uses field division in :class:`GaussianRational`.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import GaussianRational, ONE, ZERO

__all__ = [
    "as_scalar",
    "vec",
    "zero_vec",
    "unit_vec",
    "is_zero_vec",
    "add_vec",
    "sub_vec",
    "scale_vec",
    "dot",
    "zeros",
    "identity",
    "transpose",
    "matmul",
    "matvec",
    "mat_add",
    "mat_sub",
    "mat_scale",
    "mat_eq",
    "rref",
    "rank",
    "kernel",
    "solve",
    "det",
    "inverse",
    "row_basis",
    "span_contains",
    "intersect_spans",
    "mat_power",
]

Vector = tuple
Matrix = list


def as_scalar(x) -> GaussianRational:
    return GaussianRational.coerce(x)


def vec(values: Iterable) -> Vector:
    return tuple(as_scalar(v) for v in values)


def zero_vec(n: int) -> Vector:
    return (ZERO,) * n


def unit_vec(n: int, k: int) -> Vector:
    """e_k in dimension n, with k 0-based."""
    return tuple(ONE if i == k else ZERO for i in range(n))


def is_zero_vec(v: Sequence) -> bool:
    return not any(v)


def add_vec(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale_vec(c, v: Sequence) -> Vector:
    c = as_scalar(c)
    if not c:
        return (ZERO,) * len(v)
    return tuple(c * a for a in v)


def dot(u: Sequence, v: Sequence) -> GaussianRational:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


# matrices ---------------------------------------------------------------


def zeros(r: int, c: int) -> Matrix:
    return [[ZERO] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[dot(row, col) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a) -> Matrix:
    c = as_scalar(c)
    return [[c * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def mat_power(a, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


# elimination ------------------------------------------------------------


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns.  Zero rows are dropped."""
    rows = [[x if isinstance(x, GaussianRational) else as_scalar(x) for x in r] for r in m]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                p = i
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != ONE:
            inv = piv.inverse()
            rows[r] = [x * inv if x else ZERO for x in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                factor = rows[i][c]
                if factor:
                    rows[i] = [
                        x - factor * y if y else x for x, y in zip(rows[i], prow)
                    ]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def kernel(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if not m:
        if ncols is None:
            raise ValueError("kernel of an empty matrix needs ncols")
        return [unit_vec(ncols, k) for k in range(ncols)]
    n = len(m[0])
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        x = [ZERO] * n
        x[free] = ONE
        for row, pc in zip(red, pivots):
            if row[free]:
                x[pc] = -row[free]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of a x = b, or None when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [as_scalar(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [ZERO] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


def det(m: Sequence[Sequence]) -> GaussianRational:
    rows = [[x if isinstance(x, GaussianRational) else as_scalar(x) for x in r] for r in m]
    n = len(rows)
    out = ONE
    for c in range(n):
        p = None
        for i in range(c, n):
            if rows[i][c]:
                p = i
                break
        if p is None:
            return ZERO
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            out = -out
        piv = rows[c][c]
        out = out * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            factor = rows[i][c]
            if factor:
                f = factor * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(row) + list(e) for row, e in zip(m, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


# spans ------------------------------------------------------------------


def row_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Echelonized basis of the span of the given vectors."""
    vs = [list(v) for v in vectors if any(v)]
    if not vs:
        return []
    red, _ = rref(vs)
    return [tuple(r) for r in red]


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    if not any(v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == len(row_basis(basis, len(v)))


def intersect_spans(a: Sequence[Sequence], b: Sequence[Sequence], dim: int) -> list[Vector]:
    """Echelonized basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    # x in both iff x = sum s_i a_i = sum t_j b_j.
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    sys = transpose(cols)
    ker = kernel(sys, len(cols))
    out = []
    for k in ker:
        x = [ZERO] * dim
        for s, v in zip(k[: len(a)], a):
            if s:
                x = [xi + s * vi for xi, vi in zip(x, v)]
        out.append(x)
    return row_basis(out, dim)
