"""Exact/approximate 3x3 linear algebra over the scalar tower.

Vectors are plain 3-tuples of scalars.  ``Mat3`` is an immutable row-major
matrix.  Every routine takes ``tol`` which only matters once an approximate
entry is involved; exact inputs are decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import SingularMatrix
from .scalars import DEFAULT_TOL, is_exact, is_zero, sign, to_approx, to_exact

Vec3 = tuple


def vec(*xs) -> Vec3:
    if len(xs) == 1:
        xs = tuple(xs[0])
    if len(xs) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(xs)}")
    return tuple(to_exact(x) for x in xs)


def vadd(u, v) -> Vec3:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v) -> Vec3:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v) -> Vec3:
    return tuple(c * a for a in v)


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def vec_is_zero(v, tol: float = DEFAULT_TOL) -> bool:
    return all(is_zero(x, tol) for x in v)


def vec_close(u, v, tol: float = DEFAULT_TOL) -> bool:
    return vec_is_zero(vsub(u, v), tol)


class Mat3:
    """Immutable 3x3 matrix; ``A @ B`` multiplies, ``A @ v`` applies."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(to_exact(x) for x in row) for row in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("Mat3 needs exactly 3 rows of 3 entries")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat3 is immutable")

    @classmethod
    def identity(cls) -> "Mat3":
        return cls([[1, 0, 0], [0, 1, 0], [0, 0, 1]])

    @classmethod
    def zero(cls) -> "Mat3":
        return cls([[0] * 3 for _ in range(3)])

    @classmethod
    def diag(cls, a, b, c) -> "Mat3":
        return cls([[a, 0, 0], [0, b, 0], [0, 0, c]])

    @classmethod
    def from_columns(cls, c0, c1, c2) -> "Mat3":
        return cls(zip(c0, c1, c2))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __iter__(self):
        return iter(self.rows)

    def column(self, j: int) -> Vec3:
        return tuple(row[j] for row in self.rows)

    def entries(self):
        return [x for row in self.rows for x in row]

    @property
    def is_exact(self) -> bool:
        return all(is_exact(x) for x in self.entries())

    @property
    def T(self) -> "Mat3":
        return Mat3(zip(*self.rows))

    # -- arithmetic ------------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, Mat3):
            cols = list(zip(*other.rows))
            return Mat3([[dot(r, c) for c in cols] for r in self.rows])
        if len(other) == 3:
            return tuple(dot(r, other) for r in self.rows)
        return NotImplemented

    def __add__(self, other: "Mat3") -> "Mat3":
        return Mat3([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat3") -> "Mat3":
        return Mat3([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat3":
        return Mat3([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Mat3":
        return Mat3([[c * a for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, Mat3):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def trace(self):
        return self.rows[0][0] + self.rows[1][1] + self.rows[2][2]

    def inverse(self, tol: float = DEFAULT_TOL) -> "Mat3":
        d = self.det()
        if is_zero(d, tol):
            raise SingularMatrix("matrix is not invertible")
        (a, b, c), (dd, e, f), (g, h, i) = self.rows
        adj = [
            [e * i - f * h, c * h - b * i, b * f - c * e],
            [f * g - dd * i, a * i - c * g, c * dd - a * f],
            [dd * h - e * g, b * g - a * h, a * e - b * dd],
        ]
        inv = Fraction(1) / d if is_exact(d) else 1 / d
        return Mat3([[x * inv for x in row] for row in adj])

    def __pow__(self, k: int) -> "Mat3":
        return mat_pow(self, k)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Mat3):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def close(self, other: "Mat3", tol: float = DEFAULT_TOL) -> bool:
        """Entrywise equality: exact when both sides are exact."""
        return all(is_zero(a - b, tol) for a, b in zip(self.entries(), other.entries()))

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        return all(is_zero(x, tol) for x in self.entries())

    def max_abs(self) -> float:
        return max(abs(to_approx(x)) for x in self.entries())

    def to_approx(self) -> "Mat3":
        return Mat3([[to_approx(x) for x in r] for r in self.rows])

    def is_symmetric(self, tol: float = DEFAULT_TOL) -> bool:
        return self.close(self.T, tol)

    def __repr__(self):
        return f"Mat3({[list(r) for r in self.rows]!r})"


def mat_mul(A: Mat3, B: Mat3) -> Mat3:
    return A @ B


def mat_det(A: Mat3):
    return A.det()


def mat_inverse(A: Mat3, tol: float = DEFAULT_TOL) -> Mat3:
    return A.inverse(tol)


def mat_pow(A: Mat3, k: int, tol: float = DEFAULT_TOL) -> Mat3:
    """``A**k`` by repeated squaring; negative ``k`` goes through the inverse."""
    if k < 0:
        return mat_pow(A.inverse(tol), -k)
    result, base = Mat3.identity(), A
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


# ---------------------------------------------------------------------
# elimination

def _is_exact_rows(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


def rref(rows: Sequence[Sequence], tol: float = DEFAULT_TOL):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``.

    Exact input pivots on the first nonzero entry; approximate input uses
    partial pivoting and treats entries within ``tol`` as zero.
    """
    m = [list(to_exact(x) for x in row) for row in rows]
    if not m:
        return [], []
    exact = _is_exact_rows(m)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        if exact:
            p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        else:
            p = max(range(r, len(m)), key=lambda i: abs(m[i][c]))
            if abs(m[p][c]) <= tol:
                p = None
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c], 0.0):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if not exact:
        m = [[0.0 if abs(x) <= tol else x for x in row] for row in m]
    return m, pivots


def rank(rows: Sequence[Sequence], tol: float = DEFAULT_TOL) -> int:
    return len(rref(rows, tol)[1])


def nullspace(rows: Sequence[Sequence], tol: float = DEFAULT_TOL) -> list[tuple]:
    """Basis of ``{x : rows @ x = 0}`` with each free coordinate set to 1."""
    if not rows:
        raise ValueError("nullspace needs at least one row")
    ncols = len(rows[0])
    m, pivots = rref(rows, tol)
    exact = _is_exact_rows(m)
    one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
    if any(isinstance(x, complex) for row in m for x in row):
        one, zero = 1 + 0j, 0j
    basis = []
    for free in (c for c in range(ncols) if c not in pivots):
        v = [zero] * ncols
        v[free] = one
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][free]
        basis.append(tuple(v))
    return basis


def kernel(A: Mat3, tol: float = DEFAULT_TOL) -> list[Vec3]:
    """Null space basis of a 3x3 matrix (empty list for a trivial kernel)."""
    return nullspace(A.rows, tol)


def in_span(v, basis: Sequence, tol: float = DEFAULT_TOL) -> bool:
    if not basis:
        return vec_is_zero(v, tol)
    return rank(list(basis) + [v], tol) == rank(list(basis), tol)


def same_span(U: Sequence, V: Sequence, tol: float = DEFAULT_TOL) -> bool:
    if len(U) != len(V):
        return False
    if not U:
        return True
    r = rank(list(U), tol)
    return r == rank(list(V), tol) == rank(list(U) + list(V), tol)


# ---------------------------------------------------------------------
# congruence

def symmetric_diagonalize(G: Sequence[Sequence], tol: float = DEFAULT_TOL):
    """Lagrange reduction of a small symmetric matrix.

    Returns ``(diagonal, P)`` as nested lists with ``P^T G P`` diagonal.
    """
    n = len(G)
    g = [[to_exact(x) for x in row] for row in G]
    one, zero = (Fraction(1), Fraction(0)) if _is_exact_rows(g) else (1.0, 0.0)
    P = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def col_op(j, i, c):
        # column j += c * column i, applied as E^T g E with E = I + c e_i e_j^T
        for row in g:
            row[j] = row[j] + c * row[i]
        g[j] = [a + c * b for a, b in zip(g[j], g[i])]
        for row in P:
            row[j] = row[j] + c * row[i]

    def swap(i, j):
        for row in g:
            row[i], row[j] = row[j], row[i]
        g[i], g[j] = g[j], g[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if is_zero(g[i][i], tol):
            j = next((j for j in range(i + 1, n) if not is_zero(g[j][j], tol)), None)
            if j is not None:
                swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if not is_zero(g[i][j], tol)), None)
                if j is None:
                    continue
                col_op(i, j, one)  # new g[i][i] = 2 g[i][j]
        for j in range(i + 1, n):
            if not is_zero(g[i][j], tol):
                col_op(j, i, -g[i][j] / g[i][i])
    return [g[i][i] for i in range(n)], P


def inertia(G: Sequence[Sequence], tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a symmetric matrix."""
    d, _ = symmetric_diagonalize(G, tol)
    signs = [sign(x, tol) for x in d]
    return signs.count(1), signs.count(-1), signs.count(0)


def congruent_diagonalize(G: Mat3, tol: float = DEFAULT_TOL) -> tuple[Mat3, Mat3]:
    """Return ``(D, P)`` with ``P.T @ G @ P == D`` diagonal and ``det P != 0``."""
    d, P = symmetric_diagonalize(G.rows, tol)
    return Mat3.diag(*d), Mat3(P)
