"""The three-dimensional Heisenberg algebra and its automorphism group.

Basis ``X1, X2, X3`` with the single nonzero bracket ``[X1, X2] = X3``.
An automorphism is stored as the full matrix whose columns are the images
of the basis vectors; it always has the block shape

    [[a1, a2, 0],
     [a3, a4, 0],
     [a5, a6, D]]      with D = a1*a4 - a2*a3 != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAutomorphism, Singular
from .linalg import Mat3, Vec3, dot, mat_pow, vec
from .scalars import DEFAULT_TOL, is_zero

X1: Vec3 = vec(1, 0, 0)
X2: Vec3 = vec(0, 1, 0)
X3: Vec3 = vec(0, 0, 1)
BASIS = (X1, X2, X3)
ZERO: Vec3 = vec(0, 0, 0)

DEFAULT_ORDER_BOUND = 24


def bracket(x, y) -> Vec3:
    zero = Fraction(0)
    return (zero, zero, x[0] * y[1] - x[1] * y[0])


def pairing(form, v):
    """Evaluate a dual-basis form (w1, w2, w3 coefficients) on a vector."""
    return dot(form, v)


def bracket_table() -> dict:
    """Structure constants ``{(i, j): [Xi, Xj]}`` for the basis."""
    return {(i, j): bracket(BASIS[i], BASIS[j]) for i in range(3) for j in range(3)}


def shape_defect(M: Mat3, tol: float = DEFAULT_TOL) -> str | None:
    """Describe why ``M`` fails the automorphism shape, or ``None``."""
    if not is_zero(M[0, 2], tol) or not is_zero(M[1, 2], tol):
        return "third column must be a multiple of X3"
    delta = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if not is_zero(M[2, 2] - delta, tol):
        return "entry (3,3) must equal a1*a4 - a2*a3"
    return None


@dataclass(frozen=True)
class Automorphism:
    matrix: Mat3

    @property
    def delta(self):
        return self.matrix[2, 2]

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __call__(self, v) -> Vec3:
        return self.matrix @ v

    def close(self, other: "Automorphism", tol: float = DEFAULT_TOL) -> bool:
        return self.matrix.close(other.matrix, tol)

    @property
    def is_exact(self) -> bool:
        return self.matrix.is_exact


def make_automorphism(M, tol: float = DEFAULT_TOL) -> Automorphism:
    if not isinstance(M, Mat3):
        M = Mat3(M)
    defect = shape_defect(M, tol)
    if defect:
        raise NotAutomorphism(defect)
    if is_zero(M[2, 2], tol):
        raise Singular("Delta = a1*a4 - a2*a3 vanishes")
    tau = Automorphism(M)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        lhs = tau(bracket(BASIS[i], BASIS[j]))
        rhs = bracket(tau(BASIS[i]), tau(BASIS[j]))
        if not all(is_zero(a - b, tol) for a, b in zip(lhs, rhs)):
            raise NotAutomorphism("bracket is not preserved")
    return tau


IDENTITY = Automorphism(Mat3.identity())


def identity() -> Automorphism:
    return IDENTITY


def apply(tau: Automorphism, v) -> Vec3:
    return tau.matrix @ v


def compose(tau: Automorphism, other: Automorphism) -> Automorphism:
    """``tau o other``: apply ``other`` first."""
    return Automorphism(tau.matrix @ other.matrix)


def inverse(tau: Automorphism) -> Automorphism:
    return Automorphism(tau.matrix.inverse())


def power(tau: Automorphism, k: int) -> Automorphism:
    return Automorphism(mat_pow(tau.matrix, k))


def conjugate(tau: Automorphism, sigma: Automorphism) -> Automorphism:
    """``sigma^-1 o tau o sigma``."""
    return Automorphism(sigma.matrix.inverse() @ tau.matrix @ sigma.matrix)


def commutator(tau: Automorphism, other: Automorphism) -> Mat3:
    """The matrix ``tau o other - other o tau``."""
    return tau.matrix @ other.matrix - other.matrix @ tau.matrix


def commutes(tau: Automorphism, other: Automorphism, tol: float = DEFAULT_TOL) -> bool:
    return commutator(tau, other).is_zero(tol)


def is_identity(tau: Automorphism, tol: float = DEFAULT_TOL) -> bool:
    return tau.matrix.close(Mat3.identity(), tol)


def order_of(tau: Automorphism, bound: int = DEFAULT_ORDER_BOUND,
             tol: float = DEFAULT_TOL) -> int | None:
    """Smallest ``k <= bound`` with ``tau**k = Id``, else ``None``."""
    if bound < 1:
        raise ValueError("bound must be positive")
    ident = Mat3.identity()
    P = tau.matrix
    for k in range(1, bound + 1):
        if P.close(ident, tol):
            return k
        P = P @ tau.matrix
    return None
