"""Canonical finite-order automorphism families and their classifiers.

Order two: ``tau1 .. tau4``.  Order three: ``tau5`` and ``tau5prime``.
Order ``k > 3``: ``tau6`` with the primitive root ``exp(2 pi i / k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstraintViolated, ModeUnavailable, NotInvolution, VerificationFailed
from .heis import Automorphism, make_automorphism, order_of
from .linalg import Mat3
from .scalars import DEFAULT_TOL, is_exact, is_zero, sign, sqrt, to_approx, to_exact

PARAM_NAMES = {
    "identity": (),
    "tau1": ("a3", "a6"),
    "tau2": ("a3", "a5"),
    "tau3": ("a1", "a2", "a6"),
    "tau4": ("a5", "a6"),
    "tau5": ("a2", "a3", "a5", "a6"),
    "tau5prime": ("a2", "a3", "a5", "a6"),
    "tau6": ("a2", "a3", "a5", "a6"),
}

INVOLUTION_FAMILIES = ("tau1", "tau2", "tau3", "tau4")


@dataclass(frozen=True)
class FamilyTag:
    family: str
    params: tuple = ()
    k: int | None = None

    def __post_init__(self):
        names = PARAM_NAMES.get(self.family)
        if names is None:
            raise ValueError(f"unknown family {self.family!r}")
        if len(self.params) != len(names):
            raise ValueError(f"{self.family} takes parameters {names}")
        object.__setattr__(self, "params", tuple(to_exact(p) for p in self.params))
        if self.family == "tau6" and self.k is None:
            raise ValueError("tau6 needs k")

    @property
    def named_params(self) -> dict:
        return dict(zip(PARAM_NAMES[self.family], self.params))

    def close(self, other: "FamilyTag", tol: float = DEFAULT_TOL) -> bool:
        return (self.family == other.family and self.k == other.k
                and all(is_zero(a - b, tol) for a, b in zip(self.params, other.params)))

    def __str__(self):
        args = ", ".join(str(p) for p in self.params)
        if self.k is not None:
            args = f"k={self.k}, " + args
        return f"{self.family}({args})"


def Identity() -> FamilyTag:
    return FamilyTag("identity")


def Tau1(a3, a6) -> FamilyTag:
    return FamilyTag("tau1", (a3, a6))


def Tau2(a3, a5) -> FamilyTag:
    return FamilyTag("tau2", (a3, a5))


def Tau3(a1, a2, a6) -> FamilyTag:
    return FamilyTag("tau3", (a1, a2, a6))


def Tau4(a5, a6) -> FamilyTag:
    return FamilyTag("tau4", (a5, a6))


def Tau5(a2, a3, a5, a6) -> FamilyTag:
    return FamilyTag("tau5", (a2, a3, a5, a6))


def Tau5Prime(a2, a3, a5, a6) -> FamilyTag:
    return FamilyTag("tau5prime", (a2, a3, a5, a6))


def Tau6(k, a2, a3, a5, a6) -> FamilyTag:
    return FamilyTag("tau6", (a2, a3, a5, a6), k)


# ---------------------------------------------------------------------
# scalar helpers

_EXACT_COS = {1: Fraction(1), 2: Fraction(-1), 3: Fraction(-1, 2), 4: Fraction(0), 6: Fraction(1, 2)}


def cos_2pi_over(k: int, exact: bool = True):
    """``cos(2 pi / k)``; rational (hence exact) only for k in 1, 2, 3, 4, 6."""
    if k < 1:
        raise ValueError("k must be positive")
    if exact:
        if k not in _EXACT_COS:
            raise ModeUnavailable(f"cos(2pi/{k}) is irrational; use approx mode")
        return _EXACT_COS[k]
    return math.cos(2 * math.pi / k)


def solve_order3_constraints(a2, a3, tol: float = DEFAULT_TOL):
    """Roots of ``x^2 + x + a2*a3 + 1 = 0`` as ``(lam, lam_bar)``, or ``None``.

    The first root is ``(-1 - s)/2`` with ``s = sqrt(-3 - 4*a2*a3)``.
    """
    disc = -3 - 4 * a2 * a3
    if sign(disc, tol) < 0:
        return None
    s = sqrt(disc, tol)
    return (-1 - s) / 2, (-1 + s) / 2


def _order3_sqrt(a2, a3, tol):
    disc = -3 - 4 * a2 * a3
    if sign(disc, tol) < 0:
        raise ConstraintViolated("order-3 family needs 4*a2*a3 <= -3")
    return sqrt(disc, tol)


def _tau6_radical(k, a2, a3, exact, tol):
    if k < 4:
        raise ConstraintViolated("tau6 needs k >= 4")
    c = cos_2pi_over(k, exact)
    rad = c * c - 1 - a2 * a3
    if sign(rad, tol) < 0:
        raise ConstraintViolated(f"tau6 needs a2*a3 <= -1 + cos^2(2pi/{k})")
    return c, sqrt(rad, tol)


# ---------------------------------------------------------------------
# construction

def family_matrix(tag: FamilyTag, mode: str = "exact", tol: float = DEFAULT_TOL) -> Mat3:
    if mode not in ("exact", "approx"):
        raise ValueError(f"unknown mode {mode!r}")
    p = tag.params if mode == "exact" else tuple(to_approx(x) for x in tag.params)
    f = tag.family
    if f == "identity":
        return Mat3.identity()
    if f == "tau1":
        a3, a6 = p
        return Mat3([[-1, 0, 0], [a3, 1, 0], [a3 * a6 / 2, a6, -1]])
    if f == "tau2":
        a3, a5 = p
        return Mat3([[1, 0, 0], [a3, -1, 0], [a5, 0, -1]])
    if f == "tau3":
        a1, a2, a6 = p
        if is_zero(a2, tol):
            raise ConstraintViolated("tau3 needs a2 != 0")
        return Mat3([[a1, a2, 0], [(1 - a1 * a1) / a2, -a1, 0], [(1 + a1) * a6 / a2, a6, -1]])
    if f == "tau4":
        a5, a6 = p
        return Mat3([[-1, 0, 0], [0, -1, 0], [a5, a6, 1]])
    if f in ("tau5", "tau5prime"):
        a2, a3, a5, a6 = p
        s = _order3_sqrt(a2, a3, tol)
        if f == "tau5prime":
            s = -s
        return Mat3([[(-1 - s) / 2, a2, 0], [a3, (-1 + s) / 2, 0], [a5, a6, 1]])
    if f == "tau6":
        a2, a3, a5, a6 = p
        c, t = _tau6_radical(tag.k, a2, a3, mode == "exact", tol)
        return Mat3([[c + t, a2, 0], [a3, c - t, 0], [a5, a6, 1]])
    raise ValueError(f"unknown family {f!r}")


def make_family(tag: FamilyTag, mode: str = "exact", tol: float = DEFAULT_TOL) -> Automorphism:
    """Automorphism for a family tag.

    ``mode="exact"`` keeps rationals and single quadratic radicals and
    raises :class:`ModeUnavailable` when an irrational cosine is needed.
    """
    return make_automorphism(family_matrix(tag, mode, tol), tol)


def tau6_companion(k: int, a2, a3, a5, a6) -> tuple:
    """Parameters of the other sign branch equal to ``tau6(...)^(k-1)``.

    The branch with ``a1 = c - t`` at ``(-a2, -a3, b5, b6)`` is the inverse
    of ``tau6(k, a2, a3, a5, a6)``; returns ``(-a2, -a3, b5, b6)``.
    """
    exact = all(is_exact(x) for x in (a2, a3, a5, a6)) and k in _EXACT_COS
    c, t = _tau6_radical(k, a2, a3, exact, DEFAULT_TOL)
    # bottom row of the inverse is -(a5, a6) A^-1 with A^-1 = [[c-t, -a2], [-a3, c+t]]
    b5 = -(a5 * (c - t) - a6 * a3)
    b6 = -(-a5 * a2 + a6 * (c + t))
    return -a2, -a3, b5, b6


def tau6_minus_branch(k: int, a2, a3, a5, a6, mode: str = "exact",
                      tol: float = DEFAULT_TOL) -> Automorphism:
    """The ``a1 = c - t`` solution of the order-k system."""
    if mode == "approx":
        a2, a3, a5, a6 = (to_approx(x) for x in (a2, a3, a5, a6))
    c, t = _tau6_radical(k, a2, a3, mode == "exact", tol)
    return make_automorphism(Mat3([[c - t, a2, 0], [a3, c + t, 0], [a5, a6, 1]]), tol)


# ---------------------------------------------------------------------
# order-3 transport

def tau5_transport(a2, a3, a5, a6, tol: float = DEFAULT_TOL) -> tuple:
    """Bottom-row parameters ``(a5', a6', a5'', a6'')`` of the squares.

    ``tau5(a2, a3, a5, a6)^2 = tau5prime(-a2, -a3, a5', a6')`` and
    ``tau5prime(a2, a3, a5, a6)^2 = tau5(-a2, -a3, a5'', a6'')``.
    """
    s = _order3_sqrt(a2, a3, tol)
    return (
        a5 * (1 - s) / 2 + a3 * a6,
        a6 * (1 + s) / 2 + a2 * a5,
        a5 * (1 + s) / 2 + a3 * a6,
        a6 * (1 - s) / 2 + a2 * a5,
    )


def tau5_transport_literal(a2, a3, a5, a6, tol: float = DEFAULT_TOL) -> tuple:
    """The transport formulas with the opposite sign on the cross terms.

    They agree with :func:`tau5_transport` only when ``a3*a6 = a2*a5 = 0``;
    kept so the discrepancy stays testable.
    """
    s = _order3_sqrt(a2, a3, tol)
    return (
        (a5 - s * a5 - 2 * a3 * a6) / 2,
        (a6 + s * a6 - 2 * a2 * a5) / 2,
        (a5 + s * a5 - 2 * a3 * a6) / 2,
        (a6 - s * a6 - 2 * a2 * a5) / 2,
    )


def tau5_square_relation(a2, a3, a5, a6, tol: float = DEFAULT_TOL) -> tuple[FamilyTag, FamilyTag]:
    """Predicted tags of ``tau5^2`` and ``tau5prime^2``, verified by squaring."""
    p5, p6, q5, q6 = tau5_transport(a2, a3, a5, a6, tol)
    sq5 = Tau5Prime(-a2, -a3, p5, p6)
    sq5p = Tau5(-a2, -a3, q5, q6)
    mode = "exact" if all(is_exact(x) for x in (a2, a3, a5, a6)) else "approx"
    t5 = family_matrix(Tau5(a2, a3, a5, a6), mode, tol)
    t5p = family_matrix(Tau5Prime(a2, a3, a5, a6), mode, tol)
    if not (t5 @ t5).close(family_matrix(sq5, mode, tol), tol):
        raise VerificationFailed("tau5^2 does not match its predicted tag")
    if not (t5p @ t5p).close(family_matrix(sq5p, mode, tol), tol):
        raise VerificationFailed("tau5prime^2 does not match its predicted tag")
    return sq5, sq5p


# ---------------------------------------------------------------------
# classification

def classify_involution(tau: Automorphism, tol: float = DEFAULT_TOL) -> FamilyTag:
    """Recover the family and parameters of an involution (or Id)."""
    M = tau.matrix
    if not (M @ M).close(Mat3.identity(), tol):
        raise NotInvolution("tau^2 != Id")
    if M.close(Mat3.identity(), tol):
        tag = Identity()
    elif (is_zero(M[0, 0] + 1, tol) and is_zero(M[1, 1] + 1, tol)
          and is_zero(M[0, 1], tol) and is_zero(M[1, 0], tol)):
        tag = Tau4(M[2, 0], M[2, 1])
    elif is_zero(M[0, 0] + 1, tol) and is_zero(M[0, 1], tol):
        tag = Tau1(M[1, 0], M[2, 1])
    elif is_zero(M[0, 0] - 1, tol) and is_zero(M[0, 1], tol):
        tag = Tau2(M[1, 0], M[2, 0])
    elif not is_zero(M[0, 1], tol):
        tag = Tau3(M[0, 0], M[0, 1], M[2, 1])
    else:
        raise VerificationFailed("involution outside the four families")
    mode = "exact" if M.is_exact else "approx"
    if not family_matrix(tag, mode, tol).close(M, tol):
        raise VerificationFailed(f"{tag} does not reproduce the input matrix")
    return tag


def classify_automorphism(tau: Automorphism, bound: int = 24,
                          tol: float = DEFAULT_TOL) -> tuple[FamilyTag | None, int | None]:
    """``(tag, order)`` for any automorphism; ``tag`` is ``None`` off-family.

    Order-3 elements are split into ``tau5``/``tau5prime`` by the sign of
    ``a1 - a4``; order-k elements match ``tau6`` only for the primitive root
    ``exp(2 pi i/k)`` and ``a1 >= a4``.
    """
    k = order_of(tau, bound, tol)
    M = tau.matrix
    if k is None:
        return None, None
    if k <= 2:
        return classify_involution(tau, tol), k
    mode = "exact" if M.is_exact else "approx"
    params = (M[0, 1], M[1, 0], M[2, 0], M[2, 1])
    if k == 3:
        d = sign(M[0, 0] - M[1, 1], tol)
        tag = Tau5(*params) if d <= 0 else Tau5Prime(*params)
    else:
        c = cos_2pi_over(k, exact=mode == "exact" and k in _EXACT_COS)
        if not is_zero(M.trace() - 1 - 2 * c, max(tol, 1e-9)) or sign(M[0, 0] - M[1, 1], tol) < 0:
            return None, k
        tag = Tau6(k, *params)
        if mode == "exact" and k not in _EXACT_COS:
            mode = "approx"
    try:
        if family_matrix(tag, mode, tol).close(M, tol):
            return tag, k
    except (ConstraintViolated, ModeUnavailable):
        pass
    return None, k


def is_order(tau: Automorphism, k: int, tol: float = DEFAULT_TOL) -> bool:
    return order_of(tau, k, tol) == k
