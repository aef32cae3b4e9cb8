"""Conjugacy of subgroups of Aut(h3) and the normal form of Z2xZ2 gradings."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import ConstraintViolated, NoConjugatorFound, NotAutomorphism, VerificationFailed
from .families import Tau1, Tau2, make_family
from .groups import AutSubgroup, build_gamma7, build_gamma8
from .heis import IDENTITY, Automorphism, conjugate, make_automorphism
from .linalg import Mat3, nullspace
from .scalars import DEFAULT_TOL, is_exact, is_zero, to_exact

# free entries of an automorphism matrix: (row, col) of s1..s6 and the Delta slot
_FREE = ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2))


def conjugate_set(group, sigma: Automorphism) -> list[Automorphism]:
    """``[sigma^-1 g sigma for g in group]``."""
    elements = group.elements if isinstance(group, AutSubgroup) else group
    return [conjugate(g, sigma) for g in elements]


def same_set(A, B, tol: float = DEFAULT_TOL) -> bool:
    A, B = list(A), list(B)
    if len(A) != len(B):
        return False
    used = [False] * len(B)
    for a in A:
        for j, b in enumerate(B):
            if not used[j] and a.matrix.close(b.matrix, tol):
                used[j] = True
                break
        else:
            return False
    return True


def is_conjugator(sigma: Automorphism, source, target, tol: float = DEFAULT_TOL) -> bool:
    """``sigma^-1 source sigma == target`` as sets."""
    tgt = target.elements if isinstance(target, AutSubgroup) else target
    return same_set(conjugate_set(source, sigma), tgt, tol)


# ---------------------------------------------------------------------
# normal form of gamma7

def normalize_gamma7(a3, a5, a6, tol: float = DEFAULT_TOL) -> Automorphism:
    """``sigma`` with ``sigma^-1 tau1(a3,a6) sigma = tau1(0,0)`` and
    ``sigma^-1 tau2(-a3,a5) sigma = tau2(0,0)``."""
    half = Fraction(1, 2)
    sigma = make_automorphism(Mat3([[1, 0, 0], [-half * a3, 1, 0], [half * a5, half * a6, 1]]), tol)
    checks = (
        (Tau1(a3, a6), Tau1(0, 0)),
        (Tau2(-a3, a5), Tau2(0, 0)),
    )
    for src, dst in checks:
        if not conjugate(make_family(src), sigma).close(make_family(dst), tol):
            raise VerificationFailed(f"normalizing automorphism fails on {src}")
    return sigma


# ---------------------------------------------------------------------
# linear solver

def _intertwiner_rows(S: Mat3, T: Mat3) -> list[list]:
    """Rows of the linear system ``S sigma - sigma T = 0`` in the free entries."""
    rows = []
    for i in range(3):
        for j in range(3):
            row = []
            for (a, b) in _FREE:
                # d/d sigma[a][b] of (S sigma)[i][j] - (sigma T)[i][j]
                coef = (S[i, a] if b == j else 0) - (T[b, j] if a == i else 0)
                row.append(coef)
            rows.append(row)
    return rows


def _candidate_vectors(dim: int, radius: int = 2):
    """Deterministic small integer coefficient vectors, by increasing size."""
    for r in range(1, radius + 1):
        for c in itertools.product(range(-r, r + 1), repeat=dim):
            if max(abs(x) for x in c) == r:
                yield c


def _sigma_from_kernel(kernel: list, tol: float):
    dim = len(kernel)
    if dim == 0:
        return None
    for c in _candidate_vectors(dim, radius=2 if dim > 3 else 3):
        v = [sum(ci * k[m] for ci, k in zip(c, kernel)) for m in range(7)]
        s1, s2, s3, s4, s5, s6, s9 = v
        det_top = s1 * s4 - s2 * s3
        if is_zero(s9, tol) or is_zero(det_top, tol):
            continue
        lam = s9 / det_top  # rescaling makes the (3,3) entry equal the top determinant
        M = Mat3([[s1, s2, 0], [s3, s4, 0], [s5, s6, s9]]).scale(lam)
        return make_automorphism(M, tol)
    return None


def _invariants(tau: Automorphism):
    return tau.matrix.trace(), tau.delta


def _match_invariants(a, b, tol):
    return all(is_zero(x - y, tol) for x, y in zip(_invariants(a), _invariants(b)))


def find_conjugator(source: AutSubgroup, target: AutSubgroup,
                    tol: float = DEFAULT_TOL) -> Automorphism:
    """Some ``sigma`` with ``sigma^-1 source sigma = target`` as sets.

    For every assignment of the target generators to source elements with
    the same order, trace and Delta, the intertwining equations are solved
    as one homogeneous linear system in the seven free matrix entries.
    """
    if source.order != target.order:
        raise NoConjugatorFound("groups of different order")
    if same_set(source.elements, target.elements, tol):
        return IDENTITY
    tgens = [g for g in target.generators]
    src_orders = source.order_profile()
    tgt_orders = [target.element_order(target.index_of(g, tol)) for g in tgens]
    for images in itertools.permutations(range(source.order), len(tgens)):
        if any(src_orders[i] != n for i, n in zip(images, tgt_orders)):
            continue
        if not all(_match_invariants(source.elements[i], t, tol) for i, t in zip(images, tgens)):
            continue
        rows = []
        for i, t in zip(images, tgens):
            rows.extend(_intertwiner_rows(source.elements[i].matrix, t.matrix))
        sigma = _sigma_from_kernel(nullspace(rows, tol), tol)
        if sigma is not None and is_conjugator(sigma, source, target, tol):
            return sigma
    raise NoConjugatorFound("no invertible solution for any generator pairing")


# ---------------------------------------------------------------------
# closed-form fast paths for gamma7 -> gamma8

def closed_form_conjugator(p7, p8, beta=1, gamma=1, delta=1) -> Mat3:
    """Closed-form conjugator in the three cases ``a1^2 != 1``, ``a1 = 1``, ``a1 = -1``.

    ``p7 = (a3, a5, a6)`` and ``p8 = (a1, a2, a6', a6'')``.  The ``a1 = -1``
    entries in positions (3,1) and (3,2) use the corrected expressions.
    """
    a3, a5, a6 = (to_exact(x) for x in p7)
    a1, a2, b6, c6 = (to_exact(x) for x in p8)
    beta, gamma, delta = to_exact(beta), to_exact(gamma), to_exact(delta)
    if a2 == 0:
        raise ConstraintViolated("gamma8 needs a2 != 0")
    if a1 * a1 != 1:
        d = a1 * a1 - 1
        rho = ((2 * gamma * a5 + gamma * a3 * a6 + 2 * a6 * delta) / 4
               + ((2 * gamma ** 2 * a3 * b6 + 4 * gamma * delta * b6) * (1 + a1)
                  + (2 * gamma ** 2 * a3 * c6 + 4 * gamma * delta * c6) * (a1 - 1)) / (4 * d))
        mu = (2 * gamma * a2 * a5 * (1 + a1) + a2 * a6 * (gamma * a3 + 2 * delta) * (a1 - 1)
              + (2 * gamma ** 2 * a2 * a3 + 4 * gamma * a2 * delta) * (b6 + c6)) / (4 * d)
        return Mat3([
            [gamma, gamma * a2 / (a1 - 1), 0],
            [delta, -a2 * (gamma * a3 + delta - a1 * delta) / d, 0],
            [rho, mu, -gamma * a2 * (gamma * a3 + 2 * delta) / d],
        ])
    if a1 == 1:
        return Mat3([
            [0, beta, 0],
            [gamma, (-beta * a3 + a2 * gamma) / 2, 0],
            [gamma * (a6 / 2 + beta * b6 / a2),
             (a2 * gamma * a6 + 2 * beta * (a5 + gamma * b6 + gamma * c6)) / 4,
             -beta * gamma],
        ])
    rho = -beta * (a2 * a5 + (beta * a3 + 2 * delta) * c6) / a2 ** 2
    mu = (a2 * a3 * a6 * beta + 2 * a2 * a5 * beta + 2 * a2 * a6 * delta
          + 2 * (beta ** 2 * a3 + 2 * beta * delta) * (b6 + c6)) / (4 * a2)
    return Mat3([
        [-2 * beta / a2, beta, 0],
        [beta * a3 / a2, delta, 0],
        [rho, mu, -(beta ** 2 * a3 + 2 * beta * delta) / a2],
    ])


def conjugator_gamma7_to_gamma8(p7, p8, method: str = "auto", beta=1, gamma=1, delta=1,
                                tol: float = DEFAULT_TOL) -> Automorphism:
    """``sigma`` with ``sigma^-1 Gamma7(p7) sigma = Gamma8(p8)``, verified as sets.

    ``method`` is ``"solver"``, ``"closed-form"`` or ``"auto"`` (closed form
    first, solver when the closed form is singular for the chosen free
    parameters).
    """
    if method not in ("auto", "solver", "closed-form"):
        raise ValueError(f"unknown method {method!r}")
    g7 = build_gamma7(*p7, tol=tol)
    g8 = build_gamma8(*p8, tol=tol)
    if method in ("auto", "closed-form"):
        try:
            M = closed_form_conjugator(p7, p8, beta, gamma, delta)
            sigma = make_automorphism(M, tol)
        except (ZeroDivisionError, ConstraintViolated, NotAutomorphism) as exc:
            # Singular or a zero denominator for these free parameters
            if method == "closed-form":
                raise ConstraintViolated(f"closed form unavailable: {exc}") from exc
            sigma = None
        if sigma is not None:
            if is_conjugator(sigma, g7, g8, tol):
                return sigma
            if method == "closed-form":
                raise VerificationFailed("closed-form conjugator does not map gamma7 onto gamma8")
    return find_conjugator(g7, g8, tol)


# ---------------------------------------------------------------------
# involutions commuting with an element of order >= 3

def commutant_basis(tau: Automorphism, tol: float = DEFAULT_TOL) -> list[Mat3]:
    """Basis of all 3x3 matrices commuting with ``tau`` (exact linear solve)."""
    T = tau.matrix
    rows = []
    for i in range(3):
        for j in range(3):
            row = []
            for a in range(3):
                for b in range(3):
                    # d/dX[a][b] of (X T - T X)[i][j]
                    coef = (T[b, j] if a == i else 0) - (T[i, a] if b == j else 0)
                    row.append(coef)
            rows.append(row)
    return [Mat3([v[0:3], v[3:6], v[6:9]]) for v in nullspace(rows, tol)]


def commuting_involutions(tau: Automorphism, tol: float = DEFAULT_TOL) -> list[Automorphism]:
    """Every automorphism ``X != Id`` with ``X^2 = Id`` and ``X tau = tau X``.

    ``tau`` must have Delta = 1 and a top block without real eigenvalues
    (the order-3 and order-k families).  Its commutant is then the
    three-dimensional algebra spanned by ``Id, tau, tau^2``, which splits as
    the reals (on X3) times the complex numbers (on the rotation plane).
    The square roots of Id there are ``+-Id`` and ``+-(2 P - Id)`` with
    ``P`` the projector onto X3 along the plane.
    """
    T = tau.matrix
    tr = T[0, 0] + T[1, 1]
    det = T[0, 0] * T[1, 1] - T[0, 1] * T[1, 0]
    disc = tr * tr - 4 * det
    if not is_zero(T[2, 2] - 1, tol) or not (disc < 0 if is_exact(disc) else disc < -tol):
        raise ConstraintViolated("needs Delta = 1 and a rotation-type top block")
    basis = commutant_basis(tau, tol)
    if len(basis) != 3:
        raise VerificationFailed(f"commutant has dimension {len(basis)}, expected 3")
    # P = q(tau)/q(1) where q(x) = x^2 - tr x + det annihilates the top block
    I = Mat3.identity()
    q1 = 1 - tr + det
    P = (T @ T - T.scale(tr) + I.scale(det)).scale(1 / q1 if not is_exact(q1) else Fraction(1) / q1)
    R = P.scale(2) - I
    out = []
    for X in (R, -R, -I):
        try:
            cand = make_automorphism(X, tol)
        except NotAutomorphism:
            continue
        if (X @ X).close(I, tol) and (X @ T).close(T @ X, tol):
            out.append(cand)
    return out
