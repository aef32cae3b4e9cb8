"""Adapted metrics on h3: adaptation classes, normal forms and curvature.

Forms are symmetric matrices ``G`` in the dual basis ``w1, w2, w3``, so
``g(u, v) = u^T G v``.  Pulling back by an automorphism ``sigma`` gives
``sigma^T G sigma``, the form expressed in the frame ``sigma(X_i)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import (DegenerateMetric, DegeneratePlane, IncompatibleRadicands, InvalidGrading,
                     ModeUnavailable, NotAdapted, VerificationFailed)
from .gradings import Grading
from .heis import BASIS, Automorphism, bracket, make_automorphism
from .linalg import Mat3, dot, inertia, symmetric_diagonalize, vadd, vec_is_zero, vscale
from .scalars import DEFAULT_TOL, is_exact, is_zero, sign, sqrt, to_approx

RIEMANNIAN = "RiemannianAdapted"
CASE_I = "LorentzCaseI"
CASE_II = "LorentzCaseII"
NOT_ADAPTED = "NotAdapted"

FLAT_FORM = Mat3([[1, 0, 0], [0, -1, 1], [0, 1, 0]])  # w1^2 + w3^2 - (w2 - w3)^2


@dataclass(frozen=True)
class BilinearForm:
    matrix: Mat3

    def __post_init__(self):
        M = self.matrix if isinstance(self.matrix, Mat3) else Mat3(self.matrix)
        object.__setattr__(self, "matrix", M)
        if not M.is_symmetric(0.0 if M.is_exact else DEFAULT_TOL):
            raise ValueError("bilinear form must be symmetric")

    def __call__(self, u, v):
        return dot(u, self.matrix @ v)

    def inertia(self, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
        return inertia(self.matrix.rows, tol)

    def signature(self, tol: float = DEFAULT_TOL) -> tuple[int, int]:
        p, q, _ = self.inertia(tol)
        return p, q

    def is_nondegenerate(self, tol: float = DEFAULT_TOL) -> bool:
        return not is_zero(self.matrix.det(), tol)

    def close(self, other: "BilinearForm", tol: float = DEFAULT_TOL) -> bool:
        return self.matrix.close(other.matrix, tol)


def diagonal_form(a, b, c) -> BilinearForm:
    return BilinearForm(Mat3.diag(a, b, c))


def flat_form() -> BilinearForm:
    return BilinearForm(FLAT_FORM)


def pullback(g: BilinearForm, sigma) -> BilinearForm:
    S = sigma.matrix if isinstance(sigma, Automorphism) else sigma
    return BilinearForm(S.T @ g.matrix @ S)


def signature(g: BilinearForm, tol: float = DEFAULT_TOL) -> tuple[int, int]:
    return g.signature(tol)


# ---------------------------------------------------------------------
# adaptation

@dataclass(frozen=True)
class AdaptationReport:
    classification: str
    restrictions: dict            # label -> restricted Gram matrix (nested lists)
    inertias: dict                # label -> (p, q, zero)
    orthogonal: dict              # "a|b" -> bool
    total_signature: tuple
    degenerate_label: str | None = None
    qualifying_partners: tuple = ()
    pairing_rule: str = "at least one"
    reasons: tuple = field(default=())


def _gram(g: BilinearForm, U, V):
    return [[g(u, v) for v in V] for u in U]


def check_adaptation(g: BilinearForm, grading: Grading, tol: float = DEFAULT_TOL) -> AdaptationReport:
    """Classify ``g`` against a grading with trivial identity component."""
    if not grading.identity_trivial:
        raise InvalidGrading("the identity component must be {0}")
    comps = [(lab, basis) for lab, basis in grading.components if basis]
    if sum(len(b) for _, b in comps) != 3:
        raise InvalidGrading("components do not span h3")
    restr = {lab: _gram(g, b, b) for lab, b in comps}
    inert = {lab: inertia(restr[lab], tol) for lab, _ in comps}
    orth = {}
    for (a, A), (b, B) in itertools.combinations(comps, 2):
        orth[f"{a}|{b}"] = all(is_zero(x, tol) for row in _gram(g, A, B) for x in row)
    total = g.inertia(tol)
    total_sig = total[:2]
    degenerate = [lab for lab, _ in comps if inert[lab][2] > 0]
    reasons = []

    def report(cls, deg=None, partners=()):
        return AdaptationReport(cls, restr, inert, orth, total_sig, deg, tuple(partners),
                                reasons=tuple(reasons))

    all_orth = all(orth.values())
    if all_orth and all(inert[lab][1] == 0 and inert[lab][2] == 0 for lab, _ in comps):
        return report(RIEMANNIAN)
    if len(degenerate) == 1 and total == (2, 1, 0):
        lam0 = degenerate[0]
        others_orth = all(v for k, v in orth.items() if lam0 not in k.split("|"))
        if others_orth:
            partners = []
            basis0 = dict(comps)[lam0]
            for lab, B in comps:
                if lab == lam0:
                    continue
                block = basis0 + B
                if inertia(_gram(g, block, block), tol) == (1, 1, 0):
                    partners.append(lab)
            if partners:
                return report(CASE_II, lam0, partners)
            reasons.append("no component pairs with the degenerate one in signature (1,1)")
        else:
            reasons.append("non-degenerate components are not orthogonal")
    elif len(degenerate) > 1:
        reasons.append("more than one degenerate component")
    if not degenerate and all_orth and total == (2, 1, 0):
        return report(CASE_I)
    if not all_orth and not degenerate:
        reasons.append("components are not orthogonal")
    if total[2] == 0 and total[:2] not in ((3, 0), (2, 1)):
        reasons.append(f"signature {total[:2]} is neither Riemannian nor Lorentzian")
    return report(NOT_ADAPTED)


# ---------------------------------------------------------------------
# canonical reduction

@dataclass(frozen=True)
class CanonicalClass:
    kind: str                 # Riem, LorentzCenterNeg, LorentzCenterPos, LorentzFlat
    lam_sq: object = None     # lambda^2, exact whenever the input is
    lam: object = None        # lambda > 0 (exact when representable)


def _exact_sqrt(x, tol):
    try:
        return sqrt(x, tol)
    except (ModeUnavailable, IncompatibleRadicands) as exc:
        raise ModeUnavailable(f"square root of {x} leaves the scalar mode") from exc


def _component_frame(grading: Grading, tol) -> Mat3:
    """``[u | v | [u, v]]`` from the two non-central components of a Z2xZ2 grading."""
    comps = [(lab, b) for lab, b in grading.components if b]
    if len(comps) != 3 or any(len(b) != 1 for _, b in comps):
        raise InvalidGrading("canonical reduction needs three one-dimensional components")
    central = [lab for lab, b in comps if vec_is_zero(b[0][:2], tol)]
    if len(central) != 1:
        raise InvalidGrading("no component holds the center")
    u, v = (b[0] for lab, b in sorted(comps, reverse=True) if lab != central[0])
    frame = Mat3.from_columns(u, v, bracket(u, v))
    if is_zero(frame.det(), tol):
        raise InvalidGrading("degenerate component frame")
    return frame


def _reduce_nonnull_center(G: Mat3, tol):
    """Steps for ``<X3, X3> != 0``; returns ``(sigma matrix, kind, lam_sq)``."""
    d = G[2, 2]
    e1, e2 = -G[0, 2] / d, -G[1, 2] / d
    shear = Mat3([[1, 0, 0], [0, 1, 0], [e1, e2, 1]])
    G1 = shear.T @ G @ shear
    diag2, P2 = symmetric_diagonalize([[G1[0, 0], G1[0, 1]], [G1[1, 0], G1[1, 1]]], tol)
    detP = P2[0][0] * P2[1][1] - P2[0][1] * P2[1][0]
    block = Mat3([[P2[0][0], P2[0][1], 0], [P2[1][0], P2[1][1], 0], [0, 0, detP]])
    a, b = diag2
    c = d * detP * detP
    sigma = shear @ block
    sa, sb, sc = sign(a, tol), sign(b, tol), sign(c, tol)
    if sa > 0 and sb < 0:
        swap = Mat3([[0, 1, 0], [1, 0, 0], [0, 0, -1]])
        sigma = sigma @ swap
        a, b = b, a
        sa, sb = sb, sa
    if sa > 0 and sb > 0 and sc > 0:
        kind, lam_sq = "Riem", c / (a * b)
    elif sa > 0 and sb > 0 and sc < 0:
        kind, lam_sq = "LorentzCenterNeg", -c / (a * b)
    elif sa < 0 and sb > 0 and sc > 0:
        kind, lam_sq = "LorentzCenterPos", -c / (a * b)
    else:
        raise NotAdapted("signature is neither (3,0) nor (2,1)")
    # diag(s, t, st) with s, t > 0 normalizes the first two coefficients to +-1
    s = _exact_sqrt(1 / abs(a), tol)
    t = _exact_sqrt(1 / abs(b), tol)
    try:
        scale = Mat3([[s, 0, 0], [0, t, 0], [0, 0, s * t]])
        sigma = sigma @ scale
    except IncompatibleRadicands as exc:
        raise ModeUnavailable("scaling needs two unrelated square roots") from exc
    return sigma, kind, lam_sq


def _reduce_null_center(G: Mat3, tol):
    """Steps for a null center; returns the frame reaching the flat form."""
    def ip(u, v):
        return dot(u, G @ v)

    x3 = BASIS[2]
    v = (G[1, 2], -G[0, 2], 0 * G[0, 2])
    n = ip(v, v)
    if sign(n, tol) <= 0:
        raise NotAdapted("center-orthogonal plane is not spacelike")
    y1 = vscale(1 / _exact_sqrt(n, tol), v)
    for _ in range(2):
        r = G @ y1
        w0 = (-r[1], r[0], 0 * r[0])
        kappa = y1[0] * w0[1] - y1[1] * w0[0]
        h = ip(w0, x3)
        if sign(kappa * h, tol) > 0:
            break
        y1 = vscale(-1, y1)
    else:
        raise NotAdapted("cannot orient the null frame")
    try:
        p = 1 / _exact_sqrt(kappa * h, tol)
        q = (-1 - p * p * ip(w0, w0)) / (2 * p * h)
        y2 = vadd(vscale(p, w0), vscale(q, x3))
        y3 = vscale(p * kappa, x3)
        return Mat3.from_columns(y1, y2, y3)
    except IncompatibleRadicands as exc:
        raise ModeUnavailable("null frame needs two unrelated square roots") from exc


def canonical_reduce(g: BilinearForm, grading: Grading, tol: float = DEFAULT_TOL):
    """``(canonical form, sigma, CanonicalClass)`` with ``pullback(g, sigma)`` canonical."""
    report = check_adaptation(g, grading, tol)
    if report.classification == NOT_ADAPTED:
        raise NotAdapted("; ".join(report.reasons) or "form is not adapted to the grading")
    frame = _component_frame(grading, tol)
    G = frame.T @ g.matrix @ frame
    if is_zero(G[2, 2], tol):
        step = _reduce_null_center(G, tol)
        kind, lam_sq = "LorentzFlat", None
    else:
        step, kind, lam_sq = _reduce_nonnull_center(G, tol)
    sigma = make_automorphism(frame @ step, tol)
    reduced = pullback(g, sigma)
    target = _normal_form(kind, lam_sq)
    if not reduced.close(target, max(tol, 1e-9) if not reduced.matrix.is_exact else tol):
        raise VerificationFailed(f"reduction did not reach the {kind} normal form")
    lam = None
    if lam_sq is not None:
        try:
            lam = sqrt(lam_sq, tol)
        except ModeUnavailable:
            lam = to_approx(lam_sq) ** 0.5
    return target, sigma, CanonicalClass(kind, lam_sq, lam)


def _normal_form(kind: str, lam_sq) -> BilinearForm:
    if kind == "Riem":
        return diagonal_form(1, 1, lam_sq)
    if kind == "LorentzCenterNeg":
        return diagonal_form(1, 1, -lam_sq)
    if kind == "LorentzCenterPos":
        return diagonal_form(-1, 1, lam_sq)
    return flat_form()


def normal_form(kind: str, lam=None) -> BilinearForm:
    """The normal form for a class; ``lam`` is lambda, not lambda^2."""
    return _normal_form(kind, None if lam is None else lam * lam)


# ---------------------------------------------------------------------
# Levi-Civita connection of a left-invariant metric

@dataclass(frozen=True)
class ConnectionTable:
    """``gamma[i][j]`` holds the coordinates of ``nabla_{X_i} X_j``."""

    gamma: tuple
    metric: BilinearForm
    brackets: tuple

    def nabla(self, u, v):
        out = [0 * u[0]] * 3
        for i in range(3):
            if is_zero(u[i], 0.0):
                continue
            for j in range(3):
                if is_zero(v[j], 0.0):
                    continue
                c = u[i] * v[j]
                out = [o + c * x for o, x in zip(out, self.gamma[i][j])]
        return tuple(out)

    def bracket(self, u, v):
        out = [0 * u[0]] * 3
        for i in range(3):
            for j in range(3):
                c = u[i] * v[j]
                if is_zero(c, 0.0):
                    continue
                out = [o + c * x for o, x in zip(out, self.brackets[i][j])]
        return tuple(out)


def _bracket_table(brackets):
    if brackets is None:
        return tuple(tuple(bracket(BASIS[i], BASIS[j]) for j in range(3)) for i in range(3))
    return tuple(tuple(tuple(brackets[i][j]) for j in range(3)) for i in range(3))


def koszul_connection(g: BilinearForm, brackets=None, tol: float = DEFAULT_TOL) -> ConnectionTable:
    """Solve ``2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>`` on basis fields.

    ``brackets`` optionally replaces the structure constants
    (``brackets[i][j] = [X_i, X_j]``), e.g. with zeros for an abelian check.
    """
    if not g.is_nondegenerate(tol):
        raise DegenerateMetric("metric is degenerate")
    br = _bracket_table(brackets)
    Ginv = g.matrix.inverse(tol)
    E = BASIS
    gamma = []
    for i in range(3):
        row = []
        for j in range(3):
            cov = tuple((g(br[i][j], E[k]) - g(br[j][k], E[i]) + g(br[k][i], E[j])) / 2
                        for k in range(3))
            row.append(Ginv @ cov)
        gamma.append(tuple(row))
    table = ConnectionTable(tuple(gamma), g, br)
    _check_connection(table, tol)
    return table


def _check_connection(table: ConnectionTable, tol) -> None:
    g, E = table.metric, BASIS
    for i, j in itertools.product(range(3), repeat=2):
        torsion = tuple(a - b - c for a, b, c in zip(table.gamma[i][j], table.gamma[j][i],
                                                     table.brackets[i][j]))
        if not vec_is_zero(torsion, tol):
            raise VerificationFailed("connection has torsion")
    for i, j, k in itertools.product(range(3), repeat=3):
        if not is_zero(g(table.gamma[i][j], E[k]) + g(E[j], table.gamma[i][k]), tol):
            raise VerificationFailed("connection is not metric")


@dataclass(frozen=True)
class CurvatureTable:
    """``R[i][j][k]`` holds the coordinates of ``R(X_i, X_j) X_k``."""

    R: tuple
    connection: ConnectionTable

    def apply(self, u, v, w):
        c = self.connection
        return tuple(a - b - d for a, b, d in zip(c.nabla(u, c.nabla(v, w)),
                                                  c.nabla(v, c.nabla(u, w)),
                                                  c.nabla(c.bracket(u, v), w)))

    def components(self):
        """``(i, j, k, l, value)`` for every component (0-based indices)."""
        for i, j, k in itertools.product(range(3), repeat=3):
            for l in range(3):
                yield i, j, k, l, self.R[i][j][k][l]

    def nonzero(self, tol: float = DEFAULT_TOL):
        return [c for c in self.components() if not is_zero(c[4], tol)]


def curvature(g: BilinearForm, brackets=None, tol: float = DEFAULT_TOL) -> CurvatureTable:
    """``R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z`` on the basis."""
    conn = koszul_connection(g, brackets, tol)
    E = BASIS
    shell = CurvatureTable((), conn)
    R = tuple(tuple(tuple(shell.apply(E[i], E[j], E[k]) for k in range(3)) for j in range(3))
              for i in range(3))
    return CurvatureTable(R, conn)


def is_flat(g: BilinearForm, tol: float = DEFAULT_TOL) -> bool:
    return not curvature(g, tol=tol).nonzero(tol)


def sectional(g: BilinearForm, u, v, tol: float = DEFAULT_TOL):
    """``<R(u,v)v, u> / (<u,u><v,v> - <u,v>^2)``."""
    denom = g(u, u) * g(v, v) - g(u, v) ** 2
    if is_zero(denom, tol):
        raise DegeneratePlane("the plane spanned by u and v is degenerate")
    R = curvature(g, tol=tol)
    return g(R.apply(u, v, v), u) / denom


def is_exact_form(g: BilinearForm) -> bool:
    return all(is_exact(x) for x in g.matrix.entries())
