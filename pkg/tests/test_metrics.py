from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heisgamma.conjugation import normalize_gamma7
from heisgamma.errors import DegenerateMetric, DegeneratePlane, InvalidGrading, ModeUnavailable, NotAdapted
from heisgamma.gradings import canonical_z22_grading, grading_from_subgroup
from heisgamma.groups import build_gamma5, build_gamma7, build_gamma8
from heisgamma.heis import BASIS, X1, X2, X3, make_automorphism
from heisgamma.linalg import Mat3
from heisgamma.metrics import (CASE_I, CASE_II, NOT_ADAPTED, RIEMANNIAN, BilinearForm,
                               canonical_reduce, check_adaptation, curvature, diagonal_form,
                               flat_form, is_flat, koszul_connection, normal_form, pullback,
                               sectional)
from heisgamma.scalars import QuadExt

from conftest import automorphism_matrices, rationals, squares, to_sympy

F = Fraction
CAN = canonical_z22_grading()
positive = st.fractions(min_value=F(1, 10), max_value=20, max_denominator=10)


def sympy_curvature(G):
    """Brute-force Koszul connection and curvature, written independently."""
    import sympy as sp

    G = to_sympy(G)
    Ginv = G.inv()
    E = [sp.Matrix([1 if i == j else 0 for i in range(3)]) for j in range(3)]

    def br(u, v):
        return sp.Matrix([0, 0, u[0] * v[1] - u[1] * v[0]])

    def ip(u, v):
        return (u.T * G * v)[0]

    nab = {}
    for i in range(3):
        for j in range(3):
            cov = sp.Matrix([(ip(br(E[i], E[j]), E[k]) - ip(br(E[j], E[k]), E[i])
                              + ip(br(E[k], E[i]), E[j])) / 2 for k in range(3)])
            nab[i, j] = Ginv * cov

    def cov_deriv(u, v):
        out = sp.zeros(3, 1)
        for i in range(3):
            for j in range(3):
                out += u[i] * v[j] * nab[i, j]
        return out

    R = {}
    for i in range(3):
        for j in range(3):
            for k in range(3):
                R[i, j, k] = (cov_deriv(E[i], cov_deriv(E[j], E[k])) - cov_deriv(E[j], cov_deriv(E[i], E[k]))
                              - cov_deriv(br(E[i], E[j]), E[k]))
    return nab, R


def test_connection_riemannian():
    lam2 = F(9, 4)
    c = koszul_connection(diagonal_form(1, 1, lam2))
    assert c.gamma[0][1] == (0, 0, F(1, 2))
    assert c.gamma[1][0] == (0, 0, F(-1, 2))
    assert c.gamma[0][2] == c.gamma[2][0] == (0, -lam2 / 2, 0)
    assert c.gamma[1][2] == c.gamma[2][1] == (lam2 / 2, 0, 0)
    assert all(c.gamma[i][i] == (0, 0, 0) for i in range(3))


def test_connection_flat():
    c = koszul_connection(flat_form())
    nonzero = {(i, j): v for i in range(3) for j in range(3)
               if (v := c.gamma[i][j]) != (0, 0, 0)}
    assert nonzero == {(1, 0): (0, 0, -1), (1, 1): (1, 0, 0)}


def test_zero_bracket_hook():
    zero = [[(0, 0, 0)] * 3 for _ in range(3)]
    c = koszul_connection(diagonal_form(1, 2, 3), brackets=zero)
    assert all(v == (0, 0, 0) for row in c.gamma for v in row)


def test_degenerate_metric():
    with pytest.raises(DegenerateMetric):
        koszul_connection(diagonal_form(1, 1, 0))


def test_flatness_and_sectional():
    assert is_flat(flat_form())
    assert not is_flat(diagonal_form(1, 1, 1))
    for lam in (F(1), F(2), F(1, 2)):
        g = diagonal_form(1, 1, lam * lam)
        assert sectional(g, X1, X2) == -3 * lam * lam / 4
        assert sectional(g, X1, X3) == sectional(g, X2, X3) == lam * lam / 4
    with pytest.raises(DegeneratePlane):
        sectional(flat_form(), X1, X3)


@given(automorphism_matrices(), st.sampled_from([(1, 1, 4), (-1, 2, 3), (2, 3, -5)]))
def test_curvature_matches_sympy(P, coeffs):
    g = pullback(diagonal_form(*coeffs), P)
    nab, R = sympy_curvature(g.matrix)
    c = koszul_connection(g)
    table = curvature(g)
    for i in range(3):
        for j in range(3):
            assert list(nab[i, j]) == list(c.gamma[i][j])
            for k in range(3):
                assert list(R[i, j, k]) == list(table.R[i][j][k])


@given(automorphism_matrices(), st.sampled_from([(1, 1, 4), (-1, 2, 3), (2, 3, -5), "flat"]))
def test_curvature_identities(P, coeffs):
    base = flat_form() if coeffs == "flat" else diagonal_form(*coeffs)
    g = pullback(base, P)
    R = curvature(g).R
    for i in range(3):
        for j in range(3):
            for k in range(3):
                bianchi = [a + b + c for a, b, c in zip(R[i][j][k], R[j][k][i], R[k][i][j])]
                assert bianchi == [0, 0, 0]
                assert [a + b for a, b in zip(R[i][j][k], R[j][i][k])] == [0, 0, 0]
                for l in range(3):
                    assert g(R[i][j][k], BASIS[l]) == -g(R[i][j][l], BASIS[k])


@given(automorphism_matrices())
def test_flatness_invariant(P):
    assert is_flat(pullback(flat_form(), P))
    assert not is_flat(pullback(diagonal_form(1, 1, 1), P))


@given(automorphism_matrices(), automorphism_matrices())
def test_pullback_right_action(A, B):
    g = diagonal_form(2, -1, 3)
    assert pullback(pullback(g, A), B) == pullback(g, A @ B)


def test_adaptation_canonical_examples():
    assert check_adaptation(diagonal_form(1, 1, 4), CAN).classification == RIEMANNIAN
    assert check_adaptation(diagonal_form(-1, 1, 4), CAN).classification == CASE_I
    assert check_adaptation(diagonal_form(1, 1, -4), CAN).classification == CASE_I
    r = check_adaptation(flat_form(), CAN)
    assert r.classification == CASE_II
    assert r.degenerate_label == "--" and r.qualifying_partners == ("+-",)
    assert r.pairing_rule == "at least one"
    g = BilinearForm(Mat3([[1, F(1, 2), 0], [F(1, 2), 1, 0], [0, 0, 1]]))
    assert check_adaptation(g, CAN).classification == NOT_ADAPTED
    assert check_adaptation(diagonal_form(-1, -1, 1), CAN).classification == NOT_ADAPTED


def test_two_degenerate_components_not_adapted():
    g = BilinearForm(Mat3([[1, 0, 0], [0, 0, 1], [0, 1, 0]]))
    assert check_adaptation(g, CAN).classification == NOT_ADAPTED


def test_adaptation_needs_trivial_identity():
    with pytest.raises(InvalidGrading):
        check_adaptation(diagonal_form(1, 1, 1), grading_from_subgroup(build_gamma5(1, -3, 0, 0)))


def test_riemannian_reduction_example():
    form, sigma, cls = canonical_reduce(diagonal_form(4, 9, 25), CAN)
    assert cls.kind == "Riem" and cls.lam_sq == F(25, 36) and cls.lam == F(5, 6)
    assert sigma.matrix == Mat3.diag(F(1, 2), F(1, 3), F(1, 6))
    assert form.matrix == Mat3.diag(1, 1, F(25, 36))


def test_case_i_reduction_example():
    form, _, cls = canonical_reduce(diagonal_form(1, 1, -4), CAN)
    assert cls.kind == "LorentzCenterNeg" and cls.lam == 2
    form, sigma, cls = canonical_reduce(diagonal_form(1, -1, 4), CAN)
    assert cls.kind == "LorentzCenterPos" and form == diagonal_form(-1, 1, 4)


def test_case_i_frame_matrix():
    a3, a5, a6 = F(2), F(-1), F(3)
    theta = Mat3([[1, 0, 0], [a3 / 2, 1, 0], [-a5 / 2 - a3 * a6 / 4, -a6 / 2, 1]])
    assert theta == normalize_gamma7(a3, a5, a6).matrix.inverse()
    D = diagonal_form(2, 3, -5)
    g = pullback(D, theta)  # lambda1 theta1^2 + lambda2 theta2^2 + lambda3 theta3^2
    assert pullback(g, theta.inverse()) == D
    assert check_adaptation(g, grading_from_subgroup(build_gamma7(a3, a5, a6))).classification == CASE_I


def test_radicals():
    form, sigma, cls = canonical_reduce(diagonal_form(2, 8, 3), CAN)
    assert isinstance(sigma.matrix[0, 0], QuadExt)
    assert form == diagonal_form(1, 1, F(3, 16))
    with pytest.raises(ModeUnavailable):
        canonical_reduce(diagonal_form(2, 3, 1), CAN)
    form, _, cls = canonical_reduce(BilinearForm(Mat3.diag(2.0, 3.0, 1.0)), CAN)
    assert abs(cls.lam_sq - 1 / 6) < 1e-12


def test_not_adapted_raises():
    with pytest.raises(NotAdapted):
        canonical_reduce(diagonal_form(-1, -1, 1), CAN)


@pytest.mark.parametrize("g", [diagonal_form(1, 1, 4), diagonal_form(-1, 1, 9), diagonal_form(1, 1, -F(1, 4)),
                               flat_form()])
def test_reduction_idempotent(g):
    form, sigma, _ = canonical_reduce(g, CAN)
    assert form == g and sigma.matrix == Mat3.identity()


@given(squares, squares, positive, rationals, rationals, rationals)
def test_riemannian_reduction_general(a, b, c, a3, a5, a6):
    gr = grading_from_subgroup(build_gamma7(a3, a5, a6))
    g = pullback(diagonal_form(a, b, c), normalize_gamma7(a3, a5, a6).matrix.inverse())
    form, sigma, cls = canonical_reduce(g, gr)
    assert cls.kind == "Riem" and cls.lam_sq == c / (a * b)
    assert pullback(g, sigma) == form == diagonal_form(1, 1, c / (a * b))


@given(squares, squares, positive, st.sampled_from([(1, 1, -1), (-1, 1, 1), (1, -1, 1)]),
       rationals, rationals, rationals)
def test_case_i_reduction_general(a, b, c, signs, a3, a5, a6):
    coeffs = [s * x for s, x in zip(signs, (a, b, c))]
    gr = grading_from_subgroup(build_gamma7(a3, a5, a6))
    g = pullback(diagonal_form(*coeffs), normalize_gamma7(a3, a5, a6).matrix.inverse())
    assert check_adaptation(g, gr).classification == CASE_I
    form, sigma, cls = canonical_reduce(g, gr)
    assert form == normal_form(cls.kind, cls.lam)
    assert cls.lam > 0 and pullback(g, sigma) == form


@given(rationals, rationals, rationals)
def test_case_ii_on_gamma7_gradings(a3, a5, a6):
    gr = grading_from_subgroup(build_gamma7(a3, a5, a6))
    g = pullback(flat_form(), normalize_gamma7(a3, a5, a6).matrix.inverse())
    assert check_adaptation(g, gr).classification == CASE_II
    form, sigma, cls = canonical_reduce(g, gr)
    assert cls.kind == "LorentzFlat" and pullback(g, sigma) == flat_form()


@given(st.fractions(min_value=F(1, 3), max_value=5, max_denominator=4),
       st.fractions(min_value=F(1, 3), max_value=5, max_denominator=4),
       rationals.filter(lambda q: q != 0), st.booleans(), st.booleans())
def test_case_ii_on_canonical_grading(s, t, b, swap, neg):
    e = s * t * t * (-1 if neg else 1)
    M = [[b, 0, e], [0, s * s, 0], [e, 0, 0]] if swap else [[s * s, 0, 0], [0, b, e], [0, e, 0]]
    g = BilinearForm(Mat3(M))
    r = check_adaptation(g, CAN)
    assert r.classification == CASE_II and r.degenerate_label == "--"
    form, sigma, cls = canonical_reduce(g, CAN)
    assert pullback(g, sigma) == flat_form()


def test_case_ii_noncentral_degenerate_component():
    # X2 null, paired with X3: reduced through the non-null-center path
    g = BilinearForm(Mat3([[1, 0, 0], [0, 0, 1], [0, 1, 1]]))
    r = check_adaptation(g, CAN)
    assert r.classification == CASE_II and r.degenerate_label == "+-"
    form, sigma, cls = canonical_reduce(g, CAN)
    assert cls.kind in ("LorentzCenterNeg", "LorentzCenterPos")
    assert pullback(g, sigma) == form
