"""End-to-end acceptance criteria, one PASS/FAIL line each.

Sample counts and tolerances follow the acceptance contract.  Expected
values come from closed forms written out here, from sympy, or from direct
matrix arithmetic, not from the package's own predicates.
"""

import json
import math
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from heisgamma.conjugation import conjugator_gamma7_to_gamma8, normalize_gamma7
from heisgamma.families import (Tau1, Tau2, Tau3, Tau4, Tau5, Tau5Prime, Tau6, classify_involution,
                                make_family, solve_order3_constraints, tau5_square_relation)
from heisgamma.gradings import canonical_z22_grading, grading_from_subgroup, verify_grading
from heisgamma.groups import abelian_type, build_gamma5, build_gamma7, build_gamma8, build_sigma3
from heisgamma.heis import BASIS, X1, X2, X3, conjugate
from heisgamma.linalg import Mat3, congruent_diagonalize
from heisgamma.metrics import (CASE_I, NOT_ADAPTED, RIEMANNIAN, BilinearForm, canonical_reduce,
                               check_adaptation, curvature, diagonal_form, flat_form, is_flat, pullback,
                               sectional)

F = Fraction
I3 = Mat3.identity()
ZERO = Mat3([[0] * 3] * 3)
FLAT = Mat3([[1, 0, 0], [0, -1, 1], [0, 1, 0]])  # w1^2 + w3^2 - (w2 - w3)^2


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail else ""
            print(f"\ncriterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}{tail}")
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def rat(rng, num=9, den=6):
    return F(rng.randint(-num, num), rng.randint(1, den))


def nz(rng):
    while True:
        q = rat(rng)
        if q:
            return q


def order3_point(rng):
    """Parameters with 4*a2*a3 <= -3 and a rational radicand s^2."""
    s = F(rng.randint(0, 12), rng.randint(1, 4))
    a2 = nz(rng)
    return a2, -(3 + s * s) / (4 * a2), rat(rng), rat(rng)


def gamma7_frame(a3, a5, a6):
    """Inverse of the normalizing automorphism, written out directly."""
    return Mat3([[1, 0, 0], [a3 / 2, 1, 0], [-a5 / 2 - a3 * a6 / 4, -a6 / 2, 1]])


def test_criterion_01_involutions(report):
    rng = random.Random("c1")
    bad = []
    makers = {
        "tau1": lambda: Tau1(rat(rng), rat(rng)),
        "tau2": lambda: Tau2(rat(rng), rat(rng)),
        "tau3": lambda: Tau3(rat(rng), nz(rng), rat(rng)),
        "tau4": lambda: Tau4(rat(rng), rat(rng)),
    }
    for fam, make in makers.items():
        for _ in range(100):
            tag = make()
            M = make_family(tag).matrix
            if M @ M != I3 or M == I3 or classify_involution(make_family(tag)) != tag:
                bad.append(tag)
    report(1, "involution squares and classification round-trip, 4 x 100 exact", not bad, f"{len(bad)} failures")


def test_criterion_02_order3(report):
    rng = random.Random("c2")
    M = make_family(Tau5(1, -3, 0, 0)).matrix
    cube = M @ M @ M == I3
    rejected = 0
    for _ in range(100):
        a2 = nz(rng)
        a3 = (F(-3, 4) + F(rng.randint(1, 50), rng.randint(1, 9))) / a2
        rejected += solve_order3_constraints(a2, a3) is None
    transport_ok = 0
    for _ in range(50):
        p = order3_point(rng)
        prime, second = tau5_square_relation(*p)
        T = make_family(Tau5(*p)).matrix
        Tp = make_family(Tau5Prime(*p)).matrix
        transport_ok += (make_family(prime).matrix == T @ T and make_family(second).matrix == Tp @ Tp
                         and prime.family == "tau5prime" and prime.params[:2] == (-p[0], -p[1]))
    ok = cube and rejected == 100 and transport_ok == 50
    report(2, "tau5 order 3, constraint rejection, squaring transport at 50 points", ok,
           f"cube={cube}, rejected {rejected}/100, transport {transport_ok}/50")


def _order_k_point(rng, k):
    c = math.cos(2 * math.pi / k)
    bound = -1 + c * c
    a2 = float(nz(rng))
    return a2, (bound - rng.uniform(0, 2)) / a2, float(rat(rng)), float(rat(rng))


def test_criterion_03_order_k(report):
    rng = random.Random("c3")
    details = []
    ok = True
    for k, c2 in ((4, F(0)), (6, F(1, 4))):
        for _ in range(10):
            a2 = nz(rng)
            # radicand cos^2 - 1 - a2*a3 is a rational square
            a3 = (-1 + c2 - F(rng.randint(0, 20), rng.randint(1, 5)) ** 2) / a2
            M = make_family(Tau6(k, a2, a3, rat(rng), rat(rng))).matrix
            powers = [M]
            for _ in range(k - 1):
                powers.append(powers[-1] @ M)
            if powers[-1] != I3 or any(P == I3 for P in powers[:-1]):
                ok = False
    worst = 0.0
    for k in (5, 7, 8, 12):
        for _ in range(10):
            M = make_family(Tau6(k, *_order_k_point(rng, k)), "approx").matrix
            P = M
            for j in range(1, k):
                if (P - I3).max_abs() <= 1e-3:
                    ok = False
                    details.append(f"k={k} power {j} near Id")
                P = P @ M
            err = (P - I3).max_abs()
            worst = max(worst, err)
            ok &= err <= 1e-9
    report(3, "tau6 exact order at k=4,6 and approx order at k=5,7,8,12", ok,
           f"max |tau6^k - Id| = {worst:.1e}" + ("; " + ", ".join(details) if details else ""))


def _commutation_cases(rng, satisfy):
    """Yield (name, tag_a, tag_b, expected_commute) with the expectation written by hand."""
    a3, a5, a6, b = rat(rng), rat(rng), rat(rng), rat(rng)
    b3 = -a3 if satisfy else b
    yield "tau1/tau2", Tau1(a3, a6), Tau2(b3, a5), b3 == -a3
    yield "tau1/tau3", Tau1(a3, a6), Tau3(rat(rng), nz(rng), rat(rng)), False
    b6 = -a6 if satisfy else b
    yield "tau1/tau4", Tau1(a3, a6), Tau4(a5, b6), b6 == -a6
    b5 = -a5 - a3 * a6 / 2 if satisfy else b
    yield "tau2/tau4", Tau2(a3, a5), Tau4(b5, a6), b5 == -a5 - a3 * a6 / 2
    c1, c2, c6 = rat(rng), nz(rng), rat(rng)
    d1, d2 = (-c1, -c2) if satisfy else (rat(rng), nz(rng))
    d6 = rat(rng)
    same = (d1, d2, d6) == (c1, c2, c6)
    yield "tau3/tau3", Tau3(c1, c2, c6), Tau3(d1, d2, d6), same or (d1 == -c1 and d2 == -c2)
    e5 = ((c1 - 1) * b - 2 * c6) / c2 if satisfy else a5
    yield "tau3/tau4", Tau3(c1, c2, c6), Tau4(e5, b), c2 * e5 + 2 * c6 == (c1 - 1) * b


def test_criterion_04_commutation(report):
    rng = random.Random("c4")
    counts, bad = {}, []
    for i in range(100):
        for name, a, b, expected in _commutation_cases(rng, i % 2 == 0):
            A, B = make_family(a).matrix, make_family(b).matrix
            C = A @ B - B @ A
            commuting = C == ZERO
            if commuting != expected:
                bad.append((name, a, b))
            c = counts.setdefault(name, [0, 0])
            c[0 if commuting else 1] += 1
    both_sides = all(c[0] and c[1] for n, c in counts.items() if n != "tau1/tau3")
    summary = ", ".join(f"{n} {c[0]}/{c[1]}" for n, c in counts.items())
    report(4, "six commutation criteria, both directions, 100 exact samples each",
           not bad and both_sides, f"commuting/non-commuting: {summary}; {len(bad)} mismatches")


def test_criterion_05_subgroups(report):
    rng = random.Random("c5")
    ok = True
    for _ in range(10):
        ok &= abelian_type(build_gamma7(rat(rng), rat(rng), rat(rng))) == [2, 2]
        ok &= abelian_type(build_gamma8(rat(rng), nz(rng), rat(rng), rat(rng))) == [2, 2]
        ok &= abelian_type(build_gamma5(*order3_point(rng))) == [3]
    g = build_sigma3()
    s1, s2 = (e.matrix for e in g.generators)
    relations = s1 @ s1 == I3 and s2 @ s2 @ s2 == I3 and s1 @ s2 @ s1 == s2 @ s2
    ok &= g.order == 6 and not g.is_abelian() and relations
    report(5, "gamma7/gamma8 type [2,2], gamma5 type [3], sigma3 order 6 non-abelian", ok)


def test_criterion_06_gradings(report):
    rng = random.Random("c6")
    bad = 0
    for _ in range(50):
        a3, a5, a6 = rat(rng), rat(rng), rat(rng)
        gr = grading_from_subgroup(build_gamma7(a3, a5, a6))
        verify_grading(gr)
        want = {"++": (), "+-": ((0, 1, a6 / 2),), "-+": ((1, -a3 / 2, a5 / 2),), "--": ((0, 0, 1),)}
        got = {lab: tuple(tuple(v) for v in basis) for lab, basis in gr.components}
        # direct sum and bracket axiom checked by hand too
        vecs = [v for _, basis in gr.components for v in basis]
        det = Mat3([list(v) for v in vecs]).det() if len(vecs) == 3 else 0
        u, w = got["+-"][0], got["-+"][0]
        bracket = u[0] * w[1] - u[1] * w[0]  # [u, w] = bracket * X3 lies in "--"
        if got != want or det == 0 or bracket == 0 or gr.component(gr.identity_label):
            bad += 1
    report(6, "gamma7 grading components, direct sum, bracket axiom, trivial identity at 50 points",
           bad == 0, f"{bad} failures")


def _conj_points(rng):
    pts = []
    for i in range(25):
        case = i % 3
        if case == 0:
            a1 = rat(rng)
            while a1 * a1 == 1:
                a1 = rat(rng)
        else:
            a1 = F(1) if case == 1 else F(-1)
        pts.append(((rat(rng), rat(rng), rat(rng)), (a1, nz(rng), rat(rng), rat(rng))))
    return pts


def test_criterion_07_conjugation(report):
    rng = random.Random("c7")
    normal_ok = 0
    for _ in range(100):
        a3, a5, a6 = rat(rng), rat(rng), rat(rng)
        s = normalize_gamma7(a3, a5, a6)
        normal_ok += (conjugate(make_family(Tau1(a3, a6)), s).matrix == make_family(Tau1(0, 0)).matrix
                      and conjugate(make_family(Tau2(-a3, a5)), s).matrix == make_family(Tau2(0, 0)).matrix)
    solved, cases = 0, set()
    for p7, p8 in _conj_points(rng):
        sigma = conjugator_gamma7_to_gamma8(p7, p8, method="solver")
        S = sigma.matrix
        images = {tuple(map(tuple, (S.inverse() @ g.matrix @ S).rows)) for g in build_gamma7(*p7).elements}
        targets = {tuple(map(tuple, g.matrix.rows)) for g in build_gamma8(*p8).elements}
        if S.det() != 0 and images == targets:
            solved += 1
            cases.add("a1=1" if p8[0] == 1 else "a1=-1" if p8[0] == -1 else "a1^2!=1")
    ok = normal_ok == 100 and solved == 25 and len(cases) == 3
    report(7, "normalize_gamma7 at 100 points, solver conjugator gamma7 -> gamma8 at 25 points", ok,
           f"normal form {normal_ok}/100, solver {solved}/25 over {sorted(cases)}")


def test_criterion_08_no_mixed_order(report, sp):
    """Exact solve of X^2 = Id, X != Id, X tau5 = tau5 X over automorphisms X."""
    rng = random.Random("c8")
    x = sp.symbols("x1:7", real=True)
    d = x[0] * x[3] - x[1] * x[2]
    X = sp.Matrix([[x[0], x[1], 0], [x[2], x[3], 0], [x[4], x[5], d]])
    nonempty = 0
    found = []
    for _ in range(20):
        p = order3_point(rng)
        T = sp.Matrix([[sp.Rational(e.numerator, e.denominator) for e in row]
                       for row in make_family(Tau5(*p)).matrix.rows])
        eqs = list(X * T - T * X) + list(X * X - sp.eye(3))
        sols = [s for s in sp.solve(eqs, x, dict=True) if X.subs(s) != sp.eye(3)]
        if sols:
            nonempty += 1
            found.append(X.subs(sols[0]))
    detail = f"{nonempty}/20 points have a commuting involution"
    if found:
        tau4_like = sum(S[:2, :2] == -sp.eye(2) and S[2, 2] == 1 for S in found)
        detail += f", {tau4_like} of them of tau4 shape, e.g. {found[0].tolist()}"
    report(8, "no involution commutes with tau5 at 20 exact points", nonempty == 0, detail)


def test_criterion_09_riemannian(report):
    rng = random.Random("c9")
    reduce_ok = 0
    for _ in range(100):
        a, b = F(rng.randint(1, 9), rng.randint(1, 5)) ** 2, F(rng.randint(1, 9), rng.randint(1, 5)) ** 2
        c = F(rng.randint(1, 30), rng.randint(1, 7))
        form, sigma, cls = canonical_reduce(diagonal_form(a, b, c), canonical_z22_grading())
        reduce_ok += form.matrix == Mat3.diag(1, 1, c / (a * b)) and pullback(diagonal_form(a, b, c), sigma) == form
    adapted = perturbed = 0
    for _ in range(100):
        p = rat(rng), rat(rng), rat(rng)
        gr = grading_from_subgroup(build_gamma7(*p))
        Th = gamma7_frame(*p)
        D = Mat3.diag(F(rng.randint(1, 9)), F(rng.randint(1, 9)), F(rng.randint(1, 9)))
        adapted += check_adaptation(BilinearForm(Th.T @ D @ Th), gr).classification == RIEMANNIAN
        i, j = rng.choice([(0, 1), (0, 2), (1, 2)])
        eps = F(1, rng.randint(2, 9))
        E = [[0] * 3 for _ in range(3)]
        E[i][j] = E[j][i] = eps
        P = D + Mat3(E)
        perturbed += check_adaptation(BilinearForm(Th.T @ P @ Th), gr).classification == NOT_ADAPTED
    ok = reduce_ok == 100 and adapted == 100 and perturbed == 100
    report(9, "Riemannian reduction to diag(1,1,lambda^2); 100 adapted and 100 perturbed classified", ok,
           f"reduced {reduce_ok}/100, adapted {adapted}/100, perturbed {perturbed}/100")


def test_criterion_10_lorentzian(report):
    rng = random.Random("c10")
    case_i = 0
    for i in range(50):
        p = rat(rng), rat(rng), rat(rng)
        gr = grading_from_subgroup(build_gamma7(*p))
        sq = [F(rng.randint(1, 6), rng.randint(1, 4)) ** 2 for _ in range(2)]
        c = F(rng.randint(1, 20), rng.randint(1, 5))
        coeffs = [(sq[0], sq[1], -c), (-sq[0], sq[1], c), (sq[0], -sq[1], c)][i % 3]
        Th = gamma7_frame(*p)
        g = BilinearForm(Th.T @ Mat3.diag(*coeffs) @ Th)
        if check_adaptation(g, gr).classification != CASE_I:
            continue
        form, sigma, cls = canonical_reduce(g, gr)
        lam2 = cls.lam * cls.lam
        normal = (Mat3.diag(1, 1, -lam2), Mat3.diag(-1, 1, lam2))
        D, P = congruent_diagonalize(form.matrix)
        Dg, _ = congruent_diagonalize(g.matrix)
        signs = sorted(1 if D[k, k] > 0 else -1 for k in range(3))
        signs_g = sorted(1 if Dg[k, k] > 0 else -1 for k in range(3))
        if (sum(form.matrix == m for m in normal) == 1 and signs == signs_g == [-1, 1, 1]
                and P.T @ form.matrix @ P == D and sigma.matrix.T @ g.matrix @ sigma.matrix == form.matrix):
            case_i += 1
    case_ii = 0
    for _ in range(50):
        p = rat(rng), rat(rng), rat(rng)
        gr = grading_from_subgroup(build_gamma7(*p))
        Th = gamma7_frame(*p)
        g = BilinearForm(Th.T @ FLAT @ Th)
        form, sigma, cls = canonical_reduce(g, gr)
        case_ii += form.matrix == FLAT and sigma.matrix.T @ g.matrix @ sigma.matrix == FLAT
    report(10, "Case I to one of the two normal forms with signature (2,1); Case II to the flat form", case_i == 50
           and case_ii == 50, f"Case I {case_i}/50, Case II {case_ii}/50")


def test_criterion_11_curvature(report):
    Rflat = curvature(flat_form()).R
    flat_zero = all(Rflat[i][j][k] == (0, 0, 0) for i in range(3) for j in range(3) for k in range(3))
    flat_ok = is_flat(flat_form()) and flat_zero
    sect_ok = True
    for lam in (F(1), F(2), F(1, 2)):
        g = diagonal_form(1, 1, lam * lam)
        sect_ok &= sectional(g, X1, X2) == -3 * lam * lam / 4
        sect_ok &= sectional(g, X1, X3) == sectional(g, X2, X3)
    ident_ok, tested = True, 0
    rng = random.Random("c11")
    metrics = [flat_form()] + [diagonal_form(1, 1, l * l) for l in (F(1), F(2), F(1, 2))]
    for _ in range(10):
        p = rat(rng), rat(rng), rat(rng)
        Th = gamma7_frame(*p)
        metrics.append(BilinearForm(Th.T @ Mat3.diag(1, -2, F(3, 2)) @ Th))
    for g in metrics:
        R = curvature(g).R
        tested += 1
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    cyc = [R[i][j][k][m] + R[j][k][i][m] + R[k][i][j][m] for m in range(3)]
                    anti = [R[i][j][k][m] + R[j][i][k][m] for m in range(3)]
                    ident_ok &= cyc == [0, 0, 0] and anti == [0, 0, 0]
                    for l in range(3):
                        ident_ok &= g(R[i][j][k], BASIS[l]) == -g(R[i][j][l], BASIS[k])
    report(11, "flat metric has 27 zero components; sectional values; Bianchi and symmetries exact",
           flat_ok and sect_ok and ident_ok, f"flat={flat_ok}, sectional={sect_ok}, identities on {tested} metrics")


def test_criterion_12_cli_determinism(report):
    cmd = [sys.executable, "-m", "heisgamma", "verify-paper", "--suite", "all", "--seed", "0"]
    runs = [subprocess.run(cmd, capture_output=True, timeout=600) for _ in range(2)]
    same = runs[0].stdout == runs[1].stdout and runs[0].returncode == runs[1].returncode
    doc = json.loads(runs[0].stdout)
    expected = 0 if doc["result"]["all_passed"] else 1
    bad = subprocess.run([sys.executable, "-m", "heisgamma", "classify-aut", "-i", "-"],
                         input=b"{oops", capture_output=True, timeout=60)
    domain = subprocess.run([sys.executable, "-m", "heisgamma", "classify-aut", "-i", "-"],
                            input=b'{"matrix": [[1,0,1],[0,1,0],[0,0,1]]}', capture_output=True, timeout=60)
    good = subprocess.run([sys.executable, "-m", "heisgamma", "classify-aut", "-i", "-"],
                          input=b'{"matrix": [[-1,0,0],[0,1,0],[0,0,-1]]}', capture_output=True, timeout=60)
    codes = (runs[0].returncode, good.returncode, domain.returncode, bad.returncode)
    ok = same and codes == (expected, 0, 1, 2)
    failed = [c["name"] for c in doc["result"]["checks"] if not c["passed"]]
    report(12, "verify-paper --suite all byte-identical across runs; exit codes 0/1/2", ok,
           f"{len(runs[0].stdout)} bytes, exit codes {codes}, failed verdicts {failed}")
