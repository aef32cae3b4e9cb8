"""Finite subgroups of Aut(h3): closure, multiplication tables, abstract type."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ClosureBoundExceeded, ConstraintViolated, NotAbelian, VerificationFailed
from .families import (FamilyTag, Tau1, Tau2, Tau3, Tau4, Tau5, Tau5Prime, Tau6, make_family,
                       tau5_transport)
from .heis import Automorphism, make_automorphism
from .linalg import Mat3
from .scalars import DEFAULT_TOL, is_exact, sign

DEFAULT_ELEMENT_BOUND = 48


@dataclass(frozen=True)
class AutSubgroup:
    elements: tuple
    table: tuple
    generators: tuple
    type_label: str
    name: str = ""
    params: tuple = field(default=())

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def is_exact(self) -> bool:
        return all(e.is_exact for e in self.elements)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def element_order(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.table[j][i]
            k += 1
            if k > self.order:
                raise VerificationFailed("multiplication table is not a group table")
        return k

    def order_profile(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def inverse_index(self, i: int) -> int:
        return self.table[i].index(0)

    def index_of(self, tau: Automorphism, tol: float = DEFAULT_TOL) -> int | None:
        for i, e in enumerate(self.elements):
            if e.matrix.close(tau.matrix, tol):
                return i
        return None

    def contains(self, tau: Automorphism, tol: float = DEFAULT_TOL) -> bool:
        return self.index_of(tau, tol) is not None

    def generator_indices(self, tol: float = DEFAULT_TOL) -> list[int]:
        return [self.index_of(g, tol) for g in self.generators]


class _Index:
    """Element lookup: hashing for exact matrices, a tolerance scan otherwise."""

    def __init__(self, tol):
        self.tol = tol
        self.exact: dict = {}
        self.approx: list = []

    def find(self, M: Mat3):
        if M.is_exact and M.rows in self.exact:
            return self.exact[M.rows]
        for i, A in self.approx:
            if A.close(M, self.tol):
                return i
        return None

    def add(self, M: Mat3, i: int):
        if M.is_exact:
            self.exact[M.rows] = i
        # every element stays reachable by a tolerance scan for approximate queries
        self.approx.append((i, M))


def _as_automorphism(g, mode: str, tol: float) -> Automorphism:
    if isinstance(g, FamilyTag):
        return make_family(g, mode, tol)
    if isinstance(g, Automorphism):
        return g
    return make_automorphism(g, tol)


def build_subgroup(generators, bound: int = DEFAULT_ELEMENT_BOUND, tol: float = DEFAULT_TOL,
                   mode: str = "exact", name: str = "", params: tuple = ()) -> AutSubgroup:
    """Close ``generators`` under composition.

    Elements are listed in breadth-first order of right multiplication by
    the generators, so the first entries are ``Id, g1, g2, ...``.
    """
    gens = tuple(_as_automorphism(g, mode, tol) for g in generators)
    ident = Automorphism(Mat3.identity())
    elements = [ident]
    index = _Index(tol)
    index.add(ident.matrix, 0)
    queue = deque([0])
    while queue:
        e = elements[queue.popleft()]
        for g in gens:
            M = e.matrix @ g.matrix
            if index.find(M) is None:
                if len(elements) >= bound:
                    raise ClosureBoundExceeded(f"more than {bound} elements")
                index.add(M, len(elements))
                elements.append(Automorphism(M))
                queue.append(len(elements) - 1)
    table = []
    for a in elements:
        row = []
        for b in elements:
            j = index.find(a.matrix @ b.matrix)
            if j is None:
                raise VerificationFailed("closure produced a non-group table")
            row.append(j)
        table.append(tuple(row))
    group = AutSubgroup(tuple(elements), tuple(table), gens, "", name, tuple(params))
    object.__setattr__(group, "type_label", _type_label(group))
    return group


# ---------------------------------------------------------------------
# abstract type

def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_from_orders(orders: list[int]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group from its element orders.

    For each prime ``p`` the number of cyclic ``p``-factors of exponent at
    least ``i`` is ``log_p(N(p^i) / N(p^(i-1)))`` where ``N(m)`` counts the
    elements with order dividing ``m``.
    """
    n = len(orders)
    primary: dict[int, list[int]] = {}
    for p in _prime_factors(n):
        exps = []
        prev, i = 1, 1
        while True:
            cnt = sum(1 for o in orders if p ** i % o == 0)
            ratio = cnt // prev
            if ratio == 1:
                break
            r, m = 0, ratio
            while m > 1:
                m //= p
                r += 1
            exps.append(r)
            prev, i = cnt, i + 1
        # exps[i-1] = number of factors with exponent >= i
        parts = []
        for e in range(len(exps), 0, -1):
            count = exps[e - 1] - (exps[e] if e < len(exps) else 0)
            parts.extend([p ** e] * count)
        primary[p] = sorted(parts, reverse=True)
    width = max((len(v) for v in primary.values()), default=0)
    factors = []
    for slot in range(width):
        d = 1
        for parts in primary.values():
            if slot < len(parts):
                d *= parts[slot]
        factors.append(d)
    return sorted(factors)


def abelian_type(group: AutSubgroup) -> list[int]:
    if not group.is_abelian():
        raise NotAbelian("group is not abelian")
    return invariant_factors_from_orders(group.order_profile())


def _type_label(group: AutSubgroup) -> str:
    if group.is_abelian():
        factors = abelian_type(group)
        return "x".join(f"Z{d}" for d in factors) if factors else "trivial"
    if group.order == 6:
        return "S3"
    return "nonabelian"


# ---------------------------------------------------------------------
# the named families

def _check_listed(group: AutSubgroup, listed, tol):
    listed = list(listed)
    if group.order != len(listed) or not all(group.contains(t, tol) for t in listed):
        raise VerificationFailed(f"{group.name} does not match its element list")


def gamma7_elements(a3, a5, a6, mode: str = "exact", tol: float = DEFAULT_TOL) -> list[Automorphism]:
    return [make_family(tag, mode, tol) for tag in gamma7_tags(a3, a5, a6)]


def gamma7_tags(a3, a5, a6) -> list[FamilyTag]:
    return [FamilyTag("identity"), Tau1(a3, a6), Tau2(-a3, a5), Tau4(-a3 * a6 / 2 - a5, -a6)]


def gamma8_tags(a1, a2, a6, a6p) -> list[FamilyTag]:
    if a2 == 0:
        raise ConstraintViolated("gamma8 needs a2 != 0")
    return [
        FamilyTag("identity"),
        Tau3(a1, a2, a6),
        Tau3(-a1, -a2, a6p),
        Tau4((a6p * (1 - a1) - a6 * (1 + a1)) / a2, -a6 - a6p),
    ]


def build_gamma7(a3, a5, a6, mode: str = "exact", tol: float = DEFAULT_TOL) -> AutSubgroup:
    tags = gamma7_tags(a3, a5, a6)
    group = build_subgroup(tags[1:3], tol=tol, mode=mode, name="gamma7", params=(a3, a5, a6))
    _check_listed(group, (make_family(t, mode, tol) for t in tags), tol)
    return group


def build_gamma8(a1, a2, a6, a6p, mode: str = "exact", tol: float = DEFAULT_TOL) -> AutSubgroup:
    tags = gamma8_tags(a1, a2, a6, a6p)
    group = build_subgroup(tags[1:3], tol=tol, mode=mode, name="gamma8", params=(a1, a2, a6, a6p))
    _check_listed(group, (make_family(t, mode, tol) for t in tags), tol)
    return group


def gamma5_tags(a2, a3, a5, a6, tol: float = DEFAULT_TOL) -> list[FamilyTag]:
    p5, p6, _, _ = tau5_transport(a2, a3, a5, a6, tol)
    return [FamilyTag("identity"), Tau5(a2, a3, a5, a6), Tau5Prime(-a2, -a3, p5, p6)]


def build_gamma5(a2, a3, a5, a6, mode: str = "exact", tol: float = DEFAULT_TOL) -> AutSubgroup:
    """Cyclic group of order three; the closed boundary ``4*a2*a3 = -3`` is allowed."""
    if sign(-3 - 4 * a2 * a3, tol) < 0:
        raise ConstraintViolated("gamma5 needs 4*a2*a3 <= -3")
    tags = gamma5_tags(a2, a3, a5, a6, tol)
    group = build_subgroup(tags[1:2], tol=tol, mode=mode, name="gamma5", params=(a2, a3, a5, a6))
    _check_listed(group, (make_family(t, mode, tol) for t in tags), tol)
    return group


def build_gamma6k(k: int, a2, a3, a5, a6, mode: str | None = None,
                  tol: float = DEFAULT_TOL) -> AutSubgroup:
    """Cyclic group generated by ``tau6``; approximate unless ``k`` is 4 or 6."""
    if mode is None:
        mode = "exact" if k in (4, 6) and all(is_exact(x) for x in (a2, a3, a5, a6)) else "approx"
    gen = make_family(Tau6(k, a2, a3, a5, a6), mode, tol)
    group = build_subgroup([gen], tol=tol, name="gamma6k", params=(k, a2, a3, a5, a6))
    if group.order != k or abelian_type(group) != [k]:
        raise VerificationFailed(f"tau6 generated a group of order {group.order}, not {k}")
    return group


def sigma3_generators(alpha=1) -> tuple[Automorphism, Automorphism]:
    """The two generators of the order-six non-abelian example."""
    if alpha == 0:
        raise ConstraintViolated("alpha must be nonzero")
    half = Fraction(1, 2)
    s1 = make_automorphism(Mat3.diag(-1, 1, -1))
    s2 = make_automorphism(Mat3([[-half, alpha, 0], [Fraction(-3, 4) / alpha, -half, 0], [0, 0, 1]]))
    return s1, s2


def build_sigma3(alpha=1) -> AutSubgroup:
    return build_subgroup(sigma3_generators(alpha), name="sigma3", params=(alpha,))


# ---------------------------------------------------------------------
# closed-form commutation criteria for pairs of involutions

def commutation_predicted(a: FamilyTag, b: FamilyTag) -> bool:
    """Whether the two involutions commute, decided from their parameters alone.

    Covers the pairs (tau1, tau2), (tau1, tau3), (tau1, tau4), (tau2, tau4),
    (tau3, tau3) and (tau3, tau4), in either order.
    """
    key = (a.family, b.family)
    if key in (("tau2", "tau1"), ("tau3", "tau1"), ("tau4", "tau1"), ("tau4", "tau2"),
               ("tau4", "tau3")):
        return commutation_predicted(b, a)
    p, q = a.params, b.params
    if key == ("tau1", "tau2"):
        return q[0] == -p[0]
    if key == ("tau1", "tau3"):
        return False
    if key == ("tau1", "tau4"):
        return q[1] == -p[1]
    if key == ("tau2", "tau4"):
        return q[0] == -p[1] - p[0] * q[1] / 2
    if key == ("tau3", "tau3"):
        if p == q:
            return True
        return q[0] == -p[0] and q[1] == -p[1]
    if key == ("tau3", "tau4"):
        a1, a2, a6 = p
        a5, a6p = q
        return a2 * a5 + 2 * a6 == (a1 - 1) * a6p
    raise ValueError(f"no commutation criterion for {key}")
