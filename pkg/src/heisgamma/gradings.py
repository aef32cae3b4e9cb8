"""Gradings of h3 induced by finite abelian subgroups of Aut(h3).

A grading is read off as the joint eigenspaces of a set of independent
generators.  Labels record the eigenvalue exponents relative to those
generators in construction order: for an order-two generator the exponent
is written ``+`` (eigenvalue 1) or ``-`` (eigenvalue -1), so a Z2xZ2
grading uses the labels ``++ +- -+ --``.  Higher orders use comma-joined
exponents ``e`` for ``exp(2 pi i e / n)`` and are computed in approximate
complex arithmetic.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import GradingAxiomViolated, NotAbelian, NotSimultaneouslyDiagonalizable
from .groups import AutSubgroup
from .heis import Automorphism, bracket
from .linalg import in_span, nullspace, rank, rref, vec_is_zero
from .scalars import DEFAULT_TOL, is_zero


@dataclass(frozen=True)
class Grading:
    labels: tuple                 # every label, identity first
    components: tuple             # (label, basis tuple) pairs, same order as labels
    generator_orders: tuple
    identity_label: str
    exact: bool

    def component(self, label: str) -> tuple:
        return dict(self.components)[label]

    def as_dict(self) -> dict:
        return dict(self.components)

    @property
    def identity_trivial(self) -> bool:
        return not self.component(self.identity_label)

    def nonzero_labels(self) -> list[str]:
        return [lab for lab, basis in self.components if basis]

    def label_of(self, v, tol: float = DEFAULT_TOL) -> str | None:
        """Label of the component containing ``v`` (``None`` if not homogeneous)."""
        for lab, basis in self.components:
            if basis and in_span(v, basis, tol):
                return lab
        return None

    def multiply(self, a: str, b: str) -> str:
        ea, eb = decode_label(a, self.generator_orders), decode_label(b, self.generator_orders)
        return encode_label(tuple((x + y) % n for x, y, n in zip(ea, eb, self.generator_orders)),
                            self.generator_orders)


def encode_label(exps: tuple, orders: tuple) -> str:
    if all(n == 2 for n in orders):
        return "".join("+" if e == 0 else "-" for e in exps)
    return ",".join(str(e) for e in exps)


def decode_label(label: str, orders: tuple) -> tuple:
    if all(n == 2 for n in orders):
        return tuple(0 if ch == "+" else 1 for ch in label)
    return tuple(int(x) for x in label.split(","))


def _eigenvalue(e: int, n: int):
    if n <= 2:
        return Fraction(1) if e == 0 else Fraction(-1)
    return cmath.exp(2j * cmath.pi * e / n)


def independent_generators(group: AutSubgroup, tol: float = DEFAULT_TOL) -> list[int]:
    """Indices of a subset of the generators whose cyclic groups form a direct product."""
    chosen: list[int] = []
    span = {0}
    for idx in group.generator_indices(tol):
        if idx in span or idx is None:
            continue
        k = group.element_order(idx)
        powers = [0]
        for _ in range(k - 1):
            powers.append(group.table[powers[-1]][idx])
        if any(p in span for p in powers[1:]):
            continue  # shares a nontrivial subgroup with the generators already chosen
        chosen.append(idx)
        span = {group.table[a][b] for a in span for b in powers}
    return chosen


def _canonical_basis(vectors, tol):
    if not vectors:
        return ()
    if len(vectors) == 1:
        v = vectors[0]
        lead = next(x for x in v if not is_zero(x, tol))
        return (tuple(x / lead for x in v),)
    rows, piv = rref(vectors, tol)
    return tuple(tuple(r) for r in rows[: len(piv)])


def joint_eigenspaces(matrices, orders, tol: float = DEFAULT_TOL) -> list[tuple[tuple, tuple]]:
    """``[(exponents, basis), ...]`` over all exponent tuples."""
    complex_mode = any(n > 2 for n in orders)
    if complex_mode:
        mats = [[[complex(x) for x in row] for row in M.rows] for M in matrices]
    else:
        mats = [[list(row) for row in M.rows] for M in matrices]
    out = []
    for exps in itertools.product(*(range(n) for n in orders)):
        rows = []
        for M, e, n in zip(mats, exps, orders):
            lam = _eigenvalue(e, n)
            rows.extend([[M[i][j] - (lam if i == j else 0) for j in range(3)] for i in range(3)])
        out.append((exps, _canonical_basis(nullspace(rows, tol), tol)))
    return out


def grading_from_subgroup(group: AutSubgroup, generators=None,
                          tol: float = DEFAULT_TOL) -> Grading:
    """Joint eigenspace grading of an abelian subgroup.

    ``generators`` (automorphisms) overrides the generator choice and the
    label order; by default the subgroup's own generators are used.
    """
    if not group.is_abelian():
        raise NotAbelian("gradings need an abelian group")
    if generators is None:
        gens = [group.elements[i] for i in independent_generators(group, tol)]
    else:
        gens = list(generators)
    if not gens:  # trivial group: everything sits in the identity component
        basis = ((Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0)),
                 (Fraction(0), Fraction(0), Fraction(1)))
        return Grading(("",), (("", basis),), (), "", True)
    orders = tuple(group.element_order(group.index_of(g, tol)) for g in gens)
    spaces = joint_eigenspaces([g.matrix for g in gens], orders, tol)
    labels = tuple(encode_label(e, orders) for e, _ in spaces)
    components = tuple((lab, basis) for lab, (_, basis) in zip(labels, spaces))
    grading = Grading(labels, components, orders, labels[0], all(n <= 2 for n in orders))
    verify_grading(grading, tol)
    return grading


def verify_grading(grading: Grading, tol: float = DEFAULT_TOL) -> None:
    """Direct-sum and bracket-compatibility checks; raises on failure."""
    vectors = [v for _, basis in grading.components for v in basis]
    if len(vectors) != 3 or rank(vectors, tol) != 3:
        raise NotSimultaneouslyDiagonalizable(
            f"joint eigenspaces span dimension {rank(vectors, tol) if vectors else 0}, not 3")
    comps = grading.as_dict()
    for a, b in itertools.product(grading.labels, repeat=2):
        target = comps[grading.multiply(a, b)]
        for u in comps[a]:
            for v in comps[b]:
                w = bracket(u, v)
                if not (vec_is_zero(w, tol) or in_span(w, target, tol)):
                    raise GradingAxiomViolated(f"[g_{a}, g_{b}] is not inside g_{grading.multiply(a, b)}")


def grading_from_automorphisms(automorphisms, tol: float = DEFAULT_TOL) -> Grading:
    from .groups import build_subgroup

    return grading_from_subgroup(build_subgroup(automorphisms, tol=tol), tol=tol)


def transport_grading(grading: Grading, sigma: Automorphism, tol: float = DEFAULT_TOL) -> Grading:
    """Push every component forward by ``sigma``."""
    comps = tuple((lab, _canonical_basis([sigma(v) for v in basis], tol))
                  for lab, basis in grading.components)
    return Grading(grading.labels, comps, grading.generator_orders, grading.identity_label,
                   grading.exact)


def same_grading(a: Grading, b: Grading, tol: float = DEFAULT_TOL) -> bool:
    """Componentwise equality of two gradings with the same labels."""
    if a.labels != b.labels:
        return False
    da, db = a.as_dict(), b.as_dict()
    for lab in a.labels:
        U, V = da[lab], db[lab]
        if len(U) != len(V):
            return False
        if U and rank(list(U) + list(V), tol) != len(U):
            return False
    return True


def canonical_z22_grading() -> Grading:
    """The grading of the normal form group {Id, tau1(0,0), tau2(0,0), tau4(0,0)}."""
    from .groups import build_gamma7

    return grading_from_subgroup(build_gamma7(0, 0, 0))
