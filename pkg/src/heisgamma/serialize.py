"""JSON encoding of scalars, matrices, subgroups, gradings and metric reports.

Scalars travel as strings in the scalar text grammar so exact values
round-trip bit-exactly.  Dumps use sorted keys for byte-stable output.
"""

from __future__ import annotations

import json

from .errors import MalformedInput
from .families import PARAM_NAMES, FamilyTag, make_family
from .gradings import Grading
from .groups import AutSubgroup
from .heis import Automorphism, make_automorphism
from .linalg import Mat3
from .metrics import AdaptationReport, BilinearForm, CanonicalClass, CurvatureTable
from .scalars import DEFAULT_TOL, format_scalar, parse_scalar

SCHEMA = "heisgamma.report/1"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg} at position {exc.pos}") from exc


def scalar_to_json(x) -> str:
    return format_scalar(x)


def scalar_from_json(value, mode: str = "exact"):
    return parse_scalar(value, mode)


def vector_to_json(v) -> list:
    return [format_scalar(x) for x in v]


def vector_from_json(obj, mode: str = "exact") -> tuple:
    if not isinstance(obj, list) or len(obj) != 3:
        raise MalformedInput("a vector is a list of three scalars")
    return tuple(parse_scalar(x, mode) for x in obj)


def matrix_to_json(M: Mat3) -> list:
    return [[format_scalar(x) for x in row] for row in M.rows]


def matrix_from_json(obj, mode: str = "exact") -> Mat3:
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise MalformedInput("expected {\"matrix\": [[...], [...], [...]]}")
        obj = obj["matrix"]
    if not (isinstance(obj, list) and len(obj) == 3
            and all(isinstance(r, list) and len(r) == 3 for r in obj)):
        raise MalformedInput("a matrix is three rows of three scalars")
    return Mat3([[parse_scalar(x, mode) for x in row] for row in obj])


def automorphism_to_json(tau: Automorphism) -> dict:
    return {"matrix": matrix_to_json(tau.matrix)}


def tag_to_json(tag: FamilyTag) -> dict:
    out = {"family": tag.family,
           "params": {k: format_scalar(v) for k, v in tag.named_params.items()}}
    if tag.k is not None:
        out["k"] = tag.k
    return out


def tag_from_json(obj, mode: str = "exact") -> FamilyTag:
    if not isinstance(obj, dict) or "family" not in obj:
        raise MalformedInput("a family tag needs a \"family\" field")
    family = obj["family"]
    names = PARAM_NAMES.get(family)
    if names is None:
        raise MalformedInput(f"unknown family {family!r}")
    params = obj.get("params", {})
    if not isinstance(params, dict) or set(params) != set(names):
        raise MalformedInput(f"{family} takes parameters {list(names)}")
    k = obj.get("k")
    if family == "tau6" and not isinstance(k, int):
        raise MalformedInput("tau6 needs an integer k")
    # tags hold exact parameters; approximate mode applies when the matrix is built
    return FamilyTag(family, tuple(parse_scalar(params[n], "exact") for n in names), k)


def automorphism_from_json(obj, mode: str = "exact", tol: float = DEFAULT_TOL) -> Automorphism:
    """Accept ``{"matrix": ...}``, a bare nested list, or a family tag."""
    if isinstance(obj, dict) and "family" in obj:
        return make_family(tag_from_json(obj), mode, tol)
    return make_automorphism(matrix_from_json(obj, mode), tol)


def subgroup_to_json(group: AutSubgroup) -> dict:
    return {
        "elements": [matrix_to_json(e.matrix) for e in group.elements],
        "type": group.type_label,
        "order": group.order,
        "abelian": group.is_abelian(),
        "order_profile": group.order_profile(),
        "table": [list(r) for r in group.table],
    }


def grading_to_json(grading: Grading) -> dict:
    return {
        "labels": list(grading.labels),
        "components": {lab: [vector_to_json(v) for v in basis] for lab, basis in grading.components},
        "identity": grading.identity_label,
    }


def form_to_json(g: BilinearForm) -> dict:
    return {"metric": matrix_to_json(g.matrix), "basis": "omega"}


def form_from_json(obj, mode: str = "exact") -> BilinearForm:
    if isinstance(obj, dict):
        basis = obj.get("basis", "omega")
        if basis != "omega":
            raise MalformedInput(f"unsupported basis {basis!r}")
        if "metric" not in obj:
            raise MalformedInput("expected a \"metric\" field")
        obj = obj["metric"]
    M = matrix_from_json(obj, mode)
    if not M.is_symmetric(0.0 if M.is_exact else DEFAULT_TOL):
        raise MalformedInput("metric matrix must be symmetric")
    return BilinearForm(M)


def report_to_json(report: AdaptationReport) -> dict:
    return {
        "classification": report.classification,
        "restrictions": {lab: [[format_scalar(x) for x in row] for row in m]
                         for lab, m in report.restrictions.items()},
        "inertias": {lab: list(v) for lab, v in report.inertias.items()},
        "orthogonal": dict(report.orthogonal),
        "total_signature": list(report.total_signature),
        "degenerate_label": report.degenerate_label,
        "qualifying_partners": list(report.qualifying_partners),
        "pairing_rule": report.pairing_rule,
        "reasons": list(report.reasons),
    }


def canonical_class_to_json(c: CanonicalClass) -> dict:
    return {
        "kind": c.kind,
        "lambda_sq": None if c.lam_sq is None else format_scalar(c.lam_sq),
        "lambda": None if c.lam is None else format_scalar(c.lam),
    }


def curvature_to_json(R: CurvatureTable, tol: float = DEFAULT_TOL) -> list:
    """Sparse nonzero components; indices are 1-based to match X1, X2, X3."""
    return [{"i": i + 1, "j": j + 1, "k": k + 1, "l": l + 1, "value": format_scalar(v)}
            for i, j, k, l, v in R.nonzero(tol)]
