"""Command-line front end: JSON in, JSON reports out.

Exit codes: 0 ok, 1 domain error or failed verdict, 2 malformed input.
"""

from __future__ import annotations

import os
import sys

import click

from . import serialize as ser
from .conjugation import conjugator_gamma7_to_gamma8, find_conjugator
from .errors import DegenerateMetric, HeisError, MalformedInput
from .families import classify_automorphism
from .gradings import canonical_z22_grading, grading_from_subgroup
from .groups import (build_gamma5, build_gamma6k, build_gamma7, build_gamma8, build_sigma3,
                     build_subgroup, DEFAULT_ELEMENT_BOUND)
from .metrics import canonical_reduce, check_adaptation, curvature, is_flat, sectional
from .scalars import DEFAULT_TOL, parse_scalar
from .verify import DEFAULT_SAMPLES, DEFAULT_SEED, SUITE_NAMES, run_suite

COMMANDS = ("classify-aut", "build-subgroup", "grade", "conjugate", "check-metric",
            "reduce-metric", "curvature", "verify-paper")

NAMED_GROUPS = {
    "gamma7": (build_gamma7, ("a3", "a5", "a6")),
    "gamma8": (build_gamma8, ("a1", "a2", "a6", "a6p")),
    "gamma5": (build_gamma5, ("a2", "a3", "a5", "a6")),
    "gamma6k": (build_gamma6k, ("k", "a2", "a3", "a5", "a6")),
    "sigma3": (build_sigma3, ("alpha",)),
}


def default_mode() -> str:
    return os.environ.get("HEISGAMMA_MODE", "exact")


def _field(doc, key):
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInput(f"missing field {key!r}")
    return doc[key]


def _params(doc, names) -> list:
    params = doc.get("params", {})
    if not isinstance(params, dict) or set(params) != set(names):
        raise MalformedInput(f"expected parameters {list(names)}")
    out = []
    for n in names:
        if n == "k":
            if not isinstance(params[n], int) or isinstance(params[n], bool):
                raise MalformedInput("k must be an integer")
            out.append(params[n])
        else:
            out.append(parse_scalar(params[n], "exact"))
    return out


def parse_subgroup(doc, mode: str, tol: float):
    if not isinstance(doc, dict):
        raise MalformedInput("a subgroup is given by \"generators\" or \"named\"")
    if "named" in doc:
        entry = NAMED_GROUPS.get(doc["named"])
        if entry is None:
            raise MalformedInput(f"unknown group {doc['named']!r}")
        builder, names = entry
        args = _params(doc, names)
        if builder is build_sigma3:
            return builder(*args)
        if builder is build_gamma6k:
            return builder(*args, mode=None if mode == "exact" else mode, tol=tol)
        return builder(*args, mode=mode, tol=tol)
    gens = _field(doc, "generators")
    if not isinstance(gens, list):
        raise MalformedInput("\"generators\" must be a list")
    bound = doc.get("bound", DEFAULT_ELEMENT_BOUND)
    if not isinstance(bound, int) or bound < 1:
        raise MalformedInput("\"bound\" must be a positive integer")
    autos = [ser.automorphism_from_json(g, mode, tol) for g in gens]
    return build_subgroup(autos, bound=bound, tol=tol, mode=mode)


def parse_grading(doc, mode: str, tol: float):
    choice = doc.get("grading", "canonical") if isinstance(doc, dict) else None
    if choice == "canonical":
        return canonical_z22_grading()
    return grading_from_subgroup(parse_subgroup(choice, mode, tol), tol=tol)


# ---------------------------------------------------------------------
# commands

def _classify(doc, mode, tol, opts):
    tau = ser.automorphism_from_json(doc, mode, tol)
    tag, order = classify_automorphism(tau, tol=tol)
    out = ser.tag_to_json(tag) if tag is not None else {"family": None}
    out["order"] = order
    return out


def _build(doc, mode, tol, opts):
    return ser.subgroup_to_json(parse_subgroup(doc, mode, tol))


def _grade(doc, mode, tol, opts):
    group = parse_subgroup(doc.get("subgroup", doc) if isinstance(doc, dict) else doc, mode, tol)
    out = ser.grading_to_json(grading_from_subgroup(group, tol=tol))
    out["type"] = group.type_label
    return out


def _conjugate(doc, mode, tol, opts):
    if isinstance(doc, dict) and "gamma7" in doc:
        p7 = _params({"params": _field(doc, "gamma7")}, ("a3", "a5", "a6"))
        p8 = _params({"params": _field(doc, "gamma8")}, ("a1", "a2", "a6", "a6p"))
        method = doc.get("method", "auto")
        if method not in ("auto", "solver", "closed-form"):
            raise MalformedInput(f"unknown method {method!r}")
        sigma = conjugator_gamma7_to_gamma8(p7, p8, method=method, tol=tol)
    else:
        source = parse_subgroup(_field(doc, "source"), mode, tol)
        target = parse_subgroup(_field(doc, "target"), mode, tol)
        sigma = find_conjugator(source, target, tol)
    return {"sigma": ser.matrix_to_json(sigma.matrix), "delta": ser.scalar_to_json(sigma.delta),
            "verified": True}


def _check_metric(doc, mode, tol, opts):
    g = ser.form_from_json(doc, mode)
    report = check_adaptation(g, parse_grading(doc, mode, tol), tol)
    out = ser.report_to_json(report)
    out["class"] = report.classification
    try:
        out["flat"] = is_flat(g, tol)
    except DegenerateMetric:
        out["flat"] = None
    return out


def _reduce_metric(doc, mode, tol, opts):
    g = ser.form_from_json(doc, mode)
    form, sigma, cls = canonical_reduce(g, parse_grading(doc, mode, tol), tol)
    out = ser.canonical_class_to_json(cls)
    out["class"] = cls.kind
    out["sigma"] = ser.matrix_to_json(sigma.matrix)
    out["normal_form"] = ser.form_to_json(form)
    return out


def _curvature(doc, mode, tol, opts):
    g = ser.form_from_json(doc, mode)
    R = curvature(g, tol=tol)
    out = {"flat": not R.nonzero(tol), "components": ser.curvature_to_json(R, tol)}
    planes = doc.get("planes", []) if isinstance(doc, dict) else []
    if not isinstance(planes, list):
        raise MalformedInput("\"planes\" must be a list of vector pairs")
    values = []
    for plane in planes:
        if not (isinstance(plane, list) and len(plane) == 2):
            raise MalformedInput("a plane is a pair of vectors")
        u, v = (ser.vector_from_json(x, mode) for x in plane)
        values.append(ser.scalar_to_json(sectional(g, u, v, tol)))
    if planes:
        out["sectional"] = values
    return out


def _verify(doc, mode, tol, opts):
    suite = opts.get("suite") or (doc.get("suite") if isinstance(doc, dict) else None) or "all"
    if suite not in SUITE_NAMES:
        raise MalformedInput(f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}")
    seed = opts.get("seed", DEFAULT_SEED)
    samples = opts.get("samples", DEFAULT_SAMPLES)
    verdicts = run_suite(suite, seed, samples)
    return {"suite": suite, "seed": seed, "samples": samples,
            "checks": [v.as_dict() for v in verdicts],
            "all_passed": all(v.passed for v in verdicts)}


HANDLERS = {
    "classify-aut": _classify,
    "build-subgroup": _build,
    "grade": _grade,
    "conjugate": _conjugate,
    "check-metric": _check_metric,
    "reduce-metric": _reduce_metric,
    "curvature": _curvature,
    "verify-paper": _verify,
}


def run_job(command: str, doc, mode: str | None = None, tol: float | None = None,
            **opts) -> tuple[dict, int]:
    """Evaluate one job; returns ``(report, exit_code)`` and never raises domain errors."""
    mode = mode or default_mode()
    tol = DEFAULT_TOL if tol is None else tol
    report = {"schema": ser.SCHEMA, "command": command, "mode": mode}
    try:
        if command not in HANDLERS:
            raise MalformedInput(f"unknown command {command!r}")
        if mode not in ("exact", "approx"):
            raise MalformedInput(f"unknown mode {mode!r}")
        result = HANDLERS[command](doc, mode, tol, opts)
    except MalformedInput as exc:
        return _error(report, exc.name, str(exc)), 2
    except HeisError as exc:
        return _error(report, exc.name, str(exc)), 1
    except (ValueError, TypeError, KeyError) as exc:
        return _error(report, "MalformedInput", str(exc)), 2
    except ZeroDivisionError as exc:
        return _error(report, "DivisionByZero", str(exc)), 1
    report.update(status="ok", result=result)
    code = 1 if command == "verify-paper" and not result["all_passed"] else 0
    return report, code


def _error(report: dict, name: str, message: str) -> dict:
    report.update(status="error", error={"name": name, "message": message})
    return report


def run_batch(lines, mode: str | None = None, tol: float | None = None, **opts):
    """One report per non-blank NDJSON line, in input order."""
    for line in lines:
        if not line.strip():
            continue
        try:
            job = ser.loads(line)
            if not isinstance(job, dict) or "command" not in job:
                raise MalformedInput("each job needs a \"command\" field")
        except MalformedInput as exc:
            yield _error({"schema": ser.SCHEMA, "command": None, "mode": mode or default_mode()},
                         exc.name, str(exc)), 2
            continue
        job_opts = dict(opts)
        for key in ("suite", "seed", "samples"):
            if key in job:
                job_opts[key] = job[key]
        yield run_job(job["command"], job.get("input", {}), job.get("mode", mode),
                      job.get("tolerance", tol), **job_opts)


# ---------------------------------------------------------------------
# click surface

def _read_input(path: str | None):
    if path is None or path == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    return ser.loads(text) if text.strip() else {}


def _emit(text: str, output: str | None) -> None:
    if output is None or output in ("-", "stdout"):
        click.echo(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _common(f):
    f = click.option("--output", "-o", default=None, help="Output path (default stdout).")(f)
    f = click.option("--input", "-i", "input_path", default=None,
                     help="Input JSON path, or - for stdin.")(f)
    f = click.option("--tolerance", type=float, default=None, help="Approximate comparison tolerance.")(f)
    f = click.option("--mode", type=click.Choice(["exact", "approx"]), default=None,
                     help="Scalar mode (default exact, or $HEISGAMMA_MODE).")(f)
    return f


@click.group()
def main():
    """Finite-order automorphisms, gradings and adapted metrics of the Heisenberg algebra."""


def _make_command(name: str):
    @_common
    def command(mode, tolerance, input_path, output):
        try:
            doc = _read_input(input_path)
        except MalformedInput as exc:
            report, code = _error({"schema": ser.SCHEMA, "command": name, "mode": mode or default_mode()},
                                  exc.name, str(exc)), 2
        else:
            report, code = run_job(name, doc, mode, tolerance)
        _emit(ser.dumps(report), output)
        sys.exit(code)

    command.__name__ = name.replace("-", "_")
    return main.command(name, help=f"Run {name} on a JSON input document.")(command)


for _name in COMMANDS[:-1]:
    _make_command(_name)


@main.command("verify-paper")
@click.option("--suite", type=click.Choice(SUITE_NAMES), default="all", show_default=True)
@click.option("--seed", type=int, default=DEFAULT_SEED, show_default=True)
@click.option("--samples", type=int, default=DEFAULT_SAMPLES, show_default=True)
@click.option("--mode", type=click.Choice(["exact", "approx"]), default=None)
@click.option("--tolerance", type=float, default=None)
@click.option("--output", "-o", default=None)
def verify_paper(suite, seed, samples, mode, tolerance, output):
    """Run a seeded verification suite and report one verdict per named check."""
    report, code = run_job("verify-paper", {}, mode, tolerance, suite=suite, seed=seed,
                           samples=samples)
    _emit(ser.dumps(report), output)
    sys.exit(code)


@main.command("batch")
@click.option("--input", "-i", "input_path", default=None, help="NDJSON job file, or - for stdin.")
@click.option("--output", "-o", default=None)
@click.option("--mode", type=click.Choice(["exact", "approx"]), default=None)
@click.option("--tolerance", type=float, default=None)
@click.option("--seed", type=int, default=DEFAULT_SEED)
@click.option("--samples", type=int, default=DEFAULT_SAMPLES)
def batch(input_path, output, mode, tolerance, seed, samples):
    """Evaluate newline-delimited jobs; one report line per job, in order."""
    if input_path is None or input_path == "-":
        lines = sys.stdin.read().splitlines()
    else:
        with open(input_path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    worst = 0
    out = []
    for report, code in run_batch(lines, mode, tolerance, seed=seed, samples=samples):
        out.append(ser.dumps(report))
        worst = max(worst, code)
    text = "\n".join(out)
    if out:
        _emit(text, output)
    elif output not in (None, "-", "stdout"):
        open(output, "w").close()
    sys.exit(worst)


if __name__ == "__main__":
    main()
