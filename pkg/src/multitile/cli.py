"""Command-line frontend.

Subcommands decide tiling, dump invariant reports, decide and construct
equidecompositions, run the sampling and transform oracles, apply the
dimension-specific criteria, and render a static SVG for planar inputs.

Exit codes: 0 decided/verified, 1 negative verdict, 2 input error,
3 criterion hypothesis not met.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import criteria as crit
from . import decomp, documents, invariants, verify
from .errors import DocumentError, HypothesisNotMetError, MultitileError, NotEquidecomposableError, NotZeroTilerError
from .geom import GroupElement, Polytope, volume
from .invariants import key_document
from .lattice import Lattice, det_lattice
from .plot import render_tiling_svg

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3


@dataclass
class JobConfig:
    command: str
    inputs: list[str]
    seed: int = 0
    samples: int = 10_000
    radius: int = 5
    tol: float = 1e-20
    precision: int = 50
    jobs: int = 1
    out: str | None = None
    skip_validation: bool = False
    output: str = "json"
    method: str | None = None
    relaxed: bool = False


def _load(path: str, validate: bool):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(path, f"cannot read file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(path, f"malformed JSON: {exc}") from None
    return documents.parse_document(doc, path=path, validate=validate)


def _load_element(path: str, validate: bool) -> GroupElement:
    obj = _load(path, validate)
    if isinstance(obj, Polytope):
        return obj.as_element()
    if isinstance(obj, GroupElement):
        return obj
    raise DocumentError(path, "expected a polytope or group element document")


def _load_polytope(path: str, validate: bool) -> Polytope:
    obj = _load(path, validate)
    if not isinstance(obj, Polytope):
        raise DocumentError(path, "expected a polytope document")
    return obj


def _load_lattice(path: str) -> Lattice:
    obj = _load(path, True)
    if not isinstance(obj, Lattice):
        raise DocumentError(path, "expected a lattice document")
    return obj


def _cmd_tiles(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    verdict = invariants.is_tiling(p, l)
    doc = {"command": "tiles", "tiles": verdict.tiles,
           "volume": str(volume(p)), "lattice_det": str(det_lattice(l))}
    if verdict.tiles:
        doc["level"] = verdict.level
        return EXIT_OK, doc
    doc["witness"] = key_document(verdict.witness)
    return EXIT_NEGATIVE, doc


def _cmd_invariants(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    report = invariants.hadwiger_accumulate(p, l)
    entries = [{"key": key_document(k), "value": str(v)}
               for k, v in report.items_sorted()]
    return EXIT_OK, {"command": "invariants", "dim": report.dim,
                     "count": len(entries), "entries": entries}


def _cmd_equidecomposable(cfg: JobConfig):
    validate = not cfg.skip_validation
    a = _load_polytope(cfg.inputs[0], validate)
    b = _load_polytope(cfg.inputs[1], validate)
    l = _load_lattice(cfg.inputs[2])
    doc = {"command": "equidecomposable",
           "volume_a": str(volume(a)), "volume_b": str(volume(b))}
    if volume(a) != volume(b):
        doc["equidecomposable"] = False
        doc["reason"] = "volumes differ"
        return EXIT_NEGATIVE, doc
    report = invariants.hadwiger_accumulate(a.as_element() - b.as_element(), l)
    if report.is_zero():
        doc["equidecomposable"] = True
        return EXIT_OK, doc
    doc["equidecomposable"] = False
    doc["reason"] = "invariants differ"
    doc["witness"] = key_document(min(report.entries, key=invariants.key_sort_string))
    return EXIT_NEGATIVE, doc


def _cmd_decompose(cfg: JobConfig):
    validate = not cfg.skip_validation
    a = _load_polytope(cfg.inputs[0], validate)
    b = _load_polytope(cfg.inputs[1], validate)
    l = _load_lattice(cfg.inputs[2])
    try:
        cert = decomp.equidecompose(a, b, l)
    except NotEquidecomposableError as exc:
        doc = {"command": "decompose", "equidecomposable": False, "reason": exc.reason}
        if exc.witness is not None:
            doc["witness"] = key_document(exc.witness)
        return EXIT_NEGATIVE, doc
    doc = documents.certificate_doc(cert.pieces)
    doc["command"] = "decompose"
    doc["count"] = len(cert.pieces)
    return EXIT_OK, doc


def _cmd_represent_zero(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    try:
        moves = decomp.represent_zero_tiler(p, l)
    except NotZeroTilerError as exc:
        return EXIT_NEGATIVE, {"command": "represent-zero", "ok": False,
                               "reason": str(exc)}
    doc = documents.certificate_doc(moves)
    doc["command"] = "represent-zero"
    doc["count"] = len(moves)
    return EXIT_OK, doc


def _cmd_verify(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    report = verify.sample_tiling(p, l, cfg.samples, seed=cfg.seed)
    doc = {"command": "verify", "samples": report.samples,
           "resampled_boundary": report.resampled_boundary,
           "observed_levels": {str(k): v for k, v in sorted(report.observed_levels.items())},
           "constant": report.constant}
    if report.constant:
        doc["level"] = report.level
        return EXIT_OK, doc
    doc["failures"] = len(report.failures)
    return EXIT_NEGATIVE, doc


def _cmd_fourier(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    report = _fourier_parallel(p, l, cfg)
    doc = {"command": "fourier", "radius": cfg.radius, "tol": report.tol,
           "precision_digits": cfg.precision,
           "frequencies_tested": len(report.frequencies),
           "max_abs": report.max_abs, "pass": report.passed}
    return (EXIT_OK if report.passed else EXIT_NEGATIVE), doc


def _fourier_worker(args):
    element_doc, freq_chunk, dps = args
    p = documents.parse_element(element_doc, validate=False)
    acc = 0.0
    for freq in freq_chunk:
        xi = tuple(Fraction(c) for c in freq)
        acc = max(acc, float(abs(verify.fourier_transform(p, xi, dps=dps))))
    return acc


def _fourier_parallel(p: GroupElement, l: Lattice, cfg: JobConfig):
    if cfg.jobs <= 1:
        return verify.fourier_check(p, l, radius=cfg.radius, tol=cfg.tol,
                                    dps=cfg.precision)
    import itertools
    from concurrent.futures import ProcessPoolExecutor

    from .lattice import dual_basis

    dual = dual_basis(l)
    freqs = []
    half = []
    for coeffs in itertools.product(range(-cfg.radius, cfg.radius + 1), repeat=l.dim):
        if not any(coeffs):
            continue
        xi = dual.from_coords(tuple(Fraction(c) for c in coeffs))
        freqs.append(xi)
        # |transform(-xi)| = |transform(xi)|: evaluate one of each pair.
        if next(c for c in coeffs if c != 0) > 0:
            half.append(xi)
    chunks = [half[i::cfg.jobs] for i in range(cfg.jobs)]
    pdoc = documents.element_doc(p)
    payloads = [(pdoc, [[str(x) for x in f] for f in chunk], cfg.precision)
                for chunk in chunks if chunk]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        max_abs = max(pool.map(_fourier_worker, payloads), default=0.0)
    return verify.FourierReport(frequencies=freqs, max_abs=max_abs, tol=cfg.tol,
                                passed=max_abs <= cfg.tol)


def _cmd_criteria(cfg: JobConfig):
    p = _load_polytope(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    checks: list[dict] = []
    method = cfg.method
    if method == "1d":
        level = crit.tiles_1d(crit.IntervalSet.from_polytope(p), l, checks=checks)
    elif method == "bolle":
        polygon = crit.ConvexPolygon.from_points(
            [v for s in p.simplices for v in s.vertices])
        if polygon.area() != volume(p):
            raise DocumentError(cfg.inputs[0], "bolle requires a convex polygon")
        level = crit.bolle(polygon, l, checks=checks)
    elif method == "kol":
        level = crit.kolountzakis(p, l, checks=checks)
    elif method == "frames3d":
        poly3 = crit.ConvexPolytope3.from_points(
            [v for s in p.simplices for v in s.vertices])
        if poly3.volume() != volume(p):
            raise DocumentError(cfg.inputs[0], "frames3d requires a convex polytope")
        level = crit.frames_3d(poly3, l, checks=checks)
    elif method == "grs":
        level = crit.grs_sufficient(p, l, relaxed=cfg.relaxed, checks=checks)
    else:
        raise DocumentError("--method", f"unknown method {method!r}")
    doc = {"command": "criteria", "method": method, "tiles": level is not None,
           "diagnostics": checks}
    if level is not None:
        doc["level"] = level
        return EXIT_OK, doc
    return EXIT_NEGATIVE, doc


def _cmd_plot(cfg: JobConfig):
    p = _load_element(cfg.inputs[0], not cfg.skip_validation)
    l = _load_lattice(cfg.inputs[1])
    if cfg.out is None:
        raise DocumentError("--out", "plot requires an output path")
    svg = render_tiling_svg(p, l)
    with open(cfg.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    return EXIT_OK, {"command": "plot", "out": cfg.out, "bytes": len(svg)}


_COMMANDS = {
    "tiles": _cmd_tiles,
    "invariants": _cmd_invariants,
    "equidecomposable": _cmd_equidecomposable,
    "decompose": _cmd_decompose,
    "represent-zero": _cmd_represent_zero,
    "verify": _cmd_verify,
    "fourier": _cmd_fourier,
    "criteria": _cmd_criteria,
    "plot": _cmd_plot,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multitile",
        description="Exact decisions for lattice multi-tiling and equidecomposability")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "tiles": ("P L", "decide whether P tiles along L"),
        "invariants": ("P L", "accumulate the per-orbit invariant report"),
        "equidecomposable": ("A B L", "decide equidecomposability of A and B"),
        "decompose": ("A B L", "construct an equidecomposition certificate"),
        "represent-zero": ("P L", "write a level-zero element as translate pairs"),
        "verify": ("P L", "sampling oracle for the covering multiplicity"),
        "fourier": ("P L", "transform oracle on the dual lattice"),
        "criteria": ("P L", "dimension-specific criteria"),
        "plot": ("P L", "render a static SVG (dimension 2)"),
    }
    for name, (args_spec, help_text) in specs.items():
        sp = sub.add_parser(name, help=help_text)
        for arg in args_spec.split():
            sp.add_argument(arg.lower(), metavar=arg)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=10_000)
        sp.add_argument("--radius", type=int, default=5)
        sp.add_argument("--tol", type=float, default=1e-20)
        sp.add_argument("--precision", type=int, default=50,
                        help="significant digits for the transform oracle")
        sp.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for the transform grid")
        sp.add_argument("--skip-validation", action="store_true",
                        help="trust input polytopes, skip disjointness checks")
        sp.add_argument("--output", choices=("json", "pretty"), default="json")
        sp.add_argument("--out", default=None,
                        help="write the report (or SVG for plot) to this path")
        if name == "criteria":
            sp.add_argument("--method", required=True,
                            choices=("1d", "bolle", "kol", "frames3d", "grs"))
            sp.add_argument("--relaxed", action="store_true",
                            help="grs: require facet carrying vectors in L "
                                 "instead of all vertices")
    return parser


def _execute(ns) -> tuple[int, dict]:
    handler = _COMMANDS[ns.command]
    inputs = [getattr(ns, k) for k in ("p", "a", "b", "l") if hasattr(ns, k)]
    cfg = JobConfig(
        command=ns.command,
        inputs=inputs,
        seed=ns.seed,
        samples=ns.samples,
        radius=ns.radius,
        tol=ns.tol,
        precision=ns.precision,
        jobs=ns.jobs,
        out=ns.out,
        skip_validation=ns.skip_validation,
        output=ns.output,
        method=getattr(ns, "method", None),
        relaxed=getattr(ns, "relaxed", False),
    )
    try:
        return handler(cfg)
    except DocumentError as exc:
        return EXIT_INPUT, {"error": str(exc)}
    except HypothesisNotMetError as exc:
        return EXIT_HYPOTHESIS, {"error": str(exc), "hypothesis_met": False}
    except MultitileError as exc:
        return EXIT_INPUT, {"error": str(exc)}


def run(argv) -> tuple[int, dict]:
    """Execute one command; returns (exit code, report document)."""
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return (EXIT_INPUT if exc.code else EXIT_OK), {"error": "argument parsing failed"}
    return _execute(ns)


def format_report(doc: dict, mode: str) -> str:
    if mode == "pretty":
        lines = []
        for key in sorted(doc):
            lines.append(f"{key}: {json.dumps(doc[key], sort_keys=True)}")
        return "\n".join(lines)
    return json.dumps(doc, sort_keys=True, indent=2)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        ns = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    code, doc = _execute(ns)
    text = format_report(doc, ns.output)
    if ns.out and ns.command != "plot":
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
