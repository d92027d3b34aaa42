"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 usage/parse error (including
requests for embeddings known not to exist), 3 search budget exhausted,
4 prediction only (no generator for the requested family instance).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .css_code import (
    DEFAULT_CAP,
    CssCode,
    face_edge_matrix,
    min_distance,
    vertex_edge_matrix,
)
from .errors import BudgetExhausted, EmbedkitError, FormatError, NonexistenceError, OrthogonalityError, ValidationError
from .gf2 import gf2_rank
from .scheme_gen import Family, FamilySpec, face_oracle, predicted_params, scheme_k4r1, build_k4s
from .search import FOUND, NONEXISTENT, search_self_dual_bipartite
from .surface_map import RotationSystem, SurfaceMap, is_self_dual, trace_faces
from .textio import format_matrix, format_params_line, format_rotation, read_matrix, read_rotation

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_PREDICTION_ONLY = 4

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class RunReport:
    command: str
    source: str
    fields: dict[str, object] = field(default_factory=dict)
    checks: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def check(self, name: str, ok: bool | None) -> None:
        self.checks[name] = SKIPPED if ok is None else (PASS if ok else FAIL)

    @property
    def failed(self) -> bool:
        return FAIL in self.checks.values()

    def render(self, fmt: str = "text") -> str:
        if fmt == "machine":
            payload = {
                "command": self.command,
                "input": self.source,
                **self.fields,
                "checks": self.checks,
                "notes": self.notes,
                "wall_time": round(self.wall_time, 6),
            }
            return json.dumps(payload, indent=2) + "\n"
        lines = [f"command: {self.command}", f"input: {self.source}"]
        lines += [f"{k}: {v}" for k, v in self.fields.items()]
        lines += [f"check {k}: {v}" for k, v in self.checks.items()]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"wall_time: {self.wall_time:.3f}s")
        return "\n".join(lines) + "\n"


def _map_stats(report: RunReport, m: SurfaceMap) -> None:
    report.fields.update(
        vertices=m.vertex_count,
        edges=m.num_edges,
        faces=m.num_faces,
        euler_characteristic=m.euler_char,
        genus=m.genus,
    )


def _analyse(report: RunReport, rot: RotationSystem, cap: int, with_oracle: bool = True) -> tuple[SurfaceMap, CssCode | None, int | None]:
    """Trace, check and build the code; fills ``report`` and returns (map, code, d)."""
    m = trace_faces(rot)
    _map_stats(report, m)
    h_x, h_z = vertex_edge_matrix(m), face_edge_matrix(m)
    try:
        code: CssCode | None = CssCode.from_matrices(h_x, h_z)
        report.check("orthogonality", True)
    except OrthogonalityError as exc:
        report.check("orthogonality", False)
        report.notes.append(f"vertex {exc.pair[0]} and face {exc.pair[1]} share an odd number of edges")
        code = None
    if code is not None:
        report.check("k_equals_2g", code.k == 2 * m.genus)
    else:
        report.check("k_equals_2g", None)
    duality = is_self_dual(m)
    report.check("self_dual", bool(duality))
    if not duality:
        report.notes.append(f"not self-dual: {duality.reason}")
    report.check("face_oracle", face_oracle(rot, m) if with_oracle else None)

    d = None
    if code is not None:
        if code.k == 0:
            report.fields["code"] = f"[[{code.n},0,-]]"
            report.notes.append("k = 0: distance undefined")
        else:
            result = min_distance(code, cap)
            code = code.with_distance(result)
            d = result.d
            report.fields["code"] = f"[[{code.n},{code.k},{result}]]"
            report.fields["distance"] = (
                f"{result.d} (certified at cap {cap})" if result.certified else f"> {cap} (not certified)"
            )
    return m, code, d


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("EMBEDKIT_THREADS", "1")))
    except ValueError:
        return 1


def cmd_generate(args: argparse.Namespace, report: RunReport) -> int:
    spec = FamilySpec.parse(args.spec)
    predicted = predicted_params(spec)
    report.fields["family"] = str(spec)
    report.fields["predicted"] = str(predicted)
    if spec.family is Family.CLASS_I:
        rot = scheme_k4r1(spec.params[0])
    elif spec.family is Family.CLASS_II:
        rot = build_k4s(4 * spec.params[0], budget=5040 if args.budget is None else args.budget).rotation
    elif spec.family is Family.CLASS_III and spec.params == (4, 4):
        outcome = search_self_dual_bipartite(4, 4, budget=args.budget, workers=_threads())
        report.fields["search_nodes"] = outcome.nodes
        if outcome.status != FOUND:
            report.notes.append(outcome.message)
            return EXIT_BUDGET
        rot = outcome.surface.rotation  # type: ignore[union-attr]
    else:
        report.notes.append(
            f"prediction only: no explicit construction for {spec}; supply a rotation file to 'verify'"
        )
        return EXIT_PREDICTION_ONLY

    Path(args.out).write_text(format_rotation(rot))
    report.fields["output"] = args.out
    m, code, d = _analyse(report, rot, args.cap)
    if code is not None:
        report.check("predicted_match", (code.n, code.k, d) == (predicted.n, predicted.k, predicted.d))
    else:
        report.check("predicted_match", False)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


def cmd_verify(args: argparse.Namespace, report: RunReport) -> int:
    rot = read_rotation(args.file)
    _analyse(report, rot, args.cap)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


def cmd_code(args: argparse.Namespace, report: RunReport) -> int:
    rot = read_rotation(args.file)
    m = trace_faces(rot)
    _map_stats(report, m)
    h_x, h_z = vertex_edge_matrix(m), face_edge_matrix(m)
    try:
        code = CssCode.from_matrices(h_x, h_z)
    except OrthogonalityError as exc:
        report.check("orthogonality", False)
        report.notes.append(str(exc))
        return EXIT_CHECK_FAILED
    report.check("orthogonality", True)
    report.check("k_equals_2g", code.k == 2 * m.genus)
    prefix = args.out
    outputs = {
        f"{prefix}_hx.gf2": format_matrix(h_x),
        f"{prefix}_hz.gf2": format_matrix(h_z),
        f"{prefix}.css": format_params_line(code.n, code.k, None, 0),
    }
    for path, text in outputs.items():
        Path(path).write_text(text)
    report.fields["code"] = code.params()
    report.fields["h_x"] = f"{h_x.rows}x{h_x.cols}"
    report.fields["h_z"] = f"{h_z.rows}x{h_z.cols}"
    report.fields["outputs"] = " ".join(outputs)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


def cmd_distance(args: argparse.Namespace, report: RunReport) -> int:
    h_x, h_z = read_matrix(args.hx), read_matrix(args.hz)
    try:
        code = CssCode.from_matrices(h_x, h_z)
    except OrthogonalityError as exc:
        report.check("orthogonality", False)
        report.notes.append(str(exc))
        return EXIT_CHECK_FAILED
    report.check("orthogonality", True)
    report.fields["rank_hx"] = gf2_rank(h_x)
    report.fields["rank_hz"] = gf2_rank(h_z)
    if code.k == 0:
        raise ValidationError("no logical operators (k = 0)")
    result = min_distance(code, args.cap, workers=_threads())
    report.fields["code"] = f"[[{code.n},{code.k},{result}]]"
    report.fields["distance"] = (
        f"{result.d} (certified at cap {args.cap})" if result.certified else f"> {args.cap} (not certified)"
    )
    if args.params_out:
        Path(args.params_out).write_text(format_params_line(code.n, code.k, result.d, args.cap))
        report.fields["output"] = args.params_out
    return EXIT_OK


def cmd_params(args: argparse.Namespace, out) -> int:
    specs = [FamilySpec.parse(s) for s in args.specs]
    if args.format == "machine":
        rows = []
        for spec in specs:
            p = predicted_params(spec)
            rows.append({"family": str(spec), "n": p.n, "k": p.k, "d": p.d})
        out.write(json.dumps(rows, indent=2) + "\n")
        return EXIT_OK
    out.write("n k d family\n")
    for spec in specs:
        p = predicted_params(spec)
        out.write(f"{p.n} {p.k} {p.d} {spec}\n")
    return EXIT_OK


def cmd_search(args: argparse.Namespace, report: RunReport) -> int:
    outcome = search_self_dual_bipartite(args.r, args.s, budget=args.budget, workers=_threads())
    report.fields["status"] = outcome.status
    report.fields["search_nodes"] = outcome.nodes
    if outcome.status == NONEXISTENT:
        raise NonexistenceError(outcome.message)
    if outcome.status != FOUND:
        report.notes.append(outcome.message)
        return EXIT_BUDGET
    rot = outcome.surface.rotation  # type: ignore[union-attr]
    if args.out:
        Path(args.out).write_text(format_rotation(rot))
        report.fields["output"] = args.out
    _analyse(report, rot, args.cap, with_oracle=False)
    return EXIT_CHECK_FAILED if report.failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")

    parser = argparse.ArgumentParser(
        prog="embedkit",
        description="Self-dual embeddings of complete graphs and the surface codes they define.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="write the rotation system of a family instance")
    p.add_argument("spec", help="class1:r=<int> | class2:s=<int> | class3:r=<int>,s=<int> | class4:r=<int>,s=<int>")
    p.add_argument("--out", required=True, help="rotation-system file to write")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum weight searched for the distance")
    p.add_argument("--budget", type=int, default=None, help="search budget (b-orderings or bipartite assignments)")

    p = sub.add_parser("verify", parents=[common], help="check a rotation-system file")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("code", parents=[common], help="write H_X and H_Z for a rotation-system file")
    p.add_argument("file")
    p.add_argument("--out", required=True, help="output prefix")

    p = sub.add_parser("distance", parents=[common], help="minimum distance of a CSS code")
    p.add_argument("hx")
    p.add_argument("hz")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", dest="params_out", default=None, help="write a CSS parameters line here")

    p = sub.add_parser("params", parents=[common], help="predicted [[n,k,d]] for family specs")
    p.add_argument("specs", nargs="+")

    p = sub.add_parser("search", parents=[common], help="search for a self-dual embedding of K_{r,s}")
    p.add_argument("r", type=int)
    p.add_argument("s", type=int)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--out", default=None)
    return parser


_COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "code": cmd_code,
    "distance": cmd_distance,
    "search": cmd_search,
}


def _source(args: argparse.Namespace) -> str:
    if args.command == "generate":
        return args.spec
    if args.command == "distance":
        return f"{args.hx} {args.hz}"
    if args.command == "search":
        return f"K_{{{args.r},{args.s}}}"
    return args.file


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    try:
        if args.command == "params":
            return cmd_params(args, out)
        report = RunReport(args.command, _source(args))
        start = time.perf_counter()
        try:
            code = _COMMANDS[args.command](args, report)
        finally:
            report.wall_time = time.perf_counter() - start
        out.write(report.render(args.format))
        return code
    except BudgetExhausted as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except (FormatError, ValidationError, NonexistenceError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except EmbedkitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
