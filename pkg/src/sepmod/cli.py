"""Command-line front end.

Exit codes: 0 true/pass, 1 false/refusal/fail, 2 usage or precondition
error, 3 incomplete description.  JSON output uses sorted keys so identical
inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import Sequence

from . import hypergraph as hg
from .catalog import STRUCTURE_IDS, get_structure
from .closure import acl, dcl, exchange_check
from .errors import PreconditionError, SepmodError, SeparationRefused
from .modelbuilder import (
    DEFAULT_BUDGET, DEFAULT_DEPTH, DEFAULT_SAMPLES, NEGATIVE_CONTROLS, SubmodelDescription,
    build_t0_separator, build_t2_separators, staged_only, tarski_vaught_verify,
)
from .points import parse_points
from .separability import SeparabilityQuery, check

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_INCOMPLETE = 0, 1, 2, 3


@dataclass
class RunConfig:
    """Every knob of a run; echoed into the output."""

    command: str = "check"
    structure: str | None = None
    mode: str = "t0"
    a: list = field(default_factory=list)
    b: list = field(default_factory=list)
    z: str | None = None
    hypergraph_class: str = "H"
    seed: int = 0
    depth: int = DEFAULT_DEPTH
    samples: int = DEFAULT_SAMPLES
    budget: int = DEFAULT_BUDGET
    out: str | None = None
    format: str = "json"

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise PreconditionError("usage", f"unknown config fields: {', '.join(unknown)}")
        return cls(**data)

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


def _dump(data, fmt: str = "json") -> str:
    if fmt == "text":
        return _text(data)
    return json.dumps(data, sort_keys=True, indent=2)


def _text(data, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(data, dict):
        lines = []
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(data, list):
        return "\n".join(f"{pad}- {json.dumps(v, sort_keys=True)}" for v in data)
    return f"{pad}{json.dumps(data)}"


def _emit(data, cfg: RunConfig | None = None, fmt: str = "json") -> None:
    text = _dump(data, fmt)
    if cfg is not None and cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _points(values: Sequence[str], structure: str) -> list:
    out = []
    for v in values:
        out.extend(parse_points(v, structure))
    return out


def _z_spec(value: str | None, structure: str):
    if value is None or value in ("empty", "acl-empty", "dcl-empty"):
        return value
    return _points([value], structure)


def _query(cfg: RunConfig) -> SeparabilityQuery:
    if cfg.structure is None:
        raise PreconditionError("usage", "--structure is required")
    S = get_structure(cfg.structure)
    return SeparabilityQuery.make(S, cfg.mode, _points(cfg.a, S.id), _points(cfg.b, S.id),
                                  _z_spec(cfg.z, S.id), cfg.hypergraph_class)


# -- commands -----------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    q = _query(cfg)
    verdict = check(q)
    _emit({"verdict": verdict.to_json(), "config": cfg.to_json()}, None, cfg.format)
    return EXIT_TRUE if verdict.answer else EXIT_FALSE


def _build(cfg: RunConfig, staged: bool = False):
    q = _query(cfg)
    A, B = q.A, q.B
    z = _z_spec(cfg.z, q.structure.id)
    if q.mode == "t0":
        descs = [build_t0_separator(q.structure, A, B, z, cfg.budget)]
    else:
        descs = list(build_t2_separators(q.structure, A, B, z, cfg.budget))
    if staged:
        descs = [staged_only(d) for d in descs]
    return descs


def _descriptions_json(descs, cfg: RunConfig) -> dict:
    if len(descs) == 1:
        return {"description": descs[0].to_json(), "config": cfg.to_json()}
    return {"descriptions": [d.to_json() for d in descs], "config": cfg.to_json()}


def cmd_build(cfg: RunConfig, staged: bool = False) -> int:
    try:
        descs = _build(cfg, staged)
    except SeparationRefused as refusal:
        _emit({"refusal": {"message": str(refusal), "certificate": refusal.certificate},
               "config": cfg.to_json()}, None, cfg.format)
        return EXIT_FALSE
    _emit(_descriptions_json(descs, cfg), cfg, "json" if cfg.out else cfg.format)
    if cfg.out and cfg.format == "text":
        print(f"wrote {cfg.out}")
    return EXIT_TRUE


def _load_descriptions(path: str) -> list[SubmodelDescription]:
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if "description" in data:
        return [SubmodelDescription.from_json(data["description"])]
    if "descriptions" in data:
        return [SubmodelDescription.from_json(d) for d in data["descriptions"]]
    return [SubmodelDescription.from_json(data)]


def twin_overlap(descs: Sequence[SubmodelDescription]) -> list[str]:
    """Sampled points in both twins but outside Z; empty for a sound pair."""
    if len(descs) != 2 or any(d.closed_form is None for d in descs):
        return []
    a, b = descs
    S = get_structure(a.structure)
    pool = list(S.grid_points(1)) + a.contains.listed() + b.contains.listed()
    return [str(p) for p in pool if a.member(p) and b.member(p) and p not in a.Z]


def verify_descriptions(descs, depth: int, samples: int, seed: int) -> tuple[int, dict]:
    reports = [tarski_vaught_verify(d, depth, samples, seed) for d in descs]
    overlap = twin_overlap(descs)
    statuses = [r.status for r in reports]
    if "fail" in statuses or overlap:
        code = EXIT_FALSE
    elif "incomplete" in statuses:
        code = EXIT_INCOMPLETE
    else:
        code = EXIT_TRUE
    status = {EXIT_TRUE: "pass", EXIT_FALSE: "fail", EXIT_INCOMPLETE: "incomplete"}[code]
    return code, {"status": status, "reports": [r.to_json() for r in reports],
                  "twin_overlap": overlap}


def cmd_verify(path: str | None, control: str | None, cfg: RunConfig) -> int:
    if control is not None:
        descs = [NEGATIVE_CONTROLS[control]()]
    else:
        try:
            descs = _load_descriptions(path)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            print(f"sepmod verify: malformed description file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    code, report = verify_descriptions(descs, cfg.depth, cfg.samples, cfg.seed)
    report["config"] = cfg.to_json()
    _emit(report, None, cfg.format)
    return code


_HG_OPS = {
    "t0": lambda H, a, b, Z: hg.t0_separable(H, a, b, Z),
    "t2": lambda H, a, b, Z: hg.t2_separable(H, a, b, Z),
    "set-t0": lambda H, a, b, Z: hg.set_t0_separable(H, a, b, Z),
    "set-t2": lambda H, a, b, Z: hg.set_t2_separable(H, a, b, Z),
}


def cmd_hypergraph(path: str, op: str, x1: str, x2: str, fmt: str) -> int:
    with open(path, encoding="utf-8") as fh:
        H, Z = hg.Hypergraph.from_json(json.load(fh))
    a, b = json.loads(x1), json.loads(x2)
    if op.startswith("set-"):
        a, b = frozenset(a), frozenset(b)
    result = _HG_OPS[op](H, a, b, Z)
    _emit({"op": op, "result": result.to_json()}, None, fmt)
    return EXIT_TRUE if result.verdict else EXIT_FALSE


def cmd_closure(structure: str, points: Sequence[str], kind: str, exchange: bool, fmt: str) -> int:
    S = get_structure(structure)
    pts = _points(points, S.id)
    C = (dcl if kind == "dcl" else acl)(S, pts)
    out = {"closure": C.to_json(), "summary": C.describe()}
    if exchange:
        if len(pts) != 2:
            raise PreconditionError("usage", "--exchange needs exactly two points a, b")
        out["exchange"] = exchange_check(S, pts[0], pts[1]).to_json()
    _emit(out, None, fmt)
    return EXIT_TRUE


def cmd_types(structure: str, prefix: int, fmt: str) -> int:
    S = get_structure(structure)
    types = []
    for t in S.list_isolated_1types(prefix):
        entry = t.to_json()
        entry["realized_by"] = str(S.realize(t))
        types.append(entry)
    _emit({"structure": S.id, "types": types, "flags": S.flags.as_dict()}, None, fmt)
    return EXIT_TRUE


# -- grid ---------------------------------------------------------------------

def load_grid(path: str | None = None) -> list[dict]:
    if path is None:
        text = resources.files("sepmod").joinpath("data/grid.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)["cases"]


def run_case(case: dict, depth: int = DEFAULT_DEPTH, samples: int = DEFAULT_SAMPLES,
             budget: int = DEFAULT_BUDGET, seed: int = 0) -> dict:
    """Check, build and verify one grid case; ``agree`` compares check with build."""
    cfg = RunConfig.from_dict({**case, "budget": budget})
    q = _query(cfg)
    verdict = check(q)
    try:
        descs = _build(cfg)
        built, refusal = True, None
    except SeparationRefused as exc:
        descs, built, refusal = [], False, str(exc)
    out = {"case": case, "check": verdict.answer, "built": built,
           "agree": verdict.answer == built, "refusal": refusal}
    if built:
        code, report = verify_descriptions(descs, depth, samples, seed)
        out["verify"] = report["status"]
        out["verify_reports"] = report["reports"]
        exact = all(all(d.member(p) for p in d.contains.listed())
                    and not any(d.member(p) for p in d.excludes) for d in descs)
        out["exact_membership"] = exact
    return out


def _run_case_star(args):
    return run_case(*args)


def run_grid(cases: list[dict], depth: int, samples: int, budget: int, seed: int,
             jobs: int = 1) -> list[dict]:
    work = [(c, depth, samples, budget, seed) for c in cases]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_case_star, work))
    return [run_case(*w) for w in work]


def cmd_grid(path: str | None, jobs: int, cfg: RunConfig) -> int:
    cases = load_grid(path)
    results = run_grid(cases, cfg.depth, cfg.samples, cfg.budget, cfg.seed, jobs)
    ok = all(r["agree"] and (not r["built"] or (r["verify"] == "pass" and r["exact_membership"]))
             for r in results)
    summary = {
        "cases": len(results),
        "agree": sum(r["agree"] for r in results),
        "built": sum(r["built"] for r in results),
        "verified": sum(r.get("verify") == "pass" for r in results),
        "ok": ok,
    }
    _emit({"summary": summary, "results": results, "config": cfg.to_json()}, cfg, cfg.format)
    return EXIT_TRUE if ok else EXIT_FALSE


# -- argument parsing ---------------------------------------------------------

def _common(p: argparse.ArgumentParser, query: bool = True) -> None:
    p.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    p.add_argument("--format", choices=("json", "text"), default=None)
    p.add_argument("--seed", type=int, default=None)
    if query:
        p.add_argument("--structure", choices=STRUCTURE_IDS, type=str.lower, default=None)
        p.add_argument("--mode", choices=("t0", "t2"), type=str.lower, default=None)
        p.add_argument("--a", action="append", default=None, metavar="POINTS",
                       help="point literals of A, e.g. \"@{0}\"; repeatable")
        p.add_argument("--b", action="append", default=None, metavar="POINTS")
        p.add_argument("--z", default=None,
                       help="empty, acl-empty, dcl-empty, or point literals (Z = their acl)")
        p.add_argument("--class", dest="hypergraph_class", default=None,
                       choices=("H", "H_omega1", "H_p"))


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepmod", description=(
        "Separability in hypergraphs of elementary submodels of computable ordered structures."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide separability by the closure criterion")
    _common(p)

    p = sub.add_parser("build", help="build separating submodel descriptions")
    _common(p)
    p.add_argument("--budget", type=int, default=None, help="stage count per chain")
    p.add_argument("--out", default=None)
    p.add_argument("--staged-only", action="store_true",
                   help="drop the closed form; the result verifies as incomplete")

    p = sub.add_parser("verify", help="Tarski-Vaught check of a description file")
    _common(p, query=False)
    p.add_argument("file", nargs="?")
    p.add_argument("--control", choices=sorted(NEGATIVE_CONTROLS),
                   help="verify a built-in non-elementary control instead of a file")
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("hypergraph", help="separability in an explicit finite hypergraph")
    p.add_argument("file", help='JSON {"X": [...], "Y": [[...]], "Z": [...]}')
    p.add_argument("--op", choices=sorted(_HG_OPS), default="t0")
    p.add_argument("--x1", required=True, help="JSON atom, or JSON list for set-* ops")
    p.add_argument("--x2", required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("closure", help="print dcl/acl of listed points")
    p.add_argument("--structure", choices=STRUCTURE_IDS, type=str.lower, required=True)
    p.add_argument("--points", action="append", default=[])
    p.add_argument("--kind", choices=("dcl", "acl"), default="acl")
    p.add_argument("--exchange", action="store_true",
                   help="also test exchange for the two given points a, b")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("types", help="list isolated 1-types over the empty set")
    p.add_argument("--structure", choices=STRUCTURE_IDS, type=str.lower, required=True)
    p.add_argument("--prefix", type=int, default=3)
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("grid", help="run the acceptance case file")
    _common(p, query=False)
    p.add_argument("--cases", default=None, help="case file (default: the bundled grid)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", default=None)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    base = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            base = json.load(fh)
    base["command"] = args.command
    for name in ("structure", "mode", "a", "b", "z", "hypergraph_class", "seed", "depth",
                 "samples", "budget", "out", "format"):
        value = getattr(args, name, None)
        if value is not None:
            base[name] = value
    return RunConfig.from_dict(base)


def main(argv: Sequence[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "hypergraph":
            return cmd_hypergraph(args.file, args.op, args.x1, args.x2, args.format)
        if args.command == "closure":
            return cmd_closure(args.structure, args.points, args.kind, args.exchange,
                               args.format)
        if args.command == "types":
            return cmd_types(args.structure, args.prefix, args.format)
        cfg = _config(args)
        if args.command == "check":
            return cmd_check(cfg)
        if args.command == "build":
            return cmd_build(cfg, args.staged_only)
        if args.command == "verify":
            if (args.file is None) == (args.control is None):
                raise PreconditionError("usage", "give a description file or --control")
            return cmd_verify(args.file, args.control, cfg)
        return cmd_grid(args.cases, args.jobs, cfg)
    except PreconditionError as exc:
        print(f"sepmod {args.command}: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SepmodError, ValueError, OSError) as exc:
        print(f"sepmod {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
