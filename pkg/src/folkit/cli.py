"""Command-line interface.

    folkit invariants CASE...            germ invariants at the origin
    folkit resolve CASE                  resolution tree (json, table or dot)
    folkit separatrices CASE             formal separatrices, one per Galois class
    folkit tower CASE [--branch NAME]    per-level data along a branch
    folkit verify [CASE...]              identity suite (whole shipped corpus by default)
    folkit compare CASE [CASE2]          indices after one blow-up over a branch pairing

CASE is a path to a ``.fol`` file or the name of a shipped corpus case.

Exit codes: 0 success, 1 some checked identity failed, 2 bad input
(unreadable, unparsable or invalid case, bad flags), 3 computational
failure (the failing operation is named on stderr).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import __version__
from .blowup_resolution import resolve
from .errors import DicriticalInfinitelyMany, FolkitError, ParseError, ValidationError
from .exact_arith import extension_bound, working_order
from .foliation_core import summarize
from .invariants import (
    IDENTITY_GROUPS,
    case_branches,
    case_field,
    check_comparison,
    first_blowup_comparison,
    push_branch,
    tower_invariants,
    transform_by_automorphism,
    verify_case,
)
from .parser_io import dumps, envelope, format_mapping, format_table, load_case_file, tree_to_dot
from .puiseux_separatrix import branch_conjugates, solve_separatrices

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_COMPUTE = 0, 1, 2, 3
FORMATS = ("json", "table", "dot")
DOT_COMMANDS = ("resolve",)


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    order: int
    max_depth: int
    ext_bound: int
    format: str
    jobs: int


class UsageError(Exception):
    pass


def corpus_dir() -> Path:
    return Path(str(resources.files("folkit") / "corpus"))


def corpus_cases() -> list[Path]:
    return sorted(corpus_dir().glob("*.fol"))


def find_case(ref: str) -> Path:
    p = Path(ref)
    if p.exists() or p.suffix == ".fol" or os.sep in ref:
        return p
    candidate = corpus_dir() / f"{ref}.fol"
    if candidate.exists():
        return candidate
    return p


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="working order N of truncated series (env FOLKIT_ORDER, default 32)")
    common.add_argument("--max-depth", type=int, default=None, help="blow-up depth bound (env FOLKIT_MAX_DEPTH, default 12)")
    common.add_argument("--ext-bound", type=int, default=None, help="bound on algebraic extension degree (env FOLKIT_EXT_BOUND, default 24)")
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (env FOLKIT_FORMAT, default json)")
    common.add_argument("--jobs", type=int, default=None, help="parallel cases for verify (env FOLKIT_JOBS, default 1)")

    parser = argparse.ArgumentParser(prog="folkit", description="Exact local invariants of singular plane foliations.")
    parser.add_argument("--version", action="version", version=f"folkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", parents=[common], help="germ invariants at the origin")
    p.add_argument("cases", nargs="+")

    p = sub.add_parser("resolve", parents=[common], help="resolution tree")
    p.add_argument("cases", nargs=1)

    p = sub.add_parser("separatrices", parents=[common], help="formal separatrices")
    p.add_argument("cases", nargs=1)

    p = sub.add_parser("tower", parents=[common], help="invariants along the blow-up tower of a branch")
    p.add_argument("cases", nargs=1)
    p.add_argument("--branch", default=None, help="branch name or position (default: all branches)")

    p = sub.add_parser("verify", parents=[common], help="run the identity suite")
    p.add_argument("cases", nargs="*", help="cases (default: the shipped corpus)")
    p.add_argument("--only", action="append", choices=IDENTITY_GROUPS, help="restrict to identity groups (repeatable)")

    p = sub.add_parser("compare", parents=[common], help="compare indices after one blow-up")
    p.add_argument("cases", nargs="+", help="CASE (compared with its automorphism twist) or CASE1 CASE2")
    p.add_argument("--pair", action="append", default=None, metavar="I:J",
                   help="pair branch I of the first case with branch J of the second (repeatable)")
    return parser


def make_config(args) -> RunConfig:
    order = args.order if args.order is not None else _env_int("FOLKIT_ORDER", 32)
    depth = args.max_depth if args.max_depth is not None else _env_int("FOLKIT_MAX_DEPTH", 12)
    ext = args.ext_bound if args.ext_bound is not None else _env_int("FOLKIT_EXT_BOUND", 24)
    jobs = args.jobs if args.jobs is not None else _env_int("FOLKIT_JOBS", 1)
    fmt = args.format or os.environ.get("FOLKIT_FORMAT") or "json"
    for name, v in (("--order", order), ("--max-depth", depth), ("--ext-bound", ext), ("--jobs", jobs)):
        if v <= 0:
            raise UsageError(f"{name} must be positive, got {v}")
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    if fmt == "dot" and args.command not in DOT_COMMANDS:
        raise UsageError(f"--format dot is only available for: {', '.join(DOT_COMMANDS)}")
    return RunConfig(args.command, tuple(args.cases), order, depth, ext, fmt, jobs)


def _apply(cfg: RunConfig):
    working_order.set(cfg.order)
    extension_bound.set(cfg.ext_bound)


_current = {"operation": "startup"}


def _doing(operation: str):
    """Record the operation in progress so failures can name it."""
    _current["operation"] = operation


def _load(ref: str):
    _doing(f"load_case({ref})")
    return load_case_file(find_case(ref))


# --------------------------------------------------------------------------
# commands; each returns (payload, exit code, text renderer or None)


def cmd_invariants(cfg: RunConfig, args):
    out = []
    for ref in cfg.inputs:
        case = _load(ref)
        _doing(f"normalize({case.name})")
        X = case_field(case)
        _doing(f"summarize({case.name})")
        out.append({"name": case.name, "field": X.to_json(), **summarize(X).to_json()})
    rows = [
        {"name": r["name"], "nu": r["nu"], "dicritical": r["dicritical"], "saddle_node": r["saddle_node"],
         "spectrum_nonzero": r["spectrum_nonzero"], "milnor": r["milnor"],
         "spectrum": r["linear_part"]["spectrum"]}
        for r in out
    ]
    return out, EXIT_OK, lambda: format_table(rows)


def cmd_resolve(cfg: RunConfig, args):
    case = _load(cfg.inputs[0])
    _doing(f"resolve({case.name})")
    tree = resolve(case_field(case), cfg.max_depth)
    payload = {"name": case.name, **tree.to_json()}

    def table():
        rows = [
            {"id": n.id, "parent": n.parent, "point": " / ".join(f"{s.chart}@{s.center}" for s in n.germ.chart_path) or "origin",
             "field": str(n.germ.field), "nu": n.nu, "nu_tilde": n.nu_tilde, "dicritical": n.dicritical,
             "class": n.reduced_class.tag}
            for n in tree.nodes
        ]
        summary = format_mapping({"second_type": tree.second_type,
                                  "strictly_nondicritical": tree.strictly_nondicritical,
                                  "complete": tree.complete})
        return format_table(rows) + "\n" + summary

    def dot():
        return tree_to_dot(tree.dot_nodes(), case.name)

    return payload, EXIT_OK, {"table": table, "dot": dot}


def cmd_separatrices(cfg: RunConfig, args):
    case = _load(cfg.inputs[0])
    X = case_field(case)
    dicritical = False
    _doing(f"solve_separatrices({case.name})")
    try:
        seps = solve_separatrices(X, cfg.order, max_depth=cfg.max_depth)
    except DicriticalInfinitelyMany as exc:
        seps = exc.isolated or []
        dicritical = True
    rows = []
    for k, V in enumerate(seps):
        rows.append({"index": k, "x": str(V.x), "y": str(V.y), "multiplicity": V.multiplicity(),
                     "conjugates": branch_conjugates(V), "formal": V.formal})
    payload = {"name": case.name, "families": dicritical, "separatrices": rows}
    return payload, EXIT_OK, lambda: format_table(rows) + ("(plus families through dicritical points)\n" if dicritical else "")


def _select_branches(case, X, cfg, selector):
    _doing(f"case_branches({case.name})")
    branches = case_branches(case, X, cfg.order, cfg.max_depth)
    if selector is None:
        return branches
    for k, nb in enumerate(branches):
        if nb.name == selector or str(k) == selector:
            return [nb]
    names = ", ".join(nb.name for nb in branches) or "none"
    raise UsageError(f"no branch {selector!r} (available: {names})")


def cmd_tower(cfg: RunConfig, args):
    case = _load(cfg.inputs[0])
    X = case_field(case)
    out = []
    for nb in _select_branches(case, X, cfg, args.branch):
        _doing(f"tower_invariants({case.name}:{nb.name})")
        T = tower_invariants(X, nb.branch, cfg.max_depth, cfg.order, f"{case.name}:{nb.name}")
        out.append({"branch": nb.to_json(), **T.to_json()})
    payload = {"name": case.name, "towers": out}

    def table():
        parts = []
        for t in out:
            parts.append(f"branch {t['branch']['name']}: endpoint {t['endpoint_level']} ({t['endpoint_kind']})\n")
            rows = []
            for lv in t["levels"]:
                k = lv["level"]
                rows.append({**{key: lv[key] for key in ("level", "m", "nu", "nu_tilde", "index", "dicritical", "class")},
                             "R": t["weighted_drop"].get(str(k)), "Gamma": t["tail_drop"].get(str(k))})
            parts.append(format_table(rows))
        return "\n".join(parts)

    return payload, EXIT_OK, table


def _verify_one(task):
    path, order, depth, ext, groups = task
    working_order.set(order)
    extension_bound.set(ext)
    case = load_case_file(path)
    return verify_case(case, order, depth, groups).to_json()


def cmd_verify(cfg: RunConfig, args):
    paths = [find_case(r) for r in cfg.inputs] if cfg.inputs else corpus_cases()
    # validate every input up front so bad files give exit code 2 before any work
    for p in paths:
        load_case_file(p)
    _doing("verify")
    groups = tuple(args.only) if args.only else IDENTITY_GROUPS
    tasks = [(str(p), cfg.order, cfg.max_depth, cfg.ext_bound, groups) for p in paths]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_verify_one, tasks))
    else:
        reports = [_verify_one(t) for t in tasks]
    reports.sort(key=lambda r: r["name"])
    total = sum(r["checks"] for r in reports)
    failed = sum(len(r["failures"]) for r in reports)
    errored = sum(len(r["errors"]) for r in reports)
    payload = {
        "groups": list(groups),
        "cases": reports,
        "summary": {"cases": len(reports), "checks": total, "failures": failed, "errors": errored,
                    "passed": failed == 0 and errored == 0},
    }
    code = EXIT_OK if failed == 0 and errored == 0 else EXIT_FAILED

    def table():
        rows = [{"case": r["name"], "passed": r["passed"], "checks": r["checks"],
                 "failures": len(r["failures"]), "errors": len(r["errors"])} for r in reports]
        lines = [format_table(rows)]
        for r in reports:
            for f in r["failures"]:
                lines.append(f"FAIL {f.get('subject', r['name'])} {f['name']}: lhs={dumps(f['lhs']).strip()} "
                             f"rhs={dumps(f['rhs']).strip()} [{f['anchor']}] {f.get('detail', '')}".rstrip() + "\n")
            for e in r["errors"]:
                lines.append(f"ERROR {r['name']} in {e['operation']}: {e['error']}: {e['message']}\n")
        return "".join(lines)

    return payload, code, table


def _parse_pairs(specs, n1, n2):
    pairs = []
    for s in specs:
        try:
            i, j = (int(v) for v in s.split(":"))
        except ValueError:
            raise UsageError(f"--pair expects I:J, got {s!r}") from None
        if not (0 <= i < n1 and 0 <= j < n2):
            raise UsageError(f"--pair {s}: branch index out of range")
        pairs.append((i, j))
    return pairs


def cmd_compare(cfg: RunConfig, args):
    if len(cfg.inputs) > 2:
        raise UsageError("compare takes one or two cases")
    first = _load(cfg.inputs[0])
    X = case_field(first)
    bx = case_branches(first, X, cfg.order, cfg.max_depth)
    if len(cfg.inputs) == 1:
        if not first.has_automorphism:
            raise UsageError(f"{first.name} has no automorphism to compare against")
        Y = transform_by_automorphism(X, first.forward, first.inverse)
        by = [push_branch(nb.branch, first.forward) for nb in bx]
        names = (first.name, f"{first.name} (twisted)")
        default_pairs = [(k, k) for k in range(len(bx))]
    else:
        second = _load(cfg.inputs[1])
        Y = case_field(second)
        by = [nb.branch for nb in case_branches(second, Y, cfg.order, cfg.max_depth)]
        names = (first.name, second.name)
        default_pairs = [(k, k) for k in range(min(len(bx), len(by)))]
    idx = _parse_pairs(args.pair, len(bx), len(by)) if args.pair else default_pairs
    if not idx:
        raise UsageError("no branch pairs to compare")
    _doing("first_blowup_comparison")
    C = first_blowup_comparison(X, Y, [(bx[i].branch, by[j]) for i, j in idx], cfg.order)
    ev = check_comparison(C, f"{names[0]} vs {names[1]}")
    payload = {"first": names[0], "second": names[1], "pairs": [list(p) for p in idx], **C.to_json(),
               "evidence": ev.to_json()}
    code = EXIT_OK if ev.holds else EXIT_FAILED

    def table():
        rows = [{"pair": f"{i}:{j}", **r} for (i, j), r in zip(idx, C.pairs)]
        items = C.to_json()["items"]
        return format_table(rows) + "\n" + format_mapping({**items, "multiplicities_match": C.multiplicities_match,
                                                           "consistent": C.consistent})

    return payload, code, table


COMMANDS = {
    "invariants": cmd_invariants,
    "resolve": cmd_resolve,
    "separatrices": cmd_separatrices,
    "tower": cmd_tower,
    "verify": cmd_verify,
    "compare": cmd_compare,
}


def _render(cfg: RunConfig, payload, renderer) -> str:
    if cfg.format == "json":
        return dumps(envelope(cfg.command, payload))
    if isinstance(renderer, dict):
        return renderer[cfg.format]()
    return renderer()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_INPUT
    try:
        cfg = make_config(args)
        _apply(cfg)
        payload, code, renderer = COMMANDS[cfg.command](cfg, args)
        text = _render(cfg, payload, renderer)
    except UsageError as exc:
        print(f"folkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ParseError, ValidationError) as exc:
        print(f"folkit: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"folkit: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FolkitError as exc:
        op = exc.operation or _current["operation"]
        print(f"folkit: computation failed in {cfg.command}: {op}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
