"""Command-line front end.

Exit codes: 0 success, 1 a reproduce criterion failed, 2 usage or invalid
input, 3 a resource cap was hit, 4 an internal contradiction (a state some
proven statement rules out; always worth reporting).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .config import Caps, ResultRecord, Timer, _parse_caps, load_caps, versions
from .errors import InternalContradiction, InvalidInput, ResourceCapError, Unsupported

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP, EXIT_CONTRADICTION = 0, 1, 2, 3, 4

CSV_HELP = """CSV columns:
  mkn              k,n,value,method,mode
  ck               k,value,lower,upper,exact
  coxeter min      type,rank,generator,value
  reproduce        criterion,passed,title
"""


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_jsonable) + "\n"


class Output:
    def __init__(self, args):
        self.fmt = "json" if getattr(args, "json", False) else getattr(args, "format", None) or "text"
        self.path = getattr(args, "output", None)
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data, encoding="utf-8")
        else:
            sys.stdout.write(data)


def _record(command: str, inputs: dict, values, witness=None, wall: float = 0.0) -> dict:
    return ResultRecord(command, inputs, values, witness, round(wall, 6), versions()).to_json()


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise InvalidInput(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


# --------------------------------------------------------------------------
# commands


def cmd_mkn(args, caps: Caps, out: Output) -> int:
    from .search import bound_report, max_multiplicity

    kw = {"caps": caps}
    if args.method == "path-dfs":
        kw.update(exhaustive=args.exhaustive, backend=args.backend, jobs=args.jobs)
    with Timer() as t:
        res = max_multiplicity(args.k, args.n, method=args.method, mode=args.mode, **kw)
    if out.fmt == "json":
        out.write(dumps(_record("mkn", vars_of(args, "k", "n", "method", "mode"), res.to_json(), wall=t.elapsed)))
    elif out.fmt == "csv":
        out.write("k,n,value,method,mode")
        out.write(f"{res.k},{res.n},{res.value},{res.method},{res.mode}")
    else:
        out.write(f"M({args.k},{args.n}) = {res.value}   [{res.method}, mode={res.mode}, {t.elapsed:.3f} s]")
        w = res.witness
        out.write("witness: " + (w.compact() if hasattr(w, "compact") else " ".join(map(str, w.letters))))
        if args.mode == "max":
            b = bound_report(args.k, args.n, res.value)
            out.write(f"series bound {b.series_bound}, sqrt bound {b.sqrt_bound:.3f}")
    return EXIT_OK


def cmd_ck(args, caps: Caps, out: Output) -> int:
    from . import gwd

    with Timer() as t:
        res = gwd.compute_ck(args.k, caps, best_effort=args.best_effort)
    pattern = None
    if res.exact and (args.emit_pattern or out.fmt != "csv"):
        G = gwd.enumerate_Tk(args.k, caps)
        ex = gwd.extract_repeatable_pattern(G, res.cycle, args.k)
        pattern = ex.pattern
        if args.emit_pattern:
            Path(args.emit_pattern).write_text(dumps(pattern.to_json()), encoding="utf-8")
    if out.fmt == "json":
        values = res.to_json()
        values["pattern"] = None if pattern is None else pattern.to_json()
        out.write(dumps(_record("ck", {"k": args.k, "best_effort": args.best_effort}, values, wall=t.elapsed)))
    elif out.fmt == "csv":
        out.write("k,value,lower,upper,exact")
        out.write(f"{res.k},{res.value or ''},{res.lower},{res.upper},{res.exact}")
    elif res.exact:
        out.write(str(res.value))
        out.write(f"states {res.nodes}, moves {res.edges}; cycle: {' '.join(str(e.move) for e in res.cycle)}")
        if pattern is not None:
            out.write(f"pattern (d={pattern.d}): {pattern.base.compact()}")
    else:
        out.write(f"c_{res.k} in [{res.lower}, {res.upper}] (state cap reached after {res.nodes} states)")
    return EXIT_OK


def cmd_pattern(args, caps: Caps, out: Output) -> int:
    from . import patterns

    if args.action == "check":
        try:
            pat = patterns.RepeatablePattern.from_json(_read_json(args.file))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"{args.file} does not hold a pattern") from exc
        ok = patterns.is_repeatable(pat.base, pat.d)
        values = {"repeatable": ok, "L": pat.L, "d": pat.d, "density": str(patterns.density(pat)),
                  "copies_checked": patterns.certification_copies(pat.base, pat.d)}
        if out.fmt == "json":
            out.write(dumps(_record("pattern check", {"file": args.file}, values)))
        else:
            out.write(f"{'repeatable' if ok else 'not repeatable'}: L={pat.L}, d={pat.d}, density {patterns.density(pat)}")
        return EXIT_OK if ok else EXIT_FAILED
    if args.action == "witness":
        path = patterns.assemble_witness(patterns.builtin_family(args.k), args.n)
        if out.fmt == "json":
            out.write(dumps(_record("pattern witness", {"k": args.k, "n": args.n}, {"steps": path.steps}, path.to_json())))
        else:
            out.write(f"{path.steps} steps: {path.compact()}")
        return EXIT_OK
    found = patterns.search_patterns(args.k, args.span, max_paths=args.max_paths)
    best = max((patterns.density(p) for p in found), default=None)
    if out.fmt == "json":
        out.write(dumps(_record("pattern search", {"k": args.k, "span": args.span},
                                {"count": len(found), "max_density": best},
                                [p.to_json() for p in found if patterns.density(p) == best])))
    else:
        out.write(f"{len(found)} repeatable patterns in [1,{args.span}], max density {best}")
        for p in found:
            if patterns.density(p) == best:
                out.write(f"  d={p.d}: {p.base.compact()}")
    return EXIT_OK


def _load_path(file: str):
    from .core import MonotonePath, Word, word_to_path

    data = _read_json(file)
    # accept a bare path or a saved `mkn --json` record
    k = None
    if isinstance(data, dict) and "values" in data:
        data = data["values"]
    if isinstance(data, dict) and "sets" not in data and "witness" in data:
        k = data.get("k")
        data = data["witness"]
    try:
        if isinstance(data, dict) and "letters" in data:
            return word_to_path(Word.from_json(data), int(k))
        return MonotonePath.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"{file} does not hold a path (need {{'sets': [[...], ...]}})") from exc


def cmd_arc(args, caps: Caps, out: Output) -> int:
    from . import arcdiag

    path = _load_path(args.path)
    if args.action == "svg":
        D = arcdiag.build_bicolored(path) if args.bicolored else arcdiag.build_arc_diagram(path)
        svg = arcdiag.render_svg(D, scale=args.scale)
        out.fmt = "svg"
        out.write(svg)
        return EXIT_OK
    if path.k != 3:
        raise InvalidInput(f"decompose is defined for k=3 paths, got k={path.k}")
    D = arcdiag.build_arc_diagram(path)
    dec = arcdiag.decompose(D)
    values = {
        "intervals": [list(iv) for iv in dec.intervals],
        "cases": [[c, list(h)] for c, h in dec.cases],
        "total_weight": str(arcdiag.weight(D, 1, D.n)),
        "covered_bound": arcdiag.covered_bound_holds(D, dec),
    }
    if out.fmt == "json":
        out.write(dumps(_record("arc decompose", {"path": args.path}, values)))
    else:
        out.write(f"intervals {dec.intervals}; cases {[c for c, _ in dec.cases]}; wt([1,{D.n}]) = {values['total_weight']}")
    return EXIT_OK


def cmd_gwd(args, caps: Caps, out: Output) -> int:
    from . import gwd

    if args.action == "random":
        import random

        rng = random.Random(args.seed)
        D = gwd.random_reduced_diagram(args.k, args.steps, rng, fall_prob=args.fall_prob)
        out.write(dumps(D.to_json(args.k)))
        return EXIT_OK
    data = _read_json(args.input)
    k = args.k if args.k is not None else data.get("k")
    if k is None:
        raise InvalidInput("diagram JSON has no k; pass --k")
    try:
        D = gwd.ExplicitDiagram.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"{args.input} does not hold a diagram") from exc
    if args.action == "simplify":
        S = gwd.simplify(D, int(k))
        if out.fmt == "json":
            out.write(dumps(S.to_json(int(k))))
        else:
            out.write(f"level-{k} count {gwd.kappa(S, int(k))}; {len(D)} -> {len(S)} events")
            out.write(" ".join(str(m) for m in S.events))
        return EXIT_OK
    path = gwd.gwd_to_path(D, int(k))
    if out.fmt == "json":
        out.write(dumps(path.to_json()))
    else:
        out.write(path.compact())
    return EXIT_OK


def cmd_coxeter(args, caps: Caps, out: Output) -> int:
    from . import coxeter as cx

    typ, rank = cx.normalize_type(args.type, args.rank)
    if args.action == "min":
        S = cx.coxeter_system(typ, rank)
        v = cx.min_multiplicity_vector(S)
        if args.oracle:
            for i in range(1, rank + 1):
                o = cx.min_multiplicity_dp_oracle(S, i, caps=caps)
                if o != v[i - 1]:
                    raise InternalContradiction(f"oracle gives {o} for s_{i}, quotient iteration {v[i - 1]}")
        if out.fmt == "json":
            out.write(dumps(_record("coxeter min", {"type": typ, "rank": rank},
                                    {str(i): x for i, x in enumerate(v, start=1)})))
        elif out.fmt == "csv":
            out.write("type,rank,generator,value")
            for i, x in enumerate(v, start=1):
                out.write(f"{typ},{rank},{i},{x}")
        else:
            out.write(f"{S.name}: " + ",".join(map(str, v)))
            if typ[0] == "E":
                chain = [v[0]] + list(v[2:])
                out.write(f"chain {','.join(map(str, chain))}; branch {v[1]}")
        return EXIT_OK
    v = [int(x) for x in args.v.split(",")] if args.v else list(cx.reference_vector(typ, rank))
    rep = cx.cartan_feasibility(typ if typ[0] not in "ABD" else f"{typ}{rank}", v)
    values = rep.to_json()
    values["v"] = v
    if typ in ("B", "F4"):
        ok, av = cx.verify_cartan(typ if typ == "F4" else f"B{rank}", cx.explicit_cartan(typ, rank), v)
        values["explicit_matrix"] = {"nonnegative": ok, "Av": [str(x) for x in av]}
    if out.fmt == "json":
        out.write(dumps(_record("coxeter cartan", {"type": typ, "rank": rank, "v": v}, values)))
    else:
        out.write(f"{typ}{'' if typ[0] in 'EFGH' else rank}, v={v}: real-entry matrix {'found' if rep.feasible else 'not found'}"
                  f"; integer-entry matrix {'found' if rep.integer_feasible else 'not found'}")
        if rep.witness:
            out.write("witness rows: " + "; ".join(", ".join(map(str, row)) for row in rep.witness))
            out.write("Av = " + ", ".join(map(str, rep.Av)))
        if "explicit_matrix" in values:
            out.write(f"explicit matrix: Av = {', '.join(values['explicit_matrix']['Av'])}")
    return EXIT_OK


def cmd_reproduce(args, caps: Caps, out: Output) -> int:
    from .acceptance import run_all

    selected = [int(x) for x in args.only.split(",")] if args.only else None
    echo = (lambda line: print(line, file=sys.stderr, flush=True)) if out.fmt == "json" else None
    results = run_all(selected, echo=echo)
    if out.fmt == "json":
        rows = []
        for r in results:
            row = r.to_json()
            if args.timings:
                row["seconds"] = round(r.seconds, 3)
            rows.append(row)
        out.write(dumps({"criteria": rows, "passed": all(r.passed for r in results)}))
    elif out.fmt == "csv":
        out.write("criterion,passed,title")
        for r in results:
            out.write(f"{r.number},{r.passed},{r.title}")
    else:
        for r in results:
            out.write(r.line())
        out.write(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def vars_of(args, *names) -> dict:
    return {n: getattr(args, n) for n in names}


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="canonical JSON output")
    common.add_argument("--format", choices=("text", "json", "csv"), help="output format (default text)")
    common.add_argument("-o", "--output", help="write output to this file")
    common.add_argument("--caps", help="resource caps, e.g. 'dfs_max_n=15,tk_max_k=4' (overrides REDMAX_CAPS)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands (default 0)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    p = argparse.ArgumentParser(
        prog="redmax",
        description="Generator multiplicities in reduced words of longest elements.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"redmax {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mkn", parents=[common], help="M(k,n) with a witness")
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--method", choices=("path-dfs", "weak-order-dp"), default="path-dfs")
    m.add_argument("--mode", choices=("max", "min", "max-pair"), default="max")
    m.add_argument("--exhaustive", action="store_true", help="path-dfs without pruning")
    m.add_argument("--backend", choices=("cython", "python"), help="force a DFS kernel")
    m.set_defaults(func=cmd_mkn)

    c = sub.add_parser("ck", parents=[common], help="exact c_k from the piece graph")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--emit-pattern", metavar="FILE", help="write an optimal repeatable pattern as JSON")
    c.add_argument("--best-effort", action="store_true", help="report bounds instead of failing at the state cap")
    c.set_defaults(func=cmd_ck)

    pt = sub.add_parser("pattern", help="repeatable patterns")
    ps = pt.add_subparsers(dest="action", required=True)
    x = ps.add_parser("check", parents=[common])
    x.add_argument("--file", required=True, help='pattern JSON {"k":..,"d":..,"sets":[[..]]}')
    x = ps.add_parser("witness", parents=[common])
    x.add_argument("--k", type=int, required=True, choices=(1, 2, 3))
    x.add_argument("--n", type=int, required=True)
    x = ps.add_parser("search", parents=[common])
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--span", type=int, required=True)
    x.add_argument("--max-paths", type=int)
    pt.set_defaults(func=cmd_pattern)

    a = sub.add_parser("arc", help="arc diagrams of k=3 paths")
    as_ = a.add_subparsers(dest="action", required=True)
    x = as_.add_parser("svg", parents=[common])
    x.add_argument("--path", required=True, help='path JSON {"k":..,"n":..,"sets":[[..]]}')
    x.add_argument("--bicolored", action="store_true")
    x.add_argument("--scale", type=int, default=40)
    x = as_.add_parser("decompose", parents=[common])
    x.add_argument("--path", required=True)
    a.set_defaults(func=cmd_arc)

    g = sub.add_parser("gwd", help="generalized wiring diagrams")
    gs = g.add_subparsers(dest="action", required=True)
    for name in ("simplify", "path"):
        x = gs.add_parser(name, parents=[common])
        x.add_argument("--in", dest="input", required=True, help='diagram JSON {"k":..,"events":[{"t","kind","level"}]}')
        x.add_argument("--k", type=int)
    x = gs.add_parser("random", parents=[common])
    x.add_argument("--k", type=int, required=True)
    x.add_argument("--steps", type=int, default=20)
    x.add_argument("--fall-prob", type=float, default=0.25)
    g.set_defaults(func=cmd_gwd)

    cx = sub.add_parser("coxeter", help="finite Coxeter groups")
    cs = cx.add_subparsers(dest="action", required=True)
    x = cs.add_parser("min", parents=[common])
    x.add_argument("--type", required=True, help="A, B, D (with --rank), E6, E7, E8, F4, G2")
    x.add_argument("--rank", type=int)
    x.add_argument("--oracle", action="store_true", help="cross-check with the weak-order oracle")
    x = cs.add_parser("cartan", parents=[common])
    x.add_argument("--type", required=True, help="also H3, H4")
    x.add_argument("--rank", type=int)
    x.add_argument("--v", help="comma-separated vector (default: the minimal multiplicities)")
    cx.set_defaults(func=cmd_coxeter)

    r = sub.add_parser("reproduce", parents=[common], help="run the acceptance table")
    r.add_argument("--only", help="comma-separated criterion numbers")
    r.add_argument("--timings", action="store_true", help="include wall times in JSON")
    r.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        caps = load_caps()
        if args.caps:
            caps = caps.replace(**_parse_caps(args.caps))
        if args.jobs < 1:
            raise InvalidInput("--jobs must be positive")
        caps = caps.replace(jobs=args.jobs)
        out = Output(args)
        code = args.func(args, caps, out)
        out.flush()
        return code
    except (InvalidInput, Unsupported) as exc:
        print(f"redmax: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"redmax: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalContradiction as exc:
        print(f"redmax: INTERNAL CONTRADICTION: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
