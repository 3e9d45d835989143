"""Command-line front end.

Subcommands: classify, classify-constraint, solve, reduce, rewrite, gen,
eval, check. Global flags: --tol, --seed, --max-n, --exact, --machine.

Exit codes: 0 success, 1 property failure, 2 usage or parse error. Machine
mode prints one `key: value` pair per line with a stable key set.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from . import checks, gen, reductions
from .errors import ParseError, ProdCspError
from .formats import (
    parse_assignment,
    parse_constraints,
    parse_graph,
    parse_instance,
    parse_script,
    render_graph,
    render_instance,
)
from .graphs import graph_measure
from .instances import brute_force, hill_climb, measure
from .membership import (
    AfCertificate,
    DegenerateCertificate,
    EdCertificate,
    ImOptCertificate,
)
from .ratmath import format_fraction, frac_to_decimal_str
from .tables import BUILTINS
from .tractable import certify_instance, solve_tractable
from .trichotomy import classify_set, explain


@dataclass
class RunConfig:
    tolerance: float = 1e-9
    seed: int = 0
    max_n: int = 24
    exact_only: bool = False
    machine: bool = False


def _read(path: str) -> str:
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        raise ProdCspError(f"cannot read {path}: {exc}")


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _render_certificate(name: str, label: str, cert) -> str:
    lines = [f"# {label} factorization of {name}"]
    if isinstance(cert, (DegenerateCertificate, EdCertificate, AfCertificate, ImOptCertificate)):
        for pos, (w0, w1) in enumerate(cert.unary_factors, start=1):
            lines.append(f"constraint {name}.u{pos} 1  # unary factor on x{pos}")
            lines.append(f"{format_fraction(w0)} {format_fraction(w1)}")
    if isinstance(cert, EdCertificate):
        for var, bit in cert.pins:
            lines.append(f"# pin x{var} = {bit}")
        for i, j, parity in sorted(cert.parity_links):
            rel = "EQ" if parity == "equal" else "XOR"
            lines.append(f"# link {rel}(x{i}, x{j})")
    elif isinstance(cert, AfCertificate):
        lines.append(f"# pivot x{cert.pivot}")
        for j, rel in cert.binary_relations:
            pairs = ",".join(f"{a}{b}" for a, b in sorted(rel))
            lines.append(f"# relation on (x{cert.pivot}, x{j}): {{{pairs}}}")
    elif isinstance(cert, ImOptCertificate):
        for r, s, lam in sorted(cert.lambda_pairs):
            lines.append(
                f"constraint {name}.p{r}_{s} 2  # pair factor on (x{r}, x{s})"
            )
            lines.append(f"1 1 {format_fraction(lam)} 1")
    return "\n".join(lines)


def cmd_classify(args, config: RunConfig, constraint_detail: bool) -> int:
    tables = parse_constraints(_read(args.file))
    if not tables:
        print("error: no constraints in input", file=sys.stderr)
        return 2
    report = classify_set(list(tables.values()), config.tolerance)
    if config.machine:
        for r in report.per_constraint:
            classes = ",".join(sorted(r.classes))
            print(f"constraint.{r.name}.classes: {classes}")
        for label, name in sorted(report.witnesses.items()):
            print(f"witness.{label}: {name}")
        print(f"category: {report.category.value}")
        return 0
    if constraint_detail:
        for r in report.per_constraint:
            verdicts = ", ".join(sorted(r.classes)) or "none"
            print(f"{r.name}: {verdicts}")
            for label, cert in sorted(r.certificates.items()):
                print(_render_certificate(r.name, label, cert))
        print(f"category: {report.category.value}")
    else:
        print(explain(report))
    return 0


def _solve_result_lines(result, config: RunConfig):
    decimal = frac_to_decimal_str(result.optimum)
    log2 = "ZERO" if result.is_zero else f"{result.log2:.12g}"
    argmax = "".join(str(b) for b in result.argmax)
    if config.machine:
        print(f"optimum: {format_fraction(result.optimum)}")
        print(f"decimal: {decimal}")
        print(f"log2: {log2}")
        print(f"argmax: {argmax}")
        print(f"method: {result.method}")
    else:
        print(f"optimum {format_fraction(result.optimum)} (= {decimal}, log2 {log2})")
        print(f"argmax {argmax}")
        print(f"method {result.method}")


def cmd_solve(args, config: RunConfig) -> int:
    inst = parse_instance(_read(args.file))
    method = args.method
    if method == "auto":
        certs = certify_instance(inst, config.tolerance)
        method = "tractable" if certs is not None else "brute"
    if method == "tractable":
        certs = certify_instance(inst, config.tolerance)
        if certs is None:
            print("error: some applied constraint has no ed/af certificate", file=sys.stderr)
            return 2
        result = solve_tractable(inst, certs)
    elif method == "brute":
        result = brute_force(inst, max_n=config.max_n)
    elif method == "hill":
        if config.exact_only:
            print("error: --exact forbids the hill-climb method", file=sys.stderr)
            return 2
        bits = hill_climb(inst, seed=config.seed, restarts=args.restarts)
        value = measure(inst, bits)
        from .instances import SolveResult

        result = SolveResult(value, bits, "external")
    else:
        raise ProdCspError(f"unknown method {method!r}")
    _solve_result_lines(result, config)
    return 0


def cmd_reduce(args, config: RunConfig) -> int:
    mode = args.mode
    if mode == "is2csp":
        out = render_instance(reductions.is_to_csp(parse_graph(_read(args.file))))
    elif mode == "complement":
        out = render_instance(reductions.complement_all(parse_instance(_read(args.file))))
    elif mode == "bis2csp":
        out = render_instance(reductions.bis_to_implies(parse_graph(_read(args.file))))
    elif mode == "csp2flow":
        red = reductions.imopt_to_flow(parse_instance(_read(args.file)), rel_tol=config.tolerance)
        if red.trivially_zero:
            out = "# contradictory pins: optimum 0 without a flow instance\n"
        else:
            vertex_map = " ".join(str(v) for v in red.graph_vertices)
            out = (
                f"# flow vertex t holds instance variable: {vertex_map}\n"
                + "".join(f"# pinned x{v} = {b}\n" for v, b in sorted(red.pinned.items()))
                + render_graph(red.graph)
            )
    elif mode == "rewrite":
        return cmd_rewrite(args, config)
    else:
        raise ProdCspError(f"unknown reduce mode {mode!r}")
    _write_out(out, args.out)
    return 0


def cmd_rewrite(args, config: RunConfig) -> int:
    if not args.script or not args.target:
        print("error: rewrite needs --script and --target", file=sys.stderr)
        return 2
    inst = parse_instance(_read(args.file))
    script = parse_script(_read(args.script))
    pool = {t.name: t for t in inst.tables() if t.name}
    if args.target in pool:
        target = pool[args.target]
    elif args.target in BUILTINS:
        target = BUILTINS[args.target]
    else:
        print(f"error: target {args.target!r} not applied in the instance", file=sys.stderr)
        return 2
    rw = reductions.rewrite_by_construction(inst, target, script, pool)
    header = (
        f"# rewrote {rw.occurrences} applications of {args.target}; "
        f"optimum scales by {format_fraction(rw.scale_total)} each\n"
    )
    _write_out(header + render_instance(rw.instance), args.out)
    return 0


def cmd_gen(args, config: RunConfig) -> int:
    kind = args.kind.upper()
    if kind in ("IS", "BIS", "FLOW"):
        out = render_graph(gen.random_graph(kind, args.n, config.seed))
    elif kind == "CSP":
        import random

        rng = random.Random(config.seed)
        pool = [
            gen.random_ed_constraint(rng, 2, "E1"),
            gen.random_af_constraint(rng, 3, "A1"),
            gen.random_ed_constraint(rng, 1, "U1"),
        ]
        out = render_instance(gen.random_instance(args.n, pool, args.apps, config.seed))
    else:
        print(f"error: unknown kind {args.kind!r}", file=sys.stderr)
        return 2
    _write_out(out, args.out)
    return 0


def cmd_eval(args, config: RunConfig) -> int:
    text = _read(args.file)
    first = next((line.split()[0] for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")), "")
    if first == "graph":
        g = parse_graph(text)
        bits = parse_assignment(args.assign, g.num_vertices)
        value = graph_measure(g, bits)
    else:
        inst = parse_instance(text)
        bits = parse_assignment(args.assign, inst.num_vars)
        value = measure(inst, bits)
    if config.machine:
        print(f"measure: {format_fraction(value)}")
        print(f"decimal: {frac_to_decimal_str(value)}")
    else:
        print(f"measure {format_fraction(value)} (= {frac_to_decimal_str(value)})")
    return 0


def cmd_check(args, config: RunConfig) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    unknown = [n for n in names if n not in checks.SUITES]
    if unknown:
        print(f"error: unknown suite {unknown[0]!r}", file=sys.stderr)
        return 2
    results = checks.run_suites(names, config.seed)
    passed = sum(r.passed for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status} [{r.suite}] {r.name}"
        if r.detail and not r.passed:
            line += f" ({r.detail})"
        print(line)
    print(f"passed: {passed}")
    print(f"failed: {len(results) - passed}")
    return 0 if passed == len(results) else 1


def _add_globals(parser: argparse.ArgumentParser, top: bool):
    """Global flags, accepted both before and after the subcommand."""
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--tol", type=float, default=d(1e-9), help="relative fit tolerance")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for all randomized paths")
    parser.add_argument("--max-n", type=int, default=d(24), help="exhaustive solver cap")
    parser.add_argument(
        "--exact", action="store_true", default=d(False), help="refuse inexact paths"
    )
    parser.add_argument(
        "--machine", action="store_true", default=d(False), help="stable key: value output"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodcsp",
        description="Multiplicatively measured Boolean constraint satisfaction toolkit",
    )
    _add_globals(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        _add_globals(p, top=False)
        return p

    p = command("classify", help="classify a constraint file")
    p.add_argument("file")
    p = command("classify-constraint", help="per-constraint verdicts with certificates")
    p.add_argument("file")

    p = command("solve", help="optimize an instance file")
    p.add_argument("file")
    p.add_argument("--method", choices=("auto", "brute", "tractable", "hill"), default="auto")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--restarts", type=int, default=8)

    p = command("reduce", help="apply an instance transform")
    p.add_argument("mode", choices=("is2csp", "complement", "bis2csp", "csp2flow", "rewrite"))
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--script")
    p.add_argument("--target")

    p = command("rewrite", help="rewrite applications of one constraint via a script")
    p.add_argument("file")
    p.add_argument("--script", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--out")

    p = command("gen", help="generate a random graph or instance")
    p.add_argument("--kind", required=True, help="is|bis|flow|csp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--apps", type=int, default=10)
    p.add_argument("--out")

    p = command("eval", help="evaluate one assignment's measure")
    p.add_argument("file")
    p.add_argument("--assign", required=True)

    p = command("check", help="run the invariant suites")
    p.add_argument("--suite", default="all")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return 2
    config = RunConfig(
        tolerance=args.tol,
        seed=args.seed,
        max_n=args.max_n,
        exact_only=args.exact,
        machine=args.machine,
    )
    try:
        if args.command == "classify":
            return cmd_classify(args, config, constraint_detail=False)
        if args.command == "classify-constraint":
            return cmd_classify(args, config, constraint_detail=True)
        if args.command == "solve":
            return cmd_solve(args, config)
        if args.command == "reduce":
            return cmd_reduce(args, config)
        if args.command == "rewrite":
            return cmd_rewrite(args, config)
        if args.command == "gen":
            return cmd_gen(args, config)
        if args.command == "eval":
            return cmd_eval(args, config)
        if args.command == "check":
            return cmd_check(args, config)
        parser.error(f"unknown command {args.command!r}")
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ProdCspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
