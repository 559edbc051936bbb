"""Command-line front end: ``crnbinom check|ode|gen|bench``."""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .engine import BinomialityReport, VerdictKind, analyze, assemble_report
from .groebner import Budget, BudgetExceeded, binomiality_via_gb
from .kinetics import ode_generators, species_names
from .matrix import RationalMatrix
from .netgen import GenConfig, GenerationError, generate
from .parser import CRNParseError, format_network, parse_network

SCHEMA_VERSION = "1"

EXIT_CODES = {
    VerdictKind.BINOMIAL: 0,
    VerdictKind.NOT_BINOMIAL: 1,
    VerdictKind.INCONCLUSIVE: 2,
}
EX_USAGE = 64
EX_DATAERR = 65

PHASES = ("parse", "build", "rref", "combine")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _matrix_doc(m: RationalMatrix) -> dict:
    return {"rows": list(m.row_labels), "cols": list(m.col_labels), "entries": m.to_lists()}


def run_oracle(report: BinomialityReport, budget: Optional[Budget] = None) -> dict:
    """Oracle verdict for a report, as stored under ``oracle`` in the JSON."""
    start = time.perf_counter()
    try:
        binomial = binomiality_via_gb(report.network, budget=budget or Budget())
    except BudgetExceeded as exc:
        return {"status": "budget-exceeded", "binomial": None, "agrees": None, "message": str(exc)}
    elapsed = time.perf_counter() - start
    if report.kind is VerdictKind.INCONCLUSIVE:
        agrees = None
    else:
        agrees = binomial == (report.kind is VerdictKind.BINOMIAL)
    return {
        "status": "ok",
        "binomial": binomial,
        "agrees": agrees,
        "message": "",
        "time_us": round(elapsed * 1e6),
    }


def report_document(
    report: BinomialityReport,
    *,
    emit_matrices: bool = False,
    emit_generators: bool = False,
    oracle: Optional[dict] = None,
    warnings: Sequence[str] = (),
) -> dict:
    """JSON-ready report, schema version 1 (see README for the field list)."""
    net = report.network
    doc = {
        "schema_version": SCHEMA_VERSION,
        "network": {
            "species": net.n_species,
            "reactions": net.n_reactions,
            "reversible": report.reversible_count,
            "irreversible": report.irreversible_count,
        },
        "path": report.path,
        "verdict": report.kind.value,
        "generators": [str(g) for g in report.verdict.generators] if emit_generators else None,
        "witness_rows": [{"row": i, "support": list(s)} for i, s in report.verdict.witness_rows],
        "monomial_generators_present": report.monomial_generators_present,
        "matrices": None,
        "timings_us": {k: round(v * 1e6) for k, v in report.timings.items()},
        "oracle": oracle,
        "warnings": list(warnings),
    }
    if emit_matrices:
        doc["matrices"] = {
            "coefficient": _matrix_doc(report.coefficient_matrix),
            "rref": dict(
                _matrix_doc(report.rref.matrix),
                rank=report.rref.rank,
                pivot_cols=list(report.rref.pivot_cols),
            ),
        }
    return doc


def render_text(report: BinomialityReport, doc: dict) -> str:
    net = doc["network"]
    lines = [
        f"verdict: {doc['verdict']}",
        f"network: {net['species']} species, {net['reactions']} reactions "
        f"({net['reversible']} reversible, {net['irreversible']} irreversible)",
    ]
    if doc["monomial_generators_present"]:
        lines.append("note: the block test yields monomial generators")
    if doc["generators"]:
        lines.append("generators:")
        lines.extend(f"  {g}" for g in doc["generators"])
    for w in doc["witness_rows"]:
        support = ", ".join(report.rref.matrix.col_labels[j] for j in w["support"])
        lines.append(f"witness row {w['row']}: nonzero in {support}")
    if doc["matrices"] is not None:
        lines.append("coefficient matrix:")
        lines.append(report.coefficient_matrix.render())
        lines.append(f"reduced row echelon form (rank {report.rref.rank}):")
        lines.append(report.rref.matrix.render())
    if doc["oracle"] is not None:
        o = doc["oracle"]
        if o["status"] == "ok":
            lines.append(f"groebner oracle: binomial={o['binomial']} agrees={o['agrees']}")
    timing = ", ".join(f"{k} {v} us" for k, v in doc["timings_us"].items())
    lines.append(f"timings: {timing}")
    return "\n".join(lines)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _parse_file(path: str):
    text = _read(path)
    start = time.perf_counter()
    network = parse_network(text)
    return network, time.perf_counter() - start


def cmd_check(args) -> int:
    network, parse_time = _parse_file(args.path)
    report = assemble_report(analyze(network), parse=parse_time)
    warnings = []
    oracle = None
    if args.verify_groebner:
        oracle = run_oracle(report)
        if oracle["status"] != "ok":
            warnings.append(f"groebner oracle skipped: {oracle['message']}")
        elif oracle["agrees"] is False:
            warnings.append("groebner oracle disagrees with the linear-algebra verdict")
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    doc = report_document(
        report,
        emit_matrices=args.emit_matrices,
        emit_generators=args.emit_generators,
        oracle=oracle,
        warnings=warnings,
    )
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(render_text(report, doc))
    return EXIT_CODES[report.kind]


def cmd_ode(args) -> int:
    network, _ = _parse_file(args.path)
    names = species_names(network)
    for sp, p in zip(network.species, ode_generators(network)):
        print(f"d{sp.name}/dt = {p.render(names)}")
    return 0


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _config(args, seed: Optional[int] = None) -> GenConfig:
    return GenConfig(
        seed=args.seed if seed is None else seed,
        species_count=args.species,
        reaction_count=args.reactions,
        max_stoich=args.max_stoich,
        max_species_per_complex=args.max_species_per_complex,
        reversible_fraction=args.reversible_fraction,
    )


def cmd_gen(args) -> int:
    try:
        network = generate(_config(args))
    except GenerationError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(format_network(network))
    return 0


def cmd_bench(args) -> int:
    if args.seeds < 1:
        raise UsageError("--seeds must be at least 1")
    rows = []
    for seed in range(args.start_seed, args.start_seed + args.seeds):
        try:
            network = generate(_config(args, seed))
        except GenerationError as exc:
            raise UsageError(str(exc)) from exc
        text = format_network(network)
        start = time.perf_counter()
        parsed = parse_network(text)
        parse_time = time.perf_counter() - start
        report = assemble_report(analyze(parsed), parse=parse_time)
        row = {"seed": seed, "verdict": report.kind.value, **{p: report.timings.get(p, 0.0) for p in PHASES}}
        row["total"] = sum(row[p] for p in PHASES)
        if args.verify_groebner:
            oracle = run_oracle(report)
            if oracle["status"] != "ok":
                row["oracle"] = "budget"
            elif oracle["agrees"] is None:
                row["oracle"] = "n/a"
            else:
                row["oracle"] = "ok" if oracle["agrees"] else "MISMATCH"
            row["ratio"] = oracle.get("time_us", 0) / 1e6 / row["total"] if oracle["status"] == "ok" else None
        rows.append(row)

    cols = ["seed", "verdict", *PHASES, "total"] + (["oracle", "ratio"] if args.verify_groebner else [])
    table = [cols]
    for row in rows:
        cells = []
        for c in cols:
            v = row[c]
            if c in PHASES or c == "total":
                cells.append(f"{v * 1e3:.3f}")
            elif c == "ratio":
                cells.append("-" if v is None else f"{v:.1f}x")
            else:
                cells.append(str(v))
        table.append(cells)
    widths = [max(len(r[j]) for r in table) for j in range(len(cols))]
    print(f"bench: {args.species} species x {args.reactions} reactions, {args.seeds} seed(s), times in ms")
    for r in table:
        print("  ".join(cell.rjust(w) for cell, w in zip(r, widths)))
    print()
    for phase in (*PHASES, "total"):
        vals = [row[phase] * 1e3 for row in rows]
        print(
            f"{phase:>8}: min {min(vals):.3f}  median {statistics.median(vals):.3f}  max {max(vals):.3f}"
        )
    if args.verify_groebner and any(row["oracle"] == "MISMATCH" for row in rows):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crnbinom", description="Unconditional binomiality of reaction networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    check = sub.add_parser("check", help="test a .crn network for binomiality")
    check.add_argument("path")
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.add_argument("--verify-groebner", action="store_true", help="attach a Groebner-basis cross-check")
    check.add_argument("--emit-matrices", action="store_true")
    check.add_argument("--emit-generators", action="store_true")
    check.set_defaults(func=cmd_check)

    ode = sub.add_parser("ode", help="print the mass-action ODE system")
    ode.add_argument("path")
    ode.set_defaults(func=cmd_ode)

    def gen_flags(p, species, reactions):
        p.add_argument("--species", type=int, default=species)
        p.add_argument("--reactions", type=int, default=reactions)
        p.add_argument("--max-stoich", type=int, default=1)
        p.add_argument("--max-species-per-complex", type=int, default=2)
        p.add_argument("--reversible-fraction", type=_fraction, default=Fraction(1))

    gen = sub.add_parser("gen", help="emit a seeded random network")
    gen.add_argument("--seed", type=int, default=1)
    gen_flags(gen, 2, 1)
    gen.set_defaults(func=cmd_gen)

    bench = sub.add_parser("bench", help="time the engine on random networks")
    bench.add_argument("--seeds", type=int, default=10)
    bench.add_argument("--start-seed", type=int, default=0)
    bench.add_argument("--verify-groebner", action="store_true")
    gen_flags(bench, 52, 86)
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"crnbinom: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except CRNParseError as exc:
        for err in exc.errors:
            print(f"{args.path}:{err}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
