"""Command-line front end: ``intpoints <subcommand> ...``.

Exit codes: 0 success / match, 1 usage or input error, 2 mismatch or failed
check, 3 time budget exhausted.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import kernels
from .constructions import ConstructionError, circle_set, construct, line_set
from .field import FieldError, field_of_order
from .formats import FormatError, dump_records, load_pointsets, pointset_record, render_ascii, render_svg
from .igraph import MAX_GRAPH_Q, build_graph, complement_params, expected_complement_srg, expected_srg, \
    srg_params, verify_paley_iso, write_edge_list
from .plane import PlaneError, direction_bound, directions_of, integral_set, max_collinear, pyth_triples, \
    pyth_triples_bruteforce
from .refine import RefineTimeout, automorphism_group
from .search import SearchBudgetExceeded, classify, extension_candidates
from .symmetry import IR_MAX_Q, GroupError, h_generators, h_group, h_order_formula, g_order_formula, \
    semilinear_stabilizer
from .tables import compare

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_BUDGET = 0, 1, 2, 3
SRG_MAX_Q = 47
H_MAX_Q = 47


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class Verdict:
    name: str
    status: str  # pass / fail / skip / match / mismatch / source-inconsistency
    computed: object = None
    expected: object = None
    source: str = ""
    notes: list[str] = field(default_factory=list)


@dataclass
class RunReport:
    command: str
    q: int | None
    wall_time: float = 0.0
    summary: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(v.status in ("fail", "mismatch") for v in self.verdicts)

    def to_json(self) -> str:
        return json.dumps(asdict(self), default=str, indent=2)

    def render(self) -> str:
        lines = [f"# {self.command} q={self.q} ({self.wall_time:.2f} s, kernels: {kernels.IMPLEMENTATION})"]
        for v in self.verdicts:
            exp = f" expected={v.expected}" if v.expected is not None else ""
            src = f" [{v.source}]" if v.source else ""
            lines.append(f"{v.status:>8}  {v.name}: computed={v.computed}{exp}{src}")
            lines.extend(f"          {n}" for n in v.notes)
        return "\n".join(lines)


def _field(q: int):
    try:
        return field_of_order(q)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _open_out(path):
    return open(path, "w") if path and path != "-" else contextlib.nullcontext(sys.stdout)


def _emit_report(report: RunReport, args):
    if getattr(args, "format", "tsv") == "json":
        return
    print(report.render(), file=sys.stderr)


# --- spectrum ---------------------------------------------------------------

def cmd_spectrum(args) -> int:
    ctx = _field(args.q)
    report = RunReport("spectrum", ctx.q)
    t0 = time.monotonic()
    try:
        res = classify(ctx, threads=args.threads, budget=args.budget_seconds)
    except SearchBudgetExceeded as exc:
        report.wall_time = time.monotonic() - t0
        report.verdicts.append(Verdict("classification", "budget", notes=[str(exc)]))
        print(report.render(), file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, GroupError) as exc:
        raise UsageError(str(exc)) from exc
    report.wall_time = time.monotonic() - t0
    table = res.table
    cmp = compare(ctx.q, table.rows)
    report.summary = {"row": table.to_dict(), "group_order": res.group_order, "candidates": res.candidates,
                      "l_q": table.min_size}
    report.verdicts.append(Verdict("spectrum row", cmp.verdict, table.total,
                                   cmp.expected.total if cmp.expected else None,
                                   cmp.expected.source if cmp.expected else "", cmp.notes))
    with _open_out(args.out) as fh:
        if args.format == "json":
            fh.write(report.to_json() + "\n")
        else:
            fh.write(table.to_tsv() + "\n")
    if args.records:
        with open(args.records, "w") as fh:
            dump_records((r.to_dict() for r in res.records), fh)
    _emit_report(report, args)
    return EXIT_OK if cmp.ok else EXIT_MISMATCH


# --- verify -----------------------------------------------------------------

def _check(report: RunReport, name: str, computed, expected, source: str):
    report.verdicts.append(Verdict(name, "pass" if computed == expected else "fail", computed, expected, source))


def cmd_verify(args) -> int:
    ctx = _field(args.q)
    q = ctx.q
    report = RunReport("verify", q)
    t0 = time.monotonic()
    if q % 2 == 0:
        g = build_graph(ctx)
        _check(report, "graph is complete", int(g.adj.sum()), q * q * (q * q - 1), "even characteristic")
    else:
        if q <= SRG_MAX_Q:
            g = build_graph(ctx)
            _check(report, "srg parameters", tuple(srg_params(g)), tuple(expected_srg(q)), "srg closed form")
            if q % 4 == 1:
                _check(report, "complement srg parameters", tuple(complement_params(g)),
                       tuple(expected_complement_srg(q)), "complement closed form")
        else:
            report.verdicts.append(Verdict("srg parameters", "skip", notes=[f"only for q <= {SRG_MAX_Q}"]))
        if q % 4 == 3:
            _check(report, "Paley identification", verify_paley_iso(ctx), True, "squares of F_q[i]")
        total = 0
        agree = True
        for c in range(q):
            par = pyth_triples(ctx, c)
            total += len(par)
            agree &= sorted(par) == sorted(pyth_triples_bruteforce(ctx, c))
        _check(report, "triples: parametric = brute force", agree, True, "brute force")
        _check(report, "triples: total count", total, q * q, "q^2 triples")
        if q <= H_MAX_Q:
            _check(report, "|H|", h_group(ctx).order, h_order_formula(q, ctx.r), "|H| formula")
        if q <= args.ir_max_q:
            try:
                res = automorphism_group(build_graph(ctx).adj, timeout=args.budget_seconds)
                _check(report, "|G| (refinement)", res.order, g_order_formula(q, ctx.r), "|G| formula")
            except RefineTimeout:
                report.verdicts.append(Verdict("|G| (refinement)", "budget"))
        else:
            report.verdicts.append(Verdict("|G| (refinement)", "skip", notes=[f"q > --ir-max-q {args.ir_max_q}"]))
        bound = direction_bound(ctx)
        for build in (circle_set, line_set):
            try:
                P = build(ctx).pointset
            except ConstructionError:
                continue
            name = build.__name__
            nd = len(directions_of(P))
            report.verdicts.append(Verdict(f"{name}: directions <= {bound}", "pass" if nd <= bound else "fail",
                                           nd, bound, "direction bound"))
            mc = max_collinear(P)
            if mc == len(P):
                continue  # the bound is for non-collinear sets
            lim = (q - 1) // 2 if q % 4 == 3 else (q + 1) // 2
            report.verdicts.append(Verdict(f"{name}: points on a line <= {lim}", "pass" if mc <= lim else "fail",
                                           mc, lim, "collinearity bound"))
    report.wall_time = time.monotonic() - t0
    if args.format == "json":
        with _open_out(args.out) as fh:
            fh.write(report.to_json() + "\n")
    else:
        with _open_out(args.out) as fh:
            fh.write(report.render() + "\n")
    if any(v.status == "budget" for v in report.verdicts):
        return EXIT_BUDGET
    return EXIT_MISMATCH if report.failed else EXIT_OK


# --- construct / check / plot -----------------------------------------------

def cmd_construct(args) -> int:
    ctx = _field(args.q)
    try:
        nc = construct(ctx, args.kind)
    except ConstructionError as exc:
        raise UsageError(str(exc)) from exc
    P = nc.pointset
    rec = pointset_record(P, name=nc.name, integral=integral_set(P), maximal=len(extension_candidates(P)) == 0)
    with _open_out(args.out) as fh:
        dump_records([rec], fh)
    if args.svg:
        Path(args.svg).write_text(render_svg(P))
    return EXIT_OK


def _read_sets(path: str):
    try:
        fh = sys.stdin if path == "-" else open(path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    with fh:
        try:
            return load_pointsets(fh)
        except (FormatError, FieldError, PlaneError) as exc:
            raise UsageError(str(exc)) from exc


def cmd_check(args) -> int:
    worst = EXIT_OK
    out = []
    for P in _read_sets(args.file):
        integral = integral_set(P)
        ext = len(extension_candidates(P)) if integral else None
        maximal = integral and ext == 0
        out.append(pointset_record(P, integral=integral, maximal=maximal, extensions=ext))
        if not maximal:
            worst = EXIT_MISMATCH
    with _open_out(args.out) as fh:
        if args.format == "json":
            dump_records(out, fh)
        else:
            for rec in out:
                ext = "-" if rec["extensions"] is None else rec["extensions"]
                fh.write(f"q={rec['q']}\tsize={rec['size']}\tintegral={'yes' if rec['integral'] else 'no'}"
                         f"\tmaximal={'yes' if rec['maximal'] else 'no'}\textensions={ext}\n")
    return worst


def cmd_plot(args) -> int:
    sets = _read_sets(args.file)
    P = sets[args.index] if args.index < len(sets) else None
    if P is None:
        raise UsageError(f"file holds {len(sets)} set(s)")
    text = render_ascii(P) if args.style == "ascii" else render_svg(P)
    with _open_out(args.out) as fh:
        fh.write(text)
    return EXIT_OK


# --- autgroup / graph-dump --------------------------------------------------

def cmd_autgroup(args) -> int:
    ctx = _field(args.q)
    q = ctx.q
    if q % 2 == 0:
        raise UsageError("automorphism groups are computed for odd q")
    t0 = time.monotonic()
    out = {"q": q, "p": ctx.p, "r": ctx.r}
    gens = h_generators(ctx)
    out["h_order"] = h_group(ctx).order
    out["h_order_formula"] = h_order_formula(q, ctx.r)
    out["h_generators"] = [g.to_dict() for g in gens]
    if q in (5, 9):
        out["h_extra_generators"] = len(semilinear_stabilizer(ctx))
    status = EXIT_OK
    if q <= args.ir_max_q:
        try:
            res = automorphism_group(build_graph(ctx).adj, timeout=args.budget_seconds)
        except RefineTimeout:
            return EXIT_BUDGET
        out["g_order"] = res.order
        out["g_order_formula"] = g_order_formula(q, ctx.r)
        out["ir_base"] = res.base
        out["ir_orbit_sizes"] = res.orbit_sizes
        out["ir_generators"] = [g.tolist() for g in res.generators]
    out["wall_time"] = round(time.monotonic() - t0, 3)
    with _open_out(args.out) as fh:
        fh.write(json.dumps(out) + "\n")
    return status


def cmd_graph_dump(args) -> int:
    ctx = _field(args.q)
    if ctx.q > MAX_GRAPH_Q:
        raise UsageError(f"graph dump limited to q <= {MAX_GRAPH_Q}")
    g = build_graph(ctx)
    with _open_out(args.out) as fh:
        fh.write(f"# q={ctx.q} vertices={g.n} vertex=x*q+y\n")
        write_edge_list(g, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="intpoints", description="Inclusion-maximal integral point sets over F_q^2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, q=True):
        if q:
            sp.add_argument("--q", type=int, required=True, help="field order (prime power)")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=["tsv", "json"], default="tsv")
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--budget-seconds", type=float, default=None)

    sp = sub.add_parser("spectrum", help="classify maximal sets and print the A_{q,s} row")
    common(sp)
    sp.add_argument("--records", default=None, help="write one JSON line per class here")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("verify", help="graph, triple and group checks for one q")
    common(sp)
    sp.add_argument("--ir-max-q", type=int, default=IR_MAX_Q)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="emit a named construction as a JSON line")
    common(sp)
    sp.add_argument("--kind", required=True, help="circle, line, vanishing-line or sporadic-N")
    sp.add_argument("--svg", default=None, help="also write a picture")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("check", help="test integrality and maximality of point sets from a file")
    common(sp, q=False)
    sp.add_argument("file", help="JSON / JSON-lines file, '-' for stdin")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("plot", help="draw a point set on the q x q grid")
    common(sp, q=False)
    sp.add_argument("file")
    sp.add_argument("--index", type=int, default=0, help="which set of the file")
    sp.add_argument("--style", choices=["svg", "ascii"], default="svg")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("autgroup", help="group orders and generators as JSON")
    common(sp)
    sp.add_argument("--ir-max-q", type=int, default=IR_MAX_Q)
    sp.set_defaults(func=cmd_autgroup)

    sp = sub.add_parser("graph-dump", help="edge list of the integral-distance graph")
    common(sp)
    sp.set_defaults(func=cmd_graph_dump)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("intpoints: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"intpoints: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
