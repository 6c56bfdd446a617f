"""Command-line front end: ``occ <subcommand> [spec source] [options]``.

Exit codes: 0 success, 1 a fixture cross-check failed, 2 usage or input
error, 3 partial result (a limit did not stabilize or a certification
stayed unknown); partial output always carries an "unresolved" list.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import fixtures as fx
from .config import Config
from .errors import CrosscheckFailure, NotFound, NotStabilized, OccError, UnsupportedLevel
from .groups import bowen_franks
from .lgraph import build, format_matrix, hereditary_subsets, matrix_systems, simplicity_verdict, symbolic_cell
from .oracle import build_oracle, language, reverse, union
from .report import compare_reports, full_report, k_result
from .spec import BuiltinCounter, BuiltinReset, CodeSpec, validate_spec_file
from .sync import certify_synchronizing, characteristic_pair, markov_code_truncation, reset_analysis, synchronizing_symbols

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3
FAMILIES = ("reset", "counter", "reset-rev", "union")
SUBCOMMANDS = ("lang", "sync", "graph", "matrices", "kgroups", "bf", "simplicity", "report", "compare", "fixtures")


class UsageError(Exception):
    pass


def family_spec(family: str, N: int) -> CodeSpec:
    if N < 1:
        raise UsageError("--N must be ≥ 1")
    if family == "reset":
        return BuiltinReset(N)
    if family == "counter":
        return BuiltinCounter(N)
    if family == "reset-rev":
        return reverse(BuiltinReset(N))
    return union(BuiltinReset(N), BuiltinCounter(N))


def _formatter(prog: str) -> argparse.HelpFormatter:
    return argparse.HelpFormatter(prog, max_help_position=32, width=100)


def _add_common(p: argparse.ArgumentParser, spec_required: bool = True) -> None:
    src = p.add_argument_group("spec source (exactly one)")
    src.add_argument("--family", choices=FAMILIES, help="built-in family")
    src.add_argument("--N", type=int, default=1, help="number of reset/counter symbols (default 1)")
    src.add_argument("--spec-file", metavar="PATH", help="JSON CodeSpec file")
    cfg = p.add_argument_group("bounds")
    cfg.add_argument("--level", type=int, default=10, help="λ-graph depth, or the matrix level for matrices/fixtures (default 10)")
    cfg.add_argument("--horizon", type=int, default=12, help="probe length for certifications (default 12)")
    cfg.add_argument("--window", type=int, default=3, help="stabilization window (default 3)")
    cfg.add_argument("--cutoff", type=int, default=6, help="word length bound for enumerated sets (default 6)")
    out = p.add_argument_group("output")
    out.add_argument("--format", choices=("json", "text", "dot"), default="text", help="output format (default text; dot for graph only)")
    out.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    out.add_argument("--seed", type=int, default=0, help="seed for sampled checks (default 0)")
    out.add_argument("--jobs", type=int, default=1, help="worker processes for independent computations (default 1)")
    p.set_defaults(_spec_required=spec_required)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="occ",
        description="Invariants of one-counter shifts: languages, synchronization, λ-graph systems, K-theory.",
        formatter_class=_formatter,
    )
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)
    helps = {
        "lang": "admissible words of a given length, or membership of --word",
        "sync": "synchronizing symbols, characteristic pair, reset and C(X) truncation",
        "graph": "λ-graph system through --level",
        "matrices": "symbolic and nonnegative matrices at --level",
        "kgroups": "K0 and K1 of the λ-graph system",
        "bf": "Bowen-Franks groups from the K-groups",
        "simplicity": "hereditary-subset search and simplicity verdicts",
        "report": "every invariant in one report",
        "compare": "try to distinguish two shifts up to flow equivalence",
        "fixtures": "closed-form level matrices of the reset families and their cross-checks",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name], description=helps[name], formatter_class=_formatter)
        _add_common(p)
        if name in ("lang", "sync"):
            p.add_argument("--word", help="a word, symbols separated by spaces")
        if name == "lang":
            p.add_argument("--length", type=int, default=4, help="word length to enumerate (default 4)")
        if name in ("graph", "matrices", "kgroups", "bf", "simplicity"):
            p.add_argument("--direction", choices=("future", "past"), help="λ-graph orientation (default future; past for reset-rev)")
        if name == "matrices":
            p.add_argument("--all-levels", action="store_true", help="emit every level up to --level")
        if name == "compare":
            p.add_argument("--against-reverse", action="store_true", help="compare with the time reversal")
            p.add_argument("--against-family", choices=FAMILIES, help="second shift: built-in family")
            p.add_argument("--against-N", type=int, help="second shift: N (default: --N)")
            p.add_argument("--against-spec-file", metavar="PATH", help="second shift: JSON CodeSpec file")
        if name == "fixtures":
            p.add_argument("--check", action="store_true", help="run the cross-checks instead of printing matrices")
    return parser


def _config(args) -> Config:
    try:
        return Config(args.horizon, args.window, args.cutoff, args.level)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _spec(args) -> CodeSpec:
    if bool(args.family) == bool(args.spec_file):
        raise UsageError("give exactly one of --family or --spec-file")
    if args.spec_file:
        return validate_spec_file(args.spec_file)
    return family_spec(args.family, args.N)


def _direction(args) -> str:
    if args.direction:
        return args.direction
    return "past" if args.family == "reset-rev" else "future"


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2)


class Result:
    def __init__(self, text: str, code: int = EXIT_OK) -> None:
        self.text = text
        self.code = code


def _partial(payload: dict, unresolved: list[str], fmt: str, text: str = "") -> Result:
    payload = dict(payload)
    payload["unresolved"] = unresolved
    if fmt == "text":
        body = "\n".join(x for x in (text, f"unresolved: {', '.join(unresolved)}" if unresolved else "") if x)
        return Result(body, EXIT_PARTIAL if unresolved else EXIT_OK)
    return Result(_dump(payload), EXIT_PARTIAL if unresolved else EXIT_OK)


# ---------------------------------------------------------------- subcommands


def cmd_lang(args, spec, cfg) -> Result:
    oracle = build_oracle(spec)
    if args.word is not None:
        w = oracle.word(args.word)
        ok = oracle.decide(w)
        if args.format == "text":
            return Result(f"{oracle.fmt(w)}: {'admissible' if ok else 'inadmissible'}")
        return Result(_dump({"schema": "occ.lang/1", "word": oracle.fmt(w), "admissible": ok}))
    if args.length < 0:
        raise UsageError("--length must be ≥ 0")
    words = sorted(language(oracle, args.length), key=lambda w: w)
    texts = [oracle.fmt(w) for w in words]
    if args.format == "text":
        return Result("\n".join(texts))
    return Result(_dump({"schema": "occ.lang/1", "alphabet": list(oracle.alphabet.names), "length": args.length, "count": len(words), "words": texts}))


def cmd_sync(args, spec, cfg) -> Result:
    oracle = build_oracle(spec)
    unresolved = []
    if args.word is not None:
        c = certify_synchronizing(oracle, args.word, cfg)
        if c.verdict == "unknown":
            unresolved.append("synchronizing")
        payload = {"schema": "occ.sync/1", "word": oracle.fmt(oracle.word(args.word)), "synchronizing": c.to_json()}
        return _partial(payload, unresolved, args.format, f"{payload['word']}: {c.verdict}")
    sync, cert = synchronizing_symbols(oracle, cfg)
    names = oracle.alphabet.names
    payload: dict = {"schema": "occ.sync/1", "synchronizing_symbols": sorted(names[s] for s in sync), "certainty": cert.to_json()}
    if cert.verdict != "certified_true":
        unresolved.append("synchronizing_symbols")
    lines = [f"synchronizing symbols: {', '.join(payload['synchronizing_symbols']) or 'none'}"]
    try:
        pair = characteristic_pair(oracle, cfg)
        payload["characteristic_pair"] = pair.to_json()
        rr = reset_analysis(oracle, pair, cfg)
        payload["reset"] = rr.to_json(oracle)
        lines.append(f"characteristic pair: ({pair.names[0]}, {pair.names[1]}), c_X = {pair.c_X_text or 'ε'}")
        lines.append(f"has reset: {rr.has_reset.verdict}; reset condition: {rr.reset_condition.verdict}")
        for key, c in (("has_reset", rr.has_reset), ("reset_condition", rr.reset_condition)):
            if c.verdict == "unknown":
                unresolved.append(key)
    except NotFound as exc:
        payload["characteristic_pair"] = None
        payload["characteristic_pair_diagnostics"] = exc.diagnostics
        lines.append(f"characteristic pair: not found ({exc})")
    if sync:
        code = markov_code_truncation(oracle, cfg)
        payload["markov_code"] = {
            "cutoff": cfg.cutoff,
            "words": [oracle.fmt(w) for w in code.words],
            "gamma": list(code.gamma),
            "s": list(code.s),
            "t": list(code.t),
            "transition": [list(r) for r in code.transition],
        }
        lines.append(f"C(X) up to length {cfg.cutoff}: {'; '.join(payload['markov_code']['words'])}")
    return _partial(payload, unresolved, args.format, "\n".join(lines))


def _graph(args, spec, cfg, L: int | None = None):
    return build(build_oracle(spec), _direction(args), cfg.max_level if L is None else L, cfg)


def cmd_graph(args, spec, cfg) -> Result:
    g = _graph(args, spec, cfg)
    if args.format == "dot":
        return Result(g.to_dot())
    if args.format == "text":
        lines = []
        for l, lv in enumerate(g.levels):
            lines.append(f"level {l}: {len(lv.vertices)} vertices")
            for v in lv.vertices:
                lines.append(f"  v{l}_{v.index}  [{g.vertex_name(l, v.index - 1) or 'ε'}]")
            for i, s, j in sorted(lv.edges):
                lines.append(f"  v{l}_{i + 1} --{g.label(s)}--> v{l + 1}_{j + 1}")
            for j, i in sorted(lv.iota.items()):
                lines.append(f"  ι(v{l + 1}_{j + 1}) = v{l}_{i + 1}")
        return Result("\n".join(lines))
    return Result(_dump(g.to_json()))


def cmd_matrices(args, spec, cfg) -> Result:
    l = args.level
    if l < 0:
        raise UsageError("--level must be ≥ 0")
    g = _graph(args, spec, cfg, L=l + 1)
    sym, nm = matrix_systems(g)
    first = 0 if args.all_levels else l
    payload = nm.to_json(sym, first)
    payload["levels"] = [rec for rec in payload["levels"] if rec["level"] <= l]
    payload["direction"] = g.direction
    if args.format == "text":
        lines = []
        for rec in payload["levels"]:
            k = rec["level"]
            rows, cols = sym.shapes[k]
            lines.append(f"level {k}: m = {rec['m'][0]} → {rec['m'][1]}")
            lines.append("𝓜:")
            lines.append(format_matrix([[symbolic_cell(sym.entry(k, i, j)) for j in range(cols)] for i in range(rows)]))
            lines.append("I:")
            lines.append(format_matrix(rec["I"]))
            lines.append("Mᵗ − Iᵗ:")
            lines.append(format_matrix(rec["MtminusIt"]))
        return Result("\n".join(lines))
    return Result(_dump(payload))


def _k(args, spec, cfg):
    g = _graph(args, spec, cfg)
    return k_result(g, cfg.window)


def cmd_kgroups(args, spec, cfg) -> Result:
    k = _k(args, spec, cfg)
    payload = {"schema": "occ.kgroups/1", "K0": k.k0.to_json() if k.k0 else None, "K1": k.k1.to_json() if k.k1 else None,
               "stable_from": {"K0": k.k0_level, "K1": k.k1_level}, "direction": k.direction}
    unresolved = [n for n, v in (("K0", k.k0), ("K1", k.k1)) if v is None]
    text = f"K_0 ≅ {k.k0 if k.k0 else 'unresolved'},   K_1 ≅ {k.k1 if k.k1 else 'unresolved'}"
    if not unresolved:
        return Result(text if args.format == "text" else _dump(payload))
    return _partial(payload, unresolved, args.format, text)


def cmd_bf(args, spec, cfg) -> Result:
    k = _k(args, spec, cfg)
    if k.k0 is None or k.k1 is None:
        return _partial({"schema": "occ.bf/1", "BF0": None, "BF1": None}, ["K0" if k.k0 is None else "K1"], args.format)
    bf = bowen_franks(k.k0, k.k1)
    payload = {"schema": "occ.bf/1", **bf.to_json()}
    if args.format == "text":
        lines = [f"BF^0 ≅ {bf.bf0},   BF^1 ≅ {bf.bf1}", f"note: {bf.note}"]
        if bf.stated_bf1 is not None:
            lines.append(f"BF^1 stated in source: {bf.stated_bf1}")
        return Result("\n".join(lines))
    return Result(_dump(payload))


def cmd_simplicity(args, spec, cfg) -> Result:
    oracle = build_oracle(spec)
    try:
        rr = reset_analysis(oracle, characteristic_pair(oracle, cfg), cfg)
    except NotFound:
        rr = None
    dirs = [args.direction] if args.direction else ["future", "past"]
    payload: dict = {"schema": "occ.simplicity/1"}
    unresolved, lines = [], []
    for d in dirs:
        g = build(oracle, d, cfg.max_level, cfg)
        hv = hereditary_subsets(g, cfg.window)
        sv = simplicity_verdict(g, rr, hv, cfg.window)
        payload[d] = {"hereditary": hv.to_json(), "verdict": sv.verdict, "clause": sv.clause}
        lines.append(f"{d}: {sv.verdict} ({sv.clause})")
        if sv.verdict == "unknown":
            unresolved.append(f"simplicity_{d}")
    return _partial(payload, unresolved, args.format, "\n".join(lines))


def _report(spec_cfg):
    spec, cfg = spec_cfg
    return full_report(spec, cfg)


def cmd_report(args, spec, cfg) -> Result:
    r = full_report(spec, cfg)
    text = r.render_text() if args.format == "text" else r.dumps()
    return Result(text, EXIT_PARTIAL if r.unresolved else EXIT_OK)


def cmd_compare(args, spec, cfg) -> Result:
    picks = [bool(args.against_reverse), bool(args.against_family), bool(args.against_spec_file)]
    if sum(picks) != 1:
        raise UsageError("compare needs exactly one of --against-reverse, --against-family, --against-spec-file")
    if args.against_reverse:
        other = reverse(spec)
    elif args.against_family:
        other = family_spec(args.against_family, args.against_N or args.N)
    else:
        other = validate_spec_file(args.against_spec_file)
    jobs = [(spec, cfg), (other, cfg)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=min(2, args.jobs)) as ex:
            ra, rb = list(ex.map(_report, jobs))
    else:
        ra, rb = map(_report, jobs)
    v = compare_reports(ra, rb)
    code = EXIT_PARTIAL if v.verdict == "not_distinguished" and v.caveats else EXIT_OK
    if args.format == "text":
        return Result(v.render_text(), code)
    payload = v.to_json()
    if code == EXIT_PARTIAL:
        payload["unresolved"] = v.caveats
    return Result(_dump(payload), code)


def cmd_fixtures(args, spec, cfg) -> Result:
    if args.family not in ("reset", "reset-rev"):
        raise UsageError("fixtures exist for --family reset and --family reset-rev only")
    fam = fx.FixtureFamily("reset_rev" if args.family == "reset-rev" else "reset", args.N)
    l = args.level
    if not args.check:
        b = fx.paper_fixtures(fam, l)
        payload = {"schema": "occ.fixtures/1", **b.to_json()}
        if args.format == "text":
            lines = [f"{fam.family}, N = {fam.N}, level {l}"]
            for key in ("M", "I", "MtminusIt", "B", "P", "J", "L"):
                lines += [f"{key}:", format_matrix(payload[key])]
            return Result("\n".join(lines))
        return Result(_dump(payload))
    rep = fx.fixture_crosscheck(fam, l, seed=args.seed, raise_on_failure=False)
    payload = {"schema": "occ.crosscheck/1", **rep.to_json()}
    code = EXIT_OK if rep.ok else EXIT_CHECK
    if args.format == "text":
        lines = [f"{fam.family}, N = {fam.N}, level {l}: {'ok' if rep.ok else 'FAILED'}"]
        for c in rep.checks:
            mark = {True: "pass", False: "FAIL", None: "n/a"}[c.passed]
            lines.append(f"  {mark:4} {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        return Result("\n".join(lines), code)
    return Result(_dump(payload), code)


COMMANDS = {
    "lang": cmd_lang, "sync": cmd_sync, "graph": cmd_graph, "matrices": cmd_matrices, "kgroups": cmd_kgroups,
    "bf": cmd_bf, "simplicity": cmd_simplicity, "report": cmd_report, "compare": cmd_compare, "fixtures": cmd_fixtures,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.format == "dot" and args.command != "graph":
            raise UsageError("--format dot is available for graph only")
        if args.jobs < 1:
            raise UsageError("--jobs must be ≥ 1")
        cfg = _config(args)
        spec = family_spec(args.family, args.N) if args.command == "fixtures" and args.family else _spec(args)
        result = COMMANDS[args.command](args, spec, cfg)
    except UsageError as exc:
        print(f"occ {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except UnsupportedLevel as exc:
        print(f"occ {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    except NotStabilized as exc:
        result = Result(_dump({"schema": f"occ.{args.command}/1", "error": str(exc), "unresolved": ["stabilization"]}), EXIT_PARTIAL)
    except CrosscheckFailure as exc:
        print(f"occ {args.command}: {exc}", file=stderr)
        return EXIT_CHECK
    except OccError as exc:
        print(f"occ {args.command}: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"occ {args.command}: {exc}", file=stderr)
        return EXIT_USAGE
    text = result.text if result.text.endswith("\n") else result.text + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return result.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
