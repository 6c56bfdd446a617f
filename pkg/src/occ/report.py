"""End-to-end invariant reports and flow-equivalence comparison."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import spec as specmod
from .config import DEFAULT, Config
from .errors import NotFound, NotStabilized, OccError
from .groups import BowenFranks, FgAbelianGroup, bowen_franks, k_groups
from .lgraph import LambdaGraphSystem, build, hereditary_subsets, matrix_systems, simplicity_verdict, verify_structure
from .oracle import build_oracle
from .spec import CodeSpec
from .sync import CharacteristicPairReport, ResetReport, characteristic_pair, reset_analysis, synchronizing_symbols

REPORT_SCHEMA = "occ.report/1"
COMPARE_SCHEMA = "occ.compare/1"


@dataclass
class KResult:
    direction: str
    k0: FgAbelianGroup | None
    k1: FgAbelianGroup | None
    k0_level: int | None
    k1_level: int | None
    error: str = ""

    def to_json(self) -> dict:
        g = lambda x: x.to_json() if x is not None else None
        return {"direction": self.direction, "K0": g(self.k0), "K1": g(self.k1), "K0_stable_from": self.k0_level, "K1_stable_from": self.k1_level, "error": self.error or None}


def k_result(graph: LambdaGraphSystem, window: int) -> KResult:
    _, nm = matrix_systems(graph)
    try:
        k0, k1, tr = k_groups(nm.M, nm.I, window)
        return KResult(graph.direction, k0, k1, tr.k0.stable_from, tr.k1.stable_from)
    except NotStabilized as exc:
        tr = exc.trace
        pick = lambda t: (t.limit, t.stable_from) if t is not None and not isinstance(t, list) else (None, None)
        (k0, l0), (k1, l1) = pick(getattr(tr, "k0", None)), pick(getattr(tr, "k1", None))
        return KResult(graph.direction, k0, k1, l0, l1, str(exc))


@dataclass
class GraphSummary:
    direction: str
    levels: int
    m: list[int]
    edges: list[int]
    cap: int | None
    ordering: str
    structure_ok: bool
    hereditary: dict
    simplicity: dict
    k: KResult

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "levels": self.levels,
            "m": self.m,
            "edges": self.edges,
            "cap": self.cap,
            "ordering": self.ordering,
            "structure_ok": self.structure_ok,
            "hereditary": self.hereditary,
            "simplicity": self.simplicity,
            "k_groups": self.k.to_json(),
        }


@dataclass
class InvariantReport:
    spec: CodeSpec
    config: Config
    sync_symbols: list[str]
    pair: CharacteristicPairReport | None
    reset: ResetReport | None
    graphs: dict[str, GraphSummary]
    k0: FgAbelianGroup | None
    k1: FgAbelianGroup | None
    bf: BowenFranks | None
    unresolved: list[str] = field(default_factory=list)
    _oracle: object = field(default=None, repr=False)

    @property
    def simplicity_future(self) -> str:
        g = self.graphs.get("future")
        return g.simplicity["verdict"] if g else "unknown"

    @property
    def simplicity_past(self) -> str:
        g = self.graphs.get("past")
        return g.simplicity["verdict"] if g else "unknown"

    @property
    def stable_level(self) -> int | None:
        g = self.graphs.get("future")
        if g is None or g.k.k0_level is None or g.k.k1_level is None:
            return None
        return max(g.k.k0_level, g.k.k1_level)

    def to_json(self) -> dict:
        g = lambda x: x.to_json() if x is not None else None
        return {
            "schema": REPORT_SCHEMA,
            "spec": specmod.to_json(self.spec),
            "description": specmod.describe(self.spec),
            "config": self.config.to_json(),
            "sync": {
                "synchronizing_symbols": self.sync_symbols,
                "characteristic_pair": g(self.pair),
                "reset": self.reset.to_json(self._oracle) if self.reset is not None else None,
            },
            "graphs": {d: s.to_json() for d, s in sorted(self.graphs.items())},
            "K0": g(self.k0),
            "K1": g(self.k1),
            "K_stable_from": self.stable_level,
            "bowen_franks": g(self.bf),
            "simplicity_future": self.simplicity_future,
            "simplicity_past": self.simplicity_past,
            "unresolved": self.unresolved,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), ensure_ascii=False, indent=2, sort_keys=True)

    def render_text(self) -> str:
        name = specmod.describe(self.spec)
        s = lambda x: str(x) if x is not None else "unresolved"
        lines = [
            f"X = {name}",
            f"K_0(X) ≅ {s(self.k0)},   K_1(X) ≅ {s(self.k1)}",
        ]
        if self.bf is not None:
            lines.append(f"BF^0(X) ≅ {self.bf.bf0},   BF^1(X) ≅ {self.bf.bf1}")
            if self.bf.stated_bf1 is not None:
                lines.append(f"  note: {self.bf.note}")
        if self.stable_level is not None:
            lines.append(f"  (limits read from level {self.stable_level}, graphs through level {self.config.max_level})")
        lines.append(f"future λ-graph: {self.simplicity_future}   past λ-graph: {self.simplicity_past}")
        if self.pair is not None:
            lines.append(f"characteristic pair: ({self.pair.names[0]}, {self.pair.names[1]}), c_X = {self.pair.c_X_text or 'ε'}")
        if self.reset is not None:
            lines.append(f"reset: {self.reset.has_reset.verdict}   reset condition: {self.reset.reset_condition.verdict}")
        lines.append(f"synchronizing symbols: {', '.join(self.sync_symbols) or 'none'}")
        if self.unresolved:
            lines.append(f"unresolved: {', '.join(self.unresolved)}")
        return "\n".join(lines)


def graph_summary(graph: LambdaGraphSystem, reset: ResetReport | None, cfg: Config) -> GraphSummary:
    try:
        verify_structure(graph, extender_levels=min(graph.L, 6))
        ok = True
    except OccError:
        ok = False
    hv = hereditary_subsets(graph, cfg.window)
    sv = simplicity_verdict(graph, reset, hv, cfg.window)
    _, nm = matrix_systems(graph)
    return GraphSummary(
        graph.direction,
        graph.L,
        [graph.m(l) for l in range(graph.L + 1)],
        [sum(map(sum, M)) for M in nm.M],
        graph.cap,
        graph.ordering,
        ok,
        {"found": hv.found, "seed": list(hv.seed) if hv.seed else None, "level_checked": hv.level_checked},
        sv.to_json(),
        k_result(graph, cfg.window),
    )


def full_report(spec: CodeSpec, cfg: Config = DEFAULT) -> InvariantReport:
    """Every invariant the toolkit computes; failures become named gaps in ``unresolved``."""
    oracle = build_oracle(spec)
    unresolved: list[str] = []
    sync, sync_cert = synchronizing_symbols(oracle, cfg)
    if sync_cert.verdict != "certified_true":
        unresolved.append("synchronizing_symbols")
    pair = reset = None
    try:
        pair = characteristic_pair(oracle, cfg)
        reset = reset_analysis(oracle, pair, cfg)
        if reset.has_reset.verdict == "unknown":
            unresolved.append("has_reset")
        if reset.reset_condition.verdict == "unknown":
            unresolved.append("reset_condition")
    except NotFound:
        unresolved.append("characteristic_pair")
    graphs: dict[str, GraphSummary] = {}
    for direction in ("future", "past"):
        try:
            graph = build(oracle, direction, cfg.max_level, cfg)
        except NotStabilized:
            unresolved.append(f"{direction}_graph")
            continue
        gs = graph_summary(graph, reset, cfg)
        graphs[direction] = gs
        if not gs.structure_ok:
            unresolved.append(f"{direction}_structure")
        if gs.simplicity["verdict"] == "unknown":
            unresolved.append(f"simplicity_{direction}")
        if gs.k.error:
            unresolved.append(f"k_groups_{direction}")
    k0 = k1 = bf = None
    fut = graphs.get("future")
    if fut is not None and fut.k.k0 is not None and fut.k.k1 is not None:
        k0, k1 = fut.k.k0, fut.k.k1
        bf = bowen_franks(k0, k1)
    else:
        unresolved.append("K_groups")
    names = oracle.alphabet.names
    return InvariantReport(spec, cfg, sorted(names[s] for s in sync), pair, reset, graphs, k0, k1, bf, unresolved, oracle)


# ---------------------------------------------------------------- comparison


@dataclass
class FlowVerdict:
    verdict: str  # distinguished | not_distinguished
    reason: str
    invariants: dict
    caveats: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"schema": COMPARE_SCHEMA, "verdict": self.verdict, "reason": self.reason, "invariants": self.invariants, "caveats": self.caveats}

    def render_text(self) -> str:
        out = f"{self.verdict.replace('_', ' ')}: {self.reason}" if self.reason else self.verdict.replace("_", " ")
        return "\n".join([out] + [f"  caveat: {c}" for c in self.caveats])


def _group_reason(name: str, a: FgAbelianGroup, b: FgAbelianGroup) -> str:
    if a.torsion != b.torsion:
        return f"torsion of {name} ({a.torsion_part()} vs {b.torsion_part()})"
    return f"rank of {name} ({a.rank} vs {b.rank})"


def compare_reports(ra: InvariantReport, rb: InvariantReport) -> FlowVerdict:
    inv = {
        "A": {"K0": str(ra.k0), "K1": str(ra.k1), "BF0": str(ra.bf.bf0) if ra.bf else None, "BF1": str(ra.bf.bf1) if ra.bf else None, "pattern": [ra.simplicity_future, ra.simplicity_past]},
        "B": {"K0": str(rb.k0), "K1": str(rb.k1), "BF0": str(rb.bf.bf0) if rb.bf else None, "BF1": str(rb.bf.bf1) if rb.bf else None, "pattern": [rb.simplicity_future, rb.simplicity_past]},
    }
    caveats = []
    for name, x, y in (("K0", ra.k0, rb.k0), ("K1", ra.k1, rb.k1)):
        if x is None or y is None:
            caveats.append(f"{name} unresolved on one side")
        elif x != y:
            return FlowVerdict("distinguished", _group_reason(name, x, y), inv)
    if ra.bf is not None and rb.bf is not None:
        for name, x, y in (("BF0", ra.bf.bf0, rb.bf.bf0), ("BF1", ra.bf.bf1, rb.bf.bf1)):
            if x != y:
                return FlowVerdict("distinguished", _group_reason(name, x, y), inv)
    for side, x, y in (("future", ra.simplicity_future, rb.simplicity_future), ("past", ra.simplicity_past, rb.simplicity_past)):
        if "unknown" in (x, y):
            if x != y:
                caveats.append(f"{side} simplicity unresolved on one side")
            continue
        if x != y:
            nice = lambda v: v.replace("_", " ")
            return FlowVerdict("distinguished", f"ideal structure ({side} {nice(x)} vs {nice(y)})", inv, caveats)
    return FlowVerdict("not_distinguished", "no computed invariant separates the two shifts", inv, caveats)


def compare(spec_a: CodeSpec, spec_b: CodeSpec, cfg: Config = DEFAULT) -> FlowVerdict:
    """Distinguish two shifts up to flow equivalence by K-groups, BF groups or simplicity pattern."""
    return compare_reports(full_report(spec_a, cfg), full_report(spec_b, cfg))
