"""λ-graph systems of follower classes, their matrix systems and hereditary subsets.

A vertex at level l is a class of left-infinite pasts x⁻ with the same set
Γ_l⁺(x⁻) of admissible length-l continuations.  Pasts are handled through
the capped presentation: a past determines the set T of states it can end
in, and the sets arising from genuinely infinite pasts are the ranges of
relations R_w that recur under prepending symbols.  Level classes are then
interned bottom-up from the one-step successor structure, so no word sets
are materialised unless asked for.

Edges are stored in the level-raising orientation: ``(i, γ, j)`` joins the
level-l class of x⁻γ (index i) to the level-(l+1) class of x⁻ (index j), and
``iota[l][j] = i`` sends the level-(l+1) class of x⁻ to its level-l class.
Indices are 0-based in code and 1-based in every export.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .alphabet import ALPHA_MINUS, ALPHA_PLUS, Alphabet, Word, shortlex_key
from .config import DEFAULT, Config
from .errors import NotStabilized, StructureViolation
from .intlin import Matrix, matmul, sub, transpose
from .oracle import SubshiftOracle, presentation
from .presentation import Presentation, deterministic_subsets
from .spec import BuiltinReset, CodeSpec, ExplicitMarkov, Reversed

LGRAPH_SCHEMA = "occ.lgraph/1"
MATRIX_SCHEMA = "occ.matrices/1"


@dataclass(frozen=True)
class VertexClass:
    level: int
    index: int  # 1-based position within the level
    representative: Word
    states: frozenset[int] = field(default=frozenset(), compare=False, repr=False)
    extender: frozenset[Word] | None = field(default=None, compare=False, repr=False)


@dataclass
class Level:
    vertices: list[VertexClass]
    edges: list[tuple[int, int, int]] = field(default_factory=list)  # (i at l, symbol, j at l+1)
    iota: dict[int, int] = field(default_factory=dict)  # j at l+1 -> i at l


@dataclass
class LambdaGraphSystem:
    direction: str
    alphabet: Alphabet
    levels: list[Level]
    spec: CodeSpec | None = None
    pres: Presentation | None = field(default=None, repr=False)
    cap: int | None = None
    ordering: str = "representative"
    _ext_cache: dict = field(default_factory=dict, repr=False)

    @property
    def L(self) -> int:
        return len(self.levels) - 1

    def m(self, l: int) -> int:
        return len(self.levels[l].vertices)

    def extender(self, l: int, i: int) -> frozenset[Word]:
        """Γ_l of vertex i (0-based) at level l."""
        v = self.levels[l].vertices[i]
        if v.extender is not None:
            return v.extender
        key = (l, i)
        if key not in self._ext_cache:
            if self.pres is None:
                raise ValueError("graph carries neither extender sets nor a presentation")
            self._ext_cache[key] = frozenset(_words_from(self.pres, v.states, l))
        return self._ext_cache[key]

    def label(self, sym: int) -> str:
        return self.alphabet.names[sym]

    def vertex_name(self, l: int, i: int) -> str:
        return self.alphabet.format(self.levels[l].vertices[i].representative)

    def to_json(self) -> dict:
        return {
            "schema": LGRAPH_SCHEMA,
            "direction": self.direction,
            "ordering": self.ordering,
            "alphabet": list(self.alphabet.names),
            "levels": [
                {
                    "level": l,
                    "vertices": [
                        {"index": v.index, "representative": self.alphabet.format(v.representative)} for v in lv.vertices
                    ],
                    "edges": [
                        {"source": i + 1, "label": self.label(s), "target": j + 1} for i, s, j in sorted(lv.edges)
                    ],
                    "iota": [[j + 1, i + 1] for j, i in sorted(lv.iota.items())],
                }
                for l, lv in enumerate(self.levels)
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph lambda_graph {", "  rankdir=TB;", "  node [shape=circle, fontsize=10];"]
        for l, lv in enumerate(self.levels):
            names = " ".join(f'"v{l}_{v.index}"' for v in lv.vertices)
            lines.append(f"  {{ rank=same; {names} }}")
            for v in lv.vertices:
                lines.append(f'  "v{l}_{v.index}" [label="{l}.{v.index}\\n{self.vertex_name(l, v.index - 1)}"];')
        for l, lv in enumerate(self.levels):
            for i, s, j in sorted(lv.edges):
                lines.append(f'  "v{l}_{i + 1}" -> "v{l + 1}_{j + 1}" [label="{self.label(s)}"];')
            for j, i in sorted(lv.iota.items()):
                lines.append(f'  "v{l + 1}_{j + 1}" -> "v{l}_{i + 1}" [style=dashed, arrowhead=empty];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _words_from(pres: Presentation, states: Iterable[int], n: int) -> list[Word]:
    out = []
    stack: list[tuple[Word, frozenset[int]]] = [((), frozenset(states))]
    while stack:
        w, cur = stack.pop()
        if len(w) == n:
            out.append(w)
            continue
        for s in range(pres.k):
            nxt = pres.succ(cur, s)
            if nxt:
                stack.append((w + (s,), nxt))
    return out


def reverse_spec(spec: CodeSpec) -> CodeSpec:
    return spec.base if isinstance(spec, Reversed) else Reversed(spec)


class _Masks:
    """Bitmask view of a presentation with memoised successor sets."""

    def __init__(self, pres: Presentation) -> None:
        self.n, self.k = pres.n, pres.k
        self.step = [[0] * pres.n for _ in range(pres.k)]
        for p, s, q in pres.edges:
            self.step[s][p] |= 1 << q
        self._succ: dict[tuple[int, int], int] = {}

    def succ(self, mask: int, s: int) -> int:
        key = (mask, s)
        out = self._succ.get(key)
        if out is None:
            out = 0
            row = self.step[s]
            m = mask
            while m:
                b = m & -m
                out |= row[b.bit_length() - 1]
                m ^= b
            self._succ[key] = out
        return out

    def recurrent_ends(self) -> list[int]:
        """End-state sets of left-infinite pasts: ranges of relations lying on a prepend cycle."""
        n, k = self.n, self.k
        ident = tuple(1 << p for p in range(n))
        index = {ident: 0}
        order = [ident]
        adj: list[list[int]] = []
        i = 0
        while i < len(order):
            R = order[i]
            out = []
            for s in range(k):
                row = self.step[s]
                R2 = []
                for p in range(n):
                    m, acc = row[p], 0
                    while m:
                        b = m & -m
                        acc |= R[b.bit_length() - 1]
                        m ^= b
                    R2.append(acc)
                R2t = tuple(R2)
                if not any(R2t):
                    continue
                if R2t not in index:
                    index[R2t] = len(order)
                    order.append(R2t)
                out.append(index[R2t])
            adj.append(out)
            i += 1
        on_cycle = _cyclic_nodes(adj)
        ends = set()
        for v in on_cycle:
            r = 0
            for x in order[v]:
                r |= x
            if r:
                ends.add(r)
        return sorted(ends)


def _cyclic_nodes(adj: list[list[int]]) -> set[int]:
    """Nodes on some cycle (iterative Tarjan)."""
    n = len(adj)
    index = [-1] * n
    low = [0] * n
    on = [False] * n
    stack: list[int] = []
    out: set[int] = set()
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on[v] = True
            recurse = False
            for j in range(pi, len(adj[v])):
                w = adj[v][j]
                if index[w] == -1:
                    work.append((v, j + 1))
                    work.append((w, 0))
                    recurse = True
                    break
                if on[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on[w] = False
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in adj[v]:
                    out.update(comp)
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return out


class _Classes:
    """Interned level classes F_l of state sets."""

    def __init__(self, masks: _Masks) -> None:
        self.masks = masks
        self.memo: list[dict[int, int]] = [{}]
        self.intern: list[dict[tuple, int]] = [{}]

    def __call__(self, mask: int, l: int) -> int:
        if l == 0:
            return 0
        while len(self.memo) <= l:
            self.memo.append({})
            self.intern.append({})
        got = self.memo[l].get(mask)
        if got is not None:
            return got
        sig = []
        for s in range(self.masks.k):
            nxt = self.masks.succ(mask, s)
            if nxt:
                sig.append((s, self(nxt, l - 1)))
        table = self.intern[l]
        cid = table.setdefault(tuple(sig), len(table))
        self.memo[l][mask] = cid
        return cid


def family_probes(spec: CodeSpec, alphabet: Alphabet, l: int) -> list[Word] | None:
    """Pasts picking out the standard vertex order for the reset family, else None.

    For the reset code the level-l classes are listed as
    ``a α₋^{l+2-i} α₊`` (i ≤ l+1), ``a`` (i = l+2) and ``a α₋^j`` (i = l+2+j).
    Its reversal uses the mirrored pasts ``α₊ α₋^{l+2-i} a``, ``a``, ``α₋^j a``
    read in the reversed system.
    """
    if l < 1:
        return None
    if isinstance(spec, BuiltinReset):
        a, c, b = alphabet.id_of("a_1"), alphabet.id_of(ALPHA_MINUS), alphabet.id_of(ALPHA_PLUS)
        probes = [(a,) + (c,) * (l + 2 - i) + (b,) for i in range(1, l + 2)]
        probes.append((a,))
        probes += [(a,) + (c,) * j for j in range(1, l + 1)]
        return probes
    return None


def _construct(pres: Presentation, L: int, alphabet: Alphabet, spec: CodeSpec | None) -> list[Level]:
    masks = _Masks(pres)
    F = _Classes(masks)
    W = masks.recurrent_ends()
    if not W:
        raise NotStabilized("the presentation admits no left-infinite past", None)
    classes: list[dict[int, int]] = []  # level -> class id -> a witnessing end-state mask
    for l in range(L + 1):
        seen: dict[int, int] = {}
        for T in W:
            seen.setdefault(F(T, l), T)
        classes.append(seen)
    # shortest-then-lex representatives by breadth-first search over reachable state sets
    reps: list[dict[int, Word]] = [{} for _ in range(L + 1)]
    missing = sum(len(c) for c in classes)
    for subset, word in deterministic_subsets(pres, pres.all_states):
        mask = 0
        for q in subset:
            mask |= 1 << q
        for l in range(L + 1):
            cid = F(mask, l)
            if cid in classes[l] and cid not in reps[l]:
                reps[l][cid] = word
                missing -= 1
        if not missing:
            break
    assert not missing, "every class is represented by a finite past"
    orders: list[list[int]] = []
    for l in range(L + 1):
        order = None
        probes = family_probes(spec, alphabet, l) if spec is not None else None
        if probes is not None:
            ids = []
            for p in probes:
                S = pres.run(p)
                mask = sum(1 << q for q in S)
                ids.append(F(mask, l) if mask else None)
            if sorted(i for i in ids if i is not None) == sorted(classes[l]) and len(set(ids)) == len(ids):
                order = ids
        if order is None:
            order = sorted(classes[l], key=lambda c: shortlex_key(reps[l][c]))
        orders.append(order)
    levels = []
    pos = [{c: i for i, c in enumerate(o)} for o in orders]
    for l in range(L + 1):
        verts = []
        for i, c in enumerate(orders[l]):
            T = classes[l][c]
            verts.append(VertexClass(l, i + 1, reps[l][c], frozenset(q for q in range(pres.n) if T >> q & 1)))
        levels.append(Level(verts))
    for l in range(L):
        edges = set()
        iota = {}
        for cid, T in classes[l + 1].items():
            j = pos[l + 1][cid]
            iota[j] = pos[l][F(T, l)]
            for s in range(pres.k):
                S = masks.succ(T, s)
                if S:
                    edges.add((pos[l][F(S, l)], s, j))
        levels[l].edges = sorted(edges)
        levels[l].iota = iota
    return levels


def _signature(levels: list[Level]) -> tuple:
    return tuple(
        (
            tuple(v.representative for v in lv.vertices),
            tuple(lv.edges),
            tuple(sorted(lv.iota.items())),
        )
        for lv in levels
    )


def build(oracle: SubshiftOracle, direction: str = "future", L: int | None = None, cfg: Config = DEFAULT) -> LambdaGraphSystem:
    """λ-graph system of ``oracle`` through level L.

    The capped presentation is enlarged one step at a time from cap L+3
    until the structure through level L is identical for ``cfg.window``
    consecutive enlargements; otherwise NotStabilized is raised.
    """
    if direction not in ("future", "past"):
        raise ValueError(f"direction must be 'future' or 'past', not {direction!r}")
    L = cfg.max_level if L is None else L
    if L < 1:
        raise ValueError("L must be ≥ 1")
    comp = oracle.spec if direction == "future" else reverse_spec(oracle.spec)
    alph = oracle.alphabet
    history = []
    prev_pres = None
    prev_levels = None
    stable = 0
    cap = L + 3
    limit = L + 3 + 4 * cfg.window + 8
    while cap <= limit:
        pres = presentation(comp, cap)
        if prev_pres is not None and pres == prev_pres:
            levels = prev_levels
        else:
            levels = _construct(pres, L, alph, comp)
        sig = _signature(levels)
        if history and sig == history[-1][1]:
            stable += 1
        else:
            stable = 0
        history.append((cap, sig))
        if stable >= cfg.window:
            generic = all(family_probes(comp, alph, l) is None for l in range(1, L + 1))
            return LambdaGraphSystem(
                direction,
                alph,
                levels,
                spec=oracle.spec,
                pres=pres,
                cap=cap,
                ordering="representative" if generic else "family",
            )
        prev_pres, prev_levels = pres, levels
        cap += 1
    trace = [(c, [len(lv[0]) for lv in s]) for c, s in history]
    raise NotStabilized(f"class structure through level {L} still changing at cap {limit}", trace)


# ---------------------------------------------------------------- matrices


@dataclass
class SymbolicMatrixSystem:
    labels: tuple[str, ...]
    entries: list[dict[tuple[int, int], Counter]]  # level l: (i, j) -> label counts
    I: list[Matrix]
    shapes: list[tuple[int, int]]

    def entry(self, l: int, i: int, j: int) -> dict[str, int]:
        """𝓜_{l,l+1}(i, j) as label → multiplicity (0-based indices)."""
        return dict(self.entries[l].get((i, j), {}))


@dataclass
class NonnegMatrixSystem:
    M: list[Matrix]
    I: list[Matrix]
    m: list[int]

    def MtminusIt(self, l: int) -> Matrix:
        return sub(transpose(self.M[l]), transpose(self.I[l]))

    def to_json(self, symbolic: SymbolicMatrixSystem | None = None, first: int = 0) -> dict:
        out = {"schema": MATRIX_SCHEMA, "levels": []}
        for l in range(first, len(self.M)):
            rec = {
                "level": l,
                "m": [self.m[l], self.m[l + 1]],
                "M": [list(r) for r in self.M[l]],
                "I": [list(r) for r in self.I[l]],
                "MtminusIt": [list(r) for r in self.MtminusIt(l)],
            }
            if symbolic is not None:
                rows, cols = symbolic.shapes[l]
                rec["symbolic"] = [
                    [dict(sorted(symbolic.entries[l].get((i, j), {}).items())) for j in range(cols)] for i in range(rows)
                ]
            out["levels"].append(rec)
        return out


def matrix_systems(graph: LambdaGraphSystem) -> tuple[SymbolicMatrixSystem, NonnegMatrixSystem]:
    entries, Ms, Is, shapes = [], [], [], []
    for l in range(graph.L):
        rows, cols = graph.m(l), graph.m(l + 1)
        ent: dict[tuple[int, int], Counter] = {}
        M = [[0] * cols for _ in range(rows)]
        for i, s, j in graph.levels[l].edges:
            ent.setdefault((i, j), Counter())[graph.label(s)] += 1
            M[i][j] += 1
        I = [[0] * cols for _ in range(rows)]
        for j, i in graph.levels[l].iota.items():
            I[i][j] = 1
        entries.append(ent)
        Ms.append(tuple(tuple(r) for r in M))
        Is.append(tuple(tuple(r) for r in I))
        shapes.append((rows, cols))
    m = [graph.m(l) for l in range(graph.L + 1)]
    return SymbolicMatrixSystem(graph.alphabet.names, entries, Is, shapes), NonnegMatrixSystem(Ms, Is, m)


# ---------------------------------------------------------------- structure


@dataclass
class StructureReport:
    ok: bool
    levels_checked: int
    checks: tuple[str, ...] = ("iota", "extender", "edges", "compatibility")

    def to_json(self) -> dict:
        return {"ok": self.ok, "levels_checked": self.levels_checked, "checks": list(self.checks)}


def verify_structure(graph: LambdaGraphSystem, extender_levels: int | None = None) -> StructureReport:
    """Check ι surjectivity, edge/extender consistency and I·M = M·I; raise on the first violation.

    Edge consistency in the stored orientation reads: an edge γ from v (level l)
    to w (level l+1) exists iff Γ_l(v) = {b : γb ∈ Γ_{l+1}(w)} and that set is
    nonempty.  Extender checks run through level ``extender_levels`` (default:
    all levels), since they enumerate words.
    """
    L = graph.L
    for l in range(L):
        lv = graph.levels[l]
        mnext = graph.m(l + 1)
        for j in range(mnext):
            if j not in lv.iota:
                raise StructureViolation("iota", l, f"vertex {j + 1} at level {l + 1} has no ι image")
            if not 0 <= lv.iota[j] < graph.m(l):
                raise StructureViolation("iota", l, f"ι image of vertex {j + 1} out of range")
        if set(lv.iota.values()) != set(range(graph.m(l))):
            missing = sorted(set(range(graph.m(l))) - set(lv.iota.values()))
            raise StructureViolation("iota", l, f"vertices {[x + 1 for x in missing]} have no ι preimage")
        targets = {j for _, _, j in lv.edges}
        sources = {i for i, _, _ in lv.edges}
        if targets != set(range(mnext)):
            raise StructureViolation("edges", l, "a level-(l+1) vertex has no incoming edge")
        if l >= 1 and sources != set(range(graph.m(l))):
            raise StructureViolation("edges", l, "a vertex has no edge to the next level")
    top = L if extender_levels is None else min(L, extender_levels)
    can_check = graph.pres is not None or all(v.extender is not None for lv in graph.levels for v in lv.vertices)
    if can_check:
        for l in range(top + 1):
            exts = [graph.extender(l, i) for i in range(graph.m(l))]
            if any(not e for e in exts):
                raise StructureViolation("extender", l, "empty extender set")
            if len(set(exts)) != len(exts):
                raise StructureViolation("extender", l, "two vertices share an extender set")
        for l in range(top):
            lv = graph.levels[l]
            index = {graph.extender(l, i): i for i in range(graph.m(l))}
            expect = set()
            for j in range(graph.m(l + 1)):
                ext = graph.extender(l + 1, j)
                trunc = {b[:l] for b in ext}
                if trunc != graph.extender(l, lv.iota[j]):
                    raise StructureViolation("iota", l, f"ι({j + 1}) does not truncate extenders")
                by_first: dict[int, set] = {}
                for b in ext:
                    by_first.setdefault(b[0], set()).add(b[1:])
                for s, rest in by_first.items():
                    i = index.get(frozenset(rest))
                    if i is None:
                        raise StructureViolation("edges", l, f"no level-{l} vertex carries the {graph.label(s)}-tails of {j + 1}")
                    expect.add((i, s, j))
            if expect != set(lv.edges):
                raise StructureViolation("edges", l, f"edge set differs from extender containment ({len(expect ^ set(lv.edges))} mismatches)")
    _, nm = matrix_systems(graph)
    for l in range(L - 1):
        left = matmul(nm.I[l], nm.M[l + 1])
        right = matmul(nm.M[l], nm.I[l + 1])
        if left != right:
            raise StructureViolation("compatibility", l, "I_{l,l+1} M_{l+1,l+2} ≠ M_{l,l+1} I_{l+1,l+2}")
    return StructureReport(True, L)


# ---------------------------------------------------------------- hereditary subsets


@dataclass
class HereditaryVerdict:
    found: bool
    subset: list[list[int]] | None  # per level, 1-based vertex indices
    proper: bool
    level_checked: int
    seed: tuple[int, int] | None = None  # (level, 1-based index)
    strategy: str = ""

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "proper": self.proper,
            "level_checked": self.level_checked,
            "seed": list(self.seed) if self.seed else None,
            "subset": self.subset,
            "strategy": self.strategy,
        }


HEREDITARY_STRATEGY = (
    "closure of every single vertex under ι-preimages and edge targets; "
    "the least hereditary set containing a vertex is proper iff some proper hereditary set contains it, "
    "so seeding is exhaustive up to truncation; seeds sit at levels l0 ≤ (L-window-1)/2 so each closure is "
    "watched for more than l0+window levels, and a closure counts as proper when no level is fully covered "
    "and the number of uncovered vertices is constant over the last window+1 levels"
)


def hereditary_closure(graph: LambdaGraphSystem, seeds: Iterable[tuple[int, int]]) -> list[set[int]]:
    """Least family containing the seeds closed under ι-preimages and edge targets (0-based)."""
    L = graph.L
    up: list[dict[int, set[int]]] = []
    for l in range(L):
        nb: dict[int, set[int]] = {}
        for i, _, j in graph.levels[l].edges:
            nb.setdefault(i, set()).add(j)
        for j, i in graph.levels[l].iota.items():
            nb.setdefault(i, set()).add(j)
        up.append(nb)
    out = [set() for _ in range(L + 1)]
    stack = list(seeds)
    for l, i in stack:
        out[l].add(i)
    while stack:
        l, i = stack.pop()
        if l >= L:
            continue
        for j in up[l].get(i, ()):
            if j not in out[l + 1]:
                out[l + 1].add(j)
                stack.append((l + 1, j))
    return out


def is_hereditary(graph: LambdaGraphSystem, family: Sequence[set[int]]) -> bool:
    for l in range(graph.L):
        lv = graph.levels[l]
        for j, i in lv.iota.items():
            if i in family[l] and j not in family[l + 1]:
                return False
        for i, _, j in lv.edges:
            if i in family[l] and j not in family[l + 1]:
                return False
    return True


def hereditary_subsets(graph: LambdaGraphSystem, window: int = 3) -> HereditaryVerdict:
    """Search for a proper hereditary subset by closing single-vertex seeds.

    A vertex at level l0 can take about l0 further levels to spread (a
    counter of size l0 has to run down), so seeds sit at levels
    1 .. (L-window-1)/2 and each closure is watched for more than l0+window
    levels.  A closure is accepted when no level is fully covered and the
    count of uncovered vertices is constant over the last ``window`` + 1
    levels.
    """
    L = graph.L
    if L < 3:
        raise ValueError("hereditary search needs L ≥ 3")
    top = max(1, (L - window - 1) // 2)
    for l0 in range(1, top + 1):
        for i0 in range(graph.m(l0)):
            fam = hereditary_closure(graph, [(l0, i0)])
            gaps = [graph.m(l) - len(fam[l]) for l in range(L + 1)]
            if any(g == 0 for g in gaps[l0:]):
                continue
            tail = gaps[L - window :]
            if len(set(tail)) != 1:
                continue
            subset = [sorted(x + 1 for x in fam[l]) for l in range(L + 1)]
            return HereditaryVerdict(True, subset, True, L, (l0, i0 + 1), HEREDITARY_STRATEGY)
    return HereditaryVerdict(False, None, False, L, None, HEREDITARY_STRATEGY)


@dataclass(frozen=True)
class SimplicityVerdict:
    verdict: str  # simple | not_simple | unknown
    clause: str

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "clause": self.clause}


def simplicity_verdict(graph: LambdaGraphSystem, reset=None, hv: HereditaryVerdict | None = None, window: int = 3) -> SimplicityVerdict:
    """Simplicity of the algebra of ``graph`` from the hereditary search and the reset certificate."""
    hv = hv or hereditary_subsets(graph, window)
    if hv.found:
        return SimplicityVerdict("not_simple", f"proper hereditary subset seeded at level {hv.seed[0]}, vertex {hv.seed[1]}")
    has_reset = getattr(getattr(reset, "has_reset", None), "verdict", None)
    if graph.direction == "future" and has_reset == "certified_true":
        return SimplicityVerdict("simple", f"no proper hereditary subset through level {hv.level_checked} and the shift has reset")
    if graph.direction != "future":
        return SimplicityVerdict("unknown", "no proper hereditary subset found; the reset criterion applies to the future system only")
    return SimplicityVerdict("unknown", "no proper hereditary subset found but reset is not certified")


def format_matrix(rows: Sequence[Sequence], width: int | None = None) -> str:
    cells = [[str(x) for x in r] for r in rows]
    if not cells:
        return "(empty)"
    w = width or max(len(c) for r in cells for c in r)
    return "\n".join(" ".join(c.rjust(w) for c in r) for r in cells)


def symbolic_cell(counts: dict[str, int]) -> str:
    if not counts:
        return "0"
    return "+".join(name if c == 1 else f"{c}{name}" for name, c in sorted(counts.items()))
