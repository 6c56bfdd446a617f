"""Finite labeled-graph presentations of coded systems.

Every spec compiles, for a counter cap ``C``, into a labeled graph whose
bi-infinite paths approximate the coded system.  Counter values above ``C``
collapse into an absorbing ``ω`` value that behaves like an unbounded
counter: pushes and pops keep it at ``ω`` and it never satisfies an
exact-match terminal.  A bounded y-run may also start in a state ``ω*``
with a free, untracked deficit; it has no way in, so it only serves runs
whose x-run lies outside the word (or infinitely far in the past), and it
may drop to the top tracked deficit at any time.  A word of length ``n``
only ever visits counter values below ``n``, so the capped graph decides
words of length ``< C`` exactly; longer-range structure is validated by
growing ``C``.

The one-counter families are compiled from *patterns*

    p · x^k · y^m · s      with  m ≤ k (``le``),  m = k (``eq``)  or  m ≥ k (``ge``)

which are closed under reversal, so reversed built-ins keep a
deterministic presentation.  Everything else (symbol expansion, block
recoding, explicit Markov codes) is done on the graph.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

OMEGA = "ω"
FREE = "ω*"

# A pattern group shares prefix words and run blocks; options pick the relation
# between the two run lengths and the suffix words.  Words are tuples of names.
NameWord = tuple[str, ...]


@dataclass(frozen=True)
class PatternGroup:
    prefixes: tuple[NameWord, ...]
    x: NameWord
    y: NameWord
    bounded: bool
    options: tuple[tuple[str, tuple[NameWord, ...]], ...]

    def key(self):
        return (self.prefixes, self.x, self.y, self.bounded)


def merge_groups(groups: Iterable[PatternGroup]) -> tuple[PatternGroup, ...]:
    merged: dict = {}
    for g in groups:
        k = g.key()
        if k in merged:
            old = merged[k]
            opts = tuple(dict.fromkeys(old.options + g.options))
            merged[k] = PatternGroup(g.prefixes, g.x, g.y, g.bounded, opts)
        else:
            merged[k] = g
    return tuple(merged.values())


_FLIP = {"le": "ge", "ge": "le", "eq": "eq"}


def reverse_groups(groups: Sequence[PatternGroup]) -> tuple[PatternGroup, ...]:
    out = []
    for g in groups:
        rprefixes = tuple(tuple(reversed(p)) for p in g.prefixes)
        for rel, suffixes in g.options:
            nrel = _FLIP[rel]
            out.append(
                PatternGroup(
                    tuple(tuple(reversed(s)) for s in suffixes),
                    tuple(reversed(g.y)),
                    tuple(reversed(g.x)),
                    nrel != "ge",
                    ((nrel, rprefixes),),
                )
            )
    return merge_groups(out)


class NFA:
    """Mutable labeled graph with ε-edges, used while compiling."""

    def __init__(self) -> None:
        self.keys: list[Hashable] = []
        self.index: dict[Hashable, int] = {}
        self.edges: list[tuple[int, int | None, int]] = []
        self.boundary: int | None = None

    def state(self, key: Hashable) -> int:
        i = self.index.get(key)
        if i is None:
            i = len(self.keys)
            self.index[key] = i
            self.keys.append(key)
        return i

    def add(self, p: int, sym: int | None, q: int) -> None:
        self.edges.append((p, sym, q))

    def absorb(self, other: "NFA", tag: Hashable, relabel: Sequence[int] | None = None) -> dict[int, int]:
        """Copy ``other`` in, identifying its boundary with ours; returns the state map."""
        m: dict[int, int] = {}
        for i, k in enumerate(other.keys):
            if other.boundary is not None and i == other.boundary and self.boundary is not None:
                m[i] = self.boundary
            else:
                m[i] = self.state((tag, k))
        for p, s, q in other.edges:
            ns = s if s is None or relabel is None else relabel[s]
            self.add(m[p], ns, m[q])
        return m


def _add_word_path(nfa: NFA, start: int, word: Sequence[int], tag: Hashable) -> int:
    """Trie path spelling ``word`` from ``start``; returns the end state."""
    cur = start
    for i, s in enumerate(word):
        nxt = nfa.state((tag, tuple(word[: i + 1])))
        if (cur, s, nxt) not in _edge_set(nfa):
            nfa.add(cur, s, nxt)
        cur = nxt
    return cur


def _edge_set(nfa: NFA) -> set:
    cache = getattr(nfa, "_eset", None)
    if cache is None or cache[0] != len(nfa.edges):
        cache = (len(nfa.edges), set(nfa.edges))
        nfa._eset = cache
    return cache[1]


def compile_groups(groups: Sequence[PatternGroup], ids: dict[str, int], cap: int) -> NFA:
    """Compile pattern groups sharing one boundary state into a capped NFA."""
    nfa = NFA()
    B = nfa.state("B")
    nfa.boundary = B

    def bump(c):
        return OMEGA if c == OMEGA or c + 1 > cap else c + 1

    for gi, g in enumerate(groups):
        x = [ids[n] for n in g.x]
        y = [ids[n] for n in g.y]
        after_prefix = nfa.state(("P", gi))
        for p in g.prefixes:
            end = _add_word_path(nfa, B, [ids[n] for n in p], ("pre", gi))
            nfa.add(end, None, after_prefix)

        def block(src: int, word: list[int], dst_key, tag) -> None:
            cur = src
            for i, s in enumerate(word[:-1]):
                nxt = nfa.state((tag, dst_key, i + 1))
                nfa.add(cur, s, nxt)
                cur = nxt
            nfa.add(cur, word[-1], nfa.state(dst_key))

        counts = list(range(1, cap + 1)) + [OMEGA]
        # first x block, then further x blocks
        block(after_prefix, x, ("xd", gi, 1), ("x", gi))
        for c in counts:
            block(nfa.state(("xd", gi, c)), x, ("xd", gi, bump(c)), ("x", gi))
        # first y block from a completed x run
        for c in counts:
            d = OMEGA if c == OMEGA else c - 1
            block(nfa.state(("xd", gi, c)), y, ("yd", gi, d), ("y", gi))
        ds = list(range(0, cap + 1)) + [OMEGA]
        for d in ds:
            if d == OMEGA:
                nd = OMEGA
            elif d >= 1:
                nd = d - 1
            elif not g.bounded:
                nd = 0
            else:
                continue
            block(nfa.state(("yd", gi, d)), y, ("yd", gi, nd), ("y", gi))
        if g.bounded:
            # a y-run whose x-run lies beyond any finite window: its deficit is
            # free, so it may stay large or drop to the top tracked value
            free = nfa.state(("yd", gi, FREE))
            block(free, y, ("yd", gi, FREE), ("y", gi))
            block(free, y, ("yd", gi, cap), ("y", gi))
            ds = ds + [FREE]
        for oi, (rel, suffixes) in enumerate(g.options):
            ok = nfa.state(("ok", gi, oi))
            for d in ds:
                if _terminal(rel, d):
                    nfa.add(nfa.state(("yd", gi, d)), None, ok)
            for s in suffixes:
                end = _add_word_path(nfa, ok, [ids[n] for n in s], ("suf", gi, oi))
                nfa.add(end, None, B)
    return nfa


def _terminal(rel: str, d) -> bool:
    if rel == "le":
        return True
    if d in (OMEGA, FREE):
        return False
    return d == 0


def compile_markov(code, ids_map: Sequence[int] | None = None) -> NFA:
    """NFA for a finite Markov code; boundary is set only for simple codes."""
    nfa = NFA()
    g = len(code.gamma)
    ins = [nfa.state(("in", i)) for i in range(g)]
    if code.simple:
        outs = ins
        nfa.boundary = ins[0]
    else:
        outs = [nfa.state(("out", i)) for i in range(g)]
        for a in range(g):
            for b in range(g):
                if code.transition[a][b]:
                    nfa.add(outs[a], None, ins[b])
    for w, s, t in zip(code.words, code.s, code.t):
        ww = [ids_map[x] for x in w] if ids_map is not None else list(w)
        end = _add_word_path(nfa, ins[s], ww, ("w", s))
        nfa.add(end, None, outs[t])
    return nfa


def reverse_nfa(nfa: NFA) -> NFA:
    out = NFA()
    for k in nfa.keys:
        out.state(k)
    out.edges = [(q, s, p) for p, s, q in nfa.edges]
    out.boundary = nfa.boundary
    return out


def expand_nfa(nfa: NFA, sigma: int, sigma_prime: int) -> NFA:
    out = NFA()
    for k in nfa.keys:
        out.state(k)
    out.boundary = nfa.boundary
    for i, (p, s, q) in enumerate(nfa.edges):
        if s == sigma:
            mid = out.state(("mid", i))
            out.add(p, sigma, mid)
            out.add(mid, sigma_prime, q)
        else:
            out.add(p, s, q)
    return out


@dataclass(frozen=True)
class Presentation:
    """An ε-free, essential labeled graph with states ``0..n-1``."""

    n: int
    k: int
    edges: tuple[tuple[int, int, int], ...]
    boundary: int | None = None

    def __post_init__(self) -> None:
        succ: list[dict[int, list[int]]] = [defaultdict(list) for _ in range(self.n)]
        pred: list[dict[int, list[int]]] = [defaultdict(list) for _ in range(self.n)]
        for p, s, q in self.edges:
            succ[p][s].append(q)
            pred[q][s].append(p)
        object.__setattr__(self, "_succ", [{s: tuple(v) for s, v in d.items()} for d in succ])
        object.__setattr__(self, "_pred", [{s: tuple(v) for s, v in d.items()} for d in pred])

    def succ(self, states: Iterable[int], sym: int) -> frozenset[int]:
        out: set[int] = set()
        for p in states:
            out.update(self._succ[p].get(sym, ()))
        return frozenset(out)

    def pred(self, states: Iterable[int], sym: int) -> frozenset[int]:
        out: set[int] = set()
        for p in states:
            out.update(self._pred[p].get(sym, ()))
        return frozenset(out)

    def out_labels(self, state: int) -> Iterable[int]:
        return self._succ[state].keys()

    @property
    def all_states(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def run(self, word: Sequence[int], start: Iterable[int] | None = None) -> frozenset[int]:
        cur = self.all_states if start is None else frozenset(start)
        for s in word:
            if not cur:
                break
            cur = self.succ(cur, s)
        return cur

    def accepts(self, word: Sequence[int]) -> bool:
        return bool(self.run(word)) if word else self.n > 0

    def is_deterministic(self) -> bool:
        return all(len(v) == 1 for d in self._succ for v in d.values())

    def reversed(self) -> "Presentation":
        return Presentation(self.n, self.k, tuple(sorted((q, s, p) for p, s, q in self.edges)), self.boundary)


def finalize(nfa: NFA, k: int) -> Presentation:
    """Remove ε-edges (forward closure), trim to the essential part, renumber."""
    n = len(nfa.keys)
    eps: list[list[int]] = [[] for _ in range(n)]
    lab: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for p, s, q in nfa.edges:
        if s is None:
            eps[p].append(q)
        else:
            lab[p].append((s, q))
    edges: set[tuple[int, int, int]] = set()
    for q in range(n):
        seen = {q}
        stack = [q]
        while stack:
            p = stack.pop()
            for s, t in lab[p]:
                edges.add((q, s, t))
            for r in eps[p]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
    alive = set(range(n))
    changed = True
    while changed:
        changed = False
        has_out = {p for p, _, q in edges if p in alive and q in alive}
        has_in = {q for p, _, q in edges if p in alive and q in alive}
        keep = alive & has_out & has_in
        if keep != alive:
            alive = keep
            changed = True
    order = sorted(alive)
    renum = {old: i for i, old in enumerate(order)}
    final = tuple(sorted((renum[p], s, renum[q]) for p, s, q in edges if p in alive and q in alive))
    boundary = renum.get(nfa.boundary) if nfa.boundary is not None else None
    return Presentation(len(order), k, final, boundary)


def higher_block_presentation(base: Presentation, n: int, block_index: dict[tuple[int, ...], int]) -> Presentation:
    """States are paths of length n-1, edges paths of length n labeled by their n-block."""
    # enumerate paths of length n-1 as (states..., labels...)
    paths: dict[tuple, int] = {}
    frontier = [((q,), ()) for q in range(base.n)]
    for _ in range(n - 1):
        nxt = []
        for sts, labs in frontier:
            for s in sorted(base.out_labels(sts[-1])):
                for q in base._succ[sts[-1]][s]:
                    nxt.append((sts + (q,), labs + (s,)))
        frontier = nxt
    for p in frontier:
        paths.setdefault(p, len(paths))
    edges = []
    for (sts, labs), i in paths.items():
        last = sts[-1]
        for s in sorted(base.out_labels(last)):
            for q in base._succ[last][s]:
                tgt = (sts[1:] + (q,), labs[1:] + (s,))
                j = paths.get(tgt)
                if j is not None:
                    blk = labs + (s,)
                    if blk in block_index:
                        edges.append((i, block_index[blk], j))
    nfa = NFA()
    for key in paths:
        nfa.state(key)
    nfa.edges = [(p, s, q) for p, s, q in edges]
    return finalize(nfa, len(block_index))


def deterministic_subsets(pres: Presentation, start: frozenset[int], max_states: int = 200000):
    """BFS over the subset construction from ``start``; yields (subset, word) first-reach pairs.

    Words are explored shortest first and, within a length, in increasing
    symbol order, so each subset is reported with its shortlex-least word.
    """
    seen = {start: ()}
    queue = deque([start])
    yield start, ()
    while queue:
        cur = queue.popleft()
        w = seen[cur]
        for s in range(pres.k):
            nxt = pres.succ(cur, s)
            if nxt and nxt not in seen:
                seen[nxt] = w + (s,)
                if len(seen) > max_states:
                    raise RuntimeError("subset construction exceeded its budget")
                queue.append(nxt)
                yield nxt, w + (s,)
