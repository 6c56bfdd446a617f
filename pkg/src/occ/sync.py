"""Bounded certification of synchronization, characteristic pairs, boundary sets and reset.

Every "for all k" in the definitions becomes "for all k up to the horizon,
with the answer unchanged over ``window`` further steps".  Negative answers
always carry a concrete witness that can be re-checked through the oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .alphabet import Word, shortlex_key
from .config import DEFAULT, Config
from .errors import InadmissibleWord, NoPair, NoSynchronizingSymbols, NotFound
from .oracle import SubshiftOracle, presentation
from .presentation import Presentation, deterministic_subsets
from .spec import MarkovCode

TRUE, FALSE, UNKNOWN = "certified_true", "certified_false", "unknown"
_RANK = {FALSE: 0, UNKNOWN: 1, TRUE: 2}


@dataclass(frozen=True)
class Certainty:
    verdict: str
    witness: tuple[Word, ...] | None = None
    horizon_used: int = 0
    witness_text: tuple[str, ...] | None = field(default=None, compare=False)
    note: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.verdict not in _RANK:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == FALSE and self.witness is None:
            raise ValueError("certified_false needs a witness")

    @property
    def is_true(self) -> bool:
        return self.verdict == TRUE

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "witness": list(self.witness_text) if self.witness_text else None, "horizon": self.horizon_used}
        if self.note:
            out["note"] = self.note
        return out


def weakest(items: Iterable[Certainty], horizon: int) -> Certainty:
    items = list(items)
    if not items:
        return Certainty(TRUE, None, horizon)
    worst = min(items, key=lambda c: _RANK[c.verdict])
    if worst.verdict == FALSE:
        return worst
    return Certainty(worst.verdict, None, max(c.horizon_used for c in items))


def _cert(oracle: SubshiftOracle, verdict: str, horizon: int, witness: tuple[Word, ...] | None = None, note: str = "") -> Certainty:
    text = tuple(oracle.fmt(w) for w in witness) if witness is not None else None
    return Certainty(verdict, witness, horizon, text, note)


# ---------------------------------------------------------------- synchronizing words


def _shortest_gap(pres: Presentation, big: frozenset[int], small: frozenset[int], limit: int) -> Word | None:
    """Shortest w (|w| ≤ limit) readable from ``big`` but not from ``small``."""
    seen = {(big, small)}
    queue = deque([(big, small, ())])
    while queue:
        A, B, w = queue.popleft()
        if len(w) >= limit:
            continue
        for s in range(pres.k):
            A2 = pres.succ(A, s)
            if not A2:
                continue
            B2 = pres.succ(B, s)
            if not B2:
                return w + (s,)
            if (A2, B2) not in seen:
                seen.add((A2, B2))
                queue.append((A2, B2, w + (s,)))
    return None


def _find_witness(oracle: SubshiftOracle, v: Word, horizon: int) -> tuple[Word, Word] | None:
    pres = oracle.presentation_for(2 * horizon + len(v) + 1)
    ev = pres.run(v)
    for S, u in deterministic_subsets(pres, pres.all_states):
        if len(u) > horizon:
            break
        E = pres.run(v, S)
        if not E or E == ev:
            continue
        w = _shortest_gap(pres, ev, E, horizon)
        if w is not None:
            return u, w
    return None


def _structurally_synchronizing(pres: Presentation, v: Word) -> bool:
    """Every past leaves v in a state set with the same follower language."""
    ev = pres.run(v)
    checked: set[frozenset[int]] = set()
    for S, _ in deterministic_subsets(pres, pres.all_states):
        E = pres.run(v, S)
        if not E or E == ev or E in checked:
            continue
        if _shortest_gap(pres, ev, E, 10**9) is not None:
            return False
        checked.add(E)
    return True


def certify_synchronizing(oracle: SubshiftOracle, v, cfg: Config = DEFAULT) -> Certainty:
    """Is v synchronizing (uv, vw ∈ ℒ ⇒ uvw ∈ ℒ)?

    certified_false: a witness (u, w) with |u|, |w| ≤ horizon.  certified_true:
    no witness up to horizon + window and, for window+1 consecutive capped
    presentations, every past that v can follow leaves the same follower
    language.  Anything else is unknown.
    """
    v = oracle.word(v)
    if not oracle.decide(v):
        raise InadmissibleWord(oracle.fmt(v))
    h, W = cfg.horizon, cfg.window
    wit = _find_witness(oracle, v, h)
    if wit is not None:
        return _cert(oracle, FALSE, h, wit)
    wit = _find_witness(oracle, v, h + W)
    if wit is not None:
        return _cert(oracle, UNKNOWN, h + W, None, f"a witness exists just beyond the horizon (|u|={len(wit[0])}, |w|={len(wit[1])})")
    base = oracle.presentation_for(2 * h + len(v) + 1)
    caps = [None] + list(range(1, W + 1))
    for extra in caps:
        pres = base if extra is None else _bigger(oracle, 2 * h + len(v) + 1, extra)
        if not _structurally_synchronizing(pres, v):
            return _cert(oracle, UNKNOWN, h + W, None, "probes pass but the capped presentation does not prove synchronization")
    return _cert(oracle, TRUE, h + W)


def _bigger(oracle: SubshiftOracle, n: int, extra: int) -> Presentation:
    from .oracle import _cap_for

    return presentation(oracle.spec, _cap_for(n) + extra)


def synchronizing_symbols(oracle: SubshiftOracle, cfg: Config = DEFAULT) -> tuple[set[int], Certainty]:
    out, certs = set(), []
    for s in range(len(oracle.alphabet)):
        if not oracle.decide((s,)):
            continue
        c = certify_synchronizing(oracle, (s,), cfg)
        if c.verdict == TRUE:
            out.add(s)
        if c.verdict != FALSE:
            certs.append(c)
    return out, weakest(certs, cfg.horizon + cfg.window)


# ---------------------------------------------------------------- characteristic pair


@dataclass
class CharacteristicPairReport:
    alpha_minus: int
    alpha_plus: int
    c_X: Word
    condition_a: Certainty
    condition_b: Certainty
    condition_c_minus: Certainty
    condition_c_plus: Certainty
    K_bound: int
    Q_bound: int
    names: tuple[str, str] = ("", "")
    c_X_text: str = ""

    def to_json(self) -> dict:
        return {
            "alpha_minus": self.names[0],
            "alpha_plus": self.names[1],
            "c_X": self.c_X_text,
            "condition_a": self.condition_a.to_json(),
            "condition_b": self.condition_b.to_json(),
            "condition_c_minus": self.condition_c_minus.to_json(),
            "condition_c_plus": self.condition_c_plus.to_json(),
            "K_bound": self.K_bound,
            "Q_bound": self.Q_bound,
        }


def _fixed_letters(oracle: SubshiftOracle, cfg: Config) -> list[int]:
    n = cfg.horizon + cfg.window
    return [s for s in range(len(oracle.alphabet)) if oracle.decide((s,) * n)]


def _words_over(symbols: list[int], max_len: int) -> Iterable[Word]:
    frontier: list[Word] = [()]
    yield ()
    for _ in range(max_len):
        frontier = [w + (s,) for w in frontier for s in symbols]
        yield from frontier


def _bridges(oracle: SubshiftOracle, left: int, right: int, nonsync: list[int], max_len: int, runs: int) -> list[Word]:
    """Words c over non-synchronizing symbols, not starting with ``left`` nor ending with
    ``right``, with left^k c right^k admissible for all k ≤ runs."""
    out = []
    for c in _words_over(nonsync, max_len):
        if c and (c[0] == left or c[-1] == right):
            continue
        if all(oracle.decide((left,) * k + c + (right,) * k) for k in range(1, runs + 1)):
            out.append(c)
    return out


def _tail_set(oracle: SubshiftOracle, head: Word, run: int, nonsync: list[int], max_len: int, runs: int, side: str) -> list[Word]:
    """Words d over non-synchronizing symbols with head·d·run^k (side='right') or
    run^k·d·head (side='left') admissible for all k ≤ runs; d must not touch the run."""
    out = []
    for d in _words_over(nonsync, max_len):
        if side == "right":
            if d and d[-1] == run:
                continue
            ok = all(oracle.decide(head + d + (run,) * k) for k in range(1, runs + 1))
        else:
            if d and d[0] == run:
                continue
            ok = all(oracle.decide((run,) * k + d + head) for k in range(1, runs + 1))
        if ok:
            out.append(d)
    return out


def _pair_report(oracle: SubshiftOracle, am: int, ap: int, sync: set[int], cfg: Config) -> tuple[CharacteristicPairReport | None, dict]:
    h, W = cfg.horizon, cfg.window
    nonsync = sorted(s for s in range(len(oracle.alphabet)) if s not in sync and oracle.decide((s,)))
    diag = {}
    bridge_len = cfg.cutoff
    bridges = _bridges(oracle, am, ap, nonsync, bridge_len, h)
    wider = _bridges(oracle, am, ap, nonsync, bridge_len + W, h)
    if len(bridges) == 1 and len(wider) == 1:
        cond_a = _cert(oracle, TRUE, h)
    elif len(bridges) == 0 and len(wider) == 0:
        cond_a = _cert(oracle, UNKNOWN, h, None, "no non-synchronizing bridge point: the qualifying orbit set is empty")
    elif len(bridges) > 1:
        cond_a = _cert(oracle, FALSE, h, tuple(bridges[:2]), "two distinct non-synchronizing bridges")
    else:
        cond_a = _cert(oracle, UNKNOWN, h, None, "bridge set still growing at the probe bound")
    diag["a"] = cond_a.to_json()
    # (b): α₊^k s α₋^k admissible with s containing a synchronizing symbol
    cond_b = None
    for s_word in _words_over(sorted(s for s in range(len(oracle.alphabet)) if oracle.decide((s,))), cfg.cutoff):
        if not any(x in sync for x in s_word):
            continue
        if all(oracle.decide((ap,) * k + s_word + (am,) * k) for k in range(1, h + 1)):
            cond_b = _cert(oracle, TRUE, h, None, f"bridge {oracle.fmt(s_word)}")
            break
    if cond_b is None:
        cond_b = _cert(oracle, UNKNOWN, h, None, f"no synchronizing bridge up to length {cfg.cutoff}")
    diag["b"] = cond_b.to_json()
    # (c⁻)/(c⁺): the gaps between the last synchronizing symbol and the run stay bounded
    ks = []
    cs = []
    for side, run in (("right", am), ("left", ap)):
        lens = []
        growing = False
        for sigma in sorted(sync):
            short = _tail_set(oracle, (sigma,), run, nonsync, cfg.cutoff, h, side)
            long = _tail_set(oracle, (sigma,), run, nonsync, cfg.cutoff + W, h, side)
            if len(long) != len(short):
                growing = True
            lens += [len(d) for d in long]
        if growing:
            cs.append(_cert(oracle, UNKNOWN, h, None, "gap words keep appearing up to the probe bound"))
            ks.append(0)
        else:
            k = max(lens, default=0) + 1
            cs.append(_cert(oracle, TRUE, h, None, f"K = {k}"))
            ks.append(k)
    diag["c-"], diag["c+"] = cs[0].to_json(), cs[1].to_json()
    if not (cond_a.is_true and cond_b.is_true and cs[0].is_true and cs[1].is_true):
        return None, diag
    names = (oracle.alphabet.names[am], oracle.alphabet.names[ap])
    return (
        CharacteristicPairReport(am, ap, bridges[0], cond_a, cond_b, cs[0], cs[1], max(ks), h, names, oracle.fmt(bridges[0]) if bridges[0] else ""),
        diag,
    )


def characteristic_pair(oracle: SubshiftOracle, cfg: Config = DEFAULT) -> CharacteristicPairReport:
    """The unique ordered pair of fixed-point letters meeting (a), (b), (c⁻), (c⁺).

    Synchronizing words are detected through synchronizing symbols, which is
    exact for strongly synchronizing shifts.  Condition (a) requires the
    qualifying orbit to exist.
    """
    sync, _ = synchronizing_symbols(oracle, cfg)
    fixed = _fixed_letters(oracle, cfg)
    found, diagnostics = [], {}
    for am in fixed:
        for ap in fixed:
            if am == ap:
                continue
            rep, diag = _pair_report(oracle, am, ap, sync, cfg)
            diagnostics[f"{oracle.alphabet.names[am]},{oracle.alphabet.names[ap]}"] = diag
            if rep is not None:
                found.append(rep)
    if len(found) != 1:
        why = "no pair of fixed points satisfies all conditions" if not found else "the qualifying pair is not unique"
        raise NotFound(why, diagnostics)
    return found[0]


# ---------------------------------------------------------------- boundary sets and reset


@dataclass
class BoundarySets:
    sigma_minus: set[int]
    sigma_plus: set[int]
    sigma_minus_plus: set[int]
    sigma_plus_minus: set[int]
    d_sets: dict[tuple[str, int], list[Word]]  # (kind, σ) -> words; kind in minus, minus_plus, plus, plus_minus
    omega_plus: list[Word]
    omega_minus: list[Word]
    omega_plus_reset: list[Word]
    omega_plus_counter: list[Word]
    reset_defect: dict[Word, int]
    certainty: dict[Word, Certainty] = field(default_factory=dict)

    def to_json(self, oracle: SubshiftOracle) -> dict:
        f, n = oracle.fmt, oracle.alphabet.names
        return {
            "sigma_minus": sorted(n[s] for s in self.sigma_minus),
            "sigma_plus": sorted(n[s] for s in self.sigma_plus),
            "sigma_minus_plus": sorted(n[s] for s in self.sigma_minus_plus),
            "sigma_plus_minus": sorted(n[s] for s in self.sigma_plus_minus),
            "d_sets": {f"{k}:{n[s]}": [f(w) for w in ws] for (k, s), ws in sorted(self.d_sets.items())},
            "omega_plus": [f(w) for w in self.omega_plus],
            "omega_minus": [f(w) for w in self.omega_minus],
            "omega_plus_reset": [f(w) for w in self.omega_plus_reset],
            "omega_plus_counter": [f(w) for w in self.omega_plus_counter],
            "reset_defect": {f(w): d for w, d in self.reset_defect.items()},
        }


def _pair_or_raise(oracle: SubshiftOracle, pair, cfg: Config) -> CharacteristicPairReport:
    if pair is None:
        try:
            return characteristic_pair(oracle, cfg)
        except NotFound as exc:
            raise NoPair(str(exc)) from exc
    return pair


def boundary_sets(oracle: SubshiftOracle, pair: CharacteristicPairReport | None = None, cfg: Config = DEFAULT) -> BoundarySets:
    """𝒟-sets, Σ±, Ω± and the split of Ω⁺ into reset and counter parts.

    Ω⁺_reset uses the delimited reading: d⁺σ₊ qualifies with defect D when
    σ₋d⁻ α₋^{k₋} c_X α₊^{k₊} d⁺σ₊ is admissible for every delimiter σ₋d⁻ and
    all probed k₊ ≥ 1, k₋ ≥ k₊ + D.
    """
    pair = _pair_or_raise(oracle, pair, cfg)
    am, ap, cx = pair.alpha_minus, pair.alpha_plus, pair.c_X
    sync, _ = synchronizing_symbols(oracle, cfg)
    nonsync = sorted(s for s in range(len(oracle.alphabet)) if s not in sync and oracle.decide((s,)))
    h, L = cfg.horizon, cfg.cutoff
    d_sets: dict[tuple[str, int], list[Word]] = {}
    for s in sorted(sync):
        d_sets[("minus", s)] = _tail_set(oracle, (s,), am, nonsync, L, h, "right")
        d_sets[("minus_plus", s)] = _tail_set(oracle, (s,), ap, nonsync, L, h, "right")
        d_sets[("plus", s)] = _tail_set(oracle, (s,), ap, nonsync, L, h, "left")
        d_sets[("plus_minus", s)] = _tail_set(oracle, (s,), am, nonsync, L, h, "left")
    sig = {k: {s for (kk, s), ws in d_sets.items() if kk == k and ws} for k in ("minus", "minus_plus", "plus", "plus_minus")}
    omega_plus = sorted((d + (s,) for s in sig["plus"] for d in d_sets[("plus", s)]), key=shortlex_key)
    omega_minus = sorted((d + (s,) for s in sig["plus_minus"] for d in d_sets[("plus_minus", s)]), key=shortlex_key)
    delimiters = [(s,) + d for s in sorted(sig["minus"]) for d in d_sets[("minus", s)]]
    reset, counter, defect, certs = [], [], {}, {}
    runs = max(2, h // 2)
    for w in omega_plus:
        c = _reset_defect(oracle, delimiters, am, ap, cx, w, runs, h, cfg.window)
        certs[w] = c
        if c.verdict == TRUE:
            reset.append(w)
            defect[w] = int(c.note.split("=")[1])
        else:
            counter.append(w)
    return BoundarySets(sig["minus"], sig["plus"], sig["minus_plus"], sig["plus_minus"], d_sets, omega_plus, omega_minus, reset, counter, defect, certs)


def _reset_defect(oracle, delimiters, am, ap, cx, tail, runs, h, window) -> Certainty:
    if not delimiters:
        return _cert(oracle, UNKNOWN, h, None, "no left delimiter σ₋d⁻")

    def failure(D: int, span: int):
        for lead in delimiters:
            for kp in range(1, span + 1):
                for km in range(kp + D, kp + D + span + 1):
                    w = lead + (am,) * km + cx + (ap,) * kp + tail
                    if not oracle.decide(w):
                        return w
        return None

    counter_examples = []
    for D in range(0, h + window + 1):
        bad = failure(D, runs)
        if bad is None and failure(D, runs + window) is None:
            return _cert(oracle, TRUE, h, None, f"D={D}")
        counter_examples.append(bad if bad is not None else failure(D, runs + window))
    return _cert(oracle, FALSE, h + window, (counter_examples[0], counter_examples[-1]), "every defect D up to the horizon has an inadmissible instance")


@dataclass
class ResetReport:
    has_reset: Certainty
    reset_condition: Certainty
    boundary: BoundarySets

    def to_json(self, oracle: SubshiftOracle) -> dict:
        return {"has_reset": self.has_reset.to_json(), "reset_condition": self.reset_condition.to_json(), "boundary": self.boundary.to_json(oracle)}


def reset_analysis(oracle: SubshiftOracle, pair: CharacteristicPairReport | None = None, cfg: Config = DEFAULT) -> ResetReport:
    pair = _pair_or_raise(oracle, pair, cfg)
    bs = boundary_sets(oracle, pair, cfg)
    h = cfg.horizon
    if bs.omega_plus_reset:
        has_reset = _cert(oracle, TRUE, h, None, f"{oracle.fmt(bs.omega_plus_reset[0])} ∈ Ω⁺_reset")
    elif bs.omega_plus and all(bs.certainty[w].verdict == FALSE for w in bs.omega_plus):
        first = bs.omega_plus[0]
        has_reset = Certainty(FALSE, bs.certainty[first].witness, bs.certainty[first].horizon_used, bs.certainty[first].witness_text, "no member of Ω⁺ has a bounded defect")
    else:
        has_reset = _cert(oracle, UNKNOWN, h, None, "Ω⁺_reset membership unresolved")
    # reset condition: Ω⁻ minus the generated family is finite
    lengths = []
    bigger = boundary_sets(oracle, pair, Config(cfg.horizon, cfg.window, cfg.cutoff + cfg.window, cfg.max_level))
    for w in bigger.omega_minus:
        if not _in_omega_minus_reset(w, pair, bs):
            lengths.append(len(w))
    if any(n > cfg.cutoff for n in lengths):
        cond = _cert(oracle, UNKNOWN, h, None, "members of Ω⁻ \\ Ω⁻_reset keep appearing above the cutoff")
    else:
        cond = _cert(oracle, TRUE, h, None, f"{len(lengths)} members of Ω⁻ \\ Ω⁻_reset, none above length {cfg.cutoff}")
    return ResetReport(has_reset, cond, bs)


def _in_omega_minus_reset(w: Word, pair: CharacteristicPairReport, bs: BoundarySets) -> bool:
    cx, ap = pair.c_X, pair.alpha_plus
    if w[: len(cx)] != cx:
        return False
    rest = w[len(cx) :]
    for tail, D in bs.reset_defect.items():
        if len(rest) <= len(tail) or rest[-len(tail) :] != tail:
            continue
        run = rest[: len(rest) - len(tail)]
        if run == (ap,) * len(run) and len(run) >= 1 + D:
            return True
    return False


# ---------------------------------------------------------------- canonical Markov code


def markov_code_truncation(oracle: SubshiftOracle, cfg: Config = DEFAULT) -> MarkovCode:
    """Members of C(X) up to length ``cfg.cutoff``: words starting with a synchronizing
    symbol, containing no other, and followable by a synchronizing symbol."""
    sync, _ = synchronizing_symbols(oracle, cfg)
    if not sync:
        raise NoSynchronizingSymbols("no certified synchronizing symbol")
    k = len(oracle.alphabet)
    others = [s for s in range(k) if s not in sync]
    words: list[Word] = []
    frontier = [(s,) for s in sorted(sync) if oracle.decide((s,))]
    while frontier:
        nxt = []
        for c in frontier:
            if any(oracle.decide(c + (s,)) for s in sync):
                words.append(c)
            if len(c) < cfg.cutoff:
                nxt += [c + (s,) for s in others if oracle.decide(c + (s,))]
        frontier = nxt
    words.sort(key=shortlex_key)
    names = oracle.alphabet.names
    t_sets = [frozenset(s for s in sync if oracle.decide(c + (s,))) for c in words]
    singles = [frozenset([c[0]]) for c in words]
    index_sets = sorted(set(t_sets) | set(singles) | {frozenset([s]) for s in sync}, key=lambda S: (len(S), sorted(S)))
    label = ["{" + ",".join(names[s] for s in sorted(S)) + "}" for S in index_sets]
    pos = {S: i for i, S in enumerate(index_sets)}
    t_used = set(t_sets)
    A = tuple(
        tuple(int(S in t_used and len(T) == 1 and next(iter(T)) in S) for T in index_sets) for S in index_sets
    )
    return MarkovCode(oracle.alphabet, tuple(words), tuple(label), tuple(pos[S] for S in singles), tuple(pos[T] for T in t_sets), A)
