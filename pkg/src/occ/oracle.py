"""Admissibility oracles for coded systems and the word-level transforms."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .alphabet import ALPHA_MINUS, ALPHA_PLUS, Alphabet, Word, counter_names, reset_names
from .errors import InadmissibleWord, MalformedSpec
from .presentation import (
    NFA,
    PatternGroup,
    Presentation,
    compile_groups,
    compile_markov,
    expand_nfa,
    finalize,
    higher_block_presentation,
    merge_groups,
    reverse_groups,
    reverse_nfa,
)
from .spec import (
    BuiltinCounter,
    BuiltinReset,
    CodeSpec,
    ExpandSymbol,
    ExplicitMarkov,
    HigherBlock,
    Reversed,
    Union,
    builtin_alphabet,
    validate,
)


def patterns(spec: CodeSpec) -> tuple[PatternGroup, ...] | None:
    """Pattern groups for specs built from the one-counter families, else None."""
    if isinstance(spec, BuiltinReset):
        return (PatternGroup(((),), (ALPHA_MINUS,), (ALPHA_PLUS,), True, (("le", tuple((a,) for a in reset_names(spec.N))),)),)
    if isinstance(spec, BuiltinCounter):
        return (PatternGroup(((),), (ALPHA_MINUS,), (ALPHA_PLUS,), True, (("eq", tuple((b,) for b in counter_names(spec.N))),)),)
    if isinstance(spec, Reversed):
        base = patterns(spec.base)
        return None if base is None else reverse_groups(base)
    if isinstance(spec, Union):
        parts = [patterns(m) for m in spec.members]
        if any(p is None for p in parts):
            return None
        return merge_groups(g for p in parts for g in p)
    return None


@lru_cache(maxsize=None)
def spec_alphabet(spec: CodeSpec) -> Alphabet:
    if isinstance(spec, (BuiltinReset, BuiltinCounter)):
        return builtin_alphabet(spec)
    if isinstance(spec, Union):
        alph = spec_alphabet(spec.members[0])
        for m in spec.members[1:]:
            alph = alph.extend(spec_alphabet(m).names)
        return alph
    if isinstance(spec, Reversed):
        return spec_alphabet(spec.base)
    if isinstance(spec, ExpandSymbol):
        return spec_alphabet(spec.base).extend([spec.sigma_prime])
    if isinstance(spec, ExplicitMarkov):
        return spec.code.alphabet
    if isinstance(spec, HigherBlock):
        base = build_oracle(spec.base)
        blocks = sorted(language(base, spec.n))
        return Alphabet(tuple("[" + "|".join(base.alphabet.names[x] for x in b) + "]" for b in blocks))
    raise MalformedSpec(f"unknown spec {spec!r}")


@lru_cache(maxsize=None)
def block_words(spec: HigherBlock) -> tuple[Word, ...]:
    """The base words behind the symbols of a higher block alphabet, in id order."""
    return tuple(sorted(language(build_oracle(spec.base), spec.n)))


def _compile_nfa(spec: CodeSpec, cap: int) -> NFA:
    alph = spec_alphabet(spec)
    groups = patterns(spec)
    if groups is not None:
        return compile_groups(groups, {n: i for i, n in enumerate(alph.names)}, cap)
    if isinstance(spec, ExplicitMarkov):
        return compile_markov(spec.code)
    if isinstance(spec, Reversed):
        return reverse_nfa(_compile_nfa(spec.base, cap))
    if isinstance(spec, ExpandSymbol):
        return expand_nfa(_compile_nfa(spec.base, cap), alph.id_of(spec.sigma), alph.id_of(spec.sigma_prime))
    if isinstance(spec, Union):
        nfa = NFA()
        nfa.boundary = nfa.state("B")
        for i, m in enumerate(spec.members):
            sub = _compile_nfa(m, cap)
            relabel = [alph.id_of(n) for n in spec_alphabet(m).names]
            nfa.absorb(sub, i, relabel)
        return nfa
    if isinstance(spec, HigherBlock):
        base = presentation(spec.base, cap + spec.n)
        index = {w: i for i, w in enumerate(block_words(spec))}
        hb = higher_block_presentation(base, spec.n, index)
        nfa = NFA()
        for i in range(hb.n):
            nfa.state(i)
        nfa.edges = list(hb.edges)
        return nfa
    raise MalformedSpec(f"unknown spec {spec!r}")


@lru_cache(maxsize=256)
def presentation(spec: CodeSpec, cap: int) -> Presentation:
    """Essential capped presentation; exact for words shorter than ``cap``."""
    return finalize(_compile_nfa(spec, cap), len(spec_alphabet(spec)))


def _cap_for(n: int) -> int:
    c = max(8, n + 2)
    return (c + 7) // 8 * 8


@dataclass(frozen=True)
class SubshiftOracle:
    """Membership oracle for the language of the coded system of ``spec``."""

    spec: CodeSpec
    alphabet: Alphabet = field(compare=False)

    @property
    def provenance(self) -> CodeSpec:
        return self.spec

    def word(self, w: str | Sequence[int] | Sequence[str]) -> Word:
        if isinstance(w, str):
            return self.alphabet.parse(w)
        w = tuple(w)
        if w and isinstance(w[0], str):
            return self.alphabet.parse(w)
        return w

    def presentation(self, cap: int) -> Presentation:
        return presentation(self.spec, cap)

    def presentation_for(self, n: int) -> Presentation:
        """A presentation that decides every word of length ≤ n exactly."""
        return presentation(self.spec, _cap_for(n))

    def decide(self, w) -> bool:
        word = self.word(w)
        if not word:
            return True
        if any(not 0 <= s < len(self.alphabet) for s in word):
            return False
        return self.presentation_for(len(word)).accepts(word)

    __call__ = decide

    def fmt(self, w: Iterable[int]) -> str:
        return self.alphabet.format(w)


def build_oracle(spec: CodeSpec) -> SubshiftOracle:
    validate(spec)
    return SubshiftOracle(spec, spec_alphabet(spec))


def language(oracle: SubshiftOracle, n: int) -> set[Word]:
    """All admissible words of length ``n`` (prefix-pruned enumeration)."""
    if n < 0:
        raise ValueError("n must be ≥ 0")
    pres = oracle.presentation_for(n)
    out: set[Word] = set()
    stack: list[tuple[Word, frozenset[int]]] = [((), pres.all_states)]
    while stack:
        w, cur = stack.pop()
        if len(w) == n:
            out.add(w)
            continue
        for s in range(pres.k):
            nxt = pres.succ(cur, s)
            if nxt:
                stack.append((w + (s,), nxt))
    return out


def extender_set(oracle: SubshiftOracle, a, l: int, direction: str = "future") -> set[Word]:
    """Words b of length ``l`` with ab (future) or ba (past) admissible."""
    word = oracle.word(a)
    if not oracle.decide(word):
        raise InadmissibleWord(oracle.fmt(word))
    pres = oracle.presentation_for(len(word) + l)
    out: set[Word] = set()
    if direction == "future":
        start = pres.run(word)
        stack = [((), start)]
        while stack:
            w, cur = stack.pop()
            if len(w) == l:
                out.add(w)
                continue
            for s in range(pres.k):
                nxt = pres.succ(cur, s)
                if nxt:
                    stack.append((w + (s,), nxt))
    elif direction == "past":
        cur0 = pres.all_states
        for s in reversed(word):
            cur0 = pres.pred(cur0, s)
        stack = [((), cur0)]
        while stack:
            w, cur = stack.pop()
            if len(w) == l:
                out.add(w)
                continue
            for s in range(pres.k):
                nxt = pres.pred(cur, s)
                if nxt:
                    stack.append(((s,) + w, nxt))
    else:
        raise ValueError(f"direction must be 'future' or 'past', not {direction!r}")
    return out


def transform(spec: CodeSpec, t) -> CodeSpec:
    """Apply ``("reverse",)``, ``("higher_block", n)``, ``("expand_symbol", σ, σ′)`` or ``("union", other)``."""
    if isinstance(t, str):
        t = (t,)
    kind, *args = t
    if kind == "reverse":
        out: CodeSpec = Reversed(spec)
    elif kind == "higher_block":
        out = HigherBlock(spec, int(args[0]))
    elif kind == "expand_symbol":
        out = ExpandSymbol(spec, args[0], args[1])
    elif kind == "union":
        out = Union((spec, args[0]))
    else:
        raise MalformedSpec(f"unknown transform {kind!r}")
    validate(out)
    return out


def reverse(spec: CodeSpec) -> CodeSpec:
    return transform(spec, ("reverse",))


def higher_block(spec: CodeSpec, n: int) -> CodeSpec:
    return transform(spec, ("higher_block", n))


def expand_symbol(spec: CodeSpec, sigma: str, sigma_prime: str) -> CodeSpec:
    return transform(spec, ("expand_symbol", sigma, sigma_prime))


def union(spec: CodeSpec, other: CodeSpec) -> CodeSpec:
    return transform(spec, ("union", other))
