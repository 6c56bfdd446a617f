"""Ground-truth oracle built straight from the code definitions.

Nothing here shares code with the graph compiler.  Code words are listed
explicitly from their defining formulas up to a length bound, and a word is
admissible when it is a factor of one code word or splits as
``(suffix of a code word)(code words)*(prefix of a code word)`` with every
junction allowed by the transition matrix.  Transforms that are not codes
(block recoding, symbol expansion of a non-code) are decided by their
definitions on top of the base oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .alphabet import ALPHA_MINUS, ALPHA_PLUS, Alphabet, Word
from .errors import MalformedSpec, WordTooLong
from .spec import (
    BuiltinCounter,
    BuiltinReset,
    CodeSpec,
    ExpandSymbol,
    ExplicitMarkov,
    HigherBlock,
    Reversed,
    Union,
    is_code,
)

MAX_BRUTE_LEN = 16


@dataclass
class _Code:
    """Explicit finite Markov code over symbol *names*."""

    words: list[tuple[tuple[str, ...], int, int]]  # (word, s, t)
    gamma: int
    transition: list[list[int]]


def _explicit_code(spec: CodeSpec, max_word: int) -> _Code:
    if isinstance(spec, BuiltinReset):
        words = [
            ((ALPHA_MINUS,) * k + (ALPHA_PLUS,) * m + (f"a_{n}",), 0, 0)
            for k in range(1, max_word)
            for m in range(1, k + 1)
            for n in range(1, spec.N + 1)
            if k + m + 1 <= max_word
        ]
        return _Code(words, 1, [[1]])
    if isinstance(spec, BuiltinCounter):
        words = [
            ((ALPHA_MINUS,) * k + (ALPHA_PLUS,) * k + (f"b_{n}",), 0, 0)
            for k in range(1, max_word)
            for n in range(1, spec.N + 1)
            if 2 * k + 1 <= max_word
        ]
        return _Code(words, 1, [[1]])
    if isinstance(spec, ExplicitMarkov):
        c = spec.code
        words = [(tuple(c.alphabet.names[x] for x in w), s, t) for w, s, t in zip(c.words, c.s, c.t)]
        return _Code(words, len(c.gamma), [list(r) for r in c.transition])
    if isinstance(spec, Reversed):
        base = _explicit_code(spec.base, max_word)
        words = [(tuple(reversed(w)), t, s) for w, s, t in base.words]
        trans = [[base.transition[j][i] for j in range(base.gamma)] for i in range(base.gamma)]
        return _Code(words, base.gamma, trans)
    if isinstance(spec, Union):
        words = []
        for m in spec.members:
            sub = _explicit_code(m, max_word)
            if sub.gamma != 1:
                raise MalformedSpec("union members must be simple codes")
            words.extend(sub.words)
        return _Code(list(dict.fromkeys(words)), 1, [[1]])
    if isinstance(spec, ExpandSymbol):
        base = _explicit_code(spec.base, max_word)
        words = []
        for w, s, t in base.words:
            nw: list[str] = []
            for x in w:
                nw.append(x)
                if x == spec.sigma:
                    nw.append(spec.sigma_prime)
            words.append((tuple(nw), s, t))
        return _Code(words, base.gamma, base.transition)
    raise MalformedSpec(f"{spec!r} is not a code")


def _has_code(spec: CodeSpec) -> bool:
    if isinstance(spec, HigherBlock):
        return False
    if isinstance(spec, Union):
        return all(is_code(m) for m in spec.members)
    if isinstance(spec, (Reversed, ExpandSymbol)):
        return _has_code(spec.base)
    return True


class _Trie:
    def __init__(self) -> None:
        self.root: dict = {}

    def add(self, word, payload) -> None:
        node = self.root
        for x in word:
            node = node.setdefault(x, {})
        node.setdefault(None, []).append(payload)


def _code_decider(code: _Code, max_len: int) -> Callable[[tuple[str, ...]], bool]:
    tries = [_Trie() for _ in range(code.gamma)]
    suffixes: dict[tuple[str, ...], set[int]] = {}
    factors: set[tuple[str, ...]] = set()
    for w, s, t in code.words:
        tries[s].add(w, t)
        for i in range(len(w)):
            suffixes.setdefault(w[i:], set()).add(t)
        for i in range(len(w)):
            for j in range(i + 1, min(len(w), i + max_len) + 1):
                factors.add(w[i:j])
    # the index sets that can actually be reached and left again
    starts = {s for _, s, _ in code.words}
    ends = {t for _, _, t in code.words}
    A = code.transition

    def decide(w: tuple[str, ...]) -> bool:
        n = len(w)
        if n == 0:
            return True
        if w in factors:
            return True
        # positions reached at a code-word boundary, with the index of the last word
        frontier: set[tuple[int, int]] = {(0, g) for g in ends}
        for i in range(1, n + 1):
            ts = suffixes.get(w[:i])
            if ts:
                frontier.update((i, t) for t in ts)
        seen: set[tuple[int, int]] = set()
        todo = sorted(frontier)
        while todo:
            i, g = todo.pop()
            if (i, g) in seen:
                continue
            seen.add((i, g))
            if i == n:
                return True
            for s in range(code.gamma):
                if not A[g][s] or s not in starts:
                    continue
                node = tries[s].root
                j = i
                while j < n:
                    node = node.get(w[j])
                    if node is None:
                        break
                    j += 1
                    for t in node.get(None, ()):
                        todo.append((j, t))
                else:
                    return True  # w[i:] is a proper prefix of a code word
        return False

    return decide


@dataclass
class BruteForceOracle:
    spec: CodeSpec
    alphabet: Alphabet
    max_len: int
    _decide: Callable[[Word], bool] = field(repr=False)

    def word(self, w) -> Word:
        if isinstance(w, str):
            return self.alphabet.parse(w)
        w = tuple(w)
        if w and isinstance(w[0], str):
            return self.alphabet.parse(w)
        return w

    def decide(self, w) -> bool:
        word = self.word(w)
        if len(word) > self.max_len:
            raise WordTooLong(f"length {len(word)} exceeds brute-force horizon {self.max_len}")
        return self._decide(word)

    __call__ = decide


def brute_force_oracle(spec: CodeSpec, max_len: int = 12) -> BruteForceOracle:
    if max_len > MAX_BRUTE_LEN:
        raise WordTooLong(f"brute-force horizon is capped at {MAX_BRUTE_LEN}")
    from .oracle import block_words, spec_alphabet

    alph = spec_alphabet(spec)
    if _has_code(spec):
        # every admissible word of length n is witnessed by code words of
        # length ≤ 2n+1 (one counter excursion on each side); doubling covers expansion
        stretch = 2 if _has_expansion(spec) else 1
        code = _explicit_code(spec, stretch * (2 * max_len + 2))
        inner = _code_decider(code, max_len)

        def decide(word: Word) -> bool:
            return inner(tuple(alph.names[x] for x in word))

    elif isinstance(spec, Reversed):
        base = brute_force_oracle(spec.base, max_len)

        def decide(word: Word) -> bool:
            return base.decide(tuple(reversed(word)))

    elif isinstance(spec, HigherBlock):
        base = brute_force_oracle(spec.base, min(MAX_BRUTE_LEN, max_len + spec.n - 1))
        blocks = block_words(spec)

        def decide(word: Word) -> bool:
            if not word:
                return True
            us = [blocks[x] for x in word]
            if any(a[1:] != b[:-1] for a, b in zip(us, us[1:])):
                return False
            return base.decide(us[0] + tuple(u[-1] for u in us[1:]))

    elif isinstance(spec, ExpandSymbol):
        base = brute_force_oracle(spec.base, max_len)
        sig, sigp = alph.id_of(spec.sigma), alph.id_of(spec.sigma_prime)

        def decide(word: Word) -> bool:
            return contract_expanded(word, sig, sigp, base.decide)

    else:
        raise MalformedSpec(f"no brute-force route for {spec!r}")
    return BruteForceOracle(spec, alph, max_len, decide)


def _has_expansion(spec: CodeSpec) -> bool:
    if isinstance(spec, ExpandSymbol):
        return True
    if isinstance(spec, (Reversed, HigherBlock)):
        return _has_expansion(spec.base)
    if isinstance(spec, Union):
        return any(_has_expansion(m) for m in spec.members)
    return False


def contract_expanded(word: Word, sig: int, sigp: int, base_decide: Callable[[Word], bool]) -> bool:
    """Decide membership in the σ→σσ′ expansion by undoing the rewrite."""
    w = list(word)
    if w and w[0] == sigp:
        w.insert(0, sig)
    if w and w[-1] == sig:
        w.append(sigp)
    out = []
    i = 0
    while i < len(w):
        x = w[i]
        if x == sig:
            if i + 1 >= len(w) or w[i + 1] != sigp:
                return False
            out.append(sig)
            i += 2
        elif x == sigp:
            return False
        else:
            out.append(x)
            i += 1
    return base_decide(tuple(out))
