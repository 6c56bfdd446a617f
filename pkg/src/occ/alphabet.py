"""Symbols, alphabets and words.

Words are plain tuples of symbol ids.  An :class:`Alphabet` maps ids to
display names and back, and knows how to parse the loose notations that
show up on the command line (``"α₋ α₊ a₁"``, ``"alpha_- a_1"``, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedSpec, ParseError

Word = tuple[int, ...]

ALPHA_MINUS = "α_-"
ALPHA_PLUS = "α_+"

_SUBSCRIPTS = str.maketrans(
    {
        "₀": "0", "₁": "1", "₂": "2", "₃": "3", "₄": "4",
        "₅": "5", "₆": "6", "₇": "7", "₈": "8", "₉": "9",
        "₋": "-", "₊": "+", "′": "'",
    }
)


def normalize_name(token: str) -> str:
    """Map the accepted spellings of a symbol onto its canonical display name."""
    t = token.strip()
    if t and any(ch in t for ch in "₀₁₂₃₄₅₆₇₈₉₋₊"):
        t = f"{t[0]}_{t[1:].translate(_SUBSCRIPTS)}"
    t = t.replace("′", "'")
    if t.startswith("alpha"):
        t = "α" + t[len("alpha"):]
    if t in ("α-", "α+"):
        t = f"α_{t[1]}"
    return t


@dataclass(frozen=True)
class Symbol:
    id: int
    display_name: str

    def __str__(self) -> str:
        return self.display_name


@dataclass(frozen=True)
class Alphabet:
    """An ordered finite alphabet; ids are positions ``0..n-1``."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise MalformedSpec(f"duplicate symbol names in alphabet {self.names}")
        if any(not n or any(c.isspace() for c in n) for n in self.names):
            raise MalformedSpec("symbol names must be nonempty and contain no whitespace")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.symbols)

    @property
    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(Symbol(i, n) for i, n in enumerate(self.names))

    def id_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            norm = normalize_name(name)
            if norm in self.names:
                return self.names.index(norm)
            raise KeyError(name) from None

    def __contains__(self, name: object) -> bool:
        if not isinstance(name, str):
            return False
        try:
            self.id_of(name)
        except KeyError:
            return False
        return True

    def symbol(self, name_or_id: str | int) -> Symbol:
        i = name_or_id if isinstance(name_or_id, int) else self.id_of(name_or_id)
        return Symbol(i, self.names[i])

    def parse(self, text: str | Sequence[str]) -> Word:
        """Parse a whitespace separated word; the empty string is the empty word.

        Tokens may also be glued together when every name is a single
        character (``"0100"`` over ``{0, 1}``).
        """
        if isinstance(text, str):
            s = text.strip()
            if s in ("", "ε"):
                return ()
            tokens = s.split()
            if len(tokens) == 1 and tokens[0] not in self and all(len(n) == 1 for n in self.names):
                tokens = list(tokens[0])
        else:
            tokens = list(text)
        out = []
        for tok in tokens:
            try:
                out.append(self.id_of(tok))
            except KeyError:
                raise ParseError(f"unknown symbol {tok!r}; alphabet is {' '.join(self.names)}") from None
        return tuple(out)

    def format(self, word: Iterable[int], sep: str = " ") -> str:
        w = tuple(word)
        if not w:
            return "ε"
        return sep.join(self.names[i] for i in w)

    def extend(self, names: Iterable[str]) -> "Alphabet":
        extra = [n for n in names if n not in self.names]
        return Alphabet(self.names + tuple(dict.fromkeys(extra)))


def reset_names(n: int) -> list[str]:
    return [f"a_{i}" for i in range(1, n + 1)]


def counter_names(n: int) -> list[str]:
    return [f"b_{i}" for i in range(1, n + 1)]


def words_upto(k: int, length: int) -> Iterable[Word]:
    """All words over ``range(k)`` of exactly ``length`` symbols in lexicographic order."""
    if length == 0:
        yield ()
        return
    for head in words_upto(k, length - 1):
        for s in range(k):
            yield head + (s,)


def shortlex_key(word: Word) -> tuple[int, Word]:
    return (len(word), word)
