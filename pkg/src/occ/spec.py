"""Code specifications, Markov codes and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Union as _U

import jsonschema

from .alphabet import ALPHA_MINUS, ALPHA_PLUS, Alphabet, Word, counter_names, reset_names
from .errors import MalformedSpec, ParseError, SchemaError

SPEC_SCHEMA_ID = "occ.codespec/1"


@dataclass(frozen=True)
class MarkovCode:
    """A finite Markov code over ``alphabet``.

    ``s`` and ``t`` give, per word, the index in ``gamma`` it starts and ends
    at; word ``c`` may be followed by ``c'`` iff ``transition[t(c)][s(c')] == 1``.
    """

    alphabet: Alphabet
    words: tuple[Word, ...]
    gamma: tuple[str, ...] = ("*",)
    s: tuple[int, ...] = ()
    t: tuple[int, ...] = ()
    transition: tuple[tuple[int, ...], ...] = ((1,),)

    def __post_init__(self) -> None:
        n = len(self.words)
        if not self.s:
            object.__setattr__(self, "s", (0,) * n)
        if not self.t:
            object.__setattr__(self, "t", (0,) * n)
        if any(len(w) == 0 for w in self.words):
            raise MalformedSpec("code words must be nonempty")
        if len(self.s) != n or len(self.t) != n:
            raise MalformedSpec("s and t must be defined on every code word")
        g = len(self.gamma)
        if len(self.transition) != g or any(len(r) != g for r in self.transition):
            raise MalformedSpec("transition matrix must be square over gamma")
        if any(v not in (0, 1) for r in self.transition for v in r):
            raise MalformedSpec("transition matrix must be 0/1")
        if any(not 0 <= i < g for i in self.s + self.t):
            raise MalformedSpec("s/t values must index gamma")
        if any(x >= len(self.alphabet) or x < 0 for w in self.words for x in w):
            raise MalformedSpec("code word uses a symbol outside the alphabet")

    @property
    def simple(self) -> bool:
        """True when the transition structure is trivial (one index, A = [1])."""
        return len(self.gamma) == 1 and self.transition == ((1,),)

    @classmethod
    def full_shift(cls, names) -> "MarkovCode":
        alph = Alphabet(tuple(str(n) for n in names))
        return cls(alph, tuple((i,) for i in range(len(alph))))


@dataclass(frozen=True)
class BuiltinReset:
    N: int


@dataclass(frozen=True)
class BuiltinCounter:
    N: int


@dataclass(frozen=True)
class Union:
    members: tuple["CodeSpec", ...]


@dataclass(frozen=True)
class Reversed:
    base: "CodeSpec"


@dataclass(frozen=True)
class HigherBlock:
    base: "CodeSpec"
    n: int


@dataclass(frozen=True)
class ExpandSymbol:
    base: "CodeSpec"
    sigma: str
    sigma_prime: str


@dataclass(frozen=True)
class ExplicitMarkov:
    code: MarkovCode


CodeSpec = _U[BuiltinReset, BuiltinCounter, Union, Reversed, HigherBlock, ExpandSymbol, ExplicitMarkov]


def full_shift(names) -> ExplicitMarkov:
    return ExplicitMarkov(MarkovCode.full_shift(names))


def builtin_alphabet(spec: BuiltinReset | BuiltinCounter) -> Alphabet:
    extra = reset_names(spec.N) if isinstance(spec, BuiltinReset) else counter_names(spec.N)
    return Alphabet((ALPHA_MINUS, ALPHA_PLUS, *extra))


def validate(spec: CodeSpec) -> None:
    """Raise :class:`MalformedSpec` for structurally impossible specs."""
    if isinstance(spec, (BuiltinReset, BuiltinCounter)):
        if not isinstance(spec.N, int) or spec.N < 1:
            raise MalformedSpec("N must be ≥ 1")
    elif isinstance(spec, Union):
        if not spec.members:
            raise MalformedSpec("a union needs at least one member")
        fresh_by_member = []
        for m in spec.members:
            validate(m)
            if not is_code(m):
                raise MalformedSpec(f"union member {describe(m)} is not a code with a single boundary")
            fresh_by_member.append(_introduced(m))
        from .oracle import spec_alphabet  # local import: alphabets may need the engine

        alphabets = [set(spec_alphabet(m).names) for m in spec.members]
        for i, fresh in enumerate(fresh_by_member):
            for j, names in enumerate(alphabets):
                if i != j and fresh & names:
                    raise MalformedSpec(f"alphabet clash: {sorted(fresh & names)} is fresh in one member but used by another")
    elif isinstance(spec, Reversed):
        validate(spec.base)
    elif isinstance(spec, HigherBlock):
        if spec.n < 2:
            raise MalformedSpec("higher block size must be ≥ 2")
        validate(spec.base)
    elif isinstance(spec, ExpandSymbol):
        validate(spec.base)
        from .oracle import spec_alphabet

        names = spec_alphabet(spec.base).names
        if spec.sigma not in names:
            raise MalformedSpec(f"symbol {spec.sigma!r} is not in the base alphabet")
        if spec.sigma_prime in names or not spec.sigma_prime or any(c.isspace() for c in spec.sigma_prime):
            raise MalformedSpec(f"expansion symbol {spec.sigma_prime!r} is not fresh")
    elif isinstance(spec, ExplicitMarkov):
        if not spec.code.words:
            raise MalformedSpec("explicit code has no words")
    else:
        raise MalformedSpec(f"unknown spec {spec!r}")


def is_code(spec: CodeSpec) -> bool:
    """Whether the spec denotes a code with a single boundary (so unions make sense)."""
    if isinstance(spec, (BuiltinReset, BuiltinCounter)):
        return True
    if isinstance(spec, Union):
        return all(is_code(m) for m in spec.members)
    if isinstance(spec, (Reversed, ExpandSymbol)):
        return is_code(spec.base)
    if isinstance(spec, ExplicitMarkov):
        return spec.code.simple
    return False


def _introduced(spec: CodeSpec) -> set[str]:
    if isinstance(spec, ExpandSymbol):
        return {spec.sigma_prime} | _introduced(spec.base)
    if isinstance(spec, (Reversed, HigherBlock)):
        return _introduced(spec.base)
    if isinstance(spec, Union):
        return set().union(*(_introduced(m) for m in spec.members))
    return set()


def describe(spec: CodeSpec) -> str:
    """Short human readable name, e.g. ``reverse(reset(2))``."""
    if isinstance(spec, BuiltinReset):
        return f"reset({spec.N})"
    if isinstance(spec, BuiltinCounter):
        return f"counter({spec.N})"
    if isinstance(spec, Union):
        return "union(" + ", ".join(describe(m) for m in spec.members) + ")"
    if isinstance(spec, Reversed):
        return f"reverse({describe(spec.base)})"
    if isinstance(spec, HigherBlock):
        return f"block{spec.n}({describe(spec.base)})"
    if isinstance(spec, ExpandSymbol):
        return f"expand({describe(spec.base)}, {spec.sigma}->{spec.sigma}{spec.sigma_prime})"
    if isinstance(spec, ExplicitMarkov):
        return f"markov({len(spec.code.words)} words over {len(spec.code.alphabet)} symbols)"
    return repr(spec)


# ---------------------------------------------------------------------------
# JSON


def _schema() -> dict:
    text = resources.files("occ").joinpath("schemas/codespec.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def to_json(spec: CodeSpec) -> dict:
    if isinstance(spec, BuiltinReset):
        return {"variant": "BuiltinReset", "N": spec.N}
    if isinstance(spec, BuiltinCounter):
        return {"variant": "BuiltinCounter", "N": spec.N}
    if isinstance(spec, Union):
        return {"variant": "Union", "members": [to_json(m) for m in spec.members]}
    if isinstance(spec, Reversed):
        return {"variant": "Reversed", "base": to_json(spec.base)}
    if isinstance(spec, HigherBlock):
        return {"variant": "HigherBlock", "base": to_json(spec.base), "n": spec.n}
    if isinstance(spec, ExpandSymbol):
        return {"variant": "ExpandSymbol", "base": to_json(spec.base), "sigma": spec.sigma, "sigma_prime": spec.sigma_prime}
    if isinstance(spec, ExplicitMarkov):
        c = spec.code
        return {
            "variant": "ExplicitMarkov",
            "alphabet": list(c.alphabet.names),
            "words": [[c.alphabet.names[x] for x in w] for w in c.words],
            "gamma": list(c.gamma),
            "s": [c.gamma[i] for i in c.s],
            "t": [c.gamma[i] for i in c.t],
            "transition": [list(r) for r in c.transition],
        }
    raise MalformedSpec(f"cannot serialize {spec!r}")


def from_json(obj: dict) -> CodeSpec:
    """Parse a JSON object (already decoded) into a spec, with field-level diagnostics."""
    validator = jsonschema.Draft202012Validator(_schema())
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SchemaError(e.message, path)
    return _build(obj, "")


def _build(obj: dict, path: str) -> CodeSpec:
    v = obj["variant"]
    here = path or "<root>"
    if v in ("BuiltinReset", "BuiltinCounter"):
        n = obj["N"]
        if n < 1:
            raise SchemaError("N must be ≥ 1", f"{here}/N".lstrip("/"))
        return BuiltinReset(n) if v == "BuiltinReset" else BuiltinCounter(n)
    if v == "Union":
        return Union(tuple(_build(m, f"{path}/members/{i}") for i, m in enumerate(obj["members"])))
    if v == "Reversed":
        return Reversed(_build(obj["base"], f"{path}/base"))
    if v == "HigherBlock":
        return HigherBlock(_build(obj["base"], f"{path}/base"), obj["n"])
    if v == "ExpandSymbol":
        return ExpandSymbol(_build(obj["base"], f"{path}/base"), obj["sigma"], obj["sigma_prime"])
    if v == "ExplicitMarkov":
        try:
            alph = Alphabet(tuple(obj["alphabet"]))
        except MalformedSpec as exc:
            raise SchemaError(str(exc), f"{here}/alphabet") from None
        gamma = tuple(obj.get("gamma", ["*"]))
        words = []
        for i, w in enumerate(obj["words"]):
            if not w:
                raise SchemaError("code words must be nonempty", f"{path}/words/{i}".lstrip("/"))
            try:
                words.append(tuple(alph.id_of(x) for x in w))
            except KeyError as exc:
                raise SchemaError(f"unknown symbol {exc.args[0]!r}", f"{path}/words/{i}".lstrip("/")) from None
        n = len(words)

        def idx(key: str) -> tuple[int, ...]:
            vals = obj.get(key)
            if vals is None:
                return (0,) * n
            if len(vals) != n:
                raise SchemaError(f"{key} must list one index per word", f"{path}/{key}".lstrip("/"))
            try:
                return tuple(gamma.index(x) for x in vals)
            except ValueError:
                raise SchemaError(f"{key} refers to an index outside gamma", f"{path}/{key}".lstrip("/")) from None

        s, t = idx("s"), idx("t")
        trans = tuple(tuple(r) for r in obj.get("transition", [[1] * len(gamma)] * len(gamma)))
        try:
            return ExplicitMarkov(MarkovCode(alph, tuple(words), gamma, s, t, trans))
        except MalformedSpec as exc:
            raise SchemaError(str(exc), here) from None
    raise SchemaError(f"unknown variant {v!r}", here)


def dumps(spec: CodeSpec) -> str:
    return json.dumps({"schema": SPEC_SCHEMA_ID, **to_json(spec)}, ensure_ascii=False, indent=2)


def loads(text: str) -> CodeSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno) from None
    if not isinstance(obj, dict):
        raise SchemaError("top level must be an object")
    obj = {k: v for k, v in obj.items() if k != "schema"}
    return from_json(obj)


def validate_spec_file(path: str | Path) -> CodeSpec:
    """Read and validate a spec file; raises ParseError or SchemaError with a location."""
    text = Path(path).read_text(encoding="utf-8")
    spec = loads(text)
    try:
        validate(spec)
    except MalformedSpec as exc:
        raise SchemaError(str(exc)) from None
    return spec
