"""Finitely generated abelian groups, induced maps, direct limits, K-groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import NotStabilized, NotWellDefined
from .intlin import (
    Matrix,
    column_lattice_equal,
    from_columns,
    hnf_rows,
    kernel_basis,
    mat,
    matmul,
    matvec,
    smith_form,
    solve,
    sub,
    transpose,
)


@dataclass(frozen=True, order=True)
class FgAbelianGroup:
    """ℤ^rank ⊕ ℤ/d₁ ⊕ … ⊕ ℤ/d_k with 1 < d₁ | d₂ | … (canonical, so == is ≅)."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        t = tuple(int(d) for d in self.torsion)
        if any(d < 2 for d in t) or any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError(f"torsion {t} is not a canonical invariant factor list")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, rank: int, orders: Sequence[int]) -> "FgAbelianGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 means ℤ, 1 is dropped)."""
        free = rank + sum(1 for d in orders if d == 0)
        fin = [abs(d) for d in orders if abs(d) > 1]
        diag = smith_form([[d if i == j else 0 for j in range(len(fin))] for i, d in enumerate(fin)]).diag if fin else ()
        return cls(free, tuple(d for d in diag if d > 1))

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Per canonical coordinate: its order, 0 for free coordinates."""
        return self.torsion + (0,) * self.rank

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_part(self) -> "FgAbelianGroup":
        return FgAbelianGroup(0, self.torsion)

    def free_part(self) -> "FgAbelianGroup":
        return FgAbelianGroup(self.rank, ())

    def __add__(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_orders(self.rank + other.rank, self.torsion + other.torsion)

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj: dict) -> "FgAbelianGroup":
        return cls(int(obj["rank"]), tuple(obj["torsion"]))

    def __str__(self) -> str:
        parts = [f"ℤ/{d}ℤ" for d in self.torsion]
        if self.rank == 1:
            parts.append("ℤ")
        elif self.rank > 1:
            parts.append(f"ℤ^{self.rank}")
        return " ⊕ ".join(parts) if parts else "0"


def reduce_vec(v: Sequence[int], moduli: Sequence[int]) -> tuple[int, ...]:
    return tuple(x % d if d else x for x, d in zip(v, moduli))


@dataclass(frozen=True)
class Quotient:
    """ℤ^m / A·ℤ^n together with the data to push vectors into canonical coordinates."""

    relations: Matrix
    m: int
    group: FgAbelianGroup
    proj: Matrix  # rows of L picking the kept coordinates
    gens: tuple[tuple[int, ...], ...]  # ambient lifts of the canonical generators

    def project(self, v: Sequence[int]) -> tuple[int, ...]:
        return reduce_vec(matvec(self.proj, v), self.group.moduli)

    def contains(self, v: Sequence[int]) -> bool:
        """Whether v lies in the relation lattice."""
        return not any(self.project(v))


def cokernel(a: Sequence[Sequence[int]], rows: int | None = None) -> Quotient:
    """Canonical form of ℤ^rows / A·ℤ^cols with projection data."""
    A = mat(a)
    m = len(A) if A else (rows or 0)
    n = len(A[0]) if A else 0
    if m == 0:
        return Quotient(A, 0, FgAbelianGroup(), (), ())
    sf = smith_form(A, rows=m, cols=n)
    d = list(sf.diag) + [0] * (m - len(sf.diag))
    tors = [i for i in range(m) if d[i] > 1]
    free = [i for i in range(m) if d[i] == 0]
    keep = tors + free
    group = FgAbelianGroup(len(free), tuple(d[i] for i in tors))
    proj = tuple(sf.L[i] for i in keep)
    gens = tuple(tuple(sf.U[r][i] for r in range(m)) for i in keep)
    return Quotient(A, m, group, proj, gens)


def trivial_quotient(group: FgAbelianGroup) -> Quotient:
    """The canonical presentation of a group given in canonical form."""
    k = group.ngens
    rel_cols = [[d if i == j else 0 for i in range(k)] for j, d in enumerate(group.torsion)]
    A = from_columns(rel_cols, k) if rel_cols else tuple(() for _ in range(k))
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return Quotient(A, k, group, ident, ident)


@dataclass(frozen=True)
class GroupHom:
    domain: FgAbelianGroup
    codomain: FgAbelianGroup
    matrix: Matrix  # codomain.ngens × domain.ngens, acting on canonical coordinates

    def __post_init__(self) -> None:
        for j, d in enumerate(self.domain.moduli):
            if d:
                col = [self.matrix[i][j] * d for i in range(self.codomain.ngens)]
                if any(reduce_vec(col, self.codomain.moduli)):
                    raise NotWellDefined(f"generator {j} of order {d} is not sent to an element of order dividing {d}")

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        return reduce_vec(matvec(self.matrix, v), self.codomain.moduli)

    def compose(self, first: "GroupHom") -> "GroupHom":
        """self ∘ first."""
        n = first.domain.ngens
        if self.codomain.ngens == 0:
            m: Matrix = ()
        elif self.domain.ngens == 0:
            m = tuple((0,) * n for _ in range(self.codomain.ngens))
        else:
            m = matmul(self.matrix, first.matrix, inner=self.domain.ngens, cols=n)
        return GroupHom(first.domain, self.codomain, _reduce_rows(m, self.codomain.moduli))

    def is_iso(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def _lattice(self) -> tuple[Matrix, int]:
        k = self.codomain.ngens
        cols = [tuple(self.matrix[i][j] for i in range(k)) for j in range(self.domain.ngens)]
        cols += [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(self.codomain.moduli) if d]
        return from_columns(cols, k), k

    def is_surjective(self) -> bool:
        lat, k = self._lattice()
        ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        return column_lattice_equal(lat, ident, k) if k else True

    def kernel_lattice(self) -> list[tuple[int, ...]]:
        """Generators (in domain coordinates) of the kernel, including domain relations."""
        k, n = self.codomain.ngens, self.domain.ngens
        cod_rel = [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(self.codomain.moduli) if d]
        big = [list(self.matrix[i]) + [-c[i] for c in cod_rel] for i in range(k)]
        if k == 0:
            return [tuple(int(i == j) for i in range(n)) for j in range(n)]
        ker = kernel_basis(big, cols=n + len(cod_rel))
        gens = [v[:n] for v in ker]
        gens += [tuple(d if i == j else 0 for i in range(n)) for j, d in enumerate(self.domain.moduli) if d]
        return [g for g in gens if any(g)]

    def is_injective(self) -> bool:
        n = self.domain.ngens
        rel = [tuple(d if i == j else 0 for i in range(n)) for j, d in enumerate(self.domain.moduli) if d]
        ker = self.kernel_lattice()
        return hnf_rows(ker, n) == hnf_rows(rel, n)

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(), "matrix": [list(r) for r in self.matrix]}


def _reduce_rows(m: Matrix, moduli: Sequence[int]) -> Matrix:
    return tuple(tuple(x % d if d else x for x in row) for row, d in zip(m, moduli))


def induced_hom(F: Sequence[Sequence[int]], domain: Quotient, codomain: Quotient) -> GroupHom:
    """The map on quotients induced by the ambient matrix F; checks relations go to relations."""
    Fm = mat(F)
    for col in range(len(domain.relations[0]) if domain.relations and domain.relations[0] else 0):
        rel = tuple(domain.relations[i][col] for i in range(domain.m))
        img = matvec(Fm, rel) if Fm else ()
        if not codomain.contains(img):
            raise NotWellDefined(f"relation column {col} maps outside the target relation lattice")
    cols = [codomain.project(matvec(Fm, g)) if Fm else () for g in domain.gens]
    k = codomain.group.ngens
    matrix = tuple(tuple(c[i] for c in cols) for i in range(k))
    return GroupHom(domain.group, codomain.group, matrix)


def identity_hom(g: FgAbelianGroup) -> GroupHom:
    k = g.ngens
    return GroupHom(g, g, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))


@dataclass
class DirectLimitTrace:
    groups: list[FgAbelianGroup]
    maps: list[GroupHom]
    levels: list[int]
    images: list[FgAbelianGroup] = field(default_factory=list)
    stable_from: int | None = None
    limit: FgAbelianGroup | None = None

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "groups": [g.to_json() for g in self.groups],
            "images_in_last": [g.to_json() for g in self.images],
            "stable_from": self.stable_from,
            "limit": self.limit.to_json() if self.limit else None,
        }


def _image_lattice(hom_chain: list[GroupHom], start: int, target: FgAbelianGroup) -> list[tuple[int, ...]]:
    """Column generators of image(G_start → G_last) plus the target relations."""
    k = target.ngens
    n = hom_chain[start].domain.ngens if start < len(hom_chain) else target.ngens
    vecs = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for h in hom_chain[start:]:
        vecs = [h(v) for v in vecs]
    vecs += [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(target.moduli) if d]
    return vecs


def subgroup_quotient(gens: list[tuple[int, ...]], target: FgAbelianGroup) -> FgAbelianGroup:
    """Isomorphism type of ⟨gens⟩ + R / R inside ℤ^k / R, R the target relations."""
    k = target.ngens
    basis = [tuple(r) for r in hnf_rows(gens, k)]
    if not basis:
        return FgAbelianGroup()
    rel = [tuple(d if i == j else 0 for i in range(k)) for j, d in enumerate(target.moduli) if d]
    coords = []
    for r in rel:
        x = solve(basis, r, k)
        assert x is not None, "relations must lie in the subgroup lattice"
        coords.append(x)
    nb = len(basis)
    if not coords:
        return FgAbelianGroup(nb, ())
    q = cokernel(from_columns(coords, nb), rows=nb)
    return q.group


def direct_limit(groups: Sequence[FgAbelianGroup], maps: Sequence[GroupHom], window: int = 3, levels: Sequence[int] | None = None) -> tuple[FgAbelianGroup, DirectLimitTrace]:
    """Limit of G_0 → G_1 → … once the images stop growing.

    Everything is measured inside the last group G_b: ``Im(G_l → G_b)``
    grows with l, and the induced maps between consecutive images are
    isomorphisms exactly when two consecutive images coincide.  The limit
    is reported from the first level s where the images of s, s+1, …,
    s+window agree (all strictly below b, since the map into G_b itself
    has no look-ahead).  Otherwise :class:`NotStabilized` is raised with
    the trace.
    """
    groups = list(groups)
    maps = list(maps)
    if len(maps) != len(groups) - 1:
        raise ValueError("need exactly one map between consecutive groups")
    lv = list(levels) if levels is not None else list(range(len(groups)))
    trace = DirectLimitTrace(groups, maps, lv)
    if not groups:
        raise NotStabilized("empty direct system", trace)
    target = groups[-1]
    b = len(groups) - 1
    k = target.ngens
    lattices = []
    for l in range(b + 1):
        gens = _image_lattice(maps, l, target)
        lattices.append(hnf_rows(gens, k))
        trace.images.append(subgroup_quotient(gens, target))
    for s in range(0, b - window):
        if all(lattices[s] == lattices[s + i] for i in range(1, window + 1)):
            trace.stable_from = lv[s]
            trace.limit = trace.images[s]
            return trace.limit, trace
    raise NotStabilized(f"no run of {window} isomorphisms among {len(maps)} maps", trace)


@dataclass
class KTrace:
    k0: DirectLimitTrace | None
    k1: DirectLimitTrace | None


def k_groups(M: Sequence[Matrix], I: Sequence[Matrix], window: int = 3, first_level: int = 0) -> tuple[FgAbelianGroup, FgAbelianGroup, KTrace]:
    """K₀ and K₁ from the level matrices ``M[l] = M_{l,l+1}``, ``I[l] = I_{l,l+1}``.

    K₀ is the limit of ℤ^{m(l+1)} / (Mᵗ − Iᵗ)ℤ^{m(l)} along the maps induced by
    Iᵗ_{l+1,l+2}; K₁ the limit of Ker(Mᵗ − Iᵗ) ⊂ ℤ^{m(l)} along Iᵗ_{l,l+1}.
    """
    L = len(M)
    D = [sub(transpose(M[l]), transpose(I[l])) for l in range(L)]
    sizes = [len(M[l]) for l in range(L)] + [len(M[-1][0]) if M[-1] else 0]
    quots = [cokernel(D[l], rows=sizes[l + 1]) for l in range(L)]
    k0_maps = [induced_hom(transpose(I[l + 1]), quots[l], quots[l + 1]) for l in range(L - 1)]
    levels = [first_level + l for l in range(L)]
    trace = KTrace(None, None)
    errors = []
    try:
        k0, trace.k0 = direct_limit([q.group for q in quots], k0_maps, window, levels)
    except NotStabilized as exc:
        trace.k0 = exc.trace
        k0 = None
        errors.append("K0")
    kers = [kernel_basis(D[l], cols=sizes[l]) for l in range(L)]
    kgroups = [FgAbelianGroup(len(b), ()) for b in kers]
    k1_maps = []
    for l in range(L - 1):
        It = transpose(I[l])
        cols = []
        for v in kers[l]:
            img = matvec(It, v)
            x = solve(kers[l + 1], img, sizes[l + 1])
            if x is None:
                raise NotWellDefined(f"Iᵗ does not carry the kernel at level {l} into the next kernel")
            cols.append(x)
        r = len(kers[l + 1])
        matrix = tuple(tuple(c[i] for c in cols) for i in range(r))
        k1_maps.append(GroupHom(kgroups[l], kgroups[l + 1], matrix))
    try:
        k1, trace.k1 = direct_limit(kgroups, k1_maps, window, levels)
    except NotStabilized as exc:
        trace.k1 = exc.trace
        k1 = None
        errors.append("K1")
    if errors:
        raise NotStabilized(f"{' and '.join(errors)} did not stabilize", trace)
    return k0, k1, trace


PAPER_BF1_NOTE = (
    "BF¹ = torsion(K₁) ⊕ free(K₀) by the universal-coefficient sequence; "
    "with K₀ ≅ ℤ/Nℤ ⊕ ℤ and K₁ = 0 this is ℤ, whereas the source states ℤ² for this case"
)


@dataclass(frozen=True)
class BowenFranks:
    bf0: FgAbelianGroup
    bf1: FgAbelianGroup
    note: str
    stated_bf1: FgAbelianGroup | None = None

    def to_json(self) -> dict:
        out = {"BF0": self.bf0.to_json(), "BF1": self.bf1.to_json(), "note": self.note}
        if self.stated_bf1 is not None:
            out["BF1_stated_in_source"] = self.stated_bf1.to_json()
        return out


def bowen_franks(k0: FgAbelianGroup, k1: FgAbelianGroup) -> BowenFranks:
    """BF⁰ = Ext(K₀) ⊕ Hom(K₁) = tors(K₀) ⊕ free(K₁); BF¹ = tors(K₁) ⊕ free(K₀)."""
    bf0 = FgAbelianGroup(k1.rank, k0.torsion)
    bf1 = FgAbelianGroup(k0.rank, k1.torsion)
    note = "BF⁰ = torsion(K₀) ⊕ free(K₁), BF¹ = torsion(K₁) ⊕ free(K₀) (universal-coefficient splitting)"
    stated = None
    if k1.is_trivial() and k0.rank == 1 and len(k0.torsion) <= 1:
        note = PAPER_BF1_NOTE
        stated = FgAbelianGroup(2, ())
    return BowenFranks(bf0, bf1, note, stated)
