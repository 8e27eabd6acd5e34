"""Finite permutation groups stored with their full element tables.

Every group keeps its elements sorted; algorithms work on element indices and
a dense multiplication table ``mul[i, j] = index(elements[i] * elements[j])``.
The identity permutation is lexicographically smallest, so it is index 0.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import ConsistencyError, NotNormalError, PreconditionError
from .perm import Permutation, parse_cycles


MAX_DENSE_ORDER = 5000


def _row_keys(rows: np.ndarray) -> np.ndarray:
    # big-endian uint16 so byte order matches lexicographic order of points
    arr = np.ascontiguousarray(rows.astype(">u2"))
    return arr.view(np.dtype((np.void, 2 * rows.shape[-1]))).reshape(rows.shape[:-1])


def _closure(gens: Sequence[Permutation], degree: int) -> list[Permutation]:
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    gimg = [g.images for g in gens]
    while frontier:
        new = []
        for x in frontier:
            xi = x.images
            for g in gimg:
                y = Permutation(tuple(xi[i] for i in g))
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return list(seen)


class Group:
    """A finite permutation group with a complete, sorted element table."""

    def __init__(
        self,
        generators: Iterable[Permutation],
        name: str = "",
        catalog_id: tuple[int, int] | None = None,
        *,
        degree: int | None = None,
        elements: Iterable[Permutation] | None = None,
    ):
        gens = tuple(generators)
        if degree is None:
            degree = gens[0].degree if gens else 1
        if any(g.degree != degree for g in gens):
            raise ValueError("generators of different degrees")
        self.generators = gens
        self.degree = degree
        self.name = name
        self.catalog_id = catalog_id
        if elements is None:
            elements = _closure(gens, degree)
        self.elements: tuple[Permutation, ...] = tuple(sorted(elements))
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._cache: dict = {}

    @classmethod
    def from_cycles(cls, cycle_strings: Sequence[str], degree: int, name: str = "") -> Group:
        return cls([parse_cycles(s, degree) for s in cycle_strings], name=name, degree=degree)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        label = self.name or "Group"
        if self.catalog_id:
            label += f" {list(self.catalog_id)}"
        return f"<{label} of order {self.order}>"

    def index(self, perm: Permutation) -> int:
        return self._index[perm]

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self._index

    @cached_property
    def key(self) -> bytes:
        """Identity of the element table (used for caching derived objects)."""
        return self.degree.to_bytes(4, "little") + self.perm_array.astype(np.uint16).tobytes()

    @cached_property
    def perm_array(self) -> np.ndarray:
        return np.array([e.images for e in self.elements], dtype=np.int64).reshape(self.order, self.degree)

    @cached_property
    def mul(self) -> np.ndarray:
        n = self.order
        if n > MAX_DENSE_ORDER:
            raise PreconditionError(f"order {n} is too large for a dense multiplication table")
        E = self.perm_array
        keys = _row_keys(E)
        table = np.empty((n, n), dtype=np.int64)
        step = max(1, 4_000_000 // max(1, n * self.degree))
        for lo in range(0, n, step):
            hi = min(n, lo + step)
            table[lo:hi] = np.searchsorted(keys, _row_keys(E[lo:hi][:, E]))
        return table

    @cached_property
    def inv(self) -> np.ndarray:
        return np.argmax(self.mul == 0, axis=1).astype(np.int64)

    @cached_property
    def gen_idx(self) -> np.ndarray:
        return np.array([self._index[g] for g in self.generators], dtype=np.int64)

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        ar = np.arange(n)
        cur = ar.copy()
        for k in range(1, n + 1):
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            cur = self.mul[cur, ar]
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.mul == self.mul.T).all())

    def conj(self, x, y):
        """``x y x^-1`` on indices (vectorized)."""
        return self.mul[self.mul[x, y], self.inv[x]]

    def comm(self, x, y):
        """``[x, y] = x y x^-1 y^-1`` on indices (vectorized)."""
        return self.mul[self.mul[x, y], self.mul[self.inv[x], self.inv[y]]]

    def power(self, x, k: int):
        res = np.zeros_like(np.asarray(x))
        base = np.asarray(x)
        while k:
            if k & 1:
                res = self.mul[res, base]
            base = self.mul[base, base]
            k >>= 1
        return res

    def whole(self) -> Subgroup:
        return Subgroup(self, np.arange(self.order))

    def trivial(self) -> Subgroup:
        return Subgroup(self, np.array([0]))


class Subgroup:
    """A subset of ``parent`` closed under products and inverses."""

    def __init__(self, parent: Group, indices, *, check: bool = False):
        idx = np.unique(np.asarray(indices, dtype=np.int64))
        self.parent = parent
        self.indices = idx
        if check:
            sub = parent.mul[np.ix_(idx, idx)]
            if idx[0] != 0 or not np.isin(sub, idx).all():
                raise PreconditionError("subset is not a subgroup")

    @property
    def order(self) -> int:
        return len(self.indices)

    def __len__(self) -> int:
        return len(self.indices)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent!r}>"

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.indices] = True
        return m

    def __contains__(self, i) -> bool:
        return bool(self.mask[i])

    def issubset(self, other: Subgroup) -> bool:
        return bool(other.mask[self.indices].all())

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and np.array_equal(self.indices, other.indices))

    __hash__ = None

    def is_normal(self) -> bool:
        P = self.parent
        conj = P.conj(np.arange(P.order)[:, None], self.indices[None, :])
        return bool(self.mask[conj].all())

    def intersection(self, other: Subgroup) -> Subgroup:
        return Subgroup(self.parent, np.intersect1d(self.indices, other.indices))

    @cached_property
    def generators(self) -> np.ndarray:
        return small_generating_set(self.parent, self.indices)

    @cached_property
    def group(self) -> Group:
        """This subgroup as a standalone group.

        Its element order agrees with ``indices``: element ``k`` of the
        returned group is parent element ``indices[k]``.
        """
        P = self.parent
        return Group([P.elements[i] for i in self.generators],
                     degree=P.degree, elements=[P.elements[i] for i in self.indices])

    def to_group(self, parent_idx):
        """Parent indices -> indices in ``self.group``."""
        return np.searchsorted(self.indices, parent_idx)


def generated(G: Group, idx) -> Subgroup:
    gens = np.asarray(idx, dtype=np.int64).reshape(-1)
    return Subgroup(G, np.flatnonzero(_kernels.generated_mask(G.mul, gens)))


def small_generating_set(G: Group, within=None) -> np.ndarray:
    """Greedy generating set: highest-order element not yet covered, ties by index."""
    target = np.arange(G.order) if within is None else np.asarray(within, dtype=np.int64)
    orders = G.element_orders[target]
    ranked = target[np.lexsort((target, -orders))]
    chosen: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for x in ranked:
        if mask[x]:
            continue
        chosen.append(int(x))
        mask = _kernels.generated_mask(G.mul, np.array(chosen, dtype=np.int64))
        if mask.sum() == len(target):
            break
    return np.array(chosen, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class GroupHom:
    domain: Group
    codomain: Group
    table: np.ndarray

    def __call__(self, x):
        return self.table[x]

    def is_homomorphism(self) -> bool:
        t = self.table
        return bool((t[self.domain.mul] == self.codomain.mul[t[:, None], t[None, :]]).all())

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, self.table)

    def kernel(self) -> Subgroup:
        return Subgroup(self.domain, np.flatnonzero(self.table == 0))

    def is_injective(self) -> bool:
        return len(np.unique(self.table)) == self.domain.order

    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.codomain.order

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_injective()

    def compose(self, first: GroupHom) -> GroupHom:
        """``self ∘ first``."""
        if first.codomain is not self.domain:
            raise PreconditionError("maps do not compose")
        return GroupHom(first.domain, self.codomain, self.table[first.table])

    def inverse(self) -> GroupHom:
        if not self.is_bijective():
            raise PreconditionError("map is not bijective")
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(len(self.table))
        return GroupHom(self.codomain, self.domain, inv)


def identity_hom(G: Group) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order))


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    parent: Group
    normal: Subgroup
    carrier: Group
    projection: GroupHom
    lift: np.ndarray  # carrier index -> smallest parent index in that coset

    @property
    def order(self) -> int:
        return self.carrier.order


def quotient_group(G: Group, N: Subgroup) -> QuotientGroup:
    """``G/N`` realized by the action of ``G`` on the left cosets of ``N``."""
    cache = G._cache.setdefault("quotients", {})
    key = N.indices.tobytes()
    if key in cache:
        return cache[key]
    if N.parent is not G:
        raise PreconditionError("subgroup of a different group")
    if not N.is_normal():
        raise NotNormalError("quotient by a non-normal subgroup")
    cosets = G.mul[:, N.indices]                 # row g: the coset gN
    rep_of = cosets.min(axis=1)                  # smallest element of gN
    reps = np.unique(rep_of)
    coset_no = np.searchsorted(reps, rep_of)     # g -> coset number
    perms = coset_no[G.mul[:, reps]]             # row g: permutation of cosets
    degree = len(reps)
    perm_objs = [Permutation(tuple(int(v) for v in row)) for row in perms]
    distinct = sorted(set(perm_objs))
    carrier = Group([perm_objs[i] for i in G.gen_idx], degree=degree, elements=distinct)
    proj = np.array([carrier.index(p) for p in perm_objs], dtype=np.int64)
    lift = np.full(carrier.order, G.order, dtype=np.int64)
    np.minimum.at(lift, proj, np.arange(G.order))
    Q = QuotientGroup(G, N, carrier, GroupHom(G, carrier, proj), lift)
    cache[key] = Q
    return Q


def center(G: Group) -> Subgroup:
    if "center" not in G._cache:
        z = np.flatnonzero((G.mul == G.mul.T).all(axis=1))
        G._cache["center"] = Subgroup(G, z)
    return G._cache["center"]


def commutator_table(G: Group) -> np.ndarray:
    if "comm" not in G._cache:
        ar = np.arange(G.order)
        G._cache["comm"] = G.comm(ar[:, None], ar[None, :])
    return G._cache["comm"]


def derived_subgroup(G: Group) -> Subgroup:
    if "derived" not in G._cache:
        G._cache["derived"] = generated(G, np.unique(commutator_table(G)))
    return G._cache["derived"]


def commutator_map(G: Group, Z: Subgroup) -> tuple[QuotientGroup, np.ndarray]:
    """The map ``(xZ, yZ) -> [x, y]`` for central ``Z``.

    Returns the quotient and a table indexed by carrier elements whose
    values are parent indices in ``derived_subgroup(G)``.
    """
    if not Z.issubset(center(G)):
        raise PreconditionError("commutator map needs a central subgroup")
    Q = quotient_group(G, Z)
    comm = commutator_table(G)
    proj = Q.projection.table
    table = np.full((Q.order, Q.order), -1, dtype=np.int64)
    table[proj[:, None], proj[None, :]] = comm
    # every representative pair must give the same value
    if not (table[proj[:, None], proj[None, :]] == comm).all():
        raise ConsistencyError("commutator depends on coset representatives")
    return Q, table


@dataclass(frozen=True, eq=False)
class DirectProduct:
    group: Group
    embeddings: tuple[GroupHom, GroupHom]
    projections: tuple[GroupHom, GroupHom]


def direct_product(A: Group, B: Group, name: str = "") -> DirectProduct:
    """``A x B`` acting on the disjoint union of the two point sets.

    Element ``(a, b)`` has index ``a * |B| + b`` because sorting the
    concatenated images is lexicographic in the pair.
    """
    da = A.degree
    shift = lambda p: tuple(da + i for i in p.images)  # noqa: E731
    els = [Permutation(a.images + shift(b)) for a in A.elements for b in B.elements]
    ida = tuple(range(da))
    idb = tuple(range(da, da + B.degree))
    gens = [Permutation(g.images + idb) for g in A.generators]
    gens += [Permutation(ida + shift(g)) for g in B.generators]
    G = Group(gens, name=name or f"{A.name}x{B.name}", degree=da + B.degree, elements=els)
    nb = B.order
    ar = np.arange(G.order)
    emb = (GroupHom(A, G, np.arange(A.order) * nb), GroupHom(B, G, np.arange(nb)))
    proj = (GroupHom(G, A, ar // nb), GroupHom(G, B, ar % nb))
    return DirectProduct(G, emb, proj)


def commutative_degree(G: Group) -> Fraction:
    return Fraction(int((G.mul == G.mul.T).sum()), G.order ** 2)


def is_stem_group(G: Group) -> bool:
    return center(G).issubset(derived_subgroup(G))


# ---------------------------------------------------------------- invariants

def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def abelian_invariants(G: Group) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of ``G/[G,G]`` (all > 1)."""
    if "abinv" in G._cache:
        return G._cache["abinv"]
    A = G if G.is_abelian else quotient_group(G, derived_subgroup(G)).carrier
    orders = A.element_orders
    parts: dict[int, list[int]] = {}
    for p in _prime_factors(A.order):
        exps = []
        prev, k = 0, 1
        while True:
            s = round(math.log(int((p ** k % orders == 0).sum()), p))
            exps.append(s - prev)  # number of cyclic factors of order >= p^k
            if s == prev:
                break
            prev, k = s, k + 1
        counts = [exps[i] - (exps[i + 1] if i + 1 < len(exps) else 0) for i in range(len(exps))]
        pp = []
        for k, c in enumerate(counts, start=1):
            pp += [p ** k] * c
        parts[p] = sorted(pp, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    inv = []
    for i in range(width):
        inv.append(math.prod(v[i] for v in parts.values() if i < len(v)))
    result = sorted(inv)
    G._cache["abinv"] = result
    return result


def invariant_signature(G: Group) -> tuple:
    """Cheap isomorphism invariants used to prune searches."""
    if "sig" not in G._cache:
        hist = tuple(sorted(Counter(G.element_orders.tolist()).items()))
        G._cache["sig"] = (G.order, hist, center(G).order, derived_subgroup(G).order,
                           tuple(abelian_invariants(G)))
    return G._cache["sig"]


# ------------------------------------------------------ homomorphism search

def generator_image_extension(domain_gens, images, A: Group, B: Group) -> GroupHom | None:
    """Extend ``domain_gens[k] -> images[k]`` to a homomorphism ``A -> B``.

    Returns ``None`` when some element would get two different images.
    """
    gens = np.asarray(domain_gens, dtype=np.int64).reshape(-1)
    imgs = np.asarray(images, dtype=np.int64).reshape(-1)
    table, ok = _kernels.extend_images(A.mul, B.mul, gens, imgs)
    if not ok:
        return None
    if (table < 0).any():
        raise PreconditionError("domain generators do not generate the group")
    return GroupHom(A, B, table)


def _search(A: Group, B: Group, bijective: bool) -> Iterator[GroupHom]:
    if A.order == 1:
        if not bijective or B.order == 1:
            yield GroupHom(A, B, np.zeros(1, dtype=np.int64))
        return
    gens = small_generating_set(A)
    oa, ob = A.element_orders, B.element_orders
    if bijective:
        cands = [np.flatnonzero(ob == oa[g]) for g in gens]
    else:
        cands = [np.flatnonzero(oa[g] % ob == 0) for g in gens]
    ngen = len(gens)
    images = np.zeros(ngen, dtype=np.int64)

    def rec(k):
        for c in cands[k]:
            images[k] = c
            table, ok = _kernels.extend_images(A.mul, B.mul, gens[:k + 1], images[:k + 1])
            if not ok:
                continue
            if bijective:
                reached = table[table >= 0]
                if len(np.unique(reached)) != len(reached):
                    continue
            if k + 1 == ngen:
                yield GroupHom(A, B, table.copy())
            else:
                yield from rec(k + 1)

    yield from rec(0)


def iter_homomorphisms(A: Group, B: Group) -> Iterator[GroupHom]:
    return _search(A, B, bijective=False)


def homomorphisms(A: Group, B: Group) -> list[GroupHom]:
    """All homomorphisms ``A -> B`` in lexicographic generator-image order."""
    return list(_search(A, B, bijective=False))


def iter_isomorphisms(A: Group, B: Group) -> Iterator[GroupHom]:
    if A.order != B.order or invariant_signature(A) != invariant_signature(B):
        return iter(())
    return _search(A, B, bijective=True)


def isomorphisms_between(A: Group, B: Group) -> list[GroupHom]:
    return list(iter_isomorphisms(A, B))


def find_isomorphism(A: Group, B: Group) -> GroupHom | None:
    return next(iter_isomorphisms(A, B), None)


def are_isomorphic(A: Group, B: Group) -> bool:
    return find_isomorphism(A, B) is not None


def automorphism_group(S: Group) -> Group:
    """Aut(S) as a permutation group on the element indices of ``S``."""
    if "aut" not in S._cache:
        perms = [Permutation(tuple(int(v) for v in h.table)) for h in isomorphisms_between(S, S)]
        Aut = Group([], degree=S.order, elements=perms, name=f"Aut({S.name})")
        Aut.generators = tuple(Aut.elements[i] for i in small_generating_set(Aut))
        Aut.__dict__.pop("gen_idx", None)
        S._cache["aut"] = Aut
    return S._cache["aut"]


# ------------------------------------------------------------- subgroups

def subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup, ordered by (order, indices)."""
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    cyclic = {}
    for x in range(G.order):
        H = generated(G, [x])
        cyclic.setdefault(H.indices.tobytes(), H)
    found = dict(cyclic)
    frontier = list(found.values())
    while frontier:
        new = []
        for H in frontier:
            for C in cyclic.values():
                if C.issubset(H):
                    continue
                J = generated(G, np.concatenate([H.generators, C.generators]))
                k = J.indices.tobytes()
                if k not in found:
                    found[k] = J
                    new.append(J)
        frontier = new
    subs = sorted(found.values(), key=lambda H: (H.order, H.indices.tolist()))
    G._cache["subgroups"] = subs
    return subs


def normal_subgroups(G: Group) -> list[Subgroup]:
    return [H for H in subgroups(G) if H.is_normal()]


# ------------------------------------------------------------ isoclinism

@dataclass(frozen=True, eq=False)
class GroupIsoclinismWitness:
    """``mu`` between central quotient carriers, ``zeta`` between derived subgroups."""
    source: QuotientGroup
    target: QuotientGroup
    mu: GroupHom
    zeta: GroupHom
    source_derived: Subgroup = field(repr=False)
    target_derived: Subgroup = field(repr=False)

    def inverse(self) -> GroupIsoclinismWitness:
        return GroupIsoclinismWitness(self.target, self.source, self.mu.inverse(),
                                      self.zeta.inverse(), self.target_derived, self.source_derived)

    def then(self, other: GroupIsoclinismWitness) -> GroupIsoclinismWitness:
        """Composite witness: ``self`` followed by ``other``."""
        return GroupIsoclinismWitness(self.source, other.target, other.mu.compose(self.mu),
                                      other.zeta.compose(self.zeta), self.source_derived,
                                      other.target_derived)


def _lifted_comm(Q: QuotientGroup) -> np.ndarray:
    G = Q.parent
    lift = Q.lift
    return commutator_table(G)[lift[:, None], lift[None, :]]


def verify_isoclinism(w: GroupIsoclinismWitness) -> bool:
    """Exhaustively check the commutator square of an isoclinism witness."""
    if not (w.mu.is_bijective() and w.zeta.is_bijective()):
        return False
    if not (w.mu.is_homomorphism() and w.zeta.is_homomorphism()):
        return False
    cm = w.source_derived.to_group(_lifted_comm(w.source))
    cn = w.target_derived.to_group(_lifted_comm(w.target))
    mu = w.mu.table
    return bool((w.zeta.table[cm] == cn[mu[:, None], mu[None, :]]).all())


def _zeta_from_pairs(src: np.ndarray, tgt: np.ndarray, D: Group, E: Group) -> GroupHom | None:
    """Homomorphism ``D -> E`` sending ``src[k] -> tgt[k]`` for every k, if any."""
    src = src.ravel()
    tgt = tgt.ravel()
    want = np.full(D.order, -1, dtype=np.int64)
    want[src] = tgt
    if not (want[src] == tgt).all():
        return None
    gens = np.flatnonzero(want >= 0)
    hom = generator_image_extension(gens, want[gens], D, E)
    if hom is None or not (hom.table[gens] == want[gens]).all():
        return None
    return hom


def are_isoclinic_groups(M: Group, N: Group) -> GroupIsoclinismWitness | None:
    """First isoclinism ``M -> N`` in deterministic search order, or ``None``."""
    QM, QN = quotient_group(M, center(M)), quotient_group(N, center(N))
    DM, DN = derived_subgroup(M), derived_subgroup(N)
    if QM.order != QN.order or DM.order != DN.order:
        return None
    cm = DM.to_group(_lifted_comm(QM))
    cn = DN.to_group(_lifted_comm(QN))
    for mu in iter_isomorphisms(QM.carrier, QN.carrier):
        t = mu.table
        zeta = _zeta_from_pairs(cm, cn[t[:, None], t[None, :]], DM.group, DN.group)
        if zeta is not None and zeta.is_bijective():
            return GroupIsoclinismWitness(QM, QN, mu, zeta, DM, DN)
    return None
