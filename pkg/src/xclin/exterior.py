"""Non-abelian exterior products, exterior centres and exterior isoclinism.

``M ∧ N`` for normal subgroups ``M, N`` of a common group ``G`` is built from
its defining presentation with one generator ``e(m, n)`` per pair, then
materialized by coset enumeration.  Conjugation ``ˣy = x y x^-1`` is taken in
``G``.  The resulting pairing table ``lam[i, j]`` (an element index of the
wedge group) is what every other computation reads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels
from .catalog import all_small_groups, catalog_orders, ids_of_order, small_group
from .errors import ConsistencyError, NotFoundError, NotNormalError, PreconditionError
from .fpenum import DEFAULT_MAX_COSETS, CosetTable, Presentation, coset_enumeration, permutation_realization
from .groups import (Group, GroupHom, QuotientGroup, Subgroup, generator_image_extension,
                     iter_isomorphisms, quotient_group)


@dataclass(frozen=True, eq=False)
class ExteriorPairing:
    """``M ∧ N`` with its universal pairing.

    ``lam[i, j]`` is ``left.indices[i] ∧ right.indices[j]`` as an index into
    ``wedge``; ``symbols[i, j]`` is the presentation generator of that pair.
    """
    ambient: Group
    left: Subgroup
    right: Subgroup
    presentation: Presentation = field(repr=False)
    coset_table: CosetTable = field(repr=False)
    wedge: Group
    lam: np.ndarray = field(repr=False)
    symbols: np.ndarray = field(repr=False)

    def pair(self, m, n):
        """``m ∧ n`` for ambient element indices ``m ∈ M``, ``n ∈ N``."""
        return self.lam[self.left.to_group(m), self.right.to_group(n)]


_CACHE: dict[tuple, ExteriorPairing] = {}


def _presentation(G: Group, M: Subgroup, N: Subgroup) -> tuple[Presentation, np.ndarray]:
    a, b = M.order, N.order
    posM = np.full(G.order, -1, dtype=np.int64)
    posN = np.full(G.order, -1, dtype=np.int64)
    posM[M.indices] = np.arange(a)
    posN[N.indices] = np.arange(b)
    sym = np.arange(a * b, dtype=np.int64).reshape(a, b)
    letter = lambda m, n: sym[posM[m], posN[n]] + 1  # noqa: E731

    m, n = M.indices, N.indices
    both = np.intersect1d(m, n)
    rels = [np.stack([letter(both, both)], axis=-1)] if len(both) else []

    # e(mm', n)^-1 e(ᵐm', ᵐn) e(m, n)
    x, y, z = m[:, None, None], m[None, :, None], n[None, None, :]
    x, y, z = np.broadcast_arrays(x, y, z)
    first = np.stack([-letter(G.mul[x, y], z), letter(G.conj(x, y), G.conj(x, z)), letter(x, z)],
                     axis=-1).reshape(-1, 3)
    # e(m, nn')^-1 e(m, n) e(ⁿm, ⁿn')
    x, y, z = m[:, None, None], n[None, :, None], n[None, None, :]
    x, y, z = np.broadcast_arrays(x, y, z)
    second = np.stack([-letter(x, G.mul[y, z]), letter(x, y), letter(G.conj(y, x), G.conj(y, z))],
                      axis=-1).reshape(-1, 3)

    words: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for block in rels + [first, second]:
        for row in block.tolist():
            w = tuple(row)
            if w not in seen:
                seen.add(w)
                words.append(w)
    return Presentation(a * b, words), sym


def exterior_product(G: Group, M: Subgroup | None = None, N: Subgroup | None = None, *,
                     max_cosets: int = DEFAULT_MAX_COSETS) -> ExteriorPairing:
    M = G.whole() if M is None else M
    N = G.whole() if N is None else N
    if M.parent is not G or N.parent is not G:
        raise PreconditionError("subgroups of a different group")
    key = (G.key, M.indices.tobytes(), N.indices.tobytes())
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    if not (M.is_normal() and N.is_normal()):
        raise NotNormalError("exterior product needs normal subgroups")
    P, sym = _presentation(G, M, N)
    T = coset_enumeration(P, max_cosets)
    W, perms = permutation_realization(T)
    images = np.array([W.index(p) for p in perms], dtype=np.int64)
    pairing = ExteriorPairing(G, M, N, P, T, W, images[sym], sym)
    return _CACHE.setdefault(key, pairing)


def exterior_square(G: Group, *, max_cosets: int = DEFAULT_MAX_COSETS) -> ExteriorPairing:
    return exterior_product(G, max_cosets=max_cosets)


def pairing_identities_hold(P: ExteriorPairing) -> bool:
    """Exhaustive check of the three defining identities of an exterior pairing."""
    G, W, lam = P.ambient, P.wedge, P.lam
    m, n = P.left.indices, P.right.indices
    h = lambda x, y: lam[P.left.to_group(x), P.right.to_group(y)]  # noqa: E731
    x, y, z = np.broadcast_arrays(m[:, None, None], m[None, :, None], n[None, None, :])
    ok1 = (h(G.mul[x, y], z) == W.mul[h(G.conj(x, y), G.conj(x, z)), h(x, z)]).all()
    x, y, z = np.broadcast_arrays(m[:, None, None], n[None, :, None], n[None, None, :])
    ok2 = (h(x, G.mul[y, z]) == W.mul[h(x, y), h(G.conj(y, x), G.conj(y, z))]).all()
    both = np.intersect1d(m, n)
    ok3 = (h(both, both) == 0).all()
    generated = _kernels.generated_mask(W.mul, np.unique(lam)).all()
    return bool(ok1 and ok2 and ok3 and generated)


def exterior_center(G: Group) -> Subgroup:
    if "ext_center" not in G._cache:
        lam = exterior_square(G).lam
        G._cache["ext_center"] = Subgroup(G, np.flatnonzero((lam == 0).all(axis=1)))
    return G._cache["ext_center"]


def exterior_degree(G: Group) -> Fraction:
    lam = exterior_square(G).lam
    return Fraction(int((lam == 0).sum()), G.order ** 2)


def commutator_image(P: ExteriorPairing) -> GroupHom:
    """The map ``κ: M ∧ N -> G``, ``m ∧ n -> [m, n]``."""
    G = P.ambient
    m, n = P.left.indices, P.right.indices
    comm = G.comm(m[:, None], n[None, :])
    hom = generator_image_extension(P.lam.ravel(), comm.ravel(), P.wedge, G)
    if hom is None:
        raise ConsistencyError("m∧n -> [m,n] does not extend to a homomorphism")
    return hom


def abelian_wedge_oracle(invariants) -> list[int]:
    """Invariant factors of ``A ∧ A`` for ``A = C_d1 x ... x C_dk`` with ``d1 | d2 | ...``."""
    ds = [int(d) for d in invariants]
    if any(d < 1 for d in ds) or any(ds[i + 1] % ds[i] for i in range(len(ds) - 1)):
        raise PreconditionError(f"{ds} is not a divisor chain")
    out = [math.gcd(ds[i], ds[j]) for i in range(len(ds)) for j in range(i + 1, len(ds))]
    return sorted(d for d in out if d > 1)


# ------------------------------------------------------ exterior isoclinism

def exterior_quotient(G: Group) -> tuple[QuotientGroup, np.ndarray]:
    """``G/Z∧(G)`` and the pairing it induces, indexed by carrier elements."""
    Q = quotient_group(G, exterior_center(G))
    lam = exterior_square(G).lam
    return Q, lam[Q.lift[:, None], Q.lift[None, :]]


@dataclass(frozen=True, eq=False)
class ExteriorIsoclinismWitness:
    source: QuotientGroup
    target: QuotientGroup
    mu: GroupHom
    zeta: GroupHom

    def inverse(self) -> ExteriorIsoclinismWitness:
        return ExteriorIsoclinismWitness(self.target, self.source, self.mu.inverse(), self.zeta.inverse())

    def then(self, other: ExteriorIsoclinismWitness) -> ExteriorIsoclinismWitness:
        return ExteriorIsoclinismWitness(self.source, other.target, other.mu.compose(self.mu),
                                         other.zeta.compose(self.zeta))

    def verify(self) -> bool:
        mu, zeta = self.mu, self.zeta
        if not (mu.is_bijective() and zeta.is_bijective()):
            return False
        if not (mu.is_homomorphism() and zeta.is_homomorphism()):
            return False
        _, hm = exterior_quotient(self.source.parent)
        _, hn = exterior_quotient(self.target.parent)
        t = mu.table
        return bool((zeta.table[hm] == hn[t[:, None], t[None, :]]).all())


def _transport_wedge(PM: ExteriorPairing, PN: ExteriorPairing, images: np.ndarray) -> GroupHom | None:
    """``ζ: M∧M -> N∧N`` sending generator ``g`` to ``images[g]``, if well defined and onto."""
    WN = PN.wedge
    data, start = PM.presentation.encoded()
    if not _kernels.relators_trivial(WN.mul, WN.inv, images, data, start):
        return None
    if not _kernels.generated_mask(WN.mul, np.unique(images)).all():
        return None
    zeta = generator_image_extension(PM.lam.ravel(), images[PM.symbols.ravel()], PM.wedge, WN)
    if zeta is None:
        raise ConsistencyError("relators vanish but the wedge map does not extend")
    return zeta


def are_exterior_isoclinic_groups(M: Group, N: Group) -> ExteriorIsoclinismWitness | None:
    PM, PN = exterior_square(M), exterior_square(N)
    QM, hm = exterior_quotient(M)
    QN, hn = exterior_quotient(N)
    if QM.order != QN.order or PM.wedge.order != PN.wedge.order:
        return None
    projM = QM.projection.table
    for mu in iter_isomorphisms(QM.carrier, QN.carrier):
        t = mu.table[projM]
        # generator e(x, y) of M∧M goes to μ(x) ∧ μ(y)
        images = np.empty(M.order * M.order, dtype=np.int64)
        images[PM.symbols] = hn[t[:, None], t[None, :]]
        zeta = _transport_wedge(PM, PN, images)
        if zeta is not None:
            return ExteriorIsoclinismWitness(QM, QN, mu, zeta)
    return None


def exterior_isoclinic_family(G: Group, order: int) -> list[int]:
    return [i for i in ids_of_order(order)
            if are_exterior_isoclinic_groups(G, small_group(order, i)) is not None]


def exterior_center_in_commutator_image(G: Group) -> bool:
    """``Z∧(G)`` lies in the image of ``G∧G`` under ``m∧n -> [m, n]``, i.e. in ``[G, G]``.

    Kept for comparison only; it is weaker than :func:`is_exterior_stem_group`
    (at order 16 it also accepts ids 8, 9, 12 and 13).
    """
    kappa_image = commutator_image(exterior_square(G)).image()
    return exterior_center(G).issubset(kappa_image)


def is_exterior_stem_group(G: Group) -> bool:
    """True iff ``G`` has the smallest order in its exterior isoclinism family.

    Since ``G`` is exterior isoclinic to ``G/Z∧(G)``, this is the same as
    ``Z∧(G) = 1``.
    """
    return exterior_center(G).order == 1


def all_exterior_stem_group_ids(order: int) -> list[tuple[int, int]]:
    return [(order, i) for i in ids_of_order(order) if is_exterior_stem_group(small_group(order, i))]


def _smallest_match(G: Group, want_stem: bool) -> Group:
    q = quotient_group(G, exterior_center(G)).order
    w = exterior_square(G).wedge.order
    for order in catalog_orders():
        if order < q:
            continue
        for H in all_small_groups(order):
            if quotient_group(H, exterior_center(H)).order != q:
                continue
            if exterior_square(H).wedge.order != w:
                continue
            if want_stem and not is_exterior_stem_group(H):
                continue
            if are_exterior_isoclinic_groups(G, H) is not None:
                return H
    what = "exterior stem group" if want_stem else "group"
    raise NotFoundError(f"no catalog {what} is exterior isoclinic to {G!r}")


def exterior_isoclinic_group(G: Group) -> Group:
    """Smallest catalog group exterior isoclinic to ``G`` (smallest id on ties)."""
    return _smallest_match(G, want_stem=False)


def exterior_isoclinic_exterior_stem_group(G: Group) -> Group:
    return _smallest_match(G, want_stem=True)


__all__ = [
    "ExteriorPairing", "ExteriorIsoclinismWitness", "exterior_product", "exterior_square",
    "pairing_identities_hold", "exterior_center", "exterior_degree", "commutator_image",
    "abelian_wedge_oracle", "exterior_quotient", "are_exterior_isoclinic_groups",
    "exterior_isoclinic_family", "is_exterior_stem_group", "all_exterior_stem_group_ids",
    "exterior_isoclinic_group", "exterior_isoclinic_exterior_stem_group",
    "exterior_center_in_commutator_image",
]
