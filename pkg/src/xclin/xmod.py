"""Crossed modules of finite groups and their (exterior) isoclinism.

A crossed module ``X = (∂: S -> R)`` stores its action as a table
``action[r, s] = ʳs`` over element indices.  All constructions re-check the
two axioms exhaustively:

* pre-crossed: ``∂(ʳs) = r ∂(s) r^-1``
* Peiffer: ``^(∂t) s = t s t^-1``
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import all_small_groups, small_group
from .errors import (ConsistencyError, CrossedModuleAxiomError, NotNormalError,
                     PreconditionError)
from .exterior import (ExteriorPairing, _transport_wedge, commutator_image, exterior_center,
                       exterior_square)
from .groups import (Group, GroupHom, QuotientGroup, Subgroup, _zeta_from_pairs,
                     abelian_invariants, automorphism_group, center, derived_subgroup,
                     direct_product, generated, generator_image_extension, homomorphisms,
                     iter_isomorphisms, quotient_group)
from .perm import parse_cycles

_TRIVIAL = Group([], name="1", degree=1)


def _first_failure(bad: np.ndarray) -> tuple:
    return tuple(int(v) for v in np.argwhere(bad)[0])


def _axiom_failure(S: Group, R: Group, bd: np.ndarray, action: np.ndarray) -> CrossedModuleAxiomError | None:
    if action.shape != (R.order, S.order):
        return CrossedModuleAxiomError("action shape", action.shape)
    if not (action[0] == np.arange(S.order)).all():
        return CrossedModuleAxiomError("identity acts trivially", (0,))
    # every ʳ(-) is an automorphism and r -> ʳ(-) is a homomorphism
    auto = action[:, S.mul] != S.mul[action[:, :, None], action[:, None, :]]
    if auto.any():
        return CrossedModuleAxiomError("action by automorphisms", _first_failure(auto))
    ar = np.arange(R.order)
    comp = action[R.mul] != action[ar[:, None, None], action[None, :, :]]
    if comp.any():
        return CrossedModuleAxiomError("action is a homomorphism", _first_failure(comp))
    if not (bd[S.mul] == R.mul[bd[:, None], bd[None, :]]).all():
        return CrossedModuleAxiomError("boundary is a homomorphism", ())
    cm1 = bd[action] != R.conj(np.arange(R.order)[:, None], bd[None, :])
    if cm1.any():
        return CrossedModuleAxiomError("pre-crossed (r, s)", _first_failure(cm1))
    cm2 = action[bd[None, :], np.arange(S.order)[:, None]] != S.conj(np.arange(S.order)[None, :],
                                                                      np.arange(S.order)[:, None])
    if cm2.any():
        # cm2[s1, s2]: ^(∂ s2) s1 versus s2 s1 s2^-1
        return CrossedModuleAxiomError("Peiffer (s1, s2)", _first_failure(cm2))
    return None


def satisfies_axioms(S: Group, R: Group, bd: np.ndarray, action: np.ndarray) -> bool:
    return _axiom_failure(S, R, np.asarray(bd), np.asarray(action)) is None


class CrossedModule:
    """``∂: S -> R`` with ``R`` acting on ``S``; immutable once built."""

    def __init__(self, source: Group, range_: Group, boundary: np.ndarray, action: np.ndarray,
                 *, check: bool = True, name: str = ""):
        bd = np.asarray(boundary, dtype=np.int64)
        act = np.asarray(action, dtype=np.int64)
        if check:
            err = _axiom_failure(source, range_, bd, act)
            if err is not None:
                raise err
        bd.setflags(write=False)
        act.setflags(write=False)
        self.source = source
        self.range = range_
        self.bd = bd
        self.action = act
        self.name = name
        self._cache: dict = {}

    @property
    def boundary(self) -> GroupHom:
        return GroupHom(self.source, self.range, self.bd)

    @property
    def size(self) -> tuple[int, int]:
        return self.source.order, self.range.order

    @property
    def key(self) -> tuple:
        return (self.source.key, self.range.key, self.bd.tobytes(), self.action.tobytes())

    def __repr__(self) -> str:
        label = self.name or "XMod"
        return f"<{label} {self.source.order}->{self.range.order}>"


def crossed_module(S: Group, R: Group, boundary, action) -> CrossedModule:
    """Check both axioms and build the crossed module.

    ``boundary`` is a :class:`GroupHom` or an index table; ``action`` is the
    ``|R| x |S|`` table of ``ʳs``.
    """
    bd = boundary.table if isinstance(boundary, GroupHom) else boundary
    return CrossedModule(S, R, bd, action)


def xmod_from_group(G: Group, mode: str = "identity") -> CrossedModule:
    """``id: G -> G`` with conjugation, or ``1 -> G``."""
    ar = np.arange(G.order)
    if mode == "identity":
        return CrossedModule(G, G, ar, G.conj(ar[:, None], ar[None, :]), name=f"id({G.name})")
    if mode == "inclusion":
        return CrossedModule(_TRIVIAL, G, np.zeros(1, dtype=np.int64),
                             np.zeros((G.order, 1), dtype=np.int64), name=f"1->{G.name}")
    raise PreconditionError(f"unknown mode {mode!r}")


def conjugation_xmod(R: Group, N: Subgroup) -> CrossedModule:
    """Inclusion ``N -> R`` of a normal subgroup, ``R`` acting by conjugation."""
    if not N.is_normal():
        raise NotNormalError("conjugation crossed module needs a normal subgroup")
    conj = R.conj(np.arange(R.order)[:, None], N.indices[None, :])
    return CrossedModule(N.group, R, N.indices, N.to_group(conj))


def xmod_from_central_extension(rho: GroupHom) -> CrossedModule:
    S, R = rho.domain, rho.codomain
    if not rho.is_surjective():
        raise PreconditionError("central extension map must be onto")
    if not rho.kernel().issubset(center(S)):
        raise PreconditionError("kernel is not central")
    lift = np.full(R.order, S.order, dtype=np.int64)
    np.minimum.at(lift, rho.table, np.arange(S.order))
    ar = np.arange(S.order)
    return CrossedModule(S, R, rho.table, S.conj(lift[:, None], ar[None, :]))


def direct_product_xmod(X1: CrossedModule, X2: CrossedModule) -> CrossedModule:
    PS = direct_product(X1.source, X2.source)
    PR = direct_product(X1.range, X2.range)
    n2, m2 = X2.source.order, X2.range.order
    bd = (X1.bd[:, None] * m2 + X2.bd[None, :]).ravel()
    act = X1.action[:, None, :, None] * n2 + X2.action[None, :, None, :]
    act = act.reshape(PR.group.order, PS.group.order)
    return CrossedModule(PS.group, PR.group, bd, act)


# ----------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    sigma: GroupHom
    rho: GroupHom

    def is_morphism(self) -> bool:
        X, Y = self.source, self.target
        s, r = self.sigma.table, self.rho.table
        if not (self.sigma.is_homomorphism() and self.rho.is_homomorphism()):
            return False
        if not (Y.bd[s] == r[X.bd]).all():
            return False
        return bool((s[X.action] == Y.action[r[:, None], s[None, :]]).all())

    def is_isomorphism(self) -> bool:
        return self.sigma.is_bijective() and self.rho.is_bijective() and self.is_morphism()


def _compatible(X: CrossedModule, Y: CrossedModule, s: np.ndarray, r: np.ndarray) -> bool:
    return bool((Y.bd[s] == r[X.bd]).all() and (s[X.action] == Y.action[r[:, None], s[None, :]]).all())


def iter_xmod_isomorphisms(X: CrossedModule, Y: CrossedModule):
    for rho in iter_isomorphisms(X.range, Y.range):
        for sigma in iter_isomorphisms(X.source, Y.source):
            if _compatible(X, Y, sigma.table, rho.table):
                yield XModMorphism(X, Y, sigma, rho)


def find_xmod_isomorphism(X: CrossedModule, Y: CrossedModule) -> XModMorphism | None:
    return next(iter_xmod_isomorphisms(X, Y), None)


# ------------------------------------------------------- sub-structures

class SubCrossedModule:
    """A pair of subgroups ``(S1 ≤ S, R1 ≤ R)``.

    With ``check`` (the default) the pair must be a sub-crossed module:
    ``∂(S1) ⊆ R1`` and ``S1`` stable under ``R1``.
    """

    def __init__(self, parent: CrossedModule, source_sub: Subgroup, range_sub: Subgroup,
                 *, check: bool = True):
        if source_sub.parent is not parent.source or range_sub.parent is not parent.range:
            raise PreconditionError("components belong to other groups")
        self.parent = parent
        self.source_sub = source_sub
        self.range_sub = range_sub
        if check:
            if not self.boundary_inside():
                raise PreconditionError("boundary leaves the range subgroup")
            if not self.source_stable():
                raise PreconditionError("source subgroup is not stable under the range subgroup")

    def boundary_inside(self) -> bool:
        return bool(self.range_sub.mask[self.parent.bd[self.source_sub.indices]].all())

    def source_stable(self) -> bool:
        act = self.parent.action[np.ix_(self.range_sub.indices, self.source_sub.indices)]
        return bool(self.source_sub.mask[act].all())

    def is_sub_crossed_module(self) -> bool:
        return self.boundary_inside() and self.source_stable()

    @property
    def size(self) -> tuple[int, int]:
        return self.source_sub.order, self.range_sub.order

    def __repr__(self) -> str:
        return f"<SubXMod {self.size[0]}->{self.size[1]} of {self.parent!r}>"

    def is_normal(self) -> bool:
        X, S1, R1 = self.parent, self.source_sub, self.range_sub
        if not self.is_sub_crossed_module():
            return False
        if not (S1.is_normal() and R1.is_normal()):
            return False
        if not S1.mask[X.action[:, S1.indices]].all():
            return False
        # R1 acts trivially on S/S1: ᵗs s^-1 ∈ S1
        disp = X.source.mul[X.action[R1.indices], X.source.inv[None, :]]
        return bool(S1.mask[disp].all())

    def as_xmod(self) -> CrossedModule:
        S1, R1, X = self.source_sub, self.range_sub, self.parent
        bd = R1.to_group(X.bd[S1.indices])
        act = S1.to_group(X.action[np.ix_(R1.indices, S1.indices)])
        return CrossedModule(S1.group, R1.group, bd, act)


def whole_sub(X: CrossedModule) -> SubCrossedModule:
    return SubCrossedModule(X, X.source.whole(), X.range.whole())


def fixed_points(X: CrossedModule) -> Subgroup:
    """``S^R``: elements of ``S`` fixed by every ``r``."""
    return Subgroup(X.source, np.flatnonzero((X.action == np.arange(X.source.order)).all(axis=0)))


def stabilizer(X: CrossedModule) -> Subgroup:
    """``St_R(S)``: elements of ``R`` acting trivially."""
    return Subgroup(X.range, np.flatnonzero((X.action == np.arange(X.source.order)).all(axis=1)))


def displacement(X: CrossedModule) -> Subgroup:
    """``D_R(S)``, generated by all ``ʳs s^-1``."""
    if "disp" not in X._cache:
        S = X.source
        vals = np.unique(S.mul[X.action, S.inv[None, :]])
        X._cache["disp"] = generated(S, vals)
    return X._cache["disp"]


def center_xmod(X: CrossedModule) -> SubCrossedModule:
    return SubCrossedModule(X, fixed_points(X), center(X.range).intersection(stabilizer(X)))


def derived_xmod(X: CrossedModule) -> SubCrossedModule:
    return SubCrossedModule(X, displacement(X), derived_subgroup(X.range))


def exterior_center_xmod(X: CrossedModule) -> SubCrossedModule:
    """``(S^R, St ∩ Z∧(R))``.

    Not always a sub-crossed module: ``∂(S^R)`` can leave ``Z∧(R)``, e.g.
    for ``C2 -> C2 x C2`` with trivial action.  Use ``is_sub_crossed_module``.
    """
    T = stabilizer(X).intersection(exterior_center(X.range))
    return SubCrossedModule(X, fixed_points(X), T, check=False)


@dataclass(frozen=True, eq=False)
class ExteriorDerived:
    """``D_R(S)`` on the source side and ``R∧R`` on the range side.

    The two are linked only through ``κ: R∧R -> R``; ``∂`` maps ``D_R(S)``
    into ``[R, R] = κ(R∧R)``.
    """
    parent: CrossedModule
    source_sub: Subgroup
    pairing: ExteriorPairing
    kappa: GroupHom

    @property
    def size(self) -> tuple[int, int]:
        return self.source_sub.order, self.pairing.wedge.order


def exterior_derived_xmod(X: CrossedModule) -> ExteriorDerived:
    P = exterior_square(X.range)
    return ExteriorDerived(X, displacement(X), P, commutator_image(P))


def quotient_xmod(X: CrossedModule, sub: SubCrossedModule) -> tuple[CrossedModule, QuotientGroup, QuotientGroup]:
    """``X / sub`` together with the two quotient groups it is built on."""
    if sub.parent is not X:
        raise PreconditionError("sub-crossed module of a different crossed module")
    if not sub.is_normal():
        raise NotNormalError("quotient by a non-normal sub-crossed module")
    QS = quotient_group(X.source, sub.source_sub)
    QR = quotient_group(X.range, sub.range_sub)
    ps, pr = QS.projection.table, QR.projection.table
    bd = pr[X.bd[QS.lift]]
    act = ps[X.action[np.ix_(QR.lift, QS.lift)]]
    # the quotient maps must not depend on representatives
    if not (pr[X.bd] == bd[ps]).all() or not (ps[X.action] == act[pr[:, None], ps[None, :]]).all():
        raise ConsistencyError("quotient crossed module depends on representatives")
    return CrossedModule(QS.carrier, QR.carrier, bd, act), QS, QR


# ------------------------------------------------------- σ and ω tables

def _central_range(X: CrossedModule, exterior: bool) -> Subgroup:
    Z = exterior_center(X.range) if exterior else center(X.range)
    return stabilizer(X).intersection(Z)


def sigma_map(X: CrossedModule, exterior: bool = True) -> tuple[QuotientGroup, QuotientGroup, np.ndarray]:
    """``(sS^R, rT) -> ʳs s^-1`` with ``T = St ∩ Z∧(R)`` (or ``St ∩ Z(R)``).

    Returns both quotients and the table, whose values are source indices.
    Raises :class:`ConsistencyError` if some representative choice disagrees.
    """
    S = X.source
    QS = quotient_group(S, fixed_points(X))
    QR = quotient_group(X.range, _central_range(X, exterior))
    disp = S.mul[X.action.T, S.inv[:, None]]                  # [s, r] -> ʳs s^-1
    table = disp[QS.lift[:, None], QR.lift[None, :]]
    if not (table[QS.projection.table[:, None], QR.projection.table[None, :]] == disp).all():
        raise ConsistencyError("σ depends on coset representatives")
    return QS, QR, table


def omega_map(X: CrossedModule, exterior: bool = True) -> tuple[QuotientGroup, np.ndarray]:
    """``(rT, r'T) -> r∧r'`` (wedge indices), or ``[r, r']`` in the classical case."""
    R = X.range
    QR = quotient_group(R, _central_range(X, exterior))
    if exterior:
        full = exterior_square(R).lam
    else:
        ar = np.arange(R.order)
        full = R.comm(ar[:, None], ar[None, :])
    p, lift = QR.projection.table, QR.lift
    table = full[lift[:, None], lift[None, :]]
    if not (table[p[:, None], p[None, :]] == full).all():
        raise ConsistencyError("ω depends on coset representatives")
    return QR, table


# ------------------------------------------------------------ enumeration

def xmods_between(S: Group, R: Group) -> list[CrossedModule]:
    """Every crossed module on ``S -> R``: boundaries outer, actions inner."""
    A = automorphism_group(S)
    tables = A.perm_array                # row a: the automorphism as an index table
    boundaries = homomorphisms(S, R)
    actions = [tables[h.table] for h in homomorphisms(R, A)]
    arS, arR = np.arange(S.order), np.arange(R.order)
    conjS = S.conj(arS[None, :], arS[:, None])             # [s1, s2] -> s2 s1 s2^-1
    out = []
    for b in boundaries:
        bd = b.table
        conjR = R.conj(arR[:, None], bd[None, :])
        for act in actions:
            if not (bd[act] == conjR).all():
                continue
            if not (act[bd[None, :], arS[:, None]] == conjS).all():
                continue
            out.append(CrossedModule(S, R, bd, act, check=False, name=f"[{S.name}->{R.name}]"))
    return out


def all_xmods(size_s: int, size_r: int) -> list[CrossedModule]:
    """All crossed modules on catalog groups of the given orders, in canonical order."""
    out = []
    for S in all_small_groups(size_s):
        for R in all_small_groups(size_r):
            out.extend(xmods_between(S, R))
    return out


def _orbit_step(bd, act, s, r):
    """Transport ``(∂, action)`` along automorphisms ``s`` of S and ``r`` of R."""
    sinv = np.empty_like(s)
    sinv[s] = np.arange(len(s))
    nbd = r[bd[sinv]]
    nact = np.empty_like(act)
    nact[r[:, None], s[None, :]] = s[act]
    return nbd, nact


def isomorphism_classes(xmods: Sequence[CrossedModule]) -> list[list[int]]:
    """Partition ``xmods`` (0-based positions) into isomorphism classes.

    Crossed modules on the same pair of group objects are grouped by walking
    orbits of ``Aut(S) x Aut(R)``; isomorphic groups realized differently are
    then merged by a direct isomorphism search.
    """
    buckets: dict[tuple, list[int]] = {}
    for i, X in enumerate(xmods):
        buckets.setdefault((X.source.key, X.range.key), []).append(i)
    classes: list[list[int]] = []
    for idx in buckets.values():
        X0 = xmods[idx[0]]
        S, R = X0.source, X0.range
        gS = automorphism_group(S).perm_array[automorphism_group(S).gen_idx]
        gR = automorphism_group(R).perm_array[automorphism_group(R).gen_idx]
        idS, idR = np.arange(S.order), np.arange(R.order)
        steps = [(g, idR) for g in gS] + [(idS, g) for g in gR]
        where: dict[bytes, list[int]] = {}
        for i in idx:
            X = xmods[i]
            where.setdefault(X.bd.tobytes() + X.action.tobytes(), []).append(i)
        done: set[int] = set()
        for i in idx:
            if i in done:
                continue
            X = xmods[i]
            start = (X.bd, X.action)
            seen = {start[0].tobytes() + start[1].tobytes()}
            frontier = [start]
            while frontier:
                new = []
                for bd, act in frontier:
                    for s, r in steps:
                        nb, na = _orbit_step(bd, act, s, r)
                        k = nb.tobytes() + na.tobytes()
                        if k not in seen:
                            seen.add(k)
                            new.append((nb, na))
                frontier = new
            members = sorted(j for k in seen for j in where.get(k, ()))
            done.update(members)
            classes.append(members)
    # merge classes living on isomorphic but distinct group objects
    merged: list[list[int]] = []
    for cls in sorted(classes):
        X = xmods[cls[0]]
        for m in merged:
            Y = xmods[m[0]]
            if (Y.source.key, Y.range.key) != (X.source.key, X.range.key) and \
                    find_xmod_isomorphism(Y, X) is not None:
                m.extend(cls)
                m.sort()
                break
        else:
            merged.append(list(cls))
    return sorted(merged)


def all_xmods_up_to_isomorphism(xmods: Sequence[CrossedModule]) -> list[CrossedModule]:
    """First member (in list order) of each isomorphism class."""
    return [xmods[c[0]] for c in isomorphism_classes(xmods)]


# --------------------------------------------------- isoclinism witnesses

@dataclass(frozen=True, eq=False)
class CentralQuotient:
    """``S/S^R`` and ``R/T`` with the induced action, ``T = St ∩ Z∧(R)`` or ``St ∩ Z(R)``.

    ``boundary[x]`` is ``∂(s)T`` for the least representative ``s`` of ``x``.
    It is only defined up to ``ambiguity = T∂(S^R)/T``, which is trivial
    (and the quotient an ordinary crossed module) exactly when
    ``∂(S^R) ⊆ T``; that always holds for ``T = St ∩ Z(R)``.
    """
    QS: QuotientGroup
    QR: QuotientGroup
    action: np.ndarray
    boundary: np.ndarray
    ambiguity: Subgroup

    @property
    def well_defined(self) -> bool:
        return self.ambiguity.order == 1


def central_quotient(X: CrossedModule, exterior: bool = True) -> CentralQuotient:
    S, R = X.source, X.range
    SR = fixed_points(X)
    T = _central_range(X, exterior)
    QS = quotient_group(S, SR)
    QR = quotient_group(R, T)
    ps, pr = QS.projection.table, QR.projection.table
    act = ps[X.action[np.ix_(QR.lift, QS.lift)]]
    if not (ps[X.action] == act[pr[:, None], ps[None, :]]).all():
        raise ConsistencyError("induced action depends on representatives")
    amb = generated(QR.carrier, np.unique(pr[X.bd[SR.indices]]))
    return CentralQuotient(QS, QR, act, pr[X.bd[QS.lift]], amb)


def _quotient_map_ok(a: CentralQuotient, b: CentralQuotient, t1: np.ndarray, t0: np.ndarray) -> bool:
    """Whether ``(μ1, μ0)`` respects the induced action, and the boundary up to ambiguity."""
    if not (t1[a.action] == b.action[t0[:, None], t1[None, :]]).all():
        return False
    Q = b.QR.carrier
    K = generated(Q, np.concatenate([t0[a.ambiguity.indices], b.ambiguity.indices]))
    diff = Q.mul[t0[a.boundary], Q.inv[b.boundary[t1]]]
    return bool(K.mask[diff].all())


@dataclass(frozen=True, eq=False)
class XModIsoclinismWitness:
    """``mu1``/``mu0`` between the (exterior) central quotients, ``zeta1``/``zeta0`` on derived parts.

    ``zeta1`` acts on ``D_R(S)`` (as a standalone group); ``zeta0`` acts on
    ``R∧R`` for exterior isoclinism and on ``[R, R]`` for isoclinism.
    """
    exterior: bool
    source: CrossedModule
    target: CrossedModule
    mu1: GroupHom
    mu0: GroupHom
    zeta1: GroupHom
    zeta0: GroupHom

    def verify(self) -> bool:
        """Re-check every condition from scratch."""
        a, b = _data(self.source, self.exterior), _data(self.target, self.exterior)
        maps = (self.mu1, self.mu0, self.zeta1, self.zeta0)
        if not all(m.is_bijective() and m.is_homomorphism() for m in maps):
            return False
        t1, t0 = self.mu1.table, self.mu0.table
        if not _quotient_map_ok(a.quotient, b.quotient, t1, t0):
            return False
        if not (self.zeta1.table[a.sigma] == b.sigma[t1[:, None], t0[None, :]]).all():
            return False
        return bool((self.zeta0.table[a.omega] == b.omega[t0[:, None], t0[None, :]]).all())


@dataclass(frozen=True, eq=False)
class _Data:
    quotient: CentralQuotient
    D: Subgroup
    sigma: np.ndarray          # quotient pair -> D.group index
    omega: np.ndarray          # quotient pair -> wedge index or R' group index
    derived0: Group            # R∧R or [R, R]
    pairing: ExteriorPairing | None = field(default=None, repr=False)
    kappa: GroupHom | None = field(default=None, repr=False)

    def invariants(self) -> tuple:
        q = self.quotient
        return (q.QS.order, q.QR.order, self.D.order, self.derived0.order,
                tuple(abelian_invariants(q.QS.carrier)), tuple(abelian_invariants(q.QR.carrier)),
                tuple(abelian_invariants(self.D.group)), tuple(abelian_invariants(self.derived0)),
                self.kappa.image().order if self.kappa is not None else 0)


def _data(X: CrossedModule, exterior: bool) -> _Data:
    key = "ext" if exterior else "iso"
    if key in X._cache:
        return X._cache[key]
    q = central_quotient(X, exterior)
    D = displacement(X)
    _, _, sig = sigma_map(X, exterior)
    _, om = omega_map(X, exterior)
    if exterior:
        P = exterior_square(X.range)
        d = _Data(q, D, D.to_group(sig), om, P.wedge, P, commutator_image(P))
    else:
        Rd = derived_subgroup(X.range)
        d = _Data(q, D, D.to_group(sig), Rd.to_group(om), Rd.group)
    X._cache[key] = d
    return d


def _range_map_through_kappa(a: _Data, b: _Data, zeta0: GroupHom) -> np.ndarray | None:
    """``[R1, R1] -> R2`` induced by ``ζ0`` through ``κ``; ``None`` unless ``ζ0(ker κ1) = ker κ2``."""
    k1, k2 = a.kappa.table, b.kappa.table
    ker1 = np.flatnonzero(k1 == 0)
    ker2 = np.flatnonzero(k2 == 0)
    if not np.array_equal(np.sort(zeta0.table[ker1]), ker2):
        return None
    out = np.full(a.kappa.codomain.order, -1, dtype=np.int64)
    out[k1] = k2[zeta0.table]
    return out


def _search_witness(X1: CrossedModule, X2: CrossedModule, exterior: bool) -> XModIsoclinismWitness | None:
    a, b = _data(X1, exterior), _data(X2, exterior)
    if a.invariants() != b.invariants():
        return None
    qa, qb = a.quotient, b.quotient
    D1, D2 = a.D, b.D
    pr1 = qa.QR.projection.table
    dd1 = D1.indices
    for m0 in iter_isomorphisms(qa.QR.carrier, qb.QR.carrier):
        t0 = m0.table
        if exterior:
            t = t0[pr1]
            images = np.empty(X1.range.order ** 2, dtype=np.int64)
            images[a.pairing.symbols] = b.omega[t[:, None], t[None, :]]
            zeta0 = _transport_wedge(a.pairing, b.pairing, images)
            if zeta0 is None:
                continue
            along = _range_map_through_kappa(a, b, zeta0)
            if along is None:
                continue
        else:
            zeta0 = _zeta_from_pairs(a.omega, b.omega[t0[:, None], t0[None, :]], a.derived0, b.derived0)
            if zeta0 is None or not zeta0.is_bijective():
                continue
            Rd1, Rd2 = derived_subgroup(X1.range), derived_subgroup(X2.range)
            along = np.full(X1.range.order, -1, dtype=np.int64)
            along[Rd1.indices] = Rd2.indices[zeta0.table]
        for m1 in iter_isomorphisms(qa.QS.carrier, qb.QS.carrier):
            t1 = m1.table
            if not _quotient_map_ok(qa, qb, t1, t0):
                continue
            zeta1 = _zeta_from_pairs(a.sigma, b.sigma[t1[:, None], t0[None, :]], D1.group, D2.group)
            if zeta1 is None or not zeta1.is_bijective():
                continue
            z1 = D2.indices[zeta1.table]           # D1 position -> S2 index
            if not (X2.bd[z1] == along[X1.bd[dd1]]).all():
                continue
            if not exterior:
                # (ζ1, ζ0) must respect the action of [R, R] on D
                c = derived_subgroup(X1.range).indices
                lhs = z1[D1.to_group(X1.action[np.ix_(c, dd1)])]
                rhs = X2.action[along[c][:, None], z1[None, :]]
                if not (lhs == rhs).all():
                    continue
            return XModIsoclinismWitness(exterior, X1, X2, m1, m0, zeta1, zeta0)
    return None


def are_isoclinic_xmods(X1: CrossedModule, X2: CrossedModule) -> XModIsoclinismWitness | None:
    return _search_witness(X1, X2, exterior=False)


def are_exterior_isoclinic_xmods(X1: CrossedModule, X2: CrossedModule) -> XModIsoclinismWitness | None:
    return _search_witness(X1, X2, exterior=True)


def _family(X: CrossedModule, xmods: Sequence[CrossedModule], exterior: bool) -> list[int]:
    return [i + 1 for i, Y in enumerate(xmods) if _search_witness(X, Y, exterior) is not None]


def isoclinic_xmod_family(X: CrossedModule, xmods: Sequence[CrossedModule]) -> list[int]:
    """1-based positions in ``xmods`` isoclinic to ``X``."""
    return _family(X, xmods, exterior=False)


def exterior_isoclinic_xmod_family(X: CrossedModule, xmods: Sequence[CrossedModule]) -> list[int]:
    """1-based positions in ``xmods`` exterior isoclinic to ``X``."""
    return _family(X, xmods, exterior=True)


def is_exterior_stem_xmod(X: CrossedModule) -> bool:
    """``S^R ⊆ D_R(S)`` and ``St ∩ Z∧(R) ⊆ κ(R∧R) = [R, R]``."""
    Z = exterior_center_xmod(X)
    E = exterior_derived_xmod(X)
    return Z.source_sub.issubset(E.source_sub) and Z.range_sub.issubset(E.kappa.image())


def _components(obj) -> tuple[CrossedModule, Subgroup, Subgroup]:
    if isinstance(obj, CrossedModule):
        return obj, obj.source.whole(), obj.range.whole()
    if isinstance(obj, SubCrossedModule):
        return obj.parent, obj.source_sub, obj.range_sub
    if isinstance(obj, ExteriorDerived):
        return obj.parent, obj.source_sub, obj.kappa.image()
    raise TypeError(f"not a crossed module: {obj!r}")


def is_sub_xmod(A, B) -> bool:
    """Componentwise containment of the smaller of ``A``, ``B`` in the larger.

    An exterior derived object contributes ``κ(R∧R)`` on its range side.
    """
    XA, SA, RA = _components(A)
    XB, SB, RB = _components(B)
    if XA is not XB:
        raise PreconditionError("objects live in different crossed modules")
    if (SA.order, RA.order) > (SB.order, RB.order):
        SA, RA, SB, RB = SB, RB, SA, RA
    return SA.issubset(SB) and RA.issubset(RB)


# ----------------------------------------------------------- records

def _group_record(G: Group) -> dict:
    if G.catalog_id is not None and small_group(*G.catalog_id) is G:
        return {"order": G.catalog_id[0], "id": G.catalog_id[1]}
    return {"degree": G.degree, "generators": [g.cycle_string() for g in G.generators]}


def _group_from_record(rec: dict) -> Group:
    if "id" in rec:
        return small_group(int(rec["order"]), int(rec["id"]))
    deg = int(rec["degree"])
    return Group([parse_cycles(c, deg) for c in rec["generators"]], degree=deg)


def xmod_record(X: CrossedModule) -> dict:
    """JSON-ready record: groups by catalog id or generators; maps by generator images."""
    S, R = X.source, X.range
    gs, gr = S.gen_idx, R.gen_idx
    return {
        "source": _group_record(S),
        "range": _group_record(R),
        "boundary": [R.elements[X.bd[g]].cycle_string() for g in gs],
        "action": [[S.elements[X.action[r, g]].cycle_string() for g in gs] for r in gr],
    }


def _element(G: Group, text: str) -> int:
    perm = parse_cycles(text, G.degree)
    if perm not in G:
        raise PreconditionError(f"{text} is not an element of {G!r}")
    return G.index(perm)


def xmod_from_record(rec: dict) -> CrossedModule:
    S, R = _group_from_record(rec["source"]), _group_from_record(rec["range"])
    gs, gr = S.gen_idx, R.gen_idx
    if len(rec["boundary"]) != len(gs) or len(rec["action"]) != len(gr) or \
            any(len(row) != len(gs) for row in rec["action"]):
        raise PreconditionError("record does not match the generator counts")
    bd_imgs = [_element(R, c) for c in rec["boundary"]]
    bd = generator_image_extension(gs, bd_imgs, S, R)
    if bd is None:
        raise PreconditionError("boundary images do not define a homomorphism")
    autos = []
    for row in rec["action"]:
        imgs = [_element(S, c) for c in row]
        h = generator_image_extension(gs, imgs, S, S)
        if h is None:
            raise PreconditionError("action images do not define an endomorphism")
        autos.append(h.table)
    # close r -> ʳ(-) over R from the generator automorphisms
    act = np.full((R.order, S.order), -1, dtype=np.int64)
    act[0] = np.arange(S.order)
    queue = [0]
    for w in queue:
        for g, a in zip(gr, autos):
            x = R.mul[w, g]
            img = act[w][a]
            if act[x, 0] < 0:
                act[x] = img
                queue.append(int(x))
            elif not (act[x] == img).all():
                raise PreconditionError("action images do not define a homomorphism into Aut(S)")
    return CrossedModule(S, R, bd.table, act)
