"""Finitely presented groups and Todd-Coxeter (HLT) coset enumeration.

Words are tuples of nonzero integers: ``k`` stands for generator ``k-1`` and
``-k`` for its inverse.  Enumeration is always over the trivial subgroup, so a
finished table is the regular representation of the presented group.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import EnumerationOverflow, IncompleteTableError, PreconditionError
from .groups import Group
from .perm import Permutation

DEFAULT_MAX_COSETS = 1_000_000
_FIRST_CAPACITY = 4096


def free_reduce(word: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple[tuple[int, ...], ...]

    def __init__(self, generator_count: int, relators: Iterable[Sequence[int]] = ()):
        if generator_count < 0:
            raise PreconditionError("negative generator count")
        reduced = []
        for rel in relators:
            for letter in rel:
                if letter == 0 or abs(letter) > generator_count:
                    raise PreconditionError(f"letter {letter} out of range in relator {tuple(rel)}")
            reduced.append(free_reduce(rel))
        object.__setattr__(self, "generator_count", generator_count)
        object.__setattr__(self, "relators", tuple(reduced))

    def encoded(self) -> tuple[np.ndarray, np.ndarray]:
        """Relators as coset-table columns, concatenated, plus start offsets."""
        rels = [r for r in self.relators if r]
        data = np.array([2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for r in rels for x in r],
                        dtype=np.int64)
        start = np.zeros(len(rels) + 1, dtype=np.int64)
        np.cumsum([len(r) for r in rels], out=start[1:])
        return data, start


@dataclass(frozen=True, eq=False)
class CosetTable:
    """A complete coset table, live cosets renumbered ``0..coset_count-1``.

    ``rows[c, 2*g]`` is ``c`` times generator ``g``; ``rows[c, 2*g+1]`` is
    ``c`` times its inverse.  Coset 0 is the subgroup itself.
    """
    presentation: Presentation
    rows: np.ndarray
    defined: int = field(default=0)

    @property
    def coset_count(self) -> int:
        return self.rows.shape[0]

    def is_complete(self) -> bool:
        return bool((self.rows >= 0).all())

    def to_tsv(self) -> str:
        buf = io.StringIO()
        cols = []
        for g in range(self.presentation.generator_count):
            cols += [f"g{g + 1}", f"g{g + 1}^-1"]
        buf.write("\t".join(["coset"] + cols) + "\n")
        for c, row in enumerate(self.rows):
            buf.write("\t".join([str(c)] + [str(int(v)) for v in row]) + "\n")
        return buf.getvalue()


def _compact(table: np.ndarray, p: np.ndarray, defined: int) -> np.ndarray:
    p = p[:defined].astype(np.int64)
    # resolve every coset to its representative
    while True:
        nxt = p[p]
        if np.array_equal(nxt, p):
            break
        p = nxt
    live = np.flatnonzero(p == np.arange(defined))
    renum = np.full(defined, -1, dtype=np.int64)
    renum[live] = np.arange(len(live))
    rows = table[live].astype(np.int64)
    if (rows < 0).any():
        raise IncompleteTableError("enumeration finished with undefined entries")
    return renum[p[rows]]


def coset_enumeration(P: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of the trivial subgroup of ``P``.

    Raises :class:`EnumerationOverflow` once more than ``max_cosets`` cosets
    would have to be defined.  Working storage starts small and grows by a
    factor of four; the scan order is fixed, so the result does not depend on
    where growth happens.
    """
    if max_cosets < 1:
        raise PreconditionError("max_cosets must be at least 1")
    ncols = 2 * P.generator_count
    data, start = P.encoded()
    if ncols == 0:
        return CosetTable(P, np.zeros((1, 0), dtype=np.int64), 1)
    capacity = min(max_cosets, _FIRST_CAPACITY)
    while True:
        table, p, defined = _kernels.hlt_enumerate(ncols, data, start, capacity)
        if defined != _kernels.OVERFLOW:
            break
        if capacity >= max_cosets:
            raise EnumerationOverflow(max_cosets)
        capacity = min(max_cosets, capacity * 4)
    rows = _compact(table, p, defined)
    if not _kernels.relators_close(rows, data, start):
        raise IncompleteTableError("relators do not close on the finished table")
    return CosetTable(P, rows, int(defined))


def permutation_realization(T: CosetTable) -> tuple[Group, list[Permutation]]:
    """The presented group acting on the cosets, with each generator's permutation.

    Generator ``g`` acts as ``c -> c * g^-1`` (the inverse column).  The right
    action ``c -> c * g`` composes the wrong way round under right-to-left
    products; the inverse column turns it into a homomorphism.
    """
    if not T.is_complete():
        raise IncompleteTableError("coset table has undefined entries")
    n = T.coset_count
    cols = np.ascontiguousarray(T.rows[:, 1::2].T)
    perms = [Permutation(tuple(int(v) for v in c)) for c in cols]
    elements = _regular_elements(cols, n)
    G = Group(sorted(set(perms)), degree=n, elements=[Permutation(tuple(e.tolist())) for e in elements])
    return G, perms


def _regular_elements(gens: np.ndarray, n: int) -> np.ndarray:
    """Elements of the group generated by ``gens``, which must act regularly on ``n`` points.

    Row ``k`` of the result is the unique element sending point 0 to ``k``.
    A generator joins the walk only when it lies outside the group found so
    far, which keeps the walk and its closure check small.
    """
    basis: list[np.ndarray] = []
    E, reached = _walk(basis, n)
    for g in np.unique(gens, axis=0):
        if np.array_equal(E[g[0]], g):
            continue
        if reached == n:
            raise IncompleteTableError("coset action is not regular")
        basis.append(g)
        E, reached = _walk(basis, n)
    if reached != n:
        raise IncompleteTableError(f"generators reach {reached} of {n} cosets")
    return E


def _walk(basis: list[np.ndarray], n: int) -> tuple[np.ndarray, int]:
    E = np.full((n, n), -1, dtype=np.int64)
    E[0] = np.arange(n)
    queue = [0]
    for key in queue:
        x = E[key]
        for g in basis:
            k = int(x[g[0]])
            if E[k, 0] < 0:
                E[k] = x[g]
                queue.append(k)
    live = np.asarray(queue)
    for g in basis:
        prod = E[live][:, g]
        if not np.array_equal(prod, E[prod[:, 0]]):
            raise IncompleteTableError("coset action is not regular")
    return E, len(queue)


def cayley_presentation(G: Group) -> Presentation:
    """Presentation on ``G.generators`` read off from the Cayley graph.

    Each element ``x`` gets a breadth-first word ``w(x)``; the relators are
    ``w(x) g w(xg)^-1`` for every element ``x`` and generator ``g``.
    """
    gens = G.gen_idx
    words: dict[int, tuple[int, ...]] = {0: ()}
    queue = [0]
    for x in queue:
        for k, g in enumerate(gens):
            y = int(G.mul[x, g])
            if y not in words:
                words[y] = words[x] + (k + 1,)
                queue.append(y)
    rels = []
    for x in range(G.order):
        for k, g in enumerate(gens):
            y = int(G.mul[x, g])
            rels.append(words[x] + (k + 1,) + invert_word(words[y]))
    return Presentation(len(gens), [r for r in rels if free_reduce(r)])
