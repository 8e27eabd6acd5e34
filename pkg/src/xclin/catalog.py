"""The bundled small-groups catalog and ``(order, id)`` identification.

The catalog file holds one record per line::

    order;id;name;degree;gen1|gen2|...

with generators in 1-based cycle notation.  ``XCLIN_CATALOG`` overrides the
bundled file.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import CatalogError, CatalogFormatError
from .groups import Group, are_isoclinic_groups, find_isomorphism, invariant_signature
from .perm import parse_cycles


@dataclass(frozen=True)
class CatalogEntry:
    order: int
    id: int
    name: str
    degree: int
    generator_cycles: tuple[str, ...]

    def instantiate(self) -> Group:
        gens = [parse_cycles(c, self.degree) for c in self.generator_cycles]
        G = Group(gens, name=self.name, catalog_id=(self.order, self.id), degree=self.degree)
        if G.order != self.order:
            raise CatalogFormatError(
                f"record ({self.order},{self.id}) generates a group of order {G.order}")
        return G


def parse_catalog(text: str) -> dict[tuple[int, int], CatalogEntry]:
    entries: dict[tuple[int, int], CatalogEntry] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(";")
        if len(fields) != 5:
            raise CatalogFormatError(f"line {lineno}: expected 5 fields, got {len(fields)}")
        try:
            order, gid, degree = int(fields[0]), int(fields[1]), int(fields[3])
        except ValueError:
            raise CatalogFormatError(f"line {lineno}: non-integer order/id/degree") from None
        if order < 1 or gid < 1 or degree < 1:
            raise CatalogFormatError(f"line {lineno}: order, id and degree must be positive")
        gens = tuple(g.strip() for g in fields[4].split("|")) if fields[4].strip() else ()
        for g in gens:
            parse_cycles(g, degree)  # validates the cycle syntax and points
        if (order, gid) in entries:
            raise CatalogFormatError(f"line {lineno}: duplicate entry ({order},{gid})")
        entries[(order, gid)] = CatalogEntry(order, gid, fields[2].strip(), degree, gens)
    return entries


def catalog_path() -> Path | None:
    override = os.environ.get("XCLIN_CATALOG")
    return Path(override) if override else None


@lru_cache(maxsize=None)
def _load(path: str | None) -> dict[tuple[int, int], CatalogEntry]:
    if path is None:
        text = resources.files("xclin").joinpath("data/catalog.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_catalog(text)


def entries() -> dict[tuple[int, int], CatalogEntry]:
    p = catalog_path()
    return _load(str(p) if p else None)


def catalog_orders() -> list[int]:
    return sorted({o for o, _ in entries()})


def ids_of_order(order: int) -> list[int]:
    ids = sorted(i for o, i in entries() if o == order)
    if not ids:
        raise CatalogError(f"order {order} is not in the catalog")
    return ids


_GROUPS: dict[tuple, Group] = {}


def small_group(order: int, gid: int) -> Group:
    """The catalog group ``(order, gid)``; the same object on every call."""
    p = catalog_path()
    key = (str(p) if p else None, order, gid)
    if key not in _GROUPS:
        try:
            entry = entries()[(order, gid)]
        except KeyError:
            raise CatalogError(f"no catalog group ({order},{gid})") from None
        _GROUPS[key] = entry.instantiate()
    return _GROUPS[key]


def all_small_groups(order: int) -> list[Group]:
    return [small_group(order, i) for i in ids_of_order(order)]


def id_group(G: Group) -> tuple[int, int]:
    """Catalog ``(order, id)`` of the group isomorphic to ``G``."""
    if G.catalog_id is not None and small_group(*G.catalog_id) is G:
        return G.catalog_id
    sig = invariant_signature(G)
    for H in all_small_groups(G.order):
        if invariant_signature(H) == sig and find_isomorphism(G, H) is not None:
            return H.catalog_id
    raise CatalogError(f"no catalog group of order {G.order} is isomorphic to {G!r}")


def isoclinic_family(G: Group, order: int) -> list[int]:
    """Ids ``i`` with ``small_group(order, i)`` isoclinic to ``G``."""
    return [i for i in ids_of_order(order)
            if are_isoclinic_groups(G, small_group(order, i)) is not None]
