"""Family partitions and their table / TSV / JSON renderings."""
from __future__ import annotations

import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .catalog import ids_of_order, small_group
from .exterior import are_exterior_isoclinic_groups, exterior_degree
from .groups import are_isoclinic_groups, commutative_degree
from .xmod import (all_xmods, all_xmods_up_to_isomorphism, are_exterior_isoclinic_xmods,
                   are_isoclinic_xmods)

RELATIONS = ("isoclinism", "exterior")

FAMILY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["scope", "relation", "families"],
    "additionalProperties": False,
    "properties": {
        "scope": {
            "oneOf": [
                {"type": "object", "required": ["order"], "additionalProperties": False,
                 "properties": {"order": {"type": "integer", "minimum": 1}}},
                {"type": "object", "required": ["size"], "additionalProperties": False,
                 "properties": {"size": {"type": "array", "items": {"type": "integer", "minimum": 1},
                                         "minItems": 2, "maxItems": 2}}},
            ]
        },
        "relation": {"enum": list(RELATIONS)},
        "families": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["representative", "members"],
                "additionalProperties": False,
                "properties": {
                    "representative": {
                        "oneOf": [
                            {"type": "object", "required": ["order", "id"], "additionalProperties": False,
                             "properties": {"order": {"type": "integer"}, "id": {"type": "integer"}}},
                            {"type": "object", "required": ["position"], "additionalProperties": False,
                             "properties": {"position": {"type": "integer", "minimum": 1}}},
                        ]
                    },
                    "members": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "degree": {"type": "string", "pattern": r"^[0-9]+/[0-9]+$"},
                },
            },
        },
    },
}


def fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Family:
    representative: dict
    members: tuple[int, ...]
    degree: Fraction | None = None


@dataclass(frozen=True)
class FamilyReport:
    relation: str
    scope: dict
    families: tuple[Family, ...] = field(default=())

    def to_dict(self) -> dict:
        fams = []
        for f in self.families:
            d = {"representative": dict(f.representative), "members": list(f.members)}
            if f.degree is not None:
                d["degree"] = fraction_text(f.degree)
            fams.append(d)
        return {"scope": dict(self.scope), "relation": self.relation, "families": fams}

    @classmethod
    def from_dict(cls, data: dict) -> FamilyReport:
        fams = tuple(Family(dict(f["representative"]), tuple(f["members"]),
                            Fraction(f["degree"]) if "degree" in f else None)
                     for f in data["families"])
        return cls(data["relation"], dict(data["scope"]), fams)

    def rows(self) -> list[tuple[str, str, str]]:
        out = []
        for f in self.families:
            rep = f.representative
            label = f"({rep['order']},{rep['id']})" if "id" in rep else f"#{rep['position']}"
            deg = fraction_text(f.degree) if f.degree is not None else "-"
            out.append((label, ",".join(map(str, f.members)), deg))
        return out

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        header = ("representative", "members", "degree")
        rows = self.rows()
        if fmt == "tsv":
            return "".join("\t".join(r) + "\n" for r in [header, *rows])
        if fmt == "table":
            widths = [max(len(r[k]) for r in [header, *rows]) for k in range(3)]
            buf = io.StringIO()
            scope = self.scope.get("order") or "x".join(map(str, self.scope["size"]))
            buf.write(f"{self.relation} families of {scope}: {len(rows)}\n")
            for r in [header, *rows]:
                buf.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")
            return buf.getvalue()
        raise ValueError(f"unknown format {fmt!r}")


# ------------------------------------------------------------ partitions

def partition(n: int, related: Callable[[int, int], bool], jobs: int = 1,
              pool_call: Callable | None = None) -> list[list[int]]:
    """Split ``0..n-1`` into classes, each headed by its smallest member.

    The checks against one representative may run in a process pool
    (``pool_call(rep, others)`` must return the matching subset); the result
    does not depend on ``jobs``.
    """
    left = list(range(n))
    classes = []
    with ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else _NoPool() as ex:
        while left:
            rep, rest = left[0], left[1:]
            if jobs > 1 and pool_call is not None and rest:
                chunks = [rest[k::jobs] for k in range(jobs)]
                hits = set()
                for part in ex.map(pool_call, [rep] * len(chunks), chunks):
                    hits.update(part)
            else:
                hits = {j for j in rest if related(rep, j)}
            cls = [rep] + [j for j in rest if j in hits]
            classes.append(cls)
            left = [j for j in rest if j not in hits]
    return classes


class _NoPool:
    def __enter__(self):
        return None

    def __exit__(self, *exc):
        return False


def _group_related(relation: str, order: int, a: int, b: int) -> bool:
    G, H = small_group(order, a), small_group(order, b)
    if relation == "isoclinism":
        return are_isoclinic_groups(G, H) is not None
    return are_exterior_isoclinic_groups(G, H) is not None


def _group_worker(args_rep, chunk):
    relation, order, ids, rep = args_rep
    return [j for j in chunk if _group_related(relation, order, ids[rep], ids[j])]


def group_families(order: int, relation: str, jobs: int = 1) -> FamilyReport:
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    ids = ids_of_order(order)
    related = lambda i, j: _group_related(relation, order, ids[i], ids[j])  # noqa: E731
    pool_call = _BoundWorker(_group_worker, (relation, order, tuple(ids)))
    classes = partition(len(ids), related, jobs, pool_call)
    degree = commutative_degree if relation == "isoclinism" else exterior_degree
    fams = tuple(Family({"order": order, "id": ids[c[0]]}, tuple(ids[i] for i in c),
                        degree(small_group(order, ids[c[0]])))
                 for c in classes)
    return FamilyReport(relation, {"order": order}, fams)


@lru_cache(maxsize=None)
def xmod_classes(size_s: int, size_r: int):
    return tuple(all_xmods_up_to_isomorphism(all_xmods(size_s, size_r)))


def _xmod_related(relation: str, size: tuple[int, int], a: int, b: int) -> bool:
    xs = xmod_classes(*size)
    test = are_isoclinic_xmods if relation == "isoclinism" else are_exterior_isoclinic_xmods
    return test(xs[a], xs[b]) is not None


def _xmod_worker(args_rep, chunk):
    relation, size, rep = args_rep
    return [j for j in chunk if _xmod_related(relation, size, rep, j)]


class _BoundWorker:
    """Picklable ``(rep, chunk) -> matches`` with fixed leading arguments."""

    def __init__(self, fn, head: tuple):
        self.fn = fn
        self.head = head

    def __call__(self, rep, chunk):
        return self.fn((*self.head, rep), chunk)


def xmod_families(size_s: int, size_r: int, relation: str, jobs: int = 1) -> FamilyReport:
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    size = (size_s, size_r)
    n = len(xmod_classes(*size))
    related = lambda i, j: _xmod_related(relation, size, i, j)  # noqa: E731
    classes = partition(n, related, jobs, _BoundWorker(_xmod_worker, (relation, size)))
    fams = tuple(Family({"position": c[0] + 1}, tuple(i + 1 for i in c)) for c in classes)
    return FamilyReport(relation, {"size": [size_s, size_r]}, fams)


def family_sizes(report: FamilyReport) -> list[int]:
    return sorted(len(f.members) for f in report.families)
