"""Permutations on ``{0, ..., degree-1}`` and cycle notation.

Products compose right to left: ``(p * q)(i) == p(q(i))``.  Cycle strings use
1-based points, as in ``(1,2,3)(4,5)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CatalogFormatError

_CYCLE_RE = re.compile(r"\(\s*\d+(?:\s*,\s*\d+)*\s*\)")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles, degree: int) -> Permutation:
        """Build from 0-based cycles, e.g. ``[(0, 1, 2), (3, 4)]``."""
        img = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for pt in cyc:
                if not 0 <= pt < degree or pt in seen:
                    raise ValueError(f"bad cycle {cyc} for degree {degree}")
                seen.add(pt)
            for k, pt in enumerate(cyc):
                img[pt] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        img = self.images
        return Permutation(tuple(img[i] for i in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point (0-based)."""
        out = []
        seen = [False] * self.degree
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.cycle_string()


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based cycle notation such as ``(1,2,3)(4,5)``; ``()`` is the identity."""
    s = text.strip()
    if s == "()":
        return Permutation.identity(degree)
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(s):
        if s[pos:m.start()].strip():
            raise CatalogFormatError(f"malformed cycle string {text!r}")
        pts = [int(t) - 1 for t in m.group(0)[1:-1].split(",")]
        cycles.append(tuple(pts))
        pos = m.end()
    if not cycles or s[pos:].strip():
        raise CatalogFormatError(f"malformed cycle string {text!r}")
    try:
        return Permutation.from_cycles(cycles, degree)
    except ValueError as exc:
        raise CatalogFormatError(f"malformed cycle string {text!r}: {exc}") from None
