"""Regenerate src/xclin/data/catalog.txt.

Each group is built from an explicit construction (small permutation
representation where one is obvious, otherwise the left regular
representation of a concrete multiplication rule).  The ids follow the
standard small-groups numbering.  Run from the repository root:

    python tools/build_catalog.py
"""
from __future__ import annotations

from collections import Counter
from pathlib import Path

from xclin.perm import Permutation

OUT = Path(__file__).resolve().parents[1] / "src" / "xclin" / "data" / "catalog.txt"


def cycles(degree, *cycs):
    """Permutation from 1-based cycles."""
    return Permutation.from_cycles([tuple(p - 1 for p in c) for c in cycs], degree)


def cyclic(n):
    return n, [cycles(n, tuple(range(1, n + 1)))] if n > 1 else []


def dihedral(n2):
    n = n2 // 2
    refl = [(i, n + 2 - i) for i in range(2, n + 1) if i < n + 2 - i]
    return n, [cycles(n, tuple(range(1, n + 1))), cycles(n, *refl)]


def disjoint(*parts):
    """Direct product of (degree, gens) pairs on disjoint point sets."""
    total = sum(d for d, _ in parts)
    gens, off = [], 0
    for d, gs in parts:
        for g in gs:
            img = list(range(total))
            for i, j in enumerate(g.images):
                img[off + i] = off + j
            gens.append(Permutation(tuple(img)))
        off += d
    return total, gens


def regular(elements, mul, gens):
    """Left regular representation of a concrete group."""
    idx = {e: i for i, e in enumerate(elements)}
    return len(elements), [Permutation(tuple(idx[mul(g, x)] for x in elements)) for g in gens]


def semidirect(n, m, r):
    """C_n x| C_m with the generator of C_m acting as x -> r*x."""
    assert pow(r, m, n) == 1 % n
    els = [(i, j) for i in range(n) for j in range(m)]
    mul = lambda u, v: ((u[0] + pow(r, u[1], n) * v[0]) % n, (u[1] + v[1]) % m)  # noqa: E731
    return regular(els, mul, [(1, 0), (0, 1)])


def dicyclic(n):
    """<a, x | a^2n, x^2 = a^n, x a x^-1 = a^-1>, order 4n."""
    els = [(i, j) for i in range(2 * n) for j in range(2)]

    def mul(u, v):
        (i, j), (k, l) = u, v
        if j == 0:
            return ((i + k) % (2 * n), l)
        if l == 0:
            return ((i - k) % (2 * n), 1)
        return ((i - k + n) % (2 * n), 0)

    return regular(els, mul, [(1, 0), (0, 1)])


def g16_3():
    # (C4 x C2) x| C2, the C2 acting by a -> ab, b -> b
    els = [(i, j, l) for i in range(4) for j in range(2) for l in range(2)]

    def mul(u, v):
        i, j, l = u
        k, m, l2 = v
        if l:
            m = (m + k) % 2
        return ((i + k) % 4, (j + m) % 2, (l + l2) % 2)

    return regular(els, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])


def pauli():
    # 2x2 matrices over Z[i]; entries as (real, imag) pairs
    def mm(A, B):
        out = []
        for r in range(2):
            for c in range(2):
                re = im = 0
                for k in range(2):
                    a, b = A[2 * r + k], B[2 * k + c]
                    re += a[0] * b[0] - a[1] * b[1]
                    im += a[0] * b[1] + a[1] * b[0]
                out.append((re, im))
        return tuple(out)

    X = ((0, 0), (1, 0), (1, 0), (0, 0))
    Z = ((1, 0), (0, 0), (0, 0), (-1, 0))
    iI = ((0, 1), (0, 0), (0, 0), (0, 1))
    els = {X}
    frontier = [X]
    while frontier:
        new = []
        for e in frontier:
            for g in (X, Z, iI):
                f = mm(e, g)
                if f not in els:
                    els.add(f)
                    new.append(f)
        frontier = new
    return regular(sorted(els), mm, [X, Z, iI])


C = cyclic
Q8 = dicyclic(2)

GROUPS = [
    (1, 1, "1", (1, [])),
    (2, 1, "C2", C(2)),
    (3, 1, "C3", C(3)),
    (4, 1, "C4", C(4)),
    (4, 2, "C2 x C2", disjoint(C(2), C(2))),
    (5, 1, "C5", C(5)),
    (6, 1, "S3", (3, [cycles(3, (1, 2, 3)), cycles(3, (1, 2))])),
    (6, 2, "C6", C(6)),
    (7, 1, "C7", C(7)),
    (8, 1, "C8", C(8)),
    (8, 2, "C4 x C2", disjoint(C(4), C(2))),
    (8, 3, "D8", dihedral(8)),
    (8, 4, "Q8", Q8),
    (8, 5, "C2 x C2 x C2", disjoint(C(2), C(2), C(2))),
    (9, 1, "C9", C(9)),
    (9, 2, "C3 x C3", disjoint(C(3), C(3))),
    (10, 1, "D10", dihedral(10)),
    (10, 2, "C10", C(10)),
    (11, 1, "C11", C(11)),
    (12, 1, "C3 : C4", (7, [cycles(7, (1, 2, 3)), cycles(7, (2, 3), (4, 5, 6, 7))])),
    (12, 2, "C12", C(12)),
    (12, 3, "A4", (4, [cycles(4, (1, 2, 3)), cycles(4, (1, 2), (3, 4))])),
    (12, 4, "D12", dihedral(12)),
    (12, 5, "C6 x C2", disjoint(C(3), C(2), C(2))),
    (13, 1, "C13", C(13)),
    (14, 1, "D14", dihedral(14)),
    (14, 2, "C14", C(14)),
    (15, 1, "C15", C(15)),
    (16, 1, "C16", C(16)),
    (16, 2, "C4 x C4", disjoint(C(4), C(4))),
    (16, 3, "(C4 x C2) : C2", g16_3()),
    (16, 4, "C4 : C4", semidirect(4, 4, 3)),
    (16, 5, "C8 x C2", disjoint(C(8), C(2))),
    (16, 6, "C8 : C2", semidirect(8, 2, 5)),
    (16, 7, "D16", dihedral(16)),
    (16, 8, "QD16", semidirect(8, 2, 3)),
    (16, 9, "Q16", dicyclic(4)),
    (16, 10, "C4 x C2 x C2", disjoint(C(4), C(2), C(2))),
    (16, 11, "C2 x D8", disjoint(C(2), dihedral(8))),
    (16, 12, "C2 x Q8", disjoint(C(2), Q8)),
    (16, 13, "(C4 x C2) : C2", pauli()),
    (16, 14, "C2 x C2 x C2 x C2", disjoint(C(2), C(2), C(2), C(2))),
    (17, 1, "C17", C(17)),
    (18, 1, "D18", dihedral(18)),
    (18, 2, "C18", C(18)),
    (18, 3, "C3 x S3", disjoint(C(3), (3, [cycles(3, (1, 2, 3)), cycles(3, (1, 2))]))),
    (18, 4, "(C3 x C3) : C2", (6, [cycles(6, (1, 2, 3)), cycles(6, (4, 5, 6)),
                                   cycles(6, (2, 3), (5, 6))])),
    (18, 5, "C6 x C3", disjoint(C(3), C(3), C(2))),
    (19, 1, "C19", C(19)),
    (20, 1, "C5 : C4", semidirect(5, 4, 4)),
    (20, 2, "C20", C(20)),
    (20, 3, "C5 : C4", (5, [cycles(5, (1, 2, 3, 4, 5)), cycles(5, (2, 3, 5, 4))])),
    (20, 4, "D20", dihedral(20)),
    (20, 5, "C10 x C2", disjoint(C(5), C(2), C(2))),
    (40, 4, "Q40", dicyclic(10)),
]

# element-order histograms of the order-16 groups, by id
HIST16 = {
    1: {1: 1, 2: 1, 4: 2, 8: 4, 16: 8}, 2: {1: 1, 2: 3, 4: 12}, 3: {1: 1, 2: 7, 4: 8},
    4: {1: 1, 2: 3, 4: 12}, 5: {1: 1, 2: 3, 4: 4, 8: 8}, 6: {1: 1, 2: 3, 4: 4, 8: 8},
    7: {1: 1, 2: 9, 4: 2, 8: 4}, 8: {1: 1, 2: 5, 4: 6, 8: 4}, 9: {1: 1, 2: 1, 4: 10, 8: 4},
    10: {1: 1, 2: 7, 4: 8}, 11: {1: 1, 2: 11, 4: 4}, 12: {1: 1, 2: 3, 4: 12},
    13: {1: 1, 2: 7, 4: 8}, 14: {1: 1, 2: 15},
}


def closure(gens, degree):
    ident = Permutation.identity(degree)
    seen, frontier = {ident}, [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g * x
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def order_of(p):
    k, q = 1, p
    while not q.is_identity():
        q, k = q * p, k + 1
    return k


def main():
    lines = ["# order;id;name;degree;generators (1-based cycle notation, '|'-separated)"]
    for order, gid, name, (degree, gens) in GROUPS:
        els = closure(gens, degree)
        assert len(els) == order, (order, gid, len(els))
        if order == 16:
            assert dict(Counter(order_of(e) for e in els)) == HIST16[gid], gid
        lines.append(f"{order};{gid};{name};{degree};" + "|".join(g.cycle_string() for g in gens))
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(GROUPS)} groups to {OUT}")


if __name__ == "__main__":
    main()
