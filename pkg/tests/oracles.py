"""Brute-force reference computations that avoid the packaged tables.

These work on :class:`Permutation` objects directly so that a bug in the
vectorized table code cannot hide behind an equally wrong oracle.
"""
from __future__ import annotations

from itertools import product

from xclin.perm import Permutation


def elements(G):
    return list(G.elements)


def center(G):
    els = elements(G)
    return {z for z in els if all(z * g == g * z for g in els)}


def comm(x, y):
    return x * y * x.inverse() * y.inverse()


def closure(gens, degree):
    ident = Permutation.identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


def derived(G):
    els = elements(G)
    return closure({comm(x, y) for x in els for y in els}, G.degree)


def order(p):
    k, q = 1, p
    while not q.is_identity():
        q, k = q * p, k + 1
    return k


def commuting_pairs(G):
    els = elements(G)
    return sum(1 for x, y in product(els, els) if x * y == y * x)


def is_hom(A, B, images: dict) -> bool:
    return all(images[x * y] == images[x] * images[y] for x in A.elements for y in A.elements)


def all_maps_count(A, B):
    """Number of homomorphisms A -> B by trying every image tuple on A's generators."""
    gens = list(A.generators)
    count = 0
    for imgs in product(B.elements, repeat=len(gens)):
        table = {Permutation.identity(A.degree): Permutation.identity(B.degree)}
        frontier = list(table)
        ok = True
        while frontier and ok:
            new = []
            for w in frontier:
                for g, h in zip(gens, imgs):
                    x, y = w * g, table[w] * h
                    if x not in table:
                        table[x] = y
                        new.append(x)
                    elif table[x] != y:
                        ok = False
                        break
                if not ok:
                    break
            frontier = new
        if ok and len(table) == A.order and is_hom(A, B, table):
            count += 1
    return count
