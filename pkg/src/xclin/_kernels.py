"""Integer kernels shared by the enumeration and homomorphism code.

Everything here works on plain int32/int64 numpy arrays so the same source
runs compiled (numba) or interpreted (see ``_accel``).  Group elements are
indices into a sorted element table; index 0 is always the identity.

Coset tables use column ``2*g`` for generator ``g`` and ``2*g + 1`` for its
inverse, so ``col ^ 1`` is the inverse column.  ``-1`` marks an undefined
entry.
"""
from __future__ import annotations

import numpy as np

from ._accel import kernel

OVERFLOW = -1


@kernel
def _find(c, p):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        nxt = p[c]
        p[c] = r
        c = nxt
    return r


@kernel
def _coincidence(a, b, table, p, queue):
    # Holt's COINCIDENCE: merge a and b, then every consequence.
    ncols = table.shape[1]
    ra = _find(a, p)
    rb = _find(b, p)
    if ra == rb:
        return
    if ra > rb:
        ra, rb = rb, ra
    p[rb] = ra
    head = 0
    tail = 0
    queue[tail] = rb
    tail += 1
    while head < tail:
        g = queue[head]
        head += 1
        for x in range(ncols):
            d = table[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            table[d, xi] = -1
            mu = _find(g, p)
            nu = _find(d, p)
            if table[mu, x] >= 0:
                u = nu
                v = _find(table[mu, x], p)
            elif table[nu, xi] >= 0:
                u = mu
                v = _find(table[nu, xi], p)
            else:
                table[mu, x] = nu
                table[nu, xi] = mu
                continue
            if u != v:
                if u > v:
                    u, v = v, u
                p[v] = u
                queue[tail] = v
                tail += 1


@kernel
def hlt_enumerate(ncols, rel_data, rel_start, capacity):
    """HLT coset enumeration over the trivial subgroup.

    Returns ``(table, p, defined)``; ``defined`` is the number of cosets ever
    created, or ``OVERFLOW`` if more than ``capacity`` were needed.  Live
    cosets are the ``c`` with ``p[c] == c``.
    """
    table = np.full((capacity, ncols), -1, dtype=np.int32)
    p = np.arange(capacity, dtype=np.int32)
    queue = np.empty(capacity, dtype=np.int32)
    nrel = rel_start.shape[0] - 1
    nxt = 1
    alpha = 0
    while alpha < nxt:
        if p[alpha] != alpha:
            alpha += 1
            continue
        for r in range(nrel):
            i = rel_start[r]
            j = rel_start[r + 1] - 1
            f = alpha
            b = alpha
            while True:
                while i <= j and table[f, rel_data[i]] >= 0:
                    f = table[f, rel_data[i]]
                    i += 1
                if i > j:
                    if f != alpha:
                        _coincidence(f, alpha, table, p, queue)
                    break
                while j >= i and table[b, rel_data[j] ^ 1] >= 0:
                    b = table[b, rel_data[j] ^ 1]
                    j -= 1
                if j < i:
                    _coincidence(f, b, table, p, queue)
                    break
                if i == j:
                    table[f, rel_data[i]] = b
                    table[b, rel_data[i] ^ 1] = f
                    break
                if nxt >= capacity:
                    return table, p, OVERFLOW
                table[f, rel_data[i]] = nxt
                table[nxt, rel_data[i] ^ 1] = f
                nxt += 1
            if p[alpha] != alpha:
                break
        if p[alpha] == alpha:
            for x in range(ncols):
                if table[alpha, x] < 0:
                    if nxt >= capacity:
                        return table, p, OVERFLOW
                    table[alpha, x] = nxt
                    table[nxt, x ^ 1] = alpha
                    nxt += 1
        alpha += 1
    return table, p, nxt


@kernel
def relators_close(table, rel_data, rel_start):
    """True iff every relator traced from every coset returns to it."""
    nrel = rel_start.shape[0] - 1
    for c in range(table.shape[0]):
        for r in range(nrel):
            f = c
            for k in range(rel_start[r], rel_start[r + 1]):
                f = table[f, rel_data[k]]
                if f < 0:
                    return False
            if f != c:
                return False
    return True


@kernel
def extend_images(mul_a, mul_b, gens, images):
    """Breadth-first closure of ``gens[k] -> images[k]`` from 0 -> 0.

    Returns ``(table, ok)``.  ``table[x]`` is the image of ``x`` for every
    ``x`` in the subgroup generated by ``gens`` (``-1`` elsewhere); ``ok`` is
    False as soon as some element would receive two distinct images.
    """
    n = mul_a.shape[0]
    table = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    table[0] = 0
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        w = queue[head]
        head += 1
        wi = table[w]
        for k in range(gens.shape[0]):
            x = mul_a[w, gens[k]]
            y = mul_b[wi, images[k]]
            if table[x] < 0:
                table[x] = y
                queue[tail] = x
                tail += 1
            elif table[x] != y:
                return table, False
    return table, True


@kernel
def generated_mask(mul, gens):
    """Membership mask of the subgroup generated by ``gens``."""
    n = mul.shape[0]
    mask = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    mask[0] = True
    queue[0] = 0
    head = 0
    tail = 1
    while head < tail:
        w = queue[head]
        head += 1
        for k in range(gens.shape[0]):
            x = mul[w, gens[k]]
            if not mask[x]:
                mask[x] = True
                queue[tail] = x
                tail += 1
    return mask


@kernel
def relators_trivial(mul, inv, images, rel_data, rel_start):
    """True iff every relator evaluates to 0 when generator ``g`` is ``images[g]``.

    Words are read left to right as products in the target table ``mul``.
    """
    nrel = rel_start.shape[0] - 1
    for r in range(nrel):
        x = 0
        for k in range(rel_start[r], rel_start[r + 1]):
            c = rel_data[k]
            y = images[c >> 1]
            if c & 1:
                y = inv[y]
            x = mul[x, y]
        if x != 0:
            return False
    return True
