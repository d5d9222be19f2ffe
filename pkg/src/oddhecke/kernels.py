"""
Integer kernels for the double-coset enumeration.

Set ``ODDHECKE_JIT=0`` to run the plain numpy/python versions; otherwise the
kernels are compiled with numba when it is importable.
"""

from __future__ import annotations

import os
from itertools import permutations

import numpy as np

JIT_REQUESTED = os.environ.get("ODDHECKE_JIT", "1") != "0"

try:
    if not JIT_REQUESTED:
        raise ImportError
    from numba import njit
    JIT_ACTIVE = True
except ImportError:  # pragma: no cover - depends on environment
    JIT_ACTIVE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


def all_permutations(n: int) -> np.ndarray:
    """Every permutation of 0..n-1 in lexicographic order, one per row."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(permutations(range(n))), dtype=np.int64)


def inversion_counts(perms: np.ndarray) -> np.ndarray:
    """Coxeter length of every row (vectorised)."""
    n = perms.shape[1]
    out = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            out += perms[:, i] > perms[:, j]
    return out


@njit(cache=True)
def lehmer_rank(p):
    """Index of ``p`` in lexicographic order of permutations."""
    n = p.shape[0]
    rank = 0
    for i in range(n):
        smaller = 0
        for j in range(i + 1, n):
            if p[j] < p[i]:
                smaller += 1
        f = 1
        for k in range(2, n - i):
            f *= k
        rank += smaller * f
    return rank


def _histogram(perms, lengths, left_gens, right_gens, max_len):
    """Histogram of minimal lengths over the double cosets ``S_a \\ S_n / S_b``.

    ``left_gens`` lists values ``j`` whose swap ``j <-> j+1`` generates the left
    parabolic subgroup; ``right_gens`` lists positions ``j`` whose swap
    generates the right one.  Cosets are the components of a union-find over
    permutation ranks; everything is inlined so the body also runs unjitted.
    """
    count = perms.shape[0]
    n = perms.shape[1]
    parent = np.arange(count)
    buf = np.empty(n, dtype=np.int64)
    fact = np.ones(n + 1, dtype=np.int64)
    for k in range(2, n + 1):
        fact[k] = fact[k - 1] * k
    for idx in range(count):
        for side in range(2):
            gens = left_gens if side == 0 else right_gens
            for g in range(gens.shape[0]):
                j = gens[g]
                for p in range(n):
                    buf[p] = perms[idx, p]
                if side == 0:
                    for p in range(n):
                        if buf[p] == j:
                            buf[p] = j + 1
                        elif buf[p] == j + 1:
                            buf[p] = j
                else:
                    buf[j], buf[j + 1] = perms[idx, j + 1], perms[idx, j]
                other = 0
                for i in range(n):
                    smaller = 0
                    for k in range(i + 1, n):
                        if buf[k] < buf[i]:
                            smaller += 1
                    other += smaller * fact[n - 1 - i]
                ra = idx
                while parent[ra] != ra:
                    ra = parent[ra]
                rb = other
                while parent[rb] != rb:
                    rb = parent[rb]
                if ra < rb:
                    parent[rb] = ra
                elif rb < ra:
                    parent[ra] = rb
    best = np.full(count, max_len + 1, dtype=np.int64)
    for idx in range(count):
        r = idx
        while parent[r] != r:
            r = parent[r]
        parent[idx] = r
        if lengths[idx] < best[r]:
            best[r] = lengths[idx]
    hist = np.zeros(max_len + 1, dtype=np.int64)
    for idx in range(count):
        if parent[idx] == idx:
            hist[best[idx]] += 1
    return hist


coset_length_histogram = njit(cache=True)(_histogram)

# below this size the plain loops finish in about a millisecond, well under the
# cost of loading (or first compiling) the jitted kernel
JIT_MIN_SIZE = 6


def parabolic_generators(parts) -> np.ndarray:
    """Simple reflections ``j`` (0-based, swapping j and j+1) inside the blocks of ``parts``."""
    gens = []
    start = 0
    for p in parts:
        gens.extend(range(start, start + p - 1))
        start += p
    return np.array(gens, dtype=np.int64)


_PERM_CACHE = {}


def permutation_table(n: int):
    """Cached ``(perms, lengths)`` for S_n."""
    if n not in _PERM_CACHE:
        perms = all_permutations(n)
        _PERM_CACHE[n] = (perms, inversion_counts(perms))
    return _PERM_CACHE[n]


def double_coset_lengths(left_parts, right_parts) -> np.ndarray:
    n = sum(left_parts)
    if sum(right_parts) != n:
        raise ValueError("compositions of different sizes")
    perms, lengths = permutation_table(n)
    max_len = n * (n - 1) // 2
    kernel = coset_length_histogram if n >= JIT_MIN_SIZE else _histogram
    return kernel(perms, lengths, parabolic_generators(left_parts), parabolic_generators(right_parts), max_len)


