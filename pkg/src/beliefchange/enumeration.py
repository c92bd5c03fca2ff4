"""Kernel / remainder enumeration over a finite list of sentences.

Sentences enter only through their model bitmasks, so a subset ``s`` (an
int with bit ``i`` set when element ``i`` is included) entails the target
iff the AND of its members' masks has no bit outside the target mask.

Two engines produce the same families:

* ``scan``: evaluates the whole subset lattice with numpy; exact and fast
  up to ~20 elements.
* ``dualize``: grows the kernel family one kernel at a time.  Complements of
  the minimal hitting sets of the known kernels are candidate remainders; a
  candidate that still entails the target contains an unseen kernel, which
  is shrunk out and added.  When no candidate entails the target the
  candidates are exactly the remainders.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_LIMITS, check_limit


def popcount(x):
    return bin(x).count("1")


def bits(x):
    """Indices of the set bits of ``x`` in increasing order."""
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def submasks(mask):
    """All submasks of ``mask`` in increasing numeric order."""
    out = []
    s = 0
    while True:
        out.append(s)
        if s == mask:
            return out
        s = (s - mask) & mask


def kernel_order(family):
    return sorted(set(family), key=lambda s: (popcount(s), s))


def remainder_order(family):
    return sorted(set(family))


def _dtype(full):
    if full.bit_length() > 64:
        raise ValueError("model masks wider than 64 valuations are not supported")
    return np.uint64


def conj_table(masks, full):
    """``table[s]`` is the AND of the masks of the elements in subset ``s``."""
    table = np.array([full], dtype=_dtype(full))
    for m in masks:
        table = np.concatenate([table, table & np.uint64(m)])
    return table


def implying_table(masks, full, target):
    table = conj_table(masks, full)
    return (table & np.uint64(full & ~target)) == 0


def scan(masks, full, target):
    """Kernels and remainders by exhaustive evaluation of the subset lattice."""
    m = len(masks)
    implying = implying_table(masks, full, target)
    idx = np.arange(1 << m, dtype=np.int64)
    minimal = implying.copy()
    maximal = ~implying
    for i in range(m):
        bit = 1 << i
        has = (idx & bit) != 0
        minimal[has] &= ~implying[idx[has] ^ bit]
        maximal[~has] &= implying[idx[~has] | bit]
    kernels = [int(s) for s in np.flatnonzero(minimal)]
    remainders = [int(s) for s in np.flatnonzero(maximal)]
    return kernel_order(kernels), remainder_order(remainders)


def _conj(masks, full, s):
    out = full
    for i in bits(s):
        out &= masks[i]
    return out


def minimize(family):
    """Drop every set that has a proper subset in ``family``."""
    out = []
    for s in sorted(set(family), key=lambda s: (popcount(s), s)):
        if not any(t & s == t for t in out):
            out.append(s)
    return out


def add_to_hitting_sets(hs, kernel):
    """Berge step: minimal hitting sets of ``F + [kernel]`` from those of ``F``."""
    if kernel == 0:
        return hs
    grown = []
    for h in hs:
        if h & kernel:
            grown.append(h)
        else:
            grown.extend(h | (1 << i) for i in bits(kernel))
    return minimize(grown)


def minimal_hitting_sets(family):
    """Minimal sets meeting every non-empty member of ``family``."""
    hs = [0]
    for k in kernel_order(family):
        hs = add_to_hitting_sets(hs, k)
    return kernel_order(hs)


def dualize(masks, full, target, limits=DEFAULT_LIMITS):
    """Kernels and remainders through hitting-set duality (any size)."""
    n = len(masks)
    every = (1 << n) - 1

    def implies(s):
        return _conj(masks, full, s) & ~target & full == 0

    if implies(0):
        return [0], []
    if not implies(every):
        return [], [every]
    kernels = []
    hs = [0]
    while True:
        for h in hs:
            cand = every & ~h
            if implies(cand):
                k = cand
                for i in bits(cand):
                    if implies(k & ~(1 << i)):
                        k &= ~(1 << i)
                kernels.append(k)
                check_limit("kernels", len(kernels), limits.family)
                hs = add_to_hitting_sets(hs, k)
                check_limit("hitting sets", len(hs), limits.family)
                break
        else:
            return kernel_order(kernels), remainder_order(every & ~h for h in hs)


def families(masks, full, target, limits=DEFAULT_LIMITS, engine=None):
    """``(kernels, remainders)`` as sorted lists of subset bitmasks."""
    if engine is None:
        engine = "scan" if len(masks) <= limits.exhaustive_base else "dualize"
    if engine == "scan":
        check_limit("base size for exhaustive scan", len(masks), limits.exhaustive_base)
        return scan(masks, full, target)
    return dualize(masks, full, target, limits)
