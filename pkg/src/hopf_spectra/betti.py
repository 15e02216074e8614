"""Kunneth product of Betti numbers with a real torus (S^1)^(4n-2)."""

from __future__ import annotations

from math import comb
from typing import Sequence


def torus_betti(dim: int) -> list[int]:
    return [comb(dim, k) for k in range(dim + 1)]


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def betti_regular_locus(n: int, betti_a: Sequence[int]) -> list[int]:
    """Betti numbers of the regular locus from those of the graph base A_n.

    ``betti_a`` is an input: A_n is affine of complex dimension 2n+1, so its
    cohomology lives in degrees <= 2n+1, and the result vanishes from degree
    6n on.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    betti_a = [int(b) for b in betti_a]
    if not betti_a or any(b < 0 for b in betti_a):
        raise ValueError("Betti numbers must be non-negative integers")
    while len(betti_a) > 1 and betti_a[-1] == 0:
        betti_a.pop()
    if len(betti_a) - 1 > 2 * n + 1:
        raise ValueError("exceeds affine homotopy dimension")
    out = convolve(betti_a, torus_betti(4 * n - 2))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    assert len(out) - 1 < 6 * n, "cohomology must vanish in degrees >= 6n"
    return out
