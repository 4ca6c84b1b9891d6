"""Deterministic budgeted sampling of candidate pairs.

When there are more candidate pairs than the budget allows, a partial
Fisher-Yates shuffle driven by xorshift64* picks the subset. The generator
is normative so reports stay reproducible across implementations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, TypeVar

from . import kernels
from ._pykernels import MASK64, MULTIPLIER, ZERO_SEED

T = TypeVar("T")


@dataclass(frozen=True)
class Budget:
    max_questions_per_check: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.max_questions_per_check < 0:
            raise ValueError("max_questions_per_check must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


class XorShift64Star:
    """Stateful xorshift64* stream (seed 0 maps to the golden-ratio constant)."""

    def __init__(self, seed: int):
        self.state = (seed & MASK64) or ZERO_SEED

    def next(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        self.state = s
        return (s * MULTIPLIER) & MASK64


def pair_count(n: int) -> int:
    return n * (n - 1) // 2 if n > 1 else 0


def pair_at(n: int, index: int) -> tuple[int, int]:
    """The ``index``-th pair of the canonical (i<j, lexicographic) order."""
    i = 0
    row = n - 1
    while index >= row:
        index -= row
        i += 1
        row -= 1
    return i, i + 1 + index


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def sample_pairs(n: int, k: int, seed: int) -> list[tuple[int, int]]:
    """All index pairs of ``n`` items if they fit in ``k``, else ``k`` sampled ones."""
    return [pair_at(n, p) for p in kernels.sample_indices(pair_count(n), k, seed)]


def sample(items: Sequence[T], k: int, seed: int) -> list[T]:
    """Budgeted selection over an explicit canonical candidate list."""
    return [items[i] for i in kernels.sample_indices(len(items), k, seed)]
