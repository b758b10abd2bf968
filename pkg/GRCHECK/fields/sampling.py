import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

GRID = 'grid'
RANDOM = 'random'


@dataclass(frozen=True)
class SampleSet:
    """
    Points at which residuals are evaluated.

    kind is 'grid' (count points per axis, tensor-product linspace) or
    'random' (count uniform points from a seeded generator). Points for which
    `exclude` returns True are skipped and counted as excluded.
    """
    kind: str
    bounds: tuple
    count: int
    seed: Optional[int] = None
    exclude: Optional[Callable] = None

    def __post_init__(self):
        if self.kind not in (GRID, RANDOM):
            raise ValueError(f"Unknown sample kind '{self.kind}'")
        if self.count < 1:
            raise ValueError("A sample set needs at least one point")
        for low, high in self.bounds:
            if not (math.isfinite(low) and math.isfinite(high)):
                raise ValueError(f"Sample bounds must be finite, got {low}..{high}")
            if low > high:
                raise ValueError(f"Empty sample range {low}..{high}")
        if self.kind == RANDOM and self.seed is None:
            raise ValueError("Random sample sets need a seed")

    @classmethod
    def grid(cls, bounds, per_axis, exclude=None):
        return cls(GRID, tuple((float(lo), float(hi)) for lo, hi in bounds), int(per_axis), None, exclude)

    @classmethod
    def random(cls, bounds, count, seed, exclude=None):
        return cls(RANDOM, tuple((float(lo), float(hi)) for lo, hi in bounds), int(count), int(seed), exclude)

    @property
    def dim(self):
        return len(self.bounds)

    @property
    def requested(self):
        if self.kind == GRID:
            return self.count ** self.dim
        return self.count

    def points(self):
        """All requested points as an (N, dim) array, exclusions not applied."""
        if self.kind == GRID:
            axes = [np.linspace(lo, hi, self.count) for lo, hi in self.bounds]
            mesh = np.meshgrid(*axes, indexing='ij')
            return np.stack([m.ravel() for m in mesh], axis=-1)
        rng = np.random.default_rng(self.seed)
        lows = np.array([lo for lo, _ in self.bounds])
        highs = np.array([hi for _, hi in self.bounds])
        return rng.uniform(lows, highs, size=(self.count, self.dim))

    def is_excluded(self, point):
        return bool(self.exclude is not None and self.exclude(point))

    def with_overrides(self, count=None, seed=None):
        """Copy with a different random point count or seed; grids are unchanged."""
        if self.kind != RANDOM:
            return self
        return SampleSet(
            self.kind,
            self.bounds,
            self.count if count is None else int(count),
            self.seed if seed is None else int(seed),
            self.exclude,
        )

    def describe(self):
        return {
            'kind': self.kind,
            'bounds': [list(b) for b in self.bounds],
            'count': self.count,
            'requested': self.requested,
            'seed': self.seed,
        }
