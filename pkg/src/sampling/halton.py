from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import qmc

from src.error.errors import InvalidArgument


@dataclass(frozen=True)
class Box:
    """Axis-aligned region in chart coordinates, one (low, high) pair per axis."""

    bounds: Tuple[Tuple[float, float], ...]

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @classmethod
    def cube(cls, dim: int, low: float = -1.0, high: float = 1.0) -> 'Box':
        return cls(tuple((low, high) for _ in range(dim)))

    @classmethod
    def parse(cls, text: str, dim: int) -> 'Box':
        """
        Parse a --box value.

        Two numbers are broadcast to every axis; 2*dim numbers give one pair per axis.
        """
        try:
            values = [float(v) for v in text.split(',') if v.strip()]
        except ValueError as e:
            raise InvalidArgument(f"box '{text}' is not a list of numbers") from e
        if len(values) == 2:
            pairs = [(values[0], values[1])] * dim
        elif len(values) == 2 * dim:
            pairs = [(values[2 * i], values[2 * i + 1]) for i in range(dim)]
        else:
            raise InvalidArgument(f"box '{text}' needs 2 or {2 * dim} numbers")
        for low, high in pairs:
            if not low < high:
                raise InvalidArgument(f"box '{text}' has an empty interval")
        return cls(tuple(pairs))

    def resize(self, dim: int) -> 'Box':
        """Same box for a chart of another dimension; only a box with one interval on every axis can be resized."""
        if dim == self.dim:
            return self
        if len(set(self.bounds)) != 1:
            raise InvalidArgument(f"box {self.describe()} has {self.dim} axes, the chart has {dim}")
        return Box(tuple(self.bounds[0] for _ in range(dim)))

    def project(self, axes: Sequence[int]) -> 'Box':
        """The intervals on the given axes."""
        return Box(tuple(self.bounds[i] for i in axes))

    @property
    def low(self) -> np.ndarray:
        return np.array([b[0] for b in self.bounds], dtype=float)

    @property
    def high(self) -> np.ndarray:
        return np.array([b[1] for b in self.bounds], dtype=float)

    def scale(self, unit: np.ndarray) -> np.ndarray:
        """Map points of the unit cube into the box."""
        return self.low + unit * (self.high - self.low)

    def describe(self) -> str:
        return ';'.join(f"[{lo:g},{hi:g}]" for lo, hi in self.bounds)


class HaltonSampler:
    """Scrambled Halton points, reproducible from a seed and an offset."""

    def __init__(self, seed: int = 0, offset: int = 0):
        self.seed = seed
        self.offset = offset

    def unit(self, count: int, dim: int) -> np.ndarray:
        """
        Draw points from the unit cube.

        Args:
            count: Number of points
            dim: Dimension of each point

        Returns:
            Array of shape (count, dim)
        """
        if count < 1:
            raise InvalidArgument("sample count must be positive")
        if dim == 0:
            return np.zeros((count, 0))
        engine = qmc.Halton(d=dim, scramble=True, seed=np.random.default_rng(self.seed))
        if self.offset:
            engine.fast_forward(self.offset)
        return engine.random(count)

    def box(self, count: int, box: Box) -> np.ndarray:
        return box.scale(self.unit(count, box.dim))

    def indices(self, count: int, size: int, columns: int = 1) -> np.ndarray:
        """Integer draws in range(size), used for finite groups."""
        points = self.unit(count, columns)
        return np.minimum((points * size).astype(int), size - 1)

    def child(self, stream: int) -> 'HaltonSampler':
        """Independent stream for another batch of the same suite."""
        return HaltonSampler(seed=self.seed * 1000003 + stream, offset=self.offset)


