"""Order-indexed coefficient tables shared by the two solvers."""
from __future__ import annotations

import numpy as np

from .mseries import XSeries, fit_shape, zeros


class DependencyViolation(RuntimeError):
    """A stage asked for an x-order that has not been computed yet."""


class OrderTable:
    """Coefficients ``[x^n]`` of one named series, filled in increasing ``n``."""

    def __init__(self, name: str, vars: tuple[str, ...], size, prime):
        self.name = name
        self.vars = vars
        self.size = size          # callable: x-order -> axis length
        self.prime = prime
        self._data: list[np.ndarray] = []

    def __len__(self):
        return len(self._data)

    def __getitem__(self, n: int) -> np.ndarray:
        if n < 0:
            return zeros((1,) * len(self.vars), self.prime)
        if n >= len(self._data):
            raise DependencyViolation(f"{self.name}[x^{n}] requested before it was computed")
        return self._data[n]

    def shape(self, n: int) -> tuple[int, ...]:
        return (self.size(n),) * len(self.vars)

    def set(self, n: int, arr: np.ndarray) -> np.ndarray:
        if n != len(self._data):
            raise DependencyViolation(f"{self.name}: order {n} set out of sequence")
        arr = fit_shape(arr, self.shape(n), self.prime, f"{self.name}[x^{n}]")
        self._data.append(arr)
        return arr

    def to_xseries(self) -> XSeries:
        n = len(self._data) - 1
        caps = tuple(self.size(n) - 1 for _ in self.vars)
        return XSeries(self.prime, self.vars, list(self._data), caps)
