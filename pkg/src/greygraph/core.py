"""Interval grey numbers in kernel/greyness form.

An interval grey number known to lie in ``[lower, upper]`` (on a unit domain)
is carried as ``(kernel, greyness)`` where the kernel is the midpoint and the
greyness is the width. Arithmetic acts ordinarily on kernels while the
greyness of any result is the largest greyness among the operands.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

__all__ = [
    "GreyInterval",
    "GreyNumber",
    "RelativeScore",
    "from_interval",
    "to_interval",
    "add",
    "mul",
    "scalar_mul",
    "grey_sum",
    "relative_score",
    "compare",
    "sort_key",
]


@dataclass(frozen=True)
class GreyInterval:
    lower: float
    upper: float

    def __post_init__(self) -> None:
        if math.isnan(self.lower) or math.isnan(self.upper):
            raise ValueError("interval bounds must not be NaN")
        if self.lower > self.upper:
            raise ValueError(
                f"reversed interval [{self.lower}, {self.upper}]: lower bound exceeds upper"
            )

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class GreyNumber:
    """A grey number ``(kernel, greyness)``; crisp reals have zero greyness.

    The operators ``+``, ``*`` and ``-`` follow the grey arithmetic rules, and
    multiplying by a plain ``int``/``float`` is scalar multiplication (greyness
    is left alone).
    """

    kernel: float
    greyness: float = 0.0

    def __post_init__(self) -> None:
        if math.isnan(self.kernel) or math.isnan(self.greyness):
            raise ValueError("grey number components must not be NaN")
        if self.greyness < 0:
            raise ValueError(f"greyness must be non-negative, got {self.greyness}")

    @classmethod
    def crisp(cls, value: float) -> GreyNumber:
        return cls(float(value), 0.0)

    @property
    def is_crisp(self) -> bool:
        return self.greyness == 0.0

    def __add__(self, other: object) -> GreyNumber:
        if isinstance(other, GreyNumber):
            return add(self, other)
        if isinstance(other, (int, float)):
            return add(self, GreyNumber.crisp(other))
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other: object) -> GreyNumber:
        if isinstance(other, GreyNumber):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return scalar_mul(other, self)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> GreyNumber:
        return scalar_mul(-1.0, self)

    def __sub__(self, other: object) -> GreyNumber:
        # closure only: x - y is x + (-1)y, greyness still the max
        if isinstance(other, GreyNumber):
            return add(self, -other)
        if isinstance(other, (int, float)):
            return add(self, GreyNumber.crisp(-other))
        return NotImplemented

    def __iter__(self):
        yield self.kernel
        yield self.greyness


@dataclass(frozen=True)
class RelativeScore:
    gamma: float
    delta: float


def from_interval(iv: GreyInterval | tuple[float, float]) -> GreyNumber:
    """Midpoint/width form of a unit-domain interval."""
    if not isinstance(iv, GreyInterval):
        iv = GreyInterval(*iv)
    return GreyNumber((iv.lower + iv.upper) / 2, iv.upper - iv.lower)


def to_interval(g: GreyNumber) -> GreyInterval:
    half = g.greyness / 2
    return GreyInterval(g.kernel - half, g.kernel + half)


def add(x: GreyNumber, y: GreyNumber) -> GreyNumber:
    return GreyNumber(x.kernel + y.kernel, max(x.greyness, y.greyness))


def mul(x: GreyNumber, y: GreyNumber) -> GreyNumber:
    return GreyNumber(x.kernel * y.kernel, max(x.greyness, y.greyness))


def scalar_mul(c: float, x: GreyNumber) -> GreyNumber:
    return GreyNumber(c * x.kernel, x.greyness)


def grey_sum(values: Iterable[GreyNumber]) -> GreyNumber:
    """Left fold of ``add`` starting from crisp zero."""
    total = GreyNumber(0.0, 0.0)
    for v in values:
        total = add(total, v)
    return total


def relative_score(x: GreyNumber) -> RelativeScore:
    gamma = 1.0 / (1.0 + x.greyness)
    return RelativeScore(gamma, gamma * x.kernel)


def sort_key(x: GreyNumber) -> tuple[float, float]:
    """Ascending key: larger key means the greater grey number."""
    s = relative_score(x)
    return (s.delta, s.gamma)


def compare(x: GreyNumber, y: GreyNumber) -> int:
    """Return 1 if ``x`` ranks above ``y``, -1 if below, 0 if indistinguishable.

    Relative kernels decide first; on an exact tie the higher precision
    (smaller greyness) wins. No tolerance is applied.
    """
    kx, ky = sort_key(x), sort_key(y)
    if kx > ky:
        return 1
    if kx < ky:
        return -1
    return 0
