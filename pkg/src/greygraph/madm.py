"""Grey-graph multi-attribute decision pipeline.

interval matrix -> range normalization -> (kernel, greyness) form
-> attribute influence propagation -> weighted aggregation -> relative-kernel ranking
"""
from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .core import GreyInterval, GreyNumber, from_interval
from .graph import GreyGraph, GraphError, attribute_graph, validate

__all__ = [
    "BENEFIT",
    "COST",
    "ProblemError",
    "GreyDataWarning",
    "GreyArray",
    "Attribute",
    "DecisionProblem",
    "NormalizedMatrix",
    "RankingResult",
    "Solution",
    "normalize",
    "propagate_influence",
    "aggregate",
    "rank",
    "solve",
    "weights_from_intervals",
]

BENEFIT = "benefit"
COST = "cost"
WEIGHT_SUM_TOL = 1e-9


class ProblemError(ValueError):
    """Invalid decision problem input."""


class GreyDataWarning(UserWarning):
    """Non-fatal data condition (weight-sum drift, flat attribute, clamping)."""


@dataclass(frozen=True, eq=False)
class GreyArray:
    """Array of grey numbers held as parallel kernel and greyness arrays."""

    kernel: np.ndarray
    greyness: np.ndarray

    def __post_init__(self) -> None:
        k = np.array(self.kernel, dtype=np.float64)
        g = np.array(self.greyness, dtype=np.float64)
        if k.shape != g.shape:
            raise ValueError(f"kernel shape {k.shape} != greyness shape {g.shape}")
        if np.any(g < 0):
            raise ValueError("greyness must be non-negative")
        k.flags.writeable = False
        g.flags.writeable = False
        object.__setattr__(self, "kernel", k)
        object.__setattr__(self, "greyness", g)

    @classmethod
    def from_numbers(cls, values) -> GreyArray:
        """Build from a (nested) sequence of GreyNumbers or ``(kernel, greyness)`` pairs."""
        arr = np.array(_as_pairs(values), dtype=np.float64)
        if arr.size == 0:
            return cls(np.zeros(0), np.zeros(0))
        return cls(arr[..., 0], arr[..., 1])

    @classmethod
    def crisp(cls, values) -> GreyArray:
        k = np.asarray(values, dtype=np.float64)
        return cls(k, np.zeros_like(k))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.kernel.shape

    def __len__(self) -> int:
        return self.kernel.shape[0]

    def __getitem__(self, idx):
        k = self.kernel[idx]
        g = self.greyness[idx]
        if np.ndim(k) == 0:
            return GreyNumber(float(k), float(g))
        return GreyArray(k, g)

    def __iter__(self) -> Iterator:
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GreyArray):
            return NotImplemented
        return np.array_equal(self.kernel, other.kernel) and np.array_equal(self.greyness, other.greyness)

    __hash__ = None

    def tolist(self):
        if self.kernel.ndim == 0:
            return GreyNumber(float(self.kernel), float(self.greyness))
        return [item.tolist() if isinstance(item, GreyArray) else item for item in self]

    def scale(self, c: float) -> GreyArray:
        return GreyArray(c * self.kernel, self.greyness)

    def intervals(self) -> tuple[np.ndarray, np.ndarray]:
        half = self.greyness / 2
        return self.kernel - half, self.kernel + half


def _as_pairs(values):
    if isinstance(values, GreyNumber):
        return (values.kernel, values.greyness)
    if _is_pair(values):
        return tuple(values)
    return [_as_pairs(v) for v in values]


def _is_pair(v) -> bool:
    return (
        isinstance(v, (list, tuple))
        and len(v) == 2
        and all(isinstance(x, numbers.Real) for x in v)
    )


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: str
    weight: GreyNumber

    def __post_init__(self) -> None:
        if self.kind not in (BENEFIT, COST):
            raise ProblemError(f"attribute {self.name!r}: unknown kind {self.kind!r} (expected benefit or cost)")
        if not isinstance(self.weight, GreyNumber):
            object.__setattr__(self, "weight", GreyNumber(*self.weight))
        if self.weight.kernel < 0:
            raise ProblemError(f"attribute {self.name!r}: weight kernel must be non-negative")

    @property
    def is_cost(self) -> bool:
        return self.kind == COST


@dataclass(frozen=True, eq=False)
class DecisionProblem:
    """Alternatives x attributes interval matrix with grey weights and influence.

    ``lower``/``upper`` hold the interval bounds ``z_ij``. The influence matrix
    defaults to the crisp identity.
    """

    alternatives: tuple[str, ...]
    attributes: tuple[Attribute, ...]
    lower: np.ndarray
    upper: np.ndarray
    influence: GreyArray = None

    def __post_init__(self) -> None:
        alts = tuple(self.alternatives)
        attrs = tuple(self.attributes)
        n, m = len(alts), len(attrs)
        if n == 0 or m == 0:
            raise ProblemError("decision matrix is empty")
        lo = np.array(self.lower, dtype=np.float64)
        hi = np.array(self.upper, dtype=np.float64)
        if lo.shape != (n, m) or hi.shape != (n, m):
            raise ProblemError(
                f"matrix shape {lo.shape} does not match {n} alternatives x {m} attributes"
            )
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            bad = np.argwhere(~(np.isfinite(lo) & np.isfinite(hi)))[0]
            raise ProblemError(f"non-finite value at row {bad[0] + 1}, column {bad[1] + 1}")
        rev = np.argwhere(lo > hi)
        if rev.size:
            i, j = rev[0]
            raise ProblemError(
                f"reversed interval at row {i + 1} ({alts[i]}), column {j + 1} ({attrs[j].name}): "
                f"{lo[i, j]!r} > {hi[i, j]!r}"
            )
        infl = self.influence
        if infl is None:
            infl = GreyArray.crisp(np.eye(m))
        elif not isinstance(infl, GreyArray):
            infl = GreyArray(*infl)
        _check_influence(infl, m)
        for a in (lo, hi):
            a.flags.writeable = False
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "attributes", attrs)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "influence", infl)

    @classmethod
    def from_intervals(cls, alternatives, attributes, matrix, influence=None) -> DecisionProblem:
        """``matrix`` is a nested n x m list of ``[lo, hi]`` pairs or GreyIntervals."""
        lo, hi = [], []
        for row in matrix:
            lo.append([c.lower if isinstance(c, GreyInterval) else c[0] for c in row])
            hi.append([c.upper if isinstance(c, GreyInterval) else c[1] for c in row])
        return cls(tuple(alternatives), tuple(attributes), np.array(lo, dtype=float), np.array(hi, dtype=float), influence)

    @property
    def shape(self) -> tuple[int, int]:
        return self.lower.shape

    @property
    def weights(self) -> GreyArray:
        return GreyArray.from_numbers([a.weight for a in self.attributes])

    @property
    def is_cost(self) -> np.ndarray:
        return np.array([a.is_cost for a in self.attributes], dtype=bool)

    def interval(self, i: int, j: int) -> GreyInterval:
        return GreyInterval(float(self.lower[i, j]), float(self.upper[i, j]))

    def attribute_graph(self) -> GreyGraph:
        return attribute_graph(
            [a.weight for a in self.attributes],
            self.influence.kernel,
            self.influence.greyness,
            names=[a.name for a in self.attributes],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecisionProblem):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.attributes == other.attributes
            and np.array_equal(self.lower, other.lower)
            and np.array_equal(self.upper, other.upper)
            and self.influence == other.influence
        )

    __hash__ = None


def _check_influence(infl: GreyArray, m: int) -> None:
    if infl.shape != (m, m):
        raise ProblemError(f"influence matrix must be {m}x{m}, got {infl.shape}")
    k, g = infl.kernel, infl.greyness
    if not (np.array_equal(k, k.T) and np.array_equal(g, g.T)):
        raise ProblemError("influence matrix must be symmetric in kernel and greyness")
    if not (np.all(np.diag(k) == 1.0) and np.all(np.diag(g) == 0.0)):
        raise ProblemError("influence matrix diagonal must be the crisp one (1, 0)")


@dataclass(frozen=True, eq=False)
class NormalizedMatrix:
    r_lower: np.ndarray
    r_upper: np.ndarray
    entries: GreyArray
    z_min: np.ndarray
    z_max: np.ndarray

    @property
    def d(self) -> np.ndarray:
        return self.z_max - self.z_min

    @property
    def degenerate(self) -> tuple[int, ...]:
        return tuple(int(j) for j in np.flatnonzero(self.d == 0.0))


@dataclass(frozen=True, eq=False)
class RankingResult:
    alternatives: tuple[str, ...]
    aggregates: GreyArray
    gamma: np.ndarray
    delta: np.ndarray
    order: tuple[int, ...]

    @property
    def ranks(self) -> tuple[int, ...]:
        """1-based rank of each alternative, in input order."""
        out = [0] * len(self.order)
        for pos, idx in enumerate(self.order):
            out[idx] = pos + 1
        return tuple(out)

    @property
    def ordered_names(self) -> tuple[str, ...]:
        return tuple(self.alternatives[i] for i in self.order)

    @property
    def best(self) -> str:
        return self.alternatives[self.order[0]]


@dataclass(frozen=True, eq=False)
class Solution:
    """Ranking together with every intermediate of the pipeline."""

    problem: DecisionProblem
    normalized: NormalizedMatrix
    propagated: GreyArray
    ranking: RankingResult
    warnings: tuple[str, ...] = ()
    clamped: bool = False
    backend: str = field(default_factory=_kernels.active_backend)

    @property
    def aggregates(self) -> GreyArray:
        return self.ranking.aggregates


def _emit(messages: Sequence[str]) -> None:
    for msg in messages:
        warnings.warn(msg, GreyDataWarning, stacklevel=3)


def _normalize(problem: DecisionProblem, backend=None) -> tuple[NormalizedMatrix, list[str]]:
    rl, ru, zmin, zmax = _kernels.normalize(problem.lower, problem.upper, problem.is_cost, backend)
    k, g = _kernels.kernel_greyness(rl, ru, backend)
    nm = NormalizedMatrix(rl, ru, GreyArray(k, g), zmin, zmax)
    notes = [
        f"attribute {problem.attributes[j].name!r} has zero range; every entry set to (0.5, 0)"
        for j in nm.degenerate
    ]
    return nm, notes


def normalize(problem: DecisionProblem, backend=None) -> NormalizedMatrix:
    """Range-normalize every attribute column into [0, 1] and convert to grey form.

    Benefit columns map ``z`` to ``(z - z_min) / d``; cost columns to
    ``(z_max - z) / d`` with the bounds swapped.
    """
    nm, notes = _normalize(problem, backend)
    _emit(notes)
    return nm


def _propagate(entries: GreyArray, influence: GreyArray, clamp: bool, backend) -> tuple[GreyArray, list[str]]:
    if entries.kernel.ndim != 2 or influence.shape != (entries.shape[1], entries.shape[1]):
        raise ProblemError(
            f"influence matrix shape {influence.shape} does not match {entries.shape[1]} attributes"
        )
    k, g = _kernels.grey_matmul(
        entries.kernel, entries.greyness, influence.kernel, influence.greyness, True, backend
    )
    notes = []
    if clamp:
        outside = (k < 0.0) | (k > 1.0) | (g > 1.0)
        if np.any(outside):
            notes.append(f"clamped {int(outside.sum())} propagated entries into [0, 1]")
            k = np.clip(k, 0.0, 1.0)
            g = np.minimum(g, 1.0)
    return GreyArray(k, g), notes


def propagate_influence(norm, influence, clamp: bool = False, backend=None) -> GreyArray:
    """Spread each alternative's values across related attributes.

    Entry ``(i, j)`` has kernel ``sum_p xi[p, j] * r[i, p]`` and greyness the
    largest of ``xi[p, j]`` and ``r[i, p]`` greynesses over terms whose
    coefficient is not the crisp zero.
    """
    entries = norm.entries if isinstance(norm, NormalizedMatrix) else norm
    if not isinstance(influence, GreyArray):
        influence = GreyArray(*influence)
    out, notes = _propagate(entries, influence, clamp, backend)
    _emit(notes)
    return out


def aggregate(propagated: GreyArray, weights, backend=None) -> GreyArray:
    """Weighted grey sum per alternative: ``(sum_j w_j r_ij, max_j(g_wj v g_rij))``."""
    if not isinstance(weights, GreyArray):
        weights = GreyArray.from_numbers(list(weights))
    m = propagated.shape[1]
    if weights.shape != (m,):
        raise ProblemError(f"expected {m} weights, got {weights.shape[0] if weights.kernel.ndim else 0}")
    k, g = _kernels.grey_matmul(
        propagated.kernel,
        propagated.greyness,
        weights.kernel[:, None],
        weights.greyness[:, None],
        False,
        backend,
    )
    return GreyArray(k[:, 0], g[:, 0])


def rank(aggregates, alternatives: Sequence[str] | None = None, backend=None) -> RankingResult:
    """Order alternatives by descending relative kernel, then descending precision,
    then ascending input position."""
    if not isinstance(aggregates, GreyArray):
        aggregates = GreyArray.from_numbers(list(aggregates))
    n = len(aggregates)
    if n == 0:
        raise ProblemError("nothing to rank")
    if alternatives is None:
        alternatives = tuple(f"X{i + 1}" for i in range(n))
    gamma, delta = _kernels.relative_scores(aggregates.kernel, aggregates.greyness, backend)
    # lexsort: last key is primary; stable on input index
    order = np.lexsort((np.arange(n), -gamma, -delta))
    return RankingResult(tuple(alternatives), aggregates, gamma, delta, tuple(int(i) for i in order))


def _weight_notes(problem: DecisionProblem) -> list[str]:
    total = math.fsum(a.weight.kernel for a in problem.attributes)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        return [f"weight kernels sum to {total!r}, not 1"]
    return []


def solve(problem: DecisionProblem, clamp: bool = False, strict: bool = False, backend=None) -> Solution:
    """Run the whole pipeline and keep every intermediate.

    With ``strict`` any data warning becomes a :class:`ProblemError` and the
    attribute graph (weights plus influence) must satisfy grey-graph validity.
    """
    notes = _weight_notes(problem)
    norm, more = _normalize(problem, backend)
    notes += more
    propagated, more = _propagate(norm.entries, problem.influence, clamp, backend)
    notes += more
    if strict:
        if notes:
            raise ProblemError("; ".join(notes))
        try:
            report = validate(problem.attribute_graph())
        except GraphError as exc:
            raise ProblemError(str(exc)) from exc
        if not report.valid:
            raise ProblemError(
                "attribute graph violates grey-graph validity: "
                + "; ".join(str(v) for v in report.violations)
            )
    aggregates = aggregate(propagated, problem.weights, backend)
    ranking = rank(aggregates, problem.alternatives, backend)
    _emit(notes)
    return Solution(
        problem,
        norm,
        propagated,
        ranking,
        tuple(notes),
        clamp,
        _kernels.get_backend(backend).name,
    )


def weights_from_intervals(raw) -> list[GreyNumber]:
    out = []
    for j, iv in enumerate(raw):
        if not isinstance(iv, GreyInterval):
            iv = GreyInterval(*iv)
        if iv.lower < 0.0 or iv.upper > 1.0:
            raise ProblemError(f"weight {j + 1} interval [{iv.lower}, {iv.upper}] lies outside [0, 1]")
        out.append(from_interval(iv))
    return out
