"""Discrete fuzzy random variables: probability mixtures of triangular fuzzy numbers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from . import fuzzy_core
from .fuzzy_core import TriangularFuzzyNumber

PROBABILITY_TOLERANCE = 0.02


@dataclass(frozen=True)
class Interval:
    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower <= self.upper:
            raise ValueError(f"interval lower bound exceeds upper: [{self.lower}, {self.upper}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, other: "Interval", tol: float = 0.0) -> bool:
        return self.lower <= other.lower + tol and other.upper <= self.upper + tol

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lower + other.lower, self.upper + other.upper)

    def __iter__(self):
        yield self.lower
        yield self.upper

    def __str__(self):
        return f"[{self.lower:.4g}, {self.upper:.4g}]"


class DiscreteFuzzyRandomVariable:
    """Finite mixture ``{(X_t, p_t)}`` of triangular fuzzy numbers.

    Probabilities must sum to one within ``tolerance``.  By default they are
    rescaled to sum exactly to one; ``normalize=False`` keeps the weights as
    given, which is how tables of rounded probabilities are usually consumed.
    """

    def __init__(self, components: Iterable[tuple[TriangularFuzzyNumber, float]],
                 tolerance: float = PROBABILITY_TOLERANCE, normalize: bool = True):
        comps = [(t, float(p)) for t, p in components]
        if not comps:
            raise ValueError("a fuzzy random variable needs at least one component")
        for t, p in comps:
            if not isinstance(t, TriangularFuzzyNumber):
                raise TypeError(f"component must be a TriangularFuzzyNumber, got {t!r}")
            if not p > 0:
                raise ValueError(f"component probabilities must be positive, got {p}")
        total = math.fsum(p for _, p in comps)
        if abs(total - 1.0) > tolerance:
            raise ValueError(
                f"probabilities sum to {total:.6g}, outside 1 +/- {tolerance}")
        if normalize:
            comps = [(t, p / total) for t, p in comps]
        self._components = tuple(comps)
        self.normalized = normalize

    @classmethod
    def crisp(cls, value: float) -> "DiscreteFuzzyRandomVariable":
        return cls([(TriangularFuzzyNumber(value, value, value), 1.0)])

    @property
    def components(self) -> tuple[tuple[TriangularFuzzyNumber, float], ...]:
        return self._components

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(p for _, p in self._components)

    def __len__(self):
        return len(self._components)

    def __repr__(self):
        inner = "; ".join(f"{t}@{p:.4g}" for t, p in self._components)
        return f"DiscreteFuzzyRandomVariable({inner})"


def expected_value(dfrv: DiscreteFuzzyRandomVariable) -> float:
    return math.fsum(p * fuzzy_core.expected_value(t) for t, p in dfrv.components)


def variance(dfrv: DiscreteFuzzyRandomVariable) -> float:
    m = expected_value(dfrv)
    return math.fsum(p * fuzzy_core.expected_square(fuzzy_core.shift(t, m))
                     for t, p in dfrv.components)


def std_dev(dfrv: DiscreteFuzzyRandomVariable) -> float:
    return math.sqrt(max(variance(dfrv), 0.0))


def one_sigma_interval(dfrv: DiscreteFuzzyRandomVariable) -> Interval:
    e = expected_value(dfrv)
    s = std_dev(dfrv)
    return Interval(e - s, e + s)
