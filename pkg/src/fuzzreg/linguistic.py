"""Linguistic questionnaire responses -> type-2 term tables -> fuzzy random variables.

Each questionnaire item (a sales target plus one linguistic answer per
respondent) is tabulated into secondary grades: the share of respondents that
chose each term, attached to that term's weight.  A group of items is then
reduced to a discrete fuzzy random variable whose components are triangles
around the sales targets, weighted by each item's weighted-membership mass.
"""

from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .fuzzy_core import TriangularFuzzyNumber
from .fuzzy_random import DiscreteFuzzyRandomVariable, PROBABILITY_TOLERANCE


class LinguisticError(ValueError):
    pass


DEFAULT_TERMS = (
    ("always", 0.9),
    ("frequently", 0.7),
    ("often", 0.5),
    ("sometimes", 0.3),
    ("seldom", 0.1),
)


def _norm(term: str) -> str:
    return term.strip().lower()


@dataclass(frozen=True)
class Lexicon:
    entries: tuple[tuple[str, float], ...] = DEFAULT_TERMS

    def __post_init__(self):
        if not self.entries:
            raise LinguisticError("lexicon is empty")
        names = [_norm(n) for n, _ in self.entries]
        if len(set(names)) != len(names):
            raise LinguisticError("lexicon term names must be unique")
        weights = [w for _, w in self.entries]
        for w in weights:
            if not 0 < w < 1:
                raise LinguisticError(f"term weight {w} outside (0, 1)")
        if any(a <= b for a, b in zip(weights, weights[1:])):
            raise LinguisticError("lexicon weights must be strictly decreasing")
        object.__setattr__(self, "entries",
                           tuple((_norm(n), float(w)) for n, w in self.entries))

    def weight(self, term: str) -> float:
        key = _norm(term)
        for name, w in self.entries:
            if name == key:
                return w
        raise KeyError(term)

    def __contains__(self, term: str) -> bool:
        key = _norm(term)
        return any(name == key for name, _ in self.entries)


@dataclass(frozen=True)
class LinguisticItem:
    sales_target: float
    responses: tuple[str, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "responses", tuple(self.responses))


@dataclass(frozen=True)
class T2FTerm:
    """Secondary grades of one item: ``(weight, proportion)`` pairs."""

    sales_target: float
    grades: tuple[tuple[float, float], ...]
    respondents: int = 0

    def __str__(self):
        body = " + ".join(f"{p:g}/{w:g}" for w, p in self.grades)
        return f"({body})/{self.sales_target:g}"


@dataclass(frozen=True)
class SpreadRule:
    """Step function mapping a sales target to the half-width of its triangle.

    ``widths[k]`` applies for ``thresholds[k-1] <= target < thresholds[k]``.
    """

    thresholds: tuple[float, ...] = (10.0, 20.0)
    widths: tuple[float, ...] = (1.0, 2.0, 4.0)

    def __post_init__(self):
        if len(self.widths) != len(self.thresholds) + 1:
            raise LinguisticError("spread rule needs exactly one more width than thresholds")
        if any(a >= b for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise LinguisticError("spread thresholds must be strictly increasing")
        if any(w < 0 for w in self.widths):
            raise LinguisticError("spread widths must be nonnegative")


def tabulate(item: LinguisticItem, lexicon: Lexicon = Lexicon()) -> T2FTerm:
    """Proportion of respondents per term weight; zero-count terms are dropped."""
    where = f" in item '{item.label}'" if item.label else ""
    if not item.responses:
        raise LinguisticError(f"no responses{where}")
    counts = Counter()
    for term in item.responses:
        if term not in lexicon:
            raise LinguisticError(f"unknown linguistic term '{term.strip()}'{where}")
        counts[_norm(term)] += 1
    n = len(item.responses)
    grades = tuple((w, counts[name] / n) for name, w in lexicon.entries if counts[name])
    return T2FTerm(item.sales_target, grades, n)


def mass(term: T2FTerm) -> float:
    return math.fsum(w * p for w, p in term.grades)


def spread(sales_target: float, rule: SpreadRule = SpreadRule()) -> float:
    if not sales_target > 0:
        raise LinguisticError(f"sales target must be positive, got {sales_target}")
    return rule.widths[bisect.bisect_right(rule.thresholds, sales_target)]


def fuzzify(sales_target: float, rule: SpreadRule = SpreadRule()) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber.symmetric(sales_target, spread(sales_target, rule))


def reduction_probabilities(terms: Sequence[T2FTerm]) -> list[float]:
    if not terms:
        raise LinguisticError("cannot reduce an empty group")
    masses = [mass(t) for t in terms]
    total = math.fsum(masses)
    if total <= 0:
        raise LinguisticError("all weighted masses are zero")
    return [m / total for m in masses]


def reduce_group(terms: Sequence[T2FTerm], lexicon: Lexicon = Lexicon(),
                 rule: SpreadRule = SpreadRule(), *, decimals: int | None = None,
                 normalize: bool = True,
                 tolerance: float = PROBABILITY_TOLERANCE) -> DiscreteFuzzyRandomVariable:
    """Reduce a group of tabulated items to a discrete fuzzy random variable.

    ``decimals`` rounds the probabilities before building the variable (as a
    printed table would); by default they are kept at full precision.
    """
    probs = reduction_probabilities(terms)
    if decimals is not None:
        probs = [round(p, decimals) for p in probs]
    comps = [(fuzzify(t.sales_target, rule), p) for t, p in zip(terms, probs) if p > 0]
    return DiscreteFuzzyRandomVariable(comps, tolerance=tolerance, normalize=normalize)
