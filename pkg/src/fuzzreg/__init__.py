"""Fuzzy random regression on linguistic survey data."""

from .fuzzy_core import (MeasureTriple, SquaredProfile, TriangularFuzzyNumber,
                         credibility_geq_square, expected_square,
                         expected_square_quadrature, measures_geq, membership,
                         square_profile)
from .fuzzy_random import (DiscreteFuzzyRandomVariable, Interval, expected_value,
                           one_sigma_interval, std_dev, variance)
from .linguistic import Lexicon, LinguisticItem, SpreadRule, T2FTerm, reduce_group, tabulate
from .lp import LinearProgram, LpSolution, solve
from .regression import (FitConfig, FuzzyCoefficient, ModelFit, RegressionProblem,
                         SignCase, build_problem, case_product, fit, predict)
from .evaluation import compare_all, midpoint_weight, one_way_anova, paired_t, tail_probability

__version__ = "0.1.0"

__all__ = [
    "MeasureTriple", "SquaredProfile", "TriangularFuzzyNumber", "credibility_geq_square",
    "expected_square", "expected_square_quadrature", "measures_geq", "membership",
    "square_profile", "DiscreteFuzzyRandomVariable", "Interval", "expected_value",
    "one_sigma_interval", "std_dev", "variance", "Lexicon", "LinguisticItem", "SpreadRule",
    "T2FTerm", "reduce_group", "tabulate", "LinearProgram", "LpSolution", "solve",
    "FitConfig", "FuzzyCoefficient", "ModelFit", "RegressionProblem", "SignCase",
    "build_problem", "case_product", "fit", "predict", "compare_all", "midpoint_weight",
    "one_way_anova", "paired_t", "tail_probability",
]
