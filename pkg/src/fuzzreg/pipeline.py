"""End-to-end run: survey -> fuzzy random variables -> fit -> evaluation report."""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from importlib import resources

from . import evaluation, regression
from .fuzzy_random import (DiscreteFuzzyRandomVariable, Interval, expected_value,
                           one_sigma_interval, std_dev)
from .io import RunConfig, SurveyFile, parse_config, parse_survey
from .linguistic import LinguisticItem, T2FTerm, mass, reduce_group, tabulate

REPORT_VERSION = 1


@dataclass
class GroupCell:
    group: str
    category: str
    terms: list[T2FTerm]
    variable: DiscreteFuzzyRandomVariable

    @property
    def expected(self) -> float:
        return expected_value(self.variable)

    @property
    def sigma(self) -> float:
        return std_dev(self.variable)

    @property
    def interval(self) -> Interval:
        return one_sigma_interval(self.variable)


@dataclass
class Analysis:
    config: RunConfig
    categories: list[str]
    inputs: list[list[GroupCell]]
    outputs: list[GroupCell]
    problem: regression.RegressionProblem
    fit: regression.ModelFit
    predictions: list[Interval]
    comparisons: list[evaluation.IntervalComparison]
    metrics: evaluation.MetricsReport
    tests: evaluation.TestReport | None
    test_error: str = ""


def _cell(survey: SurveyFile, group: str, category: str, config: RunConfig, rule) -> GroupCell:
    rows = survey.items(group, category)
    if not rows:
        raise regression.RegressionError(f"group {group!r} has no items in category {category!r}")
    terms = [tabulate(LinguisticItem(r.sales_target, r.responses,
                                     f"line {r.line}, {r.group}/{r.category}/{r.item}"),
                      config.lexicon) for r in rows]
    var = reduce_group(terms, config.lexicon, rule, decimals=config.probability_decimals,
                       normalize=config.renormalize, tolerance=config.probability_tolerance)
    return GroupCell(group, category, terms, var)


def analyze(survey: SurveyFile, config: RunConfig = RunConfig()) -> Analysis:
    config.check_roles(survey.groups)
    cats = survey.categories
    inputs = [[_cell(survey, g, c, config, config.input_spread) for g in config.inputs]
              for c in cats]
    outputs = [_cell(survey, config.output, c, config, config.output_spread) for c in cats]
    problem = regression.build_problem([[cell.variable for cell in row] for row in inputs],
                                       [cell.variable for cell in outputs], config.h_level)
    fit = regression.fit(problem, regression.FitConfig(config.max_iterations,
                                                       config.vertex_check_mode))
    preds = [regression.predict(fit, row) for row in problem.inputs]
    comps, metrics = evaluation.compare_all(problem.outputs, preds, cats)
    tests, err = None, ""
    if len(comps) >= 2:
        try:
            tests = evaluation.run_tests([c.observed_weight for c in comps],
                                         [c.predicted_weight for c in comps])
        except evaluation.EvaluationError as exc:
            err = str(exc)
    else:
        err = "at least two observations are needed for the tests"
    return Analysis(config, cats, inputs, outputs, problem, fit, preds, comps, metrics, tests, err)


def bundled_text(name: str) -> str:
    return resources.files("fuzzreg").joinpath("data", name).read_text(encoding="utf-8")


def bundled_survey() -> SurveyFile:
    return parse_survey(bundled_text("paper_survey.csv"), "paper_survey.csv")


def bundled_config() -> RunConfig:
    return parse_config(bundled_text("paper.cfg"), "paper.cfg")


# -- report -------------------------------------------------------------------

def _iv(iv: Interval):
    return [iv.lower, iv.upper]


def _cell_report(cell: GroupCell):
    return {
        "group": cell.group,
        "category": cell.category,
        "items": [{"sales_target": t.sales_target,
                   "respondents": t.respondents,
                   "grades": [[w, p] for w, p in t.grades],
                   "mass": mass(t)} for t in cell.terms],
        "components": [{"triangle": [tfn.center, tfn.left, tfn.right], "probability": p}
                       for tfn, p in cell.variable.components],
    }


def _moment(cell: GroupCell, name: str):
    return {"variable": name, "group": cell.group, "category": cell.category,
            "expected": cell.expected, "sigma": cell.sigma, "interval": _iv(cell.interval)}


def to_report(an: Analysis, timestamp: bool = False) -> dict:
    inputs, moments = [], []
    for i, (row, out) in enumerate(zip(an.inputs, an.outputs), start=1):
        for j, cell in enumerate(row, start=1):
            inputs.append({"variable": f"X{i}{j}", **_cell_report(cell)})
            moments.append(_moment(cell, f"X{i}{j}"))
        inputs.append({"variable": f"Y{i}", **_cell_report(out)})
        moments.append(_moment(out, f"Y{i}"))

    fit = an.fit
    step1 = next(t for t in fit.trace if t.step == "step1")
    report = {
        "version": REPORT_VERSION,
        "inputs": inputs,
        "moments": moments,
        "fit": {
            "coefficients": [{"input": g, "center": a.center, "lower": a.lower, "upper": a.upper}
                             for g, a in zip(an.config.inputs, fit.coefficients)],
            "objective": fit.objective,
            "step1_objective": step1.solution.objective,
            "terminated_by": fit.terminated_by,
            "signs": list(fit.signs),
            "vertices_outside": list(fit.s2),
            "vertex_check_mode": an.config.vertex_check_mode,
            "trace": [{"step": t.step, "status": t.solution.status,
                       "objective": t.solution.objective if t.solution.optimal else None,
                       "values": list(t.solution.values), "signs": list(t.signs),
                       "cases": [list(r) for r in t.cases],
                       "vertices_outside": list(t.s2), "note": t.note} for t in fit.trace],
            "notes": list(fit.notes),
        },
        "evaluation": {
            "rows": [{"label": c.label, "observed": _iv(c.observed), "predicted": _iv(c.predicted),
                      "observed_weight": c.observed_weight,
                      "predicted_weight": c.predicted_weight, "abs_diff": c.abs_diff,
                      "pct_error": c.pct_error, "covered": c.covered} for c in an.comparisons],
            "coverage_rate": an.metrics.coverage_rate,
            "mse_weight": an.metrics.mse_weight,
            "mape_weight": an.metrics.mape_weight,
        },
        "tests": None if an.tests is None else {
            "anova_F": an.tests.anova_F, "anova_p": an.tests.anova_p,
            "anova_df": list(an.tests.anova_df), "anova_degenerate": an.tests.anova_degenerate,
            "t_stat": an.tests.t_stat, "t_p": an.tests.t_p, "t_df": an.tests.t_df,
        },
    }
    if an.test_error:
        report["tests_error"] = an.test_error
    if timestamp:
        report["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return report


def dumps_report(report: dict) -> str:
    # json writes floats with repr, which round-trips exactly
    return json.dumps(report, indent=2, allow_nan=True) + "\n"
