"""Reference values of the bundled cosmetics case study and a side-by-side check.

Entries that carry a ``known`` note are values the printed tables cannot be
reproduced to from their own inputs; they are reported as known
discrepancies rather than hidden.
"""

from __future__ import annotations

from dataclasses import dataclass

# Component probabilities after type reduction, rounded to two decimals.
PROBABILITIES = {
    "X11": (0.39, 0.27, 0.34), "X21": (0.31, 0.29, 0.40),
    "X31": (0.32, 0.35, 0.33), "X41": (0.27, 0.46, 0.27),
    "X12": (0.29, 0.37, 0.35), "X22": (0.36, 0.39, 0.25),
    "X32": (0.21, 0.32, 0.47), "X42": (0.27, 0.48, 0.25),
    "Y1": (0.40, 0.32, 0.28), "Y2": (0.34, 0.31, 0.35),
    "Y3": (0.35, 0.34, 0.31), "Y4": (0.35, 0.36, 0.29),
}

# (expected value, sigma, interval)
MOMENTS = {
    "X11": (6.70, 2.51, (4.19, 9.21)), "X12": (6.84, 3.92, (2.92, 10.76)),
    "Y1": (12.80, 4.76, (8.00, 17.56)),
    "X21": (7.29, 4.76, (2.53, 12.05)), "X22": (6.25, 2.30, (3.95, 8.55)),
    "Y2": (13.34, 2.80, (10.54, 16.14)),
    "X31": (6.66, 1.11, (5.55, 7.77)), "X32": (6.79, 0.78, (6.01, 7.57)),
    "Y3": (13.08, 5.19, (7.89, 18.27)),
    "X41": (6.92, 1.40, (5.52, 8.32)), "X42": (6.98, 2.48, (4.50, 9.46)),
    "Y4": (13.16, 2.18, (10.98, 15.34)),
}

STEP1_OBJECTIVE = 1.53
FIT_OBJECTIVE = 0.93
COEFFICIENTS = ((1.42, 2.35), (0.0, 0.0))
VERTICES_OUTSIDE = (3, 4, 7, 8, 11, 12, 15, 16)
PREDICTIONS = ((5.96, 21.66), (3.60, 28.33), (7.89, 18.27), (7.85, 19.56))
ROW_PCT_ERROR = (8.06, 19.68, 0.0, 4.14)
ROW_DIFF = (1.0035, 2.6212, 0.0, 0.5436)
MAPE = 7.97
MSE = 2.06
COVERAGE = 1.0
T_STAT, T_P = 1.8447, 0.1623
F_STAT, F_P = 2.6620, 0.1539

_STRADDLE = "shifted components straddle zero; no variance rule reproduces this cell"
KNOWN = {
    "sigma X41": "third component printed as an invalid triple (5,7,6)",
    "interval X41": "third component printed as an invalid triple (5,7,6)",
    "sigma X32": _STRADDLE, "interval X32": _STRADDLE,
    "sigma Y2": _STRADDLE, "interval Y2": _STRADDLE,
    "sigma Y3": _STRADDLE, "interval Y3": _STRADDLE,
    "sigma Y4": _STRADDLE, "interval Y4": _STRADDLE,
    "interval Y1": "printed lower bound 8.00 disagrees with its own (12.80, 4.76)",
    "prediction D": "inherits the X41 interval",
    "pct_error A": "printed 8.06% disagrees with the printed difference 1.0035 / 12.78",
    "pct_error D": "inherits the X41 interval",
    "diff D": "inherits the X41 interval",
    "diff A": "observed interval lower bound differs (see interval Y1)",
}

PASS, FAIL, KNOWN_DISCREPANCY = "PASS", "FAIL", "KNOWN-DISCREPANCY"


@dataclass(frozen=True)
class Check:
    name: str
    computed: float
    expected: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return abs(self.computed - self.expected) <= self.tolerance + 1e-12


def _base(name: str) -> str:
    # "interval X11 lower" -> "interval X11"
    parts = name.split()
    return " ".join(parts[:2])


def compare(report: dict) -> list[Check]:
    checks = []
    comps = {row["variable"]: row for row in report["inputs"]}
    for var, probs in PROBABILITIES.items():
        got = [c["probability"] for c in comps[var]["components"]]
        for k, (g, e) in enumerate(zip(got, probs), start=1):
            checks.append(Check(f"probability {var}.{k}", g, e, 0.005))
    moments = {m["variable"]: m for m in report["moments"]}
    for var, (e, s, (lo, hi)) in MOMENTS.items():
        m = moments[var]
        checks.append(Check(f"expected {var}", m["expected"], e, 0.01))
        checks.append(Check(f"sigma {var}", m["sigma"], s, 0.01))
        checks.append(Check(f"interval {var} lower", m["interval"][0], lo, 0.02))
        checks.append(Check(f"interval {var} upper", m["interval"][1], hi, 0.02))
    fit = report["fit"]
    checks.append(Check("step-1 objective", fit["step1_objective"], STEP1_OBJECTIVE, 0.02))
    checks.append(Check("objective", fit["objective"], FIT_OBJECTIVE, 0.02))
    for j, (coef, (lo, hi)) in enumerate(zip(fit["coefficients"], COEFFICIENTS), start=1):
        checks.append(Check(f"coefficient A{j} lower", coef["lower"], lo, 0.02))
        checks.append(Check(f"coefficient A{j} upper", coef["upper"], hi, 0.02))
    checks.append(Check("vertices outside", float(tuple(fit["vertices_outside"]) == VERTICES_OUTSIDE),
                        1.0, 0.0))
    ev = report["evaluation"]
    for row, (lo, hi), pct, diff in zip(ev["rows"], PREDICTIONS, ROW_PCT_ERROR, ROW_DIFF):
        lab = row["label"]
        checks.append(Check(f"prediction {lab} lower", row["predicted"][0], lo, 0.05))
        checks.append(Check(f"prediction {lab} upper", row["predicted"][1], hi, 0.05))
        checks.append(Check(f"diff {lab}", row["abs_diff"], diff, 0.02))
        checks.append(Check(f"pct_error {lab}", 100 * row["pct_error"], pct, 0.1))
    checks.append(Check("coverage", ev["coverage_rate"], COVERAGE, 0.0))
    checks.append(Check("MAPE %", 100 * ev["mape_weight"], MAPE, 0.1))
    checks.append(Check("MSE", ev["mse_weight"], MSE, 0.03))
    t = report["tests"]
    checks.append(Check("t statistic", t["t_stat"], T_STAT, 0.05))
    checks.append(Check("t p-value", t["t_p"], T_P, 0.005))
    checks.append(Check("F statistic", t["anova_F"], F_STAT, 0.1))
    checks.append(Check("F p-value", t["anova_p"], F_P, 0.01))
    return checks


def status_of(check: Check) -> str:
    if check.passed:
        return PASS
    return KNOWN_DISCREPANCY if _base(check.name) in KNOWN else FAIL


def format_checks(checks: list[Check], verbose: bool = False) -> str:
    lines = [f"{'quantity':<26} {'computed':>11} {'reference':>11} {'tol':>7}  status"]
    for c in checks:
        st = status_of(c)
        if not verbose and st == PASS:
            continue
        line = f"{c.name:<26} {c.computed:>11.4f} {c.expected:>11.4f} {c.tolerance:>7.3f}  {st}"
        if st == KNOWN_DISCREPANCY:
            line += f"  ({KNOWN[_base(c.name)]})"
        lines.append(line)
    counts = {s: sum(status_of(c) == s for c in checks) for s in (PASS, KNOWN_DISCREPANCY, FAIL)}
    lines.append(f"{counts[PASS]} pass, {counts[KNOWN_DISCREPANCY]} known discrepancies, "
                 f"{counts[FAIL]} fail")
    return "\n".join(lines) + "\n"
