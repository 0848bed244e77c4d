"""Interval-coefficient linear regression on one-sigma confidence intervals.

The model is ``Y_i = sum_j A_j * I_ij`` where every ``A_j = [lower_j, upper_j]``
is an interval coefficient and ``I_ij`` the confidence interval of input ``j``
for observation ``i``.  Fuzziness ``sum_j (upper_j - lower_j)`` is minimised
subject to the predicted interval containing each observed output interval.

Because an interval product depends on the signs of both factors, the fit is
a sign-case heuristic: solve a crisp LP on the centers, read off coefficient
signs, re-pose the LP with the matching product formulas, and iterate until
the signs settle.  Vertices of the input boxes are then checked and violated
ones fed back as extra constraints.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import lp as lpmod
from .fuzzy_random import (DiscreteFuzzyRandomVariable, Interval, expected_value,
                           one_sigma_interval)
from .lp import FREE, GE, LE, LinearProgram, LpSolution

MAX_VERTEX_DIM = 20
MAX_EXHAUSTIVE_DIM = 10
IMPROVE_TOL = 1e-9
CHECK_TOL = 1e-9

PAPER_MODE = "paper"
FULL_MODE = "full-inclusion"
VERTEX_MODES = (PAPER_MODE, FULL_MODE)

SIGN_STABLE = "sign-stable"
MAX_ITERATIONS = "max-iterations"
AUGMENTATION_CONVERGED = "augmentation-converged"


class RegressionError(ValueError):
    pass


class InfeasibleFit(RegressionError):
    pass


@dataclass(frozen=True)
class RegressionProblem:
    inputs: tuple[tuple[Interval, ...], ...]
    centers: tuple[tuple[float, ...], ...]
    outputs: tuple[Interval, ...]
    h_level: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(tuple(r) for r in self.inputs))
        object.__setattr__(self, "centers", tuple(tuple(float(v) for v in r) for r in self.centers))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        n = len(self.outputs)
        if n < 1:
            raise RegressionError("need at least one observation")
        if len(self.inputs) != n or len(self.centers) != n:
            raise RegressionError("inputs, centers and outputs disagree on the number of observations")
        j = len(self.inputs[0])
        if j < 1:
            raise RegressionError("need at least one input attribute")
        for i, (row, cen) in enumerate(zip(self.inputs, self.centers)):
            if len(row) != j or len(cen) != j:
                raise RegressionError(f"observation {i + 1} has the wrong number of attributes")
            for iv, c in zip(row, cen):
                if not iv.lower - CHECK_TOL <= c <= iv.upper + CHECK_TOL:
                    raise RegressionError(f"center {c} lies outside its interval {iv}")
        if not 0.0 <= self.h_level < 1.0:
            raise RegressionError(f"h level must lie in [0, 1), got {self.h_level}")

    @property
    def n_obs(self) -> int:
        return len(self.outputs)

    @property
    def n_attrs(self) -> int:
        return len(self.inputs[0])


@dataclass(frozen=True)
class FuzzyCoefficient:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper + CHECK_TOL:
            raise RegressionError(f"coefficient lower {self.lower} exceeds upper {self.upper}")

    @property
    def center(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __str__(self):
        return f"[{self.center:.2f}, {self.lower:.2f}, {self.upper:.2f}]"


@dataclass(frozen=True)
class SignCase:
    """Product case of a data interval and a coefficient interval.

    ``data`` is ``I`` (nonnegative), ``II`` (nonpositive) or ``III``
    (straddling zero); ``coef`` is ``a`` (nonnegative), ``b`` (straddling) or
    ``c`` (nonpositive).
    """

    data: str
    coef: str

    @property
    def label(self) -> str:
        # the published case table swaps the b/c letters in the straddling-data block
        if self.data == "III":
            return "III-" + {"a": "a", "b": "c", "c": "b"}[self.coef]
        return f"{self.data}-{self.coef}"


def data_sign(iv: Interval) -> str:
    if iv.lower >= 0:
        return "I"
    if iv.upper <= 0:
        return "II"
    return "III"


def coef_sign(lower: float, upper: float) -> str:
    if lower >= 0:
        return "a"
    if upper <= 0:
        return "c"
    return "b"


def classify(coef: FuzzyCoefficient, data: Interval) -> SignCase:
    return SignCase(data_sign(data), coef_sign(coef.lower, coef.upper))


# Linear endpoint terms per case: ((k_lower, k_upper) for the product's lower
# end, same for its upper end), each evaluated as k_lower*a_lo + k_upper*a_hi.
# Entries are functions of (e_lo, e_hi).
_TERMS = {
    ("I", "a"): lambda el, eh: ((el, 0.0), (0.0, eh)),
    ("I", "b"): lambda el, eh: ((eh, 0.0), (0.0, eh)),
    ("I", "c"): lambda el, eh: ((eh, 0.0), (0.0, el)),
    ("II", "a"): lambda el, eh: ((0.0, el), (eh, 0.0)),
    ("II", "b"): lambda el, eh: ((0.0, el), (el, 0.0)),
    ("II", "c"): lambda el, eh: ((0.0, eh), (el, 0.0)),
    ("III", "a"): lambda el, eh: ((0.0, el), (0.0, eh)),
    ("III", "c"): lambda el, eh: ((eh, 0.0), (el, 0.0)),
}


def _straddle_terms(el, eh, ref: FuzzyCoefficient | None):
    # exact product is [min(lo*eh, hi*el), max(lo*el, hi*eh)]; linearise by
    # keeping whichever term is active at the reference coefficient
    lo_opts = ((eh, 0.0), (0.0, el))
    hi_opts = ((el, 0.0), (0.0, eh))
    if ref is None:
        return lo_opts[0], hi_opts[1]

    def val(t):
        return t[0] * ref.lower + t[1] * ref.upper

    return min(lo_opts, key=val), max(hi_opts, key=val)


def endpoint_terms(case: SignCase, data: Interval, ref: FuzzyCoefficient | None = None):
    if (case.data, case.coef) == ("III", "b"):
        return _straddle_terms(data.lower, data.upper, ref)
    return _TERMS[(case.data, case.coef)](data.lower, data.upper)


def case_product(coef: FuzzyCoefficient, data: Interval) -> Interval:
    """Interval product ``A * I`` evaluated through its sign case."""
    case = classify(coef, data)
    if (case.data, case.coef) == ("III", "b"):
        lo = min(coef.lower * data.upper, coef.upper * data.lower)
        hi = max(coef.lower * data.lower, coef.upper * data.upper)
        return Interval(lo, hi)
    (kl, ku), (hl, hu) = endpoint_terms(case, data)
    return Interval(kl * coef.lower + ku * coef.upper, hl * coef.lower + hu * coef.upper)


def crisp_terms(v: float):
    """Lower/upper endpoint terms of ``[lo, hi] * v`` for a crisp ``v``."""
    if v >= 0:
        return (v, 0.0), (0.0, v)
    return (0.0, v), (v, 0.0)


# -- problem construction ---------------------------------------------------

def build_problem(inputs: Sequence[Sequence[DiscreteFuzzyRandomVariable]],
                  outputs: Sequence[DiscreteFuzzyRandomVariable],
                  h: float = 0.0) -> RegressionProblem:
    if len(inputs) != len(outputs):
        raise RegressionError(
            f"{len(inputs)} input rows but {len(outputs)} outputs")
    widths = {len(row) for row in inputs}
    if len(widths) != 1:
        raise RegressionError("every observation needs the same number of inputs")
    ivs = tuple(tuple(one_sigma_interval(x) for x in row) for row in inputs)
    cen = tuple(tuple(expected_value(x) for x in row) for row in inputs)
    outs = tuple(one_sigma_interval(y) for y in outputs)
    return RegressionProblem(ivs, cen, outs, h)


def _var_names(j: int):
    names = []
    for k in range(1, j + 1):
        names += [f"a{k}_lo", f"a{k}_hi"]
    return names


def _base_lp(problem: RegressionProblem) -> LinearProgram:
    j = problem.n_attrs
    obj = []
    for _ in range(j):
        obj += [-1.0, 1.0]
    prog = LinearProgram(obj, kinds=(FREE,) * (2 * j), names=_var_names(j))
    for k in range(j):
        row = [0.0] * (2 * j)
        row[2 * k], row[2 * k + 1] = -1.0, 1.0
        prog.add(row, GE, 0.0, f"width{k + 1}")
    return prog


def _row(terms) -> list[float]:
    row = []
    for kl, ku in terms:
        row += [kl, ku]
    return row


def initial_lp(problem: RegressionProblem) -> LinearProgram:
    """Crisp-center LP: ``sum lo_j e_ij <= Ylo_i`` and ``sum hi_j e_ij >= Yhi_i``."""
    prog = _base_lp(problem)
    for i, (cen, y) in enumerate(zip(problem.centers, problem.outputs), start=1):
        lows, highs = zip(*(crisp_terms(e) for e in cen))
        prog.add(_row(lows), LE, y.lower, f"obs{i}_lower")
        prog.add(_row(highs), GE, y.upper, f"obs{i}_upper")
    return prog


def signed_lp(problem: RegressionProblem, signs: Sequence[str],
              reference: Sequence[FuzzyCoefficient] | None = None) -> LinearProgram:
    """Inclusion LP with interval products written out for the given coefficient signs.

    ``signs[j]`` is ``a``/``b``/``c``; sign bounds keeping each coefficient in
    that orthant are added so that the product formulas stay exact.
    """
    j = problem.n_attrs
    if len(signs) != j:
        raise RegressionError(f"need {j} coefficient signs, got {len(signs)}")
    prog = _base_lp(problem)
    for i, (row, y) in enumerate(zip(problem.inputs, problem.outputs), start=1):
        lows, highs = [], []
        for k, iv in enumerate(row):
            ref = reference[k] if reference is not None else None
            lo_t, hi_t = endpoint_terms(SignCase(data_sign(iv), signs[k]), iv, ref)
            lows.append(lo_t)
            highs.append(hi_t)
        prog.add(_row(lows), LE, y.lower, f"obs{i}_lower")
        prog.add(_row(highs), GE, y.upper, f"obs{i}_upper")
    for k, s in enumerate(signs):
        lo_row = [0.0] * (2 * j)
        lo_row[2 * k] = 1.0
        hi_row = [0.0] * (2 * j)
        hi_row[2 * k + 1] = 1.0
        if s == "a":
            prog.add(lo_row, GE, 0.0, f"a{k + 1}_lo_nonneg")
        elif s == "c":
            prog.add(hi_row, LE, 0.0, f"a{k + 1}_hi_nonpos")
        elif s == "b":
            prog.add(lo_row, LE, 0.0, f"a{k + 1}_lo_nonpos")
            prog.add(hi_row, GE, 0.0, f"a{k + 1}_hi_nonneg")
        else:
            raise RegressionError(f"unknown coefficient sign {s!r}")
    return prog


@dataclass(frozen=True)
class Vertex:
    index: int
    observation: int
    point: tuple[float, ...]


def vertex_set(problem: RegressionProblem) -> list[Vertex]:
    """All ``N * 2**J`` corners of the input boxes, numbered from 1.

    Within an observation the first attribute varies slowest, lower endpoint
    before upper.
    """
    if problem.n_attrs > MAX_VERTEX_DIM:
        raise RegressionError(
            f"{problem.n_attrs} attributes would need 2^{problem.n_attrs} vertices per observation; "
            f"vertex enumeration is limited to {MAX_VERTEX_DIM} attributes, "
            "use the heuristic fit without vertex checks (vertex_mode='none')")
    out = []
    idx = 1
    for i, row in enumerate(problem.inputs):
        for point in itertools.product(*((iv.lower, iv.upper) for iv in row)):
            out.append(Vertex(idx, i, tuple(point)))
            idx += 1
    return out


def _vertex_bounds(coefs: Sequence[FuzzyCoefficient], point: Sequence[float]):
    lo = math.fsum(min(a.lower * v, a.upper * v) for a, v in zip(coefs, point))
    hi = math.fsum(max(a.lower * v, a.upper * v) for a, v in zip(coefs, point))
    return lo, hi


def vertex_violations(coefs, problem, vertex: Vertex, mode: str = PAPER_MODE):
    """Which sides (``"lower"``, ``"upper"``) of the inclusion fail at ``vertex``."""
    y = problem.outputs[vertex.observation]
    lo, hi = _vertex_bounds(coefs, vertex.point)
    scale = max(1.0, abs(y.lower), abs(y.upper))
    sides = []
    if lo > y.lower + CHECK_TOL * scale:
        sides.append("lower")
    if mode == FULL_MODE and hi < y.upper - CHECK_TOL * scale:
        sides.append("upper")
    return sides


def classify_vertices(coefs: Sequence[FuzzyCoefficient], problem: RegressionProblem,
                      mode: str = PAPER_MODE):
    """Split the vertices into passing (S1) and failing (S2) index lists.

    ``paper`` mode only checks that the lower regression line lies at or below
    the observed lower bound; ``full-inclusion`` also checks the upper line.
    """
    if mode not in VERTEX_MODES:
        raise RegressionError(f"unknown vertex check mode {mode!r}")
    s1, s2 = [], []
    for v in vertex_set(problem):
        (s2 if vertex_violations(coefs, problem, v, mode) else s1).append(v.index)
    return s1, s2


def vertex_lp(problem: RegressionProblem) -> LinearProgram:
    """Inclusion required at every vertex, both sides."""
    prog = _base_lp(problem)
    for v in vertex_set(problem):
        y = problem.outputs[v.observation]
        lows, highs = zip(*(crisp_terms(x) for x in v.point))
        prog.add(_row(lows), LE, y.lower, f"v{v.index}_lower")
        prog.add(_row(highs), GE, y.upper, f"v{v.index}_upper")
    return prog


# -- fitting ----------------------------------------------------------------

@dataclass(frozen=True)
class FitConfig:
    max_iterations: int = 20
    vertex_mode: str = PAPER_MODE
    step1_tiebreak: bool = True

    def __post_init__(self):
        if self.max_iterations < 1:
            raise RegressionError("max_iterations must be at least 1")
        if self.vertex_mode not in VERTEX_MODES + ("none",):
            raise RegressionError(f"unknown vertex check mode {self.vertex_mode!r}")


@dataclass
class TraceEntry:
    step: str
    program: LinearProgram
    solution: LpSolution
    signs: tuple[str, ...] = ()
    cases: tuple[tuple[str, ...], ...] = ()
    s1: tuple[int, ...] = ()
    s2: tuple[int, ...] = ()
    note: str = ""


@dataclass
class ModelFit:
    coefficients: tuple[FuzzyCoefficient, ...]
    objective: float
    trace: list[TraceEntry]
    terminated_by: str
    signs: tuple[str, ...] = ()
    s1: tuple[int, ...] = ()
    s2: tuple[int, ...] = ()
    notes: list[str] = field(default_factory=list)


def _coefs(values) -> tuple[FuzzyCoefficient, ...]:
    out = []
    for k in range(0, len(values), 2):
        lo, hi = values[k], values[k + 1]
        if lo > hi:  # pivot round-off on a zero-width coefficient
            lo = hi = 0.5 * (lo + hi)
        out.append(FuzzyCoefficient(lo, hi))
    return tuple(out)


def _least_negative_optimum(prog: LinearProgram, sol: LpSolution) -> LpSolution:
    """Among optimal points of ``prog``, pick one minimising total negativity.

    Used on the crisp-center LP whose optimum is typically degenerate; only
    the signs of its solution feed the next step.
    """
    n = prog.n_vars
    obj = [0.0] * n + [1.0] * n
    kinds = tuple(prog.kinds) + (lpmod.NONNEG,) * n
    names = tuple(prog.names) + tuple(f"neg_{nm}" for nm in prog.names)
    aux = LinearProgram(obj, kinds=kinds, names=names)
    for con in prog.constraints:
        aux.add(tuple(con.coefficients) + (0.0,) * n, con.relation, con.bound, con.name)
    slack = IMPROVE_TOL * max(1.0, abs(sol.objective))
    aux.add(tuple(prog.objective) + (0.0,) * n, LE, sol.objective + slack, "optimal_face")
    for k in range(n):
        row = [0.0] * (2 * n)
        row[k], row[n + k] = 1.0, 1.0
        aux.add(row, GE, 0.0, f"neg_{prog.names[k]}")
    res = lpmod.solve(aux)
    if not res.optimal:
        return sol
    values = res.values[:n]
    return LpSolution(sol.status, math.fsum(c * v for c, v in zip(prog.objective, values)),
                      values, sol.iterations + res.iterations)


def _augment(prog: LinearProgram, coefs, problem, s2_vertices, mode) -> LinearProgram:
    aug = LinearProgram(prog.objective, list(prog.constraints), prog.kinds, prog.names)
    for v in s2_vertices:
        y = problem.outputs[v.observation]
        lows, highs = zip(*(crisp_terms(x) for x in v.point))
        sides = vertex_violations(coefs, problem, v, mode)
        if "lower" in sides:
            aug.add(_row(lows), LE, y.lower, f"v{v.index}_lower")
        if "upper" in sides:
            aug.add(_row(highs), GE, y.upper, f"v{v.index}_upper")
    return aug


def _case_grid(problem, signs):
    return tuple(tuple(SignCase(data_sign(iv), s).label for iv, s in zip(row, signs))
                 for row in problem.inputs)


def fit(problem: RegressionProblem, config: FitConfig = FitConfig()) -> ModelFit:
    trace: list[TraceEntry] = []
    notes: list[str] = []

    prog = initial_lp(problem)
    sol = lpmod.solve(prog)
    if not sol.optimal:
        raise InfeasibleFit("no interval-inclusion fit exists: the center LP is " + sol.status)
    if config.step1_tiebreak:
        sol = _least_negative_optimum(prog, sol)
    trace.append(TraceEntry("step1", prog, sol, note="crisp centers"))
    prev = _coefs(sol.values)

    n = 1
    terminated = None
    while True:
        signs = tuple(coef_sign(a.lower, a.upper) for a in prev)
        prog = signed_lp(problem, signs, prev)
        sol = lpmod.solve(prog)
        note = ""
        if not sol.optimal:
            fallback = ("b",) * problem.n_attrs
            note = f"sign pattern {''.join(signs)} {sol.status}; retried with straddling signs"
            notes.append(note)
            signs = fallback
            prog = signed_lp(problem, signs, prev)
            sol = lpmod.solve(prog)
            if not sol.optimal:
                raise InfeasibleFit(
                    "no interval-inclusion fit exists: the signed LP is " + sol.status)
        trace.append(TraceEntry(f"step2.{n}", prog, sol, signs, _case_grid(problem, signs),
                                note=note))
        new = _coefs(sol.values)
        stable = all(b.upper * a.upper >= 0 and b.lower * a.lower >= 0
                     for a, b in zip(prev, new))
        prev = new
        n += 1
        if stable:
            break
        if n >= config.max_iterations:
            terminated = MAX_ITERATIONS
            notes.append(f"signs still changing after {n} trials")
            break

    incumbent, inc_prog, inc_sol = prev, prog, sol
    signs = tuple(coef_sign(a.lower, a.upper) for a in incumbent)
    s1: tuple[int, ...] = ()
    s2: tuple[int, ...] = ()
    if config.vertex_mode != "none":
        rounds = 0
        while True:
            a1, a2 = classify_vertices(incumbent, problem, config.vertex_mode)
            s1, s2 = tuple(a1), tuple(a2)
            trace.append(TraceEntry("step5", inc_prog, inc_sol, signs, s1=s1, s2=s2,
                                    note=f"{len(s2)} vertices outside"))
            if not s2:
                break
            verts = {v.index: v for v in vertex_set(problem)}
            aug = _augment(inc_prog, incumbent, problem, [verts[k] for k in s2],
                           config.vertex_mode)
            aug_sol = lpmod.solve(aug)
            rounds += 1
            improved = (aug_sol.optimal
                        and aug_sol.objective < inc_sol.objective - IMPROVE_TOL)
            if not improved:
                why = (f"augmented LP {aug_sol.status}" if not aug_sol.optimal else
                       f"augmented LP objective {aug_sol.objective:.6g} does not improve "
                       f"on {inc_sol.objective:.6g}")
                trace.append(TraceEntry("step7", aug, aug_sol, signs, s1=s1, s2=s2,
                                        note=why + "; incumbent kept"))
                notes.append(why + "; incumbent kept")
                terminated = terminated or AUGMENTATION_CONVERGED
                break
            trace.append(TraceEntry("step7", aug, aug_sol, signs, s1=s1, s2=s2,
                                    note="augmented solution accepted"))
            incumbent, inc_prog, inc_sol = _coefs(aug_sol.values), aug, aug_sol
            if rounds >= config.max_iterations:
                terminated = terminated or MAX_ITERATIONS
                break

    objective = math.fsum(a.width for a in incumbent)
    return ModelFit(incumbent, objective, trace, terminated or SIGN_STABLE, signs, s1, s2, notes)


def predict(fit_or_coefs, inputs: Sequence[Interval]) -> Interval:
    coefs = fit_or_coefs.coefficients if isinstance(fit_or_coefs, ModelFit) else fit_or_coefs
    if len(coefs) != len(inputs):
        raise RegressionError(f"model has {len(coefs)} coefficients, got {len(inputs)} inputs")
    total = Interval(0.0, 0.0)
    for a, iv in zip(coefs, inputs):
        total = total + case_product(a, iv)
    return total


def exhaustive_fit(problem: RegressionProblem) -> tuple[float, tuple[FuzzyCoefficient, ...] | None]:
    """Global optimum of the interval-inclusion model by trying every sign orthant.

    Exact when no input interval straddles zero (then every product formula is
    linear inside an orthant).  Test oracle only.
    """
    j = problem.n_attrs
    if j > MAX_EXHAUSTIVE_DIM:
        raise RegressionError(f"exhaustive solve is limited to {MAX_EXHAUSTIVE_DIM} attributes")
    if any(data_sign(iv) == "III" for row in problem.inputs for iv in row):
        raise RegressionError("exhaustive solve needs input intervals that do not straddle zero")
    best, best_coefs = math.inf, None
    for signs in itertools.product("abc", repeat=j):
        sol = lpmod.solve(signed_lp(problem, signs))
        if sol.optimal and sol.objective < best:
            best, best_coefs = sol.objective, _coefs(sol.values)
    return best, best_coefs
