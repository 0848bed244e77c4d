"""Plain-text linear programs for the ``lp-solve`` debug command.

Format (``#`` starts a comment)::

    vars a1_lo a1_hi a2_lo a2_hi
    free a1_lo a1_hi a2_lo a2_hi
    min -1 1 -1 1
    width1: -1 1 0 0 >= 0
    4.19 0 2.92 0 <= 8.00

``vars`` is optional (defaults to x1..xn); variables are nonnegative unless
listed after ``free``.  Each constraint row gives one coefficient per
variable, a relation (``<=``, ``>=``, ``=``) and the bound, optionally
prefixed by ``name:``.
"""

from __future__ import annotations

from pathlib import Path

from .io import InputError
from .lp import EQ, FREE, GE, LE, NONNEG, LinearProgram, LpSolution

_RELATIONS = {"<=": LE, ">=": GE, "=": EQ, "==": EQ}


def _number(tok: str, source, line, col) -> float:
    try:
        return float(tok)
    except ValueError:
        raise InputError(f"expected a number, got {tok!r}", source, line, col) from None


def _tokens(text: str):
    # (token, column) pairs, columns 1-based
    out, col = [], 0
    for part in text.split(" "):
        if part:
            out.append((part, col + 1))
        col += len(part) + 1
    return out


def parse_lp(text: str, source: str = "<lp>") -> LinearProgram:
    names = None
    free: list[tuple[str, int, int]] = []
    objective = None
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].replace("\t", " ").rstrip()
        if not line.strip():
            continue
        toks = _tokens(line)
        head = toks[0][0].lower()
        if head == "vars":
            if names is not None:
                raise InputError("vars declared twice", source, line_no, toks[0][1])
            names = [t for t, _ in toks[1:]]
            if not names or len(set(names)) != len(names):
                raise InputError("vars needs distinct names", source, line_no, toks[0][1])
        elif head == "free":
            free += [(t, line_no, c) for t, c in toks[1:]]
        elif head in ("min", "minimize"):
            if objective is not None:
                raise InputError("objective given twice", source, line_no, toks[0][1])
            objective = [_number(t, source, line_no, c) for t, c in toks[1:]]
        else:
            name = ""
            if toks[0][0].endswith(":"):
                name = toks[0][0][:-1]
                toks = toks[1:]
            rel_at = [k for k, (t, _) in enumerate(toks) if t in _RELATIONS]
            if len(rel_at) != 1:
                raise InputError("constraint needs exactly one of <=, >=, =", source, line_no,
                                 toks[0][1] if toks else 1)
            k = rel_at[0]
            if k != len(toks) - 2:
                raise InputError("constraint must end with '<relation> <bound>'", source, line_no,
                                 toks[k][1])
            coefs = [_number(t, source, line_no, c) for t, c in toks[:k]]
            bound = _number(toks[-1][0], source, line_no, toks[-1][1])
            rows.append((line_no, coefs, _RELATIONS[toks[k][0]], bound, name))
    if objective is None:
        raise InputError("missing 'min' objective line", source)
    n = len(objective)
    if names is None:
        names = [f"x{k + 1}" for k in range(n)]
    elif len(names) != n:
        raise InputError(f"{len(names)} vars but objective has {n} coefficients", source)
    kinds = [NONNEG] * n
    for nm, line_no, col in free:
        if nm not in names:
            raise InputError(f"unknown variable {nm!r}", source, line_no, col)
        kinds[names.index(nm)] = FREE
    prog = LinearProgram(objective, kinds=kinds, names=names)
    for line_no, coefs, rel, bound, name in rows:
        if len(coefs) != n:
            raise InputError(f"constraint has {len(coefs)} coefficients, expected {n}",
                             source, line_no)
        prog.add(coefs, rel, bound, name)
    return prog


def load_lp(path) -> LinearProgram:
    path = Path(path)
    return parse_lp(path.read_text(encoding="utf-8"), str(path))


def format_lp(prog: LinearProgram) -> str:
    lines = ["vars " + " ".join(prog.names)]
    free = [nm for nm, k in zip(prog.names, prog.kinds) if k == FREE]
    if free:
        lines.append("free " + " ".join(free))
    lines.append("min " + " ".join(repr(v) for v in prog.objective))
    for con in prog.constraints:
        prefix = f"{con.name}: " if con.name else ""
        body = " ".join(repr(v) for v in con.coefficients)
        lines.append(f"{prefix}{body} {con.relation} {con.bound!r}")
    return "\n".join(lines) + "\n"


def format_solution(prog: LinearProgram, sol: LpSolution) -> str:
    lines = [f"status: {sol.status}"]
    if sol.optimal:
        lines.append(f"objective: {sol.objective:.10g}")
        width = max(len(n) for n in prog.names)
        for nm, v in zip(prog.names, sol.values):
            lines.append(f"  {nm:<{width}} = {v:.10g}")
    return "\n".join(lines) + "\n"
