"""Survey and run-configuration files.

Survey files are comma-separated with a header row::

    group,category,item,sales_target,r1,r2,...

one row per questionnaire item, responses in the trailing columns.

Run configurations are flat ``key = value`` files (an optional ``[run]``
header is accepted); list values are comma-separated and the lexicon is
written ``term:weight, term:weight, ...``.
"""

from __future__ import annotations

import configparser
import csv
import io
import math
from dataclasses import dataclass, field, fields
from pathlib import Path

from .linguistic import Lexicon, SpreadRule
from .regression import FULL_MODE, PAPER_MODE


class InputError(ValueError):
    """Malformed input file; carries the position when known."""

    def __init__(self, message: str, source: str = "", line: int | None = None,
                 column: int | None = None):
        where = source
        if line is not None:
            where += f":{line}"
            if column is not None:
                where += f":{column}"
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


SURVEY_HEADER = ("group", "category", "item", "sales_target")


@dataclass(frozen=True)
class SurveyRow:
    group: str
    category: str
    item: int
    sales_target: float
    responses: tuple[str, ...]
    line: int = 0


@dataclass(frozen=True)
class SurveyFile:
    rows: tuple[SurveyRow, ...]
    source: str = ""

    @property
    def groups(self) -> list[str]:
        return list(dict.fromkeys(r.group for r in self.rows))

    @property
    def categories(self) -> list[str]:
        return list(dict.fromkeys(r.category for r in self.rows))

    def items(self, group: str, category: str) -> list[SurveyRow]:
        return sorted((r for r in self.rows if r.group == group and r.category == category),
                      key=lambda r: r.item)


def parse_survey(text: str, source: str = "<survey>") -> SurveyFile:
    reader = csv.reader(io.StringIO(text))
    rows = []
    header_seen = False
    widths: dict[str, int] = {}
    seen_keys = set()
    for line_no, rec in enumerate(reader, start=1):
        if not rec or all(not c.strip() for c in rec) or rec[0].lstrip().startswith("#"):
            continue
        rec = [c.strip() for c in rec]
        if not header_seen:
            header_seen = True
            if tuple(c.lower() for c in rec[:4]) != SURVEY_HEADER:
                raise InputError(f"expected header starting {','.join(SURVEY_HEADER)}",
                                 source, line_no, 1)
            continue
        if len(rec) < 5:
            raise InputError("row needs group, category, item, sales_target and at least "
                             "one response", source, line_no, len(rec) + 1)
        group, category = rec[0], rec[1]
        if not group:
            raise InputError("empty group name", source, line_no, 1)
        if not category:
            raise InputError("empty category name", source, line_no, 2)
        try:
            item = int(rec[2])
        except ValueError:
            raise InputError(f"item index {rec[2]!r} is not an integer", source, line_no, 3) from None
        try:
            target = float(rec[3])
        except ValueError:
            raise InputError(f"sales target {rec[3]!r} is not a number", source, line_no, 4) from None
        if not (math.isfinite(target) and target > 0):
            raise InputError(f"sales target must be positive, got {rec[3]}", source, line_no, 4)
        responses = rec[4:]
        while responses and responses[-1] == "":
            responses.pop()
        for k, r in enumerate(responses):
            if not r:
                raise InputError("empty response", source, line_no, 5 + k)
        if not responses:
            raise InputError("row has no responses", source, line_no, 5)
        expected = widths.setdefault(group, len(responses))
        if len(responses) != expected:
            raise InputError(f"group {group!r} has {expected} respondents elsewhere but "
                             f"{len(responses)} here", source, line_no, 5)
        key = (group, category, item)
        if key in seen_keys:
            raise InputError(f"duplicate item {group}/{category}/{item}", source, line_no, 3)
        seen_keys.add(key)
        rows.append(SurveyRow(group, category, item, target, tuple(responses), line_no))
    if not header_seen:
        raise InputError("survey file is empty", source)
    if not rows:
        raise InputError("survey has no data rows", source)
    return SurveyFile(tuple(rows), source)


def load_survey(path) -> SurveyFile:
    path = Path(path)
    return parse_survey(path.read_text(encoding="utf-8"), str(path))


@dataclass(frozen=True)
class RunConfig:
    lexicon: Lexicon = field(default_factory=Lexicon)
    inputs: tuple[str, ...] = ("women", "men")
    output: str = "managers"
    input_spread: SpreadRule = field(default_factory=SpreadRule)
    output_spread: SpreadRule = field(default_factory=lambda: SpreadRule((20.0,), (2.0, 4.0)))
    probability_decimals: int | None = 2
    renormalize: bool = False
    probability_tolerance: float = 0.02
    h_level: float = 0.0
    vertex_check_mode: str = PAPER_MODE
    max_iterations: int = 20

    def __post_init__(self):
        if not self.inputs:
            raise InputError("role map needs at least one input group")
        if not self.output:
            raise InputError("role map needs an output group")
        roles = list(self.inputs) + [self.output]
        if len(set(roles)) != len(roles):
            raise InputError("each group may play only one role")
        if self.vertex_check_mode not in (PAPER_MODE, FULL_MODE, "none"):
            raise InputError(f"unknown vertex_check_mode {self.vertex_check_mode!r}")
        if not 0.0 <= self.h_level < 1.0:
            raise InputError(f"h_level must lie in [0, 1), got {self.h_level}")
        if self.max_iterations < 1:
            raise InputError("max_iterations must be at least 1")
        if self.probability_decimals is not None and self.probability_decimals < 0:
            raise InputError("probability_decimals must be nonnegative")
        if not self.probability_tolerance >= 0:
            raise InputError("probability_tolerance must be nonnegative")

    def check_roles(self, groups):
        present = set(groups)
        roles = set(self.inputs) | {self.output}
        missing = sorted(roles - present)
        extra = sorted(present - roles)
        if missing or extra:
            parts = []
            if missing:
                parts.append("no survey rows for " + ", ".join(missing))
            if extra:
                parts.append("no role for " + ", ".join(extra))
            raise InputError("role map incomplete: " + "; ".join(parts))


_KEYS = {f.name for f in fields(RunConfig)} - {"input_spread", "output_spread"} | {
    "input_spread_thresholds", "input_spread_widths",
    "output_spread_thresholds", "output_spread_widths"}


def _floats(value: str, key: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise InputError(f"{key}: expected comma-separated numbers, got {value!r}") from None


def _bool(value: str, key: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise InputError(f"{key}: expected true/false, got {value!r}")


def _lexicon(value: str) -> Lexicon:
    entries = []
    for part in value.split(","):
        if not part.strip():
            continue
        name, sep, w = part.partition(":")
        if not sep:
            raise InputError(f"lexicon entry {part.strip()!r} must look like term:weight")
        try:
            entries.append((name.strip(), float(w)))
        except ValueError:
            raise InputError(f"lexicon weight {w.strip()!r} is not a number") from None
    try:
        return Lexicon(tuple(entries))
    except ValueError as exc:
        raise InputError(f"lexicon: {exc}") from None


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    if not any(line.strip().startswith("[") for line in text.splitlines()):
        text = "[run]\n" + text
        offset = 1
    else:
        offset = 0
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise InputError(str(exc).splitlines()[0], source,
                         None if line is None else line - offset) from None
    if cp.sections() != ["run"]:
        raise InputError("config must have a single [run] section", source)
    raw = dict(cp["run"])
    unknown = sorted(set(raw) - _KEYS)
    if unknown:
        raise InputError(f"unknown config key(s): {', '.join(unknown)}", source)

    kw = {}
    try:
        if "lexicon" in raw:
            kw["lexicon"] = _lexicon(raw["lexicon"])
        if "inputs" in raw:
            kw["inputs"] = tuple(v.strip() for v in raw["inputs"].split(",") if v.strip())
        if "output" in raw:
            kw["output"] = raw["output"].strip()
        for role in ("input", "output"):
            t, w = raw.get(f"{role}_spread_thresholds"), raw.get(f"{role}_spread_widths")
            if t is not None or w is not None:
                default = getattr(RunConfig(), f"{role}_spread")
                thresholds = _floats(t, f"{role}_spread_thresholds") if t is not None else default.thresholds
                widths = _floats(w, f"{role}_spread_widths") if w is not None else default.widths
                kw[f"{role}_spread"] = SpreadRule(thresholds, widths)
        if "probability_decimals" in raw:
            v = raw["probability_decimals"].strip().lower()
            kw["probability_decimals"] = None if v in ("", "none", "full") else int(v)
        if "renormalize" in raw:
            kw["renormalize"] = _bool(raw["renormalize"], "renormalize")
        for key in ("probability_tolerance", "h_level"):
            if key in raw:
                kw[key] = float(raw[key])
        if "max_iterations" in raw:
            kw["max_iterations"] = int(raw["max_iterations"])
        if "vertex_check_mode" in raw:
            kw["vertex_check_mode"] = raw["vertex_check_mode"].strip()
        return RunConfig(**kw)
    except InputError as exc:
        if str(exc).startswith(source):
            raise
        raise InputError(str(exc), source) from None
    except ValueError as exc:
        raise InputError(str(exc), source) from None


def load_config(path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(encoding="utf-8"), str(path))
