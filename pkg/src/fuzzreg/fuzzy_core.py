"""Triangular fuzzy variables and credibility-theory measures.

A triangular fuzzy number is stored as ``(center; left; right)``.  Besides
possibility / necessity / credibility of ``{X >= r}`` this module computes the
credibility expectation of the *square* of a triangular variable, which is what
the variance of a fuzzy random variable reduces to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

@dataclass(frozen=True)
class TriangularFuzzyNumber:
    center: float
    left: float
    right: float

    def __post_init__(self):
        for v in (self.center, self.left, self.right):
            if not math.isfinite(v):
                raise ValueError(f"non-finite triangle parameter: {self}")
        if not (self.left <= self.center <= self.right):
            raise ValueError(
                f"triangle must satisfy left <= center <= right, got {self}")

    @classmethod
    def symmetric(cls, center: float, spread: float) -> "TriangularFuzzyNumber":
        return cls(center, center - spread, center + spread)

    @property
    def is_crisp(self) -> bool:
        return self.left == self.center == self.right

    def __str__(self):
        return f"({self.center:g}; {self.left:g}; {self.right:g})"


class MeasureTriple(NamedTuple):
    possibility: float
    necessity: float
    credibility: float


def membership(tfn: TriangularFuzzyNumber, x: float) -> float:
    c, lo, hi = tfn.center, tfn.left, tfn.right
    if x < lo or x > hi:
        return 0.0
    if x == c:
        return 1.0
    if x < c:
        return (x - lo) / (c - lo)
    return (hi - x) / (hi - c)


def measures_geq(tfn: TriangularFuzzyNumber, r: float) -> MeasureTriple:
    """Pos, Nec and Cr of the event ``{X >= r}``."""
    c, lo, hi = tfn.center, tfn.left, tfn.right
    if r < lo:
        pos, nec = 1.0, 1.0
    elif r <= c:
        pos, nec = 1.0, 1.0 - membership(tfn, r)
    elif r <= hi:
        pos, nec = membership(tfn, r), 0.0
    else:
        pos, nec = 0.0, 0.0
    return MeasureTriple(pos, nec, 0.5 * (pos + nec))


def measures_lt(tfn: TriangularFuzzyNumber, r: float) -> MeasureTriple:
    """Pos, Nec and Cr of the complementary event ``{X < r}``.

    Written from the mirrored side (sup of the membership left of ``r``) so it
    can serve as a duality check on :func:`measures_geq`.
    """
    c, lo, hi = tfn.center, tfn.left, tfn.right
    # Pos{X < r}: supremum of the membership over (-inf, r)
    if r < lo:
        pos = 0.0
    elif r <= c:
        pos = membership(tfn, r)
    else:
        pos = 1.0
    # Nec{X < r} = 1 - Pos{X >= r}
    if r <= c:
        pos_complement = 1.0
    elif r <= hi:
        pos_complement = membership(tfn, r)
    else:
        pos_complement = 0.0
    nec = 1.0 - pos_complement
    return MeasureTriple(pos, nec, 0.5 * (pos + nec))


def expected_value(tfn: TriangularFuzzyNumber) -> float:
    return (tfn.left + 2.0 * tfn.center + tfn.right) / 4.0


def shift(tfn: TriangularFuzzyNumber, m: float) -> TriangularFuzzyNumber:
    return TriangularFuzzyNumber(tfn.center - m, tfn.left - m, tfn.right - m)


# -- squared variable -------------------------------------------------------

# Root-branch labels: which flank of Y the active root y = +/- sqrt(z) sits on.
CASE_POS_LEFT = 1   # +sqrt(z) on the left flank  [left, center]
CASE_POS_RIGHT = 2  # +sqrt(z) on the right flank [center, right]
CASE_NEG_LEFT = 3   # -sqrt(z) on the left flank
CASE_NEG_RIGHT = 4  # -sqrt(z) on the right flank


@dataclass(frozen=True)
class SquaredPiece:
    """``mu(z) = intercept + slope * sqrt(z)`` on ``[z_lo, z_hi]``."""

    z_lo: float
    z_hi: float
    intercept: float
    slope: float
    case: int
    rising: bool
    s_lo: float = math.nan  # sqrt of the ends, kept unrounded
    s_hi: float = math.nan

    def grade(self, z):
        return self.intercept + self.slope * np.sqrt(z)


@dataclass(frozen=True)
class SquaredProfile:
    source: TriangularFuzzyNumber
    support: tuple[float, float]
    core: float
    pieces: tuple[SquaredPiece, ...]

    @property
    def breakpoints(self) -> tuple[float, ...]:
        pts = {self.support[0], self.core, self.support[1]}
        for p in self.pieces:
            pts.update((p.z_lo, p.z_hi))
        return tuple(sorted(pts))

    def membership(self, z: float) -> float:
        if z == self.core:
            return 1.0
        for p in self.pieces:
            if p.z_lo <= z <= p.z_hi:
                return float(min(1.0, max(0.0, p.grade(z))))
        return 0.0


def _flank_lines(tfn: TriangularFuzzyNumber):
    """Membership as functions of s = sqrt(z) >= 0, one per root branch.

    Each entry is (case, s_lo, s_hi, intercept, slope) meaning the branch is
    active for s in [s_lo, s_hi] with grade intercept + slope * s.
    """
    c, lo, hi = tfn.center, tfn.left, tfn.right
    lines = []
    wl, wr = c - lo, hi - c
    # a flank too narrow to invert is treated as vertical (crisp side)
    if wl > 0 and math.isfinite(1.0 / wl):
        # +s in [lo, c]: (s - lo)/wl
        a, b = max(lo, 0.0), c
        if b > a:
            lines.append((CASE_POS_LEFT, a, b, -lo / wl, 1.0 / wl))
        # -s in [lo, c]  <=>  s in [-c, -lo]: (-s - lo)/wl
        a, b = max(-c, 0.0), -lo
        if b > a:
            lines.append((CASE_NEG_LEFT, a, b, -lo / wl, -1.0 / wl))
    if wr > 0 and math.isfinite(1.0 / wr):
        # +s in [c, hi]: (hi - s)/wr
        a, b = max(c, 0.0), hi
        if b > a:
            lines.append((CASE_POS_RIGHT, a, b, hi / wr, -1.0 / wr))
        # -s in [c, hi]  <=>  s in [-hi, -c]: (hi + s)/wr
        a, b = max(-hi, 0.0), -c
        if b > a:
            lines.append((CASE_NEG_RIGHT, a, b, hi / wr, 1.0 / wr))
    return lines


def square_profile(shifted: TriangularFuzzyNumber) -> SquaredProfile:
    """Piecewise membership of ``Z = Y**2`` from ``mu_Z(z) = max(mu(sqrt z), mu(-sqrt z))``.

    Pieces are monotone in ``z`` and each is linear in ``sqrt(z)``.  Supports
    that straddle zero yield a rising piece starting at ``z = 0`` with a
    positive grade and possibly several falling pieces where the active root
    switches sides.
    """
    c, lo, hi = shifted.center, shifted.left, shifted.right
    core = c * c
    if lo >= 0:
        support = (lo * lo, hi * hi)
    elif hi <= 0:
        support = (hi * hi, lo * lo)
    else:
        support = (0.0, max(lo * lo, hi * hi))

    lines = _flank_lines(shifted)
    cuts = {0.0, abs(lo), abs(c), abs(hi)}
    for i, (_, a1, b1, p1, q1) in enumerate(lines):
        for _, a2, b2, p2, q2 in lines[i + 1:]:
            if q1 != q2:
                s = (p2 - p1) / (q1 - q2)
                if max(a1, a2) < s < min(b1, b2):
                    cuts.add(s)
    s_max = max(abs(lo), abs(hi))
    cuts = sorted(s for s in cuts if 0.0 <= s <= s_max)

    pieces: list[SquaredPiece] = []
    for s0, s1 in zip(cuts, cuts[1:]):
        if s1 - s0 <= 0:
            continue
        mid = 0.5 * (s0 + s1)
        best = None
        for case, a, b, p, q in lines:
            if a <= mid <= b:
                g = p + q * mid
                if best is None or g > best[0]:
                    best = (g, case, p, q)
        if best is None or best[0] <= 0:
            continue
        _, case, p, q = best
        z0, z1 = s0 * s0, s1 * s1
        rising = z1 <= core
        prev = pieces[-1] if pieces else None
        if (prev is not None and prev.case == case and prev.rising == rising
                and prev.z_hi == z0):
            pieces[-1] = SquaredPiece(prev.z_lo, z1, p, q, case, rising, prev.s_lo, s1)
        else:
            pieces.append(SquaredPiece(z0, z1, p, q, case, rising, s0, s1))
    return SquaredProfile(shifted, support, core, tuple(pieces))


def _credibility_geq_vec(profile: SquaredProfile, r: np.ndarray) -> np.ndarray:
    out = np.where(r < profile.support[0], 1.0, 0.0)
    if profile.support[0] == profile.support[1] and profile.pieces == ():
        return np.where(r == profile.core, 0.5, out)
    for p in profile.pieces:
        mask = (r >= p.z_lo) & (r <= p.z_hi)
        g = np.clip(p.grade(np.where(mask, r, p.z_lo)), 0.0, 1.0)
        val = 0.5 * (2.0 - g) if p.rising else 0.5 * g
        out = np.where(mask, val, out)
    return out


def credibility_geq_square(profile: SquaredProfile, r: float) -> float:
    """``Cr{Y**2 >= r}`` for ``r >= 0``."""
    if r < 0:
        raise ValueError(f"squared variable is nonnegative; got r={r}")
    if r == profile.core:
        return 0.5
    return float(_credibility_geq_vec(profile, np.asarray(r, dtype=float)))


def _branch_grade(source: TriangularFuzzyNumber, case: int, s: float) -> float:
    y = s if case in (CASE_POS_LEFT, CASE_POS_RIGHT) else -s
    c, lo, hi = source.center, source.left, source.right
    if case in (CASE_POS_LEFT, CASE_NEG_LEFT):
        return min(1.0, max(0.0, (y - lo) / (c - lo)))
    return min(1.0, max(0.0, (hi - y) / (hi - c)))


def _piece_integral(p: SquaredPiece, source: TriangularFuzzyNumber) -> float:
    # the grade is linear in s = sqrt(z), so with dz = 2 s ds
    # int mu dz = d * (g0 * (s0 + d/3) + g1 * (s0 + 2d/3)),  d = s1 - s0;
    # endpoint grades come straight from the triangle to avoid cancellation
    s0, s1 = p.s_lo, p.s_hi
    d = s1 - s0
    g0 = _branch_grade(source, p.case, s0)
    g1 = _branch_grade(source, p.case, s1)
    grade_area = d * (g0 * (s0 + d / 3.0) + g1 * (s0 + 2.0 * d / 3.0))
    width = p.z_hi - p.z_lo
    if p.rising:
        return 0.5 * (2.0 * width - grade_area)
    return 0.5 * grade_area


def expected_square(shifted: TriangularFuzzyNumber) -> float:
    """``E[Y**2] = integral_0^inf Cr{Y**2 >= r} dr``, exact."""
    profile = square_profile(shifted)
    total = profile.support[0]
    for p in profile.pieces:
        total += _piece_integral(p, shifted)
    return total


def expected_square_quadrature(shifted: TriangularFuzzyNumber,
                               steps: int = 1_000_000) -> float:
    """Trapezoidal approximation of :func:`expected_square`.

    Every breakpoint of the squared profile is a sample point; the constant
    segment below the support contributes exactly its length.
    """
    if steps < 1000:
        raise ValueError("quadrature needs at least 1000 steps")
    profile = square_profile(shifted)
    total = profile.support[0]
    span = profile.support[1] - profile.support[0]
    if span <= 0:
        return total
    for p in profile.pieces:
        width = p.z_hi - p.z_lo
        n = max(16, int(math.ceil(steps * width / span)))
        z = np.linspace(p.z_lo, p.z_hi, n + 1)
        total += float(np.trapezoid(_credibility_geq_vec(profile, z), z))
    return total
