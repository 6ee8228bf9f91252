"""Empirical verification of the slope bound over samples of rational points.

For every sampled point outside the certificate's bad locus ({F = 0} or Y
itself) the harness compares the GCD height against slope * Weil height and
reports the excess.  The bound's additive constant is not asserted a priori;
it is measured, and regression baselines freeze what was measured.

Everything is deterministic: exhaustive samples enumerate canonical
representatives directly (first nonzero coordinate positive, gcd one) in a
fixed nested order, random samples are reproducible from the seed, and
report files are byte-stable.
"""

from __future__ import annotations

import csv
import json
import random
from fractions import Fraction
from itertools import product
from math import gcd
from typing import NamedTuple

from .auxdiv import certificate_digest
from .heights import HeightEngine, normalize_point
from .polyalgebra import compile_evaluator


class HarnessError(ValueError):
    pass


class SampleOverflowError(HarnessError):
    """Exhaustive enumeration would exceed the configured candidate cap."""


class AllExcludedError(HarnessError):
    """Every sampled point fell in the excluded locus."""


DEFAULT_CANDIDATE_CAP = 100_000_000


class SampleSpec(NamedTuple):
    n: int
    height_bound: int
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def as_dict(self):
        return {"n": self.n, "height_bound": self.height_bound,
                "mode": self.mode, "count": self.count, "seed": self.seed}


def _exhaustive_candidates(nvars, bound):
    total = 0
    width = 2 * bound + 1
    for k in range(nvars):
        total += bound * width ** (nvars - k - 1)
    return total


def iter_sample_points(spec, candidate_cap=DEFAULT_CANDIDATE_CAP):
    """Yield canonical points in the documented deterministic order.

    Exhaustive mode: grouped by the position k of the first nonzero
    coordinate (ascending), that coordinate running over 1..H, the remaining
    coordinates in lexicographic order over [-H..H]; only gcd-one tuples are
    emitted, so every canonical point appears exactly once.
    """
    nvars = spec.n + 1
    H = spec.height_bound
    if H < 1:
        raise HarnessError("height_bound must be >= 1")
    if spec.mode == "exhaustive":
        if _exhaustive_candidates(nvars, H) > candidate_cap:
            raise SampleOverflowError(
                f"exhaustive enumeration at height_bound {H} exceeds the "
                f"candidate cap {candidate_cap}")
        rng_values = range(-H, H + 1)
        for k in range(nvars):
            zeros = (0,) * k
            tail = nvars - k - 1
            if tail == 0:
                yield zeros + (1,)
                continue
            for lead in range(1, H + 1):
                for rest in product(rng_values, repeat=tail):
                    if gcd(lead, *rest) == 1:
                        yield zeros + (lead,) + rest
    elif spec.mode == "random":
        if spec.count < 1:
            raise HarnessError("random mode needs count >= 1")
        rng = random.Random(spec.seed)
        seen = set()
        attempts = 0
        max_attempts = 1000 + 50 * spec.count
        while len(seen) < spec.count:
            attempts += 1
            if attempts > max_attempts:
                raise HarnessError(
                    f"could not draw {spec.count} distinct points at "
                    f"height_bound {H}")
            raw = tuple(rng.randint(-H, H) for _ in range(nvars))
            if not any(raw):
                continue
            pt = normalize_point(raw)
            if pt not in seen:
                seen.add(pt)
                yield pt
    else:
        raise HarnessError(f"unknown mode {spec.mode!r}")


def sample_points(spec, candidate_cap=DEFAULT_CANDIDATE_CAP):
    return list(iter_sample_points(spec, candidate_cap))


class ReportRow(NamedTuple):
    point: tuple
    weil: float
    gcd_finite: float
    gcd_arch: float
    gcd_total: float
    slope_bound: float
    excess: float      # None on excluded rows
    excluded: bool


def iter_evaluate_bound(cert, points):
    """Evaluate the bound pointwise; generator flavor of evaluate_bound so
    exhaustive runs never hold all rows at once."""
    engine = HeightEngine(cert.ideal)
    f_int = cert.F.scale(cert.F.denominator_lcm())
    f_eval = compile_evaluator(f_int)
    slope = cert.m / cert.r
    breakdown = engine.breakdown
    for pt in points:
        b = breakdown(pt)
        excluded = b.vanishing_flag or f_eval(*pt) == 0
        sb = slope * b.weil
        yield ReportRow(
            point=pt, weil=b.weil, gcd_finite=b.gcd_finite,
            gcd_arch=b.gcd_arch, gcd_total=b.gcd_total, slope_bound=sb,
            excess=None if excluded else b.gcd_total - sb,
            excluded=excluded)


def evaluate_bound(cert, points):
    return list(iter_evaluate_bound(cert, points))


class Summary(NamedTuple):
    n_points: int
    n_excluded: int
    max_excess: float
    mean_excess: float
    max_ratio: float
    max_excess_point: tuple


def summarize(rows):
    """Deterministic fold over report rows; raises AllExcludedError when no
    row carries an excess."""
    n_points = 0
    n_excluded = 0
    max_excess = None
    max_excess_point = None
    sum_excess = 0.0
    max_ratio = 0.0
    for row in rows:
        n_points += 1
        if row.excluded:
            n_excluded += 1
            continue
        if max_excess is None or row.excess > max_excess:
            max_excess = row.excess
            max_excess_point = row.point
        sum_excess += row.excess
        if row.weil > 0.0:
            ratio = row.gcd_total / row.weil
            if ratio > max_ratio:
                max_ratio = ratio
    if max_excess is None:
        raise AllExcludedError("all sampled points were excluded")
    return Summary(
        n_points=n_points, n_excluded=n_excluded, max_excess=max_excess,
        mean_excess=sum_excess / (n_points - n_excluded),
        max_ratio=max_ratio, max_excess_point=max_excess_point)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

def _fmt(x):
    if x is None:
        return ""
    return f"{x:.12g}"


def point_str(pt):
    return ":".join(str(c) for c in pt)


def write_report_csv(path, rows):
    """Stream rows to CSV; returns the number of rows written."""
    count = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["point", "weil", "gcd_finite", "gcd_arch",
                         "gcd_total", "slope_bound", "excess", "excluded"])
        for row in rows:
            writer.writerow([
                point_str(row.point), _fmt(row.weil), _fmt(row.gcd_finite),
                _fmt(row.gcd_arch), _fmt(row.gcd_total),
                _fmt(row.slope_bound), _fmt(row.excess),
                "true" if row.excluded else "false"])
            count += 1
    return count


def summary_payload(summary, spec, cert):
    return {
        "slope": f"{Fraction(cert.m, cert.r)}",
        "coefficient": f"{cert.coefficient:.12g}",
        "n_points": summary.n_points,
        "n_excluded": summary.n_excluded,
        "max_excess": float(f"{summary.max_excess:.12g}"),
        "mean_excess": float(f"{summary.mean_excess:.12g}"),
        "max_ratio": float(f"{summary.max_ratio:.12g}"),
        "max_excess_point": point_str(summary.max_excess_point),
        "spec": spec.as_dict(),
        "certificate_digest": certificate_digest(cert),
        "assumptions": [
            "Y irreducible (user-asserted, not verified)",
            "generators used as given up to denominator clearing",
        ],
    }


def write_summary_json(path, summary, spec, cert):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary_payload(summary, spec, cert), fh, sort_keys=True,
                  indent=2)
        fh.write("\n")
