"""Shared fixtures: the documented reference certificate and the exhaustive
height scans that several regression tests fold over (computed once)."""

import pytest

from gcdbound.auxdiv import Certificate, bound_coefficient
from gcdbound.harness import SampleSpec, iter_evaluate_bound, iter_sample_points
from gcdbound.ideals import hilbert_profile, ideal_from_text
from gcdbound.polyalgebra import parse_poly

DIAGONAL_TEXT = "nvars = 3\nx0 - x1\nx1 - x2\n"


@pytest.fixture(scope="session")
def diagonal_certificate():
    """The reference certificate for Y = (1:1:1) in the projective plane:
    slope 1 via m = r = 1 and F = x0 - x1."""
    ideal = ideal_from_text(DIAGONAL_TEXT)
    return Certificate(ideal=ideal, m=1, r=1,
                       F=parse_poly("x0 - x1", 3),
                       coefficient=bound_coefficient(hilbert_profile(ideal)))


class ScanResult:
    __slots__ = ("n_points", "n_excluded", "max_excess", "ratio_violations")

    def __init__(self, n_points, n_excluded, max_excess, ratio_violations):
        self.n_points = n_points
        self.n_excluded = n_excluded
        self.max_excess = max_excess
        self.ratio_violations = ratio_violations


def _scan(cert, height_bound, ratio_threshold):
    n_points = n_excluded = ratio_violations = 0
    max_excess = None
    spec = SampleSpec(n=2, height_bound=height_bound)
    for row in iter_evaluate_bound(cert, iter_sample_points(spec)):
        n_points += 1
        if row.excluded:
            n_excluded += 1
            continue
        if max_excess is None or row.excess > max_excess:
            max_excess = row.excess
        if row.weil > 0.0 and row.gcd_total / row.weil > ratio_threshold:
            ratio_violations += 1
    return ScanResult(n_points, n_excluded, max_excess, ratio_violations)


@pytest.fixture(scope="session")
def exhaustive_scans(diagonal_certificate):
    """Exhaustive scans at heights 10, 25, 50, 100 for the reference
    certificate; the ratio threshold is slope + 0.5."""
    threshold = float(diagonal_certificate.slope) + 0.5
    return {H: _scan(diagonal_certificate, H, threshold)
            for H in (10, 25, 50, 100)}
