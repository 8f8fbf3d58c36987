"""Entropic inequality suites over dichotomic probabilities.

Every probability extracted from a state carries a nonnegative binary
(von Neumann) entropy, and any ordered pair of them a nonnegative Tsallis
relative entropy. Both suites also run on raw Hermitian arrays so the
audit path can flag out-of-range probabilities of near-states instead of
silently clamping them.

Conventions: natural logarithms, 0 ln 0 = 0, and 0^q x^(1-q) = 0 for
q > 0. A zero in the reference distribution with q > 1 drives the Tsallis
value to +infinity; such entries are reported as satisfied-at-infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .codec import raw_probabilities
from .errors import BadFactorization, OutOfRange
from .matcore import DensityMatrix
from .reduction import Factorization, block_decompose
from .report import InequalityReport

PROB_TOL = 1e-10
Q_MAX = 10.0


@dataclass(frozen=True)
class EntropyParams:
    """Tsallis deformation parameter, q in (0, 1) or (1, Q_MAX]."""

    q: float

    def __post_init__(self):
        if not (0.0 < self.q <= Q_MAX) or self.q == 1.0:
            raise OutOfRange(f"q must be in (0, 1) or (1, {Q_MAX}], got {self.q}")


def dichotomic_entropy(p: float) -> float:
    """Binary entropy -[p ln p + (1-p) ln(1-p)], zero at the endpoints."""
    if not (0.0 <= p <= 1.0):
        raise OutOfRange(f"probability {p!r} outside [0, 1]")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -(p * math.log(p) + (1.0 - p) * math.log(1.0 - p))


def dichotomic_kl(p: float, r: float) -> float:
    """KL divergence between (p, 1-p) and (r, 1-r); +inf on support loss."""
    total = 0.0
    for a, b in ((p, r), (1.0 - p, 1.0 - r)):
        if a == 0.0:
            continue
        if b == 0.0:
            return math.inf
        total += a * math.log(a / b)
    return total


def tsallis_relative(p: float, r: float, q: float) -> float:
    """Tsallis relative entropy between (p, 1-p) and (r, 1-r).

    (q - 1)^-1 [p^q r^(1-q) + (1-p)^q (1-r)^(1-q) - 1], nonnegative for
    q > 0, q != 1, and +inf when r has a zero where p does not and q > 1.
    """
    moment = 0.0
    for a, b in ((p, r), (1.0 - p, 1.0 - r)):
        if a == 0.0:
            continue
        if b == 0.0:
            if q > 1.0:
                return math.inf
            continue  # a^q * b^(1-q) -> a^q * 0^(positive) = 0
        moment += a**q * b ** (1.0 - q)
    return (moment - 1.0) / (q - 1.0)


def _plane_probability(p1, p2, p3, j: int, k: int, axis: int) -> float:
    if axis == 1:
        return p1[(j, k)]
    if axis == 2:
        return p2[(j, k)]
    return p3[j]


def _range_violation(report: InequalityReport, name: str, value: float) -> bool:
    """Record an out-of-range probability as a violated entry."""
    dist = max(-value, value - 1.0)
    if dist > PROB_TOL:
        report.add(name, value, 0.0, -dist)
        return True
    return False


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


def qubit_matrix_forms(off_diagonal: complex) -> tuple[float, float]:
    """Matrix-element forms of the two-level entropy bounds (both <= 0).

    Each form is ln sqrt((1/2 - u)(1/2 + u)) + u ln((1/2 + u)/(1/2 - u))
    with u the real part for the first and the imaginary part for the
    second, i.e. exactly the negated binary entropy of that axis'
    dichotomic distribution.
    """

    def form(u: float) -> float:
        lo, hi = 0.5 - u, 0.5 + u
        if lo <= 0.0 or hi <= 0.0:
            return 0.0  # endpoint limit
        return math.log(math.sqrt(lo * hi)) + u * math.log(hi / lo)

    return form(float(off_diagonal.real)), form(float(off_diagonal.imag))


def qubit_cross_term_diagnostic(off_diagonal: complex) -> float:
    """Imaginary-part radical paired with the real-part log ratio.

    Diagnostic variant only: it breaks the pairing that makes each form a
    negated binary entropy, so it is computed but never asserted.
    """
    y = float(off_diagonal.imag)
    x = float(off_diagonal.real)
    lo_y, hi_y = 0.5 - y, 0.5 + y
    lo_x, hi_x = 0.5 - x, 0.5 + x
    if lo_y <= 0.0 or hi_y <= 0.0 or lo_x <= 0.0 or hi_x <= 0.0:
        return 0.0
    return math.log(math.sqrt(lo_y * hi_y)) + y * math.log(hi_x / lo_x)


def vn_suite_from_matrix(mat: np.ndarray) -> InequalityReport:
    """Binary-entropy positivity for every (plane, axis) probability."""
    n = mat.shape[0]
    p1, p2, p3 = raw_probabilities(mat)
    report = InequalityReport()
    for j in range(1, n):
        for k in range(j + 1, n + 1):
            for axis in (1, 2, 3):
                value = _plane_probability(p1, p2, p3, j, k, axis)
                name = f"vn(j={j},k={k},a={axis})"
                if _range_violation(report, name, value):
                    continue
                entropy = dichotomic_entropy(_clamp(value))
                report.add(name, entropy, 0.0, entropy)
    if n == 2:
        re_form, im_form = qubit_matrix_forms(complex(mat[0, 1]))
        report.add("qubit_matrix_re", re_form, 0.0, -re_form)
        report.add("qubit_matrix_im", im_form, 0.0, -im_form)
    return report


def vn_inequality_suite(rho: DensityMatrix) -> InequalityReport:
    """Entropy-positivity suite of a validated state."""
    return vn_suite_from_matrix(rho.entries)


def tsallis_suite_from_matrix(
    mat: np.ndarray, a: int, b: int, params: EntropyParams
) -> InequalityReport:
    """Per-plane Tsallis relative entropy between two axis distributions."""
    if a == b or a not in (1, 2, 3) or b not in (1, 2, 3):
        raise OutOfRange(f"axes must be distinct members of (1, 2, 3), got ({a}, {b})")
    n = mat.shape[0]
    p1, p2, p3 = raw_probabilities(mat)
    report = InequalityReport()
    q = params.q
    for j in range(1, n):
        for k in range(j + 1, n + 1):
            pa = _plane_probability(p1, p2, p3, j, k, a)
            pb = _plane_probability(p1, p2, p3, j, k, b)
            name = f"tsallis(j={j},k={k},a={a},b={b},q={q:g})"
            if _range_violation(report, name, pa) or _range_violation(
                report, f"{name}[ref]", pb
            ):
                continue
            value = tsallis_relative(_clamp(pa), _clamp(pb), q)
            report.add(name, value, 0.0, value)
    return report


def tsallis_inequality(
    rho: DensityMatrix, a: int, b: int, params: EntropyParams
) -> InequalityReport:
    """Tsallis relative-entropy suite of a validated state."""
    return tsallis_suite_from_matrix(rho.entries, a, b, params)


def reduced_suite_from_matrix(
    mat: np.ndarray, f: Factorization, q_values=(0.5, 2.0, 5.0)
) -> InequalityReport:
    """Two-level inequality set on the block-trace reduction.

    Evaluates the matrix-element entropy forms and the Tsallis pair
    directly from the block traces of the n = 2 partition, without going
    through the reduction module.
    """
    if f.n != 2:
        raise BadFactorization(f"reduced suite needs n = 2, got n = {f.n}")
    traces = block_decompose(mat, f).block_traces()
    off = complex(traces[0, 1])
    re_form, im_form = qubit_matrix_forms(off)
    report = InequalityReport()
    report.add("reduced_matrix_re", re_form, 0.0, -re_form)
    report.add("reduced_matrix_im", im_form, 0.0, -im_form)
    pa = _clamp(0.5 + off.real)
    pb = _clamp(0.5 - off.imag)
    for q in q_values:
        value = tsallis_relative(pa, pb, EntropyParams(q).q)
        report.add(f"reduced_tsallis(q={q:g})", value, 0.0, value)
    return report


def reduced_state_inequalities(
    rho: DensityMatrix, f: Factorization, q_values=(0.5, 2.0, 5.0)
) -> InequalityReport:
    """Entropy bounds of the two-level reduction of a validated state."""
    return reduced_suite_from_matrix(rho.entries, f, q_values)
