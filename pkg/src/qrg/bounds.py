"""Observable lower bound on asymmetry and Fisher entanglement witnesses.

The lower bound trades the full SLD asymmetry for two quadratic
functionals of the state, purity and overlap with a phase-shifted copy,
both measurable on two state copies:

    S_theta(rho, H) = (Tr{rho^2} - Tr{rho U_theta rho U_theta^dag}) / theta^2.

For collective spin generators the per-axis values and their average feed
k-separability entanglement witnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import bell_diagonal_probe, collective_spin, evolve_phase
from .errors import (
    DimensionMismatch,
    NonMonotone,
    NotCrossed,
    ParameterOutOfRange,
    ZeroTheta,
)
from .metrics import asymmetry_sld

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class BoundValue:
    """Evaluated lower bound together with its purity/overlap ingredients."""

    s_theta: float
    theta: float
    purity: float
    overlap: float


def lower_bound(rho: np.ndarray, h: np.ndarray, theta: float) -> BoundValue:
    """Geometric lower bound on the SLD asymmetry at phase step theta."""
    if theta == 0.0:
        raise ZeroTheta("theta must be nonzero")
    if rho.shape != h.shape:
        raise DimensionMismatch(
            f"state dim {rho.shape[0]} != generator dim {h.shape[0]}"
        )
    purity = float(np.trace(rho @ rho).real)
    rho_theta = evolve_phase(rho, h, theta)
    overlap = float(np.trace(rho @ rho_theta).real)
    return BoundValue((purity - overlap) / theta**2, float(theta), purity, overlap)


@dataclass(frozen=True)
class AxisAverage:
    """Per-axis collective-spin values with their mean and plain sum."""

    per_axis: dict[str, float]
    mean: float
    total: float


def _require_qubit_register(rho: np.ndarray, n_qubits: int) -> None:
    if rho.shape[0] != 2**n_qubits:
        raise DimensionMismatch(
            f"state dim {rho.shape[0]} is not a {n_qubits}-qubit register"
        )


def averaged_bound(rho: np.ndarray, n_qubits: int, theta: float) -> AxisAverage:
    """Lower bound averaged over the three collective spin axes.

    Exposes both the arithmetic mean and the plain sum of the axis values;
    the witness layer compares either reading against its threshold.
    """
    _require_qubit_register(rho, n_qubits)
    vals = {
        axis: lower_bound(rho, collective_spin(n_qubits, axis), theta).s_theta
        for axis in AXES
    }
    total = sum(vals.values())
    return AxisAverage(vals, total / 3.0, total)


def averaged_asymmetry(rho: np.ndarray, n_qubits: int) -> AxisAverage:
    """Exact SLD asymmetry averaged over the three collective spin axes."""
    _require_qubit_register(rho, n_qubits)
    vals = {
        axis: asymmetry_sld(rho, collective_spin(n_qubits, axis)).value
        for axis in AXES
    }
    total = sum(vals.values())
    return AxisAverage(vals, total / 3.0, total)


def k_separability_bound(n_qubits: int, k: int) -> float:
    """Largest per-axis asymmetry a k-separable state of N qubits can reach.

    Returns (n k^2 + (N - n k)^2) / 4 with n = floor(N / k); exceeding it
    witnesses that the state is not k-separable.
    """
    if n_qubits < 1:
        raise ParameterOutOfRange(f"n_qubits must be >= 1, got {n_qubits}")
    if not 1 <= k <= n_qubits:
        raise ParameterOutOfRange(f"k must lie in [1, {n_qubits}], got {k}")
    n = n_qubits // k
    return (n * k**2 + (n_qubits - n * k) ** 2) / 4.0


@dataclass(frozen=True)
class AxisVerdict:
    metric: float
    bound: float
    violated: bool


@dataclass(frozen=True)
class AveragedVerdict:
    """Averaged criterion under a named reading ('mean' or 'sum')."""

    reading: str
    value: float
    threshold: float
    violated: bool


@dataclass(frozen=True)
class WitnessReport:
    """Per-axis and averaged witness evaluations for one state."""

    per_axis: dict[str, AxisVerdict]
    averaged: AveragedVerdict
    averaged_sum: AveragedVerdict
    n_qubits: int
    k: int
    n_floor: int
    quantity: str

    @property
    def any_violated(self) -> bool:
        return (
            any(v.violated for v in self.per_axis.values())
            or self.averaged.violated
            or self.averaged_sum.violated
        )


def witness_evaluate(
    rho: np.ndarray,
    n_qubits: int,
    theta: float,
    k: int,
    use: str = "exact_metric",
) -> WitnessReport:
    """Evaluate the Fisher entanglement witnesses on an n-qubit state.

    Per-axis values (SLD asymmetry for ``use='exact_metric'``, the lower
    bound at ``theta`` for ``use='lower_bound'``) are compared against the
    k-separability bound; the axis average is compared against N/6 under
    both readings (mean of the three axes, and their plain sum). Flags are
    set on strict exceedance.
    """
    if use == "exact_metric":
        axis_avg = averaged_asymmetry(rho, n_qubits)
    elif use == "lower_bound":
        axis_avg = averaged_bound(rho, n_qubits, theta)
    else:
        raise ParameterOutOfRange(f"use must be exact_metric or lower_bound, got {use!r}")
    per_axis_bound = k_separability_bound(n_qubits, k)
    per_axis = {
        axis: AxisVerdict(val, per_axis_bound, val > per_axis_bound)
        for axis, val in axis_avg.per_axis.items()
    }
    threshold = n_qubits / 6.0
    averaged = AveragedVerdict("mean", axis_avg.mean, threshold, axis_avg.mean > threshold)
    averaged_sum = AveragedVerdict("sum", axis_avg.total, threshold, axis_avg.total > threshold)
    return WitnessReport(
        per_axis=per_axis,
        averaged=averaged,
        averaged_sum=averaged_sum,
        n_qubits=n_qubits,
        k=k,
        n_floor=n_qubits // k,
        quantity=use,
    )


def threshold_solve(
    family: Callable[[float], np.ndarray],
    criterion: Callable[[np.ndarray], float],
    bound: float,
    samples: int = 41,
    tol: float = 1e-6,
) -> float:
    """Smallest family parameter in [0, 1] whose criterion exceeds ``bound``.

    The criterion is assumed monotone nondecreasing in the parameter; this
    is checked by sampling before bisecting to |dp| <= tol.
    """
    grid = np.linspace(0.0, 1.0, samples)
    values = np.array([criterion(family(p)) for p in grid])
    if np.any(np.diff(values) < -1e-9):
        idx = int(np.argmin(np.diff(values)))
        raise NonMonotone(
            f"criterion decreases between p = {grid[idx]:.4f} and {grid[idx + 1]:.4f}"
        )
    if values[-1] <= bound:
        raise NotCrossed(f"criterion never exceeds {bound} on [0, 1]")
    if values[0] > bound:
        return 0.0
    lo = grid[np.max(np.where(values <= bound))]
    hi = grid[np.min(np.where(values > bound))]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if criterion(family(mid)) > bound:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Table1Report:
    """Noise sweep of the Bell-diagonal probe with witness thresholds."""

    theta: float
    rows: list[dict]
    thresholds: dict[str, float]
    notes: str


def table1_reproduce(theta: float = math.pi / 6.0, p_grid=None) -> Table1Report:
    """Sweep the Bell-diagonal probe and collect metric, bound and verdicts.

    Per grid point: purity, per-axis SLD asymmetry, per-axis lower bound at
    ``theta``, and the witness verdicts. The thresholds dict carries the
    bisection solutions for the per-axis criteria (value > 1/2) and for the
    averaged criteria under both readings of the axis average.
    """
    if p_grid is None:
        p_grid = np.linspace(0.0, 1.0, 21)
    p_grid = np.asarray(p_grid, dtype=float)
    if p_grid.size == 0 or p_grid.min() < 0.0 or p_grid.max() > 1.0:
        raise ParameterOutOfRange("p grid must be nonempty and within [0, 1]")

    rows = []
    for p in p_grid:
        rho = bell_diagonal_probe(p)
        report_exact = witness_evaluate(rho, 2, theta, k=1, use="exact_metric")
        report_bound = witness_evaluate(rho, 2, theta, k=1, use="lower_bound")
        row = {"p": float(p), "purity": float(np.trace(rho @ rho).real)}
        for axis in AXES:
            row[f"asymmetry_J{axis}"] = report_exact.per_axis[axis].metric
            row[f"s_theta_J{axis}"] = report_bound.per_axis[axis].metric
            row[f"witness_exact_J{axis}"] = report_exact.per_axis[axis].violated
            row[f"witness_bound_J{axis}"] = report_bound.per_axis[axis].violated
        row["witness_exact_sum"] = report_exact.averaged_sum.violated
        row["witness_bound_sum"] = report_bound.averaged_sum.violated
        rows.append(row)

    half = k_separability_bound(2, 1)
    third = 2 / 6.0

    def exact_jx(rho: np.ndarray) -> float:
        return asymmetry_sld(rho, collective_spin(2, "x")).value

    def bound_jx(rho: np.ndarray) -> float:
        return lower_bound(rho, collective_spin(2, "x"), theta).s_theta

    thresholds = {
        "pstar_asymmetry_gt_half": threshold_solve(bell_diagonal_probe, exact_jx, half),
        "pstar_bound_gt_half": threshold_solve(bell_diagonal_probe, bound_jx, half),
        "pstar_asymmetry_sum_gt_third": threshold_solve(
            bell_diagonal_probe, lambda r: averaged_asymmetry(r, 2).total, third
        ),
        "pstar_bound_sum_gt_third": threshold_solve(
            bell_diagonal_probe, lambda r: averaged_bound(r, 2, theta).total, third
        ),
        "pstar_asymmetry_mean_gt_third": threshold_solve(
            bell_diagonal_probe, lambda r: averaged_asymmetry(r, 2).mean, third
        ),
        "pstar_bound_mean_gt_third": threshold_solve(
            bell_diagonal_probe, lambda r: averaged_bound(r, 2, theta).mean, third
        ),
    }
    notes = (
        "Averaged criteria: the sum reading (plain sum of the three axis values "
        "vs N/6) reproduces the reference thresholds 1/3 and 0.427517; under the "
        "mean reading (sum/3 vs N/6) the crossings coincide with the per-axis "
        "thresholds instead. Both are reported."
    )
    return Table1Report(theta=float(theta), rows=rows, thresholds=thresholds, notes=notes)
