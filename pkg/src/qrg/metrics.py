"""Classical and quantum Fisher quantities on density matrices.

Implements the variance, the SLD quantum Fisher asymmetry, the general
monotone-metric family selected by a standard monotone function, the
Wigner-Yanase skew information, the classical Fisher information of a
POVM, and the Cramer-Rao precision floor.

Normalization convention: ``asymmetry_sld`` returns the variance-matched
value A (equal to the variance on pure states), with the conventional
Tr{rho L^2} quantity exposed as ``qfi_standard = 4 A``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .core import evolve_phase, require_hermitian, spectral_decompose
from .errors import (
    DimensionMismatch,
    InvalidPOVM,
    ParameterOutOfRange,
    UndefinedWeight,
    ZeroInformation,
)

# Eigenvalue pairs smaller than this are treated as degenerate and skipped.
DEGENERACY_TOL = 1e-12


def _check_dims(rho: np.ndarray, h: np.ndarray) -> None:
    if rho.shape != h.shape:
        raise DimensionMismatch(
            f"state dim {rho.shape[0]} != observable dim {h.shape[0]}"
        )


def variance(rho: np.ndarray, h: np.ndarray) -> float:
    """Variance V(rho, H) = Tr{rho H^2} - Tr{rho H}^2."""
    _check_dims(rho, h)
    mean = np.trace(rho @ h).real
    second = np.trace(rho @ h @ h).real
    return float(second - mean * mean)


@dataclass(frozen=True)
class MetricValue:
    """Asymmetry value plus the normalization tag it is reported in."""

    value: float
    convention: str = "asymmetry"

    def __post_init__(self) -> None:
        if self.value < -1e-10:
            raise ParameterOutOfRange(f"metric value {self.value} is negative")

    @property
    def qfi_standard(self) -> float:
        """The same quantity in the Tr{rho L^2} normalization (4x asymmetry)."""
        if self.convention == "qfi_standard":
            return self.value
        return 4.0 * self.value


def asymmetry_sld(rho: np.ndarray, h: np.ndarray) -> MetricValue:
    """SLD quantum Fisher asymmetry of a state relative to an observable.

    Given the spectral decomposition rho = sum_k lambda_k |k><k|,

        A(rho, H) = sum_{k<l} (lambda_k - lambda_l)^2 / (lambda_k + lambda_l)
                    * |<k|H|l>|^2,

    with pairs whose eigenvalue sum falls below ``DEGENERACY_TOL`` skipped.
    Equals the variance on pure states and is upper bounded by it in general.
    """
    _check_dims(rho, h)
    lam, vec = spectral_decompose(rho)
    h_eig = vec.conj().T @ h @ vec
    total = 0.0
    d = lam.size
    for k in range(d):
        for l in range(k + 1, d):
            s = lam[k] + lam[l]
            if s < DEGENERACY_TOL:
                continue
            diff = lam[k] - lam[l]
            total += diff * diff / s * abs(h_eig[k, l]) ** 2
    return MetricValue(float(total), "asymmetry")


def _symmetry_defect(f: Callable[[float], float], x: float) -> float:
    return abs(f(x) - x * f(1.0 / x))


@dataclass(frozen=True)
class CMFunction:
    """Standard monotone function selecting a quantum Fisher metric.

    ``f`` must satisfy f(1) = 1 and the symmetry f(x) = x f(1/x); both are
    checked at construction on a fixed sample grid. Operator monotonicity
    is trusted, not verified.
    """

    name: str
    f: Callable[[float], float] = field(repr=False)
    f_at_zero: float

    def __post_init__(self) -> None:
        if abs(self.f(1.0) - 1.0) > 1e-12:
            raise ParameterOutOfRange(f"{self.name}: f(1) = {self.f(1.0)} != 1")
        for x in (0.1, 0.25, 0.5, 2.0, 4.0, 10.0):
            if _symmetry_defect(self.f, x) > 1e-9:
                raise ParameterOutOfRange(
                    f"{self.name}: symmetry f(x) = x f(1/x) violated at x = {x}"
                )

    def weight(self, lam_k: float, lam_l: float) -> float:
        """Symmetrized Chentsov-Morozova pair weight.

        Half the symmetrization of c_f(i, j) = 1/(j f(i/j)); vanishing
        eigenvalues are handled through the f(0+) limit. With the SLD
        function this reduces to 1/(lam_k + lam_l).
        """
        c_kl = self._c(lam_k, lam_l)
        c_lk = self._c(lam_l, lam_k)
        w = 0.25 * (c_kl + c_lk)
        if not math.isfinite(w) or w <= 0.0:
            raise UndefinedWeight(
                f"{self.name}: weight undefined at eigenvalue pair "
                f"({lam_k:.3e}, {lam_l:.3e})"
            )
        return w

    def _c(self, i: float, j: float) -> float:
        if j > DEGENERACY_TOL:
            denom = j * self.f(i / j)
        else:
            # c_f(i, 0) limit via the symmetry of f: 1/(i f(0+)).
            denom = i * self.f_at_zero
        if denom == 0.0 or not math.isfinite(denom):
            raise UndefinedWeight(
                f"{self.name}: f evaluated to a non-invertible value at ratio "
                f"{i:.3e}/{j:.3e}"
            )
        return 1.0 / denom


CM_SLD = CMFunction("sld", lambda x: (1.0 + x) / 2.0, 0.5)
CM_WY = CMFunction("wigner-yanase", lambda x: ((1.0 + math.sqrt(x)) / 2.0) ** 2, 0.25)

CM_CATALOG = {fn.name: fn for fn in (CM_SLD, CM_WY)}


def monotone_metric_norm(f: CMFunction, rho: np.ndarray, h: np.ndarray) -> float:
    """Unitary-path quantum Fisher norm for the metric selected by ``f``.

    Sums the symmetrized pair weight times (lambda_k - lambda_l)^2 |<k|H|l>|^2
    over unordered eigenpairs of rho, skipping pairs where both eigenvalues
    are numerically zero. With ``CM_SLD`` this coincides with
    :func:`asymmetry_sld`.
    """
    _check_dims(rho, h)
    lam, vec = spectral_decompose(rho)
    h_eig = vec.conj().T @ h @ vec
    total = 0.0
    d = lam.size
    for k in range(d):
        for l in range(k + 1, d):
            if lam[k] < DEGENERACY_TOL and lam[l] < DEGENERACY_TOL:
                continue
            diff = lam[k] - lam[l]
            if diff == 0.0:
                continue
            total += f.weight(lam[k], lam[l]) * diff * diff * abs(h_eig[k, l]) ** 2
    return float(total)


def skew_information(rho: np.ndarray, h: np.ndarray) -> float:
    """Wigner-Yanase skew information -1/2 Tr{[sqrt(rho), H]^2}."""
    _check_dims(rho, h)
    lam, vec = spectral_decompose(rho)
    root = (vec * np.sqrt(np.clip(lam, 0.0, None))) @ vec.conj().T
    comm = root @ h - h @ root
    return float(-0.5 * np.trace(comm @ comm).real)


def validate_povm(elements: Sequence[np.ndarray]) -> list[np.ndarray]:
    """Check a POVM: each element PSD, all summing to the identity."""
    if not elements:
        raise InvalidPOVM("POVM has no elements")
    ops = []
    for idx, el in enumerate(elements):
        try:
            op = require_hermitian(el)
        except Exception as exc:
            raise InvalidPOVM(f"element {idx} is not Hermitian: {exc}") from exc
        w = np.linalg.eigvalsh(op)
        if w[0] < -1e-10:
            raise InvalidPOVM(f"element {idx} has eigenvalue {w[0]:.3e} < 0")
        ops.append(op)
    total = sum(ops)
    dev = np.max(np.abs(total - np.eye(total.shape[0])))
    if dev > 1e-9:
        raise InvalidPOVM(f"elements sum to identity only within {dev:.3e}")
    return ops


def classical_fisher_povm(
    rho: np.ndarray, h: np.ndarray, theta: float, povm: Sequence[np.ndarray]
) -> float:
    """Classical Fisher information of a POVM on the phase-evolved state.

    Outcome probabilities are p_x = Tr{rho_theta Pi_x}; the derivative is
    taken analytically as Tr{-i [H, rho_theta] Pi_x}. Outcomes with
    p_x < 1e-12 contribute zero.
    """
    _check_dims(rho, h)
    ops = validate_povm(povm)
    if ops[0].shape != rho.shape:
        raise DimensionMismatch(
            f"POVM dim {ops[0].shape[0]} != state dim {rho.shape[0]}"
        )
    rho_theta = evolve_phase(rho, h, theta)
    drho = -1j * (h @ rho_theta - rho_theta @ h)
    fisher = 0.0
    for op in ops:
        p = np.trace(rho_theta @ op).real
        if p < 1e-12:
            continue
        dp = np.trace(drho @ op).real
        fisher += dp * dp / p
    return float(fisher)


def cramer_rao(fisher: float, n_repetitions: int) -> float:
    """Variance floor 1/(n F) for an unbiased estimator."""
    if n_repetitions < 1:
        raise ParameterOutOfRange(f"n_repetitions must be >= 1, got {n_repetitions}")
    if fisher <= 1e-15:
        raise ZeroInformation(f"Fisher information {fisher} is zero; bound diverges")
    return 1.0 / (n_repetitions * fisher)
