"""Simulation of the two detection schemes for purity and overlap.

Two-copy swap / Bell-singlet projections: the swap operator V turns the
overlap Tr{rho sigma} into the expectation Tr{V (rho x sigma)}, and for
qubit registers V factorizes into per-site two-qubit swaps, each of which
is I - 2 P_singlet. The three singlet projectors of the two-qubit scheme
assemble purity and overlap without tomography.

Magnetization / Pauli-correlator scheme: a three-qubit X-state is fixed by
15 Pauli-string expectation values, and the overlap of two X-states is a
dot product of their correlator vectors.

Finite statistics are layered on top via seeded multinomial Born-rule
sampling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    DIM_CAP,
    evolve_phase,
    operator_on_sites,
    pauli_string,
    require_hermitian,
    tensor,
)
from .errors import (
    DimensionMismatch,
    DimensionOverflow,
    InvalidBasis,
    InvalidShots,
    NotXState,
    ParameterOutOfRange,
    Unphysical,
)

TWO_COPY_LAYOUT = "A1 B1 A2 B2"


def swap_matrix(dim: int) -> np.ndarray:
    """Permutation exchanging two copies of a dim-dimensional system."""
    d2 = dim * dim
    if d2 > DIM_CAP:
        raise DimensionOverflow(f"two-copy dimension {d2} exceeds cap {DIM_CAP}")
    v = np.zeros((d2, d2), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            v[i * dim + j, j * dim + i] = 1.0
    return v


def swap_operator(n_qubits_per_copy: int) -> np.ndarray:
    """Swap of two copies of an n-qubit register (eigenvalues +/-1, V^2 = I)."""
    if n_qubits_per_copy < 1:
        raise ParameterOutOfRange(f"need at least one qubit, got {n_qubits_per_copy}")
    return swap_matrix(2**n_qubits_per_copy)


def singlet_projector() -> np.ndarray:
    """Projector onto the two-qubit singlet (|01> - |10>)/sqrt(2)."""
    p = np.zeros((4, 4), dtype=complex)
    p[1, 1] = p[2, 2] = 0.5
    p[1, 2] = p[2, 1] = -0.5
    return p


@dataclass(frozen=True)
class ShotSample:
    """Counts of a seeded projective measurement; counts sum to shots."""

    outcome_counts: dict[int, int]
    shots: int
    seed: int

    def to_json(self) -> dict:
        return {
            "outcomes": {str(k): int(v) for k, v in sorted(self.outcome_counts.items())},
            "shots": int(self.shots),
            "seed": int(self.seed),
        }


@dataclass(frozen=True)
class EstimateWithError:
    """Point estimate with its standard error; std_error = 0 means analytic."""

    value: float
    std_error: float
    shots: int


@dataclass(frozen=True)
class BellProjectionEstimate:
    purity: EstimateWithError
    overlap: EstimateWithError


def sample_shots(
    rho: np.ndarray,
    projectors: Sequence[np.ndarray],
    shots: int,
    seed: int,
) -> ShotSample:
    """Multinomial Born-rule sample of a complete projective measurement.

    Deterministic for a fixed (seed, shots) pair; the seed is recorded in
    the returned sample.
    """
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise InvalidShots(f"shots must be a positive integer, got {shots!r}")
    if not projectors:
        raise InvalidBasis("empty projector set")
    ops = [require_hermitian(p) for p in projectors]
    d = ops[0].shape[0]
    if rho.shape != (d, d):
        raise DimensionMismatch(f"state dim {rho.shape[0]} != projector dim {d}")
    total = sum(ops)
    if np.max(np.abs(total - np.eye(d))) > 1e-9:
        raise InvalidBasis("projectors do not sum to the identity")
    for a, pa in enumerate(ops):
        for b, pb in enumerate(ops):
            target = pa if a == b else 0.0
            if np.max(np.abs(pa @ pb - target)) > 1e-9:
                raise InvalidBasis(f"projectors {a} and {b} are not orthogonal")
    probs = np.array([np.trace(rho @ p).real for p in ops])
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    return ShotSample(
        outcome_counts={i: int(c) for i, c in enumerate(counts)},
        shots=int(shots),
        seed=int(seed),
    )


def two_copy_register(rho: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """State rho x sigma on two register copies, qubit order A1 B1 A2 B2."""
    if rho.shape != sigma.shape:
        raise DimensionMismatch(
            f"copy dims differ: {rho.shape[0]} vs {sigma.shape[0]}"
        )
    return tensor(rho, sigma)


def _bell_scheme_observables() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singlet projectors on copy pairs (A1,A2) and (B1,B2) of a 4-qubit register."""
    p_minus = singlet_projector()
    o1 = operator_on_sites(p_minus, 4, (0, 2))
    o2 = operator_on_sites(p_minus, 4, (1, 3))
    return o1, o2, o1 @ o2


def _singlet_pair_estimator(expect_o1: float, expect_o2: float, expect_o3: float) -> float:
    # Tr{V (rho x sigma)} with V = (I - 2 P-)_(A) (x) (I - 2 P-)_(B).
    return 1.0 + 4.0 * expect_o3 - 2.0 * expect_o1 - 2.0 * expect_o2


def _sampled_overlap(
    register: np.ndarray,
    observables: tuple[np.ndarray, np.ndarray, np.ndarray],
    shots: int,
    seed: int,
) -> EstimateWithError:
    o1, o2, o3 = observables
    dim = register.shape[0]
    eye = np.eye(dim, dtype=complex)
    # Joint singlet/triplet outcomes per copy pair: (s,s), (s,t), (t,s), (t,t).
    basis = [o3, o1 - o3, o2 - o3, eye - o1 - o2 + o3]
    sample = sample_shots(register, basis, shots, seed)
    f_st = sample.outcome_counts[1] / shots
    f_ts = sample.outcome_counts[2] / shots
    value = 1.0 - 2.0 * (f_st + f_ts)
    q = f_st + f_ts
    std_error = 2.0 * math.sqrt(max(q * (1.0 - q), 0.0) / shots)
    return EstimateWithError(value, std_error, shots)


def bell_projection_estimate(
    rho: np.ndarray,
    theta: float,
    h: np.ndarray,
    shots: int | None = None,
    seed: int = 0,
) -> BellProjectionEstimate:
    """Purity and shifted-copy overlap of a two-qubit state from singlet projections.

    Analytic mode (``shots=None``) evaluates the three projector expectations
    exactly and reproduces Tr{rho^2} and Tr{rho U rho U^dag}. Shot mode
    measures each copy pair in the joint singlet/triplet basis with the given
    budget (purity register seeded with ``seed``, overlap register with
    ``seed + 1``) and reports binomial standard errors.
    """
    if rho.shape != (4, 4):
        raise DimensionMismatch(
            f"scheme is defined for two-qubit states, got dim {rho.shape[0]}"
        )
    if h.shape != rho.shape:
        raise DimensionMismatch(f"generator dim {h.shape[0]} != state dim 4")
    observables = _bell_scheme_observables()
    rho_theta = evolve_phase(rho, h, theta)
    purity_register = two_copy_register(rho, rho)
    overlap_register = two_copy_register(rho, rho_theta)

    if shots is None:
        results = []
        for register in (purity_register, overlap_register):
            expectations = [np.trace(o @ register).real for o in observables]
            results.append(EstimateWithError(_singlet_pair_estimator(*expectations), 0.0, 0))
        return BellProjectionEstimate(*results)

    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise InvalidShots(f"shots must be a positive integer, got {shots!r}")
    return BellProjectionEstimate(
        purity=_sampled_overlap(purity_register, observables, shots, seed),
        overlap=_sampled_overlap(overlap_register, observables, shots, seed + 1),
    )


def controlled_swap_interferometry(
    rho: np.ndarray, sigma: np.ndarray, ancilla_polarization_in: float
) -> float:
    """Output polarization of the swap-interferometry ancilla.

    Simulates the Hadamard - controlled-swap - Hadamard circuit exactly and
    returns Tr{alpha_out sigma_z}, which equals the input polarization times
    Tr{rho sigma}.
    """
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"copy dims differ: {rho.shape[0]} vs {sigma.shape[0]}")
    z = float(ancilla_polarization_in)
    if not -1.0 <= z <= 1.0:
        raise ParameterOutOfRange(f"polarization must lie in [-1, 1], got {z}")
    d = rho.shape[0]
    if 2 * d * d > DIM_CAP:
        raise DimensionOverflow(
            f"ancilla + two copies need dimension {2 * d * d}, cap is {DIM_CAP}"
        )
    v = swap_matrix(d)
    eye = np.eye(d * d, dtype=complex)
    plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=complex)
    # Hadamards on the ancilla fold into the projector basis of the control.
    walk = np.kron(plus, eye) + np.kron(minus, v)
    ancilla = np.array([[(1.0 + z) / 2.0, 0.0], [0.0, (1.0 - z) / 2.0]], dtype=complex)
    state = np.kron(ancilla, np.kron(rho, sigma))
    out = walk @ state @ walk.conj().T
    reduced = np.trace(out.reshape(2, d * d, 2, d * d), axis1=1, axis2=3)
    return float((reduced[0, 0] - reduced[1, 1]).real)


# The 15 magnetization strings fixing a three-qubit X-state: single-Z,
# double-Z, triple-Z, then the eight X/Y triples.
XSTATE_STRINGS = (
    "ZII", "IZI", "IIZ",
    "ZZI", "IZZ", "ZIZ",
    "ZZZ",
    "XXX", "XXY", "XYX", "YXX", "YYX", "YXY", "XYY", "YYY",
)

_XSTATE_OPERATORS = tuple(pauli_string(s) for s in XSTATE_STRINGS)

_X_PATTERN = np.zeros((8, 8), dtype=bool)
for _i in range(8):
    _X_PATTERN[_i, _i] = True
    _X_PATTERN[_i, 7 - _i] = True


def require_xstate(rho: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    """Check diagonal + anti-diagonal support of a three-qubit state."""
    a = np.asarray(rho, dtype=complex)
    if a.shape != (8, 8):
        raise DimensionMismatch(f"X-state check needs an 8x8 matrix, got {a.shape}")
    off = np.max(np.abs(a[~_X_PATTERN])) if (~_X_PATTERN).any() else 0.0
    if off > tol:
        raise NotXState(f"support outside the X pattern: max off-pattern entry {off:.3e}")
    return a


def xstate_correlators(rho: np.ndarray) -> np.ndarray:
    """The 15 Pauli-string expectation values of a three-qubit X-state."""
    a = require_xstate(rho)
    return np.array([np.trace(a @ op).real for op in _XSTATE_OPERATORS])


def xstate_reconstruct(correlators: Sequence[float]) -> np.ndarray:
    """Assemble the X-state (1/8)(I + sum_i t_i P_i) from its correlators.

    Raises Unphysical when the assembled matrix is not positive
    semidefinite, which signals inconsistent correlator input.
    """
    t = np.asarray(correlators, dtype=float)
    if t.shape != (len(XSTATE_STRINGS),):
        raise ParameterOutOfRange(
            f"expected {len(XSTATE_STRINGS)} correlators, got shape {t.shape}"
        )
    rho = np.eye(8, dtype=complex)
    for ti, op in zip(t, _XSTATE_OPERATORS):
        rho = rho + ti * op
    rho /= 8.0
    w = np.linalg.eigvalsh(rho)
    if w[0] < -1e-10:
        raise Unphysical(f"correlators give minimum eigenvalue {w[0]:.3e} < 0")
    return rho


def overlap_via_correlators(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Overlap Tr{rho sigma} of two X-states from their shared correlators."""
    t_rho = xstate_correlators(rho)
    t_sigma = xstate_correlators(sigma)
    return float((1.0 + np.dot(t_rho, t_sigma)) / 8.0)
