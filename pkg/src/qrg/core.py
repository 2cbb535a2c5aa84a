"""Finite-dimensional quantum states and operators as dense numpy arrays.

States and observables are plain complex ``np.ndarray`` matrices; the
functions here validate them, build Pauli strings and collective spin
operators, take tensor products, diagonalize, and apply phase evolutions.
All outputs are freshly allocated, so values can be treated as immutable
and used concurrently.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DimensionOverflow,
    InputParseError,
    NotHermitian,
    NotPositive,
    ParameterOutOfRange,
    TraceNotOne,
)

# Absolute tolerances; every operator in scope has entries of order 1.
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_CLAMP = 1e-10

# Two copies of a 4-qubit register (16 x 16 each side).
DIM_CAP = 256

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

PAULI = {"I": I2, "X": SIGMA_X, "Y": SIGMA_Y, "Z": SIGMA_Z}
AXIS_PAULI = {"x": SIGMA_X, "y": SIGMA_Y, "z": SIGMA_Z}


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (ascending) and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Rebuild the original matrix as sum_k lambda_k |k><k|."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def _as_square(m: np.ndarray) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_deviation(m: np.ndarray) -> tuple[float, tuple[int, int]]:
    """Max entrywise |M - M^dag| and the index where it occurs."""
    d = np.abs(m - m.conj().T)
    idx = np.unravel_index(np.argmax(d), d.shape)
    return float(d[idx]), (int(idx[0]), int(idx[1]))


def require_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return m as a complex array, raising NotHermitian beyond tol."""
    a = _as_square(m)
    dev, (i, j) = hermitian_deviation(a)
    if dev > tol:
        raise NotHermitian(
            f"matrix is not Hermitian: |M - M^dag| = {dev:.3e} at entry ({i}, {j})"
        )
    return a


def validate_state(raw: np.ndarray) -> np.ndarray:
    """Validate a density matrix and return a cleaned copy.

    Checks Hermiticity, unit trace and positive semidefiniteness against
    the module tolerances. Eigenvalues in [-PSD_CLAMP, 0) are clamped to
    zero and the spectrum is renormalized to unit trace, so tiny numerical
    negatives do not propagate.
    """
    a = require_hermitian(raw)
    tr = complex(np.trace(a))
    if abs(tr - 1.0) > TRACE_TOL:
        raise TraceNotOne(f"trace is {tr.real:.12g}, deviates from 1 by {abs(tr - 1.0):.3e}")
    lam, vec = _eigh(a)
    if lam[0] < -PSD_CLAMP:
        raise NotPositive(f"minimum eigenvalue {lam[0]:.3e} below -{PSD_CLAMP:.0e}")
    lam = np.clip(lam, 0.0, None)
    lam = lam / lam.sum()
    return (vec * lam) @ vec.conj().T


def _eigh(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    try:
        return np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc


def spectral_decompose(a: np.ndarray) -> SpectralDecomposition:
    """Diagonalize a Hermitian matrix.

    Returns eigenvalues in ascending order together with the unitary whose
    columns are the matching eigenvectors, so that
    ``a == (v * lam) @ v.conj().T`` up to roundoff.
    """
    h = require_hermitian(a)
    lam, vec = _eigh(h)
    return SpectralDecomposition(lam, vec)


def tensor(a: np.ndarray, b: np.ndarray, max_dim: int = DIM_CAP) -> np.ndarray:
    """Kronecker product with a guard on the resulting dimension."""
    a = _as_square(a)
    b = _as_square(b)
    d = a.shape[0] * b.shape[0]
    if d > max_dim:
        raise DimensionOverflow(f"product dimension {d} exceeds cap {max_dim}")
    return np.kron(a, b)


def tensor_all(ops: Sequence[np.ndarray], max_dim: int = DIM_CAP) -> np.ndarray:
    """Left-to-right Kronecker product of a sequence of square matrices."""
    out = np.eye(1, dtype=complex)
    for op in ops:
        out = tensor(out, op, max_dim=max_dim)
    return out


def pauli_string(letters: str | Sequence[str]) -> np.ndarray:
    """Operator for a Pauli string such as ``"ZIZ"`` (one letter per qubit)."""
    seq = list(letters)
    if not seq:
        raise ParameterOutOfRange("empty Pauli string")
    try:
        ops = [PAULI[c] for c in seq]
    except KeyError as exc:
        raise ParameterOutOfRange(f"unknown Pauli letter {exc.args[0]!r}") from exc
    return tensor_all(ops)


def operator_on_sites(op: np.ndarray, n_qubits: int, sites: Sequence[int]) -> np.ndarray:
    """Embed an operator acting on ``len(sites)`` qubits into an n-qubit register.

    ``sites`` gives the register positions (0-based, most significant first)
    the operator's factors act on; all other qubits get the identity.
    """
    op = _as_square(op)
    k = len(sites)
    if op.shape[0] != 2**k:
        raise DimensionMismatch(f"operator dim {op.shape[0]} != 2^{k} for {k} sites")
    if len(set(sites)) != k or any(s < 0 or s >= n_qubits for s in sites):
        raise ParameterOutOfRange(f"invalid site list {list(sites)} for {n_qubits} qubits")
    d = 2**n_qubits
    if d > DIM_CAP:
        raise DimensionOverflow(f"register dimension {d} exceeds cap {DIM_CAP}")
    rest = [q for q in range(n_qubits) if q not in sites]
    block = np.tensordot(
        op.reshape((2,) * (2 * k)),
        np.eye(2 ** len(rest), dtype=complex).reshape((2,) * (2 * len(rest))),
        axes=0,
    )
    # block axes: sites-out, sites-in, rest-out, rest-in; permute into register order.
    out_axis = [0] * n_qubits
    in_axis = [0] * n_qubits
    for a, q in enumerate(sites):
        out_axis[q] = a
        in_axis[q] = k + a
    for b, q in enumerate(rest):
        out_axis[q] = 2 * k + b
        in_axis[q] = 2 * k + len(rest) + b
    return block.transpose(out_axis + in_axis).reshape(d, d)


def phase_unitary(h: np.ndarray, theta: float) -> np.ndarray:
    """exp(-i H theta) via the spectral decomposition of the Hermitian H."""
    lam, vec = spectral_decompose(h)
    return (vec * np.exp(-1j * lam * theta)) @ vec.conj().T


def evolve_phase(rho: np.ndarray, h: np.ndarray, theta: float) -> np.ndarray:
    """Unitary phase evolution U rho U^dag with U = exp(-i H theta)."""
    rho = _as_square(rho)
    h = _as_square(h)
    if rho.shape != h.shape:
        raise DimensionMismatch(f"state dim {rho.shape[0]} != generator dim {h.shape[0]}")
    u = phase_unitary(h, theta)
    return u @ rho @ u.conj().T


def collective_spin(n_qubits: int, axis: str) -> np.ndarray:
    """Collective spin component: sum over sites of one-half sigma_axis."""
    if n_qubits < 1:
        raise ParameterOutOfRange(f"need at least one qubit, got {n_qubits}")
    if axis not in AXIS_PAULI:
        raise ParameterOutOfRange(f"axis must be one of x, y, z, got {axis!r}")
    d = 2**n_qubits
    if d > DIM_CAP:
        raise DimensionOverflow(f"register dimension {d} exceeds cap {DIM_CAP}")
    sigma = AXIS_PAULI[axis]
    total = np.zeros((d, d), dtype=complex)
    for site in range(n_qubits):
        ops = [I2] * n_qubits
        ops[site] = sigma
        total += 0.5 * tensor_all(ops)
    return total


def projector(ket: np.ndarray) -> np.ndarray:
    """Rank-one projector |psi><psi| from a (normalized) state vector."""
    v = np.asarray(ket, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def bell_phi_plus() -> np.ndarray:
    """Bell ket (|00> + |11>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1.0 / math.sqrt(2.0)
    return v


def singlet_ket() -> np.ndarray:
    """Singlet ket (|01> - |10>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[1] = 1.0 / math.sqrt(2.0)
    v[2] = -1.0 / math.sqrt(2.0)
    return v


def plus_ket() -> np.ndarray:
    """Single-qubit ket (|0> + |1>)/sqrt(2)."""
    return np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def ghz_ket(n_qubits: int = 3) -> np.ndarray:
    """GHZ ket (|0...0> + |1...1>)/sqrt(2)."""
    if n_qubits < 1:
        raise ParameterOutOfRange(f"need at least one qubit, got {n_qubits}")
    d = 2**n_qubits
    if d > DIM_CAP:
        raise DimensionOverflow(f"register dimension {d} exceeds cap {DIM_CAP}")
    v = np.zeros(d, dtype=complex)
    v[0] = v[-1] = 1.0 / math.sqrt(2.0)
    return v


def _check_unit_interval(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in [0, 1], got {p}")
    return p


def bell_diagonal_probe(p: float) -> np.ndarray:
    """Two-qubit probe: p |phi+><phi+| + (1-p)/4 identity."""
    p = _check_unit_interval(p)
    return p * projector(bell_phi_plus()) + (1.0 - p) / 4.0 * np.eye(4, dtype=complex)


def plus_noise_probe(p: float) -> np.ndarray:
    """Single-qubit probe: (1-p)/2 identity + p |+><+|."""
    p = _check_unit_interval(p)
    return (1.0 - p) / 2.0 * np.eye(2, dtype=complex) + p * projector(plus_ket())


def werner_probe(p: float) -> np.ndarray:
    """Two-qubit Werner state: p |singlet><singlet| + (1-p)/4 identity."""
    p = _check_unit_interval(p)
    return p * projector(singlet_ket()) + (1.0 - p) / 4.0 * np.eye(4, dtype=complex)


def ghz_probe(n_qubits: int = 3) -> np.ndarray:
    """GHZ density matrix on n qubits."""
    return projector(ghz_ket(n_qubits))


def matrix_to_json(m: np.ndarray) -> dict:
    """Serialize a square complex matrix to the row-major re/im JSON schema."""
    a = _as_square(m)
    return {
        "dim": int(a.shape[0]),
        "re": a.real.tolist(),
        "im": a.imag.tolist(),
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    """Parse the ``{"dim", "re", "im"}`` schema back into a complex matrix."""
    if not isinstance(obj, dict):
        raise InputParseError(f"expected a JSON object, got {type(obj).__name__}")
    missing = {"dim", "re", "im"} - set(obj)
    if missing:
        raise InputParseError(f"missing keys: {sorted(missing)}")
    try:
        dim = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputParseError(f"malformed matrix payload: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise InputParseError(
            f"re/im shapes {re.shape}/{im.shape} do not match dim {dim}"
        )
    return re + 1j * im
