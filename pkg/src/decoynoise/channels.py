"""The four noise channels and their action on n-qubit density matrices.

Two channel mechanisms appear:

* Kraus channels (amplitude damping, phase damping) act independently and
  identically on every travel qubit:

      rho -> sum over multi-indices (i1..in) of
             (E_i1 x ... x E_in) rho (E_i1 x ... x E_in)^dag

* Collective channels (dephasing, rotation) apply one and the same
  single-qubit unitary to all qubits traveling simultaneously:

      rho -> U^(x n) rho U^dag(x n)

Amplitude damping models energy loss into a zero-temperature bath:

    E0 = [[1, 0], [0, sqrt(1-eta)]],   E1 = [[0, sqrt(eta)], [0, 0]]

Phase damping destroys coherences without energy loss:

    E0 = sqrt(1-eta) I,   E1 = sqrt(eta) |0><0|,   E2 = sqrt(eta) |1><1|

Collective dephasing is the phase gate diag(1, exp(i phi)); collective
rotation is the real rotation [[cos t, -sin t], [sin t, cos t]]. The angle
parameters may be any real (they drift with time); eta is a decoherence
probability and must lie in [0, 1].
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ATOL,
    DensityMatrix,
    _trusted_density,
    dagger,
    is_unitary,
    tensor_power,
)

_KET0_PROJ = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
_KET1_PROJ = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A set of single-qubit Kraus operators with the completeness invariant.

    Completeness (sum of E^dag E = I) is checked at construction.
    """

    operators: tuple[np.ndarray, ...]
    name: str

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=complex).copy() for op in self.operators)
        if not ops or any(op.shape != (2, 2) for op in ops):
            raise ValueError("Kraus operators must be a non-empty set of 2x2 matrices")
        total = sum(dagger(op) @ op for op in ops)
        if float(np.max(np.abs(total - np.eye(2)))) > ATOL:
            raise ValueError(f"Kraus set {self.name!r} is not complete: sum E^dag E != I")
        for op in ops:
            op.setflags(write=False)
        object.__setattr__(self, "operators", ops)


def _check_rate(eta: float) -> float:
    eta = float(eta)
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"decoherence rate must lie in [0, 1], got {eta}")
    return eta


def kraus_ad(eta: float) -> KrausChannel:
    """Amplitude damping channel with decoherence rate eta in [0, 1]."""
    eta = _check_rate(eta)
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - eta)]], dtype=complex)
    e1 = np.array([[0.0, math.sqrt(eta)], [0.0, 0.0]], dtype=complex)
    return KrausChannel((e0, e1), "amplitude_damping")


def kraus_pd(eta: float) -> KrausChannel:
    """Phase damping channel with decoherence rate eta in [0, 1]."""
    eta = _check_rate(eta)
    e0 = math.sqrt(1.0 - eta) * np.eye(2, dtype=complex)
    e1 = math.sqrt(eta) * _KET0_PROJ
    e2 = math.sqrt(eta) * _KET1_PROJ
    return KrausChannel((e0, e1, e2), "phase_damping")


def unitary_cd(phi: float) -> np.ndarray:
    """Collective dephasing phase gate diag(1, exp(i phi))."""
    return np.array([[1.0, 0.0], [0.0, np.exp(1j * float(phi))]], dtype=complex)


def unitary_cr(theta: float) -> np.ndarray:
    """Collective rotation by angle theta in the real plane."""
    c, s = math.cos(float(theta)), math.sin(float(theta))
    return np.array([[c, -s], [s, c]], dtype=complex)


@dataclass(frozen=True)
class AmplitudeDamping:
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "eta", _check_rate(self.eta))


@dataclass(frozen=True)
class PhaseDamping:
    eta: float

    def __post_init__(self):
        object.__setattr__(self, "eta", _check_rate(self.eta))


@dataclass(frozen=True)
class CollectiveDephasing:
    phi: float


@dataclass(frozen=True)
class CollectiveRotation:
    theta: float


NoiseModel = AmplitudeDamping | PhaseDamping | CollectiveDephasing | CollectiveRotation

# Family tag <-> class, as used by the CLI and in reports.
FAMILIES: dict[str, type] = {
    "ad": AmplitudeDamping,
    "pd": PhaseDamping,
    "cd": CollectiveDephasing,
    "cr": CollectiveRotation,
}

_TAGS = {cls: tag for tag, cls in FAMILIES.items()}


def family_tag(noise) -> str:
    """Short tag ('ad', 'pd', 'cd', 'cr') for a noise model or family class."""
    cls = noise if isinstance(noise, type) else type(noise)
    try:
        return _TAGS[cls]
    except KeyError:
        raise ValueError(f"unknown noise family {noise!r}") from None


def parameter_of(noise: NoiseModel) -> float:
    """The single scalar parameter of a noise model."""
    match noise:
        case AmplitudeDamping(eta=eta) | PhaseDamping(eta=eta):
            return eta
        case CollectiveDephasing(phi=phi):
            return phi
        case CollectiveRotation(theta=theta):
            return theta
    raise ValueError(f"unknown noise model {noise!r}")


def parameter_range(family: type) -> tuple[float, float]:
    """Natural sweep range: [0, 1] for damping rates, [0, 2 pi] for angles."""
    if family in (AmplitudeDamping, PhaseDamping):
        return 0.0, 1.0
    if family in (CollectiveDephasing, CollectiveRotation):
        return 0.0, 2.0 * math.pi
    raise ValueError(f"unknown noise family {family!r}")


# Cache of expanded n-qubit operators (multi-index Kraus stacks and n-fold
# collective unitaries), keyed by operator bytes and qubit count. Entries are
# small (<= 81 x 16 x 16) and the cache is cleared if it outgrows the limit.
# Cached values are read-only and keyed by value, so concurrent use is safe;
# a racing insert at worst recomputes an entry.
_CACHE_LIMIT = 512
_STACK_CACHE: dict[tuple, tuple[np.ndarray, np.ndarray] | np.ndarray] = {}


def _multi_qubit_operators(ch: KrausChannel, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All m^n tensor products of the channel's operators, stacked.

    Returns the stack flattened to ((index, row), col) together with the
    conjugate transposed stack flattened to ((index, col), row), the two
    layouts the contraction in apply_kraus_channel consumes. Real operator
    sets are stored as float64 so the contraction can run in real arithmetic.
    """
    key = ("kraus", n) + tuple(op.tobytes() for op in ch.operators)
    cached = _STACK_CACHE.get(key)
    if cached is not None:
        return cached
    single = np.stack(ch.operators)
    stack = single
    for _ in range(n - 1):
        k, d = stack.shape[0], stack.shape[1]
        m = single.shape[0]
        stack = np.einsum("aij,bkl->abikjl", stack, single).reshape(k * m, d * 2, d * 2)
    if np.all(stack.imag == 0.0):
        stack = np.ascontiguousarray(stack.real)
    count, dim = stack.shape[0], stack.shape[1]
    left = stack.reshape(count * dim, dim)
    right = np.ascontiguousarray(stack.conj().transpose(0, 2, 1).reshape(count * dim, dim))
    entry = (left, right)
    for arr in entry:
        arr.setflags(write=False)
    if len(_STACK_CACHE) >= _CACHE_LIMIT:
        _STACK_CACHE.clear()
    _STACK_CACHE[key] = entry
    return entry


def _kraus_contract(left: np.ndarray, right: np.ndarray, state: np.ndarray) -> np.ndarray:
    """sum_a E_a state E_a^dag with the stacked layouts of _multi_qubit_operators."""
    dim = state.shape[0]
    count = left.shape[0] // dim
    tmp = (left @ state).reshape(count, dim, dim)
    return tmp.transpose(1, 0, 2).reshape(dim, count * dim) @ right


def apply_kraus_channel(rho: DensityMatrix, ch: KrausChannel) -> DensityMatrix:
    """Apply the channel independently to each qubit of rho.

    Explicit sum over all m^n operator multi-indices (at most 3^4 = 81 terms);
    no superoperator matrix is materialized. For real operator sets the
    contraction runs in real arithmetic, split over Re(rho) and Im(rho) by
    linearity; this agrees with the complex path to machine rounding.
    """
    left, right = _multi_qubit_operators(ch, rho.n_qubits)
    state = rho.matrix
    if left.dtype == np.float64:
        evolved = _kraus_contract(left, right, state.real.copy())
        if np.any(state.imag != 0.0):
            evolved = evolved + 1j * _kraus_contract(left, right, state.imag.copy())
    else:
        evolved = _kraus_contract(left, right, state)
    return _trusted_density(np.asarray(evolved, dtype=complex))


def apply_collective(rho: DensityMatrix, u: np.ndarray) -> DensityMatrix:
    """Apply the same single-qubit unitary u to every qubit of rho."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise ValueError(f"collective noise needs a 2x2 unitary, got shape {u.shape}")
    if not is_unitary(u):
        raise ValueError("collective noise operator is not unitary within tolerance")
    key = ("collective", rho.n_qubits, u.tobytes())
    expanded = _STACK_CACHE.get(key)
    if expanded is None:
        expanded = tensor_power(u, rho.n_qubits)
        expanded.setflags(write=False)
        if len(_STACK_CACHE) >= _CACHE_LIMIT:
            _STACK_CACHE.clear()
        _STACK_CACHE[key] = expanded
    evolved = expanded @ rho.matrix @ dagger(expanded)
    return _trusted_density(evolved)


@functools.lru_cache(maxsize=_CACHE_LIMIT)
def _kraus_for(family: str, eta: float) -> KrausChannel:
    return kraus_ad(eta) if family == "ad" else kraus_pd(eta)


def apply_noise(rho: DensityMatrix, noise: NoiseModel) -> DensityMatrix:
    """Send rho through the given noise model."""
    match noise:
        case AmplitudeDamping(eta=eta):
            return apply_kraus_channel(rho, _kraus_for("ad", eta))
        case PhaseDamping(eta=eta):
            return apply_kraus_channel(rho, _kraus_for("pd", eta))
        case CollectiveDephasing(phi=phi):
            return apply_collective(rho, unitary_cd(phi))
        case CollectiveRotation(theta=theta):
            return apply_collective(rho, unitary_cr(theta))
    raise ValueError(f"unknown noise model {noise!r}")
