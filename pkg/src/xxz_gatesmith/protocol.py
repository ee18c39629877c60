"""Two-step circuit: XXZ exchange evolution followed by instantaneous pulses.

The interaction Hamiltonian is

    H = (J/4) (sx1 sx2 + sy1 sy2 + gamma sz1 sz2),

with hbar = 1 so J carries angular-frequency units and gamma is a
dimensionless anisotropy (gamma = 1 isotropic Heisenberg, gamma = 0 the XX
model).  A circuit instance evolves under H for a time t >= 0 and then fires
a delta pulse on each spin individually; the pulse on spin i rotates that
spin by the area omega_i about the axis n_i(theta_i, phi_i).  Interaction
during the pulse is exactly zero (instantaneous-rotation idealization), and
all propagators are evaluated in closed form, never by numerical
integration.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from .core import ID2, ensure_unitary, kron, mat_mul, pauli

TWO_PI = 2.0 * math.pi


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class CouplingParams:
    """Exchange coupling J (angular frequency) and anisotropy gamma.

    J may be negative (bosonic superexchange) and gamma may be any real.
    """

    j: float
    gamma: float

    def __post_init__(self) -> None:
        _require_finite("j", self.j)
        _require_finite("gamma", self.gamma)


@dataclass(frozen=True)
class PulseSpec:
    """One spin's pulse: area omega about the axis n(theta, phi).

    theta is folded into [0, pi] and phi into [0, 2*pi) at construction,
    preserving the physical axis direction.  omega is kept unwrapped: the
    pulse area is physical, and omega and -omega are distinct pulses.
    """

    omega: float
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self) -> None:
        _require_finite("omega", self.omega)
        theta = _require_finite("theta", self.theta) % TWO_PI
        phi = _require_finite("phi", self.phi)
        if theta >= TWO_PI:  # x % TWO_PI can round up to TWO_PI for tiny x < 0
            theta = 0.0
        if theta > math.pi:
            theta = TWO_PI - theta
            phi += math.pi
        phi %= TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def off(cls) -> "PulseSpec":
        return cls(0.0, 0.0, 0.0)

    @property
    def axis(self) -> np.ndarray:
        """Unit vector (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta))."""
        st = math.sin(self.theta)
        return np.array(
            [st * math.cos(self.phi), st * math.sin(self.phi), math.cos(self.theta)]
        )

    def to_dict(self) -> dict:
        return {"omega": self.omega, "theta": self.theta, "phi": self.phi}

    @classmethod
    def from_dict(cls, obj: dict) -> "PulseSpec":
        return cls(float(obj["omega"]), float(obj["theta"]), float(obj["phi"]))


@dataclass(frozen=True)
class ProtocolParams:
    """Full parameter vector of one circuit instance.

    The pulses fire at the end of the interaction period, i.e. the pulse
    instant coincides with the evolution duration t.  chi is the global
    phase applied to the circuit when comparing against a target gate.
    """

    coupling: CouplingParams
    t: float
    pulse1: PulseSpec
    pulse2: PulseSpec
    chi: float = 0.0

    def __post_init__(self) -> None:
        t = _require_finite("t", self.t)
        if t < 0:
            raise ValueError(f"t must be nonnegative, got {t}")
        _require_finite("chi", self.chi)

    @classmethod
    def interaction_only(
        cls, j: float, gamma: float, t: float, chi: float = 0.0
    ) -> "ProtocolParams":
        return cls(CouplingParams(j, gamma), t, PulseSpec.off(), PulseSpec.off(), chi)

    def to_dict(self) -> dict:
        return {
            "J": self.coupling.j,
            "gamma": self.coupling.gamma,
            "t": self.t,
            "pulse1": self.pulse1.to_dict(),
            "pulse2": self.pulse2.to_dict(),
            "chi": self.chi,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "ProtocolParams":
        return cls(
            CouplingParams(float(obj["J"]), float(obj["gamma"])),
            float(obj["t"]),
            PulseSpec.from_dict(obj["pulse1"]),
            PulseSpec.from_dict(obj["pulse2"]),
            float(obj.get("chi", 0.0)),
        )


_UP_UP = np.array([1, 0, 0, 0], dtype=complex)
_DOWN_DOWN = np.array([0, 0, 0, 1], dtype=complex)
_BELL_SYM = np.array([0, 1, 1, 0], dtype=complex) / math.sqrt(2)
_BELL_ANTISYM = np.array([0, 1, -1, 0], dtype=complex) / math.sqrt(2)
for _v in (_UP_UP, _DOWN_DOWN, _BELL_SYM, _BELL_ANTISYM):
    _v.flags.writeable = False


@dataclass(frozen=True)
class Spectrum:
    """Analytic eigensystem of the exchange Hamiltonian.

    Order: the twofold level gamma*J/4 on |up,up> and |down,down>, then
    (-gamma*J + 2J)/4 on the symmetric Bell state and (-gamma*J - 2J)/4 on
    the antisymmetric one.
    """

    energies: tuple[float, float, float, float]
    states: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def __iter__(self) -> Iterator[tuple[float, np.ndarray]]:
        return iter(zip(self.energies, self.states))


def hamiltonian(coupling: CouplingParams) -> np.ndarray:
    """(J/4)(sx1 sx2 + sy1 sy2 + gamma sz1 sz2) as a 4x4 Hermitian matrix."""
    sx, sy, sz = pauli("x"), pauli("y"), pauli("z")
    h = (coupling.j / 4.0) * (
        kron(sx, sx) + kron(sy, sy) + coupling.gamma * kron(sz, sz)
    )
    h.flags.writeable = False
    return h


def spectrum(coupling: CouplingParams) -> Spectrum:
    """Closed-form eigenvalues and eigenvectors; no numeric eigensolver."""
    j, g = coupling.j, coupling.gamma
    e_deg = g * j / 4.0
    return Spectrum(
        energies=(e_deg, e_deg, (-g * j + 2.0 * j) / 4.0, (-g * j - 2.0 * j) / 4.0),
        states=(_UP_UP, _DOWN_DOWN, _BELL_SYM, _BELL_ANTISYM),
    )


def evolve_interaction(coupling: CouplingParams, t: float) -> np.ndarray:
    """Exact exchange propagator e^{-iHt} evaluated entry by entry.

    Corners carry e^{-i gamma J t / 4}; the central block is
    e^{+i gamma J t / 4} [[cos(Jt/2), -i sin(Jt/2)], [-i sin(Jt/2), cos(Jt/2)]].
    Any real t is accepted here; nonnegativity is a ProtocolParams concern.
    """
    _require_finite("t", t)
    jt = coupling.j * t
    zz_phase = coupling.gamma * jt / 4.0
    corner = cmath.exp(-1j * zz_phase)
    center = cmath.exp(1j * zz_phase)
    c = math.cos(jt / 2.0) * center
    s = -1j * math.sin(jt / 2.0) * center
    u = np.array(
        [
            [corner, 0, 0, 0],
            [0, c, s, 0],
            [0, s, c, 0],
            [0, 0, 0, corner],
        ]
    )
    return ensure_unitary(u)


def single_pulse_unitary(spin: int, pulse: PulseSpec) -> np.ndarray:
    """Rotation cos(w/2) I - i sin(w/2) (n . sigma) on one spin, identity on the other."""
    if spin not in (1, 2):
        raise ValueError(f"spin must be 1 or 2, got {spin}")
    nx, ny, nz = pulse.axis
    n_dot_sigma = nx * pauli("x") + ny * pauli("y") + nz * pauli("z")
    u2 = math.cos(pulse.omega / 2.0) * ID2 - 1j * math.sin(pulse.omega / 2.0) * n_dot_sigma
    full = kron(u2, ID2) if spin == 1 else kron(ID2, u2)
    return ensure_unitary(full)


def pulse_unitary(pulse1: PulseSpec, pulse2: PulseSpec) -> np.ndarray:
    """Combined pulse propagator; the two single-spin factors commute."""
    return ensure_unitary(
        mat_mul(single_pulse_unitary(1, pulse1), single_pulse_unitary(2, pulse2))
    )


def circuit_unitary(params: ProtocolParams) -> np.ndarray:
    """Pulse layer applied after the interaction period (right-to-left in time)."""
    u_int = evolve_interaction(params.coupling, params.t)
    u_pulse = pulse_unitary(params.pulse1, params.pulse2)
    return ensure_unitary(mat_mul(u_pulse, u_int))


def gate_fidelity(target: np.ndarray, params: ProtocolParams) -> float:
    """Signed fidelity (1/4) Re(e^{i chi} Tr[W^dag U]) of the circuit against W.

    Equals 1 exactly when W = e^{i chi} U_pulse U_int; ranges over [-1, 1].
    The real part can be negative; callers interested only in gate
    equivalence should use :func:`phase_optimized_fidelity`.
    """
    target = ensure_unitary(target)
    u = circuit_unitary(params)
    return float(
        0.25 * (cmath.exp(1j * params.chi) * complex(np.vdot(target, u))).real
    )


class PhaseOptimum(NamedTuple):
    fidelity: float
    chi_star: float


def phase_optimized_fidelity(target: np.ndarray, circuit: np.ndarray) -> PhaseOptimum:
    """Best fidelity over the global phase, with the maximizing phase.

    Returns (|Tr[W^dag U]| / 4, chi*) where chi* = -arg Tr[W^dag U] is the
    phase at which the signed fidelity attains its maximum.  Invariant under
    a global phase of either argument.
    """
    target = ensure_unitary(target)
    circuit = ensure_unitary(circuit)
    t = complex(np.vdot(target, circuit))
    chi_star = -cmath.phase(t) if t != 0 else 0.0
    return PhaseOptimum(abs(t) / 4.0, chi_star)
