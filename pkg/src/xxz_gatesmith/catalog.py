"""Target-gate constructors and the analytic families that realize them.

Each named two-qubit gate comes with a family of exact protocol parameter
sets indexed by integers (n, p): n counts full windings of the exchange
phase J*t and p enumerates the admissible anisotropies.  Every member
reaches the gate with fidelity exactly 1 at the family's global phase chi.

Families (evolution phase J*t, anisotropy gamma, pulse branch, chi):

* swap:       J*t = pi + 2*pi*n, gamma odd;  gamma % 4 == 1 -> pulses off,
              gamma % 4 == 3 -> opposite z pulses; chi = gamma*(pi/4 + pi*n/2).
* iswap:      J*t = pi + 2*pi*n, gamma even; gamma % 4 == 0 -> z pulses for
              even n, off for odd n; gamma % 4 == 2 -> the reverse; same chi.
* sqrt-swap:  J*t = pi/2 + 2*pi*n, gamma = 4p + 1; pulses off for even p,
              z pulses for odd p; chi = gamma*(pi/8 + pi*n/2).
* entangler:  J*t = pi/2, gamma = 0, z pulses with omega1 - omega2 = pi/2;
              the diagonal phase omega1 + omega2 is a free gate parameter.

The "opposite z pulses" branch is omega1 = -omega2 = pi at theta1 = theta2 = 0.
A negative coupling J is accepted everywhere; times are kept nonnegative and
the sign bookkeeping is folded into the realized winding index (see
:func:`condition_params`).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import ensure_unitary, kron, pauli
from .protocol import (
    CouplingParams,
    ProtocolParams,
    PulseSpec,
    circuit_unitary,
    gate_fidelity,
    phase_optimized_fidelity,
)

PI = math.pi
_SQRT_HALF = 1.0 / math.sqrt(2.0)


class GateKind(enum.Enum):
    SWAP = "swap"
    ISWAP = "iswap"
    SQRT_SWAP = "sqrt-swap"
    ENTANGLER = "entangler"
    CONJ_ENTANGLER = "conj-entangler"
    CUSTOM = "custom"


GATE_NAMES = tuple(k.value for k in GateKind)


def gate_kind_from_name(name: str) -> GateKind:
    try:
        return GateKind(name)
    except ValueError:
        raise ValueError(
            f"unknown gate name {name!r}; valid names: {', '.join(GATE_NAMES)}"
        ) from None


@dataclass(frozen=True)
class GateTarget:
    """A named gate, optionally parameterized, or a custom unitary matrix."""

    kind: GateKind
    omega_sum: float = 0.0
    matrix: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if not math.isfinite(self.omega_sum):
            raise ValueError("omega_sum must be finite")
        if self.kind is GateKind.CUSTOM:
            if self.matrix is None:
                raise ValueError("custom gate targets require a matrix")
            object.__setattr__(self, "matrix", ensure_unitary(self.matrix))
        elif self.matrix is not None:
            raise ValueError(f"{self.kind.value} does not take a matrix")


def swap_beta(beta: float) -> np.ndarray:
    """Qubit-exchange gate with phase e^{i beta} on the exchanged amplitudes."""
    ph = cmath.exp(1j * beta)
    return ensure_unitary(
        np.array(
            [
                [1, 0, 0, 0],
                [0, 0, ph, 0],
                [0, ph, 0, 0],
                [0, 0, 0, 1],
            ]
        )
    )


def swap() -> np.ndarray:
    return swap_beta(0.0)


def iswap() -> np.ndarray:
    return swap_beta(PI / 2.0)


def sqrt_swap() -> np.ndarray:
    a = 0.5 * (1 + 1j)
    b = 0.5 * (1 - 1j)
    return ensure_unitary(
        np.array(
            [
                [1, 0, 0, 0],
                [0, a, b, 0],
                [0, b, a, 0],
                [0, 0, 0, 1],
            ]
        )
    )


def entangler(omega_sum: float) -> np.ndarray:
    """Gate sending |up,down> and |down,up> to the Bell pair (|ud> +- |du>)/sqrt(2).

    The corner phases e^{-+ i omega_sum / 2} are free: any pulse pair with
    omega1 - omega2 = pi/2 realizes the central block, and omega1 + omega2
    only rotates the |up,up> / |down,down> amplitudes.
    """
    ca = cmath.exp(-0.5j * omega_sum)
    e = cmath.exp(-0.25j * PI)
    return ensure_unitary(
        np.array(
            [
                [ca, 0, 0, 0],
                [0, _SQRT_HALF * e, _SQRT_HALF * e * -1j, 0],
                [0, _SQRT_HALF * e, _SQRT_HALF * e.conjugate(), 0],
                [0, 0, 0, ca.conjugate()],
            ]
        )
    )


def conjugated_entangler(omega_sum: float) -> np.ndarray:
    """sx1-conjugated entangler: prepares (|uu> +- |dd>)/sqrt(2) from |dd> and |uu>."""
    cb = cmath.exp(0.5j * omega_sum)
    e = cmath.exp(0.25j * PI)
    return ensure_unitary(
        np.array(
            [
                [_SQRT_HALF * e, 0, 0, _SQRT_HALF * e.conjugate()],
                [0, cb, 0, 0],
                [0, 0, cb.conjugate(), 0],
                [_SQRT_HALF * e.conjugate() * -1j, 0, 0, _SQRT_HALF * e.conjugate()],
            ]
        )
    )


def make_gate(target: Union[GateTarget, GateKind, str]) -> np.ndarray:
    """Materialize the target's unitary matrix."""
    if isinstance(target, str):
        target = GateTarget(gate_kind_from_name(target))
    elif isinstance(target, GateKind):
        target = GateTarget(target)
    if target.kind is GateKind.SWAP:
        return swap()
    if target.kind is GateKind.ISWAP:
        return iswap()
    if target.kind is GateKind.SQRT_SWAP:
        return sqrt_swap()
    if target.kind is GateKind.ENTANGLER:
        return entangler(target.omega_sum)
    if target.kind is GateKind.CONJ_ENTANGLER:
        return conjugated_entangler(target.omega_sum)
    assert target.matrix is not None
    return target.matrix


@dataclass(frozen=True)
class Unrealizable:
    """No analytic parameter family produces this gate; synthesis is the fallback."""

    reason: str


_PULSES_OFF = (PulseSpec.off(), PulseSpec.off())
_PULSES_Z = (PulseSpec(PI, 0.0, 0.0), PulseSpec(-PI, 0.0, 0.0))


def _swap_like_params(
    gamma: int, n: int, j_ref: float, pulsed_when: str
) -> ProtocolParams:
    """Shared construction for the swap and iswap families.

    The evolution time is |pi + 2*pi*n| / |J|, so the realized exchange
    phase is J*t = pi + 2*pi*n_eff with the integer winding index
    n_eff = (sign(J)*|2n + 1| - 1) / 2; the pulse branch and chi are
    evaluated at n_eff.
    """
    m = abs(2 * n + 1)
    n_eff = (m - 1) // 2 if j_ref > 0 else (-m - 1) // 2
    t = abs((PI + 2.0 * PI * n) / j_ref)
    if pulsed_when == "gamma3":
        pulsed = gamma % 4 == 3
    else:  # iswap rule: residue class and winding parity interlock
        pulsed = (n_eff % 2 == 0) if gamma % 4 == 0 else (n_eff % 2 == 1)
    pulses = _PULSES_Z if pulsed else _PULSES_OFF
    chi = gamma * (PI / 4.0 + PI * n_eff / 2.0)
    return ProtocolParams(CouplingParams(j_ref, float(gamma)), t, *pulses, chi=chi)


def condition_params(
    target: Union[GateTarget, GateKind, str],
    n: int,
    p: int,
    j_ref: float = 1.0,
) -> Union[ProtocolParams, Unrealizable]:
    """Exact protocol parameters for family member (n, p), or Unrealizable.

    p enumerates the admissible anisotropies of the gate's family: gamma =
    2p + 1 for swap (odd), gamma = 2p for iswap (even), gamma = 4p + 1 for
    sqrt-swap.  j_ref is the physical coupling the time is derived from; it
    may be negative, in which case family members whose exchange phase
    cannot be reached with t >= 0 are reported Unrealizable.
    """
    if isinstance(target, str):
        target = GateTarget(gate_kind_from_name(target))
    elif isinstance(target, GateKind):
        target = GateTarget(target)
    if not math.isfinite(j_ref) or j_ref == 0.0:
        raise ValueError("j_ref must be finite and nonzero")
    kind = target.kind

    if kind is GateKind.SWAP:
        return _swap_like_params(2 * p + 1, n, j_ref, "gamma3")
    if kind is GateKind.ISWAP:
        return _swap_like_params(2 * p, n, j_ref, "iswap")
    if kind is GateKind.SQRT_SWAP:
        target_jt = PI / 2.0 + 2.0 * PI * n
        if target_jt * j_ref <= 0:
            return Unrealizable(
                f"sqrt-swap needs J*t = pi/2 + 2*pi*n with t >= 0; n = {n} is "
                f"out of reach for J = {j_ref} (use n with matching sign or flip J)"
            )
        gamma = 4 * p + 1
        pulses = _PULSES_Z if p % 2 else _PULSES_OFF
        chi = gamma * (PI / 8.0 + PI * n / 2.0)
        return ProtocolParams(
            CouplingParams(j_ref, float(gamma)), target_jt / j_ref, *pulses, chi=chi
        )
    if kind is GateKind.ENTANGLER:
        if j_ref < 0:
            return Unrealizable(
                "the entangler family needs J*t = +pi/2, unreachable for J < 0"
            )
        s = target.omega_sum
        return ProtocolParams(
            CouplingParams(j_ref, 0.0),
            (PI / 2.0) / j_ref,
            PulseSpec(s / 2.0 + PI / 4.0, 0.0, 0.0),
            PulseSpec(s / 2.0 - PI / 4.0, 0.0, 0.0),
            chi=0.0,
        )
    return Unrealizable(
        f"no analytic parameter family for {kind.value!r}; use the synthesizer"
    )


@dataclass(frozen=True)
class FamilyCheck:
    """Verification record for one (n, p) family member."""

    n: int
    p: int
    admissible: bool
    fidelity_deviation: Optional[float] = None
    chi_star: Optional[float] = None
    chi_formula: Optional[float] = None
    chi_mismatch: Optional[float] = None
    reason: Optional[str] = None

    def to_dict(self) -> dict:
        out: dict = {"n": self.n, "p": self.p, "admissible": self.admissible}
        if self.admissible:
            out.update(
                fidelity_deviation=self.fidelity_deviation,
                chi_star=self.chi_star,
                chi_formula=self.chi_formula,
                chi_mismatch=self.chi_mismatch,
            )
        else:
            out["reason"] = self.reason
        return out


def wrapped_phase_difference(a: float, b: float) -> float:
    """|a - b| folded into [0, pi] (distance on the phase circle)."""
    d = (a - b) % (2.0 * PI)
    return min(d, 2.0 * PI - d)


def verify_family(
    target: Union[GateTarget, GateKind, str],
    n_range: Iterable[int],
    p_range: Iterable[int],
    j_ref: float = 1.0,
) -> list[FamilyCheck]:
    """Evaluate every (n, p) member and report fidelity and phase deviations.

    Records are produced in lexicographic (n, p) order.  Inadmissible
    members (no family, or unreachable at the sign of j_ref) become records
    with admissible=False, never exceptions.
    """
    if isinstance(target, str):
        target = GateTarget(gate_kind_from_name(target))
    elif isinstance(target, GateKind):
        target = GateTarget(target)
    w = make_gate(target)
    records: list[FamilyCheck] = []
    for n in n_range:
        for p in p_range:
            params = condition_params(target, n, p, j_ref)
            if isinstance(params, Unrealizable):
                records.append(FamilyCheck(n, p, False, reason=params.reason))
                continue
            fid = gate_fidelity(w, params)
            opt = phase_optimized_fidelity(w, circuit_unitary(params))
            records.append(
                FamilyCheck(
                    n,
                    p,
                    True,
                    fidelity_deviation=abs(fid - 1.0),
                    chi_star=opt.chi_star,
                    chi_formula=params.chi,
                    chi_mismatch=wrapped_phase_difference(opt.chi_star, params.chi),
                )
            )
    return records


_YY = kron(pauli("y"), pauli("y"))


def concurrence(state: Sequence[complex]) -> float:
    """Entanglement of a pure two-qubit state: |<psi| sy sy |psi*>|.

    0 for product states, 1 for Bell states.  The state must be normalized
    to unit length within 1e-10.
    """
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise ValueError(f"state must have 4 components, got shape {psi.shape}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state must be normalized, got |psi| = {norm!r}")
    return float(abs(psi.conj() @ _YY @ psi.conj()))
