"""Ultracold-atom realization: lattice depths to effective spin couplings.

Two atoms in adjacent sites of a cubic optical lattice realize the two-spin
exchange model; the knobs are the spin-dependent lattice depths V_up, V_down
(in recoil-energy units E_r) and the dimensionless scattering parameters
k*a.  Closed forms, all in E_r units:

    t_sigma     = (4/sqrt(pi)) V^(3/4) exp(-2 sqrt(V))        tunneling
    U_updown    = sqrt(8/pi) (k a_ud) Vbar^(3/4)              interspecies
    U_sigma (B) = sqrt(8/pi) (k a_ss) V^(3/4)                 bosons
    U_sigma (F) = 2 sqrt(V)                                   fermions
    Vbar        = 4 V_up V_down / (sqrt(V_up) + sqrt(V_down))^2

Second-order superexchange gives J = +- t_up t_down / U_updown (+ fermions,
- bosons) and gamma J = (t_up^2 + t_down^2)/(2 U_updown) - t_up^2/U_upup
- t_down^2/U_downdown, the last two terms dropping out for fermions where
U_sigma >> U_updown.  Conversion to angular frequency happens once, at the
coupling boundary, through the recoil energy.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import NamedTuple, Optional, Union

import numpy as np
from scipy.optimize import brentq, least_squares

from .catalog import GateKind

PI = math.pi

#: minimum exchange phase |J|*t needed by each gate family (fastest member)
MIN_GATE_PHASE = {
    GateKind.SWAP: PI,
    GateKind.ISWAP: PI,
    GateKind.SQRT_SWAP: PI / 2.0,
    GateKind.ENTANGLER: PI / 2.0,
    GateKind.CONJ_ENTANGLER: PI / 2.0,
}

#: default ratio t/U below which the perturbative spin model is trusted
PERTURBATIVE_RATIO = 0.1


class Statistics(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")
    return value


@dataclass(frozen=True)
class LatticeConfig:
    """Lattice depths, scattering parameters and scales for one realization.

    Depths are in units of E_r; recoil_energy is the absolute scale in
    angular-frequency units (rad/s); coherence_time is in seconds.  The
    optional rabi_frequency (rad/s) is used only for the single-spin
    addressability warning, never in gate math.
    """

    v_up: float
    v_down: float
    k_a_updown: float
    k_a_upup: float = 0.0
    k_a_downdown: float = 0.0
    statistics: Statistics = Statistics.BOSE
    recoil_energy: float = 1.0
    coherence_time: Optional[float] = None
    rabi_frequency: Optional[float] = None

    def __post_init__(self) -> None:
        _positive("v_up", self.v_up)
        _positive("v_down", self.v_down)
        _positive("recoil_energy", self.recoil_energy)
        for name in ("k_a_updown", "k_a_upup", "k_a_downdown"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        if self.coherence_time is not None:
            _positive("coherence_time", self.coherence_time)
        if self.rabi_frequency is not None:
            _positive("rabi_frequency", self.rabi_frequency)

    def to_dict(self) -> dict:
        out = {
            "v_up": self.v_up,
            "v_down": self.v_down,
            "k_a_updown": self.k_a_updown,
            "k_a_upup": self.k_a_upup,
            "k_a_downdown": self.k_a_downdown,
            "statistics": self.statistics.value,
            "recoil_energy": self.recoil_energy,
        }
        if self.coherence_time is not None:
            out["coherence_time"] = self.coherence_time
        if self.rabi_frequency is not None:
            out["rabi_frequency"] = self.rabi_frequency
        return out

    @classmethod
    def from_dict(cls, obj: dict) -> "LatticeConfig":
        known = {
            "v_up",
            "v_down",
            "k_a_updown",
            "k_a_upup",
            "k_a_downdown",
            "statistics",
            "recoil_energy",
            "coherence_time",
            "rabi_frequency",
        }
        unknown = set(obj) - known
        if unknown:
            raise ValueError(f"unknown lattice config keys: {sorted(unknown)}")
        kwargs = dict(obj)
        if "statistics" in kwargs:
            try:
                kwargs["statistics"] = Statistics(str(kwargs["statistics"]).lower())
            except ValueError:
                raise ValueError(
                    f"statistics must be 'bose' or 'fermi', got {obj['statistics']!r}"
                ) from None
        return cls(**kwargs)


class OnsiteEnergies(NamedTuple):
    u_updown: float
    u_upup: float
    u_downdown: float


@dataclass(frozen=True)
class EffectiveCouplings:
    """Superexchange coupling J (rad/s), anisotropy gamma, and the raw energies (E_r)."""

    t_up: float
    t_down: float
    u_updown: float
    u_upup: float
    u_downdown: float
    j: float
    gamma: float
    perturbative_ok: bool

    def to_dict(self) -> dict:
        return {
            "t_up": self.t_up,
            "t_down": self.t_down,
            "u_updown": self.u_updown,
            "u_upup": self.u_upup,
            "u_downdown": self.u_downdown,
            "J": self.j,
            "gamma": self.gamma,
            "perturbative_ok": self.perturbative_ok,
        }


def tunneling_energy(depth: float) -> float:
    """Tunneling (4/sqrt(pi)) V^(3/4) exp(-2 sqrt(V)) in E_r units.

    Strictly decreasing for V > 9/16, which covers every physical depth
    handled here.
    """
    depth = _positive("depth", depth)
    return (4.0 / math.sqrt(PI)) * depth**0.75 * math.exp(-2.0 * math.sqrt(depth))


def spin_average_depth(v_up: float, v_down: float) -> float:
    """Spin-averaged depth 4 V_up V_down / (sqrt(V_up) + sqrt(V_down))^2."""
    v_up = _positive("v_up", v_up)
    v_down = _positive("v_down", v_down)
    return 4.0 * v_up * v_down / (math.sqrt(v_up) + math.sqrt(v_down)) ** 2


def onsite_energies(config: LatticeConfig) -> OnsiteEnergies:
    """Interspecies and same-species on-site energies in E_r units."""
    vbar = spin_average_depth(config.v_up, config.v_down)
    pref = math.sqrt(8.0 / PI)
    u_updown = pref * config.k_a_updown * vbar**0.75
    if config.statistics is Statistics.BOSE:
        u_upup = pref * config.k_a_upup * config.v_up**0.75
        u_downdown = pref * config.k_a_downdown * config.v_down**0.75
    else:
        u_upup = 2.0 * math.sqrt(config.v_up)
        u_downdown = 2.0 * math.sqrt(config.v_down)
    return OnsiteEnergies(u_updown, u_upup, u_downdown)


def couplings_from_energies(
    t_up: float,
    t_down: float,
    u_updown: float,
    u_upup: float,
    u_downdown: float,
    statistics: Statistics,
    recoil_energy: float = 1.0,
    perturbative_ratio: float = PERTURBATIVE_RATIO,
) -> EffectiveCouplings:
    """Superexchange J and gamma from tunneling and on-site energies (E_r units).

    J is positive for fermions and negative for bosons.  For fermions the
    same-species terms are unconditionally excluded from gamma*J (the
    U_sigma >> U_updown limit); for bosons they contribute and must be
    nonzero.
    """
    recoil_energy = _positive("recoil_energy", recoil_energy)
    if u_updown == 0.0:
        raise ValueError("u_updown must be nonzero")
    j_er = t_up * t_down / u_updown
    gamma_j = (t_up**2 + t_down**2) / (2.0 * u_updown)
    if statistics is Statistics.BOSE:
        if u_upup == 0.0 or u_downdown == 0.0:
            raise ValueError("bosonic couplings need nonzero same-species energies")
        gamma_j -= t_up**2 / u_upup + t_down**2 / u_downdown
        j_er = -j_er
    gamma = gamma_j / j_er
    u_min = min(abs(u_updown), abs(u_upup), abs(u_downdown))
    perturbative_ok = max(abs(t_up), abs(t_down)) <= perturbative_ratio * u_min
    return EffectiveCouplings(
        t_up=t_up,
        t_down=t_down,
        u_updown=u_updown,
        u_upup=u_upup,
        u_downdown=u_downdown,
        j=j_er * recoil_energy,
        gamma=gamma,
        perturbative_ok=perturbative_ok,
    )


def effective_couplings(config: LatticeConfig) -> EffectiveCouplings:
    """Full pipeline from lattice depths to (J, gamma)."""
    u = onsite_energies(config)
    return couplings_from_energies(
        tunneling_energy(config.v_up),
        tunneling_energy(config.v_down),
        u.u_updown,
        u.u_upup,
        u.u_downdown,
        config.statistics,
        config.recoil_energy,
    )


@dataclass(frozen=True)
class FeasibilityReport:
    """Coherence-time bound for one gate family against a realized coupling."""

    gate: str
    j_min: float
    j_abs: float
    feasible: bool
    min_gate_time: float
    coherence_time: float
    pulse_warning: Optional[str]

    def to_dict(self) -> dict:
        return {
            "gate": self.gate,
            "j_min": self.j_min,
            "j_abs": self.j_abs,
            "feasible": self.feasible,
            "min_gate_time": self.min_gate_time,
            "coherence_time": self.coherence_time,
            "pulse_warning": self.pulse_warning,
        }


def gate_feasibility(
    couplings: EffectiveCouplings,
    kind: GateKind,
    coherence_time: float,
    rabi_frequency: Optional[float] = None,
) -> FeasibilityReport:
    """Minimum required |J| and fastest gate time for the family.

    The fastest family member needs |J| t_gate = pi (swap-type gates) or
    pi/2 (sqrt-swap and entanglers), so finishing within the coherence time
    requires |J| >= pi/t_c or pi/(2 t_c) respectively.  The bosonic branch
    has J < 0; the bound is applied to |J|.
    """
    coherence_time = _positive("coherence_time", coherence_time)
    try:
        phase = MIN_GATE_PHASE[kind]
    except KeyError:
        raise ValueError(f"no coherence-time bound known for gate kind {kind.value!r}")
    j_abs = abs(couplings.j)
    j_min = phase / coherence_time
    always_pulsed = kind in (GateKind.ENTANGLER, GateKind.CONJ_ENTANGLER)
    warning = (
        "this family always fires single-spin pulses"
        if always_pulsed
        else "some branches of this family fire single-spin pulses"
    )
    warning += "; instantaneous rotations need a Rabi frequency Omega >> |J|"
    if rabi_frequency is not None and rabi_frequency <= 10.0 * j_abs:
        warning += (
            f" (supplied Omega = {rabi_frequency:g} rad/s does not dominate"
            f" |J| = {j_abs:g} rad/s)"
        )
    return FeasibilityReport(
        gate=kind.value,
        j_min=j_min,
        j_abs=j_abs,
        feasible=j_abs >= j_min,
        min_gate_time=phase / j_abs if j_abs > 0 else math.inf,
        coherence_time=coherence_time,
        pulse_warning=warning,
    )


@dataclass(frozen=True)
class Infeasible:
    """No depth pair in bounds realizes the requested couplings."""

    reason: str
    closest: LatticeConfig
    achieved_j: float
    achieved_gamma: float


def _couplings_at(template: LatticeConfig, v_up: float, v_down: float) -> EffectiveCouplings:
    return effective_couplings(replace(template, v_up=v_up, v_down=v_down))


def solve_depths_for_couplings(
    target_j: float,
    target_gamma: float,
    template: LatticeConfig,
    depth_bounds: tuple[float, float] = (1.0, 50.0),
    rel_tol: float = 1e-6,
) -> Union[LatticeConfig, Infeasible]:
    """Invert the depth-to-coupling map: find (V_up, V_down) giving (J, gamma).

    The sign of target_j must match the template statistics (negative for
    bosons, positive for fermions); a mismatch is an error before any
    search.  J is matched to relative rel_tol and gamma to rel_tol scaled by
    max(1, |gamma|).  Searches a symmetric 1-D slice first (where gamma is
    depth-independent), then a bounded 2-D least-squares from a fixed start
    grid; failure returns Infeasible with the closest achievable pair.
    """
    if not (math.isfinite(target_j) and target_j != 0):
        raise ValueError("target_j must be finite and nonzero")
    if not math.isfinite(target_gamma):
        raise ValueError("target_gamma must be finite")
    want_negative = template.statistics is Statistics.BOSE
    if (target_j < 0) != want_negative:
        raise ValueError(
            f"target_j sign is inconsistent with {template.statistics.value} "
            f"statistics (expected {'negative' if want_negative else 'positive'} J)"
        )
    lo, hi = depth_bounds
    if not (0 < lo < hi):
        raise ValueError("depth_bounds must satisfy 0 < lo < hi")
    gamma_scale = max(1.0, abs(target_gamma))

    def errors(vu: float, vd: float) -> tuple[float, float]:
        c = _couplings_at(template, vu, vd)
        return (
            abs(c.j - target_j) / abs(target_j),
            abs(c.gamma - target_gamma) / gamma_scale,
        )

    def matches(vu: float, vd: float) -> bool:
        ej, eg = errors(vu, vd)
        return ej <= rel_tol and eg <= rel_tol

    # symmetric slice: gamma is constant in depth at v_up == v_down, so only
    # |J| needs solving there and brentq on the monotone log-magnitude works
    gamma_diag = _couplings_at(template, lo, lo).gamma
    if abs(gamma_diag - target_gamma) / gamma_scale <= rel_tol:

        def diag_obj(v: float) -> float:
            return math.log(abs(_couplings_at(template, v, v).j)) - math.log(
                abs(target_j)
            )

        f_lo, f_hi = diag_obj(lo), diag_obj(hi)
        if f_lo == 0.0:
            root = lo
        elif f_hi == 0.0:
            root = hi
        elif f_lo * f_hi < 0:
            root = brentq(diag_obj, lo, hi, xtol=1e-14, rtol=1e-15)
        else:
            root = None
        if root is not None and matches(root, root):
            return replace(template, v_up=root, v_down=root)

    # general 2-D search, log-magnitude residual for conditioning
    def residuals(x: np.ndarray) -> np.ndarray:
        c = _couplings_at(template, float(x[0]), float(x[1]))
        return np.array(
            [
                math.log(abs(c.j) / abs(target_j)),
                (c.gamma - target_gamma) / gamma_scale,
            ]
        )

    grid = np.geomspace(lo * 1.05, hi * 0.95, 5)
    best_x: Optional[np.ndarray] = None
    best_err = math.inf
    for vu0 in grid:
        for vd0 in grid:
            fit = least_squares(
                residuals,
                np.array([vu0, vd0]),
                bounds=(np.array([lo, lo]), np.array([hi, hi])),
                xtol=1e-15,
                ftol=1e-15,
                gtol=1e-15,
            )
            ej, eg = errors(float(fit.x[0]), float(fit.x[1]))
            err = max(ej, eg)
            if err < best_err:
                best_err, best_x = err, fit.x
            if err <= rel_tol:
                return replace(
                    template, v_up=float(fit.x[0]), v_down=float(fit.x[1])
                )

    assert best_x is not None
    closest = replace(template, v_up=float(best_x[0]), v_down=float(best_x[1]))
    achieved = effective_couplings(closest)
    return Infeasible(
        reason=(
            f"no depths in [{lo:g}, {hi:g}] E_r reach J = {target_j:g}, "
            f"gamma = {target_gamma:g} within {rel_tol:g} "
            f"(best residual {best_err:.3e})"
        ),
        closest=closest,
        achieved_j=achieved.j,
        achieved_gamma=achieved.gamma,
    )
