"""Cloning and broadcasting machines.

Covers the unrestricted broadcaster model (reference-state pairs with their
fixed reduced outputs), the maximal-magic counterexample sweep, and the two
classic state cloners: Wootters-Zurek (state dependent) and Buzek-Hillery
(state independent). Machine Hilbert spaces are never materialized; only the
reduced output formulas are implemented.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import InvalidInputError, InvalidMachineError, InvalidSpecError
from .measures import rom_from_bloch, rom_qubit
from .states import (
    BlochVector,
    DensityMatrix,
    PureState,
    bloch_from_density,
    density_from_bloch,
    superpose,
    t_perp_state,
    t_state,
)

_SQRT3 = math.sqrt(3.0)


# ---------------------------------------------------------------------------
# Wootters-Zurek machine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WZParams:
    """Reference-state angles: |psi> = cos(g/2)|0> + e^{i g'} sin(g/2)|1>."""

    gamma: float
    gamma_prime: float

    def reference(self) -> PureState:
        return PureState(
            [
                math.cos(self.gamma / 2.0),
                np.exp(1j * self.gamma_prime) * math.sin(self.gamma / 2.0),
            ]
        )

    def reference_perp(self) -> PureState:
        return PureState(
            [
                math.sin(self.gamma / 2.0),
                -np.exp(1j * self.gamma_prime) * math.cos(self.gamma / 2.0),
            ]
        )

    def reference_magic(self) -> float:
        g, gp = self.gamma, self.gamma_prime
        return abs(math.cos(g)) + abs(math.sin(g)) * (
            abs(math.sin(gp)) + abs(math.cos(gp))
        )


@dataclass(frozen=True)
class WZCheck:
    perfect: bool
    input_magic: float
    output_magic: float
    theta: float


def wz_output(p: WZParams, theta: float, zeta: float) -> DensityMatrix:
    """Both clones: cos^2(theta/2) rho_psi + sin^2(theta/2) rho_perp.

    The output mixture does not depend on zeta; the argument is kept so
    sweeps address machine inputs by their full (theta, zeta) coordinates.
    """
    del zeta
    c2 = math.cos(theta / 2.0) ** 2
    rho_ref = p.reference().density().mat
    rho_perp = p.reference_perp().density().mat
    return DensityMatrix(c2 * rho_ref + (1.0 - c2) * rho_perp)


def wz_output_magic_unclipped(p: WZParams, theta: float) -> float:
    """|cos theta| times the reference magic, without the R >= 1 clip."""
    return abs(math.cos(theta)) * p.reference_magic()


def wz_output_magic(p: WZParams, theta: float) -> float:
    return max(1.0, wz_output_magic_unclipped(p, theta))


def wz_broadcast_check(p: WZParams, theta: float, zeta: float) -> WZCheck:
    """Perfect-broadcast test for the machine input at (theta, zeta).

    The input state is cos(theta/2)|psi> + e^{i zeta} sin(theta/2)|perp>;
    its magic must equal |cos theta| times the reference magic.
    """
    state = superpose(p.reference(), p.reference_perp(), theta, zeta)
    input_magic = rom_qubit(state.density())
    output_magic = wz_output_magic_unclipped(p, theta)
    return WZCheck(
        perfect=abs(input_magic - output_magic) <= tol.BROADCAST_EQUALITY,
        input_magic=input_magic,
        output_magic=output_magic,
        theta=theta,
    )


def wz_state_check(p: WZParams, state: PureState) -> WZCheck:
    """State-driven check using the overlap-as-cosine machine convention.

    The machine angle is taken as theta = arccos |<psi_ref|state>|, so the
    reported output magic is |<psi_ref|state>| times the reference magic.
    """
    overlap = min(1.0, abs(complex(np.vdot(p.reference().amps, state.amps))))
    theta = math.acos(overlap)
    input_magic = rom_qubit(state.density())
    output_magic = overlap * p.reference_magic()
    return WZCheck(
        perfect=abs(input_magic - output_magic) <= tol.BROADCAST_EQUALITY,
        input_magic=input_magic,
        output_magic=output_magic,
        theta=theta,
    )


# ---------------------------------------------------------------------------
# Buzek-Hillery machine
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BHParams:
    """Machine overlaps: xi in [0, 1/2], eta within the Schwarz bound."""

    xi: float
    eta: float

    def __post_init__(self):
        if not 0.0 <= self.xi <= 0.5:
            raise InvalidMachineError(f"xi must lie in [0, 1/2], got {self.xi}")
        bound = eta_schwarz_max(self.xi)
        if not 0.0 <= self.eta <= bound + 1e-12:
            raise InvalidMachineError(
                f"eta = {self.eta} outside [0, {bound}] for xi = {self.xi}"
            )


def eta_schwarz_max(xi: float) -> float:
    """Largest machine overlap allowed at a given xi: 2 sqrt(xi) sqrt(1-2xi)."""
    return 2.0 * math.sqrt(xi) * math.sqrt(max(0.0, 1.0 - 2.0 * xi))


def bh_input_state(theta: float, zeta: float) -> PureState:
    """Machine input cos(theta/2)|0> + e^{-i zeta} sin(theta/2)|1>.

    The phase sign matches the output matrix convention of `bh_output`, so
    the state-independent machine scales Bloch vectors componentwise.
    """
    return PureState(
        [
            math.cos(theta / 2.0),
            np.exp(-1j * zeta) * math.sin(theta / 2.0),
        ]
    )


def bh_output(p: BHParams, theta: float, zeta: float) -> DensityMatrix:
    """Reduced output clone for the machine input at (theta, zeta)."""
    c2 = math.cos(theta / 2.0) ** 2
    cos_t = math.cos(theta)
    off = 0.5 * p.eta * math.sin(theta) * np.exp(1j * zeta)
    mat = np.array(
        [
            [c2 - p.xi * cos_t, off],
            [np.conj(off), (1.0 - c2) + p.xi * cos_t],
        ]
    )
    return DensityMatrix(mat)


def bh_magic_unclipped(p: BHParams, theta: float, zeta: float) -> float:
    return (1.0 - 2.0 * p.xi) * abs(math.cos(theta)) + p.eta * abs(
        math.sin(theta)
    ) * (abs(math.cos(zeta)) + abs(math.sin(zeta)))


def bh_magic(p: BHParams, theta: float, zeta: float) -> float:
    """Robustness of the output clone, clipped at the stabilizer floor."""
    return max(1.0, bh_magic_unclipped(p, theta, zeta))


def m_ratio(p: BHParams, theta: float, zeta: float) -> float:
    """Output-to-input magic ratio, both sides unclipped."""
    numer = bh_magic_unclipped(p, theta, zeta)
    denom = abs(math.cos(theta)) + abs(math.sin(theta)) * (
        abs(math.cos(zeta)) + abs(math.sin(zeta))
    )
    return numer / denom


def bh_low_magic_interval(
    theta: float = 0.1,
    xi_max: float = 0.02,
    zeta_points: int = 720,
    xi_points: int = 101,
) -> tuple:
    """Achieved (min, max) of the magic ratio in the low-magic regime.

    Sweeps zeta over (0, 2 pi) and xi over (0, xi_max], with eta at its
    Schwarz maximum for each xi.
    """
    zetas = np.linspace(0.0, 2.0 * math.pi, zeta_points, endpoint=False)
    xis = np.linspace(0.0, xi_max, xi_points)
    lo, hi = math.inf, -math.inf
    for xi in xis:
        p = BHParams(xi, eta_schwarz_max(xi))
        for zeta in zetas:
            value = m_ratio(p, theta, zeta)
            lo = min(lo, value)
            hi = max(hi, value)
    return lo, hi


# ---------------------------------------------------------------------------
# Unrestricted broadcaster model
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BroadcasterSpec:
    """A machine that perfectly broadcasts a fixed orthogonal reference pair.

    `sys_out` / `aux_out` hold the reduced outputs for each reference input.
    All four outputs must carry the reference magic exactly.
    """

    ref_in: tuple          # (PureState, PureState), orthogonal
    sys_out: tuple         # (DensityMatrix, DensityMatrix)
    aux_out: tuple         # (DensityMatrix, DensityMatrix)

    def __post_init__(self):
        psi, perp = self.ref_in
        if abs(complex(np.vdot(psi.amps, perp.amps))) > tol.ORTHOGONALITY:
            raise InvalidSpecError("reference states are not orthogonal")
        ref_magic = rom_qubit(psi.density())
        outputs = list(self.sys_out) + list(self.aux_out)
        for rho in outputs:
            if abs(rom_qubit(rho) - ref_magic) > tol.BROADCAST_EQUALITY:
                raise InvalidSpecError(
                    "output magic does not match the reference magic"
                )

    def reference_magic(self) -> float:
        return rom_qubit(self.ref_in[0].density())


def unrestricted_broadcast(
    spec: BroadcasterSpec, alpha: complex, beta: complex
) -> tuple:
    """Reduced outputs for the input alpha |psi> + beta |psi_perp>.

    Orthogonal machine states wash out all coherences, leaving the convex
    mixtures of the reference outputs with weights |alpha|^2 and |beta|^2.
    """
    wa, wb = abs(alpha) ** 2, abs(beta) ** 2
    if abs(wa + wb - 1.0) > tol.WEIGHTS:
        raise InvalidInputError(f"|alpha|^2 + |beta|^2 = {wa + wb}, expected 1")
    sys_rho = DensityMatrix(wa * spec.sys_out[0].mat + wb * spec.sys_out[1].mat)
    aux_rho = DensityMatrix(wa * spec.aux_out[0].mat + wb * spec.aux_out[1].mat)
    return sys_rho, aux_rho


def maximal_magic_spec() -> BroadcasterSpec:
    """Broadcaster designed for the T-state pair with product outputs."""
    psi, perp = t_state(), t_perp_state()
    return BroadcasterSpec(
        ref_in=(psi, perp),
        sys_out=(psi.density(), perp.density()),
        aux_out=(psi.density(), perp.density()),
    )


def superposition_bloch(theta: float, zeta: float) -> BlochVector:
    """Closed-form Bloch vector of cos(t/2)|T> + e^{i z} sin(t/2)|Tperp>."""
    ct, st = math.cos(theta), math.sin(theta)
    cz, sz = math.cos(zeta), math.sin(zeta)
    m1 = ct / _SQRT3 - st * cz / math.sqrt(6.0) + st * sz / math.sqrt(2.0)
    m2 = ct / _SQRT3 - st * cz / math.sqrt(6.0) - st * sz / math.sqrt(2.0)
    m3 = (ct + math.sqrt(2.0) * st * cz) / _SQRT3
    return BlochVector(m1, m2, m3)


def superposition_magic(theta: float, zeta: float) -> float:
    """Closed-form robustness of the T-basis superposition state."""
    return rom_from_bloch(superposition_bloch(theta, zeta))


@dataclass(frozen=True)
class Theorem2Report:
    """Gap sweep between input magic (zeta dependent) and output magic."""

    theta: float
    max_gap: float
    worst_zeta: float
    output_magic: float
    output_spread: float
    closed_form_max_err: float


def theorem2_falsify(
    spec: BroadcasterSpec, theta: float, zeta_grid
) -> Theorem2Report:
    """Show the maximal-magic broadcaster fails on generic superpositions.

    The input magic varies with zeta while the broadcast output magic does
    not; the report carries the largest gap across the grid.
    """
    ref = maximal_magic_spec()
    for mine, expected in zip(
        list(spec.ref_in), list(ref.ref_in)
    ):
        overlap = abs(complex(np.vdot(mine.amps, expected.amps)))
        if abs(overlap - 1.0) > tol.ORTHOGONALITY:
            raise InvalidSpecError("spec is not of the maximal-magic form")
    for mine, expected in zip(
        list(spec.sys_out) + list(spec.aux_out),
        list(ref.sys_out) + list(ref.aux_out),
    ):
        if np.max(np.abs(mine.mat - expected.mat)) > tol.ORTHOGONALITY:
            raise InvalidSpecError("spec outputs are not the product form")

    max_gap, worst_zeta = -1.0, float("nan")
    closed_err = 0.0
    outputs = []
    for zeta in zeta_grid:
        alpha = math.cos(theta / 2.0)
        beta = np.exp(1j * zeta) * math.sin(theta / 2.0)
        _, aux = unrestricted_broadcast(spec, alpha, beta)
        out_magic = rom_qubit(aux)
        outputs.append(out_magic)
        closed = superposition_magic(theta, zeta)
        direct = rom_qubit(
            superpose(spec.ref_in[0], spec.ref_in[1], theta, zeta).density()
        )
        closed_err = max(closed_err, abs(closed - direct))
        gap = abs(closed - out_magic)
        if gap > max_gap:
            max_gap, worst_zeta = gap, zeta
    outputs = np.array(outputs)
    return Theorem2Report(
        theta=theta,
        max_gap=max_gap,
        worst_zeta=worst_zeta,
        output_magic=float(outputs.mean()),
        output_spread=float(outputs.max() - outputs.min()),
        closed_form_max_err=closed_err,
    )
