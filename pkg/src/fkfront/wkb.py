"""Exponential-tail transport: rays of the phase equation.

Ahead of the front the profile is exponentially small; writing it as
``A * exp(phi)`` and keeping leading order turns the model into the
Hamilton-Jacobi equation

    phi_t + a(x) phi_x**2 + 1 = 0,        a(x) = x**2 + epsilon.

The Hamiltonian ``H = 1 + a p**2`` is conserved along rays, and
``Htilde = sqrt(H - 1)`` labels the ray family.  Rays obey

    dx/dt = +/- 2 Htilde sqrt(a(x)),

where :class:`Branch` picks the sign: ``Branch.PLUS`` moves right
everywhere, ``Branch.MINUS`` moves left.  For the quadratic coefficient the
flow integrates exactly: with ``z(x) = x + sqrt(x**2 + epsilon)`` one has
``z(x(t)) = z(x0) * exp(+/- 2 Htilde t)``, inverted by
``x = (z - epsilon/z)/2``.  :func:`characteristic_label` is that exact
inverse; :func:`outer_characteristic` and :func:`inner_characteristic` are
its leading-order forms far from / near the slow spot at the origin, and
:func:`integrate_characteristic` is an independent Runge-Kutta integration
of the ray equation for cross-checks.

Sign conventions, spelled out once: for ``Branch.PLUS`` the label factor is
``exp(-2 Htilde t)`` (so ``x0 ~ x exp(-2 Htilde t)`` far to the right of the
origin) and the ray momentum is ``p = +Htilde / sqrt(a)``; ``Branch.MINUS``
flips all three signs together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .domain import DiffusionProfile

__all__ = [
    "Branch",
    "WkbParams",
    "PhaseValue",
    "InnerCharacteristic",
    "CharacteristicPath",
    "characteristic_label",
    "outer_characteristic",
    "inner_characteristic",
    "integrate_characteristic",
    "phase_along",
    "consistent_initial_phase",
]


class Branch(Enum):
    """Ray direction: PLUS moves right (``dx/dt = +2 Htilde sqrt(a)``), MINUS left."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def direction(self) -> int:
        return 1 if self is Branch.PLUS else -1


@dataclass(frozen=True)
class WkbParams:
    """Ray-family label ``Htilde``, diffusion floor ``epsilon``, and direction."""

    Htilde: float
    epsilon: float
    sign: Branch

    def __post_init__(self) -> None:
        if self.Htilde <= 0:
            raise ValueError(f"Htilde must be positive, got {self.Htilde}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


def _z_coordinate(x: np.ndarray, eps: float) -> np.ndarray:
    """Monotone map ``z = x + sqrt(x**2 + eps) > 0``, cancellation-safe for x < 0."""
    x = np.asarray(x, dtype=float)
    root = np.sqrt(x * x + eps)
    # for negative x the direct sum cancels; use z = eps / (root - x) there
    # (guard the unused quotient: root - x underflows to 0 for huge positive x)
    denom = np.where(x >= 0.0, 1.0, root - x)
    return np.where(x >= 0.0, x + root, eps / denom)


def characteristic_label(
    x: "float | np.ndarray", t: float, params: WkbParams
) -> "float | np.ndarray":
    """Starting point ``x0`` of the ray that reaches ``x`` at time ``t``.

    Exact inverse of the ray flow:

        x0 = ( z e^{-s 2 Htilde t} - epsilon / (z e^{-s 2 Htilde t}) ) / 2,
        z  = x + sqrt(x**2 + epsilon),   s = +/- 1 per branch.

    At ``t = 0`` this is the identity; at fixed ``t`` it is strictly
    increasing in ``x``, so rays never cross.
    """
    s = params.sign.direction
    z0 = _z_coordinate(x, params.epsilon) * math.exp(-s * 2.0 * params.Htilde * t)
    out = 0.5 * (z0 - params.epsilon / z0)
    return float(out) if np.ndim(out) == 0 else out


def outer_characteristic(x0: float, t: float, Htilde: float, sign: Branch) -> float:
    """Leading-order ray far from the origin: ``x = x0 exp(-/+ 2 Htilde t)``.

    ``Branch.PLUS`` selects the contracting factor ``exp(-2 Htilde t)``
    (distance to the origin shrinking), ``Branch.MINUS`` the growing one.
    Valid only while both ``x0`` and ``x`` stay well outside the inner layer
    ``|x| ~ sqrt(epsilon)``; the caller checks that.
    """
    return x0 * math.exp(-sign.direction * 2.0 * Htilde * t)


@dataclass(frozen=True)
class InnerCharacteristic:
    """Inner-layer ray position with its validity certificate.

    ``position`` is NaN when ``radicand`` is negative, i.e. when the
    inner-layer formula has left its window of validity.
    """

    position: float
    radicand: float
    valid: bool


def inner_characteristic(x0: float, t: float, params: WkbParams) -> InnerCharacteristic:
    """Ray through the slow spot, valid for ``|x0| << sqrt(epsilon)`` and t = O(1).

    The formula depends on the side the ray starts on:

        x(t) = sqrt(eps) ( -1 + sqrt(1 -/+ 2 tanh(2 Ht t) + 2 (x0/sqrt(eps)) sech(2 Ht t)) )

    with ``-`` for ``x0 < 0`` (the ray drifting left toward ``-sqrt(eps)``)
    and ``+`` for ``x0 > 0``; at ``x0 = 0`` the branch in ``params`` picks the
    side.  Both reduce to ``x0`` at ``t = 0``.  The result is flagged invalid
    once the radicand turns negative.
    """
    se = math.sqrt(params.epsilon)
    if x0 > 0.0:
        tanh_sign = 1.0
    elif x0 < 0.0:
        tanh_sign = -1.0
    else:
        tanh_sign = float(params.sign.direction)
    arg = 2.0 * params.Htilde * t
    radicand = 1.0 + tanh_sign * 2.0 * math.tanh(arg) + 2.0 * (x0 / se) / math.cosh(arg)
    if radicand < 0.0:
        return InnerCharacteristic(position=math.nan, radicand=radicand, valid=False)
    return InnerCharacteristic(
        position=se * (-1.0 + math.sqrt(radicand)), radicand=radicand, valid=True
    )


@dataclass(frozen=True)
class CharacteristicPath:
    """Uniformly sampled ray ``(times, positions)`` from a numerical integration."""

    times: np.ndarray
    positions: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.times, dtype=float)
        x = np.asarray(self.positions, dtype=float)
        if t.shape != x.shape or t.ndim != 1:
            raise ValueError("times and positions must be 1-d arrays of equal length")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "positions", x)


def integrate_characteristic(
    x0: float,
    Htilde: float,
    diffusion: DiffusionProfile,
    sign: Branch,
    t_end: float,
    dt: float,
) -> CharacteristicPath:
    """Classical fourth-order Runge-Kutta integration of the ray equation.

    Integrates ``dx/dt = s 2 Htilde sqrt(a(x))`` with fixed step; the number
    of steps is ``round(t_end/dt)`` and the step is adjusted to land on
    ``t_end`` exactly.  ``Htilde = 0`` yields a stationary ray.  This is the
    oracle the closed forms are checked against, so it deliberately shares
    no code with them.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if t_end < 0:
        raise ValueError(f"t_end must be non-negative, got {t_end}")
    if Htilde < 0:
        raise ValueError(f"Htilde must be non-negative, got {Htilde}")
    if t_end == 0.0:
        return CharacteristicPath(times=np.zeros(1), positions=np.full(1, float(x0)))
    rate = sign.direction * 2.0 * Htilde

    def velocity(x: float) -> float:
        return rate * math.sqrt(diffusion.a(x))

    n = max(1, int(round(t_end / dt)))
    h = t_end / n
    times = np.empty(n + 1)
    positions = np.empty(n + 1)
    times[0] = 0.0
    positions[0] = x = float(x0)
    for k in range(1, n + 1):
        k1 = velocity(x)
        k2 = velocity(x + 0.5 * h * k1)
        k3 = velocity(x + 0.5 * h * k2)
        k4 = velocity(x + h * k3)
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        times[k] = k * h
        positions[k] = x
    return CharacteristicPath(times=times, positions=positions)


@dataclass(frozen=True)
class PhaseValue:
    """Phase of the exponential tail at one point, with its ray label."""

    phi: float
    x0: float


def phase_along(
    x: float, t: float, params: WkbParams, phi0: Callable[[float], float]
) -> PhaseValue:
    """Phase transported along rays: ``phi = (Htilde**2 - 1) t + phi0(x0)``.

    ``phi0`` is the initial phase profile.  The transported phase solves the
    phase equation only when ``phi0`` is consistent with the ray family, i.e.
    ``phi0'(x0) = s Htilde / sqrt(a(x0))`` with ``s`` the branch direction
    (the ray momentum evaluated at ``t = 0``); see
    :func:`consistent_initial_phase`.
    """
    x0 = characteristic_label(x, t, params)
    phi = (params.Htilde**2 - 1.0) * t + phi0(x0)
    return PhaseValue(phi=float(phi), x0=float(x0))


def consistent_initial_phase(params: WkbParams) -> Callable[[float], float]:
    """Initial phase whose gradient rides the ray family of ``params``.

    Integrating ``phi0'(x0) = s Htilde / sqrt(x0**2 + epsilon)`` gives
    ``phi0(x0) = s Htilde asinh(x0 / sqrt(epsilon))`` (up to a constant).
    """
    scale = params.sign.direction * params.Htilde
    se = math.sqrt(params.epsilon)

    def phi0(x0: "float | np.ndarray") -> "float | np.ndarray":
        return scale * np.arcsinh(np.asarray(x0, dtype=float) / se)

    return phi0
