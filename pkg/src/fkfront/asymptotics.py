"""Closed-form front motion in the drift-dominated regime.

Where the profile is soft (``|a u_xx| << |a' u_x|``) the diffusion term acts
as pure drift and the model collapses to the hyperbolic equation

    u_t = a'(x) u_x + f(u),        a'(x) = 2 x.

Its characteristics contract exponentially toward the origin,
``x(t) = x0 * exp(-2 (t - t0))``, and the logistic reaction integrates
exactly along them, which gives the evolution rule implemented by
:func:`sfa_evolve`.  In the coordinate ``eta = +/- ln|x| + c t`` the same
model becomes a constant-coefficient wave problem whose exponential tails
are classified by :func:`stationary_roots` and :func:`tail_exponents`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .domain import DiffusionProfile, Field, ReactionTerm

__all__ = [
    "Snapshot",
    "TwcBranch",
    "RootPair",
    "SfaResidualReport",
    "sfa_evolve",
    "sfa_characteristic",
    "twc_front_path",
    "stationary_roots",
    "tail_exponents",
    "sfa_residual",
]


@dataclass(frozen=True)
class Snapshot:
    """A field frozen at one instant, evaluated anywhere by interpolation.

    Evaluation is piecewise linear and clamps to the first/last nodal value
    outside the grid; on the nodes it reproduces the samples exactly.
    """

    field: Field

    @property
    def time(self) -> float:
        return self.field.time

    def __call__(self, x: "float | np.ndarray") -> "float | np.ndarray":
        return np.interp(x, self.field.grid.x, self.field.values)


def sfa_evolve(snap: Snapshot, x: "float | np.ndarray", t: float) -> "float | np.ndarray":
    """Evolve a snapshot under the drift-plus-logistic reduced model.

    Trace the contracting characteristic through ``x`` back to the snapshot
    time (hitting it at ``x * exp(2 dt)``) and apply the logistic flow for
    the elapsed time.  Values in ``[0, 1]`` stay in ``[0, 1]``; 0 and 1 are
    fixed points; monotone profiles stay monotone.
    """
    if t < snap.time:
        raise ValueError(f"cannot evolve backwards: t={t} < snapshot time {snap.time}")
    delta = t - snap.time
    u0 = snap(np.asarray(x, dtype=float) * math.exp(2.0 * delta))
    if delta == 0.0:
        return u0
    decay = math.exp(-delta)
    return u0 / (u0 + (1.0 - u0) * decay)


def sfa_characteristic(x0: float, t0: float, t: float) -> float:
    """Characteristic of the reduced model: ``x(t) = x0 exp(-2 (t - t0))``."""
    return x0 * math.exp(-2.0 * (t - t0))


def twc_front_path(x_c_t0: float, t0: float, t: float, speed: float = 2.0) -> float:
    """Front path of constant speed ``c`` in the coordinate ``ln|x| + c t``.

    The level set ``ln|x(t)| + c (t - t0) = ln|x_c(t0)|`` gives
    ``x(t) = x_c(t0) * exp(-c (t - t0))`` on either side of the origin; the
    origin itself carries no logarithmic coordinate and is rejected.
    """
    if x_c_t0 == 0.0:
        raise ValueError("front position 0 has no logarithmic coordinate")
    return x_c_t0 * math.exp(-speed * (t - t0))


class TwcBranch(Enum):
    """Sign case of the logarithmic coordinate ``eta = +/- ln|x| + c t``."""

    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class RootPair:
    """Decay exponents of ``u'' + (-c +/- 1) u' + u = 0`` linearized tails.

    ``kind`` is one of ``real_distinct``, ``real_double``, ``complex``;
    ``non_oscillatory`` flags the strict speed range (``c < -1`` on the plus
    branch, ``c > 1`` on the minus branch) where the decay is monotone.
    """

    branch: TwcBranch
    c: float
    roots: tuple[complex, complex]
    kind: str
    non_oscillatory: bool


def stationary_roots(c: float, branch: TwcBranch) -> RootPair:
    """Roots of ``lambda**2 + (-c +/- 1) lambda + 1 = 0`` for speed ``c``.

    The two roots multiply to 1 and sum to ``c - 1`` (plus branch) or
    ``c + 1`` (minus branch).
    """
    c = float(c)
    branch = TwcBranch(branch)
    beta = c - 1.0 if branch is TwcBranch.PLUS else c + 1.0
    disc = beta * beta - 4.0
    if disc > 0.0:
        r = math.sqrt(disc)
        roots = (complex((beta + r) / 2.0), complex((beta - r) / 2.0))
        kind = "real_distinct"
    elif disc == 0.0:
        roots = (complex(beta / 2.0), complex(beta / 2.0))
        kind = "real_double"
    else:
        r = math.sqrt(-disc)
        roots = (complex(beta / 2.0, r / 2.0), complex(beta / 2.0, -r / 2.0))
        kind = "complex"
    non_osc = c < -1.0 if branch is TwcBranch.PLUS else c > 1.0
    return RootPair(branch=branch, c=c, roots=roots, kind=kind, non_oscillatory=non_osc)


def tail_exponents(c_bar: float) -> tuple[float, float]:
    """Exponents ``-1/2 +/- sqrt(4 c_bar - 3)/2`` of the far-tail power laws.

    Requires ``c_bar >= 3/4`` (real exponents); they always sum to -1.
    """
    c_bar = float(c_bar)
    if c_bar < 0.75:
        raise ValueError(f"tail exponents are real only for c_bar >= 3/4, got {c_bar}")
    r = math.sqrt(4.0 * c_bar - 3.0) / 2.0
    return (-0.5 + r, -0.5 - r)


@dataclass(frozen=True)
class SfaResidualReport:
    """Pointwise diagnostics of the reduced model at probe locations.

    ``residual`` is ``u_t - a'(x) u_x - f(u)`` of the evolved snapshot by
    central differences; ``validity_ratio`` is ``|a u_xx| / |a' u_x|``, the
    size of the neglected curvature term against the drift term (NaN where
    both vanish, +inf where only the drift does).
    """

    xs: np.ndarray
    residual: np.ndarray
    validity_ratio: np.ndarray


def sfa_residual(
    snap: Snapshot,
    diffusion: DiffusionProfile,
    reaction: ReactionTerm,
    t: float,
    xs: np.ndarray,
    space_step: float,
    time_step: float | None = None,
) -> SfaResidualReport:
    """Check how well :func:`sfa_evolve` satisfies the reduced model at ``t``.

    Derivatives are second-order central differences with probe spacings
    ``space_step`` (in x) and ``time_step`` (in t, defaulting to
    ``space_step``); the temporal stencil must not reach behind the snapshot,
    so ``t >= snap.time + time_step`` is required.
    """
    if space_step <= 0:
        raise ValueError(f"space_step must be positive, got {space_step}")
    ht = space_step if time_step is None else float(time_step)
    if ht <= 0:
        raise ValueError(f"time_step must be positive, got {time_step}")
    if t - ht < snap.time:
        raise ValueError(
            f"central time stencil at t={t} reaches before the snapshot; "
            f"need t >= {snap.time + ht}"
        )
    xs = np.asarray(xs, dtype=float)
    hx = float(space_step)

    u_mid = np.asarray(sfa_evolve(snap, xs, t), dtype=float)
    u_xp = sfa_evolve(snap, xs + hx, t)
    u_xm = sfa_evolve(snap, xs - hx, t)
    u_tp = sfa_evolve(snap, xs, t + ht)
    u_tm = sfa_evolve(snap, xs, t - ht)

    u_t = (u_tp - u_tm) / (2.0 * ht)
    u_x = (u_xp - u_xm) / (2.0 * hx)
    u_xx = (u_xp - 2.0 * u_mid + u_xm) / hx**2

    residual = u_t - np.asarray(diffusion.aprime(xs), dtype=float) * u_x - reaction.f(u_mid)
    curvature = np.abs(np.asarray(diffusion.a(xs), dtype=float) * u_xx)
    drift = np.abs(np.asarray(diffusion.aprime(xs), dtype=float) * u_x)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = curvature / drift
    return SfaResidualReport(xs=xs, residual=residual, validity_ratio=ratio)
