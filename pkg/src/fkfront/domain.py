"""Ingredients of the heterogeneous logistic reaction-diffusion model.

The model is ``u_t = (a(x) u_x)_x + f(u)`` on ``[-L, L]`` with zero-flux
(Neumann) ends, advanced from a sharp step profile.  This module collects the
pieces every other module consumes: the diffusion coefficient with its
derivative, the reaction term, the uniform node grid, sampled fields, and the
step initial condition.  Instances are immutable after construction and safe
to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

__all__ = [
    "DiffusionProfile",
    "ReactionTerm",
    "Grid",
    "Field",
    "FrontSpec",
    "make_quadratic_diffusion",
    "logistic_reaction",
    "step_initial_condition",
]


@dataclass(frozen=True)
class DiffusionProfile:
    """Spatially varying diffusion coefficient ``a(x)`` and its derivative.

    ``epsilon`` is the floor value of the coefficient (the uniform
    parabolicity bound ``a(x) >= epsilon > 0``).  Both evaluators must accept
    scalars and numpy arrays and evaluate pointwise.
    """

    epsilon: float
    a: Callable[[np.ndarray], np.ndarray]
    aprime: Callable[[np.ndarray], np.ndarray]

    def __post_init__(self) -> None:
        if self.epsilon <= 0:
            raise ValueError(f"diffusion floor must be positive, got {self.epsilon}")


def make_quadratic_diffusion(epsilon: float) -> DiffusionProfile:
    """Quadratic well ``a(x) = x**2 + epsilon`` with ``a'(x) = 2 x``.

    The coefficient nearly vanishes at the origin -- the slow spot the front
    has to cross -- while growing like ``x**2`` toward the ends of the domain;
    ``epsilon > 0`` keeps the problem uniformly parabolic.
    """
    eps = float(epsilon)
    if eps <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    return DiffusionProfile(
        epsilon=eps,
        a=lambda x: x * x + eps,
        aprime=lambda x: 2.0 * x,
    )


@dataclass(frozen=True)
class ReactionTerm:
    """Pointwise reaction ``f(u)`` with its derivative ``f'(u)``."""

    f: Callable[[np.ndarray], np.ndarray]
    fprime: Callable[[np.ndarray], np.ndarray]


def logistic_reaction() -> ReactionTerm:
    """Logistic growth ``f(u) = u (1 - u)``: unstable at 0, saturating at 1."""
    return ReactionTerm(
        f=lambda u: u * (1.0 - u),
        fprime=lambda u: 1.0 - 2.0 * u,
    )


@dataclass(frozen=True)
class Grid:
    """Uniform node grid on ``[-L, L]`` with ``n`` nodes, ``dx = 2L/(n-1)``."""

    L: float
    n: int

    def __post_init__(self) -> None:
        if self.L <= 0:
            raise ValueError(f"half-width L must be positive, got {self.L}")
        if self.n < 3:
            raise ValueError(f"need at least 3 nodes, got {self.n}")

    @property
    def dx(self) -> float:
        return 2.0 * self.L / (self.n - 1)

    @cached_property
    def x(self) -> np.ndarray:
        nodes = np.linspace(-self.L, self.L, self.n)
        nodes.flags.writeable = False
        return nodes

    @cached_property
    def quadrature_weights(self) -> np.ndarray:
        """Trapezoid weights; their sum is the domain length ``2 L`` exactly."""
        w = np.full(self.n, self.dx)
        w[0] = w[-1] = 0.5 * self.dx
        w.flags.writeable = False
        return w


@dataclass(frozen=True)
class Field:
    """Nodal samples of the concentration at one instant."""

    grid: Grid
    values: np.ndarray
    time: float

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.n,):
            raise ValueError(
                f"values shape {v.shape} does not match grid with {self.grid.n} nodes"
            )
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class FrontSpec:
    """Initial front location and the level whose crossing defines the front."""

    x_c0: float
    level: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.level < 1.0:
            raise ValueError(f"level must lie strictly between 0 and 1, got {self.level}")


def step_initial_condition(grid: Grid, front: FrontSpec) -> Field:
    """Sharp step: ``u = 1`` for ``x <= x_c0``, ``u = 0`` beyond (ties go to 1)."""
    if not -grid.L < front.x_c0 < grid.L:
        raise ValueError(
            f"initial front {front.x_c0} must lie strictly inside (-{grid.L}, {grid.L})"
        )
    values = np.where(grid.x <= front.x_c0, 1.0, 0.0)
    return Field(grid=grid, values=values, time=0.0)
