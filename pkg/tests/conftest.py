"""Shared fixtures and helpers: reference runs reused across test modules."""

from __future__ import annotations

import numpy as np
import pytest

from fkfront.domain import (
    DiffusionProfile,
    Field,
    FrontSpec,
    Grid,
    ReactionTerm,
    logistic_reaction,
    make_quadratic_diffusion,
)
from fkfront.solver import SolverConfig, build_operator, imex_step, simulate
from fkfront.spectral import initial_amplitudes, solve_eigenproblem


def constant_diffusion(level: float = 1.0) -> DiffusionProfile:
    """Spatially uniform diffusion; an analytically solvable control case."""
    return DiffusionProfile(
        epsilon=level,
        a=lambda x: np.full_like(np.asarray(x, dtype=float), level),
        aprime=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
    )


def unit_floor_quadratic() -> DiffusionProfile:
    """Quadratic diffusion with floor 1; smooth and never small."""
    return DiffusionProfile(
        epsilon=1.0,
        a=lambda x: np.asarray(x, dtype=float) ** 2 + 1.0,
        aprime=lambda x: 2.0 * np.asarray(x, dtype=float),
    )


def zero_reaction() -> ReactionTerm:
    """No source term; isolates the diffusion part of the scheme."""
    return ReactionTerm(
        f=lambda u: np.zeros_like(u),
        fprime=lambda u: np.zeros_like(u),
    )


def smooth_profile(x: np.ndarray, L: float) -> np.ndarray:
    """Even cosine blend, compatible with the no-flux walls, valued in (0, 1)."""
    return 0.5 + 0.3 * np.cos(np.pi * x / L) + 0.15 * np.cos(2 * np.pi * x / L)


def diffuse_smooth(n: int, dt: float, t_end: float, diffusion: DiffusionProfile) -> Field:
    """March the smooth profile under diffusion only (no source)."""
    grid = Grid(L=100.0, n=n)
    field = Field(grid, smooth_profile(grid.x, grid.L), 0.0)
    op = build_operator(grid, diffusion)
    reaction = zero_reaction()
    for _ in range(int(round(t_end / dt))):
        field = imex_step(field, op, reaction, dt)
    return field


@pytest.fixture(scope="session")
def default_grid() -> Grid:
    return Grid(L=100.0, n=501)


@pytest.fixture(scope="session")
def default_diffusion() -> DiffusionProfile:
    return make_quadratic_diffusion(0.1)


@pytest.fixture(scope="session")
def default_run(default_grid, default_diffusion):
    """Full default-configuration run: a step released at -35 crossing the well."""
    return simulate(
        default_grid,
        default_diffusion,
        logistic_reaction(),
        FrontSpec(x_c0=-35.0),
        SolverConfig(dt=0.01, t_end=60.0, snapshot_stride=25),
    )


@pytest.fixture(scope="session")
def pure_diffusion_run(default_grid, default_diffusion):
    """Sourceless run on the default grid; total mass must be conserved."""
    return simulate(
        default_grid,
        default_diffusion,
        zero_reaction(),
        FrontSpec(x_c0=-35.0),
        SolverConfig(dt=0.01, t_end=10.0, snapshot_stride=100),
    )


@pytest.fixture(scope="session")
def constant_a_run():
    """Uniform-diffusion control; the front must settle near the pulled speed 2."""
    return simulate(
        Grid(L=100.0, n=1001),
        constant_diffusion(1.0),
        logistic_reaction(),
        FrontSpec(x_c0=-50.0),
        SolverConfig(dt=0.01, t_end=40.0, snapshot_stride=100),
    )


@pytest.fixture(scope="session")
def default_eigen(default_grid, default_diffusion):
    return solve_eigenproblem(default_diffusion, default_grid, m=64)


@pytest.fixture(scope="session")
def default_amplitudes(default_grid, default_diffusion, default_eigen):
    return initial_amplitudes(FrontSpec(x_c0=-35.0), default_grid, default_eigen, default_diffusion)
