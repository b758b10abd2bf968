"""
Fixed-step RK4 integration of the geodesic equation

    dx/ds = u,    du^l/ds = -Gamma^l_{mn} u^m u^n.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import SingularMetricError, StepError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trajectory:
    """positions[k] and velocities[k] at parameter k * ds."""
    positions: np.ndarray
    velocities: np.ndarray
    ds: float

    def __len__(self):
        return len(self.positions)

    def norms(self, metric):
        """g(u, u) along the trajectory."""
        return np.array([
            u @ metric.matrix_at(x) @ u for x, u in zip(self.positions, self.velocities)
        ])


def _rates(connection, x, u):
    gamma = np.real(connection.at(x))
    return u, -np.einsum('lmn,m,n->l', gamma, u, u)


def geodesic_integrate(connection, x0, u0, steps, ds, exclude=None):
    x = np.asarray(x0, dtype=float)
    u = np.asarray(u0, dtype=float)
    if x.shape != u.shape:
        raise StepError(f"Position and velocity shapes differ: {x.shape} vs {u.shape}")
    positions = np.empty((steps + 1, len(x)))
    velocities = np.empty((steps + 1, len(x)))
    positions[0], velocities[0] = x, u
    for step in range(1, steps + 1):
        if exclude is not None and exclude(tuple(x)):
            raise SingularMetricError(f"Trajectory entered an excluded region at step {step - 1}: {x}")
        k1x, k1u = _rates(connection, x, u)
        k2x, k2u = _rates(connection, x + 0.5 * ds * k1x, u + 0.5 * ds * k1u)
        k3x, k3u = _rates(connection, x + 0.5 * ds * k2x, u + 0.5 * ds * k2u)
        k4x, k4u = _rates(connection, x + ds * k3x, u + ds * k3u)
        x = x + ds / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        u = u + ds / 6 * (k1u + 2 * k2u + 2 * k3u + k4u)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(u))):
            raise StepError(f"Non-finite state at step {step}")
        positions[step], velocities[step] = x, u
    logger.debug("Integrated %d RK4 steps of size %g from %s", steps, ds, tuple(positions[0]))
    return Trajectory(positions, velocities, ds)


def schwarzschild_circular_orbit(radius, mass=1.0):
    """
    Initial data of the equatorial circular orbit at `radius` in coordinates
    (r, theta, phi, t), normalised to g(u, u) = 1. Needs radius > 3 mass.
    """
    if radius <= 3 * mass:
        raise StepError(f"No timelike circular orbit at r = {radius} for mass {mass}")
    u_t = 1 / math.sqrt(1 - 3 * mass / radius)
    u_phi = u_t * math.sqrt(mass / radius ** 3)
    return (radius, math.pi / 2, 0.0, 0.0), (0.0, 0.0, u_phi, u_t)


def orbital_period(radius, mass=1.0):
    """Proper time of one revolution of the circular orbit."""
    _, velocity = schwarzschild_circular_orbit(radius, mass)
    return 2 * math.pi / velocity[2]
