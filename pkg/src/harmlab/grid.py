"""Polar sample grids on a disk of radius ``r_max < 1``."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameter


@dataclass(frozen=True)
class GridSpec:
    r_max: float = 0.7
    n_radial: int = 21
    n_angular: int = 48
    exclusion_centers: tuple = field(default=())
    exclusion_radius: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "exclusion_centers", tuple(complex(c) for c in self.exclusion_centers))
        if not 0 < self.r_max < 1:
            raise InvalidParameter(f"r_max must lie in (0, 1), got {self.r_max}")
        if self.n_radial < 2 or self.n_angular < 4 or self.n_radial * self.n_angular < 8:
            raise InvalidParameter("degenerate grid: need n_radial >= 2 and n_angular >= 4")
        if self.exclusion_radius < 0:
            raise InvalidParameter("exclusion_radius must be non-negative")

    def points(self) -> np.ndarray:
        """Grid points, radius-major then angle; the origin is never sampled.

        Radii are ``r_max * k / n_radial`` for ``k = 1..n_radial``.
        """
        r = self.r_max * np.arange(1, self.n_radial + 1) / self.n_radial
        theta = 2 * np.pi * np.arange(self.n_angular) / self.n_angular
        pts = (r[:, None] * np.exp(1j * theta)[None, :]).reshape(-1)
        if self.exclusion_centers and self.exclusion_radius > 0:
            keep = np.ones(pts.shape, dtype=bool)
            for c in self.exclusion_centers:
                keep &= np.abs(pts - c) >= self.exclusion_radius
            pts = pts[keep]
        return pts

    def with_exclusions(self, centers, radius):
        return GridSpec(self.r_max, self.n_radial, self.n_angular, tuple(centers), radius)

    def summary(self) -> dict:
        return {
            "r_max": self.r_max,
            "n_radial": self.n_radial,
            "n_angular": self.n_angular,
            "exclusion_centers": [[c.real, c.imag] for c in self.exclusion_centers],
            "exclusion_radius": self.exclusion_radius,
        }
