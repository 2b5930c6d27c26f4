"""Shared kernel types and error classes.

A radial profile is a function of one nonnegative distance argument; a
product model is a function of two (first-factor distance, second-factor
distance or angle).  Both carry enough metadata for the operators and the
validation layer to check domains before evaluating.
"""

from __future__ import annotations

import dataclasses
from typing import Callable

import numpy as np

__all__ = [
    "BALL",
    "FULL",
    "EUCLIDEAN",
    "SPHERE",
    "DomainError",
    "NonConvergenceError",
    "FactorizationError",
    "RadialProfile",
    "ProductModel",
]

# First-factor distance domains.  BALL profiles are defined for distances in
# [0, 1) only (the ball has radius 1/2 so pairwise distances stay below 1);
# FULL profiles accept any nonnegative distance.
BALL = "ball"
FULL = "full"

# Second-factor kinds for product models.
EUCLIDEAN = "euclidean"
SPHERE = "sphere"


class DomainError(ValueError):
    """An argument is outside the declared domain of an operator or model."""


class NonConvergenceError(RuntimeError):
    """A numeric procedure exhausted its budget without meeting tolerance."""


class FactorizationError(NonConvergenceError):
    """Covariance factorization failed at the maximum allowed jitter."""


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("non-finite argument")
    return arr


@dataclasses.dataclass(frozen=True)
class RadialProfile:
    """A scalar function of one nonnegative distance.

    fn      : vectorized callable, distance array -> value array
    domain  : BALL for [0, 1), FULL for [0, inf)
    dim     : dimension for which the profile is declared positive definite
    name    : short identifier used in reports and manifests
    """

    fn: Callable
    domain: str = FULL
    dim: int = 1
    name: str = ""

    def __post_init__(self):
        if self.domain not in (BALL, FULL):
            raise DomainError(f"unknown radial domain {self.domain!r}")

    def __call__(self, r):
        arr = _as_float_array(r)
        if np.any(arr < 0.0):
            raise DomainError("radial argument must be nonnegative")
        if self.domain == BALL and np.any(arr >= 1.0):
            raise DomainError("ball profile evaluated at distance >= 1")
        out = self.fn(arr)
        return out if np.ndim(r) else float(out)

    def restricted(self) -> "RadialProfile":
        """The same profile with its domain narrowed to the unit ball."""
        return dataclasses.replace(self, domain=BALL)


@dataclasses.dataclass(frozen=True)
class ProductModel:
    """A scalar function of (first-factor distance, second-factor argument).

    The first factor is radial (ball or Euclidean distance); the second is
    either a Euclidean time lag in [0, inf) or a great-circle angle in
    [0, pi].

    fn           : vectorized callable (x, s) -> value
    first_dim    : dimension of the first factor
    first_domain : BALL or FULL
    second_kind  : EUCLIDEAN or SPHERE
    second_dim   : dimension of the second factor
    name         : short identifier used in reports and manifests
    """

    fn: Callable
    first_dim: int
    second_kind: str
    second_dim: int = 1
    first_domain: str = FULL
    name: str = ""

    def __post_init__(self):
        if self.first_domain not in (BALL, FULL):
            raise DomainError(f"unknown radial domain {self.first_domain!r}")
        if self.second_kind not in (EUCLIDEAN, SPHERE):
            raise DomainError(f"unknown second factor kind {self.second_kind!r}")

    def __call__(self, x, s):
        xa = _as_float_array(x)
        sa = _as_float_array(s)
        if np.any(xa < 0.0):
            raise DomainError("first-factor distance must be nonnegative")
        if self.first_domain == BALL and np.any(xa >= 1.0):
            raise DomainError("ball model evaluated at distance >= 1")
        if np.any(sa < 0.0):
            raise DomainError("second-factor argument must be nonnegative")
        if self.second_kind == SPHERE and np.any(sa > np.pi + 1e-12):
            raise DomainError("sphere angle must lie in [0, pi]")
        out = self.fn(xa, sa)
        return out if (np.ndim(x) or np.ndim(s)) else float(out)

    def slice_second(self, s) -> RadialProfile:
        """The radial profile x -> self(x, s) at a fixed second argument."""
        return RadialProfile(
            fn=lambda x, _s=float(s): self.fn(np.asarray(x, dtype=float), _s),
            domain=self.first_domain,
            dim=self.first_dim,
            name=f"{self.name}@s={float(s):g}" if self.name else "",
        )
