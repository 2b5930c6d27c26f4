"""Turning bands operators.

These map a positive definite profile on the line (or on the 1-ball) to a
positive definite profile in dimension d >= 2 by averaging over chords:

    (TB_d f)(x) = c_d / x * integral_0^x f(u) (1 - u^2/x^2)^((d-3)/2) du,
    c_d = 2 Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)).

The same average applied in the first argument of a product kernel, with
the second argument held fixed, maps product kernels on (line x T) to
product kernels on (d-space x T) for T a Euclidean factor or a sphere.

d = 1 is rejected: the only consistent meaning would be the identity, and
accepting it silently would mask dimension bookkeeping mistakes upstream.

Averaging against a probability weight never raises the sup norm, and a
constant maps to itself; both properties are exercised in the tests.
"""

from __future__ import annotations

import math

import numpy as np

from .base import BALL, DomainError, ProductModel, RadialProfile
from .quadrature import QuadratureConfig, integrate_tb

__all__ = [
    "tb_radial",
    "tb_product_euclidean",
    "tb_product_sphere",
    "tb_image",
]


def _check_target(d: int, x: float, domain: str) -> float:
    if int(d) != d or d < 2:
        raise DomainError("turning bands requires integer d >= 2 (d = 1 rejected)")
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError("turning bands requires finite x >= 0")
    if domain == BALL and x >= 1.0:
        raise DomainError("ball profile: turning bands target distance must stay below 1")
    return x


def tb_radial(
    phi1: RadialProfile,
    d: int,
    x: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Turning bands image of a one-dimensional radial profile at distance x.

    At x = 0 the average degenerates to the profile value at the origin,
    which is returned directly.
    """
    x = _check_target(d, x, phi1.domain)
    if x == 0.0:
        return float(phi1(0.0))
    return integrate_tb(phi1.fn, x, int(d), cfg)


def tb_product_euclidean(
    model: ProductModel,
    d: int,
    x: float,
    t: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Turning bands in the first argument of a (radial x Euclidean) kernel."""
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise DomainError("Euclidean lag must be finite and >= 0")
    x = _check_target(d, x, model.first_domain)
    if x == 0.0:
        return float(model(0.0, t))
    return integrate_tb(lambda u: model.fn(u, t), x, int(d), cfg)


def tb_product_sphere(
    model: ProductModel,
    d: int,
    x: float,
    theta: float,
    cfg: QuadratureConfig | None = None,
) -> float:
    """Turning bands in the first argument of a (radial x sphere) kernel."""
    theta = float(theta)
    if not math.isfinite(theta) or not (0.0 <= theta <= math.pi + 1e-12):
        raise DomainError("sphere angle must lie in [0, pi]")
    theta = min(theta, math.pi)
    x = _check_target(d, x, model.first_domain)
    if x == 0.0:
        return float(model(0.0, theta))
    return integrate_tb(lambda u: model.fn(u, theta), x, int(d), cfg)


def tb_image(
    phi1: RadialProfile,
    d: int,
    cfg: QuadratureConfig | None = None,
) -> RadialProfile:
    """The turning bands image as a profile object.

    Evaluation goes through quadrature point by point, so the returned
    profile is suitable for plotting and Gram assembly at desk scale, not
    for tight inner loops.
    """
    if int(d) != d or d < 2:
        raise DomainError("turning bands requires integer d >= 2 (d = 1 rejected)")

    def fn(r):
        arr = np.atleast_1d(np.asarray(r, dtype=float))
        out = np.array([tb_radial(phi1, d, float(v), cfg) for v in arr.ravel()])
        return out.reshape(arr.shape) if np.ndim(r) else out[0]

    name = f"tb{d}({phi1.name})" if phi1.name else ""
    return RadialProfile(fn=fn, domain=phi1.domain, dim=int(d), name=name)
