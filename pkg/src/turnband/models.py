"""Closed-form kernel families.

The triangle profile on the line, its ball-linear turning-bands image, the
product family built from an amplitude function alpha on the second factor,
and the worked example h_bar together with its d-dimensional image h_d.

All families are normalized to value 1 at the origin of their space, except
h_bar restricted to a fixed nonzero lag, where the origin value e^(p-1) < 1
is the correct covariance normalization.

Positive definiteness limits are declared, not enforced: constructing a
triangle with alpha = 3 succeeds with a warning so the validation layer can
demonstrate an honest failure.
"""

from __future__ import annotations

import math
import warnings
from typing import Callable

import numpy as np
from scipy import special as _sp

from .base import (
    BALL,
    EUCLIDEAN,
    FULL,
    SPHERE,
    DomainError,
    ProductModel,
    RadialProfile,
)
from .quadrature import QuadratureConfig
from .turning_bands import tb_product_euclidean

__all__ = [
    "alpha_d",
    "triangle",
    "triangle_series",
    "triangle_profile",
    "ball_linear",
    "ball_linear_profile",
    "product_linear_base",
    "product_linear_model",
    "alpha_exp_decay",
    "alpha_gauss",
    "alpha_raised_cosine",
    "p_default",
    "h_bar",
    "h_bar_series",
    "h_bar_model",
    "h_d",
    "h_d_model",
    "FLAVOR_EUCLIDEAN",
    "FLAVOR_CIRCULAR",
]

FLAVOR_EUCLIDEAN = "euclidean"
FLAVOR_CIRCULAR = "circular"


def alpha_d(d: int) -> float:
    """Slope constant Gamma(d/2) / (sqrt(pi) Gamma((d+1)/2)).

    alpha_1 = 1, alpha_2 = 2/pi, alpha_3 = 1/2; decreasing in d.
    """
    if int(d) != d or d < 1:
        raise DomainError("alpha_d requires integer d >= 1")
    return float(
        np.exp(_sp.gammaln(0.5 * d) - _sp.gammaln(0.5 * (d + 1))) / math.sqrt(math.pi)
    )


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= 0.0:
        raise DomainError("alpha must be finite and > 0")
    if alpha > 2.0:
        warnings.warn(
            f"alpha = {alpha:g} lies outside (0, 2]; the profile is not "
            "positive definite and validation is expected to fail",
            UserWarning,
            stacklevel=3,
        )
    return alpha


def _tri_wave(x: np.ndarray) -> np.ndarray:
    # period-2 triangle: x on [0, 1), 2 - x on [1, 2)
    m = np.mod(x, 2.0)
    return np.minimum(m, 2.0 - m)


def triangle(alpha: float, x):
    """Periodic triangle profile 1 - alpha * tri(x), period 2.

    Member of the positive definite class on the line exactly for
    0 < alpha <= 2 (the cosine series below has nonnegative weights there).
    """
    alpha = _check_alpha(alpha)
    arr = np.asarray(x, dtype=float)
    out = 1.0 - alpha * _tri_wave(arr)
    return out if np.ndim(x) else float(out)


def triangle_series(alpha: float, x, terms: int = 200):
    """Cosine series of the triangle profile, truncated after `terms` terms:

        1 - alpha/2 + sum_{n=1..terms} 4 alpha cos((2n-1) pi x) / (pi^2 (2n-1)^2)

    Truncation error is bounded by 4 alpha / (pi^2 (2 terms - 1)).
    """
    alpha = float(alpha)
    if int(terms) != terms or terms < 1:
        raise DomainError("triangle_series requires integer terms >= 1")
    arr = np.asarray(x, dtype=float)
    odd = 2.0 * np.arange(1, terms + 1) - 1.0
    acc = 1.0 - 0.5 * alpha + (
        4.0 * alpha / math.pi**2
    ) * np.sum(np.cos(np.multiply.outer(odd * math.pi, arr)) / odd[:, None] ** 2, axis=0)
    return acc if np.ndim(x) else float(acc)


def triangle_profile(alpha: float) -> RadialProfile:
    a = _check_alpha(alpha)
    return RadialProfile(
        fn=lambda r: 1.0 - a * _tri_wave(r),
        domain=FULL,
        dim=1,
        name=f"triangle:alpha={a:g}",
    )


def ball_linear(d: int, alpha: float, x):
    """Linear ball profile 1 - alpha_d * alpha * x on [0, 1).

    This is the turning-bands image in dimension d of the triangle profile
    restricted to the ball; positive definite on the radius-1/2 ball for
    0 < alpha <= 2.
    """
    a = _check_alpha(alpha)
    slope = alpha_d(d) * a
    arr = np.asarray(x, dtype=float)
    out = 1.0 - slope * arr
    return out if np.ndim(x) else float(out)


def ball_linear_profile(d: int, alpha: float) -> RadialProfile:
    a = _check_alpha(alpha)
    slope = alpha_d(d) * a
    return RadialProfile(
        fn=lambda r: 1.0 - slope * r,
        domain=BALL,
        dim=int(d),
        name=f"ball_linear:d={int(d)},alpha={a:g}",
    )


def _check_alpha_fn(alpha_fn: Callable) -> float:
    alpha0 = float(alpha_fn(0.0))
    if not math.isfinite(alpha0) or alpha0 <= 0.0 or alpha0 > 2.0:
        raise DomainError("product family requires alpha(0) in (0, 2]")
    return alpha0


def product_linear_base(
    alpha_fn: Callable,
    flavor: str = FLAVOR_EUCLIDEAN,
    alpha_name: str = "",
) -> ProductModel:
    """The one-dimensional generator of the product family:

        phi(x, s) = 1 + alpha(s)/2 - alpha(s) * tri(x),

    periodic with period 2 in x.  Unnormalized: value 1 + alpha(0)/2 at the
    origin.  alpha must itself be positive definite on the second factor
    (callers assert this; the named constructors below are).
    """
    _check_alpha_fn(alpha_fn)
    kind = _flavor_kind(flavor)

    def fn(x, s):
        a = np.asarray(alpha_fn(np.asarray(s, dtype=float)), dtype=float)
        return 1.0 + 0.5 * a - a * _tri_wave(np.asarray(x, dtype=float))

    label = alpha_name or "alpha"
    return ProductModel(
        fn=fn,
        first_dim=1,
        second_kind=kind,
        second_dim=1,
        first_domain=FULL,
        name=f"product_linear_base:{label},flavor={flavor}",
    )


def _flavor_kind(flavor: str) -> str:
    if flavor == FLAVOR_EUCLIDEAN:
        return EUCLIDEAN
    if flavor == FLAVOR_CIRCULAR:
        return SPHERE
    raise DomainError(f"unknown product flavor {flavor!r}")


def product_linear_model(
    d: int,
    alpha_fn: Callable,
    flavor: str = FLAVOR_EUCLIDEAN,
    alpha_name: str = "",
) -> ProductModel:
    """The d-dimensional member of the product family on the ball:

        phi(x, s) = (1 + alpha(s) (1/2 - alpha_d x)) / (1 + alpha(0)/2),

    the turning-bands image in x of product_linear_base, normalized to 1 at
    the origin of the product space.
    """
    alpha0 = _check_alpha_fn(alpha_fn)
    if int(d) != d or d < 1:
        raise DomainError("product_linear_model requires integer d >= 1")
    slope = alpha_d(int(d))
    norm = 1.0 + 0.5 * alpha0
    kind = _flavor_kind(flavor)

    def fn(x, s):
        a = np.asarray(alpha_fn(np.asarray(s, dtype=float)), dtype=float)
        return (1.0 + a * (0.5 - slope * np.asarray(x, dtype=float))) / norm

    label = alpha_name or "alpha"
    return ProductModel(
        fn=fn,
        first_dim=int(d),
        second_kind=kind,
        second_dim=1,
        first_domain=BALL,
        name=f"product_linear:d={int(d)},alpha={label},flavor={flavor}",
    )


def alpha_exp_decay(rate: float) -> Callable:
    """alpha(t) = exp(-rate t); positive definite on the line for rate > 0."""
    rate = float(rate)
    if not math.isfinite(rate) or rate <= 0.0:
        raise DomainError("exp_decay rate must be finite and > 0")
    return lambda t: np.exp(-rate * np.asarray(t, dtype=float))


def alpha_gauss(scale: float) -> Callable:
    """alpha(t) = exp(-t^2 / scale); positive definite on the line."""
    scale = float(scale)
    if not math.isfinite(scale) or scale <= 0.0:
        raise DomainError("gauss scale must be finite and > 0")
    return lambda t: np.exp(-np.asarray(t, dtype=float) ** 2 / scale)


def alpha_raised_cosine() -> Callable:
    """alpha(theta) = (1 + cos theta) / 2; positive definite on every sphere."""
    return lambda theta: 0.5 * (1.0 + np.cos(np.asarray(theta, dtype=float)))


def p_default(t):
    """Amplitude p(t) = exp(-t^2 / 5) of the worked example."""
    return np.exp(-np.asarray(t, dtype=float) ** 2 / 5.0)


_P_CHECK_GRID = np.linspace(0.0, 20.0, 401)


def _check_p(p: Callable | None) -> Callable:
    if p is None:
        return p_default
    vals = np.asarray(p(_P_CHECK_GRID), dtype=float)
    if not np.all(np.isfinite(vals)) or np.max(np.abs(vals)) > 1.0 + 1e-12:
        raise DomainError("amplitude p must satisfy |p(t)| <= 1")
    return p


def h_bar(x, t, p: Callable | None = None):
    """Worked-example kernel on (line x line):

        h_bar(x, t) = exp(p(t) cos(2 pi x)) cos(p(t) sin(2 pi x)) / e,

    with p(t) = exp(-t^2/5) by default.  Any user amplitude with sup <= 1
    is accepted; the bound is checked on a sample grid.  Period 1 in x;
    h_bar(0, 0) = 1.
    """
    p = _check_p(p)
    xa = np.asarray(x, dtype=float)
    pa = np.asarray(p(np.asarray(t, dtype=float)), dtype=float)
    out = np.exp(pa * np.cos(2.0 * math.pi * xa)) * np.cos(
        pa * np.sin(2.0 * math.pi * xa)
    ) / math.e
    return out if (np.ndim(x) or np.ndim(t)) else float(out)


def h_bar_series(x, t, terms: int = 30, p: Callable | None = None):
    """Cosine series sum_{k=0..terms} p(t)^k cos(2 pi k x) / (k! e).

    Factorial decay makes 30 terms accurate to well below 1e-12 for
    |p| <= 1.
    """
    p = _check_p(p)
    if int(terms) != terms or terms < 0:
        raise DomainError("h_bar_series requires integer terms >= 0")
    xa = np.asarray(x, dtype=float)
    pa = np.asarray(p(np.asarray(t, dtype=float)), dtype=float)
    ks = np.arange(terms + 1)
    weights = pa[..., None] ** ks / _sp.factorial(ks) / math.e
    phases = np.cos(2.0 * math.pi * np.multiply.outer(xa, ks))
    out = np.sum(weights * phases, axis=-1)
    return out if (np.ndim(x) or np.ndim(t)) else float(out)


def h_bar_model(p: Callable | None = None) -> ProductModel:
    p = _check_p(p)
    return ProductModel(
        fn=lambda x, t: np.exp(
            np.asarray(p(t), dtype=float) * np.cos(2.0 * math.pi * x)
        )
        * np.cos(np.asarray(p(t), dtype=float) * np.sin(2.0 * math.pi * x))
        / math.e,
        first_dim=1,
        second_kind=EUCLIDEAN,
        second_dim=1,
        first_domain=FULL,
        name="hbar",
    )


def h_d(
    d: int,
    x: float,
    t: float,
    cfg: QuadratureConfig | None = None,
    p: Callable | None = None,
) -> float:
    """d-dimensional image of the worked example: turning bands of h_bar in x."""
    return tb_product_euclidean(h_bar_model(p), d, x, t, cfg)


def h_d_model(
    d: int,
    cfg: QuadratureConfig | None = None,
    p: Callable | None = None,
) -> ProductModel:
    """h_d as a product model; each evaluation runs one quadrature."""
    if int(d) != d or d < 2:
        raise DomainError("h_d_model requires integer d >= 2")
    base = h_bar_model(p)

    def fn(x, t):
        xb, tb = np.broadcast_arrays(
            np.asarray(x, dtype=float), np.asarray(t, dtype=float)
        )
        out = np.array(
            [
                tb_product_euclidean(base, int(d), float(xv), float(tv), cfg)
                for xv, tv in zip(xb.ravel(), tb.ravel())
            ]
        )
        return out.reshape(xb.shape)

    return ProductModel(
        fn=fn,
        first_dim=int(d),
        second_kind=EUCLIDEAN,
        second_dim=1,
        first_domain=FULL,
        name=f"hd:d={int(d)}",
    )
