"""Deterministic Gauss-Legendre quadrature with adaptive panel subdivision.

All integrals in the package funnel through this module so that results are
reproducible bit-for-bit across runs: node generation is deterministic and
cached immutably, panels split by bisecting the worst error estimate, and
ties break by insertion order.

The turning-bands weight (1 - u^2/x^2)^((d-3)/2) is integrable but singular
at u = x when d = 2, so integrate_tb applies the substitution u = x sin(s),
which turns the weight into cos(s)^(d-2) on [0, pi/2] and removes the
singularity for every d >= 2.
"""

from __future__ import annotations

import dataclasses
import functools
import heapq
import math

import numpy as np
from scipy import special as _sp

from .base import DomainError, NonConvergenceError

__all__ = [
    "QuadratureConfig",
    "DEFAULT_CONFIG",
    "gauss_legendre_nodes",
    "integrate",
    "integrate_tb",
    "tb_prefactor",
    "integrate_semi_infinite",
]


@dataclasses.dataclass(frozen=True)
class QuadratureConfig:
    """Knobs for the adaptive engine.

    nodes       : Gauss-Legendre points per panel (the error estimate pairs
                  this with the 2*nodes rule on the same panel)
    max_panels  : subdivision budget before signalling non-convergence
    abs_tol     : absolute tolerance on the summed panel error
    rel_tol     : relative tolerance against the current integral value
    tail_cutoff : fixed truncation radius for semi-infinite integrals;
                  None means derive it from the caller's decay envelope
    """

    nodes: int = 64
    max_panels: int = 1024
    abs_tol: float = 1e-10
    rel_tol: float = 1e-9
    tail_cutoff: float | None = None

    def __post_init__(self):
        if int(self.nodes) != self.nodes or self.nodes < 2:
            raise DomainError("QuadratureConfig.nodes must be an integer >= 2")
        if self.max_panels < 1:
            raise DomainError("QuadratureConfig.max_panels must be >= 1")
        if self.abs_tol <= 0.0 or self.rel_tol < 0.0:
            raise DomainError("QuadratureConfig tolerances must be positive")


DEFAULT_CONFIG = QuadratureConfig()


@functools.lru_cache(maxsize=64)
def gauss_legendre_nodes(n: int):
    """Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].

    Returned arrays are read-only; callers must copy before mutating.
    """
    if int(n) != n or n < 2:
        raise DomainError("gauss_legendre_nodes requires integer n >= 2")
    x, w = np.polynomial.legendre.leggauss(int(n))
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _panel_values(f, a: float, b: float, nodes: int):
    """(value_2n, |value_n - value_2n|) on one panel; f takes arrays."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    xn, wn = gauss_legendre_nodes(nodes)
    x2, w2 = gauss_legendre_nodes(2 * nodes)
    fn = np.asarray(f(c + h * xn), dtype=float)
    f2 = np.asarray(f(c + h * x2), dtype=float)
    if not (np.all(np.isfinite(fn)) and np.all(np.isfinite(f2))):
        raise DomainError(f"integrand returned non-finite values on [{a}, {b}]")
    val_n = h * float(wn @ fn)
    val_2n = h * float(w2 @ f2)
    return val_2n, abs(val_n - val_2n)


def integrate(f, a: float, b: float, cfg: QuadratureConfig | None = None):
    """Adaptive integral of f over [a, b].

    Returns (value, error_estimate).  The error estimate is the summed
    n-vs-2n panel difference.  Raises NonConvergenceError when the panel
    budget runs out before the tolerance is met, which is distinct from
    DomainError (bad arguments or a non-finite integrand).
    """
    cfg = cfg or DEFAULT_CONFIG
    a = float(a)
    b = float(b)
    if not (math.isfinite(a) and math.isfinite(b)):
        raise DomainError("integrate requires finite endpoints")
    if b < a:
        raise DomainError("integrate requires a <= b")
    if a == b:
        return 0.0, 0.0

    val, err = _panel_values(f, a, b, cfg.nodes)
    # heap of (-err, insertion_counter, a, b, value, err)
    counter = 0
    heap = [(-err, counter, a, b, val, err)]
    total_val = val
    total_err = err
    while True:
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total_val))
        if total_err <= tol:
            return total_val, total_err
        if len(heap) >= cfg.max_panels:
            raise NonConvergenceError(
                f"integrate: {cfg.max_panels} panels reached with error "
                f"{total_err:.3e} above tolerance {tol:.3e}"
            )
        neg_err, _, pa, pb, pval, perr = heapq.heappop(heap)
        total_val -= pval
        total_err -= perr
        mid = 0.5 * (pa + pb)
        for (qa, qb) in ((pa, mid), (mid, pb)):
            qval, qerr = _panel_values(f, qa, qb, cfg.nodes)
            counter += 1
            heapq.heappush(heap, (-qerr, counter, qa, qb, qval, qerr))
            total_val += qval
            total_err += qerr


def tb_prefactor(d: int) -> float:
    """2 Gamma(d/2) / (sqrt(pi) Gamma((d-1)/2)), the turning-bands constant."""
    if int(d) != d or d < 2:
        raise DomainError("turning bands requires integer d >= 2")
    return float(
        2.0 * np.exp(_sp.gammaln(0.5 * d) - _sp.gammaln(0.5 * (d - 1))) / math.sqrt(math.pi)
    )


def integrate_tb(f, x: float, d: int, cfg: QuadratureConfig | None = None) -> float:
    """Turning-bands average of f at radius x in dimension d:

        c_d / x * integral_0^x f(u) (1 - u^2/x^2)^((d-3)/2) du
      = c_d * integral_0^(pi/2) f(x sin s) cos(s)^(d-2) ds

    with c_d = tb_prefactor(d).  The rule integrates a constant f exactly
    to 1 (classical normalization of the weight).
    """
    if int(d) != d or d < 2:
        raise DomainError("integrate_tb requires integer d >= 2")
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError("integrate_tb requires finite x > 0")
    cfg = cfg or DEFAULT_CONFIG
    power = d - 2

    def g(s):
        vals = np.asarray(f(x * np.sin(s)), dtype=float)
        if power == 0:
            return vals
        return vals * np.cos(s) ** power

    val, _ = integrate(g, 0.0, 0.5 * math.pi, cfg)
    return tb_prefactor(d) * val


def integrate_semi_infinite(
    f,
    envelope,
    cfg: QuadratureConfig | None = None,
    osc_freq: float = 0.0,
):
    """Integral of f over [0, inf) for integrands with a known decay bound.

    envelope(r) must bound |f| pointwise beyond r and decay to zero; the
    truncation radius W is the first point where the envelope falls below
    abs_tol / 10 (or cfg.tail_cutoff when set).  osc_freq is the dominant
    angular frequency of f, used to size panels at roughly two oscillation
    periods each.

    Returns (value, error_estimate, cutoff).  An envelope that does not
    decay raises DomainError (the integrand is not integrable as stated);
    an envelope that decays too slowly to reach the threshold within the
    search budget raises NonConvergenceError.
    """
    cfg = cfg or DEFAULT_CONFIG
    if cfg.tail_cutoff is not None:
        cutoff = float(cfg.tail_cutoff)
        if not math.isfinite(cutoff) or cutoff <= 0.0:
            raise DomainError("tail_cutoff must be finite and positive")
    else:
        threshold = cfg.abs_tol / 10.0
        cutoff = 1.0
        start = float(envelope(cutoff))
        if not math.isfinite(start):
            raise DomainError("decay envelope returned a non-finite value")
        steps = 0
        while float(envelope(cutoff)) > threshold:
            cutoff *= 2.0
            steps += 1
            if steps > 60:
                # distinguish "does not decay" from "decays too slowly"
                if float(envelope(cutoff)) > 0.5 * start:
                    raise DomainError(
                        "decay envelope does not decay; integrand is not "
                        "integrable at the stated tolerance"
                    )
                raise NonConvergenceError(
                    "decay envelope falls too slowly to reach the tail "
                    f"threshold {threshold:.3e} within the search budget"
                )

    n_blocks = max(4, int(math.ceil(cutoff * max(osc_freq, 0.0) / math.pi)))
    n_blocks = min(n_blocks, 1 << 17)
    edges = np.linspace(0.0, cutoff, n_blocks + 1)
    block_cfg = dataclasses.replace(
        cfg,
        abs_tol=max(cfg.abs_tol / n_blocks, 1e-300),
        tail_cutoff=None,
    )
    total = 0.0
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = integrate(f, float(lo), float(hi), block_cfg)
        total += v
        err += e
    return total, err, cutoff
