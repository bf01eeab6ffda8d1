"""Density targets ``g(R)`` used for sparse constructions and density tables."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class DensityTarget:
    """An increasing function ``g`` on ``[0, inf)`` with the log of its inverse.

    Attributes
    ----------
    name : str
        Registry name, or ``"custom"``.
    func : callable
        Vectorized ``g(R)``.
    log_inverse : callable
        ``y -> ln h^{-1}(y)`` where ``h`` is a strictly increasing continuous
        minorant of ``g`` (``h = g`` for the named targets).  Working in log
        space keeps astronomically large preimages representable.
    """

    name: str
    func: Callable
    log_inverse: Callable[[float], float]

    def __call__(self, R):
        return self.func(R)


def _log1pexp_inv(y: float) -> float:
    # ln(e^y - 1)
    return y + math.log1p(-math.exp(-y)) if y > 0 else -math.inf


def _named(name: str) -> DensityTarget:
    if name in ("log", "ln"):
        return DensityTarget(name, lambda R: np.log1p(np.asarray(R, dtype=float)), _log1pexp_inv)
    if name == "log2":
        ln2 = math.log(2.0)
        return DensityTarget(name, lambda R: np.log2(1.0 + np.asarray(R, dtype=float)),
                             lambda y: _log1pexp_inv(y * ln2))
    if name == "sqrt":
        return DensityTarget(name, lambda R: np.sqrt(np.asarray(R, dtype=float)),
                             lambda y: 2.0 * math.log(y))
    if name.startswith("pow:"):
        try:
            a = float(name[4:])
        except ValueError as exc:
            raise ParameterError(f"bad exponent in {name!r}") from exc
        if a <= 0:
            raise ParameterError("power target needs a positive exponent")
        return DensityTarget(name, lambda R: np.asarray(R, dtype=float) ** a,
                             lambda y: math.log(y) / a)
    raise ParameterError(f"unknown density target {name!r}; "
                         "use log, ln, log2, sqrt or pow:<a>")


def density_target(g) -> DensityTarget:
    """Resolve a name, a :class:`DensityTarget` or a plain callable.

    For a callable the monotonicity is sampled on ``[0, 1e300]``.  A
    nondecreasing but not strictly increasing ``g`` is replaced by the
    minorant ``h(t) = (1 - exp(-t)) g(t) + 1e-9 t``; a decreasing one is
    rejected.

    Examples
    --------
    >>> float(density_target("sqrt")(16.0))
    4.0
    """
    if isinstance(g, DensityTarget):
        return g
    if isinstance(g, str):
        return _named(g)
    if not callable(g):
        raise ParameterError("density target must be a name or a callable")
    t = np.concatenate([[0.0], np.logspace(-6, 300, 4000)])
    with np.errstate(all="ignore"):
        v = np.asarray([float(g(x)) for x in t])
    if np.any(~np.isfinite(v[:50])) or np.any(v < 0):
        raise ParameterError("density target must be finite and nonnegative")
    fin = np.isfinite(v)
    dv = np.diff(v[fin])
    if np.any(dv < 0):
        raise ParameterError("density target is not increasing")
    if np.all(dv > 0):
        h = g
    else:
        def h(x, _g=g):
            return (1.0 - math.exp(-x)) * _g(x) + 1e-9 * x

    def log_inverse(y: float, _h=h) -> float:
        # bisection on s = ln t
        lo, hi = -60.0, 700.0
        if _h(math.exp(hi)) < y:
            raise ParameterError(f"cannot invert density target at {y:g}")
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if _h(math.exp(mid)) >= y:
                hi = mid
            else:
                lo = mid
        return hi

    return DensityTarget("custom", np.vectorize(lambda x: float(g(x))), log_inverse)
