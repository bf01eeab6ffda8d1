"""Mask, Fourier transform of the measure, and the extremal mask constants.

The transform is the infinite product of rescaled masks

    mu_hat(xi) = prod_{j >= 1} m(xi / b**j),   m(x) = (1/q) sum_{k<q} exp(2 pi i k x).

All evaluations carry an explicit bound for the neglected factors, based on
``|1 - m(eta)| <= pi (q-1) |eta|``.  Frequencies of the form ``xi + S`` with a
huge integer ``S`` are handled exactly: the factor arguments are rebuilt
from the signed digits of ``S`` so no precision is lost to its size.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, ParameterError, RefinementNeeded, TruncationInfeasible
from .numtheory import MeasureParams, b_adic_expand

EPS = np.finfo(float).eps
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TruncationPolicy:
    """How many product factors to evaluate and how much to neglect.

    Parameters
    ----------
    depth : int
        Number of factors evaluated past the highest digit of an integer
        shift (or in total when there is no shift).
    tail_tol : float
        Runs of factors whose combined deviation from 1 is below this value
        are skipped; their bound is added to the reported tail bound.
    """

    depth: int = 40
    tail_tol: float = 1e-17

    def __post_init__(self):
        if self.depth < 1:
            raise ParameterError(f"depth must be >= 1, got {self.depth}")
        if not 0.0 < self.tail_tol < 1.0:
            raise ParameterError(f"tail_tol must lie in (0, 1), got {self.tail_tol}")


def mask(xi, q: int):
    """Mask ``(1/q) sum_{k<q} exp(2 pi i k xi)``; accepts scalars or arrays.

    Direct summation, so integer arguments give exactly 1.

    Examples
    --------
    >>> abs(mask(0.5, 2)) < 1e-15
    True
    >>> mask(0.25, 2)
    (0.5+0.5j)
    """
    if np.ndim(xi) == 0:
        x = float(xi)
        return sum(cmath.exp(1j * _TWO_PI * k * x) for k in range(q)) / q
    x = np.asarray(xi, dtype=float)
    acc = np.zeros(x.shape, dtype=complex)
    for k in range(q):
        acc += np.exp(1j * _TWO_PI * k * x)
    return acc / q


def mask_sq(x: np.ndarray, q: int) -> np.ndarray:
    """``|m(x)|**2`` for an array, via the cosine form of the direct sum."""
    x = np.asarray(x, dtype=float)
    acc = np.full(x.shape, float(q))
    for k in range(1, q):
        acc += 2.0 * (q - k) * np.cos(_TWO_PI * k * x)
    return np.maximum(acc, 0.0) / (q * q)


def _mask_abs_err(q: int, ymag: float) -> float:
    """Absolute error of a computed ``|m(y)|`` from rounding in ``y`` and the sum."""
    return math.pi * (q - 1) * 4.0 * EPS * (abs(ymag) + 1.0) + 2.0 * q * EPS


def _shift_terms(shift) -> list[tuple[int, int]]:
    """Normalize an integer shift to sorted ``(position, coefficient)`` pairs.

    A shift may be given as an ``int`` or as any iterable of
    ``(position, coefficient)`` pairs representing ``sum c * b**p``.
    Coefficients need not be reduced digits.
    """
    if isinstance(shift, (int, np.integer)):
        return None if shift == 0 else int(shift)
    terms = sorted((int(p), int(c)) for p, c in shift if c)
    for i in range(1, len(terms)):
        if terms[i][0] == terms[i - 1][0]:
            raise DomainError(f"repeated position {terms[i][0]} in shift")
    if terms and terms[0][0] < 0:
        raise DomainError("shift positions must be >= 0")
    return terms


def shift_support(shift, b: int) -> list[tuple[int, int]]:
    """Sorted ``(position, coefficient)`` pairs for an int or pair-list shift."""
    t = _shift_terms(shift)
    if t is None:
        return []
    if isinstance(t, int):
        return b_adic_expand(t, b).support()
    return t


@dataclass
class _Runs:
    """Factor arguments grouped by runs of constant partial shift.

    Factor ``j`` (1-based) has argument ``(xi + S_j) / b**j`` where ``S_j``
    collects the shift terms with position ``< j``.  Between consecutive
    shift positions ``S_j`` is constant, so arguments inside a run only
    shrink by the factor ``b``.
    """

    starts: list          # first factor index of each run
    ends: list            # last factor index (inclusive) of each run
    partial: list         # S value for each run (exact int)


def _runs(support: Sequence[tuple[int, int]], b: int, depth: int) -> _Runs:
    starts, ends, partial = [], [], []
    S = 0
    j = 1
    for p, c in support:
        if p >= j:
            starts.append(j)
            ends.append(p)
            partial.append(S)
        S += c * b**p
        j = p + 1
    starts.append(j)
    ends.append(j - 1 + depth)
    partial.append(S)
    return _Runs(starts, ends, partial)


@dataclass
class TransformEval:
    """Full result of a certified transform evaluation.

    Attributes
    ----------
    value : complex
        Product of the evaluated factors.
    tail_bound : float
        Bound on ``| |mu_hat| - |value| |`` from all neglected factors.
    rounding : float
        Bound on the floating-point error in ``|value|``.
    factors : int
        Number of evaluated factors.
    """

    value: complex
    tail_bound: float
    rounding: float
    factors: int

    @property
    def lower(self) -> float:
        """Certified lower bound for ``|mu_hat|``."""
        return max(0.0, (abs(self.value) - self.rounding) * (1.0 - self.tail_bound))

    @property
    def upper(self) -> float:
        """Certified upper bound for ``|mu_hat|``."""
        return min(1.0, abs(self.value) + self.rounding)


def evaluate_transform(xi: float, p: MeasureParams, t: TruncationPolicy = TruncationPolicy(),
                       shift=0) -> TransformEval:
    """Evaluate ``mu_hat(xi + shift)`` with certified error terms.

    Parameters
    ----------
    xi : float
        Real part of the frequency.
    p : MeasureParams
    t : TruncationPolicy
    shift : int or iterable of (position, coefficient)
        Exact integer added to ``xi``.

    Raises
    ------
    TruncationInfeasible
        If the last evaluated factor's argument exceeds 1/2 in size.
    """
    q, b = p.q, p.b
    support = shift_support(shift, b)
    runs = _runs(support, b, t.depth)
    lip = math.pi * (q - 1)
    log_mag = 0.0
    phase = 0.0
    zero = False
    tail = 0.0
    round_rel = 0.0
    round_abs = 0.0
    nfac = 0
    last = len(runs.starts) - 1
    for i, (j0, j1, S) in enumerate(zip(runs.starts, runs.ends, runs.partial)):
        if j1 < j0:
            continue
        for j in range(j0, j1 + 1):
            y = S / b**j + xi * float(b) ** (-j)
            rest = lip * abs(y) * b / (b - 1)
            if rest <= t.tail_tol and i != last:
                tail += rest
                break
            m = mask(y, q)
            a = abs(m)
            nfac += 1
            err = _mask_abs_err(q, y)
            round_abs += err
            if a == 0.0:
                zero = True
                continue
            round_rel += err / a
            log_mag += math.log(a)
            phase += cmath.phase(m)
    # tail past the last evaluated factor of the final run
    j_end = runs.ends[-1]
    S = runs.partial[-1]
    top = abs(S / b**j_end + xi * float(b) ** (-j_end))
    if top > 0.5:
        raise TruncationInfeasible(
            f"|xi + shift| / b^{j_end} = {top:.3g} > 1/2; increase depth")
    tail += lip * top / (b - 1)
    if zero:
        return TransformEval(0j, tail, min(round_abs, 1.0), nfac)
    mag = math.exp(log_mag)
    rnd = min(round_abs, mag * math.expm1(round_rel)) if round_rel < 700 else round_abs
    return TransformEval(cmath.rect(mag, phase), tail, rnd, nfac)


def mu_hat(xi: float, p: MeasureParams, t: TruncationPolicy = TruncationPolicy(),
           shift=0) -> tuple[complex, float]:
    """Truncated transform and its tail bound.

    Returns
    -------
    value : complex
        ``prod_{j=1}^{J} m((xi + shift) / b**j)`` with ``J`` the policy depth
        past the top digit of ``shift``.
    tail_bound : float
        Certified bound on ``| |mu_hat(xi + shift)| - |value| |``.

    Examples
    --------
    >>> P = MeasureParams(2, 4)
    >>> mu_hat(0.0, P, TruncationPolicy(10))
    ((1+0j), 0.0)
    """
    ev = evaluate_transform(xi, p, t, shift)
    return ev.value, ev.tail_bound


def mu_n_hat(xi: float, n: int, p: MeasureParams, shift=0) -> complex:
    """Finite product ``m((xi+shift)/b) ... m((xi+shift)/b**n)``, computed exactly in order."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    q, b = p.q, p.b
    S = 0
    support = shift_support(shift, b)
    for pos, c in support:
        if pos < n:
            S += c * b**pos
    out = 1.0 + 0j
    for j in range(1, n + 1):
        Sj = S % b**j
        out *= mask(Sj / b**j + xi * float(b) ** (-j), q)
    return out


# ---------------------------------------------------------------------------
# vectorized evaluation over many shifts


@dataclass
class ShiftPlan:
    """Flattened factor arguments for ``|mu_hat(xi + S_k)|**2`` over many ``k``.

    Factor arguments are ``xi * scale + offset``; ``owner`` maps each factor
    to its term.  ``skipped`` holds, per term, the deviation bound of runs
    that were dropped as negligible for ``|xi| <= xi_max``.
    """

    q: int
    b: int
    n_terms: int
    owner: np.ndarray
    scale: np.ndarray
    offset: np.ndarray
    skipped: np.ndarray
    tail_scale: np.ndarray
    tail_offset: np.ndarray
    counts: np.ndarray
    xi_max: float

    def sq_terms(self, xi: float) -> tuple[np.ndarray, np.ndarray]:
        """Per-term ``|mu_hat|**2`` values and absolute error bounds at ``xi``."""
        if abs(xi) > self.xi_max * (1 + 1e-12):
            raise DomainError(f"|xi| = {abs(xi)} exceeds plan range {self.xi_max}")
        q, b = self.q, self.b
        y = xi * self.scale + self.offset
        f = mask_sq(y, q)
        with np.errstate(divide="ignore"):
            logf = np.log(f)
        logsum = np.bincount(self.owner, weights=logf, minlength=self.n_terms)
        vals = np.exp(logsum)
        # rounding: absolute error per squared factor, propagated relatively
        eps_f = (2.0 * math.pi * (q - 1) * 4.0 * EPS * (np.abs(y) + 1.0) + 4.0 * q * EPS)
        with np.errstate(divide="ignore"):
            rel = np.bincount(self.owner, weights=eps_f / f, minlength=self.n_terms)
            cap = np.bincount(self.owner, weights=eps_f, minlength=self.n_terms) * 1.01
        with np.errstate(over="ignore", invalid="ignore"):
            rnd = vals * np.expm1(rel)
        rnd = np.where(np.isfinite(rnd), np.minimum(rnd, cap), cap)
        ytail = np.abs(xi * self.tail_scale + self.tail_offset)
        if np.any(ytail > 0.5):
            raise TruncationInfeasible("plan depth too small for the requested xi")
        dev = self.skipped + math.pi * (q - 1) * ytail / (b - 1)
        err = 2.0 * np.minimum(dev, 1.0) * vals + rnd
        return vals, err


def build_shift_plan(supports: Sequence[Sequence[tuple[int, int]]], p: MeasureParams,
                     t: TruncationPolicy = TruncationPolicy(), xi_max: float = 1.0,
                     scale: int = 1, max_depth: int | None = None) -> ShiftPlan:
    """Precompute factor arguments for shifts ``scale * sum c * b**pos``.

    Parameters
    ----------
    supports : sequence of sequences of (position, coefficient)
        One sparse representation per term.
    p : MeasureParams
    t : TruncationPolicy
    xi_max : float
        Largest ``|xi|`` the plan will be evaluated at.
    scale : int
        Integer multiplier applied to every coefficient (``r`` for spectra).
    max_depth : int, optional
        If given, evaluate exactly the factors ``1..max_depth`` (the finite
        product ``mu_n_hat``) with no tail and no skipping.
    """
    q, b = p.q, p.b
    lip = math.pi * (q - 1)
    owner, sc, off = [], [], []
    skipped, tsc, toff, counts = [], [], [], []
    for k, sup in enumerate(supports):
        sup = sorted((pos, scale * c) for pos, c in sup if c)
        n0 = len(owner)
        if max_depth is not None:
            S = 0
            idx = 0
            for j in range(1, max_depth + 1):
                while idx < len(sup) and sup[idx][0] < j:
                    S += sup[idx][1] * b ** sup[idx][0]
                    idx += 1
                bj = b**j
                owner.append(k)
                sc.append(float(b) ** (-j))
                off.append((S % bj) / bj)
            skipped.append(0.0)
            tsc.append(0.0)
            toff.append(0.0)
            counts.append(len(owner) - n0)
            continue
        runs = _runs(sup, b, t.depth)
        skip = 0.0
        last = len(runs.starts) - 1
        for i, (j0, j1, S) in enumerate(zip(runs.starts, runs.ends, runs.partial)):
            if j1 < j0:
                continue
            base = S / b**j0
            for j in range(j0, j1 + 1):
                mag = abs(base) * float(b) ** (j0 - j) + xi_max * float(b) ** (-j)
                bound = lip * mag * b / (b - 1)
                if bound <= t.tail_tol and i != last:
                    skip += bound
                    break
                owner.append(k)
                sc.append(float(b) ** (-j))
                off.append(base * float(b) ** (j0 - j))
        j_end = runs.ends[-1]
        S = runs.partial[-1]
        skipped.append(skip)
        tsc.append(float(b) ** (-j_end))
        toff.append(S / b**j_end)
        counts.append(len(owner) - n0)
    return ShiftPlan(q, b, len(supports), np.asarray(owner, dtype=np.int64),
                     np.asarray(sc), np.asarray(off), np.asarray(skipped),
                     np.asarray(tsc), np.asarray(toff),
                     np.asarray(counts), float(xi_max))


# ---------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class MaskConstants:
    """Certified extremal constants of the mask products.

    ``c_min`` and ``c_max`` are the grid extrema; the intervals enclose the
    true values.  Criteria use the conservative ends: ``c1`` (low end of the
    ``c_min`` interval) and ``c2`` (high end of the ``c_max`` interval).
    """

    c_min: float
    c_max: float
    params: MeasureParams
    grid_resolution: float
    c_min_interval: tuple = field(default=(0.0, 0.0))
    c_max_interval: tuple = field(default=(0.0, 0.0))

    @property
    def c1(self) -> float:
        return self.c_min_interval[0]

    @property
    def c2(self) -> float:
        return self.c_max_interval[1]

    def to_dict(self) -> dict:
        return {
            "q": self.params.q, "b": self.params.b,
            "c_min": self.c_min, "c_max": self.c_max,
            "c_min_interval": list(self.c_min_interval),
            "c_max_interval": list(self.c_max_interval),
            "grid_resolution": self.grid_resolution,
        }


def _product_sq_grid(x: np.ndarray, q: int, b: int, depth: int) -> np.ndarray:
    """``prod_{j=0}^{depth} |m(x / b**j)|**2`` on a grid, in log form."""
    acc = np.zeros_like(x)
    with np.errstate(divide="ignore"):
        for j in range(depth + 1):
            acc += np.log(mask_sq(x * float(b) ** (-j), q))
    return np.exp(acc)


def compute_mask_constants(p: MeasureParams, resolution: float = 1e-4) -> MaskConstants:
    """Grid-certified ``c_min`` and ``c_max``.

    ``c_min`` is the minimum of ``prod_{j>=0} |m(xi / b**j)|**2`` over
    ``|xi| <= (b-1)/(q b)``; ``c_max`` is the maximum of ``|m(xi)|**2`` over
    ``1/b**2 <= |xi| <= (b-1)/(q b)``.  Both functions are even, so only the
    positive half is sampled.  A Lipschitz margin of ``L h / 2`` covers the
    gaps between grid points of spacing ``h``.

    Raises
    ------
    RefinementNeeded
        If the margins are too wide to keep ``0 < c_min < c_max < 1``.
    """
    p.require_r()
    q, b = p.q, p.b
    if not resolution > 0:
        raise ParameterError("resolution must be positive")
    X = (b - 1) / (q * b)
    lo_c = 1.0 / b**2
    if lo_c > X:
        raise ParameterError(f"empty c_max domain: 1/b^2 = {lo_c} > {X}")
    depth = 60
    # deviation of the neglected factors, and rounding per factor
    tail = math.pi * (q - 1) * X * float(b) ** (-depth) / (b - 1)
    rnd = (depth + 1) * (2.0 * math.pi * (q - 1) * 4.0 * EPS * 2.0 + 4.0 * q * EPS)

    n = max(2, math.ceil(X / resolution) + 1)
    x = np.linspace(0.0, X, n)
    h = x[1] - x[0]
    F = _product_sq_grid(x, q, b, depth)
    lip_F = 2.0 * math.pi * (q - 1) * b / (b - 1)
    i = int(np.argmin(F))
    cmin = float(F[i])
    cmin_lo = (cmin - rnd) * (1.0 - tail) ** 2 - lip_F * h / 2.0
    cmin_hi = cmin + rnd

    n2 = max(2, math.ceil((X - lo_c) / resolution) + 1)
    x2 = np.linspace(lo_c, X, n2)
    h2 = x2[1] - x2[0]
    G = mask_sq(x2, q)
    cmax = float(np.max(G))
    cmax_lo = cmax - 4.0 * q * EPS
    cmax_hi = cmax + 2.0 * math.pi * (q - 1) * h2 / 2.0 + 8.0 * q * EPS

    if cmin_lo <= 0.0:
        raise RefinementNeeded(f"c_min lower end {cmin_lo:.3g} not positive; refine grid")
    if cmax_hi >= 1.0:
        raise RefinementNeeded(f"c_max upper end {cmax_hi:.6f} not below 1; refine grid")
    if cmin_hi >= cmax_lo:
        raise RefinementNeeded("c_min and c_max intervals overlap")
    return MaskConstants(cmin, cmax, p, float(resolution),
                         (float(cmin_lo), float(cmin_hi)), (float(cmax_lo), float(cmax_hi)))


def hadamard_check(q: int, r: int, tol: float = 1e-12) -> bool:
    """Check that ``[exp(2 pi i jk r / b)]`` with ``b = q r`` is a Hadamard matrix.

    Examples
    --------
    >>> hadamard_check(2, 2), hadamard_check(3, 2)
    (True, True)
    """
    if q < 2 or r < 1:
        raise ParameterError("need q >= 2 and r >= 1")
    b = q * r
    idx = np.arange(q)
    H = np.exp(2j * np.pi * np.outer(idx, idx) * r / b)
    return bool(np.max(np.abs(H @ H.conj().T - q * np.eye(q))) <= tol)


@dataclass
class Prop33Report:
    """Outcome of a two-sided bound check for ``|mu_hat(t)|**2``."""

    xi: float
    positions: list
    value: float
    budget: float
    lower: float
    upper: float
    tol: float
    holds: bool


def prop33_bounds_check(xi: float, digit_positions: Iterable[tuple[int, int]], p: MeasureParams,
                        mc: MaskConstants, t: TruncationPolicy = TruncationPolicy(),
                        tol: float = 1e-6) -> Prop33Report:
    """Check ``c_min**(N+1) <= |mu_hat(t)|**2 <= c_max**N`` at ``t = xi + sum d b**n``.

    The conservative ends of the constant intervals are used, and the
    tolerance is widened by the evaluation budget.
    """
    r = p.require_r()
    b = p.b
    limit = r * (b - 2) / (b - 1)
    if abs(xi) > limit:
        raise DomainError(f"|xi| = {abs(xi)} exceeds {limit}")
    pos = [(int(n), int(d)) for n, d in digit_positions]
    last = 0
    for n, d in pos:
        if n <= last:
            raise DomainError("positions must be >= 1 and strictly increasing")
        if not 1 <= d <= r - 1:
            raise DomainError(f"digit {d} outside 1..{r - 1}")
        last = n
    ev = evaluate_transform(xi, p, t, shift=pos)
    v = abs(ev.value)
    budget = 2.0 * (ev.tail_bound + ev.rounding) + (ev.tail_bound + ev.rounding) ** 2
    N = len(pos)
    lower = mc.c1 ** (N + 1)
    upper = mc.c2**N
    tot = tol + budget
    holds = (lower - tot <= v * v <= upper + tot)
    return Prop33Report(xi, pos, v * v, budget, lower, upper, tot, bool(holds))
