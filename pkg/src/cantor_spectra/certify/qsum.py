"""Partial sums ``Q(xi) = sum |mu_hat(xi + r lambda)|**2`` and their certificates."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DomainError
from ..fourier import EPS, MaskConstants, ShiftPlan, TruncationPolicy, build_shift_plan
from ..treemap import DigitStats, SpectrumCandidate


def thread_count(threads: int | None = None) -> int:
    """Worker count: explicit value, else ``CANTOR_SPECTRA_THREADS``, else 1."""
    if threads is None:
        env = os.environ.get("CANTOR_SPECTRA_THREADS", "").strip()
        threads = int(env) if env.isdigit() else 1
    return max(1, int(threads))


def candidate_plan(c: SpectrumCandidate, terms: int, t: TruncationPolicy = TruncationPolicy(),
                   xi_max: float = 1.0, depth: int | None = None) -> ShiftPlan:
    """Shift plan for the first ``terms`` scaled elements of a candidate."""
    if terms > len(c):
        raise DomainError(f"candidate has {len(c)} elements, asked for {terms}")
    return build_shift_plan(c.supports[:terms], c.params, t, xi_max=xi_max, scale=c.r,
                            max_depth=depth)


def qn_identity_check(c: SpectrumCandidate, n: int, xis: Sequence[float]) -> float:
    """Max over ``xis`` of ``| sum_{k < q**n} |mu_n_hat(xi + r lambda_k)|**2 - 1 |``.

    Needs the first ``q**n`` tree indices to be present (a regular spec).
    """
    q = c.params.q
    need = q**n
    if len(c) < need or c.indices[need - 1] != need - 1:
        raise DomainError(f"need the first {need} tree indices without gaps")
    xm = max((abs(x) for x in xis), default=0.0)
    plan = candidate_plan(c, need, xi_max=max(xm, 1.0), depth=n)
    dev = 0.0
    for x in xis:
        vals, _ = plan.sq_terms(float(x))
        dev = max(dev, abs(math.fsum(vals) - 1.0))
    return dev


class QEvaluator:
    """Repeated evaluation of ``Q_terms(xi)`` for one candidate.

    Parameters
    ----------
    c : SpectrumCandidate
    terms : int
        Number of leading elements summed.
    t : TruncationPolicy
    xi_max : float
        Largest ``|xi|`` that will be requested.

    Notes
    -----
    Per-term values are summed with :func:`math.fsum`, whose result does not
    depend on evaluation order, so outputs are identical for any thread
    count.
    """

    def __init__(self, c: SpectrumCandidate, terms: int, t: TruncationPolicy = TruncationPolicy(),
                 xi_max: float = 1.0):
        self.candidate = c
        self.terms = terms
        self.policy = t
        self.plan = candidate_plan(c, terms, t, xi_max)

    def terms_at(self, xi: float) -> tuple[np.ndarray, np.ndarray]:
        return self.plan.sq_terms(float(xi))

    def __call__(self, xi: float, upto: int | None = None) -> tuple[float, float]:
        vals, err = self.terms_at(xi)
        k = self.terms if upto is None else upto
        total = math.fsum(vals[:k])
        budget = math.fsum(err[:k]) + 2.0 * EPS * (1.0 + total)
        return total, budget

    def grid(self, xis: Sequence[float], threads: int | None = None) -> list[tuple[float, float]]:
        n = thread_count(threads)
        if n == 1 or len(xis) < 2:
            return [self(x) for x in xis]
        with ThreadPoolExecutor(max_workers=n) as ex:
            return list(ex.map(self, xis))


def q_eval(c: SpectrumCandidate, xi: float, terms: int,
           t: TruncationPolicy = TruncationPolicy()) -> tuple[float, float]:
    """``(Q_terms(xi), error_budget)`` for a single frequency.

    Examples
    --------
    >>> from cantor_spectra.numtheory import MeasureParams
    >>> from cantor_spectra.treemap import canonical_spec, enumerate_spec
    >>> c = enumerate_spec(canonical_spec(MeasureParams(2, 4)), 64)
    >>> Q, e = q_eval(c, 0.0, 64)
    >>> abs(Q - 1) < 1e-12
    True
    """
    return QEvaluator(c, terms, t, xi_max=max(1.0, abs(xi)))(xi)


# ---------------------------------------------------------------------------
# deficiency certificate


@dataclass
class DeficitCertificate:
    """Certified upper bound for the full sum ``Q(xi)``.

    With ``Q_n`` the sum over tree indices below ``q**n``, the inequality
    ``1 - Q_{n+1}(x) >= (1 - Q_n(x)) (1 - c2**L*_n)`` holds for
    ``|x| <= (b-2) / (q (b-1))``.  Chaining it from ``n0`` gives
    ``Q(x) <= 1 - (1 - Q_{n0}(x) - e) B`` with ``B = prod_{n >= n0} (1 - c2**L*_n)``.
    ``B`` is summed explicitly up to ``explicit_to`` and bounded past it by
    ``c2**L*_n <= n**-p``.
    """

    xi: float
    n0: int
    q_n0: float
    q_n0_error: float
    log_B: float
    upper_bound: float
    explicit_to: int
    exponent: float

    @property
    def B(self) -> float:
        return math.exp(self.log_B)

    def to_json(self) -> dict:
        return {"xi": self.xi, "n0": self.n0, "Q_n0": self.q_n0, "Q_n0_error": self.q_n0_error,
                "B": self.B, "upper_bound": self.upper_bound, "explicit_to": self.explicit_to,
                "tail_exponent": self.exponent}


def certificate_range(p) -> float:
    """Largest ``|x|`` covered by the deficiency recursion."""
    return (p.b - 2) / (p.q * (p.b - 1))


def product_bound(stats: DigitStats, c2: float, n0: int, explicit_to: int = 100000):
    """Lower bound for ``ln prod_{n >= n0} (1 - c2**L*_n)`` and the exponent used.

    Returns ``(None, None)`` when the statistics provide no decay exponent
    above 1 (the product may then vanish).
    """
    if stats.lstar_exponent is None:
        return None, None
    p = stats.lstar_exponent(c2)
    if p is None or p <= 1.0:
        return None, p
    N = max(explicit_to, n0)
    lc2 = math.log(c2)
    terms = []
    for n in range(n0, N + 1):
        x = math.exp(stats.Lstar(n) * lc2)
        if x >= 1.0:
            return -math.inf, p
        terms.append(math.log1p(-x))
    xmax = float(N + 1) ** (-p)
    tail = (float(N) ** (1.0 - p) / (p - 1.0)) / (1.0 - xmax)
    logB = math.fsum(terms) - tail
    return logB * (1.0 + 1e-12) - 1e-15, p


def deficit_certificate(ev: QEvaluator, stats: DigitStats, mc: MaskConstants, xi: float,
                        explicit_to: int = 100000) -> DeficitCertificate | None:
    """Certify ``Q(xi) < 1`` from the enumerated prefix and the tail law of ``L*``."""
    c = ev.candidate
    p = c.params
    if not 0 <= abs(xi) <= certificate_range(p):
        raise DomainError(f"|xi| = {abs(xi)} outside the certified range {certificate_range(p)}")
    q = p.q
    n0 = 0
    while q ** (n0 + 1) <= c.indices[ev.terms - 1] + 1:
        n0 += 1
    if n0 < 1:
        return None
    upto = sum(1 for i in c.indices[:ev.terms] if i < q**n0)
    Qn, e = ev(xi, upto=upto)
    logB, expo = product_bound(stats, mc.c2, n0, explicit_to)
    if logB is None or logB == -math.inf:
        return None
    deficit = max(0.0, 1.0 - Qn - e)
    upper = 1.0 - deficit * math.exp(logB)
    upper = min(1.0, upper + 4.0 * EPS)
    return DeficitCertificate(float(xi), n0, Qn, e, logB, upper, max(explicit_to, n0), expo)
