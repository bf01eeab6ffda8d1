"""Finite-horizon evaluation of the two growth criteria for ``N*``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..fourier import MaskConstants
from ..treemap import DigitStats

SATISFIES_I = "SatisfiesI"
SATISFIES_II = "SatisfiesII"
NEITHER = "Neither"
INCONCLUSIVE = "Inconclusive"


@dataclass
class CriterionReport:
    """Evidence for the spectrum criterion (I) and the non-spectrum criterion (II).

    Criterion I asks for ``alpha_{n+1} - M(alpha_n) -> inf`` together with
    ``sum c1**N*(alpha_n, alpha_{n+1}) = inf``.  Criterion II asks for
    ``sum c2**L*_n < inf``.  ``basis_*`` records whether a verdict rests on
    the structure of the statistics or on finite-horizon thresholds.
    """

    c1_interval: tuple
    c2_interval: tuple
    alpha_seq: list
    gaps: list
    partial_sums_I: list
    partial_sums_II: list
    satisfies_I: bool
    satisfies_II: bool
    basis_I: str
    basis_II: str
    conclusion: str
    notes: list = field(default_factory=list)

    def to_json(self, limit: int = 50) -> dict:
        def cut(xs):
            xs = list(xs)
            return xs if len(xs) <= limit else xs[:limit // 2] + xs[-limit // 2:]

        return {
            "c1_interval": list(self.c1_interval), "c2_interval": list(self.c2_interval),
            "alpha_seq": [str(a) if a > 2**53 else a for a in cut(self.alpha_seq)],
            "gaps": [str(g) if g > 2**53 else g for g in cut(self.gaps)],
            "partial_sums_I": cut(self.partial_sums_I),
            "partial_sums_II": cut(self.partial_sums_II),
            "satisfies_I": self.satisfies_I, "satisfies_II": self.satisfies_II,
            "basis_I": self.basis_I, "basis_II": self.basis_II,
            "conclusion": self.conclusion, "notes": self.notes,
        }


def _alpha(stats: DigitStats, alpha, horizon: int, level_cap: int) -> list:
    if alpha is None:
        a = [1]
        for n in range(1, horizon + 1):
            nxt = n + stats.M(a[-1])
            if nxt > level_cap:
                break
            a.append(nxt)
        return a
    if alpha == "square":
        return [n * n for n in range(1, horizon + 2)]
    if callable(alpha):
        return [int(alpha(n)) for n in range(1, horizon + 2)]
    return [int(x) for x in alpha][:horizon + 1]


def _cumsum(xs) -> list:
    out, acc = [], 0.0
    for x in xs:
        acc += x
        out.append(acc)
    return out


def criterion_report(stats: DigitStats, mc: MaskConstants, alpha=None, horizon: int = 2000,
                     gap_threshold: int = 10, sum_threshold: float = 20.0,
                     level_cap: int = 10**7) -> CriterionReport:
    """Evaluate both criteria over a finite horizon.

    Parameters
    ----------
    stats : DigitStats
    mc : MaskConstants
        ``c1`` (low end of ``c_min``) and ``c2`` (high end of ``c_max``) are used.
    alpha : None, "square", callable or sequence
        ``None`` uses ``alpha_1 = 1``, ``alpha_{n+1} = n + M(alpha_n)``.
    horizon : int
        Number of alpha steps, and of levels for criterion II.
    gap_threshold, sum_threshold
        Finite-horizon stand-ins for the two divergences in criterion I.
    level_cap : int
        Alpha values beyond this level are not generated.
    """
    c1, c2 = mc.c1, mc.c2
    notes = []
    a = [x for x in _alpha(stats, alpha, horizon, level_cap) if x <= level_cap]
    if stats.level_fn is None:
        a = [x for x in a if x <= stats.depth]
    gaps, terms1 = [], []
    for n in range(len(a) - 1):
        gaps.append(a[n + 1] - stats.M(a[n]))
        terms1.append(c1 ** stats.Nstar_window(a[n], a[n + 1]))
    ps1 = _cumsum(terms1)
    if stats.nstar_sup is not None:
        sat1, basis1 = True, "structural"
        notes.append(f"sup N* = {stats.nstar_sup} is finite; the recursive alpha has gaps n "
                     f"and every term is at least c1^{stats.nstar_sup}")
    elif len(gaps) >= 4:
        tail = gaps[len(gaps) // 2:]
        sat1 = (min(tail) >= gap_threshold and ps1[-1] >= sum_threshold and terms1[-1] > 0)
        basis1 = "numeric"
    else:
        sat1, basis1 = False, "insufficient"

    H2 = horizon if stats.level_fn is not None else max(0, stats.depth - 1)
    L = [stats.Lstar(n) for n in range(1, H2 + 1)]
    terms2 = [c2**x for x in L]
    ps2 = _cumsum(terms2)
    expo = stats.lstar_exponent(c2) if stats.lstar_exponent is not None else None
    if expo is not None and expo > 1.0:
        sat2, basis2 = True, "structural"
        notes.append(f"c2^L*_n <= n^-{expo:.4f}; tail past {H2} at most "
                     f"{H2 ** (1 - expo) / (expo - 1):.3g}")
    elif len(L) >= 8:
        upper = range(len(L) // 2, len(L))
        eff = [L[i] * math.log(1 / c2) / math.log(i + 1) for i in upper if i + 1 > 1]
        sat2 = bool(eff) and min(eff) > 1.0
        basis2 = "numeric"
    else:
        sat2, basis2 = False, "insufficient"

    if sat1 and sat2:
        concl = INCONCLUSIVE
        notes.append("both criteria passed their finite-horizon tests")
    elif sat1:
        concl = SATISFIES_I
    elif sat2:
        concl = SATISFIES_II
    elif basis1 == "insufficient" or basis2 == "insufficient":
        concl = INCONCLUSIVE
    else:
        concl = NEITHER
    return CriterionReport(mc.c_min_interval, mc.c_max_interval, a, gaps, ps1, ps2,
                           sat1, sat2, basis1, basis2, concl, notes)
