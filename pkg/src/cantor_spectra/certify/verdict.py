"""Verdict synthesis, classification by ``(q, b)`` and regularization comparison."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

from ..errors import ValidationFailure
from ..fourier import MaskConstants, TruncationPolicy, compute_mask_constants, hadamard_check
from ..numtheory import MeasureParams
from ..treemap import (TreeMappingSpec, enumerate_spec, regularize, spec_stats, validate)
from .criteria import SATISFIES_I, SATISFIES_II, CriterionReport, criterion_report
from .orthogonality import check_bizero, check_maximality_window
from .qsum import QEvaluator, certificate_range, deficit_certificate


class VerdictKind(str, enum.Enum):
    ORTHOGONAL_ONLY = "OrthogonalOnly"
    MAXIMAL_ORTHOGONAL = "MaximalOrthogonal"
    SPECTRUM_NUMERIC = "SpectrumNumeric"
    NOT_SPECTRUM_NUMERIC = "NotSpectrumNumeric"
    UNKNOWN = "Unknown"


def default_xi_grid() -> tuple:
    return tuple(j / 64 for j in range(1, 33)) + (1e-2, 1e-3)


@dataclass(frozen=True)
class VerdictConfig:
    """Knobs for :func:`spectrum_verdict`.

    ``delta`` is the margin required below 1 for a deficiency certificate;
    ``tol`` bounds ``|Q - 1| - budget`` on the grid for a numeric spectrum.
    """

    terms: int = 4096
    depth: int = 40
    xi_grid: tuple = field(default_factory=default_xi_grid)
    tol: float = 1e-3
    delta: float = 0.0
    bizero_prefix: int = 512
    validate_depth: int = 5
    resolution: float = 1e-4
    alpha: object = None
    horizon: int = 2000
    threads: int | None = None

    @property
    def policy(self) -> TruncationPolicy:
        return TruncationPolicy(depth=self.depth)


@dataclass
class Verdict:
    """Outcome of a certification run.

    A ``SpectrumNumeric`` verdict is numerical evidence on a finite grid
    and never a proof.  A ``NotSpectrumNumeric`` verdict carries ``xi0`` and
    a certified upper bound for the full ``Q(xi0)``.
    """

    kind: VerdictKind
    params: MeasureParams
    terms: int
    policy: TruncationPolicy
    grid: list = field(default_factory=list)       # (xi, Q, budget)
    xi0: float | None = None
    upper_bound: float | None = None
    certificate: dict | None = None
    criteria: CriterionReport | None = None
    notes: list = field(default_factory=list)

    @property
    def max_deviation(self) -> float:
        """``max |Q - 1| - budget`` over the grid."""
        return max((abs(Q - 1) - e for _, Q, e in self.grid), default=math.nan)

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "evidence_strength": ("numerical" if self.kind is VerdictKind.SPECTRUM_NUMERIC
                                  else "certified bound"
                                  if self.kind is VerdictKind.NOT_SPECTRUM_NUMERIC else "none"),
            "q": self.params.q, "b": self.params.b,
            "terms": self.terms,
            "truncation": {"depth": self.policy.depth, "tail_tol": self.policy.tail_tol},
            "grid": [{"xi": x, "Q": Q, "error_budget": e} for x, Q, e in self.grid],
            "max_deviation": self.max_deviation,
            "xi0": self.xi0, "upper_bound": self.upper_bound,
            "certificate": self.certificate,
            "criteria": self.criteria.to_json() if self.criteria else None,
            "notes": self.notes,
        }


@lru_cache(maxsize=32)
def _constants(q: int, b: int, resolution: float) -> MaskConstants:
    return compute_mask_constants(MeasureParams(q, b), resolution)


def spectrum_verdict(spec: TreeMappingSpec, config: VerdictConfig = VerdictConfig()) -> Verdict:
    """Run validation, exact orthogonality, criteria and the ``Q`` grid.

    Raises
    ------
    ValidationFailure
        If the spec violates a labeling clause or the bi-zero check fails.
    """
    p = spec.params
    rep = validate(spec, config.validate_depth)
    if not rep.ok:
        raise ValidationFailure(f"{len(rep.violations)} labeling violations",
                                violations=rep.violations)
    c = enumerate_spec(spec, config.terms)
    ok, pair = check_bizero(c.prefix(min(config.bizero_prefix, len(c))))
    if not ok:
        raise ValidationFailure(f"scaled difference of {pair} is not a zero", pair=pair)
    mc = _constants(p.q, p.b, config.resolution)
    st = spec_stats(spec)
    crit = criterion_report(st, mc, config.alpha, config.horizon)
    xi_max = max(abs(x) for x in config.xi_grid)
    ev = QEvaluator(c, config.terms, config.policy, xi_max=max(1.0, xi_max))
    xis = list(config.xi_grid)
    grid = [(x, Q, e) for x, (Q, e) in zip(xis, ev.grid(xis, config.threads))]
    v = Verdict(VerdictKind.UNKNOWN, p, config.terms, config.policy, grid, criteria=crit)

    if crit.conclusion == SATISFIES_II:
        best = None
        for x in xis:
            if abs(x) > certificate_range(p):
                continue
            cert = deficit_certificate(ev, st, mc, x)
            if cert is not None and (best is None or cert.upper_bound < best.upper_bound):
                best = cert
        if best is not None and best.upper_bound < 1.0 - config.delta:
            v.kind = VerdictKind.NOT_SPECTRUM_NUMERIC
            v.xi0, v.upper_bound, v.certificate = best.xi, best.upper_bound, best.to_json()
        else:
            v.notes.append("criterion II holds but no grid point certified a deficit")
    elif crit.conclusion == SATISFIES_I:
        if v.max_deviation <= config.tol:
            v.kind = VerdictKind.SPECTRUM_NUMERIC
        else:
            v.notes.append(f"criterion I holds but max |Q-1| - budget = {v.max_deviation:.3g} "
                           f"exceeds {config.tol} with {config.terms} terms")
    else:
        v.notes.append(f"criteria conclusion {crit.conclusion}")
    return v


def orthogonality_verdict(c, window: int = 200, prefix: int = 64) -> tuple[VerdictKind, list]:
    """``MaximalOrthogonal`` when no window frequency extends the prefix, else ``OrthogonalOnly``.

    Raises ValidationFailure if the candidate is not orthogonal.
    """
    ok, pair = check_bizero(c)
    if not ok:
        raise ValidationFailure(f"scaled difference of {pair} is not a zero", pair=pair)
    surv = check_maximality_window(c, window, min(prefix, len(c)))
    return (VerdictKind.ORTHOGONAL_ONLY if surv else VerdictKind.MAXIMAL_ORTHOGONAL), surv


@dataclass
class Comparison:
    original: Verdict
    regularized: Verdict

    @property
    def agree(self) -> bool:
        return self.original.kind == self.regularized.kind

    def to_json(self) -> dict:
        return {"agree": self.agree, "original": self.original.to_json(),
                "regularized": self.regularized.to_json()}


def compare_regularized(spec: TreeMappingSpec, config: VerdictConfig = VerdictConfig()) -> Comparison:
    """Verdicts for ``spec`` and for the spec with all irregular paths zeroed."""
    a = spectrum_verdict(spec, config)
    paths = [ip.stem for ip in spec.irregular_paths]
    reg = regularize(spec, paths)
    bv = a if reg is spec else spectrum_verdict(reg, config)
    return Comparison(a, bv)


# ---------------------------------------------------------------------------
# classification


class Classification(str, enum.Enum):
    AT_MOST_FINITELY_MANY = "AtMostFinitelyManyExponentials"
    INFINITELY_MANY_ORTHOGONAL = "InfinitelyManyOrthogonal"
    SPECTRAL_BY_CONSTRUCTION = "SpectralByConstruction"
    UNKNOWN_SPECTRALITY = "UnknownSpectrality"


@dataclass
class ClassificationResult:
    q: int
    b: int
    kind: Classification
    unknown_spectrality: bool = False
    hadamard: bool | None = None

    @property
    def label(self) -> str:
        """The most specific label (``UnknownSpectrality`` when flagged)."""
        return (Classification.UNKNOWN_SPECTRALITY.value if self.unknown_spectrality
                else self.kind.value)

    def to_json(self) -> dict:
        return {"q": self.q, "b": self.b, "classification": self.kind.value,
                "unknown_spectrality": self.unknown_spectrality, "label": self.label,
                "hadamard_check": self.hadamard}


def classify_qb(q: int, b: int) -> ClassificationResult:
    """Classify ``mu_{q,b}`` by ``gcd(q, b)``.

    Examples
    --------
    >>> classify_qb(3, 5).label
    'AtMostFinitelyManyExponentials'
    >>> classify_qb(4, 6).label
    'UnknownSpectrality'
    """
    MeasureParams(q, b)
    g = gcd(q, b)
    if g == 1:
        return ClassificationResult(q, b, Classification.AT_MOST_FINITELY_MANY)
    if g == q:
        return ClassificationResult(q, b, Classification.SPECTRAL_BY_CONSTRUCTION,
                                    hadamard=hadamard_check(q, b // q))
    return ClassificationResult(q, b, Classification.INFINITELY_MANY_ORTHOGONAL,
                                unknown_spectrality=True)
