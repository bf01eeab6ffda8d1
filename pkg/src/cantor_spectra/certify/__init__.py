"""Orthogonality checks, ``Q`` sums, growth criteria and verdicts."""
from .criteria import CriterionReport, criterion_report
from .density import DensityRow, beurling_density, max_window_count
from .orthogonality import (OrthogonalSearchResult, check_bizero, check_maximality_window,
                            max_clique, max_orthogonal_search)
from .qsum import (DeficitCertificate, QEvaluator, certificate_range, deficit_certificate,
                   q_eval, qn_identity_check)
from .verdict import (Classification, ClassificationResult, Comparison, Verdict, VerdictConfig,
                      VerdictKind, classify_qb, compare_regularized, orthogonality_verdict,
                      spectrum_verdict)

__all__ = [
    "Classification", "ClassificationResult", "Comparison", "CriterionReport",
    "DeficitCertificate", "DensityRow", "OrthogonalSearchResult", "QEvaluator", "Verdict",
    "VerdictConfig", "VerdictKind", "beurling_density", "certificate_range", "check_bizero",
    "check_maximality_window", "classify_qb", "compare_regularized", "criterion_report",
    "deficit_certificate", "max_clique", "max_orthogonal_search", "max_window_count",
    "orthogonality_verdict", "q_eval", "qn_identity_check", "spectrum_verdict",
]
