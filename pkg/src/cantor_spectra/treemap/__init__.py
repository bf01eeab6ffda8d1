"""Labelings of the q-adic tree and the frequency sets they generate."""
from .constructions import (canonical_spec, nonspectrum_spec, slow_growth_spec, sparse_depths,
                            sparse_spec)
from .enumeration import (DigitStats, Irregular, SpectrumCandidate, enumerate_spec, prefix_value,
                          project, spec_stats, stats, subtree_enumerate)
from .reconstruct import PartialMapping, mapping_from_set
from .spec import (GENERATORS, AllZero, Custom, IrregularPath, LogBlock, SparsePowers,
                   TreeMappingSpec, ValidationReport, Violation, regularize, spec_from_json,
                   spec_to_json, stem_of, validate, with_irregular)

enumerate = enumerate_spec  # noqa: A001  (name used by the public interface)

__all__ = [
    "AllZero", "Custom", "DigitStats", "GENERATORS", "Irregular", "IrregularPath", "LogBlock",
    "PartialMapping", "SparsePowers", "SpectrumCandidate", "TreeMappingSpec", "ValidationReport",
    "Violation", "canonical_spec", "enumerate", "enumerate_spec", "mapping_from_set",
    "nonspectrum_spec", "prefix_value", "project", "regularize", "slow_growth_spec", "sparse_depths",
    "sparse_spec", "spec_from_json", "spec_stats", "spec_to_json", "stats", "stem_of",
    "subtree_enumerate", "validate", "with_irregular",
]
