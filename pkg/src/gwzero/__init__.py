"""Exact genus-zero Gromov-Witten invariants: correlator tables, WDVV reconstruction
and the big quantum product over Q."""
from .algebra import SeriesCutoff, SeriesSpace, SignRule, TruncatedSeries, epsilon_sign
from .bundled import BUNDLED, load_bundled, resolve_target
from .correlators import (CorrelatorKey, CorrelatorTable, UnknownCorrelator, canonicalize,
                          correlator_value, read_table, reduce, reduce_fully, write_table)
from .quantum import (Potential, QuantumElement, build_potential, quantum_mul, wdvv_check,
                      wdvv_residual)
from .reconstruct import (MissingSeeds, ReconstructionError, Reconstructor, explain,
                          oracle_recursion_p2, reconstruct_all)
from .target import Cutoff, GwTarget, TargetError, TargetParseError, load_target, validate_target

__version__ = "0.1.0"

__all__ = [
    "BUNDLED", "CorrelatorKey", "CorrelatorTable", "Cutoff", "GwTarget", "MissingSeeds",
    "Potential", "QuantumElement", "ReconstructionError", "Reconstructor", "SeriesCutoff",
    "SeriesSpace", "SignRule", "TargetError", "TargetParseError", "TruncatedSeries",
    "UnknownCorrelator", "build_potential", "canonicalize", "correlator_value", "epsilon_sign",
    "explain", "load_bundled", "load_target", "oracle_recursion_p2", "quantum_mul",
    "read_table", "reconstruct_all", "reduce", "reduce_fully", "resolve_target",
    "validate_target", "wdvv_check", "wdvv_residual", "write_table",
]
