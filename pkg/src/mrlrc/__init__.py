"""Maximally recoverable local reconstruction codes over small extension fields."""

from .code import ErasurePattern, MrLrcCode, is_maximal_correctable, make_code
from .construction import CodeParams, ParityCheck, assemble_H, construct, derive_params
from .gf import ExtField, FieldElement, PrimeField
from .linalg import Matrix, rank
from .verify import structured_rank_reduction, verify_mr_exhaustive, verify_mr_sampled

__all__ = [
    "CodeParams", "ErasurePattern", "ExtField", "FieldElement", "Matrix", "MrLrcCode",
    "ParityCheck", "PrimeField", "assemble_H", "construct", "derive_params",
    "is_maximal_correctable", "make_code", "rank", "structured_rank_reduction",
    "verify_mr_exhaustive", "verify_mr_sampled",
]
