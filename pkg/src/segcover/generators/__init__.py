"""Instance generators for the hardness constructions, with solution builders and decoders."""

from .choice import Chain, build_choice_cover, gen_choice, total_length
from .meta import Builder, GadgetMeta
from .psi import PsiInput, build_psi_solution, gen_psi, pad_host
from .sat import CnfFormula, build_sat_solution, decode_sat_assignment, gen_sat, overpaid_variables

__all__ = [
    "Builder",
    "Chain",
    "CnfFormula",
    "GadgetMeta",
    "PsiInput",
    "build_choice_cover",
    "build_psi_solution",
    "build_sat_solution",
    "decode_sat_assignment",
    "gen_choice",
    "gen_psi",
    "gen_sat",
    "overpaid_variables",
    "pad_host",
    "total_length",
]
