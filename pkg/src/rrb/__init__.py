"""Relative Rota-Baxter operators of weight 0 on groups and the structures built from them."""

from .groups import AbSignature, IntVec, Perm, SemidirectElem
from .perm_rb import RecursiveRBOp, SigmaTuple, enumerate_pairs, enumerate_single
from .rbops import RelRBOp, verify_rrb
from .report import Report

__all__ = [
    "AbSignature",
    "IntVec",
    "Perm",
    "RecursiveRBOp",
    "RelRBOp",
    "Report",
    "SemidirectElem",
    "SigmaTuple",
    "enumerate_pairs",
    "enumerate_single",
    "verify_rrb",
]
