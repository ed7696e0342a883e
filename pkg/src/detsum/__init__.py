"""detsum: exact verification of determinant-of-sumset identities over
small finite fields F_q (q = p^n, p odd), by exhaustive enumeration of
2x2 matrices and exact cyclotomic-integer character sums."""

from .cyclotomic import CycInt
from .experiments import EXPERIMENTS, run
from .field import FieldCtx, field_for_q, make_field
from .matrices import Mat2, MatSet, det_set, iterate_sumset, sumset, variety
from .report import Report, emit

__all__ = [
    "CycInt",
    "EXPERIMENTS",
    "FieldCtx",
    "Mat2",
    "MatSet",
    "Report",
    "det_set",
    "emit",
    "field_for_q",
    "iterate_sumset",
    "make_field",
    "run",
    "sumset",
    "variety",
]

__version__ = "0.1.0"
