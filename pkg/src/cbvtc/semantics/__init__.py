from .compare import GridSpec, Verdict, compare, library_function, samples
from .interpret import (
    CSTuple,
    Interpretation,
    interpret_term,
    make_zero_cost,
    readback_cstuple,
    sem_apply,
    symbolic_valuation,
)
from .monoexpr import U, eval_expr, readback
from .shapes import SemType, type_interpretation

__all__ = [
    "CSTuple", "GridSpec", "Interpretation", "SemType", "U", "Verdict", "compare",
    "eval_expr", "interpret_term", "library_function", "make_zero_cost", "readback",
    "readback_cstuple", "samples", "sem_apply", "symbolic_valuation", "type_interpretation",
]
