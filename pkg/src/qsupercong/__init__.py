"""Exact verification of q-congruences for truncated basic hypergeometric
series, their q = 1 corollaries, and the series = product identities behind
them."""

from .bigpoly import Polynomial
from .cyclotomic import CycloProduct, CyclotomicNumber, cyclotomic_poly, jacobi_symbol, q_integer
from .engine import (
    scan,
    verify_eq1,
    verify_eq2,
    verify_eq3_specialized,
    verify_s5_closed_form,
    verify_thm1,
    verify_thm2,
    verify_thm4,
)
from .qseries import S1, S2, S3, S4, convolution, term, truncated_sum
from .ratfunc import RationalFunction, Verdict, rf_congruent
from .report import CongruenceReport, Outcome

__version__ = "0.1.0"

__all__ = [
    "Polynomial", "CycloProduct", "CyclotomicNumber", "cyclotomic_poly", "jacobi_symbol", "q_integer",
    "scan", "verify_eq1", "verify_eq2", "verify_eq3_specialized", "verify_s5_closed_form",
    "verify_thm1", "verify_thm2", "verify_thm4",
    "S1", "S2", "S3", "S4", "convolution", "term", "truncated_sum",
    "RationalFunction", "Verdict", "rf_congruent", "CongruenceReport", "Outcome",
]
