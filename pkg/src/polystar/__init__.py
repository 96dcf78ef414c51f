"""Shuffle algebras, rational series with Kleene stars, and polylogarithms over them."""

from polystar.kernels import BACKEND
from polystar.lifun import CFunction, DivergentConstantError
from polystar.ncpoly import NCPoly, TermBudgetExceeded, parse_poly, term_budget
from polystar.ratl import LinRep, compile_expr
from polystar.starpoly import StarPoly, parse_starpoly, rewrite_mod_J
from polystar.words import Alphabet, Word, parse_word

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Alphabet",
    "CFunction",
    "DivergentConstantError",
    "LinRep",
    "NCPoly",
    "StarPoly",
    "TermBudgetExceeded",
    "Word",
    "compile_expr",
    "parse_poly",
    "parse_starpoly",
    "parse_word",
    "rewrite_mod_J",
    "term_budget",
]
