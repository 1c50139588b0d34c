"""Polynomial and Dirichlet functors on finite sets, bundles, and law checks."""

from . import bundle, dirichlet, expr, finset, laws, poly, topos
from .bundle import Bundle, BunMorphism, ContMorphism
from .dirichlet import Dir, DirMorphism
from .errors import (BudgetExceeded, DomainMismatch, EmptyDiagram, ExprSyntaxError,
                     IllFormedDiagram, IndexOutOfRange, MixedKindError, NonCanonicalBundle,
                     NotCartesian, NotMono, PolyDirError)
from .expr import parse, parse_dir, parse_poly
from .finset import FinFunction, FinSet, budget
from .laws import Grid, Report
from .poly import Poly, PolyMorphism

__version__ = "0.1.0"
