"""Nonincident points and lines in finite projective planes."""

from .arcs import MaximalArc, denniston_arc, nonincident_from_arc, verify_maximal_arc
from .bounds import (
    BlockProfile,
    block_profile,
    crossing_point,
    external_line_bound,
    mullin_vanstone_bound,
    stinson_bound,
)
from .certificate import NonincidenceCertificate, verify_certificate
from .gf import FieldTable, field_build, quadratic_irreducible, trace
from .plane import Plane, build_pg2, external_lines, incident, validate_imported
from .search import SearchConfig, SearchResult, exact_f, greedy_heuristic, oracle_bruteforce

__version__ = "0.1.0"
