from .analysis import classify_formula, modal_count, modal_depth, truncate_constants
from .guards import Comparison, Guard, TT, eval_guard, normalize_guard
from .intervals import Interval, parse_interval
from .syntax import MTL, TPTL, TTL, FormulaSyntaxError, parse_formula, print_formula
