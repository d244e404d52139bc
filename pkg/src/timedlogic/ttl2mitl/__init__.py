from .parsing import Ancestry, ParseInfo, compute_pos_val, reach_set
from .translate import DEFAULT, LITERAL, Translator, alpha, beta, cf, compile_ttl, translate_guard
