from .families import (
    CASE_IDS,
    GameSettings,
    GenerationError,
    SeparationCase,
    gen_case,
    gen_instantaneous,
    gen_thm2,
    gen_thm3,
    gen_thm3_game,
    gen_thm5,
    gen_ttl_i,
    gen_ttl_ii,
    gen_unitary,
    thm5_audit,
    ttl_i_band,
)
from .runner import EDGES, Check, SeparationReport, edge_summary, run_all, run_case, run_separation
