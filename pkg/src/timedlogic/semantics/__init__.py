from .evaluate import (
    NotAnchoredError,
    eval_mtl,
    eval_tptl,
    eval_ttl,
    lang_member_mtl,
    lang_member_tptl,
    lang_member_ttl,
)
from .reductions import reduce_instantaneous, reduce_unitary
