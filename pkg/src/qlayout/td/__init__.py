"""1-queue recognition by pruning equivalent components of a treedepth decomposition."""

from .components import (
    AnchoredComponent,
    ComponentSignature,
    canonical_order,
    decompose_at,
    equivalence_classes,
    renaming,
    signature,
)
from .extension import (
    AlignedFamily,
    PairKind,
    blocks_of,
    classify_pair,
    delimiting_sequence,
    extend_layout,
    find_delimiting_pair,
    lift_component,
    order_classes,
)
from .kernel import (
    OneQueueDecision,
    Pruning,
    RemovalRecord,
    TDKernel,
    decide_1queue_td,
    kernelize_1queue,
    one_queue_order,
    prune_once,
)
from .thresholds import TOWER, Thresholds, thresholds_eval
