"""Process discovery from uncertain logs via UDFGs and inductive mining."""
from .inductive import im_discover
from .process_tree import (
    AND,
    LOOP,
    SEQ,
    XOR,
    Leaf,
    Operator,
    ProcessTree,
    Silent,
    leaves,
    loop,
    par,
    parse_tree,
    seq,
    tree_to_net,
    xor,
)
from .udfg import (
    DFG,
    END,
    MAX,
    MIN,
    START,
    UDFG,
    certain_dfg,
    compute_udfg,
    dfg_from_sequences,
    filter_udfg,
    trace_df_bounds,
)


def discover(log, mode=MIN, threshold=1, cap=None):
    """UDFG -> filtered DFG -> process tree, in one call."""
    from ..realizations import DEFAULT_CAP

    g = compute_udfg(log, cap or DEFAULT_CAP)
    return im_discover(filter_udfg(g, mode, threshold))
