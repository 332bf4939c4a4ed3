"""Process mining over uncertain event data.

Events may carry a set of possible labels, an imprecise timestamp and a
flag saying they may not have happened at all. The package models such
logs, builds behavior nets for uncertain traces, bounds the conformance
cost of a trace against a reference Petri net, and discovers process
models through the uncertain directly-follows graph.
"""
__version__ = "0.1.0"

from .alignment import Alignment, ConformanceBounds, align_sequence, conformance_bounds, expected_cost, optimal_alignment
from .behavior_net import build_behavior_net, precedence_dag, transitive_reduction
from .discovery import UDFG, compute_udfg, discover, filter_udfg, im_discover, parse_tree, tree_to_net
from .errors import (
    AlignmentError,
    CapExceededError,
    NotEnabledError,
    SchemaError,
    ShorthandSyntaxError,
    StrongUncertaintyError,
    UncertainPMError,
    ValidationError,
)
from .event_model import (
    ActivitySpec,
    Gaussian,
    Indeterminacy,
    Interval,
    Point,
    UncertainEvent,
    UncertainLog,
    UncertainTrace,
    make_event,
    strictly_precedes,
    support,
    validate,
)
from .injection import InjectionConfig, inject
from .petri_net import Marking, PetriNet, bounded_language
from .realizations import (
    Realization,
    activity_sequences,
    enumerate_realizations,
    ordering_probability,
    realization_distribution,
    realization_probability,
)

_ESTIMATORS = ("ConformanceBoundsTransformer", "UncertainInductiveMiner", "UncertaintyInjector", "check_log")


def __getattr__(name):
    # scikit-learn is slow to import; only load it when the wrappers are used
    if name in _ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError("module %r has no attribute %r" % (__name__, name))
