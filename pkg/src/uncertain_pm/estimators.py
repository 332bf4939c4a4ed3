"""scikit-learn compatible wrappers.

The functional API lives in the other modules; these classes expose it
through ``fit``/``transform``/``predict`` with ``get_params``/``set_params``
so that the analyses can sit in pipelines, be cloned and grid-searched.
``X`` is always an uncertain log, given as an :class:`UncertainLog`, a
single trace, a list of traces, or shorthand text.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .alignment import conformance_bounds, expected_cost, optimal_alignment
from .behavior_net import build_behavior_net
from .discovery import MIN, compute_udfg, filter_udfg, im_discover, tree_to_net
from .errors import ValidationError
from .event_model import UncertainLog, UncertainTrace, validate
from .injection import InjectionConfig, inject
from .log_io import parse_shorthand
from .petri_net import PetriNet
from .realizations import DEFAULT_CAP, DEFAULT_SAMPLES


def check_log(X, validate_invariants: bool = True) -> UncertainLog:
    """Coerce ``X`` to an :class:`UncertainLog` and check its invariants."""
    if isinstance(X, UncertainLog):
        log = X
    elif isinstance(X, UncertainTrace):
        log = UncertainLog(((X, 1),))
    elif isinstance(X, str):
        log = parse_shorthand(X)
    else:
        try:
            items = list(X)
        except TypeError:
            raise TypeError("expected an uncertain log, got %s" % type(X).__name__) from None
        traces = []
        for item in items:
            if isinstance(item, UncertainTrace):
                traces.append((item, 1))
            elif isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], UncertainTrace):
                traces.append(item)
            else:
                raise TypeError("expected UncertainTrace items, got %s" % type(item).__name__)
        log = UncertainLog(traces)
    if validate_invariants:
        violations = validate(log)
        if violations:
            raise ValidationError(violations)
    return log


def check_model(model) -> PetriNet:
    if not isinstance(model, PetriNet):
        raise TypeError("model must be a PetriNet, got %s" % type(model).__name__)
    return model


class UncertainInductiveMiner(BaseEstimator):
    """Discover a process model from an uncertain log.

    Builds the UDFG, keeps edges whose ``mode`` bound reaches ``threshold``
    and runs the inductive miner on the result. After ``fit``: ``udfg_``,
    ``dfg_``, ``tree_`` and ``net_``.
    """

    def __init__(self, mode=MIN, threshold=1, cap=DEFAULT_CAP):
        self.mode = mode
        self.threshold = threshold
        self.cap = cap

    def fit(self, X, y=None):
        log = check_log(X)
        self.udfg_ = compute_udfg(log, self.cap)
        self.dfg_ = filter_udfg(self.udfg_, self.mode, self.threshold)
        self.tree_ = im_discover(self.dfg_)
        self.net_ = tree_to_net(self.tree_)
        return self

    def predict(self, X):
        """For each trace, whether its best-case realization fits the model (cost 0)."""
        check_is_fitted(self, "net_")
        log = check_log(X)
        return np.array(
            [optimal_alignment(build_behavior_net(t), self.net_).cost == 0 for t, _ in log.traces],
            dtype=bool,
        )


class ConformanceBoundsTransformer(TransformerMixin, BaseEstimator):
    """Map each trace to ``[lower, upper]`` optimal alignment cost against ``model``.

    With ``expected=True`` a third column holds the probability-weighted cost
    (weakly uncertain traces, or strong ones with ``allow_defaults``).
    Witness alignments of the last call are kept in ``bounds_``.
    """

    def __init__(self, model=None, cap=DEFAULT_CAP, expected=False, samples=DEFAULT_SAMPLES, seed=0, allow_defaults=False):
        self.model = model
        self.cap = cap
        self.expected = expected
        self.samples = samples
        self.seed = seed
        self.allow_defaults = allow_defaults

    def fit(self, X=None, y=None):
        self.model_ = check_model(self.model)
        return self

    def transform(self, X):
        check_is_fitted(self, "model_")
        log = check_log(X)
        rows = []
        self.bounds_ = []
        for trace, _ in log.traces:
            b = conformance_bounds(trace, self.model_, self.cap)
            self.bounds_.append(b)
            row = [b.lower, b.upper]
            if self.expected:
                row.append(expected_cost(trace, self.model_, self.samples, self.seed, self.cap, self.allow_defaults))
            rows.append(row)
        return np.array(rows, dtype=float).reshape(len(rows), 3 if self.expected else 2)


class UncertaintyInjector(TransformerMixin, BaseEstimator):
    """Turn a certain log into an uncertain one; parameters mirror :class:`InjectionConfig`."""

    def __init__(self, time_granularity=None, label_confusion=None, p_label=0.0, p_indeterminate=0.0, weak=False, seed=0):
        self.time_granularity = time_granularity
        self.label_confusion = label_confusion
        self.p_label = p_label
        self.p_indeterminate = p_indeterminate
        self.weak = weak
        self.seed = seed

    def fit(self, X=None, y=None):
        self.config_ = InjectionConfig(
            time_granularity=self.time_granularity,
            label_confusion=dict(self.label_confusion or {}),
            p_label=self.p_label,
            p_indeterminate=self.p_indeterminate,
            weak=self.weak,
            seed=self.seed,
        )
        return self

    def transform(self, X) -> UncertainLog:
        check_is_fitted(self, "config_")
        return inject(check_log(X), self.config_)
