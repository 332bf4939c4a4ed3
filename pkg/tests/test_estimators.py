import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from uncertain_pm import (
    ConformanceBoundsTransformer,
    UncertainInductiveMiner,
    UncertaintyInjector,
    ValidationError,
    check_log,
    make_event,
    UncertainTrace,
)
from uncertain_pm.datasets import DISCOVERY_LOG_TEXT, healthcare_model, running_example_log, running_example_trace, weak_trace


def test_check_log_accepts_several_shapes():
    t = running_example_trace()
    assert len(check_log(t)) == 1
    assert len(check_log([t, (weak_trace(), 3)])) == 2
    assert len(check_log(DISCOVERY_LOG_TEXT)) == 3
    with pytest.raises(TypeError):
        check_log(5)
    with pytest.raises(TypeError):
        check_log([1, 2])
    bad = UncertainTrace("b", [make_event("e1", "a", 1), make_event("e1", "b", 2)])
    with pytest.raises(ValidationError):
        check_log(bad)


def test_miner_params_and_fit():
    m = UncertainInductiveMiner(mode="max", threshold=15)
    assert m.get_params() == {"mode": "max", "threshold": 15, "cap": 10_000}
    c = clone(m).set_params(threshold=1)
    assert c.threshold == 1 and m.threshold == 15
    with pytest.raises(NotFittedError):
        m.predict(DISCOVERY_LOG_TEXT)
    m.fit(DISCOVERY_LOG_TEXT)
    assert str(m.tree_) == "->(a, X(b, c), +(e, f), g, X(h, i))"
    # the third trace ends in j or nothing, never in h or i
    assert m.predict(DISCOVERY_LOG_TEXT).tolist() == [True, True, False]
    assert m.predict("<a,d,e,f,g,h>").tolist() == [False]


def test_bounds_transformer():
    tr = ConformanceBoundsTransformer(model=healthcare_model())
    X = tr.fit_transform(running_example_log())
    assert X.shape == (1, 2) and X.tolist() == [[0.0, 3.0]]
    assert tr.bounds_[0].as_row() == "ID192 lower=0 upper=3"
    tr3 = ConformanceBoundsTransformer(model=healthcare_model(), expected=True, samples=5000)
    lo, hi, e = tr3.fit_transform(weak_trace())[0]
    assert lo <= e <= hi
    with pytest.raises(TypeError):
        ConformanceBoundsTransformer(model="nope").fit()


def test_injector_in_pipeline():
    pipe = Pipeline([
        ("inject", UncertaintyInjector(label_confusion={"b": ["c"]}, p_label=1.0, seed=1)),
        ("bounds", ConformanceBoundsTransformer(model=healthcare_model())),
    ])
    assert "inject__p_label" in pipe.get_params()
    out = UncertaintyInjector(time_granularity=2.0).fit_transform("<a,b,c>")
    assert out.traces[0][0].events[0].timestamp.hi == 2.0
