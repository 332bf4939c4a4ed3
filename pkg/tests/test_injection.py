import pytest

from uncertain_pm import InjectionConfig, Interval, UncertainLog, inject, validate
from uncertain_pm.injection import ambiguate_labels, coarsen_timestamps, inject_indeterminacy
from uncertain_pm.log_io import parse_shorthand

CERTAIN = "<a,b,c,d>^3; <a,c,b,d>^2; <a,e,d>"


def certain_log():
    return parse_shorthand(CERTAIN)


def test_coarsening_buckets():
    out = coarsen_timestamps(certain_log(), 2.0)
    ts = [e.timestamp for e in out.traces[0][0].events]
    assert ts == [Interval(0, 2), Interval(2, 4), Interval(2, 4), Interval(4, 6)]
    with pytest.raises(ValueError):
        coarsen_timestamps(out, 2.0)
    with pytest.raises(ValueError):
        coarsen_timestamps(certain_log(), 0)


def test_label_ambiguity_strong_and_weak():
    strong = ambiguate_labels(certain_log(), {"b": {"c"}}, 1.0)
    for trace, _ in strong.traces:
        for e in trace.events:
            if e.activity.candidates[0] == "b":
                assert e.activity.candidates == ("b", "c") and e.activity.probabilities is None
    weak = ambiguate_labels(certain_log(), {"b": {"c", "x"}}, 1.0, weak=True)
    e = weak.traces[0][0].events[1]
    assert e.activity.candidates == ("b", "c", "x")
    assert e.activity.probabilities == (0.9, 0.05, 0.05)
    assert not validate(weak)


def test_indeterminacy_rates_and_ranges():
    big = parse_shorthand("; ".join("<a,b,c,d,e>" for _ in range(400)))
    out = inject_indeterminacy(big, 0.3, weak=True, seed=1)
    flags = [e for t, _ in out.traces for e in t.events if e.is_indeterminate]
    assert 0.26 < len(flags) / 2000 < 0.34
    assert all(0 < e.indeterminacy.absence_probability <= 0.5 for e in flags)
    assert inject_indeterminacy(big, 0.0) == big


def test_injection_is_deterministic_and_order_independent():
    cfg = InjectionConfig(time_granularity=2, label_confusion={"b": {"c"}}, p_label=0.5, p_indeterminate=0.3, weak=True, seed=3)
    a = inject(certain_log(), cfg)
    assert a == inject(certain_log(), cfg)
    reversed_log = UncertainLog(list(reversed(certain_log().traces)))
    assert inject(reversed_log, cfg).traces == tuple(reversed(a.traces))
    assert a != inject(certain_log(), InjectionConfig(**{**cfg.to_dict(), "seed": 4}))


def test_config_json_roundtrip_and_validation():
    cfg = InjectionConfig(time_granularity=1.5, label_confusion={"a": ["b"]}, p_label=0.2, seed=9)
    assert InjectionConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        InjectionConfig.from_dict({"p_label": 2})
    with pytest.raises(ValueError):
        InjectionConfig.from_dict({"bogus": 1})
