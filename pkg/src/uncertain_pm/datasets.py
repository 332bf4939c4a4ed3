"""Small built-in logs and models: the healthcare running example and the
three-trace discovery log."""
from .event_model import Gaussian, UncertainLog, UncertainTrace, make_event
from .petri_net import PetriNet

DISCOVERY_LOG_TEXT = "<a,b,e,f,g,h>^80; <a,{b,c},[e,f],g,i>^15; <a,{b,c,d},[e,f],g,j?>^5"


def running_example_trace() -> UncertainTrace:
    """Strongly uncertain healthcare trace, extended with a certain admission at day 12."""
    return UncertainTrace(
        "ID192",
        (
            make_event("e1", "NightSweats", 5, indeterminate=True),
            make_event("e2", ("PrTP", "SecTP"), 8),
            make_event("e3", "Splenomeg", (4, 10)),
            make_event("e4", "Adm", 12),
        ),
    )


def weak_trace() -> UncertainTrace:
    """Weakly uncertain variant: 25% absence, 90/10 labels, N(7, 1) timestamp."""
    return UncertainTrace(
        "ID348",
        (
            make_event("e4", "NightSweats", 5, absence_probability=0.25),
            make_event("e5", {"PrTP": 0.9, "SecTP": 0.1}, 8),
            make_event("e6", "Splenomeg", Gaussian(7.0, 1.0)),
        ),
    )


def running_example_log() -> UncertainLog:
    return UncertainLog(((running_example_trace(), 1),))


def discovery_log() -> UncertainLog:
    from .log_io.shorthand import parse_shorthand

    return parse_shorthand(DISCOVERY_LOG_TEXT)


def healthcare_model() -> PetriNet:
    """Normative model: night sweats and splenomegaly concurrently, then PrTP, then Adm."""
    transitions = {
        "t1": None,
        "t2": "NightSweats",
        "t3": "Splenomeg",
        "t4": None,
        "t5": "PrTP",
        "t6": "Adm",
    }
    arcs = [
        ("p1", "t1"), ("t1", "p11"), ("t1", "p12"),
        ("p11", "t2"), ("t2", "p21"),
        ("p12", "t3"), ("t3", "p22"),
        ("p21", "t4"), ("p22", "t4"), ("t4", "p2"),
        ("p2", "t5"), ("t5", "p3"),
        ("p3", "t6"), ("t6", "p6"),
    ]
    places = ["p1", "p11", "p12", "p21", "p22", "p2", "p3", "p6"]
    return PetriNet(places, transitions, arcs, {"p1": 1}, {"p6": 1}, name="healthcare model")
