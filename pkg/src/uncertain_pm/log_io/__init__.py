"""Reading and writing uncertain logs, reference models and DOT renderings."""
import os

from .dot import export_dot_dfg, export_dot_net, export_dot_udfg
from .json_io import from_json, log_from_dict, log_to_dict, to_json
from .net_json import dump_net, load_net, net_from_dict, net_to_dict
from .shorthand import parse_shorthand, render_shorthand, render_trace
from .xes import export_xes, import_xes

FORMATS = ("shorthand", "json", "xes")


def guess_format(path: str) -> str:
    ext = os.path.splitext(path)[1].lower()
    if ext == ".json":
        return "json"
    if ext == ".xes":
        return "xes"
    return "shorthand"


def parse_log(text: str, fmt: str):
    if fmt == "json":
        return from_json(text)
    if fmt == "xes":
        return import_xes(text)
    if fmt == "shorthand":
        return parse_shorthand(text)
    raise ValueError("unknown log format %r" % fmt)


def read_log(path: str, fmt: str = None):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_log(text, fmt or guess_format(path))
