"""CLI invocations with frozen golden outputs (tests/golden/<name>.out)."""
import os
import subprocess
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIX = os.path.join(ROOT, "fixtures")
GOLDEN = os.path.join(ROOT, "tests", "golden")


def fx(name):
    return os.path.join(FIX, name)


# name -> (argv, output file written by the command or None for stdout)
CASES = {
    "parse_json": (["parse", fx("running_example.json")], None),
    "parse_shorthand": (["parse", fx("discovery_log.txt"), "--out", "shorthand"], None),
    "parse_xes": (["parse", fx("running_example.xes"), "--format", "xes"], None),
    "stats": (["stats", fx("discovery_log.txt")], None),
    "bnet": (["bnet", fx("running_example.json"), "--trace", "ID192", "--dot", "{out}"], "bnet.dot"),
    "realize": (["realize", fx("running_example.json"), "--trace", "ID192"], None),
    "realize_probs": (
        ["realize", fx("weak_example.json"), "--trace", "ID348", "--probs", "--samples", "20000", "--seed", "3"],
        None,
    ),
    "align": (["align", fx("running_example.json"), "--model", fx("healthcare_model.json")], None),
    "udfg": (["udfg", fx("discovery_log.txt"), "--dot", "{out}"], "udfg.dot"),
    "discover_min15": (["discover", fx("discovery_log.txt"), "--mode", "min", "--threshold", "15", "--tree"], None),
    "discover_max15": (["discover", fx("discovery_log.txt"), "--mode", "max", "--threshold", "15", "--tree"], None),
    "discover_max1_dot": (
        ["discover", fx("discovery_log.txt"), "--mode", "max", "--threshold", "1", "--dot", "{out}"],
        "net.dot",
    ),
    "inject": (["inject", fx("certain_log.txt"), "--config", fx("inject_config.json"), "--out", "{out}"], "inj.json"),
}


def run_case(name, workdir):
    """Run one case in a subprocess; return (exit code, output bytes, stderr text)."""
    argv, out_name = CASES[name]
    out_path = os.path.join(workdir, out_name) if out_name else None
    argv = [a.replace("{out}", out_path) if out_path else a for a in argv]
    proc = subprocess.run([sys.executable, "-m", "uncertain_pm", *argv], capture_output=True, cwd=workdir)
    data = proc.stdout
    if out_path:
        with open(out_path, "rb") as fh:
            data = fh.read()
    return proc.returncode, data, proc.stderr.decode("utf-8", "replace")


def golden_path(name):
    return os.path.join(GOLDEN, name + ".out")


if __name__ == "__main__":
    # regenerate goldens: python tests/_cli_cases.py
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        for case in CASES:
            code, data, err = run_case(case, tmp)
            assert code == 0, (case, err)
            with open(golden_path(case), "wb") as fh:
                fh.write(data)
            print("wrote", golden_path(case))
