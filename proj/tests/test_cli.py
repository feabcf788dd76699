#!/usr/bin/env python3
"""End-to-end checks of the command-line surface: formats, exit codes,
determinism. Usage: test_cli.py /path/to/evocut"""

import json
import math
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = Path(sys.argv[1]).resolve()
FAILURES = []


def run(*args, **kwargs):
    return subprocess.run([str(CLI), *args], capture_output=True, text=True, **kwargs)


def check(name, condition, detail=""):
    tag = "pass" if condition else "FAIL"
    print(f"[{tag}] {name}" + (f" ({detail})" if detail else ""))
    if not condition:
        FAILURES.append(name)


def main():
    tmp = Path(tempfile.mkdtemp(prefix="evocut_cli_"))
    g = tmp / "g.el"
    c4 = tmp / "c4.el"

    # gen writes the canonical edge list
    r = run("gen", "dumbbell", "--k", "5", "-o", str(g), "--json")
    check("gen exits 0", r.returncode == 0, r.stderr)
    payload = json.loads(r.stdout)
    check("gen payload schema", payload["schema"] == 1 and payload["n"] == 10)
    lines = g.read_text().splitlines()
    check("gen edge count", len(lines) == 21)  # 2 * C(5,2) + bridge
    check("gen canonical first line", lines[0] == "0 1")

    run("gen", "cycle", "--n", "4", "-o", str(c4))

    # profile: Thm 1.2 parameters on the dumbbell
    r = run("profile", "--graph", str(g), "--phi", "0.1", "--eps", "0.5", "--json")
    check("profile exits 0", r.returncode == 0, r.stderr)
    payload = json.loads(r.stdout)
    check("profile found", payload["found"])
    check("profile phi bound", payload["result"]["phi"] <= math.sqrt(2 * 0.1 / 0.5) + 1e-12)
    check("profile volume bound", payload["result"]["volume"] <= 2 * 21 ** 1.5)

    # absence is not an error
    r = run("profile", "--graph", str(c4), "--phi", "0.01", "--eps", "0.4", "--json")
    check("profile absent exits 0", r.returncode == 0, r.stderr)
    check("profile absent payload", json.loads(r.stdout)["found"] is False)

    # cluster: byte-identical reruns, manifest, trace
    manifest = tmp / "run.json"
    trace = tmp / "trace.ndjson"
    args = ("cluster", "--graph", str(g), "--start", "2", "--gamma", "21", "--phi", "0.05",
            "--eps", "0.5", "--seed", "7", "--stop-phi", "0.05", "--stop-volume", "42",
            "--json", "--manifest", str(manifest), "--trace", str(trace))
    r1, r2 = run(*args), run(*args)
    check("cluster exits 0", r1.returncode == 0, r1.stderr)
    check("cluster determinism", r1.stdout == r2.stdout and r1.stdout.strip() != "")
    payload = json.loads(r1.stdout)
    if payload["found"]:
        check("cluster recomputed phi <= stop", payload["result"]["phi"] <= 0.05)
    doc = json.loads(manifest.read_text())
    check("manifest wraps the payload", doc["result"] == payload)
    check("manifest has wall time", doc["manifest"]["wall_time_seconds"] >= 0)
    check("manifest digest matches", doc["manifest"]["graph_digest"] == payload["graph"]["digest"])
    steps = [json.loads(line) for line in trace.read_text().splitlines()]
    check("trace is NDJSON with steps", len(steps) > 0 and all("psi" in s for s in steps))

    # curve
    r = run("curve", "--graph", str(c4), "--start", "0", "--steps", "1", "--json")
    payload = json.loads(r.stdout)
    check("curve step 0 breakpoints", payload["steps"][0]["breakpoints"] == [[0, 0], [2, 1], [8, 1]])
    check("curve step 1 breakpoints",
          payload["steps"][1]["breakpoints"] == [[0, 0], [2, 0.5], [4, 0.75], [6, 1], [8, 1]])
    check("curve distribution map",
          payload["steps"][1]["distribution"] == {"0": 0.5, "1": 0.25, "3": 0.25})

    # mixing
    r = run("mixing", "--graph", str(c4), "--epsilon", "0.5", "--json")
    payload = json.loads(r.stdout)
    check("mixing tau_uniform", payload["tau_uniform"] == 2)
    check("mixing tau_tv", payload["tau_tv"] == 1)
    check("mixing js bound present", payload["jerrum_sinclair_upper"] is not None)

    # verify
    r = run("verify", "--graph", str(g), "--suite", "all", "--json")
    check("verify exits 0", r.returncode == 0, r.stderr + r.stdout)
    payload = json.loads(r.stdout)
    check("verify passed", payload["passed"] and len(payload["checks"]) >= 10)

    # exit codes
    check("usage error is 1", run("profile", "--graph", str(g)).returncode == 1)
    check("missing file is 2",
          run("profile", "--graph", str(tmp / "nope.el"), "--phi", "0.1", "--eps",
              "0.3").returncode == 2)
    bad = tmp / "bad.el"
    bad.write_text("0 0\n")
    check("parse error is 2",
          run("mixing", "--graph", str(bad), "--epsilon", "0.5").returncode == 2)
    check("cluster requires --seed",
          run("cluster", "--graph", str(g), "--start", "2", "--gamma", "21", "--phi",
              "0.05").returncode == 1)

    print(f"{'ok' if not FAILURES else 'FAILED'}: {len(FAILURES)} failures")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
