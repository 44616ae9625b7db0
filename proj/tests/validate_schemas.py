"""Runs each CLI command and checks its JSON output against schemas/."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
base = ["--power", "3", "--noises", "3,1"]
failures = 0


def check(name, instance, where):
    global failures
    try:
        jsonschema.validate(instance, schemas[name])
        print(f"ok   {name:16s} {where}")
    except jsonschema.ValidationError as e:
        failures += 1
        print(f"FAIL {name:16s} {where}: {e.message}")


def run(args, expect=0):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        raise SystemExit(f"{' '.join(args)}: exit {proc.returncode}, expected {expect}\n{proc.stderr}")
    return json.loads(proc.stdout)


with tempfile.TemporaryDirectory() as tmp:
    out = pathlib.Path(tmp)
    scen = out / "scenario.json"
    scen.write_text(json.dumps({"power": 3, "noises": [3, 1], "bandwidth": 2}))
    check("scenario", json.loads(scen.read_text()), "scenario file")

    cases = [
        ("eval", ["--scenario", str(scen), "eval", "-D", "0.25,0.0625", "--tau", "1,0"]),
        ("eval", [*base, "eval", "-D", "0.5,0.25", "--tau", "inf,0"]),
        ("membership", ["--scenario", str(scen), "membership", "-D", "0.25,0.0625"]),
        ("trace", ["--scenario", str(scen), "trace", "--points", "5"]),
        ("simulate", [*base, "--bandwidth", "1", "simulate", "-m", "10000"]),
        ("verify", ["verify-theorems", "--trials", "20"]),
        ("figure1_summary", ["figure1", "--samples", "64"]),
    ]
    for name, args in cases:
        cmd_out = out / name
        payload = run(["--out", str(cmd_out), *args])
        check(name, payload, " ".join(args[-4:]))
        for manifest in sorted(cmd_out.glob("*.manifest.json")):
            check("manifest", json.loads(manifest.read_text()), manifest.name)
    check("figure1_summary", json.loads((out / "figure1_summary" / "figure1_summary.json").read_text()), "file")
    check("error", run([*base, "eval", "-D", "0.5,0.25", "--tau", "0,1"], expect=2), "NonMonotoneTau")

sys.exit(1 if failures else 0)
