"""Drive the full verification pipeline and read the emitted report.

The command-line front end chains every capability in order: symbol
identities, hull criterion, curve topology, symplectic geometry,
membership panel, and disc search.  It writes a versioned report.json
plus CSVs for external plotting, and the whole run is deterministic in
the seed.  This demo uses reduced settings so it finishes in about a
minute; drop the overrides for the full-strength run.
"""

import json
import tempfile
from pathlib import Path

from hullforge import cli

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "run"
    code = cli.main([
        "verify",
        "--grid-n", "128",
        "--degree", "6",
        "--K", "8",
        "--restarts", "2",
        "--seed", "0",
        "--out", str(out),
    ])
    print(f"\nexit code: {code}")

    report = json.loads((out / "report.json").read_text())
    print("schema:", report["schema"])
    print("symbol hash:", report["config"]["symbol_hash"])
    print("\nstage outcomes:")
    for stage in report["stages"]:
        flag = " (heuristic evidence)" if stage.get("heuristic") else ""
        print(f"  {stage['name']:10s} passed={stage['passed']}{flag}")

    print("\nhull description:", report["stages"][1]["report"]["hull"])
    files = sorted(f.name for f in out.iterdir())
    print("\nemitted files:", ", ".join(files))
