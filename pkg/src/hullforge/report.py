"""Deterministic report and data-file emission.

All JSON is written with sorted keys and no timestamps so that a fixed
seed reproduces byte-identical files; the input symbol is identified by
the git-style blob hash of its canonical serialization.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path

SCHEMA = "hullforge/1"

DEFAULT_TOLERANCES = {
    "reflection_identity": 1e-12,
    "torus_root_filter": 1e-8,
    "v_condition": 1e-8,
    "hull_constant": 1e-10,
    "branch_point": 1e-8,
    "variety_residual": 1e-10,
    "containment": 1e-9,
    "isotropy_zero": 1e-12,
    "isotropy_floor": 0.1,
    "shear_transport": 1e-10,
    "membership_residual": 1e-8,
    "separation_margin": 0.05,
    "control_defect": 1e-8,
    "gradient_check": 1e-5,
}


def git_blob_sha1(text: str) -> str:
    """Hex sha1 of the git blob encoding of the text."""
    data = text.encode("utf-8")
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(payload), encoding="utf-8")
    return path


def write_csv(path, header, rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    return path


def loop_csv_rows(results: dict, n_theta: int = 256):
    """Sample rows of the best loop of each winding class for plotting."""
    import numpy as np

    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    for (m, n), res in sorted(results.items()):
        s, t = res.loop.angles(theta)
        z, w = np.exp(1j * s), np.exp(1j * t)
        for i in range(n_theta):
            yield (
                m,
                n,
                float(theta[i]),
                float(s[i]),
                float(t[i]),
                float(z[i].real),
                float(z[i].imag),
                float(w[i].real),
                float(w[i].imag),
            )
