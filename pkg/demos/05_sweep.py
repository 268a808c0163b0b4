"""Grid sweep to CSV and an automated search for protected-beats-noisy regions."""

import csv
import tempfile
from pathlib import Path

from gadcsim.search import find_improvement
from gadcsim.sweep import SweepConfig, run_sweep

out = Path(tempfile.mkdtemp()) / "weak.csv"
cfg = SweepConfig(
    alpha_grid="0.1:0.9:5",
    nu_grid=[0.9],
    eta_grid=[0.3, 0.6],
    protocol="weak",
    state_family="parallel",
    w_grid=[0.5],
    r_grid=[0.7],
    output_path=str(out),
)
print(cfg.to_json())
run_sweep(cfg)

with open(out, newline="") as fh:
    rows = list(csv.DictReader(fh))
print(len(rows), "rows written to", out)
for row in rows:
    print(row["alpha"], row["eta"], row["concurrence_base"][:6], row["concurrence_prot"][:6],
          row["success_prob"][:5], row["improved_concurrence"])

# where does each protocol help?
for protocol in ("weak", "povm1-case1", "povm2-case2"):
    wit = find_improvement(protocol, "antiparallel", "steering")
    print(protocol, "->", None if wit is None else
          f"nu={wit.nu} eta={wit.eta} w={wit.w} r={wit.r} branch={wit.branch} "
          f"alpha in {wit.alpha_interval} gain up to {wit.max_gain:.3f}")
