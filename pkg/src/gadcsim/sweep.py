"""Parameter-grid sweeps, CSV output and the JSON/text reports behind the CLI."""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import dilation as dil
from .channels import gadc
from .errors import ValidationError
from .measures import STEERING_BOUND, concurrence, steering_value
from .protocols import PROTOCOLS, baseline, branch_count, run_protocol
from .states import FAMILIES, correlation_data, family_state

CSV_COLUMNS = (
    "alpha", "nu", "eta", "w", "r", "protocol", "branch", "success_prob",
    "concurrence_base", "concurrence_prot", "steering_base", "steering_prot",
    "improved_concurrence", "improved_steering",
)
# protected must beat unprotected by more than this to count as improved
IMPROVEMENT_EPS = 1e-12
VERIFY_TOL = 1e-8


def parse_grid(spec) -> list[float]:
    """Grid from a list, a ``{"start", "stop", "count"}`` mapping, a scalar, or a string.

    Strings are either comma-separated values (``"0.1,0.5"``) or a linear range
    ``"start:stop:count"``.
    """
    if isinstance(spec, str):
        text = spec.strip()
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValidationError(f"range grid must be start:stop:count, got {spec!r}")
            spec = {"start": float(parts[0]), "stop": float(parts[1]), "count": int(parts[2])}
        else:
            spec = [float(v) for v in text.split(",") if v.strip()]
    if isinstance(spec, dict):
        try:
            start, stop, count = float(spec["start"]), float(spec["stop"]), int(spec["count"])
        except KeyError as exc:
            raise ValidationError(f"range grid is missing key {exc}") from None
        if count < 1:
            raise ValidationError("range grid count must be positive")
        values = np.linspace(start, stop, count).tolist()
    elif isinstance(spec, (int, float)):
        values = [float(spec)]
    else:
        values = [float(v) for v in spec]
    if not values:
        raise ValidationError("grid must not be empty")
    return values


@dataclass
class SweepConfig:
    alpha_grid: list
    nu_grid: list
    eta_grid: list
    protocol: str = "baseline"
    state_family: str = "antiparallel"
    sign: int = 1
    w_grid: list = field(default_factory=lambda: [0.0])
    r_grid: list = field(default_factory=lambda: [0.0])
    output_path: str = "sweep.csv"
    workers: int = 1

    def __post_init__(self):
        for name in ("alpha_grid", "nu_grid", "eta_grid", "w_grid", "r_grid"):
            setattr(self, name, parse_grid(getattr(self, name)))
        self.sign = int(self.sign)
        self.workers = int(self.workers)
        self.validate()

    def validate(self):
        if self.state_family not in FAMILIES:
            raise ValidationError(f"state_family must be one of {sorted(FAMILIES)}")
        if self.sign not in (1, -1):
            raise ValidationError("sign must be +1 or -1")
        if self.protocol not in PROTOCOLS:
            raise ValidationError(f"protocol must be one of {list(PROTOCOLS)}")
        if self.workers < 1:
            raise ValidationError("workers must be at least 1")
        closed = {"alpha_grid": self.alpha_grid, "nu_grid": self.nu_grid, "eta_grid": self.eta_grid}
        for name, grid in closed.items():
            if any(not 0.0 <= v <= 1.0 for v in grid):
                raise ValidationError(f"{name} values must lie in [0, 1]")
        for name, grid in (("w_grid", self.w_grid), ("r_grid", self.r_grid)):
            if any(not 0.0 <= v < 1.0 for v in grid):
                raise ValidationError(f"{name} values must lie in [0, 1)")

    @classmethod
    def from_mapping(cls, data: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path, overrides: dict | None = None) -> "SweepConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read config {path}: {exc}") from None
        data.update(overrides or {})
        return cls.from_mapping(data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def grid_size(self) -> int:
        return math.prod(len(g) for g in (
            self.alpha_grid, self.nu_grid, self.eta_grid, self.w_grid, self.r_grid))


def rows_per_point(protocol: str) -> int:
    """CSV rows per grid point: one per outcome branch."""
    return branch_count(protocol)


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if math.isnan(x):
        return "nan"
    return format(float(x), ".12g")


def _row(point, protocol, branch, res, base):
    alpha, nu, eta, w, r = point
    improved_c = (not res.is_null) and res.concurrence > base.concurrence + IMPROVEMENT_EPS
    improved_s = (not res.is_null) and res.steering > base.steering + IMPROVEMENT_EPS
    return (alpha, nu, eta, w, r, protocol, branch, res.success_probability,
            base.concurrence, res.concurrence, base.steering, res.steering,
            int(improved_c), int(improved_s))


def _evaluate(task) -> list[tuple]:
    """All rows for one (alpha, nu, eta) triple across the (w, r) grid."""
    family, sign, protocol, alpha, nu, eta, w_grid, r_grid = task
    state = family_state(family, alpha, sign)
    base = baseline(state, nu, eta)
    rows = []
    for w, r in itertools.product(w_grid, r_grid):
        point = (alpha, nu, eta, w, r)
        results = run_protocol(protocol, state, nu, eta, w, r)
        for res in results:
            rows.append(_row(point, protocol, res.branch, res, base))
    return rows


def sweep_rows(config: SweepConfig) -> list[tuple]:
    tasks = [
        (config.state_family, config.sign, config.protocol, a, n, e, config.w_grid, config.r_grid)
        for a, n, e in itertools.product(config.alpha_grid, config.nu_grid, config.eta_grid)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            chunks = list(pool.map(_evaluate, tasks))
    else:
        chunks = [_evaluate(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def format_csv(rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def run_sweep(config: SweepConfig) -> Path:
    """Evaluate the grid and write the CSV to ``config.output_path``."""
    text = format_csv(sweep_rows(config))
    path = Path(config.output_path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {path}: {exc}") from None
    return path


def dilation_verify(which: str, nu: float, eta: float) -> dict:
    """Residual report for one of the GADC dilations (``u1``, ``u2`` or ``built``)."""
    if which == "u1":
        matrix = dil.unitary_one_matrix(nu, eta)
    elif which == "u2":
        matrix = dil.unitary_two_matrix(nu, eta)
    elif which == "built":
        matrix = dil.build_dilation(gadc(nu, eta)).matrix
    else:
        raise ValidationError(f"unknown dilation {which!r}; expected u1, u2 or built")
    report = {"which": which, "nu": nu, "eta": eta}
    report.update(dil.verification_report(matrix, reference=gadc(nu, eta)))
    if which in ("u1", "u2") and report["unitarity_residual"] <= dil.UNITARITY_REPORT_TOL:
        closed = (dil.closed_form_inverse_one if which == "u1" else dil.closed_form_inverse_two)(nu, eta)
        extracted = dil.inverse_channel_kraus(dil.UnitaryDilation(matrix, 2, 4))
        report["closed_form_inverse_residual"] = float(max(
            np.max(np.abs(extracted[i] - closed[dil.CLOSED_FORM_ORDER[i]])) for i in range(4)))
    if nu == 1.0 and eta == 1.0:
        u = dil.UnitaryDilation(matrix, 2, 4)
        probe = np.array([[0.3, 0.2 - 0.1j], [0.2 + 0.1j, 0.7]])
        report["identity_channel_residual"] = float(np.max(np.abs(u.channel_action(probe) - probe)))
    report["worst_residual"] = dil.worst_residual(report)
    report["passed"] = report["worst_residual"] <= VERIFY_TOL
    return report


def state_report(family: str, sign: int, alpha: float) -> dict:
    state = family_state(family, alpha, sign)
    steer = steering_value(state)
    corr = correlation_data(state)
    rho = state.matrix
    return {
        "family": family,
        "sign": sign,
        "alpha": alpha,
        "density_matrix_real": rho.real.tolist(),
        "density_matrix_imag": rho.imag.tolist(),
        "concurrence": concurrence(state),
        "steering_value": steer.value,
        "steering_violates": bool(steer.violates),
        "steering_bound": STEERING_BOUND,
        "optimal_a0": steer.optimal_a0.tolist(),
        "optimal_a1": steer.optimal_a1.tolist(),
        "correlation_matrix": corr.t_matrix.tolist(),
        "a_vector": corr.a_vector.tolist(),
        "b_vector": corr.b_vector.tolist(),
    }
