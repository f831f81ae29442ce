"""Measurement-strength sweeps producing one CSV row per strength."""

from __future__ import annotations

import csv
import io
import math
import os
from dataclasses import astuple, dataclass, field, fields
from typing import Sequence

import numpy as np

from . import channels, discord, measure, qmath, states
from .discord import OptimizerConfig
from .errors import DomainError

TABLE1_X = (0.00, 0.34, 0.55, 0.75, 0.95, 1.20, 1.50, 1.75, 2.00, 2.50, 3.00, 3.50, 4.00, 4.50, 5.00)
DENSE_X_MAX = 5.0

PATHWAY_ALIASES = {
    "direct": "direct",
    "direct-weak-povm": "direct",
    "kraus": "kraus",
    "kraus-channel": "kraus",
    "dilation": "dilation",
    "ancilla-dilation": "dilation",
}

PRESETS = {
    "werner-paper": ("werner", (0.8,)),
    "bd-paper": ("bd", (1.0, -1.0, 1.0)),
}

ENV_OVERRIDES = {
    "WEAKDISCORD_COARSE_THETA": "coarse_theta_steps",
    "WEAKDISCORD_COARSE_PHI": "coarse_phi_steps",
    "WEAKDISCORD_REFINE_ROUNDS": "refine_rounds",
}


class UsageError(ValueError):
    """Malformed command-line value (as opposed to a physically invalid one)."""


@dataclass(frozen=True)
class StateSpec:
    kind: str
    params: tuple

    @classmethod
    def parse(cls, text: str) -> "StateSpec":
        """Parse ``werner:Z``, ``bd:C1,C2,C3`` or a preset name."""
        text = text.strip()
        if text in PRESETS:
            kind, params = PRESETS[text]
            return cls(kind, params)
        kind, sep, rest = text.partition(":")
        try:
            values = tuple(float(v) for v in rest.split(",")) if sep else ()
        except ValueError as exc:
            raise UsageError(f"cannot parse state parameters in {text!r}") from exc
        if kind == "werner" and len(values) == 1:
            return cls("werner", values)
        if kind == "bd" and len(values) == 3:
            return cls("bd", values)
        raise UsageError(f"unrecognized state {text!r}; use werner:Z, bd:C1,C2,C3 or {sorted(PRESETS)}")

    def build(self) -> np.ndarray:
        if self.kind == "werner":
            return states.werner(*self.params)
        return states.bell_diagonal(*self.params)

    def __str__(self) -> str:
        return f"{self.kind}:" + ",".join(f"{p:g}" for p in self.params)


def parse_x_grid(text: str) -> tuple[float, ...]:
    """``table1``, ``dense:N`` (N points on [0, 5]) or a comma-separated list."""
    text = text.strip()
    if text == "table1":
        return TABLE1_X
    if text.startswith("dense:"):
        try:
            n = int(text.split(":", 1)[1])
        except ValueError as exc:
            raise UsageError(f"bad dense grid {text!r}") from exc
        if n < 0:
            raise UsageError("dense grid size must be non-negative")
        if n == 1:
            return (0.0,)
        return tuple(float(v) for v in np.linspace(0.0, DENSE_X_MAX, n))
    if not text:
        return ()
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad x grid {text!r}") from exc


def optimizer_from_env(env=None) -> OptimizerConfig:
    env = os.environ if env is None else env
    overrides = {}
    for var, name in ENV_OVERRIDES.items():
        if var in env:
            try:
                overrides[name] = int(env[var])
            except ValueError as exc:
                raise UsageError(f"{var} must be an integer, got {env[var]!r}") from exc
    return OptimizerConfig(**overrides)


@dataclass(frozen=True)
class SweepConfig:
    state_spec: StateSpec
    x_grid: tuple = TABLE1_X
    pathway: str = "direct"
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    output_path: str | None = None

    def __post_init__(self):
        if self.pathway not in PATHWAY_ALIASES:
            raise UsageError(f"unknown pathway {self.pathway!r}")
        object.__setattr__(self, "pathway", PATHWAY_ALIASES[self.pathway])
        grid = tuple(float(x) for x in self.x_grid)
        if any(not math.isfinite(x) or x < 0 or x > measure.X_MAX for x in grid):
            raise DomainError(f"x grid values must lie in [0, {measure.X_MAX}]")
        if any(b < a for a, b in zip(grid, grid[1:])):
            raise DomainError("x grid must be sorted ascending")
        object.__setattr__(self, "x_grid", grid)


@dataclass(frozen=True)
class SweepRow:
    x: float
    lam: float
    qd: float
    sqd: float
    wqd: float
    total_mutual_info: float
    theta_opt_sqd: float
    phi_opt_sqd: float
    theta_opt_wqd: float
    phi_opt_wqd: float
    fidelity_vs_ideal: float


CSV_HEADER = tuple("lambda" if f.name == "lam" else f.name for f in fields(SweepRow))


def _pathway_state(rho: np.ndarray, x: float, pathway: str) -> np.ndarray:
    """Weakly measured state along the polar axis, produced by ``pathway``."""
    basis = measure.POLAR_BASIS
    _, _, post = discord.measured_states(rho, basis.theta, basis.phi, x, pathway)
    return post


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    rho = cfg.state_spec.build()
    opt = cfg.optimizer
    rows = []
    if not cfg.x_grid:
        return rows
    qd = discord.quantum_discord(rho, opt, cfg.pathway).qd
    for x in cfg.x_grid:
        sq = discord.super_quantum_discord(rho, x, opt, cfg.pathway, qd=qd)
        wq = discord.weak_quantum_discord(rho, x, opt, cfg.pathway, qd=qd)
        ideal = _pathway_state(rho, x, "direct")
        produced = _pathway_state(rho, x, cfg.pathway)
        rows.append(SweepRow(
            x=x,
            lam=channels.lambda_from_x(x),
            qd=qd,
            sqd=sq.sqd,
            wqd=wq.wqd,
            total_mutual_info=sq.total_mutual_info,
            theta_opt_sqd=sq.opt_basis.theta,
            phi_opt_sqd=sq.opt_basis.phi,
            theta_opt_wqd=wq.opt_basis.theta,
            phi_opt_wqd=wq.opt_basis.phi,
            fidelity_vs_ideal=qmath.fidelity(ideal, qmath.hermitize(produced)),
        ))
    return rows


def format_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(f"{v:.12g}" for v in astuple(row))
    return buf.getvalue()


def write_csv(rows: Sequence[SweepRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(rows))


def read_csv(path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return [{k: float(v) for k, v in rec.items()} for rec in csv.DictReader(fh)]


def summarize(cfg: SweepConfig, rows: Sequence[SweepRow]) -> str:
    lines = [f"state {cfg.state_spec}  pathway {cfg.pathway}  points {len(rows)}"]
    if rows:
        lines.append(f"I(rho_AB) = {rows[0].total_mutual_info:.6f}   QD = {rows[0].qd:.6f}")
        lines.append(f"{'x':>6} {'lambda':>9} {'SQD':>9} {'WQD':>9}")
        lines += [f"{r.x:6.2f} {r.lam:9.6f} {r.sqd:9.6f} {r.wqd:9.6f}" for r in rows]
    return "\n".join(lines)
