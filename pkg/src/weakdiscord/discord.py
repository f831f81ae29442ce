"""Quantum discord and its weak-measurement variants for two-qubit states.

All three quantifiers subtract a basis-optimized quantity from the total
mutual information ``I(rho_AB)``:

* QD:  the best classical correlation ``J`` from a projective measurement on B
  (cross-checked against the best post-measurement mutual information).
* SQD: the best ``J_x`` obtained from the weak POVM outcomes.
* WQD: the best mutual information of the weakly measured state ``rho^x``.

Each optimization can run along one of three pathways that must agree to
roundoff: ``direct`` applies the POVM operators, ``kraus`` replaces the
non-selective measurement by phase damping with ``lam = tanh(x)**2`` along the
measurement axis, and ``dilation`` realizes that damping with an ancilla qubit.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import channels, measure, qmath
from .errors import ConvergenceError, DomainError
from .measure import MeasurementBasis
from .states import marginals, validate_density

PATHWAYS = ("direct", "kraus", "dilation")
ROUTE_TOL = 1e-6
CLAMP_TOL = 1e-9
# Window re-centrings allowed in total before the optimizer gives up.
MAX_RECENTRES = 12

Objective = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class OptimizerConfig:
    coarse_theta_steps: int = 61
    coarse_phi_steps: int = 121
    refine_rounds: int = 6
    refine_shrink: float = 0.25
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.coarse_theta_steps < 3 or self.coarse_phi_steps < 3:
            raise DomainError("coarse grids need at least 3 steps per axis")
        if not 0 < self.refine_shrink < 1:
            raise DomainError("refine_shrink must lie strictly between 0 and 1")
        if self.refine_rounds < 0 or self.tolerance < 0:
            raise DomainError("refine_rounds and tolerance must be non-negative")

    @property
    def refine_points(self) -> int:
        # The next window must be no wider than one step of the current grid.
        return 2 * math.ceil(1 / self.refine_shrink) + 1


@dataclass(frozen=True)
class DiscordReport:
    """Quantifier values (bits) for one state and measurement strength.

    ``x`` is ``None`` for the purely projective report. ``opt_basis`` and
    ``opt_value`` describe whichever maximization produced the headline
    quantifier of the report.
    """

    x: float | None
    total_mutual_info: float
    classical_corr: float
    post_mutual_info: float
    qd: float
    opt_basis: MeasurementBasis
    opt_value: float
    sqd: float | None = None
    wqd: float | None = None
    pathway: str = "direct"

    def violations(self) -> list[str]:
        found = []
        for name in ("total_mutual_info", "classical_corr", "post_mutual_info", "qd", "sqd", "wqd"):
            value = getattr(self, name)
            if value is not None and value < -CLAMP_TOL:
                found.append(f"{name} = {value} is negative")
        if self.wqd is not None and self.wqd > self.qd + 1e-6:
            found.append(f"wqd {self.wqd} exceeds qd {self.qd}")
        if self.sqd is not None and self.qd > self.sqd + 1e-6:
            found.append(f"qd {self.qd} exceeds sqd {self.sqd}")
        return found

    def to_dict(self) -> dict:
        d = asdict(self)
        d["opt_basis"] = {"theta": self.opt_basis.theta, "phi": self.opt_basis.phi}
        return d


def _clamp(value: float) -> float:
    return 0.0 if -CLAMP_TOL <= value < 0 else float(value)


# -- optimizer ---------------------------------------------------------------

def _select(values: np.ndarray, thetas: np.ndarray, phis: np.ndarray, tol: float):
    """Maximizer with ties (within ``tol``) broken by smallest theta, then phi."""
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainError("objective returned a non-finite value")
    near = values >= values.max() - tol
    idx = np.lexsort((phis[near], thetas[near]))[0]
    return float(thetas[near][idx]), float(phis[near][idx]), float(values[near][idx])


def optimize_basis(objective: Objective, cfg: OptimizerConfig | None = None,
                   vectorized: bool = True) -> tuple[MeasurementBasis, float]:
    """Maximize ``objective`` over measurement directions.

    A coarse ``theta x phi`` scan is followed by ``refine_rounds`` scans of a
    shrinking window centred on the incumbent. A scan whose best point lands on
    the window edge with a material gain is repeated at the same size around
    the new incumbent; too many of those raise :class:`ConvergenceError`. ``objective`` receives equally
    shaped arrays of ``theta`` and ``phi`` and returns values of that shape;
    with ``vectorized=False`` it is called once per :class:`MeasurementBasis`.
    """
    cfg = cfg or OptimizerConfig()
    if not vectorized:
        scalar = objective

        def objective(th, ph):
            return np.array([scalar(MeasurementBasis(float(t), float(p)))
                             for t, p in zip(th.ravel(), ph.ravel())]).reshape(th.shape)

    two_pi = 2 * math.pi
    th_axis = np.linspace(0.0, math.pi, cfg.coarse_theta_steps)
    ph_axis = two_pi * np.arange(cfg.coarse_phi_steps) / cfg.coarse_phi_steps
    th, ph = (a.ravel() for a in np.meshgrid(th_axis, ph_axis, indexing="ij"))
    best_th, best_ph, best = _select(objective(th, ph), th, ph, cfg.tolerance)

    w_th = math.pi / (cfg.coarse_theta_steps - 1)
    w_ph = two_pi / cfg.coarse_phi_steps
    offsets = np.linspace(-1.0, 1.0, cfg.refine_points)
    rounds = recentres = 0
    while rounds < cfg.refine_rounds:
        th_axis = np.unique(np.clip(best_th + w_th * offsets, 0.0, math.pi))
        ph_axis = np.mod(best_ph + w_ph * offsets, two_pi)
        th, ph = (a.ravel() for a in np.meshgrid(th_axis, ph_axis, indexing="ij"))
        cand_th, cand_ph, cand = _select(objective(th, ph), th, ph, cfg.tolerance)
        on_edge = False
        if cand > best:
            on_edge = cand > best + cfg.tolerance and (
                (abs(cand_th - best_th) >= w_th * (1 - 1e-9) and 0.0 < cand_th < math.pi)
                or abs(math.remainder(cand_ph - best_ph, two_pi)) >= w_ph * (1 - 1e-9)
            )
            best_th, best_ph, best = cand_th, cand_ph, cand
        if on_edge:
            # The maximizer may lie outside the window: re-centre at the same size.
            recentres += 1
            if recentres > MAX_RECENTRES:
                raise ConvergenceError(
                    "maximizer kept moving to the edge of the refinement window",
                    best_basis=MeasurementBasis(best_th, best_ph % two_pi),
                    best_value=best,
                )
            continue
        w_th *= cfg.refine_shrink
        w_ph *= cfg.refine_shrink
        rounds += 1
    return MeasurementBasis(best_th, best_ph % two_pi), best


# -- pointwise quantities ----------------------------------------------------

def mutual_information(rho) -> float | np.ndarray:
    """``S(rho_A) + S(rho_B) - S(rho_AB)`` in bits; accepts stacks of states."""
    rho = np.asarray(rho, dtype=complex)
    rho_a, rho_b = marginals(rho)
    value = (qmath.von_neumann_entropy(rho_a) + qmath.von_neumann_entropy(rho_b)
             - qmath.von_neumann_entropy(rho))
    return value


def _check_pathway(pathway: str) -> str:
    if pathway not in PATHWAYS:
        raise DomainError(f"unknown pathway {pathway!r}; expected one of {PATHWAYS}")
    return pathway


def _check_x(x: float) -> float:
    x = float(x)
    if not (math.isfinite(x) and 0 <= x <= measure.X_MAX):
        raise DomainError(f"measurement strength must lie in [0, {measure.X_MAX}], got {x}")
    return x


def measured_states(rho: np.ndarray, theta, phi, x: float | None, pathway: str = "direct"):
    """Readout state, POVM effects and non-selective post-measurement state.

    ``x=None`` selects the projective measurement (full dephasing on the
    channel pathways). The readout state is what the POVM effects are applied
    to when forming conditional states of A.
    """
    if x is None:
        ops = measure.projector_stack(theta, phi)
        lam = 1.0
    else:
        ops = measure.weak_stack(theta, phi, x)
        lam = channels.lambda_from_x(x)
    effects = measure.effects_from_kraus(ops)
    if pathway == "direct":
        post = measure.post_state_array(rho, ops)
        return rho, effects, post
    post = channels.dephase_b_array(rho, theta, phi, lam, route=pathway)
    return post, effects, post


def classical_correlation_array(rho, theta, phi, x=None, pathway="direct") -> np.ndarray:
    """``J`` (``x=None``) or ``J_x`` over arrays of measurement angles."""
    readout, effects, _ = measured_states(rho, theta, phi, x, pathway)
    s_a = qmath.von_neumann_entropy(qmath.partial_trace(rho, [2, 2], [0]))
    return s_a - measure.conditional_entropy_array(readout, effects)


def post_mutual_information_array(rho, theta, phi, x=None, pathway="direct") -> np.ndarray:
    """``I(rho')`` (``x=None``) or ``I(rho^x)`` over arrays of measurement angles."""
    _, _, post = measured_states(rho, theta, phi, x, pathway)
    return mutual_information(post)


def classical_correlation(rho, basis: MeasurementBasis) -> float:
    rho = validate_density(rho)
    return float(classical_correlation_array(rho, basis.theta, basis.phi))


def weak_classical_correlation(rho, basis: MeasurementBasis, x: float) -> float:
    rho = validate_density(rho)
    return float(classical_correlation_array(rho, basis.theta, basis.phi, _check_x(x)))


def post_mutual_information(rho, basis: MeasurementBasis, x: float | None = None) -> float:
    rho = validate_density(rho)
    x = None if x is None else _check_x(x)
    return float(post_mutual_information_array(rho, basis.theta, basis.phi, x))


# -- quantifiers -------------------------------------------------------------

def _two_qubit(rho) -> np.ndarray:
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise DomainError("discord quantifiers are defined here for two-qubit states only")
    return rho


def quantum_discord(rho, cfg: OptimizerConfig | None = None, pathway: str = "direct") -> DiscordReport:
    """QD by maximizing ``J``, cross-checked by maximizing ``I(rho')``."""
    rho = _two_qubit(rho)
    cfg = cfg or OptimizerConfig()
    _check_pathway(pathway)
    total = float(mutual_information(rho))
    basis_j, best_j = optimize_basis(
        lambda t, p: classical_correlation_array(rho, t, p, None, pathway), cfg)
    _, best_i = optimize_basis(
        lambda t, p: post_mutual_information_array(rho, t, p, None, pathway), cfg)
    qd_a = total - best_j
    qd_b = total - best_i
    if abs(qd_a - qd_b) > ROUTE_TOL:
        raise ConvergenceError(
            f"the two discord routes disagree: {qd_a} vs {qd_b}",
            best_basis=basis_j, best_value=best_j)
    return DiscordReport(
        x=None,
        total_mutual_info=_clamp(total),
        classical_corr=_clamp(best_j),
        post_mutual_info=_clamp(best_i),
        qd=_clamp(qd_a),
        opt_basis=basis_j,
        opt_value=best_j,
        pathway=pathway,
    )


def super_quantum_discord(rho, x: float, cfg: OptimizerConfig | None = None,
                          pathway: str = "direct", qd: float | None = None) -> DiscordReport:
    """``I(rho_AB) - max J_x``; pass ``qd`` to skip recomputing the projective QD."""
    rho = _two_qubit(rho)
    x = _check_x(x)
    cfg = cfg or OptimizerConfig()
    _check_pathway(pathway)
    if qd is None:
        qd = quantum_discord(rho, cfg, pathway).qd
    total = float(mutual_information(rho))
    basis, best = optimize_basis(
        lambda t, p: classical_correlation_array(rho, t, p, x, pathway), cfg)
    post_i = float(post_mutual_information_array(rho, basis.theta, basis.phi, x, pathway))
    return DiscordReport(
        x=x,
        total_mutual_info=_clamp(total),
        classical_corr=_clamp(best),
        post_mutual_info=_clamp(post_i),
        qd=qd,
        sqd=_clamp(total - best),
        opt_basis=basis,
        opt_value=best,
        pathway=pathway,
    )


def weak_quantum_discord(rho, x: float, cfg: OptimizerConfig | None = None,
                         pathway: str = "direct", qd: float | None = None) -> DiscordReport:
    """``I(rho_AB) - max I(rho^x)``; pass ``qd`` to skip recomputing the projective QD."""
    rho = _two_qubit(rho)
    x = _check_x(x)
    cfg = cfg or OptimizerConfig()
    _check_pathway(pathway)
    if qd is None:
        qd = quantum_discord(rho, cfg, pathway).qd
    total = float(mutual_information(rho))
    basis, best = optimize_basis(
        lambda t, p: post_mutual_information_array(rho, t, p, x, pathway), cfg)
    j_x = float(classical_correlation_array(rho, basis.theta, basis.phi, x, pathway))
    return DiscordReport(
        x=x,
        total_mutual_info=_clamp(total),
        classical_corr=_clamp(j_x),
        post_mutual_info=_clamp(best),
        qd=qd,
        wqd=_clamp(total - best),
        opt_basis=basis,
        opt_value=best,
        pathway=pathway,
    )
