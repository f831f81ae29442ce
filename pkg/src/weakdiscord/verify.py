"""Cross-module consistency suites run by ``weakdiscord verify``.

Each suite returns a list of :class:`Check` records, one per property. A
property may cover many cases; ``worst`` is the largest observed error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels, discord, measure, qmath, states
from .discord import OptimizerConfig
from .measure import MeasurementBasis
from .sweep import TABLE1_X

SEED = 20190601
LAMBDA_GRID = tuple(float(v) for v in np.linspace(0.0, 1.0, 11))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    worst: float
    tol: float
    count: int

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.count} cases, worst {self.worst:.3e} (tol {self.tol:.0e})"


def _check(name: str, errors, tol: float) -> Check:
    errors = [float(e) for e in errors]
    worst = max(errors) if errors else 0.0
    ok = bool(errors) and all(math.isfinite(e) and e <= tol for e in errors)
    return Check(name, ok, worst, tol, len(errors))


def _guarded(name: str, tol: float, fn) -> Check:
    try:
        return _check(name, fn(), tol)
    except Exception as exc:  # a crash is a failed check, not a crashed suite
        return Check(f"{name} ({type(exc).__name__}: {exc})", False, math.inf, tol, 0)


def reference_presets():
    return {"werner-paper": states.werner(0.8), "bd-paper": states.bell_diagonal(1, -1, 1)}


# -- povm --------------------------------------------------------------------

def suite_povm() -> list[Check]:
    rng = np.random.default_rng(SEED)
    thetas = np.linspace(0.0, math.pi, 10)
    phis = np.linspace(0.0, 2 * math.pi, 10, endpoint=False)
    xs = np.linspace(0.0, measure.X_MAX, 10)

    def completeness():
        for t in thetas:
            for p in phis:
                for x in xs:
                    yield measure.weak_povm(MeasurementBasis(t, p), x).completeness_defect()

    rhos = [states.random_density(4, rng) for _ in range(10)]
    bases = [MeasurementBasis(t, p) for t in thetas[::3] for p in phis[::3]]

    def probabilities():
        for rho in rhos:
            for b in bases:
                outs, _ = measure.measure_b_projective(rho, b)
                yield abs(sum(o.probability for o in outs) - 1)
                outs, _ = measure.measure_b_weak(rho, measure.weak_povm(b, 0.7))
                yield abs(sum(o.probability for o in outs) - 1)

    def identity_at_zero():
        for rho in rhos:
            for b in bases:
                _, post = measure.measure_b_weak(rho, measure.weak_povm(b, 0.0))
                yield np.max(np.abs(post - rho))

    def block_diagonal():
        for rho in rhos:
            for b in bases:
                _, post = measure.measure_b_projective(rho, b)
                pi1, pi2 = measure.projectors(b)
                yield np.max(np.abs(np.kron(qmath.I2, pi1) @ post @ np.kron(qmath.I2, pi2)))

    return [
        _guarded("POVM completeness over 10x10x10 (theta, phi, x) grid", 1e-12, completeness),
        _guarded("outcome probabilities sum to one", 1e-10, probabilities),
        _guarded("weak measurement at x=0 is the identity", 1e-12, identity_at_zero),
        _guarded("projective post-state has no cross-outcome coherence", 1e-12, block_diagonal),
    ]


# -- channel -----------------------------------------------------------------

def suite_channel() -> list[Check]:
    rng = np.random.default_rng(SEED + 1)

    def trace_preservation():
        for lam in np.linspace(0.0, 1.0, 101):
            yield channels.phase_damping_kraus(lam).trace_preservation_defect()

    def round_trip():
        for lam in np.linspace(0.0, 0.99, 99):
            yield abs(channels.lambda_from_x(channels.x_from_lambda(lam)) - lam)

    def coherence_scaling():
        for _ in range(20):
            v = rng.normal(size=3)
            v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
            rho = states.bloch_state(*v)
            for x in TABLE1_X:
                lam = channels.lambda_from_x(x)
                _, weak = _single_qubit_weak(rho, x)
                pd = channels.apply_channel(channels.phase_damping_kraus(lam), rho, 0)
                yield abs(weak[0, 1] - rho[0, 1] / math.cosh(x))
                yield abs(pd[0, 1] - rho[0, 1] * math.sqrt(1 - lam))
                yield qmath.trace_distance(weak, pd)

    def composition():
        for _ in range(20):
            rho = states.random_density(2, rng)
            l1, l2 = rng.uniform(size=2)
            once = channels.apply_channel(channels.phase_damping_kraus(l1), rho, 0)
            twice = channels.apply_channel(channels.phase_damping_kraus(l2), once, 0)
            direct = channels.apply_channel(
                channels.phase_damping_kraus(1 - (1 - l1) * (1 - l2)), rho, 0)
            yield np.max(np.abs(twice - direct))

    def weak_equivalence():
        for rho in reference_presets().values():
            for x in TABLE1_X:
                _, post = measure.measure_b_weak(rho, measure.weak_povm(measure.POLAR_BASIS, x))
                pd = channels.apply_channel(
                    channels.phase_damping_kraus(channels.lambda_from_x(x)), rho, 1)
                yield qmath.trace_distance(post, pd)

    outputs = []
    for _ in range(20):
        rho = states.random_density(4, rng)
        outputs.append(channels.apply_channel(channels.phase_damping_kraus(rng.uniform()), rho, 1))

    def hermitian_unit_trace():
        for out in outputs:
            yield max(np.max(np.abs(out - out.conj().T)), abs(np.trace(out).real - 1))

    def positivity():
        for out in outputs:
            yield max(0.0, -np.linalg.eigvalsh(out)[0])

    return [
        _guarded("phase damping is trace preserving on a 101-point grid", 1e-12, trace_preservation),
        _guarded("lambda(x(lambda)) round trip on 99 points", 1e-12, round_trip),
        _guarded("coherence scaling: sech x (weak) and sqrt(1-lambda) (damping)", 1e-12, coherence_scaling),
        _guarded("damping composes multiplicatively in sqrt(1-lambda)", 1e-12, composition),
        _guarded("weak measurement equals damping on qubit B over the table grid", 1e-12, weak_equivalence),
        _guarded("damping output is Hermitian with unit trace", 1e-12, hermitian_unit_trace),
        _guarded("damping output is positive", 1e-10, positivity),
    ]


def _single_qubit_weak(rho: np.ndarray, x: float):
    povm = measure.weak_povm(measure.POLAR_BASIS, x)
    ops = (povm.p_plus, povm.p_minus)
    return ops, sum(k @ rho @ k.conj().T for k in ops)


# -- dilation ----------------------------------------------------------------

def suite_dilation() -> list[Check]:
    rng = np.random.default_rng(SEED + 2)
    rhos = [states.random_density(4, rng) for _ in range(20)]

    def unitarity():
        for lam in LAMBDA_GRID:
            g = channels.dilation_gates(lam)
            for u in (g.v, g.w, g.u0, g.u1):
                yield np.max(np.abs(u.conj().T @ u - np.eye(2)))

    def reconstruction():
        for lam in LAMBDA_GRID:
            rebuilt = channels.kraus_from_dilation(channels.dilation_gates(lam))
            for got, want in zip(rebuilt, channels.phase_damping_kraus(lam).kraus_ops):
                yield np.max(np.abs(got - want))

    def equivalence():
        for rho in rhos:
            for lam in LAMBDA_GRID:
                kraus = channels.apply_channel(channels.phase_damping_kraus(lam), rho, 1)
                yield qmath.trace_distance(channels.apply_via_dilation(lam, rho, 1), kraus)

    return [
        _guarded("dilation gates are unitary", 1e-12, unitarity),
        _guarded("dilation gates rebuild the Kraus operators", 1e-12, reconstruction),
        _guarded("ancilla circuit equals Kraus application (20 states x 11 lambda)", 1e-12, equivalence),
    ]


# -- discord -----------------------------------------------------------------

def suite_discord(cfg: OptimizerConfig | None = None) -> list[Check]:
    cfg = cfg or OptimizerConfig()
    rng = np.random.default_rng(SEED + 3)
    route_states = [states.werner(z) for z in np.linspace(0.0, 1.0, 11)]
    route_states += [states.bell_diagonal(*states.random_bell_diagonal(rng)) for _ in range(20)]

    def route_equivalence():
        for rho in route_states:
            rep = discord.quantum_discord(rho, cfg)
            yield abs(rep.classical_corr - rep.post_mutual_info)

    sweeps = {}

    def sweep(name):
        if name not in sweeps:
            rho = reference_presets()[name]
            qd = discord.quantum_discord(rho, cfg).qd
            sweeps[name] = (rho, qd, [
                (discord.super_quantum_discord(rho, x, cfg, qd=qd),
                 discord.weak_quantum_discord(rho, x, cfg, qd=qd))
                for x in TABLE1_X
            ])
        return sweeps[name]

    def limits_zero():
        for name in reference_presets():
            _, _, rows = sweep(name)
            sq, wq = rows[0]
            yield abs(sq.sqd - sq.total_mutual_info)
            yield abs(wq.wqd)

    def limits_strong():
        for rho in reference_presets().values():
            qd = discord.quantum_discord(rho, cfg).qd
            yield abs(discord.super_quantum_discord(rho, 20.0, cfg, qd=qd).sqd - qd)
            yield abs(discord.weak_quantum_discord(rho, 20.0, cfg, qd=qd).wqd - qd)

    def ordering():
        for name in reference_presets():
            _, qd, rows = sweep(name)
            for sq, wq in rows:
                yield max(0.0, wq.wqd - qd, qd - sq.sqd)

    def monotonicity():
        for name in reference_presets():
            _, _, rows = sweep(name)
            for (s0, w0), (s1, w1) in zip(rows, rows[1:]):
                yield max(0.0, s1.sqd - s0.sqd, w0.wqd - w1.wqd)

    def optimum_at_polar_basis():
        b = measure.POLAR_BASIS
        for name in reference_presets():
            rho, _, rows = sweep(name)
            rep = discord.quantum_discord(rho, cfg)
            yield abs(rep.opt_value - discord.classical_correlation(rho, b))
            for sq, _ in rows:
                yield abs(sq.opt_value - discord.weak_classical_correlation(rho, b, sq.x))

    return [
        _guarded("QD routes agree (J vs post-measurement I)", 1e-6, route_equivalence),
        _guarded("SQD(0) = I and WQD(0) = 0", 1e-9, limits_zero),
        _guarded("SQD(20) and WQD(20) reach QD", 1e-5, limits_strong),
        _guarded("WQD <= QD <= SQD over the table grid", 1e-6, ordering),
        _guarded("SQD non-increasing, WQD non-decreasing in x", 1e-8, monotonicity),
        _guarded("optimized J and J_x equal their polar-basis values", 1e-9, optimum_at_polar_basis),
    ]


SUITES = {
    "povm": suite_povm,
    "channel": suite_channel,
    "dilation": suite_dilation,
    "discord": suite_discord,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for suite in SUITES.values() for c in suite()]
    return SUITES[name]()
