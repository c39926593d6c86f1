"""Fixed-step classical Runge-Kutta order-4 propagation with sampling.

The integrator advances all evolved blocks simultaneously, samples the
observable bundle every ``sample_every`` steps, and tracks conservation
diagnostics (trace error, hermiticity deviation, smallest eigenvalue of the
reported state).  Positivity is monitored, never enforced: projecting back
onto the positive cone would mask transcription errors in the equations of
motion.  A trace error beyond 1e-6 aborts the run with the offending time.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np

from . import observables as obs
from .hierarchy import BLOCK_NAMES, ChainParams, DriveMode, HierarchyState, RhsEvaluator
from .operators import all_pairs
from .pulse import GaussianPulse

TRACE_ABORT = 1e-6
POSITIVITY_WARN = -1e-7


class IntegrationError(RuntimeError):
    """Raised when a hard invariant breaks during propagation."""


@dataclass(frozen=True)
class IntegratorConfig:
    """Step size, final time and sampling stride (times in units of 1/gamma)."""

    dt: float = 1e-3
    t_end: float = 15.0
    sample_every: int = 10

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.t_end < 0:
            raise ValueError("t_end must be non-negative")
        if self.sample_every < 1:
            raise ValueError("sample_every must be at least 1")


@dataclass
class Diagnostics:
    """Conservation checks evaluated on a single state."""

    trace_err: float
    herm_err: float
    zero_block_trace: float
    min_eigenvalue: float


@dataclass
class Trajectory:
    """Sampled time series of populations, concurrences and diagnostics.

    ``pair_concurrence`` has one column per unordered qubit pair in the order
    given by ``pair_labels``; both average-concurrence normalizations are
    stored so either can be compared against published curves.
    """

    times: np.ndarray
    n_qubits: int
    pair_labels: list[tuple[int, int]]
    p_ground: np.ndarray
    p_one: np.ndarray
    p_two: np.ndarray
    p_total: np.ndarray
    p_excited: np.ndarray  # (n_samples, n_qubits)
    pair_concurrence: np.ndarray  # (n_samples, n_pairs)
    c_avg_all_pairs: np.ndarray
    c_avg_half_n: np.ndarray
    pulse_intensity: np.ndarray
    trace_err: np.ndarray
    herm_err: np.ndarray
    zero_block_trace: np.ndarray
    min_eigenvalue: np.ndarray
    extras: dict[str, np.ndarray] = field(default_factory=dict)
    states: list[np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self.times)

    def c_avg(self, norm: str = "all-pairs") -> np.ndarray:
        if norm == "all-pairs":
            return self.c_avg_all_pairs
        if norm == "half-n":
            return self.c_avg_half_n
        raise ValueError(f"unknown pair normalization {norm!r}")


def rk4_step(state: np.ndarray, t: float, dt: float, rhs: Callable) -> np.ndarray:
    """One classical RK4 update of the stacked block array.

    ``rhs(t, state)`` must return the derivative with the same shape.  The
    result is checked for overflow; non-finite entries abort.
    """
    k1 = rhs(t, state)
    k2 = rhs(t + 0.5 * dt, state + (0.5 * dt) * k1)
    k3 = rhs(t + 0.5 * dt, state + (0.5 * dt) * k2)
    k4 = rhs(t + dt, state + dt * k3)
    out = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(out)):
        raise IntegrationError(f"non-finite state entries after step at t={t:.6g}")
    return out


def diagnostics(state: HierarchyState, mode: DriveMode = DriveMode.TWO_PHOTON) -> Diagnostics:
    """Trace/hermiticity deviations of the unit-trace blocks, worst residual
    trace of the zero-trace blocks, and the smallest eigenvalue of the
    reported system state."""
    trace_err = 0.0
    herm_err = 0.0
    for name in ("rho00", "rho11", "rho_s"):
        m = state.block(name)
        trace_err = max(trace_err, abs(np.trace(m) - 1.0))
        herm_err = max(herm_err, float(np.abs(m - m.conj().T).max()))
    zero_trace = max(
        abs(np.trace(state.block(name))) for name in ("rho10", "rho20", "rho21")
    )
    reported = state.reported(mode)
    eigs = np.linalg.eigvalsh(0.5 * (reported + reported.conj().T))
    return Diagnostics(
        trace_err=float(trace_err),
        herm_err=herm_err,
        zero_block_trace=float(zero_trace),
        min_eigenvalue=float(eigs[0]),
    )


def integrate(
    state0: HierarchyState,
    params: ChainParams,
    pulse: GaussianPulse,
    mode: DriveMode,
    config: IntegratorConfig,
    observers: Sequence[Callable[[float, HierarchyState], Mapping[str, float]]] | None = None,
    rho21_hc: bool = True,
    intensity_gamma: float | None = None,
    keep_states: bool = False,
) -> Trajectory:
    """Propagate from t = 0 to t_end and sample the observable bundle.

    Samples land at t = k * dt * sample_every (the initial state is always
    the first sample).  Optional ``observers`` receive (t, state) at every
    sample and contribute extra named scalar series.  ``keep_states`` stores
    a copy of the reported block at each sample (small chains only).
    """
    if state0.n_qubits != params.n:
        raise ValueError("state and parameters disagree on the chain length")
    n_steps = int(round(config.t_end / config.dt))
    if abs(n_steps * config.dt - config.t_end) > 1e-9 * max(1.0, config.t_end):
        n_steps = int(np.ceil(config.t_end / config.dt))

    rhs = RhsEvaluator(params, pulse, mode, rho21_hc=rho21_hc)
    n_blocks = mode.n_blocks
    work = state0.blocks[:n_blocks].copy()
    dtype = rhs.operator_dtype(work)
    if dtype is np.float64:
        work = np.ascontiguousarray(work.real)
    rhs.cast(dtype)

    frozen = state0.blocks[n_blocks:].copy()  # blocks the mode leaves untouched

    # the published pulse curves use the first qubit's right-going rate
    gamma_ref = float(params.gamma_r[0]) if intensity_gamma is None else intensity_gamma

    times: list[float] = []
    rows: list[dict] = []
    extra_rows: list[dict[str, float]] = []
    states: list[np.ndarray] = []

    def full_state() -> HierarchyState:
        blocks = np.zeros((len(BLOCK_NAMES),) + work.shape[1:], dtype=complex)
        blocks[:n_blocks] = work
        blocks[n_blocks:] = frozen
        return HierarchyState(blocks)

    def sample(t: float) -> None:
        state = full_state()
        rho = state.reported(mode)
        pops = obs.populations(rho, params.n)
        pair_c = obs.pair_concurrences(rho, params.n)
        diag = diagnostics(state, mode)
        if diag.trace_err > TRACE_ABORT:
            raise IntegrationError(
                f"trace deviation {diag.trace_err:.3e} exceeds {TRACE_ABORT:.0e} "
                f"at t={t:.6g}"
            )
        intensity = 0.0 if mode is DriveMode.NONE else float(
            pulse.drive_intensity(gamma_ref, t)
        )
        times.append(t)
        rows.append(
            dict(
                p_ground=pops.p_ground,
                p_one=pops.p_one,
                p_two=pops.p_two,
                p_total=pops.p_total,
                p_excited=np.array(pops.p_excited),
                pair_c=pair_c,
                c_all=obs.average_concurrence(pair_c, params.n, "all-pairs"),
                c_half=obs.average_concurrence(pair_c, params.n, "half-n"),
                intensity=intensity,
                trace_err=diag.trace_err,
                herm_err=diag.herm_err,
                zero_tr=diag.zero_block_trace,
                min_eig=diag.min_eigenvalue,
            )
        )
        if observers:
            merged: dict[str, float] = {}
            for fn in observers:
                merged.update(fn(t, state))
            extra_rows.append(merged)
        if keep_states:
            states.append(rho.copy())

    sample(0.0)
    for step in range(n_steps):
        t = step * config.dt
        work = rk4_step(work, t, config.dt, rhs)
        if (step + 1) % config.sample_every == 0:
            sample((step + 1) * config.dt)

    traj = Trajectory(
        times=np.array(times),
        n_qubits=params.n,
        pair_labels=all_pairs(params.n),
        p_ground=np.array([r["p_ground"] for r in rows]),
        p_one=np.array([r["p_one"] for r in rows]),
        p_two=np.array([r["p_two"] for r in rows]),
        p_total=np.array([r["p_total"] for r in rows]),
        p_excited=np.array([r["p_excited"] for r in rows]),
        pair_concurrence=np.array([r["pair_c"] for r in rows]).reshape(len(rows), -1),
        c_avg_all_pairs=np.array([r["c_all"] for r in rows]),
        c_avg_half_n=np.array([r["c_half"] for r in rows]),
        pulse_intensity=np.array([r["intensity"] for r in rows]),
        trace_err=np.array([r["trace_err"] for r in rows]),
        herm_err=np.array([r["herm_err"] for r in rows]),
        zero_block_trace=np.array([r["zero_tr"] for r in rows]),
        min_eigenvalue=np.array([r["min_eig"] for r in rows]),
        states=states if keep_states else None,
    )
    if extra_rows:
        keys = {k for row in extra_rows for k in row}
        traj.extras = {
            k: np.array([row.get(k, np.nan) for row in extra_rows]) for k in keys
        }
    worst_min_eig = traj.min_eigenvalue.min()
    if worst_min_eig < POSITIVITY_WARN:
        warnings.warn(
            f"reported state dipped below positivity tolerance "
            f"(min eigenvalue {worst_min_eig:.3e})",
            RuntimeWarning,
            stacklevel=2,
        )
    return traj
