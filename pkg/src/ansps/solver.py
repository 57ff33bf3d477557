"""Projected subgradient loop with spectral scaling, nonmonotone step
acceptance, and an adaptive sample size.

One iteration, from a feasible point ``x`` with coefficient ``zeta`` and
row subset of size ``N_k``:

1. Take a subgradient on the subset, scale it to length at most 1, and
   set the direction ``p = -zeta * v``.
2. Pick a step size: 1 at the first iteration, afterwards the largest
   candidate in ``(1/k, min(1, c2/k)]`` whose trial value beats the
   nonmonotone reference by ``eta * a * ||p||^2``, falling back to
   ``1/k`` when none does.
3. Move, project back onto the region, and measure the step length
   ``theta`` actually taken.
4. Update the spectral coefficient from the point/subgradient
   differences on the same subset (skipped at the first iteration,
   where there is no previous pair).
5. Grow the subset if ``theta`` dropped below the accuracy still
   missing at the current size.
6. Evaluate the objective on the (possibly larger) subset and update
   the nonmonotone reference.

The loop stops at the iteration cap or once the scalar-product budget is
spent, then records a terminal row for the final point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hinge import HingeOracle, HingeProblem
from .linesearch import NONMONOTONE_RULES, NonmonotoneState, candidate_steps, line_search
from .regions import project, sample_point
from .sampling import STRATEGIES, SampleSchedule, _ceil
from .spectral import RULES, SpectralState, pair_differences, scale_subgradient, search_direction
from .trace import RunTrace, TraceRow

X0_MODES = ("random", "zero", "given")


class NumericError(RuntimeError):
    """A non-finite quantity surfaced mid-run; ``trace`` holds the rows
    completed before the abort."""

    def __init__(self, message: str, trace: RunTrace):
        super().__init__(message)
        self.trace = trace


@dataclass
class SolverConfig:
    """Run parameters.

    Parameters
    ----------
    strategy : {'ansps', 'heur', 'full'}
        Sample-size schedule.
    spectral : {'bb1', 'bb2', 'abb', 'abbmin', 'const'}
        Coefficient rule.
    nonmonotone : {'max', 'cca', 'mon', 'ada'}
        Reference-value rule for step acceptance.
    c2 : float
        Cap scale for candidate steps; candidates live in
        ``(1/k, min(1, c2/k)]``.
    eta : float
        Sufficient-decrease weight, in (0, 1).
    m : int
        Candidate count per line search.
    r : float
        Minimum sample growth factor, > 1.
    n0_frac : float
        Starting sample fraction of the pool, in (0, 1].
    zeta_lo, zeta_hi, zeta0 : float
        Coefficient clamp bounds and start value.
    seed : int
        Drives the data permutation and the random start point.
    max_iterations : int
        Iteration cap.
    fev_budget : int, optional
        Stop once the oracle meter reaches this many scalar products
        (checked between iterations).
    x0_mode : {'random', 'zero', 'given'}
        Start point: random feasible draw, projected origin, or the
        supplied ``x0`` (projected).
    fresh_resample : bool
        Redraw the permutation at each growth instead of extending it.
    f_full_stride : int
        Record the diagnostic full-data objective every this many
        iterations (plus always on the terminal row).
    keep_iterates : bool
        Keep every iterate on the trace (memory heavy; for tests).
    """

    strategy: str = "ansps"
    spectral: str = "abbmin"
    nonmonotone: str = "ada"
    c2: float = 100.0
    eta: float = 1e-4
    m: int = 2
    r: float = 1.1
    n0_frac: float = 0.1
    zeta_lo: float = 1e-4
    zeta_hi: float = 1e4
    zeta0: float = 1.0
    seed: int = 0
    max_iterations: int = 1000
    fev_budget: int | None = None
    x0_mode: str = "random"
    x0: np.ndarray | None = None
    fresh_resample: bool = False
    f_full_stride: int = 10
    keep_iterates: bool = False

    def validate(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {self.strategy!r}")
        if self.spectral not in RULES:
            raise ValueError(f"spectral must be one of {RULES}, got {self.spectral!r}")
        if self.nonmonotone not in NONMONOTONE_RULES:
            raise ValueError(
                f"nonmonotone must be one of {NONMONOTONE_RULES}, got {self.nonmonotone!r}"
            )
        if not self.c2 > 0:
            raise ValueError(f"c2 must be positive, got {self.c2}")
        if not 0 < self.eta < 1:
            raise ValueError(f"eta must lie in (0, 1), got {self.eta}")
        if not (isinstance(self.m, int) and self.m >= 1):
            raise ValueError(f"m must be a positive integer, got {self.m!r}")
        if not self.r > 1:
            raise ValueError(f"r must exceed 1, got {self.r}")
        if not 0 < self.n0_frac <= 1:
            raise ValueError(f"n0_frac must lie in (0, 1], got {self.n0_frac}")
        if not 0 < self.zeta_lo <= self.zeta_hi:
            raise ValueError(f"need 0 < zeta_lo <= zeta_hi, got {self.zeta_lo}, {self.zeta_hi}")
        if not self.zeta_lo <= self.zeta0 <= self.zeta_hi:
            raise ValueError(f"zeta0 must lie in [zeta_lo, zeta_hi], got {self.zeta0}")
        if self.max_iterations < 0:
            raise ValueError(f"max_iterations must be nonnegative, got {self.max_iterations}")
        if self.fev_budget is not None and self.fev_budget < 1:
            raise ValueError(f"fev_budget must be positive, got {self.fev_budget}")
        if self.x0_mode not in X0_MODES:
            raise ValueError(f"x0_mode must be one of {X0_MODES}, got {self.x0_mode!r}")
        if self.x0_mode == "given" and self.x0 is None:
            raise ValueError("x0_mode 'given' needs an x0")
        if self.f_full_stride < 1:
            raise ValueError(f"f_full_stride must be positive, got {self.f_full_stride}")


@dataclass
class SolverState:
    """Everything a step touches; tests can drive :func:`step` directly."""

    problem: HingeProblem
    config: SolverConfig
    oracle: HingeOracle
    schedule: SampleSchedule
    nonmono: NonmonotoneState
    spectral: SpectralState
    x: np.ndarray
    k: int = 0
    rows: list = field(default_factory=list)
    iterates: list | None = None
    # diagnostics from the most recent step
    last_scale: float = np.nan
    last_direction: np.ndarray | None = None
    last_alpha: float = np.nan
    last_theta: float = np.nan


def init_state(problem: HingeProblem, config: SolverConfig) -> SolverState:
    """Build the starting state: permutation, start point, first
    objective value. Draw order off the seed is fixed (permutation, then
    start point), so runs are reproducible."""
    config.validate()
    rng = np.random.default_rng(config.seed)
    n_total = problem.n_samples
    n_start = min(n_total, max(1, _ceil(config.n0_frac * n_total)))
    schedule = SampleSchedule(
        n_total,
        n_start,
        strategy=config.strategy,
        growth=config.r,
        rng=rng,
        fresh_resample=config.fresh_resample,
    )
    if config.x0_mode == "random":
        x0 = sample_point(problem.region, problem.n_features, rng)
    elif config.x0_mode == "zero":
        x0 = project(problem.region, np.zeros(problem.n_features))
    else:
        x0 = np.asarray(config.x0, dtype=float)
        if x0.shape != (problem.n_features,):
            raise ValueError(f"x0 must have shape ({problem.n_features},), got {x0.shape}")
        x0 = project(problem.region, x0)

    oracle = HingeOracle(problem)
    nonmono = NonmonotoneState(config.nonmonotone)
    nonmono.start(oracle.value(x0, schedule.indices))
    spectral = SpectralState(config.spectral, config.zeta0, config.zeta_lo, config.zeta_hi)
    iterates = [x0.copy()] if config.keep_iterates else None
    return SolverState(
        problem=problem,
        config=config,
        oracle=oracle,
        schedule=schedule,
        nonmono=nonmono,
        spectral=spectral,
        x=x0,
        iterates=iterates,
    )


def _partial_trace(state: SolverState) -> RunTrace:
    return RunTrace(
        rows=list(state.rows),
        x_final=state.x.copy(),
        n_total=state.schedule.n_total,
        iterates=state.iterates,
    )


def step(state: SolverState) -> SolverState:
    """Run one iteration and append its trace row."""
    cfg = state.config
    k = state.k
    x = state.x
    oracle = state.oracle
    indices = state.schedule.indices
    n_k = state.schedule.size
    zeta_k = state.spectral.zeta
    f_k = state.nonmono.f_current

    f_full = oracle.full_value(x) if k % cfg.f_full_stride == 0 else None

    g = oracle.subgradient(x, indices)
    scale, v = scale_subgradient(g)
    p = search_direction(zeta_k, v)

    if k == 0:
        alpha = 1.0
    else:
        alpha, _ = line_search(
            lambda t: oracle.value(t, indices),
            x,
            p,
            state.nonmono.reference,
            cfg.eta,
            candidate_steps(k, cfg.c2, cfg.m),
            k,
        )

    x_next = project(state.problem.region, x + alpha * p)
    theta = float(np.linalg.norm(x_next - x))

    if k >= 1:
        # same-subset subgradient at the new point; the pair differences
        # then reflect the objective, not the sampling
        g_next = oracle.subgradient(x_next, indices)
        state.spectral.update(*pair_differences(x, x_next, g, g_next))

    state.schedule.advance(theta)
    f_next = oracle.value(x_next, state.schedule.indices)
    state.nonmono.update(f_next)

    if not (math.isfinite(f_next) and math.isfinite(theta)):
        raise NumericError(
            f"non-finite value at iteration {k}: f={f_next}, step length={theta}",
            _partial_trace(state),
        )

    state.rows.append(
        TraceRow(
            k=k,
            n_k=n_k,
            alpha=alpha,
            zeta=zeta_k,
            theta=theta,
            fev_cum=oracle.fev,
            f_saa=f_k,
            f_full=f_full,
        )
    )
    state.x = x_next
    state.k = k + 1
    state.last_scale = scale
    state.last_direction = p
    state.last_alpha = alpha
    state.last_theta = theta
    if state.iterates is not None:
        state.iterates.append(x_next.copy())
    return state


def finalize(state: SolverState) -> RunTrace:
    """Append the terminal row (no step, full-data value always on) and
    package the trace."""
    state.rows.append(
        TraceRow(
            k=state.k,
            n_k=state.schedule.size,
            alpha=None,
            zeta=state.spectral.zeta,
            theta=None,
            fev_cum=state.oracle.fev,
            f_saa=state.nonmono.f_current,
            f_full=state.oracle.full_value(state.x),
        )
    )
    return _partial_trace(state)


def run(problem: HingeProblem, config: SolverConfig) -> RunTrace:
    """Run to the iteration cap or scalar-product budget and return the
    trace; a run of K iterations yields K+1 rows."""
    state = init_state(problem, config)
    while state.k < config.max_iterations and (
        config.fev_budget is None or state.oracle.fev < config.fev_budget
    ):
        step(state)
    return finalize(state)


@dataclass(frozen=True)
class ComplexityReport:
    """How fast the schedule reached the whole pool, against the a
    priori iteration cap for that event."""

    iteration_cap: int
    first_full_iteration: int | None

    @property
    def attained(self) -> bool:
        return self.first_full_iteration is not None

    @property
    def within_cap(self) -> bool:
        return self.attained and self.first_full_iteration <= self.iteration_cap


def complexity_report(trace: RunTrace, config: SolverConfig) -> ComplexityReport:
    """Bound on the iteration where the sample hits the whole pool.

    The cap is ``(ceil(c2 * zeta_hi * N) + 1) * log(N / N_0) / log(r)``
    with ``N`` the pool size and ``N_0`` the starting sample size; the
    observed iteration is read off the trace.
    """
    if trace.n_total is None:
        raise ValueError("trace has no pool size; complexity needs a trace from run()")
    if not trace.rows:
        raise ValueError("empty trace")
    n_total = trace.n_total
    n_start = trace.rows[0].n_k
    ratio = math.log(n_total / n_start) / math.log(config.r)
    cap = math.ceil((math.ceil(config.c2 * config.zeta_hi * n_total) + 1) * ratio)
    first_full = None
    for row in trace.rows:
        if row.n_k == n_total:
            first_full = row.k
            break
    return ComplexityReport(iteration_cap=cap, first_full_iteration=first_full)
