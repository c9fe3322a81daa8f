"""Multistart constrained minimax search over the cut-configuration space.

The search minimizes F(C) = max(r1..r6) subject to the structural
inequalities, via projected-gradient descent on a quadratic-penalty
objective with central-difference gradients.  Restarts evolve in lockstep as
rows of a numpy batch; rows never interact, so results are identical to
running each restart alone, and a run is fully deterministic given its seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .cutmodel import CUT_NAMES, VARIABLE_NAMES, Configuration, _system

__all__ = [
    "OptimizerSettings",
    "RestartRecord",
    "OptimizerRun",
    "objective",
    "central_diff_grad",
    "local_descent",
    "minimize_max_ratio",
    "config_to_vector",
    "vector_to_config",
]

_N_CUTS = len(CUT_NAMES)
_DIM = len(VARIABLE_NAMES)
_MU_IDX = _N_CUTS
_FRAC_START = _N_CUTS + 3  # pi1..pi6 then lambda1..lambda6


@dataclass(frozen=True)
class OptimizerSettings:
    """Knobs of the worst-case search.

    pi and lam are separation parameters, not search variables.  fractions=5
    pins pi6/lambda6 at zero, matching the published variable count;
    include_vertical=False drops r5/r6 (and the separation constraints)
    entirely.  extra_starts are injected verbatim ahead of the random starts.
    """

    pi: float = 1e-5
    lam: float = 1e-5
    restarts: int = 1000
    seed: int = 0
    h: float = 1e-5
    max_iters: int = 600
    escalate_every: int = 100
    feasibility_iters: int = 120
    penalty_init: float = 10.0
    penalty_growth: float = 10.0
    penalty_max: float = 1e6
    stationarity_tol: float = 1e-6
    opt_floor: float = 0.1
    feas_tol: float = 1e-6
    mu_min: float = 1e-6
    fractions: int = 6
    include_vertical: bool = True
    extra_starts: tuple[Configuration, ...] = ()

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("finite-difference spacing h must be positive")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if not 0.0 < self.pi <= 0.5:
            raise ValueError("pi must lie in (0, 1/2]")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.fractions not in (5, 6):
            raise ValueError("fractions must be 5 or 6")


@dataclass(frozen=True)
class RestartRecord:
    index: int
    start: Configuration
    value: float
    iterations: int
    converged: bool
    feasible: bool


@dataclass(frozen=True)
class OptimizerRun:
    """Outcome of a multistart search: the best feasible local minimum found."""

    best_config: Configuration
    best_value: float
    records: tuple[RestartRecord, ...]
    settings: OptimizerSettings

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(r.value for r in self.records)


def _bounds(settings: OptimizerSettings) -> tuple[np.ndarray, np.ndarray]:
    lo = np.zeros(_DIM)
    hi = np.ones(_DIM)
    lo[_MU_IDX] = settings.mu_min
    if settings.fractions == 5 or not settings.include_vertical:
        hi[_FRAC_START + 5] = 0.0  # pi6
        hi[_FRAC_START + 11] = 0.0  # lambda6
    if not settings.include_vertical:
        hi[_FRAC_START:] = 0.0
    return lo, hi


def config_to_vector(config: Configuration) -> np.ndarray:
    x = np.zeros(_DIM)
    x[:_N_CUTS] = config.cuts
    x[_N_CUTS:_N_CUTS + 3] = (config.mu, config.nu, config.xi)
    if config.pi_fracs is not None:
        x[_FRAC_START:_FRAC_START + 6] = config.pi_fracs
    if config.lam_fracs is not None:
        x[_FRAC_START + 6:_FRAC_START + 12] = config.lam_fracs
    return x


def vector_to_config(x: np.ndarray, settings: OptimizerSettings | None = None) -> Configuration:
    pi = settings.pi if settings is not None else None
    lam = settings.lam if settings is not None else None
    return Configuration(
        cuts=tuple(float(v) for v in x[:_N_CUTS]),
        mu=float(x[_MU_IDX]),
        nu=float(x[_MU_IDX + 1]),
        xi=float(x[_MU_IDX + 2]),
        pi_fracs=tuple(float(v) for v in x[_FRAC_START:_FRAC_START + 6]),
        lam_fracs=tuple(float(v) for v in x[_FRAC_START + 6:_FRAC_START + 12]),
        pi=pi,
        lam=lam,
    )


def _evaluate(X: np.ndarray, settings: OptimizerSettings):
    """Batched (ratio_rows, max_ratio, squared_violation, worst_slack, opt)."""
    cols = {name: X[:, i] for i, name in enumerate(VARIABLE_NAMES)}
    sys = _system(cols, settings.pi, settings.lam)
    n_ratio = 6 if settings.include_vertical else 4
    ratios = np.stack([np.broadcast_to(sys[f"r{i}"], X.shape[:1])
                       for i in range(1, n_ratio + 1)], axis=1)
    rmax = ratios.max(axis=1)
    slacks = sys["slacks"][:10] if not settings.include_vertical else sys["slacks"]
    viol = sum(np.square(np.minimum(s, 0.0)) for s in slacks)
    opt = sys["opt"]
    viol = viol + np.square(np.minimum(opt - settings.opt_floor, 0.0))
    worst = np.minimum.reduce([np.minimum(np.broadcast_to(s, opt.shape), 0.0)
                               for s in slacks])
    worst = np.minimum(worst, np.minimum(opt - settings.opt_floor, 0.0))
    return ratios, rmax, viol, worst, opt


def _smoothed_max(ratios: np.ndarray, tau: np.ndarray) -> np.ndarray:
    """tau*log(sum exp(r/tau)) rowwise; tau == 0 rows fall back to the true max.

    The smoothed value dominates the max by at most tau*log(#ratios), and its
    gradient blends the near-active ratios, which kills the subgradient
    zigzag at balanced minimax points.
    """
    rmax = ratios.max(axis=1)
    safe_tau = np.where(tau > 0, tau, 1.0)
    spread = np.exp((ratios - rmax[:, None]) / safe_tau[:, None])
    lse = rmax + safe_tau * np.log(spread.sum(axis=1))
    return np.where(tau > 0, lse, rmax)


def _grad(F: Callable[[np.ndarray], np.ndarray], X, h, lo, hi) -> np.ndarray:
    """Central differences with one-sided fallback at the box boundary.

    h may be a scalar or a per-row vector.  Step arms shrink to the available
    room on each side; coordinates pinned by equal bounds get a zero gradient
    component.
    """
    rows, dim = X.shape
    harm = (np.broadcast_to(np.asarray(h, dtype=float), (rows,)) / 2.0)[:, None]
    hp = np.minimum(hi - X, harm)
    hm = np.minimum(X - lo, harm)
    idx = np.arange(dim)
    Xp = np.repeat(X[None, :, :], dim, axis=0)
    Xp[idx, :, idx] += hp.T
    Xm = np.repeat(X[None, :, :], dim, axis=0)
    Xm[idx, :, idx] -= hm.T
    both = np.concatenate([Xp.reshape(dim * rows, dim), Xm.reshape(dim * rows, dim)])
    vals = F(both)
    fp = vals[:dim * rows].reshape(dim, rows)
    fm = vals[dim * rows:].reshape(dim, rows)
    span = (hp + hm).T
    g = np.where(span > 0, (fp - fm) / np.where(span > 0, span, 1.0), 0.0)
    return g.T


_TAU_START = 0.05
_TAU_SHRINK = 5.0
_TAU_FLOOR = 2e-4  # below this the exact max takes over
_SWEEP_STEPS = (0.6, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001, 0.0003)


def _pattern_sweep(X, fcur, w, F_acc, lo, hi, active, rounds=3):
    """Axis-aligned sweeps: per coordinate, try a ladder of +/- moves and keep
    the best strict improvement; repeat while a round still helps.  Exact-
    objective monotone; cuts through the kinks where gradient steps zigzag."""
    rows, dim = X.shape
    deltas = np.array([s * sgn for s in _SWEEP_STEPS for sgn in (1.0, -1.0)])
    for _ in range(rounds):
        improved = np.zeros(rows, bool)
        for j in range(dim):
            if lo[j] >= hi[j]:
                continue
            cand = np.clip(X[:, j][:, None] + deltas[None, :], lo[j], hi[j])
            trials = np.repeat(X[:, None, :], len(deltas), axis=1)
            trials[:, :, j] = cand
            vals = F_acc(trials.reshape(rows * len(deltas), dim),
                         np.repeat(w, len(deltas))).reshape(rows, len(deltas))
            best = vals.argmin(axis=1)
            bestval = vals[np.arange(rows), best]
            take = active & (bestval < fcur - 1e-12)
            X[take, j] = cand[take, best[take]]
            fcur = np.where(take, bestval, fcur)
            improved |= take
        active = active & improved
        if not active.any():
            break
    return X, fcur


def _descent(
    X: np.ndarray,
    objectives,
    w: np.ndarray,
    settings: OptimizerSettings,
    lo: np.ndarray,
    hi: np.ndarray,
    max_iters: int,
    escalate: bool,
    smooth: bool,
    sweep: bool = True,
):
    """Lockstep projected-gradient descent with backtracking, one row per restart.

    `objectives` is a pair (direction_objective(X, w, tau), accept_objective
    (X, w)).  Directions come from the possibly-smoothed objective while
    steps are only accepted when the exact one strictly decreases, so every
    accepted iterate lowers the true penalized objective.  A row whose line
    search fails cools its smoothing temperature and retries; once exact
    (tau=0) such a row is finished.  escalate=True grows the penalty weight
    of rows that linger or go stationary while still infeasible.
    Returns (X, w, converged, iterations).
    """
    F_dir, F_acc = objectives
    rows = X.shape[0]
    tau = np.full(rows, _TAU_START if smooth else 0.0)
    fcur = F_acc(X, w)
    step = np.full(rows, 0.25)
    converged = np.zeros(rows, bool)
    done = np.zeros(rows, bool)
    iters = np.zeros(rows, int)
    stage_len = max(1, max_iters // 8)  # scheduled cooling: exact by mid-run
    for it in range(max_iters):
        if done.all():
            break
        if smooth and it > 0 and it % stage_len == 0:
            hot = ~done & (tau > 0.0)
            tau = np.where(hot, np.where(tau / _TAU_SHRINK < _TAU_FLOOR,
                                         0.0, tau / _TAU_SHRINK), tau)
            step = np.where(hot, 0.25, step)
        if escalate and it > 0 and it % settings.escalate_every == 0:
            # periodic escalation keeps residual violations shrinking even when
            # stationarity is never formally reached on the kinked objective
            _, _, viol, _, _ = _evaluate(X, settings)
            bump = ~done & (viol > settings.feas_tol ** 2) & (w < settings.penalty_max)
            if bump.any():
                w = np.where(bump, np.minimum(w * settings.penalty_growth,
                                              settings.penalty_max), w)
                fcur = np.where(bump, F_acc(X, w), fcur)
                step = np.where(bump, 0.25, step)
        g = _grad(lambda P: F_dir(P, np.tile(w, 2 * _DIM), np.tile(tau, 2 * _DIM)),
                  X, settings.h, lo, hi)
        at_lo = (X <= lo + 1e-14) & (g > 0)
        at_hi = (X >= hi - 1e-14) & (g < 0)
        gproj = np.where(at_lo | at_hi, 0.0, g)
        # stationarity only counts against the exact objective's gradient
        exact = tau <= 0.0
        stationary = exact & (np.abs(gproj).max(axis=1) < settings.stationarity_tol)
        if escalate and (stationary & ~done).any():
            _, _, viol, _, _ = _evaluate(X, settings)
            needs_more = stationary & ~done & (viol > settings.feas_tol ** 2) \
                & (w < settings.penalty_max)
            if needs_more.any():
                w = np.where(needs_more, np.minimum(w * settings.penalty_growth,
                                                    settings.penalty_max), w)
                fcur = np.where(needs_more, F_acc(X, w), fcur)
                step = np.where(needs_more, 0.25, step)
                stationary &= ~needs_more
        newly = stationary & ~done
        converged |= newly
        done |= newly
        active = ~done
        if not active.any():
            break
        iters += active
        t = step.copy()
        pending = active.copy()
        gsq = np.square(gproj).sum(axis=1)
        for _ in range(40):
            if not pending.any():
                break
            Xc = np.clip(X - (t * pending)[:, None] * gproj, lo, hi)
            fc = F_acc(Xc, w)
            good = pending & (fc < fcur - np.maximum(1e-4 * t * gsq, 1e-14))
            X[good] = Xc[good]
            fcur = np.where(good, fc, fcur)
            step = np.where(good, np.minimum(t * 2.0, 1.0), step)
            pending &= ~good
            t = np.where(pending, t * 0.5, t)
        # no decrease along this direction at any step: cool the smoothing;
        # rows already using the exact direction are finished
        cool = pending & ~exact
        if cool.any():
            tau = np.where(cool, np.where(tau / _TAU_SHRINK < _TAU_FLOOR,
                                          0.0, tau / _TAU_SHRINK), tau)
            step = np.where(cool, 0.25, step)
        if sweep and (it % 20 == 19 or (pending & exact).any()):
            before = fcur.copy()
            X, fcur = _pattern_sweep(X, fcur, w,
                                     lambda P, ww: F_acc(P, ww), lo, hi, ~done)
            revived = (pending & exact) & (fcur < before - 1e-12)
            pending &= ~revived
            step = np.where(revived, 0.25, step)
        done |= pending & exact
    return X, w, converged, iters


def _penalized(settings: OptimizerSettings):
    def F_dir(X, w, tau):
        ratios, _, viol, _, _ = _evaluate(X, settings)
        return _smoothed_max(ratios, tau) + w * viol

    def F_acc(X, w):
        _, rmax, viol, _, _ = _evaluate(X, settings)
        return rmax + w * viol

    return F_dir, F_acc


def _violation_only(settings: OptimizerSettings):
    def F(X, w, tau=None):
        _, _, viol, _, _ = _evaluate(X, settings)
        return viol
    return F, F


def objective(config: Configuration, settings: OptimizerSettings, weight: float | None = None) -> float:
    """Penalized minimax objective at one configuration.

    max(r1..r6) plus weight * (sum of squared constraint violations and the
    squared shortfall below the opt floor).  The weight defaults to the
    schedule's initial value; a feasible configuration pays no penalty.
    """
    w = settings.penalty_init if weight is None else weight
    x = config_to_vector(config)[None, :]
    _, rmax, viol, _, _ = _evaluate(x, settings)
    return float(rmax[0] + w * viol[0])


def central_diff_grad(
    f: Callable[[Configuration], float],
    config: Configuration,
    h: float = 1e-5,
    settings: OptimizerSettings | None = None,
) -> np.ndarray:
    """Symmetric-difference gradient of f over the flat variable vector.

    Evaluation points are clipped into the variable box, falling back to a
    one-sided difference against the boundary.
    """
    settings = settings if settings is not None else OptimizerSettings(restarts=1)
    lo, hi = _bounds(settings)
    x = config_to_vector(config)

    def F(P):
        return np.array([f(vector_to_config(row, settings)) for row in P])

    return _grad(F, x[None, :], h, lo, hi)[0]


def local_descent(
    start: Configuration, settings: OptimizerSettings
) -> tuple[Configuration, float, bool]:
    """Polish one starting point; returns (point, max-ratio value, converged)."""
    run = minimize_max_ratio(replace(settings, restarts=1, extra_starts=(start,)),
                             _skip_random=True)
    rec = run.records[0]
    return run.best_config, rec.value, rec.converged


def _sample_starts(settings: OptimizerSettings, lo, hi) -> np.ndarray:
    """One candidate per restart: feasible if found within 100 draws, else the
    least-violating draw seen.  Restart i's draw sequence depends only on
    (seed, i), so a longer run extends a shorter one."""
    rngs = [np.random.default_rng(ss)
            for ss in np.random.SeedSequence(settings.seed).spawn(settings.restarts)]
    X = np.empty((settings.restarts, _DIM))
    best_viol = np.full(settings.restarts, np.inf)
    open_rows = np.arange(settings.restarts)
    for _ in range(100):
        if open_rows.size == 0:
            break
        draws = lo + np.stack([rngs[i].random(_DIM) for i in open_rows]) * (hi - lo)
        _, _, viol, worst, _ = _evaluate(draws, settings)
        better = viol < best_viol[open_rows]
        X[open_rows[better]] = draws[better]
        best_viol[open_rows[better]] = viol[better]
        open_rows = open_rows[worst < -settings.feas_tol]
    return X


def minimize_max_ratio(settings: OptimizerSettings, _skip_random: bool = False) -> OptimizerRun:
    """Multistart search: random feasible starts, local descent from each, min.

    Deterministic for fixed settings: restarts evolve independently (row i of
    a larger run equals row i of a smaller one), and the reduction takes the
    smallest value, ties to the earlier restart.
    """
    lo, hi = _bounds(settings)
    blocks = [config_to_vector(c)[None, :] for c in settings.extra_starts]
    if not _skip_random:
        blocks.append(_sample_starts(settings, lo, hi))
    if not blocks:
        raise ValueError("no starting points: need extra_starts or random restarts")
    X0 = np.clip(np.concatenate(blocks, axis=0), lo, hi)
    starts = [vector_to_config(row, settings) for row in X0]

    w0 = np.ones(X0.shape[0])
    X1, _, _, it0 = _descent(X0.copy(), _violation_only(settings), w0, settings,
                             lo, hi, settings.feasibility_iters,
                             escalate=False, smooth=False, sweep=False)
    w = np.full(X1.shape[0], settings.penalty_init)
    X2, w, conv, it1 = _descent(X1, _penalized(settings), w, settings,
                                lo, hi, settings.max_iters,
                                escalate=True, smooth=True)
    # restoration: rows that stopped while slightly infeasible get a short
    # maximum-weight polish so the reported points satisfy the constraints
    _, _, viol2, _, _ = _evaluate(X2, settings)
    if (viol2 > settings.feas_tol ** 2).any():
        wmax = np.full(X2.shape[0], settings.penalty_max)
        X2, _, _, it2 = _descent(X2, _penalized(settings), wmax, settings,
                                 lo, hi, 80, escalate=False, smooth=False)
        it1 = it1 + it2

    _, rmax, _, worst, _ = _evaluate(X2, settings)
    feasible = worst >= -settings.feas_tol
    records = tuple(
        RestartRecord(
            index=i,
            start=starts[i],
            value=float(rmax[i]),
            iterations=int(it0[i] + it1[i]),
            converged=bool(conv[i]),
            feasible=bool(feasible[i]),
        )
        for i in range(X2.shape[0])
    )
    order = np.where(feasible, rmax, np.inf)
    best_i = int(np.argmin(order))
    if not feasible.any():  # all penalty phases failed; surface the least-bad row
        best_i = int(np.argmin(rmax))
    return OptimizerRun(
        best_config=vector_to_config(X2[best_i], settings),
        best_value=float(rmax[best_i]),
        records=records,
        settings=settings,
    )
