"""Global-best particle swarm minimizer with a reproducible random stream."""
import logging
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
from joblib import Parallel, delayed
from scipy import optimize

from scripts.errors import DomainError, ObjectiveDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SwarmConfig:
    particle_count: int = 40
    iteration_count: int = 150
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    lower_bound: float = -1.0
    upper_bound: float = 1.0
    seed: int = 0
    log_every: int = 25
    polish_iterations: int = 200

    def __post_init__(self):
        if self.particle_count < 2:
            raise DomainError(f"swarm needs at least 2 particles, got {self.particle_count}")
        if self.iteration_count < 0:
            raise DomainError(f"iteration count must be non-negative, got {self.iteration_count}")
        if self.polish_iterations < 0:
            raise DomainError(f"polish iterations must be non-negative, got {self.polish_iterations}")
        if not (np.isfinite(self.lower_bound) and np.isfinite(self.upper_bound)):
            raise DomainError("swarm bounds must be finite")
        if not self.lower_bound < self.upper_bound:
            raise DomainError(f"lower bound {self.lower_bound} must be below upper bound {self.upper_bound}")

    def with_seed(self, seed: int) -> "SwarmConfig":
        return replace(self, seed=int(seed))


@dataclass(frozen=True, eq=False)
class SwarmResult:
    best_point: np.ndarray
    best_value: float
    history: np.ndarray
    evaluation_count: int

    def __iter__(self):
        # unpacks as (best point, best value, history)
        return iter((self.best_point, self.best_value, self.history))


def _evaluate(objective: Callable[[np.ndarray], float], positions: np.ndarray, n_jobs: int) -> np.ndarray:
    if n_jobs == 1:
        values = [objective(x) for x in positions]
    else:
        values = Parallel(n_jobs=n_jobs, prefer="threads")(delayed(objective)(x) for x in positions)
    values = np.asarray(values, dtype=float)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise ObjectiveDomainError(f"objective returned {values[bad[0]]}", positions[bad[0]].tolist())
    return values


def pso_minimize(objective: Callable[[np.ndarray], float], dims: int, config: SwarmConfig,
                 initial: Optional[np.ndarray] = None, n_jobs: int = 1) -> SwarmResult:
    """Minimize ``objective`` over the box [lower_bound, upper_bound]^dims.

    ``initial`` seeds particle 0. ``history[k]`` is the best value after k iterations.
    """
    if dims < 1:
        raise DomainError(f"dimension must be at least 1, got {dims}")
    rng = np.random.default_rng(config.seed)
    lb, ub = config.lower_bound, config.upper_bound
    span = ub - lb
    shape = (config.particle_count, dims)

    positions = rng.uniform(lb, ub, size=shape)
    if initial is not None:
        positions[0] = np.clip(np.asarray(initial, dtype=float), lb, ub)
    velocities = rng.uniform(-span, span, size=shape)
    values = _evaluate(objective, positions, n_jobs)
    evaluations = config.particle_count

    personal_best = positions.copy()
    personal_value = values.copy()
    leader = int(np.argmin(personal_value))
    global_best = personal_best[leader].copy()
    global_value = float(personal_value[leader])
    history = [global_value]

    for it in range(1, config.iteration_count + 1):
        r1 = rng.uniform(size=shape)
        r2 = rng.uniform(size=shape)
        velocities = (config.inertia * velocities
                      + config.cognitive * r1 * (personal_best - positions)
                      + config.social * r2 * (global_best - positions))
        velocities = np.clip(velocities, -span, span)
        positions = np.clip(positions + velocities, lb, ub)
        values = _evaluate(objective, positions, n_jobs)
        evaluations += config.particle_count

        improved = values < personal_value
        personal_best[improved] = positions[improved]
        personal_value[improved] = values[improved]
        leader = int(np.argmin(personal_value))
        if personal_value[leader] < global_value:
            global_value = float(personal_value[leader])
            global_best = personal_best[leader].copy()
        history.append(global_value)
        if config.log_every and it % config.log_every == 0:
            logger.info(f"PSO iteration {it}/{config.iteration_count}: best {global_value:.6g}")

    return SwarmResult(best_point=global_best, best_value=global_value, history=np.asarray(history),
                       evaluation_count=evaluations)


def polish_minimum(objective: Callable[[np.ndarray], float], start, config: SwarmConfig) -> SwarmResult:
    """Bounded L-BFGS-B descent from the swarm's best point.

    The start is returned unchanged unless the descent strictly improves on it.
    ``history`` holds the start and final values.
    """
    x0 = np.clip(np.asarray(start, dtype=float), config.lower_bound, config.upper_bound)
    value0 = float(objective(x0))
    if config.polish_iterations == 0:
        return SwarmResult(best_point=x0, best_value=value0, history=np.array([value0, value0]), evaluation_count=1)
    bounds = [(config.lower_bound, config.upper_bound)] * x0.size
    found = optimize.minimize(objective, x0, method="L-BFGS-B", bounds=bounds,
                              options={"maxiter": config.polish_iterations})
    evaluations = int(found.nfev) + 1
    if np.isfinite(found.fun) and found.fun < value0:
        best_point, best_value = np.asarray(found.x, dtype=float), float(found.fun)
    else:
        best_point, best_value = x0, value0
    logger.info(f"Polish {value0:.6g} -> {best_value:.6g} in {evaluations} evaluations")
    return SwarmResult(best_point=best_point, best_value=best_value, history=np.array([value0, best_value]),
                       evaluation_count=evaluations)
