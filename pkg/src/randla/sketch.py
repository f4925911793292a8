"""Gaussian random projection: dimension bounds and norm-preservation runs.

The projection of a point set A (rows are points) is (1/sqrt(k)) A R^T with
R a k x d standard-normal matrix, which preserves squared 2-norms in
expectation. The minimum target dimension uses the natural-log bound
k > C ln(n) / eps^2 with C defaulting to 24.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from randla.linalg import as_matrix, gaussian_matrix
from randla.rng import RandomStream, check_seed, derive_seed


@dataclass(frozen=True)
class JlParams:
    """Inputs to the minimum-dimension bound."""

    n_points: int
    epsilon: float
    constant: float = 24.0

    def __post_init__(self):
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.constant <= 0.0:
            raise ValueError(f"constant must be positive, got {self.constant}")


@dataclass(frozen=True)
class NormErrorStats:
    """Per-trial squared-norm errors ||v||^2 - ||u||^2 and their moments.

    ``stdev`` uses the population convention (divide by the trial count).
    """

    mean: float
    stdev: float
    samples: np.ndarray = field(repr=False)
    trial_count: int


def jl_min_dimension(params: JlParams) -> int:
    """Smallest integer strictly greater than C * ln(n) / eps^2."""
    bound = params.constant * math.log(params.n_points) / params.epsilon**2
    return math.floor(bound) + 1


def jl_project(points, k, seed):
    """Project the rows of an n x d matrix to n x k: (1/sqrt(k)) A R^T.

    R is ``gaussian_matrix(k, d, seed)``, so the map is linear in the input
    and fully determined by the seed.
    """
    a = as_matrix(points, "points")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    r = gaussian_matrix(k, a.shape[1], seed)
    return (a @ r.T) / math.sqrt(k)


def norm_preservation_experiment(d, k, trials, seed):
    """Distribution of ||v||^2 - 1 for one fixed random unit vector.

    A unit vector u in R^d is drawn once from the seed; each trial projects
    it with an independent k x d Gaussian matrix whose seed is derived from
    the trial index, so trials can be evaluated in any order (or in
    parallel) and still produce this exact samples vector.
    """
    if d < 1 or k < 1:
        raise ValueError(f"d and k must be positive, got d={d}, k={k}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    seed = check_seed(seed)
    u = RandomStream(derive_seed(seed, "jl-unit-vector")).normals(d)
    u /= math.sqrt(u @ u)
    samples = np.empty(trials)
    inv_k = 1.0 / k
    for t in range(trials):
        r = RandomStream(derive_seed(seed, "jl-trial", t)).normal_matrix(k, d)
        v = r @ u
        samples[t] = inv_k * (v @ v) - 1.0
    return NormErrorStats(
        mean=float(samples.mean()),
        stdev=float(samples.std()),
        samples=samples,
        trial_count=trials,
    )
