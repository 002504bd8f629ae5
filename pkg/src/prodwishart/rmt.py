"""Monte Carlo for Z_r = G_r ... G_2 X with X a truncated Haar unitary.

X is the upper-left (n+nu_1) x n block of an l x l Haar unitary with
l = 2n + kappa - 1, and G_j is (n+nu_j) x (n+nu_{j-1}) standard complex
Gaussian (E|g|^2 = 1) with nu_r = 0. The squared singular values of Z_r,
divided by n^{r-1}, follow the Raney law R_{(r+1)/2, 1/2} as n grows.

Every matrix draws from its own Philox stream keyed by
(seed, trial, matrix index), so a trial can be recomputed in isolation and
results never depend on execution order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .empirics import EmpiricalMeasure
from .numerics import DomainError, NumericalFailure

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class EnsembleConfig:
    r: int
    n: int
    kappa: int
    nu: tuple[int, ...]
    trials: int = 1
    seed: int = 0
    identity_gaussians: bool = False  # debug: replace every G_j by the identity

    def __post_init__(self):
        object.__setattr__(self, "nu", tuple(int(v) for v in self.nu))
        if self.r < 2:
            raise DomainError(f"r must be >= 2, got {self.r}")
        if self.n < 2:
            raise DomainError(f"n must be >= 2, got {self.n}")
        if len(self.nu) != self.r - 1 or any(v < 0 for v in self.nu):
            raise DomainError(f"nu must be r-1 = {self.r - 1} nonnegative integers, got {self.nu}")
        if self.kappa < self.nu[0] + 1:
            raise DomainError(
                f"simulation needs kappa >= nu_1 + 1 (l >= 2n + nu_1), got kappa={self.kappa}, nu_1={self.nu[0]}"
            )
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if self.identity_gaussians and any(self.nu):
            raise DomainError("identity_gaussians needs all nu = 0 (square factors)")

    @property
    def l(self) -> int:
        return 2 * self.n + self.kappa - 1

    def shapes(self) -> list[tuple[int, int]]:
        """Shapes of X, G_2, ..., G_r in multiplication order."""
        dims = [self.n + v for v in self.nu] + [self.n]  # n + nu_1, ..., n + nu_r
        out = [(dims[0], self.n)]
        for j in range(1, self.r):
            out.append((dims[j], dims[j - 1]))
        return out


def stream(seed: int, trial: int, matrix_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed & (2**64 - 1), spawn_key=(trial, matrix_index))
    return np.random.Generator(np.random.Philox(ss))


def ginibre(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """Standard complex Gaussian matrix, real and imaginary parts of variance 1/2."""
    if rows < 1 or cols < 1:
        raise DomainError(f"shape must be positive, got ({rows}, {cols})")
    z = rng.standard_normal((rows, cols, 2))
    return (z[..., 0] + 1j * z[..., 1]) / np.sqrt(2)


def haar_unitary(l: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed l x l unitary from the QR factorization of a Ginibre draw.

    Columns are rephased so that R has a positive diagonal; without this the
    factorization is not unique and the result is not Haar.
    """
    q, r = np.linalg.qr(ginibre(l, l, rng))
    d = np.diag(r)
    q = q * (d / np.abs(d))
    resid = np.max(np.abs(q.conj().T @ q - np.eye(l)))
    if resid > UNITARITY_TOL:
        raise NumericalFailure(f"unitarity residual {resid:.3e} exceeds {UNITARITY_TOL}")
    return q


def truncated_unitary(l: int, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    if not (1 <= rows <= l and 1 <= cols <= l):
        raise DomainError(f"block ({rows}, {cols}) does not fit in {l} x {l}")
    return haar_unitary(l, rng)[:rows, :cols]


def product_matrix(config: EnsembleConfig, trial_index: int) -> np.ndarray:
    shapes = config.shapes()
    z = truncated_unitary(config.l, *shapes[0], stream(config.seed, trial_index, 0))
    for j, (rows, cols) in enumerate(shapes[1:], start=1):
        if config.identity_gaussians:
            g = np.eye(rows, cols)
        else:
            g = ginibre(rows, cols, stream(config.seed, trial_index, j))
        z = g @ z
    return z


def product_squared_singvals(config: EnsembleConfig, trial_index: int) -> np.ndarray:
    """Squared singular values of Z_r for one trial, ascending."""
    try:
        z = product_matrix(config, trial_index)
        s = np.linalg.svd(z, compute_uv=False)
    except (np.linalg.LinAlgError, NumericalFailure) as exc:
        raise NumericalFailure(f"trial {trial_index}: {exc}") from exc
    return np.sort(s * s)


def ensemble_run(config: EnsembleConfig, jobs: int = 1) -> EmpiricalMeasure:
    """Pooled squared singular values / n^{r-1} over all trials."""
    scale = float(config.n) ** (config.r - 1)
    trials = range(config.trials)
    if jobs <= 1:
        parts = [product_squared_singvals(config, t) for t in trials]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(lambda t: product_squared_singvals(config, t), trials))
    return EmpiricalMeasure(np.concatenate(parts) / scale)
