"""Self-contained dense solver for min <C, X> over {X >= 0, X^T1 >= 0, Tr X = 1}.

The algorithm is consensus operator splitting (ADMM): one block carries the
spectral-simplex constraint {X >= 0, Tr X = 1} with the linear cost handled
proximally, the other carries the partial-transpose cone {Y : Y^T1 >= 0},
and a scaled dual couples X = Y.  Each iteration costs two or three
Hermitian eigendecompositions of side n.

On top of the residual test, the solver tracks certified objective bounds:

- lower bound: the Y-projection's clamped negative part gives an exactly
  PSD dual multiplier S2, and lambda_min(C - PT(S2)) <= p* for any S2 >= 0;
- upper bound: mixing the current X toward I/n absorbs its PPT slack and
  yields an exactly feasible point whose value is reported as `objective`.

The solve stops when the bound gap closes to `tol_objective`, when both
consensus residuals fall below `tol_feasibility`, or (if `objective_cut`
is set) as soon as the bounds certify on which side of the cut the optimum
lies -- a sign decision can be certified long before the gap closes on
degenerate instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import DensityMatrix, is_hermitian

MAX_SIDE = 256

__all__ = ["SdpOptions", "SdpProblem", "SdpSolution", "project_psd", "project_density", "solve"]


@dataclass(frozen=True)
class SdpOptions:
    max_iters: int = 50_000
    tol_objective: float = 1e-6
    tol_feasibility: float = 1e-8
    penalty: float = 10.0
    objective_cut: float | None = None
    check_every: int = 25
    adapt_every: int = 100


@dataclass
class SdpProblem:
    """Cost matrix, subsystem layout, and the prefix length defining the T1 cut."""

    cost: np.ndarray
    dims: tuple[int, ...]
    t1_split: int = 1
    options: SdpOptions = field(default_factory=SdpOptions)

    def __post_init__(self) -> None:
        self.cost = np.asarray(self.cost, dtype=complex)
        self.dims = tuple(int(d) for d in self.dims)
        n = int(np.prod(self.dims))
        if self.cost.shape != (n, n):
            raise ValueError(f"cost shape {self.cost.shape} does not match dims {self.dims}")
        if n > MAX_SIDE:
            raise ValueError(f"problem side {n} exceeds the desk-scale limit {MAX_SIDE}")
        if not is_hermitian(self.cost, 1e-10):
            raise ValueError("cost matrix is not Hermitian within 1e-10")
        if not 1 <= self.t1_split < len(self.dims):
            raise ValueError("t1_split must name a proper prefix of dims")

    @property
    def t1_side(self) -> int:
        return int(np.prod(self.dims[: self.t1_split]))


@dataclass
class SdpSolution:
    minimizer: DensityMatrix
    objective: float
    objective_lb: float
    iterations: int
    status: str  # converged | decided | max_iters | infeasible_numerics
    residuals: dict[str, float]


def _simplex_projection(v: np.ndarray) -> np.ndarray:
    """Euclidean projection of a real vector onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    idx = np.arange(1, v.size + 1)
    r = idx[u - (css - 1.0) / idx > 0][-1]
    theta = (css[r - 1] - 1.0) / r
    return np.maximum(v - theta, 0.0)


def project_psd(h: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) PSD matrix: clamp negative eigenvalues at zero."""
    h = np.asarray(h)
    if not is_hermitian(h, 1e-10):
        raise ValueError("input is not Hermitian within 1e-10")
    w, v = np.linalg.eigh(h)
    return (v * np.maximum(w, 0.0)) @ v.conj().T


def project_density(h: np.ndarray) -> np.ndarray:
    """Nearest (Frobenius) trace-one PSD matrix: project eigenvalues onto the simplex."""
    h = np.asarray(h)
    if not is_hermitian(h, 1e-10):
        raise ValueError("input is not Hermitian within 1e-10")
    w, v = np.linalg.eigh(h)
    return (v * _simplex_projection(w)) @ v.conj().T


def _pt(mat: np.ndarray, m: int, k: int) -> np.ndarray:
    """Partial transpose of the leading m-dimensional factor of an (mk x mk) matrix."""
    return mat.reshape(m, k, m, k).transpose(2, 1, 0, 3).reshape(m * k, m * k)


def solve(problem: SdpProblem) -> SdpSolution:
    """Run the splitting iteration; deterministic for fixed problem and options."""
    opts = problem.options
    n = problem.cost.shape[0]
    m = problem.t1_side
    k = n // m
    cost = problem.cost
    if np.max(np.abs(cost.imag)) == 0.0:
        cost = cost.real.copy()  # real symmetric fast path
    eye = np.eye(n, dtype=cost.dtype)

    rho = float(opts.penalty)
    x = eye / n
    y = x.copy()
    u = np.zeros_like(x)
    r_prim = r_dual = math.inf

    best_ub = math.inf
    best_lb = -math.inf
    best_x = x.copy()
    status = "max_iters"
    iterations = opts.max_iters

    def objective_of(mat: np.ndarray) -> float:
        if np.isrealobj(cost):
            return float(np.sum(cost * mat))
        return float(np.trace(cost @ mat).real)

    for it in range(1, opts.max_iters + 1):
        x = project_density(y - u - cost / rho)
        z = _pt(x + u, m, k)
        w, v = np.linalg.eigh(z)
        y_new = _pt((v * np.maximum(w, 0.0)) @ v.conj().T, m, k)
        r_dual = rho * float(np.linalg.norm(y_new - y))
        y = y_new
        u = u + x - y
        r_prim = float(np.linalg.norm(x - y))

        if not math.isfinite(r_prim) or not math.isfinite(r_dual):
            status = "infeasible_numerics"
            iterations = it
            break

        residual_ok = r_prim <= opts.tol_feasibility and r_dual <= opts.tol_feasibility
        if residual_ok or it % opts.check_every == 0:
            # dual certificate: S2 = rho * (negative part of PT(x+u)) is PSD exactly
            s2 = (v * np.maximum(-w, 0.0)) @ v.conj().T * rho
            lb = float(np.linalg.eigvalsh(cost - _pt(s2, m, k))[0])
            # feasible primal: mix toward I/n to absorb the PPT slack of x
            slack = max(0.0, -float(np.linalg.eigvalsh(_pt(x, m, k))[0]))
            gamma = slack * n / (1.0 + slack * n)
            x_feas = (1.0 - gamma) * x + gamma * eye / n
            ub = objective_of(x_feas)
            if ub < best_ub:
                best_ub = ub
                best_x = x_feas
            best_lb = max(best_lb, lb)

            if best_ub - best_lb <= opts.tol_objective or residual_ok:
                status = "converged"
                iterations = it
                break
            if opts.objective_cut is not None and (
                best_lb >= opts.objective_cut or best_ub < opts.objective_cut
            ):
                status = "decided"
                iterations = it
                break

        if it % opts.adapt_every == 0:
            if r_prim > 10.0 * r_dual:
                rho *= 2.0
                u /= 2.0
            elif r_dual > 10.0 * r_prim:
                rho /= 2.0
                u *= 2.0

    minimizer = DensityMatrix(best_x, problem.dims)
    residuals = {
        "psd_slack": max(0.0, -float(np.linalg.eigvalsh(minimizer.mat)[0])),
        "ppt_slack": max(0.0, -float(np.linalg.eigvalsh(_pt(minimizer.mat, m, k))[0])),
        "trace_err": abs(float(minimizer.mat.trace().real) - 1.0),
        "consensus_gap": r_prim if math.isfinite(r_prim) else float("inf"),
        "certified_gap": best_ub - best_lb,
    }
    return SdpSolution(
        minimizer=minimizer,
        objective=best_ub,
        objective_lb=best_lb,
        iterations=iterations,
        status=status,
        residuals=residuals,
    )
