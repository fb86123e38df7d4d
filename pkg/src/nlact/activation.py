"""Tensoring + local-filtering activation test for a bipartite input state.

For an input tau on d_A x d_B, the ancilla variable lives on
(d_A x 2) x (d_B x 2), grouped as [A_d, A_q, B_d, B_q] with the partial
transpose taken over the first party (A_d, A_q).  A certified negative
value of Tr[rho (tau^T x H_{pi/4})] over PPT ancillas rho witnesses that
tau tensor rho leaves the filtered-CHSH-satisfying set while rho itself
stays inside it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .linalg import DensityMatrix, kron, permute_mat
from .sdp import SdpOptions, SdpProblem, SdpSolution, solve
from .states import PAULI, h_theta

ACTIVATION_TOL = 1e-6
H_ANGLE = math.pi / 4.0

# canonical variable order [A_d, A_q, B_d, B_q] from the natural cost order
# [A_d, B_d, A_q, B_q]; the permutation is its own inverse
_COST_PERM = (0, 2, 1, 3)

__all__ = [
    "ACTIVATION_TOL",
    "ActivationResult",
    "bisection_options",
    "build_cost",
    "sigma_min",
    "ancilla_R",
    "verify_ancilla",
]


@dataclass
class ActivationResult:
    sigma: float
    witness: SdpSolution
    activated: bool


def _activation_options(options: SdpOptions | None) -> SdpOptions:
    if options is None:
        return SdpOptions(tol_objective=1e-7)
    return options


def bisection_options(max_iters: int | None = None) -> SdpOptions:
    """Solver options for sign-only queries: stop once the bounds settle the cut.

    A sign decision against the activation cut certifies orders of
    magnitude earlier than the full gap on near-threshold instances, at
    the price of a loose reported value; use only where the indicator is
    all that matters.
    """
    if max_iters is None:
        return SdpOptions(tol_objective=1e-7, objective_cut=-ACTIVATION_TOL)
    return SdpOptions(tol_objective=1e-7, objective_cut=-ACTIVATION_TOL, max_iters=max_iters)


def build_cost(tau: DensityMatrix, options: SdpOptions | None = None) -> SdpProblem:
    """Assemble the SDP for tau: cost tau^T x H_{pi/4} in canonical subsystem order."""
    if len(tau.dims) != 2:
        raise ValueError(f"tau must be bipartite, got dims {tau.dims}")
    da, db = tau.dims
    cost = kron(tau.mat.T, h_theta(H_ANGLE))
    cost = permute_mat(cost, (da, db, 2, 2), _COST_PERM)
    return SdpProblem(
        cost=cost,
        dims=(da, 2, db, 2),
        t1_split=2,
        options=_activation_options(options),
    )


def sigma_min(tau: DensityMatrix, options: SdpOptions | None = None) -> ActivationResult:
    """Minimize Tr[rho (tau^T x H_{pi/4})] over PPT ancillas; negative means activation.

    ``activated`` requires a certified solve (converged or sign-decided);
    a non-converged run reports its best value but never certifies.
    """
    witness = solve(build_cost(tau, options))
    usable = witness.status in ("converged", "decided")
    return ActivationResult(
        sigma=witness.objective,
        witness=witness,
        activated=bool(usable and witness.objective < -ACTIVATION_TOL),
    )


@lru_cache(maxsize=1)
def _ancilla_R_mat() -> np.ndarray:
    r = np.array(
        [
            [9.0, 3.0, 3.0, 3.0],
            [1.0, -1.0, 3.0, -1.0],
            [1.0, -1.0, 3.0, -1.0],
            [1.0, -1.0, 3.0, -1.0],
        ]
    ) / 9.0
    mat = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        for j in range(4):
            # sigma_i on the two qudit slots, sigma_j on the two ancilla qubits,
            # written in the natural order [A_d, B_d, A_q, B_q]
            mat += r[i, j] * kron(PAULI[i], PAULI[i], PAULI[j], PAULI[j])
    mat /= 16.0
    return permute_mat(mat, (2, 2, 2, 2), _COST_PERM)


def ancilla_R() -> DensityMatrix:
    """The explicit Pauli-string ancilla that activates the two-qubit Werner family.

    Returned in the canonical subsystem order [A_d, A_q, B_d, B_q]; it is
    PSD and PPT across the (A_d, A_q) cut, so it certifies activation for
    every input where its trace value goes negative.
    """
    return DensityMatrix(_ancilla_R_mat(), (2, 2, 2, 2))


def verify_ancilla(tau: DensityMatrix, rho: DensityMatrix) -> tuple[float, bool]:
    """Trace value of a fixed ancilla against the activation cost for tau.

    ``rho`` must use the canonical subsystem order; returns the trace value
    and whether it is negative (activation witnessed at this single point).
    """
    problem = build_cost(tau)
    if rho.dims != problem.dims:
        raise ValueError(f"ancilla dims {rho.dims} do not match cost dims {problem.dims}")
    value = float(np.trace(rho.mat @ problem.cost).real)
    return value, value < 0.0
