"""Constructors for the state families and fixed operators under study.

Computational basis order is |00>, |01>, |10>, |11> for two qubits, and
``psi_minus`` is (|01> - |10>)/sqrt(2).  All constructors return validated
``DensityMatrix`` values (or plain vectors for pure states).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DensityMatrix, kron

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)

FAMILIES = ("wi", "werner", "isotropic", "hirsch1", "hirsch2")

__all__ = [
    "PAULI",
    "SIGMA_0",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "FAMILIES",
    "FamilySpec",
    "basis_ket",
    "psi_minus",
    "max_entangled",
    "magic_basis",
    "projector",
    "wi_state",
    "werner_state",
    "werner_p_range",
    "isotropic_state",
    "hirsch_state",
    "h_theta",
    "ket0_projector",
]


def basis_ket(d: int, i: int) -> np.ndarray:
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


def projector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def ket0_projector() -> np.ndarray:
    """|0><0| on one qubit, the default Hirsch bias state."""
    return projector(basis_ket(2, 0))


def psi_minus() -> np.ndarray:
    """The singlet vector (|01> - |10>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[1] = 1.0 / np.sqrt(2.0)
    v[2] = -1.0 / np.sqrt(2.0)
    return v


def max_entangled(d: int) -> np.ndarray:
    """Canonical maximally entangled vector (1/sqrt(d)) sum_i |ii>."""
    if d < 2:
        raise ValueError("d must be >= 2")
    v = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v[i * d + i] = 1.0 / np.sqrt(d)
    return v


def magic_basis() -> list[np.ndarray]:
    """The magic basis: i^(a+b) (|0,b> + (-1)^a |1, 1 xor b>)/sqrt(2), order (a,b) = 00,01,10,11.

    An orthonormal set of four maximally entangled two-qubit vectors; the
    fully entangled fraction reduces to a real eigenvalue problem in it.
    """
    out = []
    for a in (0, 1):
        for b in (0, 1):
            v = np.zeros(4, dtype=complex)
            v[b] += 1.0                      # |0, b>
            v[2 + (1 ^ b)] += (-1.0) ** a    # |1, 1 xor b>
            out.append((1j ** (a + b)) * v / np.sqrt(2.0))
    return out


def wi_state(p: float) -> DensityMatrix:
    """Two-qubit Werner state p |psi-><psi-| + (1-p)/4 * I."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"wi state requires 0 <= p <= 1, got {p}")
    mat = p * projector(psi_minus()) + (1.0 - p) / 4.0 * np.eye(4)
    return DensityMatrix(mat, (2, 2))


def werner_p_range(d: int) -> tuple[float, float]:
    """Admissible mixing range for the two-qudit Werner family."""
    return 1.0 - 2.0 * d / (d + 1.0), 1.0


def werner_state(d: int, p: float) -> DensityMatrix:
    """Two-qudit Werner state (2p/(d(d-1))) P_anti + (1-p)/d^2 * I."""
    if d < 2:
        raise ValueError("d must be >= 2")
    lo, hi = werner_p_range(d)
    if not lo - 1e-12 <= p <= hi + 1e-12:
        raise ValueError(f"werner d={d} requires {lo} <= p <= {hi}, got {p}")
    swap = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            swap[i * d + j, j * d + i] = 1.0
    p_anti = 0.5 * (np.eye(d * d) - swap)
    mat = (2.0 * p / (d * (d - 1))) * p_anti + (1.0 - p) / d**2 * np.eye(d * d)
    return DensityMatrix(mat, (d, d))


def isotropic_state(d: int, p: float) -> DensityMatrix:
    """Isotropic state p |psi_d><psi_d| + (1-p)/d^2 * I."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"isotropic state requires 0 <= p <= 1, got {p}")
    mat = p * projector(max_entangled(d)) + (1.0 - p) / d**2 * np.eye(d * d)
    return DensityMatrix(mat, (d, d))


def hirsch_state(p: float, q: float = 1.0, sigma: np.ndarray | None = None) -> DensityMatrix:
    """Two-qubit Hirsch state p |psi-><psi-| + (1-p) [q sigma + (1-q) I/2] x I/2.

    ``sigma`` is an arbitrary one-qubit state, |0><0| by default; the
    one-parameter family of interest is ``q = 1`` with that default.
    """
    if not 0.0 <= p <= 1.0 or not 0.0 <= q <= 1.0:
        raise ValueError(f"hirsch state requires 0 <= p, q <= 1, got p={p} q={q}")
    if sigma is None:
        sigma = ket0_projector()
    sigma = DensityMatrix(sigma, (2,)).mat  # validates the one-qubit state
    alice = q * sigma + (1.0 - q) * np.eye(2) / 2.0
    mat = p * projector(psi_minus()) + (1.0 - p) * kron(alice, np.eye(2) / 2.0)
    return DensityMatrix(mat, (2, 2))


def h_theta(theta: float) -> np.ndarray:
    """The filter-witness operator 1x1 - cos(theta) XX - sin(theta) ZZ (4x4, real symmetric)."""
    return np.real(
        kron(SIGMA_0, SIGMA_0)
        - np.cos(theta) * kron(SIGMA_X, SIGMA_X)
        - np.sin(theta) * kron(SIGMA_Z, SIGMA_Z)
    )


@dataclass
class FamilySpec:
    """A one-parameter slice of a state family; ``state(p)`` builds the member at p.

    ``d`` applies to werner/isotropic; ``q`` and ``sigma`` to hirsch2
    (hirsch1 is hirsch2 pinned at q=1, sigma=|0><0|).
    """

    family: str
    d: int = 2
    q: float = 1.0
    sigma: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family in ("wi", "hirsch1", "hirsch2") and self.d != 2:
            raise ValueError(f"family {self.family} is two-qubit only")
        if self.d < 2:
            raise ValueError("d must be >= 2")

    def state(self, p: float) -> DensityMatrix:
        if self.family == "wi":
            return wi_state(p)
        if self.family == "werner":
            return werner_state(self.d, p)
        if self.family == "isotropic":
            return isotropic_state(self.d, p)
        if self.family == "hirsch1":
            return hirsch_state(p, 1.0, None)
        return hirsch_state(p, self.q, self.sigma)

    def p_range(self) -> tuple[float, float]:
        if self.family == "werner":
            return werner_p_range(self.d)
        return 0.0, 1.0
