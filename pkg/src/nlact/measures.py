"""Closed-form property evaluators for two-qubit (and some two-qudit) states.

Covers: concurrence / entanglement of formation, the CHSH criterion on the
Pauli correlation matrix, the local-filtering (hidden nonlocality)
criterion, fully entangled fraction / teleportation usefulness, the
copy-count needed to superactivate nonlocality, the fixed two-dim filter on
Werner states, CGLMP values for d <= 6, and the reference locality bounds.

The correlation matrix convention is t[n][m] = Tr[rho (sigma_n x sigma_m)]
with sigma_0 = I, yielding a 4x4 real matrix whose 3x3 lower block feeds
the CHSH criterion and whose 4x4 form feeds the filtering criterion with
eta = diag(1, -1, -1, -1).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .linalg import DensityMatrix, herm_eig, kron
from .states import PAULI, SIGMA_Y, isotropic_state, magic_basis, werner_state

DEGENERATE_TOL = 1e-12
LORENTZ_IMAG_TOL = 1e-8

CGLMP_DEFAULT_SETTINGS = (0.0, 0.5, 0.25, -0.25)
CGLMP_MAX_D = 6


class HiddenNonlocality(NamedTuple):
    m_prime: float
    value: float
    indicator: bool


class TeleportationUse(NamedTuple):
    fidelity: float
    value: float
    indicator: bool


class PopescuFilter(NamedTuple):
    filtered: DensityMatrix
    max_bell: float
    p_nl: float


class ReferenceBound(NamedTuple):
    value: float
    provenance: str
    note: str


def _require_two_qubits(rho: DensityMatrix) -> None:
    if rho.dims != (2, 2):
        raise ValueError(f"a two-qubit state is required, got dims {rho.dims}")


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x))


def _entropy_form(b: float) -> float:
    # common h((1 + sqrt(1 - b^2))/2) shape shared by EoF/CHSH/HN values
    b = min(max(b, 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(1.0 - b * b)) / 2.0)


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence max{0, l1 - l2 - l3 - l4} of a two-qubit state.

    The l_i are square roots of the eigenvalues of rho @ rho_tilde with
    rho_tilde = (YxY) rho* (YxY).  They are computed as the singular
    values of K = sqrt(rho) (YxY) sqrt(rho)*, whose Gram matrix K K^dag
    is the Hermitian product sqrt(rho) rho_tilde sqrt(rho) similar to
    rho @ rho_tilde; going through singular values avoids the sqrt-of-
    round-off noise of eigenvalue clamping near zero.
    """
    _require_two_qubits(rho)
    yy = kron(SIGMA_Y, SIGMA_Y)
    eig = herm_eig(rho.mat)
    sqrt_rho = (eig.vectors * np.sqrt(np.clip(eig.values, 0.0, None))) @ eig.vectors.conj().T
    lam = np.linalg.svd(sqrt_rho @ yy @ sqrt_rho.conj(), compute_uv=False)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def eof(rho: DensityMatrix) -> float:
    """Entanglement of formation h((1 + sqrt(1 - C^2))/2) of a two-qubit state."""
    return _entropy_form(concurrence(rho))


def pure_eof(psi: np.ndarray, dims: tuple[int, int]) -> float:
    """Entropy of entanglement -Tr(rho_A log2 rho_A) of a bipartite pure state."""
    psi = np.asarray(psi, dtype=complex)
    da, db = int(dims[0]), int(dims[1])
    if psi.shape != (da * db,):
        raise ValueError(f"vector length {psi.shape} does not match dims {dims}")
    if abs(np.linalg.norm(psi) - 1.0) > 1e-10:
        raise ValueError("pure state vector must be normalized")
    # Schmidt coefficients via SVD of the coefficient matrix
    s = np.linalg.svd(psi.reshape(da, db), compute_uv=False)
    probs = s * s
    probs = probs[probs > 1e-15]
    return float(-np.sum(probs * np.log2(probs)))


def correlation_matrix(rho: DensityMatrix) -> np.ndarray:
    """4x4 Pauli correlation table t[n][m] = Tr[rho (sigma_n x sigma_m)]."""
    _require_two_qubits(rho)
    t = np.empty((4, 4))
    for n in range(4):
        for m in range(4):
            t[n, m] = np.trace(rho.mat @ kron(PAULI[n], PAULI[m])).real
    return t


def chsh_M(rho: DensityMatrix) -> float:
    """Sum of the two largest eigenvalues of T^T T (3x3 block); CHSH violated iff > 1."""
    t3 = correlation_matrix(rho)[1:, 1:]
    u = np.linalg.eigvalsh(t3.T @ t3)
    return float(u[-1] + u[-2])


def chsh_value(rho: DensityMatrix) -> float:
    """Entropy-scaled CHSH violation h((1 + sqrt(1 - B^2))/2), B = sqrt(max{0, M-1}).

    Zero exactly when the state does not violate CHSH; 1 for the singlet.
    """
    return _entropy_form(math.sqrt(max(0.0, chsh_M(rho) - 1.0)))


def hidden_nonlocality(rho: DensityMatrix) -> HiddenNonlocality:
    """Local-filtering criterion on C = eta T eta T^T: violation iff l1 + l2 > l0.

    Eigenvalues of C are sorted in decreasing order; the optimally filtered
    CHSH quantity is M' = (l1 + l2)/l0 and the reported value is the same
    entropy scaling used for CHSH.  Raises for a degenerate correlation
    matrix (l0 ~ 0, product-state corner) and for a spectrum with a
    non-negligible imaginary part.
    """
    t = correlation_matrix(rho)
    eta = np.diag([1.0, -1.0, -1.0, -1.0])
    c = eta @ t @ eta @ t.T
    w = np.linalg.eigvals(c)
    scale = max(1.0, float(np.linalg.norm(c)))
    if np.max(np.abs(w.imag)) > LORENTZ_IMAG_TOL * scale:
        raise ValueError("non-Lorentzian spectrum")
    lam = np.sort(w.real)[::-1]
    if lam[0] <= DEGENERATE_TOL:
        raise ValueError("degenerate correlation matrix")
    m_prime = (lam[1] + lam[2]) / lam[0]
    value = _entropy_form(math.sqrt(max(0.0, m_prime - 1.0)))
    return HiddenNonlocality(float(m_prime), value, bool(lam[1] + lam[2] > lam[0]))


def fef2(rho: DensityMatrix) -> float:
    """Fully entangled fraction of a two-qubit state via the magic basis.

    Largest eigenvalue (clamped at zero) of M[m][n] = Re <psi_m|rho|psi_n>.
    """
    _require_two_qubits(rho)
    basis = magic_basis()
    m = np.empty((4, 4))
    for i in range(4):
        for j in range(4):
            m[i, j] = (basis[i].conj() @ rho.mat @ basis[j]).real
    m = 0.5 * (m + m.T)  # kill asymmetric round-off
    return float(max(0.0, np.linalg.eigvalsh(m)[-1]))


def sa_value(rho: DensityMatrix) -> TeleportationUse:
    """Teleportation usefulness of a two-qubit state: F2 = (2 f2 + 1)/3.

    ``value`` is the positive part of F2 - 2/3 and ``indicator`` is
    f2 > 1/2; a true indicator implies the state is k-copy nonlocal.
    """
    f2 = fef2(rho)
    fot = (2.0 * f2 + 1.0) / 3.0
    return TeleportationUse(fot, max(0.0, fot - 2.0 / 3.0), bool(f2 > 0.5))


def fef_isotropic(d: int, p: float) -> float:
    """Fully entangled fraction p + (1-p)/d^2 of the isotropic family.

    By the twirling symmetry the canonical maximally entangled state
    attains the maximum; the value exceeds 1/d exactly when p > 1/(d+1).
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"isotropic family requires 0 <= p <= 1, got {p}")
    return p + (1.0 - p) / d**2


def k_factor(d: int, f: float) -> int | None:
    """Smallest copy count k certifying superactivation at dimension d and FEF f.

    k must satisfy [4 / (e^4 (ln d)^2)] (f d)^k / k^2 > 1; returns None
    when f*d <= 1 (no finite guarantee).  Beyond the turning point
    k = 2/ln(fd) the left side is increasing, so a doubling search plus
    bisection finds the exact smallest integer.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"FEF must lie in [0, 1], got {f}")
    if f * d <= 1.0:
        return None
    log_c = math.log(4.0) - 4.0 - 2.0 * math.log(math.log(d))
    log_fd = math.log(f * d)

    def ok(k: int) -> bool:
        return log_c + k * log_fd - 2.0 * math.log(k) > 0.0

    if ok(1):
        return 1
    # the left side decreases up to k = 2/ln(fd) and increases afterwards,
    # so with k=1 failing the smallest solution sits on the rising branch
    k_turn = max(1, math.ceil(2.0 / log_fd))
    if ok(k_turn):
        return k_turn
    lo, hi = k_turn, 2 * k_turn
    while not ok(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def popescu_threshold(d: int) -> float:
    """Closed-form CHSH threshold 4(d-1)/(2d(sqrt(2)-1) + 4(d-1)) after the two-dim filter."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return 4.0 * (d - 1) / (2.0 * d * (math.sqrt(2.0) - 1.0) + 4.0 * (d - 1))


def popescu_filter(d: int, p: float) -> PopescuFilter:
    """Project a two-qudit Werner state onto the {|0>,|1>} x {|0>,|1>} block.

    Returns the normalized filtered two-qubit state, its maximal CHSH
    value 2 sqrt(M), and the closed-form critical p beyond which the
    filtered state violates CHSH.  For d = 2 the filter is the identity.
    """
    state = werner_state(d, p)
    idx = [i * d + j for i in range(2) for j in range(2)]
    block = state.mat[np.ix_(idx, idx)]
    tr = block.trace().real
    if tr <= 1e-14:
        raise ValueError("filtered state has zero trace")
    filtered = DensityMatrix(block / tr, (2, 2))
    max_bell = 2.0 * math.sqrt(chsh_M(filtered))
    return PopescuFilter(filtered, max_bell, popescu_threshold(d))


def _fourier_modes(d: int, phase: float, conjugate_outcome: bool) -> np.ndarray:
    """Columns are the d outcome vectors of one Fourier-basis measurement setting."""
    j = np.arange(d).reshape(-1, 1)
    k = np.arange(d).reshape(1, -1)
    sign = -1.0 if conjugate_outcome else 1.0
    return np.exp(2j * np.pi * j * (sign * k + phase) / d) / np.sqrt(d)


def cglmp_value(
    rho: DensityMatrix,
    settings: tuple[float, float, float, float] = CGLMP_DEFAULT_SETTINGS,
) -> float:
    """CGLMP Bell value I_d of a d x d state; the local bound is 2.

    Measurements are Fourier modes with phases (alpha_1, alpha_2) for
    Alice and outcome-conjugate modes with (beta_1, beta_2) for Bob; the
    defaults (0, 1/2, 1/4, -1/4) are the standard optimal settings for
    the canonical maximally entangled state.
    """
    if rho.dims[0] != rho.dims[1] or len(rho.dims) != 2:
        raise ValueError(f"a d x d state is required, got dims {rho.dims}")
    d = rho.dims[0]
    if not 2 <= d <= CGLMP_MAX_D:
        raise ValueError(f"cglmp supports 2 <= d <= {CGLMP_MAX_D}, got d={d}")
    a1, a2, b1, b2 = settings
    alice = [_fourier_modes(d, a, False) for a in (a1, a2)]
    bob = [_fourier_modes(d, b, True) for b in (b1, b2)]

    # joint[a][b][x, y] = P(A_a = x, B_b = y)
    joint = {}
    for a in (0, 1):
        for b in (0, 1):
            m = kron(alice[a], bob[b])  # columns are product outcome vectors
            joint[a, b] = np.einsum("ix,ij,jx->x", m.conj(), rho.mat, m).real.reshape(d, d)

    def p_a_eq_b_plus(a: int, b: int, k: int) -> float:
        pm = joint[a, b]
        return float(sum(pm[(y + k) % d, y] for y in range(d)))

    def p_b_eq_a_plus(a: int, b: int, k: int) -> float:
        pm = joint[a, b]
        return float(sum(pm[x, (x + k) % d] for x in range(d)))

    total = 0.0
    for k in range(d // 2):
        weight = 1.0 - 2.0 * k / (d - 1)
        total += weight * (
            p_a_eq_b_plus(0, 0, k)
            + p_b_eq_a_plus(1, 0, k + 1)
            + p_a_eq_b_plus(1, 1, k)
            + p_b_eq_a_plus(0, 1, k)
            - p_a_eq_b_plus(0, 0, -k - 1)
            - p_b_eq_a_plus(1, 0, -k)
            - p_a_eq_b_plus(1, 1, -k - 1)
            - p_b_eq_a_plus(0, 1, -k - 1)
        )
    return total


def cglmp_isotropic_threshold(d: int) -> float:
    """Critical p where the isotropic family reaches the CGLMP local bound 2."""
    return 2.0 / cglmp_value(isotropic_state(d, 1.0))


# Locality thresholds are not computable by this package (they require
# explicit local-model constructions); they are carried as constants and
# closed forms from the literature, labeled by provenance.

def reference_bounds(family: str, d: int = 2) -> dict[str, ReferenceBound]:
    """Stored entanglement/locality reference bounds for one family row."""
    if family == "wi":
        return {
            "p_E": ReferenceBound(1.0 / 3.0, "paper-constant", "concurrence zero crossing"),
            "p_L": ReferenceBound(0.6595, "paper-constant", "best projective-locality bound"),
            "p_NL_refined": ReferenceBound(0.7054, "paper-constant", "refined nonlocality bound"),
        }
    if family == "werner":
        if d < 2:
            raise ValueError("d must be >= 2")
        if d == 2:
            return reference_bounds("wi")  # the d=2 row is the WI family
        return {
            "p_E": ReferenceBound(1.0 / (d + 1), "paper-constant", "entanglement bound 1/(d+1)"),
            "p_L": ReferenceBound((d - 1.0) / d, "paper-constant", "locality bound (d-1)/d"),
            "p_HN_filtered": ReferenceBound(
                popescu_threshold(d), "paper-constant", "closed-form filtered-CHSH threshold"
            ),
        }
    if family == "isotropic":
        if d < 2:
            raise ValueError("d must be >= 2")
        if d == 2:
            return reference_bounds("wi")
        harmonic = sum(1.0 / k for k in range(1, d + 1))
        return {
            "p_E": ReferenceBound(1.0 / (d + 1), "paper-constant", "entanglement bound 1/(d+1)"),
            "p_L": ReferenceBound(
                (harmonic - 1.0) / (d - 1), "paper-constant", "locality bound (-1 + H_d)/(d-1)"
            ),
        }
    if family in ("hirsch1", "hirsch2"):
        return {
            "p_L": ReferenceBound(0.5, "paper-constant", "locality bound for the one-parameter family"),
        }
    raise ValueError(f"unknown family {family!r}")
