"""Seeded random-state generators used by the property-test suites."""

from __future__ import annotations

import numpy as np

from .linalg import DensityMatrix, kron

__all__ = ["haar_unitary", "random_pure", "random_density", "random_separable"]


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_pure(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)


def random_density(dims: tuple[int, ...], rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-induced random mixed state on the given subsystem layout."""
    n = int(np.prod(dims))
    rank = n if rank is None else rank
    g = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    mat = g @ g.conj().T
    mat /= mat.trace()
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat, dims)


def random_separable(dims: tuple[int, int], rng: np.random.Generator, terms: int = 8) -> DensityMatrix:
    """Convex mixture of random product states (separable by construction)."""
    da, db = dims
    weights = rng.dirichlet(np.ones(terms))
    mat = np.zeros((da * db, da * db), dtype=complex)
    for w in weights:
        mat += w * kron(random_density((da,), rng).mat, random_density((db,), rng).mat)
    mat = 0.5 * (mat + mat.conj().T)
    return DensityMatrix(mat, dims)
