"""Regular product grids, their dual lattices, and aliasing.

A grid with per-coordinate mesh sizes m_1..m_s consists of the n = prod
m_j points (k_1/m_1, ..., k_s/m_s).  Its dual lattice is the set of
frequencies divisible coordinatewise by the mesh sizes; sampling a
Fourier coefficient on the grid returns the sum of true coefficients
over a dual-lattice coset, which is the single identity everything in
the standard-information analysis rests on.

Grids are streamed in blocks, never materialized: n grows as a product.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from ._series import truncated_weight_sum
from .errors import CapExceeded, InvalidParameterError
from .params import KorobovParams, a_values, b_values
from .space import FourierPolynomial, evaluate_many

__all__ = [
    "DEFAULT_GRID_CAP",
    "RegularGrid",
    "grid_points",
    "in_dual",
    "sample_mean",
    "aliased_coefficient",
    "aliased_coefficients",
    "dual_coset_sum",
    "quadrature_residual",
    "dual_weight_sum",
]

DEFAULT_GRID_CAP = 10**6
_BLOCK = 4096


@dataclass(frozen=True)
class RegularGrid:
    """Product grid with mesh sizes m_1..m_s; n = prod m_j points."""

    mesh: tuple[int, ...]

    def __post_init__(self):
        mesh = tuple(int(m) for m in self.mesh)
        if not mesh or any(m < 1 for m in mesh):
            raise InvalidParameterError(
                "term_undefined", f"mesh sizes must be positive integers, got {self.mesh!r}"
            )
        object.__setattr__(self, "mesh", mesh)

    @property
    def s(self) -> int:
        return len(self.mesh)

    @property
    def n(self) -> int:
        return math.prod(self.mesh)


def grid_points(grid: RegularGrid, cap: int = DEFAULT_GRID_CAP) -> Iterator[tuple[float, ...]]:
    """All n points in row-major order of (k_1, ..., k_s)."""
    if grid.n > cap:
        raise CapExceeded("grid size", cap, needed=grid.n)
    mesh = grid.mesh
    for ks in itertools.product(*(range(m) for m in mesh)):
        yield tuple(k / m for k, m in zip(ks, mesh))


def _point_blocks(grid: RegularGrid, block: int = _BLOCK) -> Iterator[np.ndarray]:
    """Row-major points as (<=block, s) float arrays, decoded from linear
    indices so the full grid never lives in memory."""
    mesh = np.array(grid.mesh, dtype=np.int64)
    strides = np.ones(grid.s, dtype=np.int64)
    for j in range(grid.s - 2, -1, -1):
        strides[j] = strides[j + 1] * mesh[j + 1]
    n = grid.n
    for start in range(0, n, block):
        idx = np.arange(start, min(start + block, n), dtype=np.int64)
        ks = (idx[:, None] // strides[None, :]) % mesh[None, :]
        yield ks.astype(float) / mesh.astype(float)[None, :]


def in_dual(grid: RegularGrid, h: Sequence[int]) -> bool:
    """True when every component of h is divisible by its mesh size."""
    if len(h) != grid.s:
        raise InvalidParameterError(
            "term_undefined", f"frequency has length {len(h)}, expected {grid.s}"
        )
    return all(int(hj) % m == 0 for hj, m in zip(h, grid.mesh))


def sample_mean(grid: RegularGrid, f: FourierPolynomial, cap: int = DEFAULT_GRID_CAP) -> complex:
    """(1/n) sum_k f(x_k), streamed over the grid."""
    if grid.n > cap:
        raise CapExceeded("grid size", cap, needed=grid.n)
    total = 0j
    for pts in _point_blocks(grid):
        total += evaluate_many(f, pts).sum()
    return total / grid.n


def aliased_coefficients(
    grid: RegularGrid,
    f: FourierPolynomial,
    hs: Sequence[Sequence[int]],
    cap: int = DEFAULT_GRID_CAP,
) -> np.ndarray:
    """Sampled Fourier coefficients (1/n) sum_k f(x_k) e^{-2 pi i h.x_k}
    for every h in ``hs``, computed by actually summing over the grid."""
    if grid.n > cap:
        raise CapExceeded("grid size", cap, needed=grid.n)
    H = np.asarray(hs, dtype=float).reshape(len(hs), grid.s)
    out = np.zeros(len(hs), dtype=complex)
    for pts in _point_blocks(grid):
        values = evaluate_many(f, pts)
        phases = np.exp(-2j * np.pi * (pts @ H.T))
        out += values @ phases
    return out / grid.n


def aliased_coefficient(
    grid: RegularGrid,
    f: FourierPolynomial,
    h: Sequence[int],
    cap: int = DEFAULT_GRID_CAP,
) -> complex:
    """Sampled coefficient at a single frequency.

    For finitely supported f this equals the sum of true coefficients
    over the coset h + dual lattice; ``dual_coset_sum`` computes that
    side independently.
    """
    return complex(aliased_coefficients(grid, f, [tuple(h)], cap=cap)[0])


def dual_coset_sum(grid: RegularGrid, f: FourierPolynomial, h: Sequence[int]) -> complex:
    """sum of f's coefficients over {g : g congruent to h mod mesh}.

    Pure support arithmetic; no sampling.  Residues use mathematical mod
    so negative components land in canonical cosets.
    """
    target = tuple(int(hj) % m for hj, m in zip(h, grid.mesh))
    if len(target) != grid.s:
        raise InvalidParameterError(
            "term_undefined", f"frequency has length {len(h)}, expected {grid.s}"
        )
    total = 0j
    for g, c in f.coefficients.items():
        if tuple(gj % m for gj, m in zip(g, grid.mesh)) == target:
            total += c
    return total


def quadrature_residual(
    grid: RegularGrid, f: FourierPolynomial, cap: int = DEFAULT_GRID_CAP
) -> complex:
    """Integral minus sample mean.

    For finitely supported f this equals minus the sum of coefficients
    over the nonzero dual lattice; both sides are exact character sums.
    """
    return f.mean() - sample_mean(grid, f, cap=cap)


def dual_weight_sum(params: KorobovParams, grid: RegularGrid, tol: float = 1e-14) -> float:
    """Sum over the nonzero dual lattice of the halved-exponent weights
    omega**(sum_j a_j * (|l_j|/2)**b_j).

    Uses the product form -1 + prod_j (1 + 2*sum_{h>=1} omega**(a_j*(m_j*h/2)**b_j))
    with certified geometric-tail truncation per factor; the returned
    value includes each factor's tail bound, so it upper-bounds the true
    sum while staying within ``tol`` of it.
    """
    if grid.s != params.s:
        raise InvalidParameterError(
            "term_undefined", f"grid dimension {grid.s} does not match space dimension {params.s}"
        )
    av, bv = a_values(params), b_values(params)
    product = 1.0
    per_factor = tol / (4.0 * params.s)
    for a, b, m in zip(av, bv, grid.mesh):
        partial, tail = truncated_weight_sum(params.omega, a, b, scale=m / 2.0, tol=per_factor)
        product *= 1.0 + 2.0 * (partial + tail)
    return product - 1.0
