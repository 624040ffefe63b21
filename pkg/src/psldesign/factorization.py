"""Padded convolution matrix, its exact and sketched orthonormal factors,
and extraction of the per-element target points.

The convolution matrix is kept implicit (sequence plus window size);
products against it are formed with correlation/convolution loops so the
dense (N+Q-1) x Q array is only materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import as_samples
from .geometry import PointSet

_POSITION_BLOCK = 512  # rows of target points materialized at a time


class ConvolutionMatrix:
    """Implicit (N+Q-1) x Q matrix whose column j holds the sequence at
    rows j .. j+N-1 (zeros elsewhere). Permits Q = 1 internally; the
    public builder enforces the design-loop range 2 <= Q <= N."""

    __slots__ = ("x", "N", "Q")

    def __init__(self, x, Q: int):
        xs = as_samples(x)
        if not 1 <= Q <= xs.size:
            raise ValueError(f"Q must satisfy 1 <= Q <= N, got Q={Q}, N={xs.size}")
        self.x = xs
        self.N = xs.size
        self.Q = int(Q)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.N + self.Q - 1, self.Q)

    def dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.complex128)
        for j in range(self.Q):
            out[j:j + self.N, j] = self.x
        return out

    def gram(self) -> np.ndarray:
        """Hermitian Toeplitz Q x Q gram built from autocorrelation lags."""
        from .core import autocorrelation
        pos = autocorrelation(self.x).positive_lags()[:self.Q]
        idx = np.arange(self.Q)
        diff = idx[:, None] - idx[None, :]
        g = pos[np.abs(diff)]
        return np.where(diff >= 0, g, np.conj(g))

    def hermitian_product(self, w: np.ndarray) -> np.ndarray:
        """X^H w for w with N+Q-1 rows; output has Q rows."""
        w = np.asarray(w, dtype=np.complex128)
        single = w.ndim == 1
        if single:
            w = w[:, None]
        if w.shape[0] != self.N + self.Q - 1:
            raise ValueError("row count mismatch")
        out = np.empty((self.Q, w.shape[1]), dtype=np.complex128)
        for s in range(w.shape[1]):
            out[:, s] = np.correlate(w[:, s], self.x, mode="valid")
        return out[:, 0] if single else out

    def product(self, v: np.ndarray) -> np.ndarray:
        """X v for v with Q rows; output has N+Q-1 rows."""
        v = np.asarray(v, dtype=np.complex128)
        single = v.ndim == 1
        if single:
            v = v[:, None]
        if v.shape[0] != self.Q:
            raise ValueError("row count mismatch")
        out = np.empty((self.N + self.Q - 1, v.shape[1]), dtype=np.complex128)
        for s in range(v.shape[1]):
            out[:, s] = np.convolve(self.x, v[:, s], mode="full")
        return out[:, 0] if single else out


def build_convolution_matrix(x, Q: int) -> ConvolutionMatrix:
    """Construct the padded convolution matrix for a window of Q lags."""
    xs = as_samples(x)
    if not 2 <= Q <= xs.size:
        raise ValueError(f"Q must satisfy 2 <= Q <= N, got Q={Q}, N={xs.size}")
    return ConvolutionMatrix(xs, Q)


@dataclass(frozen=True)
class RandomSketch:
    """Gaussian sketch: independent standard normal real and imaginary
    parts, fully determined by the seed."""

    S: int
    seed: int
    omega: np.ndarray

    @staticmethod
    def draw(rows: int, S: int, seed: int) -> "RandomSketch":
        if S < 1:
            raise ValueError("sketch rank must be at least 1")
        rng = np.random.default_rng(seed)
        om = rng.standard_normal((rows, S)) + 1j * rng.standard_normal((rows, S))
        return RandomSketch(S=S, seed=seed, omega=om)


class UnitaryFactor:
    """Orthonormal-column target factor L of shape (N+Q-1) x Q.

    Exact mode stores L densely. Randomized mode stores the thin factors
    (U2, U1) with L = U2 U1^H of rank at most S; the dense matrix is only
    materialized on request so the working set stays O(S (N+Q)).
    """

    __slots__ = ("mode", "N", "Q", "_L", "U2", "U1", "singular_values", "S", "seed")

    def __init__(self, mode, N, Q, L=None, U2=None, U1=None,
                 singular_values=None, S=None, seed=None):
        self.mode = mode
        self.N = N
        self.Q = Q
        self._L = L
        self.U2 = U2
        self.U1 = U1
        self.singular_values = singular_values
        self.S = S
        self.seed = seed

    def dense_l(self) -> np.ndarray:
        if self._L is not None:
            return self._L
        return self.U2 @ self.U1.conj().T

    def position_values(self, scale: float = 1.0) -> np.ndarray:
        """(N, Q) array of scale * L[n+j-1, j]: the target points that sit
        at the positions element n occupies in the convolution matrix."""
        out = np.empty((self.N, self.Q), dtype=np.complex128)
        for start, block in self.position_blocks(scale):
            out[start:start + block.shape[0]] = block
        return out

    def position_blocks(self, scale: float = 1.0, block_rows: int = _POSITION_BLOCK):
        """Yield (start_row, block) pairs of the position-value matrix."""
        if self._L is not None:
            windows = sliding_window_view(self._L, self.Q, axis=0)  # (N, Q, Q)
            for start in range(0, self.N, block_rows):
                stop = min(start + block_rows, self.N)
                yield start, scale * np.einsum("njj->nj", windows[start:stop])
        else:
            yield from paired_position_blocks(self.U2, self.U1, self.N, self.Q,
                                              scale, block_rows)


def paired_position_blocks(a: np.ndarray, c: np.ndarray, N: int, Q: int,
                           scale: float = 1.0,
                           block_rows: int = _POSITION_BLOCK):
    """Blocks of scale * (a c^H)[n+j-1, j] for a (N+Q-1) x S and c Q x S.

    This walks the product of two thin factors at the positions each
    sequence element occupies, without forming the (N+Q-1) x Q product.
    Accumulating one rank at a time over contiguous windows keeps the
    working set at O(block_rows * Q).
    """
    cc = np.conj(c)
    s_rank = a.shape[1]
    for start in range(0, N, block_rows):
        stop = min(start + block_rows, N)
        acc = None
        for s in range(s_rank):
            win = sliding_window_view(a[start:stop + Q - 1, s], Q)
            term = win * cc[:, s]
            acc = term if acc is None else acc + term
        yield start, acc if scale == 1.0 else scale * acc


def exact_unitary_factor(xt: ConvolutionMatrix) -> UnitaryFactor:
    """Orthonormal factor from the economy SVD of the conjugate transpose."""
    a = xt.dense().conj().T
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    u1, _, u2h = np.linalg.svd(a, full_matrices=False)
    l_mat = u2h.conj().T @ u1.conj().T
    return UnitaryFactor("exact", xt.N, xt.Q, L=l_mat)


def randomized_unitary_factor(xt: ConvolutionMatrix, S: int, seed: int) -> UnitaryFactor:
    """Rank-S sketched factor: Gaussian sketch, thin QR range basis, small
    SVD, then L = U2 U1^H held in factored form."""
    if not 1 <= S <= xt.Q:
        raise ValueError(f"sketch rank must satisfy 1 <= S <= Q, got S={S}, Q={xt.Q}")
    rows = xt.N + xt.Q - 1
    sketch = RandomSketch.draw(rows, S, seed)
    y = xt.hermitian_product(sketch.omega)          # Q x S
    qf, _ = np.linalg.qr(y)                         # Q x S, orthonormal columns
    bh = xt.product(qf)                             # (N+Q-1) x S, equals B^H
    u1_hat, sigma, u2h = np.linalg.svd(bh.conj().T, full_matrices=False)
    return UnitaryFactor("randomized", xt.N, xt.Q,
                         U2=u2h.conj().T, U1=qf @ u1_hat,
                         singular_values=sigma, S=S, seed=seed)


def gather_mu(L: UnitaryFactor, n: int, N: int, Q: int, scale: float) -> PointSet:
    """The Q scaled factor entries at the positions element n occupies.

    ``n`` is 1-based to match the sequence indexing convention.
    """
    if L.N != N or L.Q != Q:
        raise ValueError("factor shape disagrees with the stated N, Q")
    if not 1 <= n <= N:
        raise ValueError(f"element index must satisfy 1 <= n <= N, got {n}")
    j = np.arange(Q)
    rows = (n - 1) + j
    if L._L is not None:
        vals = L._L[rows, j]
    else:
        vals = np.einsum("js,js->j", L.U2[rows], np.conj(L.U1))
    return PointSet(scale * vals)
