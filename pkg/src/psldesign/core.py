"""Complex sequences, correlation profiles, scalar merit figures, and the
classic polyphase/biphase reference sequences.

All correlations follow the one-sided sum convention

    r_xy(k) = sum_{n=k+1}^{N} x_n * conj(y_{n-k}),   k = 0 .. N-1,

with negative lags reconstructed from r_xy(-k) = conj(r_yx(k)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# dB floor used whenever a magnitude underflows to zero on a log scale
DB_FLOOR = -400.0

_FFT_THRESHOLD = 600  # above this length, correlations go through the FFT


def as_samples(x) -> np.ndarray:
    """Coerce a ComplexSequence or array-like into a 1-D complex128 array."""
    if isinstance(x, ComplexSequence):
        return x.samples
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1:
        raise ValueError("sequence must be one dimensional")
    return arr


class ComplexSequence:
    """An ordered, immutable list of complex samples."""

    __slots__ = ("_samples",)

    def __init__(self, samples):
        arr = np.array(samples, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a sequence needs at least one sample")
        if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
            raise ValueError("sequence samples must be finite")
        arr.flags.writeable = False
        self._samples = arr

    @property
    def samples(self) -> np.ndarray:
        return self._samples

    def __len__(self) -> int:
        return self._samples.size

    def __iter__(self):
        return iter(self._samples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexSequence):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(self._samples == other._samples))

    def __repr__(self) -> str:
        return f"ComplexSequence(N={len(self)})"


class CorrelationProfile:
    """Full set of correlation lags r_k for k in [-(N-1), N-1].

    ``kind`` is "auto" or "cross". For auto profiles Hermitian symmetry
    r_{-k} = conj(r_k) holds by construction.
    """

    __slots__ = ("kind", "N", "_lags")

    def __init__(self, kind: str, N: int, lags: np.ndarray):
        if kind not in ("auto", "cross"):
            raise ValueError(f"unknown profile kind {kind!r}")
        lags = np.asarray(lags, dtype=np.complex128)
        if lags.shape != (2 * N - 1,):
            raise ValueError("lag array must have length 2N-1")
        lags.flags.writeable = False
        self.kind = kind
        self.N = N
        self._lags = lags

    def lag(self, k: int) -> complex:
        """Value r_k; k may be negative."""
        if abs(k) > self.N - 1:
            raise IndexError(f"lag {k} outside [-(N-1), N-1]")
        return complex(self._lags[self.N - 1 + k])

    @property
    def lags(self) -> np.ndarray:
        """All lags as an array indexed from k = -(N-1) to k = N-1."""
        return self._lags

    def positive_lags(self) -> np.ndarray:
        """Array of r_0, r_1, ..., r_{N-1}."""
        return self._lags[self.N - 1:]


@dataclass(frozen=True)
class MetricsReport:
    """Scalar merit figures of an autocorrelation profile.

    ``mpcl`` and ``mmf`` only look at the suppression window, lags 1..Q-1.
    ``normalized_autocorr_db`` lists (lag, dB) pairs for lags 1..N-1 with
    zero magnitudes clamped at DB_FLOOR.
    """

    isl: float
    psl: float
    pcl_db: float
    mmf: float
    mpcl: float
    q: int
    normalized_autocorr_db: list = field(repr=False)


def _full_correlation(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Linear cross-correlation at every lag, index k + (N-1)."""
    n = x.size
    if n <= _FFT_THRESHOLD:
        return np.correlate(x, y, mode="full")
    size = 1 << int(np.ceil(np.log2(2 * n - 1)))
    fx = np.fft.fft(x, size)
    fy = np.fft.fft(y, size)
    c = np.fft.ifft(fx * np.conj(fy))
    out = np.empty(2 * n - 1, dtype=np.complex128)
    out[n - 1:] = c[:n]
    out[:n - 1] = c[size - n + 1:]
    return out


def autocorrelation(x) -> CorrelationProfile:
    """Autocorrelation of a sequence, Hermitian by construction."""
    xs = as_samples(x)
    if not np.all(np.isfinite(xs.real)) or not np.all(np.isfinite(xs.imag)):
        raise ValueError("sequence samples must be finite")
    lags = _full_correlation(xs, xs)
    n = xs.size
    # enforce exact symmetry and a real r_0 against round-off
    pos = lags[n - 1:].copy()
    pos[0] = pos[0].real
    full = np.concatenate([np.conj(pos[:0:-1]), pos])
    return CorrelationProfile("auto", n, full)


def cross_correlation(x, y) -> CorrelationProfile:
    """Cross-correlation profile of two equal-length sequences."""
    xs = as_samples(x)
    ys = as_samples(y)
    if xs.size != ys.size:
        raise ValueError(f"length mismatch: {xs.size} vs {ys.size}")
    lags = _full_correlation(xs, ys)
    return CorrelationProfile("cross", xs.size, lags)


def compute_metrics(profile: CorrelationProfile, Q: int) -> MetricsReport:
    """Merit figures of an autocorrelation profile for window size Q.

    Raises on cross profiles, on Q outside [2, N], and on r_0 = 0.
    """
    if profile.kind != "auto":
        raise ValueError("metrics are defined for autocorrelation profiles")
    n = profile.N
    if not 2 <= Q <= n:
        raise ValueError(f"Q must satisfy 2 <= Q <= N, got Q={Q}, N={n}")
    pos = profile.positive_lags()
    r0 = pos[0].real
    if r0 == 0.0:
        raise ValueError("degenerate profile: r_0 = 0")
    side = np.abs(pos[1:])
    isl = float(np.sum(side ** 2))
    psl = float(side.max()) if side.size else 0.0
    pcl_db = _to_db(psl / r0)
    window = side[:Q - 1]
    wsum = float(np.sum(window ** 2))
    mmf = float(n * n / (2.0 * wsum)) if wsum > 0.0 else np.inf
    mpcl = float(window.max() / r0)
    table = [(k, _to_db(side[k - 1] / r0)) for k in range(1, n)]
    return MetricsReport(isl=isl, psl=psl, pcl_db=pcl_db, mmf=mmf, mpcl=mpcl,
                         q=Q, normalized_autocorr_db=table)


def _to_db(ratio: float) -> float:
    if ratio <= 0.0:
        return DB_FLOOR
    return max(DB_FLOOR, 20.0 * np.log10(ratio))


def ccp(x, y) -> float:
    """Cross-correlation peak: max |r_xy(k)| over every lag."""
    return float(np.abs(cross_correlation(x, y).lags).max())


def chebyshev_norm(a) -> float:
    """Largest entry modulus of a matrix or vector."""
    arr = np.asarray(a)
    if arr.size == 0:
        raise ValueError("norm of an empty matrix is undefined")
    return float(np.abs(arr).max())


def lex_compare(a: complex, b: complex) -> int:
    """Dictionary-order comparison: imaginary part first, then real part.

    Returns -1 if a < b, 0 if equal, +1 if a > b.
    """
    a = complex(a)
    b = complex(b)
    if a.imag != b.imag:
        return -1 if a.imag < b.imag else 1
    if a.real != b.real:
        return -1 if a.real < b.real else 1
    return 0


def lex_min(values) -> complex:
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if vals.size == 0:
        raise ValueError("empty set has no minimum")
    order = np.lexsort((vals.real, vals.imag))
    return complex(vals[order[0]])


def lex_max(values) -> complex:
    vals = np.asarray(values, dtype=np.complex128).ravel()
    if vals.size == 0:
        raise ValueError("empty set has no maximum")
    order = np.lexsort((vals.real, vals.imag))
    return complex(vals[order[-1]])


def golomb(N: int) -> ComplexSequence:
    """Polyphase sequence G(n) = exp(i (n-1) n pi / N)."""
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(1, N + 1)
    return ComplexSequence(np.exp(1j * (n - 1) * n * np.pi / N))


def chu(N: int) -> ComplexSequence:
    """Polyphase sequence with the even/odd quadratic phase branches."""
    if N < 1:
        raise ValueError("N must be at least 1")
    n = np.arange(1, N + 1)
    even = np.exp(1j * (n - 1) ** 2 * np.pi / N)
    odd = np.exp(1j * (n - 1) * n * np.pi / N)
    return ComplexSequence(np.where(n % 2 == 0, even, odd))


_BARKER13 = (1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1)


def barker13() -> ComplexSequence:
    """The length-13 Barker code."""
    return ComplexSequence(np.array(_BARKER13, dtype=np.complex128))


def welch_bound(M: int, N: int, unimodular: bool = False) -> float:
    """Lower bound on the largest correlation side-lobe of an M-sequence set.

    The plain form applies to unit-power sequences; with ``unimodular`` the
    bound scales by N because each sequence then carries power N.
    """
    if M < 1 or N < 1:
        raise ValueError("M and N must be positive")
    denom = M * (2 * N - 1) - 1
    if denom == 0:
        raise ValueError("degenerate bound: M (2N - 1) = 1")
    bound = np.sqrt((M - 1) / denom)
    return float(N * bound) if unimodular else float(bound)
