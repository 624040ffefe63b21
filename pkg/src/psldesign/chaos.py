"""Piecewise-linear chaotic maps used to seed the design loops.

Two maps are provided: the classic unit-interval shift with parameter
``lam``, and the sign-balanced two-branch variant on (-A, A) with slope B.
The latter is chaotic for every B > 1 (its orbit-average log-derivative is
log B) and is the default waveform seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ComplexSequence

DEFAULT_BURN_IN = 128
_ZERO_NUDGE = 1e-12  # measure-zero iterates are nudged off the breakpoints


@dataclass(frozen=True)
class ChaoticParams:
    """Parameters of a chaotic generator.

    variant "bernoulli": state space (0, 1), branch point 1 - lam.
    variant "modified": state space (-A, A), slopes B with offsets -/+ A.
    """

    variant: str
    x0: float
    lam: float = 0.5
    A: float = 1.0
    B: float = 1.9
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if self.variant not in ("bernoulli", "modified"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")
        if self.variant == "bernoulli":
            if not 0.0 < self.lam < 1.0:
                raise ValueError("lam must lie in (0, 1)")
            if not 0.0 < self.x0 < 1.0:
                raise ValueError("x0 must lie in (0, 1)")
        else:
            if self.A <= 0.0:
                raise ValueError("A must be positive")
            if not 1.0 < self.B <= 2.0:
                raise ValueError("B must lie in (1, 2]")
            if not -self.A < self.x0 < self.A or self.x0 == 0.0:
                raise ValueError("x0 must lie in (-A, A) and be nonzero")


def iterate_bernoulli(x, lam: float):
    """One vectorized step of the unit-interval map."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x < 1.0 - lam, x / lam, (x - (1.0 - lam)) / lam)


def iterate_modified(x, A: float, B: float):
    """One vectorized step of the two-branch map, nudging exact zeros."""
    x = np.asarray(x, dtype=np.float64)
    x = np.where(x == 0.0, _ZERO_NUDGE * A, x)
    return np.where(x < 0.0, B * x + A, B * x - A)


def bernoulli_sequence(params: ChaoticParams, length: int) -> np.ndarray:
    """Orbit of the unit-interval map, burn-in discarded.

    Iterates that land exactly on the interval boundary (a rounding
    artifact; the lam = 1/2 doubling map reaches 0 from any float start)
    are nudged back inside. Escaping iterates raise: for lam < 1/2 the
    printed branch map is not invariant on (0, 1).
    """
    if params.variant != "bernoulli":
        raise ValueError("params must use the bernoulli variant")
    if length < 1:
        raise ValueError("length must be positive")
    lam = params.lam
    split = 1.0 - lam
    x = params.x0
    total = length + params.burn_in
    out = np.empty(total)
    for i in range(total):
        x = x / lam if x < split else (x - split) / lam
        if x <= 0.0 or x >= 1.0:
            if x == 0.0:
                x = _ZERO_NUDGE
            elif x == 1.0:
                x = 1.0 - _ZERO_NUDGE
            else:
                raise ValueError(
                    f"orbit left (0, 1) at step {i}: x = {x!r} (lam = {lam})")
        out[i] = x
    return out[params.burn_in:]


def modified_bernoulli_sequence(params: ChaoticParams, length: int) -> np.ndarray:
    """Orbit of the two-branch map on (-A, A), burn-in discarded."""
    if params.variant != "modified":
        raise ValueError("params must use the modified variant")
    if length < 1:
        raise ValueError("length must be positive")
    a, b = params.A, params.B
    x = params.x0
    total = length + params.burn_in
    out = np.empty(total)
    for i in range(total):
        if x == 0.0:
            x = _ZERO_NUDGE * a
        x = b * x + a if x < 0.0 else b * x - a
        out[i] = x
    return out[params.burn_in:]


def lyapunov_estimate(params: ChaoticParams, n_steps: int) -> float:
    """Orbit average of log |f'(x)|.

    Both maps are piecewise linear so the average equals the log slope;
    it is still computed sample by sample along an actual orbit.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be positive")
    if params.variant == "bernoulli":
        orbit = bernoulli_sequence(params, n_steps)
        slopes = np.full(orbit.size, 1.0 / params.lam)
    else:
        orbit = modified_bernoulli_sequence(params, n_steps)
        slopes = np.full(orbit.size, params.B)
    return float(np.mean(np.log(np.abs(slopes))))


def chaotic_init(params: ChaoticParams, N: int, encoding: str = "raw") -> ComplexSequence:
    """Chaotic solver initialization of length N.

    "raw" scales the real orbit to unit mean power. "phase" maps the
    orbit onto the unit circle (pi * u / A for the modified map, a full
    turn per unit for the bernoulli map), so the result is unimodular.
    """
    if encoding not in ("raw", "phase"):
        raise ValueError(f"unknown encoding {encoding!r}")
    if params.variant == "modified":
        u = modified_bernoulli_sequence(params, N)
        span = params.A
    else:
        u = bernoulli_sequence(params, N)
        span = 0.5
    if encoding == "raw":
        power = float(np.sum(u * u))
        if power == 0.0:
            raise ValueError("degenerate orbit with zero power")
        return ComplexSequence(u * np.sqrt(N / power))
    if params.variant == "modified":
        return ComplexSequence(np.exp(1j * np.pi * u / span))
    return ComplexSequence(np.exp(2j * np.pi * u))
