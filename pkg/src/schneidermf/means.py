"""Finite q-power means of digit sequences."""
from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from .errors import DomainError, EmptySequence

# |q| below this is treated as the geometric mean
GEOMETRIC_THRESHOLD = 1e-10
# switch to log-sum-exp once q*log(max digit) exceeds this
LOG_SPACE_THRESHOLD = 600.0


def _as_digits(digits) -> np.ndarray:
    a = np.asarray(digits, dtype=float)
    if a.ndim != 1 or a.size == 0:
        raise EmptySequence("need at least one digit")
    if np.any(a < 1):
        raise DomainError("digits must be >= 1")
    return a


def power_mean(digits: Sequence[float], q: float) -> float:
    """((1/n) sum a_i**q)**(1/q); the geometric mean when q == 0."""
    a = _as_digits(digits)
    logs = np.log(a)
    if abs(q) < GEOMETRIC_THRESHOLD:
        return math.exp(math.fsum(logs) / a.size)
    if q * logs.max() > LOG_SPACE_THRESHOLD:
        qlogs = q * logs
        m = qlogs.max()
        lse = m + math.log(math.fsum(np.exp(qlogs - m)) / a.size)
        return math.exp(lse / q)
    return (math.fsum(a**q) / a.size) ** (1.0 / q)


def birkhoff_potential_mean(digits: Sequence[float], q: float, p: int) -> float:
    """Birkhoff average of (log psi)**q, or of log log psi when q == 0.

    Here log psi = a*log p, so this equals (log p)**q * power_mean**q for
    q != 0 and log log p + log power_mean for q == 0.
    """
    a = _as_digits(digits)
    logpsi = a * math.log(p)
    if abs(q) < GEOMETRIC_THRESHOLD:
        return math.fsum(np.log(logpsi)) / a.size
    return math.fsum(logpsi**q) / a.size
