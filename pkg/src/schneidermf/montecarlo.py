"""Monte Carlo estimates of almost-everywhere power means under Haar measure.

Two samplers are provided.  ORBIT draws a Haar-random point of pZ_p (i.i.d.
uniform base-p digits) and iterates the Schneider map on it.  DIGIT_MODEL
draws the digit pairs directly, with P(a = k) = (p-1)/p**k and b uniform on
{1, ..., p-1}, treating successive pairs as independent.

Every sample i gets its own generator seeded from (seed, i), so results do not
depend on how samples are split across workers.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientTrustedDigits
from .means import power_mean
from .padic import PAdicInt, canonicalize, check_prime
from .schneider import DigitSequence, digits

DEFAULT_SEED = 20240521
ORBIT_PRECISION = 512
_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyz"


class SamplerMode(enum.Enum):
    ORBIT = "orbit"
    DIGIT_MODEL = "digit_model"


@dataclass(frozen=True)
class MonteCarloEstimate:
    q: float
    p: int
    mode: SamplerMode
    samples: int
    orbit_length: int
    mean: float
    stderr: float
    seed: int
    digits_used: int  # total digits that entered the per-sample means

    def as_dict(self) -> dict:
        return {"q": self.q, "p": self.p, "mode": self.mode.value,
                "samples": self.samples, "orbit_length": self.orbit_length,
                "mean": self.mean, "stderr": self.stderr, "seed": self.seed,
                "digits_used": self.digits_used}


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """Independent Philox stream for sample ``index`` of run ``seed``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def sample_haar_point(p: int, precision: int, rng: np.random.Generator) -> PAdicInt:
    """Haar-random element of pZ_p with ``precision`` random base-p digits.

    Digits c_1..c_precision are i.i.d. uniform and c_0 = 0, so the value is
    known modulo p**(precision + 1).
    """
    check_prime(p)
    if precision < 8:
        raise ValueError("precision must be at least 8")
    while True:
        c = rng.integers(0, p, size=precision)
        if c.any():
            break
    if p <= 36:
        text = "".join(_ALPHABET[d] for d in c[::-1].tolist())
        r = int(text, p) * p
    else:
        r = 0
        for d in c[::-1]:
            r = r * p + int(d)
        r *= p
    return canonicalize(r, p, precision + 1)


def sample_digit_model(p: int, n: int, rng: np.random.Generator) -> np.ndarray:
    """n i.i.d. digit pairs; column 0 holds a, column 1 holds b."""
    check_prime(p)
    u = 1.0 - rng.random(n)  # in (0, 1]
    a = np.floor(-np.log(u) / math.log(p)).astype(np.int64) + 1
    b = rng.integers(1, p, size=n) if p > 2 else np.ones(n, dtype=np.int64)
    return np.column_stack([a, b])


def orbit_digits(p: int, orbit_length: int, seed: int, index: int,
                 precision: int = ORBIT_PRECISION) -> DigitSequence:
    """Trusted Schneider digits of the Haar point drawn for sample ``index``."""
    rng = sample_stream(seed, index)
    x = sample_haar_point(p, precision, rng)
    return digits(x, orbit_length)


def _sample_means(args) -> tuple[list[float], int]:
    qs, p, mode, orbit_length, seed, index, precision = args
    if mode is SamplerMode.ORBIT:
        a = orbit_digits(p, orbit_length, seed, index, precision).a
    else:
        a = sample_digit_model(p, orbit_length, sample_stream(seed, index))[:, 0]
    if len(a) == 0:
        return [math.nan] * len(qs), 0
    return [power_mean(a, q) for q in qs], len(a)


def estimate_means(qs, p: int, mode: SamplerMode | str = SamplerMode.DIGIT_MODEL,
                   samples: int = 1000, orbit_length: int = 1000,
                   seed: int = DEFAULT_SEED, precision: int = ORBIT_PRECISION,
                   workers: int = 1) -> list[MonteCarloEstimate]:
    """Estimates for several exponents q computed from one set of draws."""
    check_prime(p)
    mode = SamplerMode(mode)
    qs = [float(q) for q in qs]
    if samples < 1 or orbit_length < 1:
        raise ValueError("samples and orbit_length must be >= 1")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    jobs = [(qs, p, mode, orbit_length, seed, i, precision) for i in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sample_means, jobs,
                                    chunksize=max(1, samples // (4 * workers))))
    else:
        results = [_sample_means(j) for j in jobs]
    lengths = np.array([n for _, n in results])
    short = int(np.sum(lengths < orbit_length / 2))
    if mode is SamplerMode.ORBIT and short > 0.1 * samples:
        raise InsufficientTrustedDigits(
            f"{short} of {samples} orbits kept fewer than {orbit_length / 2:g} trusted digits; "
            f"raise precision above {precision}")
    table = np.array([m for m, n in results if n > 0])
    out = []
    for j, q in enumerate(qs):
        vals = table[:, j]
        mean = math.fsum(vals) / len(vals)
        # a single sample carries no spread information
        stderr = float(np.std(vals, ddof=1)) / math.sqrt(len(vals)) if len(vals) > 1 else math.inf
        out.append(MonteCarloEstimate(q=q, p=p, mode=mode, samples=samples,
                                      orbit_length=orbit_length, mean=mean, stderr=stderr,
                                      seed=seed, digits_used=int(lengths.sum())))
    return out


def estimate_mean(q: float, p: int, mode: SamplerMode | str = SamplerMode.DIGIT_MODEL,
                  samples: int = 1000, orbit_length: int = 1000,
                  seed: int = DEFAULT_SEED, precision: int = ORBIT_PRECISION,
                  workers: int = 1) -> MonteCarloEstimate:
    """Mean over samples of the per-sample q-power mean, with its standard error.

    ORBIT mode keeps only trusted digits of each orbit, so a sample may use
    fewer than ``orbit_length`` digits; InsufficientTrustedDigits is raised when
    more than 10% of samples fall below half the requested length.
    """
    return estimate_means([q], p, mode, samples, orbit_length, seed, precision, workers)[0]
