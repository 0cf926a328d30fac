"""Real special functions: polylogarithm, zeta, Gamma, Eulerian numbers, Lambert W.

The polylogarithm Li_s(z) is evaluated for real order s and 0 <= z <= 1 by
one of three routes:

* negative integer (or zero) order: the rational closed form built from a
  row of Eulerian numbers,
* z <= Z_SWITCH: the defining power series with an explicit tail bound,
* z > Z_SWITCH: the expansion in powers of log z,
  Gamma(1-s) (-log z)**(s-1) + sum_k zeta(s-k) (log z)**k / k!,
  with the Gamma pole at positive integer s replaced by its finite limit.

Functions taking ``z`` also accept ``omz`` = 1 - z, which callers should pass
when z is within a few ulps of 1 and 1 - z is known more accurately than z.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceFailure, DivergentTail, DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
Z_SWITCH = 0.5
EXPANSION_MAX_TERMS = 60
EXPANSION_TOL = 1e-16
DS0_EXPANSION_TOL = 1e-15
ZETA_PRIME_STEP = 1e-5
SERIES_MAX_TERMS = 50_000_000
_SERIES_CHUNK = 4096
_EPS = np.finfo(float).eps


class Method(enum.Enum):
    DIRECT_SERIES = "direct_series"
    EULERIAN_CLOSED_FORM = "eulerian_closed_form"
    GAMMA_ZETA_EXPANSION = "gamma_zeta_expansion"


@dataclass(frozen=True)
class PolylogResult:
    value: float
    method: Method
    error_estimate: float

    def __float__(self) -> float:
        return self.value


class Branch(enum.Enum):
    PRINCIPAL = 0
    MINUS_ONE = -1


# ---------------------------------------------------------------- Eulerian

@lru_cache(maxsize=None)
def _eulerian_row(m: int) -> tuple[int, ...]:
    if m == 0:
        return (1,)
    prev = _eulerian_row(m - 1)
    row = []
    for k in range(m):
        left = (k + 1) * prev[k] if k < len(prev) else 0
        right = (m - k) * prev[k - 1] if k >= 1 else 0
        row.append(left + right)
    return tuple(row)


def eulerian(m: int, k: int) -> int:
    """Number of permutations of {1..m} with exactly k ascents."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    row = _eulerian_row(m)
    if 0 <= k < len(row):
        return row[k]
    return 0


# -------------------------------------------------------------- Gamma, zeta

def gamma(x: float) -> float:
    if x <= 0 and float(x).is_integer():
        raise PoleError(f"Gamma has a pole at {x}")
    return math.gamma(x)


@lru_cache(maxsize=1)
def _borwein_coefficients(n: int = 64) -> tuple[float, ...]:
    # d_k = n * sum_{i<=k} (n+i-1)! 4**i / ((n-i)! (2i)!), computed exactly
    d = []
    acc = 0
    for i in range(n + 1):
        acc += math.factorial(n + i - 1) * 4**i * n // (math.factorial(n - i) * math.factorial(2 * i))
        d.append(acc)
    return tuple(float(v) for v in d)


def _eta(s: float) -> float:
    """Dirichlet eta function for s > 0 by Borwein's alternating-series acceleration."""
    d = _borwein_coefficients()
    n = len(d) - 1
    dn = d[n]
    k = np.arange(n)
    terms = (-1.0) ** k * (np.asarray(d[:n]) - dn) / (k + 1.0) ** s
    return -math.fsum(terms) / dn


def zeta(s: float) -> float:
    """Riemann zeta function for real s != 1."""
    s = float(s)
    if s == 1.0:
        raise PoleError("zeta has a pole at s = 1")
    if s == 0.0:
        return -0.5
    if s > 0:
        if s > 60:
            return 1.0 + 2.0**-s + 3.0**-s
        return _eta(s) / -math.expm1((1.0 - s) * math.log(2.0))
    if s.is_integer() and int(s) % 2 == 0:
        return 0.0
    # functional equation, assembled in log space so Gamma(1-s) cannot overflow early
    sine = math.sin(math.pi * s / 2.0)
    z1 = zeta(1.0 - s)
    sign = math.copysign(1.0, sine) * math.copysign(1.0, z1)
    logmag = (s * math.log(2.0) + (s - 1.0) * math.log(math.pi) + math.lgamma(1.0 - s)
              + math.log(abs(sine)) + math.log(abs(z1)))
    return sign * math.exp(logmag)


def zeta_prime(s: float) -> float:
    """Derivative of zeta by a central difference (exact shortcut at s = 0)."""
    s = float(s)
    if s == 1.0:
        raise PoleError("zeta' has a pole at s = 1")
    if s == 0.0:
        return -0.5 * math.log(2.0 * math.pi)
    h = ZETA_PRIME_STEP
    return (zeta(s + h) - zeta(s - h)) / (2.0 * h)


@lru_cache(maxsize=None)
def _zeta_prime_at_negative_integer(k: int) -> float:
    return zeta_prime(-float(k))


@lru_cache(maxsize=None)
def _zeta_at_integer(n: int) -> float:
    return zeta(float(n))


# ------------------------------------------------------------ polylogarithm

def _check_z(z: float, omz: float | None) -> tuple[float, float]:
    if omz is None:
        omz = 1.0 - z
    if not (0.0 <= z <= 1.0) or math.isnan(z):
        raise DomainError(f"z = {z} outside [0, 1]")
    return float(z), float(omz)


def _series(s: float, z: float, log_weight: bool = False) -> tuple[float, float]:
    """Partial sums of sum_n z**n n**-s (or sum_n z**n log n) with a tail bound."""
    logz = math.log(z)
    total = []
    start = 1
    abs_sum = 0.0
    while True:
        n = np.arange(start, start + _SERIES_CHUNK, dtype=float)
        if log_weight:
            terms = np.exp(n * logz) * np.log(n)
        else:
            terms = np.exp(n * logz - s * np.log(n))
        total.append(math.fsum(terms))
        abs_sum += float(np.abs(terms).sum())
        N = start + _SERIES_CHUNK - 1
        # tail bound after term N
        if log_weight:
            tail = z ** (N + 1) * math.log(N + 1) / (1.0 - z) ** 2
        else:
            nxt = math.exp((N + 1) * logz - s * math.log(N + 1))
            ratio = z * ((N + 2) / (N + 1)) ** (-s) if s < 0 else z
            tail = nxt / (1.0 - ratio) if ratio < 1 else math.inf
        value = math.fsum(total)
        if tail <= 1e-17 * max(abs(value), 1e-300) or tail == 0.0:
            return value, tail + _EPS * abs_sum
        start = N + 1
        if start > SERIES_MAX_TERMS:
            raise ConvergenceFailure(
                f"direct series for Li_{s}({z}) needs more than {SERIES_MAX_TERMS} terms")


def _eulerian_closed_form(m: int, z: float, omz: float) -> float:
    row = _eulerian_row(m)
    poly = 0.0
    for c in reversed(row):
        poly = poly * z + float(c)
    return z * poly / omz ** (m + 1)


def _expansion_terms(coeff, logz: float, tol: float, what: str) -> tuple[float, float]:
    """Sum coeff(k) logz**k / k! for k = 0, 1, ... with a divergence guard."""
    terms = []
    power = 1.0
    env_prev = math.inf
    for k in range(EXPANSION_MAX_TERMS + 1):
        if k > 0:
            power *= logz / k
        c = coeff(k)
        t = c * power
        terms.append(t)
        partial = math.fsum(terms)
        if k >= 2:
            env = max(abs(terms[-1]), abs(terms[-2]))
            small = tol * max(1.0, abs(partial))
            if abs(t) < small and abs(terms[-2]) < small:
                return partial, env + _EPS * sum(abs(x) for x in terms)
            # compare disjoint pairs so a single near-zero coefficient is not mistaken for growth
            if k % 2 == 1:
                if k >= 7 and env > env_prev:
                    raise DivergentTail(f"{what}: terms grow at k = {k} (log z = {logz})")
                env_prev = env
    raise DivergentTail(f"{what}: no convergence in {EXPANSION_MAX_TERMS} terms (log z = {logz})")


def _near_positive_integer(s: float) -> int | None:
    n = round(s)
    if n >= 1 and abs(s - n) < 1e-12:
        return int(n)
    return None


def _expansion(s: float, logz: float) -> tuple[float, float]:
    t = -logz
    n = _near_positive_integer(s)
    if n is not None:
        # Gamma(1-s) pole cancels the zeta(s-k) pole at k = n-1
        harmonic = math.fsum(1.0 / j for j in range(1, n))
        lead = logz ** (n - 1) / math.factorial(n - 1) * (harmonic - math.log(t))

        def coeff(k):
            return 0.0 if k == n - 1 else _zeta_at_integer(n - k)
    else:
        lead = gamma(1.0 - s) * t ** (s - 1.0)

        def coeff(k):
            return zeta(s - k)
    rest, err = _expansion_terms(coeff, logz, EXPANSION_TOL, f"Li_{s}")
    return lead + rest, err + _EPS * abs(lead)


def polylog(s: float, z: float, omz: float | None = None,
            method: Method | None = None) -> PolylogResult:
    """Li_s(z) for real s and 0 <= z < 1 (z = 1 allowed when s > 1).

    ``method`` forces a route; by default it is chosen from (s, z).
    """
    s = float(s)
    z, omz = _check_z(z, omz)
    if omz == 0.0:
        if s <= 1:
            raise DomainError(f"Li_{s}(1) diverges")
        return PolylogResult(zeta(s), Method.GAMMA_ZETA_EXPANSION, 1e-15 * zeta(s))
    if z == 0.0:
        return PolylogResult(0.0, Method.DIRECT_SERIES, 0.0)

    neg_int = s <= 0 and s.is_integer()
    if method is None:
        if neg_int:
            method = Method.EULERIAN_CLOSED_FORM
        elif s == 1.0:
            # closed form -log(1-z), reported under the closed-form tag
            return PolylogResult(-math.log(omz), Method.EULERIAN_CLOSED_FORM,
                                 _EPS * abs(math.log(omz)))
        elif z <= Z_SWITCH:
            method = Method.DIRECT_SERIES
        else:
            method = Method.GAMMA_ZETA_EXPANSION

    if method is Method.EULERIAN_CLOSED_FORM:
        if not neg_int:
            raise DomainError("Eulerian closed form needs a nonpositive integer order")
        m = int(-s)
        v = _eulerian_closed_form(m, z, omz)
        return PolylogResult(v, method, 4 * (m + 2) * _EPS * abs(v))
    if method is Method.DIRECT_SERIES:
        v, err = _series(s, z)
        return PolylogResult(v, method, err)
    logz = math.log1p(-omz) if omz < 0.5 else math.log(z)
    if logz == 0.0:
        raise DomainError("z too close to 1 for a finite expansion")
    v, err = _expansion(s, logz)
    return PolylogResult(v, Method.GAMMA_ZETA_EXPANSION, err)


def polylog_ds0(z: float, omz: float | None = None,
                method: Method | None = None) -> PolylogResult:
    """d/ds Li_s(z) at s = 0, i.e. -sum_{n>=2} z**n log n."""
    z, omz = _check_z(z, omz)
    if omz == 0.0:
        raise DomainError("d/ds Li_s(1) at s = 0 diverges")
    if z == 0.0:
        return PolylogResult(0.0, Method.DIRECT_SERIES, 0.0)
    if method is None:
        method = Method.DIRECT_SERIES if z <= Z_SWITCH else Method.GAMMA_ZETA_EXPANSION
    if method is Method.DIRECT_SERIES:
        v, err = _series(0.0, z, log_weight=True)
        return PolylogResult(-v, method, err)
    if method is not Method.GAMMA_ZETA_EXPANSION:
        raise DomainError(f"{method} is not available for the order derivative")
    logz = math.log1p(-omz) if omz < 0.5 else math.log(z)
    if logz == 0.0:
        raise DomainError("z too close to 1 for a finite expansion")
    v, err = _ds0_expansion(logz)
    return PolylogResult(v, method, err)


def _ds0_expansion(logz: float) -> tuple[float, float]:
    t = -logz
    lead = (EULER_GAMMA + math.log(t)) / t
    rest, err = _expansion_terms(_zeta_prime_at_negative_integer, logz,
                                 DS0_EXPANSION_TOL, "d/ds Li_s at s=0")
    return lead + rest, err + _EPS * abs(lead)


# --------------------------------------------------------------- Lambert W

_INV_E = math.exp(-1.0)
# W(x) = -1 + p - p^2/3 + 11/72 p^3 - ... around the branch point, p = +-sqrt(2(ex+1))
_BRANCH_SERIES = (-1.0, 1.0, -1.0 / 3.0, 11.0 / 72.0, -43.0 / 540.0,
                  769.0 / 17280.0, -221.0 / 8505.0)


def _branch_series(p: float) -> float:
    acc = 0.0
    for c in reversed(_BRANCH_SERIES):
        acc = acc * p + c
    return acc


def lambert_w(branch: Branch | int, x: float) -> float:
    """Real Lambert W: the solution w of w*exp(w) = x on the requested branch."""
    branch = Branch(branch) if not isinstance(branch, Branch) else branch
    x = float(x)
    ex1 = math.e * x + 1.0
    if ex1 < 0.0:
        if ex1 > -4 * _EPS:
            ex1 = 0.0
        else:
            raise DomainError(f"W({x}) is not real")
    if branch is Branch.MINUS_ONE and x >= 0.0:
        raise DomainError("W_{-1} is defined on [-1/e, 0)")
    if ex1 == 0.0:
        return -1.0
    if x == 0.0:
        return 0.0
    p = math.sqrt(2.0 * ex1)
    if branch is Branch.MINUS_ONE:
        p = -p
    if abs(p) < 1e-3:
        return _branch_series(p)
    if branch is Branch.PRINCIPAL:
        if x < -0.25:
            w = _branch_series(p)
        elif x < 3.0:
            w = math.log1p(x)
        else:
            l1 = math.log(x)
            l2 = math.log(l1)
            w = l1 - l2 + l2 / l1
    else:
        if x < -0.25:
            w = _branch_series(p)
        else:
            l1 = math.log(-x)
            l2 = math.log(-l1)
            w = l1 - l2 + l2 / l1
    prev = math.inf
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1.0
        denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1)
        step = f / denom
        if abs(step) >= prev and abs(step) < 1e-10 * (1.0 + abs(w)):
            break  # rounding noise
        w -= step
        prev = abs(step)
        if abs(step) <= 4 * _EPS * (1.0 + abs(w)):
            break
    else:
        raise ConvergenceFailure(f"Halley iteration for W({x}) did not converge")
    return w
