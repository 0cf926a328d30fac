"""Multifractal spectrum of digit power means for the Schneider map.

The canonical variable is the Lyapunov exponent ``lam`` (natural-log units,
lam >= log p).  The mean digit is ``a = lam / log p``.  For every q the level
set of points whose q-power mean equals beta has the same dimension as the
level set of Lyapunov exponent lam(beta), where lam(beta) solves

    beta**q = log p / (lam - log p) * Li_{-q}((lam - log p) / lam)        (q != 0)
    log beta = -log p / (lam - log p) * d/ds Li_s((lam - log p) / lam)|_0  (q == 0)
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import (BracketFailure, ConvergenceFailure, DivergentTail, DomainError,
                     NoBracket, NumericalFailure)
from .means import GEOMETRIC_THRESHOLD
from .padic import check_prime
from .specfun import (EULER_GAMMA, Branch, lambert_w, polylog, polylog_ds0,
                      zeta_prime)

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SELF_CHECK_TOL = 1e-10
SOLVER_MAX_ITER = 200
BRACKET_MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class SpectrumPoint:
    q: float
    beta: float
    lam: float  # Lyapunov exponent, >= log p
    mean_digit: float
    s_alpha: float  # inf at the endpoint lam = log p
    dimension: float
    p: int

    def as_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d


def _log_expm1(x: float) -> float:
    """log(exp(x) - 1) for x > 0 without overflow."""
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def pressure(s: float, p: int) -> float:
    """P(-s log psi) = log((p-1)/(p**s - 1))."""
    check_prime(p)
    if s <= 0:
        raise DomainError("pressure diverges for s <= 0")
    return math.log(p - 1) - _log_expm1(s * math.log(p))


def s_alpha(lam: float, p: int) -> float:
    """Minimiser of pressure(s) + s*lam: log_p(lam / (lam - log p))."""
    L = math.log(p)
    if lam < L:
        raise DomainError(f"lambda = {lam} < log p")
    if lam == L:
        return math.inf
    return -math.log1p(-L / lam) / L


def _check_lambda(lam: float, p: int) -> float:
    check_prime(p)
    L = math.log(p)
    if not lam >= L:
        raise DomainError(f"lambda = {lam} is below log p = {L}")
    return L


def lyapunov_dimension(lam: float, p: int) -> float:
    """Hausdorff dimension of the level set of Lyapunov exponent lam."""
    L = _check_lambda(lam, p)
    if lam == L:
        return math.log(p - 1) / L
    num = (math.log(p - 1) + math.log(lam - L) - math.log(L)
           + lam * math.log(lam) / L - lam * math.log(lam - L) / L)
    return num / lam


def digit_dimension(a: float, p: int) -> float:
    """The same dimension written in the mean digit a = lam / log p (0 log 0 = 0)."""
    check_prime(p)
    if a < 1:
        raise DomainError(f"mean digit {a} < 1")
    # a log a - (a-1) log(a-1) = log a - (a-1) log(1 - 1/a)
    ent = math.log(a) - (a - 1.0) * math.log1p(-1.0 / a) if a > 1 else 0.0
    return (ent + math.log(p - 1)) / (a * math.log(p))


def legendre_oracle(lam: float, p: int, tol: float = 1e-13) -> float:
    """(1/lam) * min_{s>0} [pressure(s, p) + s*lam], by golden-section search."""
    L = _check_lambda(lam, p)
    if lam == L:
        raise DomainError("no interior minimum at lambda = log p")
    s_lo, s_hi = 1e-9, 1e3

    def f(s):
        return pressure(s, p) + s * lam

    s = 1.0
    fs = f(s)
    if f(s / 2) < fs:
        while True:
            s /= 2
            if s < s_lo:
                raise BracketFailure(f"minimum below s = {s_lo}")
            fn = f(s / 2)
            if fn >= f(s):
                break
    elif f(2 * s) < fs:
        while True:
            s *= 2
            if s > s_hi:
                raise BracketFailure(f"minimum above s = {s_hi}")
            fn = f(2 * s)
            if fn >= f(s):
                break
    a, b = s / 2, 2 * s
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol * (abs(c) + abs(d)):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return min(fc, fd) / lam


def _z_and_complement(lam: float, L: float) -> tuple[float, float]:
    return (lam - L) / lam, L / lam


def log_mean_at_lambda(q: float, lam: float, p: int) -> float:
    """log of the q-power mean attained at Lyapunov exponent lam."""
    L = _check_lambda(lam, p)
    if lam == L:
        return 0.0
    z, omz = _z_and_complement(lam, L)
    log_pref = math.log(L) - math.log(lam - L)
    if abs(q) < GEOMETRIC_THRESHOLD:
        return -math.exp(log_pref) * polylog_ds0(z, omz).value
    li = polylog(-q, z, omz).value
    return (log_pref + math.log(li)) / q


def mean_at_lambda(q: float, lam: float, p: int) -> float:
    """The q-power mean beta of typical points with Lyapunov exponent lam."""
    return math.exp(log_mean_at_lambda(q, lam, p))


def solve_lambda(q: float, beta: float, p: int) -> float:
    """The unique lam >= log p with mean_at_lambda(q, lam, p) == beta."""
    check_prime(p)
    L = math.log(p)
    if not beta >= 1:
        raise DomainError(f"beta = {beta} < 1 is not an attainable mean")
    if beta == 1:
        return L
    target = math.log(beta)

    def g(lam):
        return log_mean_at_lambda(q, lam, p) - target

    lo = L * (1.0 + 1e-9)
    if g(lo) >= 0:
        raise NoBracket(f"beta = {beta} is too close to 1 to bracket")
    hi = None
    for k in range(1, BRACKET_MAX_DOUBLINGS + 1):
        cand = L * 2.0**k
        if g(cand) >= 0:
            hi = cand
            break
        lo = cand
    if hi is None:
        raise NoBracket(f"beta = {beta} not reached for lambda up to 2^{BRACKET_MAX_DOUBLINGS} log p")
    try:
        lam = brentq(g, lo, hi, xtol=1e-15 * lo, rtol=4 * np.finfo(float).eps,
                     maxiter=SOLVER_MAX_ITER)
    except RuntimeError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return lam


def lambda_harmonic_closed_form(beta: float, p: int) -> float:
    """Root for q = -1 via the lower real branch of Lambert W.

    With a = lam / log p the defining relation is a - 1 = beta log a, whose
    solutions are a = -beta W(-exp(-1/beta)/beta).  The principal branch gives
    the trivial a = 1; the lower branch gives the nontrivial root.
    """
    check_prime(p)
    if not beta >= 1:
        raise DomainError(f"beta = {beta} < 1")
    L = math.log(p)
    if beta == 1:
        return L
    w = lambert_w(Branch.MINUS_ONE, -math.exp(-1.0 / beta) / beta)
    return -L * beta * w


def lambda_quadratic_closed_form(beta: float, p: int) -> float:
    """Root for q = 2: lam = log p (1 + sqrt(1 + 8 beta^2)) / 4."""
    check_prime(p)
    if not beta >= 1:
        raise DomainError(f"beta = {beta} < 1")
    return math.log(p) * (1.0 + math.sqrt(1.0 + 8.0 * beta * beta)) / 4.0


def dimension(q: float, beta: float, p: int) -> SpectrumPoint:
    """Hausdorff dimension of the set of points whose q-power mean is beta."""
    lam = solve_lambda(q, beta, p)
    L = math.log(p)
    a = lam / L
    dim = digit_dimension(a, p)
    other = lyapunov_dimension(lam, p)
    if abs(dim - other) > SELF_CHECK_TOL:
        raise NumericalFailure(
            f"dimension forms disagree at lambda = {lam}: {dim} vs {other}")
    return SpectrumPoint(q=float(q), beta=float(beta), lam=lam, mean_digit=a,
                         s_alpha=s_alpha(lam, p), dimension=dim, p=p)


def haar_mean(q: float, p: int) -> float:
    """Asymptotic q-power mean of Haar-almost every point of pZ_p."""
    check_prime(p)
    z = 1.0 / p
    if abs(q) < GEOMETRIC_THRESHOLD:
        return math.exp(-(p - 1) * polylog_ds0(z).value)
    return ((p - 1) * polylog(-q, z).value) ** (1.0 / q)


def haar_lambda(p: int) -> float:
    """Lyapunov exponent of Haar measure, p/(p-1) log p."""
    check_prime(p)
    return p / (p - 1) * math.log(p)


def geometric_example_series(lam: float, p: int, K: int = 20) -> float:
    """log beta for q = 0 from the expansion in w = 1 - log p / lam, truncated at K.

    log beta = -(log p/(lam - log p)) [(gamma + log t)/t + sum_{k<=K} zeta'(-k) (-t)^k / k!]
    with t = -log w.  Terms grow once t exceeds 2 pi, reported as DivergentTail.
    """
    L = _check_lambda(lam, p)
    if lam == L:
        raise DivergentTail("expansion variable is infinite at lambda = log p")
    t = -math.log1p(-L / lam)
    total = (EULER_GAMMA + math.log(t)) / t
    prev_pair = math.inf
    last = 0.0
    for k in range(K + 1):
        term = zeta_prime(-float(k)) * (-t) ** k / math.factorial(k)
        total += term
        if k % 2 == 1:
            pair = max(abs(term), abs(last))
            if k >= 5 and pair > prev_pair:
                raise DivergentTail(f"terms grow at k = {k} (t = {t})")
            prev_pair = pair
        last = term
    return -L / (lam - L) * total


def monotonicity_audit(q: float, p: int, lambdas=None) -> bool:
    """True if beta(lam) is strictly increasing on the grid."""
    L = math.log(p)
    if lambdas is None:
        lambdas = L * (1.0 + np.geomspace(1e-6, 1e4, 200))
    vals = [log_mean_at_lambda(q, float(x), p) for x in lambdas]
    return all(b > a for a, b in zip(vals, vals[1:]))
