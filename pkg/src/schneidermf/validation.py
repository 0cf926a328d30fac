"""Validation suite: identities, oracle equivalences, round trips, Monte Carlo.

Each check returns a :class:`CheckResult`; :func:`run_all` runs every check.
The CLI ``validate`` command and the acceptance tests both use these checks.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import montecarlo as mc
from .padic import agree, is_prime
from .schneider import digits, reconstruct
from .specfun import EULER_GAMMA, Method, polylog, polylog_ds0
from .spectrum import (dimension, haar_lambda, haar_mean, lambda_harmonic_closed_form,
                       lambda_quadratic_closed_form, legendre_oracle, lyapunov_dimension,
                       mean_at_lambda, solve_lambda)


@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    seconds: float = 0.0
    budget: float = math.inf
    detail: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def in_budget(self) -> bool:
        return self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.passed and self.in_budget else "FAIL"
        return (f"{status} {self.name}: worst={self.worst:.3e} tol={self.tolerance:.1e} "
                f"time={self.seconds:.2f}s/{self.budget:g}s {self.detail}").rstrip()

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed and self.in_budget,
                "worst": self.worst, "tolerance": self.tolerance,
                "seconds": self.seconds, "budget": self.budget, "detail": self.detail}


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


Q_GRID = (-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0)
BETA_GRID = (1.1, 2.0, 5.0, 20.0)


@_timed
def check_haar_consistency() -> CheckResult:
    """dimension(q, haar_mean(q, p), p) == 1."""
    worst = 0.0
    for q in (-1.0, 0.0, 1.0, 2.0):
        for p in (2, 3, 5, 7):
            d = dimension(q, haar_mean(q, p), p).dimension
            worst = max(worst, abs(d - 1.0))
    return CheckResult("haar_consistency", worst < 1e-8, worst, 1e-8, budget=5)


@_timed
def check_legendre_oracle() -> CheckResult:
    """Closed-form Lyapunov spectrum against the numerical Legendre transform."""
    worst = 0.0
    for p in (2, 3, 5, 101):
        L = math.log(p)
        for lam in np.geomspace(1.001 * L, 1e3, 200):
            diff = abs(lyapunov_dimension(float(lam), p) - legendre_oracle(float(lam), p))
            worst = max(worst, diff)
    return CheckResult("legendre_oracle", worst < 1e-8, worst, 1e-8, budget=10)


@_timed
def check_closed_forms() -> CheckResult:
    """Root solver against the Lambert-W (q=-1) and quadratic (q=2) formulas."""
    worst = 0.0
    for p in (2, 3, 5):
        for beta in BETA_GRID:
            lam = solve_lambda(-1.0, beta, p)
            worst = max(worst, abs(lam / lambda_harmonic_closed_form(beta, p) - 1.0))
            lam = solve_lambda(2.0, beta, p)
            worst = max(worst, abs(lam / lambda_quadratic_closed_form(beta, p) - 1.0))
    return CheckResult("closed_form_specializations", worst < 1e-9, worst, 1e-9, budget=5)


@_timed
def check_haar_closed_values() -> CheckResult:
    """Quadratic and harmonic means at the Haar exponent, in closed form."""
    worst = 0.0
    for p in (n for n in range(2, 98) if is_prime(n)):
        lam = haar_lambda(p)
        b2 = mean_at_lambda(2.0, lam, p) ** 2
        worst = max(worst, abs(b2 / (p * (p + 1) / (p - 1) ** 2) - 1.0))
        inv = 1.0 / mean_at_lambda(-1.0, lam, p)
        worst = max(worst, abs(inv / ((p - 1) * math.log(p / (p - 1))) - 1.0))
    return CheckResult("haar_closed_values", worst < 1e-10, worst, 1e-10, budget=2)


def _limit_trends() -> tuple[bool, str]:
    lams = (10.0, 1e2, 1e3, 1e4)
    ok = True
    notes = []
    for p in (2, 3, 5):
        L = math.log(p)

        def seq(s):
            return [polylog(s, (lam - L) / lam, L / lam).value / lam for lam in lams]
        s2, s0, sm1 = seq(2.0), seq(0.0), seq(-1.0)
        dec = all(b < a for a, b in zip(s2, s2[1:])) and s2[-1] > 0
        to_inv_log = (all(b > a for a, b in zip(s0, s0[1:]))
                      and abs(s0[-1] * L - 1.0) < 0.01)
        grows = all(b > a for a, b in zip(sm1, sm1[1:])) and sm1[-1] > sm1[-2]
        if not (dec and to_inv_log and grows):
            ok = False
            notes.append(f"p={p}: s2 {dec}, s0 {to_inv_log}, s-1 {grows}")
    return ok, "; ".join(notes)


def envelope_ratios(p: int, lams) -> np.ndarray:
    """|(1/lam) ds0 - (gamma + log log p - log lam)/log p| * lam / log lam."""
    L = math.log(p)
    out = []
    for lam in lams:
        lam = float(lam)
        v = polylog_ds0((lam - L) / lam, L / lam).value / lam
        lead = (EULER_GAMMA + math.log(L) - math.log(lam)) / L
        out.append(abs(v - lead) * lam / math.log(lam))
    return np.array(out)


def _asymptotic_envelope() -> tuple[bool, float, str]:
    # decade-wise fitted constants must stay bounded and grow < 25% per decade
    worst = 0.0
    ok = True
    notes = []
    for p in (2, 3, 5):
        consts = []
        for k in range(2, 6):
            r = envelope_ratios(p, np.geomspace(10.0**k, 10.0 ** (k + 1), 9))
            consts.append(float(r.max()))
        growth = max(b / a for a, b in zip(consts, consts[1:]))
        worst = max(worst, growth - 1.0)
        if growth > 1.25 or max(consts) > 1.0:
            ok = False
            notes.append(f"p={p}: C by decade {consts}")
    return ok, worst, "; ".join(notes)


@_timed
def check_polylog_stack() -> CheckResult:
    """Eulerian vs series, expansion vs long series, limit trends, asymptotic envelope."""
    worst_eul = 0.0
    for s in (-1.0, -2.0, -3.0):
        for z in np.arange(1, 10) / 10.0:
            a = polylog(s, z, method=Method.EULERIAN_CLOSED_FORM).value
            b = polylog(s, z, method=Method.DIRECT_SERIES).value
            worst_eul = max(worst_eul, abs(a / b - 1.0))
    worst_exp = 0.0
    for s in (-1.5, -0.5, 0.5):
        for z in np.linspace(0.95, 0.999, 8):
            a = polylog(s, z, method=Method.GAMMA_ZETA_EXPANSION).value
            b = polylog(s, z, method=Method.DIRECT_SERIES).value
            worst_exp = max(worst_exp, abs(a / b - 1.0))
    trends_ok, trend_note = _limit_trends()
    env_ok, env_growth, env_note = _asymptotic_envelope()
    passed = worst_eul < 1e-10 and worst_exp < 1e-8 and trends_ok and env_ok
    detail = (f"eulerian={worst_eul:.1e}(1e-10) expansion={worst_exp:.1e}(1e-8) "
              f"limits={'ok' if trends_ok else trend_note} "
              f"envelope_growth={env_growth:.2f}(0.25) {env_note}").strip()
    return CheckResult("polylog_stack", passed, max(worst_eul, worst_exp), 1e-8,
                       budget=10, detail=detail)


@_timed
def check_monte_carlo(samples: int = 10_000, digits_per_sample: int = 1_000,
                      orbit_samples: int = 1_000, orbit_length: int = 200,
                      seed: int = mc.DEFAULT_SEED) -> CheckResult:
    """DIGIT_MODEL vs the Haar constants; ORBIT vs DIGIT_MODEL."""
    worst_haar = 0.0
    for p in (2, 3, 5):
        ests = mc.estimate_means((-1.0, 0.0, 1.0, 2.0), p, mc.SamplerMode.DIGIT_MODEL,
                                 samples, digits_per_sample, seed)
        for e in ests:
            worst_haar = max(worst_haar, abs(e.mean - haar_mean(e.q, p)) / e.stderr)
    worst_mode = 0.0
    for p in (2, 3, 5):
        qs = (0.0, 1.0, 2.0)
        orb = mc.estimate_means(qs, p, mc.SamplerMode.ORBIT, orbit_samples, orbit_length,
                                seed + 1, precision=512)
        dm = mc.estimate_means(qs, p, mc.SamplerMode.DIGIT_MODEL, orbit_samples,
                               orbit_length, seed + 2)
        for o, d in zip(orb, dm):
            worst_mode = max(worst_mode, abs(o.mean - d.mean) / math.hypot(o.stderr, d.stderr))
    passed = worst_haar < 3.0 and worst_mode < 4.0
    return CheckResult("monte_carlo", passed, worst_haar, 3.0, budget=120,
                       detail=f"haar_z={worst_haar:.2f}(3) mode_z={worst_mode:.2f}(4)")


@_timed
def check_round_trips(points: int = 200, seed: int = 12345) -> CheckResult:
    """Schneider digits/reconstruct identity and solve/mean inversion."""
    failures = 0
    for i in range(points):
        p = (2, 3, 5, 7)[i % 4]
        rng = mc.sample_stream(seed, i)
        x = mc.sample_haar_point(p, 256, rng)
        n = int(rng.integers(1, 40))
        seq = digits(x, n)
        if seq.tail is None:
            y = reconstruct(seq.pairs[:-1], digits(x, len(seq) - 1).tail, p=p)
        else:
            y = reconstruct(seq, seq.tail)
        if not agree(x, y):
            failures += 1
    worst = 0.0
    for p in (2, 3, 5):
        for q in Q_GRID:
            for beta in BETA_GRID:
                lam = solve_lambda(q, beta, p)
                worst = max(worst, abs(mean_at_lambda(q, lam, p) / beta - 1.0))
    passed = failures == 0 and worst < 1e-9
    return CheckResult("round_trips", passed, worst, 1e-9, budget=30,
                       detail=f"digit_round_trip_failures={failures}/{points}")


@_timed
def check_boundary() -> CheckResult:
    """dimension(q, 1, p) == log(p-1)/log p."""
    worst = 0.0
    for p in (2, 3, 5):
        for q in Q_GRID:
            d = dimension(q, 1.0, p).dimension
            worst = max(worst, abs(d - math.log(p - 1) / math.log(p)))
    return CheckResult("boundary", worst <= 1e-12, worst, 1e-12, budget=1)


ACCEPTANCE_CHECKS = (check_haar_consistency, check_legendre_oracle, check_closed_forms,
                     check_haar_closed_values, check_polylog_stack, check_monte_carlo,
                     check_round_trips, check_boundary)


def run_all(quick: bool = False) -> list[CheckResult]:
    """Run every check; ``quick`` shrinks the Monte Carlo sample sizes tenfold."""
    out = []
    for check in ACCEPTANCE_CHECKS:
        if check is check_monte_carlo and quick:
            out.append(check(samples=1_000, orbit_samples=200))
        else:
            out.append(check())
    return out
