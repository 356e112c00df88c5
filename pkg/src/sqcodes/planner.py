"""Asymptotic parameter chain, evaluated numerically.

Starting from a target rate, this derives the base-code parameters (degree,
designed distance, agreement constant and minimal length from the random
LDPC existence bounds), then the field size threshold, the admissible odd
prime power, the reduced degree, and the final rate, distance, soundness
and query claims for the infinite family. The quantities span hundreds of
orders of magnitude, so everything runs in arbitrary-precision floats with
exact integers where divisibility matters. Two of the final constants are
written with a 4 in one place and an 8 in another in the source derivation;
both variants are computed and labeled, neither is guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from mpmath import mp, mpf

C0 = 7
GAMMA0 = Fraction(3, 20)
PLAN_DPS = 60


def int_digits(v) -> str:
    """Decimal string of a possibly huge integer. CPython refuses int-to-str
    beyond 4300 digits; GMP has no such guard."""
    return gmpy2.mpz(v).digits(10)


def ldpc_distance_floor(c: int, gamma: Fraction, d: int) -> mpf:
    """Designed relative distance of a random (c,d)-regular code whose
    factor graph expands with defect gamma."""
    cg = mpf(c * gamma.numerator) / gamma.denominator
    inner = 2 * mp.e ** (c + 1 - cg) * mpf(d) ** cg * (1 - mpf(
        gamma.numerator) / gamma.denominator) ** cg
    return inner ** (-1 / (cg - 1))


def _min_length(c: int, gamma: Fraction, d: int) -> mpf:
    """Smallest length from which the random construction succeeds with
    positive probability: the first integer x with
    A*x^(-1/9) + x*2^(-x^e) < 1, found by bisection past the hump."""
    g = mpf(gamma.numerator) / gamma.denominator
    cg = c * g
    a = mp.e ** (c + 1 - cg) * mpf(d) ** cg * (1 - g) ** cg
    e2 = min(mpf(1) / 3, (cg - 1) / 2)

    def f(x: mpf) -> mpf:
        return a * x ** (mpf(-1) / 9) + x * 2 ** (-(x ** e2)) - 1

    # crest of the second term; the function is decreasing beyond it
    lo = (1 / (mp.log(2) * e2)) ** (1 / e2)
    hi = lo * 2
    while f(hi) >= 0:
        hi = hi * hi
    for _ in range(mp.prec + 20):
        mid = mp.sqrt(lo * hi)
        if f(mid) < 0:
            hi = mid
        else:
            lo = mid
    return mp.ceil(hi)


@dataclass(frozen=True)
class BaseCodePlan:
    r0: Fraction
    c0: int
    gamma0: Fraction
    d0: int
    delta0: mpf
    tau0: mpf
    kappa0: mpf
    n0: mpf  # also the degree floor for the outer construction

    def to_flat(self) -> dict:
        return {
            "r0": str(self.r0), "c0": self.c0, "gamma0": str(self.gamma0),
            "d0": self.d0,
            "delta0": mp.nstr(self.delta0, 17),
            "tau0": mp.nstr(self.tau0, 17),
            "kappa0": mp.nstr(self.kappa0, 17),
            "n0": mp.nstr(self.n0, 17),
        }


def plan_base_code(r0, dps: int = PLAN_DPS) -> BaseCodePlan:
    r0 = Fraction(r0)
    if not 0 < r0 < 1:
        raise ValueError("rate must be strictly between 0 and 1")
    with mp.workdps(dps):
        d0 = math.ceil(7 / (1 - r0))
        delta0 = ldpc_distance_floor(C0, GAMMA0, d0)
        margin = mpf(1) / 6 - mpf(GAMMA0.numerator) / GAMMA0.denominator
        tau0 = delta0 ** 2 * margin / (2 * d0)
        kappa0 = delta0 ** 3 * margin / (4 * d0)
        n0 = _min_length(C0, GAMMA0, d0)
        assert 0 < delta0 < 1 and d0 > C0 and kappa0 > 0
        assert GAMMA0 > Fraction(1, C0)
        return BaseCodePlan(r0=r0, c0=C0, gamma0=GAMMA0, d0=d0, delta0=delta0,
                            tau0=tau0, kappa0=kappa0, n0=n0)


def _next_odd_prime_power(start: int) -> int:
    """Smallest odd prime power >= start (plain probable-prime testing)."""
    n = gmpy2.mpz(start)
    if n % 2 == 0:
        n += 1
    while True:
        if gmpy2.is_prime(n):
            return int(n)
        if gmpy2.is_power(n):
            for k in range(2, n.bit_length() + 1):
                root, exact = gmpy2.iroot(n, k)
                if exact and gmpy2.is_prime(root):
                    return int(n)
        n += 2


@dataclass(frozen=True)
class ComplexPlan:
    r: Fraction
    base: BaseCodePlan
    q0: mpf
    q0_int: int
    q: int
    big_d: int  # degree D, a multiple of d0
    lam_target: mpf  # 8 / sqrt(D)
    delta_with_4: mpf
    delta_with_8: mpf
    kappa_with_4: mpf
    kappa_with_8: mpf
    queries: int  # D^2
    group_orders: dict  # i -> |PSL2(q^i)| as exact int
    chain: dict  # named inequality checks, all expected True

    def to_flat(self) -> dict:
        out = {"r": str(self.r)}
        out.update({f"base.{k}": v for k, v in self.base.to_flat().items()})
        out.update({
            "q0": mp.nstr(self.q0, 17),
            "q0_digits": len(int_digits(self.q0_int)),
            "q": int_digits(self.q),
            "q_digits": len(int_digits(self.q)),
            "D": int_digits(self.big_d),
            "lam_target": mp.nstr(self.lam_target, 17),
            "delta_with_4": mp.nstr(self.delta_with_4, 17),
            "delta_with_8": mp.nstr(self.delta_with_8, 17),
            "kappa_with_4": mp.nstr(self.kappa_with_4, 17),
            "kappa_with_8": mp.nstr(self.kappa_with_8, 17),
            "queries_digits": len(int_digits(self.queries)),
        })
        for i, order in self.group_orders.items():
            out[f"group_order_digits.{i}"] = len(int_digits(order))
        out.update({f"chain.{k}": v for k, v in self.chain.items()})
        return out


def plan_c3(r, dps: int = PLAN_DPS, orders_for=(1, 2, 3)) -> ComplexPlan:
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError("rate must be strictly between 0 and 1")
    r0 = (r + 3) / 4
    base = plan_base_code(r0, dps=dps)
    with mp.workdps(dps):
        d0, delta0, kappa0 = base.d0, base.delta0, base.kappa0
        q0 = max(2 * base.n0, mpf(2 * d0 * d0),
                 128 * ((kappa0 + 8) / (kappa0 * delta0)) ** 2)
        digits = int(mp.floor(mp.log10(q0))) + 1
    # redo the ceiling with enough digits to make the integer exact
    with mp.workdps(digits + 30):
        q0_hi = max(2 * base.n0, mpf(2 * d0 * d0),
                    128 * ((base.kappa0 + 8) / (base.kappa0 * base.delta0)) ** 2)
        q0_int = int(mp.ceil(q0_hi))
    q = _next_odd_prime_power(q0_int)
    big_d = d0 * ((q + 1) // d0)
    with mp.workdps(dps):
        root_d = mp.sqrt(mpf(big_d))
        lam_target = 8 / root_d
        delta_with_4 = delta0 ** 2 * (delta0 - 4 / root_d)
        delta_with_8 = delta0 ** 2 * (delta0 - 8 / root_d)
        kappa_with_4 = min(mpf(1) / (4 + 8 * mpf(big_d)),
                           (delta0 * kappa0 / (8 + kappa0) - 4 / root_d)
                           / (4 * mpf(big_d)))
        kappa_with_8 = min(mpf(1) / (4 + 8 * mpf(big_d)),
                           (delta0 * kappa0 / (8 + kappa0) - 8 / root_d)
                           / (4 * mpf(big_d)))
        isq = gmpy2.isqrt(q)
        chain = {
            "q_at_least_threshold": q >= q0_int,
            "degree_at_most_q_plus_1": big_d <= q + 1,
            "degree_above_q_minus_root": big_d > q - isq,
            "degree_above_half_q": 2 * big_d > q,
            "degree_divisible": big_d % d0 == 0,
            "lam_below_agreement_margin":
                lam_target < delta0 * kappa0 / (8 + kappa0),
            "lam_below_delta0": lam_target < delta0,
            "lam_below_threshold_form":
                lam_target < 2 ** mpf("3.5") / mp.sqrt(q0),
            "final_rate_matches": 4 * r0 - 3 == r,
        }
        orders = {i: (gmpy2.mpz(q) ** (3 * i) - gmpy2.mpz(q) ** i) // 2
                  for i in orders_for}
        return ComplexPlan(
            r=r, base=base, q0=q0, q0_int=q0_int, q=q, big_d=big_d,
            lam_target=lam_target, delta_with_4=delta_with_4,
            delta_with_8=delta_with_8, kappa_with_4=kappa_with_4,
            kappa_with_8=kappa_with_8, queries=big_d * big_d,
            group_orders={i: int(v) for i, v in orders.items()}, chain=chain)


def delta0_scaling_sweep(eps_values, dps: int = PLAN_DPS) -> dict:
    """Log-log slope of the designed distance against the rate deficit;
    the construction predicts a 21st-power law up to the degree ceiling."""
    points = []
    with mp.workdps(dps):
        for eps in eps_values:
            eps = Fraction(eps)
            plan = plan_base_code(1 - eps, dps=dps)
            points.append((float(mp.log(mpf(eps.numerator) / eps.denominator)),
                           float(mp.log(plan.delta0))))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    n = len(points)
    mx, my = sum(xs) / n, sum(ys) / n
    slope = (sum((x - mx) * (y - my) for x, y in points)
             / sum((x - mx) ** 2 for x in xs))
    return {"points": points, "slope": slope}
