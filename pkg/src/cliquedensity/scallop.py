"""The extremal clique-density function h_r and its piecewise calculus.

On each interval ``I_k = [1 - 1/k, 1 - 1/(k+1))`` the minimum K_r density at
edge density alpha is attained by a complete (k+1)-partite limit with k parts
of measure ``c(alpha)`` and one smaller part.  All functions here return exact
values (``Fraction`` or :class:`~cliquedensity.surd.Surd`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .surd import Number, as_number, exact_abs, floor, sqrt


def falling(k: int, t: int) -> int:
    """Falling power k(k-1)...(k-t+1); zero once t exceeds a nonnegative k."""
    out = 1
    for i in range(t):
        out *= k - i
    return out


def kappa(ell: int, t: int, gamma) -> Number:
    """Limit K_ell density of t parts of measure gamma plus one part of 1 - t*gamma."""
    if ell < 2 or t < 1:
        raise ValueError("kappa needs ell >= 2 and t >= 1")
    gamma = as_number(gamma)
    return falling(t, ell - 1) * gamma ** (ell - 1) * (ell - (ell - 1) * (t + 1) * gamma)


def _check_domain(t: int, x) -> Number:
    if t < 1:
        raise ValueError("t must be a positive integer")
    x = as_number(x)
    if x > 1 - Fraction(1, t + 1):
        raise ValueError(f"x = {x} exceeds 1 - 1/{t + 1}")
    return x


def gamma_t(t: int, x) -> Number:
    """Larger root gamma of kappa(2, t, gamma) = x."""
    x = _check_domain(t, x)
    return Fraction(1, t + 1) + sqrt(t * (t - (t + 1) * x)) / (t * (t + 1))


def p_rt(r: int, t: int, x) -> Number:
    return kappa(r, t, gamma_t(t, x))


def k_of_alpha(alpha) -> int:
    """The k with 1 - 1/k <= alpha < 1 - 1/(k+1)."""
    alpha = as_number(alpha)
    if alpha < 0 or alpha >= 1:
        raise ValueError(f"alpha = {alpha} must lie in [0, 1)")
    return floor(1 / (1 - alpha))


def c_of_alpha(alpha) -> Number:
    return gamma_t(k_of_alpha(alpha), alpha)


def is_cusp(alpha) -> bool:
    """True at the Turan densities 1 - 1/k (including alpha = 0)."""
    alpha = as_number(alpha)
    if alpha == 1:
        return False
    k = k_of_alpha(alpha)
    return alpha == 1 - Fraction(1, k)


def h_r(r: int, alpha) -> Number:
    if r < 2:
        raise ValueError("r must be at least 2")
    alpha = as_number(alpha)
    if alpha < 0 or alpha > 1:
        raise ValueError(f"alpha = {alpha} must lie in [0, 1]")
    if alpha == 1:
        return Fraction(1)
    return p_rt(r, k_of_alpha(alpha), alpha)


def p_rt_prime(r: int, t: int, x) -> Number:
    return math.comb(r, 2) * falling(t - 1, r - 2) * gamma_t(t, x) ** (r - 2)


def h_r_prime(r: int, alpha, side: str = "right") -> Number:
    """One-sided derivative of h_r; the sides differ only at cusps 1 - 1/k."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    alpha = as_number(alpha)
    if alpha <= 0 or alpha >= 1:
        raise ValueError("derivative needs 0 < alpha < 1")
    t = k_of_alpha(alpha)
    if side == "left" and is_cusp(alpha):
        t -= 1
    return p_rt_prime(r, t, alpha)


def p_rt_second(r: int, t: int, x) -> Number:
    x = _check_domain(t, x)
    if x == 1 - Fraction(1, t + 1):
        raise ValueError("second derivative is unbounded at x = 1 - 1/(t+1)")
    g = gamma_t(t, x)
    num = 3 * math.comb(r, 3) * falling(t - 1, r - 2) * g ** (r - 3)
    return num / (2 * t * (1 - (t + 1) * g))


def taylor_bound_check(r: int, alpha, alpha_prime) -> bool:
    """Exact check of the 3/2-power Taylor remainder bound inside one scallop."""
    alpha, alpha_prime = as_number(alpha), as_number(alpha_prime)
    k = k_of_alpha(alpha)
    if is_cusp(alpha):
        raise ValueError(f"alpha = {alpha} is a cusp, not interior to its scallop")
    if k_of_alpha(alpha_prime) != k:
        raise ValueError("alpha and alpha_prime lie in different scallops")
    c = gamma_t(k, alpha)
    step = alpha_prime - alpha
    slope = math.comb(r, 2) * falling(k - 1, r - 2) * c ** (r - 2)
    remainder = h_r(r, alpha_prime) - h_r(r, alpha) - slope * step
    size = exact_abs(step)
    return exact_abs(remainder) <= size * sqrt(size)


def linear_extension_check(r: int, t: int, alpha) -> bool:
    """h_r(alpha) >= p_{r,t}(alpha) for alpha < 1 - 1/t, decided exactly."""
    alpha = as_number(alpha)
    if alpha >= 1 - Fraction(1, t) or alpha < 0:
        raise ValueError(f"need 0 <= alpha < 1 - 1/{t}")
    return h_r(r, alpha) >= p_rt(r, t, alpha)


@dataclass(frozen=True)
class ScallopPoint:
    alpha: Number
    k: int
    c: Number
    h: dict = field(default_factory=dict)
    h_prime: dict = field(default_factory=dict)  # right derivatives
    h_prime_left: dict = field(default_factory=dict)


def scallop_point(alpha, orders: Iterable[int] = (2, 3, 4, 5, 6)) -> ScallopPoint:
    alpha = as_number(alpha)
    k = k_of_alpha(alpha)
    c = gamma_t(k, alpha)
    h = {r: h_r(r, alpha) for r in orders}
    if alpha > 0:
        hp = {r: h_r_prime(r, alpha, "right") for r in orders}
        hl = {r: h_r_prime(r, alpha, "left") for r in orders}
    else:
        hp, hl = {}, {}
    return ScallopPoint(alpha, k, c, h, hp, hl)


def grid(start, stop, step) -> list[Fraction]:
    """Rational grid start, start+step, ... up to and including stop."""
    start, stop, step = Fraction(start), Fraction(stop), Fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    x = start
    while x <= stop:
        out.append(x)
        x += step
    return out
