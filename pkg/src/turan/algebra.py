"""Arithmetic on (value, uniformity) density pairs.

Operations closed on the rationals (the star and circle products, ``otimes2``,
the apex map, jump images) return exact ``Fraction`` values for rational
input.  ``oplus`` involves (r-1)-th roots; it stays exact when those roots
happen to be rational and otherwise falls back to ``mpmath`` floats at
``DEFAULT_PRECISION`` bits.  Float and mpf inputs always give mpf output.

The h-coordinate ``h(x) = (1 / (1 - x)) ** (1 / (r - 1))`` turns ``oplus``
into ordinary addition, which :func:`oplus_chain` uses to fold long chains
without drift.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, factorial
from numbers import Rational
from typing import Iterable

import mpmath
import numpy as np

DEFAULT_PRECISION = 128


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def to_mpf(x, prec: int | None = None):
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        if isinstance(x, Rational):
            return mpmath.mpf(x.numerator) / x.denominator
        return mpmath.mpf(x)


def _iroot(n: int, k: int) -> int:
    """Largest integer ``y`` with ``y**k <= n`` for ``n >= 0``."""
    if n < 2:
        return n
    y = 1 << -(-n.bit_length() // k)
    while True:
        z = ((k - 1) * y + n // y ** (k - 1)) // k
        if z >= y:
            break
        y = z
    while (y + 1) ** k <= n:
        y += 1
    while y**k > n:
        y -= 1
    return y


def coerce(*xs, prec: int | None = None):
    """All-Fraction when every input is rational, otherwise all mpf."""
    if all(is_exact(x) for x in xs):
        return tuple(Fraction(x) for x in xs)
    return tuple(to_mpf(x, prec) for x in xs)


def exact_root(q, k: int) -> Fraction | None:
    """The k-th root of a nonnegative rational when it is rational, else None."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("root of a negative number")
    if k == 1:
        return q
    a, b = _iroot(q.numerator, k), _iroot(q.denominator, k)
    if a**k == q.numerator and b**k == q.denominator:
        return Fraction(a, b)
    return None


def _root(x, k: int, prec: int | None = None):
    if is_exact(x):
        exact = exact_root(x, k)
        if exact is not None:
            return exact
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        return mpmath.root(to_mpf(x, prec), k)


def _unit_interval(name: str, x) -> None:
    if not 0 <= x <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")


def _uniformity(r: int, minimum: int = 2) -> None:
    if int(r) != r or r < minimum:
        raise ValueError(f"uniformity must be an integer >= {minimum}, got {r}")


@dataclass(frozen=True)
class Density:
    """A pair (value, r); uniformity 0 is only allowed with value 1."""

    value: object
    r: int

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 0:
            raise ValueError(f"uniformity must be a nonnegative integer, got {self.r}")
        _unit_interval("density value", self.value)
        if self.r == 0 and self.value != 1:
            raise ValueError("uniformity 0 is only allowed with value 1")

    def __iter__(self):
        return iter((self.value, self.r))


UNIT = Density(Fraction(1), 0)


def split_factor(r: int, s: int) -> Fraction:
    """C(r+s, r) * r^r * s^s / (r+s)^(r+s), with 0^0 = 1."""
    return Fraction(comb(r + s, r) * r**r * s**s, (r + s) ** (r + s))


def _scaled(x, factor: Fraction, prec: int | None):
    if is_exact(x):
        return Fraction(x) * factor
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        return to_mpf(x, prec) * to_mpf(factor, prec)


def star_op(a: Density, b: Density, prec: int | None = None) -> Density:
    """(alpha, r) * (beta, s) = (alpha * beta * split_factor(r, s), r + s)."""
    (alpha, r), (beta, s) = a, b
    alpha, beta = coerce(alpha, beta, prec=prec)
    return Density(_scaled(alpha * beta, split_factor(r, s), prec), r + s)


def otimes2(alpha, beta):
    """alpha + beta - alpha * beta."""
    alpha, beta = coerce(alpha, beta)
    _unit_interval("alpha", alpha)
    _unit_interval("beta", beta)
    return alpha + beta - alpha * beta


def circ_op(a: Density, b: Density, prec: int | None = None) -> Density:
    """(alpha, r) o (beta, s) = (otimes2(alpha, beta) * split_factor(r, s), r + s)."""
    (alpha, r), (beta, s) = a, b
    return Density(_scaled(otimes2(alpha, beta), split_factor(r, s), prec), r + s)


def oplus(alpha, beta, r: int, prec: int | None = None):
    """1 - (1-alpha)(1-beta) / ((1-alpha)^(1/(r-1)) + (1-beta)^(1/(r-1)))^(r-1).

    ``1 oplus 1`` is 1 by convention.
    """
    _uniformity(r)
    alpha, beta = coerce(alpha, beta, prec=prec)
    _unit_interval("alpha", alpha)
    _unit_interval("beta", beta)
    if alpha == 1 and beta == 1:
        return Fraction(1) if is_exact(alpha) and is_exact(beta) else to_mpf(1, prec)
    a, b = 1 - alpha, 1 - beta
    ra, rb = _root(a, r - 1, prec), _root(b, r - 1, prec)
    if is_exact(ra) and is_exact(rb):
        return 1 - Fraction(a) * Fraction(b) / (ra + rb) ** (r - 1)
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        a, b = to_mpf(a, prec), to_mpf(b, prec)
        ra, rb = to_mpf(ra, prec), to_mpf(rb, prec)
        return 1 - a * b / (ra + rb) ** (r - 1)


def g_func(alpha, beta, r: int, x):
    """The one-parameter family 1 - (1-alpha) x^r - (1-beta) (1-x)^r."""
    return 1 - (1 - alpha) * x**r - (1 - beta) * (1 - x) ** r


def g_argmax(alpha, beta, r: int, prec: int | None = None):
    """Unique maximizer of :func:`g_func` on [0, 1]; undefined at (1, 1)."""
    _uniformity(r)
    alpha, beta = coerce(alpha, beta, prec=prec)
    _unit_interval("alpha", alpha)
    _unit_interval("beta", beta)
    if alpha == 1 and beta == 1:
        raise ValueError("the maximizer is undefined for alpha = beta = 1")
    ra, rb = _root(1 - alpha, r - 1, prec), _root(1 - beta, r - 1, prec)
    if is_exact(ra) and is_exact(rb):
        return rb / (ra + rb)
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        ra, rb = to_mpf(ra, prec), to_mpf(rb, prec)
        return rb / (ra + rb)


def h_map(alpha, r: int, prec: int | None = None):
    """(1 / (1 - alpha)) ** (1 / (r - 1)); alpha = 1 maps to ``mpmath.inf``."""
    _uniformity(r)
    (alpha,) = coerce(alpha, prec=prec)
    _unit_interval("alpha", alpha)
    if alpha == 1:
        return mpmath.inf
    return _root(1 / (1 - alpha), r - 1, prec)


def h_inv(h, r: int, prec: int | None = None):
    """Inverse of :func:`h_map`: 1 - 1 / h^(r-1)."""
    _uniformity(r)
    if h == mpmath.inf:
        return to_mpf(1, prec)
    (h,) = coerce(h, prec=prec)
    if h < 1:
        raise ValueError(f"h-coordinates are >= 1, got {h}")
    if is_exact(h):
        return 1 - 1 / Fraction(h) ** (r - 1)
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        return 1 - 1 / to_mpf(h, prec) ** (r - 1)


def oplus_chain(values: Iterable, r: int, prec: int | None = None):
    """Fold ``oplus`` over ``values`` by adding h-coordinates."""
    values = list(values)
    if not values:
        raise ValueError("empty chain")
    hs = [h_map(v, r, prec) for v in values]
    if all(is_exact(h) for h in hs):
        return h_inv(sum(hs, Fraction(0)), r, prec)
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        return h_inv(mpmath.fsum(to_mpf(h, prec) for h in hs), r, prec)


def j_map(alpha, r: int):
    """((r - 1) / (r - alpha)) ** (r - 1)."""
    _uniformity(r)
    (alpha,) = coerce(alpha)
    _unit_interval("alpha", alpha)
    if is_exact(alpha):
        return Fraction(r - 1, 1) ** (r - 1) / (r - Fraction(alpha)) ** (r - 1)
    a = to_mpf(alpha)
    with mpmath.workprec(DEFAULT_PRECISION):
        return ((r - 1) / (r - a)) ** (r - 1)


def weight_split_max(r: int, s: int) -> tuple[Fraction, Fraction]:
    """Maximizer and maximum of x^r (1-x)^s on [0, 1]."""
    if r < 1 or s < 1:
        raise ValueError("r and s must be >= 1")
    return Fraction(r, r + s), Fraction(r**r * s**s, (r + s) ** (r + s))


def oplus_increment_bound(alpha, beta, eps, r: int, prec: int | None = None):
    """Guaranteed gain eps * (c / (1 + c))^r with c = (1-beta)^(1/(r-1)).

    ``oplus(alpha, beta) >= oplus(alpha - eps, beta) + bound`` for
    alpha, beta in [0, 1) and 0 <= eps <= alpha.
    """
    _uniformity(r)
    alpha, beta, eps = coerce(alpha, beta, eps, prec=prec)
    if not (0 <= alpha < 1 and 0 <= beta < 1 and 0 <= eps <= alpha):
        raise ValueError("need alpha, beta in [0, 1) and 0 <= eps <= alpha")
    c = _root(1 - beta, r - 1, prec)
    if is_exact(c) and is_exact(eps):
        return Fraction(eps) * (c / (1 + c)) ** r
    with mpmath.workprec(prec or DEFAULT_PRECISION):
        c = to_mpf(c, prec)
        return to_mpf(eps, prec) * (c / (1 + c)) ** r


def jump_image(c, r: int, q: int) -> Density:
    """Carry the density c * r!/r^r up to uniformity q by starring with (1, 1).

    The result equals c * q!/q^q; that identity is checked before returning.
    """
    _uniformity(r)
    (c,) = coerce(c)
    if q < r:
        raise ValueError(f"need q >= r, got q={q}, r={r}")
    value = c * Fraction(factorial(r), r**r) if is_exact(c) else to_mpf(c) * factorial(r) / r**r
    if not 0 <= value <= 1:
        raise ValueError(f"starting density {value} is outside [0, 1]")
    d = Density(value, r)
    edge = Density(Fraction(1), 1)
    for _ in range(q - r):
        d = star_op(edge, d)
    expected = c * Fraction(factorial(q), q**q) if is_exact(c) else to_mpf(c) * factorial(q) / q**q
    if is_exact(d.value) and d.value != expected:
        raise ArithmeticError(f"jump image {d.value} differs from {expected}")
    return d


def h_group_gap(generators: Iterable, max_coeff: int) -> float:
    """Largest gap in [0, 1) left by the fractional parts of integer combinations.

    Combinations use coefficients in ``-max_coeff .. max_coeff``.  Including 1
    among the generators is implicit: the additive group is studied modulo 1.
    A gap shrinking with ``max_coeff`` is the numerical signature of a dense
    subgroup of the reals.
    """
    gens = np.array([float(g) for g in generators], dtype=float)
    coeffs = np.array(list(product(range(-max_coeff, max_coeff + 1), repeat=len(gens))))
    fracs = np.sort(np.mod(coeffs @ gens, 1.0))
    # integer-valued generators leave only 0 (or numerical neighbours of 1)
    fracs = np.unique(np.round(fracs, 12) % 1.0)
    gaps = np.diff(np.concatenate([fracs, [fracs[0] + 1.0]]))
    return float(gaps.max())
