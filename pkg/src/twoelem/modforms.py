"""Concrete modular building blocks as exact q-expansions.

Dedekind eta powers at scaled arguments, the rank-one theta series
theta(tau) = sum q^{(n+s)^2} (s in {0, 1/2}), the weight -4+k/2 blocks

    f0(k) = eta(2t)^8 * theta_0^k / (eta(t)^8 eta(4t)^8)     = q^{-1} + 8+2k + ...
    f1(k) = -16 eta(4t)^8 * theta_{1/2}^k / eta(2t)^16       = -2^{k+4} q^{k/4} (1 + ...)

their quarter-exponent slices g_i(k), and the Eisenstein series E4.  All
expansions are exact with explicit truncation orders.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .series import QSeries

# pessimistic margin added to intermediate factors so that products keep the
# requested validity order
_MARGIN = 4


@lru_cache(maxsize=None)
def _euler_product(scale: int, order_num: int, order_den: int) -> QSeries:
    """prod_{n>=1} (1 - q^{scale*n}) to exponents < order."""
    order = Fraction(order_num, order_den)
    terms = {Fraction(0): 1}
    k = 1
    while True:
        hit = False
        for kk in (k, -k):
            # generalized pentagonal numbers kk*(3*kk - 1)/2
            e = Fraction(scale * kk * (3 * kk - 1), 2)
            if e < order:
                terms[e] = terms.get(e, 0) + (-1) ** (kk % 2)
                hit = True
        if not hit:
            break
        k += 1
    return QSeries(terms, order)


def eta_power(m: int, e: int, order) -> QSeries:
    """q^{e*m/24} * prod_{n>=1} (1 - q^{mn})^e, valid below `order`."""
    order = Fraction(order)
    offset = Fraction(e * m, 24)
    inner_order = order - offset + _MARGIN
    base = _euler_product(m, inner_order.numerator, inner_order.denominator)
    powed = base ** e
    return powed.shift(offset).truncate(order)


def eta_quotient(factors, order) -> QSeries:
    """Product of eta_power(m, e) over (m, e) pairs."""
    acc = QSeries.one()
    for m, e in factors:
        acc = acc * eta_power(m, e, Fraction(order) + _MARGIN)
    return acc.truncate(order)


def theta_a1(shift, order) -> QSeries:
    """sum_{n in Z} q^{(n+shift)^2}; shift in {0, 1/2}."""
    order = Fraction(order)
    shift = Fraction(shift)
    if shift not in (Fraction(0), Fraction(1, 2)):
        raise ValueError("shift must be 0 or 1/2")
    terms = {}
    n = 0
    while True:
        hit = False
        for nn in ({0} if n == 0 else {n, -n}):
            ee = (nn + shift) ** 2
            if ee < order:
                terms[ee] = terms.get(ee, 0) + 1
                hit = True
        if not hit and n > 1:
            break
        n += 1
    return QSeries(terms, order)


@lru_cache(maxsize=None)
def _f0_cached(k: int, order_num: int, order_den: int) -> QSeries:
    order = Fraction(order_num, order_den)
    quot = eta_quotient([(2, 8), (1, -8), (4, -8)], order + _MARGIN)
    th = theta_a1(0, order + _MARGIN + 2)
    return (quot * th ** k).truncate(order)


def f0(k: int, order) -> QSeries:
    """The weight -4+k/2 block with principal part q^{-1}; constant term 8+2k."""
    order = Fraction(order)
    return _f0_cached(k, order.numerator, order.denominator)


@lru_cache(maxsize=None)
def _f1_cached(k: int, order_num: int, order_den: int) -> QSeries:
    order = Fraction(order_num, order_den)
    quot = eta_quotient([(4, 8), (2, -16)], order + _MARGIN)
    th = theta_a1(Fraction(1, 2), order + _MARGIN + 2)
    return (quot * th ** k * (-16)).truncate(order)


def f1(k: int, order) -> QSeries:
    """-16 eta(4t)^8 theta_{1/2}^k / eta(2t)^16 = -2^{k+4} q^{k/4}(1 + ...)."""
    order = Fraction(order)
    return _f1_cached(k, order.numerator, order.denominator)


def g_i(k: int, i: int, order) -> QSeries:
    """Quarter-exponent slice: sum over l = i mod 4 of c_k(l) q^{l/4}.

    c_k(l) are the (integer-exponent) coefficients of f0(k).
    """
    if i not in (0, 1, 2, 3):
        raise ValueError("slice index must be 0..3")
    order = Fraction(order)
    full = f0(k, 4 * order)
    terms = {}
    for e, c in full.terms.items():
        assert e.denominator == 1
        if e.numerator % 4 == i:
            terms[e / 4] = c
    return QSeries(terms, order)


def eisenstein_e4(order) -> QSeries:
    """E4 = 1 + 240 sum sigma_3(n) q^n."""
    order = Fraction(order)
    terms = {Fraction(0): 1}
    n = 1
    while n < order:
        s3 = sum(d ** 3 for d in range(1, n + 1) if n % d == 0)
        terms[Fraction(n)] = 240 * s3
        n += 1
    return QSeries(terms, order)
