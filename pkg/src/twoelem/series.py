"""Sparse Laurent series in q with fractional exponents and Q(zeta_8) coefficients.

A QSeries stores a finite map exponent -> coefficient together with an explicit
truncation order `trunc`: coefficients are known exactly for all exponents
strictly below `trunc` and unknown at or above it.  All arithmetic propagates
`trunc` pessimistically, so equality of two series is only ever asserted below
their common validity order.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import mpmath

from .cyc8 import Cyc8, cyc8_embed

_INF = Fraction(10**12)  # sentinel "no truncation" for exact finite sums


def _as_coeff(x) -> Cyc8:
    if isinstance(x, Cyc8):
        return x
    return Cyc8(Fraction(x))


class QSeries:
    """A truncated sparse series sum_e c_e q^e, exponents in (1/denom)Z."""

    __slots__ = ("denom", "terms", "trunc")

    def __init__(self, terms=None, trunc=_INF, denom=None):
        trunc = Fraction(trunc)
        tt = {}
        max_den = 1
        for e, c in (terms or {}).items():
            e = Fraction(e)
            c = _as_coeff(c)
            if c.is_zero():
                continue
            if e >= trunc:
                continue
            tt[e] = c
            max_den = lcm(max_den, e.denominator)
        if denom is None:
            denom = max_den
        else:
            denom = lcm(int(denom), max_den)
        self.denom = denom
        self.terms = tt
        self.trunc = trunc

    # -- helpers ------------------------------------------------------

    @staticmethod
    def zero(trunc=_INF, denom=1) -> "QSeries":
        return QSeries({}, trunc, denom)

    @staticmethod
    def one(trunc=_INF) -> "QSeries":
        return QSeries({Fraction(0): Cyc8(1)}, trunc)

    @staticmethod
    def monomial(e, c=1, trunc=_INF) -> "QSeries":
        return QSeries({Fraction(e): _as_coeff(c)}, trunc)

    def min_exp(self):
        """Smallest stored exponent, or None for the (known-)zero series."""
        return min(self.terms) if self.terms else None

    def _low_bound(self) -> Fraction:
        """A lower bound for every exponent this series can carry."""
        m = self.min_exp()
        return min(m, self.trunc) if m is not None else self.trunc

    def coeff(self, e) -> Cyc8:
        e = Fraction(e)
        if e >= self.trunc:
            raise ValueError(f"coefficient at {e} is beyond trunc {self.trunc}")
        return self.terms.get(e, Cyc8(0))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_items(self):
        return sorted(self.terms.items())

    # -- ring operations ----------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyc8)):
            other = QSeries.monomial(0, other)
        if not isinstance(other, QSeries):
            return NotImplemented
        trunc = min(self.trunc, other.trunc)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Cyc8(0)) + c
        return QSeries(out, trunc, lcm(self.denom, other.denom))

    __radd__ = __add__

    def __neg__(self):
        return QSeries({e: -c for e, c in self.terms.items()}, self.trunc, self.denom)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyc8)):
            other = QSeries.monomial(0, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyc8)):
            c = _as_coeff(other)
            return QSeries({e: v * c for e, v in self.terms.items()}, self.trunc, self.denom)
        if not isinstance(other, QSeries):
            return NotImplemented
        return qseries_mul(self, other)

    __rmul__ = __mul__

    def shift(self, e) -> "QSeries":
        """Multiply by q^e."""
        e = Fraction(e)
        return QSeries({x + e: c for x, c in self.terms.items()}, self.trunc + e, None)

    def scale_exponents(self, factor) -> "QSeries":
        """Substitute q -> q^factor (exponent map e -> e*factor), factor > 0."""
        factor = Fraction(factor)
        if factor <= 0:
            raise ValueError("exponent scale factor must be positive")
        return QSeries(
            {e * factor: c for e, c in self.terms.items()}, self.trunc * factor, None
        )

    def truncate(self, trunc) -> "QSeries":
        trunc = min(Fraction(trunc), self.trunc)
        return QSeries({e: c for e, c in self.terms.items() if e < trunc}, trunc, self.denom)

    def inverse(self) -> "QSeries":
        """Inverse of a series with invertible leading coefficient.

        Valid to order trunc - 2*min_exp (the standard pessimistic rule).
        """
        e0 = self.min_exp()
        if e0 is None:
            raise ZeroDivisionError("cannot invert the zero series")
        if self.trunc <= e0:
            raise ZeroDivisionError("series has no known leading term")
        n = lcm(self.denom, e0.denominator)
        a0 = self.terms[e0]
        a0inv = a0.inverse()
        # work on the integer grid k -> exponent e0 + k/n
        steps = int((self.trunc - e0) * n)
        a = {}
        for e, c in self.terms.items():
            a[int((e - e0) * n)] = c
        nz = sorted(k for k in a if k != 0)
        r = {0: a0inv}
        for k in range(1, steps):
            acc = Cyc8(0)
            for j in nz:
                if j > k:
                    break
                rv = r.get(k - j)
                if rv is not None:
                    acc = acc + a[j] * rv
            if not acc.is_zero():
                r[k] = -(a0inv * acc)
        out = {(-e0) + Fraction(k, n): c for k, c in r.items() if not c.is_zero()}
        return QSeries(out, self.trunc - 2 * e0, n)

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            return QSeries.one()
        base = self
        acc = None
        # square-and-multiply; trunc propagation is handled by qseries_mul
        while n:
            if n & 1:
                acc = base if acc is None else qseries_mul(acc, base)
            n >>= 1
            if n:
                base = qseries_mul(base, base)
        return acc

    # -- comparison ---------------------------------------------------

    def eq_below(self, other: "QSeries", order=None) -> bool:
        """Exact coefficient equality below min(truncs[, order])."""
        bound = min(self.trunc, other.trunc)
        if order is not None:
            bound = min(bound, Fraction(order))
        for e in set(self.terms) | set(other.terms):
            if e < bound and self.terms.get(e, Cyc8(0)) != other.terms.get(e, Cyc8(0)):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.eq_below(other)

    def __repr__(self):
        items = self.sorted_items()
        head = ", ".join(f"q^{e}: {c}" for e, c in items[:6])
        more = " ..." if len(items) > 6 else ""
        return f"QSeries({{{head}{more}}}, trunc={self.trunc})"

    # -- serialization ------------------------------------------------

    def to_text(self) -> str:
        lines = [f"N={self.denom} trunc={self.trunc}"]
        for e, c in self.sorted_items():
            lines.append(
                f"{e.numerator}/{e.denominator}  {c.c[0]} {c.c[1]} {c.c[2]} {c.c[3]}"
            )
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "QSeries":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        header = lines[0].split()
        denom = int(header[0].split("=")[1])
        trunc = Fraction(header[1].split("=")[1])
        terms = {}
        for ln in lines[1:]:
            parts = ln.split()
            e = Fraction(parts[0])
            terms[e] = Cyc8(*(Fraction(p) for p in parts[1:5]))
        return QSeries(terms, trunc, denom)


def qseries_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product with pessimistic truncation propagation."""
    trunc = min(a.trunc + b._low_bound(), b.trunc + a._low_bound())
    out = {}
    bi = b.sorted_items()
    for ea, ca in a.sorted_items():
        for eb, cb in bi:
            e = ea + eb
            if e >= trunc:
                break
            prod = ca * cb
            if prod.is_zero():
                continue
            cur = out.get(e)
            out[e] = prod if cur is None else cur + prod
    return QSeries(out, trunc, lcm(a.denom, b.denom))


def qseries_eval(a: QSeries, tau, prec: int = 53):
    """Evaluate sum c_e exp(2*pi*i*e*tau) at tau in the upper half-plane.

    Returns (value, tail_estimate).  The tail estimate is the documented
    heuristic geometric bound |q|^trunc/(1-|q|) * max(|c| over the last few
    stored terms, or 1): adequate for identity testing, not a rigorous
    enclosure.
    """
    with mpmath.workprec(prec):
        tau = mpmath.mpc(tau)
        if mpmath.im(tau) <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        acc = mpmath.mpc(0)
        two_pi_i = 2j * mpmath.pi
        for e, c in a.sorted_items():
            acc += cyc8_embed(c, prec) * mpmath.exp(two_pi_i * (mpmath.mpf(e.numerator) / e.denominator) * tau)
        absq = float(mpmath.exp(-2 * mpmath.pi * mpmath.im(tau)))
        tail_scale = 1.0
        recent = a.sorted_items()[-5:]
        if recent:
            tail_scale = max(1.0, max(float(abs(cyc8_embed(c, 53))) for _, c in recent))
        if a.trunc >= _INF:
            tail = 0.0
        else:
            tail = tail_scale * absq ** float(a.trunc) / (1 - absq)
        return acc, tail
