"""The distinguished vector-valued modular form of a 2-elementary lattice.

For a 2-elementary lattice L with invariants (sigma, l, delta) and k = 8 +
sigma, the form has weight sigma/2 and components

    F = f0(k) e_0  +  2^{(4-sigma-l)/2} sum_g g^{(2 q(g) mod 4)}(k) e_g
        +  f1(k) e_{char}

where `char` is the characteristic element of the discriminant form.  The
module also provides the independent numeric oracle that rebuilds F as a sum
over the six cosets of the theta group, the restriction along a split
U(N) + L, and the Borcherds-lift bookkeeping (weight two ways, Heegner
divisor ledger).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .cyc8 import cyc8_embed
from .lattices import Lattice, direct_sum, rescale, standard_lattice, signature
from .modforms import f0, f1, g_i
from .mp2 import evaluate_word, mp2_word, word_j
from .series import QSeries, qseries_eval
from .weil import disc_data, weil_column

# coset representatives of the theta group in Mp2(Z), as words in S, T
COSET_WORDS = {
    "1": [],
    "S": [("S", 1)],
    "ST": [("S", 1), ("T", 1)],
    "ST2": [("S", 1), ("T", 2)],
    "ST3": [("S", 1), ("T", 3)],
    "V": [("S", 7), ("T", 2), ("S", 1)],
}


@dataclass
class VVForm:
    """A finite family of q-series indexed by the discriminant group."""

    lattice: Lattice
    weight: Fraction
    components: dict  # coords tuple -> QSeries

    def component(self, key) -> QSeries:
        coords = key.coords if hasattr(key, "coords") else tuple(key)
        return self.components[coords]

    def check_support_and_symmetry(self):
        """Exponent support in q(g)/2 + Z, and c_g = c_{-g} (trivial here)."""
        data = disc_data(self.lattice)
        for i, el in enumerate(data.elements):
            ser = self.components[el.coords]
            want = (data.qvals[i] / 2) % 1
            for e in ser.terms:
                if (e - want) % 1 != 0:
                    raise AssertionError(
                        f"support violation at {el.coords}: exponent {e}, q/2 = {want}"
                    )
            neg = (-el).coords
            if not ser.eq_below(self.components[neg]):
                raise AssertionError(f"component symmetry violated at {el.coords}")
        return True


def construct_F(L: Lattice, order=10) -> VVForm:
    """Assemble the distinguished form of weight sigma/2 (valid below `order`)."""
    order = Fraction(order)
    data = disc_data(L)
    s, l = data.sigma, data.l
    if s < -12:
        raise ValueError("construction requires sigma >= -12")
    k = 8 + s
    s_exp2 = 4 - s - l
    if s_exp2 % 2:
        raise AssertionError("sigma + l must be even for a 2-elementary lattice")
    s_exp = s_exp2 // 2
    if s_exp < 0:
        raise ValueError("construction requires (4 - sigma - l)/2 >= 0")
    scale = Fraction(2) ** s_exp
    # classes with equal q share one series object (the form only depends on
    # q(g) and membership in {0, char})
    scaled = [(g_i(k, i, order) * scale).truncate(order) for i in range(4)]
    e0_extra = f0(k, order)
    char_extra = f1(k, order)
    comps = {}
    for i, el in enumerate(data.elements):
        ser = scaled[int(2 * data.qvals[i]) % 4]
        if i == 0:
            ser = (ser + e0_extra).truncate(order)
        if i == data.one_index:
            ser = (ser + char_extra).truncate(order)
        comps[el.coords] = ser
    return VVForm(L, Fraction(s, 2), comps)


# ---------------------------------------------------------------------------
# restriction along a split  Lambda = U(N) + L
# ---------------------------------------------------------------------------

def restrict(F: VVForm, N: int, L_small: Lattice) -> VVForm:
    """Eq.-style restriction: f_{L+x} = sum_{n mod N} f_{(n/N, 0, x)}.

    F must live on the block direct sum U(N) + L_small, with the hyperbolic
    block first.
    """
    big = direct_sum(rescale(standard_lattice("U"), N), L_small)
    if F.lattice.gram != big.gram:
        raise ValueError("form does not live on the stated split U(N) + L")
    data_big = disc_data(F.lattice)
    data_small = disc_data(L_small)
    comps = {}
    for el in data_small.elements:
        rep = el.rep()
        acc = None
        for n in range(N):
            v = [Fraction(n, N), Fraction(0)] + list(rep)
            cls = data_big.group.element_from_dual_vector(v)
            ser = F.components[cls.coords]
            acc = ser if acc is None else acc + ser
        comps[el.coords] = acc
    return VVForm(L_small, F.weight, comps)


# ---------------------------------------------------------------------------
# Borcherds lift bookkeeping
# ---------------------------------------------------------------------------

@dataclass
class HeegnerSum:
    """Formal Z-combination of Heegner classes (class-coords, n < 0)."""

    lattice: Lattice
    terms: dict  # (coords tuple, Fraction n) -> int

    def __eq__(self, other):
        return (
            isinstance(other, HeegnerSum)
            and self.lattice.gram == other.lattice.gram
            and self.terms == other.terms
        )

    def delta_ledger(self):
        """Interpret the raw classes as multiplicities on D', D''.

        The class (0, -1) puts weight m0 on every (-2)-hyperplane (both D'
        and D''); the classes with q = 3/2 at n = -1/4 add to D'' only.  A
        deviating multiplicity on the characteristic class is reported
        separately ('extra_char', as in the rank-13 signed divisor).
        """
        data = disc_data(self.lattice)
        zero = data.elements[0].coords
        m0 = self.terms.get((zero, Fraction(-1)), 0)
        half_classes = [
            el.coords
            for i, el in enumerate(data.elements)
            if data.qvals[i] % 2 == Fraction(3, 2)
        ]
        generic = None
        extra_char = 0
        char = data.elements[data.one_index].coords
        for coords in half_classes:
            m = self.terms.get((coords, Fraction(-1, 4)), 0)
            if coords == char and len(half_classes) > 1:
                continue
            if generic is None:
                generic = m
            elif m != generic:
                raise AssertionError("non-uniform D'' multiplicities")
        if half_classes and char in half_classes and len(half_classes) > 1:
            extra_char = self.terms.get((char, Fraction(-1, 4)), 0) - generic
        if generic is None:
            return {"dprime": m0, "dsecond": None, "extra_char": 0}
        return {"dprime": m0, "dsecond": m0 + generic, "extra_char": extra_char}


def borcherds_divisor(F: VVForm) -> HeegnerSum:
    """Read the Heegner divisor off the principal part of F."""
    terms = {}
    for coords, ser in F.components.items():
        for e, c in ser.terms.items():
            if e < 0:
                if not c.is_integer():
                    raise AssertionError(f"non-integral divisor multiplicity {c}")
                terms[(coords, e)] = int(c.rational_value())
    return HeegnerSum(F.lattice, terms)


def borcherds_weight(L: Lattice):
    """The lift's weight, computed two ways and asserted equal.

    Closed form (signature (2, r-2)):  (12+sigma) * (2^{(4-sigma-l)/2} + 1),
    minus 8 when delta = 0 and sigma = -8 (the constant term of the
    characteristic-class block lands on e_0 exactly in that case).
    Series form: half the constant term of the e_0 component.
    """
    if signature(L)[0] != 2:
        raise ValueError("weight formula applies to signature (2, r-2) lattices")
    data = disc_data(L)
    s, l = data.sigma, data.l
    closed = (12 + s) * (2 ** ((4 - s - l) // 2) + 1)
    if data.one_index == 0 and s == -8:
        closed -= 8
    F = construct_F(L, order=2)
    c0 = F.components[data.elements[0].coords].coeff(0)
    series = c0.rational_value() / 2
    assert series == closed, (closed, series)
    return Fraction(closed), series


# ---------------------------------------------------------------------------
# the coset-sum numeric oracle
# ---------------------------------------------------------------------------

def lift_oracle_numeric(L: Lattice, tau, prec: int = 128, target: float = 1e-26,
                        min_order: int = 40, max_order: int = 1600):
    """Rebuild F(tau) as  sum_g  phi|_g(tau) * rho(g^{-1}) e_0  over the six
    coset representatives, with phi = f0(8 + sigma).

    Entirely independent of construct_F: the slash factors come from the
    q-expansion of phi composed with the Moebius action and the metaplectic
    automorphy factor of each word.  Returns (values, disc_data) with values
    a list of mpmath complex numbers in discriminant-element order.
    """
    data = disc_data(L)
    k = 8 + data.sigma
    with mpmath.workprec(prec):
        tau = mpmath.mpc(tau)
        if mpmath.im(tau) <= 0:
            raise ValueError("tau must lie in the upper half-plane")
        n = len(data.elements)
        values = [mpmath.mpc(0)] * n
        for name, word in COSET_WORDS.items():
            g = evaluate_word(word)
            jfac, gtau = word_j(word, tau)
            imag = float(mpmath.im(gtau))
            if imag <= 0:
                raise ValueError(f"transformed point left the upper half-plane ({name})")
            # order n with c(n) |q|^n < target, where the coefficients of a
            # form with principal part q^{-1} grow like exp(4*pi*sqrt(n)):
            # solve n*a - b*sqrt(n) >= ln(1/target) + margin
            a = 2 * math.pi * imag
            b = 4 * math.pi
            cc = -math.log(target) + 10
            sqrt_n = (b + math.sqrt(b * b + 4 * a * cc)) / (2 * a)
            order = max(min_order, int(math.ceil(sqrt_n * sqrt_n)) + 8)
            if order > min_order:
                # round up so repeated calls share the cached expansion
                order = -(-order // 64) * 64
            if order > max_order:
                raise ValueError(
                    f"coset {name}: required series order {order} exceeds cap {max_order}"
                )
            phi_val, _tail = qseries_eval(f0(k, order), gtau, prec)
            # weight sigma/2, so the slash factor is j(g, tau)^{-sigma}
            slash = phi_val * jfac ** (-data.sigma)
            col = weil_column(L, mp2_word(g.inverse()))
            for i, entry in enumerate(col):
                if not entry.is_zero():
                    values[i] += slash * cyc8_embed(entry, prec)
        return values, data


def eval_vvform(F: VVForm, tau, prec: int = 128):
    """Evaluate every component of F at tau (shared series evaluated once)."""
    with mpmath.workprec(prec):
        cache = {}
        out = {}
        for coords, ser in F.components.items():
            key = id(ser)
            if key not in cache:
                cache[key] = qseries_eval(ser, tau, prec)[0]
            out[coords] = cache[key]
        return out
