"""The distinguished vector-valued form: support, symmetry, weight, divisor."""
from fractions import Fraction

import mpmath
import pytest

from twoelem import (
    borcherds_divisor,
    borcherds_weight,
    construct_F,
    eisenstein_e4,
    eta_power,
    lift_oracle_numeric,
    parse_lattice_expr,
    restrict,
)
from twoelem.vvmf import eval_vvform
from twoelem.weil import disc_data


def test_support_and_symmetry():
    for expr in ["A1", "U+A1+", "U(2)+A1", "U+U+E8(2)+A1"]:
        F = construct_F(parse_lattice_expr(expr), order=4)
        assert F.check_support_and_symmetry()


def test_weight_guard_needs_signature_two():
    with pytest.raises(ValueError):
        borcherds_weight(parse_lattice_expr("A1"))


@pytest.mark.parametrize("expr, want", [
    ("U+U(2)+E8(2)", 4),
    ("U+U+E8(2)", 12),
    ("U(2)+U(2)+E8(2)", 0),
    ("U+U(2)+D4+D4", 28),
    ("U+U+E8", 252),
    ("U+U+D4", 72),
    ("U+U+E8(2)+A1", 15),
])
def test_weight_spot_values(expr, want):
    closed, series = borcherds_weight(parse_lattice_expr(expr))
    assert closed == want
    assert series == want


def test_scalar_form_is_e4sq_over_eta24():
    F = construct_F(parse_lattice_expr("U+U+E8"), order=8)
    e0 = next(iter(F.components.values()))
    want = eisenstein_e4(12) ** 2 * eta_power(1, -24, 12)
    assert e0.eq_below(want, 8)


def test_restriction_recovers_small_form():
    small = parse_lattice_expr("A1+")
    big = parse_lattice_expr("U(2)+A1+")
    Fb = construct_F(big, order=6)
    Fr = restrict(Fb, 2, small)
    Fs = construct_F(small, order=6)
    for coords, ser in Fs.components.items():
        assert Fr.components[coords].eq_below(ser, Fr.components[coords].trunc)


def test_restriction_rejects_wrong_split():
    F = construct_F(parse_lattice_expr("U+A1+"), order=4)
    with pytest.raises(ValueError):
        restrict(F, 2, parse_lattice_expr("A1+"))


def test_divisor_ledger_plain():
    L = parse_lattice_expr("U+U+A1")
    ledger = borcherds_divisor(construct_F(L, order=2)).delta_ledger()
    # r = 5, l = 1: D'' multiplicity 2^((r-l)/2) + 1 = 5
    assert ledger == {"dprime": 1, "dsecond": 5, "extra_char": 0}


def test_divisor_ledger_signed_rank13():
    L = parse_lattice_expr("U+U+E8(2)+A1")
    div = borcherds_divisor(construct_F(L, order=2))
    ledger = div.delta_ledger()
    assert ledger == {"dprime": 1, "dsecond": 5, "extra_char": -8}
    # raw multiplicities: 1 on the zero class at q^-1, 4 on the generic
    # norm -1/4 classes, -4 on the characteristic class
    data = disc_data(L)
    char = data.elements[data.one_index].coords
    assert div.terms[(char, Fraction(-1, 4))] == -4
    mults = {m for (coords, e), m in div.terms.items()
             if e == Fraction(-1, 4) and coords != char}
    assert mults == {4}


def test_divisor_multiplicities_integral():
    for expr in ["U+A1++A1", "U+U(2)+D4"]:
        div = borcherds_divisor(construct_F(parse_lattice_expr(expr), order=2))
        assert all(isinstance(m, int) for m in div.terms.values())


def test_oracle_matches_exact_form_small():
    # one lattice, one point; the full four-lattice sweep is an acceptance run
    L = parse_lattice_expr("U+A1+")
    tau = mpmath.mpc("-0.2", "1.4")
    values, data = lift_oracle_numeric(L, tau, prec=128, target=1e-26)
    # at Im tau = 1.4 the direct expansion is already < 1e-26 beyond n ~ 13
    F = construct_F(L, order=64)
    direct = eval_vvform(F, tau, 128)
    for i, el in enumerate(data.elements):
        assert abs(values[i] - direct[el.coords]) < 1e-20
