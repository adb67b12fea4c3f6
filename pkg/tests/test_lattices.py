"""Even lattices, discriminant forms, and the (r, l, delta) triple calculus."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twoelem import (
    Lattice,
    LatticeTriple,
    characteristic_element,
    direct_sum,
    discriminant_group,
    genus_g,
    genus_k,
    parse_lattice_expr,
    perp_transition,
    rescale,
    signature,
    sigma,
    standard_lattice,
    two_elementary_invariants,
)


def test_standard_grams():
    assert standard_lattice("U").det() == -1
    assert standard_lattice("E8").det() == 1
    assert standard_lattice("D4").det() == 4
    assert standard_lattice("A1").gram == ((-2,),)
    assert standard_lattice("A1plus").gram == ((2,),)


def test_signatures():
    assert signature(standard_lattice("U")) == (1, 1)
    assert signature(standard_lattice("E8")) == (0, 8)
    assert signature(parse_lattice_expr("U+U+E8")) == (2, 10)
    assert sigma(parse_lattice_expr("U+U+E8")) == -8


@pytest.mark.parametrize("expr, want", [
    ("A1", (1, 1, 1)),
    ("A1+", (1, 1, 1)),
    ("U", (2, 0, 0)),
    ("U(2)", (2, 2, 0)),
    ("U+U+E8(2)", (12, 8, 0)),
    ("U+U(2)+D4+D4", (12, 6, 0)),
    ("U+U+E8(2)+A1", (13, 9, 1)),
    ("U+U(2)+E8(2)", (12, 10, 0)),
])
def test_triples(expr, want):
    t = two_elementary_invariants(parse_lattice_expr(expr))
    assert (t.r, t.l, t.delta) == want


def test_parse_expressions():
    L = parse_lattice_expr("A1+^2+A1^3")
    assert L.rank == 5
    assert signature(L) == (2, 3)
    with pytest.raises(ValueError):
        parse_lattice_expr("U+Q7")


def test_discriminant_group_sizes():
    assert len(discriminant_group(standard_lattice("U"))) == 1
    assert len(discriminant_group(rescale(standard_lattice("U"), 2))) == 4
    assert len(discriminant_group(standard_lattice("D4"))) == 4


def test_characteristic_element_property():
    # b(char, x) = q(x) mod 1 for every class x
    for expr in ["A1", "A1++A1", "U+U+E8(2)+A1", "U(2)+A1"]:
        L = parse_lattice_expr(expr)
        A = discriminant_group(L)
        char = characteristic_element(L)
        for x in A.elements():
            assert (A.b(char, x) - A.q(x)) % 1 == 0
    # delta = 0 forces the zero class
    assert characteristic_element(parse_lattice_expr("U(2)")).is_zero()


def test_pairing_and_norm():
    U = standard_lattice("U")
    assert U.pairing((1, 0), (0, 1)) == 1
    assert U.norm((1, 1)) == 2
    assert direct_sum(U, U).rank == 4


def test_genus_invariants():
    t = two_elementary_invariants(parse_lattice_expr("U+U+E8(2)+A1"))
    assert genus_g(t) == 0
    assert genus_k(t) == 2
    t10 = LatticeTriple(10, 10, 0)
    assert genus_g(t10) == 1


def test_transitions():
    t = LatticeTriple(2, 2, 0)
    assert perp_transition(t, "odd") == LatticeTriple(3, 3, 1)
    assert perp_transition(t, "even_wu") == LatticeTriple(3, 1, 0)
    assert perp_transition(t, "even_nonwu") == LatticeTriple(3, 1, 1)
    with pytest.raises(ValueError):
        perp_transition(LatticeTriple(2, 0, 0), "even_wu")  # needs l >= 1
    with pytest.raises(ValueError):
        perp_transition(t, "sideways")


@st.composite
def triples(draw):
    r = draw(st.integers(min_value=2, max_value=18))
    k = draw(st.integers(min_value=0, max_value=min(4, r // 2)))
    d = draw(st.integers(min_value=0, max_value=1))
    return LatticeTriple(r, r - 2 * k, d)


@settings(deadline=None, max_examples=60)
@given(triples())
def test_transition_preserves_parity(t):
    for kind in ("odd", "even_wu", "even_nonwu"):
        try:
            nt = perp_transition(t, kind)
        except ValueError:
            continue
        assert nt.r == t.r + 1
        assert (nt.r - nt.l) % 2 == 0
        assert nt.l >= 0


def test_triple_validation():
    with pytest.raises(ValueError):
        LatticeTriple(3, 2, 0)  # parity violation
    with pytest.raises(ValueError):
        LatticeTriple(2, 3, 0)  # l > r


def test_rescale_doubles_gram():
    U2 = rescale(standard_lattice("U"), 2)
    assert U2.gram == ((0, 2), (2, 0))
    t = two_elementary_invariants(U2)
    assert (t.l, t.delta) == (2, 0)


def test_gram_must_be_even_symmetric():
    with pytest.raises(ValueError):
        Lattice(((1,),))
    with pytest.raises(ValueError):
        Lattice(((2, 1), (0, 2)))
