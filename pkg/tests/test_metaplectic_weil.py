"""The metaplectic double cover and the Weil representation on (Z/2)^l."""
import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from twoelem import (
    MP2_S,
    MP2_T,
    MP2_Z,
    Cyc8,
    cyc8_embed,
    invariant_vector_check,
    mp2_word,
    parse_lattice_expr,
    weil_generator,
    weil_rep,
)
from twoelem.mp2 import evaluate_word, word_j
from twoelem.weil import (
    closed_form_st_l_inverse_column,
    closed_form_v_inverse_column,
    weil_column_of,
)

LATTICES = ["A1", "A1+", "U(2)", "U+A1+", "A1++A1"]


def test_group_relations():
    # S^2 = Z, (ST)^3 = Z, Z^4 = 1 in the double cover
    Z = MP2_S * MP2_S
    assert Z == MP2_Z
    st3 = (MP2_S * MP2_T) ** 3
    assert st3 == MP2_Z
    z4 = MP2_Z ** 4
    assert (z4.a, z4.b, z4.c, z4.d, z4.branch) == (1, 0, 0, 1, 0)
    assert (MP2_S * MP2_S.inverse()).matrix == ((1, 0), (0, 1))


def test_automorphy_cocycle():
    with mpmath.workprec(100):
        tau = mpmath.mpc("0.3", "1.7")
        for word in ([("S", 1)], [("T", 3)], [("S", 1), ("T", 2), ("S", 3)]):
            j, gtau = word_j(word, tau)
            g = evaluate_word(word)
            # j^2 = c tau + d and gtau is the Moebius image
            assert abs(j ** 2 - (g.c * tau + g.d)) < 1e-24
            assert abs(gtau - (g.a * tau + g.b) / (g.c * tau + g.d)) < 1e-24
            # j agrees with the branch-bit evaluation at double precision
            assert abs(complex(j) - g.j(complex(tau))) < 1e-12


@settings(deadline=None, max_examples=40)
@given(st.lists(st.tuples(st.sampled_from("ST"),
                          st.integers(min_value=1, max_value=3)),
                min_size=0, max_size=5))
def test_word_decomposition_roundtrip(word):
    g = evaluate_word(list(word))
    again = evaluate_word(mp2_word(g))
    assert g == again


@pytest.mark.parametrize("expr", LATTICES)
def test_generators_unitary(expr):
    L = parse_lattice_expr(expr)
    for gen in ("S", "T"):
        assert weil_generator(L, gen).is_unitary()


@pytest.mark.parametrize("expr", LATTICES)
def test_representation_relations(expr):
    L = parse_lattice_expr(expr)
    S = weil_generator(L, "S")
    T = weil_generator(L, "T")
    # rho(S)^2 = rho(Z) commutes with everything and rho((ST)^3) = rho(Z)
    Zm = S @ S
    assert Zm @ T == T @ Zm
    st3 = (S @ T) @ (S @ T) @ (S @ T)
    assert st3 == Zm


@pytest.mark.parametrize("expr", LATTICES)
def test_closed_form_columns(expr):
    L = parse_lattice_expr(expr)
    for l_exp in range(4):
        g = evaluate_word([("S", 1), ("T", l_exp)]).inverse()
        word_col = weil_column_of(L, g)
        closed = closed_form_st_l_inverse_column(L, l_exp)
        assert all((a - b).is_zero() for a, b in zip(word_col, closed))
    gV = evaluate_word([("S", 7), ("T", 2), ("S", 1)]).inverse()
    closed = closed_form_v_inverse_column(L)
    assert all((a - b).is_zero()
               for a, b in zip(weil_column_of(L, gV), closed))


def test_word_product_matches_matrix_route():
    L = parse_lattice_expr("U(2)")
    g = evaluate_word([("T", 2), ("S", 1), ("T", 1), ("S", 3)])
    col = weil_column_of(L, g)
    mat = weil_rep(L, g)
    assert all((a - b).is_zero() for a, b in zip(col, mat.column(0)))


def test_invariant_vector_eigenvalue():
    L = parse_lattice_expr("A1")
    g = evaluate_word([("T", 1), ("S", 1), ("T", 4), ("S", 7)])
    assert g.c % 4 == 0
    lam = invariant_vector_check(L, g)
    assert lam ** 8 == Cyc8(1)
    # numeric magnitude 1
    assert abs(abs(complex(cyc8_embed(lam, 64))) - 1) < 1e-15
