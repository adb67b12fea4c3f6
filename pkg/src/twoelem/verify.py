"""Self-check suites wired into the `verify` command.

Each suite returns a list of check dicts {"name", "ok", "detail"} and is
deterministic; `run_suite("all")` concatenates every suite.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .lattices import (
    direct_sum,
    parse_lattice_expr,
    rescale,
    standard_lattice,
    two_elementary_invariants,
)
from .modforms import eisenstein_e4, eta_power
from .mp2 import evaluate_word
from .series import QSeries
from .vvmf import borcherds_divisor, borcherds_weight, construct_F, restrict
from .weil import (
    closed_form_st_l_inverse_column,
    closed_form_v_inverse_column,
    weil_column_of,
    weil_generator,
)

SUITES = ("series", "weil", "borcherds", "siegel", "graph")


def _check(name, ok, detail=""):
    return {"name": name, "ok": bool(ok), "detail": detail}


# ---------------------------------------------------------------------------

def suite_series():
    checks = []
    order = Fraction(8)
    L = parse_lattice_expr("U+U+E8")
    F = construct_F(L, order=order)
    e0 = next(iter(F.components.values()))
    want = (eisenstein_e4(order + 1) ** 2 * eta_power(1, -24, order + 1)).truncate(order)
    checks.append(_check(
        "scalar form on the unimodular rank-12 lattice equals E4^2/eta^24",
        e0.eq_below(want, order),
        f"compared below exponent {order}",
    ))

    for N, expr in [(1, "A1+"), (1, "A1++A1"), (2, "A1+"), (2, "A1++A1")]:
        L_small = parse_lattice_expr(expr)
        big = direct_sum(rescale(standard_lattice("U"), N), L_small)
        Fb = construct_F(big, order=10)
        Fr = restrict(Fb, N, L_small)
        Fs = construct_F(L_small, order=10)
        ok = all(
            Fr.components[c].eq_below(Fs.components[c], Fr.components[c].trunc)
            for c in Fs.components
        )
        checks.append(_check(
            f"restriction along U({N}) + ({expr}) recovers the small form",
            ok, "coefficientwise to order 10",
        ))
    return checks


def suite_weil():
    checks = []
    lattices = ["A1", "A1+", "U+A1+", "U(2)"]
    for expr in lattices:
        L = parse_lattice_expr(expr)
        for l_exp in range(4):
            g = evaluate_word([("S", 1), ("T", l_exp)]).inverse()
            word_col = weil_column_of(L, g)
            closed = closed_form_st_l_inverse_column(L, l_exp)
            checks.append(_check(
                f"rho((S T^{l_exp})^-1) e_0 closed form on {expr}",
                all((a - b).is_zero() for a, b in zip(word_col, closed)),
                "exact cyclotomic equality",
            ))
        gV = evaluate_word([("S", 7), ("T", 2), ("S", 1)]).inverse()
        word_col = weil_column_of(L, gV)
        closed = closed_form_v_inverse_column(L)
        checks.append(_check(
            f"rho(V^-1) e_0 = e_char on {expr}",
            all((a - b).is_zero() for a, b in zip(word_col, closed)),
            "exact cyclotomic equality",
        ))
        for gen in ("S", "T"):
            checks.append(_check(
                f"rho({gen}) unitary on {expr}",
                weil_generator(L, gen).is_unitary(),
                "exact",
            ))
    return checks


def suite_borcherds():
    checks = []
    spots = [
        ("U+U(2)+E8(2)", 4),
        ("U+U+E8(2)", 12),
        ("U(2)+U(2)+E8(2)", 0),
        ("U+U(2)+D4+D4", 28),
        ("U+U+E8", 252),
        ("U+U+D4", 72),
        ("U+U+E8(2)+A1", 15),
    ]
    for expr, want in spots:
        w, series = borcherds_weight(parse_lattice_expr(expr))
        checks.append(_check(
            f"lift weight of {expr} = {want} (closed form and series)",
            w == want and series == want, f"got {w}",
        ))

    for expr in ["U+U+A1", "U+A1++A1", "U+U+D4+A1"]:
        L = parse_lattice_expr(expr)
        ledger = borcherds_divisor(construct_F(L, order=2)).delta_ledger()
        t = two_elementary_invariants(L)
        want_second = 2 ** ((t.r - t.l) // 2) + 1
        ok = (ledger["dprime"] == 1 and ledger["extra_char"] == 0
              and ledger["dsecond"] == want_second)
        checks.append(_check(
            f"divisor ledger D' + (2^((r-l)/2)+1) D'' on {expr}",
            ok, str(ledger),
        ))

    L13 = parse_lattice_expr("U+U+E8(2)+A1")
    ledger = borcherds_divisor(construct_F(L13, order=2)).delta_ledger()
    checks.append(_check(
        "rank-13 signed divisor ledger (1, 5, -8)",
        ledger == {"dprime": 1, "dsecond": 5, "extra_char": -8},
        str(ledger),
    ))
    return checks


def suite_siegel():
    import mpmath

    from .siegel import (
        SiegelPoint,
        ThetaChar,
        chi_g,
        even_characteristics,
        fay_family,
        theta_constant,
        vanishing_order_fit,
    )

    checks = []
    counts = [len(even_characteristics(g)) for g in range(6)]
    checks.append(_check(
        "even characteristic counts 1,3,10,36,136,528",
        counts == [1, 3, 10, 36, 136, 528], str(counts),
    ))

    point_i = SiegelPoint(((1j,),))
    th3 = theta_constant(ThetaChar((0,), (0,)), point_i, prec=64)
    ref = mpmath.pi ** 0.25 / mpmath.gamma(0.75)
    checks.append(_check(
        "theta_{0,0}(i) = pi^(1/4)/Gamma(3/4)",
        abs(th3 - ref) < 1e-15, f"diff {abs(th3 - ref)}",
    ))

    tau = 0.13 + 0.9j
    pt = SiegelPoint(((tau,),))
    chi1 = chi_g(pt, prec=64)
    with mpmath.workprec(64):
        q = mpmath.exp(2j * mpmath.pi * mpmath.mpc(tau))
        eta = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau) / 12)
        for n in range(1, 80):
            eta *= 1 - q ** n
    ratio = (chi1 ** 8) / eta ** 24
    checks.append(_check(
        "chi_1^8 = 256 eta^24",
        abs(ratio - 256) < 1e-12, f"ratio {ratio}",
    ))

    block = SiegelPoint(((0.1 + 1.2j, 0.0), (0.0, -0.2 + 0.9j)))
    chi2 = chi_g(block, prec=64)
    checks.append(_check(
        "chi_2 vanishes on block-diagonal matrices",
        abs(chi2) < 1e-14, f"|chi_2| = {abs(chi2)}",
    ))

    grid = [10 ** (-(3 + 0.5 * j)) for j in range(11)]
    fam1 = lambda t: fay_family(1, [[0.1 + 0.2j]], t)
    psi2 = [[0.1 + 0.3j, 0.15 + 0.05j], [0.15 + 0.05j, 0.2 + 1.1j]]
    fam2 = lambda t: fay_family(2, psi2, t)
    fam_split = lambda t: SiegelPoint(((0.1 + 1.5j, t), (t, -0.2 + 1.2j)))
    for name, fam, want in [("pinched handle, genus 1", fam1, 1),
                            ("pinched handle, genus 2", fam2, 4),
                            ("separating pinch, genus 2", fam_split, 8)]:
        slope, resid = vanishing_order_fit(fam, grid, prec=64)
        checks.append(_check(
            f"vanishing slope {want} ({name})",
            abs(slope - want) < 0.05 and math.isfinite(resid),
            f"slope {slope:.6f}, residual {resid:.2e}",
        ))
    return checks


def suite_graph():
    from .k3graph import (
        build_graph,
        m_triple_of_row,
        table1,
        thm91_consistency,
        thm93_check,
        validate_row,
    )

    checks = []
    rows = table1()
    ok = True
    for row in rows:
        try:
            validate_row(row)
        except AssertionError:
            ok = False
    checks.append(_check("all 43 reference rows validate", ok and len(rows) == 43,
                         f"{len(rows)} rows"))

    bad = [row for row in rows if not thm91_consistency(row)["ok"]]
    checks.append(_check("weight/divisor balance identities on every row",
                         not bad, f"{len(bad)} failures"))
    checks.append(_check("rank-13 exponent pattern (40; 4; 16), weight 15",
                         thm93_check()["ok"], ""))

    seeds = []
    for row in rows:
        t = m_triple_of_row(row)
        if t not in seeds:
            seeds.append(t)
    try:
        graph = build_graph(seeds)
        checks.append(_check(
            "transition graph closes with no multiple edges",
            len(graph.vertices) >= 43,
            f"{len(graph.vertices)} vertices, {len(graph.edges)} edges",
        ))
    except AssertionError as exc:
        checks.append(_check("transition graph closes with no multiple edges",
                             False, str(exc)))
    return checks


# ---------------------------------------------------------------------------

def run_suite(name: str):
    if name == "all":
        out = []
        for s in SUITES:
            out.extend(run_suite(s))
        return out
    fn = {
        "series": suite_series,
        "weil": suite_weil,
        "borcherds": suite_borcherds,
        "siegel": suite_siegel,
        "graph": suite_graph,
    }.get(name)
    if fn is None:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES + ('all',)}")
    return fn()
