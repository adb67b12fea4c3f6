"""The graph of 2-elementary Lorentzian triples attached to K3 involutions,
the reference dataset of high-rank orthogonal complements, and the exact
bookkeeping identities tying the Borcherds-lift weight/divisor data to the
theta-product side.

Vertices are triples (r, l, delta) of the Lorentzian sublattice M; the three
edge kinds correspond to passing to the orthogonal complement of a (-2)-
vector d:

    odd        (d in Delta'):   (r, l, delta) -> (r+1, l+1, 1)
    even Wu    (d in Delta''):  (r, l, delta) -> (r+1, l-1, 0)
    even non-Wu (d in Delta''): (r, l, delta) -> (r+1, l-1, 1)

Triples generated beyond the reference dataset are flagged
`unverified_existence`: the classification facts needed to promote them to
actual lattices are not re-derived here.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .lattices import (
    LatticeTriple,
    genus_g,
    genus_k,
    parse_lattice_expr,
    perp_transition,
    signature,
    two_elementary_invariants,
)
from .vvmf import borcherds_weight, borcherds_divisor, construct_F

EDGE_KINDS = ("odd", "even_wu", "even_nonwu")


# ---------------------------------------------------------------------------
# the reference dataset: orthogonal complements M-perp for every M with
# r(M) > 10 or (r(M), delta(M)) = (10, 1), grouped by the genus g(M)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Table1Row:
    g: int                 # genus of the fixed-curve system of M
    perp_expr: str         # symbolic expression for M-perp
    delta_perp: int        # delta of M-perp (= delta of M)


def table1():
    """The 43 reference rows (g, M-perp expression, delta)."""
    rows = []

    def fam(g, base, krange, delta):
        for k in krange:
            expr = base if k == 0 else f"{base}+" + "+".join(["A1"] * k)
            rows.append(Table1Row(g, expr, delta))

    fam(0, "A1++A1+", range(0, 10), 1)
    rows.append(Table1Row(0, "U(2)+U(2)", 0))
    fam(1, "U+A1+", range(0, 10), 1)
    rows.append(Table1Row(1, "U(2)+U(2)+D4", 0))
    rows.append(Table1Row(1, "U+U(2)", 0))
    fam(2, "U+U", range(1, 9), 1)
    rows.append(Table1Row(2, "U+U(2)+D4", 0))
    rows.append(Table1Row(2, "U+U", 0))
    fam(3, "U+U+D4", range(1, 5), 1)
    rows.append(Table1Row(3, "U+U+D4", 0))
    fam(4, "A1++A1++E8", range(0, 3), 1)
    fam(5, "U+A1++E8", range(0, 2), 1)
    assert len(rows) == 43
    return rows


def validate_row(row: Table1Row) -> dict:
    """Rebuild the lattice and recompute (r, l, delta, g); mismatches raise."""
    L = parse_lattice_expr(row.perp_expr)
    triple = two_elementary_invariants(L)
    sig = signature(L)
    checks = {
        "signature_plus": sig[0] == 2,
        "delta": triple.delta == row.delta_perp,
        "genus": (triple.r - triple.l) // 2 == row.g,
    }
    if not all(checks.values()):
        raise AssertionError(f"row {row} failed validation: {checks}")
    return {"row": row, "triple": triple, "checks": checks}


def m_triple_of_row(row: Table1Row) -> LatticeTriple:
    """Triple of M recovered from M-perp by (22 - r, l, delta).

    Uses the anti-isometry of discriminant forms across an orthogonal
    decomposition of the K3 lattice; in particular delta(M) = delta(M-perp).
    """
    L = parse_lattice_expr(row.perp_expr)
    t = two_elementary_invariants(L)
    return LatticeTriple(22 - t.r, t.l, t.delta)


# ---------------------------------------------------------------------------
# graph construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class K3Vertex:
    triple: LatticeTriple
    unverified_existence: bool = field(default=False, compare=False)

    @property
    def g(self) -> int:
        return genus_g(self.triple)

    @property
    def k(self) -> int:
        return genus_k(self.triple)

    def label(self) -> str:
        t = self.triple
        return f"({t.r},{t.l},{t.delta}) g={self.g}"


@dataclass(frozen=True)
class K3Edge:
    source: LatticeTriple
    target: LatticeTriple
    kind: str


@dataclass
class K3Graph:
    vertices: dict  # triple -> K3Vertex
    edges: list     # K3Edge


def _admissible(t: LatticeTriple) -> bool:
    return 1 <= t.r <= 20 and t.l >= 0 and (t.r - t.l) % 2 == 0 and t.l <= 22 - t.r


def build_graph(seed_triples, depth: int = 30) -> K3Graph:
    """Closure of the seeds under the three transitions within admissibility.

    Asserts that no (source, target) pair carries two distinct edge kinds.
    """
    seeds = list(seed_triples)
    vertices = {t: K3Vertex(t, unverified_existence=False) for t in seeds}
    edges = []
    seen_pairs = {}
    frontier = list(seeds)
    for _ in range(depth):
        new_frontier = []
        for t in frontier:
            for kind in EDGE_KINDS:
                try:
                    nt = perp_transition(t, kind)
                except ValueError:
                    continue
                if not _admissible(nt):
                    continue
                pair = (t, nt)
                if pair in seen_pairs:
                    if seen_pairs[pair] != kind:
                        raise AssertionError(
                            f"multiple edges between {t} and {nt}: "
                            f"{seen_pairs[pair]} and {kind}"
                        )
                    continue
                seen_pairs[pair] = kind
                edges.append(K3Edge(t, nt, kind))
                if nt not in vertices:
                    vertices[nt] = K3Vertex(nt, unverified_existence=True)
                    new_frontier.append(nt)
        if not new_frontier:
            break
        frontier = new_frontier
    return K3Graph(vertices, edges)


def export_dot(graph: K3Graph) -> str:
    styles = {"odd": "solid", "even_wu": "dashed", "even_nonwu": "dotted"}
    lines = ["digraph k3 {"]
    ids = {}
    for i, (t, v) in enumerate(sorted(graph.vertices.items(),
                                      key=lambda kv: (kv[0].r, kv[0].l, kv[0].delta))):
        ids[t] = f"v{i}"
        shape = "ellipse" if not v.unverified_existence else "box"
        lines.append(f'  v{i} [label="{v.label()}", shape={shape}];')
    for e in graph.edges:
        lines.append(
            f"  {ids[e.source]} -> {ids[e.target]} "
            f'[style={styles[e.kind]}, label="{e.kind}"];'
        )
    lines.append("}")
    return "\n".join(lines)


def export_json(graph: K3Graph) -> str:
    data = {
        "vertices": [
            {
                "r": t.r, "l": t.l, "delta": t.delta,
                "g": v.g, "k": v.k,
                "unverified_existence": v.unverified_existence,
            }
            for t, v in sorted(graph.vertices.items(),
                               key=lambda kv: (kv[0].r, kv[0].l, kv[0].delta))
        ],
        "edges": [
            {
                "source": [e.source.r, e.source.l, e.source.delta],
                "target": [e.target.r, e.target.l, e.target.delta],
                "kind": e.kind,
            }
            for e in graph.edges
        ],
        "table1": [
            {"g": row.g, "perp": row.perp_expr, "delta": row.delta_perp}
            for row in table1()
        ],
    }
    return json.dumps(data, indent=2)


def import_json(text: str) -> K3Graph:
    data = json.loads(text)
    vertices = {}
    for v in data["vertices"]:
        t = LatticeTriple(v["r"], v["l"], v["delta"])
        vertices[t] = K3Vertex(t, unverified_existence=v["unverified_existence"])
    edges = [
        K3Edge(
            LatticeTriple(*e["source"]),
            LatticeTriple(*e["target"]),
            e["kind"],
        )
        for e in data["edges"]
    ]
    return K3Graph(vertices, edges)


# ---------------------------------------------------------------------------
# exact bookkeeping identities
# ---------------------------------------------------------------------------

def thm91_consistency(row: Table1Row, ell: int = 1) -> dict:
    """Exact weight/divisor balance for one reference row.

    With g = g(M), nu = 2^{g-1}(2^g+1) ell and w the lift weight of M-perp:
      (i)   2^{g-1} w            = 2^{g-1}(2^g+1)(r(M) - 6)
      (ii)  2^{g-1} + 2*2^{2g-2} = 2^{g-1}(2^g+1)       (D' balance)
      (iii) 2^{g-1} * m''        = 2^{g-1}(2^g+1)       (D'' balance;
            m'' the D''-multiplicity of the lift divisor; vacuous if
            Delta'' is empty)
      (iv)  2^{g+1}(2^g+1) ell   = 4 nu                 (theta-weight slot)
    All quantities are exact rationals (g = 0 uses 2^{g-1} = 1/2).
    """
    if ell < 1:
        raise ValueError("ell must be a positive integer")
    L = parse_lattice_expr(row.perp_expr)
    t = two_elementary_invariants(L)
    g = (t.r - t.l) // 2
    assert g == row.g
    r_m = 22 - t.r
    two = Fraction(2)
    pg1 = two ** (g - 1)
    w, _ = borcherds_weight(L)
    checks = {}
    checks["weight_balance"] = pg1 * w == pg1 * (2 ** g + 1) * (r_m - 6)
    checks["dprime_balance"] = pg1 + 2 * two ** (2 * g - 2) == pg1 * (2 ** g + 1)
    ledger = borcherds_divisor(construct_F(L, order=2)).delta_ledger()
    if ledger["dsecond"] is None:
        checks["dsecond_balance"] = "vacuous (Delta'' empty)"
    else:
        checks["dsecond_balance"] = pg1 * ledger["dsecond"] == pg1 * (2 ** g + 1)
    nu = pg1 * (2 ** g + 1) * ell
    checks["theta_weight_slot"] = two ** (g + 1) * (2 ** g + 1) * ell == 4 * nu
    ok = all(c is True or isinstance(c, str) for c in checks.values())
    return {"row": row, "g": g, "ell": ell, "nu": nu, "weight": w,
            "checks": checks, "ok": ok}


def thm93_check() -> dict:
    """The rank-13 complement: exponent pattern (40; 4; 16) and weight 15.

    M-perp = U^2 + E8(2) + A1 has g = 2; with ell = 1 the identities are
    40 = 2^{g+1}(2^g+1) ell, lift exponent 4 = 2^g, theta exponent 16 = 8*2.
    """
    L = parse_lattice_expr("U+U+E8(2)+A1")
    t = two_elementary_invariants(L)
    g = (t.r - t.l) // 2
    w, _ = borcherds_weight(L)
    checks = {
        "g": g == 2,
        "total_exponent": 2 ** (g + 1) * (2 ** g + 1) == 40,
        "lift_exponent": 2 ** g == 4,
        "weight": w == 15,
    }
    return {"triple": t, "g": g, "weight": w, "checks": checks,
            "ok": all(checks.values())}


def prop92_obstruction(m_expr: str) -> dict:
    """Obstruction certificate for a rank-10, delta = 0 Lorentzian type M.

    The would-be quotient of the lift power by the pulled-back theta product
    would have divisor

        {2^g + 2a(2^g - 1)} ell D'  +  (2^g - 1) E     (a >= 0, ell >= 1)

    which is certified nonzero effective symbolically: every coefficient is
    nonnegative and the D' coefficient is >= 2^g >= 4 at the minimal case.
    The exceptional class (r, l, delta) = (10, 10, 0) is out of scope, as is
    the l = 0 class (its genus exceeds the theta-product range).
    """
    M = parse_lattice_expr(m_expr)
    t = two_elementary_invariants(M)
    if (t.r, t.delta) != (10, 0):
        raise ValueError("certificate applies to (r, delta) = (10, 0) types")
    if t.l not in (2, 4, 6, 8):
        raise ValueError(
            "certificate covers the four classes with l in {2,4,6,8} "
            "(genus 2..5); the given class is out of scope"
        )
    g = genus_g(t)
    dprime_min = 2 ** g  # a = 0, ell = 1
    cert = {
        "g": g,
        "dprime_coefficient": f"(2^{g} + 2a(2^{g}-1)) ell",
        "dprime_min": dprime_min,
        "e_coefficient": 2 ** g - 1,
        "nonzero_effective": dprime_min > 0 and 2 ** g - 1 >= 0,
    }
    return cert


def rhs_invariant(tube_point, F, sigma_point, ell: int = 1, prec: int = 53,
                  product_order=2, min_margin: float = 0.05,
                  weyl_vector=None, l_ref=None):
    """Modulus of the right-hand side at one point:

        (||Psi||^2)^{2^{g-1} ell} * (||chi_g^8||^2)^{ell}

    with g read from the Siegel point.  In weyl-free mode this is defined up
    to a z-independent chamber scale, which cancels in ratios and slopes.
    """
    import mpmath

    from .borcherds import petersson_norm_point, product_eval
    from .siegel import chi_g8_petersson

    g = sigma_point.g
    val, _tail = product_eval(F, tube_point, weyl_vector=weyl_vector,
                              order=product_order, min_margin=min_margin)
    ambient = tube_point.ambient()
    eta = tube_point.period_vector()
    if l_ref is None:
        l_ref = [1] + [0] * (ambient.rank - 1)
    w, _ = borcherds_weight(ambient)
    psi_norm2 = petersson_norm_point(ambient, eta, l_ref, w, value=val)
    chi_norm2 = chi_g8_petersson(sigma_point, prec)
    return mpmath.mpf(psi_norm2) ** (Fraction(2) ** (g - 1) * ell) * chi_norm2 ** ell
