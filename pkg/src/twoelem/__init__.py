"""Exact-arithmetic toolkit for even 2-elementary lattices.

The library computes, with exact rational / Q(zeta_8) arithmetic wherever the
mathematics is exact:

* lattice invariants (rank, 2-rank, parity delta, signature) and discriminant
  forms of even lattices given by integer Gram matrices;
* the metaplectic group Mp_2(Z) and the Weil representation attached to a
  2-elementary lattice;
* the distinguished vector-valued modular form attached to such a lattice,
  its Borcherds lift (weight, Heegner divisor, truncated infinite product);
* Siegel theta constants with characteristics, the product chi_g of the even
  ones, and order-of-vanishing fits along one-parameter degenerations;
* the graph of 2-elementary Lorentzian triples (r, l, delta) with its three
  edge kinds, plus the weight/divisor bookkeeping identities that tie the
  lattice side to the Siegel side.

Numerics (multiprecision complex evaluation) are confined to mpmath; all
series, matrices and divisors are exact.
"""

from .cyc8 import Cyc8, cyc8_embed
from .series import QSeries, qseries_mul, qseries_eval
from .lattices import (
    Lattice,
    DiscGroup,
    DiscElement,
    LatticeTriple,
    standard_lattice,
    direct_sum,
    rescale,
    signature,
    sigma,
    discriminant_group,
    two_elementary_invariants,
    characteristic_element,
    genus_g,
    genus_k,
    perp_transition,
    parse_lattice_expr,
    lattice_from_json,
)
from .modforms import eta_power, theta_a1, f0, f1, g_i, eisenstein_e4
from .mp2 import Mp2Element, mp2_word, MP2_S, MP2_T, MP2_Z, MP2_V
from .weil import weil_generator, weil_rep, weil_column, invariant_vector_check
from .vvmf import (
    VVForm,
    HeegnerSum,
    construct_F,
    restrict,
    borcherds_weight,
    borcherds_divisor,
    lift_oracle_numeric,
)
from .borcherds import TubePoint, product_eval, petersson_norm_point, separating_walls
from .siegel import (
    ThetaChar,
    SiegelPoint,
    even_characteristics,
    theta_constant,
    chi_g,
    chi_g8_petersson,
    fay_family,
    vanishing_order_fit,
)
from .k3graph import (
    Table1Row,
    K3Vertex,
    table1,
    build_graph,
    thm91_consistency,
    prop92_obstruction,
    rhs_invariant,
)

__version__ = "0.1.0"
