"""The Weil representation of Mp_2(Z) attached to a 2-elementary lattice.

On the generators it acts on the group algebra C[A] of the discriminant
group by

    rho(T) e_g = exp(pi*i*q(g)) e_g
    rho(S) e_g = i^{-sigma/2} / sqrt(|A|) * sum_d exp(-2*pi*i*b(g,d)) e_d

All scalars lie in Q(zeta_8): the quadratic form q takes values in (1/2)Z
mod 2Z, so exp(pi*i*q) is a power of zeta_8, i^{-sigma/2} = zeta_8^{-sigma},
and sqrt(2) = zeta - zeta^3.  This holds for odd sigma as well, which the
coset-sum oracle needs (e.g. U + A1plus has sigma = 1); no parity guard is
imposed.

Two representations are provided:

* dense WeilMatrix over Cyc8 for small discriminant groups (l <= 8);
* a fast column evaluator (`weil_column`) that applies a word to e_0,
  keeping an integer numpy state plus one exact Cyc8 prefactor, usable up
  to l = 12.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .cyc8 import Cyc8
from .lattices import Lattice, discriminant_group, characteristic_element, sigma as lattice_sigma
from .mp2 import Mp2Element, mp2_word

_DENSE_L_CAP = 8
_COLUMN_L_CAP = 12


@dataclass
class DiscData:
    """Precomputed discriminant data shared by all Weil operations."""

    lattice: Lattice
    group: "object"
    elements: list          # DiscElement, fixed order; index 0 is the zero class
    index: dict             # coords tuple -> position
    qvals: list             # Fraction in [0,2): q of each element
    tvals: list             # integer zeta-exponent 4*q mod 8 (phase of rho(T))
    sign_matrix: np.ndarray  # (-1)^{2 b(g,d)} as int64
    sigma: int
    l: int
    one_index: int          # position of the characteristic element


@lru_cache(maxsize=None)
def _disc_data_cached(gram: tuple) -> DiscData:
    return _build_disc_data(Lattice(gram))


def disc_data(L: Lattice) -> DiscData:
    return _disc_data_cached(L.gram)


def _build_disc_data(L: Lattice) -> DiscData:
    A = discriminant_group(L)
    if not A.is_two_elementary:
        raise ValueError("Weil representation implemented for 2-elementary lattices only")
    l = len(A.orders)
    if l > _COLUMN_L_CAP:
        raise ValueError(f"discriminant group too large (l={l} > {_COLUMN_L_CAP})")
    elements = list(A.elements())
    index = {el.coords: i for i, el in enumerate(elements)}
    qvals = [A.q(el) for el in elements]
    tvals = [int(4 * q) % 8 for q in qvals]
    # bilinear form on generators, in units of 1/2 -> F2 matrix
    gens = [A.element(tuple(int(i == j) for j in range(l))) for i in range(l)]
    B = np.array(
        [[int(2 * A.b(gi, gj)) % 2 for gj in gens] for gi in gens], dtype=np.int64
    )
    bits = np.array([el.coords for el in elements], dtype=np.int64)
    if l:
        parity = (bits @ B @ bits.T) % 2
    else:
        parity = np.zeros((1, 1), dtype=np.int64)
    signs = 1 - 2 * parity
    s = lattice_sigma(L)
    one = characteristic_element(L)
    return DiscData(L, A, elements, index, qvals, tvals, signs, s, l, index[one.coords])


# ---------------------------------------------------------------------------
# fast column evaluation
# ---------------------------------------------------------------------------

def _s_scalar(data: DiscData) -> Cyc8:
    """i^{-sigma/2} / |A|^{1/2} as an exact Cyc8 scalar."""
    scal = Cyc8.zeta(-data.sigma)  # i^{-sigma/2} = zeta^{-sigma}
    l = data.l
    scal = scal * Fraction(1, 2 ** (l // 2))
    if l % 2:
        scal = scal * Cyc8.sqrt2() * Fraction(1, 2)  # extra 1/sqrt(2)
    return scal


def _rotate(comp: np.ndarray, mask: np.ndarray, t: int) -> np.ndarray:
    """Multiply the masked entries (4-vectors over the zeta-power basis) by zeta^t."""
    out = comp[:, mask]
    res = np.zeros_like(out)
    for i in range(4):
        k = (i + t) % 8
        if k >= 4:
            res[k - 4] -= out[i]
        else:
            res[k] += out[i]
    return res


class _ColumnState:
    def __init__(self, data: DiscData, start: int = 0):
        self.data = data
        n = len(data.elements)
        self.comp = np.zeros((4, n), dtype=np.int64)
        self.comp[0, start] = 1
        self.prefactor = Cyc8(1)

    def apply_T(self, n: int):
        tphase = np.array(self.data.tvals, dtype=np.int64) * (n % 8) % 8
        for t in range(8):
            mask = tphase == t
            if t and mask.any():
                self.comp[:, mask] = _rotate(self.comp, mask, t)

    def apply_Z(self, k: int):
        # rho(Z) = i^{-sigma} * (e_g -> e_{-g}) and -g = g here
        self.prefactor = self.prefactor * Cyc8.zeta((-2 * self.data.sigma * k) % 8)

    def apply_S(self):
        self.comp = self.comp @ self.data.sign_matrix
        self.prefactor = self.prefactor * _s_scalar(self.data)

    def apply_token(self, gen: str, exp: int):
        if gen == "T":
            self.apply_T(exp)
        elif gen == "S":
            e = exp % 8
            self.apply_Z(e // 2)  # S^2 = Z
            if e % 2:
                self.apply_S()
        else:
            raise ValueError(f"unknown generator {gen!r}")

    def to_cyc8(self):
        out = []
        for j in range(self.comp.shape[1]):
            c = Cyc8(*(int(x) for x in self.comp[:, j]))
            out.append(self.prefactor * c if not c.is_zero() else Cyc8(0))
        return out


def weil_column(L: Lattice, word, start: int = 0):
    """rho(word) e_start as an exact list of Cyc8, word applied right-to-left."""
    data = disc_data(L)
    st = _ColumnState(data, start)
    for gen, exp in reversed(list(word)):
        st.apply_token(gen, exp)
    return st.to_cyc8()


def weil_column_of(L: Lattice, g: Mp2Element, start: int = 0):
    return weil_column(L, mp2_word(g), start)


# ---------------------------------------------------------------------------
# dense matrices (small l)
# ---------------------------------------------------------------------------

class WeilMatrix:
    """A dense |A| x |A| matrix over Cyc8."""

    __slots__ = ("lattice", "rows")

    def __init__(self, lattice: Lattice, rows):
        self.lattice = lattice
        self.rows = [list(r) for r in rows]

    def __matmul__(self, other: "WeilMatrix") -> "WeilMatrix":
        n = len(self.rows)
        bt = [[other.rows[k][j] for k in range(n)] for j in range(n)]
        out = []
        for row in self.rows:
            out.append([
                sum((row[k] * col[k] for k in range(n)), Cyc8(0)) for col in bt
            ])
        return WeilMatrix(self.lattice, out)

    def __eq__(self, other):
        return isinstance(other, WeilMatrix) and self.rows == other.rows

    def conj_transpose(self) -> "WeilMatrix":
        n = len(self.rows)
        return WeilMatrix(
            self.lattice,
            [[self.rows[j][i].conj() for j in range(n)] for i in range(n)],
        )

    def is_unitary(self) -> bool:
        n = len(self.rows)
        prod = self @ self.conj_transpose()
        for i in range(n):
            for j in range(n):
                want = Cyc8(1) if i == j else Cyc8(0)
                if prod.rows[i][j] != want:
                    return False
        return True

    def column(self, j: int):
        return [row[j] for row in self.rows]

    def apply(self, vec):
        return [sum((r[k] * vec[k] for k in range(len(vec))), Cyc8(0)) for r in self.rows]

    @staticmethod
    def identity(lattice: Lattice, n: int) -> "WeilMatrix":
        return WeilMatrix(
            lattice, [[Cyc8(int(i == j)) for j in range(n)] for i in range(n)]
        )


def weil_generator(L: Lattice, which: str) -> WeilMatrix:
    """Exact generator matrix rho(S) or rho(T) (dense; needs l <= 8)."""
    data = disc_data(L)
    if data.l > _DENSE_L_CAP:
        raise ValueError(
            f"dense Weil matrices capped at l <= {_DENSE_L_CAP}; use weil_column"
        )
    n = len(data.elements)
    if which == "T":
        rows = [
            [Cyc8.zeta(data.tvals[i]) if i == j else Cyc8(0) for j in range(n)]
            for i in range(n)
        ]
        return WeilMatrix(L, rows)
    if which == "S":
        scal = _s_scalar(data)
        rows = [
            [scal * int(data.sign_matrix[j][i]) for i in range(n)] for j in range(n)
        ]
        return WeilMatrix(L, rows)
    raise ValueError("which must be 'S' or 'T'")


def weil_rep(L: Lattice, g: Mp2Element) -> WeilMatrix:
    """rho(g) as a dense exact matrix, via the word decomposition of g."""
    word = mp2_word(g)
    data = disc_data(L)
    n = len(data.elements)
    matS = weil_generator(L, "S")
    matT = weil_generator(L, "T")
    acc = WeilMatrix.identity(L, n)
    for gen, exp in word:
        base = matS if gen == "S" else matT
        e = exp % 8
        for _ in range(e):
            acc = acc @ base
    return acc


def invariant_vector_check(L: Lattice, g: Mp2Element) -> Cyc8:
    """The scalar lambda with rho(g) e_0 = lambda e_0, for g with c = 0 mod 4.

    Errors if e_0 is not an eigenvector; asserts lambda^8 = 1.
    """
    if g.c % 4:
        raise ValueError("invariant_vector_check needs lower-left entry = 0 mod 4")
    col = weil_column_of(L, g, start=0)
    lam = col[0]
    for i, entry in enumerate(col):
        if i and not entry.is_zero():
            raise AssertionError(
                f"e_0 is not an eigenvector of rho(g): component {i} = {entry}"
            )
    assert lam ** 8 == Cyc8(1), f"eigenvalue {lam} is not an 8th root of unity"
    return lam


# ---------------------------------------------------------------------------
# closed forms used by the coset-sum construction (and tested against the
# word-product route)
# ---------------------------------------------------------------------------

def closed_form_st_l_inverse_column(L: Lattice, l_exp: int):
    """rho((S T^l)^{-1}) e_0 = i^{sigma/2} 2^{-l(L)/2} sum_k i^{-l*k} v_k

    where v_k sums the classes with q = k/2 mod 2.
    """
    data = disc_data(L)
    scal = Cyc8.zeta(data.sigma)  # i^{sigma/2}
    scal = scal * Fraction(1, 2 ** (data.l // 2))
    if data.l % 2:
        scal = scal * Cyc8.sqrt2() * Fraction(1, 2)
    out = []
    for q in data.qvals:
        k = int(2 * q) % 4
        out.append(scal * Cyc8.i_pow((-l_exp * k) % 4))
    return out


def closed_form_v_inverse_column(L: Lattice):
    """rho(V^{-1}) e_0 = e_{1_L} (characteristic element)."""
    data = disc_data(L)
    out = [Cyc8(0)] * len(data.elements)
    out[data.one_index] = Cyc8(1)
    return out
