"""The metaplectic double cover Mp_2(Z) as matrix-plus-branch pairs.

An element is (A, branch) with A in SL_2(Z); its automorphy factor is
j(g, tau) = (-1)^branch * sqrt(c*tau + d) with the principal square root.
Branch composition is fixed by evaluating the square-root cocycle at tau = i,
which is deterministic and well separated from the branch cut for every
integer matrix.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass


def _principal_sqrt(z: complex) -> complex:
    return cmath.sqrt(z)


@dataclass(frozen=True)
class Mp2Element:
    a: int
    b: int
    c: int
    d: int
    branch: int = 0  # 0 or 1

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")
        object.__setattr__(self, "branch", self.branch & 1)

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def j(self, tau: complex) -> complex:
        """j(g, tau) = (-1)^branch * principal sqrt(c*tau + d)."""
        return (-1) ** self.branch * _principal_sqrt(self.c * tau + self.d)

    def apply(self, tau: complex) -> complex:
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def __mul__(self, other: "Mp2Element") -> "Mp2Element":
        if not isinstance(other, Mp2Element):
            return NotImplemented
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        # fix the branch so that j(gh, i) = j(g, h.i) * j(h, i)
        tau = 1j
        target = self.j(other.apply(tau)) * other.j(tau)
        plain = _principal_sqrt(c * tau + d)
        branch = 0 if abs(plain - target) < abs(-plain - target) else 1
        return Mp2Element(a, b, c, d, branch)

    def inverse(self) -> "Mp2Element":
        inv = Mp2Element(self.d, -self.b, -self.c, self.a, 0)
        if (self * inv) != MP2_ONE:
            inv = Mp2Element(self.d, -self.b, -self.c, self.a, 1)
        assert self * inv == MP2_ONE
        return inv

    def __pow__(self, n: int) -> "Mp2Element":
        if n < 0:
            return self.inverse() ** (-n)
        acc = MP2_ONE
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc


MP2_ONE = Mp2Element(1, 0, 0, 1, 0)
MP2_S = Mp2Element(0, -1, 1, 0, 0)      # (S, sqrt(tau))
MP2_T = Mp2Element(1, 1, 0, 1, 0)       # (T, 1)
MP2_Z = MP2_S * MP2_S                   # (-I, i), central of order 4
MP2_V = (MP2_S ** 7) * (MP2_T ** 2) * MP2_S   # ((1 0; -2 1), sqrt(-2 tau + 1))


def evaluate_word(word) -> Mp2Element:
    """Multiply out a word: list of ('S'|'T', exponent) pairs, left to right."""
    acc = MP2_ONE
    for gen, exp in word:
        base = MP2_S if gen == "S" else MP2_T
        acc = acc * base ** exp
    return acc


def word_j(word, tau):
    """j(g, tau) for g = product of the word, composed factor by factor.

    Composing j along the word reproduces the metaplectic automorphy factor
    without consulting the branch bit (useful at arbitrary precision where
    tau is an mpmath complex number).
    """
    elements = []
    for gen, exp in word:
        base = MP2_S if gen == "S" else MP2_T
        step = 1 if exp >= 0 else -1
        for _ in range(abs(exp)):
            elements.append(base ** step)
    j = None
    point = tau
    # accumulate right-to-left: j(g1 g2, tau) = j(g1, g2 tau) * j(g2, tau)
    for el in reversed(elements):
        factor = _sqrt_like(el, point)
        point = el.apply(point)
        j = factor if j is None else j * factor
    return (j if j is not None else tau ** 0), point


def _sqrt_like(el: Mp2Element, tau):
    """(-1)^branch sqrt(c tau + d) evaluated with tau's own arithmetic."""
    val = el.c * tau + el.d
    try:
        root = val ** 0.5
    except Exception:  # mpmath mpc prefers sqrt()
        import mpmath

        root = mpmath.sqrt(val)
    return (-1) ** el.branch * root


def mp2_word(g: Mp2Element):
    """Decompose g into a word in S and T (with integer exponents).

    The matrix part is peeled by the Euclidean algorithm on the first column;
    a trailing power of Z = S^2 fixes sign and branch.  Evaluating the word
    reproduces g exactly.
    """
    from fractions import Fraction

    a, b, c, d = g.a, g.b, g.c, g.d
    word = []
    # Invariant: g = product(word) * (a b; c d), up to a central power of Z.
    # Each step left-multiplies the remainder by T^{-n} or S^{-1} and records
    # the corresponding generator power.
    while c != 0:
        n = round(Fraction(a, c))
        if n:
            word.append(("T", n))
            a, b = a - n * c, b - n * d
        word.append(("S", 1))
        a, b, c, d = c, d, -a, -b
    if a == -1:  # remainder is -(1, -b; 0, 1); absorb -I as Z = S^2
        word.append(("S", 2))
        a, d, b = 1, 1, -b
    if b:
        word.append(("T", b))
    # fix the central power of Z (matrix sign is already right; the branch
    # may still differ)
    for _ in range(4):
        if evaluate_word(word) == g:
            return word
        word.append(("S", 2))
    raise AssertionError("word reconstruction failed")
