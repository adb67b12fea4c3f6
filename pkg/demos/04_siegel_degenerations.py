"""Theta constants, the even product chi_g, and degeneration slopes.

Run:  python3 demos/04_siegel_degenerations.py
"""
import mpmath

from twoelem import (
    SiegelPoint,
    chi_g,
    even_characteristics,
    fay_family,
    vanishing_order_fit,
)

print("chi_g is the product of all even theta constants; the count grows as")
print("2^(g-1) (2^g + 1):")
for g in range(6):
    print(f"  g = {g}: {len(even_characteristics(g)):3d} even characteristics")

print("\nAt genus 1, chi_1 = theta_2 theta_3 theta_4 = 2 eta^3:")
tau = mpmath.mpc("0.21", "1.37")
print(f"  chi_1({tau}) = {chi_g(SiegelPoint(((tau,),)), 64)}")

print("\nchi_2 vanishes identically on split (block-diagonal) period")
print("matrices — one even characteristic factors into two odd ones:")
split = SiegelPoint(((0.4 + 1.1j, 0.0), (0.0, -0.3 + 0.8j)))
print(f"  |chi_2| on the split locus: {mpmath.nstr(abs(chi_g(split, 64)), 3)}")

print("\nVanishing orders along one-parameter degenerations, read off as the")
print("slope of log|chi^8|^2 against log|t|^2:")
grid = [10 ** (-(3 + 0.5 * j)) for j in range(11)]
families = [
    ("pinched handle, g=1", lambda t: fay_family(1, [[0.1 + 0.2j]], t)),
    ("pinched handle, g=2", lambda t: fay_family(
        2, [[0.1 + 0.3j, 0.15 + 0.05j], [0.15 + 0.05j, 0.2 + 1.1j]], t)),
    ("separating pinch, g=2",
     lambda t: SiegelPoint(((0.1 + 1.5j, t), (t, -0.2 + 1.2j)))),
]
for name, fam in families:
    slope, resid = vanishing_order_fit(fam, grid, prec=64)
    print(f"  {name:24s} slope {slope:.6f}  (residual {resid:.1e})")
