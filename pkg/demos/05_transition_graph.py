"""The Lorentzian transition graph and the exact bookkeeping identities.

Run:  python3 demos/05_transition_graph.py
"""
from collections import Counter

from twoelem import build_graph, table1, thm91_consistency
from twoelem.k3graph import export_dot, m_triple_of_row, thm93_check

rows = table1()
print(f"Reference dataset: {len(rows)} rows, grouped by genus:")
for g, n in sorted(Counter(r.g for r in rows).items()):
    print(f"  g = {g}: {n} rows")

print("\nWeight/divisor balance on a few rows (exact rational identities):")
for row in rows[::9]:
    res = thm91_consistency(row)
    print(f"  g={row.g} {row.perp_expr:24s} weight {str(res['weight']):>4s} "
          f"ok={res['ok']}")

res = thm93_check()
print(f"\nRank-13 complement: weight {res['weight']}, exponent pattern "
      f"40 = 2^(g+1)(2^g+1) at g = {res['g']}: ok={res['ok']}")

seeds = []
for row in rows:
    t = m_triple_of_row(row)
    if t not in seeds:
        seeds.append(t)
graph = build_graph(seeds)
print(f"\nClosure under the three root transitions: {len(graph.vertices)} "
      f"vertices, {len(graph.edges)} edges")
print("First lines of the DOT export:")
for line in export_dot(graph).splitlines()[:6]:
    print(f"  {line}")
