"""Finite curve catalogs as bare Lorentzian length structures.
===========================================================

A catalog lists points and directed curves with lengths and causal classes.
The derived relations close over concatenation (chronological chains need
timelike curves only: there is no push-up in the bare setting), the derived
time separation is a longest-path computation with positive cycles flagged
as infinite, and the resulting structure always verifies the reverse
triangle inequality and the positivity/vanishing laws.
"""

from lorcone import CurveCatalog, check_bare_llspace, derived_relations, derived_tau

text = """
point w
curve x y 1.0 timelike
curve y z 1.0 timelike
curve x z 3.0 timelike
curve z w 0.0 causal
"""
cat = CurveCatalog.from_text(text)
rel = derived_relations(cat)
tt = derived_tau(cat)

print("catalog:")
print(cat.to_text())

i, j = rel.index("x"), rel.index("z")
print("x << z (timelike chain):", bool(rel.ll[i, j]))
print("x <= w (causal closure):", bool(rel.le[i, rel.index('w')]))
print("x << w (no push-up)    :", bool(rel.ll[i, rel.index('w')]))
print("tau(x, z) = max(1+1, 3) =", tt.tau("x", "z"))
print("tau(x, w)               =", tt.tau("x", "w"))

verdict = check_bare_llspace(cat)
print("\nbare length-space checks: ok =", verdict.ok,
      f"({verdict.triples_checked} ordered triples checked)")

# a positive cycle makes tau infinite on every pair passing through it
cyc = CurveCatalog.from_text(
    "curve a b 1.0 timelike\ncurve b a 1.0 timelike\ncurve b c 0.5 causal\n")
ttc = derived_tau(cyc)
print("\nwith a positive cycle a <-> b:")
print("  tau(a, c) =", ttc.tau("a", "c"))
print("  tau(a, a) =", ttc.tau("a", "a"))
print("  checks still pass:", check_bare_llspace(cyc).ok)
