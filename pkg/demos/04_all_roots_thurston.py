"""Every root in Z_p, found by walking Thurston's chain digit by digit.

Repeated factors are removed first.  Below each residue root the chain
substitutes x -> a + p x and strips p-power content until the derivative at
the current digit is a unit; that digit is then an admissible seed.
"""

from padicroots import Poly, PadicContext, find_all_roots, thurston_search

cases = {
    "x^2 - 7x + 6, p = 5": (5, [6, -7, 1]),
    "(x - 1)^2 (x - 2), p = 7": (7, [-2, 5, -4, 1]),
    "x^2 + 1, p = 7": (7, [1, 0, 1]),
    "(x - 1)(x - 15)(x - 155), p = 7": (7, [-2325, 2495, -171, 1]),
    "x^2 - 7, p = 7": (7, [-7, 0, 1]),
}

for name, (p, cs) in cases.items():
    f = Poly.from_ints(PadicContext(p, 20), cs)
    found = find_all_roots(f, 12)
    print(f"{name}: roots mod {p}^12 = {found.residues()}")
    for r in found:
        print(f"    prefix digits {list(r.prefix)}, root digits {r.root.digits(6)} ...")
    if found.dead_ends:
        print(f"    dead ends below {found.dead_ends}")

f = Poly.from_ints(PadicContext(5, 20), [6, -7, 1])
for leaf in thurston_search(f, 1):
    print("leaf:", leaf.kind.value, "digits", leaf.digits, "seed", leaf.residue, "for", leaf.poly)
