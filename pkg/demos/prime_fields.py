"""The same computations over GF(5) and GF(7)."""

from nilcoh import GF, QQ, betti, filtered_h2, filtration_via_kernel, load_catalog
from nilcoh.modules import trivial_module
from nilcoh.presentation import admissible_range

for F in (QQ, GF(5), GF(7)):
    rows = []
    agree = True
    for g in load_catalog(F):
        k = trivial_module(g)
        for r in admissible_range(g, k):
            agree &= filtered_h2(g, k, r).subspace == filtration_via_kernel(g, k, r)
        rows.append(betti(g, 2)[2])
    print(f"{F}: b2 over the catalog {rows}; both filtrations agree: {agree}")
