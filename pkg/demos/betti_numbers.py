"""Betti numbers of small nilpotent Lie algebras from the Chevalley-Eilenberg complex."""

from math import comb

from nilcoh import abelian, betti, heisenberg, load_catalog
from nilcoh.cohomology import differential
from nilcoh.modules import trivial_module

# h_1 is spanned by x, y, z with [x, y] = z
h1 = heisenberg(1)
print("h1 brackets:", {(h1.labels[i], h1.labels[j]): v for (i, j), v in h1.sc.items()})
print("betti(h1) =", betti(h1))

# d^1 sends the dual of z to minus the dual of x ^ y; everything else is closed
k = trivial_module(h1)
print("rank d^1 =", differential(h1, k, 1).rank())

# the Heisenberg algebras against the closed formula C(2n, k) - C(2n, k - 2)
for n in (1, 2, 3):
    b = betti(heisenberg(n))
    closed = [comb(2 * n, i) - (comb(2 * n, i - 2) if i >= 2 else 0) for i in range(n + 1)]
    print(f"h{n}: {b}   lower half by formula {closed}")

# an abelian algebra has the binomial coefficients as Betti numbers
print("abelian4:", betti(abelian(4)))

# Poincare duality holds on the whole bundled catalog
for g in load_catalog():
    b = betti(g)
    print(f"{g.name:>16}  dim {g.dim:>2}  {b}  symmetric: {b == b[::-1]}")
