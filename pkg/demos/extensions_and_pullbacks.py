"""Abelian extensions from cocycles, their nilpotency class, and pullbacks."""

from nilcoh import build, class_of_extension, extension_from_cocycle, heisenberg, pullback
from nilcoh.cohomology import cohomology
from nilcoh.extensions import cocycle_from_extension, is_coboundary
from nilcoh.modules import adjoint_module, trivial_module
from nilcoh.presentation import build_free_extension

# every class of H^2(h1, k) gives an extension; its class lies between p and p + q
h1 = heisenberg(1)
k = trivial_module(h1)
for R in [{}] + cohomology(h1, k, 2).representatives:
    c = class_of_extension(extension_from_cocycle(h1, k, R))
    print(f"cocycle {dict(R)}: class {c.r} (p={c.p}, q={c.q}), split: {c.split}")

# adjoint coefficients over the filiform algebra
g = build("filiform4")
ad = adjoint_module(g)
for R in cohomology(g, ad, 2).representatives[:4]:
    c = class_of_extension(extension_from_cocycle(g, ad, R))
    print(f"filiform4 by its adjoint module: class {c.r} within [{c.p}, {c.p + c.q}]")

# pulled back to the free 2-step extension, a class-2 extension of h2 splits
h2 = heisenberg(2)
k2 = trivial_module(h2)
FE = build_free_extension(h2, 2)
E = extension_from_cocycle(h2, k2, cohomology(h2, k2, 2).representatives[0])
P, psi = pullback(E, FE.pi)
print("pullback over f_(4,2) has dim", P.total.dim, "and splits:",
      is_coboundary(FE.f, P.module, cocycle_from_extension(P)))
