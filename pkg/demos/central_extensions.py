"""Which algebras admit a central extension of one more step."""

from nilcoh import build, central_extension_criterion, extension_from_cocycle, nilpotency_class
from nilcoh.cohomology import cohomology, filtered_h2
from nilcoh.modules import trivial_module

for name in ("heisenberg1", "heisenberg2", "heisenberg3", "quot_3_2_len1",
             "quot_4_2_len1", "quot_4_2_len2", "filiform4"):
    v = central_extension_criterion(build(name))
    print(f"{name:>14}: |n/[f,n]| = {v.lhs:>2}, b2 = {v.rhs:>2}, "
          f"class p+1 extension: {v.admits_class_p_plus_1}")

# build one explicitly: a class outside F_2 H^2 of the single-relation quotient
g = build("quot_3_2_len1")
k = trivial_module(g)
H = cohomology(g, k, 2)
F2 = filtered_h2(g, k, 2).subspace
for i, R in enumerate(H.representatives):
    if not F2.contains_vector({i: g.F.one}):
        E = extension_from_cocycle(g, k, R)
        print(f"extension of {g.name} by a line: dim {E.total.dim}, class {nilpotency_class(E.total)}")
        break
