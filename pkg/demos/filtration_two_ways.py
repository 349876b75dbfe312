"""F_r H^2 computed from filtered cochains and from a free nilpotent extension."""

from nilcoh import build, filtered_h2, filtration_via_kernel
from nilcoh.modules import adjoint_module, trivial_module
from nilcoh.presentation import admissible_range, build_free_extension

for name in ("heisenberg2", "filiform4", "quot_3_3_depth2"):
    g = build(name)
    E = build_free_extension(g, 3)
    print(f"\n{name}: dim {g.dim}, free extension f_({E.f.n},3) with kernel of dim {E.kernel.dim}")
    for M in (trivial_module(g), adjoint_module(g)):
        for r in admissible_range(g, M):
            a = filtered_h2(g, M, r)
            b = filtration_via_kernel(g, M, r)
            print(f"  {M.name:>8}  r={r}  cochains: {a.dim:>2}  kernel: {b.dim:>2}  "
                  f"of H2 = {a.cohomology.dim:>2}  same subspace: {a.subspace == b}")
