"""Free nilpotent Lie algebras: Hall basis, Witt dimensions and the universal property."""

from nilcoh import FreeNilpotent, heisenberg, witt_dim
from nilcoh.cohomology import betti

f = FreeNilpotent(2, 4)
print(f"f_(2,4) has dimension {f.dim}")
for i, label in enumerate(f.labels):
    print(f"  {i:>2}  degree {f.degree_of(i)}  {label}")

# graded dimensions from the Witt formula
for n in (2, 3, 4):
    print(f"n = {n}:", [witt_dim(n, i) for i in range(1, 7)])

# brackets are rewritten into the Hall basis
x1, x2 = f.generator(0), f.generator(1)
print("[x2, [x1, x2]] =", f.bracket_sparse(x2, f.bracket_sparse(x1, x2)))

# any choice of generator images defines a homomorphism to a 2-step algebra
h2 = heisenberg(2)
f4 = FreeNilpotent(4, 2)
images = [h2.basis_vector(i) for i in range(4)]
pi = f4.hom_to(h2, images, check=True)
print("f_(4,2) -> h2 is onto:", pi.is_surjective(), " kernel dim:", pi.kernel().dim)

# b_2 of a free nilpotent algebra is the next Witt dimension
for n, p in [(2, 2), (2, 3), (3, 2)]:
    print(f"b2(f_({n},{p})) = {betti(FreeNilpotent(n, p), 2)[2]}, witt({n},{p + 1}) = {witt_dim(n, p + 1)}")
