"""Free nilpotent extensions and what they say about H^2.

A free ``r``-step nilpotent extension of ``g`` is a surjection
``pi : f_{n,r} -> g`` whose kernel ``n`` lies in ``[f, f]``.  Through it the
filtration on ``H^2(g, M)`` becomes a kernel, the second Betti number gets a
closed expression, and ``b_2`` can be bounded from the type of ``g``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cohomology import (
    betti,
    cohomology,
    cohomology_dim,
    filtered_h2,
    free_h1_dim,
    induced_map_h2,
)
from .extensions import AbelianExtension, cocycle_from_extension
from .free import FreeNilpotent, canonical_inclusion, ideal_closure, witt_dim
from .lie import (
    AlgebraHom,
    LieAlgebra,
    derivation_algebra_dim,
    lower_central_series,
    center,
    nilpotency_class,
    product_subspace,
    type_of,
)
from .linalg import Echelon, Matrix, Subspace, solve_many
from .modules import (
    GModule,
    adjoint_module,
    ascending_filtration,
    equivariant_hom,
    induced_quotient_module,
    trivial_module,
)


class OutOfRange(ValueError):
    pass


@dataclass
class FreeExtension:
    g: LieAlgebra
    f: FreeNilpotent
    pi: AlgebraHom
    kernel: Subspace
    generators: list[dict]

    @property
    def r(self) -> int:
        return self.f.p

    @property
    def depth(self) -> int | None:
        """Largest ``d`` with ``n`` inside ``f^d``; ``None`` for a zero kernel."""
        if self.kernel.dim == 0:
            return None
        lowest = min(self.kernel.pivots)
        return self.f.degree_of(lowest)

    def f_n_quotient_dim(self) -> int:
        """``|n / [f, n]|``."""
        fn = product_subspace(self.f, self.f.full(), self.kernel)
        return self.kernel.dim - fn.dim


def default_generators(g: LieAlgebra) -> list[dict]:
    """Standard basis vectors completing ``[g, g]`` to ``g``, lexicographically first."""
    series = lower_central_series(g)
    derived = series[1] if len(series) > 1 else g.zero()
    ech = Echelon(g.F, g.dim, derived.rows)
    gens = []
    for i in range(g.dim):
        if ech.add({i: g.F.one}):
            gens.append({i: g.F.one})
    return gens


def build_free_extension(g: LieAlgebra, r: int, generators=None) -> FreeExtension:
    p = nilpotency_class(g)
    if r < p:
        raise OutOfRange(f"class {r} is below the class {p} of the algebra")
    gens = default_generators(g) if generators is None else [dict(x) for x in generators]
    series = lower_central_series(g)
    derived = series[1] if len(series) > 1 else g.zero()
    ech = Echelon(g.F, g.dim, derived.rows)
    if not all(ech.add(x) for x in gens) or ech.rank != g.dim:
        raise ValueError("generators must map to a basis of g / [g, g]")
    f = FreeNilpotent(len(gens), r, g.F)
    pi = f.hom_to(g, gens, check=False)
    pi.verify((i, j) for i in range(f.n) for j in range(f.dim) if i < j)
    kernel = pi.kernel()
    return FreeExtension(g, f, pi, kernel, gens)


def kernel_generators_check(E: FreeExtension, gens) -> bool:
    return ideal_closure(E.f, list(gens)) == E.kernel


def admissible_range(g: LieAlgebra, M: GModule) -> range:
    p = nilpotency_class(g)
    q = ascending_filtration(M).q
    return range(max(p, q), p + q + 1)


def filtration_via_kernel(g: LieAlgebra, M: GModule, r: int, extension: FreeExtension | None = None):
    """``F_r H^2(g, M)`` as the kernel of ``H^2(g, M) -> H^2(f_{n,r}, M)``."""
    if r not in admissible_range(g, M):
        raise OutOfRange(f"r = {r} outside {list(admissible_range(g, M))}")
    E = extension if extension is not None else build_free_extension(g, r)
    return induced_map_h2(E.pi, M).kernel


@dataclass
class ExactSequenceReport:
    r: int
    filtered_dim: int
    hom_dim: int
    h1_free: int
    h1_g: int
    span_checked: bool
    span_equal: bool | None

    @property
    def alternating_ok(self) -> bool:
        return self.filtered_dim == self.hom_dim - self.h1_free + self.h1_g

    @property
    def ok(self) -> bool:
        return self.alternating_ok and self.span_equal is not False


def connecting_cocycle(E: FreeExtension, induced) -> dict:
    """``phi_r`` for ``0 -> n/[n,n] -> f/[n,n] -> g -> 0``, valued in ``induced.module``."""
    f, g = E.f, E.g
    F = f.F
    chart = induced.chart
    NN = chart.B
    e, down = f.quotient(NN, name="f/[n,n]")
    inc = Matrix.from_columns(F, e.dim, [down(r) for r in chart.reps])
    # pi factors through f/[n,n]: evaluate it on the kept basis vectors
    kept = [i for i in range(f.dim) if i not in set(NN.pivots)]
    proj = Matrix.from_columns(F, g.dim, [E.pi.image_of_basis(i) for i in kept])
    ext = AbelianExtension(e, inc, AlgebraHom(e, g, proj, check=False), induced.module)
    return cocycle_from_extension(ext)


def exact_sequence_identity(g: LieAlgebra, M: GModule, r: int, span_check: bool | None = None) -> ExactSequenceReport:
    """Check ``|F_r H^2| = |Hom_g(n/[n,n], M)| - |H^1(f, M)| + |H^1(g, M)|``.

    With ``span_check`` (default: for trivial ``M``) also check that the
    classes of ``h o phi_r``, ``h`` running over ``Hom_g(n/[n,n], M)``, span
    ``F_r H^2``.
    """
    if r not in admissible_range(g, M):
        raise OutOfRange(f"r = {r} outside {list(admissible_range(g, M))}")
    E = build_free_extension(g, r)
    Fr = filtered_h2(g, M, r)
    if E.kernel.dim == 0:
        return ExactSequenceReport(r, Fr.dim, 0, free_h1_dim(E.pi, M), cohomology_dim(g, M, 1),
                                   False, None)
    ind = induced_quotient_module(E.pi, E.kernel, check=False)
    homs = equivariant_hom(ind.module, M)
    h1f = free_h1_dim(E.pi, M)
    h1g = cohomology_dim(g, M, 1)
    if span_check is None:
        span_check = M.is_trivial
    equal = None
    if span_check:
        phi = connecting_cocycle(E, ind)
        H = cohomology(g, M, 2)
        N = ind.module
        classes = []
        npairs = comb(g.dim, 2)
        for h in homs.matrices():
            w: dict = {}
            for t in range(npairs):
                val = {a - t * N.dim: x for a, x in phi.items() if t * N.dim <= a < (t + 1) * N.dim}
                for b, x in h.apply(val).items():
                    w[t * M.dim + b] = x
            if not H.Z.contains_vector(w):
                equal = False
                break
            classes.append(w)
        if equal is None:
            equal = H.chart.subspace(classes) == Fr.subspace
    return ExactSequenceReport(r, Fr.dim, homs.dim, h1f, h1g, span_check, equal)


@dataclass
class B2Formulas:
    p: int
    fp_dim: int
    b2_free: int
    correction: int
    b2_direct: int
    fp_direct: int

    @property
    def b2(self) -> int:
        return self.fp_dim + self.b2_free - self.correction

    @property
    def consistent(self) -> bool:
        return self.b2 == self.b2_direct and self.fp_dim == self.fp_direct


def bracket_with_inclusion(E: FreeExtension) -> tuple[FreeNilpotent, Subspace]:
    """``[i(n), f_{n,p+1}]`` inside ``f_{n,p+1}``."""
    f = E.f
    f1 = FreeNilpotent(f.n, f.p + 1, f.F)
    inc = canonical_inclusion(f, f1)
    iN = E.kernel.image(inc)
    return f1, product_subspace(f1, iN, f1.full())


def b2_formulas(g: LieAlgebra) -> B2Formulas:
    p = nilpotency_class(g)
    E = build_free_extension(g, p)
    fp = E.f_n_quotient_dim()
    f1, brk = bracket_with_inclusion(E)
    top = f1.power(p + 1)
    corr = brk.intersect(top).dim
    b2 = betti(g, 2)[2]
    fp_direct = filtered_h2(g, trivial_module(g), p).dim
    return B2Formulas(p, fp, witt_dim(E.f.n, p + 1), corr, b2, fp_direct)


@dataclass
class CriterionVerdict:
    admits_class_p_plus_1: bool
    lhs: int
    rhs: int
    direct: bool

    @property
    def consistent(self) -> bool:
        return self.admits_class_p_plus_1 == self.direct


def central_extension_criterion(g: LieAlgebra) -> CriterionVerdict:
    """Class ``p + 1`` central extensions exist iff ``|n/[f, n]| < b_2``."""
    p = nilpotency_class(g)
    E = build_free_extension(g, p)
    lhs = E.f_n_quotient_dim()
    rhs = betti(g, 2)[2]
    Fp = filtered_h2(g, trivial_module(g), p)
    direct = Fp.dim < Fp.cohomology.dim
    return CriterionVerdict(lhs < rhs, lhs, rhs, direct)


@dataclass
class BettiBounds:
    m: int
    type: tuple
    depth: int
    b2: int
    c: int
    C: int
    equality_hypothesis: bool
    upper_refined: int | None
    lower_refined: int | None
    fp_dim: int
    extra: dict = field(default_factory=dict)

    @property
    def verdicts(self) -> dict:
        out = {"c<=b2": self.c <= self.b2, "b2<=C": self.b2 <= self.C}
        if self.equality_hypothesis:
            out["Fp=c"] = self.fp_dim == self.c
        if self.upper_refined is not None:
            out["b2<=upper"] = self.b2 <= self.upper_refined
        if self.lower_refined is not None:
            out["lower<=b2"] = self.lower_refined <= self.b2
        if self.extra.get("b1_two") is not None:
            out["b1=2 => b2<=m-1"] = self.extra["b1_two"]
        return out

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    @property
    def interval(self) -> tuple[int, int]:
        lo = self.lower_refined if self.lower_refined is not None else self.c
        hi = self.upper_refined if self.upper_refined is not None else self.C
        return lo, hi


def betti_bounds(g: LieAlgebra) -> BettiBounds:
    """Lower and upper bounds for ``b_2`` from the type and depth of ``g``.

    A zero kernel (``g`` free nilpotent, or abelian) is given depth ``p``;
    every estimate is then an equality.
    """
    m = g.dim
    p = nilpotency_class(g)
    ty = type_of(g)
    n1 = ty[0]
    E = build_free_extension(g, p)
    d = E.depth if E.depth is not None else p
    n_d = ty[d - 1]
    c = witt_dim(n1, d) - n_d
    C = comb(n1, 2) + (m - n1) * (n1 - 1)
    b2 = betti(g, 2)[2]
    fp = E.f_n_quotient_dim()
    f, N = E.f, E.kernel
    fn = product_subspace(f, f.full(), N)
    equality = fn == N.intersect(f.power(d + 1))
    n_p = ty[p - 1]
    b2_fp = witt_dim(n1, p + 1)
    b2_fp1 = witt_dim(n1, p)
    upper = min(c + b2_fp - b2_fp1 + n_p, C) if equality else None
    lower = c + max(0, b2_fp - n1 * b2_fp1 + n1 * n_p) if d == p else None
    extra = {}
    if n1 == 2:
        extra["b1_two"] = b2 <= m - 1
    return BettiBounds(m, ty, d, b2, c, C, equality, upper, lower, fp, extra)


def two_step_closed_forms(g: LieAlgebra) -> dict:
    """``|F_2 H^2(g, k)|`` and ``|F_2 H^2(g, g)|`` for 2-step ``g``, formula and direct."""
    if nilpotency_class(g) != 2:
        raise ValueError("closed forms need a 2-step nilpotent algebra")
    n = type_of(g)[0]
    m = g.dim
    z = center(g).dim
    der = derivation_algebra_dim(g)
    trivial_formula = comb(n, 2) + n - m
    adjoint_formula = comb(n + 1, 2) * z - n * m - m * z + der
    return {
        "trivial": (trivial_formula, filtered_h2(g, trivial_module(g), 2).dim),
        "adjoint": (adjoint_formula, filtered_h2(g, adjoint_module(g), 2).dim),
    }


def length(f: FreeNilpotent, X: dict) -> int:
    """Half the rank of the alternating matrix of a degree-2 element."""
    if not X:
        raise ValueError("X must be nonzero")
    deg2 = f.degree_range(2)
    if any(i not in deg2 for i in X):
        raise ValueError("X must lie in the degree-2 component")
    rows = [dict() for _ in range(f.n)]
    for i, x in X.items():
        w = f.words[i]
        a, b = f.words[w.left].gen, f.words[w.right].gen
        rows[a][b] = x
        rows[b][a] = f.F.red(-x)
    return Matrix(f.F, f.n, f.n, rows).rank() // 2


def equivalence_automorphism(E1: FreeExtension, E2: FreeExtension) -> AlgebraHom:
    """``theta`` in ``Aut(f)`` with ``pi_1 = pi_2 o theta``."""
    f1, f2 = E1.f, E2.f
    if (f1.n, f1.p) != (f2.n, f2.p) or E1.g is not E2.g:
        raise ValueError("extensions must share the algebra, generator count and class")
    targets = [E1.pi.image_of_basis(i) for i in range(f1.n)]
    sols = solve_many(E2.pi.matrix, targets)
    if any(s is None for s in sols):
        raise ValueError("pi_2 is not surjective")
    theta = f2.hom_to(f2, sols, check=False)
    theta = AlgebraHom(f1, f2, theta.matrix, check=False)
    if theta.matrix.rank() != f1.dim:
        raise ValueError("theta is not invertible")
    if E2.pi.matrix @ theta.matrix != E1.pi.matrix:
        raise ValueError("pi_1 != pi_2 o theta")
    return theta


@dataclass
class CentralQuotientReport:
    b1_g: int
    b1_h: int
    b2_g: int
    b2_h: int
    top: int
    cokernel: int

    @property
    def ok(self) -> bool:
        return self.b1_g == self.b1_h and self.b2_g == self.b2_h - self.top + self.cokernel


def central_quotient_betti_identity(g: LieAlgebra) -> CentralQuotientReport:
    """``b_2(g) = b_2(g/g^p) - |g^p| + dim coker(H^2(g/g^p) -> H^2(g))``."""
    p = nilpotency_class(g)
    if p < 2:
        raise ValueError("needs class at least 2")
    top = lower_central_series(g)[p - 1]
    h, proj = g.quotient(top, name=f"{g.name}/top")
    kh = trivial_module(h)
    infl = induced_map_h2(proj, kh, method="generic")
    bg = betti(g, 2)
    bh = betti(h, 2)
    return CentralQuotientReport(bg[1], bh[1], bg[2], bh[2], top.dim, infl.cokernel_dim)
