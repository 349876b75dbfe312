"""Modules over Lie algebras, used as coefficients for cohomology."""

from __future__ import annotations

from itertools import combinations

from .lie import AlgebraHom, LieAlgebra, NotNilpotent, is_ideal, product_subspace
from .linalg import Echelon, Matrix, QuotientChart, Subspace, solve_many, vec_axpy


class NotARepresentation(ValueError):
    pass


class GModule:
    """A ``g``-module: one ``dim x dim`` matrix ``rho(e_i)`` per basis vector of ``g``."""

    def __init__(self, algebra: LieAlgebra, dim: int, action: list[Matrix], name: str = "",
                 check: bool = True):
        if len(action) != algebra.dim:
            raise ValueError("need one action matrix per basis vector of the algebra")
        for a in action:
            if (a.nrows, a.ncols) != (dim, dim) or a.F != algebra.F:
                raise ValueError("action matrices must be square of the module dimension")
        self.algebra = algebra
        self.F = algebra.F
        self.dim = dim
        self.action = action
        self.name = name
        self._cache = {}
        if check:
            self.verify()

    def __repr__(self):
        return f"GModule({self.name or '?'}, dim={self.dim}, over {self.algebra.name or '?'})"

    @property
    def is_trivial(self) -> bool:
        return all(a.is_zero() for a in self.action)

    def rho(self, x: dict) -> Matrix:
        """Action matrix of an arbitrary element ``x`` of the algebra."""
        out = Matrix.zeros(self.F, self.dim, self.dim)
        for i, a in x.items():
            out = out + self.action[i].scale(a)
        return out

    def act(self, x: dict, m: dict) -> dict:
        out: dict = {}
        for i, a in x.items():
            vec_axpy(self.F, out, self.action[i].apply(m), a)
        return out

    def verify(self, pairs=None) -> None:
        g = self.algebra
        it = pairs if pairs is not None else combinations(range(g.dim), 2)
        for i, j in it:
            lhs = self.rho(g.bracket_basis(i, j))
            a, b = self.action[i], self.action[j]
            if lhs != a @ b - b @ a:
                raise NotARepresentation(f"rho([e{i},e{j}]) != [rho(e{i}), rho(e{j})]")

    def invariants(self) -> Subspace:
        rows = [r for a in self.action for r in a.rows if r]
        return Subspace(self.F, self.dim, Echelon(self.F, self.dim, rows).nullspace_vectors())


def trivial_module(g: LieAlgebra, dim: int = 1) -> GModule:
    zero = Matrix.zeros(g.F, dim, dim)
    return GModule(g, dim, [zero] * g.dim, name=f"k^{dim}" if dim != 1 else "k", check=False)


def adjoint_module(g: LieAlgebra) -> GModule:
    return GModule(g, g.dim, [g.ad_basis(i) for i in range(g.dim)], name="adjoint", check=False)


def pullback_module(phi: AlgebraHom, M: GModule, check: bool = False) -> GModule:
    """``M`` viewed as a module over ``phi.domain`` through ``phi``."""
    if M.algebra is not phi.codomain:
        raise ValueError("module lives over a different algebra than the codomain")
    action = [M.rho(phi.image_of_basis(i)) for i in range(phi.domain.dim)]
    return GModule(phi.domain, M.dim, action, name=M.name, check=check)


class ModuleFiltration:
    """Ascending filtration ``0 = M_0 < M_1 < ... < M_q = M``."""

    def __init__(self, module: GModule, steps: list[Subspace]):
        self.module = module
        self.steps = steps

    @property
    def q(self) -> int:
        return len(self.steps) - 1

    def __getitem__(self, i: int) -> Subspace:
        if i <= 0:
            return self.steps[0]
        return self.steps[min(i, self.q)]

    def descending(self, j: int) -> Subspace:
        """``M^j = M_{q-j}``."""
        return self[self.q - j]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(S.dim for S in self.steps[1:])


def ascending_filtration(M: GModule) -> ModuleFiltration:
    if "filtration" in M._cache:
        return M._cache["filtration"]
    F = M.F
    steps = [Subspace.zero(F, M.dim)]
    while steps[-1].dim < M.dim:
        prev = steps[-1]
        ann = prev.annihilator().rows
        eqs = [M.action[i].rapply(f) for i in range(len(M.action)) for f in ann]
        nxt = Subspace(F, M.dim, Echelon(F, M.dim, eqs).nullspace_vectors())
        if nxt.dim == prev.dim:
            raise NotNilpotent("module filtration stabilizes below the whole module", nxt)
        steps.append(nxt)
    if M.dim == 0:
        steps.append(steps[0])
    filt = ModuleFiltration(M, steps)
    M._cache["filtration"] = filt
    return filt


def nilpotency_length(M: GModule) -> int:
    return ascending_filtration(M).q


class EquivariantHoms:
    """``Hom_g(A, B)``; each basis element is a ``B.dim x A.dim`` matrix."""

    def __init__(self, A: GModule, B: GModule, space: Subspace):
        self.A, self.B, self.space = A, B, space

    @property
    def dim(self) -> int:
        return self.space.dim

    def matrices(self) -> list[Matrix]:
        a = self.A.dim
        out = []
        for v in self.space.rows:
            rows = [dict() for _ in range(self.B.dim)]
            for c, x in v.items():
                rows[c // a][c % a] = x
            out.append(Matrix(self.A.F, self.B.dim, a, rows))
        return out


def equivariant_hom(A: GModule, B: GModule, generators=None) -> EquivariantHoms:
    """Solve ``phi rho_A(x) = rho_B(x) phi``; unknown ``phi[b][a]`` sits at ``b * |A| + a``.

    ``generators`` may list basis indices generating the algebra; intertwining
    those suffices since the condition is closed under brackets.
    """
    if A.algebra is not B.algebra:
        raise ValueError("modules over different algebras")
    F = A.F
    na, nb = A.dim, B.dim
    idx = range(A.algebra.dim) if generators is None else generators
    ech = Echelon(F, na * nb)
    for i in idx:
        ra, rb = A.action[i], B.action[i]
        ra_cols = ra.columns()
        for b in range(nb):
            rb_row = rb.rows[b]
            for a in range(na):
                # (phi ra)[b][a] - (rb phi)[b][a]
                eq: dict = {}
                for c, x in ra_cols[a].items():
                    vec_axpy(F, eq, {b * na + c: x}, 1)
                for c, x in rb_row.items():
                    vec_axpy(F, eq, {c * na + a: x}, -1)
                if eq:
                    ech.add(eq)
    space = Subspace(F, na * nb, ech.nullspace_vectors())
    return EquivariantHoms(A, B, space)


def equivariant_hom_dim(A: GModule, B: GModule) -> int:
    return equivariant_hom(A, B).dim


class InducedModule:
    """The ``g``-module ``N / [N, N]`` for an ideal ``N`` of ``f`` with ``f / N = g``.

    Coordinates come from ``chart``, a :class:`QuotientChart` of ``N`` modulo
    ``[N, N]``, so ``chart.coords`` maps elements of ``N`` to module vectors.
    """

    def __init__(self, module: GModule, chart: QuotientChart, lifts: list[dict]):
        self.module = module
        self.chart = chart
        self.lifts = lifts


def induced_quotient_module(pi: AlgebraHom, N: Subspace | None = None, check: bool = True) -> InducedModule:
    """The action of ``g = f / N`` on ``N / [N, N]`` induced by brackets in ``f``."""
    f, g = pi.domain, pi.codomain
    F = f.F
    if N is None:
        N = pi.kernel()
    if not is_ideal(f, N):
        raise ValueError("N is not an ideal")
    NN = product_subspace(f, N, N)
    chart = QuotientChart(N, NN)
    targets = [{i: F.one} for i in range(g.dim)]
    lifts = solve_many(pi.matrix, targets)
    if any(s is None for s in lifts):
        raise ValueError("projection is not surjective")
    if check:
        # brackets with N must land in [N, N]: independence of the lift
        for y in N.rows:
            for r in chart.reps:
                if not NN.contains_vector(f.bracket_sparse(y, r)):
                    raise ValueError("induced action is not well defined")
    action = []
    for s in lifts:
        cols = [chart.coords(f.bracket_sparse(s, r)) for r in chart.reps]
        action.append(Matrix.from_columns(F, chart.dim, cols))
    M = GModule(g, chart.dim, action, name="n/[n,n]", check=check)
    return InducedModule(M, chart, lifts)
