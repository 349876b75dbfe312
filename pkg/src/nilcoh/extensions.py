"""Abelian extensions and 2-cocycles.

An extension ``0 -> M -> e -> g -> 0`` built from a cocycle ``w`` lives on
``M + g`` with the module basis first: index ``a < dim M`` is ``m_a`` and
index ``dim M + i`` is ``e_i``.  The bracket is

    [(m, x), (n, y)] = (x.n - y.m + w(x ^ y), [x, y]).
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import CochainSpace, NotACocycle, coboundaries, differential
from .lie import AlgebraHom, LieAlgebra, lower_central_series, nilpotency_class, weights
from .linalg import Matrix, Subspace, solve_many, vec_axpy
from .modules import GModule, ascending_filtration, pullback_module


@dataclass
class AbelianExtension:
    total: LieAlgebra
    inclusion: Matrix          # total.dim x module.dim
    projection: AlgebraHom     # total -> algebra
    module: GModule

    @property
    def algebra(self) -> LieAlgebra:
        return self.module.algebra

    def verify(self) -> None:
        """Exactness, abelian kernel and the induced action."""
        e, g, M = self.total, self.algebra, self.module
        F = e.F
        if self.inclusion.rank() != M.dim:
            raise ValueError("inclusion is not injective")
        if self.projection.matrix @ self.inclusion != Matrix.zeros(F, g.dim, M.dim):
            raise ValueError("projection does not kill the module")
        if self.projection.matrix.rank() != g.dim or e.dim != g.dim + M.dim:
            raise ValueError("sequence is not exact")
        cols = self.inclusion.columns()
        for a in range(M.dim):
            for b in range(a + 1, M.dim):
                if e.bracket_sparse(cols[a], cols[b]):
                    raise ValueError("kernel is not abelian")
        lifts = solve_many(self.projection.matrix, [{i: F.one} for i in range(g.dim)])
        for i, s in enumerate(lifts):
            for a in range(M.dim):
                lhs = e.bracket_sparse(s, cols[a])
                rhs = self.inclusion.apply(M.action[i].apply({a: F.one}))
                if lhs != rhs:
                    raise ValueError("induced action does not match the module")


def extension_from_cocycle(g: LieAlgebra, M: GModule, w: dict, check: bool = True) -> AbelianExtension:
    F = g.F
    if check and differential(g, M, 2).apply(w):
        raise NotACocycle("d w != 0")
    dM = M.dim
    space = CochainSpace(g, M, 2)
    br: dict = {}
    for j in range(g.dim):
        cols = M.action[j].columns()
        for a in range(dM):
            # [m_a, e_j] = -e_j . m_a
            v = {b: F.red(-x) for b, x in cols[a].items()}
            if v:
                br[(a, dM + j)] = v
    for (i, j) in space.subsets:
        v = {a: x for a, x in space.value(w, (i, j)).items()}
        for k, x in g.bracket_basis(i, j).items():
            v[dM + k] = x
        if v:
            br[(dM + i, dM + j)] = v
    labels = [f"m{a + 1}" for a in range(dM)] + list(g.labels)
    e = LieAlgebra(F, dM + g.dim, br, labels, name=f"ext({g.name})", check=check)
    inc = Matrix.from_columns(F, e.dim, [{a: F.one} for a in range(dM)])
    proj = Matrix.from_columns(F, g.dim, [{} for _ in range(dM)] + [{i: F.one} for i in range(g.dim)])
    return AbelianExtension(e, inc, AlgebraHom(e, g, proj, check=False), M)


def adapted_section(E: AbelianExtension) -> list[dict]:
    """Images ``s(e_i)`` of a linear section with ``s(g^i)`` inside ``e^i``."""
    g, e = E.algebra, E.total
    F = g.F
    pi = E.projection.matrix
    series_e = lower_central_series(e)
    basis = weights(g)
    lifted = []
    for b, w in basis:
        Ew = series_e[w - 1] if w - 1 < len(series_e) else Subspace.zero(F, e.dim)
        rows = Ew.rows
        restricted = Matrix.from_columns(F, g.dim, [pi.apply(r) for r in rows])
        sol = solve_many(restricted, [b])[0]
        if sol is None:
            raise ValueError("projection does not map e^i onto g^i")
        x: dict = {}
        for t, c in sol.items():
            vec_axpy(F, x, rows[t], c)
        lifted.append(x)
    # change from the adapted basis back to the standard basis of g
    P = Matrix.from_columns(F, g.dim, [b for b, _ in basis])
    Pinv = P.inverse()
    out = []
    for i in range(g.dim):
        x: dict = {}
        for t, c in Pinv.columns()[i].items():
            vec_axpy(F, x, lifted[t], c)
        out.append(x)
    return out


def cocycle_from_extension(E: AbelianExtension, section=None) -> dict:
    """``f(x ^ y) = [s x, s y] - s[x, y]`` for an adapted section ``s``."""
    g, e, M = E.algebra, E.total, E.module
    F = g.F
    s = section if section is not None else adapted_section(E)
    space = CochainSpace(g, M, 2)
    diffs = []
    for (i, j) in space.subsets:
        v = e.bracket_sparse(s[i], s[j])
        for k, x in g.bracket_basis(i, j).items():
            vec_axpy(F, v, s[k], -x)
        diffs.append(v)
    sols = solve_many(E.inclusion, diffs)
    out: dict = {}
    for t, sol in enumerate(sols):
        if sol is None:
            raise ValueError("section defect does not lie in the module")
        for a, x in sol.items():
            out[t * M.dim + a] = x
    return out


def is_coboundary(g: LieAlgebra, M: GModule, w: dict) -> bool:
    return coboundaries(g, M, 2).contains_vector(w)


def extensions_equivalent(E1: AbelianExtension, E2: AbelianExtension) -> bool:
    if E1.algebra is not E2.algebra or E1.module.dim != E2.module.dim:
        raise ValueError("extensions of different algebras or modules")
    F = E1.algebra.F
    diff = cocycle_from_extension(E1)
    vec_axpy(F, diff, cocycle_from_extension(E2), -1)
    return is_coboundary(E1.algebra, E1.module, diff)


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str = "") -> LieAlgebra:
    br = dict(a.sc)
    n = a.dim
    for (i, j), v in b.sc.items():
        br[(n + i, n + j)] = {n + k: x for k, x in v.items()}
    return LieAlgebra(a.F, a.dim + b.dim, br, list(a.labels) + list(b.labels), name=name, check=False)


def pullback(E: AbelianExtension, p: AlgebraHom) -> tuple[AbelianExtension, AlgebraHom]:
    """The extension ``{(x, y) in e + q : pi(x) = p(y)}`` of ``q`` and the map to ``e``.

    Its basis is ``(m_a, 0)`` followed by ``(s p(e_j), e_j)`` with ``s`` a lift
    through ``pi``, so the module coordinates agree with those of ``E``.
    """
    e, g, M = E.total, E.algebra, E.module
    if p.codomain is not g:
        raise ValueError("p must map into the base of the extension")
    q = p.domain
    F = e.F
    dM = M.dim
    inc_cols = E.inclusion.columns()
    lifts = solve_many(E.projection.matrix, [p.image_of_basis(j) for j in range(q.dim)])
    # solve for module coordinates of kernel elements of e
    inc_ech = Matrix.from_columns(F, e.dim, inc_cols)

    def coords(x: dict, y: dict) -> dict:
        # (x, y) with pi(x) = p(y): subtract the lifts, rest is in the module
        rest = dict(x)
        out = {}
        for j, c in y.items():
            vec_axpy(F, rest, lifts[j], -c)
            out[dM + j] = c
        m = solve_many(inc_ech, [rest])[0]
        if m is None:
            raise ValueError("element is not in the fibre product")
        out.update(m)
        return out

    basis = [(c, {}) for c in inc_cols] + [(lifts[j], {j: F.one}) for j in range(q.dim)]
    br = {}
    for s in range(len(basis)):
        for t in range(s + 1, len(basis)):
            x = e.bracket_sparse(basis[s][0], basis[t][0])
            y = q.bracket_sparse(basis[s][1], basis[t][1])
            v = coords(x, y)
            if v:
                br[(s, t)] = v
    labels = [f"m{a + 1}" for a in range(dM)] + list(q.labels)
    total = LieAlgebra(F, dM + q.dim, br, labels, name=f"pullback({q.name})", check=False)
    inc = Matrix.from_columns(F, total.dim, [{a: F.one} for a in range(dM)])
    proj = Matrix.from_columns(F, q.dim, [{} for _ in range(dM)] + [{j: F.one} for j in range(q.dim)])
    Mq = pullback_module(p, M)
    out = AbelianExtension(total, inc, AlgebraHom(total, q, proj, check=False), Mq)
    psi = Matrix.from_columns(F, e.dim, [b[0] for b in basis])
    return out, AlgebraHom(total, e, psi, check=True)


@dataclass
class ExtensionClass:
    r: int
    p: int
    q: int
    split: bool
    sandwich: bool
    split_rule: bool

    @property
    def ok(self) -> bool:
        return self.sandwich and self.split_rule


def class_of_extension(E: AbelianExtension) -> ExtensionClass:
    """Nilpotency class ``r`` of the total algebra, with ``p <= r <= p + q`` checked."""
    g, M = E.algebra, E.module
    r = nilpotency_class(E.total)
    p = nilpotency_class(g)
    q = ascending_filtration(M).q
    split = is_coboundary(g, M, cocycle_from_extension(E))
    sandwich = p <= r <= p + q
    split_rule = (r == max(p, q)) if split else True
    return ExtensionClass(r, p, q, split, sandwich, split_rule)
