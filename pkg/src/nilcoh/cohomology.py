"""The Chevalley-Eilenberg complex, its cohomology, and the filtration on H^2.

A ``k``-cochain is stored as one vector of length ``C(m, k) * dim M``: the
coordinate ``s * dim M + a`` is the ``a``-th component of the value on
``e_S``, where ``S`` is the ``s``-th ``k``-subset in lexicographic order.
The differential is

    d w(x_0, ..., x_k) = sum_a (-1)^a x_a . w(..., x_a omitted, ...)
                       + sum_{a<b} (-1)^(a+b) w([x_a, x_b], ..., omitted ..., ...)

with indices counted from zero, so that ``(d m)(x) = x . m`` in degree 0.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import combinations
from math import comb

from .free import FreeNilpotent, dim_cap, ResourceCapExceeded
from .lie import AlgebraHom, LieAlgebra, center, lower_central_series, weights
from .linalg import (
    Echelon,
    Matrix,
    QuotientChart,
    Subspace,
    adapted_basis,
    vec_axpy,
)
from .modules import GModule, ascending_filtration, trivial_module


class NotACocycle(ValueError):
    pass


class CochainSpace:
    def __init__(self, g: LieAlgebra, M: GModule, k: int):
        if k < 0:
            raise ValueError(f"cochain degree {k} is negative")
        self.algebra, self.module, self.degree = g, M, k
        self.subsets = list(combinations(range(g.dim), k))
        self.index = {S: i for i, S in enumerate(self.subsets)}
        self.dim = len(self.subsets) * M.dim

    def coord(self, S: tuple, a: int) -> int:
        return self.index[S] * self.module.dim + a

    def value(self, w: dict, S: tuple) -> dict:
        """Component vector ``w(e_S)`` in the module."""
        d = self.module.dim
        base = self.index[S] * d
        return {c - base: x for c, x in w.items() if base <= c < base + d}


def _check_size(n: int):
    if n > 50 * dim_cap():
        raise ResourceCapExceeded(f"cochain space of dimension {n} exceeds the configured cap")


def differential(g: LieAlgebra, M: GModule, k: int) -> Matrix:
    """Matrix of ``d^k : C^k -> C^{k+1}``."""
    if M.algebra is not g:
        raise ValueError("module is over a different algebra")
    key = ("d", k)
    if key in M._cache:
        return M._cache[key]
    F = g.F
    m, dM = g.dim, M.dim
    src = CochainSpace(g, M, k)
    if k >= m:
        d = Matrix.zeros(F, 0, src.dim)
        M._cache[key] = d
        return d
    tgt = CochainSpace(g, M, k + 1)
    _check_size(src.dim + tgt.dim)
    acts = [M.action[i] for i in range(m)]
    trivial = M.is_trivial
    rows = [dict() for _ in range(tgt.dim)]
    for T in tgt.subsets:
        base = tgt.index[T] * dM
        # action term
        if not trivial:
            for a, t in enumerate(T):
                rest = T[:a] + T[a + 1:]
                sb = src.index[rest] * dM
                sign = 1 if a % 2 == 0 else -1
                for b, row in enumerate(acts[t].rows):
                    out = rows[base + b]
                    for c, x in row.items():
                        vec_axpy(F, out, {sb + c: x}, sign)
        # bracket term
        for a in range(len(T)):
            for b in range(a + 1, len(T)):
                br = g.bracket_basis(T[a], T[b])
                if not br:
                    continue
                rest = T[:a] + T[a + 1:b] + T[b + 1:]
                sign0 = 1 if (a + b) % 2 == 0 else -1
                for c, x in br.items():
                    pos = bisect_left(rest, c)
                    if pos < len(rest) and rest[pos] == c:
                        continue
                    S = rest[:pos] + (c,) + rest[pos:]
                    s = sign0 if pos % 2 == 0 else -sign0
                    sb = src.index[S] * dM
                    for e in range(dM):
                        vec_axpy(F, rows[base + e], {sb + e: x}, s)
    d = Matrix(F, tgt.dim, src.dim, rows)
    M._cache[key] = d
    return d


class CohomologyResult:
    """``H^k = Z^k / B^k`` with a canonical chart of coordinates."""

    def __init__(self, degree: int, Z: Subspace, B: Subspace):
        self.degree = degree
        self.Z, self.B = Z, B
        self.chart = QuotientChart(Z, B)

    @property
    def dim(self) -> int:
        return self.chart.dim

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.Z.dim, self.B.dim, self.dim

    @property
    def representatives(self) -> list[dict]:
        return self.chart.reps


def cocycles(g: LieAlgebra, M: GModule, k: int) -> Subspace:
    key = ("Z", k)
    if key not in M._cache:
        M._cache[key] = differential(g, M, k).nullspace()
    return M._cache[key]


def coboundaries(g: LieAlgebra, M: GModule, k: int) -> Subspace:
    key = ("B", k)
    if key not in M._cache:
        if k == 0:
            M._cache[key] = Subspace.zero(g.F, M.dim)
        else:
            M._cache[key] = differential(g, M, k - 1).column_space()
    return M._cache[key]


def cohomology(g: LieAlgebra, M: GModule, k: int) -> CohomologyResult:
    key = ("H", k)
    if key not in M._cache:
        M._cache[key] = CohomologyResult(k, cocycles(g, M, k), coboundaries(g, M, k))
    return M._cache[key]


def cohomology_dim(g: LieAlgebra, M: GModule, k: int) -> int:
    """``dim H^k`` from ranks only, without building a chart."""
    n = comb(g.dim, k) * M.dim
    r_out = differential(g, M, k).rank()
    r_in = differential(g, M, k - 1).rank() if k > 0 else 0
    return n - r_out - r_in


def betti(g: LieAlgebra, max_degree: int | None = None) -> tuple[int, ...]:
    top = g.dim if max_degree is None else min(max_degree, g.dim)
    k = trivial_module(g)
    ranks = [differential(g, k, i).rank() for i in range(top + 1)]
    out = []
    for i in range(top + 1):
        out.append(comb(g.dim, i) - ranks[i] - (ranks[i - 1] if i else 0))
    if max_degree is not None:
        out += [0] * (max_degree - top)
    return tuple(out)


def evaluate2(M: GModule, space: CochainSpace, w: dict, u: dict, v: dict) -> dict:
    """Value of a 2-cochain on ``u ^ v``."""
    F = M.F
    out: dict = {}
    for i, a in u.items():
        for j, b in v.items():
            if i == j:
                continue
            S, s = ((i, j), 1) if i < j else ((j, i), -1)
            val = space.value(w, S)
            if val:
                vec_axpy(F, out, val, s * a * b)
    return out


# --- the filtration ---------------------------------------------------------


def _small_det(F, mat):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return F.red(mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0])
    a = [list(r) for r in mat]
    det = F.one
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return F.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det = F.red(det * a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f = F.red(f * inv)
                for j in range(c, n):
                    a[r][j] = F.red(a[r][j] - f * a[c][j])
    return det


def filtered_cochains(g: LieAlgebra, M: GModule, k: int, r: int,
                      g_basis=None, m_basis=None) -> Subspace:
    """``F_r C^k``: cochains with ``f(b_1 ^ ... ^ b_k)`` in ``M_{r - w_1 - ... - w_k + 1}``.

    ``g_basis`` is a list of ``(vector, weight)`` adapted to the lower central
    series and ``m_basis`` a list of ``(vector, level)`` adapted to the
    ascending module filtration; both default to canonical choices.
    """
    key = ("FC", k, r)
    custom = g_basis is not None or m_basis is not None
    if not custom and key in M._cache:
        return M._cache[key]
    F = g.F
    space = CochainSpace(g, M, k)
    filt = ascending_filtration(M)
    gb = g_basis if g_basis is not None else weights(g)
    mb = m_basis if m_basis is not None else adapted_basis(F, filt.steps[1:])
    if len(gb) != g.dim or len(mb) != M.dim:
        raise ValueError("adapted bases have the wrong size")
    dM = M.dim
    # row j of Qinv extracts the coefficient of the j-th adapted module vector
    Q = Matrix.from_columns(F, dM, [v for v, _ in mb])
    Qinv = Q.inverse() if dM else Q
    levels = [lvl for _, lvl in mb]
    eqs = []
    for T in combinations(range(g.dim), k):
        L = r - sum(gb[t][1] for t in T) + 1
        bad = [j for j in range(dM) if levels[j] > L]
        if not bad:
            continue
        cols = [gb[t][0] for t in T]
        support = sorted(set().union(*[set(c) for c in cols]))
        minors = {}
        for S in combinations(support, k):
            det = _small_det(F, [[c.get(s, F.zero) for c in cols] for s in S])
            if det:
                minors[space.index[S]] = det
        for j in bad:
            qrow = Qinv.rows[j]
            eq: dict = {}
            for s, det in minors.items():
                for a, x in qrow.items():
                    vec_axpy(F, eq, {s * dM + a: x}, det)
            if eq:
                eqs.append(eq)
    out = Subspace(F, space.dim, Echelon(F, space.dim, eqs).nullspace_vectors())
    if not custom:
        M._cache[key] = out
    return out


class FilteredH2:
    def __init__(self, r: int, subspace: Subspace, H: CohomologyResult):
        self.r = r
        self.subspace = subspace
        self.cohomology = H

    @property
    def dim(self) -> int:
        return self.subspace.dim


def filtered_h2(g: LieAlgebra, M: GModule, r: int, g_basis=None, m_basis=None) -> FilteredH2:
    """``F_r H^2``: classes with a representative in ``F_r C^2``.

    The subspace is given in the coordinates of ``cohomology(g, M, 2).chart``.
    """
    H = cohomology(g, M, 2)
    FC = filtered_cochains(g, M, 2, r, g_basis, m_basis)
    both = H.Z.intersect(FC)
    return FilteredH2(r, H.chart.subspace(both.rows), H)


# --- maps induced by homomorphisms ------------------------------------------


def pullback_cochain2(phi: AlgebraHom, M: GModule, Mh: GModule, w: dict) -> dict:
    """``w o (phi ^ phi)`` as a 2-cochain on ``phi.domain`` with values in ``Mh``."""
    g, h = phi.codomain, phi.domain
    sg = CochainSpace(g, M, 2)
    sh = CochainSpace(h, Mh, 2)
    out: dict = {}
    for S in sh.subsets:
        val = evaluate2(M, sg, w, phi.image_of_basis(S[0]), phi.image_of_basis(S[1]))
        base = sh.index[S] * Mh.dim
        for a, x in val.items():
            out[base + a] = x
    return out


class InducedMap:
    """The map ``H^2(g, M) -> H^2(h, M)`` induced by ``phi : h -> g``."""

    def __init__(self, phi, M, Mh, kernel: Subspace, image_rank: int | None):
        self.phi, self.module, self.pulled = phi, M, Mh
        self.kernel = kernel
        self._image_rank = image_rank

    @property
    def kernel_dim(self) -> int:
        return self.kernel.dim

    @property
    def image_rank(self) -> int:
        if self._image_rank is None:
            self._image_rank = cohomology(self.phi.codomain, self.module, 2).dim - self.kernel.dim
        return self._image_rank

    @property
    def cokernel_dim(self) -> int:
        Hh = cohomology(self.phi.domain, self.pulled, 2)
        return Hh.dim - self.image_rank


def _pulled_module(phi: AlgebraHom, M: GModule) -> GModule:
    from .modules import pullback_module
    key = ("pulled", id(phi))
    hit = M._cache.get(key)
    if hit is not None and hit[0] is phi:
        return hit[1]
    Mh = pullback_module(phi, M)
    M._cache[key] = (phi, Mh)
    return Mh


def induced_map_h2(phi: AlgebraHom, M: GModule, method: str = "auto") -> InducedMap:
    """Kernel (in the chart of ``H^2(g, M)``) and cokernel of the induced map.

    For a free nilpotent domain the kernel is found by solving for a
    primitive on generators, which avoids the full complex of the domain.
    """
    g, h = phi.codomain, phi.domain
    if M.algebra is not g:
        raise ValueError("module is over a different algebra than the codomain")
    Mh = _pulled_module(phi, M)
    if method == "auto":
        method = "free" if isinstance(h, FreeNilpotent) else "generic"
    Hg = cohomology(g, M, 2)
    if method == "free":
        if not isinstance(h, FreeNilpotent):
            raise ValueError("the free method needs a free nilpotent domain")
        kern = _free_coboundary_kernel(phi, M, Hg.representatives)
        return InducedMap(phi, M, Mh, Subspace(g.F, Hg.dim, kern), None)
    Hh = cohomology(h, Mh, 2)
    pulled = [Hh.B.reduce(pullback_cochain2(phi, M, Mh, R)) for R in Hg.representatives]
    # combinations of classes whose pulled-back representatives lie in B^2(h)
    kern = Matrix.from_columns(g.F, Hh.B.ambient_dim, pulled).nullspace()
    rank = len(pulled) - kern.dim
    return InducedMap(phi, M, Mh, kern, rank)


def _free_primitive_system(phi: AlgebraHom, M: GModule, classes: list[dict]):
    """Linear system whose solutions are ``(c, mu)`` with ``d mu = phi^*(sum c_k R_k)``.

    Unknowns: ``c_k`` (columns ``0..len(classes)-1``) followed by the values
    of ``mu`` on the generators.  ``mu`` is extended to Hall words by
    ``mu([u, v]) = u.mu(v) - v.mu(u) - w(u, v)``, which makes the equation hold
    on every Hall pair; a cocycle on a free nilpotent algebra that vanishes on
    every pair ``(generator, basis word)`` vanishes identically, so those pairs
    are the remaining equations.
    """
    f: FreeNilpotent = phi.domain
    g = phi.codomain
    F = g.F
    dM = M.dim
    nc = len(classes)
    nunk = nc + f.n * dM
    sg = CochainSpace(g, M, 2)
    images = [phi.image_of_basis(i) for i in range(f.dim)]
    rho = [M.rho(x) if x else None for x in images]

    def act(i, vecs):
        # rho(word_i) applied to a module vector of linear forms
        R = rho[i]
        if R is None:
            return [{} for _ in range(dM)]
        out = []
        for row in R.rows:
            acc: dict = {}
            for c, x in row.items():
                if vecs[c]:
                    vec_axpy(F, acc, vecs[c], x)
            out.append(acc)
        return out

    def omega(i, j):
        # pulled-back class combination on (word_i, word_j), as linear forms in c
        out = [dict() for _ in range(dM)]
        if not images[i] or not images[j]:
            return out
        for t, R in enumerate(classes):
            val = evaluate2(M, sg, R, images[i], images[j])
            for a, x in val.items():
                out[a][t] = x
        return out

    mu: list[list[dict]] = []
    for w in f.words:
        if w.is_generator:
            mu.append([{nc + w.gen * dM + a: F.one} for a in range(dM)])
            continue
        u, v = w.left, w.right
        first = act(u, mu[v])
        second = act(v, mu[u])
        om = omega(u, v)
        vals = []
        for a in range(dM):
            acc = dict(first[a])
            vec_axpy(F, acc, second[a], -1)
            vec_axpy(F, acc, om[a], -1)
            vals.append(acc)
        mu.append(vals)

    eqs = Echelon(F, nunk)
    for i in range(f.n):
        for j in range(f.dim):
            if j == i:
                continue
            # d mu (x_i, w_j) - w(x_i, w_j)
            first = act(i, mu[j])
            second = act(j, mu[i])
            om = omega(i, j)
            br = f.bracket_basis(i, j)
            for a in range(dM):
                acc = dict(first[a])
                vec_axpy(F, acc, second[a], -1)
                for k, x in br.items():
                    if mu[k][a]:
                        vec_axpy(F, acc, mu[k][a], -x)
                vec_axpy(F, acc, om[a], -1)
                if acc:
                    eqs.add(acc)
    return eqs, nc, nunk


def _free_coboundary_kernel(phi: AlgebraHom, M: GModule, classes: list[dict]) -> list[dict]:
    eqs, nc, nunk = _free_primitive_system(phi, M, classes)
    null = Subspace(phi.codomain.F, nunk, eqs.nullspace_vectors())
    return null.project(list(range(nc))).rows


def free_h1_dim(phi: AlgebraHom, M: GModule) -> int:
    """``dim H^1(f, M)`` for ``M`` pulled back to a free nilpotent ``f``.

    ``Z^1`` consists of the maps determined by their values on generators that
    satisfy the cocycle equation on (generator, word) pairs; ``B^1`` has
    dimension ``dim M - dim M^f``, and ``M^f = M^g`` since ``phi`` is onto.
    """
    eqs, nc, nunk = _free_primitive_system(phi, M, [])
    z1 = nunk - eqs.rank
    pulled = _pulled_module(phi, M)
    return z1 - (M.dim - pulled.invariants().dim)


# --- a vanishing property of 2-cocycles -------------------------------------


def cocycles_vanish_on_center_derived(g: LieAlgebra) -> bool:
    """Every 2-cocycle with trivial coefficients vanishes on ``Z(g) ^ [g, g]``."""
    k = trivial_module(g)
    Z2 = cocycles(g, k, 2)
    series = lower_central_series(g)
    derived = series[1] if len(series) > 1 else Subspace.zero(g.F, g.dim)
    space = CochainSpace(g, k, 2)
    for w in Z2.rows:
        for z in center(g).rows:
            for y in derived.rows:
                if evaluate2(k, space, w, z, y):
                    return False
    return True
