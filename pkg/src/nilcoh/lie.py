"""Lie algebras given by structure constants, and homomorphisms between them."""

from __future__ import annotations

from itertools import combinations

from .linalg import (
    Echelon,
    Field,
    FieldMismatch,
    Matrix,
    Subspace,
    dense,
    sparse,
    vec_add,
    vec_axpy,
)


class JacobiViolation(ValueError):
    """Raised when structure constants fail the Jacobi identity."""

    def __init__(self, triple, defect):
        self.triple = triple
        self.defect = defect
        shown = "[" + ", ".join(str(x) for x in defect) + "]"
        super().__init__(f"Jacobi identity fails on basis triple {triple}: defect {shown}")


class NotNilpotent(ValueError):
    def __init__(self, message, stable=None):
        super().__init__(message)
        self.stable = stable


class NotAHomomorphism(ValueError):
    pass


class LieAlgebra:
    """A finite-dimensional Lie algebra over an exact field.

    ``brackets`` maps ``(i, j)`` with ``i < j`` to ``{k: c}`` meaning
    ``[e_i, e_j] = sum_k c e_k``.  Pairs that are absent bracket to zero.
    """

    def __init__(self, F: Field, dim: int, brackets: dict, labels=None, name: str = "",
                 check: bool = True):
        self.F = F
        self.dim = dim
        self.name = name
        self.labels = list(labels) if labels is not None else [f"e{i + 1}" for i in range(dim)]
        if len(self.labels) != dim:
            raise ValueError("need one label per basis vector")
        sc = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket index pair ({i}, {j}) must satisfy 0 <= i < j < {dim}")
            row = {}
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket coefficient index {k} out of range")
                c = F(c)
                if c:
                    row[k] = c
            if row:
                sc[(i, j)] = row
        self.sc = sc
        # table[i][j] = [e_i, e_j] for i != j, both orders
        table = [dict() for _ in range(dim)]
        for (i, j), row in sc.items():
            table[i][j] = row
            table[j][i] = {k: F.red(-c) for k, c in row.items()}
        self._table = table
        self._cache = {}
        if check:
            bad = jacobi_defect(self)
            if bad is not None:
                raise JacobiViolation(*bad)

    def __repr__(self):
        return f"LieAlgebra({self.name or '?'}, dim={self.dim}, {self.F!r})"

    # elements are sparse dicts; the list-based helpers are for callers

    def basis_vector(self, i: int) -> dict:
        return {i: self.F.one}

    def bracket_basis(self, i: int, j: int) -> dict:
        return self._table[i].get(j, {})

    def bracket_sparse(self, u: dict, v: dict) -> dict:
        F = self.F
        out: dict = {}
        table = self._table
        for i, a in u.items():
            row = table[i]
            if not row:
                continue
            for j, b in v.items():
                t = row.get(j)
                if t:
                    ab = a * b
                    for k, c in t.items():
                        out[k] = out.get(k, 0) + ab * c
        res = {}
        for k, x in out.items():
            x = F.red(x)
            if x:
                res[k] = x
        return res

    def bracket(self, u, v) -> list:
        """Bracket of two coefficient lists."""
        if len(u) != self.dim or len(v) != self.dim:
            raise ValueError("element length does not match the algebra dimension")
        return dense(self.bracket_sparse(sparse(self.F, u), sparse(self.F, v)), self.dim, self.F)

    def ad(self, x: dict) -> Matrix:
        """Matrix of ``ad x`` acting on column vectors."""
        cols = [self.bracket_sparse(x, {j: self.F.one}) for j in range(self.dim)]
        return Matrix.from_columns(self.F, self.dim, cols)

    def ad_basis(self, i: int) -> Matrix:
        key = ("ad", i)
        if key not in self._cache:
            cols = [self._table[i].get(j, {}) for j in range(self.dim)]
            self._cache[key] = Matrix.from_columns(self.F, self.dim, cols)
        return self._cache[key]

    def full(self) -> Subspace:
        return Subspace.full(self.F, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.F, self.dim)

    def is_abelian(self) -> bool:
        return not self.sc

    def quotient(self, ideal: Subspace, name: str = "") -> tuple["LieAlgebra", "AlgebraHom"]:
        """``g / ideal`` on the complement spanned by non-pivot basis vectors."""
        if not is_ideal(self, ideal):
            raise ValueError("subspace is not an ideal")
        F = self.F
        piv = set(ideal.pivots)
        keep = [i for i in range(self.dim) if i not in piv]
        pos = {c: t for t, c in enumerate(keep)}

        def down(v):
            w = ideal.reduce(v)
            return {pos[c]: a for c, a in w.items()}

        br = {}
        for a, b in combinations(range(len(keep)), 2):
            w = down(self.bracket_basis(keep[a], keep[b]))
            if w:
                br[(a, b)] = w
        q = LieAlgebra(F, len(keep), br, [self.labels[i] for i in keep], name=name, check=False)
        cols = [down({i: F.one}) for i in range(self.dim)]
        proj = AlgebraHom(self, q, Matrix.from_columns(F, q.dim, cols), check=False)
        return q, proj

    def subalgebra_from(self, S: Subspace, name: str = "") -> tuple["LieAlgebra", "AlgebraHom"]:
        """Lie algebra on the RREF basis of a subalgebra, with its inclusion."""
        rows = S.rows
        F = self.F
        m = Matrix.from_columns(F, self.dim, rows)
        piv = S.pivots
        br = {}
        for a, b in combinations(range(len(rows)), 2):
            w = self.bracket_sparse(rows[a], rows[b])
            if not S.contains_vector(w):
                raise ValueError("subspace is not closed under the bracket")
            coords = {t: w[c] for t, c in enumerate(piv) if c in w}
            if coords:
                br[(a, b)] = coords
        sub = LieAlgebra(F, len(rows), br, name=name, check=False)
        return sub, AlgebraHom(sub, self, m, check=False)


def jacobi_defect(g: LieAlgebra):
    """First basis triple ``i < j < k`` with nonzero Jacobi sum, or None."""
    F = g.F
    for i, j, k in combinations(range(g.dim), 3):
        s = g.bracket_sparse({i: F.one}, g.bracket_basis(j, k))
        s = vec_add(F, s, g.bracket_sparse({j: F.one}, g.bracket_basis(k, i)))
        s = vec_add(F, s, g.bracket_sparse({k: F.one}, g.bracket_basis(i, j)))
        if s:
            return (i, j, k), dense(s, g.dim, F)
    return None


def validate(g: LieAlgebra):
    """``None`` when the Jacobi identity holds, else ``(triple, defect)``."""
    return jacobi_defect(g)


def product_subspace(g: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of ``[a, b]`` over basis vectors of ``A`` and ``B``."""
    if A.ambient_dim != g.dim or B.ambient_dim != g.dim:
        raise ValueError("subspaces do not live in the algebra")
    ech = Echelon(g.F, g.dim)
    rb = B.rows
    for a in A.rows:
        for b in rb:
            w = g.bracket_sparse(a, b)
            if w:
                ech.add(w)
    return Subspace(g.F, g.dim, ech)


def is_ideal(g: LieAlgebra, S: Subspace) -> bool:
    for r in S.rows:
        for i in range(g.dim):
            if not S.contains_vector(g.bracket_sparse({i: g.F.one}, r)):
                return False
    return True


def lower_central_series(g: LieAlgebra) -> list[Subspace]:
    """``[g^1, g^2, ..., g^p]`` with ``g^p != 0`` and ``g^{p+1} = 0``.

    Raises :class:`NotNilpotent` when the series stabilizes at a nonzero term.
    """
    if "lcs" in g._cache:
        return g._cache["lcs"]
    full = g.full()
    series = [full]
    cur = full
    while True:
        nxt = product_subspace(g, cur, full)
        if nxt.dim == 0:
            break
        if nxt.dim == cur.dim:
            raise NotNilpotent(f"lower central series of {g.name or 'algebra'} stabilizes "
                               f"at dimension {cur.dim}", cur)
        series.append(nxt)
        cur = nxt
    if g.dim == 0:
        series = []
    g._cache["lcs"] = series
    return series


def nilpotency_class(g: LieAlgebra) -> int:
    return len(lower_central_series(g))


def type_of(g: LieAlgebra) -> tuple[int, ...]:
    dims = [S.dim for S in lower_central_series(g)] + [0]
    return tuple(dims[i] - dims[i + 1] for i in range(len(dims) - 1))


def weights(g: LieAlgebra) -> list[tuple[dict, int]]:
    """Basis adapted to the lower central series with weights.

    The weight of a vector is the largest ``i`` with the vector in ``g^i``.
    """
    series = lower_central_series(g)
    ech = Echelon(g.F, g.dim)
    out = []
    for w in range(len(series), 0, -1):
        for r in series[w - 1].rows:
            if ech.add(r):
                out.append((dict(r), w))
    return out


def center(g: LieAlgebra) -> Subspace:
    if "center" not in g._cache:
        rows = []
        for i in range(g.dim):
            rows.extend(r for r in g.ad_basis(i).rows if r)
        g._cache["center"] = Subspace(g.F, g.dim, Echelon(g.F, g.dim, rows).nullspace_vectors())
    return g._cache["center"]


def derivations(g: LieAlgebra) -> Subspace:
    """Derivation algebra as a subspace of ``gl(g)``.

    The unknown ``D[k][a]`` (coefficient of ``e_k`` in ``D e_a``) sits at
    column ``k * m + a``.
    """
    if "der" in g._cache:
        return g._cache["der"]
    F, m = g.F, g.dim
    rows = []
    for i, j in combinations(range(m), 2):
        cij = g.bracket_basis(i, j)
        # D[e_i,e_j] - [D e_i, e_j] - [e_i, D e_j] = 0, coefficient of e_l
        eq: dict[int, dict] = {}
        for t, c in cij.items():
            for l in range(m):
                vec_axpy(F, eq.setdefault(l, {}), {l * m + t: c}, 1)
        for k in range(m):
            for l, c in g.bracket_basis(k, j).items():
                vec_axpy(F, eq.setdefault(l, {}), {k * m + i: c}, -1)
            for l, c in g.bracket_basis(i, k).items():
                vec_axpy(F, eq.setdefault(l, {}), {k * m + j: c}, -1)
        rows.extend(r for r in eq.values() if r)
    D = Subspace(F, m * m, Echelon(F, m * m, rows).nullspace_vectors())
    g._cache["der"] = D
    return D


def derivation_algebra_dim(g: LieAlgebra) -> int:
    return derivations(g).dim


def inner_derivations_dim(g: LieAlgebra) -> int:
    return g.dim - center(g).dim


def h1_adjoint_dim(g: LieAlgebra) -> int:
    lower_central_series(g)
    return derivation_algebra_dim(g) - inner_derivations_dim(g)


class AlgebraHom:
    """A Lie algebra homomorphism given by its matrix (codomain x domain)."""

    def __init__(self, domain: LieAlgebra, codomain: LieAlgebra, matrix: Matrix, check: bool = True):
        if domain.F != codomain.F or matrix.F != domain.F:
            raise FieldMismatch("homomorphism between algebras over different fields")
        if (matrix.nrows, matrix.ncols) != (codomain.dim, domain.dim):
            raise ValueError("matrix shape does not match domain and codomain")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self._cols = matrix.columns()
        if check:
            self.verify()

    def image_of_basis(self, i: int) -> dict:
        return self._cols[i]

    def __call__(self, v: dict) -> dict:
        out: dict = {}
        F = self.domain.F
        for i, a in v.items():
            vec_axpy(F, out, self._cols[i], a)
        return out

    def verify(self, pairs=None) -> None:
        g, h = self.domain, self.codomain
        it = pairs if pairs is not None else combinations(range(g.dim), 2)
        for i, j in it:
            lhs = self(g.bracket_basis(i, j))
            rhs = h.bracket_sparse(self._cols[i], self._cols[j])
            if lhs != rhs:
                raise NotAHomomorphism(f"phi([e{i},e{j}]) != [phi e{i}, phi e{j}]")

    def kernel(self) -> Subspace:
        return self.matrix.nullspace()

    def image(self) -> Subspace:
        return self.matrix.column_space()

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.codomain.dim

    def compose(self, other: "AlgebraHom") -> "AlgebraHom":
        """``self o other``."""
        return AlgebraHom(other.domain, self.codomain, self.matrix @ other.matrix, check=False)

    @classmethod
    def identity(cls, g: LieAlgebra) -> "AlgebraHom":
        return cls(g, g, Matrix.identity(g.F, g.dim), check=False)
