"""Free nilpotent Lie algebras on a Hall basis.

Hall words are generated degree by degree.  A word is either a generator or a
pair ``(a, b)`` of earlier words standing for ``[a, b]``; the pair is a Hall
word when ``a < b`` in the basis order and either ``b`` is a generator or
``b = (b1, b2)`` with ``b1 <= a``.  The basis order is: by degree, then by
creation order, and pairs of a given degree are created in lexicographic
order of ``(index(a), index(b))``.  Truncating at degree ``p`` gives
``f_{n,p}``; the words of degree ``<= p`` of ``f_{n,r}`` are exactly the
basis of ``f_{n,p}`` in the same order.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .lie import AlgebraHom, LieAlgebra, is_ideal
from .linalg import QQ, Echelon, Field, Matrix, Subspace, dense

DEFAULT_DIM_CAP = 2000


class ResourceCapExceeded(RuntimeError):
    pass


def dim_cap() -> int:
    env = os.environ.get("NILCOH_DIM_CAP")
    return int(env) if env else DEFAULT_DIM_CAP


def mobius(d: int) -> int:
    if d < 1:
        raise ValueError("mobius is defined on positive integers")
    sign = 1
    k = 2
    while k * k <= d:
        if d % k == 0:
            d //= k
            if d % k == 0:
                return 0
            sign = -sign
        k += 1
    if d > 1:
        sign = -sign
    return sign


def witt_dim(n: int, i: int) -> int:
    """Dimension of the degree ``i`` part of the free Lie algebra on ``n`` letters."""
    if n < 1 or i < 1:
        raise ValueError("need n >= 1 and i >= 1")
    total = sum(mobius(d) * n ** (i // d) for d in range(1, i + 1) if i % d == 0)
    q, r = divmod(total, i)
    assert r == 0
    return q


def free_dim(n: int, p: int) -> int:
    return sum(witt_dim(n, i) for i in range(1, p + 1))


@dataclass(frozen=True)
class HallWord:
    index: int
    degree: int
    gen: int | None = None
    left: int | None = None
    right: int | None = None

    @property
    def is_generator(self) -> bool:
        return self.gen is not None


@lru_cache(maxsize=None)
def hall_words(n: int, p: int) -> tuple[HallWord, ...]:
    if free_dim(n, p) > dim_cap():
        raise ResourceCapExceeded(
            f"f_({n},{p}) has dimension {free_dim(n, p)} > cap {dim_cap()} (set NILCOH_DIM_CAP)")
    words = [HallWord(i, 1, gen=i) for i in range(n)]
    by_degree = {1: list(range(n))}
    for d in range(2, p + 1):
        new = []
        for da in range(1, d):
            db = d - da
            if da > db:
                break
            for a in by_degree[da]:
                for b in by_degree[db]:
                    if a >= b:
                        continue
                    wb = words[b]
                    if wb.is_generator or wb.left <= a:
                        new.append((a, b))
        new.sort()
        by_degree[d] = []
        for a, b in new:
            idx = len(words)
            words.append(HallWord(idx, d, left=a, right=b))
            by_degree[d].append(idx)
    return tuple(words)


@lru_cache(maxsize=None)
def _integer_table(n: int, p: int):
    """Structure constants over the integers: ``{(i, j): {k: c}}`` for i < j."""
    words = hall_words(n, p)
    index = {(w.left, w.right): w.index for w in words if not w.is_generator}
    memo: dict = {}

    def combine(u: dict, v: dict) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                for k, c in br(a, b).items():
                    out[k] = out.get(k, 0) + x * y * c
        return {k: c for k, c in out.items() if c}

    def br(a: int, b: int) -> dict:
        if a == b or words[a].degree + words[b].degree > p:
            return {}
        if a > b:
            return {k: -c for k, c in br(b, a).items()}
        key = (a, b)
        if key in memo:
            return memo[key]
        if key in index:
            res = {index[key]: 1}
        else:
            # b = (b1, b2) with b1 > a:  [a,[b1,b2]] = [[a,b1],b2] + [b1,[a,b2]]
            b1, b2 = words[b].left, words[b].right
            res = combine(br(a, b1), {b2: 1})
            for k, c in combine({b1: 1}, br(a, b2)).items():
                res[k] = res.get(k, 0) + c
            res = {k: c for k, c in res.items() if c}
        memo[key] = res
        return res

    table = {}
    m = len(words)
    for i in range(m):
        for j in range(i + 1, m):
            if words[i].degree + words[j].degree <= p:
                r = br(i, j)
                if r:
                    table[(i, j)] = r
    return table


def word_label(words, i: int, names=None) -> str:
    w = words[i]
    if w.is_generator:
        return names[w.gen] if names else f"x{w.gen + 1}"
    return f"[{word_label(words, w.left, names)},{word_label(words, w.right, names)}]"


class FreeNilpotent(LieAlgebra):
    """The free ``p``-step nilpotent Lie algebra on ``n`` generators."""

    def __init__(self, n: int, p: int, F: Field = QQ, check: bool = False, names=None):
        if n < 1 or p < 1:
            raise ValueError("need n >= 1 and p >= 1")
        self.n = n
        self.p = p
        self.words = hall_words(n, p)
        self.generator_names = list(names) if names else [f"x{i + 1}" for i in range(n)]
        labels = [word_label(self.words, i, self.generator_names) for i in range(len(self.words))]
        super().__init__(F, len(self.words), _integer_table(n, p), labels,
                         name=f"f_{n},{p}", check=check)
        self.offsets = [0]
        for d in range(1, p + 1):
            self.offsets.append(self.offsets[-1] + witt_dim(n, d))

    def degree_range(self, d: int) -> range:
        """Basis indices of the degree ``d`` component ``H_d``."""
        if d < 1 or d > self.p:
            return range(0)
        return range(self.offsets[d - 1], self.offsets[d])

    def component(self, d: int) -> Subspace:
        return Subspace(self.F, self.dim, [{i: self.F.one} for i in self.degree_range(d)])

    def power(self, d: int) -> Subspace:
        """``f^d``, the span of all components of degree ``>= d``."""
        lo = self.offsets[d - 1] if d <= self.p else self.dim
        return Subspace(self.F, self.dim, [{i: self.F.one} for i in range(max(lo, 0), self.dim)])

    def degree_of(self, i: int) -> int:
        return self.words[i].degree

    def generator(self, i: int) -> dict:
        return {i: self.F.one}

    def word(self, expr) -> dict:
        """Evaluate a nested tuple of generator indices, e.g. ``(0, (0, 1))``."""
        if isinstance(expr, int):
            return self.generator(expr)
        a, b = expr
        return self.bracket_sparse(self.word(a), self.word(b))

    def hom_to(self, g: LieAlgebra, images: list[dict], check: bool = True) -> AlgebraHom:
        """Extend generator images to a homomorphism (universal property)."""
        if len(images) != self.n:
            raise ValueError("need one image per generator")
        vals: list[dict] = []
        for w in self.words:
            if w.is_generator:
                vals.append(dict(images[w.gen]))
            else:
                vals.append(g.bracket_sparse(vals[w.left], vals[w.right]))
        m = Matrix.from_columns(self.F, g.dim, vals)
        return AlgebraHom(self, g, m, check=check)


def build_free(n: int, p: int, F: Field = QQ) -> FreeNilpotent:
    return FreeNilpotent(n, p, F)


def normalize_bracket(f: FreeNilpotent, u: int, v: int) -> list:
    """Expansion of ``[u, v]`` for basis words ``u, v`` in the Hall basis."""
    return dense(f.bracket_basis(u, v), f.dim, f.F)


def truncation_projection(f_r: FreeNilpotent, f_p: FreeNilpotent) -> AlgebraHom:
    if f_r.n != f_p.n or f_r.F != f_p.F or f_r.p < f_p.p:
        raise ValueError("projection needs the same generators and r >= p")
    F = f_r.F
    cols = [{i: F.one} if i < f_p.dim else {} for i in range(f_r.dim)]
    return AlgebraHom(f_r, f_p, Matrix.from_columns(F, f_p.dim, cols), check=False)


def canonical_inclusion(f_p: FreeNilpotent, f_q: FreeNilpotent) -> Matrix:
    """Vector space inclusion matching Hall words of degree ``<= p``."""
    if f_p.n != f_q.n or f_p.F != f_q.F or f_q.p < f_p.p:
        raise ValueError("inclusion needs the same generators and a larger class")
    F = f_p.F
    return Matrix.from_columns(F, f_q.dim, [{i: F.one} for i in range(f_p.dim)])


def f3_monomials(n: int, F: Field = QQ) -> list[tuple[str, dict]]:
    """Degree-3 monomials ``[x_i,[x_i,x_j]]``, ``[x_j,[x_i,x_j]]`` (i < j) and
    ``[x_i,[x_j,x_k]]``, ``[x_j,[x_i,x_k]]`` (i < j < k) expanded in ``f_{n,3}``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    f = FreeNilpotent(n, 3, F)
    out = []
    x = [f"x{i + 1}" for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            out.append((f"[{x[i]},[{x[i]},{x[j]}]]", f.word((i, (i, j)))))
    for i in range(n):
        for j in range(i + 1, n):
            out.append((f"[{x[j]},[{x[i]},{x[j]}]]", f.word((j, (i, j)))))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                out.append((f"[{x[i]},[{x[j]},{x[k]}]]", f.word((i, (j, k)))))
                out.append((f"[{x[j]},[{x[i]},{x[k]}]]", f.word((j, (i, k)))))
    return out


def f3_monomials_independent(n: int, F: Field = QQ) -> bool:
    mons = f3_monomials(n, F)
    return Echelon(F, FreeNilpotent(n, 3, F).dim, [v for _, v in mons]).rank == len(mons) == 2 * comb(n + 1, 3)


def ideal_closure(g: LieAlgebra, S) -> Subspace:
    """Smallest ideal containing the vectors ``S`` (by saturation)."""
    ech = Echelon(g.F, g.dim)
    todo = [v for v in S if v and ech.add(v)]
    basis = [{i: g.F.one} for i in range(g.dim)]
    while todo:
        v = todo.pop()
        for e in basis:
            w = g.bracket_sparse(e, v)
            if w and ech.add(w):
                todo.append(w)
    out = Subspace(g.F, g.dim, ech)
    assert is_ideal(g, out)
    return out
