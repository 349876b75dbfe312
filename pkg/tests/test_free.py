import random

import pytest
from hypothesis import given, strategies as st

from nilcoh.catalog import heisenberg
from nilcoh.cohomology import betti
from nilcoh.free import (
    FreeNilpotent,
    ResourceCapExceeded,
    build_free,
    canonical_inclusion,
    f3_monomials,
    f3_monomials_independent,
    hall_words,
    ideal_closure,
    mobius,
    normalize_bracket,
    truncation_projection,
    witt_dim,
)
from nilcoh.lie import AlgebraHom, lower_central_series, product_subspace, validate
from nilcoh.linalg import GF, QQ, Matrix


def necklace_count(n, i):
    """Primitive necklaces of length ``i`` over ``n`` letters, by brute force."""
    from itertools import product
    seen = set()
    count = 0
    for word in product(range(n), repeat=i):
        rots = [word[k:] + word[:k] for k in range(i)]
        canon = min(rots)
        if canon in seen:
            continue
        seen.add(canon)
        if len(set(rots)) == i:
            count += 1
    return count


def test_mobius_values():
    assert [mobius(d) for d in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_witt_examples():
    assert witt_dim(2, 2) == 1
    assert witt_dim(2, 3) == 2
    assert witt_dim(3, 3) == 8
    assert witt_dim(2, 4) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_witt_counts_primitive_necklaces(n, i):
    assert witt_dim(n, i) == necklace_count(n, i)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_hall_enumeration_matches_witt(n):
    top = 6 if n <= 3 else 5
    words = hall_words(n, top)
    for i in range(1, top + 1):
        assert sum(w.degree == i for w in words) == witt_dim(n, i)


def test_hall_enumeration_n4_degree6():
    # f_{4,6} has dimension 1330, within the default cap
    words = hall_words(4, 6)
    assert sum(w.degree == 6 for w in words) == witt_dim(4, 6) == 670


def test_build_free_examples():
    assert build_free(2, 2).dim == 3
    assert build_free(2, 3).dim == 5
    f = build_free(4, 2)
    assert f.dim == 10 and witt_dim(4, 3) == 20


def test_f22_is_heisenberg():
    f = build_free(2, 2)
    iso = AlgebraHom(f, heisenberg(1), Matrix.identity(QQ, 3))
    assert iso.matrix.rank() == 3


@pytest.mark.parametrize("n,p", [(2, 3), (3, 3), (2, 4), (2, 5), (3, 4)])
def test_free_algebras_satisfy_jacobi(n, p):
    assert validate(FreeNilpotent(n, p)) is None


@pytest.mark.parametrize("n,p", [(2, 4), (3, 3)])
def test_grading(n, p):
    f = FreeNilpotent(n, p)
    for i in range(1, p + 1):
        for j in range(1, p + 1):
            prod = product_subspace(f, f.component(i), f.component(j))
            if i + j > p:
                assert prod.dim == 0
            else:
                assert f.component(i + j).contains(prod)
    series = lower_central_series(f)
    for d in range(1, p + 1):
        assert series[d - 1] == f.power(d)


def test_normalize_bracket_examples():
    f = FreeNilpotent(2, 3)
    x1x2 = f.words.index(next(w for w in f.words if w.degree == 2))
    assert normalize_bracket(f, 0, 1) == [1 if k == x1x2 else 0 for k in range(f.dim)]
    assert normalize_bracket(f, 1, 0) == [-1 if k == x1x2 else 0 for k in range(f.dim)]
    a_word = f.word((0, (0, 1)))
    assert normalize_bracket(f, x1x2, 0) == [-a_word.get(k, 0) for k in range(f.dim)]
    assert all(x == 0 for x in normalize_bracket(FreeNilpotent(2, 2), 2, 0))


def test_projection_and_inclusion():
    f3, f2 = FreeNilpotent(2, 3), FreeNilpotent(2, 2)
    proj = truncation_projection(f3, f2)
    proj.verify()
    assert proj.kernel() == f3.component(3) and proj.kernel().dim == 2
    inc = canonical_inclusion(f2, f3)
    assert proj.matrix @ inc == Matrix.identity(QQ, f2.dim)
    g2, g3 = FreeNilpotent(3, 2), FreeNilpotent(3, 3)
    x1x2 = canonical_inclusion(g2, g3).apply(g2.word((0, 1)))
    assert g3.bracket_sparse(x1x2, g3.generator(2))


def test_f3_monomials():
    assert len(f3_monomials(2)) == 2 and f3_monomials_independent(2)
    assert len(f3_monomials(3)) == 8 and f3_monomials_independent(3)
    assert f3_monomials_independent(4)
    f = FreeNilpotent(3, 3)
    for label, v in f3_monomials(3):
        inner = label[label.index(",") + 1:-1]
        a = int(label[2]) - 1
        b, c = int(inner[2]) - 1, int(inner[5]) - 1
        assert v == f.bracket_sparse(f.generator(a), f.bracket_sparse(f.generator(b), f.generator(c)))


def test_ideal_closure_examples():
    f32 = FreeNilpotent(3, 2)
    assert ideal_closure(f32, [f32.word((0, 1))]).dim == 1
    f23 = FreeNilpotent(2, 3)
    assert ideal_closure(f23, [f23.word((0, 1))]).dim == 3
    f22 = FreeNilpotent(2, 2)
    assert ideal_closure(f22, [f22.generator(0)]).dim == 2


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("NILCOH_DIM_CAP", "50")
    hall_words.cache_clear()
    with pytest.raises(ResourceCapExceeded):
        hall_words(5, 4)
    hall_words.cache_clear()


@pytest.mark.parametrize("n,p", [(2, 2), (2, 3), (3, 2)])
def test_b2_of_free_is_next_witt_dim(n, p):
    assert betti(FreeNilpotent(n, p), 2)[2] == witt_dim(n, p + 1)


@given(st.integers(0, 10_000))
def test_universal_property(seed):
    rng = random.Random(seed)
    targets = [FreeNilpotent(2, 3), heisenberg(2), FreeNilpotent(3, 2)]
    g = rng.choice(targets)
    f = FreeNilpotent(rng.randint(1, 3), 3)
    images = [{j: QQ(rng.randint(-2, 2)) for j in range(g.dim) if rng.random() < 0.5}
              for _ in range(f.n)]
    images = [{j: x for j, x in v.items() if x} for v in images]
    f.hom_to(g, images, check=True)


def test_free_over_prime_field():
    f = FreeNilpotent(2, 4, GF(5))
    assert validate(f) is None and f.dim == 8
