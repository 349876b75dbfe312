import random
from math import comb

import pytest

from conftest import CATALOG_NAMES, algebra
from nilcoh.catalog import abelian, free_algebra, heisenberg
from nilcoh.cohomology import betti, filtered_h2
from nilcoh.free import FreeNilpotent
from nilcoh.lie import nilpotency_class
from nilcoh.linalg import QQ, Matrix
from nilcoh.modules import adjoint_module, trivial_module
from nilcoh.presentation import (
    OutOfRange,
    admissible_range,
    b2_formulas,
    betti_bounds,
    bracket_with_inclusion,
    build_free_extension,
    central_extension_criterion,
    central_quotient_betti_identity,
    equivalence_automorphism,
    exact_sequence_identity,
    filtration_via_kernel,
    kernel_generators_check,
    length,
    two_step_closed_forms,
)

EXAMPLE_QUOTIENTS = ["quot_3_2_len1", "quot_4_2_len1", "quot_4_2_len2"]


def test_first_heisenberg_is_free():
    E = build_free_extension(heisenberg(1), 2)
    assert E.kernel.dim == 0 and E.depth is None
    assert b2_formulas(heisenberg(1)).b2 == 2


@pytest.mark.parametrize("n", [2, 3])
def test_heisenberg_free_extension(n):
    E = build_free_extension(heisenberg(n), 2)
    assert E.f.n == 2 * n and E.f.p == 2
    assert E.kernel.dim == comb(2 * n, 2) - 1
    assert E.depth == 2
    assert E.f.power(2).contains(E.kernel)


def test_free_algebra_has_zero_kernel():
    E = build_free_extension(free_algebra(2, 3), 3)
    assert E.kernel.dim == 0 and E.depth is None
    assert kernel_generators_check(E, [])


def test_single_relation_quotient():
    E = build_free_extension(algebra("quot_3_2_len1"), 2)
    assert E.kernel.dim == 1 and E.depth == 2
    assert kernel_generators_check(E, [E.f.word((0, 1))])


def test_depths():
    assert build_free_extension(algebra("quot_3_3_depth2"), 3).depth == 2
    assert build_free_extension(algebra("filiform4"), 3).depth == 3


def test_class_below_algebra_is_rejected():
    with pytest.raises(OutOfRange):
        build_free_extension(heisenberg(2), 1)
    h1 = heisenberg(1)
    with pytest.raises(OutOfRange):
        filtration_via_kernel(h1, trivial_module(h1), 4)


def test_heisenberg_kernel_generators():
    E = build_free_extension(heisenberg(2), 2)
    f = E.f
    # generators x1, x2, y1, y2 of f_{4,2}
    x1, x2, y1, y2 = 0, 1, 2, 3
    gens = [f.word((x1, x2)), f.word((y1, y2)), f.word((x1, y2)), f.word((x2, y1))]
    diff = dict(f.word((x1, y1)))
    for k, v in f.word((x2, y2)).items():
        diff[k] = diff.get(k, QQ.zero) - v
    gens.append({k: v for k, v in diff.items() if v})
    assert kernel_generators_check(E, gens)
    assert not kernel_generators_check(E, gens[:-1])


def test_filtration_via_kernel_examples():
    h2 = heisenberg(2)
    k2 = trivial_module(h2)
    via = filtration_via_kernel(h2, k2, 2)
    assert via.dim == 5 and via == filtered_h2(h2, k2, 2).subspace
    h1 = heisenberg(1)
    assert filtration_via_kernel(h1, trivial_module(h1), 2).dim == 0
    ad = adjoint_module(h1)
    assert filtration_via_kernel(h1, ad, 2).dim == 0 == filtered_h2(h1, ad, 2).dim


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_two_paths_agree(name):
    g = algebra(name)
    for M in (trivial_module(g), adjoint_module(g)):
        for r in admissible_range(g, M):
            assert filtration_via_kernel(g, M, r) == filtered_h2(g, M, r).subspace


def test_exact_sequence_heisenberg():
    h2 = heisenberg(2)
    rep = exact_sequence_identity(h2, trivial_module(h2), 2)
    assert (rep.filtered_dim, rep.hom_dim, rep.h1_free, rep.h1_g) == (5, 5, 4, 4)
    assert rep.span_checked and rep.span_equal and rep.ok


def test_exact_sequence_free_algebra():
    g = free_algebra(2, 3)
    rep = exact_sequence_identity(g, trivial_module(g), 3)
    assert rep.filtered_dim == 0 and rep.hom_dim == 0 and rep.ok


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_exact_sequence_catalog(name):
    g = algebra(name)
    for M in (trivial_module(g), adjoint_module(g)):
        for r in admissible_range(g, M):
            rep = exact_sequence_identity(g, M, r)
            assert rep.alternating_ok
            if M.is_trivial and rep.span_checked:
                assert rep.span_equal


@pytest.mark.parametrize("n", [2, 3])
def test_heisenberg_b2_formula(n):
    g = heisenberg(n)
    E = build_free_extension(g, 2)
    f1, brk = bracket_with_inclusion(E)
    assert brk == f1.power(3)
    res = b2_formulas(g)
    assert res.consistent and res.b2 == comb(2 * n, 2) - 1


def test_example_quotient_b2_formula():
    g = algebra("quot_3_2_len1")
    res = b2_formulas(g)
    assert (res.fp_dim, res.b2_free, res.correction) == (1, 8, 3)
    assert res.b2 == 6 == res.b2_direct


@pytest.mark.parametrize("name", EXAMPLE_QUOTIENTS)
def test_example_quotients(name):
    g = algebra(name)
    n = 3 if "_3_" in name else 4
    E = build_free_extension(g, 2)
    assert bracket_with_inclusion(E)[1].dim == n
    assert betti(g, 2)[2] == 2 * comb(n + 1, 3) - n + 1


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_abelian_b2_formula(m):
    res = b2_formulas(abelian(m))
    assert res.fp_dim == 0 and res.correction == 0
    assert res.b2 == comb(m, 2) == res.b2_direct


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_b2_formulas_catalog(name):
    assert b2_formulas(algebra(name)).consistent


def test_criterion_examples():
    v = central_extension_criterion(heisenberg(2))
    assert not v.admits_class_p_plus_1 and (v.lhs, v.rhs) == (5, 5)
    for name in EXAMPLE_QUOTIENTS:
        v = central_extension_criterion(algebra(name))
        assert v.admits_class_p_plus_1 and v.consistent
    assert central_extension_criterion(algebra("quot_3_2_len1")).lhs == 1


@pytest.mark.parametrize("name", ["quot_3_2_len1", "quot_4_2_len1", "quot_4_2_len2",
                                  "quot_3_3_depth2", "filiform4"])
def test_single_generator_kernel_admits_extension(name):
    g = algebra(name)
    E = build_free_extension(g, nilpotency_class(g))
    assert E.f_n_quotient_dim() == 1
    assert central_extension_criterion(g).admits_class_p_plus_1


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_criterion_catalog(name):
    assert central_extension_criterion(algebra(name)).consistent


def test_bounds_heisenberg():
    b = betti_bounds(heisenberg(2))
    assert (b.c, b.C, b.b2) == (5, 9, 5)
    assert b.lower_refined == 5 and b.upper_refined == 9
    assert b.interval == (5, 9) and b.ok
    b1 = betti_bounds(heisenberg(1))
    assert b1.lower_refined == 2 and b1.upper_refined == 2 and b1.b2 == 2


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_bounds_abelian(m):
    b = betti_bounds(abelian(m))
    assert b.b2 == b.C == comb(m, 2) and b.ok


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_bounds_catalog(name):
    b = betti_bounds(algebra(name))
    assert b.c <= b.b2 <= b.C
    assert b.ok, b.verdicts


def test_length_examples():
    f = FreeNilpotent(4, 2)
    assert length(f, f.word((0, 1))) == 1
    X = dict(f.word((0, 1)))
    X.update(f.word((2, 3)))
    assert length(f, X) == 2
    with pytest.raises(ValueError):
        length(f, {})
    with pytest.raises(ValueError):
        length(f, f.generator(0))
    # l(X) <= floor(n / 2)
    rng = random.Random(0)
    deg2 = list(f.degree_range(2))
    for _ in range(20):
        Y = {i: QQ(rng.randint(-3, 3)) for i in deg2}
        Y = {i: x for i, x in Y.items() if x}
        if Y:
            assert length(f, Y) <= 2


def test_lengths_do_not_change_b2():
    assert betti(algebra("quot_4_2_len1"), 2)[2] == betti(algebra("quot_4_2_len2"), 2)[2] == 17


def test_equivalence_automorphism_identity():
    E = build_free_extension(heisenberg(2), 2)
    theta = equivalence_automorphism(E, E)
    assert theta.matrix == Matrix.identity(QQ, E.f.dim)


def test_equivalence_automorphism_swap():
    h1 = heisenberg(1)
    E1 = build_free_extension(h1, 2)
    E2 = build_free_extension(h1, 2, generators=[{1: QQ.one}, {0: QQ.one}])
    theta = equivalence_automorphism(E1, E2)
    f = E1.f
    swap = f.hom_to(f, [f.generator(1), f.generator(0)])
    assert theta.matrix == swap.matrix


def random_generators(rng, g, gens):
    F = g.F
    while True:
        A = [[rng.randint(-2, 2) for _ in gens] for _ in gens]
        if Matrix.from_lists(F, A).rank() == len(gens):
            break
    derived = [i for i in range(g.dim) if not any(i in v for v in gens)]
    out = []
    for row in A:
        v: dict = {}
        for c, x in zip(row, gens):
            for i, a in x.items():
                v[i] = F.red(v.get(i, F.zero) + c * a)
        for i in derived:
            v[i] = F.red(v.get(i, F.zero) + rng.randint(-1, 1))
        out.append({i: a for i, a in v.items() if a})
    return out


@pytest.mark.parametrize("seed", range(10))
def test_equivalence_automorphism_random(seed):
    rng = random.Random(seed)
    g = algebra(rng.choice(["heisenberg2", "filiform4", "quot_3_3_depth2"]))
    r = nilpotency_class(g) + rng.randint(0, 1)
    E1 = build_free_extension(g, r)
    E2 = build_free_extension(g, r, generators=random_generators(rng, g, E1.generators))
    theta = equivalence_automorphism(E1, E2)
    assert theta.matrix.rank() == E1.f.dim
    assert E2.pi.matrix @ theta.matrix == E1.pi.matrix
    theta.verify()


def test_central_quotient_examples():
    rep = central_quotient_betti_identity(heisenberg(1))
    assert rep.b2_h == 1 and rep.top == 1 and rep.ok
    assert rep.cokernel == 2
    rep = central_quotient_betti_identity(free_algebra(2, 3))
    assert rep.top == 2 and rep.ok


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_central_quotient_catalog(name):
    g = algebra(name)
    if nilpotency_class(g) < 2:
        pytest.skip("abelian algebras have no central quotient of lower class")
    assert central_quotient_betti_identity(g).ok


@pytest.mark.parametrize("name", ["heisenberg1", "heisenberg2", "heisenberg3"] + EXAMPLE_QUOTIENTS)
def test_two_step_closed_forms(name):
    forms = two_step_closed_forms(algebra(name))
    for formula, direct in forms.values():
        assert formula == direct


def test_two_step_closed_forms_reject_other_classes():
    with pytest.raises(ValueError):
        two_step_closed_forms(algebra("free_2_3"))


def test_admissible_range():
    h1 = heisenberg(1)
    assert list(admissible_range(h1, trivial_module(h1))) == [2, 3]
    assert list(admissible_range(h1, adjoint_module(h1))) == [2, 3, 4]
