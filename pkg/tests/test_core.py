import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie.core import (
    GradedVectorSpace, LinearMap, MultilinearMap, as_scalar,
    coordinates_in_span, echelon_vectors, enumerate_shuffles,
    enumerate_shuffles_with_tail, kernel_vectors, koszul_sign, rref,
    solve_dense, sort_basis_tuple, worker_count,
)

from oracles import shuffles_by_filter, shuffles_with_tail_by_filter, sign_by_inversions


# --- scalars ---------------------------------------------------------------

def test_as_scalar_parses_rationals():
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar("-2") == Fraction(-2)
    assert as_scalar(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(TypeError):
        as_scalar(0.5)


# --- koszul sign -----------------------------------------------------------

def test_transposition_sign():
    # swapping two elements contributes -(-1)^(ab)
    assert koszul_sign([1, 0], [1, 2]) == -1
    assert koszul_sign([1, 0], [1, 1]) == 1
    assert koszul_sign([1, 0], [2, 2]) == -1


def test_identity_sign():
    assert koszul_sign([0, 1, 2], [1, 2, 3]) == 1


def test_all_odd_degrees_give_trivial_sign():
    for perm in itertools.permutations(range(4)):
        assert koszul_sign(perm, [1, 3, 1, 5]) == 1


def test_rejects_non_permutation():
    with pytest.raises(ValueError):
        koszul_sign([0, 0, 1], [1, 1, 1])
    with pytest.raises(ValueError):
        koszul_sign([0, 1], [1, 1, 1])


perm_and_degrees = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(
        st.permutations(list(range(n))),
        st.lists(st.integers(min_value=-2, max_value=4), min_size=n, max_size=n),
    ))


@given(perm_and_degrees)
def test_sign_matches_inversion_oracle(data):
    perm, degs = data
    assert koszul_sign(perm, degs) == sign_by_inversions(perm, degs)


@given(perm_and_degrees, st.randoms())
def test_sign_is_multiplicative_under_composition(data, rng):
    sigma, degs = data
    tau = list(range(len(sigma)))
    rng.shuffle(tau)
    composed = [sigma[tau[i]] for i in range(len(sigma))]
    permuted_degs = [degs[sigma[i]] for i in range(len(sigma))]
    assert koszul_sign(composed, degs) == (
        koszul_sign(tau, permuted_degs) * koszul_sign(list(sigma), degs))


# --- shuffles ---------------------------------------------------------------

def test_shuffle_enumeration_matches_brute_filter():
    for k in range(0, 4):
        for m in range(0, 4):
            assert sorted(enumerate_shuffles(k, m)) == sorted(shuffles_by_filter(k, m))


def test_shuffle_counts():
    # frozen: |S(2,1)| = 3, |S(2,2)| = 6, |S(1,3)| = 4 (binomials)
    assert len(enumerate_shuffles(2, 1)) == 3
    assert len(enumerate_shuffles(2, 2)) == 6
    assert len(enumerate_shuffles(1, 3)) == 4
    assert enumerate_shuffles(1, 0) == ((0,),)


def test_tail_shuffles_match_brute_filter():
    for j in range(1, 4):
        for m in range(0, 3):
            assert sorted(enumerate_shuffles_with_tail(j, m)) == sorted(
                shuffles_with_tail_by_filter(j, m))


def test_tail_shuffle_count():
    # (p+1) * C(p, j) permutations for block sizes (j, p-j, 1)
    for j in range(1, 4):
        for m in range(0, 3):
            p = j + m
            import math
            assert len(enumerate_shuffles_with_tail(j, m)) == (p + 1) * math.comb(p, j)


# --- canonical tuples -------------------------------------------------------

def test_sort_basis_tuple_kills_even_repeats():
    degs = {0: 0, 1: 1, 2: 2}
    key, sign = sort_basis_tuple((2, 2), degs.__getitem__)
    assert key is None and sign == 0
    key, sign = sort_basis_tuple((1, 1), degs.__getitem__)
    assert key == (1, 1) and sign == 1


def test_sort_basis_tuple_sign():
    degs = {0: 1, 1: 2}
    assert sort_basis_tuple((1, 0), degs.__getitem__) == ((0, 1), -1)


# --- spaces and vectors ------------------------------------------------------

def space_xyz():
    return GradedVectorSpace([("a", 0), ("x", 1), ("y", 1), ("z", 2)])


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        GradedVectorSpace([("a", 0), ("a", 1)])


def test_vector_arithmetic_and_degree():
    V = space_xyz()
    v = V.vector({"x": 2, "y": "1/2"})
    w = V.vector({"x": -2})
    assert (v + w).coefficient("x") == 0
    assert (v + w).degree() == 1
    assert v.scale(0).is_zero()
    mixed = V.vector({"a": 1, "x": 1})
    with pytest.raises(ValueError):
        mixed.degree()
    assert V.zero().degree() is None


def test_vector_repr_is_readable():
    V = space_xyz()
    assert repr(V.vector({"x": 1, "y": Fraction(-3, 2)})) == "x - 3/2*y"


# --- linear maps --------------------------------------------------------------

def test_linear_map_degree_check():
    V = space_xyz()
    with pytest.raises(ValueError):
        LinearMap(V, V, 1, {V.index("a"): V.basis_vector("z")})
    d = LinearMap(V, V, 1, {V.index("a"): V.basis_vector("x")})
    assert d.apply(V.vector({"a": 3})) == V.vector({"x": 3})


def test_compose_add_rank_kernel_image():
    V = space_xyz()
    d = LinearMap(V, V, 1, {V.index("a"): V.basis_vector("x"),
                            V.index("x"): V.basis_vector("z")})
    dd = d.compose(d)
    assert not dd.is_zero()  # a -> x -> z
    assert dd.apply(V.basis_vector("a")) == V.basis_vector("z")
    assert d.rank() == 2
    kernel = d.kernel_basis()
    assert [repr(v) for v in kernel] == ["y", "z"]
    image = d.image_basis()
    assert [repr(v) for v in image] == ["x", "z"]
    s = d.add(d.scale(-1))
    assert s.is_zero()


# --- multilinear maps ----------------------------------------------------------

def test_multilinear_storage_and_koszul_lookup():
    V = space_xyz()
    W = space_xyz()
    f = MultilinearMap(V, W, 2, 0)
    # store on the non-canonical order (y, x): canonicalizes with sign +1
    f.set_entry(("y", "x"), W.basis_vector("z"))
    assert f.evaluate_indices((V.index("x"), V.index("y"))) == W.basis_vector("z")
    # odd-odd swap costs nothing
    assert f.evaluate_indices((V.index("y"), V.index("x"))) == W.basis_vector("z")


def test_multilinear_even_diagonal_forced_zero():
    V = space_xyz()
    f = MultilinearMap(V, V, 2, 2)
    with pytest.raises(ValueError):
        f.set_entry(("a", "a"), V.basis_vector("z").scale(2))
    f.set_entry(("a", "a"), V.zero())  # assigning zero is fine
    assert f.evaluate_indices((0, 0)).is_zero()


def test_multilinear_odd_diagonal_allowed():
    V = space_xyz()
    f = MultilinearMap(V, V, 2, 0)
    f.set_entry(("x", "x"), V.basis_vector("z"))
    assert f.evaluate([V.basis_vector("x"), V.basis_vector("x")]) == V.basis_vector("z")


def test_multilinear_degree_check():
    V = space_xyz()
    f = MultilinearMap(V, V, 2, 0)
    with pytest.raises(ValueError):
        f.set_entry(("x", "y"), V.basis_vector("x"))


def test_evaluate_respects_linearity_and_signs():
    V = space_xyz()
    f = MultilinearMap(V, V, 2, 0)
    f.set_entry(("x", "y"), V.basis_vector("z"))
    f.set_entry(("a", "x"), V.basis_vector("x"))
    u = V.vector({"a": 2, "y": 3})
    v = V.basis_vector("x")
    # f(u, v) = 2 f(a,x) + 3 f(y,x); f(y,x) = f(x,y) since both odd
    assert f.evaluate([u, v]) == V.vector({"x": 2, "z": 3})
    # graded skew: f(x, a) = -f(a, x)
    assert f.evaluate([v, V.basis_vector("a")]) == V.vector({"x": -1})


@settings(max_examples=50)
@given(st.randoms(use_true_random=False))
def test_evaluate_at_permuted_arguments_matches_koszul_sign(rng):
    degrees = [rng.choice([0, 1, 1, 2, 3]) for _ in range(4)]
    V = GradedVectorSpace([(f"e{i}", degrees[i]) for i in range(4)])
    arity = rng.choice([2, 3])
    target_deg = rng.choice([0, 1])
    f = MultilinearMap(V, V, arity, target_deg)
    for _ in range(5):
        key = tuple(rng.randrange(4) for _ in range(arity))
        canon, sign = f.canonical_key(key)
        if canon is None:
            continue
        expected = sum(V.degrees[i] for i in canon) + target_deg
        targets = V.indices_of_degree(expected)
        if not targets:
            continue
        try:
            f.set_entry(canon, V.basis_vector(rng.choice(targets)).scale(rng.randrange(1, 4)))
        except ValueError:
            continue  # conflicting random assignment; irrelevant here
    args = [rng.randrange(4) for _ in range(arity)]
    perm = list(range(arity))
    rng.shuffle(perm)
    permuted = [args[perm[i]] for i in range(arity)]
    sign = koszul_sign(perm, [V.degrees[i] for i in args])
    lhs = f.evaluate([V.basis_vector(i) for i in permuted])
    rhs = f.evaluate([V.basis_vector(i) for i in args]).scale(sign)
    assert lhs == rhs


# --- exact elimination ----------------------------------------------------------

def random_matrix(rng, nrows, ncols):
    return [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ncols)]
            for _ in range(nrows)]


def test_solve_and_kernel_roundtrip():
    rng = random.Random(7)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        A = random_matrix(rng, nrows, ncols)
        x = [Fraction(rng.randint(-3, 3)) for _ in range(ncols)]
        b = [sum(A[i][j] * x[j] for j in range(ncols)) for i in range(nrows)]
        sol, kernel = solve_dense(A, b)
        assert sol is not None
        assert all(sum(A[i][j] * sol[j] for j in range(ncols)) == b[i]
                   for i in range(nrows))
        for k in kernel:
            assert all(sum(A[i][j] * k[j] for j in range(ncols)) == 0
                       for i in range(nrows))
        # rank-nullity
        assert len(kernel) == ncols - len(rref(A)[1])


def test_solve_reports_inconsistency():
    A = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    sol, kernel = solve_dense(A, [Fraction(1), Fraction(3)])
    assert sol is None
    assert len(kernel) == 1


def test_coordinates_in_span():
    V = space_xyz()
    basis = [V.vector({"x": 1, "y": 1}), V.vector({"y": 1})]
    coords = coordinates_in_span(basis, V.vector({"x": 2, "y": 5}))
    assert coords == [Fraction(2), Fraction(3)]
    assert coordinates_in_span(basis, V.basis_vector("z")) is None


def test_echelon_vectors_deterministic():
    V = space_xyz()
    vecs = [V.vector({"x": 2, "y": 2}), V.vector({"x": 1})]
    ech = echelon_vectors(vecs, V)
    assert [repr(v) for v in ech] == ["x", "y"]


# --- thread knob ------------------------------------------------------------------

def test_worker_count_from_env(monkeypatch):
    monkeypatch.setenv("LF_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LF_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("LF_THREADS", "x")
    with pytest.raises(ValueError):
        worker_count()
