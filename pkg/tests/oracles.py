"""Independent brute-force oracles used to pin expected values.

Everything here is deliberately naive: different algorithms from the
production code paths, no caching, no pruning, so agreement is evidence
rather than tautology.
"""

import itertools
from fractions import Fraction

from gradedlie.core import Vector


def sign_by_inversions(perm, degrees):
    """Koszul sign computed pair-by-pair over inversions (no sorting)."""
    sign = 1
    n = len(perm)
    for i in range(n):
        for j in range(i + 1, n):
            if perm[i] > perm[j]:
                if degrees[perm[i]] % 2 == 0 or degrees[perm[j]] % 2 == 0:
                    sign = -sign
    return sign


def shuffles_by_filter(k, m):
    """All (k, m)-shuffles found by filtering the full symmetric group."""
    n = k + m
    out = []
    for perm in itertools.permutations(range(n)):
        ok = all(perm[i] < perm[i + 1] for i in range(n - 1) if i + 1 != k)
        if ok:
            out.append(perm)
    return out


def shuffles_with_tail_by_filter(j, m):
    """Block sizes (j, m, 1) with the first two blocks increasing."""
    n = j + m + 1
    out = []
    for perm in itertools.permutations(range(n)):
        ok = all(perm[i] < perm[i + 1] for i in range(n - 1) if i + 1 not in (j, j + m))
        if ok:
            out.append(perm)
    return out


def transfer_operation_naive(algebra, splitting, kind, args):
    """Recursive transfer operations, recomputed from scratch every call.

    ``kind`` selects the codomain projection: "iota" applies the homotopy
    (images in the big algebra), "bracket" applies the projection onto
    chosen representatives.  ``args`` is a tuple of vectors of the small
    space.  No memoization, no zero pruning, no canonical-tuple tricks:
    arguments are expanded to basis tuples and the double shuffle sum is
    evaluated literally.
    """
    hsp = splitting.h_space
    out_space = algebra.space if kind == "iota" else hsp

    def on_basis(kind, idx):
        p = len(idx)
        degs = [hsp.degrees[i] for i in idx]
        if p == 1:
            vec = hsp.basis_vector(idx[0])
            return splitting.iota1.apply(vec) if kind == "iota" else vec
        total = algebra.space.zero() if kind == "iota" else hsp.zero()
        for k in range(1, p):
            for sigma in itertools.permutations(range(p)):
                inc = all(sigma[i] < sigma[i + 1] for i in range(p - 1) if i + 1 != k)
                if not inc:
                    continue
                sign = sign_by_inversions(sigma, degs)
                alpha = (1 - p + k) * (k + sum(degs[sigma[i]] for i in range(k)))
                if alpha % 2:
                    sign = -sign
                left = on_basis("iota", tuple(idx[sigma[i]] for i in range(k)))
                right = on_basis("iota", tuple(idx[sigma[i]] for i in range(k, p)))
                inner = algebra.bracket.evaluate([left, right])
                if kind == "iota":
                    term = splitting.h.apply(inner)
                else:
                    term = splitting.pi.apply(inner)
                total = total + term.scale(Fraction(sign, 2))
        return total

    supports = [sorted(a.coeffs.items()) for a in args]
    result = out_space.zero()
    for combo in itertools.product(*supports):
        coeff = Fraction(1)
        for _, c in combo:
            coeff *= c
        term = on_basis(kind, tuple(i for i, _ in combo))
        result = result + term.scale(coeff)
    return result


def transfer_tables_naive(algebra, splitting, kind, arity):
    """Full table of a transfer operation on canonical basis tuples."""
    hsp = splitting.h_space
    table = {}
    for idx in itertools.combinations_with_replacement(range(hsp.dim), arity):
        if any(a == b and hsp.degrees[a] % 2 == 0 for a, b in zip(idx, idx[1:])):
            continue
        value = transfer_operation_naive(
            algebra, splitting, kind, [hsp.basis_vector(i) for i in idx])
        if not value.is_zero():
            table[idx] = value
    return table


def build_algebra(basis, differential, brackets):
    """Small DGLA from label dictionaries (shared by hand-built fixtures)."""
    from gradedlie.core import GradedVectorSpace, LinearMap, MultilinearMap
    from gradedlie.dgla import DgLieAlgebra
    space = GradedVectorSpace(basis)
    d = LinearMap(space, space, 1,
                  {space.index(src): space.vector(img)
                   for src, img in differential.items()})
    bracket = MultilinearMap(space, space, 2, 0)
    for pair, img in brackets.items():
        bracket.set_entry(pair, space.vector(img))
    return DgLieAlgebra(space, d, bracket)


def permute_basis(Q, perm):
    """The same algebra-with-pairing, basis listed in a new order.

    Everything observable (validity, ranks, cohomology dimensions,
    classification) must be unchanged by this; tests use it as the
    relabeling-invariance oracle.
    """
    from gradedlie.core import GradedVectorSpace, LinearMap, MultilinearMap
    from gradedlie.cyclic import CyclicPairing, QuasiCyclicDgla
    from gradedlie.dgla import DgLieAlgebra
    space = Q.space
    labels = [space.labels[p] for p in perm]
    new = GradedVectorSpace(
        [(lbl, space.degrees[space.index(lbl)]) for lbl in labels])

    def move(vec):
        return new.vector({space.labels[i]: c for i, c in vec.coeffs.items()})

    d = LinearMap(new, new, 1,
                  {new.index(space.labels[i]): move(col)
                   for i, col in Q.algebra.d.columns.items()})
    bracket = MultilinearMap(new, new, 2, 0)
    for (i, j), value in Q.algebra.bracket.entries():
        bracket.set_entry((new.index(space.labels[i]), new.index(space.labels[j])),
                          move(value))
    form = CyclicPairing(new, Q.pairing.degree)
    for (i, j), c in Q.pairing.entries():
        form.set_entry((space.labels[i], space.labels[j]), c)
    return QuasiCyclicDgla(DgLieAlgebra(new, d, bracket), form)
