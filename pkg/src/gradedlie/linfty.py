"""L-infinity structures, their axioms, and homotopy transfer.

The central construction: given a differential graded Lie algebra with a
chosen splitting, build the minimal L-infinity structure on the chosen
cohomology representatives together with the inclusion that witnesses it.
Both are computed by one memoized recursion, level by level in the arity,
and every structural claim made by the result (minimality, the arity-2
bracket, the morphism relations) is re-verified before it is returned.

All operations are graded symmetric with Koszul signs; the arity-n bracket
has degree 2 - n and the arity-n piece of a morphism into a DGLA has
degree 1 - n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    GradedVectorSpace, MultilinearMap, Vector, canonical_tuples,
    enumerate_shuffles, koszul_sign, parallel_map,
)
from .dgla import DgLieAlgebra, Splitting, Violation, cohomology, verify_splitting

__all__ = [
    "LInftyAlgebra", "check_linfty_axioms",
    "LInftyMorphismToDgla", "check_morphism",
    "TransferResult", "homotopy_transfer", "transferred_bracket_on_classes",
    "alternate_sign_convention",
]

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# L-infinity algebras
# ---------------------------------------------------------------------------

class LInftyAlgebra:
    """An L-infinity structure tracked up to a finite arity bound.

    ``brackets`` maps arity n to the corresponding operation; a missing
    arity at or below the bound means the zero operation, while arities
    above the bound are untracked -- asking about them is an error, not a
    claim that they vanish.
    """

    def __init__(self, space: GradedVectorSpace, brackets, arity_bound: int):
        self.space = space
        self.arity_bound = int(arity_bound)
        if self.arity_bound < 1:
            raise ValueError("arity bound must be at least 1")
        self.brackets = {}
        for n, op in brackets.items():
            n = int(n)
            if not 1 <= n <= self.arity_bound:
                raise ValueError(f"bracket arity {n} outside 1..{self.arity_bound}")
            if op.domain != space or op.codomain != space:
                raise ValueError(f"arity-{n} bracket is not an operation on the space")
            if op.arity != n or op.degree != 2 - n:
                raise ValueError(
                    f"arity-{n} bracket must have arity {n} and degree {2 - n}, "
                    f"got arity {op.arity} and degree {op.degree}")
            if not op.is_zero():
                self.brackets[n] = op

    @classmethod
    def from_dgla(cls, A: DgLieAlgebra, arity_bound: int | None = None) -> "LInftyAlgebra":
        """View a DGLA as an L-infinity algebra (differential = arity 1)."""
        if arity_bound is None:
            arity_bound = A.space.dim + 2
        d_op = MultilinearMap(A.space, A.space, 1, 1)
        for i, column in A.d.columns.items():
            d_op.set_entry((i,), column)
        return cls(A.space, {1: d_op, 2: A.bracket}, arity_bound)

    def operation(self, n: int) -> MultilinearMap:
        """The arity-n operation; the zero map when none is stored."""
        n = int(n)
        if not 1 <= n <= self.arity_bound:
            raise ValueError(
                f"arity {n} is not tracked (bound {self.arity_bound})")
        op = self.brackets.get(n)
        if op is not None:
            return op
        return MultilinearMap(self.space, self.space, n, 2 - n)

    @property
    def is_minimal(self) -> bool:
        return 1 not in self.brackets

    def __repr__(self):
        arities = sorted(self.brackets) or ["none"]
        return (f"LInftyAlgebra(dim {self.space.dim}, brackets at arities "
                f"{arities}, tracked to {self.arity_bound})")


def check_linfty_axioms(A: LInftyAlgebra, up_to: int) -> list:
    """Generalized Jacobi identities for every arity n <= up_to.

    The arity-n identity sums, over splittings n = k + (n-k) and
    (k, n-k)-shuffles, the sign (-1)^(n-k) times the Koszul sign of the
    shuffle, applied to nesting the arity-k operation inside the
    arity-(n-k+1) one.  For a DGLA viewed as an L-infinity algebra, n = 1
    is d^2 = 0, n = 2 is the Leibniz rule, and n = 3 is Jacobi.
    """
    if up_to < 1:
        raise ValueError("up_to must be at least 1")
    if up_to > A.arity_bound:
        raise ValueError(
            f"cannot check arity {up_to}: brackets are only tracked to "
            f"{A.arity_bound}")
    space = A.space
    out = []
    for n in range(1, up_to + 1):
        pairs = [(k, A.brackets.get(k), A.brackets.get(n - k + 1))
                 for k in range(1, n + 1)]
        pairs = [(k, inner, outer) for k, inner, outer in pairs
                 if inner is not None and outer is not None]
        if not pairs:
            continue

        def defect_at(idx, pairs=pairs, n=n):
            degs = [space.degrees[i] for i in idx]
            total = space.zero()
            for k, inner, outer in pairs:
                outer_sign = -1 if (n - k) % 2 else 1
                for sigma in enumerate_shuffles(k, n - k):
                    chi = koszul_sign(sigma, degs)
                    head = inner.evaluate_indices(tuple(idx[s] for s in sigma[:k]))
                    if head.is_zero():
                        continue
                    args = [head] + [space.basis_vector(idx[s]) for s in sigma[k:]]
                    term = outer.evaluate(args)
                    if not term.is_zero():
                        total = total + term.scale(chi * outer_sign)
            return idx, total

        for idx, defect in parallel_map(defect_at, canonical_tuples(space, n)):
            if not defect.is_zero():
                out.append(Violation(
                    f"generalized_jacobi_{n}",
                    tuple(space.labels[i] for i in idx),
                    f"defect {defect}"))
    return out


# ---------------------------------------------------------------------------
# Morphisms into a DGLA
# ---------------------------------------------------------------------------

class LInftyMorphismToDgla:
    """An L-infinity morphism from an L-infinity algebra into a DGLA.

    ``taylor`` maps arity n to the degree-(1 - n) component g_n; missing
    arities at or below the bound are zero, higher ones untracked.
    """

    def __init__(self, source: LInftyAlgebra, target: DgLieAlgebra,
                 taylor, arity_bound: int):
        self.source = source
        self.target = target
        self.arity_bound = int(arity_bound)
        if self.arity_bound < 1:
            raise ValueError("arity bound must be at least 1")
        self.taylor = {}
        for n, g in taylor.items():
            n = int(n)
            if not 1 <= n <= self.arity_bound:
                raise ValueError(f"component arity {n} outside 1..{self.arity_bound}")
            if g.domain != source.space or g.codomain != target.space:
                raise ValueError(
                    f"arity-{n} component does not map source into target")
            if g.arity != n or g.degree != 1 - n:
                raise ValueError(
                    f"arity-{n} component must have arity {n} and degree {1 - n}, "
                    f"got arity {g.arity} and degree {g.degree}")
            if not g.is_zero():
                self.taylor[n] = g

    def component(self, n: int) -> MultilinearMap:
        """The arity-n component; the zero map when none is stored."""
        n = int(n)
        if not 1 <= n <= self.arity_bound:
            raise ValueError(
                f"arity {n} is not tracked (bound {self.arity_bound})")
        g = self.taylor.get(n)
        if g is not None:
            return g
        return MultilinearMap(self.source.space, self.target.space, n, 1 - n)

    def __repr__(self):
        arities = sorted(self.taylor) or ["none"]
        return (f"LInftyMorphismToDgla(components at arities {arities}, "
                f"tracked to {self.arity_bound})")


def check_morphism(m: LInftyMorphismToDgla, up_to: int) -> list:
    """Morphism relations for every arity n <= up_to.

    The arity-n relation equates half the shuffle sum of target brackets
    [g_p(...), g_(n-p)(...)], each weighted by the Koszul sign and by
    (-1)^((1-n+p)(sum of the first p input degrees - p)), plus d g_n,
    against the shuffle sum of g_(n-k+1) applied after the source arity-k
    bracket, weighted by the Koszul sign times (-1)^(n-k).
    """
    if up_to < 1:
        raise ValueError("up_to must be at least 1")
    if up_to > m.arity_bound or up_to > m.source.arity_bound:
        raise ValueError(
            f"cannot check arity {up_to}: components tracked to "
            f"{m.arity_bound}, source brackets to {m.source.arity_bound}")
    src = m.source.space
    tgt = m.target
    out = []
    for n in range(1, up_to + 1):

        def defect_at(idx, n=n):
            degs = [src.degrees[i] for i in idx]
            lhs = tgt.space.zero()
            for p in range(1, n):
                g_left = m.taylor.get(p)
                g_right = m.taylor.get(n - p)
                if g_left is None or g_right is None:
                    continue
                for sigma in enumerate_shuffles(p, n - p):
                    chi = koszul_sign(sigma, degs)
                    exponent = (1 - n + p) * (
                        sum(degs[s] for s in sigma[:p]) - p)
                    sign = chi * (-1 if exponent % 2 else 1)
                    left = g_left.evaluate_indices(tuple(idx[s] for s in sigma[:p]))
                    if left.is_zero():
                        continue
                    right = g_right.evaluate_indices(tuple(idx[s] for s in sigma[p:]))
                    if right.is_zero():
                        continue
                    lhs = lhs + tgt.bracket.evaluate([left, right]).scale(sign)
            lhs = lhs.scale(_HALF)
            g_n = m.taylor.get(n)
            if g_n is not None:
                lhs = lhs + tgt.d.apply(g_n.evaluate_indices(idx))
            rhs = tgt.space.zero()
            for k in range(1, n + 1):
                inner = m.source.brackets.get(k)
                g_out = m.taylor.get(n - k + 1)
                if inner is None or g_out is None:
                    continue
                outer_sign = -1 if (n - k) % 2 else 1
                for sigma in enumerate_shuffles(k, n - k):
                    chi = koszul_sign(sigma, degs)
                    head = inner.evaluate_indices(tuple(idx[s] for s in sigma[:k]))
                    if head.is_zero():
                        continue
                    args = [head] + [src.basis_vector(idx[s]) for s in sigma[k:]]
                    term = g_out.evaluate(args)
                    if not term.is_zero():
                        rhs = rhs + term.scale(chi * outer_sign)
            return idx, lhs - rhs

        for idx, defect in parallel_map(defect_at, canonical_tuples(src, n)):
            if not defect.is_zero():
                out.append(Violation(
                    f"morphism_relation_{n}",
                    tuple(src.labels[i] for i in idx),
                    f"defect {defect}"))
    return out


# ---------------------------------------------------------------------------
# Homotopy transfer
# ---------------------------------------------------------------------------

@dataclass
class TransferResult:
    """Minimal model on the chosen representatives plus its inclusion.

    ``minimal`` has no arity-1 operation; ``inclusion`` is an L-infinity
    morphism into the ambient algebra whose linear part embeds the
    representatives.  Both are re-verified at construction time.
    """
    algebra: DgLieAlgebra
    splitting: Splitting
    minimal: LInftyAlgebra
    inclusion: LInftyMorphismToDgla
    arity_bound: int


def _level_tables(A: DgLieAlgebra, s: Splitting, N: int):
    """Shared recursion for the inclusion and bracket tables.

    Level p evaluates, on each canonical tuple of representatives, half
    the shuffle sum of brackets of lower inclusion values; applying the
    contracting homotopy gives the arity-p inclusion component and
    applying the projection gives the arity-p bracket.  Levels run in
    order, each one read-only over the frozen lower tables.
    """
    H = s.h_space
    iota1 = MultilinearMap(H, A.space, 1, 0)
    for j in range(H.dim):
        iota1.set_entry((j,), s.iota1.apply(H.basis_vector(j)))
    iota_tables = {1: iota1}
    bracket_tables = {}
    for p in range(2, N + 1):
        iota_p = MultilinearMap(H, A.space, p, 1 - p)
        bracket_p = MultilinearMap(H, H, p, 2 - p)

        def pre_value(idx, p=p):
            degs = [H.degrees[i] for i in idx]
            all_odd = all(d % 2 for d in degs)
            total = A.space.zero()
            for k in range(1, p):
                left_table = iota_tables[k]
                right_table = iota_tables[p - k]
                if left_table.is_zero() or right_table.is_zero():
                    continue
                for sigma in enumerate_shuffles(k, p - k):
                    chi = koszul_sign(sigma, degs)
                    alpha = (1 - p + k) * (k + sum(degs[s] for s in sigma[:k]))
                    sign = chi * (-1 if alpha % 2 else 1)
                    if p == 2:
                        assert alpha % 2 == 0, \
                            "internal error: arity-2 side sign must vanish"
                    if all_odd:
                        assert sign == 1, \
                            "internal error: transfer signs must collapse " \
                            "to +1 on all-odd inputs"
                    left = left_table.evaluate_indices(
                        tuple(idx[s] for s in sigma[:k]))
                    if left.is_zero():
                        continue
                    right = right_table.evaluate_indices(
                        tuple(idx[s] for s in sigma[k:]))
                    if right.is_zero():
                        continue
                    term = A.bracket.evaluate([left, right])
                    if not term.is_zero():
                        total = total + term.scale(sign)
            return idx, total.scale(_HALF)

        for idx, value in parallel_map(pre_value, canonical_tuples(H, p)):
            if value.is_zero():
                continue
            homotopy_part = s.h.apply(value)
            if not homotopy_part.is_zero():
                iota_p.set_entry(idx, homotopy_part)
            projected = s.pi.apply(value)
            if not projected.is_zero():
                bracket_p.set_entry(idx, projected)
        iota_tables[p] = iota_p
        bracket_tables[p] = bracket_p
    return iota_tables, bracket_tables


def homotopy_transfer(A: DgLieAlgebra, s: Splitting, N: int) -> TransferResult:
    """Transfer the DGLA structure to a minimal model on representatives.

    Requires a splitting that passes verification and N >= 2.  The result
    carries the minimal L-infinity structure on the representative space
    and the inclusion morphism, both computed up to arity N and then
    re-verified: the arity-2 bracket must agree with the induced
    cohomology bracket entry by entry, and the inclusion must satisfy the
    morphism relations up to arity N.
    """
    if N < 2:
        raise ValueError("transfer needs arity bound N >= 2")
    if s.algebra is not A:
        raise ValueError("splitting belongs to a different algebra")
    problems = verify_splitting(s)
    if problems:
        details = "; ".join(v.identity for v in problems)
        raise ValueError(f"splitting fails verification: {details}")

    iota_tables, bracket_tables = _level_tables(A, s, N)
    H = s.h_space
    minimal = LInftyAlgebra(
        H, {p: op for p, op in bracket_tables.items() if not op.is_zero()}, N)
    assert minimal.is_minimal, "internal error: arity-1 bracket crept in"
    inclusion = LInftyMorphismToDgla(
        minimal, A,
        {p: op for p, op in iota_tables.items() if not op.is_zero()}, N)

    induced = cohomology(A, s).bracket
    transferred = minimal.operation(2)
    for idx in canonical_tuples(H, 2):
        if transferred.evaluate_indices(idx) != induced.evaluate_indices(idx):
            raise AssertionError(
                "internal error: transferred arity-2 bracket disagrees with "
                f"the induced cohomology bracket at "
                f"{tuple(H.labels[i] for i in idx)}")
    relation_failures = check_morphism(inclusion, N)
    if relation_failures:
        names = "; ".join(f"{v.identity} at {v.where}" for v in relation_failures)
        raise AssertionError(
            f"internal error: inclusion fails its morphism relations: {names}")
    return TransferResult(A, s, minimal, inclusion, N)


def transferred_bracket_on_classes(T: TransferResult, classes) -> Vector:
    """Evaluate the transferred bracket of the given arity on classes.

    Classes may be vectors of the representative space or basis labels.
    The arity must lie within the computed range of the transfer.
    """
    H = T.minimal.space
    vectors = []
    for c in classes:
        if isinstance(c, Vector):
            if c.space != H:
                raise ValueError("class lies outside the representative space")
            vectors.append(c)
        else:
            vectors.append(H.basis_vector(c))
    n = len(vectors)
    if not 1 <= n <= T.arity_bound:
        raise ValueError(
            f"arity {n} out of the computed range 1..{T.arity_bound}")
    if n == 1:
        return H.zero()
    return T.minimal.operation(n).evaluate(vectors)


# ---------------------------------------------------------------------------
# Sign-convention conversion
# ---------------------------------------------------------------------------

def alternate_sign_convention(L: LInftyAlgebra) -> LInftyAlgebra:
    """Rescale the arity-k bracket by (-1)^(k(k-1)/2) for every k.

    This is the involution translating between the two common sign
    conventions for the generalized Jacobi identities; applying it twice
    gives back the original structure.
    """
    converted = {}
    for k, op in L.brackets.items():
        sign = -1 if (k * (k - 1) // 2) % 2 else 1
        new_op = MultilinearMap(L.space, L.space, k, op.degree)
        for key, value in op.entries():
            new_op.set_entry(key, value.scale(sign))
        converted[k] = new_op
    return LInftyAlgebra(L.space, converted, L.arity_bound)
