"""Invariant pairings on graded Lie algebras.

A pairing here is a graded-symmetric bilinear form of fixed total degree
that is compatible with the differential (closed) and with the bracket
(cyclic).  Strictly cyclic means non-degenerate on the whole algebra;
quasi-cyclic only demands non-degeneracy of the induced form on
cohomology.  The module also provides the symplectic-representation
constructor for degree-2 instances with zero differential, and the
normalization that replaces the complement K of a splitting by one
orthogonal to the representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    GradedVectorSpace, LinearMap, MultilinearMap, Scalar, Vector, as_scalar,
    coordinates_in_span, kernel_vectors, rref,
)
from .dgla import (
    DgLieAlgebra, Splitting, Violation, compute_splitting, restrict_to_span,
    verify_splitting,
)

__all__ = [
    "CyclicPairing", "QuasiCyclicDgla", "PairingReport", "validate_pairing",
    "SymplecticRepresentation", "from_symplectic_representation",
    "maurer_cartan_functional", "NormalizationError", "NormalizedSplitting",
    "normalize_splitting",
]

_ZERO = Scalar(0)


class CyclicPairing:
    """Sparse graded-symmetric bilinear form of total degree ``degree``.

    Entries live on canonical index pairs (i <= j); an entry given on
    (j, i) is folded in with the graded-symmetry sign (-1)^{|i||j|}.
    A nonzero value is legal only when deg(i) + deg(j) equals the form's
    degree, and never on an odd diagonal (where symmetry forces 0).
    Conflicting assignments raise immediately.
    """

    def __init__(self, space: GradedVectorSpace, degree: int, entries=None):
        self.space = space
        self.degree = degree
        self.table = {}
        if entries:
            items = entries.items() if hasattr(entries, "items") else entries
            for key, value in items:
                self.set_entry(key, value)

    def _resolve(self, key):
        i, j = key
        if not isinstance(i, int):
            i = self.space.index(i)
        if not isinstance(j, int):
            j = self.space.index(j)
        return i, j

    def set_entry(self, key, value):
        i, j = self._resolve(key)
        value = as_scalar(value)
        di, dj = self.space.degrees[i], self.space.degrees[j]
        sign = 1
        if i > j:
            i, j, sign = j, i, -1 if (di % 2 and dj % 2) else 1
        value = value * sign
        if value == 0:
            return
        if i == j and di % 2:
            raise ValueError(
                f"({self.space.labels[i]}, {self.space.labels[i]}) is forced to 0 "
                "in odd degree")
        if di + dj != self.degree:
            raise ValueError(
                f"entry ({self.space.labels[i]}, {self.space.labels[j]}) has degree "
                f"{di + dj}, form has degree {self.degree}")
        old = self.table.get((i, j))
        if old is not None and old != value:
            raise ValueError(
                f"conflicting values for ({self.space.labels[i]}, "
                f"{self.space.labels[j]}): {old} vs {value}")
        self.table[(i, j)] = value

    def value_indices(self, i: int, j: int) -> Scalar:
        if i > j:
            di, dj = self.space.degrees[i], self.space.degrees[j]
            sign = -1 if (di % 2 and dj % 2) else 1
            return self.table.get((j, i), _ZERO) * sign
        return self.table.get((i, j), _ZERO)

    def evaluate(self, u: Vector, v: Vector) -> Scalar:
        total = _ZERO
        for i, cu in u.coeffs.items():
            for j, cv in v.coeffs.items():
                val = self.value_indices(i, j)
                if val:
                    total += cu * cv * val
        return total

    def gram_rows(self):
        n = self.space.dim
        return [[self.value_indices(i, j) for j in range(n)] for i in range(n)]

    def rank(self) -> int:
        return len(rref(self.gram_rows())[1])

    def entries(self):
        return sorted(self.table.items())

    def __repr__(self):
        return f"CyclicPairing(degree {self.degree}, {len(self.table)} entries)"


class QuasiCyclicDgla:
    """A DG-Lie algebra bundled with a candidate invariant pairing.

    Whether the pairing actually is cyclic / quasi-cyclic is a computed
    classification: run :func:`validate_pairing` and read the flags.
    """

    def __init__(self, algebra: DgLieAlgebra, pairing: CyclicPairing):
        if pairing.space != algebra.space:
            raise ValueError("pairing and algebra must share one space")
        self.algebra = algebra
        self.pairing = pairing
        self.report = None

    @property
    def space(self):
        return self.algebra.space

    def __repr__(self):
        return (f"QuasiCyclicDgla(dim {self.space.dim}, "
                f"pairing degree {self.pairing.degree})")


@dataclass
class PairingReport:
    """Outcome of pairing validation, with the three classification flags."""
    degree: int
    cyclic_on_L: bool
    nondegenerate_on_L: bool
    nondegenerate_on_H: bool
    rank_on_L: int
    rank_on_H: int
    dim_h: int
    violations: list = field(default_factory=list)

    @property
    def is_cyclic(self) -> bool:
        return self.cyclic_on_L and self.nondegenerate_on_L

    @property
    def is_quasi_cyclic(self) -> bool:
        return self.cyclic_on_L and self.nondegenerate_on_H

    def status(self) -> str:
        if self.is_cyclic:
            return f"cyclic of degree {self.degree}"
        if self.is_quasi_cyclic:
            return f"quasi-cyclic of degree {self.degree}"
        return "not quasi-cyclic"


def validate_pairing(Q: QuasiCyclicDgla, splitting: Splitting | None = None) -> PairingReport:
    """Check symmetry, closedness, and cyclicity; classify non-degeneracy.

    All identities are evaluated exactly on basis tuples; failures are
    collected as violations, never raised.  The induced form on
    cohomology uses the given splitting's representatives (a canonical
    splitting is computed when none is supplied).
    """
    A, form = Q.algebra, Q.pairing
    space = A.space
    out = []
    for (i, j), value in form.entries():
        if space.degrees[i] + space.degrees[j] != form.degree:
            out.append(Violation("pairing_degree",
                                 (space.labels[i], space.labels[j]),
                                 f"entry of wrong total degree holds {value}"))
    for i in range(space.dim):
        for j in range(space.dim):
            sign = -1 if (space.degrees[i] % 2 and space.degrees[j] % 2) else 1
            defect = form.value_indices(i, j) - sign * form.value_indices(j, i)
            if defect:
                out.append(Violation("pairing_symmetric",
                                     (space.labels[i], space.labels[j]),
                                     f"defect {defect}"))
    for i in range(space.dim):
        ei = space.basis_vector(i)
        dei = A.d.apply(ei)
        for j in range(space.dim):
            ej = space.basis_vector(j)
            sign = (-1) ** (space.degrees[i] + 1)
            defect = form.evaluate(dei, ej) - sign * form.evaluate(ei, A.d.apply(ej))
            if defect:
                out.append(Violation("pairing_closed",
                                     (space.labels[i], space.labels[j]),
                                     f"defect {defect}"))
    for i in range(space.dim):
        ei = space.basis_vector(i)
        for j in range(space.dim):
            ej = space.basis_vector(j)
            left = A.bracket.evaluate([ei, ej])
            for k in range(space.dim):
                ek = space.basis_vector(k)
                defect = form.evaluate(left, ek) - form.evaluate(ei, A.bracket.evaluate([ej, ek]))
                if defect:
                    out.append(Violation(
                        "pairing_cyclic",
                        (space.labels[i], space.labels[j], space.labels[k]),
                        f"defect {defect}"))

    s = splitting if splitting is not None else compute_splitting(A)
    reps = s.h_vectors
    induced = [[form.evaluate(u, v) for v in reps] for u in reps]
    rank_h = len(rref(induced)[1]) if reps else 0
    rank_l = form.rank()

    # consequences of closedness, asserted against the splitting
    for k in s.k_vectors:
        dk = A.d.apply(k)
        for x in reps:
            if form.evaluate(x, dk):
                out.append(Violation("orthogonality_H_dK",
                                     (repr(x), repr(dk)), "nonzero pairing"))
        for k2 in s.k_vectors:
            if form.evaluate(dk, A.d.apply(k2)):
                out.append(Violation("orthogonality_dK_dK",
                                     (repr(dk), repr(k2)), "nonzero pairing"))

    clean = not any(v.identity.startswith("pairing_") for v in out)
    report = PairingReport(
        degree=form.degree,
        cyclic_on_L=clean,
        nondegenerate_on_L=(rank_l == space.dim),
        nondegenerate_on_H=(rank_h == len(reps)),
        rank_on_L=rank_l,
        rank_on_H=rank_h,
        dim_h=len(reps),
        violations=out,
    )
    Q.report = report
    return report


# ---------------------------------------------------------------------------
# Symplectic representations
# ---------------------------------------------------------------------------

class SymplecticRepresentation:
    """A Lie algebra acting on a skew-paired space.

    ``lie_brackets`` maps ordered label pairs to expansion dicts for the
    degree-0 Lie algebra; ``actions`` maps each Lie label to the matrix of
    its action (entry [i][j] = coefficient of v_i in the action on v_j);
    ``omega`` is the skew Gram matrix on the v-basis.
    """

    def __init__(self, lie_labels, lie_brackets, v_labels, actions, omega):
        self.lie_space = GradedVectorSpace([(l, 0) for l in lie_labels])
        self.lie_bracket = MultilinearMap(self.lie_space, self.lie_space, 2, 0)
        for (l1, l2), expansion in lie_brackets.items():
            value = self.lie_space.vector(
                {lbl: as_scalar(c) for lbl, c in expansion.items()})
            if not value.is_zero():
                self.lie_bracket.set_entry((l1, l2), value)
        self.v_labels = list(v_labels)
        m = len(self.v_labels)
        self.actions = {g: [[as_scalar(c) for c in row] for row in mat]
                        for g, mat in actions.items()}
        for g in lie_labels:
            mat = self.actions.setdefault(g, [[_ZERO] * m for _ in range(m)])
            if len(mat) != m or any(len(row) != m for row in mat):
                raise ValueError(f"action matrix for {g} is not {m} x {m}")
        self.omega = [[as_scalar(c) for c in row] for row in omega]
        if len(self.omega) != m or any(len(row) != m for row in self.omega):
            raise ValueError(f"omega is not {m} x {m}")

    def validate(self):
        """Exact checks: omega shape, Lie axioms, action property, symplectic."""
        out = []
        m = len(self.v_labels)
        for i in range(m):
            for j in range(m):
                if self.omega[i][j] + self.omega[j][i]:
                    out.append(Violation("omega_skew",
                                         (self.v_labels[i], self.v_labels[j]),
                                         f"defect {self.omega[i][j] + self.omega[j][i]}"))
        if len(rref(self.omega)[1]) != m:
            out.append(Violation("omega_nondegenerate", tuple(self.v_labels),
                                 f"rank {len(rref(self.omega)[1])} < {m}"))
        glabels = self.lie_space.labels
        for a in glabels:
            for b in glabels:
                for c in glabels:
                    acc = self.lie_space.zero()
                    for x, y, z, sgn in ((a, b, c, 1), (b, c, a, 1), (c, a, b, 1)):
                        inner = self.lie_bracket.evaluate(
                            [self.lie_space.basis_vector(x), self.lie_space.basis_vector(y)])
                        acc = acc + self.lie_bracket.evaluate(
                            [inner, self.lie_space.basis_vector(z)]).scale(sgn)
                    if not acc.is_zero():
                        out.append(Violation("lie_jacobi", (a, b, c), f"defect {acc}"))
        for a in glabels:
            for b in glabels:
                bracket_vec = self.lie_bracket.evaluate(
                    [self.lie_space.basis_vector(a), self.lie_space.basis_vector(b)])
                expected = _mat_sub(_mat_mul(self.actions[a], self.actions[b]),
                                    _mat_mul(self.actions[b], self.actions[a]))
                got = [[_ZERO] * m for _ in range(m)]
                for idx, coeff in bracket_vec.coeffs.items():
                    mat = self.actions[glabels[idx]]
                    got = [[got[i][j] + coeff * mat[i][j] for j in range(m)]
                           for i in range(m)]
                if got != expected:
                    out.append(Violation("lie_action", (a, b),
                                         "commutator of actions differs from the "
                                         "action of the bracket"))
        for g in glabels:
            defect = _mat_add(_mat_mul(_transpose(self.actions[g]), self.omega),
                              _mat_mul(self.omega, self.actions[g]))
            if any(any(row) for row in defect):
                out.append(Violation("symplectic_condition", (g,),
                                     "action does not infinitesimally preserve omega"))
        return out


def _mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m)), _ZERO)
             for j in range(p)] for i in range(n)]


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def from_symplectic_representation(R: SymplecticRepresentation) -> QuasiCyclicDgla:
    """Degree-2 instance with zero differential from an acting Lie algebra.

    Degree 0 carries the Lie algebra, degree 1 the paired space, degree 2
    the dual of the Lie algebra; brackets are the action, the
    omega-valued product on degree 1, and the coadjoint action.  The
    output is built unconditionally: when the action fails the symplectic
    condition the construction still succeeds and validate_pairing
    reports exactly the cyclicity failures.
    """
    glabels = list(R.lie_space.labels)
    m = len(R.v_labels)
    dual = [f"{g}^" for g in glabels]
    space = GradedVectorSpace(
        [(g, 0) for g in glabels]
        + [(v, 1) for v in R.v_labels]
        + [(y, 2) for y in dual])
    bracket = MultilinearMap(space, space, 2, 0)
    for a_idx, a in enumerate(glabels):
        for b_idx in range(a_idx + 1, len(glabels)):
            b = glabels[b_idx]
            vec = R.lie_bracket.evaluate(
                [R.lie_space.basis_vector(a), R.lie_space.basis_vector(b)])
            if not vec.is_zero():
                bracket.set_entry((a, b), space.vector(
                    {glabels[i]: c for i, c in vec.coeffs.items()}))
    for g in glabels:
        mat = R.actions[g]
        for j, v in enumerate(R.v_labels):
            img = space.vector({R.v_labels[i]: mat[i][j]
                                for i in range(m) if mat[i][j]})
            if not img.is_zero():
                bracket.set_entry((g, v), img)
    for i in range(m):
        for j in range(i, m):
            coeffs = {}
            for k, g in enumerate(glabels):
                val = sum((R.actions[g][t][i] * R.omega[t][j] for t in range(m)),
                          _ZERO)
                if val:
                    coeffs[dual[k]] = val
            if coeffs:
                bracket.set_entry((R.v_labels[i], R.v_labels[j]),
                                  space.vector(coeffs))
    for g_idx, g in enumerate(glabels):
        for k, y in enumerate(dual):
            coeffs = {}
            for h_idx, h in enumerate(glabels):
                vec = R.lie_bracket.evaluate(
                    [R.lie_space.basis_vector(h), R.lie_space.basis_vector(g)])
                c = vec.coefficient(k)
                if c:
                    coeffs[h] = c
            if coeffs:
                bracket.set_entry((g, y), space.vector(coeffs))
    pairing = CyclicPairing(space, 2)
    for i, g in enumerate(glabels):
        pairing.set_entry((g, dual[i]), 1)
    for i in range(m):
        for j in range(i + 1, m):
            if R.omega[i][j]:
                pairing.set_entry((R.v_labels[i], R.v_labels[j]), R.omega[i][j])
    algebra = DgLieAlgebra(space, LinearMap.zero(space, space, 1), bracket)
    return QuasiCyclicDgla(algebra, pairing)


def maurer_cartan_functional(Q, v: Vector) -> Vector:
    """Half the self-bracket of a degree-1 vector (the moment map on
    symplectic-representation instances)."""
    A = Q.algebra if isinstance(Q, QuasiCyclicDgla) else Q
    if not v.is_zero() and v.degree() != 1:
        raise ValueError(f"expected a degree-1 vector, got degree {v.degree()}")
    return A.bracket.evaluate([v, v]).scale(Scalar(1, 2))


# ---------------------------------------------------------------------------
# Orthogonal normalization of splittings
# ---------------------------------------------------------------------------

class NormalizationError(ValueError):
    """A precondition or orthogonalization step failed, with witnesses."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


@dataclass
class NormalizedSplitting:
    """Result of normalization; the algebra may be a restriction of the input."""
    quasi: QuasiCyclicDgla
    splitting: Splitting
    restricted: bool
    invariant_all_degrees: bool
    notes: list = field(default_factory=list)


def _invariance_violations(A, h0_vectors, h_vectors, k_vectors, positive_only):
    out = []
    for g in h0_vectors:
        for name, vecs in (("H", h_vectors), ("K", k_vectors)):
            for v in vecs:
                deg = v.degree()
                if positive_only and deg <= 0:
                    continue
                w = A.bracket_of(g, v)
                if w.is_zero():
                    continue
                same = [u for u in vecs if u.degree() == w.degree()]
                if coordinates_in_span(same, w) is None:
                    out.append(Violation(
                        f"invariance_{name}", (repr(g), repr(v)),
                        f"[{g}, {v}] = {w} escapes {name}^{deg}"))
    return out


def normalize_splitting(Q: QuasiCyclicDgla, s: Splitting, h0_vectors=None) -> NormalizedSplitting:
    """Replace K by the complement orthogonal to the representatives.

    Preconditions (checked, with witnesses): no representatives in
    negative degree; the degree-0 representatives close under the
    bracket; H and K are stable under their adjoint action in positive
    degrees.  When the ambient algebra has negative-degree elements it is
    first cut down to the quasi-isomorphic subalgebra spanned by the
    degree-0 representatives and everything in positive degrees.  Then
    each K^i is replaced by C^i = {x in H^i + K^i : (x, H^{n-i}) = 0};
    the exchange is an isomorphism exactly when the representative
    pairing is perfect, and failure is reported as such.
    """
    A, form = Q.algebra, Q.pairing
    n = form.degree
    h0 = list(h0_vectors) if h0_vectors is not None else [
        v for v in s.h_vectors if v.degree() == 0]

    pre = []
    for v in s.h_vectors:
        if v.degree() < 0:
            pre.append(Violation("H_nonnegative", (repr(v),),
                                 f"representative in degree {v.degree()}"))
    for g in h0:
        for g2 in h0:
            w = A.bracket_of(g, g2)
            if not w.is_zero() and coordinates_in_span(h0, w) is None:
                pre.append(Violation("H0_closed", (repr(g), repr(g2)),
                                     f"[{g}, {g2}] = {w} escapes H^0"))
    pre.extend(_invariance_violations(A, h0, s.h_vectors, s.k_vectors,
                                      positive_only=True))
    if pre:
        raise NormalizationError(
            "splitting does not satisfy the normalization preconditions", pre)

    notes = []
    restricted = False
    if min(A.space.degrees_present()) < 0:
        span = list(h0)
        span += [v for v in s.h_vectors if v.degree() > 0]
        span += [v for v in s.k_vectors if v.degree() > 0]
        span += [A.d.apply(v) for v in s.k_vectors if v.degree() > 0]
        sub, embed = restrict_to_span(A, span)
        sub_form = CyclicPairing(sub.space, n)
        for i in range(sub.space.dim):
            for j in range(i, sub.space.dim):
                val = form.evaluate(embed.apply(sub.space.basis_vector(i)),
                                    embed.apply(sub.space.basis_vector(j)))
                if val:
                    sub_form.set_entry((i, j), val)

        def pull(vec):
            coords = coordinates_in_span(span, vec)
            return Vector(sub.space, {i: c for i, c in enumerate(coords) if c})

        h_new = [pull(v) for v in h0] + [pull(v) for v in s.h_vectors
                                         if v.degree() > 0]
        k_new = [pull(v) for v in s.k_vectors if v.degree() > 0]
        Q = QuasiCyclicDgla(sub, sub_form)
        A, form = sub, sub_form
        s = Splitting(A, h_new, k_new)
        h0 = [v for v in s.h_vectors if v.degree() == 0]
        restricted = True
        notes.append(f"restricted to a subalgebra of dimension {sub.space.dim}")

    h_by_deg = {}
    for v in s.h_vectors:
        h_by_deg.setdefault(v.degree(), []).append(v)
    new_k = []
    for deg in sorted({v.degree() for v in s.k_vectors}):
        h_deg = h_by_deg.get(deg, [])
        k_deg = [v for v in s.k_vectors if v.degree() == deg]
        mixed = h_deg + k_deg
        duals = h_by_deg.get(n - deg, [])
        rows = [[form.evaluate(x, y) for x in mixed] for y in duals]
        c_vecs = []
        for coords in kernel_vectors(rows, len(mixed)) if rows else [
                [Scalar(int(i == t)) for i in range(len(mixed))]
                for t in range(len(mixed))]:
            vec = A.space.zero()
            for t, c in enumerate(coords):
                if c:
                    vec = vec + mixed[t].scale(c)
            c_vecs.append(vec)
        if len(c_vecs) != len(k_deg):
            raise NormalizationError(
                f"H^{deg} + C^{deg} -> H^{deg} + K^{deg} is not an isomorphism "
                f"(the representative pairing with degree {n - deg} is not perfect)")
        stack = [v.dense() for v in h_deg + c_vecs]
        if len(rref(stack)[1]) != len(stack):
            raise NormalizationError(
                f"H^{deg} + C^{deg} -> H^{deg} + K^{deg} is not an isomorphism")
        new_k.extend(c_vecs)

    result = Splitting(A, list(s.h_vectors), new_k)
    post = verify_splitting(result)
    for x in result.h_vectors:
        for k in result.k_vectors:
            if form.evaluate(x, k):
                post.append(Violation("H_perp_K", (repr(x), repr(k)),
                                      f"pairing {form.evaluate(x, k)}"))
    # the projection is pairing-adjoint to the inclusion, and the homotopy
    # image is orthogonal to the representatives
    for l in range(A.space.dim):
        el = A.space.basis_vector(l)
        for i, x in enumerate(result.h_vectors):
            if form.evaluate(result.h.apply(el), x):
                post.append(Violation("h_perp_H", (A.space.labels[l], repr(x)),
                                      "homotopy image meets a representative"))
            lhs = sum((c * form.evaluate(result.h_vectors[t], x)
                       for t, c in result.pi.apply(el).coeffs.items()), _ZERO)
            if lhs != form.evaluate(el, x):
                post.append(Violation("pi_adjoint", (A.space.labels[l], repr(x)),
                                      f"{lhs} != {form.evaluate(el, x)}"))
    # x in K + d(K)  iff  x is orthogonal to every representative: containment
    # one way, dimension count for the converse
    kdk = result.k_vectors + result.dk_vectors
    if result.h_vectors:
        constraint = [[form.evaluate(A.space.basis_vector(i), x)
                       for i in range(A.space.dim)] for x in result.h_vectors]
        perp_dim = A.space.dim - len(rref(constraint)[1])
        if perp_dim != len(kdk):
            post.append(Violation("orthogonal_complement", ("dim",),
                                  f"perp of H has dimension {perp_dim}, "
                                  f"K + d(K) has {len(kdk)}"))
        for v in kdk:
            for x in result.h_vectors:
                if form.evaluate(v, x):
                    post.append(Violation("orthogonal_complement",
                                          (repr(v), repr(x)), "not orthogonal"))
    if post:
        raise NormalizationError(
            "orthogonalized splitting failed its own consistency checks "
            "(is the pairing actually closed and cyclic?)", post)

    all_deg = not _invariance_violations(A, h0, result.h_vectors,
                                         result.k_vectors, positive_only=False)
    return NormalizedSplitting(Q, result, restricted, all_deg, notes)
