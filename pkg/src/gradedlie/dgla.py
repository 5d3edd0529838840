"""Differential graded Lie algebras, splittings, and cohomology.

A splitting decomposes the underlying complex as L = H + d(K) + K with
H isomorphic to the cohomology; it induces the inclusion, the projection
onto representatives, and the contracting homotopy (minus the inverse of
the differential on d(K), extended by zero) used by homotopy transfer.

Validation never raises on mathematical failures: checkers return lists
of :class:`Violation` records naming the identity and the basis tuple
where it breaks, so callers can report precisely what went wrong.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    GradedVectorSpace, LinearMap, MultilinearMap, Vector,
    canonical_tuples, coordinates_in_span, echelon_vectors,
    enumerate_shuffles, extend_to_complement, koszul_sign, parallel_map,
    solve_dense,
)

__all__ = [
    "Violation", "DgLieAlgebra", "validate_dgla",
    "Splitting", "compute_splitting", "verify_splitting",
    "EquivariantObstruction", "find_equivariant_splitting",
    "CohomologyPresentation", "cohomology",
    "restrict_to_span",
]


@dataclass(frozen=True)
class Violation:
    """A named identity failure at a specific basis tuple."""
    identity: str
    where: tuple
    detail: str = ""

    def __str__(self):
        loc = ", ".join(self.where)
        text = f"{self.identity} fails at ({loc})"
        return f"{text}: {self.detail}" if self.detail else text


class DgLieAlgebra:
    """Finite-dimensional DGLA: basis, degree-+1 differential, binary bracket."""

    def __init__(self, space, differential: LinearMap, bracket: MultilinearMap):
        if differential.domain != space or differential.codomain != space:
            raise ValueError("differential must be an endomap of the given space")
        if differential.degree != 1:
            raise ValueError("differential must have degree +1")
        if bracket.domain != space or bracket.codomain != space:
            raise ValueError("bracket must live on the given space")
        if bracket.arity != 2 or bracket.degree != 0:
            raise ValueError("bracket must be binary of degree 0")
        self.space = space
        self.d = differential
        self.bracket = bracket

    def bracket_of(self, u: Vector, v: Vector) -> Vector:
        return self.bracket.evaluate([u, v])

    def basis_vector(self, key) -> Vector:
        return self.space.basis_vector(key)

    def __repr__(self):
        return f"DgLieAlgebra(dim {self.space.dim})"


_legal_tuples = canonical_tuples


def validate_dgla(A: DgLieAlgebra):
    """Check d^2 = 0, graded skew-symmetry, Leibniz, and Jacobi exactly."""
    space = A.space
    out = []
    for i in range(space.dim):
        v = A.d.apply(A.d.apply(space.basis_vector(i)))
        if not v.is_zero():
            out.append(Violation("d_squared", (space.labels[i],), f"d(d(.)) = {v}"))
    # skew-symmetry holds structurally for canonically stored brackets, but
    # evaluate both orders anyway so the check stays meaningful for any input
    for i in range(space.dim):
        for j in range(i, space.dim):
            ei, ej = space.basis_vector(i), space.basis_vector(j)
            sign = koszul_sign([1, 0], [space.degrees[i], space.degrees[j]])
            defect = A.bracket.evaluate([ej, ei]) - A.bracket.evaluate([ei, ej]).scale(sign)
            if not defect.is_zero():
                out.append(Violation("skew_symmetry",
                                     (space.labels[i], space.labels[j]), f"defect {defect}"))

    def leibniz_defect(pair):
        i, j = pair
        ei, ej = space.basis_vector(i), space.basis_vector(j)
        lhs = A.d.apply(A.bracket.evaluate([ei, ej]))
        rhs = A.bracket.evaluate([A.d.apply(ei), ej])
        term = A.bracket.evaluate([ei, A.d.apply(ej)])
        rhs = rhs + (term if space.degrees[i] % 2 == 0 else -term)
        return (i, j), lhs - rhs

    pairs = [idx for idx in _legal_tuples(space, 2)]
    for (i, j), defect in parallel_map(leibniz_defect, pairs):
        if not defect.is_zero():
            out.append(Violation("leibniz", (space.labels[i], space.labels[j]),
                                 f"defect {defect}"))

    def jacobi_defect(idx):
        degs = [space.degrees[i] for i in idx]
        acc = space.zero()
        for sigma in enumerate_shuffles(2, 1):
            sign = koszul_sign(sigma, degs)
            inner = A.bracket.evaluate_indices((idx[sigma[0]], idx[sigma[1]]))
            term = A.bracket.evaluate([inner, space.basis_vector(idx[sigma[2]])])
            acc = acc + term.scale(sign)
        return idx, acc

    for idx, defect in parallel_map(jacobi_defect, list(_legal_tuples(space, 3))):
        if not defect.is_zero():
            out.append(Violation("jacobi", tuple(space.labels[i] for i in idx),
                                 f"defect {defect}"))
    return out


# ---------------------------------------------------------------------------
# Splittings
# ---------------------------------------------------------------------------

def _derive_label(vec: Vector) -> str:
    if len(vec.coeffs) == 1:
        ((i, c),) = vec.coeffs.items()
        if c == 1:
            return vec.space.labels[i]
    return repr(vec)


class Splitting:
    """Decomposition L = H + d(K) + K with the three induced maps.

    ``h_space`` is the abstract copy of H carrying the representative
    labels; ``iota1`` includes it into L, ``pi`` projects L onto it along
    d(K) + K, and ``h`` is minus the inverse of d on d(K), extended by
    zero on H + K (so the homotopy convention dh + hd = iota1 pi - id holds
    with this exact sign).
    """

    def __init__(self, algebra: DgLieAlgebra, h_vectors, k_vectors):
        self.algebra = algebra
        L = algebra.space
        for v in list(h_vectors) + list(k_vectors):
            if v.space != L:
                raise ValueError("splitting vectors must live in the algebra")
            v.degree()  # raises on non-homogeneous
        order = lambda vs: sorted(range(len(vs)), key=lambda t: (vs[t].degree(), t))
        h_vectors = [h_vectors[t] for t in order(list(h_vectors))]
        k_vectors = [k_vectors[t] for t in order(list(k_vectors))]
        self.h_vectors = list(h_vectors)
        self.k_vectors = list(k_vectors)
        self.dk_vectors = [algebra.d.apply(k) for k in self.k_vectors]
        total = self.h_vectors + self.dk_vectors + self.k_vectors
        if len(total) != L.dim:
            raise ValueError(
                f"splitting has {len(total)} vectors for a dimension-{L.dim} algebra")
        rows = [v.dense() for v in total]
        from .core import rref
        if len(rref(rows)[1]) != L.dim:
            raise ValueError("H + d(K) + K do not span the algebra independently")

        self.h_space = GradedVectorSpace(
            [(_derive_label(v), v.degree()) for v in self.h_vectors])
        self.iota1 = LinearMap(self.h_space, L, 0,
                               {i: v for i, v in enumerate(self.h_vectors)})
        pi_cols, h_cols = {}, {}
        nh, nk = len(self.h_vectors), len(self.k_vectors)
        for l in range(L.dim):
            coords = coordinates_in_span(total, L.basis_vector(l))
            pi_cols[l] = Vector(self.h_space,
                                {i: coords[i] for i in range(nh)})
            h_cols[l] = L.zero()
            for j in range(nk):
                c = coords[nh + j]
                if c:
                    h_cols[l] = h_cols[l] - self.k_vectors[j].scale(c)
        self.pi = LinearMap(L, self.h_space, 0, pi_cols, check=False)
        self.h = LinearMap(L, L, -1, h_cols, check=False)

    def class_of(self, v: Vector) -> Vector:
        """Cohomology class of a cocycle, in h_space coordinates."""
        return self.pi.apply(v)

    def __repr__(self):
        return (f"Splitting(dim H = {len(self.h_vectors)}, "
                f"dim K = {len(self.k_vectors)})")


def compute_splitting(A: DgLieAlgebra) -> Splitting:
    """Deterministic splitting: lexicographically earliest choices.

    K is spanned, degree by degree, by the earliest subset of the ambient
    basis on which d stays injective and complements the cocycles; H is
    the earliest complement of the coboundaries inside the canonical
    (echelon) cocycle basis.
    """
    L = A.space
    kernel = A.d.kernel_basis()
    image = A.d.image_basis()
    h_vectors, k_vectors = [], []
    for deg in L.degrees_present():
        z_deg = [v for v in kernel if v.degree() == deg]
        b_deg = [v for v in image if v.degree() == deg]
        h_vectors.extend(extend_to_complement(z_deg, b_deg, L))
        picked_images = []
        for i in L.indices_of_degree(deg):
            di = A.d.apply(L.basis_vector(i))
            if di.is_zero():
                continue
            if len(echelon_vectors(picked_images + [di], L)) > len(picked_images):
                picked_images = echelon_vectors(picked_images + [di], L)
                k_vectors.append(L.basis_vector(i))
    return Splitting(A, h_vectors, k_vectors)


def verify_splitting(s: Splitting):
    """Check the seven contraction identities of a splitting exactly."""
    A, L, H = s.algebra, s.algebra.space, s.h_space
    ident_L = LinearMap.identity(L)
    ident_H = LinearMap.identity(H)
    checks = [
        ("d_iota", A.d.compose(s.iota1), LinearMap.zero(H, L, 1)),
        ("pi_d", s.pi.compose(A.d), LinearMap.zero(L, H, 1)),
        ("pi_iota", s.pi.compose(s.iota1), ident_H),
        ("homotopy", A.d.compose(s.h).add(s.h.compose(A.d)),
         s.iota1.compose(s.pi).add(ident_L.scale(-1))),
        ("h_iota", s.h.compose(s.iota1), LinearMap.zero(H, L, -1)),
        ("pi_h", s.pi.compose(s.h), LinearMap.zero(L, H, -1)),
        ("h_h", s.h.compose(s.h), LinearMap.zero(L, L, -2)),
    ]
    out = []
    for name, got, expected in checks:
        if got != expected:
            for i in range(got.domain.dim):
                e = got.domain.basis_vector(i)
                if got.apply(e) != expected.apply(e):
                    out.append(Violation(f"contraction:{name}",
                                         (got.domain.labels[i],),
                                         f"got {got.apply(e)}, expected {expected.apply(e)}"))
    return out


# ---------------------------------------------------------------------------
# Equivariant splittings
# ---------------------------------------------------------------------------

@dataclass
class EquivariantObstruction:
    """Certificate that no invariant splitting exists for the fixed flag."""
    degree: int
    n_equations: int
    n_unknowns: int
    message: str
    action_label: str = ""
    vector: Vector | None = None
    image: Vector | None = None

    def describe(self) -> str:
        text = (f"no invariant complement in degree {self.degree}: "
                f"the {self.n_equations} retraction equations in "
                f"{self.n_unknowns} unknowns are unsatisfiable")
        if self.vector is not None:
            text += (f"; every complement contains {self.vector} up to "
                     f"coboundaries, and [{self.action_label}, {self.vector}] = "
                     f"{self.image} is a coboundary moved by no such shift")
        return text


def _solve_retraction(m, targets, action_on_sources, action_on_targets):
    """Equivariant retraction q with q(targets_j) = e_j, as a matrix, or None.

    ``m``: dimension of the ambient coordinate system; ``targets``:
    coordinates (length-m lists) of the subspace basis inside it;
    ``action_on_sources``: per action generator, the matrix of the action
    in ambient coordinates (entry [i][j] = coefficient i of the action on
    basis element j); ``action_on_targets``: same in target coordinates.
    Unknowns are the entries of the (t x m) matrix Q.
    """
    nt = len(targets)
    nvars = nt * m
    rows, rhs = [], []

    def var(b, z):
        return b * m + z

    for j, tgt in enumerate(targets):
        for b in range(nt):
            row = [0] * nvars
            for z in range(m):
                row[var(b, z)] = tgt[z]
            rows.append([c for c in row])
            rhs.append(1 if b == j else 0)
    for M_src, M_tgt in zip(action_on_sources, action_on_targets):
        for z in range(m):
            for b in range(nt):
                row = [0] * nvars
                for zz in range(m):
                    row[var(b, zz)] = row[var(b, zz)] + M_src[zz][z]
                for bb in range(nt):
                    row[var(bb, z)] = row[var(bb, z)] - M_tgt[b][bb]
                rows.append(row)
                rhs.append(0)
    solution, _ = solve_dense(rows, rhs)
    if solution is None:
        return None
    return [[solution[var(b, z)] for z in range(m)] for b in range(nt)]


def find_equivariant_splitting(A: DgLieAlgebra, h0_vectors):
    """Search for a splitting whose pieces are stable under the given action.

    The flag (coboundaries inside cocycles inside everything) is fixed;
    the search is the linear problem for action-equivariant retractions
    onto each flag step, solved degree by degree.  Returns a
    :class:`Splitting` or an :class:`EquivariantObstruction`.
    """
    L = A.space
    h0_vectors = list(h0_vectors)
    for g in h0_vectors:
        if g.degree() not in (0, None):
            raise ValueError("action generators must have degree 0")
        if not A.d.apply(g).is_zero():
            raise ValueError(f"action generator {g} is not a cocycle")
    for g in h0_vectors:
        for g2 in h0_vectors:
            w = A.bracket_of(g, g2)
            if coordinates_in_span(h0_vectors, w) is None:
                raise ValueError(
                    f"degree-0 part is not closed under the bracket: [{g}, {g2}] = {w}")

    canonical = compute_splitting(A)
    if not h0_vectors:
        return canonical
    if _splitting_is_invariant(A, canonical, h0_vectors):
        return canonical

    kernel = A.d.kernel_basis()
    image = A.d.image_basis()
    h_vectors, k_vectors = [], []
    for deg in L.degrees_present():
        basis_idx = L.indices_of_degree(deg)
        l_vecs = [L.basis_vector(i) for i in basis_idx]
        z_vecs = [v for v in kernel if v.degree() == deg]
        b_vecs = [v for v in image if v.degree() == deg]

        # complement of the coboundaries inside the cocycles
        if deg == 0:
            given = [g for g in h0_vectors]
            stack = b_vecs + given
            from .core import rref
            independent = len(rref([v.dense() for v in stack])[1]) == len(stack) if stack else True
            if not independent or len(stack) != len(z_vecs):
                raise ValueError(
                    "the degree-0 generators do not span a complement of the "
                    "coboundaries inside the degree-0 cocycles")
            h_vectors.extend(given)
        elif b_vecs and z_vecs:
            z_coords = lambda w: coordinates_in_span(z_vecs, w)
            targets = [z_coords(b) for b in b_vecs]
            act_src, act_tgt = [], []
            for g in h0_vectors:
                src = [z_coords(A.bracket_of(g, z)) for z in z_vecs]
                tgt = [coordinates_in_span(b_vecs, A.bracket_of(g, b)) for b in b_vecs]
                if any(c is None for c in src) or any(c is None for c in tgt):
                    raise ValueError("the action does not preserve the flag; "
                                     "is the input a valid algebra?")
                act_src.append([[src[z][zz] for z in range(len(z_vecs))]
                                for zz in range(len(z_vecs))])
                act_tgt.append([[tgt[b][bb] for b in range(len(b_vecs))]
                                for bb in range(len(b_vecs))])
            Q = _solve_retraction(len(z_vecs), targets, act_src, act_tgt)
            if Q is None:
                return _build_obstruction(A, h0_vectors, deg, z_vecs, b_vecs)
            from .core import kernel_vectors as _kv
            for coords in _kv([[Q[b][z] for z in range(len(z_vecs))]
                               for b in range(len(b_vecs))], len(z_vecs)):
                vec = L.zero()
                for z, c in enumerate(coords):
                    if c:
                        vec = vec + z_vecs[z].scale(c)
                h_vectors.append(vec)
        else:
            h_vectors.extend(z_vecs)

        # complement of the cocycles inside the degree component
        if z_vecs and len(z_vecs) < len(l_vecs):
            l_coords = lambda w: [w.coeffs.get(i, 0) for i in basis_idx]
            targets = [l_coords(z) for z in z_vecs]
            act_src, act_tgt = [], []
            for g in h0_vectors:
                src_imgs = [A.bracket_of(g, v) for v in l_vecs]
                tgt_imgs = [coordinates_in_span(z_vecs, A.bracket_of(g, z)) for z in z_vecs]
                if any(c is None for c in tgt_imgs):
                    raise ValueError("the action does not preserve the cocycles")
                act_src.append([[img.coeffs.get(basis_idx[zz], 0) for img in src_imgs]
                                for zz in range(len(l_vecs))])
                act_tgt.append([[tgt_imgs[b][bb] for b in range(len(z_vecs))]
                                for bb in range(len(z_vecs))])
            P = _solve_retraction(len(l_vecs), targets, act_src, act_tgt)
            if P is None:
                return EquivariantObstruction(
                    degree=deg,
                    n_equations=len(z_vecs) * (len(z_vecs) + len(l_vecs) * len(h0_vectors)),
                    n_unknowns=len(z_vecs) * len(l_vecs),
                    message=("no invariant complement of the cocycles in degree "
                             f"{deg}"))
            from .core import kernel_vectors as _kv
            for coords in _kv([[P[z][l] for l in range(len(l_vecs))]
                               for z in range(len(z_vecs))], len(l_vecs)):
                vec = L.zero()
                for l, c in enumerate(coords):
                    if c:
                        vec = vec + l_vecs[l].scale(c)
                k_vectors.append(vec)
        elif not z_vecs:
            k_vectors.extend(l_vecs)

    splitting = Splitting(A, h_vectors, k_vectors)
    for g in h0_vectors:
        for name, vecs in (("representatives", splitting.h_vectors),
                           ("complement", splitting.k_vectors)):
            for v in vecs:
                w = A.bracket_of(g, v)
                if not w.is_zero() and coordinates_in_span(
                        [u for u in vecs if u.degree() == w.degree()], w) is None:
                    raise AssertionError(
                        f"internal error: solved {name} not invariant at {v}")
    return splitting


def _splitting_is_invariant(A, s: Splitting, h0_vectors) -> bool:
    """True when H, K, and span(h0) = H0 are all stable under ad(h0)."""
    h0_deg = [v for v in s.h_vectors if v.degree() == 0]
    if len(h0_vectors) != len(h0_deg):
        return False
    stack = [v.dense() for v in h0_vectors] + [v.dense() for v in h0_deg]
    from .core import rref
    if len(rref(stack)[1]) != len(h0_vectors):
        return False
    for g in h0_vectors:
        for vecs in (s.h_vectors, s.k_vectors):
            for v in vecs:
                w = A.bracket_of(g, v)
                if w.is_zero():
                    continue
                same_degree = [u for u in vecs if u.degree() == w.degree()]
                if coordinates_in_span(same_degree, w) is None:
                    return False
    return True


def _build_obstruction(A, h0_vectors, deg, z_vecs, b_vecs):
    """Scan the relaxed solution family for a one-parameter obstruction."""
    L = A.space
    n_eq = len(b_vecs) * (len(b_vecs) + len(z_vecs) * len(h0_vectors))
    n_un = len(b_vecs) * len(z_vecs)
    lex_h = extend_to_complement(z_vecs, b_vecs, L)
    for g in h0_vectors:
        if any(not A.bracket_of(g, b).is_zero() for b in b_vecs):
            continue
        for v in lex_h:
            w = A.bracket_of(g, v)
            if w.is_zero():
                continue
            coords = coordinates_in_span(lex_h + b_vecs, w)
            if coords is None:
                continue
            # sound only when the image is a pure (nonzero) coboundary: any
            # invariant complement contains v up to a coboundary shift, and
            # the action sends that element to w regardless of the shift,
            # so w would have to be a nonzero coboundary inside the
            # complement -- impossible.
            h_part_zero = all(not c for c in coords[:len(lex_h)])
            b_part = L.zero()
            for j, c in enumerate(coords[len(lex_h):]):
                if c:
                    b_part = b_part + b_vecs[j].scale(c)
            if h_part_zero and not b_part.is_zero():
                return EquivariantObstruction(
                    degree=deg, n_equations=n_eq, n_unknowns=n_un,
                    message=(f"no invariant complement of the coboundaries in "
                             f"degree {deg}"),
                    action_label=repr(g), vector=v, image=w)
    return EquivariantObstruction(
        degree=deg, n_equations=n_eq, n_unknowns=n_un,
        message=f"no invariant complement of the coboundaries in degree {deg}")


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------

@dataclass
class CohomologyPresentation:
    """Cohomology of a DGLA presented on chosen representatives."""
    space: GradedVectorSpace
    representatives: list
    bracket: MultilinearMap
    dims: dict
    violations: list = field(default_factory=list)


def cohomology(A: DgLieAlgebra, splitting: Splitting | None = None) -> CohomologyPresentation:
    """Cohomology with its induced graded Lie bracket, re-verified.

    The induced bracket of two representatives is the projection of their
    bracket in the big algebra; the Jacobi identity for it is re-checked
    on the nose rather than assumed.
    """
    s = splitting if splitting is not None else compute_splitting(A)
    H = s.h_space
    bracket = MultilinearMap(H, H, 2, 0)
    for idx in _legal_tuples(H, 2):
        value = s.pi.apply(A.bracket_of(s.h_vectors[idx[0]], s.h_vectors[idx[1]]))
        if not value.is_zero():
            bracket.set_entry(idx, value)
    violations = []
    for idx in _legal_tuples(H, 3):
        degs = [H.degrees[i] for i in idx]
        acc = H.zero()
        for sigma in enumerate_shuffles(2, 1):
            sign = koszul_sign(sigma, degs)
            inner = bracket.evaluate_indices((idx[sigma[0]], idx[sigma[1]]))
            acc = acc + bracket.evaluate([inner, H.basis_vector(idx[sigma[2]])]).scale(sign)
        if not acc.is_zero():
            violations.append(Violation("jacobi_induced",
                                        tuple(H.labels[i] for i in idx), f"defect {acc}"))
    dims = {}
    for deg in H.degrees_present():
        dims[deg] = len(H.indices_of_degree(deg))
    return CohomologyPresentation(H, list(s.h_vectors), bracket, dims, violations)


# ---------------------------------------------------------------------------
# Subalgebra restriction
# ---------------------------------------------------------------------------

def restrict_to_span(A: DgLieAlgebra, vectors) -> tuple:
    """Restrict the algebra to the span of the given homogeneous vectors.

    The span must be closed under the differential and the bracket (a
    ValueError names the offending product otherwise).  Returns the
    restricted algebra and the embedding of its space into the original.
    """
    vectors = list(vectors)
    sub = GradedVectorSpace([(_derive_label(v), v.degree()) for v in vectors])

    def pull(w, context):
        coords = coordinates_in_span(vectors, w)
        if coords is None:
            raise ValueError(f"span is not closed: {context} = {w} escapes")
        return Vector(sub, {i: c for i, c in enumerate(coords) if c})

    d_cols = {i: pull(A.d.apply(v), f"d({sub.labels[i]})")
              for i, v in enumerate(vectors)}
    d_sub = LinearMap(sub, sub, 1, d_cols)
    bracket_sub = MultilinearMap(sub, sub, 2, 0)
    for idx in _legal_tuples(sub, 2):
        w = A.bracket_of(vectors[idx[0]], vectors[idx[1]])
        if not w.is_zero():
            bracket_sub.set_entry(
                idx, pull(w, f"[{sub.labels[idx[0]]}, {sub.labels[idx[1]]}]"))
    embed = LinearMap(sub, A.space, 0, {i: v for i, v in enumerate(vectors)})
    return DgLieAlgebra(sub, d_sub, bracket_sub), embed
