"""Exact graded linear algebra over the rationals.

Graded vector spaces with a distinguished ordered basis, homogeneous
linear and multilinear maps stored as sparse tables, Koszul signs,
shuffle permutations, and dense Gaussian elimination for the small
exact systems solved elsewhere in the library.

Scalars are ``fractions.Fraction`` throughout: every denominator is
positive, every value gcd-reduced, no floats anywhere.  All public
values are treated as immutable after construction, so they can be
shared freely across threads.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Scalar", "as_scalar", "format_scalar",
    "GradedVectorSpace", "Vector", "LinearMap", "MultilinearMap",
    "koszul_sign", "enumerate_shuffles", "enumerate_shuffles_with_tail",
    "sort_basis_tuple",
    "rref", "solve_dense", "kernel_vectors", "echelon_vectors",
    "coordinates_in_span", "extend_to_complement",
    "worker_count", "parallel_map",
]

Scalar = Fraction
_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``-3/7`` to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Signs and shuffles
# ---------------------------------------------------------------------------

def koszul_sign(perm, degrees) -> int:
    """Sign relating a permuted wedge of graded elements to the ordered one.

    ``perm`` lists positions, so the permuted word is
    ``v[perm[0]], ..., v[perm[n-1]]`` and the returned sign s satisfies
    ``wedge(permuted word) == s * wedge(v[0], ..., v[n-1])``.  Each adjacent
    swap of elements of degrees a, b contributes ``-(-1)**(a*b)``; in
    particular the sign is +1 for every permutation of odd-degree elements.
    """
    perm = list(perm)
    n = len(perm)
    if len(degrees) != n:
        raise ValueError("permutation and degree list have different lengths")
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {perm}")
    sign = 1
    for i in range(1, n):
        j = i
        while j > 0 and perm[j - 1] > perm[j]:
            if degrees[perm[j - 1]] % 2 == 0 or degrees[perm[j]] % 2 == 0:
                sign = -sign
            perm[j - 1], perm[j] = perm[j], perm[j - 1]
            j -= 1
    return sign


@lru_cache(maxsize=None)
def enumerate_shuffles(k: int, m: int) -> tuple:
    """All (k, m)-shuffles of 0..k+m-1, increasing inside each block.

    Returned as position tuples usable directly with :func:`koszul_sign`.
    There are binomial(k+m, k) of them.
    """
    if k < 0 or m < 0:
        raise ValueError("shuffle block sizes must be nonnegative")
    n = k + m
    out = []
    for first in itertools.combinations(range(n), k):
        second = tuple(i for i in range(n) if i not in first)
        out.append(first + second)
    return tuple(out)


@lru_cache(maxsize=None)
def enumerate_shuffles_with_tail(j: int, m: int) -> tuple:
    """Permutations of 0..j+m with the first two blocks increasing.

    Block sizes are (j, m, 1): positions 0..j-1 increasing, positions
    j..j+m-1 increasing, and the final position unconstrained.
    """
    if j < 0 or m < 0:
        raise ValueError("shuffle block sizes must be nonnegative")
    n = j + m + 1
    out = []
    for tail in range(n):
        rest = [i for i in range(n) if i != tail]
        for first in itertools.combinations(rest, j):
            second = tuple(i for i in rest if i not in first)
            out.append(first + second + (tail,))
    return tuple(out)


def sort_basis_tuple(indices, degree_of):
    """Canonicalize a tuple of basis indices by stable insertion sort.

    Returns ``(sorted_tuple, sign)`` where the sign accumulates the same
    Koszul factors as :func:`koszul_sign`, or ``(None, 0)`` when the tuple
    repeats an even-degree index and is therefore forced to vanish.
    """
    seq = list(indices)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            if degree_of(seq[j - 1]) % 2 == 0 or degree_of(seq[j]) % 2 == 0:
                sign = -sign
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b and degree_of(a) % 2 == 0:
            return None, 0
    return tuple(seq), sign


def canonical_tuples(space, arity):
    """Canonical basis-index tuples of a given arity, in sorted order.

    Weakly increasing tuples, skipping those that repeat an even-degree
    index (forced to zero by graded symmetry).
    """
    for idx in itertools.combinations_with_replacement(range(space.dim), arity):
        if any(a == b and space.degrees[a] % 2 == 0
               for a, b in zip(idx, idx[1:])):
            continue
        yield idx


# ---------------------------------------------------------------------------
# Spaces and vectors
# ---------------------------------------------------------------------------

class GradedVectorSpace:
    """Finite-dimensional Z-graded vector space with an ordered basis."""

    def __init__(self, basis):
        basis = tuple((str(label), int(degree)) for label, degree in basis)
        labels = tuple(label for label, _ in basis)
        if len(set(labels)) != len(labels):
            seen, dup = set(), None
            for lab in labels:
                if lab in seen:
                    dup = lab
                    break
                seen.add(lab)
            raise ValueError(f"duplicate basis label: {dup!r}")
        self.labels = labels
        self.degrees = tuple(degree for _, degree in basis)
        self._index = {label: i for i, label in enumerate(labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"no basis element {label!r}") from None

    def degree_of(self, i: int) -> int:
        return self.degrees[i]

    def indices_of_degree(self, d: int):
        return tuple(i for i, deg in enumerate(self.degrees) if deg == d)

    def degrees_present(self):
        return tuple(sorted(set(self.degrees)))

    def zero(self) -> "Vector":
        return Vector(self, {})

    def basis_vector(self, key) -> "Vector":
        i = key if isinstance(key, int) else self.index(key)
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range")
        return Vector(self, {i: _ONE})

    def vector(self, coeffs) -> "Vector":
        out = {}
        for key, value in coeffs.items():
            i = key if isinstance(key, int) else self.index(key)
            c = as_scalar(value)
            if c:
                out[i] = out.get(i, _ZERO) + c
        return Vector(self, {i: c for i, c in out.items() if c})

    def __eq__(self, other):
        return (isinstance(other, GradedVectorSpace)
                and self.labels == other.labels and self.degrees == other.degrees)

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self):
        parts = ", ".join(f"{l}:{d}" for l, d in zip(self.labels, self.degrees))
        return f"GradedVectorSpace({parts})"


class Vector:
    """Sparse vector in a :class:`GradedVectorSpace`; zeros never stored."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: GradedVectorSpace, coeffs: dict):
        self.space = space
        self.coeffs = {i: c for i, c in coeffs.items() if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self):
        """Degree of a homogeneous vector; None if zero, error if mixed."""
        degs = {self.space.degrees[i] for i in self.coeffs}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"vector is not homogeneous: {self}")
        return degs.pop()

    def coefficient(self, key) -> Fraction:
        i = key if isinstance(key, int) else self.space.index(key)
        return self.coeffs.get(i, _ZERO)

    def _binop(self, other, sign):
        if not isinstance(other, Vector):
            return NotImplemented
        if self.space != other.space:
            raise ValueError("vectors live in different spaces")
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = out.get(i, _ZERO) + sign * c
        return Vector(self.space, out)

    def __add__(self, other):
        return self._binop(other, _ONE)

    def __sub__(self, other):
        return self._binop(other, -_ONE)

    def __neg__(self):
        return Vector(self.space, {i: -c for i, c in self.coeffs.items()})

    def scale(self, scalar) -> "Vector":
        c = as_scalar(scalar)
        if not c:
            return self.space.zero()
        return Vector(self.space, {i: c * v for i, v in self.coeffs.items()})

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __eq__(self, other):
        return (isinstance(other, Vector) and self.space == other.space
                and self.coeffs == other.coeffs)

    def dense(self):
        return [self.coeffs.get(i, _ZERO) for i in range(self.space.dim)]

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in sorted(self.coeffs):
            c, lab = self.coeffs[i], self.space.labels[i]
            if c == 1:
                term = lab
            elif c == -1:
                term = f"-{lab}"
            else:
                term = f"{format_scalar(c)}*{lab}"
            parts.append(term)
        text = parts[0]
        for term in parts[1:]:
            text += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return text


# ---------------------------------------------------------------------------
# Linear maps
# ---------------------------------------------------------------------------

class LinearMap:
    """Homogeneous linear map stored by columns (domain index -> image)."""

    def __init__(self, domain, codomain, degree, columns, check=True):
        self.domain = domain
        self.codomain = codomain
        self.degree = int(degree)
        cols = {}
        for i, vec in columns.items():
            if vec.space != codomain:
                raise ValueError("column image lies in the wrong space")
            if vec.is_zero():
                continue
            if check:
                expected = domain.degrees[i] + self.degree
                for j in vec.coeffs:
                    if codomain.degrees[j] != expected:
                        raise ValueError(
                            f"image of {domain.labels[i]!r} is not homogeneous of "
                            f"degree {expected}")
            cols[i] = vec
        self.columns = cols

    @classmethod
    def zero(cls, domain, codomain, degree):
        return cls(domain, codomain, degree, {})

    @classmethod
    def identity(cls, space):
        return cls(space, space, 0,
                   {i: space.basis_vector(i) for i in range(space.dim)})

    def apply(self, vec: Vector) -> Vector:
        if vec.space != self.domain:
            raise ValueError("vector not in the domain of this map")
        out = self.codomain.zero()
        for i, c in vec.coeffs.items():
            col = self.columns.get(i)
            if col is not None:
                out = out + col.scale(c)
        return out

    def __call__(self, vec: Vector) -> Vector:
        return self.apply(vec)

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("maps are not composable")
        cols = {i: self.apply(v) for i, v in other.columns.items()}
        return LinearMap(other.domain, self.codomain,
                         self.degree + other.degree, cols, check=False)

    def add(self, other: "LinearMap") -> "LinearMap":
        if (other.domain != self.domain or other.codomain != self.codomain
                or other.degree != self.degree):
            raise ValueError("maps are not addable")
        cols = dict(self.columns)
        for i, v in other.columns.items():
            cols[i] = cols[i] + v if i in cols else v
        return LinearMap(self.domain, self.codomain, self.degree, cols, check=False)

    def scale(self, scalar) -> "LinearMap":
        c = as_scalar(scalar)
        return LinearMap(self.domain, self.codomain, self.degree,
                         {i: v.scale(c) for i, v in self.columns.items()}, check=False)

    def __eq__(self, other):
        return (isinstance(other, LinearMap)
                and self.domain == other.domain and self.codomain == other.codomain
                and self.degree == other.degree and self.columns == other.columns)

    def is_zero(self) -> bool:
        return not self.columns

    def kernel_basis(self):
        """Deterministic basis of the kernel, as domain vectors."""
        rows = [[self.columns[i].coeffs.get(j, _ZERO) if i in self.columns else _ZERO
                 for i in range(self.domain.dim)]
                for j in range(self.codomain.dim)]
        return [Vector(self.domain, {i: c for i, c in enumerate(col) if c})
                for col in kernel_vectors(rows, self.domain.dim)]

    def image_basis(self):
        """Deterministic (reduced echelon) basis of the image."""
        vecs = [self.columns[i] for i in sorted(self.columns)]
        return echelon_vectors(vecs, self.codomain)

    def rank(self) -> int:
        return len(self.image_basis())

    def __repr__(self):
        return (f"LinearMap({self.domain!r} -> {self.codomain!r}, "
                f"degree {self.degree}, {len(self.columns)} columns)")


# ---------------------------------------------------------------------------
# Multilinear maps
# ---------------------------------------------------------------------------

class MultilinearMap:
    """Graded-skew multilinear map stored on canonical basis tuples.

    Canonical keys are weakly increasing index tuples; a repeated index is
    legal exactly when its degree is odd (v wedge v = 0 only in even
    degrees).  Evaluation at permuted or non-canonical arguments picks up
    the Koszul sign of the sorting permutation.
    """

    def __init__(self, domain, codomain, arity, degree):
        self.domain = domain
        self.codomain = codomain
        self.arity = int(arity)
        self.degree = int(degree)
        self.table = {}
        if self.arity < 1:
            raise ValueError("arity must be at least 1")

    @classmethod
    def from_entries(cls, domain, codomain, arity, degree, entries):
        out = cls(domain, codomain, arity, degree)
        for key, value in entries.items():
            out.set_entry(key, value)
        return out

    def _resolve(self, key):
        return tuple(i if isinstance(i, int) else self.domain.index(i) for i in key)

    def canonical_key(self, key):
        """(canonical tuple, sign); (None, 0) for a forced-zero tuple."""
        idx = self._resolve(key)
        if len(idx) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(idx)}")
        return sort_basis_tuple(idx, self.domain.degree_of)

    def set_entry(self, key, value: Vector):
        canon, sign = self.canonical_key(key)
        if canon is None:
            if not value.is_zero():
                raise ValueError(
                    "cannot assign a nonzero value on a repeated even-degree entry")
            return
        if value.space != self.codomain:
            raise ValueError("entry value lies in the wrong space")
        value = value.scale(sign)
        if value.is_zero():
            self.table.pop(canon, None)
            return
        expected = sum(self.domain.degrees[i] for i in canon) + self.degree
        for j in value.coeffs:
            if self.codomain.degrees[j] != expected:
                raise ValueError(
                    f"entry at {self.labels_of(canon)} is not homogeneous of "
                    f"degree {expected}")
        stored = self.table.get(canon)
        if stored is not None and stored != value:
            raise ValueError(
                f"conflicting assignments at {self.labels_of(canon)}: "
                f"{stored} vs {value}")
        self.table[canon] = value

    def labels_of(self, key):
        return tuple(self.domain.labels[i] for i in key)

    def evaluate_indices(self, key) -> Vector:
        canon, sign = self.canonical_key(key)
        if canon is None:
            return self.codomain.zero()
        value = self.table.get(canon)
        if value is None:
            return self.codomain.zero()
        return value.scale(sign)

    def evaluate(self, args) -> Vector:
        """Multilinear evaluation at arbitrary vectors of the domain."""
        if len(args) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(args)}")
        for a in args:
            if not isinstance(a, Vector) or a.space != self.domain:
                raise ValueError("argument outside the domain space")
        out = self.codomain.zero()
        supports = [sorted(a.coeffs.items()) for a in args]
        for combo in itertools.product(*supports):
            coeff = _ONE
            for _, c in combo:
                coeff *= c
            term = self.evaluate_indices(tuple(i for i, _ in combo))
            if not term.is_zero():
                out = out + term.scale(coeff)
        return out

    def is_zero(self) -> bool:
        return not self.table

    def entries(self):
        """Canonical (key, value) pairs in sorted key order."""
        return [(k, self.table[k]) for k in sorted(self.table)]

    def __eq__(self, other):
        return (isinstance(other, MultilinearMap)
                and self.domain == other.domain and self.codomain == other.codomain
                and self.arity == other.arity and self.degree == other.degree
                and self.table == other.table)

    def __repr__(self):
        return (f"MultilinearMap(arity {self.arity}, degree {self.degree}, "
                f"{len(self.table)} entries)")


# ---------------------------------------------------------------------------
# Dense exact elimination
# ---------------------------------------------------------------------------

def rref(rows):
    """Reduced row echelon form; returns (new rows, pivot column list).

    Pivoting is deterministic: first nonzero entry scanning columns left to
    right, rows top to bottom, so every caller inherits reproducible bases.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = _ONE / rows[r][col]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def solve_dense(rows, rhs):
    """Solve A x = b exactly; returns (particular solution or None, kernel basis).

    The particular solution sets every free variable to zero; the kernel
    basis has one vector per free variable in increasing column order.
    """
    nvars = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if nvars in pivots:
        return None, kernel_vectors(rows, nvars)
    solution = [_ZERO] * nvars
    for r, col in enumerate(pivots):
        solution[col] = red[r][nvars]
    return solution, kernel_vectors(rows, nvars)


def kernel_vectors(rows, nvars):
    """Deterministic kernel basis of the matrix given by ``rows``."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(nvars) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [_ZERO] * nvars
        vec[f] = _ONE
        for r, col in enumerate(pivots):
            vec[col] = -red[r][f]
        basis.append(vec)
    return basis


def echelon_vectors(vectors, space) -> list:
    """Reduced-echelon spanning set of the given vectors (deterministic)."""
    if not vectors:
        return []
    rows = [v.dense() for v in vectors]
    red, pivots = rref(rows)
    return [Vector(space, {i: c for i, c in enumerate(red[r]) if c})
            for r in range(len(pivots))]


def coordinates_in_span(vectors, target: Vector):
    """Coefficients expressing ``target`` in ``vectors``, or None."""
    if target.is_zero():
        return [_ZERO] * len(vectors)
    if not vectors:
        return None
    space = vectors[0].space
    rows = [[v.coeffs.get(j, _ZERO) for v in vectors] for j in range(space.dim)]
    solution, _ = solve_dense(rows, target.dense())
    return solution


def extend_to_complement(candidates, inside, space):
    """Greedy lexicographic complement of span(inside) using ``candidates``.

    Walks the candidate vectors in order and keeps each one that enlarges
    the span; the result is the earliest candidate subset spanning a
    complement of span(inside) inside span(inside + candidates).
    """
    picked = []
    rows = [v.dense() for v in inside]
    rank = len(rref(rows)[1]) if rows else 0
    for cand in candidates:
        trial = rows + [cand.dense()]
        new_rank = len(rref(trial)[1])
        if new_rank > rank:
            picked.append(cand)
            rows = trial
            rank = new_rank
    return picked


# ---------------------------------------------------------------------------
# Optional thread fan-out
# ---------------------------------------------------------------------------

def worker_count() -> int:
    """Worker cap from LF_THREADS; 0 or unset means automatic."""
    raw = os.environ.get("LF_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"LF_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError("LF_THREADS must be nonnegative")
    if n == 0:
        return min(os.cpu_count() or 1, 8)
    return n


def parallel_map(fn, items):
    """Order-preserving map, fanned out over threads when allowed."""
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
