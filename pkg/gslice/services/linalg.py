# gslice/services/linalg.py
"""Exact linear algebra over Z, Q and prime fields.

Dense matrices are lists of rows; sparse vectors are dicts from a hashable
key to a nonzero coefficient. Elimination runs on sympy DomainMatrix over
QQ or GF(p) (integer input is handled over QQ); lattices use sympy's
Hermite normal form. Results come back as Python ints and Fractions.
"""
import logging
from fractions import Fraction
from functools import reduce
from typing import Dict, Hashable, List, NamedTuple, Optional, Sequence, Tuple

from sympy import Matrix, ilcm, primefactors
from sympy.matrices.normalforms import hermite_normal_form as sympy_hermite_normal_form
from sympy.polys.matrices import DomainMatrix

from gslice.core.errors import ShapeError
from gslice.ring.coeffs import CoeffKind, CoeffRing, Scalar

logger = logging.getLogger(__name__)

SparseVector = Dict[Hashable, Scalar]


def _field(coeff: CoeffRing) -> CoeffRing:
    return CoeffRing.rationals() if coeff.kind == CoeffKind.integer else coeff


def clear_denominators(values: Sequence[Scalar]) -> Tuple[List[int], int]:
    """Scale a rational vector to integers; returns (vector, scale)"""
    scale = int(reduce(ilcm, (Fraction(v).denominator for v in values), 1))
    return [int(Fraction(v) * scale) for v in values], scale


def domain_matrix(matrix: Sequence[Sequence[Scalar]], coeff: CoeffRing, ncols: Optional[int] = None) -> DomainMatrix:
    """Dense DomainMatrix over the field of coeff (QQ for the integers)"""
    field = _field(coeff)
    ncols = len(matrix[0]) if ncols is None else ncols
    rows = [[field.to_domain(v) for v in row] for row in matrix]
    if any(len(row) != ncols for row in rows):
        raise ShapeError("rows of a matrix must have equal length")
    return DomainMatrix(rows, (len(rows), ncols), field.domain)


def _to_scalars(dm: DomainMatrix, coeff: CoeffRing) -> List[List[Scalar]]:
    field = _field(coeff)
    return [[field.from_domain(v) for v in row] for row in dm.to_list()]


class Echelon(NamedTuple):
    rows: List[List[Scalar]]
    pivots: List[int]


def rref(matrix: Sequence[Sequence[Scalar]], coeff: CoeffRing) -> Echelon:
    """Reduced row echelon form; pivot = first nonzero column"""
    if not matrix:
        return Echelon([], [])
    reduced, pivots = domain_matrix(matrix, coeff).rref()
    rows = _to_scalars(reduced, coeff)[:len(pivots)]
    return Echelon(rows, list(pivots))


def rank(matrix: Sequence[Sequence[Scalar]], coeff: CoeffRing) -> int:
    if not matrix:
        return 0
    return domain_matrix(matrix, coeff).rank()


def nullspace(matrix: Sequence[Sequence[Scalar]], coeff: CoeffRing, ncols: Optional[int] = None) -> List[List[Scalar]]:
    """Basis (in reduced row echelon form) of {x : matrix * x = 0}"""
    if ncols is None:
        if not matrix:
            raise ShapeError("column count of an empty matrix is unknown")
        ncols = len(matrix[0])
    if not matrix:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    kernel = _to_scalars(domain_matrix(matrix, coeff, ncols).nullspace(), coeff)
    return rref(kernel, coeff).rows if kernel else []


def determinant(matrix: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant of a square rational matrix"""
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ShapeError("determinant needs a square matrix")
    if n == 0:
        return 1
    rationals = CoeffRing.rationals()
    return rationals.from_domain(domain_matrix(matrix, rationals).det())


# -- sparse vectors -------------------------------------------------------------

def _sparse_matrix(vectors: Sequence[SparseVector], coeff: CoeffRing) -> DomainMatrix:
    """Keys as rows, vectors as columns, in sparse DomainMatrix format"""
    field = _field(coeff)
    slots: Dict[Hashable, int] = {}
    dod: Dict[int, Dict[int, object]] = {}
    for j, vec in enumerate(vectors):
        for key, value in vec.items():
            entry = field.to_domain(value)
            if entry:
                dod.setdefault(slots.setdefault(key, len(slots)), {})[j] = entry
    return DomainMatrix.from_dod(dod, (len(slots), len(vectors)), field.domain)


def sparse_rank(vectors: Sequence[SparseVector], coeff: CoeffRing) -> int:
    if not vectors:
        return 0
    dm = _sparse_matrix(vectors, coeff)
    return dm.rank() if dm.shape[0] else 0


def sparse_contains(vectors: Sequence[SparseVector], vec: SparseVector, coeff: CoeffRing) -> bool:
    """True when vec lies in the span of vectors"""
    if not any(vec.values()):
        return True
    return sparse_rank(list(vectors) + [vec], coeff) == sparse_rank(vectors, coeff)


def kernel_relations(vectors: Sequence[SparseVector], coeff: CoeffRing) -> List[SparseVector]:
    """Basis of the linear relations {index: coefficient} among the vectors"""
    if not vectors:
        return []
    field = _field(coeff)
    dm = _sparse_matrix(vectors, coeff)
    if not dm.shape[0]:
        return [{j: 1} for j in range(len(vectors))]
    relations = []
    for row in dm.nullspace().to_list():
        combo = {j: field.from_domain(v) for j, v in enumerate(row) if v}
        if combo:
            relations.append(combo)
    return relations


# -- integer lattices -----------------------------------------------------------

def hermite_normal_form(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row Hermite normal form: positive pivots, entries above a pivot reduced into [0, pivot).

    sympy reduces the column lattice with pivots toward the bottom right, so
    the rows go in as columns with their coordinates reversed.
    """
    rows = [[int(v) for v in r] for r in matrix if any(r)]
    if not rows:
        return []
    n = len(rows[0])
    columns = Matrix([[row[n - 1 - i] for row in rows] for i in range(n)])
    reduced = sympy_hermite_normal_form(columns)
    width = reduced.shape[1]
    return [[int(reduced[n - 1 - c, j]) for c in range(n)] for j in range(width - 1, -1, -1)]


def _left_kernel_vector_mod(rows: List[List[int]], p: int) -> Optional[List[int]]:
    transpose = [list(col) for col in zip(*rows)]
    kernel = nullspace(transpose, CoeffRing.prime_field(p), ncols=len(rows))
    return kernel[0] if kernel else None


def saturate(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """HNF basis of (Q-span of the rows) intersected with Z^n.

    The index of the row lattice in its saturation divides the product of
    the HNF pivots, so only those primes are examined (p-saturation).
    """
    basis = hermite_normal_form(matrix)
    if not basis:
        return []
    index_bound = 1
    for row in basis:
        index_bound *= next(v for v in row if v)
    for p in primefactors(index_bound):
        while True:
            c = _left_kernel_vector_mod(basis, p)
            if c is None:
                break
            i = next(j for j, v in enumerate(c) if v)
            inv = pow(c[i], -1, p)
            c = [v * inv % p for v in c]
            combined = [sum(cj * row[k] for cj, row in zip(c, basis)) for k in range(len(basis[0]))]
            basis[i] = [v // p for v in combined]
            logger.debug(f"saturation step at p={p}, row {i}")
    return hermite_normal_form(basis)


def lattice_contains(hnf_rows: Sequence[Sequence[int]], vector: Sequence[Scalar]) -> bool:
    """Membership of an integer vector in the lattice spanned by HNF rows"""
    if any(Fraction(v).denominator != 1 for v in vector):
        return False
    rest = [int(v) for v in vector]
    for row in hnf_rows:
        c = next(k for k, v in enumerate(row) if v)
        if rest[c] % row[c]:
            return False
        q = rest[c] // row[c]
        if q:
            rest = [u - q * v for u, v in zip(rest, row)]
    return not any(rest)
