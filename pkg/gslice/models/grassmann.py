# gslice/models/grassmann.py
"""Point configurations as full-rank matrices: Plücker coordinates and the Gale transform."""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from gslice.core.errors import RankDeficientError, ShapeError, SpecFileError
from gslice.ring.coeffs import CoeffRing, Scalar
from gslice.ring.poly import MultiPoly, PolyRing
from gslice.services.linalg import determinant, nullspace, rank

logger = logging.getLogger(__name__)

RATIONALS = CoeffRing.rationals()

Index = Tuple[int, ...]


def _format(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ConfigMatrix:
    """m points of P^(n-1) as the columns of an n x m rational matrix of rank n"""

    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.rows or not self.rows[0]:
            raise ShapeError("empty matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ShapeError("rows have different lengths")
        if self.n > width:
            raise RankDeficientError(f"{self.n} x {width} matrix cannot have rank {self.n}")
        found = rank([list(r) for r in self.rows], RATIONALS)
        if found < self.n:
            raise RankDeficientError(f"matrix has rank {found}, expected {self.n}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[Scalar]]) -> "ConfigMatrix":
        return cls(tuple(tuple(Fraction(v) for v in r) for r in rows))

    @classmethod
    def from_text(cls, text: str) -> "ConfigMatrix":
        """Rows on separate lines, entries 'p' or 'p/q' separated by spaces; '#' starts a comment"""
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([Fraction(token) for token in line.split()])
            except (ValueError, ZeroDivisionError):
                raise SpecFileError(f"line {lineno}: cannot read {line!r} as rationals")
        if not rows:
            raise SpecFileError("matrix file has no rows")
        return cls.of(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def columns(self, index: Index) -> List[List[Fraction]]:
        return [[row[j] for j in index] for row in self.rows]

    def to_text(self) -> str:
        return "\n".join(" ".join(_format(v) for v in row) for row in self.rows)

    def row_space_equals(self, other: "ConfigMatrix") -> bool:
        if self.m != other.m or self.n != other.n:
            return False
        stacked = [list(r) for r in self.rows] + [list(r) for r in other.rows]
        return rank(stacked, RATIONALS) == self.n


def pluecker_indices(n: int, m: int) -> List[Index]:
    """Column sets of size n in lexicographic order (0-based)"""
    return list(combinations(range(m), n))


def index_label(index: Index) -> str:
    return "".join(str(j + 1) for j in index)


def pluecker(matrix: ConfigMatrix) -> List[Scalar]:
    """All maximal minors, one per column set in lexicographic order"""
    return [determinant(matrix.columns(index)) for index in pluecker_indices(matrix.n, matrix.m)]


def gale_transform(matrix: ConfigMatrix) -> ConfigMatrix:
    """Kernel of the matrix as an (m - n) x m matrix, first nonzero maximal minor positive"""
    if matrix.n >= matrix.m:
        raise ShapeError(f"n must be < m (got {matrix.n} x {matrix.m})")
    kernel = nullspace([list(r) for r in matrix.rows], RATIONALS, ncols=matrix.m)
    dual = ConfigMatrix.of(kernel)
    first = next(v for v in pluecker(dual) if v != 0)
    if first < 0:
        flipped = [list(r) for r in dual.rows]
        flipped[0] = [-v for v in flipped[0]]
        dual = ConfigMatrix.of(flipped)
    return dual


@dataclass
class Complementarity:
    holds: bool
    scale: Optional[Fraction]
    mismatches: List[str]


def complementarity(matrix: ConfigMatrix, dual: Optional[ConfigMatrix] = None) -> Complementarity:
    """p_I(M) = (-1)^(sum of I) * scale * q_(complement of I)(dual), one scale for all I.

    Index sums are taken 1-based.
    """
    dual = dual or gale_transform(matrix)
    columns = set(range(matrix.m))
    q = dict(zip(pluecker_indices(dual.n, dual.m), pluecker(dual)))
    scale = None
    mismatches = []
    for index, p in zip(pluecker_indices(matrix.n, matrix.m), pluecker(matrix)):
        rest = tuple(sorted(columns - set(index)))
        sign = -1 if sum(j + 1 for j in index) % 2 else 1
        signed = sign * q[rest]
        if scale is None and signed != 0:
            scale = Fraction(p) / signed
        if scale is None:
            if p != 0:
                mismatches.append(index_label(index))
            continue
        if Fraction(p) != scale * signed:
            mismatches.append(index_label(index))
    if mismatches:
        logger.debug(f"complementarity fails at {mismatches}")
    holds = scale is not None and scale != 0 and not mismatches
    return Complementarity(holds, scale, mismatches)


def random_config(n: int, m: int, rng: random.Random, bound: int = 5) -> ConfigMatrix:
    """A random full-rank n x m matrix with small rational entries"""
    if n > m:
        raise ShapeError(f"cannot build a rank {n} matrix with {m} columns")
    while True:
        rows = [[Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(m)] for _ in range(n)]
        if rank(rows, RATIONALS) == n:
            return ConfigMatrix.of(rows)


# -- symbolic minors ----------------------------------------------------------------

def generic_ring(n: int, m: int, coeff: Optional[CoeffRing] = None) -> PolyRing:
    """Variables r<row>c<column> of a generic n x m matrix"""
    names = tuple(f"r{i + 1}c{j + 1}" for i in range(n) for j in range(m))
    return PolyRing(coeff or CoeffRing.integers(), names)


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def leibniz_determinant(entries: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant of a square matrix of polynomials as a sum over permutations"""
    size = len(entries)
    if any(len(r) != size for r in entries):
        raise ShapeError("determinant needs a square matrix")
    ring = entries[0][0].ring
    total = ring.zero()
    for perm in permutations(range(size)):
        term = ring.constant(_permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term * entries[i][j]
        total = total + term
    return total


def generic_pluecker(n: int, m: int, coeff: Optional[CoeffRing] = None) -> Dict[Index, MultiPoly]:
    ring = generic_ring(n, m, coeff)
    entries = [[ring.gen(f"r{i + 1}c{j + 1}") for j in range(m)] for i in range(n)]
    return {index: leibniz_determinant([[row[j] for j in index] for row in entries])
            for index in pluecker_indices(n, m)}


def three_term_relations(m: int, coeff: Optional[CoeffRing] = None) -> Dict[str, MultiPoly]:
    """p_ij p_kl - p_ik p_jl + p_il p_jk on a generic 2 x m matrix, for i < j < k < l"""
    p = generic_pluecker(2, m, coeff)
    out = {}
    for i, j, k, l in combinations(range(m), 4):
        value = p[(i, j)] * p[(k, l)] - p[(i, k)] * p[(j, l)] + p[(i, l)] * p[(j, k)]
        out[index_label((i, j, k, l))] = value
    return out
