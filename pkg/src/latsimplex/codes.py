"""Projective point matrices over F_2 and the residue groups they generate.

``projective_matrix(r)`` lists the 2^r - 1 nonzero binary r-vectors as
columns, ordered by weight descending then by value descending (row 1 read as
the most significant bit).  Halving its entries gives the generator rows of
the weight-uniform group ``simplex_code_group(r)``; block sums of those rows
give the families returned by ``counterexample_simplex``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, GroupTooLarge, HypothesesNotMet
from .groups import DEFAULT_MAX_ORDER, LambdaGroup, close, direct_sum
from .residues import ResidueVector

MAX_CODE_DIMENSION = 20


@dataclass(frozen=True)
class BinaryMatrix:
    bits: tuple[tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.bits)

    @property
    def cols(self) -> int:
        return len(self.bits[0]) if self.bits else 0

    def row(self, i: int) -> tuple[int, ...]:
        return self.bits[i - 1]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j - 1] for row in self.bits)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(1, self.cols + 1)]


def projective_matrix(r: int) -> BinaryMatrix:
    """The r x (2^r - 1) matrix of all nonzero binary column vectors."""
    if r < 1:
        raise ValueError("r must be at least 1")
    order = sorted(range(1, 1 << r), key=lambda v: (-v.bit_count(), -v))
    bits = tuple(
        tuple((v >> (r - 1 - i)) & 1 for v in order) for i in range(r))
    return BinaryMatrix(bits)


def half_matrix(r: int) -> tuple[ResidueVector, ...]:
    """Rows of the projective matrix with every 1 replaced by 1/2."""
    A = projective_matrix(r)
    return tuple(ResidueVector(2, row) for row in A.bits)


def support_matrix(rows) -> BinaryMatrix:
    """0/1 pattern of nonzero entries, row by row."""
    rows = list(rows)
    if not rows:
        raise ValueError("need at least one row")
    e = rows[0].e
    for v in rows:
        if v.e != e:
            raise DimensionMismatch("rows have mixed lengths")
    return BinaryMatrix(tuple(
        tuple(1 if a else 0 for a in v.nums) for v in rows))


def simplex_code_group(r: int,
                       max_order: int = DEFAULT_MAX_ORDER) -> LambdaGroup:
    """Group generated by the half-entry rows; order 2^r, all weights equal."""
    if r < 2:
        raise ValueError("r must be at least 2")
    if r > MAX_CODE_DIMENSION:
        raise GroupTooLarge(f"r is capped at {MAX_CODE_DIMENSION}")
    return close(half_matrix(r), max_order=max_order)


def support_rigidity_check(rows, r: int) -> bool:
    """Entrywise rigidity for matrices shaped like the half matrix.

    ``rows`` must be an (r+2) x (2^(r+2)-1) matrix of residue vectors whose
    support matrix equals ``projective_matrix(r+2)`` and whose generated group
    has maximal weight 2^(r+1); both hypotheses are checked.  Under them the
    matrix is forced to equal the half matrix, so False flags a bug.
    """
    m = r + 2
    rows = list(rows)
    if len(rows) != m:
        raise HypothesesNotMet(f"expected {m} rows")
    if any(v.e != (1 << m) - 1 for v in rows):
        raise HypothesesNotMet(f"expected {(1 << m) - 1} columns")
    if support_matrix(rows) != projective_matrix(m):
        raise HypothesesNotMet("support matrix mismatch")
    G = close(rows)
    if G.max_weight() != 1 << (r + 1):
        raise HypothesesNotMet(
            f"generated group must have maximal weight {1 << (r + 1)}")
    expected = half_matrix(m)
    return all(v.reduced() == w.reduced() for v, w in zip(rows, expected))


def counterexample_simplex(s: int,
                           max_order: int = DEFAULT_MAX_ORDER) -> LambdaGroup:
    """Block-diagonal family with degree s on 4s - popcount(2s) coordinates.

    Writes 2s = 2^{u_1} + ... + 2^{u_p} with u_1 > ... > u_p >= 1 and stacks
    the half matrices of dimensions u_i + 1 on disjoint coordinate blocks.
    """
    if s < 2:
        raise ValueError("s must be at least 2")
    exponents = [u for u in range(2 * s + 1) if (2 * s) >> u & 1]
    exponents.reverse()
    G = simplex_code_group(exponents[0] + 1, max_order=max_order)
    for u in exponents[1:]:
        G = direct_sum(G, simplex_code_group(u + 1, max_order=max_order),
                       max_order=max_order)
    return G
