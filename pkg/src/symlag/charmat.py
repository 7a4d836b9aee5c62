"""Exact fixed-point tables and the Gram matrix of permutation characters.

For each orbit class there is a permutation character chi: its value on a
permutation is the number of points of that class the permutation fixes.
Collecting those values over conjugacy classes gives the integer table K;
averaging products of characters over the group gives the matrix
V[i][j] = <chi_i, chi_j>, which by Burnside's lemma equals the number of
orbits of class-i stabilizers acting on a class-j orbit.

Layout: K has conjugacy classes as rows and orbit-class characters as
columns, both in the descending type order of :mod:`symlag.symcore`.  A
class-i permutation fixes nothing in orbit class j once type_i > type_j
(its long cycles cannot fit into the smaller equality blocks), so K is
lower triangular, and its diagonal prod(c_l!) is positive: K is
invertible, hence V = K^T D K / n! (D = diagonal of class sizes) is
symmetric positive definite.  V's indices are both orbit classes,
descending.

Everything is arbitrary-precision integer/rational arithmetic; there is no
floating point in this module.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import _linalg
from .errors import DimensionMismatchError
from .symcore import (
    OrbitType,
    apply_to_point,
    canonical_point,
    enumerate_types,
    stabilizer_elements,
    unique_arrangements,
)


def class_size(t: OrbitType) -> int:
    """Size of the conjugacy class with cycle type t: n! / prod(i^c_i * c_i!).

    Summed over all cycle types this recovers n!.
    """
    denom = 1
    for i, c in enumerate(t.counts, start=1):
        denom *= (i**c) * factorial(c)
    return factorial(t.n) // denom


@functools.lru_cache(maxsize=None)
def _deal_options(remaining: tuple[int, ...], target: int) -> tuple[tuple[int, ...], ...]:
    """All sub-multisets d <= remaining of cycle counts with total length target."""
    out: list[tuple[int, ...]] = []
    d = [0] * len(remaining)

    def rec(length: int, left: int) -> None:
        if length == 0:
            if left == 0:
                out.append(tuple(d))
            return
        for c in range(min(remaining[length - 1], left // length), -1, -1):
            d[length - 1] = c
            rec(length - 1, left - length * c)
        d[length - 1] = 0

    rec(len(remaining), target)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _deal_count(blocks: tuple[int, ...], remaining: tuple[int, ...]) -> int:
    """Ways to deal the remaining cycle multiset onto the listed blocks.

    Cached globally: the same (block suffix, remaining cycles) subproblem
    recurs across all entries of a K matrix, and across dimensions.
    """
    if not blocks:
        return 1
    total = 0
    for d in _deal_options(remaining, blocks[0]):
        ways = 1
        for length in range(1, len(remaining) + 1):
            if d[length - 1]:
                ways *= comb(remaining[length - 1], d[length - 1])
        rest = tuple(r - used for r, used in zip(remaining, d))
        total += ways * _deal_count(blocks[1:], rest)
    return total


def fixed_point_count(orbit: OrbitType, sigma: OrbitType) -> int:
    """Number of points in an orbit of type ``orbit`` fixed by any permutation
    of cycle type ``sigma``.

    A point is fixed exactly when every cycle of the permutation stays inside
    one of the point's equal-value blocks, so the count is the number of ways
    to deal the cycle multiset out to the blocks with exact length sums.
    Blocks are distinguishable (they carry distinct values); equally long
    cycles are dealt binomially.  Dynamic program over blocks; exact integers
    throughout.
    """
    if orbit.n != sigma.n:
        raise DimensionMismatchError(f"types of dimensions {orbit.n} and {sigma.n}")
    n = orbit.n
    blocks = tuple(
        size for size in range(n, 0, -1) for _ in range(orbit.counts[size - 1])
    )
    return _deal_count(blocks, sigma.counts)


@dataclass(frozen=True)
class KMatrix:
    """Fixed-point table: entries[i][j] = number of points of orbit class j
    fixed by a permutation of conjugacy class i (both descending)."""

    n: int
    types: tuple[OrbitType, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.types)

    def is_lower_triangular(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.size))

    def determinant(self) -> int:
        det = _linalg.exact_determinant(self.entries)
        return int(det)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "order": [t.to_json() for t in self.types],
            "entries": [list(row) for row in self.entries],
        }


@dataclass(frozen=True)
class VMatrix:
    """Gram matrix of the permutation characters: entries[i][j] = <chi_i, chi_j>,
    indices in descending type order."""

    n: int
    types: tuple[OrbitType, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.types)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def is_symmetric(self) -> bool:
        return all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.size)
            for j in range(i)
        )

    def determinant(self) -> int:
        return int(_linalg.exact_determinant(self.entries))

    def leading_principal_minors(self) -> list[int]:
        return [int(m) for m in _linalg.leading_principal_minors(self.entries)]

    def is_positive_definite(self) -> bool:
        """Sylvester's criterion on exact integer minors."""
        return all(m > 0 for m in self.leading_principal_minors())

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "order": [t.to_json() for t in self.types],
            "entries": [list(row) for row in self.entries],
        }


@functools.lru_cache(maxsize=None)
def k_matrix(n: int) -> KMatrix:
    """The fixed-point table K for dimension n; lower triangular with
    diagonal >= 1 by construction of the type order."""
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    types = tuple(enumerate_types(n))
    entries = tuple(
        tuple(fixed_point_count(orbit=tj, sigma=ti) for tj in types) for ti in types
    )
    return KMatrix(n=n, types=types, entries=entries)


@functools.lru_cache(maxsize=None)
def v_matrix(n: int) -> VMatrix:
    """V[i][j] = <chi_i, chi_j> = (1/n!) sum_k |A_k| K[k][i] K[k][j].

    Computed in exact rationals; every entry must land on an integer, and a
    non-integer means a bug, never bad input.
    """
    k = k_matrix(n)
    sizes = [class_size(t) for t in k.types]
    total = factorial(n)
    c = k.size
    acc = [[0] * c for _ in range(c)]
    # accumulate the weighted outer products row by row, visiting only the
    # nonzero entries (K is lower triangular and sparse below the diagonal)
    for r in range(c):
        nonzero = [(i, v) for i, v in enumerate(k.entries[r]) if v]
        for a, (i, vi) in enumerate(nonzero):
            weighted = sizes[r] * vi
            row_i = acc[i]
            for j, vj in nonzero[a:]:
                row_i[j] += weighted * vj
    rows = [[0] * c for _ in range(c)]
    for i in range(c):
        for j in range(i, c):
            value = Fraction(acc[i][j], total)
            if value.denominator != 1:
                raise ArithmeticError(
                    f"character inner product <chi_{i+1}, chi_{j+1}> = {value} is not an integer"
                )
            rows[i][j] = rows[j][i] = int(value)
    return VMatrix(n=n, types=k.types, entries=tuple(tuple(row) for row in rows))


def v_entry_burnside(i: int, j: int, n: int, enum_limit: int | None = None) -> int:
    """Independent oracle for V[i][j] (1-based ranks): count orbits of the
    class-i stabilizer acting on the explicit class-j orbit by Burnside's
    average-fixed-points formula.

    Enumerates the stabilizer, so it inherits stabilizer_elements' capacity
    guard; meant for small n.
    """
    types = enumerate_types(n)
    if not (1 <= i <= len(types) and 1 <= j <= len(types)):
        raise ValueError(f"ranks must lie in 1..{len(types)}")
    stab = stabilizer_elements(types[i - 1], enum_limit)
    orbit = list(unique_arrangements(canonical_point(types[j - 1])))
    total_fixed = 0
    for sigma in stab:
        total_fixed += sum(1 for y in orbit if apply_to_point(sigma, y) == y)
    count = Fraction(total_fixed, len(stab))
    if count.denominator != 1:
        raise ArithmeticError("Burnside average is not an integer; bug in enumeration")
    return int(count)
