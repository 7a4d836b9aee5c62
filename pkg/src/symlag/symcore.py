"""Permutations of {1..n} and the classification of their orbits in R^n.

Coordinate permutations act on points by position: component ``i`` of
``apply_to_point(s, x)`` is ``x[s(i)]`` (labels are 1-based throughout, so
serialized permutations read exactly like the usual one-line notation).
An orbit of this action is classified by its *type* ``(c_1, ..., c_n)``,
where ``c_i`` counts the groups of exactly ``i`` equal coordinates; hence
``sum(i * c_i) == n``.  The same tuples enumerate permutation cycle types,
which is what makes the fixed-point bookkeeping in :mod:`symlag.charmat`
line up index-for-index.

Types are ordered by the "high component first" rule: compare ``c_n`` down
to ``c_1`` and let the first difference decide.  ``enumerate_types`` lists
all types of a dimension in this descending order and ranks are 1-based,
so rank 1 is always ``(0, ..., 0, 1)``, the one-point diagonal orbit.

Everything here is a pure function on immutable values.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Sequence, TypeVar

from .errors import CapacityError, DimensionMismatchError

T = TypeVar("T")

#: permutation enumeration guard for stabilizer_elements (n! growth)
DEFAULT_ENUM_LIMIT = 10


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..n} stored in one-line notation: images[i-1] = s(i)."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        n = len(self.images)
        if n == 0 or sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"images {self.images!r} are not a bijection on 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        """The permutation exchanging labels i and j (1-based)."""
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    def __call__(self, label: int) -> int:
        return self.images[label - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """Product with ``self`` applied first: ``a.compose(b)(i) == b(a(i))``.

        This is the convention under which the point action is associative:
        ``apply_to_point(a.compose(b), x) == apply_to_point(a, apply_to_point(b, x))``.

        >>> a = Permutation((2, 3, 1)); b = Permutation((2, 1, 3))
        >>> a.compose(b).images
        (1, 3, 2)
        """
        if self.n != other.n:
            raise DimensionMismatchError(f"cannot compose permutations of sizes {self.n} and {other.n}")
        return Permutation(tuple(other.images[v - 1] for v in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest label, fixed labels included.

        >>> Permutation((2, 3, 1, 4)).cycles()
        ((1, 2, 3), (4,))
        """
        seen = [False] * (self.n + 1)
        out = []
        for start in range(1, self.n + 1):
            if seen[start]:
                continue
            cycle = []
            cur = start
            while not seen[cur]:
                seen[cur] = True
                cycle.append(cur)
                cur = self.images[cur - 1]
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_notation(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "id"

    def to_json(self) -> list[int]:
        return list(self.images)


@functools.total_ordering
@dataclass(frozen=True)
class OrbitType:
    """Composition vector (c_1..c_n) with sum(i*c_i) = n.

    Doubles as a permutation cycle type: both range over the non-negative
    solutions of the same Diophantine equation.
    """

    counts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(int(v) for v in self.counts))
        n = len(self.counts)
        if n == 0 or any(v < 0 for v in self.counts):
            raise ValueError(f"invalid type counts {self.counts!r}")
        total = sum(i * c for i, c in enumerate(self.counts, start=1))
        if total != n:
            raise ValueError(f"counts {self.counts!r} weigh to {total}, expected {n}")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def _key(self) -> tuple[int, ...]:
        return tuple(reversed(self.counts))

    def __lt__(self, other: "OrbitType") -> bool:
        if self.n != other.n:
            raise DimensionMismatchError(f"cannot compare types of dimensions {self.n} and {other.n}")
        return self._key < other._key

    def to_json(self) -> list[int]:
        return list(self.counts)


def compare_types(a: OrbitType, b: OrbitType) -> int:
    """-1, 0 or 1 as ``a`` is below, equal to or above ``b`` in the type order.

    >>> compare_types(OrbitType((0, 0, 1)), OrbitType((1, 1, 0)))
    1
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"cannot compare types of dimensions {a.n} and {b.n}")
    return (a._key > b._key) - (a._key < b._key)


@functools.lru_cache(maxsize=None)
def _types_descending(n: int) -> tuple[OrbitType, ...]:
    out: list[OrbitType] = []

    def descend(i: int, remaining: int, suffix: tuple[int, ...]) -> None:
        # suffix already holds (c_{i+1}, ..., c_n); largest c_i first keeps
        # the emission order descending without a sort
        if i == 1:
            out.append(OrbitType((remaining,) + suffix))
            return
        for c in range(remaining // i, -1, -1):
            descend(i - 1, remaining - i * c, (c,) + suffix)

    descend(n, n, ())
    return tuple(out)


def enumerate_types(n: int) -> list[OrbitType]:
    """All orbit types of R^n in descending order; length is the partition number p(n).

    >>> [t.counts for t in enumerate_types(3)]
    [(0, 0, 1), (1, 1, 0), (3, 0, 0)]
    """
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    return list(_types_descending(n))


def type_rank(t: OrbitType) -> int:
    """1-based position of ``t`` in the descending order of its dimension."""
    return _types_descending(t.n).index(t) + 1


def cycle_type(p: Permutation) -> OrbitType:
    """Cycle type of a permutation; counts[i-1] = number of i-cycles.

    >>> cycle_type(Permutation((2, 3, 1, 4, 6, 5))).counts
    (1, 1, 1, 0, 0, 0)
    """
    counts = [0] * p.n
    for cycle in p.cycles():
        counts[len(cycle) - 1] += 1
    return OrbitType(tuple(counts))


def apply_to_point(p: Permutation, coords: Sequence[T]) -> tuple[T, ...]:
    """Permute coordinates: slot i of the result is coords[p(i)].

    Works on any coordinate-like sequence (rational points, exponent
    vectors).  Satisfies apply(a.compose(b), x) == apply(a, apply(b, x)).
    """
    if len(coords) != p.n:
        raise DimensionMismatchError(f"point of dimension {len(coords)} under permutation of size {p.n}")
    return tuple(coords[v - 1] for v in p.images)


def stabilizer_order(t: OrbitType) -> int:
    """|stab(x)| for any point x of type t: prod (i!)^(c_i)."""
    order = 1
    for i, c in enumerate(t.counts, start=1):
        order *= factorial(i) ** c
    return order


def orbit_size(t: OrbitType) -> int:
    """Number of points in an orbit of type t: n! / stabilizer_order."""
    return factorial(t.n) // stabilizer_order(t)


def canonical_blocks(t: OrbitType) -> list[list[int]]:
    """Positions (1-based) of the equal-value blocks of the canonical point:
    singleton blocks first, then pairs, then triples, ..."""
    blocks = []
    pos = 1
    for size in range(1, t.n + 1):
        for _ in range(t.counts[size - 1]):
            blocks.append(list(range(pos, pos + size)))
            pos += size
    return blocks


def canonical_point(t: OrbitType) -> tuple[Fraction, ...]:
    """A representative of type t with block values 1, 2, 3, ... in block order.

    Type (1,1,0) gives (1, 2, 2); type (3,0,0) gives (1, 2, 3).
    """
    coords: list[Fraction] = []
    for value, block in enumerate(canonical_blocks(t), start=1):
        coords.extend([Fraction(value)] * len(block))
    return tuple(coords)


def representative_permutation(t: OrbitType) -> Permutation:
    """A permutation of cycle type t, with cycles on consecutive labels."""
    images = list(range(1, t.n + 1))
    for block in canonical_blocks(t):
        for k, label in enumerate(block):
            images[label - 1] = block[(k + 1) % len(block)]
    return Permutation(tuple(images))


def stabilizer_generators(t: OrbitType) -> list[Permutation]:
    """Generators of stab(canonical_point(t)): adjacent transpositions inside
    each equal-value block.  Empty for the free type (trivial stabilizer)."""
    gens = []
    for block in canonical_blocks(t):
        for a, b in zip(block, block[1:]):
            gens.append(Permutation.transposition(t.n, a, b))
    return gens


def stabilizer_elements(t: OrbitType, enum_limit: int | None = None) -> list[Permutation]:
    """All of stab(canonical_point(t)), by filtering the n! permutations.

    Deliberately the dumb enumeration: it is the independent oracle the
    Burnside cross-checks lean on.  Guarded by ``enum_limit`` (default
    ``DEFAULT_ENUM_LIMIT``) because of the factorial cost.
    """
    limit = DEFAULT_ENUM_LIMIT if enum_limit is None else enum_limit
    if t.n > limit:
        raise CapacityError(
            f"stabilizer enumeration needs {t.n}! permutations; limit is n <= {limit}"
        )
    x = canonical_point(t)
    elements = []
    for images in itertools.permutations(range(1, t.n + 1)):
        p = Permutation(images)
        if apply_to_point(p, x) == x:
            elements.append(p)
    return elements


def adjacent_transpositions(n: int) -> list[Permutation]:
    """The standard generating set {(i i+1)} of S_n (empty for n = 1)."""
    return [Permutation.transposition(n, i, i + 1) for i in range(1, n)]


def unique_arrangements(values: Sequence[T]) -> Iterator[tuple[T, ...]]:
    """All distinct orderings of a multiset, each exactly once, in lex order.

    The count equals the multinomial coefficient, i.e. the orbit size of a
    point with these coordinate values.
    """
    counts: dict[T, int] = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    slots: list[T] = [values[0]] * len(values) if values else []

    def rec(depth: int) -> Iterator[tuple[T, ...]]:
        if depth == len(slots):
            yield tuple(slots)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                slots[depth] = v
                yield from rec(depth + 1)
                counts[v] += 1

    if not values:
        yield ()
        return
    yield from rec(0)


def orbit_partition(
    items: Sequence[T],
    generators: Iterable[Permutation],
    act,
) -> list[list[T]]:
    """Partition ``items`` into orbits of the group generated by ``generators``.

    ``act(g, x)`` must land back in ``items`` (check closure first).  Orbits
    come back ordered by the first appearance of a member in ``items``, and
    each orbit preserves the ``items`` order, so the result is deterministic.
    """
    index = {x: i for i, x in enumerate(items)}
    parent = list(range(len(items)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for g in generators:
        for x in items:
            y = act(g, x)
            if y not in index:
                raise KeyError(f"action left the set at {x!r} -> {y!r}")
            a, b = find(index[x]), find(index[y])
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: dict[int, list[T]] = {}
    for i, x in enumerate(items):
        groups.setdefault(find(i), []).append(x)
    return [groups[root] for root in sorted(groups)]
