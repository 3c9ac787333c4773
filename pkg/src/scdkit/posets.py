"""Finite graded posets, products, and the cuboid family Q_k x n.

Every poset here is finite and graded: it carries an explicit cover
relation and a rank function, minimal elements have rank 0, and each
cover raises rank by exactly one.  Construction re-derives those facts
from the data and refuses anything inconsistent, so a ``GradedPoset``
that exists is known-good.

Elements are plain hashable values.  Cuboid elements are ``(bits, level)``
pairs with ``bits`` an integer whose binary digits, most significant
first, spell the hypercube coordinate string; ``level`` is the chain
coordinate.  Products of arbitrary posets use nested tuples the same way.
All posets are immutable after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable, Mapping

Element = Hashable


class PosetError(ValueError):
    """Raised for malformed posets or out-of-domain poset queries."""


class GradedPoset:
    """A finite graded poset given by elements, covers, and ranks.

    ``chain_factor`` is set when the poset was built as ``base x chain(n)``
    with elements ``(p, level)``; operations that care about the chain
    coordinate (tautness, block surgery) require it.
    """

    __slots__ = (
        "elements", "rank", "label", "rk", "by_rank", "rank_vector",
        "covers", "cover_set", "hypercube_k", "chain_factor",
        "_up", "_down",
    )

    def __init__(
        self,
        elements: Iterable[Element],
        covers: Iterable[tuple[Element, Element]],
        rank: Mapping[Element, int],
        label: str = "poset",
        *,
        hypercube_k: int | None = None,
        chain_factor: tuple["GradedPoset", int] | None = None,
    ):
        elements = tuple(sorted(set(elements)))
        if not elements:
            raise PosetError("a graded poset must be nonempty")
        cover_set = frozenset(covers)
        rank = dict(rank)

        up: dict[Element, list[Element]] = {e: [] for e in elements}
        down: dict[Element, list[Element]] = {e: [] for e in elements}
        for x, y in cover_set:
            if x not in up or y not in up:
                raise PosetError(f"cover ({x!r}, {y!r}) uses a foreign element")
            up[x].append(y)
            down[y].append(x)

        # Recompute gradedness instead of trusting the caller: minimal
        # elements must sit at rank 0 and covers must raise rank by 1.
        for e in elements:
            if e not in rank:
                raise PosetError(f"element {e!r} has no rank")
            if not down[e] and rank[e] != 0:
                raise PosetError(f"minimal element {e!r} has rank {rank[e]}, not 0")
        for x, y in cover_set:
            if rank[y] != rank[x] + 1:
                raise PosetError(
                    f"cover ({x!r}, {y!r}) jumps rank {rank[x]} -> {rank[y]}"
                )

        self.elements = elements
        self.rank = rank
        self.label = label
        self.covers = tuple(sorted(cover_set))
        self.cover_set = cover_set
        self.rk = max(rank[e] for e in elements)
        self._up = {e: tuple(sorted(up[e])) for e in elements}
        self._down = {e: tuple(sorted(down[e])) for e in elements}
        by_rank: list[list[Element]] = [[] for _ in range(self.rk + 1)]
        for e in elements:
            by_rank[rank[e]].append(e)
        self.by_rank = tuple(tuple(level) for level in by_rank)
        self.rank_vector = tuple(len(level) for level in self.by_rank)
        self.hypercube_k = hypercube_k
        self.chain_factor = chain_factor

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e in self.rank

    def __repr__(self) -> str:
        return f"GradedPoset({self.label}, {len(self)} elements, rank {self.rk})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedPoset):
            return NotImplemented
        return (
            self.elements == other.elements
            and self.cover_set == other.cover_set
            and self.rank == other.rank
        )

    __hash__ = None  # structural equality, not hashable

    def up(self, e: Element) -> tuple[Element, ...]:
        """Elements covering ``e``, in canonical order."""
        return self._up[e]

    def down(self, e: Element) -> tuple[Element, ...]:
        """Elements covered by ``e``, in canonical order."""
        return self._down[e]

    def is_cover(self, x: Element, y: Element) -> bool:
        return (x, y) in self.cover_set

    @property
    def bottom(self) -> Element | None:
        """The unique minimal element, or None if there are several."""
        return self.by_rank[0][0] if len(self.by_rank[0]) == 1 else None

    @property
    def top(self) -> Element | None:
        """The unique maximal element, or None if there are several."""
        maxima = [e for e in self.elements if not self._up[e]]
        return maxima[0] if len(maxima) == 1 else None

    @property
    def is_chain_poset(self) -> bool:
        """True for the posets produced by :func:`build_chain_poset`."""
        return self.elements == tuple(range(len(self))) and all(
            self.rank[i] == i for i in self.elements
        )


# -- constructors ---------------------------------------------------------


def build_chain_poset(s: int) -> GradedPoset:
    """The total order 0 < 1 < ... < s-1 with rank(i) = i."""
    if s < 1:
        raise PosetError(f"chain poset needs at least one element, got s={s}")
    return GradedPoset(
        range(s),
        [(i, i + 1) for i in range(s - 1)],
        {i: i for i in range(s)},
        label=f"chain({s})",
    )


def build_hypercube(k: int) -> GradedPoset:
    """Q_k on bitmask elements 0..2^k-1; covers flip one 0-bit up."""
    if k < 0:
        raise PosetError(f"hypercube dimension must be nonnegative, got k={k}")
    elements = range(1 << k)
    covers = [
        (x, x | (1 << i))
        for x in elements
        for i in range(k)
        if not x & (1 << i)
    ]
    rank = {x: bin(x).count("1") for x in elements}
    return GradedPoset(elements, covers, rank, label=f"Q{k}", hypercube_k=k)


def product(p: GradedPoset, q: GradedPoset) -> GradedPoset:
    """Direct product: elements are pairs, covers move in one coordinate.

    When ``q`` is a chain poset the result records ``chain_factor=(p, n)``
    so that chain-coordinate operations apply to it.
    """
    elements = [(a, b) for a in p.elements for b in q.elements]
    covers = [((a, b), (a2, b)) for (a, a2) in p.covers for b in q.elements]
    covers += [((a, b), (a, b2)) for a in p.elements for (b, b2) in q.covers]
    rank = {(a, b): p.rank[a] + q.rank[b] for (a, b) in elements}
    factor = (p, len(q)) if q.is_chain_poset else None
    return GradedPoset(
        elements, covers, rank,
        label=f"{p.label}x{q.label}",
        chain_factor=factor,
    )


@lru_cache(maxsize=None)
def build_cuboid(k: int, n: int) -> GradedPoset:
    """P(k, n) = Q_k x chain(n) on elements ``(bits, level)``.

    Bitmask-specialized construction; identical as a poset to
    ``product(build_hypercube(k), build_chain_poset(n))``.
    """
    if k < 0:
        raise PosetError(f"cuboid needs k >= 0, got k={k}")
    if n < 1:
        raise PosetError(f"cuboid needs n >= 1, got n={n}")
    elements = [(b, c) for b in range(1 << k) for c in range(n)]
    covers = [((b, c), (b | (1 << i), c)) for (b, c) in elements for i in range(k) if not b & (1 << i)]
    covers += [((b, c), (b, c + 1)) for (b, c) in elements if c + 1 < n]
    rank = {(b, c): bin(b).count("1") + c for (b, c) in elements}
    return GradedPoset(
        elements, covers, rank,
        label=f"P({k},{n})",
        chain_factor=(build_hypercube(k), n),
    )


def poset_times_chain(p: GradedPoset, n: int) -> GradedPoset:
    """``p x chain(n)`` with the chain factor recorded.

    Hypercube bases route through :func:`build_cuboid` so the same
    ``(k, n)`` host is shared object-wide.
    """
    if p.hypercube_k is not None:
        return build_cuboid(p.hypercube_k, n)
    return product(p, build_chain_poset(n))


# -- the chain coordinate and packets --------------------------------------


def element_at(host: GradedPoset, p: Element, r: int) -> Element:
    """The unique element of ``base x chain(n)`` with base coordinate ``p``
    and total rank ``r``; rejects ``r`` outside ``[rk(p), rk(p)+n)``."""
    if host.chain_factor is None:
        raise PosetError(f"{host.label} does not expose a chain coordinate")
    base, n = host.chain_factor
    if p not in base:
        raise PosetError(f"{p!r} is not an element of {base.label}")
    rp = base.rank[p]
    if not rp <= r < rp + n:
        raise PosetError(
            f"rank {r} out of window [{rp}, {rp + n}) for base element {p!r}"
        )
    return (p, r - rp)


@dataclass(frozen=True)
class Packet:
    """All elements of ``base x chain(n)`` with base rank ``x`` and total
    rank ``y`` (equivalently chain coordinate ``y - x``)."""

    x: int
    y: int
    members: frozenset


def packet(host: GradedPoset, x: int, y: int) -> Packet:
    if host.chain_factor is None:
        raise PosetError(f"{host.label} does not expose a chain coordinate")
    base, n = host.chain_factor
    if not (0 <= x <= base.rk and x <= y <= x + n - 1):
        raise PosetError(f"no packet at (x={x}, y={y}) in {host.label}")
    members = frozenset((p, y - x) for p in base.by_rank[x])
    return Packet(x, y, members)


@dataclass(frozen=True)
class PacketGrid:
    """Packet sizes of ``p x chain(n)`` indexed by (base rank, total rank).

    Block ranges follow the three rank regimes of the product: the first
    block is ``[0, rk_p)``, the middle block ``[rk_p, n-1]``, and the last
    block ``(n-1, rk_p+n-1]``.  They are only defined for ``n >= rk_p``.
    """

    counts: dict[tuple[int, int], int]
    rk_p: int
    n: int

    @property
    def first_block(self) -> range | None:
        return range(0, self.rk_p) if self.n >= self.rk_p else None

    @property
    def middle_block(self) -> range | None:
        return range(self.rk_p, self.n) if self.n >= self.rk_p else None

    @property
    def last_block(self) -> range | None:
        return range(self.n, self.rk_p + self.n) if self.n >= self.rk_p else None

    def row(self, y: int) -> dict[int, int]:
        """Column -> count for the single total rank ``y``."""
        return {x: c for (x, yy), c in self.counts.items() if yy == y}


def packet_grid(p: GradedPoset, n: int) -> PacketGrid:
    """Pictorial-representation grid of ``p x chain(n)``.

    A rank-x element of ``p`` contributes one packet of size
    ``rank_vector[x]`` at every total rank ``y`` with ``x <= y <= x+n-1``.
    """
    if n < 1:
        raise PosetError(f"chain length must be positive, got n={n}")
    counts: dict[tuple[int, int], int] = {}
    for x, size in enumerate(p.rank_vector):
        for y in range(x, x + n):
            counts[(x, y)] = size
    return PacketGrid(counts, p.rk, n)


def is_rank_symmetric(p: GradedPoset) -> bool:
    """True iff the rank vector is palindromic."""
    return p.rank_vector == p.rank_vector[::-1]
