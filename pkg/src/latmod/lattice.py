"""Finite lattices with explicit order, meet, and join tables.

Elements are integer indices 0..n-1 in a fixed linear extension of the
order, so x <= y implies index(x) <= index(y).  Ties in the topological
sort are broken by input label order, which makes element numbering (and
everything downstream of it) deterministic.
"""
from __future__ import annotations

import heapq
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import CycleError, DuplicateLabel, NotALattice, UnknownLabel


class Arrow(NamedTuple):
    """A non-identity relation x < y, stored as a pair of element indices."""

    source: int
    target: int


class FiniteLattice:
    """Immutable finite lattice.

    Construct with :func:`build_lattice`, :func:`chain`, :func:`n5` or
    :func:`product`; the constructor itself trusts its arguments.
    Instances compare by identity and are safe to use as cache keys.
    """

    def __init__(
        self,
        labels: Sequence[str],
        leq: np.ndarray,
        meet_table: np.ndarray,
        join_table: np.ndarray,
    ) -> None:
        self.n = len(labels)
        self.labels: tuple[str, ...] = tuple(labels)
        self._leq = np.asarray(leq, dtype=bool)
        self._leq.setflags(write=False)
        self._meet = np.asarray(meet_table, dtype=np.int16)
        self._meet.setflags(write=False)
        self._join = np.asarray(join_table, dtype=np.int16)
        self._join.setflags(write=False)
        self._label_pos = {lab: i for i, lab in enumerate(self.labels)}

    # Identity-based equality: lattices are immutable and shared by reference.
    __hash__ = object.__hash__

    def __repr__(self) -> str:
        return f"FiniteLattice(n={self.n}, labels={list(self.labels)})"

    # -- order ----------------------------------------------------------

    def le(self, x: int, y: int) -> bool:
        """True when x <= y in the lattice order."""
        return bool(self._leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self._leq[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self._meet[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self._join[x, y])

    @property
    def leq_matrix(self) -> np.ndarray:
        return self._leq

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    # -- labels ---------------------------------------------------------

    def label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        try:
            return self._label_pos[label]
        except KeyError:
            raise UnknownLabel(f"no element labelled {label!r}") from None

    def arrow(self, source_label: str, target_label: str) -> Arrow:
        """Resolve a label pair to an Arrow, checking comparability."""
        s = self.index_of(source_label)
        t = self.index_of(target_label)
        if s == t:
            raise UnknownLabel(
                f"identity {source_label!r} -> {target_label!r} is not an arrow"
            )
        if not self.le(s, t):
            raise UnknownLabel(
                f"{source_label!r} -> {target_label!r} is not a relation"
            )
        return Arrow(s, t)

    def arrow_name(self, f: Arrow) -> str:
        return f"{self.labels[f.source]}->{self.labels[f.target]}"

    # -- derived structure ---------------------------------------------

    @cached_property
    def covers(self) -> tuple[Arrow, ...]:
        """Indecomposable relations x < y, in (source, target) order."""
        lt = self._leq & ~np.eye(self.n, dtype=bool)
        cov = lt & ~(lt @ lt)
        return tuple(Arrow(int(s), int(t)) for s, t in np.argwhere(cov))

    @cached_property
    def arrows(self) -> tuple[Arrow, ...]:
        """All non-identity relations, in (source, target) order."""
        lt = self._leq & ~np.eye(self.n, dtype=bool)
        return tuple(Arrow(int(s), int(t)) for s, t in np.argwhere(lt))

    @cached_property
    def arrow_position(self) -> dict[Arrow, int]:
        return {f: i for i, f in enumerate(self.arrows)}


# ---------------------------------------------------------------------------
# construction


def build_lattice(
    labels: Iterable[str], covers: Iterable[tuple[str, str]]
) -> FiniteLattice:
    """Build and validate a lattice from labels and generating relations.

    The relations are closed reflexively and transitively; the pairs do
    not have to be covers (redundant relations are harmless).  Raises
    DuplicateLabel, UnknownLabel, CycleError, or NotALattice.
    """
    labels = list(labels)
    if not labels:
        raise NotALattice("a lattice needs at least one element")
    seen: set[str] = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"label {lab!r} appears twice")
        seen.add(lab)
    pos = {lab: i for i, lab in enumerate(labels)}

    n = len(labels)
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in covers:
        for lab in (a, b):
            if lab not in pos:
                raise UnknownLabel(f"cover refers to unknown label {lab!r}")
        if a != b:
            succ[pos[a]].add(pos[b])

    order = _topological_order(n, succ)
    rank = {orig: new for new, orig in enumerate(order)}

    adj = np.zeros((n, n), dtype=bool)
    for a, bs in enumerate(succ):
        for b in bs:
            adj[rank[a], rank[b]] = True
    leq = _reflexive_transitive_closure(adj)

    new_labels = [labels[orig] for orig in order]
    meet, join = _meet_join_tables(leq, new_labels)
    return FiniteLattice(new_labels, leq, meet, join)


def _topological_order(n: int, succ: list[set[int]]) -> list[int]:
    # Kahn's algorithm with a min-heap on input position, so the returned
    # linear extension is the canonical one.
    indeg = [0] * n
    for bs in succ:
        for b in bs:
            indeg[b] += 1
    heap = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        a = heapq.heappop(heap)
        order.append(a)
        for b in succ[a]:
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(heap, b)
    if len(order) < n:
        raise CycleError("cover relation contains a directed cycle")
    return order


def _reflexive_transitive_closure(adj: np.ndarray) -> np.ndarray:
    reach = adj | np.eye(adj.shape[0], dtype=bool)
    while True:
        nxt = reach | (reach @ reach)
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def _meet_join_tables(
    leq: np.ndarray, labels: Sequence[str]
) -> tuple[np.ndarray, np.ndarray]:
    n = leq.shape[0]
    meet = np.zeros((n, n), dtype=np.int16)
    join = np.zeros((n, n), dtype=np.int16)
    for x in range(n):
        for y in range(x, n):
            lows = leq[:, x] & leq[:, y]
            # In a linear extension, a greatest lower bound must be the
            # highest-index common lower bound.
            g = int(np.flatnonzero(lows)[-1]) if lows.any() else -1
            if g < 0 or not (leq[lows, g]).all():
                raise NotALattice(
                    f"elements {labels[x]!r} and {labels[y]!r} have no meet"
                )
            ups = leq[x, :] & leq[y, :]
            l = int(np.flatnonzero(ups)[0]) if ups.any() else -1
            if l < 0 or not (leq[l, ups]).all():
                raise NotALattice(
                    f"elements {labels[x]!r} and {labels[y]!r} have no join"
                )
            meet[x, y] = meet[y, x] = g
            join[x, y] = join[y, x] = l
    return meet, join


def chain(n: int) -> FiniteLattice:
    """The total order 0 < 1 < ... < n."""
    labels = [str(i) for i in range(n + 1)]
    return build_lattice(labels, [(str(i), str(i + 1)) for i in range(n)])


def n5() -> FiniteLattice:
    """The pentagon: 0 < A < C < 1 and 0 < B < 1 with B incomparable to A, C."""
    return build_lattice(
        ["0", "A", "B", "C", "1"],
        [("0", "A"), ("A", "C"), ("C", "1"), ("0", "B"), ("B", "1")],
    )


def product(left: FiniteLattice, right: FiniteLattice) -> FiniteLattice:
    """Componentwise product, with labels "(a,b)" from the factor labels."""
    labels = [
        f"({la},{lb})" for la in left.labels for lb in right.labels
    ]

    def lab(a: int, b: int) -> str:
        return f"({left.labels[a]},{right.labels[b]})"

    covers: list[tuple[str, str]] = []
    for a, a2 in left.covers:
        for b in range(right.n):
            covers.append((lab(a, b), lab(a2, b)))
    for b, b2 in right.covers:
        for a in range(left.n):
            covers.append((lab(a, b), lab(a, b2)))
    return build_lattice(labels, covers)


# ---------------------------------------------------------------------------
# arrows and factorizations


def short_arrows(lat: FiniteLattice) -> tuple[Arrow, ...]:
    """The covers of the lattice; every arrow factors through these."""
    return lat.covers


def pushouts_of(lat: FiniteLattice, f: Arrow) -> frozenset[Arrow]:
    """Nontrivial pushouts of f: for each z >= source, the arrow z -> z v target.

    Identities and f itself are excluded.
    """
    s, t = f
    out: set[Arrow] = set()
    for z in range(lat.n):
        if lat.le(s, z):
            w = lat.join(z, t)
            if z != w and (z, w) != (s, t):
                out.add(Arrow(z, w))
    return frozenset(out)


def pullbacks_of(lat: FiniteLattice, f: Arrow) -> frozenset[Arrow]:
    """Nontrivial pullbacks of f: for each z <= target, the arrow source ^ z -> z."""
    s, t = f
    out: set[Arrow] = set()
    for z in range(lat.n):
        if lat.le(z, t):
            w = lat.meet(s, z)
            if w != z and (w, z) != (s, t):
                out.add(Arrow(w, z))
    return frozenset(out)


def enumerate_short_factorizations(
    lat: FiniteLattice, f: Arrow
) -> list[tuple[Arrow, ...]]:
    """All factorizations of f as a composite of covers, source first.

    These are the maximal chains of the interval [source, target]; every
    step is a cover of the ambient lattice because intervals are convex.
    """
    s, t = f
    if s == t:
        raise NotALattice("identity arrows have no short factorization")
    step: dict[int, list[Arrow]] = {}
    for c in lat.covers:
        if lat.le(s, c.source) and lat.le(c.target, t):
            step.setdefault(c.source, []).append(c)
    chains: list[tuple[Arrow, ...]] = []
    path: list[Arrow] = []

    def walk(x: int) -> None:
        if x == t:
            chains.append(tuple(path))
            return
        for c in step.get(x, ()):
            path.append(c)
            walk(c.target)
            path.pop()

    walk(s)
    return chains


# ---------------------------------------------------------------------------
# modularity and sublattices


def is_modular(lat: FiniteLattice) -> bool:
    """Check the modular law: x <= y implies x v (a ^ y) = (x v a) ^ y."""
    for x in range(lat.n):
        for y in range(x, lat.n):
            if not lat.le(x, y):
                continue
            for a in range(lat.n):
                if lat.join(x, lat.meet(a, y)) != lat.meet(lat.join(x, a), y):
                    return False
    return True


def find_sublattice_embedding(
    lat: FiniteLattice, pattern: FiniteLattice
) -> tuple[int, ...] | None:
    """Search for an injective map pattern -> lat preserving meet and join.

    Returns the image indices in pattern element order, or None.  Meet and
    join preservation forces the map to be an order embedding, so this is
    the sublattice relation (subposets that fail to preserve meets, such
    as the pentagon inside the 3x2 grid, are rejected).
    """
    if pattern.n > lat.n:
        return None
    assign = [-1] * pattern.n
    used = [False] * lat.n

    def consistent(k: int, img: int) -> bool:
        for i in range(k):
            a = assign[i]
            # pattern.meet(i, k) has index <= i in a linear extension, so
            # its image is already fixed; joins above k are checked later.
            if lat.meet(a, img) != assign[pattern.meet(i, k)]:
                return False
            j = pattern.join(i, k)
            if j <= k:
                expect = img if j == k else assign[j]
                if lat.join(a, img) != expect:
                    return False
        return True

    def complete() -> bool:
        for i in range(pattern.n):
            for j in range(i, pattern.n):
                if lat.meet(assign[i], assign[j]) != assign[pattern.meet(i, j)]:
                    return False
                if lat.join(assign[i], assign[j]) != assign[pattern.join(i, j)]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == pattern.n:
            return complete()
        for img in range(lat.n):
            if used[img] or not consistent(k, img):
                continue
            assign[k] = img
            used[img] = True
            if search(k + 1):
                return True
            used[img] = False
            assign[k] = -1
        return False

    return tuple(assign) if search(0) else None
