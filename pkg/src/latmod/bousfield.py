"""Left and right Bousfield localization of lattice model structures.

Localizing at an arrow enlarges the weak equivalences by a fixpoint
construction; right localization keeps the fibrations and replaces the
acyclic fibrations using golden arrows, left localization keeps the
cofibrations (and so the acyclic fibrations) untouched.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator

from .arrows import (
    ArrowSet,
    close_two_out_of_three,
    compose_sets,
    generate_cotransfer,
    generate_transfer,
    rlp_dual,
)
from .errors import AmbiguousMinimum, FixpointError, NotShort
from .lattice import Arrow, FiniteLattice, enumerate_short_factorizations
from .models import (
    ModelStructure,
    derive_classes,
    enumerate_model_structures,
    enumerate_weak_equivalence_sets,
)


def weq_components(weq: ArrowSet) -> tuple[tuple[int, ...], ...]:
    """Blocks of elements connected by weak equivalences, sorted by minimum."""
    lat = weq.lattice
    parent = list(range(lat.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in weq:
        a, b = find(f.source), find(f.target)
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for x in range(lat.n):
        blocks.setdefault(find(x), []).append(x)
    return tuple(tuple(blocks[root]) for root in sorted(blocks))


@dataclass(frozen=True)
class GoldenArrowReport:
    """Golden arrows contributed by one newly weakly-equivalent cover."""

    new_weq: Arrow
    targets: tuple[int, ...]
    sources: tuple[int, ...]
    golden: ArrowSet


def _maximal(lat: FiniteLattice, elems: list[int]) -> list[int]:
    return [
        x for x in elems if not any(lat.lt(x, y) for y in elems if y != x)
    ]


def golden_arrows(
    model: ModelStructure, f: Arrow
) -> tuple[GoldenArrowReport, ...]:
    """Golden arrow reports for right localization at a short arrow.

    For each cover made newly weakly equivalent, targets are the maximal
    elements of the old component of its target, sources the maximal
    elements of the old component of its source lying under some target,
    and the golden arrows pair them up (incomparable pairs are dropped).
    Localizing at an existing weak equivalence yields no reports.
    """
    lat = model.lattice
    if f not in lat.covers:
        raise NotShort(f"{lat.arrow_name(f)} is not a cover")
    if f in model.weq:
        return ()
    new_weq = _localize_weq(model, f, side="right")
    comps = weq_components(model.weq)
    block_of = {x: comp for comp in comps for x in comp}
    reports: list[GoldenArrowReport] = []
    for sigma in lat.covers:
        if sigma not in new_weq or sigma in model.weq:
            continue
        targets = _maximal(lat, list(block_of[sigma.target]))
        under = [
            y
            for y in block_of[sigma.source]
            if any(lat.le(y, t) for t in targets)
        ]
        sources = _maximal(lat, under)
        golden = ArrowSet.of(
            lat,
            [
                Arrow(s, t)
                for s in sources
                for t in targets
                if s != t and lat.le(s, t)
            ],
        )
        reports.append(
            GoldenArrowReport(sigma, tuple(targets), tuple(sources), golden)
        )
    return tuple(reports)


def golden_arrow_set(model: ModelStructure, f: Arrow) -> ArrowSet:
    """Union of all golden arrows for right localization at f."""
    out = ArrowSet.empty(model.lattice)
    for report in golden_arrows(model, f):
        out |= report.golden
    return out


def _localize_weq(model: ModelStructure, f: Arrow, side: str) -> ArrowSet:
    """Fixpoint computation of the localized weak equivalences.

    Alternates between generating the moving class from the newly added
    weak equivalences and reclosing the composite class under
    two-out-of-three, until the weak equivalences stop growing.
    """
    lat = model.lattice
    moving = model.acyclic_fib if side == "right" else model.acyclic_cof
    fresh = ArrowSet.of(lat, [f])
    weq = model.weq
    for _ in range(len(lat.arrows) + 1):
        if side == "right":
            moving = generate_transfer(moving | fresh)
            grown = compose_sets(moving, model.acyclic_cof)
        else:
            moving = generate_cotransfer(moving | fresh)
            grown = compose_sets(model.acyclic_fib, moving)
        grown = close_two_out_of_three(grown)
        if grown.mask == weq.mask:
            return weq
        if weq.mask & ~grown.mask:
            raise FixpointError("localized weak equivalences shrank")
        fresh = grown - weq
        weq = grown
    raise FixpointError("weak equivalence fixpoint did not stabilize")


def right_localize(model: ModelStructure, f: Arrow) -> ModelStructure:
    """Right Bousfield localization at f; fibrations are preserved.

    For a short arrow the new acyclic fibrations are generated by the old
    ones plus the golden arrows.  Longer arrows localize as the composite
    of right localizations along a short factorization, cross-checked
    against the direct fixpoint on f.
    """
    f = Arrow(*f)
    if f in model.weq:
        return model
    if f in model.lattice.covers:
        new_weq = _localize_weq(model, f, side="right")
        new_af = generate_transfer(model.acyclic_fib | golden_arrow_set(model, f))
        localized = derive_classes(new_weq, new_af)
    else:
        localized = model
        for sigma in enumerate_short_factorizations(model.lattice, f)[0]:
            localized = right_localize(localized, sigma)
        direct = _localize_weq(model, f, side="right")
        if localized.weq.mask != direct.mask:
            raise FixpointError(
                "stepwise and direct right localizations disagree"
            )
    if rlp_dual(localized.acyclic_cof).mask != model.fib.mask:
        raise FixpointError("right localization failed to preserve fibrations")
    return localized


def left_localize(model: ModelStructure, f: Arrow) -> ModelStructure:
    """Left Bousfield localization at f; cofibrations and AF are preserved."""
    f = Arrow(*f)
    if f in model.weq:
        return model
    new_weq = _localize_weq(model, f, side="left")
    localized = derive_classes(new_weq, model.acyclic_fib)
    if localized.cof.mask != model.cof.mask:
        raise FixpointError("left localization failed to preserve cofibrations")
    return localized


# ---------------------------------------------------------------------------
# the localization graph


@dataclass(frozen=True)
class LocalizationEdge:
    src: int
    dst: int
    side: str
    at: Arrow


@dataclass(frozen=True)
class LocalizationGraph:
    """All model structures with left and right localization edges."""

    structures: tuple[ModelStructure, ...]
    edges: tuple[LocalizationEdge, ...]
    trivial_index: int

    def __len__(self) -> int:
        return len(self.structures)

    def neighbours(self, i: int) -> Iterator[int]:
        for e in self.edges:
            if e.src == i:
                yield e.dst


def localization_graph(lat: FiniteLattice) -> LocalizationGraph:
    """Build the localization graph over every model structure.

    Edges localize at covers outside the weak equivalences only; a cover
    already weakly equivalent gives the identity localization, so no self
    loops appear.
    """
    structures = enumerate_model_structures(lat)
    position = {m.key(): i for i, m in enumerate(structures)}
    trivial = position[(0, 0)]
    arrow_pos = lat.arrow_position
    edges: list[LocalizationEdge] = []
    for i, model in enumerate(structures):
        for f in lat.covers:
            if f in model.weq:
                continue
            for side, op in (("left", left_localize), ("right", right_localize)):
                target = op(model, f)
                edges.append(
                    LocalizationEdge(i, position[target.key()], side, f)
                )
    edges.sort(key=lambda e: (e.src, e.side, arrow_pos[e.at], e.dst))
    return LocalizationGraph(structures, tuple(edges), trivial)


def reachable_from_trivial(graph: LocalizationGraph) -> frozenset[int]:
    """Indices of structures reachable from the trivial one by localizations."""
    seen = {graph.trivial_index}
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for nxt in graph.neighbours(node):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def is_weakly_connected(graph: LocalizationGraph) -> bool:
    """Whether the graph is connected when edge directions are ignored."""
    if not graph.structures:
        return True
    adj: dict[int, set[int]] = {i: set() for i in range(len(graph))}
    for edge in graph.edges:
        adj[edge.src].add(edge.dst)
        adj[edge.dst].add(edge.src)
    seen = {0}
    queue = deque(seen)
    while queue:
        node = queue.popleft()
        for nxt in adj[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen) == len(graph)


def smallest_weq_superset(lat: FiniteLattice, base: ArrowSet) -> ArrowSet:
    """The unique smallest weak equivalence set containing the given arrows.

    Raises AmbiguousMinimum when the minimal candidates are not unique;
    used as an independent check on the localization fixpoints.
    """
    candidates = [
        weq for weq in enumerate_weak_equivalence_sets(lat) if base <= weq
    ]
    minimal = [
        weq
        for weq in candidates
        if not any(other < weq for other in candidates)
    ]
    if len(minimal) != 1:
        raise AmbiguousMinimum(
            f"{len(minimal)} minimal weak equivalence sets contain "
            f"{base.signature()}"
        )
    return minimal[0]
