"""Enumeration of transfer systems and the lattice they form."""
from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

from .arrows import (
    ArrowSet,
    close_two_out_of_three,
    generate_transfer,
    is_cotransfer_system,
    is_transfer_system,
    lex_key,
)
from .errors import NotATransferSystem
from .lattice import Arrow, FiniteLattice, build_lattice

# Above this many arrows an exhaustive 2^m scan stops being the fast path.
_EXHAUSTIVE_LIMIT = 12


@dataclass(frozen=True)
class TransferCatalog:
    """All transfer systems of one lattice, in canonical order.

    Canonical order is lexicographic on membership bit vectors (first
    canonical arrow most significant), which refines containment: the
    empty system is first and the complete one last.
    """

    lattice: FiniteLattice
    systems: tuple[ArrowSet, ...]

    def __len__(self) -> int:
        return len(self.systems)

    def __iter__(self) -> Iterator[ArrowSet]:
        return iter(self.systems)

    def __getitem__(self, i: int) -> ArrowSet:
        return self.systems[i]

    @cached_property
    def _positions(self) -> dict[int, int]:
        return {s.mask: i for i, s in enumerate(self.systems)}

    def position(self, system: ArrowSet) -> int:
        try:
            return self._positions[system.mask]
        except KeyError:
            raise NotATransferSystem(
                f"{system.signature()} is not in the catalog"
            ) from None

    def __contains__(self, system: ArrowSet) -> bool:
        return system.mask in self._positions

    @cached_property
    def containment(self) -> np.ndarray:
        """Boolean matrix: containment[i, j] is systems[i] <= systems[j]."""
        m = len(self.lattice.arrows)
        bits = np.zeros((len(self.systems), m), dtype=bool)
        for i, s in enumerate(self.systems):
            for b in range(m):
                bits[i, b] = bool(s.mask >> b & 1)
        return ~(bits[:, None, :] & ~bits[None, :, :]).any(axis=2)


def enumerate_transfer_systems(
    lat: FiniteLattice, strategy: str = "auto", jobs: int = 1
) -> TransferCatalog:
    """Enumerate every transfer system on the lattice.

    strategy "exhaustive" filters all 2^m subsets, "backtracking" prunes
    on forced closures, "auto" picks by arrow count.  The worker count
    only shards the exhaustive scan and never changes the result.
    """
    m = len(lat.arrows)
    if strategy == "auto":
        strategy = "exhaustive" if m <= _EXHAUSTIVE_LIMIT else "backtracking"
    if strategy == "exhaustive":
        masks = _scan_exhaustive(lat, jobs)
    elif strategy == "backtracking":
        masks = _backtrack(lat, is_transfer_system, _pullback_generate)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    systems = [ArrowSet(lat, mask) for mask in masks]
    systems.sort(key=lex_key)
    return TransferCatalog(lat, tuple(systems))


def enumerate_cotransfer_systems(
    lat: FiniteLattice, strategy: str = "auto"
) -> tuple[ArrowSet, ...]:
    """Every cotransfer system, in the same canonical order."""
    m = len(lat.arrows)
    if strategy == "auto":
        strategy = "exhaustive" if m <= _EXHAUSTIVE_LIMIT else "backtracking"
    if strategy == "exhaustive":
        masks = [
            mask
            for mask in range(1 << m)
            if is_cotransfer_system(ArrowSet(lat, mask))
        ]
    elif strategy == "backtracking":
        masks = _backtrack(lat, is_cotransfer_system, _pushout_generate)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    systems = [ArrowSet(lat, mask) for mask in masks]
    systems.sort(key=lex_key)
    return tuple(systems)


def _pullback_generate(lat: FiniteLattice, mask: int) -> int:
    return generate_transfer(ArrowSet(lat, mask)).mask


def _pushout_generate(lat: FiniteLattice, mask: int) -> int:
    from .arrows import generate_cotransfer

    return generate_cotransfer(ArrowSet(lat, mask)).mask


def _backtrack(lat: FiniteLattice, is_closed, generate) -> list[int]:
    """Enumerate closed masks by deciding one arrow at a time.

    Including an arrow immediately forces its generated closure; a branch
    dies as soon as that closure meets an excluded arrow.  Each closed set
    is produced exactly once because the first differing arrow was decided
    by a distinct branch.
    """
    m = len(lat.arrows)
    out: list[int] = []

    def walk(i: int, included: int, excluded: int) -> None:
        while i < m and (included >> i & 1 or excluded >> i & 1):
            i += 1
        if i == m:
            out.append(included)
            return
        walk(i + 1, included, excluded | 1 << i)
        grown = generate(lat, included | 1 << i)
        if not grown & excluded:
            walk(i + 1, grown, excluded)

    walk(0, 0, 0)
    return out


def _scan_chunk(args: tuple[FiniteLattice, int, int]) -> list[int]:
    lat, lo, hi = args
    return [
        mask for mask in range(lo, hi) if is_transfer_system(ArrowSet(lat, mask))
    ]


def _scan_exhaustive(lat: FiniteLattice, jobs: int) -> list[int]:
    total = 1 << len(lat.arrows)
    if jobs <= 1:
        return _scan_chunk((lat, 0, total))
    step = -(-total // jobs)
    chunks = [
        (lat, lo, min(lo + step, total)) for lo in range(0, total, step)
    ]
    with multiprocessing.Pool(jobs) as pool:
        parts = pool.map(_scan_chunk, chunks)
    return [mask for part in parts for mask in part]


@lru_cache(maxsize=None)
def transfer_catalog(lat: FiniteLattice) -> TransferCatalog:
    """Cached default-strategy catalog for repeated structural queries."""
    return enumerate_transfer_systems(lat)


@lru_cache(maxsize=None)
def cotransfer_systems(lat: FiniteLattice) -> tuple[ArrowSet, ...]:
    return enumerate_cotransfer_systems(lat)


# ---------------------------------------------------------------------------
# the lattice of transfer systems


def tr_meet(catalog: TransferCatalog, a: ArrowSet, b: ArrowSet) -> ArrowSet:
    """Meet in the transfer system lattice is plain intersection."""
    catalog.position(a)
    catalog.position(b)
    met = a & b
    assert met in catalog, "intersection of transfer systems must be one"
    return met


def tr_join(catalog: TransferCatalog, a: ArrowSet, b: ArrowSet) -> ArrowSet:
    """Join is the transfer system generated by the union."""
    catalog.position(a)
    catalog.position(b)
    joined = generate_transfer(a | b)
    assert joined in catalog, "generated join must be in the catalog"
    return joined


def tr_as_lattice(catalog: TransferCatalog) -> FiniteLattice:
    """The containment order of the catalog as a FiniteLattice.

    Node labels are the systems' signatures.  The meet and join tables of
    the result are checked against tr_meet and tr_join.
    """
    systems = catalog.systems
    labels = [s.signature() for s in systems]
    sub = catalog.containment
    strict = sub & ~np.eye(len(systems), dtype=bool)
    cover = strict & ~(strict @ strict)
    lat = build_lattice(
        labels,
        [(labels[i], labels[j]) for i, j in np.argwhere(cover)],
    )
    # Catalog order is a linear extension of containment, so positions
    # survive the canonical reordering and the tables must agree.
    assert list(lat.labels) == labels
    for i in range(len(systems)):
        for j in range(len(systems)):
            met = tr_meet(catalog, systems[i], systems[j])
            joined = tr_join(catalog, systems[i], systems[j])
            assert lat.meet(i, j) == catalog.position(met)
            assert lat.join(i, j) == catalog.position(joined)
    return lat


def singly_generated_transfers(
    lat: FiniteLattice,
) -> tuple[tuple[Arrow, ArrowSet], ...]:
    """Distinct transfer systems generated by one arrow each.

    Returns (generator, system) pairs in canonical arrow order, keeping
    the first generator of each distinct system.
    """
    seen: set[int] = set()
    out: list[tuple[Arrow, ArrowSet]] = []
    for f in lat.arrows:
        system = generate_transfer(ArrowSet.of(lat, [f]))
        if system.mask not in seen:
            seen.add(system.mask)
            out.append((f, system))
    return tuple(out)


def is_saturated(system: ArrowSet) -> bool:
    """Whether a transfer system is already two-out-of-three closed."""
    if not is_transfer_system(system):
        raise NotATransferSystem(
            f"{system.signature()} is not a transfer system"
        )
    return close_two_out_of_three(system).mask == system.mask
