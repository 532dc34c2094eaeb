"""Sets of lattice arrows and the closure operators on them.

An ArrowSet stores the non-identity arrows of a wide subcategory (or any
plain set of arrows) as a bit mask over the ambient lattice's canonical
arrow list.  Identity arrows are implicit everywhere: they belong to every
wide subcategory, lift against everything, and would never constrain a
closure, so they are not stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import FixpointError
from .lattice import Arrow, FiniteLattice, pullbacks_of, pushouts_of


@dataclass(frozen=True)
class ArrowSet:
    """An immutable set of non-identity arrows of one lattice."""

    lattice: FiniteLattice
    mask: int

    # -- construction ---------------------------------------------------

    @classmethod
    def empty(cls, lat: FiniteLattice) -> "ArrowSet":
        return cls(lat, 0)

    @classmethod
    def full(cls, lat: FiniteLattice) -> "ArrowSet":
        return cls(lat, (1 << len(lat.arrows)) - 1)

    @classmethod
    def of(cls, lat: FiniteLattice, arrows: Iterable[Arrow | tuple[int, int]]) -> "ArrowSet":
        mask = 0
        for f in arrows:
            mask |= 1 << lat.arrow_position[Arrow(*f)]
        return cls(lat, mask)

    @classmethod
    def from_labels(
        cls, lat: FiniteLattice, pairs: Iterable[tuple[str, str]]
    ) -> "ArrowSet":
        return cls.of(lat, [lat.arrow(a, b) for a, b in pairs])

    # -- set behaviour --------------------------------------------------

    def __contains__(self, f: Arrow) -> bool:
        pos = self.lattice.arrow_position.get(Arrow(*f))
        return pos is not None and bool(self.mask >> pos & 1)

    def __iter__(self) -> Iterator[Arrow]:
        arrows = self.lattice.arrows
        mask = self.mask
        for i in range(len(arrows)):
            if mask >> i & 1:
                yield arrows[i]

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def _compatible(self, other: "ArrowSet") -> int:
        if self.lattice is not other.lattice:
            raise ValueError("arrow sets belong to different lattices")
        return other.mask

    def __or__(self, other: "ArrowSet") -> "ArrowSet":
        return ArrowSet(self.lattice, self.mask | self._compatible(other))

    def __and__(self, other: "ArrowSet") -> "ArrowSet":
        return ArrowSet(self.lattice, self.mask & self._compatible(other))

    def __sub__(self, other: "ArrowSet") -> "ArrowSet":
        return ArrowSet(self.lattice, self.mask & ~self._compatible(other))

    def __le__(self, other: "ArrowSet") -> bool:
        m = self._compatible(other)
        return self.mask & ~m == 0

    def __lt__(self, other: "ArrowSet") -> bool:
        return self <= other and self.mask != other.mask

    # -- presentation ---------------------------------------------------

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return tuple(self)

    def label_pairs(self) -> list[list[str]]:
        labels = self.lattice.labels
        return [[labels[f.source], labels[f.target]] for f in self]

    def signature(self) -> str:
        inner = ", ".join(self.lattice.arrow_name(f) for f in self)
        return "{" + inner + "}"

    def __repr__(self) -> str:
        return f"ArrowSet({self.signature()})"


def lex_key(aset: ArrowSet) -> int:
    """Sort key giving lexicographic order on membership bit vectors.

    Bit 0 (the first canonical arrow) is most significant, so the empty
    set sorts first and the full set last, and the order refines subset
    containment.
    """
    m = len(aset.lattice.arrows)
    mask = aset.mask
    out = 0
    for i in range(m):
        out = out << 1 | (mask >> i & 1)
    return out


# ---------------------------------------------------------------------------
# per-lattice closure tables


class _Tables:
    """Precomputed bit tables driving every closure and lifting operator."""

    __slots__ = (
        "m",
        "full",
        "pull",
        "push",
        "triples",
        "by_composite",
        "factor_options",
        "kill_llp",
        "kill_rlp",
    )

    def __init__(self, lat: FiniteLattice) -> None:
        arrows = lat.arrows
        pos = lat.arrow_position
        self.m = len(arrows)
        self.full = (1 << self.m) - 1

        self.pull = tuple(
            _mask_of(pos, pullbacks_of(lat, f)) for f in arrows
        )
        self.push = tuple(
            _mask_of(pos, pushouts_of(lat, f)) for f in arrows
        )

        # (i, j, k) with arrow_k = arrow_j o arrow_i, all non-identity.
        triples: list[tuple[int, int, int]] = []
        for k, (x, z) in enumerate(arrows):
            for y in range(x + 1, z):
                if lat.lt(x, y) and lat.lt(y, z):
                    triples.append((pos[Arrow(x, y)], pos[Arrow(y, z)], k))
        self.triples = tuple(triples)

        by_comp: dict[int, list[tuple[int, int]]] = {}
        for i, j, k in triples:
            by_comp.setdefault(k, []).append((i, j))
        self.by_composite = tuple(
            tuple(by_comp.get(k, ())) for k in range(self.m)
        )

        # Ways to factor arrow k as lower-then-upper through any midpoint,
        # with None meaning an identity leg.
        self.factor_options = tuple(
            ((None, k), (k, None)) + self.by_composite[k]
            for k in range(self.m)
        )

        self.kill_llp = [0] * self.m
        self.kill_rlp = [0] * self.m
        for j, (x, y) in enumerate(arrows):
            for i, (a, b) in enumerate(arrows):
                # f: a -> b lifts on the left of s: x -> y unless a square
                # exists (a <= x, b <= y) with no diagonal b <= x.
                if lat.le(a, x) and lat.le(b, y) and not lat.le(b, x):
                    self.kill_llp[j] |= 1 << i
                if lat.le(x, a) and lat.le(y, b) and not lat.le(y, a):
                    self.kill_rlp[j] |= 1 << i


def _mask_of(pos: dict[Arrow, int], arrows: Iterable[Arrow]) -> int:
    mask = 0
    for f in arrows:
        mask |= 1 << pos[f]
    return mask


@lru_cache(maxsize=None)
def _tables(lat: FiniteLattice) -> _Tables:
    return _Tables(lat)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _fixpoint(t: _Tables, mask: int, step) -> int:
    # Each productive round adds at least one arrow, so m+1 rounds suffice
    # for any monotone step; running longer signals a bug.
    for _ in range(t.m + 1):
        grown = step(mask)
        if grown == mask:
            return mask
        mask = grown
    raise FixpointError("closure did not stabilize within the arrow bound")


# ---------------------------------------------------------------------------
# closures


def close_composition(aset: ArrowSet) -> ArrowSet:
    """Smallest superset closed under composition of composable pairs."""
    t = _tables(aset.lattice)

    def step(mask: int) -> int:
        for i, j, k in t.triples:
            if mask >> i & 1 and mask >> j & 1:
                mask |= 1 << k
        return mask

    return ArrowSet(aset.lattice, _fixpoint(t, aset.mask, step))


def close_pullback(aset: ArrowSet) -> ArrowSet:
    """Smallest superset containing all nontrivial pullbacks of its members."""
    t = _tables(aset.lattice)

    def step(mask: int) -> int:
        out = mask
        for i in _bits(mask):
            out |= t.pull[i]
        return out

    return ArrowSet(aset.lattice, _fixpoint(t, aset.mask, step))


def close_pushout(aset: ArrowSet) -> ArrowSet:
    """Smallest superset containing all nontrivial pushouts of its members."""
    t = _tables(aset.lattice)

    def step(mask: int) -> int:
        out = mask
        for i in _bits(mask):
            out |= t.push[i]
        return out

    return ArrowSet(aset.lattice, _fixpoint(t, aset.mask, step))


def close_two_out_of_three(aset: ArrowSet) -> ArrowSet:
    """Close under composition and both cancellation rules, to a fixpoint."""
    t = _tables(aset.lattice)

    def step(mask: int) -> int:
        for i, j, k in t.triples:
            has = (mask >> i & 1) + (mask >> j & 1) + (mask >> k & 1)
            if has == 2:
                mask |= (1 << i) | (1 << j) | (1 << k)
        return mask

    return ArrowSet(aset.lattice, _fixpoint(t, aset.mask, step))


def close_retracts(aset: ArrowSet) -> ArrowSet:
    """Close under retracts.

    A retract diagram around g: x -> y needs maps a -> x -> a and
    b -> y -> b, which in a poset force a = x and b = y, so this always
    returns its input; it is kept as a genuine check of that fact.
    """
    lat = aset.lattice
    pos = lat.arrow_position
    mask = aset.mask
    for g in aset:
        x, y = g
        for a in range(lat.n):
            if not (lat.le(a, x) and lat.le(x, a)):
                continue
            for b in range(lat.n):
                if not (lat.le(b, y) and lat.le(y, b)):
                    continue
                if a != b:
                    mask |= 1 << pos[Arrow(a, b)]
    return ArrowSet(lat, mask)


def compose_sets(upper: ArrowSet, lower: ArrowSet) -> ArrowSet:
    """All composites g o f with f in lower, g in upper, identities allowed.

    The identity padding means the result contains both inputs; no
    closure is applied beyond the single composition.
    """
    mask = upper.mask | upper._compatible(lower)
    t = _tables(upper.lattice)
    for i, j, k in t.triples:
        if lower.mask >> i & 1 and upper.mask >> j & 1:
            mask |= 1 << k
    return ArrowSet(upper.lattice, mask)


# ---------------------------------------------------------------------------
# predicates


def is_composition_closed(aset: ArrowSet) -> bool:
    t = _tables(aset.lattice)
    mask = aset.mask
    for i, j, k in t.triples:
        if mask >> i & 1 and mask >> j & 1 and not mask >> k & 1:
            return False
    return True


def is_wide_decomposable(aset: ArrowSet) -> bool:
    """True when every member's two-step factorizations stay inside the set."""
    t = _tables(aset.lattice)
    mask = aset.mask
    for k in _bits(mask):
        for i, j in t.by_composite[k]:
            if not (mask >> i & 1 and mask >> j & 1):
                return False
    return True


def is_transfer_system(aset: ArrowSet) -> bool:
    """Closed under nontrivial pullbacks and under composition."""
    t = _tables(aset.lattice)
    mask = aset.mask
    for i in _bits(mask):
        if t.pull[i] & ~mask:
            return False
    return is_composition_closed(aset)


def is_cotransfer_system(aset: ArrowSet) -> bool:
    """Closed under nontrivial pushouts and under composition."""
    t = _tables(aset.lattice)
    mask = aset.mask
    for i in _bits(mask):
        if t.push[i] & ~mask:
            return False
    return is_composition_closed(aset)


# ---------------------------------------------------------------------------
# generation and lifting


def generate_transfer(aset: ArrowSet) -> ArrowSet:
    """Smallest transfer system containing the given arrows.

    Pullback closure first, then composition closure; the result is
    already pullback closed, which the test suite checks against the
    intersection of all containing systems.
    """
    return close_composition(close_pullback(aset))


def generate_cotransfer(aset: ArrowSet) -> ArrowSet:
    """Smallest cotransfer system containing the given arrows."""
    return close_composition(close_pushout(aset))


def llp_dual(aset: ArrowSet) -> ArrowSet:
    """Arrows with the left lifting property against every member."""
    t = _tables(aset.lattice)
    out = t.full
    for j in _bits(aset.mask):
        out &= ~t.kill_llp[j]
    return ArrowSet(aset.lattice, out)


def rlp_dual(aset: ArrowSet) -> ArrowSet:
    """Arrows with the right lifting property against every member."""
    t = _tables(aset.lattice)
    out = t.full
    for j in _bits(aset.mask):
        out &= ~t.kill_rlp[j]
    return ArrowSet(aset.lattice, out)
