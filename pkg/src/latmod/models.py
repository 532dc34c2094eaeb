"""Model structures on a finite lattice.

A model structure is determined by its weak equivalences W and acyclic
fibrations AF; the remaining classes are forced by lifting.  W must be a
wide decomposable subcategory whose members admit a short factorization
with all pushouts weakly equivalent below a pivot and all pullbacks above
it, and AF ranges over an interval of transfer systems inside W.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arrows import (
    ArrowSet,
    close_retracts,
    close_two_out_of_three,
    is_composition_closed,
    is_transfer_system,
    is_wide_decomposable,
    lex_key,
    llp_dual,
    rlp_dual,
    _tables,
    _bits,
)
from .errors import (
    MaximalityViolation,
    NotAdmissible,
    NotAWeakEquivalenceSet,
)
from .lattice import FiniteLattice, enumerate_short_factorizations
from .transfers import cotransfer_systems, transfer_catalog

_ENUMERATION_LIMIT = 24


# ---------------------------------------------------------------------------
# weak equivalence sets


def is_weak_equivalence_set(weq: ArrowSet) -> bool:
    """Check the factorization criterion for weak equivalence sets.

    The set must be a wide subcategory (composition closed), must be
    decomposable, and each member must factor into covers admitting a
    pivot: pushouts of the covers below it and pullbacks of the covers
    above it all stay inside the set.
    """
    if not is_composition_closed(weq):
        return False
    if not is_wide_decomposable(weq):
        return False
    lat = weq.lattice
    t = _tables(lat)
    pos = lat.arrow_position
    for f in weq:
        ok = False
        for chain in enumerate_short_factorizations(lat, f):
            push_ok = [t.push[pos[c]] & ~weq.mask == 0 for c in chain]
            pull_ok = [t.pull[pos[c]] & ~weq.mask == 0 for c in chain]
            n = len(chain)
            for pivot in range(n + 1):
                if all(push_ok[:pivot]) and all(pull_ok[pivot:]):
                    ok = True
                    break
            if ok:
                break
        if not ok:
            return False
    return True


@lru_cache(maxsize=None)
def enumerate_weak_equivalence_sets(lat: FiniteLattice) -> tuple[ArrowSet, ...]:
    """All weak equivalence sets, in canonical (bit vector) order."""
    m = len(lat.arrows)
    if m > _ENUMERATION_LIMIT:
        raise NotAWeakEquivalenceSet(
            f"{m} arrows is too many for exhaustive enumeration"
        )
    found = [
        aset
        for mask in range(1 << m)
        if is_weak_equivalence_set(aset := ArrowSet(lat, mask))
    ]
    found.sort(key=lex_key)
    return tuple(found)


# ---------------------------------------------------------------------------
# the admissible interval


def t_max(weq: ArrowSet) -> ArrowSet:
    """Largest transfer system inside the weak equivalences.

    Computed as the union of all catalog systems contained in weq and
    verified closed; failure of closure would contradict maximality.
    """
    union = ArrowSet.empty(weq.lattice)
    for system in transfer_catalog(weq.lattice):
        if system <= weq:
            union |= system
    if not is_transfer_system(union):
        raise MaximalityViolation(
            "union of transfer systems inside the weak equivalences "
            "is not itself a transfer system"
        )
    return union


def k_max(weq: ArrowSet) -> ArrowSet:
    """Largest cotransfer system inside the weak equivalences."""
    from .arrows import is_cotransfer_system

    union = ArrowSet.empty(weq.lattice)
    for system in cotransfer_systems(weq.lattice):
        if system <= weq:
            union |= system
    if not is_cotransfer_system(union):
        raise MaximalityViolation(
            "union of cotransfer systems inside the weak equivalences "
            "is not itself a cotransfer system"
        )
    return union


def t_min(weq: ArrowSet) -> ArrowSet:
    """Smallest admissible acyclic fibration class for these weak equivalences."""
    low = rlp_dual(k_max(weq)) & weq
    assert is_transfer_system(low) and low <= t_max(weq)
    return low


@lru_cache(maxsize=None)
def af_interval(weq: ArrowSet) -> tuple[ArrowSet, ...]:
    """Transfer systems T with t_min <= T <= t_max, in catalog order."""
    if not is_weak_equivalence_set(weq):
        raise NotAWeakEquivalenceSet(
            f"{weq.signature()} is not a weak equivalence set"
        )
    lo = t_min(weq)
    hi = t_max(weq)
    return tuple(
        system
        for system in transfer_catalog(weq.lattice)
        if lo <= system and system <= hi
    )


# ---------------------------------------------------------------------------
# model structures


@dataclass(frozen=True)
class ModelStructure:
    """The five interlocking arrow classes of a model structure."""

    lattice: FiniteLattice
    weq: ArrowSet
    acyclic_fib: ArrowSet
    cof: ArrowSet
    acyclic_cof: ArrowSet
    fib: ArrowSet

    def key(self) -> tuple[int, int]:
        return (self.weq.mask, self.acyclic_fib.mask)

    def signature(self) -> str:
        return f"W={self.weq.signature()} AF={self.acyclic_fib.signature()}"

    def __repr__(self) -> str:
        return f"ModelStructure({self.signature()})"


def derive_classes(
    weq: ArrowSet, acyclic_fib: ArrowSet, check: bool = True
) -> ModelStructure:
    """Complete (W, AF) to a full model structure by lifting.

    With check enabled, raises NotAdmissible unless AF lies in the
    admissible interval of W (which also validates W itself).
    """
    if check:
        interval = af_interval(weq)
        if all(acyclic_fib.mask != s.mask for s in interval):
            raise NotAdmissible(
                f"AF={acyclic_fib.signature()} is outside the admissible "
                f"interval of W={weq.signature()}"
            )
    cof = llp_dual(acyclic_fib)
    acyclic_cof = cof & weq
    fib = rlp_dual(acyclic_cof)
    return ModelStructure(weq.lattice, weq, acyclic_fib, cof, acyclic_cof, fib)


@lru_cache(maxsize=None)
def enumerate_model_structures(lat: FiniteLattice) -> tuple[ModelStructure, ...]:
    """Every model structure, ordered by weak equivalences then by AF."""
    out: list[ModelStructure] = []
    for weq in enumerate_weak_equivalence_sets(lat):
        for system in af_interval(weq):
            out.append(derive_classes(weq, system, check=False))
    return tuple(out)


def verify_model_axioms(model: ModelStructure) -> bool:
    """Check the model structure axioms directly, without the interval.

    Verifies retract closure of W, C, and F, two-out-of-three for W, both
    lifting identities of both weak factorization systems, the definitional
    identities tying the five classes together, and the factorization of
    every arrow through (cofibration, acyclic fibration) and through
    (acyclic cofibration, fibration).
    """
    lat = model.lattice
    weq, af = model.weq, model.acyclic_fib
    cof, ac, fib = model.cof, model.acyclic_cof, model.fib
    if close_two_out_of_three(weq).mask != weq.mask:
        return False
    for cls in (weq, cof, fib):
        if close_retracts(cls).mask != cls.mask:
            return False
    if llp_dual(af).mask != cof.mask or rlp_dual(cof).mask != af.mask:
        return False
    if llp_dual(fib).mask != ac.mask or fib.mask != rlp_dual(ac).mask:
        return False
    if af.mask & ~weq.mask or ac.mask != (cof & weq).mask:
        return False
    if af.mask != (fib & weq).mask:
        return False
    t = _tables(lat)
    for k in range(t.m):
        if not _factors_through(t, k, cof.mask, af.mask):
            return False
        if not _factors_through(t, k, ac.mask, fib.mask):
            return False
    return True


def _factors_through(t, k: int, lower: int, upper: int) -> bool:
    # Arrow k must split as a lower-class leg then an upper-class leg,
    # identity legs allowed.
    for i, j in t.factor_options[k]:
        if (i is None or lower >> i & 1) and (j is None or upper >> j & 1):
            return True
    return False
