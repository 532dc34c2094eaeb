import math

import pytest

from latmod import (
    ArrowSet,
    NotATransferSystem,
    chain,
    cotransfer_systems,
    enumerate_cotransfer_systems,
    enumerate_transfer_systems,
    is_saturated,
    is_transfer_system,
    llp_dual,
    rlp_dual,
    singly_generated_transfers,
    tr_as_lattice,
    tr_join,
    tr_meet,
    transfer_catalog,
)
from latmod.arrows import lex_key

from conftest import lattice_as_sets
from oracles import all_transfer_systems_naive


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def test_n5_has_26_transfer_systems(pentagon):
    assert len(transfer_catalog(pentagon)) == 26


def test_chain_counts_are_catalan():
    for n in range(1, 5):
        assert len(transfer_catalog(chain(n))) == catalan(n + 1)


def test_catalog_matches_naive_filter(pentagon, square):
    for lat in (pentagon, square):
        n, leq, _, meets, _ = lattice_as_sets(lat)
        every = [(f.source, f.target) for f in lat.arrows]
        naive = {
            frozenset(s)
            for s in all_transfer_systems_naive(n, leq, meets, every)
        }
        ours = {
            frozenset((f.source, f.target) for f in s)
            for s in transfer_catalog(lat)
        }
        assert ours == naive


def test_strategies_agree(pentagon, grid21):
    for lat in (pentagon, grid21, chain(3)):
        exhaustive = enumerate_transfer_systems(lat, "exhaustive")
        backtracking = enumerate_transfer_systems(lat, "backtracking")
        assert [s.mask for s in exhaustive] == [s.mask for s in backtracking]


def test_jobs_do_not_change_output(pentagon, grid21):
    for lat in (pentagon, grid21):
        one = enumerate_transfer_systems(lat, "exhaustive", jobs=1)
        three = enumerate_transfer_systems(lat, "exhaustive", jobs=3)
        assert [s.mask for s in one] == [s.mask for s in three]


def test_catalog_is_sorted_and_containment_consistent(pentagon):
    catalog = transfer_catalog(pentagon)
    keys = [lex_key(s) for s in catalog]
    assert keys == sorted(keys)
    # catalog order refines containment
    for i, a in enumerate(catalog):
        for j, b in enumerate(catalog):
            if a < b:
                assert i < j
    assert catalog[0].mask == 0
    assert len(catalog[-1]) == len(pentagon.arrows)


def test_catalog_membership_api(pentagon):
    catalog = transfer_catalog(pentagon)
    empty = ArrowSet.empty(pentagon)
    assert empty in catalog
    assert catalog.position(empty) == 0
    not_closed = ArrowSet.from_labels(pentagon, [("0", "1")])
    assert not_closed not in catalog
    with pytest.raises(NotATransferSystem):
        catalog.position(not_closed)


def test_duality_bijection(pentagon):
    transfers = transfer_catalog(pentagon)
    cotransfers = enumerate_cotransfer_systems(pentagon)
    assert len(transfers) == len(cotransfers) == 26
    comasks = {s.mask for s in cotransfers}
    seen = set()
    for t in transfers:
        image = llp_dual(t)
        assert image.mask in comasks
        assert rlp_dual(image).mask == t.mask
        seen.add(image.mask)
    assert seen == comasks


def test_meet_is_intersection_join_is_generation(pentagon):
    catalog = transfer_catalog(pentagon)
    for a in catalog:
        for b in catalog:
            met = tr_meet(catalog, a, b)
            assert met.mask == a.mask & b.mask
            joined = tr_join(catalog, a, b)
            assert a <= joined and b <= joined
            assert is_transfer_system(joined)
            # nothing between the union and the join
            for c in catalog:
                if (a | b) <= c and c <= joined:
                    assert c.mask == joined.mask or not (c < joined)


def test_meet_join_reject_non_members(pentagon):
    catalog = transfer_catalog(pentagon)
    bogus = ArrowSet.from_labels(pentagon, [("0", "1")])
    with pytest.raises(NotATransferSystem):
        tr_meet(catalog, bogus, catalog[0])
    with pytest.raises(NotATransferSystem):
        tr_join(catalog, catalog[0], bogus)


def test_transfer_lattice_shape(pentagon):
    lat = tr_as_lattice(transfer_catalog(pentagon))
    assert lat.n == 26
    assert lat.labels[0] == "{}"
    assert lat.labels[-1].count("->") == 8


def test_transfer_lattice_of_chain_is_tamari_sized():
    lat = tr_as_lattice(transfer_catalog(chain(3)))
    assert lat.n == 14


def test_singly_generated_systems(pentagon):
    pairs = singly_generated_transfers(pentagon)
    assert len(pairs) == 8
    table = {
        pentagon.arrow_name(f): system.signature() for f, system in pairs
    }
    assert table == {
        "0->A": "{0->A}",
        "0->B": "{0->B}",
        "0->C": "{0->A, 0->C}",
        "0->1": "{0->A, 0->B, 0->C, 0->1}",
        "A->C": "{A->C}",
        "A->1": "{0->B, A->C, A->1}",
        "B->1": "{0->A, 0->C, B->1}",
        "C->1": "{0->B, C->1}",
    }
    catalog = transfer_catalog(pentagon)
    for _, system in pairs:
        assert system in catalog


def test_singly_generated_join_closure_regenerates_catalog(pentagon):
    catalog = transfer_catalog(pentagon)
    closed = {0} | {s.mask for _, s in singly_generated_transfers(pentagon)}
    while True:
        fresh = set()
        for a in closed:
            for b in closed:
                j = tr_join(
                    catalog, ArrowSet(pentagon, a), ArrowSet(pentagon, b)
                ).mask
                if j not in closed:
                    fresh.add(j)
        if not fresh:
            break
        closed |= fresh
    assert closed == {s.mask for s in catalog}


def test_saturation(pentagon):
    catalog = transfer_catalog(pentagon)
    saturated = [s for s in catalog if is_saturated(s)]
    assert len(saturated) == 13
    assert ArrowSet.empty(pentagon) in saturated
    assert ArrowSet.full(pentagon) in saturated
    with pytest.raises(NotATransferSystem):
        is_saturated(ArrowSet.from_labels(pentagon, [("0", "1")]))
