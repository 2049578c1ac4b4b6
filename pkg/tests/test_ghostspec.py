"""Runtime-checkable specification layer.

Each invariant clause gets a targeted corruption that must trip exactly
that clause with a witness. The derived properties (acyclicity, unique
endpoints) must follow from the invariant, which is checked here on
hand-built states and exhaustively elsewhere.
"""

import pytest
from hypothesis import given, settings, strategies as st

from overlist.errors import ContractViolation, UsageError
from overlist.ghostspec import (
    EMPTY_FOOTPRINT,
    Footprint,
    check_acyclic,
    check_invariant,
    check_unique_endpoints,
    contract_for,
    cycle_propagation_witness,
    frame_check,
    run_checked,
    take_snapshot,
)
from overlist.heapmodel import NULL, Atom
from overlist.jint import JInt
from overlist.listcore import CheckMode, SizePolicy, new_list
from overlist.statespace import build_list

A, B = Atom("a"), Atom("b")


def checked_list(items):
    return build_list(items, check_mode=CheckMode.FULL)


class TestInvariantClauses:
    def test_well_formed_passes_all(self):
        for items in ([], [A], [A, NULL, B]):
            report = check_invariant(build_list(items))
            assert report.ok, report.failures()

    def test_c1_size_vs_ghost_length(self):
        lst = build_list([A, B])
        lst.size = JInt(3, 8)
        report = check_invariant(lst)
        assert [cid for cid, _ in report.failures()] == ["C1"]
        assert "size=3" in report.clauses["C1"].witness

    def test_c3_ghost_entries_allocated(self):
        lst = build_list([A, B])
        lst.ghost.node_list.append(999)
        lst.size = JInt(3, 8)  # keep C1 quiet to isolate C3
        failed = {cid for cid, _ in check_invariant(lst).failures()}
        assert "C3" in failed

    def test_c4_empty_endpoints_absent(self):
        lst = build_list([A])
        nid = lst.ghost.node_list[0]
        lst.ghost.node_list.clear()
        lst.size = JInt(0, 8)
        report = check_invariant(lst)
        assert not report.clauses["C4"].ok
        assert str(nid) in report.clauses["C4"].witness

    def test_c5_first_matches_ghost_head(self):
        lst = build_list([A, B])
        lst.first = lst.ghost.node_list[1]
        report = check_invariant(lst)
        assert not report.clauses["C5"].ok
        assert "first" in report.clauses["C5"].witness

    def test_c5_outer_links_absent(self):
        lst = build_list([A, B])
        lst.store.set_prev(lst.first, lst.last)
        report = check_invariant(lst)
        assert not report.clauses["C5"].ok
        assert "has prev" in report.clauses["C5"].witness

    def test_c6_internal_links_agree(self):
        lst = build_list([A, B, A])
        n0, n1, n2 = lst.ghost.node_list
        lst.store.set_next(n0, n2)
        report = check_invariant(lst)
        assert not report.clauses["C6"].ok
        assert "next" in report.clauses["C6"].witness

    def test_c6_prev_direction_checked_separately(self):
        lst = build_list([A, B, A])
        n0, n1, n2 = lst.ghost.node_list
        lst.store.set_prev(n2, n0)
        assert not check_invariant(lst).clauses["C6"].ok

    def test_overflowed_unchecked_state_fails_c1(self):
        lst = new_list(8, SizePolicy.UNCHECKED)
        for _ in range(128):
            lst.add(NULL)
        report = check_invariant(lst)
        assert not report.clauses["C1"].ok
        assert report.clauses["C2"].ok  # the width bound itself holds


class TestDerivedProperties:
    def test_acyclic_on_well_formed(self):
        ok, witness = check_acyclic(build_list([A, B, A]))
        assert ok and witness is None

    def test_acyclic_witness_positions(self):
        lst = build_list([A, B])
        lst.ghost.node_list.append(lst.ghost.node_list[0])
        ok, witness = check_acyclic(lst)
        assert not ok and witness == (0, 2)

    def test_unique_endpoints_on_well_formed(self):
        ok, witness = check_unique_endpoints(build_list([A, NULL, B]))
        assert ok and witness is None

    def test_unique_endpoints_witness(self):
        lst = build_list([A, B, A])
        lst.store.set_next(lst.ghost.node_list[1], None)
        ok, witness = check_unique_endpoints(lst)
        assert not ok and witness == 1


class TestCyclePropagation:
    def test_refutation_when_nodes_distinct(self):
        w = cycle_propagation_witness(build_list([A, B, A]), 0, 2)
        assert w.kind == "refutation"

    def test_induction_chain_on_duplicated_ghost(self):
        # hand-built: ghost [a, b, a, b] over a 2-node cycle a <-> b.
        # Assuming nodeList[0] == nodeList[2] propagates equality to the
        # end of the sequence, where the last node still has a next
        # pointer, contradicting unique endpoints.
        lst = new_list(8, SizePolicy.FAIL_FAST)
        na = lst.store.alloc(None, A, None)
        nb = lst.store.alloc(None, B, None)
        lst.store.set_next(na, nb)
        lst.store.set_prev(nb, na)
        lst.store.set_next(nb, na)
        lst.store.set_prev(na, nb)
        lst.first, lst.last = na, nb
        lst.size = JInt(4, 8)
        lst.ghost.node_list[:] = [na, nb, na, nb]
        w = cycle_propagation_witness(lst, 0, 2)
        assert w.kind == "chain"
        assert w.steps_hold
        assert w.equalities == ((2, 0), (3, 1))
        assert w.contradiction_next_present is True

    def test_bad_positions_rejected(self):
        with pytest.raises(UsageError):
            cycle_propagation_witness(build_list([A, B]), 1, 1)


class TestFrameCheck:
    def test_unchanged_state_passes_empty_footprint(self):
        lst = build_list([A, B])
        before = take_snapshot(lst)
        lst.get(0)
        assert frame_check(before, take_snapshot(lst), EMPTY_FOOTPRINT) == []

    def test_out_of_frame_node_write_reported(self):
        lst = build_list([A, B])
        before = take_snapshot(lst)
        lst.store.set_item(lst.ghost.node_list[0], B)
        violations = frame_check(before, take_snapshot(lst), EMPTY_FOOTPRINT)
        assert len(violations) == 1
        assert violations[0][0] == "frame" and ".item" in violations[0][1]

    def test_header_write_reported(self):
        lst = build_list([A, B])
        before = take_snapshot(lst)
        lst.size = JInt(5, 8)
        violations = frame_check(before, take_snapshot(lst), EMPTY_FOOTPRINT)
        assert any("header size" in w for _, w in violations)

    def test_footprint_permits_declared_writes(self):
        lst = build_list([A, B])
        before = take_snapshot(lst)
        lst.size = JInt(5, 8)
        fp = Footprint(header_fields=frozenset({"size"}))
        assert frame_check(before, take_snapshot(lst), fp) == []

    def test_unexpected_allocation_reported(self):
        lst = build_list([A])
        before = take_snapshot(lst)
        lst.store.alloc(None, B, None)
        violations = frame_check(before, take_snapshot(lst), EMPTY_FOOTPRINT)
        assert any("allocation" in w for _, w in violations)


class TestContracts:
    def test_search_ops_have_null_and_nonnull_branches(self):
        null_rec = contract_for("index_of", (NULL,))
        atom_rec = contract_for("index_of", (A,))
        assert null_rec.branch == "null"
        assert atom_rec.branch == "non-null"

    def test_unknown_operation_rejected(self):
        with pytest.raises(UsageError):
            contract_for("sort", ())


class TestRunChecked:
    def test_requires_full_mode(self):
        with pytest.raises(UsageError):
            run_checked(build_list([A]), "size")

    def test_value_passthrough(self):
        lst = checked_list([A, NULL, B])
        assert run_checked(lst, "get", (1,)) == NULL
        assert run_checked(lst, "remove_at", (0,)) == A
        assert lst.items() == [NULL, B]

    def test_error_passthrough_after_checks(self):
        from overlist.errors import IndexOutOfBoundsError

        lst = checked_list([A])
        with pytest.raises(IndexOutOfBoundsError):
            run_checked(lst, "get", (7,))
        assert lst.items() == [A]

    def test_broken_entry_state_is_harness_error(self):
        lst = checked_list([A, B])
        lst.size = JInt(1, 8)
        with pytest.raises(UsageError):
            run_checked(lst, "size")

    def test_fault_caught_as_contract_violation(self):
        lst = new_list(8, SizePolicy.FAIL_FAST, CheckMode.FULL,
                       faults=frozenset({"unlink-skip-relink"}))
        for x in (A, B, A):
            run_checked(lst, "add", (x,))
        with pytest.raises(ContractViolation) as exc:
            run_checked(lst, "remove_at", (1,))
        assert "invariant" in exc.value.categories()

    def test_last_index_probe_catches_off_by_one(self):
        lst = new_list(8, SizePolicy.FAIL_FAST, CheckMode.FULL,
                       faults=frozenset({"lastindexof-off-by-one"}))
        for x in (A, B):
            run_checked(lst, "add", (x,))
        with pytest.raises(ContractViolation):
            run_checked(lst, "last_index_of", (B,))

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.sampled_from([NULL, A, B]), max_size=8), st.data())
    def test_clean_implementation_never_trips(self, items, data):
        lst = checked_list(items)
        op, args = data.draw(st.sampled_from([
            ("add", (A,)), ("add_first", (NULL,)), ("clear", ()),
            ("get", (data.draw(st.integers(-1, 9)),)),
            ("remove_at", (data.draw(st.integers(-1, 9)),)),
            ("add_at", (data.draw(st.integers(-1, 9)), B)),
            ("index_of", (NULL,)), ("last_index_of", (A,)),
            ("remove_item", (B,)), ("poll_first", ()), ("to_array", ()),
        ]))
        try:
            run_checked(lst, op, args)
        except ContractViolation as cv:
            pytest.fail(f"spurious contract violation: {cv}")
        except Exception:
            pass  # documented list errors are fine
