"""Executable specification layer: ghost state, the six-clause class
invariant, derived acyclicity / unique-endpoint properties, heap frame
checking, and a contract harness that wraps list operations with
pre/post/invariant/frame checks.

The ghost ``node_list`` mirrors the chain as a sequence of node ids. It
is bookkeeping only: production logic never reads it to make decisions,
and every check here evaluates it directly against the header and the
node store.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import heapmodel
from .errors import ContractViolation, ListError, UsageError
from .heapmodel import NULL, NodeId, NullItem, items_equal
from .jint import max_value
from .oracle import AbstractList, normalize, observe_equal, oracle_apply


@dataclass
class GhostState:
    """Specification-only sequence of the chain's node ids."""

    node_list: list[NodeId] = field(default_factory=list)

    def copy(self) -> "GhostState":
        return GhostState(list(self.node_list))


# ---------------------------------------------------------------------------
# class invariant


@dataclass(frozen=True)
class ClauseResult:
    ok: bool
    witness: str | None = None


@dataclass(frozen=True)
class InvariantReport:
    clauses: dict[str, ClauseResult]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses.values())

    def failures(self) -> list[tuple[str, str]]:
        return [(cid, c.witness or "") for cid, c in self.clauses.items() if not c.ok]

    def to_json(self) -> dict:
        return {
            cid: {"ok": c.ok, "witness": c.witness} for cid, c in self.clauses.items()
        }


def _passed() -> ClauseResult:
    return ClauseResult(True)


def check_invariant(state) -> InvariantReport:
    """Evaluate all six invariant clauses against header, store and ghost.

    C1 cached size equals ghost length; C2 size bounded by the width's
    maximum; C3 every ghost entry is an allocated node; C4 empty list has
    absent endpoints; C5 non-empty list has matching endpoints with
    absent outer links; C6 internal prev/next links agree with the ghost
    sequence."""
    if state.ghost is None:
        raise UsageError("invariant check requires ghost state")
    store = state.store
    nl = state.ghost.node_list
    n = len(nl)
    clauses: dict[str, ClauseResult] = {}

    clauses["C1"] = (
        _passed()
        if state.size.value == n
        else ClauseResult(False, f"size={state.size.value} vs |nodeList|={n}")
    )
    cap = max_value(state.width).value
    clauses["C2"] = (
        _passed()
        if state.size.value <= cap
        else ClauseResult(False, f"size={state.size.value} > {cap}")
    )
    bad = next((i for i, nid in enumerate(nl) if nid not in store), None)
    clauses["C3"] = (
        _passed() if bad is None else ClauseResult(False, f"nodeList[{bad}]={nl[bad]} unallocated")
    )
    allocated = bad is None

    if n == 0:
        clauses["C4"] = (
            _passed()
            if state.first is None and state.last is None
            else ClauseResult(False, f"empty but first={state.first} last={state.last}")
        )
        clauses["C5"] = _passed()
        clauses["C6"] = _passed()
        return InvariantReport(clauses)

    clauses["C4"] = _passed()
    if not allocated:
        clauses["C5"] = ClauseResult(False, "unallocated ghost entry")
        clauses["C6"] = ClauseResult(False, "unallocated ghost entry")
        return InvariantReport(clauses)

    c5_witness = None
    if state.first != nl[0]:
        c5_witness = f"first={state.first} != nodeList[0]={nl[0]}"
    elif state.last != nl[-1]:
        c5_witness = f"last={state.last} != nodeList[{n - 1}]={nl[-1]}"
    elif store.record(nl[0]).prev is not None:
        c5_witness = f"first node {nl[0]} has prev={store.record(nl[0]).prev}"
    elif store.record(nl[-1]).next is not None:
        c5_witness = f"last node {nl[-1]} has next={store.record(nl[-1]).next}"
    clauses["C5"] = _passed() if c5_witness is None else ClauseResult(False, c5_witness)

    c6_witness = None
    for i in range(1, n):
        if store.record(nl[i]).prev != nl[i - 1]:
            c6_witness = f"i={i}: prev={store.record(nl[i]).prev} != nodeList[{i - 1}]={nl[i - 1]}"
            break
    if c6_witness is None:
        for i in range(n - 1):
            if store.record(nl[i]).next != nl[i + 1]:
                c6_witness = (
                    f"i={i}: next={store.record(nl[i]).next} != nodeList[{i + 1}]={nl[i + 1]}"
                )
                break
    clauses["C6"] = _passed() if c6_witness is None else ClauseResult(False, c6_witness)
    return InvariantReport(clauses)


# ---------------------------------------------------------------------------
# derived properties


def check_acyclic(state) -> tuple[bool, tuple[int, int] | None]:
    """All ghost entries pairwise distinct; witness is the first (i, j)
    pair of equal nodes on failure."""
    seen: dict[NodeId, int] = {}
    for j, nid in enumerate(state.ghost.node_list):
        if nid in seen:
            return False, (seen[nid], j)
        seen[nid] = j
    return True, None


def check_unique_endpoints(state) -> tuple[bool, int | None]:
    """next absent iff last position; prev absent iff position 0."""
    nl = state.ghost.node_list
    n = len(nl)
    for i, nid in enumerate(nl):
        rec = state.store.record(nid)
        if (rec.next is None) != (i == n - 1):
            return False, i
        if (rec.prev is None) != (i == 0):
            return False, i
    return True, None


@dataclass(frozen=True)
class CyclePropagation:
    """Outcome of stepping the cycle-propagation induction for (i, j).

    ``kind`` is "refutation" when the two positions hold distinct nodes.
    Otherwise the induction chain of node equalities (k, k - (j - i)) is
    verified step by step against the store's next links, ending at the
    last position where the unique-endpoint contradiction shows up."""

    kind: str  # "refutation" | "chain"
    i: int
    j: int
    equalities: tuple[tuple[int, int], ...] = ()
    steps_hold: bool = True
    contradiction_next_present: bool | None = None


def cycle_propagation_witness(state, i: int, j: int) -> CyclePropagation:
    nl = state.ghost.node_list
    n = len(nl)
    if not 0 <= i < j < n:
        raise UsageError(f"need 0 <= i < j < {n}, got i={i} j={j}")
    if nl[i] != nl[j]:
        return CyclePropagation("refutation", i, j)
    d = j - i
    store = state.store
    equalities = []
    steps_hold = True
    for k in range(j, n):
        # base case k == j holds by assumption; each further step follows
        # because both sides are the next of the previous (equal) pair
        if k > j:
            same_source = nl[k - 1] == nl[k - 1 - d]
            propagated = (
                store.record(nl[k - 1]).next == nl[k]
                and store.record(nl[k - 1 - d]).next == nl[k - d]
            )
            if not (same_source and propagated and nl[k] == nl[k - d]):
                steps_hold = False
                break
        equalities.append((k, k - d))
    contradiction = store.record(nl[n - 1]).next is not None if steps_hold else None
    return CyclePropagation(
        "chain",
        i,
        j,
        equalities=tuple(equalities),
        steps_hold=steps_hold,
        contradiction_next_present=contradiction,
    )


# ---------------------------------------------------------------------------
# frames


@dataclass(frozen=True)
class Footprint:
    """Locations an operation is allowed to modify."""

    node_fields: frozenset[tuple[NodeId, str]] = frozenset()
    header_fields: frozenset[str] = frozenset()
    ghost: bool = False
    fresh: bool = False


EMPTY_FOOTPRINT = Footprint()


@dataclass(frozen=True)
class StateSnapshot:
    store: heapmodel.StoreSnapshot
    header: tuple  # (first, last, size value)
    ghost: tuple[NodeId, ...]


def take_snapshot(state) -> StateSnapshot:
    return StateSnapshot(
        store=heapmodel.snapshot(state.store),
        header=(state.first, state.last, state.size.value),
        ghost=tuple(state.ghost.node_list),
    )


_HEADER_NAMES = ("first", "last", "size")


def frame_check(before: StateSnapshot, after: StateSnapshot, fp: Footprint) -> list[tuple[str, str]]:
    """Every difference between the snapshots must lie inside the
    footprint; returns (category, witness) violation entries."""
    violations = []
    store_diff = heapmodel.diff(before.store, after.store)
    for nid, fname in sorted(store_diff.changed):
        if (nid, fname) not in fp.node_fields:
            old = before.store.records[nid][heapmodel._FIELDS.index(fname)]
            new = after.store.records[nid][heapmodel._FIELDS.index(fname)]
            violations.append(("frame", f"node {nid}.{fname}: {old!r} -> {new!r}"))
    if store_diff.fresh and not fp.fresh:
        violations.append(("frame", f"unexpected allocation of nodes {sorted(store_diff.fresh)}"))
    for name, old, new in zip(_HEADER_NAMES, before.header, after.header):
        if old != new and name not in fp.header_fields:
            violations.append(("frame", f"header {name}: {old!r} -> {new!r}"))
    if before.ghost != after.ghost and not fp.ghost:
        violations.append(("frame", "ghost nodeList changed"))
    return violations


# ---------------------------------------------------------------------------
# contracts


@dataclass(frozen=True)
class PreObservation:
    items: tuple
    ids: tuple[NodeId, ...]
    size: int
    snapshot: StateSnapshot


def observe(state) -> PreObservation:
    ids = tuple(heapmodel.walk_chain(state.store, state.first))
    items = tuple(state.store.record(nid).item for nid in ids)
    return PreObservation(items, ids, state.size.value, take_snapshot(state))


def _fp_pure(state, pre, args) -> Footprint:
    return EMPTY_FOOTPRINT


def _fp_append(state, pre, args) -> Footprint:
    nodes = {(pre.ids[-1], "next")} if pre.ids else set()
    header = {"last", "size"} | ({"first"} if not pre.ids else set())
    return Footprint(frozenset(nodes), frozenset(header), ghost=True, fresh=True)


def _fp_prepend(state, pre, args) -> Footprint:
    nodes = {(pre.ids[0], "prev")} if pre.ids else set()
    header = {"first", "size"} | ({"last"} if not pre.ids else set())
    return Footprint(frozenset(nodes), frozenset(header), ghost=True, fresh=True)


def _fp_insert_at(state, pre, args) -> Footprint:
    i = args[0]
    n = len(pre.ids)
    if not 0 <= i <= n:
        return EMPTY_FOOTPRINT
    if i == n:
        return _fp_append(state, pre, args)
    nodes = {(pre.ids[i], "prev")}
    header = {"size"}
    if i > 0:
        nodes.add((pre.ids[i - 1], "next"))
    else:
        header.add("first")
    return Footprint(frozenset(nodes), frozenset(header), ghost=True, fresh=True)


def _removal_footprint(pre, p: int) -> Footprint:
    ids = pre.ids
    n = len(ids)
    x = ids[p]
    nodes = {(x, "prev"), (x, "item"), (x, "next")}
    header = {"size"}
    if p > 0:
        nodes.add((ids[p - 1], "next"))
    else:
        header.add("first")
    if p < n - 1:
        nodes.add((ids[p + 1], "prev"))
    else:
        header.add("last")
    return Footprint(frozenset(nodes), frozenset(header), ghost=True)


def _fp_remove_at(state, pre, args) -> Footprint:
    i = args[0]
    if not 0 <= i < len(pre.ids):
        return EMPTY_FOOTPRINT
    return _removal_footprint(pre, i)


def _fp_set_at(state, pre, args) -> Footprint:
    i = args[0]
    if not 0 <= i < len(pre.ids):
        return EMPTY_FOOTPRINT
    return Footprint(frozenset({(pre.ids[i], "item")}))


def _match_index(pre, target, last: bool) -> int | None:
    rng = range(len(pre.items) - 1, -1, -1) if last else range(len(pre.items))
    for i in rng:
        if items_equal(target, pre.items[i]):
            return i
    return None


def _fp_remove_match(last: bool):
    def fp(state, pre, args) -> Footprint:
        p = _match_index(pre, args[0], last)
        return EMPTY_FOOTPRINT if p is None else _removal_footprint(pre, p)

    return fp


def _fp_remove_end(p_of_n) -> Callable:
    def fp(state, pre, args) -> Footprint:
        if not pre.ids:
            return EMPTY_FOOTPRINT
        return _removal_footprint(pre, p_of_n(len(pre.ids)))

    return fp


def _fp_clear(state, pre, args) -> Footprint:
    nodes = {(nid, f) for nid in pre.ids for f in ("prev", "item", "next")}
    return Footprint(frozenset(nodes), frozenset({"first", "last", "size"}), ghost=True)


@dataclass(frozen=True)
class ContractRecord:
    """One behavioral branch of a public operation's contract."""

    name: str
    op: str
    branch: str | None  # "null" / "non-null" for element-search ops
    footprint: Callable


_FOOTPRINTS: dict[str, Callable] = {
    "size": _fp_pure,
    "is_max_size": _fp_pure,
    "check_size": _fp_pure,
    "get": _fp_pure,
    "index_of": _fp_pure,
    "last_index_of": _fp_pure,
    "contains": _fp_pure,
    "to_array": _fp_pure,
    "get_first": _fp_pure,
    "get_last": _fp_pure,
    "peek_first": _fp_pure,
    "peek_last": _fp_pure,
    "add": _fp_append,
    "add_last": _fp_append,
    "add_first": _fp_prepend,
    "add_at": _fp_insert_at,
    "set_at": _fp_set_at,
    "remove_at": _fp_remove_at,
    "remove_item": _fp_remove_match(last=False),
    "remove_first_occurrence": _fp_remove_match(last=False),
    "remove_last_occurrence": _fp_remove_match(last=True),
    "poll_first": _fp_remove_end(lambda n: 0),
    "poll_last": _fp_remove_end(lambda n: n - 1),
    "remove_first": _fp_remove_end(lambda n: 0),
    "remove_last": _fp_remove_end(lambda n: n - 1),
    "clear": _fp_clear,
}

#: element-search operations that carry one contract per equality branch
#: (null argument = identity test, non-null = equals test)
_ITEM_BRANCH_OPS = frozenset(
    {
        "index_of",
        "last_index_of",
        "contains",
        "remove_item",
        "remove_first_occurrence",
        "remove_last_occurrence",
    }
)


def _build_contracts() -> dict[str, tuple[ContractRecord, ...]]:
    table: dict[str, tuple[ContractRecord, ...]] = {}
    for op, fp in _FOOTPRINTS.items():
        if op in _ITEM_BRANCH_OPS:
            table[op] = (
                ContractRecord(f"{op}[null]", op, "null", fp),
                ContractRecord(f"{op}[non-null]", op, "non-null", fp),
            )
        else:
            table[op] = (ContractRecord(op, op, None, fp),)
    return table


CONTRACTS: dict[str, tuple[ContractRecord, ...]] = _build_contracts()


def contract_for(op: str, args: tuple) -> ContractRecord:
    if op not in CONTRACTS:
        raise UsageError(f"no contract for operation {op!r}")
    records = CONTRACTS[op]
    if len(records) == 1:
        return records[0]
    branch = "null" if isinstance(args[0], NullItem) else "non-null"
    return next(r for r in records if r.branch == branch)


def _post_vs_model(state, pre: PreObservation, op: str, args, outcome) -> list[tuple[str, str]]:
    """Check result and resulting chain contents against the documented
    sequence semantics computed from the pre-state items."""
    from .listcore import SizePolicy

    abs_pre = AbstractList(pre.items, state.width, bounded=state.policy is SizePolicy.FAIL_FAST)
    verdict, abs_post = oracle_apply(abs_pre, op, args)
    if verdict.kind == "unspecified":
        return []
    violations = []
    if observe_equal(outcome, verdict) != "agree":
        violations.append(("post", f"result {outcome!r} != documented {verdict!r}"))
    post_items = tuple(state.items())
    if post_items != abs_post.items:
        violations.append(
            ("post", f"chain items {post_items!r} != documented {abs_post.items!r}")
        )
    return violations


def run_checked(state, op: str, args: tuple = ()):
    """Invoke a public operation with the full check battery.

    Precondition failures (broken invariant on entry, unknown operation)
    are harness errors. After the call: the branch-matching postcondition
    is evaluated against the abstract semantics, the invariant is
    re-checked (FailFast), and the heap diff is checked against the
    declared footprint (error outcomes must leave everything unchanged).
    Raises ContractViolation on any failed check; otherwise the wrapped
    operation's result (or ListError) passes through unchanged."""
    from .listcore import CheckMode, SizePolicy, apply_op

    if state.check_mode is not CheckMode.FULL:
        raise UsageError("run_checked requires check_mode=FULL")
    record = contract_for(op, args)
    failfast = state.policy is SizePolicy.FAIL_FAST
    if failfast:
        entry = check_invariant(state)
        if not entry.ok:
            raise UsageError(f"invariant broken before {op}: {entry.failures()}")

    pre = observe(state)
    fp = record.footprint(state, pre, args)

    err: ListError | None = None
    result = None
    try:
        result = apply_op(state, op, args)
        outcome = ("value", normalize(result))
    except ListError as e:
        err = e
        outcome = ("error", e.kind)

    violations = _post_vs_model(state, pre, op, args, outcome)
    if failfast:
        report = check_invariant(state)
        if not report.ok:
            violations.extend(("invariant", f"{cid}: {w}") for cid, w in report.failures())
    after = take_snapshot(state)
    effective_fp = fp if err is None else EMPTY_FOOTPRINT
    violations.extend(frame_check(pre.snapshot, after, effective_fp))

    if violations:
        raise ContractViolation(record.name, violations)
    if err is not None:
        raise err
    return result
