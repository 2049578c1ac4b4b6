"""Differential testing: replayable operation scripts, lock-step
execution of both list policies against the documented-semantics oracle,
divergence classification, greedy shrinking, and the broken-method
census over the two overflow preparation states.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, replace

from .errors import ContractViolation, CycleDetected, ListError, UsageError
from .ghostspec import check_invariant, run_checked
from .heapmodel import NULL, Atom, Item, NullItem, items_equal
from .jint import max_value
from .listcore import CheckMode, JavaLinkedList, SizePolicy, apply_op, new_list
from .oracle import AbstractList, Verdict, normalize, observe_equal, oracle_apply

GENERATOR_VERSION = 1

#: argument alphabet: small enough to enumerate, rich enough to exercise
#: both equality branches plus a distinguished marker element
MARKER = Atom("marker")
ALPHABET: tuple[Item, ...] = (NULL, Atom("a"), Atom("b"), MARKER)

DIVERGENCE_KINDS = (
    "WrongValue",
    "WrongError",
    "MissingError",
    "InvariantViolation",
    "FrameViolation",
)


@dataclass(frozen=True)
class OpScript:
    seed: int
    width: int
    steps: tuple[tuple[str, tuple], ...]
    version: int = GENERATOR_VERSION


@dataclass(frozen=True)
class Divergence:
    step: int
    op: str
    args: tuple
    policy: str
    impl: object
    oracle: object
    kind: str

    def to_json(self) -> dict:
        return {
            "step": self.step,
            "op": self.op,
            "args": [_encode_value(a) for a in self.args],
            "policy": self.policy,
            "impl": self.impl,
            "oracle": self.oracle,
            "kind": self.kind,
        }


@dataclass(frozen=True)
class CensusRow:
    method: str
    classification: str  # OK | WrongValue | Crash | Unspecified-skip


# ---------------------------------------------------------------------------
# script generation

ADD_HEAVY_WEIGHTS: dict[str, float] = {
    "add": 30,
    "add_first": 3,
    "add_last": 3,
    "poll_first": 1,
    "poll_last": 1,
    "remove_first_occurrence": 1,
    "get": 2,
    "size": 2,
    "index_of": 1,
    "last_index_of": 1,
    "contains": 1,
    "to_array": 1,
}

BALANCED_WEIGHTS: dict[str, float] = {
    "add": 6,
    "add_first": 2,
    "add_last": 2,
    "get": 3,
    "set_at": 2,
    "add_at": 2,
    "remove_at": 2,
    "index_of": 2,
    "last_index_of": 2,
    "contains": 2,
    "remove_item": 1,
    "remove_first_occurrence": 1,
    "remove_last_occurrence": 1,
    "clear": 0.2,
    "to_array": 1,
    "size": 2,
    "get_first": 1,
    "get_last": 1,
    "peek_first": 1,
    "peek_last": 1,
    "poll_first": 1,
    "poll_last": 1,
    "remove_first": 1,
    "remove_last": 1,
    "is_max_size": 0.5,
}

_ITEM_ARG_OPS = frozenset(
    {
        "add",
        "add_first",
        "add_last",
        "index_of",
        "last_index_of",
        "contains",
        "remove_item",
        "remove_first_occurrence",
        "remove_last_occurrence",
    }
)
_INDEX_ARG_OPS = frozenset({"get", "remove_at"})
_INDEX_ITEM_ARG_OPS = frozenset({"set_at", "add_at"})
_GROWS = frozenset({"add", "add_first", "add_last", "add_at"})
_SHRINKS = frozenset(
    {
        "remove_at",
        "remove_item",
        "remove_first_occurrence",
        "remove_last_occurrence",
        "poll_first",
        "poll_last",
        "remove_first",
        "remove_last",
    }
)


def gen_script(
    seed: int,
    width: int,
    length: int,
    weights: dict[str, float] | None = None,
) -> OpScript:
    """Deterministic pseudo-random script. Index arguments are drawn
    around a running length estimate so most positional calls land
    in-range while boundary misses stay represented."""
    if length < 0:
        raise UsageError("length must be >= 0")
    weights = weights or BALANCED_WEIGHTS
    rng = random.Random(seed)
    ops = sorted(weights)
    cum = [weights[o] for o in ops]
    est = 0
    steps = []
    for _ in range(length):
        op = rng.choices(ops, weights=cum)[0]
        if op in _ITEM_ARG_OPS:
            args: tuple = (rng.choice(ALPHABET),)
        elif op in _INDEX_ARG_OPS:
            args = (rng.randint(-1, est + 1),)
        elif op in _INDEX_ITEM_ARG_OPS:
            args = (rng.randint(-1, est + 1), rng.choice(ALPHABET))
        else:
            args = ()
        steps.append((op, args))
        if op in _GROWS:
            est += 1
        elif op in _SHRINKS and est > 0:
            est -= 1
        elif op == "clear":
            est = 0
    return OpScript(seed=seed, width=width, steps=tuple(steps))


# ---------------------------------------------------------------------------
# execution


def run_op(lst: JavaLinkedList, op: str, args: tuple) -> tuple[str, object]:
    """Outcome of one call: ("value", v) or ("error", kind)."""
    try:
        return ("value", normalize(apply_op(lst, op, args)))
    except ListError as e:
        return ("error", e.kind)


def classify(outcome: tuple[str, object], verdict: Verdict) -> str:
    if outcome[0] == "error":
        return "WrongError"
    if verdict.kind == "error":
        return "MissingError"
    return "WrongValue"


@dataclass
class ScriptResult:
    divergences: dict[str, list[Divergence]]
    lists: dict[str, JavaLinkedList]
    oracles: dict[str, AbstractList]
    aborted: dict[str, int | None]

    def total(self, policy: str) -> int:
        return len(self.divergences[policy])


def run_script(
    script: OpScript,
    check_mode: CheckMode = CheckMode.OFF,
    policies: tuple[SizePolicy, ...] = (SizePolicy.UNCHECKED, SizePolicy.FAIL_FAST),
    faults: frozenset[str] = frozenset(),
) -> ScriptResult:
    """Execute the script on each policy in lock-step with its oracle
    (FailFast against the bounded documented contract, Unchecked against
    the unbounded one). Ghost-layer checks apply to the FailFast model
    only: under FULL every step goes through the contract harness, under
    INVARIANT the class invariant is re-checked after each step.
    Divergences are data; execution only aborts on a corrupted chain."""
    divergences: dict[str, list[Divergence]] = {}
    lists: dict[str, JavaLinkedList] = {}
    oracles: dict[str, AbstractList] = {}
    aborted: dict[str, int | None] = {}
    for policy in policies:
        pname = policy.value
        checked = policy is SizePolicy.FAIL_FAST and check_mode is not CheckMode.OFF
        lst = new_list(
            script.width,
            policy,
            CheckMode.FULL if (checked and check_mode is CheckMode.FULL) else CheckMode.OFF,
            faults=faults,
        )
        abs_state = AbstractList((), script.width, bounded=policy is SizePolicy.FAIL_FAST)
        divs: list[Divergence] = []
        aborted[pname] = None
        for step, (op, args) in enumerate(script.steps):
            outcome: tuple[str, object] | None
            try:
                if checked and check_mode is CheckMode.FULL:
                    try:
                        outcome = ("value", normalize(run_checked(lst, op, args)))
                    except ListError as e:
                        outcome = ("error", e.kind)
                else:
                    outcome = run_op(lst, op, args)
            except ContractViolation as cv:
                # the ghost layer no longer trusts this state; stop here
                kind = "FrameViolation" if "frame" in cv.categories() else "InvariantViolation"
                divs.append(Divergence(step, op, args, pname, str(cv), None, kind))
                aborted[pname] = step
                break
            except (CycleDetected, UsageError) as cd:
                # a cycle or a dangling link deref means the chain itself is
                # corrupted; nothing downstream of this state is trustworthy
                divs.append(
                    Divergence(step, op, args, pname, str(cd), None, "InvariantViolation")
                )
                aborted[pname] = step
                break
            verdict, abs_state = oracle_apply(abs_state, op, args)
            if outcome is not None and observe_equal(outcome, verdict) == "disagree":
                divs.append(
                    Divergence(
                        step,
                        op,
                        args,
                        pname,
                        _encode_outcome(outcome),
                        _encode_verdict(verdict),
                        classify(outcome, verdict),
                    )
                )
            if checked and check_mode is CheckMode.INVARIANT:
                report = check_invariant(lst)
                if not report.ok:
                    divs.append(
                        Divergence(
                            step,
                            op,
                            args,
                            pname,
                            str(report.failures()),
                            None,
                            "InvariantViolation",
                        )
                    )
        divergences[pname] = divs
        lists[pname] = lst
        oracles[pname] = abs_state
    return ScriptResult(divergences, lists, oracles, aborted)


# ---------------------------------------------------------------------------
# shrinking


def shrink(script: OpScript, predicate) -> OpScript:
    """Greedy, predicate-preserving minimization: remove chunks, then
    single steps, until no single removal keeps the predicate true."""
    if not predicate(script):
        raise UsageError("predicate does not hold on the input script")
    steps = list(script.steps)

    def holds(candidate: list) -> bool:
        return predicate(replace(script, steps=tuple(candidate)))

    chunk = max(1, len(steps) // 2)
    while chunk >= 1:
        i = 0
        while i < len(steps):
            candidate = steps[:i] + steps[i + chunk :]
            if holds(candidate):
                steps = candidate
            else:
                i += chunk
        chunk //= 2
    return replace(script, steps=tuple(steps))


# ---------------------------------------------------------------------------
# census

CENSUS_PROBES: dict[str, list[tuple]] = {
    "size": [()],
    "get": [(0,)],
    "set_at": [(0, Atom("a"))],
    "add_at": [(0, Atom("a"))],
    "remove_at": [(0,)],
    "index_of": [(NULL,), (MARKER,)],
    "last_index_of": [(NULL,), (MARKER,)],
    "contains": [(NULL,), (MARKER,)],
    "to_array": [()],
    "remove_item": [(NULL,), (MARKER,)],
    "remove_first_occurrence": [(NULL,)],
    "remove_last_occurrence": [(NULL,)],
    "add": [(Atom("a"),)],
    "clear": [()],
    "add_first": [(Atom("a"),)],
    "add_last": [(Atom("a"),)],
    "get_first": [()],
    "get_last": [()],
    "peek_first": [()],
    "peek_last": [()],
    "poll_first": [()],
    "poll_last": [()],
    "remove_first": [()],
    "remove_last": [()],
}

#: List-interface methods whose documented contract covers the size
#: bookkeeping; after a successful mutation the reported size must match
#: the documented (clamped) one.
LIST_METHODS = frozenset(
    {
        "size",
        "get",
        "set_at",
        "add_at",
        "remove_at",
        "index_of",
        "last_index_of",
        "contains",
        "to_array",
        "remove_item",
        "remove_first_occurrence",
        "remove_last_occurrence",
        "add",
        "clear",
    }
)

#: Deque-interface methods: contracts are about chain endpoints, so the
#: post-probe checks the endpoints, not the size field.
DEQUE_METHODS = frozenset(
    {
        "add_first",
        "add_last",
        "get_first",
        "get_last",
        "peek_first",
        "peek_last",
        "poll_first",
        "poll_last",
        "remove_first",
        "remove_last",
    }
)

_LIST_MUTATORS = frozenset(
    {
        "add",
        "set_at",
        "add_at",
        "remove_at",
        "remove_item",
        "remove_first_occurrence",
        "remove_last_occurrence",
        "clear",
    }
)
_DEQUE_MUTATORS = frozenset(
    {"add_first", "add_last", "poll_first", "poll_last", "remove_first", "remove_last"}
)

_SEVERITY = {"OK": 0, "Unspecified-skip": 1, "WrongValue": 2, "Crash": 3}


def _prepare(width: int, policy: SizePolicy, total_adds: int, marker_last: bool):
    """Build a preparation state by repeated add(): ``total_adds`` nulls,
    or nulls with the marker as the final element. FailFast simply stops
    accepting at capacity (on both sides), so the overflow never forms."""
    lst = new_list(width, policy)
    abs_state = AbstractList((), width, bounded=policy is SizePolicy.FAIL_FAST)
    for k in range(total_adds):
        item = MARKER if (marker_last and k == total_adds - 1) else NULL
        try:
            lst.add(item)
        except ListError:
            pass
        _, abs_state = oracle_apply(abs_state, "add", (item,))
    return lst, abs_state


def build_overflow_states(width: int, policy: SizePolicy = SizePolicy.UNCHECKED):
    """The two preparation states of the reproduction procedure: enough
    adds to flip the size sign (2^(W-1)), and enough to wrap it back to
    zero (2^W, with a marker as last element)."""
    state1 = _prepare(width, policy, 1 << (width - 1), marker_last=False)
    state2 = _prepare(width, policy, 1 << width, marker_last=True)
    return state1, state2


def _probe_classification(
    lst: JavaLinkedList, abs_state: AbstractList, method: str, args: tuple
) -> str:
    impl = lst.copy()
    outcome = run_op(impl, method, args)
    verdict, abs_post = oracle_apply(abs_state, method, args)

    cmp = observe_equal(outcome, verdict)
    if cmp == "disagree":
        return "Crash" if outcome[0] == "error" else "WrongValue"
    if cmp == "skipped":
        # a search result of -1 for an element that is actually present
        # contradicts the membership part of the contract even when the
        # exact index is unspecifiable
        if (
            method in ("index_of", "last_index_of")
            and outcome == ("value", -1)
            and any(items_equal(args[0], it) for it in abs_state.items)
        ):
            return "WrongValue"
        return "Unspecified-skip"

    if outcome[0] == "value" and verdict.kind == "value":
        if method in _LIST_MUTATORS:
            post = run_op(impl, "size", ())
            size_verdict, _ = oracle_apply(abs_post, "size", ())
            if observe_equal(post, size_verdict) == "disagree":
                return "WrongValue"
        elif method in _DEQUE_MUTATORS:
            for end in ("peek_first", "peek_last"):
                post = run_op(impl, end, ())
                end_verdict, _ = oracle_apply(abs_post, end, ())
                if observe_equal(post, end_verdict) == "disagree":
                    return "WrongValue"
    return "OK"


def census(width: int, policy: SizePolicy = SizePolicy.UNCHECKED) -> list[CensusRow]:
    """Probe every implemented public List/Deque method in both overflow
    preparation states; one row per method, worst outcome wins."""
    states = build_overflow_states(width, policy)
    rows = []
    for method in sorted(CENSUS_PROBES):
        worst = "OK"
        for lst, abs_state in states:
            for args in CENSUS_PROBES[method]:
                cls = _probe_classification(lst, abs_state, method, args)
                if _SEVERITY[cls] > _SEVERITY[worst]:
                    worst = cls
        rows.append(CensusRow(method, worst))
    return rows


# ---------------------------------------------------------------------------
# serialization (JSON Lines)


def _encode_value(v):
    if isinstance(v, NullItem):
        return None
    if isinstance(v, Atom):
        return v.token
    if isinstance(v, (tuple, list)):
        return [_encode_value(x) for x in v]
    return v


def _decode_arg(v):
    if v is None:
        return NULL
    if isinstance(v, str):
        return Atom(v)
    return v


def _encode_outcome(outcome):
    tag, payload = outcome
    return {tag: _encode_value(payload)} if tag == "value" else {tag: payload}


def _encode_verdict(verdict: Verdict):
    if verdict.kind == "value":
        return {"value": _encode_value(verdict.value)}
    if verdict.kind == "error":
        return {"error": verdict.error}
    return {"unspecified": True}


def dump_script(script: OpScript) -> str:
    lines = [json.dumps({"seed": script.seed, "width": script.width, "version": script.version})]
    for i, (op, args) in enumerate(script.steps):
        lines.append(json.dumps({"step": i, "op": op, "args": [_encode_value(a) for a in args]}))
    return "\n".join(lines) + "\n"


def load_script(text: str) -> OpScript:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("empty script file")
    header = json.loads(lines[0])
    for key in ("seed", "width"):
        if key not in header:
            raise UsageError(f"script header missing {key!r}")
    steps = []
    for ln in lines[1:]:
        rec = json.loads(ln)
        steps.append((rec["op"], tuple(_decode_arg(a) for a in rec["args"])))
    return OpScript(
        seed=header["seed"],
        width=header["width"],
        steps=tuple(steps),
        version=header.get("version", GENERATOR_VERSION),
    )
