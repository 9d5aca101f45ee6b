"""Brute-force ground-truth solvers and the reasoning-step sufficiency bound.

Everything here is a reference path: linear scans over items, one shared
strict-range predicate, no shortcuts.  Generation, grading and trace
verification are all checked against these solvers.
"""

from __future__ import annotations

from typing import Callable

from . import taxonomy
from .answers import GoldAnswer, id_set_answer, scalar_answer
from .errors import FamilyMismatch, MalformedTask
from .taskgen.types import (
    Criteria,
    KVPair,
    ResumeRow,
    TaskInstance,
    as_cents,
    in_open_range,
)


def sufficient_steps(N: int, n: int) -> int:
    """Minimum reasoning steps for reliable n-matching over N items.

    N checking steps plus 1 + 2 + ... + n list-maintenance steps.  Used only
    as an auditing threshold for traces, never as an exact step count.
    """
    if N < 1 or n < 0:
        raise ValueError(f"need N >= 1 and n >= 0, got N={N} n={n}")
    return N + (n * n + n) // 2


def predicate(item, criteria: Criteria) -> bool:
    """Does this item satisfy the criteria?

    Range membership is strict on both ends ("greater than lo and smaller
    than hi"), for every range-based kind.  Interests outside the shipped
    taxonomy belong to no category.
    """
    if isinstance(item, KVPair):
        if criteria.target_value is not None:
            return item.value == criteria.target_value
        if criteria.target_key is not None:
            return item.key == criteria.target_key
        if criteria.range_lo is not None:
            lo, hi = as_cents(criteria.range_lo), as_cents(criteria.range_hi)
            return in_open_range(item.value * 100, lo, hi)
        if criteria.chain_source_keys is not None:
            raise FamilyMismatch(
                "chain criteria are not item-local; use item_predicate(task)"
            )
        raise FamilyMismatch("criteria carry no KV fields")

    if isinstance(item, ResumeRow):
        if criteria.school is not None:
            return item.school == criteria.school
        if criteria.range_lo is not None:
            lo, hi = as_cents(criteria.range_lo), as_cents(criteria.range_hi)
            return in_open_range(item.gpa_cents, lo, hi)
        if criteria.category is not None:
            return taxonomy.category_of(item.interest) == criteria.category
        if criteria.target_name is not None:
            return item.name == criteria.target_name
        raise FamilyMismatch("criteria carry no resume fields")

    raise FamilyMismatch(f"unsupported item type {type(item).__name__}")


def resolve_chain_key(items, criteria: Criteria) -> str:
    """Follow the chain: source values become digits, then append the suffix."""
    by_key = {item.key: item for item in items}
    digits = []
    for key in criteria.chain_source_keys:
        item = by_key.get(key)
        if item is None:
            raise MalformedTask(f"chain source key {key!r} missing from items")
        if not 0 <= item.value <= 9:
            raise MalformedTask(
                f"chain source {key!r} holds {item.value}, not a single digit"
            )
        digits.append(str(item.value))
    return "".join(digits) + criteria.chain_suffix


def item_predicate(task: TaskInstance) -> Callable[[object], bool]:
    """Per-item gold test for the task, usable kind-by-kind on single items.

    For chain tasks the constructed key is resolved once up front; the
    matching item is the pair holding the final answer.
    """
    if task.spec.kind == "chain":
        target = resolve_chain_key(task.items, task.criteria)
        return lambda item: item.key == target
    criteria = task.criteria
    return lambda item: predicate(item, criteria)


def _identify(item) -> str:
    return item.key if isinstance(item, KVPair) else item.name


def solve(task: TaskInstance) -> GoldAnswer:
    """Linear-scan solution; independent of item order for id_set answers."""
    kind = task.spec.kind
    items = task.items
    criteria = task.criteria

    if kind == "max_of_list":
        if not items:
            raise MalformedTask("arith task has no values")
        return scalar_answer(max(items))

    if kind == "chain":
        target = resolve_chain_key(items, criteria)
        for item in items:
            if item.key == target:
                return scalar_answer(item.value)
        raise MalformedTask(f"constructed key {target!r} missing from items")

    satisfiers = [item for item in items if predicate(item, criteria)]

    if kind == "direct_kv":
        if len(satisfiers) != 1:
            raise MalformedTask(
                f"queried key matches {len(satisfiers)} items, expected 1"
            )
        return scalar_answer(satisfiers[0].value)

    if kind == "simple":
        if len(satisfiers) != 1:
            raise MalformedTask(
                f"queried name matches {len(satisfiers)} rows, expected 1"
            )
        return scalar_answer(satisfiers[0].age)

    if kind == "multimatch_last_one":
        given = set(criteria.given_keys or ())
        remaining = [s for s in satisfiers if _identify(s) not in given]
        if not remaining:
            raise MalformedTask("no key left after removing the given ones")
        return id_set_answer(_identify(s) for s in remaining)

    if not satisfiers:
        raise MalformedTask(f"criteria match no items for kind {kind!r}")
    return id_set_answer(_identify(s) for s in satisfiers)
