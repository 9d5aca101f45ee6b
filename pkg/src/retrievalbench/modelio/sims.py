"""Deterministic simulated models for offline closed-loop testing.

Chat simulators reproduce either the ideal model or one specific failure
mode (incomplete multi-match answers, out-of-range picks, unfaithful
traces).  The embedding simulator reproduces the surface-matching failure of
real sentence embedders on comparison queries: it encodes the first integer
that literally appears in the text, so equality queries land exactly on
their candidate while range queries anchor on the lower bound.
"""

from __future__ import annotations

import math
import re

from .. import oracle
from ..answers import GoldAnswer
from ..errors import UnsupportedCombination
from ..promptkit.render import PromptParams, as_strategy, render
from ..rng import stream
from ..taskgen.tokens import estimate_tokens
from ..taskgen.types import KVPair, TaskInstance
from .types import Completion, SimKind

_TRACE_STRATEGIES = ("one_by_one", "add_to_list")


def simulate(kind: SimKind, task: TaskInstance, strategy, seed: int = 0) -> Completion:
    """Deterministic completion for (kind, task, strategy, seed)."""
    strategy_name = as_strategy(strategy).value
    if kind.name == "oracle":
        text = _answer_only(task, task.gold)
    elif kind.name == "first_match":
        text = _first_match(task)
    elif kind.name == "out_of_range":
        text = _out_of_range(task)
    elif kind.name in ("faithful_trace", "noisy_trace"):
        if strategy_name not in _TRACE_STRATEGIES:
            raise UnsupportedCombination(
                f"{kind.name} requires a trace strategy, got {strategy_name!r}"
            )
        flip_p = kind.p if kind.name == "noisy_trace" else 0.0
        text = _trace_response(task, strategy_name, flip_p, seed)
    else:  # pragma: no cover - SimKind validates names
        raise UnsupportedCombination(f"unknown simulator {kind.name!r}")

    prompt = render(task, strategy_name, PromptParams())
    return Completion(
        text=text,
        prompt_tokens=estimate_tokens(prompt),
        output_tokens=estimate_tokens(text),
        latency_ms=0,
        source="simulated",
    )


def _identify(item) -> str:
    return item.key if isinstance(item, KVPair) else item.name


def answer_line(task: TaskInstance, answer: GoldAnswer) -> str:
    """The kind's required answer-format anchor line for a given answer set."""
    kind = task.spec.kind
    ids = list(answer.ids)
    if kind in ("direct_kv", "simple"):
        return f"value: {answer.scalar}"
    if kind == "chain":
        constructed = oracle.resolve_chain_key(task.items, task.criteria)
        return f"key: {constructed} value: {answer.scalar}"
    if kind in ("direct_vk", "logic_range"):
        return "key: " + ", ".join(ids)
    if kind == "multimatch":
        return "keys: " + ", ".join(ids)
    if kind == "multimatch_last_one":
        quoted = ", ".join(f'"{k}"' for k in ids)
        return f"key {task.spec.n}: {quoted}"
    if kind == "multimatch_university":
        return "names: " + ", ".join(ids)
    if kind in ("logic_gpa_range", "logic_interest_category"):
        return "name: " + ", ".join(ids)
    if kind == "max_of_list":
        return str(answer.scalar)
    raise UnsupportedCombination(f"no answer format for kind {kind!r}")


def _answer_only(task: TaskInstance, answer: GoldAnswer) -> str:
    if task.spec.kind == "max_of_list":
        return f" {answer.scalar}."
    return "Final answer: " + answer_line(task, answer)


def _first_match(task: TaskInstance) -> str:
    gold = task.gold
    if gold.kind == "scalar":
        return _answer_only(task, gold)
    # gold.ids preserves context order; emit only the earliest item.
    first = GoldAnswer(kind="id_set", ids=(gold.ids[0],))
    return _answer_only(task, first)


def _out_of_range(task: TaskInstance) -> str:
    """Pick a confidently wrong item, mirroring the failure on logic retrieval."""
    kind = task.spec.kind
    criteria = task.criteria
    if kind in ("logic_range", "logic_gpa_range"):
        lo = oracle.as_cents(criteria.range_lo)
        hi = oracle.as_cents(criteria.range_hi)
        mid = (lo + hi) / 2
        outside = [
            (i, item) for i, item in enumerate(task.items)
            if not oracle.predicate(item, criteria)
        ]
        if not outside:
            raise UnsupportedCombination("no out-of-range item to pick")
        def distance(entry):
            i, item = entry
            cents = item.value * 100 if isinstance(item, KVPair) else item.gpa_cents
            return (abs(cents - mid), i)
        _, pick = min(outside, key=distance)
    elif kind == "logic_interest_category":
        pick = next(
            (item for item in task.items if not oracle.predicate(item, criteria)),
            None,
        )
        if pick is None:
            raise UnsupportedCombination("no out-of-category row to pick")
    else:
        raise UnsupportedCombination(f"out_of_range_sim undefined for kind {kind!r}")
    wrong = GoldAnswer(kind="id_set", ids=(_identify(pick),))
    return "Final answer: " + answer_line(task, wrong)


def _item_fact(task: TaskInstance, item) -> str:
    """The attribute the judgment is about, shown next to the identifier."""
    if isinstance(item, KVPair):
        return str(item.value)
    kind = task.spec.kind
    if kind == "multimatch_university":
        return f"Graduated from {item.school}"
    if kind == "logic_gpa_range":
        return f"GPA {item.gpa}"
    if kind == "logic_interest_category":
        return f"Interested in {item.interest}"
    return f"Age {item.age}"


def _derived_answer(task: TaskInstance, yes_items: list) -> GoldAnswer:
    """Answer implied by a trace's own yes-verdicts (may be wrong on purpose)."""
    kind = task.spec.kind
    if task.gold.kind == "scalar":
        if not yes_items:
            return GoldAnswer(kind="scalar", scalar="unknown")
        first = yes_items[0]
        value = first.value if isinstance(first, KVPair) else first.age
        return GoldAnswer(kind="scalar", scalar=str(value))
    ids = [_identify(i) for i in yes_items]
    if kind == "multimatch_last_one":
        given = set(task.criteria.given_keys or ())
        ids = [i for i in ids if i not in given]
    if not ids:
        return GoldAnswer(kind="scalar", scalar="unknown")
    if kind in ("direct_vk", "logic_range", "multimatch_last_one",
                "logic_gpa_range", "logic_interest_category"):
        ids = ids[:1]
    return GoldAnswer(kind="id_set", ids=tuple(ids))


def _trace_response(task: TaskInstance, strategy: str, flip_p: float, seed: int) -> str:
    """Complete one-by-one / add-to-list trace over every context item."""
    pred_fn = oracle.item_predicate(task)
    noise = stream(seed, "sim", "noise")
    verdicts = []
    for item in task.items:
        truth = pred_fn(item)
        if flip_p and noise.random() < flip_p:
            truth = not truth
        verdicts.append(truth)
    yes_items = [item for item, v in zip(task.items, verdicts) if v]
    final = _answer_only(task, _derived_answer(task, yes_items))

    if strategy == "one_by_one":
        lines = ["Let's examine each item one by one:", ""]
        for i, (item, verdict) in enumerate(zip(task.items, verdicts), start=1):
            mark = "yes" if verdict else "no"
            if isinstance(item, KVPair):
                lines.append(f'{i}. "{item.key}": {item.value} ({mark})')
            else:
                lines.append(f"{i}. {item.name}: {_item_fact(task, item)} ({mark})")
        lines += ["", final]
        return "\n".join(lines)

    lines = [
        "1. Initialize an empty list: `matching_items = []`.",
        "",
        "2. Sequentially examine each item:",
        "",
    ]
    current: list[str] = []
    for item, verdict in zip(task.items, verdicts):
        ref = _identify(item)
        label = f'"{ref}"' if isinstance(item, KVPair) else ref
        fact = _item_fact(task, item)
        if verdict:
            current.append(ref)
            shown = "[" + ", ".join(f"'{x}'" for x in current) + "]"
            lines.append(
                f"- {label}: {fact}. True. Add to list. Current list: `{shown}`."
            )
        else:
            lines.append(f"- {label}: {fact}. False. Continue.")
    lines += ["", "3. " + final]
    return "\n".join(lines)


class SimChatEndpoint:
    """Offline stand-in for an HTTP chat endpoint, addressed as sim:<kind>."""

    def __init__(self, kind: SimKind):
        self.kind = kind

    @property
    def name(self) -> str:
        if self.kind.name == "noisy_trace":
            return f"sim:{self.kind.name}:{self.kind.p}"
        return f"sim:{self.kind.name}"

    def complete(self, task: TaskInstance, strategy, seed: int = 0) -> Completion:
        return simulate(self.kind, task, strategy, seed)


class SimEmbedder:
    """Deterministic text embedder over one candidate range.

    vector(text) = (x, sqrt(1 - x^2)) with x = first_integer(text) / range_max,
    clamped to [0, 1].  Cosine similarity is then monotone in the angular gap,
    so equality queries (which contain their target verbatim) always win,
    while comparison queries anchor on the literal lower bound and miss.
    """

    def __init__(self, range_max: int):
        if range_max < 1:
            raise ValueError("range_max must be positive")
        self.range_max = range_max

    @property
    def name(self) -> str:
        return f"sim:embedder:{self.range_max}"

    def _encode(self, text: str) -> list[float]:
        m = re.search(r"-?\d+", text)
        value = int(m.group()) if m else 0
        x = min(1.0, max(0.0, value / self.range_max))
        return [x, math.sqrt(1.0 - x * x)]

    def embed(self, texts: list[str]) -> list[list[float]]:
        if not texts:
            raise ValueError("embed requires at least one text")
        return [self._encode(t) for t in texts]
