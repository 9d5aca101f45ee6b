"""Answer extraction, error taxonomy, trace parsing/verification, embed scoring."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum

from . import oracle
from .answers import GoldAnswer
from .errors import UnsupportedCombination, ZeroVector
from .taskgen.types import KVPair, TaskInstance


class ErrorClass(str, Enum):
    FULLY_CORRECT = "fully_correct"
    OVER_SELECTION = "over_selection"
    UNDER_SELECTION = "under_selection"
    MIS_SELECTION = "mis_selection"
    UNPARSEABLE = "unparseable"


@dataclass(frozen=True)
class ParsedAnswer:
    status: str  # "parsed" | "unparseable"
    ids: tuple[str, ...] = ()
    scalar: str | None = None

    def to_json(self) -> dict:
        return {"status": self.status, "ids": list(self.ids), "scalar": self.scalar}

    @classmethod
    def from_json(cls, obj: dict) -> "ParsedAnswer":
        return cls(
            status=obj["status"], ids=tuple(obj.get("ids", ())),
            scalar=obj.get("scalar"),
        )


UNPARSEABLE = ParsedAnswer(status="unparseable")

# Answer anchors, one per task kind.  "key" tolerates an enumeration index
# ("key 3:") because the last-one scaffold numbers its answer slots.
_VALUE_ANCHOR = re.compile(r"value\s*:", re.IGNORECASE)
_KEY_ANCHOR = re.compile(r"key(?:\s*\d+)?\s*:", re.IGNORECASE)
_KEYS_ANCHOR = re.compile(r"keys\s*:", re.IGNORECASE)
_NAME_ANCHOR = re.compile(r"name\s*:", re.IGNORECASE)
_NAMES_ANCHOR = re.compile(r"names\s*:", re.IGNORECASE)

_ANCHORS: dict[str, tuple[re.Pattern, str]] = {
    "direct_kv": (_VALUE_ANCHOR, "scalar"),
    "chain": (_VALUE_ANCHOR, "scalar"),
    "simple": (_VALUE_ANCHOR, "scalar"),
    "direct_vk": (_KEY_ANCHOR, "key_set"),
    "logic_range": (_KEY_ANCHOR, "key_set"),
    "multimatch_last_one": (_KEY_ANCHOR, "key_set"),
    "multimatch": (_KEYS_ANCHOR, "key_set"),
    "logic_gpa_range": (_NAME_ANCHOR, "name_set"),
    "logic_interest_category": (_NAME_ANCHOR, "name_set"),
    "multimatch_university": (_NAMES_ANCHOR, "name_set"),
}


def anchor_for(task_kind: str) -> re.Pattern:
    """The extraction anchor pattern for a kind (templates must agree)."""
    return _ANCHORS[task_kind][0]


_TEN_DIGITS = re.compile(r"\b\d{10}\b")
_INTEGER = re.compile(r"\d+")
_QUOTES = "\"'`‘’“”*_()[]{}<>"


def _clean_token(token: str) -> str:
    token = token.strip().strip(_QUOTES).strip()
    token = token.rstrip(".,;:!?").strip().strip(_QUOTES).strip()
    return " ".join(token.split())


def _last_anchor_line(text: str, anchor: re.Pattern) -> str | None:
    """Remainder of the line holding the last anchor occurrence."""
    last = None
    for m in anchor.finditer(text):
        last = m
    if last is None:
        return None
    rest = text[last.end():]
    return rest.split("\n", 1)[0]


def extract_answer(text: str, task_kind: str) -> ParsedAnswer:
    """Pull the machine-readable answer out of a free-text completion.

    Last anchor wins: chain-of-thought responses restate the question's
    format instruction early and conclude with "Final answer: ...".
    Unparseable output is a value, never an exception.
    """
    if task_kind == "max_of_list":
        m = _INTEGER.search(text)
        return ParsedAnswer("parsed", scalar=m.group()) if m else UNPARSEABLE
    if task_kind not in _ANCHORS:
        raise ValueError(f"unknown task kind {task_kind!r}")

    anchor, mode = _ANCHORS[task_kind]
    rest = _last_anchor_line(text, anchor)

    if rest is not None:
        if mode == "scalar":
            token = _clean_token(rest.split(",", 1)[0])
            if token.isdigit():
                return ParsedAnswer("parsed", scalar=token)
            return UNPARSEABLE
        tokens = [_clean_token(t) for t in rest.split(",")]
        tokens = [t for t in tokens if t]
        if mode == "key_set":
            tokens = [t for t in tokens if re.fullmatch(r"\d{10}", t)]
        return ParsedAnswer("parsed", ids=_dedupe(tokens))

    # No anchor: scavenge well-formed identifiers from the final lines.
    tail = "\n".join(text.splitlines()[-5:])
    if mode == "key_set":
        found = _dedupe(_TEN_DIGITS.findall(tail))
        return ParsedAnswer("parsed", ids=found) if found else UNPARSEABLE
    if mode == "scalar":
        # 10-digit tokens are keys, not values; skip them
        numbers = [x for x in _INTEGER.findall(tail) if len(x) != 10]
        if numbers:
            return ParsedAnswer("parsed", scalar=numbers[-1])
    return UNPARSEABLE


def _dedupe(tokens) -> tuple[str, ...]:
    seen: set[str] = set()
    out = []
    for t in tokens:
        if t not in seen:
            seen.add(t)
            out.append(t)
    return tuple(out)


def _norm_id(identifier: str) -> str:
    """Whitespace normalization + case folding; digit strings canonicalized.

    10-character digit strings are keys and compare verbatim; other pure
    digit strings are numbers, so leading zeros are insignificant.
    """
    s = " ".join(identifier.split()).casefold()
    if s.isdigit() and len(s) != 10:
        return str(int(s))
    return s


def _answer_set(parsed: ParsedAnswer) -> frozenset[str]:
    if parsed.scalar is not None:
        return frozenset({_norm_id(parsed.scalar)})
    return frozenset(_norm_id(i) for i in parsed.ids)


def classify(pred: ParsedAnswer, gold: GoldAnswer) -> ErrorClass:
    """Four-way outcome taxonomy, decided purely by set relations."""
    if pred.status != "parsed":
        return ErrorClass.UNPARSEABLE
    pred_set = _answer_set(pred)
    gold_set = frozenset(_norm_id(g) for g in gold.as_set())
    if pred_set == gold_set:
        return ErrorClass.FULLY_CORRECT
    if gold_set < pred_set:
        return ErrorClass.OVER_SELECTION
    if pred_set < gold_set:  # includes the empty parsed prediction
        return ErrorClass.UNDER_SELECTION
    return ErrorClass.MIS_SELECTION


# --- reasoning-trace parsing -------------------------------------------------

@dataclass(frozen=True)
class TraceStep:
    item_ref: str
    verdict: str  # "yes" | "no"


@dataclass(frozen=True)
class Trace:
    strategy: str
    steps: tuple[TraceStep, ...] = ()
    list_snapshots: tuple[tuple[str, ...], ...] = ()
    final_answer: ParsedAnswer = UNPARSEABLE


@dataclass(frozen=True)
class TraceReport:
    coverage: float
    faithfulness: float
    judgment_steps: int
    list_maintenance_steps: int
    meets_bound: bool
    snapshots_consistent: bool

    def to_json(self) -> dict:
        return {
            "coverage": self.coverage,
            "faithfulness": self.faithfulness,
            "judgment_steps": self.judgment_steps,
            "list_maintenance_steps": self.list_maintenance_steps,
            "meets_bound": self.meets_bound,
            "snapshots_consistent": self.snapshots_consistent,
        }


_ENUMERATED = re.compile(r"^\s*\d+\s*[.):]\s*(?P<body>.*)$")
_BULLETED = re.compile(r"^\s*(?:[-*•]|\d+\s*[.):])\s*(?P<body>.*)$")
_VERDICT = re.compile(r"\(?\b(yes|no|true|false)\b\)?", re.IGNORECASE)
_KEY_REF = re.compile(r"^[\s\"'`‘’“”*_-]*(\d{10})")
_NAME_REF = re.compile(
    r"^[\s\"'`*_-]*([A-Z][A-Za-z'’.-]*(?:\s+[A-Z][A-Za-z'’.-]*)+)"
)
_SNAPSHOT = re.compile(r"current list\s*:\s*`?\s*\[(?P<inner>[^\]]*)\]", re.IGNORECASE)

_YES = {"yes": "yes", "true": "yes", "no": "no", "false": "no"}


def _parse_judgment(body: str) -> TraceStep | None:
    m = _KEY_REF.match(body)
    if m is None:
        m = _NAME_REF.match(body)
        if m is None:
            return None
        ref = m.group(1).rstrip(".,:;")
    else:
        ref = m.group(1)
    verdicts = _VERDICT.findall(body[m.end():])
    if not verdicts:
        return None
    return TraceStep(item_ref=ref, verdict=_YES[verdicts[-1].lower()])


def _parse_snapshot(line: str) -> tuple[str, ...] | None:
    m = _SNAPSHOT.search(line)
    if m is None:
        return None
    inner = m.group("inner").strip()
    if not inner:
        return ()
    return tuple(t for t in (_clean_token(p) for p in inner.split(",")) if t)


def parse_trace(text: str, strategy) -> Trace:
    """Recover per-item verdicts (and list snapshots) from a CoT response.

    Unmatched lines are skipped; an empty Trace is a legal result.  Tolerant
    to quoting/markup around identifiers and to yes/no vs. true/false.
    """
    strategy = str(getattr(strategy, "value", strategy))
    if strategy not in ("one_by_one", "add_to_list"):
        raise UnsupportedCombination(f"no trace format for strategy {strategy!r}")
    line_re = _ENUMERATED if strategy == "one_by_one" else _BULLETED

    steps: list[TraceStep] = []
    snapshots: list[tuple[str, ...]] = []
    for line in text.splitlines():
        m = line_re.match(line)
        if m is not None:
            step = _parse_judgment(m.group("body"))
            if step is not None:
                steps.append(step)
        if strategy == "add_to_list":
            snap = _parse_snapshot(line)
            if snap is not None:
                snapshots.append(snap)

    return Trace(
        strategy=strategy,
        steps=tuple(steps),
        list_snapshots=tuple(snapshots),
        final_answer=_final_answer(text),
    )


def _final_answer(text: str) -> ParsedAnswer:
    """Kind-agnostic extraction for the trace record: last anchor of any kind."""
    best = None
    for anchor in (_VALUE_ANCHOR, _KEYS_ANCHOR, _NAMES_ANCHOR, _KEY_ANCHOR, _NAME_ANCHOR):
        for m in anchor.finditer(text):
            if best is None or m.start() > best.start():
                best = m
    if best is None:
        found = _dedupe(_TEN_DIGITS.findall("\n".join(text.splitlines()[-5:])))
        return ParsedAnswer("parsed", ids=found) if found else UNPARSEABLE
    rest = text[best.end():].split("\n", 1)[0]
    tokens = [t for t in (_clean_token(p) for p in rest.split(",")) if t]
    return ParsedAnswer("parsed", ids=_dedupe(tokens)) if tokens else UNPARSEABLE


def verify_trace(trace: Trace, task: TaskInstance) -> TraceReport:
    """Check every parsed verdict against the oracle predicate.

    Unknown identifiers count as unfaithful and uncovered.  meets_bound uses
    judgment_steps >= N for one-by-one traces and judgment + list-maintenance
    >= N + (n^2+n)/2 for add-to-list traces.
    """
    pred_fn = oracle.item_predicate(task)
    lookup = {
        _norm_id(item.key if isinstance(item, KVPair) else item.name): item
        for item in task.items
    }

    faithful = 0
    covered: set[str] = set()
    for step in trace.steps:
        ref = _norm_id(step.item_ref)
        item = lookup.get(ref)
        if item is None:
            continue
        covered.add(ref)
        if (step.verdict == "yes") == pred_fn(item):
            faithful += 1

    N = len(task.items)
    judgment = len(trace.steps)
    maintenance = sum(len(s) for s in trace.list_snapshots)
    n_gold = len(task.gold.ids) if task.gold.kind == "id_set" else 1

    if trace.strategy == "add_to_list":
        meets = judgment + maintenance >= oracle.sufficient_steps(N, n_gold)
        yes_refs = [_norm_id(s.item_ref) for s in trace.steps if s.verdict == "yes"]
        consistent = len(trace.list_snapshots) == len(yes_refs) and all(
            tuple(_norm_id(x) for x in snap) == tuple(yes_refs[: i + 1])
            for i, snap in enumerate(trace.list_snapshots)
        )
    else:
        meets = judgment >= N
        consistent = True

    return TraceReport(
        coverage=len(covered) / N if N else 0.0,
        faithfulness=faithful / judgment if judgment else 0.0,
        judgment_steps=judgment,
        list_maintenance_steps=maintenance,
        meets_bound=meets,
        snapshots_consistent=consistent,
    )


# --- embedding-retrieval scoring ---------------------------------------------

def _cosine(a, b) -> float:
    norm_a = math.sqrt(sum(x * x for x in a))
    norm_b = math.sqrt(sum(x * x for x in b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ZeroVector("cosine similarity undefined for zero-norm vectors")
    return sum(x * y for x, y in zip(a, b)) / (norm_a * norm_b)


def score_embed(query_vec, candidate_vecs, gold_index: int) -> bool:
    """True iff the gold candidate is the unique cosine-similarity argmax."""
    if len(candidate_vecs) < 2:
        raise ValueError("need at least 2 candidates")
    if not 0 <= gold_index < len(candidate_vecs):
        raise ValueError(f"gold_index {gold_index} out of range")
    dims = {len(v) for v in candidate_vecs} | {len(query_vec)}
    if len(dims) != 1:
        raise ValueError("query and candidate vectors must share dimensions")

    sims = [_cosine(query_vec, c) for c in candidate_vecs]
    best = max(sims)
    return sims[gold_index] == best and sims.count(best) == 1
