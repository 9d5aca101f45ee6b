"""Task parameter and instance types for every synthetic task family."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..answers import GoldAnswer
from ..errors import InvalidSpec

FAMILY_BY_KIND: dict[str, str] = {
    "direct_kv": "kv",
    "direct_vk": "kv",
    "chain": "kv",
    "multimatch": "kv",
    "multimatch_last_one": "kv",
    "logic_range": "kv",
    "simple": "resume",
    "multimatch_university": "resume",
    "logic_gpa_range": "resume",
    "logic_interest_category": "resume",
    "max_of_list": "arith",
}

KV_KINDS = frozenset(k for k, f in FAMILY_BY_KIND.items() if f == "kv")
RESUME_KINDS = frozenset(k for k, f in FAMILY_BY_KIND.items() if f == "resume")

# Kinds whose gold is a set of n > 1 possible items vs. exactly one item.
MULTIMATCH_KINDS = frozenset({"multimatch", "multimatch_university"})
LOGIC_KINDS = frozenset(
    {"logic_range", "logic_gpa_range", "logic_interest_category"}
)
SINGLE_KINDS = frozenset({"direct_kv", "direct_vk", "chain", "simple"}) | LOGIC_KINDS

MAX_CHAIN_STEPS = 9  # constructed key needs a suffix of length 10 - steps >= 1


@dataclass(frozen=True)
class TaskSpec:
    """Parameters that fully determine one generated task instance.

    N is the total number of context items, n the number of gold items
    (for chain tasks, n doubles as the number of chain hops).
    """

    family: str
    kind: str
    N: int
    n: int = 1
    value_range: tuple[int, int] = (0, 999)
    seed: int = 0


def validate_spec(spec: TaskSpec) -> None:
    """Raise InvalidSpec on any violated precondition."""
    if spec.kind not in FAMILY_BY_KIND:
        raise InvalidSpec(f"unknown kind {spec.kind!r}")
    if FAMILY_BY_KIND[spec.kind] != spec.family:
        raise InvalidSpec(f"kind {spec.kind!r} is not in family {spec.family!r}")
    if spec.N < 2:
        raise InvalidSpec(f"N must be >= 2, got {spec.N}")
    lo, hi = spec.value_range
    if lo < 0 or hi < lo:
        raise InvalidSpec(f"bad value_range {spec.value_range}")
    if not 0 <= spec.seed < (1 << 64):
        raise InvalidSpec("seed must be an unsigned 64-bit integer")

    if spec.kind in MULTIMATCH_KINDS:
        if not 1 <= spec.n < spec.N:
            raise InvalidSpec(f"need 1 <= n < N, got n={spec.n} N={spec.N}")
    elif spec.kind == "multimatch_last_one":
        if not 2 <= spec.n < spec.N:
            raise InvalidSpec(
                f"multimatch_last_one needs 2 <= n < N, got n={spec.n} N={spec.N}"
            )
    elif spec.kind == "chain":
        if not 1 <= spec.n <= MAX_CHAIN_STEPS:
            raise InvalidSpec(f"chain steps must be in [1, 9], got {spec.n}")
        if spec.N < spec.n + 1:
            raise InvalidSpec(
                f"chain needs N >= steps + 1, got N={spec.N} steps={spec.n}"
            )
    elif spec.n != 1:
        raise InvalidSpec(f"kind {spec.kind!r} requires n=1, got n={spec.n}")

    if spec.kind == "logic_range" and hi - lo < 2:
        raise InvalidSpec("value_range too narrow for an interior range target")
    if spec.kind in ("direct_vk", "multimatch", "multimatch_last_one") and hi == lo:
        raise InvalidSpec("value_range too narrow to keep the target value unique")
    if spec.kind == "chain" and hi < 9:
        raise InvalidSpec("chain requires value_range covering digits 0-9")


@dataclass(frozen=True)
class KVPair:
    key: str  # exactly 10 decimal digits, unique within an instance
    value: int


@dataclass(frozen=True)
class ResumeRow:
    name: str  # unique within an instance
    age: int  # years, in [18, 30]
    school: str
    gpa: str  # exactly two fraction digits, in [0.00, 5.00]
    interest: str
    intro: str

    @property
    def gpa_cents(self) -> int:
        whole, frac = self.gpa.split(".")
        return int(whole) * 100 + int(frac)


def gpa_string(cents: int) -> str:
    return f"{cents // 100}.{cents % 100:02d}"


def as_cents(bound) -> int:
    """Numeric range bound to integer cents: 527 -> 52700, '2.25' -> 225."""
    if isinstance(bound, int):
        return bound * 100
    text = str(bound)
    if "." in text:
        whole, frac = text.split(".")
        return int(whole) * 100 + int(frac.ljust(2, "0")[:2])
    return int(text) * 100


def in_open_range(value, lo, hi) -> bool:
    """Strict range membership, shared by the oracle and the generators so
    their notions of "inside" cannot drift apart."""
    return lo < value < hi


@dataclass(frozen=True)
class Criteria:
    """What the question asks for; exactly the fields for its kind are set."""

    target_value: int | None = None  # multimatch kinds, direct_vk
    target_key: str | None = None  # direct_kv
    target_name: str | None = None  # resume simple
    range_lo: str | None = None  # logic kinds; decimal string, strict bound
    range_hi: str | None = None
    school: str | None = None  # multimatch_university
    category: str | None = None  # logic_interest_category
    chain_source_keys: tuple[str, ...] | None = None  # chain
    chain_suffix: str | None = None
    given_keys: tuple[str, ...] | None = None  # multimatch_last_one

    def to_json(self) -> dict:
        out: dict = {}
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if value is not None:
                out[name] = list(value) if isinstance(value, tuple) else value
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Criteria":
        kwargs = dict(obj)
        for name in ("chain_source_keys", "given_keys"):
            if name in kwargs:
                kwargs[name] = tuple(kwargs[name])
        return cls(**kwargs)


@dataclass(frozen=True)
class TaskInstance:
    """One generated problem: rendered context, question, items and gold."""

    spec: TaskSpec
    context_text: str
    question_text: str
    items: tuple
    gold: GoldAnswer
    criteria: Criteria
    # Values the question templates interpolate; not part of the file format
    # (regenerate from spec+seed to recover them).
    question_params: dict = field(default_factory=dict, compare=False, repr=False)


SCHEMA_VERSION = 1


def instance_to_json(task: TaskInstance) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "spec": {
            "family": task.spec.family,
            "kind": task.spec.kind,
            "N": task.spec.N,
            "n": task.spec.n,
            "value_range": list(task.spec.value_range),
            "seed": task.spec.seed,
        },
        "context_text": task.context_text,
        "question_text": task.question_text,
        "gold": task.gold.to_json(),
        "criteria": task.criteria.to_json(),
    }


@dataclass(frozen=True)
class EmbedTaskInstance:
    """One numeric-comparison retrieval problem for embedding models."""

    query_text: str
    candidates: tuple[int, ...]  # 20 distinct integers in [0, range_max]
    gold_index: int
    range_max: int
    query_kind: str  # "equal" | "range"
    bounds: tuple[int, int] | None = None  # (lo, hi) open interval, range only
