"""Render (task, strategy) into the exact prompt text.

Templates live as UTF-8 resource files under ``templates/``, one per
(kind, strategy), so byte-level golden tests can pin them; wording
differences between strategies are exactly what the benchmark measures.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import TYPE_CHECKING

from ..errors import UnsupportedCombination

if TYPE_CHECKING:  # pragma: no cover
    from ..taskgen.types import TaskInstance


class PromptStrategy(str, Enum):
    STANDARD = "standard"
    STEP_BY_STEP = "step_by_step"
    ONE_BY_ONE = "one_by_one"
    ADD_TO_LIST = "add_to_list"


STRATEGIES: tuple[PromptStrategy, ...] = tuple(PromptStrategy)

# Max generated tokens per strategy: 512 suffices for direct answers, while
# one-by-one and add-to-list traces over N=100 items run into the thousands.
DEFAULT_MAX_TOKENS: dict[PromptStrategy, int] = {
    PromptStrategy.STANDARD: 512,
    PromptStrategy.STEP_BY_STEP: 512,
    PromptStrategy.ONE_BY_ONE: 4096,
    PromptStrategy.ADD_TO_LIST: 4096,
}


@dataclass(frozen=True)
class PromptParams:
    question_first: bool = False  # default: question appended after the context


def as_strategy(value) -> PromptStrategy:
    if isinstance(value, PromptStrategy):
        return value
    try:
        return PromptStrategy(value)
    except ValueError:
        raise UnsupportedCombination(f"unknown prompt strategy {value!r}") from None


@lru_cache(maxsize=None)
def load_template(kind: str, strategy: str) -> str:
    name = f"{kind}__{strategy}.txt"
    ref = resources.files(__package__) / "templates" / name
    try:
        text = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UnsupportedCombination(
            f"no template for kind={kind!r} strategy={strategy!r}"
        ) from None
    return text[:-1] if text.endswith("\n") else text


def build_question(kind: str, strategy, question_params: dict) -> str:
    template = load_template(kind, as_strategy(strategy).value)
    return template.format(**question_params)


def default_max_tokens(strategy) -> int:
    return DEFAULT_MAX_TOKENS[as_strategy(strategy)]


def render(task: "TaskInstance", strategy, params: PromptParams | None = None) -> str:
    """Full prompt for the task under the given strategy.

    Pure: identical inputs produce identical strings.
    """
    params = params or PromptParams()
    question = build_question(task.spec.kind, strategy, task.question_params)
    # The arithmetic prompt is a single sentence pair, not a long document.
    sep = " " if task.spec.family == "arith" else "\n\n"
    if params.question_first:
        return question + sep + task.context_text
    return task.context_text + sep + question
