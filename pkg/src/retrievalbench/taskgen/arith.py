"""Maximum-of-a-list arithmetic task (probing baseline for logic retrieval)."""

from __future__ import annotations

from ..answers import scalar_answer
from ..errors import InvalidSpec
from ..promptkit.render import build_question
from ..rng import stream
from .types import Criteria, TaskInstance, TaskSpec

_VALUE_RANGE = (0, 100)


def render_arith_context(values) -> str:
    return "A list of integers: " + ", ".join(str(v) for v in values) + "."


def gen_arith_task(count: int, seed: int) -> TaskInstance:
    """List of ``count`` distinct integers in [0, 100]; gold is the maximum."""
    if count < 2:
        raise InvalidSpec(f"need at least 2 integers, got {count}")
    hi = _VALUE_RANGE[1]
    if count > hi + 1:
        raise InvalidSpec(f"cannot draw {count} distinct integers from [0, {hi}]")

    values_rng = stream(seed, "arith", "values")
    values = tuple(values_rng.sample_indices(hi + 1, count))
    spec = TaskSpec(
        family="arith", kind="max_of_list", N=count, n=1,
        value_range=_VALUE_RANGE, seed=seed,
    )
    context = render_arith_context(values)
    return TaskInstance(
        spec=spec,
        context_text=context,
        question_text=build_question("max_of_list", "standard", {}),
        items=values,
        gold=scalar_answer(max(values)),
        criteria=Criteria(),
        question_params={},
    )
