import pytest

from retrievalbench import grade
from retrievalbench.errors import UnsupportedCombination
from retrievalbench.promptkit import (
    DEFAULT_MAX_TOKENS,
    PromptParams,
    PromptStrategy,
    as_strategy,
    default_max_tokens,
    load_template,
    render,
)
from retrievalbench.taskgen import FAMILY_BY_KIND, TaskSpec, gen_task

ONE_BY_ONE_INSTRUCTION = (
    "Please check each item one by one and return your judgment (yes/no) "
    "on whether it meets the requirements."
)
ADD_TO_LIST_OPENING = "First, initialize an empty list to store the matching items."
STEP_BY_STEP_CORE = "think step by step, but do not check each item one by one"

RETRIEVAL_KINDS = [k for k, fam in FAMILY_BY_KIND.items() if fam in ("kv", "resume")]


def _task(kind, seed=3):
    family = FAMILY_BY_KIND[kind]
    n = 3 if kind in ("multimatch", "multimatch_university", "multimatch_last_one", "chain") else 1
    return gen_task(TaskSpec(family, kind, N=8, n=n, seed=seed))


class TestTemplates:
    @pytest.mark.parametrize("kind", RETRIEVAL_KINDS)
    @pytest.mark.parametrize("strategy", [s.value for s in PromptStrategy])
    def test_every_retrieval_combination_has_a_template(self, kind, strategy):
        assert load_template(kind, strategy)

    def test_arith_supports_standard_only(self):
        assert load_template("max_of_list", "standard")
        for strategy in ("step_by_step", "one_by_one", "add_to_list"):
            with pytest.raises(UnsupportedCombination):
                load_template("max_of_list", strategy)

    def test_unknown_strategy_rejected(self):
        with pytest.raises(UnsupportedCombination):
            as_strategy("chain_of_density")


class TestRender:
    def test_logic_range_question_wording(self):
        from retrievalbench.promptkit import build_question

        question = build_question("logic_range", "standard", {"lo": 527, "hi": 620})
        assert question == (
            "In the above json data, please find the Key (only one) whose Value "
            "(an integer) is greater than 527 and smaller than 620. Give your "
            'answer (the key) in format of "key: {answer}"'
        )

    def test_one_by_one_carries_check_instruction(self):
        prompt = render(_task("logic_range"), "one_by_one")
        assert ONE_BY_ONE_INSTRUCTION in prompt

    def test_add_to_list_carries_three_step_instruction(self):
        prompt = render(_task("multimatch_university"), "add_to_list")
        assert ADD_TO_LIST_OPENING in prompt
        assert "print the current list" in prompt
        assert "summarize your final answer" in prompt

    def test_step_by_step_wording(self):
        prompt = render(_task("multimatch"), "step_by_step")
        assert STEP_BY_STEP_CORE in prompt

    def test_render_is_pure(self):
        task = _task("multimatch")
        assert render(task, "add_to_list") == render(task, "add_to_list")

    def test_question_defaults_after_context(self):
        task = _task("logic_range")
        prompt = render(task, "standard")
        assert prompt.startswith(task.context_text)
        assert prompt.endswith(task.question_text)

    def test_question_first_flag_swaps_order(self):
        task = _task("logic_range")
        prompt = render(task, "standard", PromptParams(question_first=True))
        assert prompt.startswith(task.question_text)
        assert prompt.endswith(task.context_text)

    def test_arith_rejects_trace_strategies(self):
        task = gen_task(TaskSpec("arith", "max_of_list", N=5, seed=1))
        assert render(task, "standard")
        with pytest.raises(UnsupportedCombination):
            render(task, "one_by_one")

    @pytest.mark.parametrize("kind", RETRIEVAL_KINDS)
    def test_standard_prompt_has_exactly_one_answer_anchor(self, kind):
        task = _task(kind)
        pattern = grade.anchor_for(kind)
        # count in the question only: kv contexts contain no anchor words
        matches = pattern.findall(task.question_text)
        if kind == "multimatch_last_one":
            # the scaffold enumerates key 1..n; the answer slot is key n
            assert f"key {task.spec.n}: {{answer}}" in task.question_text
        else:
            assert len(matches) == 1, (kind, matches)
        assert pattern.search(task.context_text) is None

    @pytest.mark.parametrize("kind", RETRIEVAL_KINDS)
    @pytest.mark.parametrize("strategy", [s.value for s in PromptStrategy])
    def test_anchor_echo_round_trips_through_extraction(self, kind, strategy):
        """A completion echoing the required anchor format grades fully correct."""
        from retrievalbench.modelio import answer_line

        task = _task(kind)
        render(task, strategy)  # combination must be renderable
        completion = "Final answer: " + answer_line(task, task.gold)
        parsed = grade.extract_answer(completion, kind)
        assert grade.classify(parsed, task.gold) == grade.ErrorClass.FULLY_CORRECT


class TestTokenDefaults:
    def test_trace_strategies_get_longer_budgets(self):
        assert default_max_tokens("standard") == 512
        assert default_max_tokens("step_by_step") == 512
        assert default_max_tokens("one_by_one") == 4096
        assert default_max_tokens("add_to_list") == 4096
        assert set(DEFAULT_MAX_TOKENS) == set(PromptStrategy)
