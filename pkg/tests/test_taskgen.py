import json
import re

import pytest

from bruteforce import satisfies, scan_kv_text
from retrievalbench import oracle
from retrievalbench.errors import InvalidSpec, TaxonomyExhausted
from retrievalbench.rng import stream
from retrievalbench.taskgen import (
    TaskSpec,
    dump_task_line,
    estimate_tokens,
    gen_arith_task,
    gen_embed_task,
    gen_kv_task,
    gen_resume_task,
    gen_task,
    instance_to_json,
    render_arith_context,
    render_resume_row,
)
from retrievalbench.taskgen.types import ResumeRow


def kv(kind, N, n=1, seed=0, value_range=(0, 999)):
    return TaskSpec("kv", kind, N=N, n=n, value_range=value_range, seed=seed)


def resume(kind, N, n=1, seed=0):
    return TaskSpec("resume", kind, N=N, n=n, seed=seed)


class TestKVGeneration:
    def test_context_header_and_json_shape(self):
        task = gen_kv_task(kv("multimatch", N=10, n=2, seed=5))
        assert task.context_text.startswith("Json data with 10 key-value pairs:\n\n{")
        assert task.context_text.endswith("}")
        assert scan_kv_text(task.context_text) == {
            p.key: p.value for p in task.items
        }

    def test_keys_are_ten_digit_and_unique(self):
        task = gen_kv_task(kv("multimatch", N=200, n=5, seed=1))
        keys = [p.key for p in task.items]
        assert len(set(keys)) == 200
        assert all(re.fullmatch(r"\d{10}", k) for k in keys)

    def test_multimatch_plants_exactly_n(self):
        for seed in range(30):
            task = gen_kv_task(kv("multimatch", N=40, n=7, seed=seed))
            crit = task.criteria.to_json()
            hits = [p for p in task.items if satisfies(p, crit)]
            assert len(hits) == 7
            assert {p.key for p in hits} == set(task.gold.ids)

    def test_direct_vk_value_unique(self):
        for seed in range(30):
            task = gen_kv_task(kv("direct_vk", N=30, seed=seed))
            target = task.criteria.target_value
            assert sum(1 for p in task.items if p.value == target) == 1

    def test_logic_range_strict_bounds(self):
        for seed in range(30):
            task = gen_kv_task(kv("logic_range", N=30, seed=seed))
            lo, hi = int(task.criteria.range_lo), int(task.criteria.range_hi)
            inside = [p for p in task.items if lo < p.value < hi]
            assert len(inside) == 1
            assert [p.key for p in inside] == list(task.gold.ids)
            # question uses the strict comparative wording
            assert f"greater than {lo} and smaller than {hi}" in task.question_text

    def test_multimatch_last_one_withholds_one_gold_key(self):
        task = gen_kv_task(kv("multimatch_last_one", N=30, n=4, seed=9))
        given = task.criteria.given_keys
        assert len(given) == 3
        (withheld,) = task.gold.ids
        assert withheld not in given
        crit = {"target_value": task.criteria.target_value}
        matching = {p.key for p in task.items if satisfies(p, crit)}
        assert matching == set(given) | {withheld}
        assert f"key 4: {{answer}}" in task.question_text
        assert all(f'key {i}: "{k}"' in task.question_text
                   for i, k in enumerate(given, start=1))

    def test_chain_sources_single_digit_and_key_exists(self):
        for seed in range(20):
            task = gen_kv_task(kv("chain", N=25, n=5, seed=seed))
            table = {p.key: p.value for p in task.items}
            sources = task.criteria.chain_source_keys
            assert len(sources) == 5
            assert all(0 <= table[k] <= 9 for k in sources)
            constructed = "".join(str(table[k]) for k in sources) + task.criteria.chain_suffix
            assert len(constructed) == 10
            assert constructed in table
            assert constructed not in sources
            assert task.gold.scalar == str(table[constructed])

    def test_chain_suffix_length_complements_steps(self):
        task = gen_kv_task(kv("chain", N=12, n=3, seed=2))
        assert len(task.criteria.chain_suffix) == 7

    def test_generation_is_byte_identical(self):
        spec = kv("multimatch", N=100, n=10, seed=123)
        a, b = gen_kv_task(spec), gen_kv_task(spec)
        assert dump_task_line(a) == dump_task_line(b)

    def test_direct_kv_gold_reads_back_planted_value(self):
        spec = kv("direct_kv", N=2, seed=0)
        task = gen_kv_task(spec)
        table = {p.key: p.value for p in task.items}
        assert task.gold.scalar == str(table[task.criteria.target_key])

    @pytest.mark.parametrize(
        "bad",
        [
            kv("multimatch", N=10, n=10),
            kv("multimatch", N=10, n=0),
            kv("chain", N=12, n=10),          # suffix would be empty
            kv("logic_range", N=10, value_range=(5, 6)),
            kv("direct_vk", N=10, value_range=(3, 3)),
            kv("multimatch_last_one", N=10, n=1),
            TaskSpec("kv", "simple", N=10),   # kind from another family
            kv("multimatch", N=1, n=0),
        ],
    )
    def test_invalid_specs_rejected(self, bad):
        with pytest.raises(InvalidSpec):
            gen_kv_task(bad)


class TestResumeGeneration:
    def test_row_template_reproduces_known_sentence(self):
        row = ResumeRow(
            name="Hallie Turner",
            age=21,
            school="New York University",
            gpa="4.96",
            interest="basketball",
            intro="Creative writer exploring the impact of social media on culture.",
        )
        assert render_resume_row(row) == (
            "The student named Hallie Turner is 21 years old, graduated from "
            "New York University with a GPA of 4.96. He/She is interested in "
            "basketball and his/her self-introduction is: Creative writer "
            "exploring the impact of social media on culture."
        )

    def test_context_header(self):
        task = gen_resume_task(resume("simple", N=7, seed=4))
        assert task.context_text.startswith("Here are 7 students' resumes:\n\n")

    def test_names_unique_and_ages_in_range(self):
        task = gen_resume_task(resume("multimatch_university", N=300, n=5, seed=8))
        names = [r.name for r in task.items]
        assert len(set(names)) == 300
        assert all(18 <= r.age <= 30 for r in task.items)

    def test_gpa_always_two_decimals(self):
        pattern = re.compile(r"^\d\.\d{2}$")
        for seed in range(200):
            task = gen_resume_task(resume("logic_gpa_range", N=6, seed=seed))
            for row in task.items:
                assert pattern.match(row.gpa), row.gpa
                assert 0 <= row.gpa_cents <= 500

    def test_rendered_gpa_strings_match_two_decimal_format(self):
        # scan the rendered text, not the row objects; 1000 rows in total
        pattern = re.compile(r"with a GPA of (\d\.\d{2})\.")
        for seed in range(100):
            task = gen_resume_task(resume("multimatch_university", N=10, n=2, seed=seed))
            assert len(pattern.findall(task.context_text)) == 10

    def test_university_multimatch_exact_n(self):
        for seed in range(30):
            task = gen_resume_task(resume("multimatch_university", N=40, n=6, seed=seed))
            crit = task.criteria.to_json()
            hits = [r for r in task.items if satisfies(r, crit)]
            assert len(hits) == 6
            assert {r.name for r in hits} == set(task.gold.ids)

    def test_gpa_range_unique_and_strict(self):
        for seed in range(30):
            task = gen_resume_task(resume("logic_gpa_range", N=30, seed=seed))
            crit = task.criteria.to_json()
            hits = [r for r in task.items if satisfies(r, crit)]
            assert len(hits) == 1
            assert hits[0].name == task.gold.ids[0]

    def test_interest_category_unique(self):
        for seed in range(30):
            task = gen_resume_task(resume("logic_interest_category", N=25, seed=seed))
            crit = task.criteria.to_json()
            hits = [r for r in task.items if satisfies(r, crit)]
            assert [r.name for r in hits] == list(task.gold.ids)

    def test_two_row_gpa_instance_forced_unique(self):
        task = gen_resume_task(resume("logic_gpa_range", N=2, seed=1))
        assert oracle.solve(task).as_set() == task.gold.as_set()

    def test_name_pool_exhaustion(self):
        with pytest.raises(TaxonomyExhausted):
            gen_resume_task(resume("simple", N=100_000))

    def test_name_pools_are_duplicate_free_single_words(self):
        # full-name uniqueness relies on both facts
        from retrievalbench.taskgen.pools import FIRST_NAMES, LAST_NAMES

        assert len(set(FIRST_NAMES)) == len(FIRST_NAMES)
        assert len(set(LAST_NAMES)) == len(LAST_NAMES)
        assert all(" " not in name for name in FIRST_NAMES + LAST_NAMES)


class TestArithGeneration:
    def test_prompt_wording_is_pinned(self):
        assert render_arith_context([15, 24, 31, 44]) == "A list of integers: 15, 24, 31, 44."
        task = gen_arith_task(4, seed=3)
        assert task.question_text == "In the list, the biggest integer is"
        assert re.fullmatch(r"A list of integers: \d+(, \d+)*\.", task.context_text)

    def test_two_values_extremes(self):
        task = gen_arith_task(2, seed=11)
        assert task.gold.scalar == str(max(task.items))

    def test_gold_equals_rescan_of_rendered_prompt(self):
        for seed in range(1000):
            task = gen_arith_task(8, seed=seed)
            rendered = [int(x) for x in re.findall(r"\d+", task.context_text)]
            assert task.gold.scalar == str(max(rendered))
            assert len(set(rendered)) == 8

    def test_rejects_degenerate_counts(self):
        with pytest.raises(InvalidSpec):
            gen_arith_task(1, seed=0)
        with pytest.raises(InvalidSpec):
            gen_arith_task(500, seed=0)


class TestEmbedGeneration:
    def test_equal_query_names_gold(self):
        inst = gen_embed_task(1000, "equal", seed=5)
        gold = inst.candidates[inst.gold_index]
        assert inst.query_text == f"The integer equal to {gold}."
        assert len(set(inst.candidates)) == 20

    def test_range_query_unique_satisfier(self):
        for seed in range(1000):
            inst = gen_embed_task(100, "range", seed=seed)
            lo, hi = inst.bounds
            inside = [c for c in inst.candidates if lo < c < hi]
            assert inside == [inst.candidates[inst.gold_index]]
            assert inst.query_text == (
                f"The integer larger than {lo} and smaller than {hi}."
            )

    def test_all_ranges_generate(self):
        for range_max in (30, 100, 1000, 10000):
            inst = gen_embed_task(range_max, "range", seed=1)
            assert all(0 <= c <= range_max for c in inst.candidates)

    def test_rejects_unknown_parameters(self):
        with pytest.raises(InvalidSpec):
            gen_embed_task(50, "equal", seed=0)
        with pytest.raises(InvalidSpec):
            gen_embed_task(100, "between", seed=0)


class TestTokenEstimate:
    def test_empty_and_plain_text(self):
        assert estimate_tokens("") == 0
        assert estimate_tokens("a" * 400) == 100

    def test_kv_context_length_targets(self):
        targets = {10: 100, 100: 1000, 1000: 10000, 3000: 30000}
        for N, target in targets.items():
            task = gen_kv_task(kv("multimatch", N=N, n=1, seed=2))
            estimate = estimate_tokens(task.context_text)
            assert 0.75 * target <= estimate <= 1.25 * target, (N, estimate)

    def test_n1000_example_window(self):
        task = gen_kv_task(kv("multimatch", N=1000, n=1, seed=7))
        assert 8000 <= estimate_tokens(task.context_text) <= 12000


class TestInstanceSerialization:
    def test_task_file_fields(self):
        task = gen_task(kv("logic_range", N=10, seed=3))
        obj = instance_to_json(task)
        assert set(obj) == {
            "schema_version", "spec", "context_text", "question_text",
            "gold", "criteria",
        }
        assert obj["schema_version"] == 1
        assert obj["spec"]["kind"] == "logic_range"
        round_tripped = json.loads(dump_task_line(task))
        assert round_tripped == obj

    def test_question_params_not_serialized(self):
        task = gen_task(resume("simple", N=4, seed=2))
        assert "question_params" not in instance_to_json(task)


class TestPositionUniformity:
    def test_gold_position_deciles_near_uniform(self):
        counts = [0] * 10
        trials = 10_000
        for seed in range(trials):
            gold_pos = _gold_position_of_multimatch(seed)
            counts[gold_pos * 10 // 100] += 1
        for bucket in counts:
            assert abs(bucket / trials - 0.10) < 0.03


def _gold_position_of_multimatch(seed: int) -> int:
    # Only the position stream matters; regenerating full instances 10k times
    # would be wasteful. This mirrors gen_kv_task's position draw exactly and
    # the mirror itself is pinned by the instance-level check below.
    pos_rng = stream(seed, "kv", "positions")
    return pos_rng.sample_indices(100, 1)[0]


def test_position_mirror_matches_generator():
    for seed in (0, 5, 77, 1234):
        task = gen_kv_task(kv("multimatch", N=100, n=1, seed=seed))
        (gold_key,) = task.gold.ids
        actual = next(i for i, p in enumerate(task.items) if p.key == gold_key)
        assert actual == _gold_position_of_multimatch(seed)
