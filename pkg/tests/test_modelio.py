import math

import pytest

from retrievalbench import grade, modelio
from retrievalbench.errors import BadResponse, InvalidSpec, Transport
from retrievalbench.modelio import (
    Completion,
    GenerationParams,
    HttpEndpoint,
    ResponseCache,
    SimChatEndpoint,
    SimEmbedder,
    SimKind,
    cache_key,
    parse_sim_uri,
    simulate,
)
from retrievalbench.taskgen import TaskSpec, gen_embed_task, gen_task


def _endpoint(stub_server, **kwargs) -> HttpEndpoint:
    kwargs.setdefault("max_retries", 3)
    kwargs.setdefault("backoff_s", 0.0)
    return HttpEndpoint(stub_server.url, api_key="test-key", **kwargs)


class TestHttpChat:
    def test_request_body_carries_params_exactly(self, stub_server):
        endpoint = _endpoint(stub_server)
        params = GenerationParams(model_name="gpt-test", temperature=0.0, max_tokens=512)
        endpoint.chat("hello world", params)
        request = stub_server.requests[0]
        assert request["path"] == "/chat/completions"
        assert request["body"] == {
            "model": "gpt-test",
            "messages": [{"role": "user", "content": "hello world"}],
            "temperature": 0.0,
            "max_tokens": 512,
        }
        assert request["headers"]["Authorization"] == "Bearer test-key"

    def test_completion_fields(self, stub_server):
        stub_server.script(("chat", {"text": "the answer", "prompt_tokens": 11, "completion_tokens": 7}))
        completion = _endpoint(stub_server).chat("q", GenerationParams())
        assert completion.text == "the answer"
        assert completion.prompt_tokens == 11
        assert completion.output_tokens == 7
        assert completion.source == "live"
        assert completion.truncated is False

    def test_truncation_flagged(self, stub_server):
        stub_server.script(("chat", {"text": "cut", "finish_reason": "length"}))
        completion = _endpoint(stub_server).chat("q", GenerationParams())
        assert completion.truncated is True

    def test_retries_rate_limit_then_succeeds(self, stub_server):
        stub_server.script(("status", 429), ("status", 500), ("chat", {"text": "ok"}))
        completion = _endpoint(stub_server).chat("q", GenerationParams())
        assert completion.text == "ok"
        assert len(stub_server.requests) == 3

    def test_transport_exhaustion_raises(self, stub_server):
        stub_server.script(*[("status", 503)] * 5)
        with pytest.raises(Transport):
            _endpoint(stub_server, max_retries=2).chat("q", GenerationParams())

    def test_client_error_fails_fast(self, stub_server):
        stub_server.script(("status", 400))
        with pytest.raises(BadResponse):
            _endpoint(stub_server).chat("q", GenerationParams())
        assert len(stub_server.requests) == 1

    def test_garbage_payload_is_bad_response(self, stub_server):
        stub_server.script(("garbage", None))
        with pytest.raises(BadResponse):
            _endpoint(stub_server).chat("q", GenerationParams())

    def test_missing_choices_is_bad_response(self, stub_server):
        stub_server.script(("raw", {"choices": []}))
        with pytest.raises(BadResponse):
            _endpoint(stub_server).chat("q", GenerationParams())


class TestHttpEmbed:
    def test_vectors_ordered_and_equal_length(self, stub_server):
        vectors = [[0.1, 0.2], [0.3, 0.4], [0.5, 0.6]]
        stub_server.script(("embed", {"vectors": vectors}))
        endpoint = _endpoint(stub_server, embed_model="embed-test")
        out = modelio.embed(endpoint, ["a", "b", "c"])
        assert out == vectors
        assert stub_server.requests[0]["body"] == {
            "model": "embed-test",
            "input": ["a", "b", "c"],
        }

    def test_count_mismatch_is_bad_response(self, stub_server):
        stub_server.script(("embed", {"vectors": [[0.1, 0.2]]}))
        with pytest.raises(BadResponse):
            _endpoint(stub_server).embed(["a", "b"])

    def test_empty_input_rejected(self, stub_server):
        with pytest.raises(ValueError):
            _endpoint(stub_server).embed([])


class TestCache:
    def _completion(self, text="answer") -> Completion:
        return Completion(
            text=text, prompt_tokens=3, output_tokens=2, latency_ms=40, source="live"
        )

    def test_second_chat_served_from_cache(self, stub_server, tmp_path):
        cache = ResponseCache(tmp_path / "cache.jsonl")
        endpoint = _endpoint(stub_server)
        params = GenerationParams(model_name="m")
        stub_server.script(("chat", {"text": "hi"}))
        first = modelio.chat(endpoint, "prompt", params, cache=cache)
        second = modelio.chat(endpoint, "prompt", params, cache=cache)
        assert first.text == second.text == "hi"
        assert second.source == "cache"
        assert second.latency_ms == 0
        assert len(stub_server.requests) == 1  # no second network call

    def test_key_separates_models_prompts_and_params(self):
        base = cache_key("m", "p", GenerationParams(model_name="m"))
        assert base != cache_key("m2", "p", GenerationParams(model_name="m2"))
        assert base != cache_key("m", "p2", GenerationParams(model_name="m"))
        assert base != cache_key(
            "m", "p", GenerationParams(model_name="m", max_tokens=513)
        )

    def test_put_is_idempotent(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cache = ResponseCache(path)
        cache.put("k", self._completion())
        cache.put("k", self._completion("different"))
        cache.put("k", self._completion("again"))
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 1
        assert cache.get("k").text == "answer"

    def test_cache_survives_reload(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        ResponseCache(path).put("k", self._completion())
        reloaded = ResponseCache(path)
        assert reloaded.get("k").text == "answer"
        assert reloaded.get("k").source == "cache"

    def test_corrupt_lines_skipped_with_warning(self, tmp_path):
        path = tmp_path / "cache.jsonl"
        cache = ResponseCache(path)
        cache.put("good", self._completion())
        with path.open("a") as fh:
            fh.write('{"broken": \n')
        with pytest.warns(UserWarning, match="corrupt"):
            reloaded = ResponseCache(path)
        assert reloaded.get("good") is not None
        assert len(reloaded) == 1


class TestSimUris:
    def test_parse_variants(self):
        assert parse_sim_uri("sim:oracle") == SimKind("oracle")
        assert parse_sim_uri("sim:oracle_sim") == SimKind("oracle")
        assert parse_sim_uri("sim:noisy_trace:0.25") == SimKind("noisy_trace", 0.25)

    def test_rejects_unknown(self):
        with pytest.raises(InvalidSpec):
            parse_sim_uri("sim:psychic")
        with pytest.raises(InvalidSpec):
            parse_sim_uri("http://sim")
        with pytest.raises(InvalidSpec):
            parse_sim_uri("sim:noisy_trace:1.5")

    def test_factory_dispatch(self):
        assert isinstance(modelio.make_chat_endpoint("sim:oracle"), SimChatEndpoint)
        endpoint = modelio.make_chat_endpoint("http://localhost:1/v1")
        assert isinstance(endpoint, HttpEndpoint)
        with pytest.raises(InvalidSpec):
            modelio.make_chat_endpoint("ftp://nope")


class TestSimulators:
    def test_simulated_source_and_zero_latency(self):
        task = gen_task(TaskSpec("kv", "logic_range", N=6, seed=1))
        completion = simulate(SimKind("oracle"), task, "standard", 0)
        assert completion.source == "simulated"
        assert completion.latency_ms == 0

    def test_simulate_is_deterministic(self):
        task = gen_task(TaskSpec("kv", "multimatch", N=30, n=5, seed=2))
        a = simulate(SimKind("noisy_trace", 0.5), task, "one_by_one", seed=9)
        b = simulate(SimKind("noisy_trace", 0.5), task, "one_by_one", seed=9)
        c = simulate(SimKind("noisy_trace", 0.5), task, "one_by_one", seed=10)
        assert a.text == b.text
        assert a.text != c.text

    def test_oracle_sim_ends_with_anchor(self):
        task = gen_task(TaskSpec("kv", "logic_range", N=6, seed=3))
        completion = simulate(SimKind("oracle"), task, "standard", 0)
        assert completion.text.endswith(f"key: {task.gold.ids[0]}")

    def test_first_match_under_selects(self):
        task = gen_task(TaskSpec("kv", "multimatch", N=20, n=5, seed=4))
        completion = simulate(SimKind("first_match"), task, "standard", 0)
        parsed = grade.extract_answer(completion.text, "multimatch")
        assert grade.classify(parsed, task.gold) == grade.ErrorClass.UNDER_SELECTION
        assert parsed.ids == (task.gold.ids[0],)

    def test_faithful_trace_line_format(self):
        task = gen_task(TaskSpec("kv", "logic_range", N=100, seed=5))
        completion = simulate(SimKind("faithful_trace"), task, "one_by_one", 0)
        lines = completion.text.splitlines()
        item51 = task.items[50]
        verdict = "yes" if item51.key in task.gold.ids else "no"
        assert f'51. "{item51.key}": {item51.value} ({verdict})' in lines

    def test_trace_sims_need_trace_strategy(self):
        task = gen_task(TaskSpec("kv", "multimatch", N=10, n=2, seed=6))
        from retrievalbench.errors import UnsupportedCombination

        with pytest.raises(UnsupportedCombination):
            simulate(SimKind("faithful_trace"), task, "standard", 0)

    def test_chat_routes_sims_and_requires_task(self):
        task = gen_task(TaskSpec("kv", "logic_range", N=5, seed=7))
        endpoint = SimChatEndpoint(SimKind("oracle"))
        completion = modelio.chat(
            endpoint, "prompt", GenerationParams(), task=task, strategy="standard"
        )
        assert completion.source == "simulated"
        with pytest.raises(InvalidSpec):
            modelio.chat(endpoint, "prompt", GenerationParams())


class TestSimEmbedder:
    def test_documented_encoding(self):
        embedder = SimEmbedder(1000)
        (vec,) = embedder.embed(["The integer equal to 310."])
        x = 310 / 1000
        assert vec == pytest.approx([x, math.sqrt(1 - x * x)])

    def test_range_query_encodes_first_integer(self):
        embedder = SimEmbedder(1000)
        (vec,) = embedder.embed(["The integer larger than 223 and smaller than 278."])
        x = 223 / 1000
        assert vec[0] == pytest.approx(x)

    def test_duplicate_texts_identical_vectors(self):
        embedder = SimEmbedder(100)
        a, b = embedder.embed(["57", "57"])
        assert a == b

    def test_query_plus_candidates_shape(self):
        inst = gen_embed_task(100, "equal", seed=3)
        embedder = SimEmbedder(100)
        vectors = embedder.embed([inst.query_text] + [str(c) for c in inst.candidates])
        assert len(vectors) == 21
        assert {len(v) for v in vectors} == {2}
