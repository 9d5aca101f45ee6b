"""Uniform model access: HTTP client, response cache and deterministic sims."""

from __future__ import annotations

from ..errors import InvalidSpec
from .cache import ResponseCache, cache_key
from .client import API_KEY_ENV, HttpEndpoint
from .sims import SimChatEndpoint, SimEmbedder, answer_line, simulate
from .types import Completion, GenerationParams, SimKind, parse_sim_uri

__all__ = [
    "API_KEY_ENV",
    "Completion",
    "GenerationParams",
    "HttpEndpoint",
    "ResponseCache",
    "SimChatEndpoint",
    "SimEmbedder",
    "SimKind",
    "answer_line",
    "cache_key",
    "chat",
    "embed",
    "make_chat_endpoint",
    "make_embedder",
    "parse_sim_uri",
    "simulate",
]


def make_chat_endpoint(uri: str, **http_kwargs):
    """`sim:<kind>[:p]` for a simulator, anything http(s):// for a live endpoint."""
    if uri.startswith("sim:"):
        return SimChatEndpoint(parse_sim_uri(uri))
    if uri.startswith("http://") or uri.startswith("https://"):
        return HttpEndpoint(uri, **http_kwargs)
    raise InvalidSpec(f"unrecognized endpoint URI {uri!r}")


def make_embedder(uri: str, *, range_max: int, embed_model: str = "", **http_kwargs):
    if uri == "sim" or uri.startswith("sim:"):
        return SimEmbedder(range_max)
    if uri.startswith("http://") or uri.startswith("https://"):
        return HttpEndpoint(uri, embed_model=embed_model, **http_kwargs)
    raise InvalidSpec(f"unrecognized embedder URI {uri!r}")


def chat(
    endpoint,
    prompt: str,
    params: GenerationParams,
    *,
    cache: ResponseCache | None = None,
    task=None,
    strategy=None,
    seed: int = 0,
) -> Completion:
    """Cache-aware completion from a live or simulated endpoint.

    Simulated endpoints answer from the task itself (their whole point is a
    known ground truth), so callers pass `task`/`strategy` through; live
    endpoints only see the prompt.
    """
    key = cache_key(params.model_name, prompt, params) if cache is not None else None
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit

    if isinstance(endpoint, SimChatEndpoint):
        if task is None or strategy is None:
            raise InvalidSpec("simulated chat requires task and strategy")
        completion = endpoint.complete(task, strategy, seed)
    else:
        completion = endpoint.chat(prompt, params)

    if cache is not None:
        cache.put(key, completion)
    return completion


def embed(endpoint, texts: list[str]) -> list[list[float]]:
    """One vector per text, order preserved, equal dimensions."""
    vectors = endpoint.embed(list(texts))
    if len(vectors) != len(texts):
        raise InvalidSpec("embedder returned a mismatched vector count")
    return vectors
