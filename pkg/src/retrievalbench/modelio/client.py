"""HTTP client speaking the OpenAI-compatible chat/embeddings wire format."""

from __future__ import annotations

import os
import time

import httpx

from ..errors import BadResponse, RateLimited, Transport
from .types import Completion, GenerationParams

API_KEY_ENV = "OPENAI_API_KEY"
_RETRYABLE_STATUS = {500, 502, 503, 504}


class HttpEndpoint:
    """One OpenAI-compatible base URL.

    Thread-safe; bounded parallelism is the caller's job (the runner caps
    in-flight requests).  Retries transport errors and 429/5xx with
    exponential backoff; malformed payloads fail fast as BadResponse.
    """

    def __init__(
        self,
        base_url: str,
        api_key: str | None = None,
        *,
        timeout_s: float = 120.0,
        max_retries: int = 3,
        backoff_s: float = 0.5,
        embed_model: str = "",
    ):
        self.base_url = base_url.rstrip("/")
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV, "")
        self.embed_model = embed_model
        self._timeout = timeout_s
        self._max_retries = max_retries
        self._backoff = backoff_s
        self._client = httpx.Client(timeout=timeout_s)

    @property
    def name(self) -> str:
        return self.base_url

    def close(self) -> None:
        self._client.close()

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        return headers

    def _post(self, path: str, body: dict) -> dict:
        last_error: Exception | None = None
        for attempt in range(self._max_retries + 1):
            if attempt:
                time.sleep(self._backoff * (2 ** (attempt - 1)))
            try:
                response = self._client.post(
                    f"{self.base_url}{path}", json=body, headers=self._headers()
                )
            except httpx.HTTPError as exc:
                last_error = Transport(f"request to {path} failed: {exc}")
                continue
            if response.status_code == 429:
                last_error = RateLimited(f"rate limited on {path}")
                continue
            if response.status_code in _RETRYABLE_STATUS:
                last_error = Transport(f"{response.status_code} from {path}")
                continue
            if response.status_code != 200:
                raise BadResponse(
                    f"{response.status_code} from {path}: {response.text[:200]}"
                )
            try:
                return response.json()
            except ValueError as exc:
                raise BadResponse(f"non-JSON payload from {path}: {exc}") from exc
        raise last_error  # type: ignore[misc]

    def chat(self, prompt: str, params: GenerationParams) -> Completion:
        body = {
            "model": params.model_name,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        }
        started = time.monotonic()
        payload = self._post("/chat/completions", body)
        latency_ms = int((time.monotonic() - started) * 1000)
        try:
            choice = payload["choices"][0]
            text = choice["message"]["content"]
            if not isinstance(text, str):
                raise TypeError("content is not a string")
        except (KeyError, IndexError, TypeError) as exc:
            raise BadResponse(f"malformed chat payload: {exc}") from exc
        usage = payload.get("usage") or {}
        return Completion(
            text=text,
            prompt_tokens=int(usage.get("prompt_tokens", 0)),
            output_tokens=int(usage.get("completion_tokens", 0)),
            latency_ms=latency_ms,
            source="live",
            truncated=choice.get("finish_reason") == "length",
        )

    def embed(self, texts: list[str]) -> list[list[float]]:
        if not texts:
            raise ValueError("embed requires at least one text")
        payload = self._post("/embeddings", {"model": self.embed_model, "input": texts})
        try:
            data = sorted(payload["data"], key=lambda d: d["index"])
            vectors = [list(map(float, d["embedding"])) for d in data]
        except (KeyError, TypeError, ValueError) as exc:
            raise BadResponse(f"malformed embeddings payload: {exc}") from exc
        if len(vectors) != len(texts):
            raise BadResponse(
                f"expected {len(texts)} vectors, got {len(vectors)}"
            )
        if len({len(v) for v in vectors}) > 1:
            raise BadResponse("embedding vectors have mixed dimensions")
        return vectors
