"""Wire-level types for model access."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidSpec


@dataclass(frozen=True)
class GenerationParams:
    model_name: str = "sim"
    temperature: float = 0.0
    max_tokens: int = 512

    def __post_init__(self):
        if self.temperature < 0:
            raise InvalidSpec(f"temperature must be >= 0, got {self.temperature}")
        if self.max_tokens < 1:
            raise InvalidSpec(f"max_tokens must be positive, got {self.max_tokens}")


@dataclass(frozen=True)
class Completion:
    text: str
    prompt_tokens: int
    output_tokens: int
    latency_ms: int
    source: str  # "live" | "cache" | "simulated"
    truncated: bool = False  # provider reported a length stop

    def to_json(self) -> dict:
        return {
            "text": self.text,
            "prompt_tokens": self.prompt_tokens,
            "output_tokens": self.output_tokens,
            "latency_ms": self.latency_ms,
            "source": self.source,
            "truncated": self.truncated,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Completion":
        return cls(
            text=obj["text"],
            prompt_tokens=obj["prompt_tokens"],
            output_tokens=obj["output_tokens"],
            latency_ms=obj["latency_ms"],
            source=obj["source"],
            truncated=obj.get("truncated", False),
        )


SIM_KIND_NAMES = (
    "oracle",
    "first_match",
    "out_of_range",
    "faithful_trace",
    "noisy_trace",
)


@dataclass(frozen=True)
class SimKind:
    """A deterministic simulated model behavior; noisy_trace carries p."""

    name: str
    p: float = 0.0

    def __post_init__(self):
        if self.name not in SIM_KIND_NAMES:
            raise InvalidSpec(f"unknown simulator {self.name!r}")
        if not 0.0 <= self.p <= 1.0:
            raise InvalidSpec(f"flip probability must be in [0, 1], got {self.p}")


def parse_sim_uri(uri: str) -> SimKind:
    """Parse a `sim:<kind>[:<p>]` endpoint URI, e.g. `sim:noisy_trace:0.5`."""
    parts = uri.split(":")
    if parts[0] != "sim" or len(parts) not in (2, 3):
        raise InvalidSpec(f"not a simulator URI: {uri!r}")
    name = parts[1].removesuffix("_sim")
    p = float(parts[2]) if len(parts) == 3 else 0.0
    return SimKind(name=name, p=p)
