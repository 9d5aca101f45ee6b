"""Ground-truth answer representation shared by generators and solvers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GoldAnswer:
    """The oracle's answer to a task.

    ``kind`` is ``"scalar"`` for single-value answers (a looked-up value, an
    age, a maximum) and ``"id_set"`` for answers that are a set of item
    identifiers (10-digit keys or student names).  ``ids`` preserves context
    order for deterministic serialization; comparisons ignore order.
    """

    kind: str
    scalar: str | None = None
    ids: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("scalar", "id_set"):
            raise ValueError(f"unknown answer kind {self.kind!r}")
        if self.kind == "scalar" and self.scalar is None:
            raise ValueError("scalar answer requires a value")
        if self.kind == "id_set" and not self.ids:
            raise ValueError("id_set answer requires at least one identifier")

    def as_set(self) -> frozenset[str]:
        if self.kind == "scalar":
            return frozenset({self.scalar})
        return frozenset(self.ids)

    def to_json(self) -> dict:
        if self.kind == "scalar":
            return {"kind": "scalar", "scalar": self.scalar}
        return {"kind": "id_set", "ids": list(self.ids)}

    @classmethod
    def from_json(cls, obj: dict) -> "GoldAnswer":
        if obj.get("kind") == "scalar":
            return cls(kind="scalar", scalar=obj["scalar"])
        return cls(kind="id_set", ids=tuple(obj["ids"]))


def scalar_answer(value) -> GoldAnswer:
    return GoldAnswer(kind="scalar", scalar=str(value))


def id_set_answer(ids) -> GoldAnswer:
    return GoldAnswer(kind="id_set", ids=tuple(ids))
