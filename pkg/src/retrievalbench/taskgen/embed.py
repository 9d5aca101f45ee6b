"""Numeric-comparison retrieval instances for embedding models."""

from __future__ import annotations

from ..errors import InvalidSpec
from ..rng import stream
from .types import EmbedTaskInstance

RANGE_MAXES = (30, 100, 1000, 10000)
QUERY_KINDS = ("equal", "range")
_NUM_CANDIDATES = 20


def gen_embed_task(range_max: int, query_kind: str, seed: int) -> EmbedTaskInstance:
    """20 distinct candidate integers in [0, range_max] plus one query.

    Equality queries name one candidate exactly; range queries carry an open
    interval (lo, hi) containing exactly one candidate.
    """
    if range_max not in RANGE_MAXES:
        raise InvalidSpec(f"range_max must be one of {RANGE_MAXES}, got {range_max}")
    if query_kind not in QUERY_KINDS:
        raise InvalidSpec(f"query_kind must be one of {QUERY_KINDS}, got {query_kind!r}")

    cand_rng = stream(seed, "embed", "candidates")
    crit_rng = stream(seed, "embed", "criteria")
    candidates = tuple(cand_rng.sample_indices(range_max + 1, _NUM_CANDIDATES))
    gold_index = crit_rng.randrange(_NUM_CANDIDATES)
    gold = candidates[gold_index]

    if query_kind == "equal":
        return EmbedTaskInstance(
            query_text=f"The integer equal to {gold}.",
            candidates=candidates,
            gold_index=gold_index,
            range_max=range_max,
            query_kind="equal",
        )

    # Open interval around the gold candidate, pinched inside its sorted
    # neighbours so no second candidate can fall strictly between the bounds.
    ordered = sorted(candidates)
    at = ordered.index(gold)
    below = ordered[at - 1] if at > 0 else max(-1, gold - 10)
    above = ordered[at + 1] if at < len(ordered) - 1 else gold + 10
    lo = crit_rng.randint(below, gold - 1)
    hi = crit_rng.randint(gold + 1, above)
    return EmbedTaskInstance(
        query_text=f"The integer larger than {lo} and smaller than {hi}.",
        candidates=candidates,
        gold_index=gold_index,
        range_max=range_max,
        query_kind="range",
        bounds=(lo, hi),
    )
