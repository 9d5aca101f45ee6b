"""Key-value pair task generation: direct, chain, multi-matching and logic kinds."""

from __future__ import annotations

from ..answers import id_set_answer, scalar_answer
from ..errors import InvalidSpec
from ..promptkit.render import build_question
from ..rng import Stream, stream
from .types import Criteria, KVPair, TaskInstance, TaskSpec, in_open_range, validate_spec

_KEY_SPACE = 10_000_000_000  # 10 decimal digits, leading zeros allowed


def _unique_keys(rng: Stream, count: int) -> list[str]:
    keys: list[str] = []
    seen: set[str] = set()
    while len(keys) < count:
        key = f"{rng.randrange(_KEY_SPACE):010d}"
        if key not in seen:
            seen.add(key)
            keys.append(key)
    return keys


def _value_excluding(rng: Stream, value_range: tuple[int, int], banned) -> int:
    lo, hi = value_range
    while True:
        v = rng.randint(lo, hi)
        if not banned(v):
            return v


def render_kv_context(pairs, total: int) -> str:
    body = ", ".join(f'"{p.key}": {p.value}' for p in pairs)
    return f"Json data with {total} key-value pairs:\n\n{{{body}}}"


def gen_kv_task(spec: TaskSpec) -> TaskInstance:
    """Generate one KV retrieval instance, byte-identical for identical specs.

    Gold items are planted at uniformly random positions; distractor values
    are drawn by rejection so the criterion has exactly the intended
    satisfier set.
    """
    if spec.family != "kv":
        raise InvalidSpec(f"gen_kv_task got family {spec.family!r}")
    validate_spec(spec)

    keys_rng = stream(spec.seed, "kv", "keys")
    values_rng = stream(spec.seed, "kv", "values")
    pos_rng = stream(spec.seed, "kv", "positions")
    crit_rng = stream(spec.seed, "kv", "criteria")

    N, n = spec.N, spec.n
    keys = _unique_keys(keys_rng, N)
    builder = _KIND_BUILDERS[spec.kind]
    values, gold, criteria, params = builder(
        spec, keys, values_rng, pos_rng, crit_rng
    )

    pairs = tuple(KVPair(key=k, value=v) for k, v in zip(keys, values))
    return TaskInstance(
        spec=spec,
        context_text=render_kv_context(pairs, N),
        question_text=build_question(spec.kind, "standard", params),
        items=pairs,
        gold=gold,
        criteria=criteria,
        question_params=params,
    )


def _build_match(spec, keys, values_rng, pos_rng, crit_rng):
    """Shared construction for multimatch, multimatch_last_one and direct_vk."""
    N = spec.N
    n = 1 if spec.kind == "direct_vk" else spec.n
    target = crit_rng.randint(*spec.value_range)
    gold_pos = set(pos_rng.sample_indices(N, n))
    values = [
        target if i in gold_pos else _value_excluding(values_rng, spec.value_range, lambda v: v == target)
        for i in range(N)
    ]
    gold_keys = [keys[i] for i in sorted(gold_pos)]

    if spec.kind == "multimatch_last_one":
        withheld = gold_keys[crit_rng.randrange(len(gold_keys))]
        given = tuple(k for k in gold_keys if k != withheld)
        given_block = "".join(
            f'key {i}: "{k}"\n' for i, k in enumerate(given, start=1)
        )
        criteria = Criteria(target_value=target, given_keys=given)
        params = {"value": target, "n": n, "given_block": given_block}
        return values, id_set_answer([withheld]), criteria, params

    criteria = Criteria(target_value=target)
    params = {"value": target}
    return values, id_set_answer(gold_keys), criteria, params


def _build_direct_kv(spec, keys, values_rng, pos_rng, crit_rng):
    values = [values_rng.randint(*spec.value_range) for _ in range(spec.N)]
    idx = pos_rng.sample_indices(spec.N, 1)[0]
    criteria = Criteria(target_key=keys[idx])
    return values, scalar_answer(values[idx]), criteria, {"key": keys[idx]}


def _build_logic_range(spec, keys, values_rng, pos_rng, crit_rng):
    lo_r, hi_r = spec.value_range
    target = crit_rng.randint(lo_r + 1, hi_r - 1)
    lo = max(lo_r, target - crit_rng.randint(1, 60))
    hi = min(hi_r, target + crit_rng.randint(1, 60))
    idx = pos_rng.sample_indices(spec.N, 1)[0]
    values = [
        target if i == idx
        else _value_excluding(values_rng, spec.value_range, lambda v: in_open_range(v, lo, hi))
        for i in range(spec.N)
    ]
    criteria = Criteria(range_lo=lo, range_hi=hi)
    return values, id_set_answer([keys[idx]]), criteria, {"lo": lo, "hi": hi}


def _build_chain(spec, keys, values_rng, pos_rng, crit_rng):
    N, steps = spec.N, spec.n
    suffix_len = 10 - steps
    digit_rng = stream(spec.seed, "kv", "chain_digits")

    special = pos_rng.sample_indices(N, steps + 1)
    source_pos, constructed_pos = special[:steps], special[steps]
    values = [values_rng.randint(*spec.value_range) for _ in range(N)]
    taken = set(keys)

    for _ in range(1000):
        digits = [digit_rng.randint(0, 9) for _ in range(steps)]
        for i, d in zip(source_pos, digits):
            values[i] = d
        prefix = "".join(str(d) for d in digits)
        suffix = f"{crit_rng.randrange(10 ** suffix_len):0{suffix_len}d}"
        constructed = prefix + suffix
        if constructed not in (taken - {keys[constructed_pos]}):
            break
    else:  # pragma: no cover - suffix space exhausted is astronomically unlikely
        raise InvalidSpec("could not place a collision-free chain key")

    keys[constructed_pos] = constructed
    source_keys = tuple(keys[i] for i in source_pos)
    criteria = Criteria(chain_source_keys=source_keys, chain_suffix=suffix)
    params = {
        "keys": ", ".join(f'"{k}"' for k in source_keys),
        "suffix": suffix,
    }
    return values, scalar_answer(values[constructed_pos]), criteria, params


_KIND_BUILDERS = {
    "multimatch": _build_match,
    "multimatch_last_one": _build_match,
    "direct_vk": _build_match,
    "direct_kv": _build_direct_kv,
    "logic_range": _build_logic_range,
    "chain": _build_chain,
}
