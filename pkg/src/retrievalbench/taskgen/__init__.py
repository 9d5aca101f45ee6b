"""Deterministic synthetic task generation for every benchmark family."""

from __future__ import annotations

import json

from ..errors import InvalidSpec
from .arith import gen_arith_task, render_arith_context
from .embed import QUERY_KINDS, RANGE_MAXES, gen_embed_task
from .kv import gen_kv_task, render_kv_context
from .resume import gen_resume_task, render_resume_context, render_resume_row
from .tokens import estimate_tokens
from .types import (
    FAMILY_BY_KIND,
    KV_KINDS,
    LOGIC_KINDS,
    MULTIMATCH_KINDS,
    RESUME_KINDS,
    SCHEMA_VERSION,
    SINGLE_KINDS,
    Criteria,
    EmbedTaskInstance,
    KVPair,
    ResumeRow,
    TaskInstance,
    TaskSpec,
    gpa_string,
    instance_to_json,
    validate_spec,
)

__all__ = [
    "FAMILY_BY_KIND",
    "KV_KINDS",
    "LOGIC_KINDS",
    "MULTIMATCH_KINDS",
    "QUERY_KINDS",
    "RANGE_MAXES",
    "RESUME_KINDS",
    "SCHEMA_VERSION",
    "SINGLE_KINDS",
    "Criteria",
    "EmbedTaskInstance",
    "KVPair",
    "ResumeRow",
    "TaskInstance",
    "TaskSpec",
    "dump_task_line",
    "estimate_tokens",
    "gen_arith_task",
    "gen_embed_task",
    "gen_kv_task",
    "gen_resume_task",
    "gen_task",
    "gpa_string",
    "instance_to_json",
    "render_arith_context",
    "render_kv_context",
    "render_resume_context",
    "render_resume_row",
    "validate_spec",
]


def gen_task(spec: TaskSpec) -> TaskInstance:
    """Dispatch to the family generator."""
    if spec.family == "kv":
        return gen_kv_task(spec)
    if spec.family == "resume":
        return gen_resume_task(spec)
    if spec.family == "arith":
        return gen_arith_task(spec.N, spec.seed)
    raise InvalidSpec(f"unknown family {spec.family!r}")


def dump_task_line(task: TaskInstance) -> str:
    """One line of the line-delimited JSON task file format."""
    return json.dumps(instance_to_json(task), sort_keys=True, ensure_ascii=False)
