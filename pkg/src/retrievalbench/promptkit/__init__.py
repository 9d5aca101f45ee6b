from .render import (
    DEFAULT_MAX_TOKENS,
    STRATEGIES,
    PromptParams,
    PromptStrategy,
    as_strategy,
    build_question,
    default_max_tokens,
    load_template,
    render,
)

__all__ = [
    "DEFAULT_MAX_TOKENS",
    "STRATEGIES",
    "PromptParams",
    "PromptStrategy",
    "as_strategy",
    "build_question",
    "default_max_tokens",
    "load_template",
    "render",
]
