"""Interest-to-category taxonomy for the classification-based retrieval task.

A flat many-to-one map: every shipped interest belongs to exactly one
category; interests not in the table belong to no category, so membership
checks against them are false.  Kept as data (not logic) so the ground truth
is auditable at a glance.
"""

from __future__ import annotations

INTEREST_TO_CATEGORY: dict[str, str] = {
    # Sports
    "basketball": "Sports",
    "soccer": "Sports",
    "tennis": "Sports",
    "swimming": "Sports",
    "badminton": "Sports",
    "rock climbing": "Sports",
    "marathon running": "Sports",
    # Music
    "playing the piano": "Music",
    "playing the guitar": "Music",
    "playing the violin": "Music",
    "choir singing": "Music",
    "composing electronic music": "Music",
    "jazz drumming": "Music",
    # Arts
    "oil painting": "Arts",
    "watercolor painting": "Arts",
    "sculpture": "Arts",
    "calligraphy": "Arts",
    "street photography": "Arts",
    "ceramics": "Arts",
    # Literature
    "Writing": "Literature",
    "poetry": "Literature",
    "reading novels": "Literature",
    "screenwriting": "Literature",
    "translating fiction": "Literature",
    # Technology
    "robotics": "Technology",
    "3D printing": "Technology",
    "building mechanical keyboards": "Technology",
    "amateur radio": "Technology",
    "competitive programming": "Technology",
    "drone racing": "Technology",
    # Science
    "astronomy": "Science",
    "birdwatching": "Science",
    "fossil collecting": "Science",
    "meteorology": "Science",
    "chemistry experiments": "Science",
    # Games
    "chess": "Games",
    "go": "Games",
    "bridge": "Games",
    "speedcubing": "Games",
    "tabletop role-playing games": "Games",
    # Cooking
    "baking": "Cooking",
    "brewing coffee": "Cooking",
    "fermenting vegetables": "Cooking",
    "cake decorating": "Cooking",
    "regional cuisine": "Cooking",
}

CATEGORIES: tuple[str, ...] = tuple(sorted(set(INTEREST_TO_CATEGORY.values())))


def category_of(interest: str) -> str | None:
    """Category the interest belongs to, or None for unknown interests."""
    return INTEREST_TO_CATEGORY.get(interest)


def interests_in(category: str) -> tuple[str, ...]:
    return tuple(
        sorted(i for i, c in INTEREST_TO_CATEGORY.items() if c == category)
    )


def interests_outside(category: str) -> tuple[str, ...]:
    return tuple(
        sorted(i for i, c in INTEREST_TO_CATEGORY.items() if c != category)
    )
