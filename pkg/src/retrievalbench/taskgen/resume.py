"""Student resume task generation."""

from __future__ import annotations

from .. import taxonomy
from ..answers import id_set_answer, scalar_answer
from ..errors import InvalidSpec, TaxonomyExhausted
from ..promptkit.render import build_question
from ..rng import Stream, stream
from .pools import FIRST_NAMES, INTRO_SENTENCES, LAST_NAMES, SCHOOLS
from .types import Criteria, ResumeRow, TaskInstance, TaskSpec, gpa_string, validate_spec

ALL_INTERESTS: tuple[str, ...] = tuple(sorted(taxonomy.INTEREST_TO_CATEGORY))

ROW_TEMPLATE = (
    "The student named {name} is {age} years old, graduated from {school} "
    "with a GPA of {gpa}. He/She is interested in {interest} and his/her "
    "self-introduction is: {intro}"
)


def render_resume_row(row: ResumeRow) -> str:
    return ROW_TEMPLATE.format(
        name=row.name,
        age=row.age,
        school=row.school,
        gpa=row.gpa,
        interest=row.interest,
        intro=row.intro,
    )


def render_resume_context(rows) -> str:
    header = f"Here are {len(rows)} students' resumes:"
    return header + "\n\n" + "\n\n".join(render_resume_row(r) for r in rows)


def _unique_names(rng: Stream, count: int) -> list[str]:
    pool_size = len(FIRST_NAMES) * len(LAST_NAMES)
    if count > pool_size:
        raise TaxonomyExhausted(
            f"need {count} distinct names but the pool holds {pool_size}"
        )
    indices = rng.sample_indices(pool_size, count)
    return [
        f"{FIRST_NAMES[i // len(LAST_NAMES)]} {LAST_NAMES[i % len(LAST_NAMES)]}"
        for i in indices
    ]


def _choice_excluding(rng: Stream, pool, banned) -> str:
    while True:
        item = rng.choice(pool)
        if not banned(item):
            return item


def gen_resume_task(spec: TaskSpec) -> TaskInstance:
    """Generate one student-resume retrieval instance.

    Rows render through the fixed declarative sentence template; GPAs carry
    exactly two fraction digits in [0.00, 5.00].
    """
    if spec.family != "resume":
        raise InvalidSpec(f"gen_resume_task got family {spec.family!r}")
    validate_spec(spec)

    names_rng = stream(spec.seed, "resume", "names")
    ages_rng = stream(spec.seed, "resume", "ages")
    schools_rng = stream(spec.seed, "resume", "schools")
    gpas_rng = stream(spec.seed, "resume", "gpas")
    interests_rng = stream(spec.seed, "resume", "interests")
    intros_rng = stream(spec.seed, "resume", "intros")
    pos_rng = stream(spec.seed, "resume", "positions")
    crit_rng = stream(spec.seed, "resume", "criteria")

    N, n = spec.N, spec.n
    names = _unique_names(names_rng, N)
    ages = [ages_rng.randint(18, 30) for _ in range(N)]
    intros = [intros_rng.choice(INTRO_SENTENCES) for _ in range(N)]

    schools: list[str]
    gpa_cents: list[int]
    interests: list[str]

    if spec.kind == "multimatch_university":
        target_school = crit_rng.choice(SCHOOLS)
        gold_pos = set(pos_rng.sample_indices(N, n))
        schools = [
            target_school if i in gold_pos
            else _choice_excluding(schools_rng, SCHOOLS, lambda s: s == target_school)
            for i in range(N)
        ]
        gpa_cents = [gpas_rng.randint(0, 500) for _ in range(N)]
        interests = [interests_rng.choice(ALL_INTERESTS) for _ in range(N)]
        gold = id_set_answer(names[i] for i in sorted(gold_pos))
        criteria = Criteria(school=target_school)
        params = {"school": target_school}

    elif spec.kind == "logic_gpa_range":
        target = crit_rng.randint(41, 459)
        lo = target - crit_rng.randint(1, 40)
        hi = target + crit_rng.randint(1, 40)
        idx = pos_rng.sample_indices(N, 1)[0]
        # Distractor GPAs stay strictly outside [lo, hi], so the open-interval
        # criterion has exactly one satisfier and no boundary ambiguity in the
        # natural-language "between".
        gpa_cents = [
            target if i == idx
            else _gpa_outside(gpas_rng, lo, hi)
            for i in range(N)
        ]
        schools = [schools_rng.choice(SCHOOLS) for _ in range(N)]
        interests = [interests_rng.choice(ALL_INTERESTS) for _ in range(N)]
        gold = id_set_answer([names[idx]])
        criteria = Criteria(range_lo=gpa_string(lo), range_hi=gpa_string(hi))
        params = {"lo": gpa_string(lo), "hi": gpa_string(hi)}

    elif spec.kind == "logic_interest_category":
        category = crit_rng.choice(taxonomy.CATEGORIES)
        inside = taxonomy.interests_in(category)
        outside = taxonomy.interests_outside(category)
        if not inside or not outside:
            raise TaxonomyExhausted(f"category {category!r} cannot be isolated")
        idx = pos_rng.sample_indices(N, 1)[0]
        interests = [
            crit_rng.choice(inside) if i == idx else interests_rng.choice(outside)
            for i in range(N)
        ]
        schools = [schools_rng.choice(SCHOOLS) for _ in range(N)]
        gpa_cents = [gpas_rng.randint(0, 500) for _ in range(N)]
        gold = id_set_answer([names[idx]])
        criteria = Criteria(category=category)
        params = {"category": category}

    elif spec.kind == "simple":
        idx = pos_rng.sample_indices(N, 1)[0]
        schools = [schools_rng.choice(SCHOOLS) for _ in range(N)]
        gpa_cents = [gpas_rng.randint(0, 500) for _ in range(N)]
        interests = [interests_rng.choice(ALL_INTERESTS) for _ in range(N)]
        gold = scalar_answer(ages[idx])
        criteria = Criteria(target_name=names[idx])
        params = {"name": names[idx]}

    else:
        raise InvalidSpec(f"unknown resume kind {spec.kind!r}")

    rows = tuple(
        ResumeRow(
            name=names[i],
            age=ages[i],
            school=schools[i],
            gpa=gpa_string(gpa_cents[i]),
            interest=interests[i],
            intro=intros[i],
        )
        for i in range(N)
    )
    return TaskInstance(
        spec=spec,
        context_text=render_resume_context(rows),
        question_text=build_question(spec.kind, "standard", params),
        items=rows,
        gold=gold,
        criteria=criteria,
        question_params=params,
    )


def _gpa_outside(rng: Stream, lo: int, hi: int) -> int:
    while True:
        cents = rng.randint(0, 500)
        if cents < lo or cents > hi:
            return cents
