from __future__ import annotations

import random

import pytest

from bratteli.diagram import build_diagram
from bratteli.errors import BratteliError
from bratteli.fixtures import doubling, load_fixture
from bratteli.substitution import parse_spec

# Deterministic "random primitive 3-letter substitution": first success of a
# seeded draw (letters 0 1 2, rule lengths 1..3).  The text is frozen so a
# drift in the generator cannot silently change the fixture.
RAND3_SEED = 1200
RAND3_SPEC = "letters: 0 1 2\nrule 0: 2 1\nrule 1: 2\nrule 2: 0 0 2"


def draw_random_spec(seed: int) -> str:
    rng = random.Random(seed)
    while True:
        lines = ["letters: 0 1 2"]
        for a in "012":
            k = rng.randint(1, 3)
            lines.append(f"rule {a}: " + " ".join(rng.choice("012") for _ in range(k)))
        text = "\n".join(lines)
        try:
            parse_spec(text)
        except BratteliError:
            continue
        return text


@pytest.fixture(scope="session")
def fib():
    return build_diagram(load_fixture("fibonacci"))


@pytest.fixture(scope="session")
def tm():
    return build_diagram(load_fixture("thue-morse"))


@pytest.fixture(scope="session")
def dyadic():
    return build_diagram(doubling())


@pytest.fixture(scope="session")
def rand3():
    text = draw_random_spec(RAND3_SEED)
    assert text == RAND3_SPEC, "seeded draw drifted; update the frozen spec"
    return build_diagram(parse_spec(text))


@pytest.fixture(scope="session")
def all_diagrams(fib, tm, dyadic, rand3):
    return {"fibonacci": fib, "thue-morse": tm, "doubling": dyadic, "rand3": rand3}
