"""Built-in substitution specs.

The collar-names lines rename the deterministically ordered collared
letters (legal 3-words sorted by base-letter ids) to the conventional
letters used throughout the worked examples, so that e.g. the Fibonacci
collared rules come out as sigma(a) = cd, sigma(b) = ad, sigma(c) = ad,
sigma(d) = b.
"""

from __future__ import annotations

from .errors import ParseError
from .substitution import Substitution, parse_spec

FIBONACCI_SPEC = """\
# golden-mean substitution
letters: 0 1
rule 0: 0 1
rule 1: 0
collar-names: a d b c
"""

THUE_MORSE_SPEC = """\
letters: 0 1
rule 0: 0 1
rule 1: 1 0
collar-names: b f c a e d
"""

# period-doubling layout of a single letter: the dyadic odometer
DOUBLING_SPEC = """\
letters: 0
rule 0: 0 0
"""

FIXTURES = {
    "fibonacci": FIBONACCI_SPEC,
    "thue-morse": THUE_MORSE_SPEC,
}


def load_fixture(name: str) -> Substitution:
    if name not in FIXTURES:
        raise ParseError(f"unknown fixture {name!r}; available: {', '.join(sorted(FIXTURES))}")
    return parse_spec(FIXTURES[name])


def doubling() -> Substitution:
    # periodic as a subshift, but its diagram (the binary odometer) is a
    # legitimate test object; skip the aperiodicity screen
    return parse_spec(DOUBLING_SPEC, check_aperiodicity=False)
