"""One-dimensional primitive substitutions and their collared alphabets.

A substitution replaces each letter by a nonempty word; tiles are closed
intervals with punctures at their centers, and the exact tile lengths are
the entries of the Perron eigenvector of the abelianization matrix,
normalized so the first letter has length 1.  A collared letter decorates a
letter with its two neighbors (the legal 3-words), which is what makes the
diagram construction force its border.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from . import ratpoly as rp
from .errors import (
    EmptyRule,
    IllegalCollarProduced,
    NotPrimitive,
    ParseError,
    PeriodicDetected,
    SingularSystem,
    UnknownLetter,
)
from .exactnum import AlgebraicNumber, ModulusField, field_from_charpoly

Word = tuple[int, ...]


@dataclass(frozen=True)
class Letter:
    id: int
    name: str


@dataclass(frozen=True)
class CollaredLetter:
    """A letter together with its left and right neighbor (a legal 3-word)."""

    index: int
    left: int
    core: int
    right: int
    name: str

    def triple(self) -> tuple[int, int, int]:
        return (self.left, self.core, self.right)


class Substitution:
    def __init__(
        self,
        alphabet: list[Letter],
        rules: dict[int, Word],
        collar_names: list[str] | None = None,
    ):
        self.alphabet = tuple(alphabet)
        self.rules = dict(rules)
        self.collar_names = collar_names
        n = len(self.alphabet)
        for a in self.alphabet:
            if a.id not in self.rules:
                raise ParseError(f"missing rule for letter {a.name!r}")
            if not self.rules[a.id]:
                raise EmptyRule(f"empty rule for letter {a.name!r}")
        # abelianization[x][y] = occurrences of y in rules[x]
        self.abelianization = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in self.rules[x]:
                self.abelianization[x][y] += 1
        self.primitivity = primitivity_index(self.abelianization)
        self.field: ModulusField = field_from_charpoly(rp.charpoly(self.abelianization))
        self.lengths: dict[int, AlgebraicNumber] = perron_lengths(self)

    # -- basic word machinery -------------------------------------------------

    def letter_by_name(self, name: str) -> Letter:
        for a in self.alphabet:
            if a.name == name:
                return a
        raise UnknownLetter(f"unknown letter {name!r}")

    def apply(self, word: Word) -> Word:
        out: list[int] = []
        for x in word:
            out.extend(self.rules[x])
        return tuple(out)

    def word_name(self, word: Word) -> str:
        return "".join(self.alphabet[x].name for x in word)

    def lam(self) -> AlgebraicNumber:
        return self.field.lam()


def primitivity_index(matrix: list[list[int]]) -> int:
    """Smallest k with M^k strictly positive, searched up to the Wielandt
    bound (n-1)^2 + 1."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    if any(c < 0 for row in matrix for c in row):
        raise ValueError("matrix must be nonnegative")
    bound = (n - 1) ** 2 + 1
    power = [row[:] for row in matrix]
    for k in range(1, bound + 1):
        if all(c > 0 for row in power for c in row):
            return k
        power = [
            [sum(power[i][t] * matrix[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]
    raise NotPrimitive(f"no strictly positive power up to the Wielandt bound {bound}")


def perron_lengths(sub: Substitution) -> dict[int, AlgebraicNumber]:
    """Exact tile lengths: solve sum_y M[x][y] l(y) = lambda l(x), l(0) = 1.

    The system has rank n-1 at the Perron root; the first length is pinned
    to 1 and the rest solved by Gaussian elimination over Q(lambda).  All
    equations are re-checked afterwards and positivity is asserted.
    """
    f = sub.field
    lam = f.lam()
    n = len(sub.alphabet)
    m = sub.abelianization
    if n == 1:
        lengths = {0: f.one}
    else:
        # unknowns l(1)..l(n-1); rows: the eigen-equations for every letter
        rows = []
        for x in range(n):
            coeff = [f.rational(m[x][y]) - (lam if x == y else f.zero) for y in range(n)]
            rows.append((coeff[1:], -coeff[0]))
        sol = _solve_exact(rows, n - 1)
        if sol is None:
            raise SingularSystem("length system is singular; modulus/eigenvalue mismatch")
        lengths = {0: f.one}
        for y in range(1, n):
            lengths[y] = sol[y - 1]
    for x in range(n):
        total = f.zero
        for y in sub.rules[x]:
            total = total + lengths[y]
        if not (total - lam * lengths[x]).is_zero():
            raise SingularSystem("eigen-equation residual nonzero")
    for y in range(n):
        if lengths[y].sign() != 1:
            raise SingularSystem(f"non-positive tile length for letter {y}")
    return lengths


def _solve_exact(rows, k):
    """Solve an overdetermined consistent linear system over Q(lambda).

    rows: (coefficients list of length k, rhs).  Returns the solution or
    None if the equations are inconsistent / rank-deficient.
    """
    rows = [([c for c in coeff], rhs) for coeff, rhs in rows]
    pivots = []
    for col in range(k):
        pivot = None
        for i, (coeff, _) in enumerate(rows):
            if i in [p for p, _ in pivots]:
                continue
            if not coeff[col].is_zero():
                pivot = i
                break
        if pivot is None:
            return None
        pivots.append((pivot, col))
        pc = rows[pivot][0][col]
        inv = pc.inverse()
        rows[pivot] = ([c * inv for c in rows[pivot][0]], rows[pivot][1] * inv)
        for i, (coeff, rhs) in enumerate(rows):
            if i == pivot or coeff[col].is_zero():
                continue
            factor = coeff[col]
            rows[i] = (
                [c - factor * p for c, p in zip(coeff, rows[pivot][0])],
                rhs - factor * rows[pivot][1],
            )
    sol = [None] * k
    for pivot, col in pivots:
        sol[col] = rows[pivot][1]
    for coeff, rhs in rows:
        acc = rhs
        for c, s in zip(coeff, sol):
            acc = acc - c * s
        if not acc.is_zero():
            return None
    return sol


def legal_words(sub: Substitution, n: int) -> set[Word]:
    """All length-n factors of the subshift.

    Iterates the substitution on every letter and harvests factors until the
    set is unchanged for two consecutive rounds; for a primitive
    substitution these sets are nondecreasing and eventually constant.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    words = {(a.id,) for a in sub.alphabet}
    current = {(a.id,) for a in sub.alphabet}
    factors: set[Word] = set()
    stable_rounds = 0
    while stable_rounds < 2:
        current = {sub.apply(w) for w in current}
        new_factors = set()
        for w in current:
            for i in range(len(w) - n + 1):
                new_factors.add(w[i : i + n])
        if new_factors <= factors and all(len(w) >= n for w in current):
            stable_rounds += 1
        else:
            stable_rounds = 0
        factors |= new_factors
    return factors


def aperiodicity_screen(sub: Substitution, limit: int = 12) -> int | None:
    """Morse-Hedlund screen: return the first n <= limit with p(n) <= n, or
    None when the screen passes.  A pass is evidence, not a proof."""
    top = legal_words(sub, limit)
    for n in range(1, limit + 1):
        p_n = len({w[i : i + n] for w in top for i in range(limit - n + 1)})
        if p_n <= n:
            return n
    return None


def collar_alphabet(sub: Substitution) -> list[CollaredLetter]:
    """One collared letter per legal 3-word.

    Deterministic naming: scan legal_words(3) sorted lexicographically by
    base-letter ids and assign a, b, c, ...; a `collar-names` line in the
    spec file overrides the names in that same order.
    """
    triples = sorted(legal_words(sub, 3))
    names = sub.collar_names
    if names is not None and len(names) != len(triples):
        raise ParseError(
            f"collar-names lists {len(names)} names but there are {len(triples)} collared letters"
        )
    named = []
    for i, (l, c, r) in enumerate(triples):
        name = names[i] if names is not None else _default_name(i)
        named.append((name, l, c, r))
    seen = set()
    for name, *_ in named:
        if name in seen:
            raise ParseError(f"duplicate collared letter name {name!r}")
        seen.add(name)
    named.sort(key=lambda t: t[0])
    return [
        CollaredLetter(index=i, left=l, core=c, right=r, name=name)
        for i, (name, l, c, r) in enumerate(named)
    ]


def _default_name(i: int) -> str:
    letters = string.ascii_lowercase
    if i < len(letters):
        return letters[i]
    return f"{letters[i % 26]}{i // 26}"


class CollaredSubstitution:
    """The substitution induced on collared letters.

    For a collared letter (l, x, r), expand w = rules(l) rules(x) rules(r);
    the i-th letter of rules(x) picks up the previous and next letter of w
    as its new contexts.  Every triple produced this way must already be a
    legal 3-word, otherwise the input was not FLC-consistent.
    """

    def __init__(self, base: Substitution):
        self.base = base
        self.collared_alphabet = collar_alphabet(base)
        self._by_triple = {cl.triple(): cl.index for cl in self.collared_alphabet}
        self.collared_rules: dict[int, tuple[int, ...]] = {}
        for cl in self.collared_alphabet:
            self.collared_rules[cl.index] = self._expand(cl)
        self.collared_lengths: dict[int, AlgebraicNumber] = {
            cl.index: base.lengths[cl.core] for cl in self.collared_alphabet
        }
        self.collared_abelianization = self._abelianization()
        self.collared_primitivity = primitivity_index(self.collared_abelianization)

    def _expand(self, cl: CollaredLetter) -> tuple[int, ...]:
        base = self.base
        w = base.rules[cl.left] + base.rules[cl.core] + base.rules[cl.right]
        start = len(base.rules[cl.left])
        out = []
        for i in range(len(base.rules[cl.core])):
            j = start + i
            triple = (w[j - 1], w[j], w[j + 1])
            if triple not in self._by_triple:
                raise IllegalCollarProduced(
                    f"expansion of {cl.name} produced illegal 3-word "
                    f"{base.word_name(triple)}"
                )
            out.append(self._by_triple[triple])
        return tuple(out)

    def _abelianization(self) -> list[list[int]]:
        n = len(self.collared_alphabet)
        m = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in self.collared_rules[x]:
                m[x][y] += 1
        return m

    def by_name(self, name: str) -> CollaredLetter:
        for cl in self.collared_alphabet:
            if cl.name == name:
                return cl
        raise UnknownLetter(f"unknown collared letter {name!r}")

    def by_triple(self, triple: tuple[int, int, int]) -> CollaredLetter:
        return self.collared_alphabet[self._by_triple[triple]]

    def apply(self, word: tuple[int, ...]) -> tuple[int, ...]:
        out: list[int] = []
        for x in word:
            out.extend(self.collared_rules[x])
        return tuple(out)

    def name_of(self, index: int) -> str:
        return self.collared_alphabet[index].name

    def core_of(self, index: int) -> int:
        return self.collared_alphabet[index].core

    def length_of(self, index: int) -> AlgebraicNumber:
        return self.collared_lengths[index]

    def rule_name(self, index: int) -> str:
        return "".join(self.name_of(y) for y in self.collared_rules[index])


def collared_substitution(sub: Substitution) -> CollaredSubstitution:
    return CollaredSubstitution(sub)


# -- spec file grammar ----------------------------------------------------------
#
#   letters: 0 1
#   rule 0: 0 1
#   rule 1: 0
#   collar-names: a d b c        # optional, order = deterministic collar order
#
# UTF-8, line oriented, '#' starts a comment.


def parse_spec(text: str, check_aperiodicity: bool = True) -> Substitution:
    letters: list[Letter] | None = None
    rules: dict[int, Word] = {}
    rule_lines: dict[int, int] = {}
    collar_names: list[str] | None = None
    by_name: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", line=lineno, column=len(line))
        key, _, value = line.partition(":")
        key = key.strip()
        tokens = value.split()
        if key == "letters":
            if letters is not None:
                raise ParseError("duplicate letters line", line=lineno)
            if not tokens:
                raise ParseError("letters line lists no letters", line=lineno)
            letters = []
            for tok in tokens:
                if tok in by_name:
                    raise ParseError(f"duplicate letter {tok!r}", line=lineno)
                by_name[tok] = len(letters)
                letters.append(Letter(id=len(letters), name=tok))
        elif key.startswith("rule") and key[4:5].isspace():
            if letters is None:
                raise ParseError("rule before letters line", line=lineno)
            name = key[len("rule") :].strip()
            if name not in by_name:
                raise UnknownLetter(f"rule for unknown letter {name!r}", line=lineno)
            lid = by_name[name]
            if lid in rules:
                raise ParseError(f"duplicate rule for letter {name!r}", line=lineno)
            if not tokens:
                raise EmptyRule(f"rule for {name!r} is empty", line=lineno)
            img = []
            for tok in tokens:
                if tok not in by_name:
                    col = line.index(tok) + 1
                    raise UnknownLetter(f"unknown letter {tok!r}", line=lineno, column=col)
                img.append(by_name[tok])
            rules[lid] = tuple(img)
            rule_lines[lid] = lineno
        elif key == "collar-names":
            if collar_names is not None:
                raise ParseError("duplicate collar-names line", line=lineno)
            collar_names = tokens
        else:
            raise ParseError(f"unknown directive {key!r}", line=lineno, column=1)

    if letters is None:
        raise ParseError("missing letters line")
    sub = Substitution(letters, rules, collar_names)
    if check_aperiodicity:
        n = aperiodicity_screen(sub)
        if n is not None:
            raise PeriodicDetected(n, len(legal_words(sub, n)))
    return sub
