"""Finite and eventually periodic paths in the collared diagram.

A path starts with a root edge into its generation-1 vertex (label 0) and
continues with one vertical template per generation.  Because the diagram
is stationary, infinite paths that are eventually periodic are finitely
describable: a preamble of templates (generations 2 .. p+1) followed by a
repeating template cycle.  Every object of the worked examples -- extremal
paths, their pairing, Vershik orbits, the extended-equivalence generators
-- lives in this class.

Tail (AF) equivalence of two eventually periodic paths is decided exactly
from their normal forms.  The extended relation is decided by running a
synchronized automaton whose states are horizontal templates linking the
two paths' vertices and whose transitions are the zero-residual commutative
squares; the square table makes this automaton deterministic, so an
infinite run exists iff the walk from some seed state revisits a
(phase, state) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .diagram import BratteliDiagram, VerticalTemplate
from .errors import IncompatibleHorizontal, ParseError, UnpairedExtreme
from .exactnum import AlgebraicNumber


# -- finite prefixes --------------------------------------------------------------


class PathPrefix:
    """Root vertex plus vertical templates at generations 2 .. length."""

    def __init__(self, diagram: BratteliDiagram, root: int, edges):
        self.diagram = diagram
        self.root = root
        self.edges = tuple(int(e) for e in edges)
        v = root
        for i, ei in enumerate(self.edges):
            e = diagram.verticals[ei]
            if e.src != v:
                raise ParseError(
                    f"edge {diagram.edge_label(e)} at generation {i + 2} "
                    f"does not start at {diagram.vertices[v]}"
                )
            v = e.rng

    @property
    def length(self) -> int:
        return len(self.edges) + 1

    def top_vertex(self) -> int:
        if not self.edges:
            return self.root
        return self.diagram.verticals[self.edges[-1]].rng

    def vertex_at(self, n: int) -> int:
        if n == 1:
            return self.root
        return self.diagram.verticals[self.edges[n - 2]].rng

    def template_at(self, n: int) -> VerticalTemplate:
        return self.diagram.verticals[self.edges[n - 2]]

    def __eq__(self, other):
        return (
            isinstance(other, PathPrefix)
            and self.diagram is other.diagram
            and self.root == other.root
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((id(self.diagram), self.root, self.edges))

    def __repr__(self):
        return f"PathPrefix({render_path(self)})"


def u_of_prefix(gamma: PathPrefix) -> AlgebraicNumber:
    """Exact translation label: sum of c_e * lambda^(i-2) over the prefix
    (the root edge contributes 0)."""
    d = gamma.diagram
    total = d.field.zero
    power = d.field.one
    for ei in gamma.edges:
        total = total + d.verticals[ei].coeff * power
        power = power * d.lam
    return total


# -- eventually periodic paths ------------------------------------------------------


class EventuallyPeriodicPath:
    """Preamble (generations 2 .. p+1) followed by a repeating cycle.

    The stored form is normalized: the cycle is primitive and the preamble
    carries no edge that could be absorbed into the cycle, so two objects
    describe the same infinite path iff their fields are equal.
    """

    def __init__(self, diagram: BratteliDiagram, root: int, pre, cycle):
        pre = [int(e) for e in pre]
        cycle = [int(e) for e in cycle]
        if not cycle:
            raise ParseError("eventually periodic path needs a nonempty cycle")
        pre, cycle = _normalize(pre, cycle)
        self.diagram = diagram
        self.root = root
        self.pre = tuple(pre)
        self.cycle = tuple(cycle)
        # composability across preamble, into the cycle, and around it
        v = root
        for i, ei in enumerate(self.pre + self.cycle):
            e = diagram.verticals[ei]
            if e.src != v:
                raise ParseError(
                    f"edge {diagram.edge_label(e)} at generation {i + 2} "
                    f"does not start at {diagram.vertices[v]}"
                )
            v = e.rng
        if diagram.verticals[self.cycle[0]].src != self.diagram.verticals[
            self.cycle[-1]
        ].rng:
            raise ParseError("cycle does not close up")

    def key(self):
        return (self.root, self.pre, self.cycle)

    def edge_index_at(self, n: int) -> int:
        i = n - 2
        if i < len(self.pre):
            return self.pre[i]
        return self.cycle[(i - len(self.pre)) % len(self.cycle)]

    def template_at(self, n: int) -> VerticalTemplate:
        return self.diagram.verticals[self.edge_index_at(n)]

    def vertex_at(self, n: int) -> int:
        if n == 1:
            return self.root
        return self.template_at(n).rng

    def prefix(self, n: int) -> PathPrefix:
        return PathPrefix(
            self.diagram, self.root, [self.edge_index_at(k) for k in range(2, n + 1)]
        )

    def tail_key(self):
        """Tail-equivalence invariant: two paths are tail equivalent iff
        their tail keys agree (primitive cycle up to rotation, plus the
        generation phase at which the minimal rotation starts)."""
        L = len(self.cycle)
        rots = [self.cycle[i:] + self.cycle[:i] for i in range(L)]
        best = min(rots)
        shift = rots.index(best)
        phase = (len(self.pre) + 2 + shift) % L
        return (best, phase)

    def is_minimal(self) -> bool:
        d = self.diagram
        return all(d.verticals[e].pos == 0 for e in self.pre + self.cycle)

    def is_maximal(self) -> bool:
        d = self.diagram
        return all(
            d.verticals[e].pos == len(d.in_edges[d.verticals[e].rng]) - 1
            for e in self.pre + self.cycle
        )

    def __eq__(self, other):
        return (
            isinstance(other, EventuallyPeriodicPath)
            and self.diagram is other.diagram
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash((id(self.diagram), self.key()))

    def __repr__(self):
        return f"EventuallyPeriodicPath({render_path(self)})"


def _normalize(pre: list[int], cycle: list[int]) -> tuple[list[int], list[int]]:
    L = len(cycle)
    for d in range(1, L + 1):
        if L % d == 0 and cycle == cycle[:d] * (L // d):
            cycle = cycle[:d]
            break
    while pre and pre[-1] == cycle[-1]:
        pre.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    return pre, cycle


def af_equiv(x: EventuallyPeriodicPath, y: EventuallyPeriodicPath) -> bool:
    """Tail equivalence, decided exactly on the normal forms."""
    _same_diagram(x, y)
    return x.tail_key() == y.tail_key()


def _same_diagram(x, y):
    if x.diagram is not y.diagram:
        raise ParseError("paths live on different diagrams")


# -- decoding -----------------------------------------------------------------------


@dataclass(frozen=True)
class PatchTile:
    name: str
    base: str
    collared: bool
    left: AlgebraicNumber
    right: AlgebraicNumber

    @property
    def center(self) -> AlgebraicNumber:
        return (self.left + self.right).scale("1/2")

    @property
    def length(self) -> AlgebraicNumber:
        return self.right - self.left


@dataclass
class DecodedPatch:
    tiles: list[PatchTile]
    puncture_index: int
    offset: AlgebraicNumber  # u(gamma) = center of the core supertile
    top_vertex: int
    depth: int
    left: AlgebraicNumber  # span of the whole decoded patch
    right: AlgebraicNumber
    core_left: AlgebraicNumber  # span of the core supertile (= left/right when plain)
    core_right: AlgebraicNumber

    def word(self) -> str:
        return "".join(t.name for t in self.tiles)

    def base_word(self) -> str:
        return "".join(t.base for t in self.tiles)

    def word_marked(self) -> str:
        out = []
        for i, t in enumerate(self.tiles):
            out.append(t.name + ("̇" if i == self.puncture_index else ""))
        return "".join(out)

    def puncture_tile(self) -> PatchTile:
        return self.tiles[self.puncture_index]

    def puncture_positions(self) -> list[AlgebraicNumber]:
        return [t.center for t in self.tiles]


def _trace(gamma: PathPrefix) -> tuple[list[int], int]:
    """Expand the top vertex to generation 1, tracking the puncture index
    through block offsets."""
    d = gamma.diagram
    csub = d.csub
    word = [gamma.top_vertex()]
    idx = 0
    for n in range(gamma.length, 1, -1):
        e = gamma.template_at(n)
        assert word[idx] == e.rng
        assert csub.collared_rules[e.rng][e.pos] == e.src
        new_idx = sum(len(csub.collared_rules[w]) for w in word[:idx]) + e.pos
        out: list[int] = []
        for w in word:
            out.extend(csub.collared_rules[w])
        word = out
        idx = new_idx
    return word, idx


def decode(gamma: PathPrefix) -> DecodedPatch:
    """The generation-1 patch carried by a finite path: the full expansion
    of its top vertex, with the puncture tile centered at 0 and the core
    supertile centered at u(gamma)."""
    d = gamma.diagram
    csub = d.csub
    f = d.field
    word, idx = _trace(gamma)
    lengths = [csub.length_of(w) for w in word]
    # cumulative layout, then shift the puncture tile's center to 0
    cum = [f.zero]
    for ln in lengths:
        cum.append(cum[-1] + ln)
    shift = cum[idx] + lengths[idx].scale("1/2")
    tiles = []
    for i, w in enumerate(word):
        cl = csub.collared_alphabet[w]
        tiles.append(
            PatchTile(
                name=cl.name,
                base=csub.base.alphabet[cl.core].name,
                collared=True,
                left=cum[i] - shift,
                right=cum[i + 1] - shift,
            )
        )
    offset = u_of_prefix(gamma)
    top = gamma.top_vertex()
    span = d.lam ** (gamma.length - 1) * csub.length_of(top)
    left = offset - span.scale("1/2")
    right = offset + span.scale("1/2")
    assert (tiles[0].left - left).is_zero(), "supertile does not sit at u(gamma)"
    assert (tiles[-1].right - right).is_zero()
    return DecodedPatch(
        tiles=tiles,
        puncture_index=idx,
        offset=offset,
        top_vertex=top,
        depth=gamma.length,
        left=left,
        right=right,
        core_left=left,
        core_right=right,
    )


def decode_collared(gamma: PathPrefix) -> DecodedPatch:
    """Like decode, but expands the whole 3-tile collar of the top vertex;
    the contexts expand through the plain substitution and stay undecorated."""
    d = gamma.diagram
    csub = d.csub
    base = csub.base
    core = decode(gamma)
    cl = csub.collared_alphabet[gamma.top_vertex()]
    n = gamma.length

    def plain_expand(letter: int) -> list[int]:
        word = (letter,)
        for _ in range(n - 1):
            word = base.apply(word)
        return list(word)

    left_word = plain_expand(cl.left)
    right_word = plain_expand(cl.right)
    tiles: list[PatchTile] = []
    cursor = core.left
    for w in reversed(left_word):
        ln = base.lengths[w]
        tiles.insert(
            0,
            PatchTile(
                name=base.alphabet[w].name,
                base=base.alphabet[w].name,
                collared=False,
                left=cursor - ln,
                right=cursor,
            ),
        )
        cursor = cursor - ln
    patch_left = cursor
    tiles.extend(core.tiles)
    cursor = core.right
    for w in right_word:
        ln = base.lengths[w]
        tiles.append(
            PatchTile(
                name=base.alphabet[w].name,
                base=base.alphabet[w].name,
                collared=False,
                left=cursor,
                right=cursor + ln,
            )
        )
        cursor = cursor + ln
    return DecodedPatch(
        tiles=tiles,
        puncture_index=len(left_word) + core.puncture_index,
        offset=core.offset,
        top_vertex=core.top_vertex,
        depth=n,
        left=patch_left,
        right=cursor,
        core_left=core.left,
        core_right=core.right,
    )


# -- extremal paths and the Vershik map ----------------------------------------------


def extremal_paths(diagram: BratteliDiagram):
    """All minimal and all maximal infinite paths.

    The minimal edge into a vertex is the one at position 0 (leftmost
    subtile), the maximal the one at the last position.  All-minimal paths
    are forced onto the cycles of v -> source of the minimal edge into v,
    so there are finitely many and they are purely periodic from the root;
    likewise for maximal paths.
    """
    mins = _extremes(diagram, minimal=True)
    maxs = _extremes(diagram, minimal=False)
    return mins, maxs


def _extremes(diagram: BratteliDiagram, minimal: bool) -> list[EventuallyPeriodicPath]:
    pick = diagram.min_edge_into if minimal else diagram.max_edge_into
    n = len(diagram.vertices)
    f = {v: pick(v).src for v in range(n)}
    on_cycle: set[int] = set()
    for v in range(n):
        seen = {}
        w = v
        while w not in seen:
            seen[w] = True
            w = f[w]
        # w is on a cycle; walk it
        cyc = [w]
        u = f[w]
        while u != w:
            cyc.append(u)
            u = f[u]
        on_cycle.update(cyc)
    paths = []
    for v in sorted(on_cycle):
        # going up the path runs backward through the f-orbit
        pred = {f[w]: w for w in on_cycle if f[w] in on_cycle}
        cyc_templates = []
        cur = v
        while True:
            up = pred[cur]
            cyc_templates.append(pick(up).index)
            cur = up
            if cur == v:
                break
        paths.append(EventuallyPeriodicPath(diagram, v, [], cyc_templates))
    return paths


@dataclass
class Pairing:
    pairs: list[tuple[EventuallyPeriodicPath, EventuallyPeriodicPath]]  # (max, min)

    def psi(self, x: EventuallyPeriodicPath) -> EventuallyPeriodicPath:
        for mx, mn in self.pairs:
            if mx == x:
                return mn
        raise UnpairedExtreme("path is not a known maximal path")


def pair_extremes(diagram: BratteliDiagram) -> Pairing:
    """Pair each maximal path with a minimal path by composing the recurrent
    commutative diagrams: each simple cycle of diagrams, started at each of
    its phases, assembles one extremal path down each vertical column."""
    from .diagram import diagram_chains

    _, cycles = diagram_chains(diagram)
    mins, maxs = extremal_paths(diagram)
    min_set = {p.key(): p for p in mins}
    max_set = {p.key(): p for p in maxs}
    pairs: dict = {}
    for cyc in cycles:
        k = len(cyc)
        for phase in range(k):
            order = [cyc[(phase + j) % k] for j in range(k)]
            left = [diagram.verticals[s.e_left].index for s in order]
            right = [diagram.verticals[s.e_right].index for s in order]
            lpath = EventuallyPeriodicPath(
                diagram, diagram.verticals[left[0]].src, [], left
            )
            rpath = EventuallyPeriodicPath(
                diagram, diagram.verticals[right[0]].src, [], right
            )
            lmin, lmax = lpath.is_minimal(), lpath.is_maximal()
            rmin, rmax = rpath.is_minimal(), rpath.is_maximal()
            if lmin and rmax and not (lmax and rmin):
                mx, mn = rpath, lpath
            elif rmin and lmax:
                mx, mn = lpath, rpath
            else:
                raise UnpairedExtreme(
                    f"diagram cycle columns are not extremal: {render_path(lpath)} / {render_path(rpath)}"
                )
            if mx.key() not in max_set or mn.key() not in min_set:
                raise UnpairedExtreme("cycle column is not one of the extremal paths")
            if mx.key() in pairs and pairs[mx.key()] != mn:
                raise UnpairedExtreme("maximal path paired twice inconsistently")
            pairs[mx.key()] = mn
    if set(pairs) != set(max_set):
        raise UnpairedExtreme("pairing does not cover every maximal path")
    if {p.key() for p in pairs.values()} != set(min_set):
        raise UnpairedExtreme("pairing does not cover every minimal path")
    ordered = [(max_set[k], pairs[k]) for k in sorted(pairs)]
    return Pairing(pairs=ordered)


def vershik_successor(x: EventuallyPeriodicPath) -> EventuallyPeriodicPath:
    """Successor in the left-to-right edge order; the decoded puncture moves
    exactly one tile to the right.  Maximal paths jump through the pairing."""
    d = x.diagram
    horizon = len(x.pre) + len(x.cycle) + 1
    change = None
    for n in range(2, horizon + 1):
        e = x.template_at(n)
        if e.pos < len(d.in_edges[e.rng]) - 1:
            change = n
            break
    if change is None:
        return d.pair_extremes().psi(x)
    e = x.template_at(change)
    new_e = d.in_edges[e.rng][e.pos + 1]
    refill: list[int] = []
    v = new_e.src
    for _ in range(change - 2):
        me = d.min_edge_into(v)
        refill.append(me.index)
        v = me.src
    refill.reverse()
    root = v
    i = change - 2  # index of the changed edge in the flattened sequence
    if i < len(x.pre):
        pre = refill + [new_e.index] + list(x.pre[i + 1 :])
        cycle = list(x.cycle)
    else:
        j = (i - len(x.pre)) % len(x.cycle)
        pre = refill + [new_e.index]
        cycle = list(x.cycle[j + 1 :] + x.cycle[: j + 1])
    return EventuallyPeriodicPath(d, root, pre, cycle)


# -- the extended equivalence relation -------------------------------------------------


@dataclass
class RbWitness:
    n0: int
    chain: tuple[int, ...]  # horizontal template indices for generations n0, n0+1, ...
    translation: AlgebraicNumber

    def h_at(self, n: int) -> int:
        if n < self.n0:
            raise ValueError("witness chain starts at generation n0")
        return self.chain[(n - self.n0) % len(self.chain)]


def rb_equiv(x: EventuallyPeriodicPath, y: EventuallyPeriodicPath) -> RbWitness | None:
    """Decide the extended equivalence of two eventually periodic paths.

    States at generation n are horizontal templates linking the two range
    vertices; a step to generation n+1 exists iff the quadruple with the
    paths' vertical templates is a commutative square.  The square table
    makes the automaton deterministic, so an infinite chain exists iff the
    forward walk from some (phase, state) seed survives one full sweep of
    the finite state space, i.e. revisits a (phase, state) pair.
    """
    _same_diagram(x, y)
    d = x.diagram
    p0 = max(len(x.pre), len(y.pre)) + 2
    period = _lcm(len(x.cycle), len(y.cycle))

    def step(phase: int, h: int) -> int | None:
        n_next = p0 + phase + 1
        el = x.edge_index_at(n_next)
        er = y.edge_index_at(n_next)
        return d.square_table.get((h, el, er))

    best = None
    for phase in range(period):
        vx = x.vertex_at(p0 + phase)
        vy = y.vertex_at(p0 + phase)
        for h in d.h_by_ends.get((vx, vy), []):
            seen: dict[tuple[int, int], int] = {}
            walk: list[int] = []
            p, cur = phase, h.index
            dead = False
            while (p, cur) not in seen:
                seen[(p, cur)] = len(walk)
                walk.append(cur)
                nxt = step(p, cur)
                if nxt is None:
                    dead = True
                    break
                p, cur = (p + 1) % period, nxt
            if dead:
                continue
            start = seen[(p, cur)]
            cyc = walk[start:]
            n0 = p0 + phase + start
            cand = (n0, tuple(cyc))
            if best is None or cand < best:
                best = cand
    if best is None:
        return None
    n0, chain = best
    a0 = _chain_translation(x, y, n0, chain[0])
    a1 = _chain_translation(x, y, n0 + len(chain), chain[0])
    assert (a0 - a1).is_zero(), "translation must be generation independent"
    return RbWitness(n0=n0, chain=chain, translation=a0)


def _chain_translation(x, y, n: int, h_index: int) -> AlgebraicNumber:
    d = x.diagram
    ux = u_of_prefix(x.prefix(n))
    uy = u_of_prefix(y.prefix(n))
    uh = d.horizontals[h_index].coeff * d.lam ** (n - 1)
    return -(ux - uy + uh)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def rb_via_generators(x: EventuallyPeriodicPath, y: EventuallyPeriodicPath) -> bool:
    """Extended equivalence through the generator presentation: tail
    equivalence, or tail equivalence of the two paths to the two sides of
    one extremal pair."""
    _same_diagram(x, y)
    if af_equiv(x, y):
        return True
    for mx, mn in x.diagram.pair_extremes().pairs:
        if af_equiv(x, mx) and af_equiv(y, mn):
            return True
        if af_equiv(y, mx) and af_equiv(x, mn):
            return True
    return False


def rb_base_translation(gamma: PathPrefix, gamma2: PathPrefix, h_index: int) -> AlgebraicNumber:
    """The translation a = u(gamma) - u(gamma') + u(h) attached to a base
    set of the extended relation; h must link the two range vertices at
    their common generation."""
    d = gamma.diagram
    if gamma.diagram is not gamma2.diagram:
        raise ParseError("prefixes live on different diagrams")
    if gamma.length != gamma2.length:
        raise IncompatibleHorizontal("prefixes must have equal length")
    h = d.horizontals[h_index]
    if h.src != gamma.top_vertex() or h.rng != gamma2.top_vertex():
        raise IncompatibleHorizontal(
            f"horizontal {d.vertices[h.src]}->{d.vertices[h.rng]} does not link "
            f"{d.vertices[gamma.top_vertex()]} to {d.vertices[gamma2.top_vertex()]}"
        )
    n = gamma.length
    return u_of_prefix(gamma) - u_of_prefix(gamma2) + h.coeff * d.lam ** (n - 1)


def rb_base_member(
    x: EventuallyPeriodicPath,
    y: EventuallyPeriodicPath,
    gamma: PathPrefix,
    gamma2: PathPrefix,
    h_index: int,
) -> bool:
    """Membership in the base set attached to (gamma, gamma2, h): x extends
    gamma, y extends gamma2, the pair is equivalent, and its cocycle matches
    the base translation (pairs in the set satisfy T_x = T_y + a_base, i.e.
    a(x, y) = -a_base)."""
    if x.prefix(gamma.length) != gamma or y.prefix(gamma2.length) != gamma2:
        return False
    witness = rb_equiv(x, y)
    if witness is None:
        return False
    a_base = rb_base_translation(gamma, gamma2, h_index)
    return (witness.translation + a_base).is_zero()


# -- path literals ------------------------------------------------------------------
#
#   root=a; ac ca ab            finite prefix
#   root=a; (ac ca)             purely periodic
#   root=a; ab | (bd db)        preamble plus
#   root=a; aa#0 (aa#1)         position disambiguator when multiplicity > 1


def parse_path(diagram: BratteliDiagram, text: str):
    s = text.strip()
    if not s.startswith("root"):
        raise ParseError("path literal must start with 'root=<vertex>;'")
    head, sep, rest = s.partition(";")
    if not sep:
        raise ParseError("path literal must contain ';' after the root")
    _, eq, rootname = head.partition("=")
    if not eq:
        raise ParseError("path literal must start with 'root=<vertex>;'")
    rootname = rootname.strip()
    if rootname not in diagram.vertices:
        raise ParseError(f"unknown root vertex {rootname!r}")
    root = diagram.vertices.index(rootname)
    rest = rest.replace("|", " ")
    pre_part, cycle_part = rest, ""
    if "(" in rest:
        if rest.count("(") != 1 or rest.count(")") != 1 or rest.index("(") > rest.index(")"):
            raise ParseError("path literal has unbalanced cycle parentheses")
        pre_part, after = rest.split("(", 1)
        cycle_part, trailing = after.split(")", 1)
        if trailing.strip():
            raise ParseError("unexpected text after the cycle")
    v = root
    pre_edges = []
    for tok in pre_part.split():
        e = _parse_edge_token(diagram, tok, v)
        pre_edges.append(e.index)
        v = e.rng
    if not cycle_part.strip():
        return PathPrefix(diagram, root, pre_edges)
    cyc_edges = []
    for tok in cycle_part.split():
        e = _parse_edge_token(diagram, tok, v)
        cyc_edges.append(e.index)
        v = e.rng
    return EventuallyPeriodicPath(diagram, root, pre_edges, cyc_edges)


def _parse_edge_token(diagram: BratteliDiagram, tok: str, expect_src: int) -> VerticalTemplate:
    pos = None
    name = tok
    if "#" in tok:
        name, _, idx = tok.partition("#")
        if not idx.isdigit():
            raise ParseError(f"bad position suffix in edge token {tok!r}")
        pos = int(idx)
    if ">" in name:
        srcname, _, rngname = name.partition(">")
        pair = [(srcname, rngname)]
    else:
        pair = [
            (name[:i], name[i:])
            for i in range(1, len(name))
            if name[:i] in diagram.vertices and name[i:] in diagram.vertices
        ]
        if len(pair) != 1:
            raise ParseError(f"cannot split edge token {tok!r} into two vertex names")
    srcname, rngname = pair[0]
    if srcname not in diagram.vertices or rngname not in diagram.vertices:
        raise ParseError(f"unknown vertex in edge token {tok!r}")
    src = diagram.vertices.index(srcname)
    rng = diagram.vertices.index(rngname)
    if src != expect_src:
        raise ParseError(
            f"edge token {tok!r} starts at {srcname}, expected {diagram.vertices[expect_src]}"
        )
    return diagram.vertical_by_ends(src, rng, pos)


def render_path(p) -> str:
    d = p.diagram
    root = d.vertices[p.root]
    if isinstance(p, PathPrefix):
        body = " ".join(d.edge_label(d.verticals[e]) for e in p.edges)
        return f"root={root};" + (f" {body}" if body else "")
    pre = " ".join(d.edge_label(d.verticals[e]) for e in p.pre)
    cyc = " ".join(d.edge_label(d.verticals[e]) for e in p.cycle)
    out = f"root={root};"
    if pre:
        out += f" {pre}"
    return out + f" ({cyc})"


def enumerate_paths(
    diagram: BratteliDiagram, pre_limit: int, cycle_limit: int
) -> list[EventuallyPeriodicPath]:
    """Every eventually periodic path with preamble length <= pre_limit and
    cycle length <= cycle_limit, deduplicated by normal form."""
    cycles_from: dict[int, list[list[int]]] = {v: [] for v in range(len(diagram.vertices))}

    def walk(start: int, v: int, edges: list[int]):
        for e in diagram.out_edges[v]:
            if e.rng == start:
                cycles_from[start].append(edges + [e.index])
            if len(edges) + 1 < cycle_limit:
                walk(start, e.rng, edges + [e.index])

    for v in range(len(diagram.vertices)):
        walk(v, v, [])

    seen: dict = {}
    out: list[EventuallyPeriodicPath] = []

    def extend(root: int, v: int, pre: list[int], depth: int):
        for cyc in cycles_from[v]:
            p = EventuallyPeriodicPath(diagram, root, pre, cyc)
            if p.key() not in seen:
                seen[p.key()] = True
                out.append(p)
        if depth == pre_limit:
            return
        for e in diagram.out_edges[v]:
            extend(root, e.rng, pre + [e.index], depth + 1)

    for root in range(len(diagram.vertices)):
        extend(root, root, [], 0)
    return out
