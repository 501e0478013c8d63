#!/usr/bin/env python3
"""
Coxeter - Coxeter Systems and the Artin Monoid Germ
Canonical reduced words, finite-type classification, the germ lift of W,
parabolic longest elements, α_I / ω_I and the elements v(α, I)
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .category_engine import Category, Morphism, RawPath
from .germ_core import ElementSpec, GermAutomorphism, GermSpec, GermTable, build_germ, germ_automorphism
from ..utils.error_handler import (
    InfiniteDifference,
    InfiniteWithoutBound,
    MalformedSpec,
    NotAnAutomorphism,
    NotSpherical,
    TooLarge,
)
from ..utils.logger import Logger

INFINITY = 0  # matrix entry for m(s, t) = ∞

Generator = int
Word = Tuple[Generator, ...]


@dataclass(frozen=True, order=True)
class WElement:
    """Element of W stored as its shortlex-minimal reduced word"""
    word: Word

    @property
    def length(self) -> int:
        return len(self.word)


class CoxeterSystem:
    """
    Coxeter matrix with generator labels

    Matrix entries: 1 on the diagonal, m ≥ 2 off it, INFINITY (0) for ∞.
    Element operations are memoized; the caches are transparent.
    """

    def __init__(self, matrix: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None,
                 name: str = ""):
        rank = len(matrix)
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        for i, row in enumerate(rows):
            if len(row) != rank:
                raise MalformedSpec("Coxeter matrix is not square", (i,))
            for j, m in enumerate(row):
                if rows[j][i] != m:
                    raise MalformedSpec("Coxeter matrix is not symmetric", (i, j))
                if i == j and m != 1:
                    raise MalformedSpec("Coxeter matrix diagonal must be 1", (i,))
                if i != j and m != INFINITY and m < 2:
                    raise MalformedSpec("off-diagonal Coxeter entries must be ≥ 2 or ∞", (i, j, m))
        self.matrix: Tuple[Tuple[int, ...], ...] = rows
        self.rank = rank
        self.labels: Tuple[str, ...] = tuple(labels) if labels else tuple(f"s{i + 1}" for i in range(rank))
        if len(self.labels) != rank or len(set(self.labels)) != rank:
            raise MalformedSpec("generator labels must be distinct, one per row", self.labels)
        self.name = name or f"rank {rank}"
        self._closures: Dict[Word, FrozenSet[Word]] = {}
        self._times: Dict[Tuple[Word, Generator], Word] = {}
        self._type_a = _is_type_a_chain(rows)

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.name})"

    def m(self, s: Generator, t: Generator) -> int:
        return self.matrix[s][t]

    def generator(self, label: str) -> Generator:
        try:
            return self.labels.index(label)
        except ValueError:
            raise MalformedSpec(f"unknown generator '{label}'", (label,)) from None

    def generators(self, labels: Iterable[str]) -> FrozenSet[Generator]:
        return frozenset(self.generator(label) for label in labels)

    def restrict(self, subset: Iterable[Generator]) -> "CoxeterSystem":
        chosen = sorted(subset)
        matrix = [[self.matrix[i][j] for j in chosen] for i in chosen]
        return CoxeterSystem(matrix, [self.labels[i] for i in chosen], f"{self.name}|{len(chosen)}")

    # === REDUCED WORDS ===

    def _closure(self, word: Word) -> FrozenSet[Word]:
        """All reduced words of the element represented by a reduced word (braid moves)"""
        cached = self._closures.get(word)
        if cached is not None:
            return cached
        seen = {word}
        queue = deque([word])
        while queue:
            current = queue.popleft()
            for i in range(len(current) - 1):
                s, t = current[i], current[i + 1]
                if s == t:
                    continue
                m = self.matrix[s][t]
                if m == INFINITY or i + m > len(current):
                    continue
                block = current[i:i + m]
                if all(block[k] == (s if k % 2 == 0 else t) for k in range(m)):
                    swapped = tuple(t if k % 2 == 0 else s for k in range(m))
                    moved = current[:i] + swapped + current[i + m:]
                    if moved not in seen:
                        seen.add(moved)
                        queue.append(moved)
        closure = frozenset(seen)
        for w in closure:
            self._closures[w] = closure
        return closure

    def _times_generator(self, word: Word, s: Generator) -> Word:
        key = (word, s)
        cached = self._times.get(key)
        if cached is not None:
            return cached
        if self._type_a:
            result = _perm_word(_perm_times(_word_perm(word, self.rank), s))
        else:
            closure = self._closure(word)
            shorter = [w[:-1] for w in closure if w and w[-1] == s]
            if shorter:
                result = min(self._closure(shorter[0]))
            else:
                result = min(self._closure(word + (s,)))
        self._times[key] = result
        return result

    # === GROUP OPERATIONS ===

    @property
    def identity(self) -> WElement:
        return WElement(())

    def gen(self, s: Generator) -> WElement:
        return WElement((s,))

    def element(self, word: Iterable[Generator]) -> WElement:
        """Element of an arbitrary (possibly non-reduced) word"""
        current: Word = ()
        for s in word:
            current = self._times_generator(current, s)
        return WElement(current)

    def element_from_labels(self, text: str) -> WElement:
        return self.element(self.generator(label) for label in text.split())

    def multiply(self, w1: WElement, w2: WElement) -> WElement:
        current = w1.word
        for s in w2.word:
            current = self._times_generator(current, s)
        return WElement(current)

    def inverse(self, w: WElement) -> WElement:
        return self.element(reversed(w.word))

    def length(self, w: WElement) -> int:
        return w.length

    def lengths_add(self, w1: WElement, w2: WElement) -> bool:
        return self.multiply(w1, w2).length == w1.length + w2.length

    def left_descents(self, w: WElement) -> FrozenSet[Generator]:
        return frozenset(s for s in range(self.rank)
                         if self.multiply(self.gen(s), w).length < w.length)

    def right_descents(self, w: WElement) -> FrozenSet[Generator]:
        return frozenset(s for s in range(self.rank)
                         if len(self._times_generator(w.word, s)) < w.length)

    def conjugate_subset(self, w: WElement, subset: Iterable[Generator]) -> Optional[FrozenSet[Generator]]:
        """w·J·w⁻¹ as a set of generators, None when some conjugate is not a generator"""
        inverse = self.inverse(w)
        image = set()
        for s in subset:
            conjugate = self.multiply(self.multiply(w, self.gen(s)), inverse)
            if conjugate.length != 1:
                return None
            image.add(conjugate.word[0])
        return frozenset(image)

    def label(self, w: WElement, separator: str = "") -> str:
        if not w.word:
            return "1"
        return separator.join(self.labels[s] for s in w.word)

    def format_subset(self, subset: Iterable[Generator]) -> str:
        return "{" + ",".join(self.labels[s] for s in sorted(subset)) + "}"

    # === ENUMERATION ===

    def elements(self, max_length: Optional[int] = None, guard: int = 100000) -> List[WElement]:
        """
        Elements of W by length, breadth first

        Raises:
            InfiniteWithoutBound: no length bound for an infinite group
            TooLarge: more than guard elements
        """
        if max_length is None and not is_finite(self):
            raise InfiniteWithoutBound(f"{self.name} is infinite; pass a length bound", (self.name,))
        seen: Set[Word] = {()}
        frontier: List[Word] = [()]
        result = [WElement(())]
        while frontier:
            extended = []
            for word in frontier:
                if max_length is not None and len(word) >= max_length:
                    continue
                for s in range(self.rank):
                    longer = self._times_generator(word, s)
                    if len(longer) > len(word) and longer not in seen:
                        seen.add(longer)
                        extended.append(longer)
            extended.sort()
            result.extend(WElement(w) for w in extended)
            if len(result) > guard:
                raise TooLarge(f"more than {guard} elements in {self.name}", (guard,))
            frontier = extended
        return result

    def parabolic_elements(self, subset: Iterable[Generator]) -> List[WElement]:
        chosen = sorted(subset)
        sub = self.restrict(chosen)
        return [self.element(chosen[s] for s in w.word) for w in sub.elements()]


# === TYPE A FAST PATH ===

def _is_type_a_chain(matrix: Tuple[Tuple[int, ...], ...]) -> bool:
    n = len(matrix)
    for i in range(n):
        for j in range(i + 1, n):
            expected = 3 if j == i + 1 else 2
            if matrix[i][j] != expected:
                return False
    return True


def _word_perm(word: Word, rank: int) -> Tuple[int, ...]:
    perm = list(range(rank + 1))
    for s in word:
        perm[s], perm[s + 1] = perm[s + 1], perm[s]
    return tuple(perm)


def _perm_times(perm: Tuple[int, ...], s: Generator) -> Tuple[int, ...]:
    swapped = list(perm)
    swapped[s], swapped[s + 1] = swapped[s + 1], swapped[s]
    return tuple(swapped)


def _perm_word(perm: Tuple[int, ...]) -> Word:
    """Shortlex-minimal reduced word: peel the smallest left descent"""
    values = list(perm)
    position = {v: i for i, v in enumerate(values)}
    word = []
    while True:
        for i in range(len(values) - 1):
            if position[i] > position[i + 1]:
                a, b = position[i], position[i + 1]
                values[a], values[b] = i + 1, i
                position[i], position[i + 1] = b, a
                word.append(i)
                break
        else:
            return tuple(word)


# === CLASSIFICATION ===

def _component_type(cox: CoxeterSystem, nodes: List[Generator]) -> Optional[str]:
    n = len(nodes)
    edges = [(a, b, cox.m(a, b)) for i, a in enumerate(nodes) for b in nodes[i + 1:] if cox.m(a, b) != 2]
    if any(m == INFINITY for _, _, m in edges):
        return None
    if n == 1:
        return "A1"
    if n == 2:
        m = edges[0][2]
        return {3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    if len(edges) != n - 1 or any(m > 5 for _, _, m in edges):
        return None

    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from((a, b, {"m": m}) for a, b, m in edges)
    heavy = [(a, b, m) for a, b, m in edges if m > 3]
    degrees = dict(graph.degree())
    branch = [v for v, d in degrees.items() if d >= 3]

    if not heavy:
        if not branch:
            return f"A{n}"
        if len(branch) != 1 or degrees[branch[0]] != 3:
            return None
        center = branch[0]
        arms = []
        for neighbour in graph.neighbors(center):
            arm_graph = graph.copy()
            arm_graph.remove_node(center)
            arms.append(len(nx.node_connected_component(arm_graph, neighbour)))
        arms.sort()
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return f"E{n}"
        return None

    if branch or len(heavy) != 1:
        return None
    a, b, m = heavy[0]
    at_end = degrees[a] == 1 or degrees[b] == 1
    if m == 4:
        if at_end:
            return f"B{n}"
        return "F4" if n == 4 else None
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return None


def cartan_type(cox: CoxeterSystem) -> Optional[Tuple[str, ...]]:
    """Finite types of the connected components, None when W is infinite"""
    graph = nx.Graph()
    graph.add_nodes_from(range(cox.rank))
    graph.add_edges_from((s, t) for s in range(cox.rank) for t in range(s + 1, cox.rank) if cox.m(s, t) != 2)
    types = []
    for component in sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]):
        kind = _component_type(cox, component)
        if kind is None:
            return None
        types.append(kind)
    return tuple(types)


def is_finite(cox: CoxeterSystem) -> bool:
    return cartan_type(cox) is not None


def is_spherical(cox: CoxeterSystem, subset: Iterable[Generator]) -> bool:
    chosen = sorted(subset)
    return not chosen or is_finite(cox.restrict(chosen))


# === PRESETS ===

PRESETS: Dict[str, Tuple[Tuple[Tuple[int, ...], ...], Tuple[str, ...]]] = {
    "A2": (((1, 3), (3, 1)), ("s1", "s2")),
    "A3": (((1, 3, 2), (3, 1, 3), (2, 3, 1)), ("s1", "s2", "s3")),
    "B3": (((1, 4, 2), (4, 1, 3), (2, 3, 1)), ("s1", "s2", "s3")),
    "A~1": (((1, INFINITY), (INFINITY, 1)), ("s", "t")),
}
PRESET_ALIASES = {"affine_A1": "A~1", "Ã1": "A~1"}


def coxeter_preset(name: str) -> CoxeterSystem:
    key = PRESET_ALIASES.get(name, name)
    if key not in PRESETS:
        raise MalformedSpec(f"unknown Coxeter preset '{name}' (known: {', '.join(PRESETS)})", (name,))
    matrix, labels = PRESETS[key]
    return CoxeterSystem(matrix, labels, key)


def parse_coxeter_matrix(text: str) -> CoxeterSystem:
    """Rows separated by ';', entries by ',', 'inf' for ∞: "1,3;3,1" """
    rows = []
    for row in text.split(";"):
        entries = []
        for entry in row.split(","):
            token = entry.strip().lower()
            if token in ("inf", "∞", "0"):
                entries.append(INFINITY)
            elif token.isdigit():
                entries.append(int(token))
            else:
                raise MalformedSpec(f"bad Coxeter matrix entry '{entry}'", (entry,))
        rows.append(entries)
    return CoxeterSystem(rows, name="matrix")


# === LIFT GERM ===

@dataclass
class CoxeterLift:
    """The germ lift of W (or of its length-truncated piece) with its element table"""
    cox: CoxeterSystem
    germ: GermTable
    elements: Tuple[WElement, ...]
    index: Dict[WElement, int]
    category: Category = field(init=False)

    def __post_init__(self):
        self.category = Category(self.germ)

    def element_id(self, w: WElement) -> int:
        try:
            return self.index[w]
        except KeyError:
            raise MalformedSpec(f"{self.cox.label(w)} is outside the lift carrier", (self.cox.label(w),)) from None

    def generator_id(self, s: Generator) -> int:
        return self.index[self.cox.gen(s)]

    def word_to_morphism(self, text: str) -> Morphism:
        """Artin monoid element of a word of generator labels ("s1 s2 s1")"""
        letters = tuple(self.generator_id(self.cox.generator(label)) for label in text.split())
        return self.category.normal_form(RawPath(0, letters))

    def w_of(self, e: int) -> WElement:
        return self.elements[e]

    def image(self, m: Morphism) -> WElement:
        """Image of an Artin monoid element in W"""
        result = self.cox.identity
        for f in m.factors:
            result = self.cox.multiply(result, self.elements[f])
        return result


def lift_germ(cox: CoxeterSystem, max_length: Optional[int] = None, guard: int = 100000) -> CoxeterLift:
    """
    Germ lift of W: product defined iff lengths add and the product stays in the carrier

    Raises:
        InfiniteWithoutBound: full lift of an infinite group
    """
    logger = Logger("Coxeter")
    start = logger.timing_start(f"lift_germ({cox.name})")
    elements = cox.elements(max_length, guard)
    index = {w: i for i, w in enumerate(elements)}

    labels = [cox.label(w) for w in elements]
    if len(set(labels)) != len(labels):
        labels = [cox.label(w, ".") for w in elements]

    truncated = False
    if max_length is not None:
        truncated = any(w.length == max_length and len(cox.right_descents(w)) < cox.rank for w in elements)

    products = []
    for w1 in elements:
        if not w1.word:
            continue
        for w2 in elements:
            if not w2.word:
                continue
            product = cox.multiply(w1, w2)
            if product.length == w1.length + w2.length and product in index:
                products.append((labels[index[w1]], labels[index[w2]], labels[index[product]]))

    spec = GermSpec(
        objects=["*"],
        elements=[ElementSpec(label, "*", "*", identity=(i == 0)) for i, label in enumerate(labels)],
        products=products,
    )
    germ = build_germ(spec, validate=False, truncated=truncated)
    logger.timing_end(f"lift_germ({cox.name})", start)
    if truncated:
        logger.info(f"{cox.name}: carrier truncated at length {max_length} ({len(elements)} elements)")
    return CoxeterLift(cox, germ, tuple(elements), index)


def lift_category(cox: CoxeterSystem, guard: int = 100000) -> Category:
    """Artin monoid of a finite W over its full lift; generator words go through ``parse``"""
    return lift_germ(cox, None, guard).category


def diagram_automorphism(lift: CoxeterLift, permutation: Sequence[Generator]) -> GermAutomorphism:
    """
    Germ automorphism of a lift induced by a Coxeter graph symmetry

    Raises:
        NotAnAutomorphism: the permutation does not preserve the matrix
    """
    cox = lift.cox
    if sorted(permutation) != list(range(cox.rank)):
        raise NotAnAutomorphism("not a permutation of the generators", tuple(permutation))
    for s in range(cox.rank):
        for t in range(cox.rank):
            if cox.m(permutation[s], permutation[t]) != cox.m(s, t):
                raise NotAnAutomorphism("permutation does not preserve the Coxeter matrix",
                                        (cox.labels[s], cox.labels[t]))
    element_map = [lift.index[cox.element(permutation[s] for s in w.word)] for w in lift.elements]
    return germ_automorphism(lift.germ, [0], element_map)


# === PARABOLIC TOOLS ===

def w_parabolic_longest(cox: CoxeterSystem, subset: Iterable[Generator]) -> WElement:
    """
    Longest element of W_I

    Raises:
        NotSpherical: W_I is infinite
    """
    chosen = sorted(subset)
    if not is_spherical(cox, chosen):
        raise NotSpherical(f"W_I is infinite for I = {cox.format_subset(chosen)}",
                           tuple(cox.labels[s] for s in chosen))
    w = cox.identity
    grown = True
    while grown:
        grown = False
        for s in chosen:
            longer = cox.multiply(w, cox.gen(s))
            if longer.length > w.length:
                w = longer
                grown = True
                break
    return w


def _sends_to_positive(cox: CoxeterSystem, w: WElement, s: Generator) -> bool:
    # w⁻¹(α_s) > 0 iff s·w is longer than w
    return cox.multiply(cox.gen(s), w).length > w.length


def is_I_reduced(cox: CoxeterSystem, subset: Iterable[Generator], w: WElement) -> bool:
    """No s ∈ I shortens w from the left, i.e. w⁻¹ keeps the simple roots of I positive"""
    return all(_sends_to_positive(cox, w, s) for s in subset)


@dataclass(frozen=True)
class RootSet:
    """Positive roots of W_I as reflections; positivity through lengths"""
    cox: CoxeterSystem
    subset: FrozenSet[Generator]
    reflections: FrozenSet[WElement]

    def __len__(self) -> int:
        return len(self.reflections)

    def sends_to_positive(self, w: WElement, s: Generator) -> bool:
        """Whether w⁻¹ maps the simple root of s to a positive root"""
        return _sends_to_positive(self.cox, w, s)

    def is_reduced(self, w: WElement) -> bool:
        return all(_sends_to_positive(self.cox, w, s) for s in self.subset)


def root_set(cox: CoxeterSystem, subset: Iterable[Generator]) -> RootSet:
    chosen = frozenset(subset)
    if not is_spherical(cox, chosen):
        raise NotSpherical(f"Φ_I is infinite for I = {cox.format_subset(chosen)}")
    reflections = set()
    for w in cox.parabolic_elements(chosen):
        inverse = cox.inverse(w)
        for s in chosen:
            reflections.add(cox.multiply(cox.multiply(w, cox.gen(s)), inverse))
    return RootSet(cox, chosen, frozenset(reflections))


def alpha_I(lift: CoxeterLift, subset: Iterable[Generator], b: Morphism) -> Tuple[Morphism, Morphism]:
    """
    Maximal left divisor of b in the submonoid generated by I, with its complement

    Returns:
        (α_I(b), ω_I(b))
    """
    category = lift.category
    germ = lift.germ
    generators = sorted(lift.generator_id(s) for s in subset)
    prefix = category.identity(b.source)
    rest = b
    while rest.factors:
        head = rest.factors[0]
        for g in generators:
            if germ.divides(g, head):
                prefix = category.multiply(prefix, category.element(g))
                rest = category.left_quotient(category.element(g), rest)
                break
        else:
            break
    return prefix, rest


def omega_I(lift: CoxeterLift, subset: Iterable[Generator], b: Morphism) -> Morphism:
    return alpha_I(lift, subset, b)[1]


def v_alpha_I(cox: CoxeterSystem, alpha: Generator, subset: Iterable[Generator]) -> Tuple[FrozenSet[Generator], WElement]:
    """
    v(α, I) = w_{I∪{α}}·w_I and J = v·I·v⁻¹

    Raises:
        InfiniteDifference: I ∪ {α} is not spherical
    """
    chosen = frozenset(subset)
    if alpha in chosen:
        raise MalformedSpec("α must not belong to I", (cox.labels[alpha],))
    extended = chosen | {alpha}
    if not is_spherical(cox, extended):
        raise InfiniteDifference(f"{cox.format_subset(extended)} is not spherical",
                                 tuple(cox.labels[s] for s in sorted(extended)))
    v = cox.multiply(w_parabolic_longest(cox, extended), w_parabolic_longest(cox, chosen))
    image = cox.conjugate_subset(v, chosen)
    if image is None or not image <= extended:
        raise InfiniteDifference("v(α, I) does not conjugate I into I ∪ {α}", (cox.label(v),))
    return image, v


def ribbon_chain_end(lift: CoxeterLift, subset: FrozenSet[Generator], m: Morphism) -> Optional[FrozenSet[Generator]]:
    """
    Follow the normal-form terms of m as ribbon steps starting at I

    Each term w must be I-reduced with w⁻¹·I·w a generator set; returns the
    final set or None when the chain breaks.
    """
    cox = lift.cox
    current = frozenset(subset)
    for f in m.factors:
        w = lift.w_of(f)
        if not is_I_reduced(cox, current, w):
            return None
        following = cox.conjugate_subset(cox.inverse(w), current)
        if following is None:
            return None
        current = following
    return current


def parabolic_conjugation_holds(lift: CoxeterLift, subset: Iterable[Generator], b: Morphism,
                                target: Iterable[Generator]) -> bool:
    """Whether ω_I(b) carries I to J through a chain of ribbon steps"""
    chosen = frozenset(subset)
    rest = omega_I(lift, chosen, b)
    return ribbon_chain_end(lift, chosen, rest) == frozenset(target)
