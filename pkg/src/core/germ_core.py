#!/usr/bin/env python3
"""
Germ Core - Finite Germs and Their Axioms
Partial-product presentations, divisibility inside the germ and the
locally Garside checks (G1-G4 and their atom-level variants)
"""

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from ..utils.error_handler import (
    FNotProductPreserving,
    GermAxiomViolation,
    MalformedSpec,
    NotAnAutomorphism,
    NotClosed,
)
from ..utils.logger import Logger

ObjectId = int
ElementId = int


@dataclass(frozen=True)
class GermElement:
    """One element of a germ; ids are interned indices, labels are display-only"""
    id: ElementId
    source: ObjectId
    target: ObjectId
    is_identity: bool
    label: str


@dataclass(frozen=True)
class ElementSpec:
    name: str
    source: str
    target: str
    identity: bool = False


@dataclass
class GermSpec:
    """Parsed germ description: names only, nothing validated yet"""
    objects: List[str]
    elements: List[ElementSpec]
    products: List[Tuple[str, str, str]]


class GermTable:
    """
    Immutable finite germ

    Features:
    - Sparse partial product keyed by (a, b) element pairs
    - Precomputed left divisors, right multiples and complements
    - Cached α₂ splits (pure, safe under concurrent reads)
    - Deterministic display order (minimal expression length, id)
    """

    def __init__(self, objects: Sequence[str], elements: Sequence[GermElement],
                 product: Mapping[Tuple[ElementId, ElementId], ElementId],
                 truncated: bool = False):
        self.objects: Tuple[str, ...] = tuple(objects)
        self.elements: Tuple[GermElement, ...] = tuple(elements)
        self.product: Dict[Tuple[ElementId, ElementId], ElementId] = dict(product)
        self.truncated = truncated

        identity_of: Dict[ObjectId, ElementId] = {}
        from_object: Dict[ObjectId, List[ElementId]] = {o: [] for o in range(len(self.objects))}
        for element in self.elements:
            if element.is_identity:
                identity_of[element.source] = element.id
            from_object[element.source].append(element.id)
        self.identity_of: Dict[ObjectId, ElementId] = identity_of
        self.from_object: Dict[ObjectId, Tuple[ElementId, ...]] = {
            o: tuple(ids) for o, ids in from_object.items()
        }
        self._by_label = {e.label: e.id for e in self.elements}
        self._object_by_name = {name: i for i, name in enumerate(self.objects)}

        left_divisors: Dict[ElementId, Set[ElementId]] = {e.id: set() for e in self.elements}
        right_multiples: Dict[ElementId, Set[ElementId]] = {e.id: set() for e in self.elements}
        complement: Dict[Tuple[ElementId, ElementId], ElementId] = {}
        self.complement_clashes: List[Tuple[ElementId, ElementId, ElementId]] = []
        for (a, b), c in sorted(self.product.items()):
            left_divisors[c].add(a)
            right_multiples[a].add(c)
            previous = complement.setdefault((a, c), b)
            if previous != b:
                self.complement_clashes.append((a, previous, b))
        self._left_divisors = {e: frozenset(s) for e, s in left_divisors.items()}
        self._right_multiples = {e: frozenset(s) for e, s in right_multiples.items()}
        self._complement = complement

        self._alpha2_cache: Dict[Tuple[ElementId, ElementId], Tuple[ElementId, ElementId]] = {}
        self._lengths: Optional[Dict[ElementId, int]] = None

    # === BASIC ACCESS ===

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"GermTable(objects={len(self.objects)}, elements={len(self.elements)})"

    def source(self, e: ElementId) -> ObjectId:
        return self.elements[e].source

    def target(self, e: ElementId) -> ObjectId:
        return self.elements[e].target

    def is_identity(self, e: ElementId) -> bool:
        return self.elements[e].is_identity

    def label(self, e: ElementId) -> str:
        return self.elements[e].label

    def object_name(self, o: ObjectId) -> str:
        return self.objects[o]

    def element(self, label: str) -> ElementId:
        """Look up an element id by label"""
        try:
            return self._by_label[label]
        except KeyError:
            raise MalformedSpec(f"unknown element name '{label}'", (label,)) from None

    def object(self, name: str) -> ObjectId:
        try:
            return self._object_by_name[name]
        except KeyError:
            raise MalformedSpec(f"unknown object name '{name}'", (name,)) from None

    def multiply(self, a: ElementId, b: ElementId) -> Optional[ElementId]:
        """Germ product, None when undefined"""
        return self.product.get((a, b))

    def non_identities(self) -> Tuple[ElementId, ...]:
        return tuple(e.id for e in self.elements if not e.is_identity)

    def labels(self, ids: Iterable[ElementId]) -> Tuple[str, ...]:
        return tuple(self.label(e) for e in ids)

    # === DIVISIBILITY INSIDE THE GERM ===

    def left_divisors(self, e: ElementId) -> FrozenSet[ElementId]:
        return self._left_divisors[e]

    def right_multiples(self, e: ElementId) -> FrozenSet[ElementId]:
        return self._right_multiples[e]

    def divides(self, f: ElementId, e: ElementId) -> bool:
        return f in self._left_divisors[e]

    def complement(self, f: ElementId, e: ElementId) -> Optional[ElementId]:
        """The g with f·g = e, None when f does not divide e"""
        return self._complement.get((f, e))

    def alpha2_split(self, x: ElementId, y: ElementId) -> Tuple[ElementId, ElementId]:
        """
        Split y = z·t with z the maximal left divisor of y such that x·z is defined

        Returns:
            (z, t)
        """
        key = (x, y)
        cached = self._alpha2_cache.get(key)
        if cached is not None:
            return cached

        candidates = [z for z in self._left_divisors[y] if (x, z) in self.product]
        best = None
        for z in candidates:
            if all(c in self._left_divisors[z] for c in candidates):
                best = z
                break
        if best is None:
            raise GermAxiomViolation(
                f"no maximal z ≼ {self.label(y)} with {self.label(x)}·z defined",
                self.labels(sorted(candidates)),
            )
        split = (best, self._complement[(best, y)])
        self._alpha2_cache[key] = split
        return split

    # === DISPLAY ORDER ===

    def atom_length(self, e: ElementId) -> int:
        """Minimal number of indecomposable factors of e (0 for identities)"""
        if self._lengths is None:
            self._lengths = _minimal_expression_lengths(self)
        return self._lengths[e]

    def sort_key(self, e: ElementId) -> Tuple[int, int]:
        return (self.atom_length(e), e)

    def sorted_ids(self, ids: Iterable[ElementId]) -> List[ElementId]:
        return sorted(ids, key=self.sort_key)


def _minimal_expression_lengths(germ: GermTable) -> Dict[ElementId, int]:
    cap = len(germ.elements) + 1
    lengths = {e.id: (0 if e.is_identity else cap) for e in germ.elements}
    splits: Dict[ElementId, List[Tuple[ElementId, ElementId]]] = {}
    for (a, b), c in germ.product.items():
        if germ.is_identity(a) or germ.is_identity(b):
            continue
        splits.setdefault(c, []).append((a, b))
    for e in germ.non_identities():
        if e not in splits:
            lengths[e] = 1

    changed = True
    while changed:
        changed = False
        for c, pairs in splits.items():
            best = min(lengths[a] + lengths[b] for a, b in pairs)
            if best < lengths[c]:
                lengths[c] = best
                changed = True
    return lengths


# === CONSTRUCTION ===

def build_germ(spec: GermSpec, validate: bool = True, truncated: bool = False) -> GermTable:
    """
    Build and validate a germ from its description

    Args:
        spec: objects, elements and non-identity product triples (names)
        validate: check germ associativity over all composable triples
        truncated: mark the carrier as a length-truncated piece of a larger germ

    Returns:
        GermTable

    Raises:
        MalformedSpec: dangling names, bad identities, source/target mismatch
        GermAxiomViolation: identity laws or germ associativity fail
    """
    object_ids: Dict[str, ObjectId] = {}
    for name in spec.objects:
        if name in object_ids:
            raise MalformedSpec(f"duplicate object '{name}'", (name,))
        object_ids[name] = len(object_ids)

    elements: List[GermElement] = []
    element_ids: Dict[str, ElementId] = {}
    identities: Dict[ObjectId, ElementId] = {}
    for item in spec.elements:
        if item.name in element_ids:
            raise MalformedSpec(f"duplicate element '{item.name}'", (item.name,))
        if item.source not in object_ids or item.target not in object_ids:
            raise MalformedSpec(f"element '{item.name}' refers to an unknown object",
                                (item.name, item.source, item.target))
        source, target = object_ids[item.source], object_ids[item.target]
        if item.identity:
            if source != target:
                raise MalformedSpec(f"identity '{item.name}' has source ≠ target", (item.name,))
            if source in identities:
                raise MalformedSpec(f"object '{item.source}' has two identities",
                                    (elements[identities[source]].label, item.name))
            identities[source] = len(elements)
        element_ids[item.name] = len(elements)
        elements.append(GermElement(len(elements), source, target, item.identity, item.name))

    for name, o in object_ids.items():
        if o not in identities:
            raise MalformedSpec(f"object '{name}' has no identity", (name,))

    product: Dict[Tuple[ElementId, ElementId], ElementId] = {}
    for element in elements:
        product[(identities[element.source], element.id)] = element.id
        product[(element.id, identities[element.target])] = element.id

    for triple in spec.products:
        if len(triple) != 3:
            raise MalformedSpec(f"product entry {list(triple)} is not a triple", tuple(triple))
        for name in triple:
            if name not in element_ids:
                raise MalformedSpec(f"product {list(triple)} names unknown element '{name}'",
                                    tuple(triple))
        a, b, c = (element_ids[name] for name in triple)
        ea, eb, ec = elements[a], elements[b], elements[c]
        if ea.target != eb.source:
            raise MalformedSpec(f"product {ea.label}·{eb.label}: target ≠ source", tuple(triple))
        if ec.source != ea.source or ec.target != eb.target:
            raise MalformedSpec(f"product {ea.label}·{eb.label}={ec.label}: wrong source/target",
                                tuple(triple))
        existing = product.get((a, b))
        if existing is not None and existing != c:
            kind = "identity law" if ea.is_identity or eb.is_identity else "product"
            raise GermAxiomViolation(f"{kind} clash on {ea.label}·{eb.label}",
                                     (ea.label, eb.label, elements[existing].label, ec.label))
        product[(a, b)] = c

    germ = GermTable(spec.objects, elements, product, truncated=truncated)
    if validate:
        witness = find_associativity_violation(germ)
        if witness is not None:
            raise GermAxiomViolation("germ associativity fails", germ.labels(witness))
    return germ


def find_associativity_violation(germ: GermTable) -> Optional[Tuple[ElementId, ElementId, ElementId]]:
    """
    Look for a triple where (ab)c and a(bc) disagree in definedness or value

    Returns:
        (a, b, c) or None
    """
    product = germ.product
    ending_at: Dict[ObjectId, List[ElementId]] = {}
    for element in germ.elements:
        ending_at.setdefault(element.target, []).append(element.id)

    for (a, b), ab in product.items():
        for c in germ.from_object[germ.target(b)]:
            left = product.get((ab, c))
            bc = product.get((b, c))
            right = product.get((a, bc)) if bc is not None else None
            if left != right:
                return (a, b, c)

    for (b, c), bc in product.items():
        for a in ending_at.get(germ.source(b), ()):
            right = product.get((a, bc))
            if right is not None and (a, b) not in product:
                return (a, b, c)
    return None


def opposite_germ(germ: GermTable) -> GermTable:
    """The germ with sources/targets swapped and products reversed"""
    elements = [GermElement(e.id, e.target, e.source, e.is_identity, e.label) for e in germ.elements]
    product = {(b, a): c for (a, b), c in germ.product.items()}
    return GermTable(germ.objects, elements, product, truncated=germ.truncated)


# === GERM-LEVEL LATTICE OPERATIONS ===

def germ_left_divisors(germ: GermTable, e: ElementId) -> FrozenSet[ElementId]:
    return germ.left_divisors(e)


def _minimal_elements(germ: GermTable, candidates: Iterable[ElementId]) -> List[ElementId]:
    pool = set(candidates)
    return germ.sorted_ids(m for m in pool
                           if not any(o != m and germ.divides(o, m) for o in pool))


def germ_lcm(germ: GermTable, e: ElementId, f: ElementId) -> Optional[ElementId]:
    """
    Right lcm of e and f inside the germ

    Returns:
        The lcm, or None when e and f have no common right multiple in the germ

    Raises:
        GermAxiomViolation: common multiples exist but none is least
    """
    if germ.source(e) != germ.source(f):
        return None
    common = germ.right_multiples(e) & germ.right_multiples(f)
    if not common:
        return None
    for m in germ.sorted_ids(common):
        if common <= germ.right_multiples(m):
            return m
    raise GermAxiomViolation(
        f"{germ.label(e)} and {germ.label(f)} have no least common multiple",
        (germ.label(e), germ.label(f)) + germ.labels(_minimal_elements(germ, common)),
    )


def germ_lcm_family(germ: GermTable, family: Iterable[ElementId]) -> Optional[ElementId]:
    members = list(family)
    current = members[0]
    for other in members[1:]:
        current = germ_lcm(germ, current, other)
        if current is None:
            return None
    return current


def germ_gcd(germ: GermTable, family: Iterable[ElementId]) -> ElementId:
    """Largest common left divisor of a family with a common source"""
    members = list(family)
    if not members:
        raise MalformedSpec("gcd of an empty family")
    if len({germ.source(e) for e in members}) != 1:
        raise MalformedSpec("gcd of elements with different sources", germ.labels(members))
    common = frozenset.intersection(*(germ.left_divisors(e) for e in members))
    for d in sorted(common, key=germ.sort_key, reverse=True):
        if common <= germ.left_divisors(d):
            return d
    raise GermAxiomViolation("no greatest common left divisor", germ.labels(members))


def germ_atoms(germ: GermTable) -> Tuple[ElementId, ...]:
    """Non-identity elements whose only left factors are 1 and themselves"""
    atoms = []
    for e in germ.non_identities():
        identity = germ.identity_of[germ.source(e)]
        if germ.left_divisors(e) <= {identity, e}:
            atoms.append(e)
    return tuple(germ.sorted_ids(atoms))


# === AXIOM CHECKS ===

class AxiomStatus(Enum):
    PASS = "pass"
    FAIL = "fail"
    UNCHECKED = "unchecked"
    ASSUMED = "assumed"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    status: AxiomStatus
    witness: Tuple[str, ...] = ()
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.status is AxiomStatus.FAIL


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded property check; a failure carries the offending tuple"""
    name: str
    passed: bool
    witness: Tuple[str, ...] = ()
    checked: int = 0
    note: str = ""


@dataclass
class AxiomReport:
    """Per-axiom verdicts; failures carry label witnesses"""
    verdicts: Dict[str, AxiomVerdict]
    g4_strategy: str
    warnings: List[str] = field(default_factory=list)

    AXIOMS = ("G1", "G2", "G3", "G4", "G2'", "G3'")

    @property
    def passed(self) -> bool:
        return not any(v.failed for v in self.verdicts.values())

    def __getitem__(self, axiom: str) -> AxiomVerdict:
        return self.verdicts[axiom]

    def rows(self) -> List[Dict[str, str]]:
        rows = []
        for axiom in self.AXIOMS:
            verdict = self.verdicts[axiom]
            rows.append({
                "axiom": axiom,
                "status": verdict.status.value,
                "witness": " ".join(verdict.witness),
                "note": verdict.note,
            })
        return rows


def check_noetherian(germ: GermTable) -> AxiomVerdict:
    """G1: proper left divisibility (e → e·g, g ≠ 1) has no cycle, loops included"""
    graph = nx.DiGraph()
    graph.add_nodes_from(e.id for e in germ.elements)
    for (a, b), c in germ.product.items():
        if not germ.is_identity(b):
            graph.add_edge(a, c)
    try:
        cycle = nx.find_cycle(graph)
    except nx.NetworkXNoCycle:
        return AxiomVerdict("G1", AxiomStatus.PASS)
    return AxiomVerdict("G1", AxiomStatus.FAIL, germ.labels(u for u, _ in cycle),
                        "divisibility cycle")


def _pairs(germ: GermTable, pool: Sequence[ElementId]) -> Iterable[Tuple[ElementId, ElementId]]:
    for e, f in combinations_with_replacement(pool, 2):
        if germ.source(e) == germ.source(f):
            yield e, f


def _check_lcms(germ: GermTable, name: str, pool: Sequence[ElementId]) -> AxiomVerdict:
    for e, f in _pairs(germ, pool):
        try:
            germ_lcm(germ, e, f)
        except GermAxiomViolation as violation:
            return AxiomVerdict(name, AxiomStatus.FAIL, violation.witness or (), "no least multiple")
    return AxiomVerdict(name, AxiomStatus.PASS)


def _check_lcm_extension(germ: GermTable, name: str, pool: Sequence[ElementId]) -> AxiomVerdict:
    ending_at: Dict[ObjectId, List[ElementId]] = {}
    for element in germ.elements:
        ending_at.setdefault(element.target, []).append(element.id)
    for u, v in _pairs(germ, pool):
        try:
            delta = germ_lcm(germ, u, v)
        except GermAxiomViolation:
            continue
        if delta is None:
            continue
        for x in ending_at.get(germ.source(u), ()):
            if (x, u) in germ.product and (x, v) in germ.product and (x, delta) not in germ.product:
                return AxiomVerdict(name, AxiomStatus.FAIL, germ.labels((x, u, v)),
                                    "x·u, x·v defined but x·lcm(u,v) is not")
    return AxiomVerdict(name, AxiomStatus.PASS)


PathKey = Tuple[ObjectId, Tuple[ElementId, ...]]


def raw_paths(germ: GermTable, max_len: int) -> List[PathKey]:
    """All (source, letters) paths of non-identity letters with at most max_len letters"""
    letters = {o: [e for e in ids if not germ.is_identity(e)] for o, ids in germ.from_object.items()}
    paths: List[PathKey] = []
    for start in range(len(germ.objects)):
        frontier: List[Tuple[ElementId, ...]] = [()]
        paths.append((start, ()))
        for _ in range(max_len):
            extended = []
            for word in frontier:
                end = germ.target(word[-1]) if word else start
                for letter in letters[end]:
                    extended.append(word + (letter,))
            paths.extend((start, word) for word in extended)
            frontier = extended
    return paths


class ContractionClasses:
    """
    Union-find over raw paths merged along single contractions x·y → (xy)

    Only paths up to the given length take part, so two paths share a class
    when a chain of contractions and expansions inside that length links them.
    """

    def __init__(self, germ: GermTable, max_len: int):
        self.germ = germ
        self.max_len = max_len
        self.paths = raw_paths(germ, max_len)
        self._parent: Dict[PathKey, PathKey] = {}
        for start, word in self.paths:
            for i in range(len(word) - 1):
                c = germ.product.get((word[i], word[i + 1]))
                if c is None:
                    continue
                middle = () if germ.is_identity(c) else (c,)
                self._union((start, word), (start, word[:i] + middle + word[i + 2:]))

    def find(self, node: PathKey) -> PathKey:
        parent = self._parent
        root = node
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(node, node) != root:
            parent[node], node = root, parent[node]
        return root

    def _union(self, p: PathKey, q: PathKey) -> None:
        rp, rq = self.find(p), self.find(q)
        if rp != rq:
            self._parent[max(rp, rq)] = min(rp, rq)

    def classes(self) -> Dict[PathKey, List[PathKey]]:
        grouped: Dict[PathKey, List[PathKey]] = {}
        for path in self.paths:
            grouped.setdefault(self.find(path), []).append(path)
        return grouped


def search_cancellation_violation(germ: GermTable, max_len: int) -> Optional[Tuple[Tuple[ElementId, ...], ElementId, ElementId]]:
    """
    Bounded falsification search for G4

    Raw paths of length ≤ max_len + 1 are merged along single contractions;
    a violation is z, x ≠ y with z·x and z·y in the same class.

    Returns:
        (z letters, x, y) or None
    """
    classes = ContractionClasses(germ, max_len + 1)
    for start, z in classes.paths:
        if len(z) > max_len:
            continue
        end = germ.target(z[-1]) if z else start
        seen: Dict[PathKey, ElementId] = {}
        for x in germ.from_object[end]:
            key = classes.find((start, z if germ.is_identity(x) else z + (x,)))
            if key in seen:
                return (z, seen[key], x)
            seen[key] = x
    return None


def check_locally_garside(germ: GermTable, g4_strategy: str = "assume", search_length: int = 4,
                          g4_note: str = "") -> AxiomReport:
    """
    Verify G1-G4 and the atom-level G2'/G3' on a finite germ

    Args:
        germ: The germ to check
        g4_strategy: "assume" or "search" (bounded falsification)
        search_length: longest prefix z tried by the search
        g4_note: explanation recorded with an assumed G4 (e.g. inherited by embedding)

    Returns:
        AxiomReport (failures are verdicts, never exceptions)
    """
    logger = Logger("GermCore")
    start = logger.timing_start("check_locally_garside")
    verdicts: Dict[str, AxiomVerdict] = {}
    warnings: List[str] = []

    verdicts["G1"] = check_noetherian(germ)
    pool = [e.id for e in germ.elements]
    verdicts["G2"] = _check_lcms(germ, "G2", pool)
    verdicts["G3"] = _check_lcm_extension(germ, "G3", pool)

    atoms = list(germ_atoms(germ))
    verdicts["G2'"] = _check_lcms(germ, "G2'", atoms)
    verdicts["G3'"] = _check_lcm_extension(germ, "G3'", atoms)

    if g4_strategy == "search":
        found = search_cancellation_violation(germ, search_length)
        if found is None:
            verdicts["G4"] = AxiomVerdict("G4", AxiomStatus.PASS, (),
                                          f"bounded search, |z| ≤ {search_length}")
        else:
            z, x, y = found
            verdicts["G4"] = AxiomVerdict("G4", AxiomStatus.FAIL,
                                          germ.labels(z) + ("|",) + germ.labels((x, y)),
                                          "z·x ~ z·y with x ≠ y")
    else:
        verdicts["G4"] = AxiomVerdict("G4", AxiomStatus.ASSUMED, (), g4_note or "assumed")
        warnings.append(f"G4 assumed{': ' + g4_note if g4_note else ''}")

    if germ.truncated:
        warnings.append("carrier is length-truncated: G2/G3 verdicts hold for the carrier only")

    simplification = right_simplification_witness(germ)
    if simplification is not None:
        x, y = germ.labels(simplification)
        warnings.append(f"{x}·{y} = {y} with {x} ≠ 1: not right simplifiable")

    for name, verdict in verdicts.items():
        logger.verdict(name, None if verdict.status is AxiomStatus.ASSUMED else not verdict.failed,
                       " ".join(verdict.witness))
    logger.timing_end("check_locally_garside", start)
    report = AxiomReport(verdicts, g4_strategy, warnings)
    logger.axiom_report(report.rows())
    return report


def right_simplification_witness(germ: GermTable) -> Optional[Tuple[ElementId, ElementId]]:
    """A pair (x ≠ 1, y) with x·y = y, None when there is none"""
    for (x, y), c in germ.product.items():
        if c == y and not germ.is_identity(x):
            return (x, y)
    return None


# === SUBGERMS ===

@dataclass
class SubgermResult:
    """A subgerm with its embedding into the ambient germ and stability flags"""
    germ: GermTable
    embedding: Tuple[ElementId, ...]
    object_embedding: Tuple[ObjectId, ...]
    stable_by_complement: bool
    stable_by_lcm: bool
    stable_by_alpha2: bool
    stable_by_left_factors: bool

    def ambient(self, e: ElementId) -> ElementId:
        return self.embedding[e]

    def local(self, ambient_id: ElementId) -> ElementId:
        return self.embedding.index(ambient_id)

    @property
    def flags(self) -> Dict[str, bool]:
        return {
            "stable_by_complement": self.stable_by_complement,
            "stable_by_lcm": self.stable_by_lcm,
            "stable_by_alpha2": self.stable_by_alpha2,
            "stable_by_left_factors": self.stable_by_left_factors,
        }


def subgerm(germ: GermTable, objects: Iterable[ObjectId], elements: Iterable[ElementId]) -> SubgermResult:
    """
    Restrict a germ to a subset closed under the partial product

    Raises:
        NotClosed: a product of chosen elements escapes the subset
        MalformedSpec: a chosen element leaves the chosen objects or an identity is missing
    """
    object_list = sorted(set(objects))
    chosen = sorted(set(elements))
    chosen_set = set(chosen)
    object_set = set(object_list)

    for o in object_list:
        if germ.identity_of[o] not in chosen_set:
            raise MalformedSpec(f"identity of '{germ.object_name(o)}' missing from subset",
                                (germ.object_name(o),))
    for e in chosen:
        if germ.source(e) not in object_set or germ.target(e) not in object_set:
            raise MalformedSpec(f"'{germ.label(e)}' leaves the chosen objects", (germ.label(e),))
    for (a, b), c in germ.product.items():
        if a in chosen_set and b in chosen_set and c not in chosen_set:
            raise NotClosed(f"{germ.label(a)}·{germ.label(b)} = {germ.label(c)} escapes the subset",
                            germ.labels((a, b, c)))

    local_object = {o: i for i, o in enumerate(object_list)}
    local_element = {e: i for i, e in enumerate(chosen)}
    sub_elements = [
        GermElement(i, local_object[germ.source(e)], local_object[germ.target(e)],
                    germ.is_identity(e), germ.label(e))
        for i, e in enumerate(chosen)
    ]
    sub_product = {
        (local_element[a], local_element[b]): local_element[c]
        for (a, b), c in germ.product.items()
        if a in chosen_set and b in chosen_set
    }
    table = GermTable([germ.object_name(o) for o in object_list], sub_elements, sub_product,
                      truncated=germ.truncated)

    by_complement = all(
        germ.complement(x, y) in chosen_set
        for y in chosen for x in germ.left_divisors(y) if x in chosen_set
    )
    by_left_factors = all(germ.left_divisors(y) <= chosen_set for y in chosen)

    by_lcm = True
    for x, y in _pairs(germ, chosen):
        if not (germ.right_multiples(x) & germ.right_multiples(y) & chosen_set):
            continue
        try:
            lcm = germ_lcm(germ, x, y)
        except GermAxiomViolation:
            lcm = None
        if lcm not in chosen_set:
            by_lcm = False
            break

    by_alpha2 = True
    for x in chosen:
        for y in chosen:
            if germ.target(x) != germ.source(y):
                continue
            try:
                z, _ = germ.alpha2_split(x, y)
            except GermAxiomViolation:
                by_alpha2 = False
                break
            if germ.product[(x, z)] not in chosen_set:
                by_alpha2 = False
                break
        if not by_alpha2:
            break

    return SubgermResult(table, tuple(chosen), tuple(object_list),
                         by_complement, by_lcm, by_alpha2, by_left_factors)


# === MAPS BETWEEN GERMS ===

@dataclass(frozen=True)
class GermAutomorphism:
    object_map: Tuple[ObjectId, ...]
    element_map: Tuple[ElementId, ...]

    def __call__(self, e: ElementId) -> ElementId:
        return self.element_map[e]


@dataclass(frozen=True)
class GermEndomap:
    """A product-preserving germ endomap F (used by the Pₙ(F) construction)"""
    object_map: Tuple[ObjectId, ...]
    element_map: Tuple[ElementId, ...]
    preserves_lcm: bool

    def __call__(self, e: ElementId) -> ElementId:
        return self.element_map[e]


def _map_witness(germ: GermTable, object_map: Sequence[ObjectId],
                 element_map: Sequence[ElementId], both_ways: bool) -> Optional[Tuple[str, ...]]:
    if len(object_map) != len(germ.objects) or len(element_map) != len(germ.elements):
        return ("incomplete map",)
    for element in germ.elements:
        image = element_map[element.id]
        if germ.source(image) != object_map[element.source] or germ.target(image) != object_map[element.target]:
            return (element.label, germ.label(image))
        if element.is_identity and not germ.is_identity(image):
            return (element.label, germ.label(image))
    for (a, b), c in germ.product.items():
        if germ.product.get((element_map[a], element_map[b])) != element_map[c]:
            return (germ.label(a), germ.label(b))
    if both_ways:
        inverse = {image: e for e, image in enumerate(element_map)}
        for (a, b) in germ.product:
            pre_a, pre_b = inverse[a], inverse[b]
            if (pre_a, pre_b) not in germ.product:
                return (germ.label(pre_a), germ.label(pre_b))
    return None


def germ_automorphism(germ: GermTable, object_map: Sequence[ObjectId],
                      element_map: Sequence[ElementId]) -> GermAutomorphism:
    """
    Validate a candidate automorphism σ

    Raises:
        NotAnAutomorphism: not bijective or not compatible with the product table
    """
    if sorted(object_map) != list(range(len(germ.objects))) or \
            sorted(element_map) != list(range(len(germ.elements))):
        raise NotAnAutomorphism("map is not a bijection", ("not bijective",))
    witness = _map_witness(germ, object_map, element_map, both_ways=True)
    if witness is not None:
        raise NotAnAutomorphism("map does not commute with the product table", witness)
    return GermAutomorphism(tuple(object_map), tuple(element_map))


def germ_endomap(germ: GermTable, object_map: Sequence[ObjectId],
                 element_map: Sequence[ElementId]) -> GermEndomap:
    """
    Validate a product-preserving endomap and record whether it preserves right lcms

    Raises:
        FNotProductPreserving: F(a)F(b) ≠ F(ab) for some defined product
    """
    witness = _map_witness(germ, object_map, element_map, both_ways=False)
    if witness is not None:
        raise FNotProductPreserving("endomap does not preserve products", witness)
    preserves = True
    for e, f in _pairs(germ, [x.id for x in germ.elements]):
        try:
            lcm = germ_lcm(germ, e, f)
            image_lcm = germ_lcm(germ, element_map[e], element_map[f])
        except GermAxiomViolation:
            preserves = False
            break
        if lcm is not None and image_lcm != element_map[lcm]:
            preserves = False
            break
    return GermEndomap(tuple(object_map), tuple(element_map), preserves)


def identity_automorphism(germ: GermTable) -> GermAutomorphism:
    return GermAutomorphism(tuple(range(len(germ.objects))), tuple(range(len(germ.elements))))


def fixed_subgerm(germ: GermTable, sigma: GermAutomorphism) -> SubgermResult:
    """The subgerm of σ-fixed objects and elements"""
    objects = [o for o in range(len(germ.objects)) if sigma.object_map[o] == o]
    elements = [e.id for e in germ.elements if sigma(e.id) == e.id]
    return subgerm(germ, objects, elements)
