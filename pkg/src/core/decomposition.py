#!/usr/bin/env python3
"""
Decomposition - Path Germs and Decomposition Posets
Builds the germs Pₙ, Pₙ(Id) and Pₙ(F) of length-n paths with grid
morphisms, the padded category P•(Id), and the decomposition posets E(g)
with their simple-connectedness evidence (connectivity, H₁, Tietze)
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

try:
    from tqdm import tqdm
    _TQDM_AVAILABLE = True
except ImportError:
    _TQDM_AVAILABLE = False

from .category_engine import Category, Morphism
from .germ_core import (
    AxiomStatus,
    ElementId,
    GermElement,
    GermEndomap,
    GermTable,
    check_locally_garside,
    opposite_germ,
)
from ..utils.error_handler import (
    BaseNotTwoSided,
    GermAxiomViolation,
    MalformedSpec,
    NoMorphism,
    TooLarge,
)
from ..utils.logger import Logger

VARIANTS = ("full", "id", "F")

Word = List[Tuple[int, int]]


# === PATH OBJECTS AND GRIDS ===

@dataclass(frozen=True)
class PathObject:
    """A composable sequence (a₁, …, aₙ) of germ elements, identities allowed"""
    entries: Tuple[ElementId, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def padded(self, germ: GermTable, k: int) -> "PathObject":
        """a^[k]: k identities appended at the end"""
        end = germ.target(self.entries[-1])
        return PathObject(self.entries + (germ.identity_of[end],) * k)

    def name(self, germ: GermTable) -> str:
        return "(" + ",".join(germ.labels(self.entries)) + ")"


@dataclass(frozen=True)
class GridMorphism:
    """
    Columns f₁…fₙ₊₁ over a source path

    a_i = f_i·f'_i and b_i = f'_i·f_{i+1}; the target is (b₁, …, bₙ).
    """
    source: PathObject
    columns: Tuple[ElementId, ...]
    target: PathObject


def grid_from_columns(germ: GermTable, source: PathObject,
                      columns: Sequence[ElementId]) -> Optional[GridMorphism]:
    """The grid with these columns, None when some f_i ∤ a_i or some b_i leaves the germ"""
    columns = tuple(columns)
    if len(columns) != len(source) + 1:
        return None
    targets = []
    for i, a in enumerate(source.entries):
        rest = germ.complement(columns[i], a)
        if rest is None:
            return None
        b = germ.multiply(rest, columns[i + 1])
        if b is None:
            return None
        targets.append(b)
    return GridMorphism(source, columns, PathObject(tuple(targets)))


def _paths(germ: GermTable, n: int) -> Iterator[Tuple[ElementId, ...]]:
    def extend(prefix: Tuple[ElementId, ...]) -> Iterator[Tuple[ElementId, ...]]:
        if len(prefix) == n:
            yield prefix
            return
        candidates = range(len(germ)) if not prefix else germ.from_object[germ.target(prefix[-1])]
        for e in candidates:
            yield from extend(prefix + (e,))
    yield from extend(())


@dataclass
class PnGerm:
    """The germ of length-n paths over a base germ, with the grid behind every element"""
    base: GermTable
    n: int
    variant: str
    objects: Tuple[PathObject, ...]
    grids: Tuple[GridMorphism, ...]
    germ: GermTable
    base_category: Category
    endomap: Optional[GermEndomap] = None
    index: Dict[Tuple[PathObject, Tuple[ElementId, ...]], ElementId] = field(default_factory=dict)
    object_index: Dict[PathObject, int] = field(default_factory=dict)
    _category: Optional[Category] = None
    _two_sided: Optional[bool] = None

    @property
    def category(self) -> Category:
        if self._category is None:
            self._category = Category(self.germ)
        return self._category

    @property
    def two_sided(self) -> bool:
        """Whether the base passes G1-G3 on the opposite side as well"""
        if self._two_sided is None:
            report = check_locally_garside(opposite_germ(self.base), "assume")
            self._two_sided = all(report[a].status is not AxiomStatus.FAIL for a in ("G1", "G2", "G3"))
        return self._two_sided

    def object_id(self, path: PathObject) -> int:
        try:
            return self.object_index[path]
        except KeyError:
            raise MalformedSpec("not an object of the path germ", (path.name(self.base),)) from None

    def element_id(self, grid: GridMorphism) -> ElementId:
        try:
            return self.index[(grid.source, grid.columns)]
        except KeyError:
            raise MalformedSpec("grid is not an element of the path germ",
                                (grid.source.name(self.base),) + self.base.labels(grid.columns)) from None

    def morphism(self, grids: Sequence[GridMorphism], source: Optional[PathObject] = None) -> Morphism:
        """Product in C(Pₙ) of a sequence of grid elements"""
        if not grids:
            if source is None:
                raise MalformedSpec("empty grid sequence needs a source")
            return self.category.identity(self.object_id(source))
        category = self.category
        return category.product([category.element(self.element_id(g)) for g in grids])


def build_Pn_germ(base: GermTable, n: int, variant: str = "full",
                  endomap: Optional[GermEndomap] = None,
                  base_category: Optional[Category] = None) -> PnGerm:
    """
    Germ whose objects are the length-n paths and whose elements are the grids

    (f·g)_i = f_i·g_i is defined when f_i·g_i ≼ a_i for i ≤ n and
    f_{n+1}·g_{n+1} is in the base germ.

    Args:
        base: A locally Garside germ
        n: Path length (≥ 1)
        variant: "full", "id" (f₁ = f_{n+1} = 1) or "F" (f_{n+1} = F(f₁))
        endomap: The product-preserving F of the "F" variant

    Raises:
        MalformedSpec: bad n, unknown variant or missing endomap
        GermAxiomViolation: a grid product falls outside the germ
    """
    logger = Logger("Decomposition")
    if n < 1:
        raise MalformedSpec(f"path length must be at least 1, got {n}")
    if variant not in VARIANTS:
        raise MalformedSpec(f"unknown path germ variant '{variant}'", (variant,))
    if variant == "F":
        if endomap is None:
            raise MalformedSpec("the F variant needs a germ endomap")
        if not endomap.preserves_lcm:
            logger.warning("F does not preserve right lcms: C(Pₙ(F)) need not be left Garside")
    start = logger.timing_start(f"build_Pn_germ(n={n}, {variant})")

    objects: List[PathObject] = []
    for entries in _paths(base, n):
        if variant == "F" and base.target(entries[-1]) != endomap.object_map[base.source(entries[0])]:
            continue
        objects.append(PathObject(entries))
    object_ids = {path: i for i, path in enumerate(objects)}

    grids: List[GridMorphism] = []
    by_source: Dict[PathObject, List[ElementId]] = {path: [] for path in objects}
    index: Dict[Tuple[PathObject, Tuple[ElementId, ...]], ElementId] = {}
    for path in objects:
        end = base.target(path.entries[-1])
        inner = [sorted(base.left_divisors(a), key=base.sort_key) for a in path.entries]
        for choice in cartesian(*inner):
            if variant == "id":
                if not base.is_identity(choice[0]):
                    continue
                lasts = [base.identity_of[end]]
            elif variant == "F":
                lasts = [endomap(choice[0])]
            else:
                lasts = list(base.from_object[end])
            for last in lasts:
                grid = grid_from_columns(base, path, choice + (last,))
                if grid is None or grid.target not in object_ids:
                    continue
                index[(path, grid.columns)] = len(grids)
                by_source[path].append(len(grids))
                grids.append(grid)

    elements = []
    for i, grid in enumerate(grids):
        label = grid.source.name(base) + ":" + "|".join(base.labels(grid.columns))
        identity = all(base.is_identity(f) for f in grid.columns)
        elements.append(GermElement(i, object_ids[grid.source], object_ids[grid.target], identity, label))

    products: Dict[Tuple[ElementId, ElementId], ElementId] = {}
    for i, f in enumerate(grids):
        for j in by_source[f.target]:
            g = grids[j]
            columns = []
            for k, (x, y) in enumerate(zip(f.columns, g.columns)):
                xy = base.multiply(x, y)
                if xy is None or (k < n and not base.divides(xy, f.source.entries[k])):
                    break
                columns.append(xy)
            else:
                key = (f.source, tuple(columns))
                if key not in index or grids[index[key]].target != g.target:
                    raise GermAxiomViolation("grid product leaves the path germ",
                                             (elements[i].label, elements[j].label))
                products[(i, j)] = index[key]

    germ = GermTable([path.name(base) for path in objects], elements, products)
    logger.timing_end(f"build_Pn_germ(n={n}, {variant})", start)
    logger.debug(f"P{n}({variant}): {len(objects)} objects, {len(grids)} elements")
    return PnGerm(base, n, variant, tuple(objects), tuple(grids), germ,
                  base_category or Category(base), endomap, index, object_ids)


# === COLUMN CALCULUS ===

def morphism_columns(pn: PnGerm, m: Morphism) -> Tuple[Morphism, ...]:
    """Column products (f₁, …, fₙ₊₁) of a C(Pₙ) morphism as base morphisms"""
    base = pn.base_category
    source = pn.objects[m.source]
    starts = [pn.base.source(a) for a in source.entries] + [pn.base.target(source.entries[-1])]
    columns = [base.identity(obj) for obj in starts]
    for f in m.factors:
        grid = pn.grids[f]
        columns = [base.multiply(c, base.element(e)) for c, e in zip(columns, grid.columns)]
    return tuple(columns)


def grid_quotient_columns(pn: PnGerm, f: Morphism, g: Morphism) -> Optional[Tuple[Morphism, ...]]:
    """Columns h_i with f_i·h_i = g_i, or None when some f_i ∤ g_i"""
    if f.source != g.source:
        return None
    base = pn.base_category
    quotients = []
    for fi, gi in zip(morphism_columns(pn, f), morphism_columns(pn, g)):
        if not base.divides_left(fi, gi):
            return None
        quotients.append(base.left_quotient(fi, gi))
    return tuple(quotients)


def grid_divides(pn: PnGerm, f: Morphism, g: Morphism) -> bool:
    """Left divisibility in C(Pₙ), decided column by column"""
    return grid_quotient_columns(pn, f, g) is not None


def _head_columns(base: Category, source: PathObject, columns: Sequence[Morphism],
                  endomap: Optional[GermEndomap] = None) -> Tuple[ElementId, ...]:
    heads = [base.alpha(base.gcd([c, base.element(s)])) for c, s in zip(columns, source.entries)]
    if endomap is not None:
        heads.append(endomap(heads[0]))
    else:
        heads.append(base.alpha(columns[-1]))
    return tuple(heads)


def grid_alpha(pn: PnGerm, m: Morphism) -> GridMorphism:
    """
    Head of a C(Pₙ) morphism from its columns

    α_i = gcd(f_i, s_i) for i ≤ n, with s the source path; the last column
    is α(f_{n+1}), or F(α₁) for the F variant.

    Raises:
        BaseNotTwoSided: the base germ is not locally Garside on the right
    """
    if not pn.two_sided:
        raise BaseNotTwoSided("the grid head formula needs a base germ that is locally Garside on both sides")
    source = pn.objects[m.source]
    endomap = pn.endomap if pn.variant == "F" else None
    heads = _head_columns(pn.base_category, source, morphism_columns(pn, m), endomap)
    key = (source, heads)
    if key not in pn.index:
        raise GermAxiomViolation("head columns do not form a grid element",
                                 (source.name(pn.base),) + pn.base.labels(heads))
    return pn.grids[pn.index[key]]


# === Pₙ(Id) AND P•(Id) ===

def nf_object(base: Category, path: PathObject) -> PathObject:
    """Normal form of a₁⋯aₙ padded with identities to length n"""
    germ = base.germ
    m = base.product([base.element(e) for e in path.entries])
    padding = (germ.identity_of[m.target],) * (len(path) - m.nu)
    return PathObject(m.factors + padding)


def decide_grid_morphism(base: Category, a: PathObject, b: PathObject) -> Optional[Tuple[GridMorphism, ...]]:
    """
    The C(Pₙ(Id)) morphism a → b as a sequence of grid elements, or None

    The columns are forced by X₁ = 1 and a_i·X_{i+1} = X_i·b_i; they are then
    peeled by the gcds with the current entries.
    """
    germ = base.germ
    if len(a) != len(b) or not len(a):
        return None
    columns = [base.identity(germ.source(a.entries[0]))]
    for x, y in zip(a.entries, b.entries):
        current = columns[-1]
        if current.target != germ.source(y):
            return None
        target = base.multiply(current, base.element(y))
        top = base.element(x)
        if not base.divides_left(top, target):
            return None
        columns.append(base.left_quotient(top, target))
    if not columns[-1].is_identity:
        return None

    steps: List[GridMorphism] = []
    source = a
    while not all(c.is_identity for c in columns):
        heads = _head_columns(base, source, columns)
        if all(germ.is_identity(h) for h in heads):
            return None
        grid = grid_from_columns(germ, source, heads)
        if grid is None:
            return None
        steps.append(grid)
        columns = [base.left_quotient(base.element(h), c) for h, c in zip(heads, columns)]
        source = grid.target
    if source != b:
        return None
    return tuple(steps)


def unique_morphism_to_nf(base: Category, path: PathObject) -> Tuple[GridMorphism, ...]:
    """
    The morphism a → fn(a) of C(Pₙ(Id)) as grid elements

    Raises:
        GermAxiomViolation: no such morphism (the base is not locally Garside)
    """
    steps = decide_grid_morphism(base, path, nf_object(base, path))
    if steps is None:
        raise GermAxiomViolation("no morphism to the normal-form object", base.germ.labels(path.entries))
    return steps


@dataclass(frozen=True)
class PBulletMorphism:
    """P•(Id) morphism normalized as padding first, then degree-0 grid steps"""
    source: PathObject
    padding: int
    steps: Tuple[GridMorphism, ...]
    target: PathObject


def _pad_grid(germ: GermTable, grid: GridMorphism, k: int) -> GridMorphism:
    end = germ.target(grid.target.entries[-1])
    return GridMorphism(grid.source.padded(germ, k),
                        grid.columns + (germ.identity_of[end],) * k,
                        grid.target.padded(germ, k))


def pbullet_unique_morphism(base: Category, a: PathObject, b: PathObject) -> PBulletMorphism:
    """
    The only P•(Id) morphism a → b

    Raises:
        NoMorphism: b is shorter than a, the products differ, or no degree-0 map reaches b
    """
    germ = base.germ
    k = len(b) - len(a)
    if k < 0:
        raise NoMorphism(f"target degree {len(b)} is below source degree {len(a)}",
                         (a.name(germ), b.name(germ)))
    left = base.product([base.element(e) for e in a.entries])
    right = base.product([base.element(e) for e in b.entries])
    if left != right:
        raise NoMorphism(f"products differ: {base.format(left)} ≠ {base.format(right)}",
                         (a.name(germ), b.name(germ)))
    steps = decide_grid_morphism(base, a.padded(germ, k), b)
    if steps is None:
        raise NoMorphism("no degree-0 morphism reaches the target", (a.name(germ), b.name(germ)))
    return PBulletMorphism(a, k, steps, b)


def pbullet_compose(base: Category, first: PBulletMorphism, second: PBulletMorphism) -> PBulletMorphism:
    """Composite pushed to normal form with f·i = i·f^[k]"""
    if first.target != second.source:
        raise MalformedSpec("P• morphisms are not composable")
    germ = base.germ
    steps = tuple(_pad_grid(germ, g, second.padding) for g in first.steps) + second.steps
    return PBulletMorphism(first.source, first.padding + second.padding, steps, second.target)


def pbullet_columns(base: Category, m: PBulletMorphism) -> Tuple[Morphism, ...]:
    germ = base.germ
    source = m.source.padded(germ, m.padding)
    starts = [germ.source(e) for e in source.entries] + [germ.target(source.entries[-1])]
    columns = [base.identity(obj) for obj in starts]
    for grid in m.steps:
        columns = [base.multiply(c, base.element(e)) for c, e in zip(columns, grid.columns)]
    return tuple(columns)


# === DECOMPOSITION POSETS ===

@dataclass(frozen=True)
class DecompositionPoset:
    """
    E(g): decompositions of g into non-identity germ elements

    covers holds (coarse, fine) index pairs, one per single split g_i → (a, b).
    """
    g: Morphism
    vertices: Tuple[Tuple[ElementId, ...], ...]
    covers: Tuple[Tuple[int, int], ...]
    names: Tuple[str, ...]

    def graph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self.vertices)))
        graph.add_edges_from(self.covers)
        return graph

    def comparabilities(self) -> List[Tuple[int, int]]:
        """All (x, y) with x > y, derived from the covers"""
        closure = nx.transitive_closure_dag(self.graph())
        return sorted(closure.edges())

    def extremal_vertex(self) -> Optional[int]:
        """A greatest or least element, if any"""
        graph = self.graph()
        size = len(self.vertices)
        for v in range(size):
            if len(nx.descendants(graph, v)) == size - 1 or len(nx.ancestors(graph, v)) == size - 1:
                return v
        return None

    def export_lines(self) -> List[str]:
        lines = [f"v {i} {name}" for i, name in enumerate(self.names)]
        lines.extend(f"e {x} {y}" for x, y in self.covers)
        return lines


def build_Eg(category: Category, g: Morphism, budget: int = 2000) -> DecompositionPoset:
    """
    Decomposition poset of a non-identity morphism

    Raises:
        MalformedSpec: g is an identity
        TooLarge: more than budget decompositions
    """
    if g.is_identity:
        raise MalformedSpec("E(g) needs a non-identity morphism")
    germ = category.germ
    memo: Dict[Morphism, List[Tuple[ElementId, ...]]] = {}

    def decompositions(m: Morphism) -> List[Tuple[ElementId, ...]]:
        if m.is_identity:
            return [()]
        if m in memo:
            return memo[m]
        found = []
        for p in germ.from_object[m.source]:
            if germ.is_identity(p):
                continue
            head = category.element(p)
            if not category.divides_left(head, m):
                continue
            for tail in decompositions(category.left_quotient(head, m)):
                found.append((p,) + tail)
                if len(found) > budget:
                    raise TooLarge(f"E({category.format(g)}) has more than {budget} vertices",
                                   (category.format(g),))
        memo[m] = found
        return found

    vertices = sorted(set(decompositions(g)),
                      key=lambda v: (len(v), tuple(germ.sort_key(e) for e in v)))
    position = {v: i for i, v in enumerate(vertices)}
    covers: Set[Tuple[int, int]] = set()
    for v in vertices:
        for i, e in enumerate(v):
            for a in germ.left_divisors(e):
                if germ.is_identity(a) or a == e:
                    continue
                b = germ.complement(a, e)
                if germ.is_identity(b):
                    continue
                covers.add((position[v], position[v[:i] + (a, b) + v[i + 1:]]))
    names = tuple("(" + ",".join(germ.labels(v)) + ")" for v in vertices)
    return DecompositionPoset(g, tuple(vertices), tuple(sorted(covers)), names)


# === SIMPLE CONNECTEDNESS ===

@dataclass(frozen=True)
class SimpleConnectivityReport:
    connected: bool
    h1_rank: int
    h1_torsion: Tuple[int, ...] = ()
    pi1_certificate: Optional[str] = None

    @property
    def consistent(self) -> bool:
        """Connected with vanishing first homology"""
        return self.connected and self.h1_rank == 0 and not self.h1_torsion


def _integer_invariants(columns: Sequence[Dict[int, int]]) -> Tuple[int, Tuple[int, ...]]:
    """
    Rank and invariant factors > 1 of a sparse integer matrix given by columns

    Unit pivots are eliminated first; the remainder goes through the Smith
    normal form over ZZ.
    """
    cols: Dict[int, Dict[int, int]] = {j: dict(c) for j, c in enumerate(columns) if c}
    rows: Dict[int, Set[int]] = {}
    for j, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(j)

    rank = 0
    progressed = True
    while progressed:
        progressed = False
        for j in list(cols):
            pivot_col = cols.get(j)
            if pivot_col is None:
                continue
            r = next((r for r, v in pivot_col.items() if abs(v) == 1), None)
            if r is None:
                continue
            p = pivot_col[r]
            for k in sorted(rows[r] - {j}):
                factor = cols[k][r] * p
                col = cols[k]
                for row, value in pivot_col.items():
                    updated = col.get(row, 0) - factor * value
                    if updated:
                        col[row] = updated
                        rows.setdefault(row, set()).add(k)
                    else:
                        col.pop(row, None)
                        rows[row].discard(k)
                if not col:
                    del cols[k]
            for row in pivot_col:
                rows[row].discard(j)
            del cols[j]
            rows.pop(r, None)
            rank += 1
            progressed = True

    if not cols:
        return rank, ()
    row_ids = sorted({r for col in cols.values() for r in col})
    col_ids = sorted(cols)
    dense = Matrix(len(row_ids), len(col_ids),
                   lambda i, k: cols[col_ids[k]].get(row_ids[i], 0))
    snf = smith_normal_form(dense, domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diagonal if d]
    return rank + len(nonzero), tuple(sorted(d for d in nonzero if d > 1))


def order_complex_h1(comparable: Sequence[Tuple[int, int]]) -> Tuple[int, Tuple[int, ...]]:
    """
    Rank and torsion of H₁ of the order complex

    Edges are the comparable pairs (x > y) with ∂(x, y) = y − x; triangles are
    the chains x > y > z.
    """
    edge_index = {edge: i for i, edge in enumerate(comparable)}
    below: Dict[int, List[int]] = {}
    for x, y in comparable:
        below.setdefault(x, []).append(y)

    d1 = [{y: 1, x: -1} for x, y in comparable]
    d2 = []
    for x, y in comparable:
        for z in below.get(y, ()):
            d2.append({edge_index[(y, z)]: 1, edge_index[(x, z)]: -1, edge_index[(x, y)]: 1})
    rank1, _ = _integer_invariants(d1)
    rank2, torsion = _integer_invariants(d2)
    return len(comparable) - rank1 - rank2, torsion


def _free_reduce(word: Word) -> Word:
    reduced: Word = []
    for letter in word:
        if reduced and reduced[-1][0] == letter[0] and reduced[-1][1] == -letter[1]:
            reduced.pop()
        else:
            reduced.append(letter)
    while len(reduced) > 1 and reduced[0][0] == reduced[-1][0] and reduced[0][1] == -reduced[-1][1]:
        reduced = reduced[1:-1]
    return reduced


def _inverse(word: Word) -> Word:
    return [(g, -e) for g, e in reversed(word)]


def tietze_trivializes(generators: int, relators: Sequence[Word], max_rounds: int = 200,
                       max_length: int = 256) -> bool:
    """
    Bounded Tietze elimination: repeatedly solve a relator for a generator
    occurring once in it; True when every generator is eliminated
    """
    alive = set(range(generators))
    current = [r for r in (_free_reduce(list(w)) for w in relators) if r]
    for _ in range(max_rounds):
        if not alive:
            return True
        choice = None
        for relator in sorted(current, key=len):
            counts = Counter(g for g, _ in relator)
            single = [g for g, c in counts.items() if c == 1]
            if single:
                choice = (relator, min(single))
                break
        if choice is None:
            return False
        relator, g = choice
        at = next(i for i, (h, _) in enumerate(relator) if h == g)
        rotated = relator[at:] + relator[:at]
        exponent = rotated[0][1]
        rest = rotated[1:]
        value = _inverse(rest) if exponent == 1 else rest
        current.remove(relator)
        substituted = []
        for word in current:
            expanded: Word = []
            for h, e in word:
                if h == g:
                    expanded.extend(value if e == 1 else _inverse(value))
                else:
                    expanded.append((h, e))
            reduced = _free_reduce(expanded)
            if len(reduced) > max_length:
                return False
            if reduced:
                substituted.append(reduced)
        current = substituted
        alive.discard(g)
    return not alive


def _pi1_presentation(vertex_count: int, comparable: Sequence[Tuple[int, int]]) -> Tuple[int, List[Word]]:
    """Edge-path presentation of π₁ of the order complex over a spanning tree"""
    graph = nx.Graph()
    graph.add_nodes_from(range(vertex_count))
    graph.add_edges_from(comparable)
    tree = {tuple(sorted(e)) for e in nx.minimum_spanning_edges(graph, data=False)}
    generator: Dict[Tuple[int, int], int] = {}
    for edge in comparable:
        if tuple(sorted(edge)) not in tree:
            generator[edge] = len(generator)

    def letter(edge: Tuple[int, int], exponent: int) -> Word:
        return [(generator[edge], exponent)] if edge in generator else []

    below: Dict[int, List[int]] = {}
    for x, y in comparable:
        below.setdefault(x, []).append(y)
    relators = []
    for x, y in comparable:
        for z in below.get(y, ()):
            relators.append(letter((x, y), 1) + letter((y, z), 1) + letter((x, z), -1))
    return len(generator), relators


def check_simply_connected(poset: DecompositionPoset, tietze_max_rounds: int = 200,
                           attempt_tietze: bool = True) -> SimpleConnectivityReport:
    """
    Evidence that E(g) is simply connected

    Connectivity of the comparability graph and H₁ of the order complex are
    exact; π₁ triviality is certified by a greatest or least element ("cone")
    or by a bounded Tietze elimination ("tietze"), and left open otherwise.
    """
    logger = Logger("Decomposition")
    count = len(poset.vertices)
    comparable = poset.comparabilities()
    graph = nx.Graph()
    graph.add_nodes_from(range(count))
    graph.add_edges_from(comparable)
    connected = nx.is_connected(graph)
    h1_rank, torsion = order_complex_h1(comparable)

    certificate = None
    if poset.extremal_vertex() is not None:
        certificate = "cone"
    elif connected and attempt_tietze:
        generators, relators = _pi1_presentation(count, comparable)
        if tietze_trivializes(generators, relators, tietze_max_rounds):
            certificate = "tietze"
    logger.debug(f"E({poset.names[0]}): {count} vertices, {len(comparable)} comparabilities, "
                 f"h1={h1_rank}, certificate={certificate}")
    return SimpleConnectivityReport(connected, h1_rank, torsion, certificate)


def batch_check_simply_connected(category: Category, morphisms: Sequence[Morphism], workers: int = 4,
                                 budget: int = 2000, tietze_max_rounds: int = 200,
                                 show_progress: bool = False) -> List[Tuple[Morphism, SimpleConnectivityReport]]:
    """Check E(g) for many g in parallel; results keep the input order"""
    logger = Logger("Decomposition")
    start = logger.timing_start("batch_check_simply_connected")

    def run(g: Morphism) -> SimpleConnectivityReport:
        return check_simply_connected(build_Eg(category, g, budget), tietze_max_rounds)

    results: List[Optional[SimpleConnectivityReport]] = [None] * len(morphisms)
    pbar = None
    if _TQDM_AVAILABLE and show_progress:
        pbar = tqdm(total=len(morphisms), desc="Checking E(g)", unit="poset")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_index = {executor.submit(run, g): i for i, g in enumerate(morphisms)}
        for future in as_completed(future_to_index):
            results[future_to_index[future]] = future.result()
            if pbar:
                pbar.update(1)
    if pbar:
        pbar.close()

    duration = logger.timing_end("batch_check_simply_connected", start)
    logger.performance_stats({
        "posets": len(morphisms),
        "consistent": sum(1 for r in results if r.consistent),
        "duration": duration,
    })
    return list(zip(morphisms, results))
