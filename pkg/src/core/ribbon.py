#!/usr/bin/env python3
"""
Ribbon - Categories of Conjugates of a Generator Subset
Orbit of I₀ under v(α, I) moves, the ribbon germ of I-reduced conjugating
elements, its atoms, and the spherical Garside structure

Convention: a ribbon element (I, w, J) satisfies w·J·w⁻¹ = I with w
I-reduced; it is a morphism with source I and target J.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Tuple

from .category_engine import Category, Morphism
from .coxeter import (
    CoxeterLift,
    CoxeterSystem,
    Generator,
    WElement,
    is_finite,
    is_I_reduced,
    is_spherical,
    lift_germ,
    ribbon_chain_end,
    v_alpha_I,
    w_parabolic_longest,
)
from .garside_structure import GarsideStructure, build_left_garside
from .germ_core import ElementId, ElementSpec, GermSpec, GermTable, Verdict, build_germ
from ..utils.error_handler import (
    GermAxiomViolation,
    InfiniteWithoutBound,
    MalformedSpec,
    NotSpherical,
)
from ..utils.logger import Logger


@dataclass(frozen=True)
class RibbonObject:
    generators: FrozenSet[Generator]

    @property
    def key(self) -> Tuple[int, Tuple[Generator, ...]]:
        return (len(self.generators), tuple(sorted(self.generators)))


@dataclass(frozen=True)
class RibbonElement:
    source: RibbonObject
    w: WElement
    target: RibbonObject


@dataclass
class RibbonGerm:
    """The ribbon germ with its Coxeter data and element table"""
    cox: CoxeterSystem
    lift: CoxeterLift
    orbit: Tuple[RibbonObject, ...]
    germ: GermTable
    elements: Tuple[RibbonElement, ...]
    index: Dict[RibbonElement, ElementId]

    def object_id(self, obj: RibbonObject) -> int:
        return self.orbit.index(obj)

    def element_id(self, element: RibbonElement) -> ElementId:
        try:
            return self.index[element]
        except KeyError:
            raise MalformedSpec("not an element of the ribbon germ",
                                (self.describe(element),)) from None

    def describe(self, element: RibbonElement) -> str:
        cox = self.cox
        return (f"({cox.format_subset(element.source.generators)}, {cox.label(element.w)}, "
                f"{cox.format_subset(element.target.generators)})")


def _object_name(cox: CoxeterSystem, obj: RibbonObject) -> str:
    return ",".join(cox.labels[s] for s in sorted(obj.generators)) or "∅"


def ribbon_orbit(cox: CoxeterSystem, start: Iterable[Generator]) -> Tuple[RibbonObject, ...]:
    """All generator subsets reachable from I₀ by v(α, I) moves (spherical moves only)"""
    logger = Logger("Ribbon")
    first = RibbonObject(frozenset(start))
    seen = {first}
    queue = deque([first])
    while queue:
        current = queue.popleft()
        for alpha in range(cox.rank):
            if alpha in current.generators:
                continue
            if not is_spherical(cox, current.generators | {alpha}):
                logger.debug(f"skipping non-spherical move {cox.labels[alpha]} at "
                             f"{cox.format_subset(current.generators)}")
                continue
            image, _ = v_alpha_I(cox, alpha, current.generators)
            conjugate = RibbonObject(image)
            if conjugate not in seen:
                seen.add(conjugate)
                queue.append(conjugate)
    return tuple(sorted(seen, key=lambda o: o.key))


def build_ribbon_germ(cox: CoxeterSystem, start: Iterable[Generator], guard: int = 100000) -> RibbonGerm:
    """
    Germ of the (I, w, J) with w I-reduced and w·J·w⁻¹ = I; (I,w,J)(J,w',K) is
    defined when lengths add

    Raises:
        InfiniteWithoutBound: W is infinite
    """
    if not is_finite(cox):
        raise InfiniteWithoutBound(f"ribbon germ of {cox.name} needs a finite Coxeter group", (cox.name,))
    logger = Logger("Ribbon")
    start_time = logger.timing_start("build_ribbon_germ")

    lift = lift_germ(cox, guard=guard)
    orbit = ribbon_orbit(cox, start)
    members = set(orbit)

    elements: List[RibbonElement] = []
    for source in orbit:
        elements.append(RibbonElement(source, cox.identity, source))
    for source in orbit:
        for w in lift.elements[1:]:
            if not is_I_reduced(cox, source.generators, w):
                continue
            image = cox.conjugate_subset(cox.inverse(w), source.generators)
            if image is None or RibbonObject(image) not in members:
                continue
            elements.append(RibbonElement(source, w, RibbonObject(image)))
    index = {element: i for i, element in enumerate(elements)}

    object_names = [_object_name(cox, o) for o in orbit]
    labels = [f"{_object_name(cox, e.source)}:{cox.label(e.w)}" for e in elements]

    by_source: Dict[RibbonObject, List[RibbonElement]] = {}
    for element in elements:
        by_source.setdefault(element.source, []).append(element)
    products = []
    for first in elements:
        if not first.w.word:
            continue
        for second in by_source[first.target]:
            if not second.w.word:
                continue
            if not cox.lengths_add(first.w, second.w):
                continue
            joined = RibbonElement(first.source, cox.multiply(first.w, second.w), second.target)
            if joined in index:
                products.append((labels[index[first]], labels[index[second]], labels[index[joined]]))

    spec = GermSpec(
        objects=object_names,
        elements=[ElementSpec(labels[i], _object_name(cox, e.source), _object_name(cox, e.target),
                              identity=not e.w.word) for i, e in enumerate(elements)],
        products=products,
    )
    germ = build_germ(spec, validate=False)
    logger.timing_end("build_ribbon_germ", start_time)
    logger.debug(f"ribbon germ: {len(orbit)} objects, {len(elements)} elements")
    return RibbonGerm(cox, lift, orbit, germ, tuple(elements), index)


def ribbon_atoms(ribbon: RibbonGerm) -> Tuple[ElementId, ...]:
    """Atoms as the (J, v(α, I), I), minus those with a proper left factor among them"""
    cox = ribbon.cox
    candidates = set()
    for obj in ribbon.orbit:
        for alpha in range(cox.rank):
            if alpha in obj.generators or not is_spherical(cox, obj.generators | {alpha}):
                continue
            image, v = v_alpha_I(cox, alpha, obj.generators)
            candidates.add(ribbon.element_id(RibbonElement(RibbonObject(image), v, obj)))
    germ = ribbon.germ
    atoms = [e for e in candidates
             if not any(o != e and germ.divides(o, e) for o in candidates)]
    return tuple(germ.sorted_ids(atoms))


def ribbon_element_of(ribbon: RibbonGerm, source: Iterable[Generator], w: WElement,
                      target: Iterable[Generator]) -> ElementId:
    return ribbon.element_id(RibbonElement(RibbonObject(frozenset(source)), w,
                                           RibbonObject(frozenset(target))))


def artin_image(ribbon: RibbonGerm, m: Morphism) -> Morphism:
    """The Artin monoid element underlying a ribbon morphism"""
    lift = ribbon.lift
    category = lift.category
    result = category.identity(0)
    for f in m.factors:
        result = category.multiply(result, category.element(lift.element_id(ribbon.elements[f].w)))
    return result


def ribbon_nf_stays_ribbon(ribbon: RibbonGerm, m: Morphism) -> Verdict:
    """
    Normal-form terms in the Artin monoid of a ribbon morphism I → J are ribbon elements

    The terms are followed from I; each must be reduced for the current set
    and conjugate it into S, ending at J.
    """
    cox = ribbon.cox
    source = ribbon.orbit[m.source].generators
    target = ribbon.orbit[m.target].generators
    b = artin_image(ribbon, m)
    current = source
    for f in b.factors:
        w = ribbon.lift.w_of(f)
        step_end = ribbon_chain_end(ribbon.lift, current, ribbon.lift.category.element(f))
        if step_end is None or RibbonElement(RibbonObject(current), w, RibbonObject(step_end)) not in ribbon.index:
            return Verdict("ribbon_nf", False, (cox.format_subset(current), cox.label(w)), len(b.factors))
        current = step_end
    if current != target:
        return Verdict("ribbon_nf", False, (cox.format_subset(current), cox.format_subset(target)),
                       len(b.factors), "chain ends elsewhere")
    return Verdict("ribbon_nf", True, (), len(b.factors))


def spherical_garside(ribbon: RibbonGerm) -> GarsideStructure:
    """
    Garside structure with Δ_J = (J, w_J·w_S, J̄), J̄ = w_S·J·w_S

    Raises:
        NotSpherical: W is infinite
        GermAxiomViolation: the synthesized Δ disagrees with the closed formula
    """
    cox = ribbon.cox
    if not is_finite(cox):
        raise NotSpherical(f"{cox.name} is not spherical", (cox.name,))
    longest = w_parabolic_longest(cox, range(cox.rank))
    gs = build_left_garside(ribbon.germ, Category(ribbon.germ))
    for obj in ribbon.orbit:
        bar = cox.conjugate_subset(longest, obj.generators)
        expected = RibbonElement(obj, cox.multiply(w_parabolic_longest(cox, obj.generators), longest),
                                 RibbonObject(bar))
        found = gs.delta_element[ribbon.object_id(obj)]
        if ribbon.index.get(expected) != found:
            raise GermAxiomViolation("Δ of the ribbon germ differs from w_J·w_S",
                                     (ribbon.describe(expected), ribbon.germ.label(found)))
    return gs
