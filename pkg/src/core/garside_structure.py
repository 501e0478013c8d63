#!/usr/bin/env python3
"""
Garside Structure - Δ, Φ and Complements
Synthesizes left Garside structures from germs with global lcms and checks
naturality, Δ-power bounds and the two-sided upgrade
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .category_engine import Category, Morphism, RawPath
from .germ_core import (
    AxiomStatus,
    ElementId,
    GermTable,
    ObjectId,
    SubgermResult,
    Verdict,
    check_locally_garside,
    germ_atoms,
    germ_lcm,
    opposite_germ,
    subgerm,
)
from ..utils.error_handler import GermAxiomViolation, NoGlobalLcm, PhiNotBijective
from ..utils.logger import Logger


@dataclass
class GarsideStructure:
    """
    Left Garside structure on C(P)

    delta_element[A] is Δ_A as a germ element, delta[A] the same as a morphism.
    tilde[f] is the complement f·tilde(f) = Δ_source(f); phi_elem = tilde∘tilde.
    """
    category: Category
    delta: Dict[ObjectId, Morphism]
    delta_element: Dict[ObjectId, ElementId]
    phi_obj: Dict[ObjectId, ObjectId]
    phi_elem: Dict[ElementId, ElementId]
    tilde: Dict[ElementId, ElementId]
    naturality: Optional[Verdict] = None
    warnings: List[str] = field(default_factory=list)

    @property
    def germ(self) -> GermTable:
        return self.category.germ

    def phi(self, m: Morphism) -> Morphism:
        """Φ extended factorwise and renormalized"""
        letters = tuple(self.phi_elem[f] for f in m.factors)
        image = self.category.normal_form(RawPath(self.phi_obj[m.source], letters))
        return image

    def simples(self) -> Tuple[ElementId, ...]:
        return tuple(sorted(self.tilde))


def build_left_garside(germ: GermTable, category: Optional[Category] = None) -> GarsideStructure:
    """
    Δ_A = right lcm of all germ elements with source A, Φ through double complements

    Raises:
        NoGlobalLcm: the germ elements out of some object have no common right multiple
        GermAxiomViolation: Δ_A is not a germ element or a complement is missing
    """
    logger = Logger("GarsideStructure")
    category = category or Category(germ)

    delta: Dict[ObjectId, Morphism] = {}
    delta_element: Dict[ObjectId, ElementId] = {}
    for obj in range(len(germ.objects)):
        family = [category.element(e) for e in germ.from_object[obj]]
        joined = category.lcm(family)
        if joined is None:
            raise NoGlobalLcm(f"germ elements from '{germ.object_name(obj)}' have no common multiple",
                              (germ.object_name(obj),))
        if joined.nu > 1:
            raise GermAxiomViolation(f"Δ at '{germ.object_name(obj)}' is not a germ element",
                                     germ.labels(joined.factors))
        delta[obj] = joined
        delta_element[obj] = joined.factors[0] if joined.factors else germ.identity_of[obj]

    phi_obj = {obj: d.target for obj, d in delta.items()}

    tilde: Dict[ElementId, ElementId] = {}
    for element in germ.elements:
        complement = germ.complement(element.id, delta_element[element.source])
        if complement is None:
            raise GermAxiomViolation(f"'{element.label}' does not divide Δ in the germ", (element.label,))
        tilde[element.id] = complement

    phi_elem: Dict[ElementId, ElementId] = {}
    for element in germ.elements:
        once = tilde[element.id]
        phi_elem[element.id] = tilde[once]

    gs = GarsideStructure(category, delta, delta_element, phi_obj, phi_elem, tilde)
    gs.naturality = check_naturality(gs, [category.element(e.id) for e in germ.elements])
    if not gs.naturality.passed:
        gs.warnings.append(f"naturality fails at {' '.join(gs.naturality.witness)}")
        logger.warning(gs.warnings[-1])

    logger.debug("Δ: " + ", ".join(f"{germ.object_name(o)} -> {germ.label(e)}"
                                   for o, e in sorted(delta_element.items())))
    return gs


def check_naturality(gs: GarsideStructure, sample: Iterable[Morphism]) -> Verdict:
    """f·Δ_target(f) = Δ_source(f)·Φ(f) on every sample morphism"""
    category = gs.category
    checked = 0
    for f in sample:
        checked += 1
        left = category.multiply(f, gs.delta[f.target])
        right = category.multiply(gs.delta[f.source], gs.phi(f))
        if left != right:
            return Verdict("naturality", False, (category.format(f), category.format(left),
                                                 category.format(right)), checked)
    return Verdict("naturality", True, (), checked)


def delta_power(gs: GarsideStructure, source: ObjectId, n: int) -> Morphism:
    """Δ_A·Δ_Φ(A)·… with n factors"""
    category = gs.category
    result = category.identity(source)
    obj = source
    for _ in range(n):
        result = category.multiply(result, gs.delta[obj])
        obj = gs.phi_obj[obj]
    return result


def divides_delta_power(gs: GarsideStructure, m: Morphism) -> int:
    """Smallest n ≤ ν(m) with m ≼ Δⁿ"""
    category = gs.category
    for n in range(m.nu + 1):
        if category.divides_left(m, delta_power(gs, m.source, n)):
            return n
    raise GermAxiomViolation("morphism divides no power of Δ up to its length",
                             (category.format(m),))


def delta_divisor_sets(gs: GarsideStructure, obj: ObjectId) -> Tuple[FrozenSet[ElementId], FrozenSet[ElementId]]:
    """(left divisors, right divisors) of Δ_obj inside the germ"""
    germ = gs.germ
    d = gs.delta_element[obj]
    left = germ.left_divisors(d)
    right = frozenset(b for (a, b), c in germ.product.items() if c == d)
    return left, right


def _right_cancellation_witness(category: Category, sample: Sequence[Morphism]) -> Optional[Tuple[str, ...]]:
    by_target: Dict[ObjectId, List[Morphism]] = {}
    for m in sample:
        by_target.setdefault(m.target, []).append(m)
    for x in sample:
        seen: Dict[Morphism, Morphism] = {}
        for y in by_target.get(x.source, ()):
            product = category.multiply(y, x)
            other = seen.setdefault(product, y)
            if other != y:
                return (category.format(other), category.format(y), category.format(x))
    return None


def check_garside_bilatere(gs: GarsideStructure, bound: int) -> Verdict:
    """
    Desk-scale check that the left structure is two-sided

    Φ must be bijective; the opposite germ must pass G1-G3; right
    cancellation must hold on all morphisms with ν ≤ bound; divisibility
    must be transported by complements (g ≼ f ⇔ tilde(f) right-divides tilde(g)).

    Raises:
        PhiNotBijective: Φ is not a bijection on objects or on simples
    """
    germ = gs.germ
    category = gs.category
    logger = Logger("GarsideStructure")

    if sorted(gs.phi_obj.values()) != sorted(gs.phi_obj):
        raise PhiNotBijective("Φ is not a bijection on objects",
                              tuple(germ.object_name(o) for o in gs.phi_obj.values()))
    if sorted(gs.phi_elem.values()) != sorted(gs.phi_elem):
        raise PhiNotBijective("Φ is not a bijection on simples",
                              germ.labels(gs.phi_elem.values()))

    checked = 0
    report = check_locally_garside(opposite_germ(germ), "assume")
    for axiom in ("G1", "G2", "G3"):
        checked += 1
        if report[axiom].status is AxiomStatus.FAIL:
            return Verdict("garside_bilatere", False, (axiom,) + report[axiom].witness, checked,
                           "opposite germ fails")

    sample: List[Morphism] = []
    for obj in range(len(germ.objects)):
        sample.extend(category.enumerate_morphisms(obj, bound))
    witness = _right_cancellation_witness(category, sample)
    checked += len(sample)
    if witness is not None:
        return Verdict("garside_bilatere", False, witness, checked, "right cancellation fails")

    right_pairs: Set[Tuple[ElementId, ElementId]] = {(b, c) for (a, b), c in germ.product.items()}
    for obj in range(len(germ.objects)):
        simples = germ.from_object[obj]
        for f in simples:
            for g in simples:
                checked += 1
                left_side = germ.divides(g, f)
                right_side = (gs.tilde[f], gs.tilde[g]) in right_pairs
                if left_side != right_side:
                    return Verdict("garside_bilatere", False, germ.labels((g, f)), checked,
                                   "complement transport fails")

    logger.debug(f"garside_bilatere: {checked} checks passed (ν ≤ {bound})")
    return Verdict("garside_bilatere", True, (), checked)


def minimal_simples(germ: GermTable) -> SubgermResult:
    """Closure of the atoms under left factors, right factors and right lcms"""
    closure: Set[ElementId] = set(germ.identity_of.values()) | set(germ_atoms(germ))
    changed = True
    while changed:
        changed = False
        current = sorted(closure)
        additions: Set[ElementId] = set()
        for f in current:
            for d in germ.left_divisors(f):
                additions.add(d)
                additions.add(germ.complement(d, f))
        for e, f in combinations(current, 2):
            if germ.source(e) != germ.source(f):
                continue
            joined = germ_lcm(germ, e, f)
            if joined is not None:
                additions.add(joined)
        if not additions <= closure:
            closure |= additions
            changed = True
    return subgerm(germ, range(len(germ.objects)), closure)


def simples_germ(gs: GarsideStructure) -> SubgermResult:
    """Germ of the left divisors of Δ, products kept when they stay divisors of Δ"""
    germ = gs.germ
    simples = set()
    for obj, d in gs.delta_element.items():
        simples |= germ.left_divisors(d)
    return subgerm(germ, range(len(germ.objects)), simples)
