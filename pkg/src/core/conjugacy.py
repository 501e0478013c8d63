#!/usr/bin/env python3
"""
Conjugacy - The Conjugacy Category of C(P)
Objects are families of endomorphisms of one object, morphisms x with
x ≼ w·x for every member; simples, conjugation, normal forms and
lcm/gcd transport reports
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Sequence, Tuple

from .category_engine import Category, Morphism
from .germ_core import ElementId
from ..utils.error_handler import GermAxiomViolation, MalformedSpec, NotConjugating
from ..utils.logger import Logger


@dataclass(frozen=True)
class ConjObject:
    """A family of endomorphisms of a common object (size 1 for plain conjugacy)"""
    family: Tuple[Morphism, ...]

    def __post_init__(self):
        if not self.family:
            raise MalformedSpec("conjugacy object needs a nonempty family")
        obj = self.family[0].source
        for w in self.family:
            if w.source != obj or w.target != obj:
                raise MalformedSpec("family members must be endomorphisms of one object")

    @property
    def obj(self) -> int:
        return self.family[0].source


@dataclass(frozen=True)
class ConjMorphism:
    source: ConjObject
    x: Morphism
    target: ConjObject


@dataclass
class TransportReport:
    """How often lcm (or gcd) of two conjugating morphisms is conjugating again"""
    operation: str
    checked: int = 0
    transported: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.checked == self.transported


def conj_apply(category: Category, w: Morphism, x: Morphism) -> Morphism:
    """
    w^x: the unique w' with w·x = x·w'

    Raises:
        NotConjugating: x does not left-divide w·x
    """
    product = category.multiply(w, x)
    if not category.divides_left(x, product):
        raise NotConjugating(f"{category.format(x)} does not left-divide {category.format(product)}",
                             (category.format(w), category.format(x)))
    return category.left_quotient(x, product)


def is_conjugating(category: Category, source: ConjObject, x: Morphism) -> bool:
    return x.source == source.obj and all(
        category.divides_left(x, category.multiply(w, x)) for w in source.family
    )


def conjugate_by(category: Category, source: ConjObject, x: Morphism) -> ConjMorphism:
    target = ConjObject(tuple(conj_apply(category, w, x) for w in source.family))
    return ConjMorphism(source, x, target)


def conj_simples(category: Category, source: ConjObject) -> List[ConjMorphism]:
    """Germ elements p with p ≼ w·p for every w of the family, with their targets"""
    germ = category.germ
    result = []
    for p in germ.sorted_ids(germ.from_object[source.obj]):
        x = category.element(p)
        if is_conjugating(category, source, x):
            result.append(conjugate_by(category, source, x))
    return result


def conjugating_morphisms(category: Category, source: ConjObject, max_len: int) -> List[ConjMorphism]:
    """Hom-sets of the conjugacy category out of a family, ν ≤ max_len"""
    return [conjugate_by(category, source, x)
            for x in category.enumerate_morphisms(source.obj, max_len)
            if is_conjugating(category, source, x)]


def _conj_head(category: Category, source: ConjObject, x: Morphism) -> ElementId:
    candidates = [s.x for s in conj_simples(category, source) if category.divides_left(s.x, x)]
    for m in candidates:
        if all(category.divides_left(o, m) for o in candidates):
            return category.alpha(m)
    raise GermAxiomViolation("no greatest conjugating simple divides the morphism",
                             (category.format(x),))


def conj_normal_form(category: Category, source: ConjObject, x: Morphism) -> Morphism:
    """
    Normal form of x computed inside the conjugacy category

    Each head is the greatest conjugating simple dividing the remainder; the
    family is conjugated along the way.

    Raises:
        NotConjugating: x is not a morphism out of the family
    """
    if not is_conjugating(category, source, x):
        raise NotConjugating(f"{category.format(x)} is not conjugating for the family",
                             tuple(category.format(w) for w in source.family))
    factors: List[ElementId] = []
    family = source
    rest = x
    while rest.factors:
        head = _conj_head(category, family, rest)
        factors.append(head)
        step = category.element(head)
        family = conjugate_by(category, family, step).target
        rest = category.left_quotient(step, rest)
    return Morphism(x.source, tuple(factors), x.target)


def _transport(category: Category, source: ConjObject, sample: Sequence[Morphism],
               operation: str) -> TransportReport:
    report = TransportReport(operation)
    for x, y in combinations(sample, 2):
        joined = category.lcm([x, y]) if operation == "lcm" else category.gcd([x, y])
        if joined is None:
            continue
        report.checked += 1
        if is_conjugating(category, source, joined):
            report.transported += 1
        else:
            report.failures.append((category.format(x), category.format(y)))
    return report


def lcm_transport_report(category: Category, source: ConjObject, sample: Sequence[Morphism]) -> TransportReport:
    return _transport(category, source, sample, "lcm")


def gcd_transport_report(category: Category, source: ConjObject, sample: Sequence[Morphism]) -> TransportReport:
    """Informational: gcd transport is observed, not guaranteed"""
    report = _transport(category, source, sample, "gcd")
    if not report.holds:
        Logger("Conjugacy").info(f"gcd transport fails on {len(report.failures)} of {report.checked} pairs")
    return report
