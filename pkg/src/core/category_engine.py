#!/usr/bin/env python3
"""
Category Engine - The Category Generated by a Germ
Greedy normal forms, multiplication, left divisibility, lcm/gcd of families,
atoms and a breadth-first enumeration oracle
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

try:
    from tqdm import tqdm
    _TQDM_AVAILABLE = True
except ImportError:
    _TQDM_AVAILABLE = False

from .germ_core import (
    ElementId,
    GermAutomorphism,
    GermTable,
    ObjectId,
    germ_atoms,
    germ_gcd,
    germ_lcm,
)
from ..utils.error_handler import (
    GermAxiomViolation,
    MalformedSpec,
    NotADivisor,
    SourceTargetMismatch,
)
from ..utils.logger import Logger


@dataclass(frozen=True)
class Morphism:
    """A morphism of C(P): its source and its normal form (empty = identity)"""
    source: ObjectId
    factors: Tuple[ElementId, ...]
    target: ObjectId

    @property
    def nu(self) -> int:
        return len(self.factors)

    @property
    def is_identity(self) -> bool:
        return not self.factors


@dataclass(frozen=True)
class RawPath:
    """Composable letters, not canonical"""
    source: ObjectId
    letters: Tuple[ElementId, ...]


@dataclass(frozen=True)
class LcmProbe:
    """Two atoms whose common multiples landing at one object have several minimal elements"""
    source: ObjectId
    pair: Tuple[ElementId, ElementId]
    target: ObjectId
    minimal: Tuple[Morphism, ...]


def path_from_labels(germ: GermTable, text: str, source: Optional[ObjectId] = None) -> RawPath:
    """
    Parse a whitespace-separated word of element names

    Args:
        germ: Germ whose labels are used
        text: e.g. "a b a"
        source: required for the empty word

    Raises:
        MalformedSpec: unknown name, empty word without source, non-composable letters
    """
    letters = tuple(germ.element(name) for name in text.split())
    if not letters:
        if source is None:
            raise MalformedSpec("empty word needs an explicit source object")
        return RawPath(source, ())
    start = germ.source(letters[0])
    if source is not None and source != start:
        raise MalformedSpec(f"word '{text}' does not start at '{germ.object_name(source)}'", (text,))
    for left, right in zip(letters, letters[1:]):
        if germ.target(left) != germ.source(right):
            raise MalformedSpec(f"'{germ.label(left)} {germ.label(right)}' is not composable",
                                (germ.label(left), germ.label(right)))
    return RawPath(start, letters)


class Category:
    """
    C(P) for a locally Garside germ P

    Every morphism is kept in greedy normal form, so equality of morphisms is
    equality of (source, factors). Left multiplication by a germ element runs
    the α₂/ω₂ staircase once along the factors.
    """

    def __init__(self, germ: GermTable, show_progress: bool = False):
        self.germ = germ
        self.show_progress = show_progress
        self.logger = Logger("CategoryEngine")
        self._enumerations: Dict[Tuple[ObjectId, int], List[Morphism]] = {}

    # === CONSTRUCTORS ===

    def identity(self, obj: ObjectId) -> Morphism:
        return Morphism(obj, (), obj)

    def element(self, e: ElementId) -> Morphism:
        germ = self.germ
        if germ.is_identity(e):
            return self.identity(germ.source(e))
        return Morphism(germ.source(e), (e,), germ.target(e))

    def parse(self, text: str, source: Optional[ObjectId] = None) -> Morphism:
        return self.normal_form(path_from_labels(self.germ, text, source))

    def from_factors(self, source: ObjectId, factors: Sequence[ElementId]) -> Morphism:
        """
        Accept a factor sequence as a morphism

        Raises:
            MalformedSpec: an identity factor, a broken path or a non-normal adjacent pair
        """
        germ = self.germ
        factors = tuple(factors)
        end = source
        for e in factors:
            if germ.is_identity(e) or germ.source(e) != end:
                raise MalformedSpec("factors do not form a path of non-identity elements",
                                    germ.labels(factors))
            end = germ.target(e)
        if not self.is_normal_sequence(factors):
            raise MalformedSpec("factor sequence is not in normal form", germ.labels(factors))
        return Morphism(source, factors, end)

    # === TWO-LETTER MAPS ===

    def alpha2(self, x: ElementId, y: ElementId) -> ElementId:
        """x·z for the maximal left divisor z of y with x·z in the germ"""
        z, _ = self.germ.alpha2_split(x, y)
        return self.germ.product[(x, z)]

    def omega2(self, x: ElementId, y: ElementId) -> ElementId:
        _, t = self.germ.alpha2_split(x, y)
        return t

    def is_normal_pair(self, x: ElementId, y: ElementId) -> bool:
        z, _ = self.germ.alpha2_split(x, y)
        return self.germ.is_identity(z)

    def is_normal_sequence(self, factors: Sequence[ElementId]) -> bool:
        return all(self.is_normal_pair(x, y) for x, y in zip(factors, factors[1:]))

    # === NORMAL FORMS AND PRODUCTS ===

    def _left_multiply(self, x: ElementId, factors: Tuple[ElementId, ...]) -> Tuple[ElementId, ...]:
        germ = self.germ
        if germ.is_identity(x):
            return factors
        result: List[ElementId] = []
        carry = x
        for i, y in enumerate(factors):
            z, t = germ.alpha2_split(carry, y)
            result.append(germ.product[(carry, z)])
            carry = t
            if germ.is_identity(carry):
                result.extend(factors[i + 1:])
                return tuple(result)
        result.append(carry)
        return tuple(result)

    def normal_form(self, path: RawPath) -> Morphism:
        """Normal form of a raw path; identity letters are dropped"""
        germ = self.germ
        end = path.source
        for letter in path.letters:
            if germ.source(letter) != end:
                raise MalformedSpec("letters do not form a path", germ.labels(path.letters))
            end = germ.target(letter)
        factors: Tuple[ElementId, ...] = ()
        for letter in reversed(path.letters):
            factors = self._left_multiply(letter, factors)
        return Morphism(path.source, factors, end)

    def multiply(self, m1: Morphism, m2: Morphism) -> Morphism:
        """
        Product m1·m2

        Raises:
            SourceTargetMismatch: target(m1) ≠ source(m2)
        """
        if m1.target != m2.source:
            raise SourceTargetMismatch(
                f"target {self.germ.object_name(m1.target)} ≠ source {self.germ.object_name(m2.source)}",
                (self.format(m1), self.format(m2)),
            )
        if not m1.factors:
            return m2
        if not m2.factors:
            return m1
        if self.is_normal_pair(m1.factors[-1], m2.factors[0]):
            return Morphism(m1.source, m1.factors + m2.factors, m2.target)
        factors = m2.factors
        for x in reversed(m1.factors):
            factors = self._left_multiply(x, factors)
        return Morphism(m1.source, factors, m2.target)

    def product(self, morphisms: Sequence[Morphism]) -> Morphism:
        result = morphisms[0]
        for m in morphisms[1:]:
            result = self.multiply(result, m)
        return result

    def alpha(self, m: Morphism) -> ElementId:
        """Head of m (the identity of its source when m is trivial)"""
        if m.factors:
            return m.factors[0]
        return self.germ.identity_of[m.source]

    def omega(self, m: Morphism) -> Morphism:
        if not m.factors:
            return m
        return Morphism(self.germ.target(m.factors[0]), m.factors[1:], m.target)

    # === DIVISIBILITY ===

    def _quotient_by_element(self, p: ElementId, y: Morphism) -> Optional[Morphism]:
        germ = self.germ
        if germ.is_identity(p):
            return y if germ.source(p) == y.source else None
        if not y.factors or germ.source(p) != y.source:
            return None
        c = germ.complement(p, y.factors[0])
        if c is None:
            return None
        return Morphism(germ.target(p), self._left_multiply(c, y.factors[1:]), y.target)

    def _try_quotient(self, x: Morphism, y: Morphism) -> Optional[Morphism]:
        if x.source != y.source:
            return None
        current: Optional[Morphism] = y
        for p in x.factors:
            current = self._quotient_by_element(p, current)
            if current is None:
                return None
        return current

    def divides_left(self, x: Morphism, y: Morphism) -> bool:
        return self._try_quotient(x, y) is not None

    def left_quotient(self, x: Morphism, y: Morphism) -> Morphism:
        """
        The unique z with x·z = y

        Raises:
            NotADivisor: x does not left-divide y
        """
        quotient = self._try_quotient(x, y)
        if quotient is None:
            raise NotADivisor(f"{self.format(x)} does not left-divide {self.format(y)}",
                              (self.format(x), self.format(y)))
        return quotient

    # === LATTICE OPERATIONS ===

    def _check_common_source(self, family: Sequence[Morphism]) -> None:
        if not family:
            raise MalformedSpec("empty family")
        if len({m.source for m in family}) != 1:
            raise SourceTargetMismatch("family members have different sources",
                                       tuple(self.format(m) for m in family))

    def _lcm_with_element(self, p: ElementId, y: Morphism) -> Optional[Morphism]:
        # lcm(p, q·y') = q·lcm(q\p, y') with q the head of y
        germ = self.germ
        current = p
        for q in y.factors:
            m = germ_lcm(germ, current, q)
            if m is None:
                return None
            current = germ.complement(q, m)
            if germ.is_identity(current):
                return y
        return self.multiply(y, self.element(current))

    def _lcm_pair(self, x: Morphism, y: Morphism) -> Optional[Morphism]:
        # lcm(p·x', y) = p·lcm(x', p\y)
        residual = y
        for p in x.factors:
            joined = self._lcm_with_element(p, residual)
            if joined is None:
                return None
            residual = self._quotient_by_element(p, joined)
        return self.multiply(x, residual)

    def lcm(self, family: Sequence[Morphism]) -> Optional[Morphism]:
        """
        Right lcm of a family with common source

        Returns:
            The lcm, or None when the family has no common right multiple
        """
        self._check_common_source(family)
        result: Optional[Morphism] = family[0]
        for m in family[1:]:
            result = self._lcm_pair(result, m)
            if result is None:
                return None
        return result

    def _gcd_pair(self, x: Morphism, y: Morphism) -> Morphism:
        # peel gcd of the heads until it is trivial
        germ = self.germ
        acc = self.identity(x.source)
        while x.factors and y.factors:
            q = germ_gcd(germ, (x.factors[0], y.factors[0]))
            if germ.is_identity(q):
                break
            acc = self.multiply(acc, self.element(q))
            x = self._quotient_by_element(q, x)
            y = self._quotient_by_element(q, y)
        return acc

    def gcd(self, family: Sequence[Morphism]) -> Morphism:
        """Greatest common left divisor of a family with common source"""
        self._check_common_source(family)
        result = family[0]
        for m in family[1:]:
            result = self._gcd_pair(result, m)
        return result

    # === ENUMERATION ORACLE ===

    def sort_key(self, m: Morphism) -> Tuple:
        return (m.nu, tuple(self.germ.sort_key(f) for f in m.factors), m.source)

    def enumerate_morphisms(self, source: ObjectId, max_len: int) -> List[Morphism]:
        """
        All morphisms from source with ν ≤ max_len

        Breadth-first germ multiplication with normal-form deduplication.
        """
        key = (source, max_len)
        if key in self._enumerations:
            return self._enumerations[key]

        start = self.logger.timing_start(f"enumerate_morphisms(ν ≤ {max_len})")
        seen = {self.identity(source)}
        frontier = [self.identity(source)]
        levels = range(max_len)
        if _TQDM_AVAILABLE:
            levels = tqdm(levels, desc="Enumerating", unit="level", disable=not self.show_progress)
        for _ in levels:
            extended = []
            for m in frontier:
                for e in self.germ.from_object[m.target]:
                    if self.germ.is_identity(e):
                        continue
                    n = self.multiply(m, self.element(e))
                    if n.nu <= max_len and n not in seen:
                        seen.add(n)
                        extended.append(n)
            frontier = extended

        result = sorted(seen, key=self.sort_key)
        self._enumerations[key] = result
        self.logger.timing_end(f"enumerate_morphisms(ν ≤ {max_len})", start)
        self.logger.debug(f"{len(result)} morphisms from {self.germ.object_name(source)}")
        return result

    def minimal_common_multiples(self, family: Sequence[Morphism], target: ObjectId,
                                 max_len: int) -> List[Morphism]:
        """
        Shortest minimal common right multiples of a family ending at target (ν ≤ max_len)

        Divisibility-minimal candidates are kept at their smallest ν only, so
        the answer does not grow with max_len once the shortest ones are found.
        """
        self._check_common_source(family)
        candidates = [
            m for m in self.enumerate_morphisms(family[0].source, max_len)
            if m.target == target and all(self.divides_left(f, m) for f in family)
        ]
        minimal = [m for m in candidates
                   if not any(o != m and self.divides_left(o, m) for o in candidates)]
        if not minimal:
            return []
        shortest = min(m.nu for m in minimal)
        return [m for m in minimal if m.nu == shortest]

    def probe_endomorphism_lcms(self, max_len: int) -> List[LcmProbe]:
        """
        Pairs of atoms whose common multiples ending at a fixed object have no least element

        A category can be locally Garside while its endomorphism monoids fail to
        have lcms; this probe reports every such pair found within ν ≤ max_len.
        """
        probes = []
        atoms = germ_atoms(self.germ)
        for source in range(len(self.germ.objects)):
            local = [a for a in atoms if self.germ.source(a) == source]
            for s, t in combinations(local, 2):
                family = [self.element(s), self.element(t)]
                for target in range(len(self.germ.objects)):
                    minimal = self.minimal_common_multiples(family, target, max_len)
                    if len(minimal) > 1:
                        probes.append(LcmProbe(source, (s, t), target, tuple(minimal)))
        return probes

    # === ATOMS ===

    def category_atoms(self, source: ObjectId) -> List[Morphism]:
        return [self.element(a) for a in germ_atoms(self.germ) if self.germ.source(a) == source]

    def atom_factorization(self, m: Morphism) -> Tuple[ElementId, ...]:
        """Peel the smallest left atom repeatedly"""
        atoms = germ_atoms(self.germ)
        result: List[ElementId] = []
        current = m
        while current.factors:
            for s in atoms:
                rest = self._quotient_by_element(s, current)
                if rest is not None:
                    result.append(s)
                    current = rest
                    break
            else:
                raise GermAxiomViolation("morphism has no atom as left divisor",
                                         self.germ.labels(current.factors))
        return tuple(result)

    def apply_automorphism(self, sigma: GermAutomorphism, m: Morphism) -> Morphism:
        return Morphism(sigma.object_map[m.source], tuple(sigma(f) for f in m.factors),
                        sigma.object_map[m.target])

    def fixed_atoms_from_orbits(self, sigma: GermAutomorphism) -> List[Morphism]:
        """Atoms of the σ-fixed subcategory: minimal right lcms of σ-orbits of atoms"""
        germ = self.germ
        orbit_lcms = set()
        for source in range(len(germ.objects)):
            if sigma.object_map[source] != source:
                continue
            for atom in germ_atoms(germ):
                if germ.source(atom) != source:
                    continue
                orbit = [atom]
                while sigma(orbit[-1]) != atom:
                    orbit.append(sigma(orbit[-1]))
                joined = self.lcm([self.element(x) for x in orbit])
                if joined is not None:
                    orbit_lcms.add(joined)
        minimal = [m for m in orbit_lcms
                   if not any(o != m and self.divides_left(o, m) for o in orbit_lcms)]
        return sorted(minimal, key=self.sort_key)

    # === DISPLAY ===

    def format(self, m: Morphism) -> str:
        return "[" + ",".join(self.germ.label(f) for f in m.factors) + "]"

    def format_all(self, morphisms: Iterable[Morphism]) -> str:
        return " ".join(self.format(m) for m in morphisms)
