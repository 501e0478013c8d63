#!/usr/bin/env python3
"""
Error Handler - Algebra Errors and Enhanced Messages
Exception hierarchy for germ/category computations plus a knowledge base
that turns error codes into readable explanations for the CLI
"""

from typing import Any, Dict, List, Optional, Tuple
from enum import Enum

from .logger import Logger


class ErrorCategory(Enum):
    """Error categories for better organization"""
    INPUT = "Input Format"
    GERM = "Germ Axioms"
    CATEGORY = "Category Computation"
    GARSIDE = "Garside Structure"
    COXETER = "Coxeter System"
    CONJUGACY = "Conjugacy Category"
    DECOMPOSITION = "Decomposition"
    RESOURCES = "Resource Limits"
    UNKNOWN = "Unknown"


class GarsideError(Exception):
    """
    Base class of every error raised by the library

    Each subclass carries a stable ``code`` that keys the knowledge base
    below, and an optional witness tuple reproducing the failure.
    """

    code = "unknown"

    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness

    def context(self) -> Dict[str, Any]:
        details: Dict[str, Any] = {"message": self.message}
        if self.witness is not None:
            details["witness"] = self.witness
        return details


class MalformedSpec(GarsideError):
    code = "malformed_spec"


class GermAxiomViolation(GarsideError):
    code = "germ_axiom_violation"


class NotClosed(GarsideError):
    code = "not_closed"


class NotAnAutomorphism(GarsideError):
    code = "not_an_automorphism"


class SourceTargetMismatch(GarsideError):
    code = "source_target_mismatch"


class NotADivisor(GarsideError):
    code = "not_a_divisor"


class NoGlobalLcm(GarsideError):
    code = "no_global_lcm"


class PhiNotBijective(GarsideError):
    code = "phi_not_bijective"


class NotSpherical(GarsideError):
    code = "not_spherical"


class InfiniteWithoutBound(GarsideError):
    code = "infinite_without_bound"


class InfiniteDifference(GarsideError):
    code = "infinite_difference"


class NotConjugating(GarsideError):
    code = "not_conjugating"


class FNotProductPreserving(GarsideError):
    code = "f_not_product_preserving"


class BaseNotTwoSided(GarsideError):
    code = "base_not_two_sided"


class NoMorphism(GarsideError):
    code = "no_morphism"


class TooLarge(GarsideError):
    code = "too_large"


class EnhancedError:
    """
    Enhanced error with context and suggestions

    Provides user-friendly error messages with:
    - Clear problem description
    - Likely cause
    - Suggested fix
    - Related documentation
    """

    # Error knowledge base
    ERROR_DATABASE: Dict[str, Dict[str, Any]] = {
        "malformed_spec": {
            "category": ErrorCategory.INPUT,
            "title": "Malformed Germ Description",
            "description": "The germ file or word could not be turned into a germ table",
            "causes": [
                "A product triple names an element that is not declared",
                "A product a·b is listed although target(a) differs from source(b)",
                "An object has no identity or several identities",
                "A word uses an element name unknown to the germ"
            ],
            "solutions": [
                "1. Check every name in 'products' against 'elements'",
                "2. Make sure each object has exactly one element marked \"identity\": true",
                "3. Words are whitespace-separated element names: \"a b a\""
            ],
            "docs": "See: docs/GERM_FILE_FORMAT.md"
        },

        "germ_axiom_violation": {
            "category": ErrorCategory.GERM,
            "title": "Germ Axiom Violated",
            "description": "The product table breaks the identity laws or germ associativity, "
                           "or a lattice operation met a pair without least multiple",
            "causes": [
                "(ab)c is defined but a(bc) is not, or the two differ",
                "Two elements have several minimal common multiples in the germ"
            ],
            "solutions": [
                "1. Run 'garside check <file>' to see all axiom verdicts with witnesses",
                "2. Add the missing product triples reported in the witness"
            ],
            "docs": "See: docs/GERM_FILE_FORMAT.md"
        },

        "not_closed": {
            "category": ErrorCategory.GERM,
            "title": "Subset Not Closed Under Product",
            "description": "A product of two chosen elements lands outside the chosen subset",
            "causes": ["The subset misses the product reported in the witness"],
            "solutions": ["1. Add the escaping product, or remove one of its factors"],
            "docs": None
        },

        "not_an_automorphism": {
            "category": ErrorCategory.GERM,
            "title": "Map Is Not a Germ Automorphism",
            "description": "The map is not bijective or does not commute with the product table",
            "causes": [
                "Two elements share an image",
                "σ(a)σ(b) is undefined although ab is defined (or conversely)"
            ],
            "solutions": ["1. Check the witness pair against the product table"],
            "docs": None
        },

        "source_target_mismatch": {
            "category": ErrorCategory.CATEGORY,
            "title": "Morphisms Do Not Compose",
            "description": "The target of the first morphism is not the source of the second",
            "causes": ["Wrong operand order", "Words over different objects"],
            "solutions": ["1. Check sources and targets of both operands"],
            "docs": None
        },

        "not_a_divisor": {
            "category": ErrorCategory.CATEGORY,
            "title": "Not a Left Divisor",
            "description": "A left quotient was requested for a pair x, y with x not dividing y",
            "causes": ["x ⋠ y"],
            "solutions": ["1. Test with divides_left before asking for the quotient"],
            "docs": None
        },

        "no_global_lcm": {
            "category": ErrorCategory.GARSIDE,
            "title": "No Garside Element",
            "description": "The germ elements out of an object have no common right multiple",
            "causes": ["The category is locally Garside but not Garside"],
            "solutions": [
                "1. Use the lattice operations only (lcm returns None for such pairs)",
                "2. Restrict to a subgerm whose elements admit a common multiple"
            ],
            "docs": None
        },

        "phi_not_bijective": {
            "category": ErrorCategory.GARSIDE,
            "title": "Φ Is Not Bijective",
            "description": "The functor Φ built from Δ is not a bijection of objects or simples",
            "causes": ["The structure is left Garside only"],
            "solutions": ["1. Only left-sided statements apply to this category"],
            "docs": None
        },

        "not_spherical": {
            "category": ErrorCategory.COXETER,
            "title": "Parabolic Subgroup Is Infinite",
            "description": "A longest element was requested for an infinite parabolic subgroup",
            "causes": ["The Coxeter graph restricted to I is not of finite type"],
            "solutions": ["1. Choose a spherical subset I"],
            "docs": None
        },

        "infinite_without_bound": {
            "category": ErrorCategory.COXETER,
            "title": "Infinite Coxeter Group",
            "description": "The full lift germ was requested for an infinite Coxeter group",
            "causes": ["The matrix has an ∞ entry or is not of finite type"],
            "solutions": ["1. Pass a length bound: 'garside coxeter A~1 --max-length 4'"],
            "docs": None
        },

        "infinite_difference": {
            "category": ErrorCategory.COXETER,
            "title": "Non-Spherical Extension",
            "description": "v(α, I) was requested while I ∪ {α} is not spherical",
            "causes": ["Only the spherical case is implemented"],
            "solutions": ["1. Work with a finite Coxeter system or a smaller I"],
            "docs": None
        },

        "not_conjugating": {
            "category": ErrorCategory.CONJUGACY,
            "title": "Morphism Is Not Conjugating",
            "description": "x does not left-divide w·x for some member w of the family",
            "causes": ["x is not a morphism of the conjugacy category out of the family"],
            "solutions": ["1. List the conjugating simples with 'garside conj <file> <family>'"],
            "docs": None
        },

        "f_not_product_preserving": {
            "category": ErrorCategory.DECOMPOSITION,
            "title": "Endomap Does Not Preserve Products",
            "description": "The map F given for Pₙ(F) is not a germ endomorphism",
            "causes": ["F(a)F(b) differs from F(ab) for the witness pair"],
            "solutions": ["1. Check the element map against the product table"],
            "docs": None
        },

        "base_not_two_sided": {
            "category": ErrorCategory.DECOMPOSITION,
            "title": "Base Germ Is One-Sided",
            "description": "The α formula on grid morphisms needs left lcms in the base germ",
            "causes": ["The opposite germ fails one of the locally Garside checks"],
            "solutions": ["1. Use category alpha on the Pₙ germ instead"],
            "docs": None
        },

        "no_morphism": {
            "category": ErrorCategory.DECOMPOSITION,
            "title": "No Morphism Between Path Objects",
            "description": "The two path objects are not connected by a morphism",
            "causes": [
                "The products of the two paths differ",
                "The target has a smaller degree than the source",
                "The grid recursion does not close up"
            ],
            "solutions": ["1. Compare the normal forms of both products"],
            "docs": None
        },

        "too_large": {
            "category": ErrorCategory.RESOURCES,
            "title": "Computation Exceeds Budget",
            "description": "An enumeration went past its configured budget",
            "causes": ["The element is too long for exhaustive enumeration"],
            "solutions": [
                "1. Raise eposet_vertex_budget / coxeter_element_guard in garside_config.yaml",
                "2. Or set GARSIDE_VERTEX_BUDGET in the environment"
            ],
            "docs": None
        },
    }

    @staticmethod
    def get_error_details(error_code: str) -> Optional[Dict[str, Any]]:
        """Get error details from the knowledge base"""
        return EnhancedError.ERROR_DATABASE.get(error_code)

    @staticmethod
    def format_error(error_code: str, context: Optional[Dict[str, Any]] = None) -> str:
        """
        Format enhanced error message

        Args:
            error_code: Error code from knowledge base
            context: Additional context (message, witness, ...)

        Returns:
            Formatted error message
        """
        error = EnhancedError.get_error_details(error_code)

        if not error:
            message = (context or {}).get("message", error_code)
            return f"❌ ERROR: {message}"

        lines = []
        lines.append("=" * 70)
        lines.append(f"❌ {error['title'].upper()}")
        lines.append(f"   Category: {error['category'].value}")
        lines.append("=" * 70)
        lines.append(f"\n📋 PROBLEM:")
        lines.append(f"   {error['description']}")

        if context:
            lines.append(f"\n🔍 DETAILS:")
            for key, value in context.items():
                lines.append(f"   {key}: {value}")

        if error['causes']:
            lines.append(f"\n💡 LIKELY CAUSES:")
            for cause in error['causes']:
                lines.append(f"   • {cause}")

        if error['solutions']:
            lines.append(f"\n✅ HOW TO FIX:")
            for solution in error['solutions']:
                lines.append(f"   {solution}")

        if error.get('docs'):
            lines.append(f"\n📚 DOCUMENTATION:")
            lines.append(f"   {error['docs']}")

        lines.append("\n" + "=" * 70)

        return "\n".join(lines)

    @staticmethod
    def print_error(error_code: str, context: Optional[Dict[str, Any]] = None,
                    logger: Optional[Logger] = None) -> None:
        """
        Print enhanced error message

        Args:
            error_code: Error code from knowledge base
            context: Additional context
            logger: Logger instance (optional)
        """
        message = EnhancedError.format_error(error_code, context)

        if logger:
            for line in message.split('\n'):
                if line.strip():
                    logger.error(line)
        else:
            print(message)

    @staticmethod
    def suggest_next_steps(error_code: str) -> List[str]:
        """
        Get suggested next steps for an error

        Args:
            error_code: Error code

        Returns:
            List of suggested actions
        """
        error = EnhancedError.get_error_details(error_code)
        if not error or not error.get('solutions'):
            return ["Run with --verbose for more details"]

        return error['solutions'][:3]


# === HELPER FUNCTIONS ===

def explain(error: GarsideError, logger: Optional[Logger] = None) -> None:
    """
    Quick helper to show an enhanced message for a raised error

    Args:
        error: The caught error
        logger: Logger to report through (prints to stdout when omitted)
    """
    EnhancedError.print_error(error.code, error.context(), logger)


def get_error_suggestions(error_code: str) -> List[str]:
    """
    Quick helper to get error suggestions

    Args:
        error_code: Error code

    Returns:
        List of suggestions
    """
    return EnhancedError.suggest_next_steps(error_code)
