"""Colimits and 2-colimits of diagrams of finitely presented groupoids
indexed by the proper subsets of {1..n}."""

from .colimit import colimit_presentation, pushout_decomposition_colim
from .comparison import (comparison_delta, equivalence_report, gamma_k_properties, injectivize_diagram_b2,
                         truncation_check, universal_property_report)
from .descent import DescentCategory, descent_category, descent_pullback_gamma_delta
from .diagram import Diagram, check_strictness, load, restrict, save, validate_diagram
from .errors import (FuelExhausted, FunctorError, GpdError, PresentationError, SchemaError, SmithOverflowError,
                     UnverifiedDiagram, ViewError)
from .finite import FiniteGroup, FiniteGroupoid, FunctorGroupoid, enumerate_functors
from .groupoid import FunctorPresentation, Generator, GroupoidPresentation, Relation, Word, make_functor
from .invariants import invariant_bundle
from .poset import PosetView, Subset
from .setcolim import check_maincor, check_theorem_main, condition_AVU, set_colimit
from .twocolim import grothendieck, pushout_decomposition_2colim, two_colimit_presentation

__version__ = "0.1.0"

__all__ = [
    "Diagram", "DescentCategory", "FiniteGroup", "FiniteGroupoid", "FuelExhausted", "FunctorError",
    "FunctorGroupoid", "FunctorPresentation", "Generator", "GpdError", "GroupoidPresentation", "PosetView",
    "PresentationError", "Relation", "SchemaError", "SmithOverflowError", "Subset", "UnverifiedDiagram",
    "ViewError", "Word", "check_maincor", "check_strictness", "check_theorem_main", "colimit_presentation",
    "comparison_delta", "condition_AVU", "descent_category", "descent_pullback_gamma_delta",
    "enumerate_functors", "equivalence_report", "gamma_k_properties", "grothendieck", "injectivize_diagram_b2",
    "invariant_bundle", "load", "make_functor", "pushout_decomposition_2colim", "pushout_decomposition_colim",
    "restrict", "save", "set_colimit", "truncation_check", "two_colimit_presentation",
    "universal_property_report", "validate_diagram",
]
