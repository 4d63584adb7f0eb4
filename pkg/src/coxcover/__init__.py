"""Workbench for graph Coxeter presentations, fiber evaluation, and
nilpotent normal-form arithmetic.

The package is organized bottom-up:

- words / rng: free-group words and the deterministic generator.
- presentation: finitely presented groups and simplification moves.
- coset: bounded coset enumeration, used as an independent oracle.
- graphs / torus: multigraphs, spanning data, reflection-group
  presentations, and the bundled 18-plane / 27-line configuration.
- semidirect: the permutation-on-indices product and the edge
  evaluation map into it.
- zmodule: Smith normal form and abelian-group invariants.
- kstar: collection to normal form in the nilpotent quotients, with
  the structural check suites.
- cli: the `coxcover` command.
"""

__version__ = "0.1.0"

from .kstar import KStarElement, ThetaVector, kstar_collect
from .presentation import Presentation, parse_presentation
from .words import parse_word

__all__ = [
    "KStarElement",
    "Presentation",
    "ThetaVector",
    "kstar_collect",
    "parse_presentation",
    "parse_word",
    "__version__",
]
