"""Free-by-cyclic groups G_{m,k}: growth of the monodromy, abelianization,
the cube action and its cover, hyperplane pathologies, and the doubled group.
"""
from .family import Endomorphism, Presentation, apply, compose, iterate, make_phi, presentation
from .words import Alphabet, Word, reduce

__all__ = [
    "Alphabet",
    "Endomorphism",
    "Presentation",
    "Word",
    "apply",
    "compose",
    "iterate",
    "make_phi",
    "presentation",
    "reduce",
]
__version__ = "0.1.0"
