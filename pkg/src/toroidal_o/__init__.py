"""Category O for polynomial toroidal Lie algebras L(g, X_n), X in {W, S, H}, computed exactly."""

from .characters import GradedCharacter, LabeledWeight
from .shenlarsson import SLModule
from .toroidal import AlgebraConfig

__all__ = ["AlgebraConfig", "GradedCharacter", "LabeledWeight", "SLModule"]
