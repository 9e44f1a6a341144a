"""Splicing systems on linear, circular and flat words."""

from .splicing import (
    FlatRule,
    GenerationBudget,
    GenerationResult,
    HeadTriple,
    Kind,
    LinearRule,
    PixtonRule,
    SplicingSystem,
    derives,
    generate,
    normalize,
)
from .sysfile import parse_system, parse_system_text, print_system
from .words import CircWord

__version__ = "0.1.0"

__all__ = [
    "CircWord",
    "FlatRule",
    "GenerationBudget",
    "GenerationResult",
    "HeadTriple",
    "Kind",
    "LinearRule",
    "PixtonRule",
    "SplicingSystem",
    "derives",
    "generate",
    "normalize",
    "parse_system",
    "parse_system_text",
    "print_system",
]
