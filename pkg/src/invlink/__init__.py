"""Finite involutive-2-links and the internal groupoids they classify."""
from __future__ import annotations

from .bridge import (
    ClassificationReport,
    InternalInconsistency,
    NotAGroupoid,
    classify,
    contractibility_check,
    induce_functor_images,
    to_groupoid,
    to_link,
)
from .finset import FinMap, FinSet, compose, identity
from .groupoid import GroupoidFunctor, InternalGroupoid, validate_groupoid
from .inv2link import Inv2Link, Inv2LinkMorphism, induce_fbar, validate_link

__all__ = [
    "ClassificationReport",
    "FinMap",
    "FinSet",
    "GroupoidFunctor",
    "InternalGroupoid",
    "InternalInconsistency",
    "Inv2Link",
    "Inv2LinkMorphism",
    "NotAGroupoid",
    "classify",
    "compose",
    "contractibility_check",
    "identity",
    "induce_fbar",
    "induce_functor_images",
    "to_groupoid",
    "to_link",
    "validate_groupoid",
    "validate_link",
]
