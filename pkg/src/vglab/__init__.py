"""Exact computations with quantale-enriched categories and V-groups."""

from .errors import (ActionError, BoundExceeded, CarrierMismatch, GroupError, NonTermination,
                     ParseError, PreconditionError, QuantaleError, VGroupError, VglabError)
from .group import FiniteGroup, GroupAction, GroupHom, group_by_name
from .quantale import LaxHom, Quantale, make_quantale
from .report import LawReport, Verdict
from .vgroup import VGroup, VGroupHom, vgroup_from_delta
from .vrel import VCategory

__version__ = "0.1.0"

__all__ = [
    "ActionError", "BoundExceeded", "CarrierMismatch", "FiniteGroup", "GroupAction",
    "GroupError", "GroupHom", "LawReport", "LaxHom", "NonTermination", "ParseError",
    "PreconditionError", "Quantale", "QuantaleError", "VCategory", "VGroup", "VGroupError",
    "VGroupHom", "VglabError", "Verdict", "group_by_name", "make_quantale",
    "vgroup_from_delta",
]
