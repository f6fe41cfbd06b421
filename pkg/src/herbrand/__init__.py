"""Proof-term kernel for intuitionistic first-order logic with restricted
excluded middle: checking, normalization, and Herbrand witness extraction."""

__version__ = "0.1.0"
