"""Functor-morphing images for Borel and general linear groups over prime fields."""

__version__ = "0.1.0"
