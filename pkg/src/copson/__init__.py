"""Improved Hardy-Copson weights with rigorous certification."""

__version__ = "0.1.0"
