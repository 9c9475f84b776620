"""Coherent arithmetic workbench: proof kernel, evaluator, extraction."""

__version__ = "0.1.0"
