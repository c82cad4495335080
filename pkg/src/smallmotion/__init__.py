"""Permutation groups with small minimal degree and vertex-transitive
graphs with small motion: constructions, classifiers, and verification."""

__version__ = "0.1.0"
