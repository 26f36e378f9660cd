"""Workbench for doubled-edge plane trees, their slide moves, and the
exact path-algebra, homotopy-category, twist and braid-group calculus
attached to them."""

__all__ = [
    "algebra",
    "artin",
    "cli",
    "homotopy",
    "linalg",
    "mutation",
    "standardseq",
    "trees",
    "twists",
]
