"""Exact coradical, polynomial and primitive filtrations of Hopf algebras and gr^op-modules."""

__version__ = "0.1.0"
