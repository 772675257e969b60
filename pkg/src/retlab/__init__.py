"""Workbench for exact counting of graph retractions/homomorphisms and for
classifying the approximation complexity of counting retractions to
square-free target graphs (FP / #BIS / #SAT)."""

__version__ = "0.1.0"
