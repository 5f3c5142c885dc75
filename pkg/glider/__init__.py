"""
Glider representations over chains of classical Lie algebras

Exact matrix models, embeddings and their embedding elements, Verma gliders,
and nilpotent orbits reached by embedding elements.
"""

__version__ = "0.1.0"
