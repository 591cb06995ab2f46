"""Desk-scale laboratory for crossed modules of finite groups.

Dense-table groups, reduced words in free products, internal actions via
their action cores, crossed-module axiom checkers, split-extension
machinery, section-constructing lifting algorithms with verifiable
certificates, and a Z/4Z-module lab for projectivity transfer experiments.
"""

__version__ = "0.1.0"
