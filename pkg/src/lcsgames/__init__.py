"""Linear constraint system games over Z_d.

Solution groups, group pictures with quantitative proof extraction, quantum
strategies with lemma-level residual checks, the stability isometry, and
explicit robustness bounds, all numerically checkable.
"""

__version__ = "0.1.0"
