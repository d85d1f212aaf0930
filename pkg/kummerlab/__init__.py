"""kummerlab: smooth/rough binomial splits, lcm-seed constructions and their finite checks."""

__version__ = "1.0.0"
