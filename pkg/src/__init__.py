"""permstats: descent polynomials and bijections for pattern-avoiding permutations."""

__version__ = "0.1.0"
