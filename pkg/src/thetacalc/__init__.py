"""thetacalc: exact character arithmetic for classical groups, graded super
squares with hard-Lefschetz packaging, a formal convolution/filtration
calculus, and the intersection-theory numerics of theta divisors."""

__version__ = "0.1.0"
