"""seqcube: complexity analysis of 2^n-periodic binary sequences."""

__version__ = "0.1.0"
