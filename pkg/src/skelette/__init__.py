"""Mirror skeleta of toric Fano orbifolds with exact combinatorics."""

__version__ = "0.1.0"
