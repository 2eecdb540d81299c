"""dcc — classification of divisible binary linear codes.

Library and command-line tool for exhaustively classifying binary linear
codes whose nonzero weights are multiples of a power of two, under a
prescribed minimum distance or an explicit allowed weight set, together with
the supporting spectral identities, length-feasibility tests, and the
0/1-feasibility analysis of one-step code extensions.
"""
from .gf2core import BinaryCode, CodeError, code_from_multiset

__version__ = "0.1.0"

__all__ = ["BinaryCode", "CodeError", "code_from_multiset", "__version__"]
