"""
stratmoments - expectations of iterated Stratonovich integrals

Exact closed forms, Ito decompositions and a Monte Carlo oracle for
iterated integrals driven by time and Wiener processes.
"""

__version__ = "0.1.0"
