"""
bellmix: entanglement of two-qubit Bell mixtures by pure and mixed minimization.
"""

__version__ = "0.1.0"
