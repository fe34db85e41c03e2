"""
dynspars - dynamic r-divisions and vertex sparsifiers - core package
"""

__version__ = "0.1.0"
