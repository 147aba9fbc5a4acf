"""Nilsoliton Checker - exact soliton analysis of nilpotent Lie algebras"""

__version__ = "1.0.0"
