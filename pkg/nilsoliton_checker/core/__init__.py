"""Core exact-arithmetic analysis modules"""
