"""
Core
Exception hierarchy and numerics configuration.
"""
