"""
Experiments Package
Batch front end for the symplectic library
"""
