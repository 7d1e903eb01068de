"""
Numerics package: dense linear algebra and Chebyshev recurrences
"""
