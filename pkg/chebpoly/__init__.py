"""
Chebpoly package: the odd Chebyshev polynomial value type
"""
