"""
Basepoly package: base polynomial approximations to 1/x on [a, 1]
"""
