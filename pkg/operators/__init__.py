"""
Operators package: Poisson model problems, load vectors and spectrum perturbation
"""
