"""
Spectral package: eigenvalue-aware polynomials and corrections
"""
