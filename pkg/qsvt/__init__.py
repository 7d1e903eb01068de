"""
QSVT package: noiseless output-state emulation and solution-quality metrics
"""
