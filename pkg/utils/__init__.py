"""
Utils package for the spectral QSVT toolkit
"""
