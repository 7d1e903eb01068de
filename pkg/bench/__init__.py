"""
Bench package: experiment configuration, table and figure runners, invariant checks and the CLI
"""
