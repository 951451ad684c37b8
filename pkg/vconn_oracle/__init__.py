"""
vconn-oracle: compact vertex-connectivity query oracles.
"""
__version__ = "0.1.0"
