# Shared modules for totalreal
__version__ = '0.9.0'
