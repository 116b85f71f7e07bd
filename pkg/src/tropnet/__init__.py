"""Certified computations for tropical arguments about (k,d)-nets of lines."""

__version__ = "0.1.0"
