"""Exact verification toolkit for extremal elliptic K3 surfaces, their
weight-3 CM forms, and the tensor L-series of the associated Kummer
threefolds."""

__version__ = "0.1.0"
