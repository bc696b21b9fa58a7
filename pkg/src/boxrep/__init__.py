"""Box and segment representations of graphs, with verification."""

__version__ = "0.1.0"
