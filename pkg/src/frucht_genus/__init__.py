"""Graphs with prescribed automorphism group and large genus.

Builds asymmetric gadget graphs over hypercubes and group-realising graphs
over coloured Cayley digraphs, and certifies their automorphism groups and
genus bounds computationally.
"""

__version__ = "0.1.0"
