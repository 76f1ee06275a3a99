"""Cyclic actions on words over Z/mZ, cores, partitioned words and m-Shi regions."""

__version__ = "0.1.0"
