"""List homomorphisms to a fixed target graph on geometric intersection graphs."""
__version__ = "0.1.0"
