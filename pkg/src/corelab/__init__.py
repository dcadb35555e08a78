"""corelab: exact cores and graded cores of ideals in weighted graded rings."""

__version__ = "0.1.0"
