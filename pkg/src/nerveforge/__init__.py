"""nerveforge: exact verification engine for nerve/clump/minset computations."""

__version__ = "0.1.0"
