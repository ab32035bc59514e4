"""dynmincut: deterministic fully-dynamic minimum proper cut toolkit."""

__version__ = "0.1.0"
