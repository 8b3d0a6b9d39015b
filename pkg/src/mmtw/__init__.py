"""Minor-matching hypertree width toolkit."""

__version__ = "0.1.0"
