"""Static-figure rendering for hull benchmark CSVs."""

__version__ = "0.1.0"
