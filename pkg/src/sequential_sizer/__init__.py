"""Sequential Sizer - sequential sample-size determination for bounded-risk regression."""

__version__ = "0.1.0"
