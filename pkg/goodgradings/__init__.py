"""goodgradings: restricted root systems, good grading polytopes and Dynkin pyramids, in exact arithmetic."""

__version__ = "0.1.0"
