"""Weight functions, stable envelopes and their verification at desk scale."""

__version__ = "0.1.0"
