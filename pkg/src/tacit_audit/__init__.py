"""tacit-audit: scan statechart/rule models for candidate hidden assumptions."""

__version__ = "0.1.0"
