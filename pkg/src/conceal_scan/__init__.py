"""conceal-scan: dual-view analysis of content concealment in HTML email."""

__version__ = "0.1.0"
