"""Type D structures over the dotted cobordism algebra of four-ended tangles:
cabling, reduction, pairing, and curve classification, with a ``bnc`` CLI."""

__version__ = "0.1.0"
