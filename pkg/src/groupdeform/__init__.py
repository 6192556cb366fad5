"""Exact deformations of finite group algebras and their separability idempotents."""

__version__ = "0.1.0"
