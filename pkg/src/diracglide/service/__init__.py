"""HTTP service wrapping the numerical pipelines."""

from .app import app, create_app

__all__ = ["app", "create_app"]
