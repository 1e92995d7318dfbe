from .run import app

__all__ = ["app"]
