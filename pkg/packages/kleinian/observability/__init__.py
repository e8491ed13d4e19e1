from packages.kleinian.observability.metrics import get_registry

__all__ = ["get_registry"]
