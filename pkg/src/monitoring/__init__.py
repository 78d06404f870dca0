from src.monitoring.metrics import CheckCollector

__all__ = ['CheckCollector']
