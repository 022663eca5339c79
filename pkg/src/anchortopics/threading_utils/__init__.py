"""Background task helpers."""
