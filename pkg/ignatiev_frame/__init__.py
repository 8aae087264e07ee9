"""Ignatiev frame toolkit: ordinal arithmetic, the Ignatiev algebra and its universal frame."""
