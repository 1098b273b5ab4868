"""Logging setup for command-line runs.

Library modules only ever call ``logging.getLogger(__name__)``; this module
routes those records through structlog so batch runs produce JSON lines on
stderr. Standard output stays reserved for reports.
"""

from __future__ import annotations

import logging
import sys

import structlog

_HANDLER: logging.Handler | None = None


def configure_logging(level: str = "INFO", fmt: str = "json") -> None:
    """Install a structlog formatter on the root logger (idempotent)."""
    global _HANDLER

    shared_processors = [
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
    ]
    renderer = structlog.processors.JSONRenderer(sort_keys=True) if fmt == "json" else structlog.dev.ConsoleRenderer()

    formatter = structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=shared_processors,
        processors=[
            structlog.stdlib.ProcessorFormatter.remove_processors_meta,
            renderer,
        ],
    )

    root = logging.getLogger()
    if _HANDLER is None:
        _HANDLER = logging.StreamHandler(sys.stderr)
        root.addHandler(_HANDLER)
    _HANDLER.setFormatter(formatter)
    root.setLevel(level.upper())
