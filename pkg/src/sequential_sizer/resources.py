"""CPU detection and worker-count selection."""

import logging
import os
from typing import Optional

import psutil

from .config.defaults import WORKERS_ENV
from .utils.errors import InvalidConfigError

logger = logging.getLogger(__name__)


def get_worker_count() -> int:
    """Get optimal worker count, reserving 1 core for system."""
    total_cores = psutil.cpu_count(logical=False) or 1
    available_cores = max(1, total_cores - 1)
    return max(1, min(available_cores, int(available_cores * 0.75)))


def resolve_workers(requested: Optional[int] = None) -> int:
    """Worker count from the explicit request, the environment, or core detection."""
    if requested is None:
        env_value = os.environ.get(WORKERS_ENV)
        if env_value:
            try:
                requested = int(env_value)
            except ValueError:
                raise InvalidConfigError(WORKERS_ENV, env_value, "must be an integer") from None
    if requested is None:
        workers = get_worker_count()
        logger.debug("Auto-detected %d workers", workers)
        return workers
    if requested < 1:
        raise InvalidConfigError("workers", requested, "must be at least 1")
    return requested
