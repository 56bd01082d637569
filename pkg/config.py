"""
Configuration Management Module

This module handles configuration loading for the Heisenberg-Noether engine.
Settings come from environment variables, optionally seeded from a local
.env file, and are exposed as module-level constants.

Features:
- Cached .env loading (the file is read once per process)
- Typed defaults for every setting
- Validation with clear error messages
- One-shot overrides for command-line flags

Settings:
- HN_MAX_ORDER: highest jet order a coordinate may carry
- HN_BASIS_DEGREE: polynomial degree bound of the potential reconstruction basis
- HN_FORMAT: default output format of the command-line interface
- HN_MAX_WORKERS: thread fan-out for bracket tables and classifications
- HN_LOG_FILE, DEBUG, VERBOSE_LOGGING: logging controls

Author: Heisenberg-Noether Team
Version: 1.0.0
"""

import os
from pathlib import Path
from functools import lru_cache
from typing import Optional


@lru_cache(maxsize=1)
def load_env_file() -> bool:
    """
    Load environment variables from a .env file in the working directory.

    The file is read once and cached. Lines are ``KEY=VALUE`` pairs; blank lines
    and lines starting with '#' are skipped. Values already present in the
    environment are overwritten, so a .env file acts as a local override.

    Returns:
        bool: True once loading has been attempted (the file may be absent)

    File Format:
        ```
        # maximal jet order
        HN_MAX_ORDER=4
        HN_FORMAT=latex
        ```
    """
    env_file = Path('.env')

    if env_file.exists():
        try:
            with open(env_file, 'r', encoding='utf-8', buffering=4096) as f:
                content = f.read()

            for line_num, line in enumerate(content.splitlines(), 1):
                line = line.strip()

                if not line or line.startswith('#'):
                    continue

                if '=' in line:
                    try:
                        key, value = line.split('=', 1)
                        key = key.strip()
                        value = value.strip()
                        if key:
                            os.environ[key] = value
                    except Exception as e:
                        print(f"Warning: Failed to parse line {line_num} in .env file: {e}")

        except Exception as e:
            print(f"Warning: Failed to read .env file: {e}")

    return True


def _int_setting(name: str, default: int) -> int:
    """Read an integer setting; unparsable values fall back to the default and are caught by validate_config."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw.strip())
    except ValueError:
        return -1


load_env_file()

# =============================================================================
# CONFIGURATION VARIABLES
# =============================================================================

MAX_JET_ORDER = _int_setting('HN_MAX_ORDER', 4)
"""int: Highest total order of a jet coordinate such as u_xxyt.

Defaults to 4. Euler operators applied to divergences of first-order vectors
create fourth-order coordinates before they cancel, so 4 is the smallest
value that runs the full acceptance suite. Exceeding it raises JetOrderError.
"""

BASIS_DEGREE = _int_setting('HN_BASIS_DEGREE', 6)
"""int: Maximal total degree in (x, y, t) of the potential reconstruction basis.

Reconstruction tries degrees 0, 1, ... up to this bound and stops at the first
consistent system.
"""

DEFAULT_FORMAT = os.getenv('HN_FORMAT', 'text').strip().lower()
"""str: Default output format of cli.py ('text', 'json' or 'latex')."""

MAX_WORKERS = min(_int_setting('HN_MAX_WORKERS', 4), 8)
"""int: Worker threads for bracket tables, classifications and verifications.

Capped at 8. Results are always re-sorted into input order.
"""

LOG_FILE = os.getenv('HN_LOG_FILE', 'heisenberg_noether.log')
"""str: Log file written by utils.setup_logging()."""

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'
"""bool: Enable DEBUG level logging (per-bracket and per-degree traces)."""

VERBOSE_LOGGING = os.getenv('VERBOSE_LOGGING', 'False').lower() == 'true'
"""bool: Echo progress lines of long runs (selftest, classification) to the console."""

OUTPUT_FORMATS = ('text', 'json', 'latex')
"""tuple: Output formats understood by every printer and the CLI."""


def validate_config() -> bool:
    """
    Validate the current configuration values.

    Returns:
        bool: True if every setting is usable

    Raises:
        ValueError: If a numeric setting is not an integer or lies out of range,
            or if the default format is unknown

    Example:
        >>> try:
        ...     validate_config()
        ... except ValueError as e:
        ...     print(f"Configuration error: {e}")
    """
    if not 2 <= MAX_JET_ORDER <= 8:
        raise ValueError(
            f"HN_MAX_ORDER must be an integer between 2 and 8, got {MAX_JET_ORDER}. "
            "The Euler-operator checks need at least order 4."
        )

    if not 0 <= BASIS_DEGREE <= 10:
        raise ValueError(
            f"HN_BASIS_DEGREE must be an integer between 0 and 10, got {BASIS_DEGREE}."
        )

    if MAX_WORKERS < 1:
        raise ValueError(f"HN_MAX_WORKERS must be a positive integer, got {MAX_WORKERS}.")

    if DEFAULT_FORMAT not in OUTPUT_FORMATS:
        raise ValueError(
            f"HN_FORMAT must be one of {', '.join(OUTPUT_FORMATS)}, got '{DEFAULT_FORMAT}'."
        )

    return True


def apply_overrides(max_order: Optional[int] = None, basis_degree: Optional[int] = None) -> None:
    """
    Apply command-line overrides to the module settings and re-validate.

    Must run before any computation: results cached per nonlinearity case are
    computed with the values in force at that time.

    Args:
        max_order: New jet order bound, or None to keep the current one
        basis_degree: New reconstruction degree bound, or None to keep it

    Raises:
        ValueError: If the resulting configuration is invalid
    """
    global MAX_JET_ORDER, BASIS_DEGREE

    previous = (MAX_JET_ORDER, BASIS_DEGREE)
    if max_order is not None:
        MAX_JET_ORDER = max_order
    if basis_degree is not None:
        BASIS_DEGREE = basis_degree

    try:
        validate_config()
    except ValueError:
        MAX_JET_ORDER, BASIS_DEGREE = previous
        raise
