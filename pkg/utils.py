"""
Utility Functions Module

Shared helpers for the Heisenberg-Noether engine and its command-line
interface: logging setup, output writing, input cleaning, rational parsing
and ordered thread fan-out.

Performance:
- Compiled regex pattern for input cleaning
- Singleton logger pattern
- ThreadPoolExecutor fan-out with deterministic result order

Author: Heisenberg-Noether Team
Version: 1.0.0
"""

import logging
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Iterable, List, Optional, TypeVar

import sympy

# Matches non-printable ASCII characters
_PRINTABLE_CHARS = re.compile(r'[^\x20-\x7E]')

# Integer or p/q literal, optional sign, surrounding whitespace allowed
_RATIONAL_LITERAL = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$')

T = TypeVar('T')
R = TypeVar('R')


def clean_expression_text(user_input: Any, max_length: int = 4000) -> Optional[str]:
    """
    Clean expression text coming from the command line.

    Removes non-printable characters and truncates overly long input so the
    parser only ever sees printable ASCII.

    Args:
        user_input (any): Raw input; anything but a string is rejected
        max_length (int, optional): Maximum kept length. Defaults to 4000.

    Returns:
        Optional[str]: Cleaned text, or None if the input is not a string

    Example:
        >>> clean_expression_text("u_x\\x00 + u_y")
        'u_x + u_y'
    """
    if not isinstance(user_input, str):
        return None

    if len(user_input) > max_length:
        user_input = user_input[:max_length]

    return _PRINTABLE_CHARS.sub('', user_input)


def parse_rational(text: str) -> sympy.Rational:
    """
    Parse an exact rational literal such as ``2``, ``-1`` or ``1/2``.

    Args:
        text (str): Literal to parse

    Returns:
        sympy.Rational: The exact value

    Raises:
        ValueError: If the text is not an integer or p/q literal, or q is zero.
            Decimal notation is rejected because all arithmetic is exact.
    """
    match = _RATIONAL_LITERAL.match(text or '')
    if not match:
        raise ValueError(f"'{text}' is not an exact rational (use an integer or p/q)")

    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"'{text}' has a zero denominator")

    return sympy.Rational(int(numerator), int(denominator or 1))


def write_output(content: str, out_path: Optional[str] = None) -> None:
    """
    Print a report or write it to a file.

    Args:
        content (str): Report text
        out_path (Optional[str]): Target file; stdout when None. Parent
            directories are created as needed.
    """
    if not out_path:
        print(content)
        return

    path = Path(out_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', buffering=8192) as f:
        f.write(content)
        if not content.endswith('\n'):
            f.write('\n')
    logging.getLogger(__name__).info(f"Report written to {path}")


def run_concurrently(func: Callable[[T], R], items: Iterable[T], max_workers: int = 4) -> List[R]:
    """
    Apply ``func`` to every item on a thread pool and keep the input order.

    Args:
        func: Pure function to apply
        items: Work items
        max_workers: Thread count; 1 runs inline

    Returns:
        List of results, one per item, in input order
    """
    indexed = list(enumerate(items))
    if max_workers <= 1 or len(indexed) <= 1:
        return [func(item) for _, item in indexed]

    def process_single(args):
        index, item = args
        return index, func(item)

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        results = list(executor.map(process_single, indexed))

    results.sort(key=lambda pair: pair[0])
    return [result for _, result in results]


# Singleton logger instance
_logger: Optional[logging.Logger] = None


def setup_logging(log_file: str = 'heisenberg_noether.log', debug: bool = False,
                  verbose: bool = False) -> logging.Logger:
    """
    Setup logging with a singleton pattern.

    Configures the root logger once with a file handler and a console handler
    (stderr, so reports on stdout stay clean). Library modules only call
    ``logging.getLogger(__name__)``; handlers are installed here.

    Args:
        log_file (str, optional): Path to the log file. Defaults to 'heisenberg_noether.log'.
        debug (bool, optional): Log at DEBUG instead of INFO level.
        verbose (bool, optional): Echo progress lines to the console; otherwise
            the console only shows warnings and errors.

    Returns:
        logging.Logger: Configured logger instance

    Example:
        >>> logger = setup_logging('run.log')
        >>> logger.info("Classification started")
    """
    global _logger

    if _logger is None:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(logging.NOTSET if verbose else logging.WARNING)
        logging.basicConfig(
            level=logging.DEBUG if debug else logging.INFO,
            format='%(asctime)s - %(levelname)s - %(message)s',
            handlers=[
                logging.FileHandler(log_file, mode='a'),
                console
            ]
        )
        _logger = logging.getLogger('heisenberg_noether')

    return _logger
