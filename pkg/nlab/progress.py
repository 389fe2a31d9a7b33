"""
Progress output for long verification runs.
Everything goes to stderr; stdout is reserved for results and JSON reports.
"""

import sys
from datetime import datetime

from tqdm import tqdm


def print_progress(message, emoji="📊"):
    """Print progress with timestamp"""
    timestamp = datetime.now().strftime("%H:%M:%S")
    print(f"[{timestamp}] {emoji} {message}", file=sys.stderr)
    sys.stderr.flush()


def trial_bar(iterable, desc, enabled=True):
    """Wrap a trial range in a tqdm bar (no-op when disabled)"""
    return tqdm(
        iterable,
        desc=desc,
        file=sys.stderr,
        disable=not enabled,
        leave=False,
        bar_format="{l_bar}{bar}| {n_fmt}/{total_fmt} [{elapsed}<{remaining}, {rate_fmt}]",
    )
