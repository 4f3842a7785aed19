"""UTC second counts rendered as long-form GMT dates."""

from datetime import datetime, timezone


def ordinal(day):
    if 11 <= day % 100 <= 13:
        return f"{day}th"
    return f"{day}{ {1: 'st', 2: 'nd', 3: 'rd'}.get(day % 10, 'th') }"


def format_utc(seconds):
    """``1611245000 -> 'Thursday January 21st 2021 16:03:20'``."""
    if seconds < 0:
        raise ValueError("seconds must be nonnegative")
    t = datetime.fromtimestamp(int(seconds), tz=timezone.utc)
    return f"{t:%A} {t:%B} {ordinal(t.day)} {t.year} {t:%H:%M:%S}"
