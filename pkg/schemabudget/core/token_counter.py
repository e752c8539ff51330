"""Deterministic byte-ratio token counting."""

import csv
import logging
import math
import re
import unicodedata
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

from ..models.budget import DEFAULT_PROFILE, TokenCountProfile
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

_WHITESPACE = re.compile(r"\s")


@lru_cache(maxsize=64)
def _ratio(bytes_per_token: float) -> Fraction:
    return Fraction(bytes_per_token).limit_denominator(1_000_000)


def _encoded(text: str) -> bytes:
    return unicodedata.normalize("NFC", text).encode("utf-8")


def byte_length(text: str) -> int:
    """UTF-8 length of the NFC-normalized text."""
    return len(_encoded(text))


def tokens_for_bytes(n_bytes: int, profile: TokenCountProfile = DEFAULT_PROFILE) -> int:
    """Token count of a text whose normalized UTF-8 length is ``n_bytes``."""
    if n_bytes <= 0:
        return 0
    return math.ceil(Fraction(n_bytes) / _ratio(profile.bytes_per_token))


def count_tokens(text: str, profile: TokenCountProfile = DEFAULT_PROFILE) -> int:
    """Count tokens as ceil(normalized byte length / bytes_per_token)."""
    if not text:
        return 0
    return tokens_for_bytes(byte_length(text), profile)


def count_message(texts: Iterable[str], profile: TokenCountProfile = DEFAULT_PROFILE) -> int:
    """Count a message made of segments, adding the per-message overhead to each."""
    return sum(count_tokens(text, profile) + profile.per_message_overhead for text in texts)


def calibrate(
    samples: Sequence[Tuple[str, int]], base: TokenCountProfile = DEFAULT_PROFILE
) -> TokenCountProfile:
    """Fit bytes_per_token to reference counts; the message overhead is kept.

    Args:
        samples: (text, reference token count) pairs
        base: Profile whose per_message_overhead is carried over

    Returns:
        Profile with bytes_per_token = total bytes / total reference tokens

    Raises:
        ConfigError: No samples, or all reference counts are zero
    """
    total_tokens = sum(count for _, count in samples)
    if not samples or total_tokens <= 0:
        raise ConfigError("calibration needs at least one sample with a positive token count")
    total_bytes = sum(byte_length(text) for text, _ in samples)
    ratio = Fraction(total_bytes, total_tokens)
    logger.info(
        f"Calibrated counter on {len(samples)} samples: {float(ratio):.4f} bytes/token"
    )
    return base.model_copy(update={"bytes_per_token": float(ratio)})


def load_calibration_samples(csv_path: str) -> List[Tuple[str, int]]:
    """Read a calibration CSV of (text file path, reference token count) rows.

    Relative paths resolve against the CSV's directory. A header row is skipped.
    """
    path = Path(csv_path)
    if not path.exists():
        raise ConfigError(f"calibration file not found: {csv_path}")

    samples: List[Tuple[str, int]] = []
    with path.open(newline="", encoding="utf-8") as handle:
        for line_no, row in enumerate(csv.reader(handle), start=1):
            if not row or not row[0].strip():
                continue
            if len(row) < 2:
                raise ConfigError(f"{csv_path}:{line_no}: expected 'path,count'")
            try:
                count = int(row[1])
            except ValueError:
                if line_no == 1:
                    continue
                raise ConfigError(f"{csv_path}:{line_no}: token count is not an integer")
            text_path = Path(row[0].strip())
            if not text_path.is_absolute():
                text_path = path.parent / text_path
            try:
                samples.append((text_path.read_text(encoding="utf-8"), count))
            except OSError as e:
                raise ConfigError(f"{csv_path}:{line_no}: cannot read {text_path}: {e}")
    return samples


def truncate_to_tokens(text: str, max_tokens: int, profile: TokenCountProfile = DEFAULT_PROFILE) -> str:
    """Longest whitespace-bounded prefix of ``text`` that counts at most ``max_tokens``."""
    if max_tokens <= 0:
        return ""
    normalized = unicodedata.normalize("NFC", text)
    encoded = normalized.encode("utf-8")
    max_bytes = math.floor(Fraction(max_tokens) * _ratio(profile.bytes_per_token))
    if len(encoded) <= max_bytes:
        return normalized

    head = encoded[:max_bytes].decode("utf-8", errors="ignore")
    following = normalized[len(head) : len(head) + 1]
    if following and _WHITESPACE.match(following):
        return head.rstrip()

    cut = max((match.start() for match in _WHITESPACE.finditer(head)), default=-1)
    if cut < 0:
        return ""
    return head[:cut].rstrip()
