"""Append-only JSON Lines store of episode records."""

import asyncio
import json
import logging
from pathlib import Path
from typing import Iterator, List, Set, Union

from pydantic import ValidationError

from ..core.exceptions import BenchmarkValidationError
from ..models.episode import RECORD_SCHEMA_VERSION, EpisodeRecord

logger = logging.getLogger(__name__)


class RecordStore:
    """One JSONL file of EpisodeRecords; writes are serialized with a lock."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self._lock = asyncio.Lock()
        self._keys: Set[str] = set()
        if self.path.exists():
            self._repair_tail()
            for record in iter_records(self.path):
                self._keys.add(record.key)
            logger.info(f"Opened {self.path} with {len(self._keys)} existing records")

    def _repair_tail(self) -> None:
        """Drop an unterminated final line left by an interrupted write."""
        with self.path.open("rb+") as handle:
            data = handle.read()
            if not data or data.endswith(b"\n"):
                return
            start = data.rfind(b"\n") + 1
            try:
                json.loads(data[start:])
            except ValueError:
                handle.truncate(start)
                logger.warning(
                    f"Dropped a partial record at the end of {self.path}",
                    extra={"path": str(self.path), "dropped_bytes": len(data) - start},
                )
                return
            handle.write(b"\n")

    def __contains__(self, key: str) -> bool:
        return key in self._keys

    def __len__(self) -> int:
        return len(self._keys)

    async def append(self, record: EpisodeRecord) -> bool:
        """Append a record unless its key is already stored.

        Returns:
            True if the record was written
        """
        async with self._lock:
            if record.key in self._keys:
                return False
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(record.model_dump_json() + "\n")
            self._keys.add(record.key)
            return True


def iter_records(path: Union[str, Path]) -> Iterator[EpisodeRecord]:
    """Parse a records file line by line.

    Raises:
        BenchmarkValidationError: Missing file, malformed line or unknown schema version
    """
    file_path = Path(path)
    if not file_path.exists():
        raise BenchmarkValidationError(f"records file not found: {path}")
    with file_path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError as e:
                raise BenchmarkValidationError(f"{path}:{line_no}: malformed record: {e}") from e
            version = data.get("schema_version") if isinstance(data, dict) else None
            if version != RECORD_SCHEMA_VERSION:
                raise BenchmarkValidationError(
                    f"{path}:{line_no}: unsupported record schema version {version}"
                )
            try:
                yield EpisodeRecord.model_validate(data)
            except ValidationError as e:
                raise BenchmarkValidationError(
                    f"{path}:{line_no}: invalid record: {e.errors()[0]['msg']}"
                ) from e


def load_records(path: Union[str, Path]) -> List[EpisodeRecord]:
    return list(iter_records(path))
