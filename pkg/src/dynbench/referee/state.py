"""Persistent referee state: append-only journal plus content-addressed blobs.

Every state change (team enrollment, accepted submission) is one JSON line
in journal.jsonl, flushed and fsynced before the request is acknowledged.
Submission payloads live next to it in blobs/, named by their SHA-256, so a
journaled digest can always be re-scored.  Restart recovery replays the
journal; a half-written final line is discarded with a warning, any other
damage raises CorruptJournal.
"""

from __future__ import annotations

import hashlib
import json
import os
import secrets
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import logging

logger = logging.getLogger(__name__)

JOURNAL_NAME = "journal.jsonl"
BLOB_DIR = "blobs"


class CorruptJournal(RuntimeError):
    pass


def hash_token(salt_hex: str, token: str) -> str:
    return hashlib.sha256(bytes.fromhex(salt_hex) + token.encode()).hexdigest()


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass(frozen=True)
class Team:
    team_id: str
    display_name: str
    salt: str
    token_hash: str


@dataclass(frozen=True)
class SubmissionRecord:
    submission_id: str
    team_id: str
    pack_id: str
    github_url: str
    received_at: str
    bundle_digest: str
    scores: tuple[float, ...]
    composite: float

    def to_public_dict(self) -> dict:
        return {
            "submission_id": self.submission_id,
            "team_id": self.team_id,
            "pack_id": self.pack_id,
            "github_url": self.github_url,
            "received_at": self.received_at,
            "bundle_digest": self.bundle_digest,
            "scores": list(self.scores),
            "composite": self.composite,
        }


class BlobStore:
    """Content-addressed bundle storage; digests are SHA-256 hex."""

    def __init__(self, root: Path):
        self.root = root
        self.root.mkdir(parents=True, exist_ok=True)

    def put(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()
        path = self.root / digest
        if not path.exists():
            tmp = path.with_suffix(".tmp")
            tmp.write_bytes(data)
            os.replace(tmp, path)
        return digest

    def get(self, digest: str) -> bytes:
        return (self.root / digest).read_bytes()


class RefereeState:
    """In-memory view of the journal plus the serialized writer.

    All mutations happen under one lock; reads take the same lock briefly to
    snapshot, so concurrent submissions serialize into a consistent journal
    order and leaderboard reads never observe torn entries.
    """

    def __init__(self, state_dir: str | Path):
        self.state_dir = Path(state_dir)
        self.state_dir.mkdir(parents=True, exist_ok=True)
        self.blobs = BlobStore(self.state_dir / BLOB_DIR)
        self._journal_path = self.state_dir / JOURNAL_NAME
        self._lock = threading.Lock()
        self.teams: dict[str, Team] = {}
        self._teams_by_name: dict[str, str] = {}
        self.submissions: dict[str, SubmissionRecord] = {}
        self._order: list[str] = []
        self._counter = 0
        self._replay()

    # -- persistence ------------------------------------------------------

    def _replay(self) -> None:
        if not self._journal_path.exists():
            return
        raw = self._journal_path.read_bytes()
        if not raw:
            return
        # Records are acknowledged only after their newline-terminated line is
        # flushed, so an unterminated tail was never acknowledged: drop it.
        complete, sep, partial = raw.rpartition(b"\n")
        if partial:
            logger.warning(
                "discarding %d bytes of half-written final journal record", len(partial)
            )
        if not sep:
            return
        for i, line in enumerate(complete.split(b"\n")):
            try:
                self._apply(json.loads(line.decode("utf-8")))
            except (ValueError, KeyError) as exc:
                raise CorruptJournal(f"journal record {i + 1} is damaged: {exc}") from None

    def _apply(self, record: dict) -> None:
        kind = record["type"]
        if kind == "enroll":
            team = Team(
                team_id=record["team_id"],
                display_name=record["display_name"],
                salt=record["salt"],
                token_hash=record["token_hash"],
            )
            self.teams[team.team_id] = team
            self._teams_by_name[team.display_name] = team.team_id
        elif kind == "submission":
            sub = SubmissionRecord(
                submission_id=record["submission_id"],
                team_id=record["team_id"],
                pack_id=record["pack_id"],
                github_url=record["github_url"],
                received_at=record["received_at"],
                bundle_digest=record["bundle_digest"],
                scores=tuple(record["scores"]),
                composite=record["composite"],
            )
            self.submissions[sub.submission_id] = sub
            self._order.append(sub.submission_id)
            self._counter = max(self._counter, int(sub.submission_id.split("-")[1]))
        else:
            raise KeyError(f"unknown journal record type {kind!r}")

    def _append(self, record: dict) -> None:
        line = json.dumps(record, sort_keys=True) + "\n"
        with open(self._journal_path, "a", encoding="utf-8") as fh:
            fh.write(line)
            fh.flush()
            os.fsync(fh.fileno())

    # -- operations -------------------------------------------------------

    def enroll(self, display_name: str) -> tuple[Team, str]:
        """Create a team; returns the one-time token (only its hash persists)."""
        with self._lock:
            if display_name in self._teams_by_name:
                raise ValueError(f"team name {display_name!r} already enrolled")
            token = secrets.token_hex(16)
            salt = secrets.token_hex(8)
            team = Team(
                team_id=f"team-{len(self.teams) + 1:04d}",
                display_name=display_name,
                salt=salt,
                token_hash=hash_token(salt, token),
            )
            self._append(
                {
                    "type": "enroll",
                    "team_id": team.team_id,
                    "display_name": team.display_name,
                    "salt": team.salt,
                    "token_hash": team.token_hash,
                    "enrolled_at": utc_now(),
                }
            )
            self.teams[team.team_id] = team
            self._teams_by_name[display_name] = team.team_id
            return team, token

    def authenticate(self, token: str) -> Team | None:
        with self._lock:
            for team in self.teams.values():
                if hash_token(team.salt, token) == team.token_hash:
                    return team
        return None

    def submissions_today(self, team_id: str, received_at: str) -> int:
        day = received_at[:10]
        with self._lock:
            return sum(
                1
                for sid in self._order
                if self.submissions[sid].team_id == team_id
                and self.submissions[sid].received_at[:10] == day
            )

    def record_submission(
        self,
        team_id: str,
        pack_id: str,
        github_url: str,
        received_at: str,
        bundle_digest: str,
        scores: tuple[float, ...],
        composite: float,
    ) -> SubmissionRecord:
        """Journal an accepted, already-scored submission and return it."""
        with self._lock:
            self._counter += 1
            record = SubmissionRecord(
                submission_id=f"sub-{self._counter:06d}",
                team_id=team_id,
                pack_id=pack_id,
                github_url=github_url,
                received_at=received_at,
                bundle_digest=bundle_digest,
                scores=scores,
                composite=composite,
            )
            self._append({"type": "submission", **record.to_public_dict()})
            self.submissions[record.submission_id] = record
            self._order.append(record.submission_id)
            return record

    def leaderboard(self, pack_id: str) -> list[dict]:
        """Best submission per team, ordered by composite then earliest best."""
        with self._lock:
            best: dict[str, SubmissionRecord] = {}
            counts: dict[str, int] = {}
            latest: dict[str, str] = {}
            for sid in self._order:
                sub = self.submissions[sid]
                if sub.pack_id != pack_id:
                    continue
                counts[sub.team_id] = counts.get(sub.team_id, 0) + 1
                latest[sub.team_id] = max(latest.get(sub.team_id, ""), sub.received_at)
                cur = best.get(sub.team_id)
                if cur is None or sub.composite > cur.composite:
                    best[sub.team_id] = sub
            ranked = sorted(
                best.values(), key=lambda s: (-s.composite, s.received_at, s.team_id)
            )
            return [
                {
                    "rank": i + 1,
                    "team_id": sub.team_id,
                    "display_name": self.teams[sub.team_id].display_name,
                    "composite": sub.composite,
                    "scores": list(sub.scores),
                    "github_url": sub.github_url,
                    "submission_count": counts[sub.team_id],
                    "latest": latest[sub.team_id],
                    "best_submission_id": sub.submission_id,
                }
                for i, sub in enumerate(ranked)
            ]
