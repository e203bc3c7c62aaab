"""HTTP referee: serves public challenge data, scores submissions, keeps the
leaderboard.

The truths never cross the wire: private pack halves are loaded into memory
for scoring only, and no endpoint response carries their bytes.  Submission
handling validates, scores, journals, and only then acknowledges, so a reply
implies the record is durable.

Endpoints (all JSON unless noted):

    GET  /api/v1/challenges                                  pack index
    GET  /api/v1/challenges/{pack_id}/public                 public.npz bytes
    GET  /api/v1/challenges/{pack_id}/manifest               manifest
    POST /api/v1/challenges/{pack_id}/submissions            NPZ body -> profile
    GET  /api/v1/challenges/{pack_id}/leaderboard            ranked entries
    GET  /api/v1/challenges/{pack_id}/submissions/{id}       own-team/admin
    POST /api/v1/teams                                       admin enrollment
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import urlparse

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from .. import npyio
from ..challenge import ChallengeManifest, load_private, load_public, validate_submission
from ..scoring import ScoreProfile, ScoringConfig, ScoringFailed, radar_export, score_submission
from .config import RefereeConfig
from .state import RefereeState, utc_now

API_VERSION = 1


@dataclass
class LoadedPack:
    pack_id: str
    system: str
    manifest: ChallengeManifest
    public_bytes: bytes
    truths: dict
    scoring: ScoringConfig


def load_packs(packs_dir: str | Path) -> dict[str, LoadedPack]:
    """Load every pack directory (public/ + private/) under packs_dir."""
    packs: dict[str, LoadedPack] = {}
    for entry in sorted(Path(packs_dir).iterdir()):
        if not (entry / "public" / "manifest.json").exists():
            continue
        public = load_public(entry / "public")
        private = load_private(entry / "private")
        pack = LoadedPack(
            pack_id=public.manifest.pack_id,
            system=public.manifest.system,
            manifest=public.manifest,
            public_bytes=(entry / "public" / "public.npz").read_bytes(),
            truths=private.truths,
            scoring=private.scoring,
        )
        packs[pack.pack_id] = pack
    return packs


def _error(status: int, code: str, detail) -> JSONResponse:
    return JSONResponse({"code": code, "detail": detail}, status_code=status)


def _bearer_token(request: Request) -> str | None:
    auth = request.headers.get("authorization", "")
    if auth.lower().startswith("bearer "):
        return auth[7:].strip()
    return None


def _valid_url(url: str) -> bool:
    parsed = urlparse(url)
    return parsed.scheme in ("http", "https") and bool(parsed.netloc)


def _profile_payload(record) -> dict:
    profile = ScoreProfile(scores=tuple(record.scores), composite=record.composite)
    payload = record.to_public_dict()
    payload["radar"] = radar_export(profile)
    return payload


def create_app(config: RefereeConfig) -> FastAPI:
    app = FastAPI(title="dynbench referee", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"], allow_headers=["*"]
    )
    packs = load_packs(config.packs_dir)
    state = RefereeState(config.state_dir)
    app.state.packs = packs
    app.state.referee = state
    app.state.config = config

    @app.get("/api/v1/challenges")
    def list_challenges():
        return [
            {
                "pack_id": pack.pack_id,
                "system": pack.system,
                "manifest": json.loads(pack.manifest.to_json()),
            }
            for pack in packs.values()
        ]

    @app.get("/api/v1/challenges/{pack_id}/public")
    def get_public(pack_id: str):
        pack = packs.get(pack_id)
        if pack is None:
            return _error(404, "UnknownPack", f"no pack {pack_id!r}")
        return Response(content=pack.public_bytes, media_type="application/zip")

    @app.get("/api/v1/challenges/{pack_id}/manifest")
    def get_manifest(pack_id: str):
        pack = packs.get(pack_id)
        if pack is None:
            return _error(404, "UnknownPack", f"no pack {pack_id!r}")
        return json.loads(pack.manifest.to_json())

    @app.get("/api/v1/challenges/{pack_id}/leaderboard")
    def get_leaderboard(pack_id: str):
        pack = packs.get(pack_id)
        if pack is None:
            return _error(404, "UnknownPack", f"no pack {pack_id!r}")
        entries = []
        for row in state.leaderboard(pack_id):
            profile = ScoreProfile(scores=tuple(row["scores"]), composite=row["composite"])
            row["radar"] = radar_export(profile)
            entries.append(row)
        return {"version": API_VERSION, "pack_id": pack_id, "entries": entries}

    # Scoring runs on starlette's bounded worker thread pool; the journal
    # serializes writers internally.
    @app.post("/api/v1/challenges/{pack_id}/submissions")
    async def submit(pack_id: str, request: Request):
        declared = request.headers.get("content-length")
        if declared and declared.isdigit() and int(declared) > config.payload_cap:
            return _error(413, "PayloadTooLarge", f"payload exceeds {config.payload_cap} bytes")
        body = await request.body()
        return await run_in_threadpool(_handle_submission, pack_id, request, body)

    def _handle_submission(pack_id: str, request: Request, body: bytes):
        token = _bearer_token(request)
        team = state.authenticate(token) if token else None
        if team is None:
            return _error(401, "Unauthorized", "missing or invalid bearer token")
        pack = packs.get(pack_id)
        if pack is None:
            return _error(404, "UnknownPack", f"no pack {pack_id!r}")
        if len(body) > config.payload_cap:
            return _error(413, "PayloadTooLarge", f"payload exceeds {config.payload_cap} bytes")
        github_url = request.headers.get("x-github-url", "")
        if not github_url or not _valid_url(github_url):
            return _error(
                422, "ValidationFailed", "a repository URL is required in X-Github-Url"
            )
        received_at = utc_now()
        if config.quota > 0 and state.submissions_today(team.team_id, received_at) >= config.quota:
            return _error(
                429, "QuotaExceeded", f"daily limit of {config.quota} submissions reached"
            )
        try:
            bundle = npyio.read_archive(body)
        except ValueError as exc:
            return _error(422, "ValidationFailed", f"unreadable archive: {exc}")
        violations = validate_submission(pack.manifest, bundle)
        if violations:
            return _error(
                422,
                "ValidationFailed",
                [{"kind": v.kind, "name": v.name, "detail": v.detail} for v in violations],
            )
        try:
            profile = score_submission(pack.truths, bundle, pack.scoring)
        except ScoringFailed as exc:
            return _error(
                422,
                "ValidationFailed",
                [{"metric": name, "detail": detail} for name, detail in exc.failures],
            )
        digest = state.blobs.put(body)
        record = state.record_submission(
            team_id=team.team_id,
            pack_id=pack_id,
            github_url=github_url,
            received_at=received_at,
            bundle_digest=digest,
            scores=profile.scores,
            composite=profile.composite,
        )
        return _profile_payload(record)

    @app.get("/api/v1/challenges/{pack_id}/submissions/{submission_id}")
    def get_submission(pack_id: str, submission_id: str, request: Request):
        token = _bearer_token(request)
        record = state.submissions.get(submission_id)
        if record is None or record.pack_id != pack_id:
            return _error(404, "UnknownSubmission", f"no submission {submission_id!r}")
        is_admin = config.admin_token is not None and token == config.admin_token
        team = state.authenticate(token) if token and not is_admin else None
        if not is_admin and (team is None or team.team_id != record.team_id):
            return _error(403, "Unauthorized", "submission details are team-private")
        return _profile_payload(record)

    @app.post("/api/v1/teams")
    def enroll(request: Request, payload: dict):
        token = _bearer_token(request)
        if not config.admin_token or token != config.admin_token:
            return _error(401, "Unauthorized", "admin token required")
        display_name = str(payload.get("display_name", "")).strip()
        if not display_name:
            return _error(422, "ValidationFailed", "display_name is required")
        try:
            team, secret = state.enroll(display_name)
        except ValueError as exc:
            return _error(409, "DuplicateName", str(exc))
        return JSONResponse(
            {"team_id": team.team_id, "display_name": team.display_name, "token": secret},
            status_code=201,
        )

    return app
