"""Command-line driver: generate packs, build baselines, score, serve, submit.

Exit codes are fixed for scripting: 0 success, 1 usage, 2 validation
failure, 3 I/O error, 4 network or authentication error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NETWORK = 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract here reserves 2 for
    # validation failures, so route usage problems through exit code 1.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="dynbench", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="generate a challenge pack")
    gen.add_argument("--system", required=True)
    gen.add_argument("--seed", required=True)
    gen.add_argument("--out", required=True)

    base = sub.add_parser("baseline", help="build a reference submission")
    base.add_argument("--pack", required=True, help="public pack directory")
    base.add_argument("--kind", required=True, choices=["zeros", "persistence", "climatology"])
    base.add_argument("--out", required=True, help="output .npz path")

    score = sub.add_parser("score", help="score a submission locally")
    score.add_argument("--private", required=True, help="private pack directory")
    score.add_argument("--submission", required=True, help="submission .npz path")
    score.add_argument("--json", action="store_true")

    serve = sub.add_parser("serve", help="run the referee service")
    serve.add_argument("--packs", required=True)
    serve.add_argument("--state", required=True)
    serve.add_argument("--addr", default=None)
    serve.add_argument("--quota", type=int, default=None)
    serve.add_argument("--config", default=None, help="optional JSON config file")

    submit = sub.add_parser("submit", help="submit a bundle to a referee")
    submit.add_argument("--url", required=True, help="referee base URL")
    submit.add_argument("--token", required=True)
    submit.add_argument("--github", required=True)
    submit.add_argument("--pack-id", required=True)
    submit.add_argument("--file", required=True)

    radar = sub.add_parser("radar", help="export radar-plot data from a profile")
    radar.add_argument("--profile", required=True, help="profile JSON from `score --json`")
    radar.add_argument("--out", required=True, help="output .json or .csv path")

    return parser


def _parse_seed(text: str) -> int:
    try:
        seed = int(text, 0)
    except ValueError:
        raise _UsageError(f"--seed must be an integer, got {text!r}") from None
    if not 0 <= seed < 2**64:
        raise _UsageError("--seed must fit in 64 bits")
    return seed


def _profile_lines(scores, composite) -> list[str]:
    from .scoring import METRIC_NAMES

    lines = [f"{name} {value!r}" for name, value in zip(METRIC_NAMES, scores)]
    lines.append(f"composite {composite!r}")
    return lines


def _cmd_generate(args) -> int:
    from .challenge import generate_pack, write_pack
    from .systems import SystemId

    try:
        system = SystemId(args.system)
    except ValueError:
        raise _UsageError(
            f"unknown system {args.system!r}; choose from "
            + ", ".join(s.value for s in SystemId)
        )
    seed = _parse_seed(args.seed)
    out = Path(args.out)
    pack = generate_pack(system, seed)
    write_pack(pack, out / "public", out / "private")
    print(pack.pack_id)
    return EXIT_OK


def _cmd_baseline(args) -> int:
    from . import npyio
    from .baselines import BaselineKind, make_baseline
    from .challenge import load_public

    public = load_public(args.pack)
    bundle = make_baseline(BaselineKind(args.kind), public.manifest, public.train)
    Path(args.out).write_bytes(npyio.write_archive(bundle))
    print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_score(args) -> int:
    from . import npyio
    from .challenge import TEST_NAMES, load_private, validate_outputs
    from .scoring import METRIC_NAMES, score_submission

    private = load_private(args.private)
    bundle = npyio.read_archive(Path(args.submission).read_bytes())

    # Truth shapes equal the manifest's output shapes by construction, so the
    # private half alone fixes the submission contract.
    shapes = {name: matrix.shape for name, matrix in private.truths.items()}
    violations = validate_outputs(TEST_NAMES, shapes, bundle)
    if violations:
        for v in violations:
            print(f"{v.kind}: {v.name}: {v.detail}", file=sys.stderr)
        return EXIT_VALIDATION

    profile = score_submission(private.truths, bundle, private.scoring)
    if args.json:
        print(
            json.dumps(
                {
                    "pack_id": private.generation["pack_id"],
                    "scores": dict(zip(METRIC_NAMES, profile.scores)),
                    "composite": profile.composite,
                }
            )
        )
    else:
        print("\n".join(_profile_lines(profile.scores, profile.composite)))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .referee import create_app, load_config

    config = load_config(
        config_file=args.config,
        packs_dir=args.packs,
        state_dir=args.state,
        addr=args.addr,
        quota=args.quota,
    )
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return EXIT_OK


def _cmd_submit(args) -> int:
    import requests

    url = f"{args.url.rstrip('/')}/api/v1/challenges/{args.pack_id}/submissions"
    try:
        body = Path(args.file).read_bytes()
    except OSError as exc:
        print(f"cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        resp = requests.post(
            url,
            data=body,
            headers={
                "Authorization": f"Bearer {args.token}",
                "X-Github-Url": args.github,
                "Content-Type": "application/octet-stream",
            },
            timeout=300,
        )
    except requests.RequestException as exc:
        print(f"request failed: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    if resp.status_code == 200:
        payload = resp.json()
        print("\n".join(_profile_lines(payload["scores"], payload["composite"])))
        return EXIT_OK
    try:
        detail = resp.json()
    except ValueError:
        detail = {"code": "HttpError", "detail": resp.text}
    print(f"{detail.get('code', 'HttpError')}: {detail.get('detail')}", file=sys.stderr)
    return EXIT_VALIDATION if resp.status_code == 422 else EXIT_NETWORK


def _cmd_radar(args) -> int:
    from .scoring import METRIC_NAMES, ScoreProfile, radar_export

    try:
        raw = json.loads(Path(args.profile).read_text())
        scores = raw["scores"]
        if isinstance(scores, dict):
            scores = [scores[name] for name in METRIC_NAMES]
        profile = ScoreProfile(scores=tuple(float(v) for v in scores), composite=float(raw["composite"]))
    except (KeyError, TypeError, ValueError) as exc:
        print(f"malformed profile: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    payload = radar_export(profile)
    out = Path(args.out)
    if out.suffix == ".csv":
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["axis", "raw", "display"])
            for axis, rawv, disp in zip(payload["axes"], payload["raw"], payload["display"]):
                writer.writerow([axis, rawv, disp])
            writer.writerow(["composite", payload["composite"], ""])
    else:
        out.write_text(json.dumps(payload, indent=2))
    print(f"wrote {out}", file=sys.stderr)
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "baseline": _cmd_baseline,
    "score": _cmd_score,
    "serve": _cmd_serve,
    "submit": _cmd_submit,
    "radar": _cmd_radar,
}


def run(argv: list[str]) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
