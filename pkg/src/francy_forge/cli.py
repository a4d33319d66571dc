"""Command-line entry point: serve, validate, demo.

Exit codes: 0 success, 1 validation/runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import codec, demos, server


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="francy-forge",
        description="Semantic graphics documents over WebSocket, with a subgroup-digraph demo.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP/WebSocket server")
    p_serve.add_argument("--host", default=server.DEFAULT_HOST)
    p_serve.add_argument("--port", type=int, default=server.DEFAULT_PORT)
    p_serve.add_argument("--demo", default=demos.DEFAULT_DEMO, dest="demo_name")
    p_serve.add_argument(
        "--assets",
        default=None,
        help="renderer bundle directory (default: ./frontend/dist if present)",
    )

    p_validate = sub.add_parser("validate", help="check a document file against the format rules")
    p_validate.add_argument("file", help=f"path to a {codec.FILE_EXTENSION} document")

    p_demo = sub.add_parser("demo", help="write a demo's initial document")
    p_demo.add_argument("name", help="demo name, e.g. subgroups-s3")
    p_demo.add_argument("--out", default=None, help="output file (default: stdout)")

    return parser


def _resolve_port(cli_port: int) -> int:
    raw = os.environ.get(server.PORT_ENV_VAR)
    if raw is None:
        return cli_port
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(2) from None


def _cmd_serve(args: argparse.Namespace) -> int:
    try:
        port = _resolve_port(args.port)
    except SystemExit:
        print(f"error: {server.PORT_ENV_VAR} must be an integer", file=sys.stderr)
        return 2
    try:
        server.serve(host=args.host, port=port, demo_name=args.demo_name, asset_path=args.assets)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{port}: {exc}", file=sys.stderr)
        return 1
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        return 2
    violations = codec.validate(text)
    for violation in violations:
        print(f"{violation.path}\t{violation.rule}\t{violation.detail}")
    return 1 if violations else 0


def _cmd_demo(args: argparse.Namespace) -> int:
    try:
        document, _ = demos.build_demo(args.name)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = codec.serialize(document)
    if args.out is None:
        print(text)
    else:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    if args.command == "validate":
        return _cmd_validate(args)
    return _cmd_demo(args)


if __name__ == "__main__":
    sys.exit(main())
