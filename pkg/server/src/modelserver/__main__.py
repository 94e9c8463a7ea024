"""Command-line entry point: ``modelserver [--host H] [--port P] ...``."""

from __future__ import annotations

import argparse
from dataclasses import replace

import uvicorn

from .config import ServerConfig
from .service import create_app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="modelserver",
        description="Serve masked-LM tokenization, scoring, embedding, "
        "and gradient endpoints over HTTP.",
    )
    parser.add_argument("--host")
    parser.add_argument("--port", type=int)
    parser.add_argument("--max-len", type=int, dest="max_len")
    parser.add_argument("--seed", type=int)
    args = parser.parse_args(argv)

    cfg = ServerConfig()
    overrides = {
        name: value
        for name, value in vars(args).items()
        if value is not None
    }
    if overrides:
        cfg = replace(cfg, **overrides)

    uvicorn.run(create_app(cfg), host=cfg.host, port=cfg.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
