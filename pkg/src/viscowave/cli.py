"""Command-line client for the viscowave service.

The CLI talks HTTP to the FastAPI app — by default through an in-process
ASGI transport (no server needed), or to a running instance via --server.
Exit codes: 0 success, 2 invalid arguments or parameters, 3 configuration
that cannot produce a valid measurement.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from typing import Optional

import httpx

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MEASUREMENT = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="viscowave",
        description="Dispersion, numerical damping and spurious reflection of the "
        "two-node FEM / average-acceleration wave discretization.",
    )
    parser.add_argument("--server", help="base URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("dispersion", parents=[common],
                       help="velocity and damping errors of one setting")
    p.add_argument("--a", type=float, required=True, help="time steps per period")
    p.add_argument("--b", type=float, required=True, help="elements per wavelength")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--mass", choices=("consistent", "lumped", "both"), default="both")

    p = sub.add_parser("table", parents=[common],
                       help="reproduce a reference table with deviation columns")
    p.add_argument("which", type=int, choices=(1, 2, 3))
    p.add_argument("--gamma", type=float, default=None,
                   help="damping override for tables 2 and 3")

    p = sub.add_parser("reflect", parents=[common],
                       help="spurious reflection amplitude of a graded mesh")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, default=None, help="defaults to a")
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mass", choices=("consistent", "lumped", "both"), default="both")

    p = sub.add_parser("simulate", parents=[common],
                       help="time-domain run cross-validated against the closed forms")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--mass", choices=("consistent", "lumped"), default="consistent")
    p.add_argument("--cycles", type=int, default=16)
    p.add_argument("--total-steps", type=int, default=None)
    p.add_argument("--boundary", choices=("fixed_far_end", "absorbing_pad"),
                   default="fixed_far_end")
    p.add_argument("--series-out", help="write the probe time series CSV here")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _request(server: Optional[str], method: str, url: str, **kwargs) -> httpx.Response:
    """One request against a remote server or the in-process ASGI app."""
    if server:
        with httpx.Client(base_url=server, timeout=300.0) as client:
            return client.request(method, url, **kwargs)

    from .service import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://viscowave.internal", timeout=None
        ) as client:
            return await client.request(method, url, **kwargs)

    return asyncio.run(go())


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(response: httpx.Response) -> int:
    try:
        payload = response.json()
        detail = payload.get("detail", response.text)
        invalid_measurement = payload.get("error") == "measurement_invalid"
    except ValueError:
        detail, invalid_measurement = response.text, False
    print(f"error: {detail}", file=sys.stderr)
    if response.status_code == 409 or invalid_measurement:
        return EXIT_MEASUREMENT
    return EXIT_USAGE


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    if args.command == "dispersion":
        response = _request(
            args.server,
            "POST",
            "/api/dispersion",
            params={"format": args.format},
            json={"a": args.a, "b": args.b, "gamma": args.gamma, "mass": args.mass},
        )
    elif args.command == "table":
        params = {"format": args.format}
        if args.gamma is not None:
            params["gamma"] = args.gamma
        response = _request(args.server, "GET", f"/api/table/{args.which}", params=params)
    elif args.command == "reflect":
        body = {"a": args.a, "gamma": args.gamma, "alpha": args.alpha, "mass": args.mass}
        if args.b is not None:
            body["b"] = args.b
        response = _request(
            args.server, "POST", "/api/reflection", params={"format": args.format}, json=body
        )
    elif args.command == "simulate":
        body = {
            "a": args.a,
            "gamma": args.gamma,
            "alpha": args.alpha,
            "mass": args.mass,
            "cycles": args.cycles,
            "boundary": args.boundary,
            "include_series": bool(args.series_out),
        }
        if args.b is not None:
            body["b"] = args.b
        if args.total_steps is not None:
            body["total_steps"] = args.total_steps
        response = _request(args.server, "POST", "/api/simulate", json=body)
    else:  # pragma: no cover - argparse enforces the choices
        raise AssertionError(args.command)

    if response.status_code != 200:
        return _fail(response)

    if args.command == "simulate":
        payload = response.json()
        series_csv = payload.pop("series_csv", None)
        if args.series_out and series_csv:
            with open(args.series_out, "w") as fh:
                fh.write(series_csv)
        from .render import to_json

        _write(to_json(payload), args.out)
    else:
        _write(response.text, args.out)
    return EXIT_OK


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
