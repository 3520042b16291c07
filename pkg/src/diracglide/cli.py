"""Command-line client for the verification and solver service.

Every subcommand builds a request, sends it through the service layer
(in process by default, or to a running server via --server), and prints
the response as JSON or CSV.  Exit codes: 0 all checks passed, 1 a
verification or solve failed, 2 usage or configuration error.

Configuration files are YAML mappings whose keys mirror the request
schema of the subcommand (units: natural, with the mass wave number as
the scale).  Command-line flags override config values.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx
import yaml

from .service.app import create_app

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

ENDPOINTS = {
    "verify-algebra": "/algebra/verify",
    "plane-wave": "/planewave/analyze",
    "hydrogen": "/hydrogen/spectrum",
    "bound-states": "/boundstates/solve",
    "nr-limit": "/nrlimit/check",
    "effective-potential": "/potential/table",
}


def call_service(path: str, payload: dict, server: str | None = None):
    """POST the payload, in process unless a server URL is given."""
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            response = client.post(path, json=payload)
        return response.status_code, response.json()

    async def _run():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://diracglide", timeout=600.0
        ) as client:
            return await client.post(path, json=payload)

    response = asyncio.run(_run())
    return response.status_code, response.json()


def load_config(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"config {path} must be a mapping, got {type(data).__name__}")
    return data


def _format_validation_errors(detail) -> str:
    """One line per offending key from a schema-validation response."""
    if isinstance(detail, list):
        lines = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            lines.append(f"  {loc or '<request>'}: {item.get('msg', 'invalid')}")
        return "configuration invalid:\n" + "\n".join(lines)
    return f"configuration invalid: {detail}"


# ---------------------------------------------------------------------------
# CSV rendering, one layout per subcommand
# ---------------------------------------------------------------------------


def _csv_lines(command: str, data: dict) -> list[str]:
    if command == "verify-algebra":
        lines = ["name,max_deviation,tolerance,passed"]
        for c in data["checks"]:
            lines.append(
                f"{c['name']},{c['max_deviation']!r},{c['tolerance']!r},{c['passed']}"
            )
        return lines
    if command == "plane-wave":
        lines = ["key,value"]
        for i, v in enumerate(data["momentum"]):
            lines.append(f"k{i},{v!r}")
        lines.append(f"mass,{data['mass']!r}")
        lines.append(f"branch,{data['branch']}")
        lines.append(f"dispersion_residual,{data['dispersion_residual']!r}")
        for c in data["translation_checks"]:
            lines.append(f"translation_residual_axis{c['axis']},{c['residual']!r}")
        for axis in data["skipped_axes"]:
            lines.append(f"translation_residual_axis{axis},undefined")
        lines.append(f"operator_residual,{data['operator_residual']!r}")
        lines.append(f"glide_form_residual,{data['glide_form_residual']!r}")
        lines.append(f"passed,{data['passed']}")
        return lines
    if command == "hydrogen":
        lines = ["n,kappa,energy_grid,energy_sommerfeld,rel_error"]
        for row in data["rows"]:
            lines.append(
                f"{row['n']},{row['kappa']},{row['energy_grid']!r},"
                f"{row['energy_sommerfeld']!r},{row['rel_error']!r}"
            )
        return lines
    if command == "bound-states":
        lines = ["index,energy,iterations,converged,residual_norm"]
        for i, e in enumerate(data["energies"]):
            lines.append(
                f"{i},{e!r},{data['iterations'][i]},{data['converged'][i]},"
                f"{data['residual_norms'][i]!r}"
            )
        return lines
    if command == "nr-limit":
        lines = ["epsilon,dirac_shift,schrodinger_shift,discrepancy"]
        for i, eps in enumerate(data["epsilons"]):
            lines.append(
                f"{eps!r},{data['dirac_shifts'][i]!r},"
                f"{data['schrodinger_shifts'][i]!r},{data['discrepancies'][i]!r}"
            )
        lines.append(f"fitted_exponent,{data['fitted_exponent']!r},,")
        lines.append(f"passed,{data['passed']},,")
        return lines
    if command == "effective-potential":
        lines = ["r,v1,v2,v3,local_potential"]
        for row in data["rows"]:
            lines.append(
                f"{row['r']!r},{row['v1']!r},{row['v2']!r},{row['v3']!r},"
                f"{row['local_potential']!r}"
            )
        return lines
    raise ValueError(f"no csv layout for {command}")


def render(command: str, data: dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(data, indent=2) + "\n"
    return "\n".join(_csv_lines(command, data)) + "\n"


def _write(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracglide",
        description="Verification and bound-state pipelines (natural units, "
        "mass wave number as the scale).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=None, help="seed echoed in output (default 42)")
        p.add_argument("--output", default=None, help="write to file instead of stdout")
        p.add_argument("--config", default=None, help="YAML file with request fields")
        p.add_argument(
            "--server",
            default=None,
            help="base URL of a running service; default runs in process",
        )

    p = sub.add_parser("verify-algebra", help="run the generator-algebra identity suite")
    p.add_argument("representation", nargs="?", default=None, choices=("standard", "chiral"))
    common(p)

    p = sub.add_parser("plane-wave", help="analyze one on-shell plane wave")
    p.add_argument("k1", nargs="?", type=float, default=None)
    p.add_argument("k2", nargs="?", type=float, default=None)
    p.add_argument("k3", nargs="?", type=float, default=None)
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--branch", choices=("spin-up", "spin-down"), default=None)
    p.add_argument("--representation", choices=("standard", "chiral"), default=None)
    common(p)

    p = sub.add_parser("hydrogen", help="point-charge spectrum vs the closed form")
    p.add_argument("--coupling", type=float, default=None)
    p.add_argument("--count", type=int, default=None)
    p.add_argument(
        "--kappa",
        type=int,
        action="append",
        default=None,
        help="angular channel; repeat for several",
    )
    p.add_argument("--mass", type=float, default=None)
    p.add_argument("--extent", type=float, default=None, help="radial box size")
    p.add_argument("--points", type=int, default=None, help="radial grid points")
    common(p)

    p = sub.add_parser("bound-states", help="energy-dependent effective-potential solve")
    common(p)

    p = sub.add_parser("nr-limit", help="relativistic vs effective shift comparison")
    common(p)

    p = sub.add_parser("effective-potential", help="tabulate the potential profiles")
    common(p)

    return parser


def _build_payload(args: argparse.Namespace) -> dict:
    payload: dict = {}
    if args.config:
        payload.update(load_config(args.config))

    if args.command == "verify-algebra":
        if args.representation is not None:
            payload["representation"] = args.representation
    elif args.command == "plane-wave":
        for key in ("k1", "k2", "k3", "mass", "branch", "representation"):
            value = getattr(args, key)
            if value is not None:
                payload[key] = value
    elif args.command == "hydrogen":
        for key in ("coupling", "count", "mass"):
            value = getattr(args, key)
            if value is not None:
                payload[key] = value
        if args.kappa is not None:
            payload["kappas"] = args.kappa
        if args.extent is not None or args.points is not None:
            grid = payload.get("grid", {})
            if args.extent is not None:
                grid["extent"] = args.extent
            if args.points is not None:
                grid["points"] = args.points
            grid.setdefault("dimension", "radial-1d")
            grid.setdefault("points", 8000)
            payload["grid"] = grid

    if args.seed is not None:
        payload["seed"] = args.seed
    return payload


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        payload = _build_payload(args)
    except (OSError, ValueError, yaml.YAMLError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "hydrogen" and "coupling" not in payload:
        print("configuration error: hydrogen needs --coupling or a config value", file=sys.stderr)
        return EXIT_USAGE
    if args.command in ("bound-states", "nr-limit") and not payload.get("grid"):
        print(f"configuration error: {args.command} needs a config with a grid", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "nr-limit" and not payload.get("base_potential"):
        print("configuration error: nr-limit needs a base_potential", file=sys.stderr)
        return EXIT_USAGE

    try:
        status, data = call_service(ENDPOINTS[args.command], payload, server=args.server)
    except httpx.HTTPError as exc:
        print(f"service unreachable: {exc}", file=sys.stderr)
        return EXIT_FAILED

    if status == 422:
        print(_format_validation_errors(data.get("detail")), file=sys.stderr)
        return EXIT_USAGE
    if status == 400:
        print(f"configuration rejected: {data.get('detail')}", file=sys.stderr)
        return EXIT_USAGE
    if status != 200:
        print(f"service error ({status}): {data}", file=sys.stderr)
        return EXIT_FAILED

    _write(render(args.command, data, args.format), args.output)

    if "passed" in data and data["passed"] is False:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
