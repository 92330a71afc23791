"""Command line client for the bounds service.

The CLI speaks HTTP to the FastAPI app: by default through an in-process
ASGI transport (no server needed), or to a running server via --server.
Exit codes: 0 success, 1 usage error, 2 violated mathematical precondition,
3 falsification event (a checked inequality failed for this configuration).

Data files are deterministic: identical configuration produces byte-identical
output.  --stamp writes provenance to a sidecar file, never into the data.
"""

from __future__ import annotations

import argparse
import asyncio
import datetime
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import httpx

from . import __version__
from .twists import TransitionMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_FALSIFIED = 3

OUTPUT_DIR_ENV = "SYSLIP_OUTPUT_DIR"


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


class FalsificationEvent(Exception):
    pass


@dataclass
class RunConfig:
    """Validated invocation: one command plus its knobs."""

    command: str
    ray: str | None = None
    genus: int | None = None
    index: int | None = None
    start: int | None = None
    stop: int | None = None
    kind: str = "base"
    output_format: str = "text"
    output: str | None = None
    plot: str | None = None
    dump_chain: bool = False
    intersections: list[int] | None = None
    seam: int | None = None
    cap: int | None = None
    tol: float | None = None
    collar_override: float | None = None
    use_computed_mixing: bool = True
    c1: float = 1.0
    c2: float = 1.0
    stamp: bool = False
    server: str | None = None
    extra: dict = field(default_factory=dict)


class ServiceClient:
    """Thin HTTP client; in-process ASGI transport unless a server is given."""

    def __init__(self, server: str | None = None):
        self.server = server

    async def _post(self, path: str, payload: dict) -> httpx.Response:
        if self.server is None:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://syslip.internal", timeout=None
            ) as client:
                return await client.post(path, json=payload)
        async with httpx.AsyncClient(base_url=self.server, timeout=None) as client:
            return await client.post(path, json=payload)

    def post(self, path: str, payload: dict) -> dict:
        response = asyncio.run(self._post(path, payload))
        if response.status_code == 400:
            detail = response.json().get("detail", {})
            raise PreconditionError(detail.get("message", response.text))
        if response.status_code == 422:
            raise UsageError(_format_validation_error(response.json()))
        response.raise_for_status()
        return response.json()


def _format_validation_error(body: dict) -> str:
    details = body.get("detail", [])
    if isinstance(details, list):
        return "; ".join(
            f"{'.'.join(str(x) for x in item.get('loc', []))}: {item.get('msg', '')}"
            for item in details
        )
    return str(details)


def _resolve_output(path_text: str) -> Path:
    path = Path(path_text)
    if not path.is_absolute():
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base:
            path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        path = _resolve_output(cfg.output)
        path.write_text(text, encoding="utf-8")
        if cfg.stamp:
            stamp = {
                "written": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "version": __version__,
                "file": path.name,
            }
            path.with_name(path.name + ".stamp.json").write_text(
                json.dumps(stamp, indent=2, sort_keys=True) + "\n", encoding="utf-8"
            )
    else:
        sys.stdout.write(text)


def _canonical_json(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _matrix_payload(cfg: RunConfig) -> dict:
    return {
        "ray": cfg.ray,
        "index": cfg.index,
        "kind": cfg.kind,
        "include_chain": cfg.dump_chain,
        "intersections": cfg.intersections,
        "seam": cfg.seam,
    }


def run_matrix(cfg: RunConfig, client: ServiceClient) -> None:
    data = client.post("/matrix", _matrix_payload(cfg))
    if cfg.output_format == "json":
        _emit(cfg, _canonical_json(data))
    else:
        m = TransitionMatrix.from_json(data)
        lines = [m.to_text(), ""]
        lines.append(f"dimension: {data['dimension']}")
        lines.append(
            f"max column sum: {data['max_column_sum']} (bound {data['column_sum_bound']})"
        )
        if data.get("chain"):
            lines.append(f"chain: {json.dumps(data['chain'], sort_keys=True)}")
        _emit(cfg, "\n".join(lines) + "\n")
    if not data["bound_satisfied"]:
        raise FalsificationEvent(
            f"max column sum {data['max_column_sum']} exceeds "
            f"certified bound {data['column_sum_bound']}"
        )


def run_mixing(cfg: RunConfig, client: ServiceClient) -> None:
    data = client.post("/mixing", {"ray": cfg.ray, "index": cfg.index, "cap": cfg.cap})
    if cfg.output_format == "json":
        _emit(cfg, _canonical_json(data))
    else:
        tl = data["translation_lower_bound"]
        lines = [
            f"dimension: {data['dimension']}",
            f"cap: {data['cap']}",
            f"mixing number: {data['mixing_number']}",
            (
                "translation length lower bound: "
                + (f"{tl['numerator']}/{tl['denominator']}" if tl else "none")
            ),
        ]
        _emit(cfg, "\n".join(lines) + "\n")
    if not data["within_cap"]:
        raise FalsificationEvent(
            f"no mixing number within cap {data['cap']} (dimension {data['dimension']})"
        )


def run_dilatation(cfg: RunConfig, client: ServiceClient) -> None:
    payload = {"ray": cfg.ray, "index": cfg.index, "kind": cfg.kind}
    if cfg.tol is not None:
        payload["tol"] = cfg.tol
    data = client.post("/dilatation", payload)
    if cfg.output_format == "json":
        _emit(cfg, _canonical_json(data))
    else:
        lines = [
            f"dimension: {data['dimension']}",
            f"perron root in [{data['lower']!r}, {data['upper']!r}]"
            + ("" if data["converged"] else "  (enclosure not converged: flagged)"),
            f"iterations: {data['iterations']}",
            f"column sums: min {data['min_column_sum']}, max {data['max_column_sum']}"
            f" (bound {data['column_sum_bound']})",
        ]
        if data["closed_form_log_bound"] is not None:
            lines.append(
                f"log dilatation {data['log_upper']!r} vs certified bound "
                f"{data['closed_form_log_bound']!r}"
            )
        _emit(cfg, "\n".join(lines) + "\n")
    if data.get("bound_satisfied") is False:
        raise FalsificationEvent(
            f"computed log dilatation {data['log_upper']!r} exceeds certified bound "
            f"{data['closed_form_log_bound']!r}"
        )


def _family_payload(cfg: RunConfig) -> dict:
    return {
        "ray": cfg.ray,
        "genus": cfg.genus,
        "collar_override": cfg.collar_override,
        "cap": cfg.cap,
        "use_computed_mixing": cfg.use_computed_mixing,
        "c1": cfg.c1,
        "c2": cfg.c2,
    }


def _report_text(row: dict) -> str:
    lines = [
        f"family: {row['family']}  surface: S_{{{row['genus']},{row['punctures']}}}"
        f"  |chi| = {row['abs_chi']}",
        f"collar constant N = {row['collar_constant']!r}",
        f"K upper: {row['k_upper']!r}  (additive constant {row['k_upper_additive']!r})",
        f"K lower: {row['k_lower']!r}",
        f"products: upper*log|chi| = {row['k_upper_log_abs_chi']!r}, "
        f"lower*log|chi| = {row['k_lower_log_abs_chi']!r}",
    ]
    if row.get("lower_inputs"):
        li = row["lower_inputs"]
        tl = li["translation_lower"]
        translation = f"{tl['numerator']}/{tl['denominator']}" if tl else "none"
        lines.append(
            f"lower inputs: mixing {li['mixing_number']} (cap {li['mixing_cap']}), "
            f"translation >= {translation}"
        )
        lines.append(
            f"log dilatation upper {li['log_dilatation_upper']!r}, "
            f"dimension {li['matrix_dimension']}, certified {li['certified']}"
        )
    if row.get("note"):
        lines.append(f"note: {row['note']}")
    return "\n".join(lines) + "\n"


def run_bounds(cfg: RunConfig, client: ServiceClient) -> None:
    payload = _family_payload(cfg)
    payload["index"] = cfg.index
    data = client.post("/bounds", payload)
    if cfg.output_format == "json":
        _emit(cfg, _canonical_json(data))
    else:
        _emit(cfg, _report_text(data))
    _raise_on_uncertified([data])


def run_table(cfg: RunConfig, client: ServiceClient) -> None:
    payload = _family_payload(cfg)
    payload["start"] = cfg.start
    payload["stop"] = cfg.stop
    data = client.post("/table", payload)
    if cfg.output_format == "csv":
        _emit(cfg, data["csv"])
    elif cfg.output_format == "json":
        _emit(cfg, _canonical_json({"rows": data["rows"]}))
    else:
        _emit(cfg, "".join(_report_text(r) + "\n" for r in data["rows"]))
    if cfg.plot:
        plot_path = _resolve_output(cfg.plot)
        plot_path.write_text(data["plot_data"], encoding="utf-8")
    _raise_on_uncertified(data["rows"])


def _raise_on_uncertified(rows: list[dict]) -> None:
    for row in rows:
        inputs = row.get("lower_inputs")
        if inputs and not inputs["certified"]:
            raise FalsificationEvent(
                f"mixing number exceeded cap {inputs['mixing_cap']} for "
                f"S_{{{row['genus']},{row['punctures']}}}"
            )


def run_serve(cfg: RunConfig) -> None:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=cfg.extra.get("host", "127.0.0.1"), port=cfg.extra.get("port", 8000))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad intersection list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syslip", description=__doc__)
    parser.add_argument("--version", action="version", version=f"syslip {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", "-o", help=f"output path (relative to ${OUTPUT_DIR_ENV})")
        p.add_argument("--stamp", action="store_true", help="write a provenance sidecar")
        p.add_argument("--server", help="URL of a running service (default: in-process)")

    p = sub.add_parser("matrix", help="emit a transition matrix")
    p.add_argument("--ray", required=True)
    p.add_argument("-i", "--index", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--lifted-root", action="store_true")
    group.add_argument("--lifted-full", action="store_true")
    p.add_argument("--dump-chain", action="store_true")
    p.add_argument("--intersections", type=_int_list)
    p.add_argument("--seam", type=int, choices=(1, 2))
    add_common(p, ("text", "json"))

    p = sub.add_parser("mixing", help="mixing number of the lifted root map")
    p.add_argument("--ray", required=True)
    p.add_argument("-i", "--index", type=int, required=True)
    p.add_argument("--cap", type=int)
    add_common(p, ("text", "json"))

    p = sub.add_parser("dilatation", help="certified Perron-root enclosure")
    p.add_argument("--ray", required=True)
    p.add_argument("-i", "--index", type=int, required=True)
    p.add_argument("--lifted-root", action="store_true")
    p.add_argument("--tol", type=float)
    add_common(p, ("text", "json"))

    p = sub.add_parser("bounds", help="one surface's bounds report")
    p.add_argument("--ray")
    p.add_argument("--genus", type=int)
    p.add_argument("-i", "--index", type=int, required=True)
    p.add_argument("--collar-constant", type=float, dest="collar")
    p.add_argument("--cap", type=int)
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    add_common(p, ("text", "json"))

    p = sub.add_parser("table", help="bounds table along a family")
    p.add_argument("--ray")
    p.add_argument("--genus", type=int)
    p.add_argument("--from", dest="start", type=int, required=True)
    p.add_argument("--to", dest="stop", type=int, required=True)
    p.add_argument("--collar-constant", type=float, dest="collar")
    p.add_argument("--cap", type=int)
    p.add_argument("--no-computed-mixing", action="store_true")
    p.add_argument("--c1", type=float, default=1.0)
    p.add_argument("--c2", type=float, default=1.0)
    p.add_argument("--plot", help="write the two-column (|chi|, K*log|chi|) plot file here")
    add_common(p, ("csv", "json", "text"))

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("ray", "genus", "index", "start", "stop", "cap", "tol", "plot"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if getattr(args, "lifted_root", False):
        cfg.kind = "lifted_root"
    if getattr(args, "lifted_full", False):
        cfg.kind = "lifted_full"
    if hasattr(args, "format"):
        cfg.output_format = args.format
    for name in ("output", "stamp", "server"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "dump_chain"):
        cfg.dump_chain = args.dump_chain
    if hasattr(args, "intersections"):
        cfg.intersections = args.intersections
    if hasattr(args, "seam"):
        cfg.seam = args.seam
    if hasattr(args, "collar"):
        cfg.collar_override = args.collar
    if getattr(args, "no_computed_mixing", False):
        cfg.use_computed_mixing = False
    for name in ("c1", "c2"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if args.command == "serve":
        cfg.extra = {"host": args.host, "port": args.port}
    if args.command in ("bounds", "table") and (cfg.ray is None) == (cfg.genus is None):
        raise UsageError("supply exactly one of --ray / --genus")
    return cfg


RUNNERS = {
    "matrix": run_matrix,
    "mixing": run_mixing,
    "dilatation": run_dilatation,
    "bounds": run_bounds,
    "table": run_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = config_from_args(args)
        if cfg.command == "serve":
            run_serve(cfg)
            return EXIT_OK
        RUNNERS[cfg.command](cfg, ServiceClient(cfg.server))
        return EXIT_OK
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except FalsificationEvent as exc:
        print(f"FALSIFICATION: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except httpx.HTTPError as exc:
        print(f"service error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
