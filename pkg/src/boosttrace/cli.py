"""Command-line front end: a thin client of the HTTP service.

By default the client talks to an in-process instance of the service (no
socket, single process); pass --server to target a running remote
instance instead.  All computation happens behind the service API; the
CLI only assembles requests from config files / flags and writes the
returned artifacts to disk.

Exit codes: 0 success, 1 usage error, 2 data error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import httpx

from .config import ExperimentConfig, config_from_mapping, parse_config_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3

_AXIS_DEFAULT_VALUES = {
    "depth": "1,2,3,4,5,6",
    "shrinkage": "1.0,0.1",
    "subsample": "1.0,0.8",
    "loss": "exponential,deviance",
}


class CliError(Exception):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind

    @property
    def exit_code(self) -> int:
        return EXIT_DATA if self.kind == "data" else EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; we use 1 for usage
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class ServiceClient:
    """requests-style client; in-process ASGI transport unless --server given."""

    def __init__(self, server: str | None = None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.filterwarnings("ignore", message="Using `httpx` with `starlette.testclient`")
                from starlette.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code != 200:
            try:
                body = response.json()
            except ValueError:
                body = {}
            raise CliError(body.get("kind", "data"),
                           body.get("message", f"service error {response.status_code}"))
        return response.json()


def _add_experiment_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", metavar="PATH", help="flat key=value config file")
    p.add_argument("--dataset", metavar="PATH|artificial", help="CSV path or 'artificial'")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--informative", type=int)
    p.add_argument("--clusters", type=int)
    p.add_argument("--flip", type=float)
    p.add_argument("--rounds", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--loss", choices=["exponential", "deviance"])
    p.add_argument("--shrinkage", type=float)
    p.add_argument("--subsample", type=float)
    p.add_argument("--bins", type=int)
    p.add_argument("--runs", type=int)
    p.add_argument("--test-fraction", type=float, dest="test_fraction")
    p.add_argument("--seed", type=int)
    p.add_argument("--lmc-tol", type=float, dest="lmc_tolerance")
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--plot", action="store_const", const=True, default=None)


def build_parser() -> _Parser:
    parser = _Parser(prog="boosttrace", description=__doc__)
    parser.add_argument("--server", metavar="URL", help="remote service URL (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_experiment_flags(sub.add_parser("gen-data", help="write an artificial dataset CSV"))
    _add_experiment_flags(sub.add_parser("inspect", help="dataset information report"))
    _add_experiment_flags(sub.add_parser("run", help="run the trajectory experiment"))

    sweep = sub.add_parser("sweep", help="run once per hyperparameter setting")
    _add_experiment_flags(sweep)
    sweep.add_argument("--axis", required=True, choices=["depth", "shrinkage", "subsample", "loss"])
    sweep.add_argument("--values", metavar="V1,V2,...", help="settings (defaults per axis)")

    ver = sub.add_parser("verify", help="run the lemma/theorem/table check suites")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--instances", type=int, default=500)
    ver.add_argument("--out", metavar="DIR", default="results")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _experiment_config(args) -> ExperimentConfig:
    base = ExperimentConfig()
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as e:
            raise CliError("data", f"cannot read config {args.config}: {e}") from e
        try:
            base = config_from_mapping(base, **parse_config_text(text))
        except ValueError as e:
            raise CliError("usage", str(e)) from e
    overrides = {
        name: getattr(args, name)
        for name in ("dataset", "n", "d", "informative", "clusters", "flip", "rounds",
                     "depth", "loss", "shrinkage", "subsample", "bins", "runs",
                     "test_fraction", "seed", "lmc_tolerance", "out", "plot")
    }
    try:
        return config_from_mapping(base, **overrides)
    except ValueError as e:
        raise CliError("usage", str(e)) from e


def _artificial_payload(cfg: ExperimentConfig) -> dict:
    return {
        "n": cfg.n,
        "d": cfg.d,
        "informative": cfg.informative,
        "clusters": cfg.clusters,
        "flip": cfg.flip,
        "seed": cfg.seed,
    }


def _read_dataset_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise CliError("data", f"cannot read dataset {path}: {e}") from e


def _run_payload(cfg: ExperimentConfig) -> dict:
    payload = {
        "rounds": cfg.rounds,
        "depth": cfg.depth,
        "loss": cfg.loss,
        "shrinkage": cfg.shrinkage,
        "subsample": cfg.subsample,
        "bins": cfg.bins,
        "runs": cfg.runs,
        "test_fraction": cfg.test_fraction,
        "seed": cfg.seed,
        "lmc_tolerance": cfg.lmc_tolerance,
        "plot": cfg.plot,
    }
    if cfg.dataset == "artificial":
        payload["artificial"] = _artificial_payload(cfg)
    else:
        payload["csv_text"] = _read_dataset_text(cfg.dataset)
    return payload


def _write(path: Path, content: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(content)


def _write_run_outputs(out_dir: Path, result: dict):
    for summary, csv_text in zip(result["runs"], result["run_csvs"]):
        _write(out_dir / f"trajectory_run_{summary['run_index']}.csv", csv_text)
    _write(out_dir / "trajectory_avg.csv", result["avg_csv"])
    _write(out_dir / "summary.txt", result["summary"])
    if result.get("svg"):
        _write(out_dir / "plane.svg", result["svg"])


def _describe_run(result: dict) -> str:
    avg = result["averaged"]["characteristic"]
    lmc = avg["lmc_round"]
    present = sum(1 for r in result["runs"] if r["characteristic"]["lmc_round"] is not None)
    return (
        f"runs: {len(result['runs'])} (lmc reached in {present})  "
        f"avg: train_min@{avg['train_min_round']} test_min@{avg['test_min_round']} "
        f"margin_max@{avg['margin_max_round']} lmc@{'none' if lmc is None else lmc}"
    )


def cmd_gen_data(client: ServiceClient, args) -> int:
    cfg = _experiment_config(args)
    result = client.post("/datasets/generate", _artificial_payload(cfg))
    path = Path(cfg.out) / "dataset.csv"
    _write(path, result["csv_text"])
    print(f"wrote {path}: n={result['n']} d={result['d']} "
          f"positive={result['positive_count']} negative={result['negative_count']}")
    return EXIT_OK


def cmd_inspect(client: ServiceClient, args) -> int:
    cfg = _experiment_config(args)
    if cfg.dataset == "artificial":
        raise CliError("usage", "inspect needs --dataset PATH")
    result = client.post(
        "/datasets/inspect",
        {"csv_text": _read_dataset_text(cfg.dataset), "bins": cfg.bins, "seed": cfg.seed},
    )
    print(f"rows: {result['n']}")
    print(f"features: {result['d']}")
    print(f"bins: {result['bins']}")
    print(f"H(X): {result['h_x']:.6f} bits")
    print(f"H(Y): {result['h_y']:.6f} bits")
    print(f"I(X;Y): {result['i_xy']:.6f} bits "
          f"(I/H(X)={result['i_xy_over_h_x']:.6f}, I/H(Y)={result['i_xy_over_h_y']:.6f})")
    print(f"noiseless after discretization: {result['noiseless_after_discretization']}")
    print(f"LMC target: ({result['lmc_target_x']:.6f}, {result['lmc_target_y']:.6f})")
    return EXIT_OK


def cmd_run(client: ServiceClient, args) -> int:
    cfg = _experiment_config(args)
    result = client.post("/experiments/run", _run_payload(cfg))
    out_dir = Path(cfg.out)
    _write_run_outputs(out_dir, result)
    print(f"wrote {out_dir}/trajectory_run_*.csv, trajectory_avg.csv, summary.txt"
          + (", plane.svg" if result.get("svg") else ""))
    print(_describe_run(result))
    return EXIT_OK


def cmd_sweep(client: ServiceClient, args) -> int:
    cfg = _experiment_config(args)
    raw_values = args.values if args.values is not None else _AXIS_DEFAULT_VALUES[args.axis]
    values = [v.strip() for v in raw_values.split(",") if v.strip()]
    if not values:
        raise CliError("usage", "sweep needs a non-empty --values list")
    result = client.post(
        "/experiments/sweep",
        {"base": _run_payload(cfg), "axis": args.axis, "values": values},
    )
    out_dir = Path(cfg.out)
    for setting in result["settings"]:
        _write_run_outputs(out_dir / setting["label"], setting["result"])
        print(f"{setting['label']}: {_describe_run(setting['result'])}")
    return EXIT_OK


def cmd_verify(client: ServiceClient, args) -> int:
    result = client.post("/verify", {"seed": args.seed, "instances": args.instances})
    out_dir = Path(args.out)
    for report in result["reports"]:
        _write(out_dir / f"check_{report['name']}.txt", report["text"])
        print(f"{report['name']}: {'PASS' if report['passed'] else 'FAIL'}")
    if not result["passed"]:
        print("verification FAILED", file=sys.stderr)
        return EXIT_VERIFY
    print("all checks passed")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return cmd_serve(args)
        client = ServiceClient(args.server)
        handler = {
            "gen-data": cmd_gen_data,
            "inspect": cmd_inspect,
            "run": cmd_run,
            "sweep": cmd_sweep,
            "verify": cmd_verify,
        }[args.command]
        return handler(client, args)
    except CliError as e:
        print(f"error ({e.kind}): {e}", file=sys.stderr)
        return e.exit_code
    except httpx.HTTPError as e:
        print(f"error (service): {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
