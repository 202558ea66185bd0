"""Thin command-line client for the service.

Every subcommand marshals its arguments into the service's request models and
POSTs them to the FastAPI app -- in-process over ASGI by default, or to a
remote instance via --server.  Exit codes: 0 success, 1 verification failure,
2 input error.
"""

import argparse
import asyncio
import csv
import io
import json
import sys

import httpx

from . import config
from .series import load_coefficients

_IN_PROCESS_BASE = "http://cesaro.internal"


class CliInputError(Exception):
    """Bad user input (malformed measure text, missing file, rejected request)."""


class ServiceClient:
    """POSTs request payloads either in-process or to a remote server."""

    def __init__(self, server: str | None = None):
        self.server = server

    def post(self, path: str, payload: dict) -> dict:
        if self.server:
            with httpx.Client(base_url=self.server, timeout=None) as client:
                response = client.post(path, json=payload)
        else:
            response = asyncio.run(self._post_in_process(path, payload))
        if response.status_code >= 500:
            raise RuntimeError(f"service error {response.status_code}: {response.text}")
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise CliInputError(f"request rejected: {detail}")
        return response.json()

    @staticmethod
    async def _post_in_process(path: str, payload: dict):
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url=_IN_PROCESS_BASE,
                                     timeout=None) as client:
            return await client.post(path, json=payload)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(fieldnames, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _json_text(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _series_payload(path: str) -> dict:
    try:
        f = load_coefficients(path)
    except OSError as exc:
        raise CliInputError(f"cannot read coefficients: {exc}") from None
    except ValueError as exc:
        raise CliInputError(str(exc)) from None
    return {"real": [float(x) for x in f.coeffs.real],
            "imag": [float(x) for x in f.coeffs.imag]}


# ---------------------------------------------------------------------------
# subcommands


def cmd_moments(args) -> int:
    doc = ServiceClient(args.server).post(
        "/moments", {"measure": args.measure, "n": args.n, "depth": args.depth}
    )
    if args.format == "json":
        _emit(_json_text(doc), args.output)
    else:
        rows = [
            {"n": i, "moment": repr(v), "validated": doc["validated"]}
            for i, v in enumerate(doc["moments"])
        ]
        _emit(_csv_text(["n", "moment", "validated"], rows), args.output)
    return 0


def cmd_apply(args) -> int:
    payload = {
        "measure": args.measure,
        "alpha": args.alpha,
        "series": _series_payload(args.input),
    }
    doc = ServiceClient(args.server).post("/apply", payload)
    if args.format == "json":
        _emit(_json_text(doc), args.output)
        return 0
    series = doc["series"]
    rows = [
        {"index": i, "real": repr(re), "imag": repr(im)}
        for i, (re, im) in enumerate(zip(series["real"], series["imag"]))
    ]
    _emit(_csv_text(["index", "real", "imag"], rows), args.output)
    return 0


def cmd_norm(args) -> int:
    payload = {"norm": args.norm, "series": _series_payload(args.input)}
    if args.p is not None:
        payload["p"] = args.p
    if args.s is not None:
        payload["s"] = args.s
    doc = ServiceClient(args.server).post("/norm", payload)
    if args.format == "json":
        _emit(_json_text(doc), args.output)
    else:
        _emit(_csv_text(list(doc), [ {k: doc[k] for k in doc} ]), args.output)
    return 0


def _criterion_rows(doc: dict):
    # partial_sums sit at the dyadic checkpoints 2^8, 2^9, ...
    return [
        {
            "checkpoint": 1 << (8 + i),
            "partial_sum": repr(s),
            "tail_slope": doc["tail_slope"],
            "verdict": doc["verdict"],
            "analytic_verdict": doc["analytic_verdict"],
        }
        for i, s in enumerate(doc["partial_sums"])
    ]


def cmd_criterion(args) -> int:
    doc = ServiceClient(args.server).post(
        "/criterion",
        {"measure": args.measure, "alpha": args.alpha, "p": args.p, "n": args.n},
    )
    if args.format == "csv":
        _emit(_csv_text(
            ["checkpoint", "partial_sum", "tail_slope", "verdict", "analytic_verdict"],
            _criterion_rows(doc),
        ), args.output)
    else:
        _emit(_json_text(doc), args.output)
    return 0


def cmd_theorem(args) -> int:
    if args.format == "csv":
        raise CliInputError("theorem emits one consolidated JSON document; use --format json")
    payload = {"measure": args.measure, "alpha": args.alpha, "p": args.p, "n": args.n}
    if args.degrees:
        payload["degrees"] = args.degrees
    doc = ServiceClient(args.server).post("/theorem", payload)
    _emit(_json_text(doc), args.output)
    return 0


def cmd_verify(args) -> int:
    doc = ServiceClient(args.server).post("/verify", {"lemma": args.lemma})
    if args.format == "json":
        _emit(_json_text(doc), args.output)
    else:
        lines = []
        for case in doc["cases"]:
            detail = " ".join(f"{k}={v:.6g}" for k, v in case["detail"].items())
            status = "PASS" if case["passed"] else "FAIL"
            lines.append(f"[{status}] {case['label']}: {detail}")
        lines.append(f"suite {doc['lemma']}: {'PASS' if doc['passed'] else 'FAIL'}")
        _emit("\n".join(lines) + "\n", args.output)
    if not doc["passed"]:
        if args.format != "json":
            sys.stderr.write(f"verification suite {args.lemma} failed\n")
        return 1
    return 0


def cmd_sweep(args) -> int:
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliInputError(f"cannot read config: {exc}") from None
    except ValueError as exc:
        raise CliInputError(f"config is not valid JSON: {exc}") from None
    measures_list = cfg.get("measures") or ([cfg["measure"]] if "measure" in cfg else None)
    alphas = cfg.get("alphas") or ([cfg["alpha"]] if "alpha" in cfg else None)
    ps = cfg.get("ps") or ([cfg["p"]] if "p" in cfg else None)
    if not (measures_list and alphas and ps):
        raise CliInputError("sweep config needs measures, alphas and ps (or singular forms)")
    n = int(cfg.get("n", config.DEFAULT_MAX_DEGREE))
    fmt = args.format or cfg.get("format", "csv")
    output = args.output or cfg.get("output")
    client = ServiceClient(args.server)
    records = []
    for measure in measures_list:
        for alpha in alphas:
            for p in ps:
                records.append(client.post(
                    "/criterion", {"measure": measure, "alpha": alpha, "p": p, "n": n}
                ))
    if fmt == "json":
        _emit(_json_text(records), output)
    else:
        rows = [
            {
                "family": doc["family"],
                "params": json.dumps(doc["params"], sort_keys=True),
                "alpha": doc["alpha"],
                "p": doc["p"],
                "verdict": doc["verdict"],
                "analytic_verdict": doc["analytic_verdict"],
                "tail_slope": doc["tail_slope"],
                "final_partial_sum": repr(doc["partial_sums"][-1]),
            }
            for doc in records
        ]
        _emit(_csv_text(list(rows[0]), rows), output)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("cesaro.service.app:app", host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cesaro",
        description="Generalized Cesaro-like operator toolkit (thin client for the service)",
    )
    parser.add_argument("--server", default=None,
                        help="URL of a running service (default: run in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format="csv"):
        p.add_argument("--format", choices=["csv", "json"], default=default_format)
        p.add_argument("--output", default=None, help="write to a file instead of stdout")

    p = sub.add_parser("moments", help="moment sequence of a measure")
    p.add_argument("--measure", required=True, help='e.g. "beta: c=1 s=2" or "atoms: (0.5,1.0)"')
    p.add_argument("--n", type=int, default=64, help="highest moment index")
    p.add_argument("--depth", type=int, default=4, help="finite-difference validation depth")
    add_common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("apply", help="apply the operator to a coefficient CSV")
    p.add_argument("--measure", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--input", required=True, help="coefficient CSV (index,real,imag)")
    add_common(p)
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("norm", help="norm report for a coefficient CSV")
    p.add_argument("--norm", required=True, choices=["bloch", "besov", "besov1", "mean-lipschitz"])
    p.add_argument("--input", required=True)
    p.add_argument("--p", type=float, default=None, help="exponent for the besov norm")
    p.add_argument("--s", type=float, default=None, help="exponent for the mean-lipschitz norm")
    add_common(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("criterion", help="summability criterion report")
    p.add_argument("--measure", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, default=1 << 14)
    add_common(p, default_format="json")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("theorem", help="verdict plus growth/compactness probes (JSON)")
    p.add_argument("--measure", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, default=1 << 14)
    p.add_argument("--degrees", type=lambda s: [int(x) for x in s.split(",")], default=None,
                   help="comma-separated probe degrees")
    add_common(p, default_format="json")
    p.set_defaults(func=cmd_theorem)

    p = sub.add_parser("verify", help="run a built-in verification suite")
    p.add_argument("--lemma", required=True,
                   choices=["2.1", "2.2", "2.3", "2.4", "inner-sum", "forms"])
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run a criterion grid from a JSON config file")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliInputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except RuntimeError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
