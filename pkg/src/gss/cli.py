"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 computation error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import bell, concentration, entanglement, states
from .pauli import PauliOperator

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COMPUTE = 3
EXIT_IO = 4

COMMANDS = ("build", "spectrum", "ppt", "bell", "sweep", "concentrate")
_DEFAULT_FORMAT = {
    "build": "json",
    "spectrum": "json",
    "ppt": "csv",
    "bell": "csv",
    "sweep": "csv",
    "concentrate": "json",
}


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    output: Path | None = None
    fmt: str = "json"


class _InputError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), help="output format")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--input", type=Path, help="operator JSON produced by `build`")
    source.add_argument("--n", type=int, help="GSS on 2n qubits (ignored with --input)")
    source.add_argument("--p", type=float, default=1.0, help="noise weight, 1 = pure GSS")

    parser = argparse.ArgumentParser(prog="gss", description="Generalised Smolin state toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="emit a state as operator JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=1.0)
    p.add_argument("--form", choices=("recursive", "closed", "noisy", "separable-third"), default="closed")

    p = sub.add_parser("spectrum", parents=[common, source], help="eigenvalues of a state")
    p.add_argument("--method", choices=("auto", "dense", "sector"), default="auto")

    p = sub.add_parser("ppt", parents=[common, source], help="partial-transpose scan over cut sizes")
    p.add_argument("--tol", type=float, default=entanglement.PPT_TOL)
    p.add_argument("--max-subsets", type=int, default=256)

    p = sub.add_parser("bell", parents=[common, source], help="CHSH-type value of a state")
    p.add_argument("--settings", default="canonical", help="'canonical' or a settings JSON file")

    p = sub.add_parser("sweep", parents=[common], help="CHSH value of noisy GSS over a p grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=21)

    p = sub.add_parser("concentrate", parents=[common], help="remote information concentration")
    p.add_argument("--m", type=int, required=True, help="number of clones")
    p.add_argument("--a-re", type=float, default=1.0)
    p.add_argument("--a-im", type=float, default=0.0)
    p.add_argument("--b-re", type=float, default=0.0)
    p.add_argument("--b-im", type=float, default=0.0)
    p.add_argument("--channel", type=Path, help="channel operator JSON (default: GSS on 2m qubits)")
    p.add_argument("--emit", choices=("summary", "full"), default="summary")
    return parser


def parse_args(argv: list[str] | None = None) -> RunConfig:
    """Parse and validate ``argv``; usage errors exit with status 2."""
    parser = _build_parser()
    ns = parser.parse_args(argv)
    params = {k: v for k, v in vars(ns).items() if k not in ("command", "output", "fmt")}
    cmd = ns.command

    if "p" in params and not 0.0 <= params["p"] <= 1.0:
        parser.error(f"--p must lie in [0, 1], got {params['p']}")
    if cmd in ("spectrum", "ppt", "bell") and params.get("input") is None and params.get("n") is None:
        parser.error(f"{cmd} needs --input or --n")
    if params.get("n") is not None and params["n"] < 1:
        parser.error(f"--n must be >= 1, got {params['n']}")
    if cmd == "ppt" and params["tol"] < 0:
        parser.error("--tol must be >= 0")
    if cmd == "sweep":
        if not 0.0 <= params["p_min"] <= params["p_max"] <= 1.0:
            parser.error("need 0 <= --p-min <= --p-max <= 1")
        if params["steps"] < 1:
            parser.error("--steps must be >= 1")
    if cmd == "concentrate":
        a = complex(params["a_re"], params["a_im"])
        b = complex(params["b_re"], params["b_im"])
        try:
            params["cloning"] = concentration.CloningParams(params["m"], a, b)
        except ValueError as exc:
            parser.error(str(exc))
        if params["m"] > concentration.DENSE_PROTOCOL_LIMIT:
            parser.error(f"--m above the dense protocol limit {concentration.DENSE_PROTOCOL_LIMIT}")

    return RunConfig(cmd, params, ns.output, ns.fmt or _DEFAULT_FORMAT[cmd])


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        cells = []
        for v in row:
            if isinstance(v, bool):
                cells.append("true" if v else "false")
            elif isinstance(v, float):
                cells.append(_fmt(v))
            elif v is None:
                cells.append("")
            else:
                cells.append(str(v))
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc


def _load_state(params: dict) -> tuple[PauliOperator, float | None]:
    if params.get("input") is not None:
        return PauliOperator.from_json(_read_text(params["input"])), None
    return states.noisy_gss(params["n"], params["p"]), params["p"]


def _run(config: RunConfig) -> str:
    cmd, params, fmt = config.command, config.params, config.fmt

    if cmd == "build":
        gp = states.GssParams(params["n"], params["p"])
        op = states.build(gp, params["form"])
        if fmt == "csv":
            return _csv(["string", "coeff"], [[s, c] for s, c in sorted(op.items())])
        return _json(op.to_dict())

    if cmd == "spectrum":
        op, _ = _load_state(params)
        eig = entanglement.spectrum(op, params["method"])
        if fmt == "csv":
            return _csv(["index", "eigenvalue"], [[i, float(v)] for i, v in enumerate(eig)])
        return _json({"n_qubits": op.n_qubits, "eigenvalues": [float(v) for v in eig]})

    if cmd == "ppt":
        op, _ = _load_state(params)
        reports = entanglement.cut_scan(op, params["tol"], max_subsets=params["max_subsets"])
        if fmt == "csv":
            return _csv(
                ["subset_size", "min_pt_eig", "is_ppt"],
                [[r.subset_size, float(r.min_pt_eigenvalue), r.is_ppt] for r in reports],
            )
        return _json(
            {
                "cuts": [
                    {
                        "subset_size": r.subset_size,
                        "min_pt_eig": float(r.min_pt_eigenvalue),
                        "is_ppt": r.is_ppt,
                        "representative_subset": list(r.representative_subset),
                    }
                    for r in reports
                ]
            }
        )

    if cmd == "bell":
        op, p = _load_state(params)
        if params["settings"] == "canonical":
            settings = bell.canonical_settings(op.n_qubits)
        else:
            settings = bell.BellSettings.from_json(_read_text(Path(params["settings"])))
        value = bell.chsh_value(op, settings)
        row = bell.SweepRow(p, value, bell.violates(value))
        if fmt == "csv":
            return _csv(["p", "chsh_value", "violates"], [[row.p, row.chsh_value, row.violates]])
        return _json({"p": row.p, "chsh_value": row.chsh_value, "violates": row.violates})

    if cmd == "sweep":
        grid = np.linspace(params["p_min"], params["p_max"], params["steps"])
        rows = bell.sweep(params["n"], grid)
        if fmt == "csv":
            return _csv(["p", "chsh_value", "violates"], [[r.p, r.chsh_value, r.violates] for r in rows])
        return _json({"n": params["n"], "rows": [vars(r) for r in rows]})

    if cmd == "concentrate":
        channel = None
        if params.get("channel") is not None:
            channel = PauliOperator.from_json(_read_text(params["channel"]))
        result = concentration.run_concentration(params["cloning"], channel)
        if fmt == "csv":
            return _csv(
                ["outcome", "probability", "fidelity"],
                [["".join(map(str, o.outcome)), o.probability, o.fidelity] for o in result.outcomes],
            )
        return _json(result.to_dict(params["emit"]))

    raise ValueError(f"unknown command {cmd!r}")


def execute(config: RunConfig) -> int:
    """Run a validated config, writing to ``config.output`` or stdout."""
    try:
        text = _run(config)
    except _InputError as exc:
        print(f"gss {config.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        print(f"gss {config.command}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        if config.output is None:
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(config.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"gss {config.command}: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    return execute(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
