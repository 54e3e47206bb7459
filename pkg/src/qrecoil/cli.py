"""Command-line client for the compute service.

Commands parse the run configuration, call the corresponding service endpoint
(in-process by default, over the network with --server), and write CSV/JSON
files into the output directory.  Exit codes: 0 ok, 1 usage, 2 validation
failure, 3 numerical failure.
"""

import asyncio
import json
import sys
from pathlib import Path

import click
import httpx
import numpy as np

from .config import load_config
from .csvio import write_csv
from .errors import DomainError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

_REQUEST_KEYS = (
    "mass_amu", "temperature_K", "gamma_ps_inv", "omega_c_ps_inv", "omega0_ps_inv",
    "dK_inv_A", "n_modes", "omega_max_ps_inv", "t_min_ps", "t_max_ps", "n_t",
    "seed", "window",
)


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)

    async def _call():
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://qrecoil",
                                     timeout=600.0) as client:
            return await client.post(path, json=payload)

    return asyncio.run(_call())


def _fail(message: str, code: int):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _run_command(endpoint: str, config, sets, out, server) -> tuple[dict, Path]:
    try:
        text = Path(config).read_text(encoding="utf-8") if config else None
        cfg = load_config(text, list(sets), output_dir=out)
    except (DomainError, OSError) as exc:
        _fail(str(exc), EXIT_USAGE)
    payload = {key: getattr(cfg, key) for key in _REQUEST_KEYS}
    response = _post(server, endpoint, payload)
    if response.status_code != 200:
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        if isinstance(detail, dict):
            category = detail.get("category", "numerical")
            message = detail.get("message", str(detail))
        else:
            category, message = "usage", str(detail)
        _fail(f"{endpoint} failed ({response.status_code}): {message}",
              EXIT_USAGE if category == "usage" else EXIT_NUMERICAL)
    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return response.json(), out_dir


def _common(f):
    f = click.option("--server", default=None, metavar="URL",
                     help="Remote service URL; default runs the service in-process.")(f)
    f = click.option("--out", default=".", metavar="DIR", help="Output directory.")(f)
    f = click.option("--set", "sets", multiple=True, metavar="KEY=VALUE",
                     help="Override a config key (repeatable).")(f)
    f = click.option("--config", default=None, metavar="PATH",
                     help="Config file, one `key = value` per line.")(f)
    return f


@click.group()
def main():
    """Quantum scattering correlators for a particle coupled to a harmonic bath."""


@main.command()
@_common
def kernel(config, sets, out, server):
    """Write the friction kernel gamma(t) to kernel.csv."""
    data, out_dir = _run_command("/kernel", config, sets, out, server)
    write_csv(out_dir / "kernel.csv", ["t_ps", "gamma_t_per_ps2"],
              [data["t_ps"], data["gamma_t_per_ps2"]])
    click.echo(f"wrote {out_dir / 'kernel.csv'}")


@main.command()
@_common
def modes(config, sets, out, server):
    """Write the normal-mode spectrum to modes.csv."""
    data, out_dir = _run_command("/modes", config, sets, out, server)
    write_csv(out_dir / "modes.csv", ["omega_k_ps_inv", "dk_sq"],
              [data["omega_k_ps_inv"], data["dk_sq"]])
    if data["truncation_warning"]:
        click.echo("warning: omega_max leaves more than 1% of the spectral mass "
                   "uncovered", err=True)
    click.echo(f"wrote {out_dir / 'modes.csv'}")


@main.command()
@_common
def correlate(config, sets, out, server):
    """Write phi, psi, psi_Q, X, Y to correlators.csv."""
    data, out_dir = _run_command("/correlate", config, sets, out, server)
    header = ["t_ps", "phi", "psi_A2ps2", "psiQ_A2ps2", "X_A2", "Y_A2_per_meVps"]
    write_csv(out_dir / "correlators.csv", header, [data[k] for k in header])
    click.echo(f"wrote {out_dir / 'correlators.csv'}")


@main.command()
@_common
def isf(config, sets, out, server):
    """Write the complex ISF and recoil factor to isf.csv."""
    data, out_dir = _run_command("/isf", config, sets, out, server)
    header = ["t_ps", "re_isf", "im_isf", "re_recoil", "im_recoil"]
    write_csv(out_dir / "isf.csv", header, [data[k] for k in header])
    click.echo(f"wrote {out_dir / 'isf.csv'}")


@main.command()
@_common
def dsf(config, sets, out, server):
    """Write the dynamic structure factor to dsf.csv."""
    data, out_dir = _run_command("/dsf", config, sets, out, server)
    write_csv(out_dir / "dsf.csv", ["E_meV", "S"], [data["E_meV"], data["S"]])
    click.echo(f"wrote {out_dir / 'dsf.csv'} (window={data['window']}, "
               f"balance_residual={data['balance_residual']:.3e})")


@main.command()
@_common
def validate(config, sets, out, server):
    """Run all cross-route checks; write validation.json; exit 2 on failure."""
    data, out_dir = _run_command("/validate", config, sets, out, server)
    path = out_dir / "validation.json"
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8", newline="\n")
    for check in data["checks"]:
        status = "pass" if check["passed"] else "FAIL"
        click.echo(f"{status}  {check['name']}: {check['value']:.3e} "
                   f"{check['comparison']} {check['threshold']:.3e}")
    click.echo(f"wrote {path}")
    if not data["passed"]:
        _fail("validation failed; see validation.json", EXIT_VALIDATION)


def _write_figure(data: dict, out_dir: Path, stem: str, value_prefix: str) -> Path:
    header = ["t_ps"] + [f"{value_prefix}_{label}" for label in data["labels"]]
    columns = [np.asarray(data["t_ps"])] + [np.asarray(c) for c in data["curves"]]
    path = out_dir / f"{stem}.csv"
    write_csv(path, header, columns)
    return path


@main.command()
@_common
def figure1(config, sets, out, server):
    """Write the recoil-function curve family to figure1.csv."""
    data, out_dir = _run_command("/figure1", config, sets, out, server)
    path = _write_figure(data, out_dir, "figure1", "Y_A2_per_meVps")
    click.echo(f"wrote {path}")


@main.command()
@_common
def figure2(config, sets, out, server):
    """Write Im of the recoil factor for the curve family to figure2.csv."""
    data, out_dir = _run_command("/figure2", config, sets, out, server)
    path = _write_figure(data, out_dir, "figure2", "im_recoil")
    click.echo(f"wrote {path}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
