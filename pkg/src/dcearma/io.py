"""Plain-text model specs and CSV output.

Model spec grammar, one ``key = value`` per line, ``#`` starts a comment::

    p = 2                      # optional, checked against phi
    q = 1
    phi = 0.5, -0.2            # comma list, may be empty
    theta = 0.4
    alpha = 0.5
    atoms = -1:0.5, 1:0.5      # value:weight pairs
    continuous = gaussian:0:1  # or uniform:lo:hi

CSV files are UTF-8 with LF line ends. Provenance comments (``#seed=``,
``#version=``) come first, then the header row. Floats use 17 significant
digits so a fixed seed gives byte-identical files.
"""

from __future__ import annotations

import csv
import io as _io
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import __version__
from .arma import ArmaModel, SamplePath
from .distributions import DceDistribution, Gaussian, Uniform
from .errors import SpecParseError

__all__ = [
    "parse_model_spec",
    "load_model_spec",
    "format_model_spec",
    "fmt",
    "csv_text",
    "write_csv",
    "path_rows",
    "write_path_csv",
]

_KEYS = {"p", "q", "phi", "theta", "alpha", "atoms", "continuous"}


def _floats(text: str, key: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError as exc:
        raise SpecParseError(f"{key}: {exc}") from None


def _continuous(text: str):
    parts = [s.strip() for s in text.split(":")]
    kind = parts[0].lower()
    try:
        if kind == "gaussian" and len(parts) == 3:
            return Gaussian(float(parts[1]), float(parts[2]))
        if kind == "uniform" and len(parts) == 3:
            return Uniform(float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise SpecParseError(f"continuous: {exc}") from None
    raise SpecParseError(f"continuous: cannot parse {text!r}")


def parse_model_spec(text: str) -> ArmaModel:
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecParseError(f"line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in _KEYS:
            raise SpecParseError(f"line {lineno}: unknown key {key!r}")
        if key in fields:
            raise SpecParseError(f"line {lineno}: duplicate key {key!r}")
        fields[key] = value

    phi = _floats(fields.get("phi", ""), "phi")
    theta = _floats(fields.get("theta", ""), "theta")
    for key, coeffs in (("p", phi), ("q", theta)):
        if key in fields:
            try:
                declared = int(fields[key])
            except ValueError:
                raise SpecParseError(f"{key}: not an integer") from None
            if declared != len(coeffs):
                raise SpecParseError(f"{key} = {declared} but {len(coeffs)} coefficients given")

    try:
        alpha = float(fields.get("alpha", "1" if "atoms" not in fields else "0"))
    except ValueError:
        raise SpecParseError("alpha: not a number") from None

    atoms = []
    for tok in fields.get("atoms", "").split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            v, w = tok.split(":")
            atoms.append((float(v), float(w)))
        except ValueError:
            raise SpecParseError(f"atoms: cannot parse {tok!r}") from None

    cont = _continuous(fields["continuous"]) if "continuous" in fields else None
    try:
        dist = DceDistribution(alpha=alpha, atoms=tuple(atoms), continuous=cont)
        return ArmaModel(phi=phi, theta=theta, excitation=dist)
    except ValueError as exc:
        raise SpecParseError(str(exc)) from None


def load_model_spec(path: str | Path) -> ArmaModel:
    return parse_model_spec(Path(path).read_text(encoding="utf-8"))


def format_model_spec(model: ArmaModel) -> str:
    dist = model.excitation
    lines = [
        f"p = {model.p}",
        f"q = {model.q}",
        "phi = " + ", ".join(fmt(c) for c in model.phi),
        "theta = " + ", ".join(fmt(c) for c in model.theta),
        f"alpha = {fmt(dist.alpha)}",
    ]
    if dist.atoms:
        lines.append("atoms = " + ", ".join(f"{fmt(v)}:{fmt(w)}" for v, w in dist.atoms))
    if dist.continuous is not None and dist.continuous.spec() != "sum":
        lines.append(f"continuous = {dist.continuous.spec()}")
    return "\n".join(lines) + "\n"


def fmt(value) -> str:
    """Render one CSV cell; floats with 17 significant digits."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def csv_text(
    header: Sequence[str],
    rows: Iterable[Sequence],
    provenance: dict[str, object] | None = None,
) -> str:
    buf = _io.StringIO()
    meta = {"version": __version__}
    if provenance:
        meta = {**provenance, **meta}
    for key, value in meta.items():
        buf.write(f"#{key}={fmt(value)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows, provenance=None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(csv_text(header, rows, provenance))
    return path


def path_rows(path: SamplePath) -> list[tuple]:
    """Rows ``(t, x, xi, nu)`` covering both the block and the excitation window."""
    t0 = min(1, path.xi_start)
    rows = []
    for t in range(t0, path.n + 1):
        x = float(path.x[t - 1]) if t >= 1 else None
        if t >= path.xi_start:
            rows.append((t, x, path.xi_at(t), path.nu_at(t)))
        else:
            rows.append((t, x, None, None))
    return rows


def write_path_csv(dest, path: SamplePath, provenance=None) -> Path:
    return write_csv(dest, ("t", "x", "xi", "nu"), path_rows(path), provenance)
