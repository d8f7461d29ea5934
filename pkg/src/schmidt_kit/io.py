"""JSON and CSV file formats for states, density matrices and certificates.

Floating state:   {"m": 2, "n": 2, "amplitudes": [[re, im], ...]}
Exact state:      {"m": 3, "n": 3, "exact": true, "amplitudes": ["1/1", "-2/1", "1/2+1/3 i", ...]}
Density matrix:   {"m": 2, "n": 2, "density": [[[re, im], ...], ...]}
CSV state:        m rows of n real amplitudes (the coefficient matrix).
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path

import numpy as np

from schmidt_kit.exact import GaussianRational
from schmidt_kit.mixed import DensityMatrix, pure_density
from schmidt_kit.states import ExactState, PureState


def state_to_json(state: PureState | ExactState) -> dict:
    if isinstance(state, ExactState):
        return {
            "m": state.m,
            "n": state.n,
            "exact": True,
            "amplitudes": [str(a) for a in state.amplitudes],
        }
    return {
        "m": state.m,
        "n": state.n,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }


def _is_exact_payload(d: dict) -> bool:
    amps = d.get("amplitudes", [])
    return bool(d.get("exact")) or (bool(amps) and isinstance(amps[0], str))


def state_from_json(d: dict) -> PureState | ExactState:
    m, n = int(d["m"]), int(d["n"])
    amps = d["amplitudes"]
    if _is_exact_payload(d):
        return ExactState(m, n, tuple(GaussianRational.parse(a) for a in amps))
    values = []
    for a in amps:
        if isinstance(a, (list, tuple)):
            re, im = a
            values.append(complex(re, im))
        else:
            values.append(complex(a))
    return PureState(m, n, np.array(values))


def density_to_json(rho: DensityMatrix) -> dict:
    return {
        "m": rho.m,
        "n": rho.n,
        "density": [[[float(x.real), float(x.imag)] for x in row] for row in rho.entries],
    }


def density_from_json(d: dict) -> DensityMatrix:
    rows = d["density"]
    rho = np.array([[complex(re, im) for re, im in row] for row in rows])
    return DensityMatrix(int(d["m"]), int(d["n"]), rho)


def state_from_csv(text: str) -> PureState:
    rows = [[float(x) for x in r] for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("CSV state must be a rectangular grid of real amplitudes")
    M = np.array(rows, dtype=float)
    return PureState(M.shape[0], M.shape[1], M.reshape(-1))


def load_json(path: str | Path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(obj, path: str | Path | None = None) -> str:
    text = json.dumps(obj, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load_state(path: str | Path) -> PureState | ExactState:
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return state_from_csv(path.read_text())
    return state_from_json(load_json(path))


def load_density(path: str | Path) -> DensityMatrix:
    """Read a density matrix; pure-state files are turned into ``|v><v|``."""
    path = Path(path)
    if path.suffix.lower() == ".csv":
        return pure_density(state_from_csv(path.read_text()))
    d = load_json(path)
    if "density" in d:
        return density_from_json(d)
    state = state_from_json(d)
    if isinstance(state, ExactState):
        state = state.to_pure()
    return pure_density(state)


def load_schema(name: str) -> dict:
    """Shipped JSON schema by short name, e.g. ``"certificate"``."""
    text = resources.files("schmidt_kit").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def schema_names() -> list[str]:
    folder = resources.files("schmidt_kit").joinpath("schemas")
    return sorted(p.name[: -len(".schema.json")] for p in folder.iterdir() if p.name.endswith(".schema.json"))
