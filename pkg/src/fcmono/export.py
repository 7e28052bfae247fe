"""JSON form of matrices: {"m", "basis", "name", "entries"}."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Dict, List

from .linalg import Matrix
from .monodromy import named_matrices


def matrix_to_json(m: int, basis: str, name: str, M: Matrix, field) -> dict:
    return {"m": m, "basis": basis, "name": name, "entries": [[field.format(x) for x in r] for r in M.rows]}


def matrix_from_json(obj: dict, field) -> Matrix:
    if obj["m"] != field.m:
        raise ValueError(f"fixture has m={obj['m']}, field has m={field.m}")
    return Matrix([[field.parse(s) for s in r] for r in obj["entries"]])


def dumps(obj) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def export_all(field, bases=("plain", "tilde")) -> Dict[str, dict]:
    """File name -> JSON object for every named matrix."""
    out = {}
    for basis in bases:
        for name, M in named_matrices(field, basis).items():
            out[f"{basis}_{name}.json"] = matrix_to_json(field.m, basis, name, M, field)
    return out


def write_all(field, directory, bases=("plain", "tilde")) -> List[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for fname, obj in export_all(field, bases).items():
        path = directory / fname
        path.write_text(dumps(obj))
        paths.append(path)
    return paths
