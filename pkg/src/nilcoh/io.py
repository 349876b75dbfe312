"""Reading and writing Lie algebras as JSON.

The format is::

    {"name": "h1", "field": {"type": "rational"}, "dim": 3,
     "basis": ["x", "y", "z"],
     "brackets": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}]}

Indices are 0-based and every bracket entry needs ``i < j``.  Scalars are
strings: ``"a/b"`` or ``"a"`` over the rationals, a residue over a prime field.
"""

from __future__ import annotations

import json
from pathlib import Path

from .lie import LieAlgebra
from .linalg import Field


class AlgebraFileError(ValueError):
    pass


def algebra_to_dict(g: LieAlgebra) -> dict:
    F = g.F
    brackets = []
    for (i, j) in sorted(g.sc):
        coeffs = {str(k): F.format(x) for k, x in sorted(g.sc[(i, j)].items())}
        brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return {
        "name": g.name,
        "field": F.to_json(),
        "dim": g.dim,
        "basis": list(g.labels),
        "brackets": brackets,
    }


def algebra_from_dict(d: dict, check: bool = True) -> LieAlgebra:
    """Parse an algebra; structural problems raise :class:`AlgebraFileError`.

    A Jacobi failure raises :class:`nilcoh.lie.JacobiViolation` instead.
    """
    try:
        F = Field.from_json(d["field"])
        dim = int(d["dim"])
        basis = d.get("basis") or [f"e{i + 1}" for i in range(dim)]
        if len(basis) != dim:
            raise AlgebraFileError("basis length does not match dim")
        br = {}
        for entry in d.get("brackets", []):
            i, j = int(entry["i"]), int(entry["j"])
            if not 0 <= i < j < dim:
                raise AlgebraFileError(f"bracket entry needs 0 <= i < j < dim, got ({i}, {j})")
            if (i, j) in br:
                raise AlgebraFileError(f"duplicate bracket entry ({i}, {j})")
            coeffs = {}
            for k, s in entry["coeffs"].items():
                k = int(k)
                if not 0 <= k < dim:
                    raise AlgebraFileError(f"coefficient index {k} out of range")
                if not isinstance(s, str):
                    raise AlgebraFileError("scalars must be strings")
                coeffs[k] = F.parse(s)
            br[(i, j)] = coeffs
    except AlgebraFileError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise AlgebraFileError(f"malformed algebra file: {exc}") from exc
    return LieAlgebra(F, dim, br, basis, name=str(d.get("name", "")), check=check)


def read_algebra(path, check: bool = True) -> LieAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise AlgebraFileError("top level must be an object")
    return algebra_from_dict(data, check=check)


def write_algebra(g: LieAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_dict(g), indent=1) + "\n")
