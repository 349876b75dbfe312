"""Named test algebras and the bundled catalog of JSON files."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .free import FreeNilpotent, ideal_closure
from .lie import LieAlgebra
from .linalg import QQ, Field


def abelian(m: int, F: Field = QQ) -> LieAlgebra:
    return LieAlgebra(F, m, {}, [f"e{i + 1}" for i in range(m)], name=f"abelian{m}")


def heisenberg(n: int, F: Field = QQ) -> LieAlgebra:
    """``h_n``: ``[x_i, y_i] = z``."""
    br = {(i, n + i): {2 * n: 1} for i in range(n)}
    labels = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)] + ["z"]
    return LieAlgebra(F, 2 * n + 1, br, labels, name=f"heisenberg{n}")


def free_algebra(n: int, p: int, F: Field = QQ) -> LieAlgebra:
    """``f_{n,p}`` as a plain structure-constant algebra."""
    f = FreeNilpotent(n, p, F)
    return LieAlgebra(F, f.dim, f.sc, f.labels, name=f"free_{n}_{p}")


def free_quotient(n: int, p: int, relations, name: str, F: Field = QQ) -> LieAlgebra:
    """``f_{n,p}`` modulo the ideal generated by ``relations``.

    Each relation is a list of ``(coefficient, word)`` with words written as
    nested tuples of generator indices, e.g. ``[(1, (0, 1)), (1, (2, 3))]``.
    """
    f = FreeNilpotent(n, p, F)
    vecs = []
    for rel in relations:
        v: dict = {}
        for c, w in rel:
            for k, x in f.word(w).items():
                v[k] = F.red(v.get(k, 0) + F(c) * x)
        vecs.append({k: x for k, x in v.items() if x})
    q, _ = f.quotient(ideal_closure(f, vecs), name=name)
    return LieAlgebra(F, q.dim, q.sc, q.labels, name=name)


def builders(F: Field = QQ) -> dict:
    """Every bundled algebra by name, as zero-argument constructors."""
    out = {f"abelian{m}": (lambda m=m: abelian(m, F)) for m in range(1, 6)}
    out.update({
        "heisenberg1": lambda: heisenberg(1, F),
        "heisenberg2": lambda: heisenberg(2, F),
        "heisenberg3": lambda: heisenberg(3, F),
        "free_2_3": lambda: free_algebra(2, 3, F),
        "free_3_2": lambda: free_algebra(3, 2, F),
        "free_2_4": lambda: free_algebra(2, 4, F),
        # f_{n,2} / <X> for one X of each length
        "quot_3_2_len1": lambda: free_quotient(3, 2, [[(1, (0, 1))]], "quot_3_2_len1", F),
        "quot_4_2_len1": lambda: free_quotient(4, 2, [[(1, (0, 1))]], "quot_4_2_len1", F),
        "quot_4_2_len2": lambda: free_quotient(4, 2, [[(1, (0, 1)), (1, (2, 3))]], "quot_4_2_len2", F),
        # class 3, kernel of depth 2
        "quot_3_3_depth2": lambda: free_quotient(3, 3, [[(1, (0, 1))]], "quot_3_3_depth2", F),
        # class 3, kernel of depth 3
        "filiform4": lambda: free_quotient(2, 3, [[(1, (1, (0, 1)))]], "filiform4", F),
    })
    return out


def build(name: str, F: Field = QQ) -> LieAlgebra:
    try:
        return builders(F)[name]()
    except KeyError:
        raise KeyError(f"unknown catalog algebra {name!r}") from None


def catalog_dir() -> Path:
    return Path(str(resources.files("nilcoh") / "data" / "catalog"))


def catalog_files() -> list[Path]:
    return sorted(catalog_dir().glob("*.json"))


def load_catalog(F: Field | None = None) -> list[LieAlgebra]:
    """The bundled algebras; with ``F`` given, rebuilt over that field."""
    from .io import read_algebra
    if F is None:
        return [read_algebra(p) for p in catalog_files()]
    return [build(p.stem, F) for p in catalog_files()]


def write_catalog(directory=None) -> list[Path]:
    from .io import write_algebra
    d = Path(directory) if directory is not None else catalog_dir()
    d.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, make in builders().items():
        path = d / f"{name}.json"
        write_algebra(make(), path)
        paths.append(path)
    return paths
