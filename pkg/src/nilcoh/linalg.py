"""Exact scalar fields, sparse-row matrices and echelonized subspaces.

Scalars are plain numbers: ``gmpy2.mpq`` over the rationals and Python ints
in ``[0, p)`` over a prime field.  Arithmetic is done with the ordinary
operators and normalized with :meth:`Field.red` before a value is stored or
compared with zero.  Division always goes through :meth:`Field.inv`.

Vectors are sparse dicts ``{column: scalar}`` without explicit zeros.
"""

from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz


class FieldMismatch(ValueError):
    pass


class AmbientMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Field:
    """The rationals (``p == 0``) or the prime field of order ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = int(p)

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def zero(self):
        return mpq(0) if self.p == 0 else 0

    @property
    def one(self):
        return mpq(1) if self.p == 0 else 1

    def __call__(self, x):
        """Coerce an int, str, Fraction or mpq into this field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, Fraction) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def red(self, x):
        return x if self.p == 0 else x % self.p

    def inv(self, x):
        if self.p == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / mpq(x)
        return pow(int(x), -1, self.p)

    def parse(self, s: str):
        s = s.strip()
        if self.p == 0:
            if "/" in s:
                a, b = s.split("/")
                if int(b) <= 0:
                    raise ValueError(f"bad denominator in {s!r}")
                return mpq(int(a), int(b))
            return mpq(int(s))
        if "/" in s:
            a, b = s.split("/")
            return self(Fraction(int(a), int(b)))
        return int(s) % self.p

    def format(self, x) -> str:
        x = self.red(x)
        if self.p == 0:
            x = mpq(x)
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(int(x))

    def to_json(self) -> dict:
        return {"type": "rational"} if self.p == 0 else {"type": "prime", "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> "Field":
        if d.get("type") == "rational":
            return QQ
        if d.get("type") == "prime":
            return cls(int(d["p"]))
        raise ValueError(f"unknown field description {d!r}")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# --- sparse vector helpers -------------------------------------------------


def vec_add(F: Field, u: dict, v: dict, scale=1) -> dict:
    """Return ``u + scale * v``."""
    out = dict(u)
    for k, b in v.items():
        x = F.red(out.get(k, 0) + scale * b)
        if x:
            out[k] = x
        else:
            out.pop(k, None)
    return out


def vec_axpy(F: Field, out: dict, v: dict, scale) -> None:
    """In place ``out += scale * v``."""
    for k, b in v.items():
        x = F.red(out.get(k, 0) + scale * b)
        if x:
            out[k] = x
        else:
            out.pop(k, None)


def vec_scale(F: Field, v: dict, a) -> dict:
    a = F.red(a)
    if not a:
        return {}
    return {k: F.red(a * x) for k, x in v.items()}


def dense(v: dict, n: int, F: Field) -> list:
    z = F.zero
    return [v.get(i, z) for i in range(n)]


def sparse(F: Field, seq) -> dict:
    out = {}
    for i, x in enumerate(seq):
        x = F(x)
        if x:
            out[i] = x
    return out


# --- echelon engine --------------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are sparse dicts whose pivot (smallest column) equals one, and every
    pivot column is zero in all other rows.  This is Gauss-Jordan elimination
    on sparse rows; the dense :func:`rref` uses fraction-free elimination.
    """

    __slots__ = ("F", "ncols", "rows")

    def __init__(self, F: Field, ncols: int, vectors=()):
        self.F = F
        self.ncols = ncols
        self.rows: dict[int, dict] = {}
        for v in vectors:
            self.add(v)

    def copy(self) -> "Echelon":
        e = Echelon(self.F, self.ncols)
        e.rows = {c: dict(r) for c, r in self.rows.items()}
        return e

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Normal form of ``v`` modulo the row space (zero at every pivot)."""
        F, rows = self.F, self.rows
        out = {k: x for k, x in v.items() if x}
        for c in [c for c in v if c in rows]:
            a = out.get(c)
            if a:
                vec_axpy(F, out, rows[c], -a)
        return out

    def add(self, v: dict) -> bool:
        """Insert ``v``; return False when it was already in the span."""
        F = self.F
        w = self.reduce(v)
        if not w:
            return False
        c = min(w)
        inv = F.inv(w[c])
        w = {k: F.red(x * inv) for k, x in w.items()}
        for row in self.rows.values():
            a = row.get(c)
            if a:
                vec_axpy(F, row, w, -a)
        self.rows[c] = w
        return True

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def sorted_rows(self) -> list[dict]:
        return [self.rows[c] for c in sorted(self.rows)]

    def nullspace_vectors(self) -> list[dict]:
        """Standard basis of ``{x : row . x = 0 for all rows}``."""
        F = self.F
        piv = self.rows
        free_cols = [j for j in range(self.ncols) if j not in piv]
        col_hits: dict[int, list] = {}
        for c, row in piv.items():
            for j, a in row.items():
                if j != c:
                    col_hits.setdefault(j, []).append((c, a))
        out = []
        for f in free_cols:
            v = {f: F.one}
            for c, a in col_hits.get(f, ()):
                v[c] = F.red(-a)
            out.append(v)
        return out


# --- matrices --------------------------------------------------------------


class Matrix:
    """An ``nrows x ncols`` matrix over a field, stored as sparse rows."""

    __slots__ = ("F", "nrows", "ncols", "rows")

    def __init__(self, F: Field, nrows: int, ncols: int, rows=None):
        self.F = F
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        self.rows: list[dict] = rows

    @classmethod
    def from_lists(cls, F: Field, data, ncols: int | None = None) -> "Matrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            row = {}
            for j, x in enumerate(r):
                x = F(x)
                if x:
                    row[j] = x
            rows.append(row)
        return cls(F, len(rows), ncols, rows)

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        return cls(F, n, n, [{i: F.one} for i in range(n)])

    @classmethod
    def zeros(cls, F: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(F, nrows, ncols)

    @classmethod
    def from_columns(cls, F: Field, nrows: int, cols: list[dict]) -> "Matrix":
        m = cls(F, nrows, len(cols))
        for j, col in enumerate(cols):
            for i, a in col.items():
                m.rows[i][j] = a
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, self.F.zero)

    def to_lists(self) -> list[list]:
        return [dense(r, self.ncols, self.F) for r in self.rows]

    def columns(self) -> list[dict]:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, a in r.items():
                cols[j][i] = a
        return cols

    @property
    def T(self) -> "Matrix":
        return Matrix(self.F, self.ncols, self.nrows, self.columns())

    def apply(self, v: dict) -> dict:
        """Matrix times a sparse column vector."""
        F = self.F
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            if len(r) < len(v):
                for j, a in r.items():
                    b = v.get(j)
                    if b:
                        s += a * b
            else:
                for j, b in v.items():
                    a = r.get(j)
                    if a:
                        s += a * b
            s = F.red(s)
            if s:
                out[i] = s
        return out

    def rapply(self, v: dict) -> dict:
        """Sparse row vector times the matrix."""
        out = {}
        for i, b in v.items():
            vec_axpy(self.F, out, self.rows[i], b)
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        rows = [other.rapply(r) for r in self.rows]
        return Matrix(self.F, self.nrows, other.ncols, rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.F, self.nrows, self.ncols,
                      [vec_add(self.F, a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.F, self.nrows, self.ncols,
                      [vec_add(self.F, a, b, -1) for a, b in zip(self.rows, other.rows)])

    def scale(self, a) -> "Matrix":
        return Matrix(self.F, self.nrows, self.ncols, [vec_scale(self.F, r, a) for r in self.rows])

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.F == other.F
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __repr__(self):
        return f"Matrix({self.F!r}, {self.to_lists()})"

    def rank(self) -> int:
        return Echelon(self.F, self.ncols, self.rows).rank

    def row_space(self) -> "Subspace":
        return Subspace(self.F, self.ncols, self.rows)

    def column_space(self) -> "Subspace":
        return Subspace(self.F, self.nrows, self.columns())

    def nullspace(self) -> "Subspace":
        return nullspace(self)

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("not square")
        sol = solve_many(self, [{i: self.F.one} for i in range(self.nrows)])
        if any(s is None for s in sol):
            raise ZeroDivisionError("singular matrix")
        return Matrix.from_columns(self.F, self.nrows, sol)


def _bareiss_rational(rows: list[list], ncols: int) -> list[list]:
    """Fraction-free forward elimination followed by back substitution."""
    # clear denominators row by row; the row space is unchanged
    m = []
    for r in rows:
        den = mpz(1)
        for x in r:
            den = gmpy2.lcm(den, mpq(x).denominator)
        m.append([mpz(mpq(x) * den) for x in r])
    nrows = len(m)
    piv_cols = []
    prev = mpz(1)
    k = 0
    for c in range(ncols):
        if k == nrows:
            break
        sel = next((i for i in range(k, nrows) if m[i][c] != 0), None)
        if sel is None:
            continue
        m[k], m[sel] = m[sel], m[k]
        pk = m[k][c]
        for i in range(k + 1, nrows):
            mi = m[i]
            a = mi[c]
            for j in range(c, ncols):
                mi[j] = (pk * mi[j] - a * m[k][j]) // prev
        prev = pk
        piv_cols.append(c)
        k += 1
    out = [[mpq(x) for x in m[i]] for i in range(k)]
    for i in range(k - 1, -1, -1):
        c = piv_cols[i]
        inv = 1 / out[i][c]
        out[i] = [x * inv for x in out[i]]
        for h in range(i):
            a = out[h][c]
            if a:
                out[h] = [x - a * y for x, y in zip(out[h], out[i])]
    return out


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank.

    Over the rationals the forward pass is Bareiss' fraction-free elimination
    on the integer matrix obtained by clearing row denominators; over a prime
    field it is plain Gauss-Jordan.
    """
    F = m.F
    if F.is_rational:
        rows = _bareiss_rational(m.to_lists(), m.ncols)
        out = Matrix.from_lists(F, rows, m.ncols) if rows else Matrix(F, 0, m.ncols, [])
    else:
        ech = Echelon(F, m.ncols, m.rows)
        out = Matrix(F, ech.rank, m.ncols, ech.sorted_rows())
    rank = out.nrows
    pad = Matrix(F, m.nrows - rank, m.ncols)
    return Matrix(F, m.nrows, m.ncols, out.rows + pad.rows), rank


def nullspace(m: Matrix) -> "Subspace":
    ech = Echelon(m.F, m.ncols, m.rows)
    return Subspace(m.F, m.ncols, ech.nullspace_vectors())


def solve_many(m: Matrix, rhs: list[dict]) -> list:
    """Solve ``m x = b`` for each ``b``; ``None`` where inconsistent.

    Free variables are set to zero, which makes the answer deterministic.
    """
    F = m.F
    n, k = m.ncols, len(rhs)
    aug = [dict(r) for r in m.rows]
    for t, b in enumerate(rhs):
        for i, a in b.items():
            aug[i][n + t] = a
    ech = Echelon(F, n + k, aug)
    sols = [{} for _ in range(k)]
    bad = set()
    for c, row in ech.rows.items():
        if c >= n:
            bad.update(j - n for j in row)
            continue
        for j, a in row.items():
            if j >= n:
                sols[j - n][c] = a
    return [None if t in bad else s for t, s in enumerate(sols)]


def solve(m: Matrix, b: dict):
    return solve_many(m, [b])[0]


# --- subspaces -------------------------------------------------------------


class Subspace:
    """A subspace of ``F^ambient_dim`` kept in canonical RREF."""

    __slots__ = ("F", "ambient_dim", "_ech", "_key")

    def __init__(self, F: Field, ambient_dim: int, vectors=()):
        self.F = F
        self.ambient_dim = ambient_dim
        self._ech = vectors if isinstance(vectors, Echelon) else Echelon(F, ambient_dim, vectors)
        self._key = None

    @classmethod
    def full(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n, [{i: F.one} for i in range(n)])

    @classmethod
    def zero(cls, F: Field, n: int) -> "Subspace":
        return cls(F, n)

    @classmethod
    def span(cls, F: Field, n: int, vectors) -> "Subspace":
        return cls(F, n, vectors)

    @property
    def dim(self) -> int:
        return self._ech.rank

    def __len__(self):
        return self.dim

    @property
    def rows(self) -> list[dict]:
        return self._ech.sorted_rows()

    @property
    def pivots(self) -> list[int]:
        return self._ech.pivots()

    def basis(self) -> Matrix:
        return Matrix(self.F, self.dim, self.ambient_dim, [dict(r) for r in self.rows])

    def reduce(self, v: dict) -> dict:
        return self._ech.reduce(v)

    def contains_vector(self, v: dict) -> bool:
        return self._ech.contains(v)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"{self.ambient_dim} != {other.ambient_dim}")
        if self.F != other.F:
            raise FieldMismatch(f"{self.F} != {other.F}")

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self._ech.contains(r) for r in other.rows)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __lt__(self, other: "Subspace") -> bool:
        return other.contains(self) and other.dim > self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        ech = self._ech.copy()
        for r in other.rows:
            ech.add(r)
        return Subspace(self.F, self.ambient_dim, ech)

    __add__ = sum

    def annihilator(self) -> "Subspace":
        """Functionals vanishing on the subspace, in the dual coordinates."""
        return Subspace(self.F, self.ambient_dim, self._ech.nullspace_vectors())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == self.ambient_dim:
            return other
        if other.dim == other.ambient_dim:
            return self
        eqs = self.annihilator().rows + other.annihilator().rows
        return Subspace(self.F, self.ambient_dim, Echelon(self.F, self.ambient_dim, eqs).nullspace_vectors())

    __and__ = intersect

    def quotient_dim(self, other: "Subspace") -> int:
        self._check(other)
        if not self.contains(other):
            raise ValueError("quotient_dim(a, b) needs b inside a")
        return self.dim - other.dim

    def _canon(self):
        if self._key is None:
            self._key = tuple(tuple(sorted(r.items())) for r in self.rows)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.F == other.F and self.ambient_dim == other.ambient_dim
                and self._canon() == other._canon())

    def __hash__(self):
        return hash((self.F, self.ambient_dim, self._canon()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, {self.F!r})"

    def image(self, m: Matrix) -> "Subspace":
        return Subspace(self.F, m.nrows, [m.apply(r) for r in self.rows])

    def preimage(self, m: Matrix) -> "Subspace":
        """``{x : m x in self}``."""
        ann = self.annihilator().rows
        eqs = [m.rapply(a) for a in ann]
        return Subspace(self.F, m.ncols, Echelon(self.F, m.ncols, eqs).nullspace_vectors())

    def project(self, coords: list[int]) -> "Subspace":
        """Image under the coordinate projection onto ``coords``."""
        pos = {c: i for i, c in enumerate(coords)}
        vecs = [{pos[c]: a for c, a in r.items() if c in pos} for r in self.rows]
        return Subspace(self.F, len(coords), vecs)


class QuotientChart:
    """Coordinates on ``A / B`` for subspaces ``B <= A``.

    A class is represented by its normal form modulo ``B``; the normal forms of
    ``A`` are spanned by an RREF family whose pivot entries are the coordinates.
    """

    def __init__(self, A: Subspace, B: Subspace):
        if not A.contains(B):
            raise ValueError("B is not contained in A")
        self.A, self.B = A, B
        F = A.F
        ech = Echelon(F, A.ambient_dim)
        for r in A.rows:
            ech.add(B.reduce(r))
        self.reps = ech.sorted_rows()
        self._piv = [min(r) for r in self.reps]
        self.dim = len(self.reps)

    def coords(self, v: dict) -> dict:
        """Coordinates of the class of ``v`` (which must lie in ``A``)."""
        w = self.B.reduce(v)
        out = {}
        for i, c in enumerate(self._piv):
            a = w.get(c)
            if a:
                out[i] = a
        return out

    def lift(self, c: dict) -> dict:
        out = {}
        for i, a in c.items():
            vec_axpy(self.A.F, out, self.reps[i], a)
        return out

    def subspace(self, vectors) -> Subspace:
        return Subspace(self.A.F, self.dim, [self.coords(v) for v in vectors])


def adapted_basis(F: Field, chain: list[Subspace]) -> list[tuple[dict, int]]:
    """Basis adapted to an increasing chain ``chain[0] <= chain[1] <= ...``.

    Returns pairs ``(vector, level)`` where ``level`` is the 1-based index of
    the first member of the chain containing the vector.
    """
    if not chain:
        return []
    ech = Echelon(F, chain[0].ambient_dim)
    out = []
    for lvl, S in enumerate(chain, start=1):
        for r in S.rows:
            if ech.add(r):
                out.append((dict(r), lvl))
    return out
