"""Exact linear algebra over the rationals.

Everything is built on fractions.Fraction; there are no floats anywhere.
Subspaces are stored as RREF bases so that equality of subspaces is
literal equality of the stored data.
"""

from fractions import Fraction

from .errors import MalformedInput


def parse_rational(token):
    """Parse "p/q" or "p" into a Fraction."""
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"bad rational literal {token!r}") from exc


def format_rational(q):
    return str(Fraction(q))


class QMatrix:
    """Immutable matrix of Fractions stored as a tuple of row tuples."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries, cols=None):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise MalformedInput("ragged matrix rows")
        elif cols is None:
            cols = 0
        self.entries = rows
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def parse(cls, text):
        """Rows of whitespace-separated "p/q" tokens, one row per line."""
        rows = []
        for line in text.splitlines():
            if line.strip():
                rows.append([parse_rational(tok) for tok in line.split()])
        return cls(rows)

    @classmethod
    def identity(cls, n):
        one, zero = Fraction(1), Fraction(0)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zero(cls, rows, cols):
        return cls([[Fraction(0)] * cols for _ in range(rows)], cols=cols)

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        if self.entries:
            return QMatrix(list(zip(*self.entries)), cols=self.rows)
        return QMatrix([()] * self.cols, cols=0)

    def mul(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        ot = other.transpose().entries
        return QMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries],
            cols=other.cols,
        )

    def stack(self, other):
        if other.rows and self.rows and self.cols != other.cols:
            raise ValueError("dimension mismatch in row stack")
        return QMatrix(self.entries + other.entries, cols=max(self.cols, other.cols))

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def to_token_rows(self):
        return [[format_rational(x) for x in row] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.entries)
        return f"QMatrix({self.rows}x{self.cols}: {body})"


def rref(m):
    """Reduced row-echelon form with zero rows dropped; returns (QMatrix, rank)."""
    work = [list(row) for row in m.entries]
    nrows, ncols = len(work), m.cols
    pivot_row = 0
    for col in range(ncols):
        sel = None
        for r in range(pivot_row, nrows):
            if work[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        inv = 1 / work[pivot_row][col]
        work[pivot_row] = [x * inv for x in work[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and work[r][col] != 0:
                factor = work[r][col]
                prow = work[pivot_row]
                work[r] = [x - factor * y for x, y in zip(work[r], prow)]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return QMatrix(work[:pivot_row], cols=ncols), pivot_row


def rank(m):
    return rref(m)[1]


def pivot_columns(reduced):
    """Pivot column indices of a matrix already in RREF."""
    pivots = []
    for row in reduced.entries:
        for j, x in enumerate(row):
            if x != 0:
                pivots.append(j)
                break
    return pivots


class Subspace:
    """A subspace of Q^n held as an RREF basis (zero rows dropped).

    Two Subspace values describe the same subspace exactly when their
    stored bases are identical, so == and hash are structural.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim, basis):
        reduced, _ = rref(basis)
        if reduced.cols not in (0, ambient_dim) or (reduced.rows and reduced.cols != ambient_dim):
            raise ValueError("basis width disagrees with ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = QMatrix(reduced.entries, cols=ambient_dim)

    @classmethod
    def from_vectors(cls, ambient_dim, vectors):
        return cls(ambient_dim, QMatrix(list(vectors), cols=ambient_dim))

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, QMatrix([], cols=ambient_dim))

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, QMatrix.identity(ambient_dim))

    @property
    def dim(self):
        return self.basis.rows

    def pivots(self):
        return pivot_columns(self.basis)

    def reduce_vector(self, v):
        """Remainder of v after elimination against the RREF basis."""
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length disagrees with ambient dimension")
        for row, p in zip(self.basis.entries, self.pivots()):
            if v[p] != 0:
                c = v[p]
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains_vector(self, v):
        return all(x == 0 for x in self.reduce_vector(v))

    def coordinates(self, v):
        """Coefficients of v in the RREF basis; None if v lies outside.

        Because the basis is in RREF, the coefficient on row i is just
        the entry of v at that row's pivot column.
        """
        v = [Fraction(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length disagrees with ambient dimension")
        coords = [v[p] for p in self.pivots()]
        residue = list(v)
        for c, row in zip(coords, self.basis.entries):
            if c != 0:
                residue = [x - c * y for x, y in zip(residue, row)]
        if any(x != 0 for x in residue):
            return None
        return coords

    def annihilator(self):
        """Matrix whose kernel is exactly this subspace."""
        return kernel_basis(self.basis).basis

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def kernel_basis(m):
    """Null space {x : m x = 0} of a matrix acting on column vectors."""
    reduced, _ = rref(m)
    pivots = pivot_columns(reduced)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for row, p in zip(reduced.entries, pivots):
            v[p] = -row[j]
        vectors.append(v)
    return Subspace.from_vectors(m.cols, vectors)


def _check_common_ambient(subspaces, ambient_dim):
    for s in subspaces:
        if ambient_dim is None:
            ambient_dim = s.ambient_dim
        elif s.ambient_dim != ambient_dim:
            raise ValueError("mismatched ambient dimensions")
    if ambient_dim is None:
        raise ValueError("ambient dimension unknown for an empty list")
    return ambient_dim


def span_sum(subspaces, ambient_dim=None):
    """Sum of subspaces; ambient_dim is required when the list is empty."""
    subspaces = list(subspaces)
    ambient_dim = _check_common_ambient(subspaces, ambient_dim)
    rows = []
    for s in subspaces:
        rows.extend(s.basis.entries)
    return Subspace.from_vectors(ambient_dim, rows)


def intersect(subspaces):
    """Intersection of a nonempty list of subspaces of one ambient space.

    Each subspace is cut out by its annihilator rows; the intersection is
    the kernel of all the rows stacked together.
    """
    subspaces = list(subspaces)
    if not subspaces:
        raise ValueError("intersect needs at least one subspace")
    ambient_dim = _check_common_ambient(subspaces, None)
    if len(subspaces) == 1:
        return subspaces[0]
    constraints = QMatrix([], cols=ambient_dim)
    for s in subspaces:
        constraints = constraints.stack(s.annihilator())
    return kernel_basis(constraints)


def subspace_leq(a, b):
    """True iff a is contained in b."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("mismatched ambient dimensions")
    return all(b.contains_vector(row) for row in a.basis.entries)
