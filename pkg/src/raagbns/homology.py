"""Chain complexes of subspace arrangements and their homology.

The k-chains are direct sums of k-fold intersections V_J over index
subsets J (duplicate subspaces in the list count as distinct indices);
the boundary deletes one index at a time with alternating signs, and
degree one maps each subspace into the ambient space by inclusion.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, MalformedInput
from .linalg import QMatrix, Subspace, intersect, parse_rational, rank, span_sum, subspace_leq


@dataclass(frozen=True)
class Arrangement:
    ambient_dim: int
    subspaces: tuple

    def __post_init__(self):
        for s in self.subspaces:
            if s.ambient_dim != self.ambient_dim:
                raise ValueError("subspace ambient dimension mismatch")

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "ambient_dim" not in data:
            raise MalformedInput('arrangement JSON needs {"ambient_dim": n, "subspaces": [...]}')
        n = data["ambient_dim"]
        if not isinstance(n, int) or n < 0:
            raise MalformedInput("ambient_dim must be a nonnegative integer")
        subs = []
        for rows in data.get("subspaces", []):
            vectors = []
            for row in rows:
                vec = [parse_rational(tok) for tok in row]
                if len(vec) != n:
                    raise MalformedInput("subspace row length disagrees with ambient_dim")
                vectors.append(vec)
            subs.append(Subspace.from_vectors(n, vectors))
        return cls(n, tuple(subs))

    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "subspaces": [[[str(x) for x in row] for row in s.basis.entries] for s in self.subspaces],
        }


@dataclass(frozen=True)
class ChainComplexData:
    dims: tuple
    boundaries: tuple  # boundaries[k] is the matrix of d_k : C_k -> C_{k-1}
    index_sets: tuple  # per degree >= 1, tuple of (index tuple, dim V_J)


@dataclass(frozen=True)
class BettiProfile:
    betti: tuple
    euler: int


def _support(s):
    return frozenset(j for row in s.basis.entries for j, x in enumerate(row) if x != 0)


def arrangement_from_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"bad arrangement JSON: {exc}") from exc
    return Arrangement.from_json(data)


def build_chain_complex(a):
    """Chain complex with one degree-k summand per k-subset J of subspace
    indices with nonzero intersection; zero summands are dropped and
    enumeration stops at the first empty degree."""
    n = a.ambient_dim
    subs = list(a.subspaces)
    supports = [_support(s) for s in subs]

    # degree 1: one summand per nonzero listed subspace
    levels = []
    level = [((i,), subs[i]) for i in range(len(subs)) if subs[i].dim > 0]
    while level:
        levels.append(level)
        nxt = []
        for idx, space in level:
            sup = _support(space)
            for j in range(idx[-1] + 1, len(subs)):
                if subs[j].dim == 0 or not sup & supports[j]:
                    continue
                meet = intersect([space, subs[j]])
                if meet.dim > 0:
                    nxt.append((idx + (j,), meet))
        level = nxt

    dims = [n] + [sum(space.dim for _, space in level) for level in levels]
    offsets = []
    for level in levels:
        offs, run = {}, 0
        for idx, space in level:
            offs[idx] = run
            run += space.dim
        offsets.append(offs)

    boundaries = [QMatrix([], cols=n)]  # d_0 : C_0 -> 0
    for k, level in enumerate(levels, start=1):
        rows_out = dims[k - 1]
        cols_out = dims[k]
        parent = dict(levels[k - 2]) if k >= 2 else {}
        cells = [[Fraction(0)] * cols_out for _ in range(rows_out)]
        col = 0
        for idx, space in level:
            for v in space.basis.entries:
                if k == 1:
                    for r, x in enumerate(v):
                        cells[r][col] = x
                else:
                    for i in range(k):
                        target = idx[:i] + idx[i + 1:]
                        sign = 1 if i % 2 == 0 else -1
                        coords = parent[target].coordinates(v)
                        if coords is None:
                            raise InvariantViolation("intersection escaped its parent summand")
                        base = offsets[k - 2][target]
                        for r, x in enumerate(coords):
                            cells[base + r][col] += sign * x
                col += 1
        boundaries.append(QMatrix(cells, cols=cols_out))

    index_sets = tuple(
        tuple((idx, space.dim) for idx, space in level) for level in levels
    )
    return ChainComplexData(tuple(dims), tuple(boundaries), index_sets)


def verify_complex(c):
    """True iff boundary squares to zero and all dimensions line up."""
    if len(c.boundaries) != len(c.dims):
        return False
    if c.boundaries[0].rows != 0:
        return False
    for k in range(len(c.dims)):
        b = c.boundaries[k]
        if b.cols != c.dims[k]:
            return False
        if k >= 1 and b.rows != c.dims[k - 1]:
            return False
    for k in range(2, len(c.dims)):
        if not c.boundaries[k - 1].mul(c.boundaries[k]).is_zero():
            return False
    for k, level in enumerate(c.index_sets, start=1):
        if k < len(c.dims) and sum(d for _, d in level) != c.dims[k]:
            return False
    return True


def betti_numbers(c):
    if not verify_complex(c):
        raise InvariantViolation("ill-formed chain complex")
    ranks = [rank(b) for b in c.boundaries] + [0]
    betti = tuple(c.dims[k] - ranks[k] - ranks[k + 1] for k in range(len(c.dims)))
    euler = sum((-1) ** k * b for k, b in enumerate(betti))
    return BettiProfile(betti, euler)


def h0_dim(a):
    """Codimension of the joint span: dim of degree-zero homology."""
    return a.ambient_dim - span_sum(a.subspaces, ambient_dim=a.ambient_dim).dim


def maximal_filter(a):
    """Drop duplicates and subspaces strictly contained in another."""
    unique = []
    for s in a.subspaces:
        if s not in unique:
            unique.append(s)
    kept = tuple(
        s
        for s in unique
        if not any(t is not s and subspace_leq(s, t) for t in unique)
    )
    return Arrangement(a.ambient_dim, kept)


def arrangement_betti(a, filter_maximal=True):
    """Betti profile of an arrangement, via the chain complex."""
    if filter_maximal:
        a = maximal_filter(a)
    return betti_numbers(build_chain_complex(a))
