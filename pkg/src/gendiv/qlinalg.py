"""Exact linear algebra over the rationals.

Vectors are tuples of ``QQ`` scalars (``gmpy2.mpq`` when gmpy2 is available)
indexed by the integer positions of a :class:`LaurentWindow`.  A
:class:`Subspace` always stores its basis in the canonical reduced echelon
form: every basis vector has a pivot at its highest nonzero position, the pivot
entry is 1 and every other basis vector vanishes there.  Two subspaces of one
window are equal iff their stored bases are identical.

The row reduction itself lives in a kernel module: the compiled
``gendiv._kernel`` when it was built, else ``gendiv._kernel_py``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from sympy.polys.domains import QQ

try:  # pragma: no cover - depends on the build
    from gendiv import _kernel as _k

    KERNEL = "compiled"
except ImportError:  # pragma: no cover - depends on the build
    from gendiv import _kernel_py as _k

    KERNEL = "python"

Scalar = type(QQ(0))
ZERO = QQ(0)
ONE = QQ(1)


def scalar(x) -> Scalar:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to the exact scalar type."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        raise TypeError("refusing to coerce bool to a scalar")
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return QQ(f.numerator, f.denominator)
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a Fraction or a 'p/q' string")
    try:
        return QQ.convert(x)
    except Exception as exc:  # sympy raises CoercionFailed
        raise TypeError("cannot coerce %r to a rational scalar" % (x,)) from exc


def to_fraction(x) -> Fraction:
    x = scalar(x)
    return Fraction(int(x.numerator), int(x.denominator))


def fmt_scalar(x) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return "%d/%d" % (int(x.numerator), int(x.denominator))


def rref_rows(rows: Iterable[Sequence], ncols: int):
    """Reduce ``rows`` and return ``(basis, pivots)`` (see the kernel modules)."""
    # plain ints would turn into floats under 1/x inside the kernel
    rows = [[scalar(x) for x in r] for r in rows if any(r)]
    if not rows:
        return [], []
    return _k.rref(rows, ncols)


def rank(rows: Iterable[Sequence], ncols: int) -> int:
    return len(rref_rows(rows, ncols)[1])


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : matrix @ x = 0}`` for a matrix with ``ncols`` columns."""
    basis, pivots = rref_rows(matrix, ncols)
    pivset = set(pivots)
    out = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for row, p in zip(basis, pivots):
            if p > free and row[free]:
                v[p] = -row[free]
        out.append(tuple(v))
    return out


def matvec(matrix: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((a * b for a, b in zip(row, v) if a and b), ZERO) for row in matrix)


def transpose(matrix: Sequence[Sequence], nrows_if_empty: int = 0) -> list[list]:
    if not matrix:
        return [[] for _ in range(nrows_if_empty)]
    return [list(col) for col in zip(*matrix)]


@dataclass(frozen=True, order=True)
class LaurentWindow:
    """Integer index range ``lo..hi`` (inclusive)."""

    lo: int
    hi: int

    def __post_init__(self):
        # lo == hi + 1 is the empty window (zero-dimensional jet spaces)
        if self.lo > self.hi + 1:
            raise ValueError("invalid window [%d, %d]" % (self.lo, self.hi))

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def merge(self, other: "LaurentWindow") -> "LaurentWindow":
        return LaurentWindow(min(self.lo, other.lo), max(self.hi, other.hi))

    def exponents(self) -> range:
        return range(self.lo, self.hi + 1)


def pad(v: Sequence, src: LaurentWindow, dst: LaurentWindow) -> tuple:
    """Re-index ``v`` from window ``src`` to the enclosing window ``dst``."""
    if dst.lo > src.lo or dst.hi < src.hi:
        raise ValueError("%s does not contain %s" % (dst, src))
    before = src.lo - dst.lo
    after = dst.hi - src.hi
    return (ZERO,) * before + tuple(v) + (ZERO,) * after


class Subspace:
    """A linear subspace of ``QQ^window`` in canonical echelon form."""

    __slots__ = ("window", "basis", "pivots", "_hash")

    def __init__(self, window: LaurentWindow, basis=(), _canonical=False):
        if isinstance(window, int):
            window = LaurentWindow(0, window - 1)
        self.window = window
        n = window.size
        if _canonical:
            self.basis = tuple(tuple(b) for b in basis)
            self.pivots = tuple(_pivot(b) for b in self.basis)
        else:
            vecs = [tuple(scalar(x) for x in b) for b in basis]
            for b in vecs:
                if len(b) != n:
                    raise ValueError("vector of length %d in window of size %d" % (len(b), n))
            rows, piv = rref_rows(vecs, n)
            self.basis = tuple(tuple(r) for r in rows)
            self.pivots = tuple(piv)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, window) -> "Subspace":
        return cls(window, (), _canonical=True)

    @classmethod
    def full(cls, window) -> "Subspace":
        if isinstance(window, int):
            window = LaurentWindow(0, window - 1)
        n = window.size
        basis = [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]
        return cls(window, basis, _canonical=True)

    # -- basic queries ------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return self.window.size

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.window == other.window and self.basis == other.basis

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.window, self.basis))
        return self._hash

    def __repr__(self):
        rows = ["(" + ", ".join(fmt_scalar(x) for x in b) + ")" for b in self.basis]
        return "Subspace(%s, [%s])" % (self.window, ", ".join(rows))

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after clearing every pivot position."""
        r = list(v)
        for b, p in zip(reversed(self.basis), reversed(self.pivots)):
            c = r[p]
            if c:
                for j in range(p + 1):
                    if b[j]:
                        r[j] -= c * b[j]
        return r

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        _same_window(self, other)
        return all(self.contains(b) for b in other.basis)

    def coordinates(self, v: Sequence):
        """Coordinates of ``v`` in this basis, or ``None`` when ``v`` is outside."""
        r = list(v)
        coords = [ZERO] * self.dim
        for i in range(self.dim - 1, -1, -1):
            b, p = self.basis[i], self.pivots[i]
            c = r[p]
            if c:
                coords[i] = c
                for j in range(p + 1):
                    if b[j]:
                        r[j] -= c * b[j]
        if any(r):
            return None
        return tuple(coords)

    def annihilator(self) -> list[tuple]:
        """Basis of the linear functionals vanishing on this subspace."""
        return nullspace(self.basis, self.ambient)

    def preimage(self, matrix: Sequence[Sequence], src_window) -> "Subspace":
        """``{x in QQ^src : matrix @ x in self}``; ``matrix`` has ``ambient`` rows."""
        if isinstance(src_window, int):
            src_window = LaurentWindow(0, src_window - 1)
        ann = self.annihilator()
        if not ann:
            return Subspace.full(src_window)
        m = src_window.size
        if not matrix:
            return Subspace.full(src_window)
        cond = [matvec(transpose(matrix, m), a) for a in ann]  # a^T M as rows
        return Subspace(src_window, nullspace(cond, m), _canonical=False)

    def image(self, matrix: Sequence[Sequence], dst_window) -> "Subspace":
        return Subspace(dst_window, [matvec(matrix, b) for b in self.basis])

    def padded(self, window: LaurentWindow) -> "Subspace":
        return Subspace(window, [pad(b, self.window, window) for b in self.basis], _canonical=True)


def _pivot(v) -> int:
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            return i
    raise ValueError("zero vector in basis")


def _same_window(a: Subspace, b: Subspace):
    if a.window != b.window:
        raise ValueError("window mismatch: %s vs %s" % (a.window, b.window))


def _common(a: Subspace, b: Subspace):
    if a.window == b.window:
        return a, b
    w = a.window.merge(b.window)
    return a.padded(w), b.padded(w)


def rref(vectors: Iterable[Sequence], window=None) -> Subspace:
    """Canonical echelon basis of the span of ``vectors``."""
    vectors = list(vectors)
    if window is None:
        if not vectors:
            raise ValueError("window required for an empty vector list")
        window = LaurentWindow(0, len(vectors[0]) - 1)
    elif isinstance(window, int):
        window = LaurentWindow(0, window - 1)
    return Subspace(window, vectors)


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    a, b = _common(a, b)
    return Subspace(a.window, a.basis + b.basis)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the kernel of the stacked bases ``[A; -B]``."""
    a, b = _common(a, b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.window)
    # x A = y B  <=>  (x, y) [A; -B] = 0
    stacked_cols = transpose(list(a.basis) + [tuple(-x for x in v) for v in b.basis])
    kernel = nullspace(stacked_cols, a.dim + b.dim)
    vecs = []
    for k in kernel:
        x = k[: a.dim]
        vecs.append(tuple(sum((c * v[j] for c, v in zip(x, a.basis) if c), ZERO) for j in range(a.ambient)))
    return Subspace(a.window, vecs)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    a, b = _common(a, b)
    if not a.contains_subspace(b):
        raise ValueError("quotient_dim requires b to be contained in a")
    return a.dim - b.dim


def solve_membership(v: Sequence, s: Subspace, window: LaurentWindow | None = None):
    """Coordinates of ``v`` in the basis of ``s`` (``None`` if ``v`` is not in ``s``)."""
    v = tuple(scalar(x) for x in v)
    if window is not None and window != s.window:
        w = window.merge(s.window)
        v = pad(v, window, w)
        s = s.padded(w)
    return s.coordinates(v)
