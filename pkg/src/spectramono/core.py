"""Hermitian pair structures on a finite vertex set, tournaments, selectors.

A structure assigns a Gaussian scalar g(x, y) to every ordered pair of
distinct vertices with g(x, y) = conj(g(y, x)), so its label matrix is
Hermitian with zero diagonal. A selector rescales labels by
g^d(x, y) = d(x) * g(x, y) * conj(d(y)) where d has nonzero values of one
common modulus. Two structures are equivalent when some selector maps one
onto the other.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .errors import (
    ExactnessError,
    InputError,
    InvariantError,
    ModeMixError,
    NotTwoMonomorphicError,
)
from .scalars import (
    APPROX,
    EXACT,
    GaussianScalar,
    get_eps,
    rational,
    rational_sqrt,
    two_square_root,
)


class ConstantRepresentationWarning(UserWarning):
    """A real unit label collapses a tournament representation to a constant."""


def _check_vertex(n, x, what="vertex"):
    if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
        raise InputError(f"{what} {x!r} out of range for n={n}")


class HermitianStructure:
    """Immutable Hermitian zero-diagonal label matrix over Gaussian scalars."""

    __slots__ = ("n", "mode", "labels")

    def __init__(self, labels):
        rows = tuple(tuple(row) for row in labels)
        n = len(rows)
        if n == 0:
            raise InputError("a structure needs at least one vertex")
        for row in rows:
            if len(row) != n:
                raise InputError(f"label matrix must be {n}x{n}")
        mode = None
        for row in rows:
            for entry in row:
                if not isinstance(entry, GaussianScalar):
                    raise InputError(f"label {entry!r} is not a GaussianScalar")
                if mode is None:
                    mode = entry.mode
                elif entry.mode != mode:
                    raise ModeMixError("labels mix exact and approx scalars")
        for i in range(n):
            if not rows[i][i].is_zero():
                raise InvariantError(f"diagonal entry at {i} must be zero")
            for j in range(i + 1, n):
                if not rows[i][j] == rows[j][i].conj():
                    raise InvariantError(
                        f"labels at ({i},{j}) and ({j},{i}) are not conjugate"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "labels", rows)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianStructure is immutable")

    def label(self, x, y):
        _check_vertex(self.n, x)
        _check_vertex(self.n, y)
        return self.labels[x][y]

    def off_diagonal(self):
        """Iterate (x, y, label) over ordered pairs of distinct vertices."""
        for x in range(self.n):
            for y in range(self.n):
                if x != y:
                    yield x, y, self.labels[x][y]

    def common_modulus_squared(self):
        """The shared |label|^2 when all labels are nonzero of equal modulus.

        Raises NotTwoMonomorphicError otherwise. This is the precondition of
        every normalization step: a nonzero structure has one common label
        modulus exactly when all two-vertex substructures share their
        characteristic polynomial.
        """
        if self.n < 2:
            raise NotTwoMonomorphicError("no labels on fewer than two vertices")
        first = self.labels[0][1]
        if first.is_zero():
            raise NotTwoMonomorphicError("label at (0,1) is zero")
        msq = first.modulus_squared()
        eps = get_eps()
        for x, y, value in self.off_diagonal():
            if x > y:
                continue
            if value.is_zero():
                raise NotTwoMonomorphicError(f"label at ({x},{y}) is zero")
            other = value.modulus_squared()
            if self.mode == EXACT:
                same = other == msq
            else:
                same = abs(other - msq) <= eps * max(1.0, abs(msq))
            if not same:
                raise NotTwoMonomorphicError(
                    f"labels at (0,1) and ({x},{y}) have different moduli"
                )
        return msq

    def __eq__(self, other):
        if not isinstance(other, HermitianStructure):
            return NotImplemented
        if other.mode != self.mode:
            raise ModeMixError("cannot compare structures of different modes")
        if other.n != self.n:
            return False
        return all(
            self.labels[i][j] == other.labels[i][j]
            for i in range(self.n)
            for j in range(self.n)
        )

    def __hash__(self):
        return hash((self.n, self.labels))

    def __repr__(self):
        return f"HermitianStructure(n={self.n}, mode={self.mode!r})"


def constant_structure(n, value):
    """Structure whose every off-diagonal label is the real scalar `value`."""
    if not isinstance(value, GaussianScalar):
        raise InputError("constant label must be a GaussianScalar")
    if not value.is_real():
        raise InvariantError("a constant structure needs a real label")
    zero = GaussianScalar.zero(value.mode)
    rows = [
        [zero if i == j else value for j in range(n)]
        for i in range(n)
    ]
    return HermitianStructure(rows)


class Tournament:
    """Complete asymmetric dominance relation on vertices 0..n-1.

    Rows are stored as bitmasks: bit j of row i is set when i beats j.
    """

    __slots__ = ("n", "rows")

    def __init__(self, n, rows):
        rows = tuple(int(r) for r in rows)
        if n < 1:
            raise InputError("a tournament needs at least one vertex")
        if len(rows) != n:
            raise InputError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for i in range(n):
            if rows[i] & ~full:
                raise InputError(f"row {i} has bits outside 0..{n - 1}")
            if rows[i] >> i & 1:
                raise InvariantError(f"vertex {i} cannot dominate itself")
        for i in range(n):
            for j in range(i + 1, n):
                fwd = rows[i] >> j & 1
                back = rows[j] >> i & 1
                if fwd == back:
                    raise InvariantError(
                        f"pair ({i},{j}) must be dominated in exactly one direction"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Tournament is immutable")

    @classmethod
    def from_matrix(cls, matrix):
        """Build from a 0/1 dominance matrix (list of rows)."""
        n = len(matrix)
        rows = []
        for i, row in enumerate(matrix):
            if len(row) != n:
                raise InputError(f"dominance matrix must be {n}x{n}")
            mask = 0
            for j, cell in enumerate(row):
                if cell not in (0, 1):
                    raise InputError(f"dominance entries are 0 or 1, got {cell!r}")
                if cell:
                    mask |= 1 << j
            rows.append(mask)
        return cls(n, rows)

    @classmethod
    def from_pair_bits(cls, n, code):
        """Decode an integer whose bits orient each pair i < j in order
        (0,1), (0,2), (1,2), (0,3), ... (colex over pairs). Bit set means
        i beats j. Enumerating code over range(2^(n(n-1)/2)) walks every
        labeled tournament exactly once.
        """
        rows = [0] * n
        bit = 0
        for j in range(n):
            for i in range(j):
                if code >> bit & 1:
                    rows[i] |= 1 << j
                else:
                    rows[j] |= 1 << i
                bit += 1
        return cls(n, rows)

    def dominates(self, i, j):
        _check_vertex(self.n, i)
        _check_vertex(self.n, j)
        return bool(self.rows[i] >> j & 1)

    def out_degree(self, i):
        _check_vertex(self.n, i)
        return self.rows[i].bit_count()

    def in_mask(self, i):
        _check_vertex(self.n, i)
        mask = 0
        for j in range(self.n):
            if j != i and self.rows[j] >> i & 1:
                mask |= 1 << j
        return mask

    def matrix(self):
        return [
            [self.rows[i] >> j & 1 for j in range(self.n)]
            for i in range(self.n)
        ]

    def arcs(self):
        for i in range(self.n):
            for j in range(self.n):
                if self.rows[i] >> j & 1:
                    yield i, j

    def subtournament(self, vertices):
        vs = sorted(set(vertices))
        for v in vs:
            _check_vertex(self.n, v)
        if not vs:
            raise InputError("subtournament needs at least one vertex")
        rows = []
        for a in vs:
            mask = 0
            for k, b in enumerate(vs):
                if a != b and self.rows[a] >> b & 1:
                    mask |= 1 << k
            rows.append(mask)
        return Tournament(len(vs), rows)

    def reverse(self):
        return Tournament(
            self.n,
            [self.in_mask(i) for i in range(self.n)],
        )

    def __eq__(self, other):
        if not isinstance(other, Tournament):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Tournament(n={self.n}, rows={self.rows!r})"


def transitive_tournament(n):
    """The order 0 -> 1 -> ... -> n-1 (smaller index beats larger)."""
    full = (1 << n) - 1
    return Tournament(n, [(full >> (i + 1)) << (i + 1) for i in range(n)])


def is_transitive(t):
    """True when the dominance relation is a linear order.

    A tournament is transitive exactly when its out-degrees are pairwise
    distinct, in which case they are a permutation of 0..n-1.
    """
    degrees = [t.out_degree(i) for i in range(t.n)]
    return len(set(degrees)) == t.n


def first_three_cycle(t):
    """Lexicographically least (a, b, c) with a -> b -> c -> a, or None."""
    for a in range(t.n):
        for b in range(t.n):
            if not t.rows[a] >> b & 1:
                continue
            targets = t.rows[b] & t.in_mask(a)
            if targets:
                c = (targets & -targets).bit_length() - 1
                return (a, b, c)
    return None


def descending_score_order(t):
    """Vertices sorted by out-degree descending, index ascending on ties."""
    return tuple(sorted(range(t.n), key=lambda v: (-t.out_degree(v), v)))


class Selector:
    """Vertex-indexed nonzero scalars of one common modulus, with an optional
    positive real scale factor carried as its square.

    The mathematical selector is sqrt(scale_sq) * values[x]. The square root
    never needs to be materialized: the action on a structure multiplies two
    selector entries, so only scale_sq itself enters the arithmetic. This is
    what lets normalization stay exact when the common modulus is irrational.
    """

    __slots__ = ("values", "scale_sq", "mode")

    def __init__(self, values, scale_sq=1):
        values = tuple(values)
        if not values:
            raise InputError("a selector needs at least one value")
        mode = None
        for v in values:
            if not isinstance(v, GaussianScalar):
                raise InputError(f"selector value {v!r} is not a GaussianScalar")
            if mode is None:
                mode = v.mode
            elif v.mode != mode:
                raise ModeMixError("selector values mix modes")
            if v.is_zero():
                raise InvariantError("selector values must be nonzero")
        if mode == EXACT:
            scale_sq = rational(scale_sq)
            if scale_sq <= 0:
                raise InvariantError("scale_sq must be positive")
            msq = values[0].modulus_squared()
            for v in values[1:]:
                if v.modulus_squared() != msq:
                    raise InvariantError("selector values must share one modulus")
        else:
            scale_sq = float(scale_sq)
            if not scale_sq > 0.0:
                raise InvariantError("scale_sq must be positive")
            msq = values[0].modulus_squared()
            eps = get_eps()
            for v in values[1:]:
                if abs(v.modulus_squared() - msq) > eps * max(1.0, abs(msq)):
                    raise InvariantError("selector values must share one modulus")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "scale_sq", scale_sq)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Selector is immutable")

    @classmethod
    def ones(cls, n, mode=EXACT):
        return cls([GaussianScalar.one(mode)] * n)

    @classmethod
    def constant(cls, n, value, scale_sq=1):
        return cls([value] * n, scale_sq)

    @property
    def n(self):
        return len(self.values)

    def modulus_squared(self):
        """|delta|^2, the square of the common modulus of the selector."""
        return self.values[0].modulus_squared() * self.scale_sq

    def inverse(self):
        if self.mode == EXACT:
            inv_scale = 1 / rational(self.scale_sq)
        else:
            inv_scale = 1.0 / self.scale_sq
        return Selector([v.inverse() for v in self.values], inv_scale)

    def pointwise_product(self, other):
        if not isinstance(other, Selector):
            raise InputError("can only compose with another Selector")
        if other.mode != self.mode:
            raise ModeMixError("cannot compose selectors of different modes")
        if other.n != self.n:
            raise InputError("selector sizes differ")
        return Selector(
            [a * b for a, b in zip(self.values, other.values)],
            self.scale_sq * other.scale_sq,
        )

    def __eq__(self, other):
        if not isinstance(other, Selector):
            return NotImplemented
        if other.mode != self.mode:
            raise ModeMixError("cannot compare selectors of different modes")
        if other.n != self.n:
            return False
        if self.mode == EXACT:
            if rational(self.scale_sq) != rational(other.scale_sq):
                return False
        else:
            if abs(self.scale_sq - other.scale_sq) > get_eps():
                return False
        return all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        if self.mode == APPROX:
            raise TypeError("approx selectors compare within eps and cannot hash")
        return hash((self.values, self.scale_sq))

    def __repr__(self):
        return f"Selector(n={self.n}, mode={self.mode!r}, scale_sq={self.scale_sq})"


def substructure(g, vertices):
    """Restriction of g to the given vertices, sorted ascending."""
    vs = sorted(set(vertices))
    if not vs:
        raise InputError("substructure needs at least one vertex")
    for v in vs:
        _check_vertex(g.n, v)
    return HermitianStructure(
        [[g.labels[a][b] for b in vs] for a in vs]
    )


def apply_selector(g, d):
    """g^d with labels d(x) * g(x, y) * conj(d(y))."""
    if not isinstance(g, HermitianStructure) or not isinstance(d, Selector):
        raise InputError("apply_selector takes a HermitianStructure and a Selector")
    if d.mode != g.mode:
        raise ModeMixError("structure and selector modes differ")
    if d.n != g.n:
        raise InputError(f"selector covers {d.n} vertices, structure has {g.n}")
    zero = GaussianScalar.zero(g.mode)
    rows = []
    for x in range(g.n):
        row = []
        for y in range(g.n):
            if x == y:
                row.append(zero)
            else:
                row.append(
                    (d.values[x] * g.labels[x][y] * d.values[y].conj()).scale(d.scale_sq)
                )
        rows.append(row)
    return HermitianStructure(rows)


def c_representation(t, c):
    """Structure of a tournament: label c on arcs, conj(c) against them.

    c must have modulus 1. A real c (then c is 1 or -1) gives the constant
    structure; that degenerate case is accepted but flagged with
    ConstantRepresentationWarning since it forgets the tournament.
    """
    if not isinstance(t, Tournament):
        raise InputError("c_representation takes a Tournament")
    if not isinstance(c, GaussianScalar):
        raise InputError("label must be a GaussianScalar")
    one = GaussianScalar.one(c.mode)
    msq = c.modulus_squared()
    if c.mode == EXACT:
        unit = msq == one.re
    else:
        unit = abs(msq - 1.0) <= get_eps()
    if not unit:
        raise InputError("representation label must have modulus 1")
    if c.is_real():
        warnings.warn(
            "real unit label: the representation is a constant structure "
            "and the tournament cannot be recovered from it",
            ConstantRepresentationWarning,
            stacklevel=2,
        )
    cc = c.conj()
    zero = GaussianScalar.zero(c.mode)
    rows = []
    for x in range(t.n):
        row = []
        for y in range(t.n):
            if x == y:
                row.append(zero)
            elif t.rows[x] >> y & 1:
                row.append(c)
            else:
                row.append(cc)
        rows.append(row)
    return HermitianStructure(rows)


def i_representation(t, mode=EXACT):
    """c_representation with the imaginary unit."""
    return c_representation(t, GaussianScalar.i_unit(mode))


def _phase_product(g, w, u, v):
    """g(w,u) * g(u,v) * conj(g(w,v)): the label of the form normalized at w,
    up to the positive real factor m^3. Only its phase is ever compared."""
    return g.labels[w][u] * g.labels[u][v] * g.labels[w][v].conj()


def normalize_at(g, w):
    """The unique structure equivalent to g whose labels all have modulus 1
    and whose row at w is all ones, together with the witnessing selector.

    Needs labels of one common nonzero modulus m. The normalized labels are
    g~(u, v) = g(w, u) * g(u, v) * conj(g(w, v)) / m^3 away from w. In exact
    mode m must be rational (m^2 a perfect square), otherwise the normalized
    labels themselves are irrational and ExactnessError is raised; the
    equivalence test sidesteps this by comparing phases only.

    The selector is returned in split form: unit values with scale_sq = 1/m,
    so its action on g is exact even though |delta| = 1/sqrt(m) may not be.
    """
    if not isinstance(g, HermitianStructure):
        raise InputError("normalize_at takes a HermitianStructure")
    _check_vertex(g.n, w)
    if g.n < 2:
        raise InputError("normalization needs at least two vertices")
    msq = g.common_modulus_squared()
    if g.mode == EXACT:
        m = rational_sqrt(msq)
        if m is None:
            raise ExactnessError(
                f"common modulus squared {msq} is not a perfect square; "
                "the normalized labels are not Gaussian rationals"
            )
        m_cubed = msq * m
    else:
        m = math.sqrt(msq)
        m_cubed = msq * m
    one = GaussianScalar.one(g.mode)
    zero = GaussianScalar.zero(g.mode)
    rows = []
    for u in range(g.n):
        row = []
        for v in range(g.n):
            if u == v:
                row.append(zero)
            elif u == w or v == w:
                row.append(one)
            else:
                row.append(_phase_product(g, w, u, v).scale(1 / m_cubed))
        rows.append(row)
    normalized = HermitianStructure(rows)
    values = [
        one if x == w else g.labels[w][x].scale(1 / m)
        for x in range(g.n)
    ]
    selector = Selector(values, 1 / m)
    if not apply_selector(g, selector) == normalized:
        raise InvariantError("normalizing selector failed to reproduce the normal form")
    return normalized, selector


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of are_equivalent.

    witness maps the first structure onto the second when equivalence holds
    and a selector with rational components exists. note explains a missing
    witness (the connecting selector can need an irrational modulus even
    between exact structures, for example constant 1 versus constant 3).
    """

    equivalent: bool
    reason: Optional[str] = None
    witness: Optional[Selector] = None
    note: Optional[str] = None


def _real_positive(z, mode):
    if mode == EXACT:
        return z.im == 0 and z.re > 0
    eps = get_eps()
    return abs(z.im) <= eps * max(1.0, abs(z.re)) and z.re > 0.0


def are_equivalent(g, h):
    """Decide whether some selector maps g onto h.

    Both structures must be on the same vertex count and mode. Structures
    without a common nonzero label modulus are reported inequivalent with a
    reason (they cannot be normalized). Otherwise g ~ h exactly when their
    normalized forms at vertex 0 agree, which is compared through the phase
    products g(0,u) g(u,v) conj(g(0,v)) so no square roots are needed.
    """
    if not isinstance(g, HermitianStructure) or not isinstance(h, HermitianStructure):
        raise InputError("are_equivalent takes two HermitianStructures")
    if g.mode != h.mode:
        raise ModeMixError("cannot compare structures of different modes")
    if g.n != h.n:
        raise InputError("structures must have the same number of vertices")
    if g.n == 1:
        return EquivalenceReport(True, witness=Selector.ones(1, g.mode))
    try:
        msq_g = g.common_modulus_squared()
    except NotTwoMonomorphicError as exc:
        return EquivalenceReport(False, reason=f"left structure: {exc}")
    try:
        msq_h = h.common_modulus_squared()
    except NotTwoMonomorphicError as exc:
        return EquivalenceReport(False, reason=f"right structure: {exc}")
    for u in range(1, g.n):
        for v in range(u + 1, g.n):
            p = _phase_product(g, 0, u, v)
            q = _phase_product(h, 0, u, v)
            if not _real_positive(p * q.conj(), g.mode):
                return EquivalenceReport(
                    False,
                    reason=f"normalized forms differ at pair ({u},{v})",
                )
    # Phases agree, so the structures are equivalent over the complex
    # numbers. Build a rational witness when one exists.
    ratio = msq_h / msq_g
    if g.mode == EXACT:
        s0 = rational_sqrt(ratio)
        if s0 is None:
            return EquivalenceReport(
                True,
                note=(
                    "equivalent, but the connecting selector needs "
                    f"|delta|^2 = sqrt({ratio}) which is irrational"
                ),
            )
        u0 = two_square_root(s0)
        if u0 is None:
            return EquivalenceReport(
                True,
                note=(
                    "equivalent, but no Gaussian rational has modulus squared "
                    f"{s0}, so no exact witness exists"
                ),
            )
    else:
        s0 = math.sqrt(ratio)
        u0 = GaussianScalar.approx(math.sqrt(s0), 0.0)
    denominator = s0 * msq_g
    values = [u0]
    for v in range(1, g.n):
        values.append(
            (h.labels[0][v].conj() * u0 * g.labels[0][v]).scale(1 / denominator)
        )
    witness = Selector(values)
    mapped = apply_selector(g, witness)
    if not mapped == h:
        raise InvariantError("equivalence witness failed to reproduce the target")
    return EquivalenceReport(True, witness=witness)
