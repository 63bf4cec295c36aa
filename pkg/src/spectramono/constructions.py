"""Extremal tournaments and the sign matrices attached to them.

Doubly regular tournaments, skew conference matrices and skew Hadamard
matrices are three views of one object. The constructors here build each
view, certify the defining counting conditions by direct enumeration, and
translate between the views exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .charpoly import RealPolynomial, char_poly, poly_x_squared_minus
from .combinat import colex_subsets
from .core import HermitianStructure, Tournament
from .errors import InputError, InvariantError
from .scalars import EXACT, GaussianScalar, rational


class SignMatrix:
    """Square integer matrix with entries in {-1, 0, 1}."""

    __slots__ = ("n", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        n = len(rows)
        if n == 0:
            raise InputError("sign matrix must be nonempty")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise InputError(f"row {i} has length {len(row)}, expected {n}")
            for j, v in enumerate(row):
                if not isinstance(v, int) or isinstance(v, bool) or v not in (-1, 0, 1):
                    raise InputError(f"entry ({i},{j}) must be -1, 0 or 1, got {v!r}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SignMatrix is immutable")

    def __getitem__(self, i):
        return self.entries[i]

    def transpose(self):
        return SignMatrix(tuple(zip(*self.entries)))

    def __eq__(self, other):
        if not isinstance(other, SignMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"SignMatrix({self.n}x{self.n})"


def _gram(a, b):
    """Integer product a @ b for small square int matrices (rows of tuples)."""
    n = len(a)
    bt = tuple(zip(*b))
    return [[sum(ra[t] * cb[t] for t in range(n)) for cb in bt] for ra in a]


def hat(t):
    """Extend t by a new vertex 0 dominating every original vertex."""
    if not isinstance(t, Tournament):
        raise InputError("hat takes a Tournament")
    rows = [((1 << (t.n + 1)) - 1) & ~1]
    for r in t.rows:
        rows.append(r << 1)
    return Tournament(t.n + 1, rows)


def skew_adjacency(t):
    """A - A^T for the adjacency matrix A of the tournament."""
    if not isinstance(t, Tournament):
        raise InputError("skew_adjacency takes a Tournament")
    n = t.n
    entries = [
        [0 if x == y else (1 if t.dominates(x, y) else -1) for y in range(n)]
        for x in range(n)
    ]
    return SignMatrix(entries)


def i_weighted(s):
    """Hermitian structure with label i*s[x][y]; s must be skew with zero diagonal."""
    if not isinstance(s, SignMatrix):
        raise InputError("i_weighted takes a SignMatrix")
    labels = [
        [GaussianScalar.exact(0, s.entries[x][y]) for y in range(s.n)]
        for x in range(s.n)
    ]
    return HermitianStructure(labels)


@dataclass(frozen=True)
class SignValidationReport:
    kind: str
    n: int
    ok: bool
    detail: Optional[str] = None
    locus: Optional[tuple] = None


_SIGN_KINDS = ("conference", "skew_conference", "hadamard", "skew_hadamard")


def validate_sign_matrix(m, kind):
    """Check the defining identities of one of the four sign-matrix kinds.

    conference:       zero diagonal, +-1 off it, M^T M = (n-1) I
    skew_conference:  conference and M^T = -M
    hadamard:         all entries +-1, H H^T = H^T H = n I
    skew_hadamard:    hadamard and H + H^T = 2 I

    The report carries the first failing entry position as locus.
    """
    if not isinstance(m, SignMatrix):
        raise InputError("validate_sign_matrix takes a SignMatrix")
    if kind not in _SIGN_KINDS:
        raise InputError(f"kind must be one of {_SIGN_KINDS}, got {kind!r}")
    n = m.n
    e = m.entries

    def fail(detail, locus=None):
        return SignValidationReport(kind=kind, n=n, ok=False, detail=detail, locus=locus)

    if kind in ("conference", "skew_conference"):
        for i in range(n):
            if e[i][i] != 0:
                return fail(f"diagonal entry ({i},{i}) is {e[i][i]}, expected 0", (i, i))
            for j in range(n):
                if i != j and e[i][j] == 0:
                    return fail(f"off-diagonal entry ({i},{j}) is 0", (i, j))
        if kind == "skew_conference":
            for i in range(n):
                for j in range(i + 1, n):
                    if e[i][j] + e[j][i] != 0:
                        return fail(
                            f"entries ({i},{j}) and ({j},{i}) are not negatives",
                            (i, j),
                        )
        gram = _gram(tuple(zip(*e)), e)
        for i in range(n):
            for j in range(n):
                want = n - 1 if i == j else 0
                if gram[i][j] != want:
                    return fail(
                        f"(M^T M)[{i}][{j}] = {gram[i][j]}, expected {want}", (i, j)
                    )
        return SignValidationReport(kind=kind, n=n, ok=True)

    for i in range(n):
        for j in range(n):
            if e[i][j] == 0:
                return fail(f"entry ({i},{j}) is 0, expected +-1", (i, j))
    if kind == "skew_hadamard":
        for i in range(n):
            if e[i][i] != 1:
                return fail(f"diagonal entry ({i},{i}) is {e[i][i]}, expected 1", (i, i))
            for j in range(i + 1, n):
                if e[i][j] + e[j][i] != 0:
                    return fail(
                        f"entries ({i},{j}) and ({j},{i}) do not sum to 0", (i, j)
                    )
    for left, right, tag in ((e, tuple(zip(*e)), "H H^T"), (tuple(zip(*e)), e, "H^T H")):
        gram = _gram(left, right)
        for i in range(n):
            for j in range(n):
                want = n if i == j else 0
                if gram[i][j] != want:
                    return fail(f"({tag})[{i}][{j}] = {gram[i][j]}, expected {want}", (i, j))
    return SignValidationReport(kind=kind, n=n, ok=True)


def pair_cycle_counts(t, x, y):
    """(C3, O3) for the pair {x, y}: how many third vertices z make {x, y, z}
    a 3-cycle versus a transitive triple. C3 + O3 = n - 2 always."""
    if not isinstance(t, Tournament):
        raise InputError("pair_cycle_counts takes a Tournament")
    if x == y or not 0 <= x < t.n or not 0 <= y < t.n:
        raise InputError(f"need two distinct vertices in range({t.n}), got {x}, {y}")
    if t.dominates(x, y):
        c3 = (t.rows[y] & t.in_mask(x)).bit_count()
    else:
        c3 = (t.rows[x] & t.in_mask(y)).bit_count()
    return c3, t.n - 2 - c3


@dataclass(frozen=True)
class DrtCertificate:
    """Witness that every ordered pair of distinct vertices is jointly
    dominated by exactly t others (so n = 4t + 3)."""

    n: int
    t: int


def is_doubly_regular(t):
    """DrtCertificate when every pair of distinct vertices has exactly
    (n-3)/4 common dominators, None otherwise."""
    if not isinstance(t, Tournament):
        raise InputError("is_doubly_regular takes a Tournament")
    n = t.n
    if n < 3:
        return None
    masks = [t.in_mask(v) for v in range(n)]
    common = None
    for u in range(n):
        for v in range(u + 1, n):
            c = (masks[u] & masks[v]).bit_count()
            if common is None:
                common = c
            elif c != common:
                return None
    if n != 4 * common + 3:
        raise InvariantError(
            f"pair domination is constant at {common} but n={n} != {4 * common + 3}"
        )
    return DrtCertificate(n=n, t=common)


@dataclass(frozen=True)
class HomogeneityReport:
    homogeneous: bool
    k: Optional[int] = None
    witness: Optional[tuple] = None


def is_homogeneous(t):
    """Check that C3(x, y) is one positive constant k over all pairs.

    k > 0 is part of the definition: transitive tournaments have C3
    constant at zero and are not homogeneous. A homogeneous tournament
    must have exactly 4k - 1 vertices, which is asserted, not reported.
    """
    if not isinstance(t, Tournament):
        raise InputError("is_homogeneous takes a Tournament")
    n = t.n
    if n < 3:
        return HomogeneityReport(homogeneous=False, k=0)
    first_pair = None
    k = None
    for x in range(n):
        for y in range(x + 1, n):
            c3, _ = pair_cycle_counts(t, x, y)
            if k is None:
                k = c3
                first_pair = (x, y)
            elif c3 != k:
                return HomogeneityReport(homogeneous=False, witness=(first_pair, (x, y)))
    if k == 0:
        # constant C3 = 0 means no 3-cycles at all, i.e. transitive
        return HomogeneityReport(homogeneous=False, k=0)
    if n != 4 * k - 1:
        raise InvariantError(f"C3 is constant at {k} but n={n} != {4 * k - 1}")
    return HomogeneityReport(homogeneous=True, k=k)


def _is_prime(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def paley_tournament(q):
    """Tournament on Z/q (q prime, q = 3 mod 4) with x -> y when y - x is a
    nonzero square mod q. Certified doubly regular before returning."""
    if not isinstance(q, int) or isinstance(q, bool):
        raise InputError(f"q must be an int, got {q!r}")
    if not _is_prime(q):
        raise InputError(f"q must be prime, got {q}")
    if q % 4 != 3:
        raise InputError(f"q must be 3 mod 4 so that -1 is a non-square, got {q}")
    residues = {pow(x, 2, q) for x in range(1, q)}
    rows = []
    for x in range(q):
        row = 0
        for y in range(q):
            if x != y and (y - x) % q in residues:
                row |= 1 << y
        rows.append(row)
    t = Tournament(q, rows)
    cert = is_doubly_regular(t)
    if cert is None or cert.t != (q - 3) // 4:
        raise InvariantError(f"Paley tournament on {q} vertices failed certification")
    return t


def skew_hadamard_from_drt(t):
    """H = A - A^T + I built over hat(t); valid exactly when t is doubly
    regular, which is certified first."""
    if not isinstance(t, Tournament):
        raise InputError("skew_hadamard_from_drt takes a Tournament")
    cert = is_doubly_regular(t)
    if cert is None:
        raise InputError(
            f"tournament on {t.n} vertices is not doubly regular; "
            "pair domination counts differ"
        )
    extended = hat(t)
    skew = skew_adjacency(extended)
    entries = [
        [skew.entries[i][j] + (1 if i == j else 0) for j in range(extended.n)]
        for i in range(extended.n)
    ]
    h = SignMatrix(entries)
    report = validate_sign_matrix(h, "skew_hadamard")
    if not report.ok:
        raise InvariantError(f"constructed matrix failed validation: {report.detail}")
    return h


def drt_from_skew_hadamard(h):
    """Recover the doubly regular tournament behind a skew Hadamard matrix.

    Conjugating by D = diag(h[0][j]) preserves both defining identities and
    turns row 0 into all ones; deleting row and column 0 then leaves
    K = A - A^T + I for the adjacency matrix A of the tournament returned.
    """
    report = validate_sign_matrix(h, "skew_hadamard")
    if not report.ok:
        raise InputError(f"not a skew Hadamard matrix: {report.detail}")
    n = h.n
    d = h.entries[0]
    normalized = [
        [d[i] * h.entries[i][j] * d[j] for j in range(n)] for i in range(n)
    ]
    rows = []
    for i in range(1, n):
        row = 0
        for j in range(1, n):
            if i != j and normalized[i][j] == 1:
                row |= 1 << (j - 1)
        rows.append(row)
    t = Tournament(n - 1, rows)
    if is_doubly_regular(t) is None:
        raise InvariantError("normalized skew Hadamard core is not doubly regular")
    return t


def closed_form_deletion_poly(t, d):
    """Characteristic polynomial of the i-weighting of a skew conference
    matrix of order 4t + 4 with any d rows/columns deleted.

    d = 0: (x^2 - (4t+3))^(2t+2)
    d = 1: x (x^2 - (4t+3))^(2t+1)
    d = 2: (x^2 - 1)(x^2 - (4t+3))^(2t)
    d = 3: x (x^2 - 3)(x^2 - (4t+3))^(2t-1)

    Requires t >= 1; at t = 0 the d = 3 exponent goes negative and the
    order-4 matrices are degenerate for this family, so they are rejected.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 1:
        raise InputError(f"t must be an int >= 1, got {t!r}")
    if d not in (0, 1, 2, 3):
        raise InputError(f"d must be 0, 1, 2 or 3, got {d!r}")
    base = poly_x_squared_minus(4 * t + 3, EXACT)
    x = RealPolynomial([0, 1], EXACT)
    if d == 0:
        return base.power(2 * t + 2)
    if d == 1:
        return x.multiply(base.power(2 * t + 1))
    if d == 2:
        return poly_x_squared_minus(1, EXACT).multiply(base.power(2 * t))
    return x.multiply(poly_x_squared_minus(3, EXACT)).multiply(base.power(2 * t - 1))


@dataclass(frozen=True)
class DeletionSpectraReport:
    n: int
    t: int
    max_deletions: int
    ok: bool
    polys_checked: int = 0
    failure: Optional[tuple] = None


def verify_deletion_spectra(s, max_deletions=3):
    """Check every d-deletion of a skew conference matrix against the closed
    forms, for d = 0 .. max_deletions.

    s must be a skew conference matrix of order 4t + 4 with t >= 1. The
    failure field, when set, is (deleted subset, expected poly, actual poly).
    """
    report = validate_sign_matrix(s, "skew_conference")
    if not report.ok:
        raise InputError(f"not a skew conference matrix: {report.detail}")
    if not isinstance(max_deletions, int) or not 0 <= max_deletions <= 3:
        raise InputError(f"max_deletions must be 0..3, got {max_deletions!r}")
    n = s.n
    if n % 4 != 0 or n < 8:
        raise InputError(
            f"order {n} is outside the closed-form family (need n = 4t + 4, t >= 1)"
        )
    t = (n - 4) // 4
    checked = 0
    for d in range(max_deletions + 1):
        expected = closed_form_deletion_poly(t, d)
        for deleted in colex_subsets(n, d):
            keep = [v for v in range(n) if v not in deleted]
            labels = [
                [GaussianScalar.exact(0, s.entries[x][y]) for y in keep] for x in keep
            ]
            actual = char_poly(HermitianStructure(labels))
            checked += 1
            if actual != expected:
                return DeletionSpectraReport(
                    n=n,
                    t=t,
                    max_deletions=max_deletions,
                    ok=False,
                    polys_checked=checked,
                    failure=(deleted, expected, actual),
                )
    return DeletionSpectraReport(
        n=n, t=t, max_deletions=max_deletions, ok=True, polys_checked=checked
    )
