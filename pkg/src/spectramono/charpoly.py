"""Characteristic polynomials of Hermitian structures, exactly.

The label matrix of a Hermitian structure has a monic characteristic
polynomial P(x) = det(xI - M) with real coefficients. It is computed by the
Faddeev-LeVerrier recurrence, which stays inside the rationals (division
only by 1..n), with a plain-integer fast path when every component is an
integer. Determinants come from an independent elimination so the identity
P(0) = (-1)^n det M is a genuine cross-check rather than a tautology.
"""

from __future__ import annotations

from .combinat import colex_subsets
from .errors import InputError, InvariantError, ModeMixError
from .scalars import APPROX, EXACT, GaussianScalar, get_eps, rational

_RAT_ONE = rational(1)


class RealPolynomial:
    """Real-coefficient polynomial, coefficients stored ascending."""

    __slots__ = ("coefficients", "mode")

    def __init__(self, coefficients, mode):
        if mode not in (EXACT, APPROX):
            raise InputError(f"unknown polynomial mode {mode!r}")
        if mode == EXACT:
            coeffs = [rational(c) for c in coefficients]
        else:
            coeffs = [float(c) for c in coefficients]
        if not coeffs:
            raise InputError("a polynomial needs at least one coefficient")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("RealPolynomial is immutable")

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def is_monic(self):
        lead = self.coefficients[-1]
        if self.mode == EXACT:
            return lead == 1
        return abs(lead - 1.0) <= get_eps()

    def evaluate(self, x):
        if self.mode == EXACT:
            x = rational(x)
            acc = rational(0)
        else:
            x = float(x)
            acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def multiply(self, other):
        self._require_same_mode(other)
        a, b = self.coefficients, other.coefficients
        zero = rational(0) if self.mode == EXACT else 0.0
        out = [zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return RealPolynomial(out, self.mode)

    def power(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"polynomial power must be a nonnegative int, got {k!r}")
        result = RealPolynomial([1], self.mode)
        base = self
        while k:
            if k & 1:
                result = result.multiply(base)
            base = base.multiply(base)
            k >>= 1
        return result

    def scaled(self, s):
        """s^n * P(x / s) for a positive real scale s: the characteristic
        polynomial transform under a selector of modulus squared s."""
        n = self.degree
        if self.mode == EXACT:
            s = rational(s)
            if s <= 0:
                raise InputError("scale must be positive")
            return RealPolynomial(
                [c * s ** (n - j) for j, c in enumerate(self.coefficients)],
                EXACT,
            )
        s = float(s)
        if not s > 0.0:
            raise InputError("scale must be positive")
        return RealPolynomial(
            [c * s ** (n - j) for j, c in enumerate(self.coefficients)],
            APPROX,
        )

    def _require_same_mode(self, other):
        if not isinstance(other, RealPolynomial):
            raise InputError(f"expected a RealPolynomial, got {other!r}")
        if other.mode != self.mode:
            raise ModeMixError("cannot combine polynomials of different modes")

    def __eq__(self, other):
        if not isinstance(other, RealPolynomial):
            return NotImplemented
        self._require_same_mode(other)
        if self.mode == EXACT:
            return self.coefficients == other.coefficients
        if len(self.coefficients) != len(other.coefficients):
            return False
        eps = get_eps()
        return all(
            abs(a - b) <= eps * max(1.0, abs(a), abs(b))
            for a, b in zip(self.coefficients, other.coefficients)
        )

    def __hash__(self):
        if self.mode == APPROX:
            raise TypeError("approx polynomials compare within eps and cannot hash")
        return hash(self.coefficients)

    def to_display(self):
        """Compact human form in descending powers, e.g. 'x^5-10x^3+21x'."""
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            if self.mode == EXACT:
                negative = c < 0
                body = str(abs(c))
            else:
                negative = c < 0.0
                body = repr(abs(c))
            if k > 0 and body == "1":
                body = ""
            if k == 1:
                body += "x"
            elif k > 1:
                body += f"x^{k}"
            sign = "-" if negative else ("+" if terms else "")
            terms.append(sign + body)
        return "".join(terms) if terms else "0"

    def coefficient_strings(self):
        """Ascending coefficient literals for reports, exact and replayable."""
        if self.mode == EXACT:
            return [str(c) for c in self.coefficients]
        return [repr(c) for c in self.coefficients]

    def __repr__(self):
        return f"RealPolynomial({self.to_display()!r}, mode={self.mode!r})"

    def __str__(self):
        return self.to_display()


def poly_x_squared_minus(constant, mode=EXACT):
    """x^2 - constant, a convenience for spectral closed forms."""
    if mode == EXACT:
        return RealPolynomial([-rational(constant), 0, 1], EXACT)
    return RealPolynomial([-float(constant), 0.0, 1.0], APPROX)


def _label_components(g):
    """Matrix of (re, im) component pairs, plus a flag for the all-integer case."""
    pairs = [[(e.re, e.im) for e in row] for row in g.labels]
    if g.mode == APPROX:
        return [[complex(re, im) for re, im in row] for row in pairs], False
    integral = all(
        re.denominator == 1 and im.denominator == 1
        for row in pairs
        for re, im in row
    )
    if integral:
        return [[(int(re), int(im)) for re, im in row] for row in pairs], True
    return pairs, False


def _pair_matmul(a, b, n):
    out = []
    for i in range(n):
        arow = a[i]
        orow = []
        for j in range(n):
            sre = 0
            sim = 0
            for k in range(n):
                ar, ai = arow[k]
                br, bi = b[k][j]
                sre += ar * br - ai * bi
                sim += ar * bi + ai * br
            orow.append((sre, sim))
        out.append(orow)
    return out


def char_poly(g):
    """Monic characteristic polynomial of the label matrix of g.

    Faddeev-LeVerrier: M_1 = M, c_k = -trace(M_k)/k,
    M_{k+1} = M (M_k + c_k I). Exact mode divides rationals (or integers,
    where the division is provably exact), approx mode runs on floats.
    """
    from .core import HermitianStructure

    if not isinstance(g, HermitianStructure):
        raise InputError("char_poly takes a HermitianStructure")
    n = g.n
    if g.mode == APPROX:
        m, _ = _label_components(g)
        mk = [row[:] for row in m]
        descending = [1.0]
        eps = get_eps()
        for k in range(1, n + 1):
            tr = sum(mk[i][i] for i in range(n))
            if abs(tr.imag) > eps * max(1.0, abs(tr.real)):
                raise InvariantError("trace of a Hermitian power must be real")
            ck = -tr.real / k
            descending.append(ck)
            if k < n:
                for i in range(n):
                    mk[i][i] += ck
                mk = [
                    [
                        sum(m[i][t] * mk[t][j] for t in range(n))
                        for j in range(n)
                    ]
                    for i in range(n)
                ]
        return RealPolynomial(list(reversed(descending)), APPROX)

    m, integral = _label_components(g)
    mk = [row[:] for row in m]
    descending = [_RAT_ONE]
    for k in range(1, n + 1):
        tr_re = 0
        tr_im = 0
        for i in range(n):
            re, im = mk[i][i]
            tr_re += re
            tr_im += im
        if tr_im != 0:
            raise InvariantError("trace of a Hermitian power must be real")
        if integral:
            q, r = divmod(-tr_re, k)
            if r != 0:
                raise InvariantError("integer characteristic coefficient did not divide")
            ck = q
        else:
            ck = -tr_re / k
        descending.append(ck)
        if k < n:
            for i in range(n):
                re, im = mk[i][i]
                mk[i][i] = (re + ck, im)
            mk = _pair_matmul(m, mk, n)
    return RealPolynomial(list(reversed(descending)), EXACT)


def _det_exact(pairs, n):
    """Determinant of a matrix of (re, im) rational or integer pairs by
    Gaussian elimination with exact division."""
    a = [[(rational(re), rational(im)) for re, im in row] for row in pairs]
    sign = 1
    det_re, det_im = rational(1), rational(0)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            re, im = a[r][col]
            if re != 0 or im != 0:
                pivot = r
                break
        if pivot is None:
            return rational(0), rational(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        pre, pim = a[col][col]
        det_re, det_im = det_re * pre - det_im * pim, det_re * pim + det_im * pre
        norm = pre * pre + pim * pim
        inv = (pre / norm, -pim / norm)
        for r in range(col + 1, n):
            fre, fim = a[r][col]
            if fre == 0 and fim == 0:
                continue
            fre, fim = fre * inv[0] - fim * inv[1], fre * inv[1] + fim * inv[0]
            for c in range(col, n):
                bre, bim = a[col][c]
                cre, cim = a[r][c]
                a[r][c] = (cre - (fre * bre - fim * bim), cim - (fre * bim + fim * bre))
    if sign < 0:
        det_re, det_im = -det_re, -det_im
    return det_re, det_im


def _det_approx(m, n):
    a = [row[:] for row in m]
    sign = 1
    det = complex(1.0, 0.0)
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) == 0.0:
            return complex(0.0, 0.0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            sign = -sign
        det *= a[col][col]
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            if factor == 0:
                continue
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    return det * sign


def _determinant_components(g):
    """(re, im) of det of the label matrix, by elimination only."""
    m, _ = _label_components(g)
    if g.mode == APPROX:
        d = _det_approx(m, g.n)
        return d.real, d.imag
    return _det_exact(m, g.n)


def determinant(g):
    """Determinant of the label matrix, a real scalar for Hermitian input.

    Computed by elimination and then cross-checked against the independent
    Faddeev-LeVerrier route through P(0) = (-1)^n det M.
    """
    from .core import HermitianStructure

    if not isinstance(g, HermitianStructure):
        raise InputError("determinant takes a HermitianStructure")
    re, im = _determinant_components(g)
    n = g.n
    p0 = char_poly(g).coefficients[0]
    expected = p0 if n % 2 == 0 else -p0
    if g.mode == EXACT:
        if im != 0:
            raise InvariantError("determinant of a Hermitian matrix must be real")
        if re != expected:
            raise InvariantError(
                f"determinant routes disagree: elimination {re}, recurrence {expected}"
            )
        return GaussianScalar.exact(re, 0)
    eps = get_eps()
    if abs(im) > eps * max(1.0, abs(re)):
        raise InvariantError("determinant of a Hermitian matrix must be real")
    if abs(re - expected) > eps * max(1.0, abs(re), abs(expected)):
        raise InvariantError(
            f"determinant routes disagree: elimination {re}, recurrence {expected}"
        )
    return GaussianScalar.approx(re, 0.0)


def _subset_determinant(g, subset):
    """Elimination determinant of the principal submatrix on `subset`."""
    m, _ = _label_components(g)
    sub = [[m[a][b] for b in subset] for a in subset]
    if g.mode == APPROX:
        return _det_approx(sub, len(subset)).real
    re, im = _det_exact(sub, len(subset))
    if im != 0:
        raise InvariantError("principal minor of a Hermitian matrix must be real")
    return re


def principal_minor_sum(g, p):
    """Sum of all p x p principal minors of the label matrix, enumerated in
    colexicographic subset order. This is the enumeration side of the
    coefficient identity a_p = (-1)^p * (sum of p x p principal minors); it
    deliberately does not consult char_poly, so the two routes stay
    independent checks of each other.
    """
    from .core import HermitianStructure

    if not isinstance(g, HermitianStructure):
        raise InputError("principal_minor_sum takes a HermitianStructure")
    if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= g.n:
        raise InputError(f"minor order must satisfy 1 <= p <= {g.n}, got {p!r}")
    m, _ = _label_components(g)
    if g.mode == APPROX:
        total = 0.0
        for subset in colex_subsets(g.n, p):
            sub = [[m[a][b] for b in subset] for a in subset]
            total += _det_approx(sub, p).real
        return GaussianScalar.approx(total, 0.0)
    total = rational(0)
    for subset in colex_subsets(g.n, p):
        sub = [[m[a][b] for b in subset] for a in subset]
        re, im = _det_exact(sub, p)
        if im != 0:
            raise InvariantError("principal minor of a Hermitian matrix must be real")
        total += re
    return GaussianScalar.exact(total, 0)


def scaled_poly(poly, s):
    """Module-level spelling of RealPolynomial.scaled."""
    if not isinstance(poly, RealPolynomial):
        raise InputError("scaled_poly takes a RealPolynomial")
    return poly.scaled(s)
