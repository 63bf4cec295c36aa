"""Spectral monomorphy by enumeration.

A structure is k-spectrally monomorphic when all of its k-vertex
substructures share one characteristic polynomial. The checks here
enumerate substructures in colexicographic order, so the first mismatching
pair of subsets is deterministic and becomes the reported witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .charpoly import RealPolynomial, char_poly, _subset_determinant
from .combinat import colex_subsets, subset_bitmask
from .core import HermitianStructure, substructure
from .errors import InputError
from .scalars import EXACT, GaussianScalar, get_eps, rational


def _compare_polys(a, b, mode):
    """(equal, fragile): fragile marks an approx comparison that sits within
    10 * eps of its decision boundary, in either direction."""
    if mode == EXACT:
        return a.coefficients == b.coefficients, False
    if len(a.coefficients) != len(b.coefficients):
        return False, False
    eps = get_eps()
    equal = True
    fragile = False
    for ca, cb in zip(a.coefficients, b.coefficients):
        tol = eps * max(1.0, abs(ca), abs(cb))
        diff = abs(ca - cb)
        if diff > tol:
            equal = False
        if abs(diff - tol) <= 10.0 * eps:
            fragile = True
    return equal, fragile


@dataclass(frozen=True)
class MonomorphyReport:
    """Verdict of the k-subset enumeration.

    witness, present exactly when monomorphic is False, is the pair
    (reference subset, first differing subset) in colex order, with the two
    characteristic polynomials alongside. fragile is only ever True in
    approx mode, flagging a comparison that nearly flipped.
    """

    k: int
    monomorphic: bool
    common_poly: Optional[RealPolynomial] = None
    witness: Optional[tuple] = None
    witness_polys: Optional[tuple] = None
    subsets_checked: int = 0
    fragile: bool = False


def _subset_poly(g, subset, cache):
    if cache is None:
        return char_poly(substructure(g, subset))
    key = subset_bitmask(subset)
    poly = cache.get(key)
    if poly is None:
        poly = char_poly(substructure(g, subset))
        cache[key] = poly
    return poly


def is_k_spectrally_monomorphic(g, k, cache=None):
    """Enumerate all k-subsets and compare their characteristic polynomials.

    k must satisfy 1 <= k <= n; larger k has no substructures to compare and
    is rejected rather than treated as vacuously true.
    """
    if not isinstance(g, HermitianStructure):
        raise InputError("is_k_spectrally_monomorphic takes a HermitianStructure")
    if not isinstance(k, int) or isinstance(k, bool) or not 1 <= k <= g.n:
        raise InputError(f"subset size must satisfy 1 <= k <= {g.n}, got {k!r}")
    reference_subset = None
    reference_poly = None
    checked = 0
    fragile_any = False
    for subset in colex_subsets(g.n, k):
        checked += 1
        poly = _subset_poly(g, subset, cache)
        if reference_poly is None:
            reference_subset = subset
            reference_poly = poly
            continue
        equal, fragile = _compare_polys(reference_poly, poly, g.mode)
        fragile_any = fragile_any or fragile
        if not equal:
            return MonomorphyReport(
                k=k,
                monomorphic=False,
                witness=(reference_subset, subset),
                witness_polys=(reference_poly, poly),
                subsets_checked=checked,
                fragile=fragile_any,
            )
    return MonomorphyReport(
        k=k,
        monomorphic=True,
        common_poly=reference_poly,
        subsets_checked=checked,
        fragile=fragile_any,
    )


def monomorphy_profile(g):
    """MonomorphyReport for every k in 1..n, sharing one char-poly cache."""
    if not isinstance(g, HermitianStructure):
        raise InputError("monomorphy_profile takes a HermitianStructure")
    cache = {}
    return {k: is_k_spectrally_monomorphic(g, k, cache) for k in range(1, g.n + 1)}


@dataclass(frozen=True)
class DetConstancyReport:
    p: int
    constant: bool
    value: Optional[GaussianScalar] = None
    witness: Optional[tuple] = None
    witness_values: Optional[tuple] = None
    subsets_checked: int = 0


def det_constancy(g, p):
    """Check that all p x p principal minors of g agree, in colex order."""
    if not isinstance(g, HermitianStructure):
        raise InputError("det_constancy takes a HermitianStructure")
    if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= g.n:
        raise InputError(f"minor order must satisfy 1 <= p <= {g.n}, got {p!r}")
    eps = get_eps()
    reference_subset = None
    reference = None
    checked = 0
    for subset in colex_subsets(g.n, p):
        checked += 1
        value = _subset_determinant(g, subset)
        if reference is None:
            reference_subset = subset
            reference = value
            continue
        if g.mode == EXACT:
            same = value == reference
        else:
            same = abs(value - reference) <= eps * max(1.0, abs(value), abs(reference))
        if not same:
            wrap = (
                GaussianScalar.exact if g.mode == EXACT else GaussianScalar.approx
            )
            return DetConstancyReport(
                p=p,
                constant=False,
                witness=(reference_subset, subset),
                witness_values=(wrap(reference, 0), wrap(value, 0)),
                subsets_checked=checked,
            )
    wrap = GaussianScalar.exact if g.mode == EXACT else GaussianScalar.approx
    return DetConstancyReport(
        p=p,
        constant=True,
        value=wrap(reference, 0),
        subsets_checked=checked,
    )


@dataclass(frozen=True)
class WindowTransferReport:
    """Result of the window-sum transfer check.

    hypothesis_holds: every (p+r)-window has the same p-subset sum.
    conclusion_holds: the table itself is constant.
    lemma_applicable: n >= 2p + r, the range where the transfer lemma
    promises hypothesis implies conclusion.
    """

    n: int
    p: int
    r: int
    hypothesis_holds: bool
    conclusion_holds: bool
    lemma_applicable: bool
    window_sum: Optional[object] = None
    constant_value: Optional[object] = None
    hypothesis_witness: Optional[tuple] = None
    conclusion_witness: Optional[tuple] = None


def pouzet_transfer_check(table, p, r, n=None):
    """Exercise the transfer lemma on an explicit table of p-subset values.

    table maps every p-subset of range(n), given as a sorted tuple, to a
    rational. When n is omitted it is inferred as 1 + the largest vertex
    mentioned. Requires p >= 1, r >= 0 and n >= p + r.
    """
    if not isinstance(p, int) or isinstance(p, bool) or p < 1:
        raise InputError(f"p must be a positive int, got {p!r}")
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise InputError(f"r must be a nonnegative int, got {r!r}")
    entries = {}
    top = -1
    for key, value in table.items():
        key = tuple(key)
        if len(key) != p or len(set(key)) != p or sorted(key) != list(key):
            raise InputError(f"table key {key!r} is not a sorted {p}-subset")
        for v in key:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"table key {key!r} has a bad vertex")
            top = max(top, v)
        entries[key] = rational(value)
    if n is None:
        n = top + 1
    if top >= n:
        raise InputError(f"table mentions vertex {top} but n={n}")
    if n < p + r:
        raise InputError(f"need n >= p + r, got n={n}, p={p}, r={r}")
    for subset in colex_subsets(n, p):
        if subset not in entries:
            raise InputError(f"table is missing the {p}-subset {subset}")
    if len(entries) != sum(1 for _ in colex_subsets(n, p)):
        extra = set(entries) - set(colex_subsets(n, p))
        raise InputError(f"table has keys outside range({n}): {sorted(extra)!r}")

    from itertools import combinations

    hypothesis = True
    hypothesis_witness = None
    window_sum = None
    reference_window = None
    for window in colex_subsets(n, p + r):
        total = sum(entries[sub] for sub in combinations(window, p))
        if window_sum is None:
            window_sum = total
            reference_window = window
        elif total != window_sum:
            hypothesis = False
            hypothesis_witness = (reference_window, window)
            break

    conclusion = True
    conclusion_witness = None
    first_key = next(iter(colex_subsets(n, p)))
    constant_value = entries[first_key]
    for subset in colex_subsets(n, p):
        if entries[subset] != constant_value:
            conclusion = False
            conclusion_witness = (first_key, subset)
            break

    return WindowTransferReport(
        n=n,
        p=p,
        r=r,
        hypothesis_holds=hypothesis,
        conclusion_holds=conclusion,
        lemma_applicable=n >= 2 * p + r,
        window_sum=window_sum if hypothesis else None,
        constant_value=constant_value if conclusion else None,
        hypothesis_witness=hypothesis_witness,
        conclusion_witness=conclusion_witness,
    )
