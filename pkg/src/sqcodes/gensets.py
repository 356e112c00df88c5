"""Explicit generator sets for left-right Cayley complexes.

Builds the Morgenstern order-2 generating sets of PSL2(q^i) for q a power
of two, the derived product sets (pairwise products of the order-2
generators), and utilities shared by every generator pathway: the
order-dichotomy certificate for the no-conjugacy condition and symmetric
degree reduction with its spectral penalty bound.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (
    DegenerateSolutionCount,
    DuplicateImages,
    NoAdmissibleIota,
    NoSymmetricSubset,
)
from .gf2 import BitMatrix, rank_and_rref
from .groups import Field, GroupTable, ORDER_CAP, make_field, psl2_group


@dataclass(frozen=True)
class GeneratorPair:
    """A left set and a right set of generators plus their provenance."""

    a: tuple[int, ...]
    b: tuple[int, ...]
    provenance: str = "user"  # morgenstern | user | search

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))


@dataclass(frozen=True)
class MorgensternB:
    """The q+1 order-2 generators of PSL2(q^i) and the field data behind them."""

    group: GroupTable
    field: Field
    q: int
    i: int
    iota: int
    epsilon: int
    x: int
    b: tuple[int, ...]  # element indices, in solution-enumeration order
    solutions: tuple[tuple[int, int], ...] = dc_field(repr=False, default=())


def _f2_basis(field: Field, elements: list[int]) -> list[int]:
    """A subset of elements whose coefficient vectors are independent over F2."""
    basis, rows = [], []
    for e in elements:
        cand = rows + [field.coeffs(e)]
        m = BitMatrix.from_dense(np.array(cand, dtype=np.uint8))
        if rank_and_rref(m)[0] == len(cand):
            basis.append(e)
            rows.append(field.coeffs(e))
    return basis


def _spans_field(field: Field, x: int, degree: int, sub_basis: list[int]) -> bool:
    """True when 1, x, ..., x^(degree-1) are independent over the subfield."""
    rows = []
    power = field.one
    for _ in range(degree):
        for s in sub_basis:
            rows.append(field.coeffs(field.mul(s, power)))
        power = field.mul(power, x)
    m = BitMatrix.from_dense(np.array(rows, dtype=np.uint8))
    return rank_and_rref(m)[0] == field.k


def morgenstern_b(q: int, i: int, order_cap: int = ORDER_CAP) -> MorgensternB:
    """Order-2 generators of PSL2(q^i): matrices [[1, g+d*iota], [x*(g+d+d*iota), 1]]
    scaled to determinant 1, over the q+1 solutions (g, d) of g^2+gd+d^2*eps = 1.
    """
    ell = q.bit_length() - 1
    if q < 2 or q != 1 << ell:
        raise ValueError(f"q={q} is not a power of two")
    if i < 2 or i % 2:
        raise ValueError(f"i={i} must be even and >= 2")
    fld = make_field(2, ell * i)
    group = psl2_group(fld, order_cap=order_cap)
    sub = fld.subfield(q)
    if len(sub) != q:
        raise NoAdmissibleIota(f"subfield of order {q} not found in {fld}")
    sub_set = set(sub)

    iota = epsilon = -1
    for e in range(fld.order):
        if e in sub_set:
            continue
        eps = fld.add(fld.mul(e, e), e)
        if eps in sub_set:
            iota, epsilon = e, eps
            break
    if iota < 0:
        raise NoAdmissibleIota(f"no element of {fld} has e^2+e in the subfield")

    sub_basis = _f2_basis(fld, sub)
    x = next((e for e in range(fld.order) if _spans_field(fld, e, i, sub_basis)), -1)
    if x < 0:
        raise NoAdmissibleIota(f"no degree-{i} generator over the subfield in {fld}")

    solutions = [
        (g, d)
        for g in sub
        for d in sub
        if fld.add(fld.add(fld.mul(g, g), fld.mul(g, d)),
                   fld.mul(fld.mul(d, d), epsilon)) == fld.one
    ]
    if len(solutions) != q + 1:
        raise DegenerateSolutionCount(
            f"expected {q + 1} solutions, found {len(solutions)}")

    b = []
    for g, d in solutions:
        u = fld.add(g, fld.mul(d, iota))
        v = fld.mul(x, fld.add(fld.add(g, d), fld.mul(d, iota)))
        det = fld.add(fld.one, fld.mul(u, v))
        s = fld.sqrt(fld.inv(det))
        idx = group.index_of_matrix(
            [s, fld.mul(s, u), fld.mul(s, v), s])
        b.append(idx)
    for idx in b:
        if group.mul(idx, idx) != group.identity or idx == group.identity:
            raise DegenerateSolutionCount(f"generator {idx} does not have order 2")
    return MorgensternB(group=group, field=fld, q=q, i=i, iota=iota,
                        epsilon=epsilon, x=x, b=tuple(b),
                        solutions=tuple(solutions))


def _product_set(group: GroupTable, products: list[int], expected: int) -> np.ndarray:
    distinct = np.unique(np.array(products, dtype=np.int64))
    for idx in distinct:
        if group.mul(int(idx), int(idx)) == group.identity:
            raise DegenerateSolutionCount(
                f"product generator {idx} has order <= 2")
    if len(distinct) != expected:
        warnings.warn(
            f"{expected - len(distinct)} duplicate products collapsed "
            f"({len(distinct)} of {expected} distinct)", DuplicateImages)
    return distinct


def morgenstern_a(group: GroupTable, b: tuple[int, ...]) -> np.ndarray:
    """All pairwise products b_t*b_s with t != s; up to q^2+q elements, order > 2."""
    products = [group.mul(bt, bs) for bt in b for bs in b if bt != bs]
    return _product_set(group, products, len(b) * (len(b) - 1))


def morgenstern_a_prime(group: GroupTable, b: tuple[int, ...]) -> np.ndarray:
    """The 2q products of the first generator with each other one, both orders."""
    b0, rest = b[0], b[1:]
    products = [group.mul(b0, bj) for bj in rest] + [group.mul(bj, b0) for bj in rest]
    return _product_set(group, products, 2 * len(rest))


def tnc_by_orders(group: GroupTable, a: np.ndarray, b: np.ndarray) -> bool:
    """Certify no-conjugacy via orders: conjugation preserves the order of an
    element, so the condition holds whenever every right generator squares to
    the identity and no left generator does. Returns False when the order
    pattern is inconclusive (callers then fall back to the exhaustive scan).
    """
    for idx in np.asarray(b).ravel():
        if group.mul(int(idx), int(idx)) != group.identity:
            return False
    for idx in np.asarray(a).ravel():
        if group.mul(int(idx), int(idx)) == group.identity:
            return False
    return True


def degree_reduce(group: GroupTable, s: np.ndarray, target: int) -> np.ndarray:
    """Symmetric subset of size target, dropping lexicographically last
    inverse-closed units first (pairs as a whole, involutions singly)."""
    s = np.unique(np.asarray(s, dtype=np.int64))
    if not 0 < target <= len(s):
        raise NoSymmetricSubset(f"target {target} not in 1..{len(s)}")
    units = []  # (max index, members)
    seen = set()
    for idx in s:
        idx = int(idx)
        if idx in seen:
            continue
        inv = group.inv(idx)
        members = (idx,) if inv == idx else (idx, inv)
        seen.update(members)
        units.append((max(members), members))
    removed = []
    remaining = len(s) - target
    for _, members in sorted(units, reverse=True):
        if remaining == 0:
            break
        if len(members) <= remaining:
            removed.extend(members)
            remaining -= len(members)
    if remaining:
        raise NoSymmetricSubset(
            f"no symmetric subset of size {target}: inverse pairs leave "
            f"{remaining} element(s) unremovable")
    return np.setdiff1d(s, np.array(removed, dtype=np.int64))


def reduction_bounds(lam: float, n_removed: int, n_kept: int,
                     n_original: int) -> dict[str, float | None]:
    """Spectral penalty of removing generators: additive bound
    lam + 2*removed/kept always; the 4*lam bound under the smallness window."""
    bounds: dict[str, float | None] = {
        "additive": lam + 2.0 * n_removed / n_kept,
        "quadruple": None,
    }
    root = math.sqrt(n_original)
    if n_removed <= 2.0 * root and 2.0 / root <= lam <= 1.0 / 3.0:
        bounds["quadruple"] = 4.0 * lam
    return bounds


def morgenstern_pair(q: int, i: int, variant: str = "a_prime",
                     order_cap: int = ORDER_CAP) -> tuple[MorgensternB, GeneratorPair]:
    """Convenience bundle: the order-2 set plus the chosen product set."""
    mb = morgenstern_b(q, i, order_cap=order_cap)
    if variant == "a":
        a = morgenstern_a(mb.group, mb.b)
    elif variant == "a_prime":
        a = morgenstern_a_prime(mb.group, mb.b)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    pair = GeneratorPair(a=tuple(int(v) for v in a),
                         b=tuple(sorted(mb.b)), provenance="morgenstern")
    return mb, pair
