"""Finite fields GF(p^k) and finite groups as indexed multiplication structures.

Field elements are indices 0..p^k-1 encoding coefficient vectors in base p
(digit i = coefficient of x^i). Group elements are indices into a canonical
element order; small groups carry a dense multiplication table, large matrix
groups multiply on the fly.
"""

from __future__ import annotations

import warnings
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IdentityInSet,
    NonGeneratingSet,
    NonSymmetricSet,
    OrderCapExceeded,
    ReducibleModulus,
)

__all__ = [
    "Field",
    "make_field",
    "GroupTable",
    "DenseGroup",
    "Psl2Group",
    "cyclic_group",
    "perm_group",
    "psl2_group",
    "subgroup_closure",
    "element_order",
    "validate_group",
    "check_generator_set",
    "group_header_text",
    "ORDER_CAP",
    "DENSE_TABLE_CAP",
]

ORDER_CAP = 10**6
DENSE_TABLE_CAP = 1 << 16


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, index encodings)


def _poly_from_index(idx: int, p: int) -> list[int]:
    digits = []
    while idx:
        idx, d = divmod(idx, p)
        digits.append(d)
    return digits


def _poly_to_index(coeffs: Sequence[int], p: int) -> int:
    idx = 0
    for c in reversed(coeffs):
        idx = idx * p + (c % p)
    return idx


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    _poly_trim(a)
    db, lb = len(b) - 1, b[-1]
    lb_inv = pow(lb, p - 2, p)
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        factor = (a[-1] * lb_inv) % p
        quot[shift] = factor
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - factor * b[i]) % p
        _poly_trim(a)
    return quot, a


def _poly_is_irreducible(m: Sequence[int], p: int) -> bool:
    k = len(m) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for idx in range(p**d):
            div = _poly_from_index(idx, p) + [0] * (d - len(_poly_from_index(idx, p))) + [1]
            div = _poly_from_index(idx, p)
            div += [0] * (d - len(div))
            div.append(1)
            _, rem = _poly_divmod(m, div, p)
            if not rem:
                return False
    return True


class Field:
    """GF(p^k) with index-encoded elements and cached small-field tables."""

    def __init__(self, p: int, k: int, modulus: Sequence[int] | None = None):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p={p} is not prime")
        if k < 1:
            raise ValueError("k must be >= 1")
        self.p = p
        self.k = k
        self.order = p**k
        if modulus is None:
            modulus = self._default_modulus(p, k)
        else:
            modulus = [c % p for c in modulus]
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if not _poly_is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
        self.modulus = tuple(modulus)
        self.zero = 0
        self.one = 1
        self.x = p % self.order if k > 1 else _poly_to_index(
            _poly_divmod([0, 1], list(self.modulus), p)[1], p
        )
        self._mul_table: np.ndarray | None = None
        self._add_table: np.ndarray | None = None
        if self.order <= 1 << 12:
            self._build_tables()

    @staticmethod
    def _default_modulus(p: int, k: int) -> list[int]:
        # lowest-index monic polynomial of degree k that is irreducible
        for idx in range(p**k):
            low = _poly_from_index(idx, p)
            low += [0] * (k - len(low))
            cand = low + [1]
            if _poly_is_irreducible(cand, p):
                return cand
        raise ReducibleModulus(f"no irreducible modulus of degree {k} over F_{p}")

    # -- scalar ops on indices

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        pa, pb = _poly_from_index(a, self.p), _poly_from_index(b, self.p)
        n = max(len(pa), len(pb))
        pa += [0] * (n - len(pa))
        pb += [0] * (n - len(pb))
        return _poly_to_index([(x + y) % self.p for x, y in zip(pa, pb)], self.p)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return _poly_to_index([(-c) % self.p for c in _poly_from_index(a, self.p)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        prod = _poly_mul(_poly_from_index(a, self.p), _poly_from_index(b, self.p), self.p)
        _, rem = _poly_divmod(prod, list(self.modulus), self.p) if prod else ([], [])
        return _poly_to_index(rem, self.p)

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            return self.one if e == 0 else 0
        e %= self.order - 1
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.pow(a, self.order - 2)

    def sqrt(self, a: int) -> int:
        """Square root in characteristic 2 (the inverse Frobenius)."""
        if self.p != 2:
            raise NotImplementedError("sqrt implemented for characteristic 2 only")
        return self.pow(a, self.order // 2)

    def coeffs(self, a: int) -> tuple[int, ...]:
        c = _poly_from_index(a, self.p)
        return tuple(c + [0] * (self.k - len(c)))

    def subfield(self, sub_order: int) -> list[int]:
        """Indices of the subfield of the given order (fixed points of x -> x^sub_order)."""
        return [e for e in range(self.order) if self.pow(e, sub_order) == e]

    # -- vectorized ops

    def _build_tables(self) -> None:
        n = self.order
        self._add_table = np.array(
            [[self.add(a, b) for b in range(n)] for a in range(n)], dtype=np.int64
        ) if self.p != 2 else None
        tbl = np.empty((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                prod = _poly_mul(_poly_from_index(a, self.p), _poly_from_index(b, self.p), self.p)
                _, rem = _poly_divmod(prod, list(self.modulus), self.p) if prod else ([], [])
                tbl[a, b] = _poly_to_index(rem, self.p)
        self._mul_table = tbl

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a ^ b
        assert self._add_table is not None
        return self._add_table[a, b]

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        assert self._mul_table is not None, "field too large for cached tables"
        return self._mul_table[a, b]

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


def make_field(p: int, k: int, modulus: Sequence[int] | None = None) -> Field:
    """Construct GF(p^k); the default modulus is the lowest-index irreducible."""
    return Field(p, k, modulus)


# ---------------------------------------------------------------------------
# groups


class GroupTable:
    """Common interface: indexed elements with multiplication and inverse."""

    order: int
    identity: int
    name: str

    def mul(self, i: int, j: int) -> int:
        raise NotImplementedError

    def inv(self, i: int) -> int:
        raise NotImplementedError

    def mul_arr(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inv_arr(self, i: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def label(self, i: int) -> str:
        return str(i)

    def conjugate(self, g: int, a: int) -> int:
        """g^{-1} a g."""
        return self.mul(self.mul(self.inv(g), a), g)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, order={self.order})"


class DenseGroup(GroupTable):
    """A group held as a full multiplication table (orders below 2^16)."""

    def __init__(self, table: np.ndarray, name: str = "group", labels: list[str] | None = None):
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("table must be square")
        if n > DENSE_TABLE_CAP:
            raise OrderCapExceeded(f"dense table for order {n} exceeds {DENSE_TABLE_CAP}")
        self.order = n
        self.table = np.ascontiguousarray(table, dtype=np.int64)
        self.name = name
        self.labels = labels
        ident = [g for g in range(n) if np.array_equal(self.table[g], np.arange(n))]
        if len(ident) != 1:
            raise ValueError("table has no unique identity")
        self.identity = ident[0]
        inv = np.full(n, -1, dtype=np.int64)
        src, dst = np.nonzero(self.table == self.identity)
        inv[src] = dst
        if (inv < 0).any() or not np.array_equal(self.table[inv, np.arange(n)],
                                                 np.full(n, self.identity)):
            raise ValueError("table has elements without two-sided inverses")
        self.inverse = inv

    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv(self, i: int) -> int:
        return int(self.inverse[i])

    def mul_arr(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        return self.table[i, j]

    def inv_arr(self, i: np.ndarray) -> np.ndarray:
        return self.inverse[i]

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)


def cyclic_group(n: int) -> DenseGroup:
    """Z_n with elements 0..n-1 under addition mod n."""
    if n > DENSE_TABLE_CAP:
        raise OrderCapExceeded(f"cyclic group of order {n} exceeds dense cap")
    idx = np.arange(n)
    return DenseGroup((idx[:, None] + idx[None, :]) % n, name=f"Z{n}")


def perm_group(generators: Iterable[Sequence[int]], name: str = "perm",
               order_cap: int = ORDER_CAP) -> DenseGroup:
    """Closure of permutations (tuples mapping position -> image) under composition."""
    gens = [tuple(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    deg = len(gens[0])
    ident = tuple(range(deg))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = tuple(g[h[i]] for i in range(deg))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append(prod)
                    if len(seen) > order_cap:
                        raise OrderCapExceeded("closure exceeded order cap")
        frontier = nxt
    elements = sorted(seen)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, g in enumerate(elements):
        for j, h in enumerate(elements):
            table[i, j] = index[tuple(g[h[t]] for t in range(deg))]
    return DenseGroup(table, name=name, labels=[repr(e) for e in elements])


class Psl2Group(GroupTable):
    """PSL2 over a small field, multiplying canonicalized matrices on the fly.

    Elements are determinant-1 matrices (a, b, c, d) up to scalars; in odd
    characteristic the representative is the lexicographically smaller of the
    two scalar lifts. Indices follow the sorted order of encoded matrices.
    """

    def __init__(self, field: Field, name: str | None = None):
        self.field = field
        q = field.order
        self.name = name or f"PSL2({q})"
        inv_t = np.array([0] + [field.inv(v) for v in range(1, q)], dtype=np.int64)
        nz = np.arange(1, q, dtype=np.int64)
        full = np.arange(q, dtype=np.int64)
        # a = 0 forces bc = -1 and leaves d free
        b0, d0 = [g.ravel() for g in np.meshgrid(nz, full, indexing="ij")]
        c0 = self._neg_arr(inv_t[b0])
        # a != 0 determines d = a^{-1}(1 + bc)
        a1, b1, c1 = [g.ravel() for g in np.meshgrid(nz, full, full, indexing="ij")]
        d1 = field.mul_arr(inv_t[a1], field.add_arr(
            field.mul_arr(b1, c1), np.full_like(b1, field.one)))
        mats = np.concatenate([
            np.stack([np.zeros_like(b0), b0, c0, d0], axis=1),
            np.stack([a1, b1, c1, d1], axis=1),
        ])
        keys = self._canonical_keys(mats)
        self.keys = np.unique(keys)
        self.order = len(self.keys)
        self.identity = int(np.searchsorted(self.keys, self._encode(
            np.array([[field.one, 0, 0, field.one]]))[0]))

    def _neg_arr(self, x: np.ndarray) -> np.ndarray:
        f = self.field
        if f.p == 2:
            return x
        neg = np.array([f.neg(v) for v in range(f.order)], dtype=np.int64)
        return neg[x]

    def _encode(self, mats: np.ndarray) -> np.ndarray:
        q = np.int64(self.field.order)
        m = mats.astype(np.int64)
        return ((m[:, 0] * q + m[:, 1]) * q + m[:, 2]) * q + m[:, 3]

    def _decode(self, keys: np.ndarray) -> np.ndarray:
        q = self.field.order
        keys = np.asarray(keys, dtype=np.int64)
        d = keys % q
        r = keys // q
        c = r % q
        r //= q
        b = r % q
        a = r // q
        return np.stack([a, b, c, d], axis=1)

    def _canonical_keys(self, mats: np.ndarray) -> np.ndarray:
        k1 = self._encode(mats)
        if self.field.p == 2:
            return k1
        neg = np.array([self.field.neg(v) for v in range(self.field.order)], dtype=np.int64)
        k2 = self._encode(neg[mats])
        return np.minimum(k1, k2)

    def matrix(self, i: int) -> tuple[int, int, int, int]:
        return tuple(int(v) for v in self._decode(self.keys[i : i + 1])[0])

    def index_of_matrix(self, mat: Sequence[int]) -> int:
        key = self._canonical_keys(np.asarray(mat, dtype=np.int64).reshape(1, 4))[0]
        pos = int(np.searchsorted(self.keys, key))
        if pos >= self.order or self.keys[pos] != key:
            raise ValueError(f"matrix {tuple(mat)} is not in {self.name}")
        return pos

    def mul_arr(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        f = self.field
        i = np.asarray(i)
        j = np.asarray(j)
        shape = np.broadcast_shapes(i.shape, j.shape)
        m1 = self._decode(self.keys[np.broadcast_to(i, shape).ravel()])
        m2 = self._decode(self.keys[np.broadcast_to(j, shape).ravel()])
        a = f.add_arr(f.mul_arr(m1[:, 0], m2[:, 0]), f.mul_arr(m1[:, 1], m2[:, 2]))
        b = f.add_arr(f.mul_arr(m1[:, 0], m2[:, 1]), f.mul_arr(m1[:, 1], m2[:, 3]))
        c = f.add_arr(f.mul_arr(m1[:, 2], m2[:, 0]), f.mul_arr(m1[:, 3], m2[:, 2]))
        d = f.add_arr(f.mul_arr(m1[:, 2], m2[:, 1]), f.mul_arr(m1[:, 3], m2[:, 3]))
        keys = self._canonical_keys(np.stack([a, b, c, d], axis=1))
        return np.searchsorted(self.keys, keys).reshape(shape)

    def inv_arr(self, i: np.ndarray) -> np.ndarray:
        f = self.field
        i = np.asarray(i)
        m = self._decode(self.keys[i.ravel()])
        neg = (
            np.arange(f.order)
            if f.p == 2
            else np.array([f.neg(v) for v in range(f.order)], dtype=np.int64)
        )
        inv = np.stack([m[:, 3], neg[m[:, 1]], neg[m[:, 2]], m[:, 0]], axis=1)
        keys = self._canonical_keys(inv)
        return np.searchsorted(self.keys, keys).reshape(i.shape)

    def mul(self, i: int, j: int) -> int:
        return int(self.mul_arr(np.array([i]), np.array([j]))[0])

    def inv(self, i: int) -> int:
        return int(self.inv_arr(np.array([i]))[0])

    def label(self, i: int) -> str:
        a, b, c, d = self.matrix(i)
        return f"[[{a},{b}],[{c},{d}]]"


def psl2_group(field: Field, order_cap: int = ORDER_CAP) -> GroupTable:
    """PSL2 over the field: dense table below 2^16 elements, on the fly above."""
    q = field.order
    expected = q * (q * q - 1) // (2 if q % 2 else 1)
    if expected > order_cap:
        raise OrderCapExceeded(f"|PSL2({q})| = {expected} exceeds cap {order_cap}")
    fly = Psl2Group(field)
    if fly.order > DENSE_TABLE_CAP:
        return fly
    idx = np.arange(fly.order)
    table = np.empty((fly.order, fly.order), dtype=np.int64)
    for i in range(fly.order):
        table[i] = fly.mul_arr(np.full(fly.order, i), idx)
    labels = [fly.label(i) for i in range(fly.order)]
    dense = DenseGroup(table, name=fly.name, labels=labels)
    # the table preserves element order, so matrix lookups carry over
    dense.matrix = fly.matrix
    dense.index_of_matrix = fly.index_of_matrix
    return dense


def subgroup_closure(group: GroupTable, gens: Sequence[int],
                     order_cap: int = ORDER_CAP) -> np.ndarray:
    """Sorted indices of the subgroup generated by `gens`."""
    seen = np.zeros(group.order, dtype=bool)
    seen[group.identity] = True
    frontier = np.unique(np.asarray(gens, dtype=np.int64))
    seen[frontier] = True
    garr = np.asarray(gens, dtype=np.int64)
    while frontier.size:
        prods = group.mul_arr(frontier[:, None], garr[None, :]).ravel()
        prods = np.unique(prods)
        new = prods[~seen[prods]]
        if int(seen.sum()) + new.size > order_cap:
            raise OrderCapExceeded("closure exceeded order cap")
        seen[new] = True
        frontier = new
    return np.nonzero(seen)[0]


def element_order(group: GroupTable, i: int) -> int:
    """Smallest n >= 1 with i^n = identity."""
    n, g = 1, i
    while g != group.identity:
        g = group.mul(g, i)
        n += 1
        if n > group.order:
            raise RuntimeError("order search exceeded group order; table is broken")
    return n


def validate_group(group: GroupTable, seed: int = 0, sample: int = 10**4,
                   full_cap: int = 512) -> dict:
    """Check identity laws, two-sided inverses, and associativity.

    Associativity is exhaustive for orders up to `full_cap` and sampled on at
    least `sample` random triples above it.
    """
    n = group.order
    idx = np.arange(n)
    e = np.full(n, group.identity)
    ok_identity = bool(
        np.array_equal(group.mul_arr(e, idx), idx) and np.array_equal(group.mul_arr(idx, e), idx)
    )
    inv = group.inv_arr(idx)
    ok_inverse = bool(np.array_equal(group.mul_arr(idx, inv), e)
                      and np.array_equal(group.mul_arr(inv, idx), e))
    if n <= full_cap:
        ok_assoc = True
        for i in range(n):
            left = group.mul_arr(group.mul_arr(np.full(n * n, i), np.repeat(idx, n)),
                                 np.tile(idx, n))
            right = group.mul_arr(np.full(n * n, i),
                                  group.mul_arr(np.repeat(idx, n), np.tile(idx, n)))
            if not np.array_equal(left, right):
                ok_assoc = False
                break
        mode = "full"
        checked = n**3
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, sample))
        ok_assoc = bool(
            np.array_equal(group.mul_arr(group.mul_arr(a, b), c),
                           group.mul_arr(a, group.mul_arr(b, c)))
        )
        mode = "sampled"
        checked = sample
    return {
        "identity": ok_identity,
        "inverses": ok_inverse,
        "associativity": ok_assoc,
        "associativity_mode": mode,
        "triples_checked": checked,
    }


def check_generator_set(group: GroupTable, s: Sequence[int], require_generating: bool = False,
                        warn_non_generating: bool = True) -> np.ndarray:
    """Validate a symmetric identity-free generator set; returns it sorted."""
    arr = np.unique(np.asarray(s, dtype=np.int64))
    if arr.size == 0:
        raise ValueError("empty generator set")
    if (arr == group.identity).any():
        raise IdentityInSet(f"identity {group.identity} in generator set")
    inv = group.inv_arr(arr)
    if not np.array_equal(np.sort(inv), arr):
        missing = sorted(set(int(v) for v in inv) - set(int(v) for v in arr))
        raise NonSymmetricSet(f"set not closed under inverses; missing {missing}")
    if require_generating or warn_non_generating:
        closure = subgroup_closure(group, arr)
        if closure.size != group.order:
            msg = f"set generates a subgroup of order {closure.size} < {group.order}"
            if require_generating:
                raise NonGeneratingSet(msg)
            warnings.warn(msg, NonGeneratingSet)
    return arr


def group_header_text(group: GroupTable, gens: dict[str, Sequence[int]] | None = None) -> str:
    """Export header: order, name, and generator lists (tables never serialize)."""
    lines = [f"group {group.name}", f"order {group.order}"]
    for tag, s in (gens or {}).items():
        lines.append(f"gens {tag} " + " ".join(str(int(v)) for v in s))
    return "\n".join(lines) + "\n"
