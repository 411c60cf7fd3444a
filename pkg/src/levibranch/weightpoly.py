"""Sparse exact weight polynomials, partition functions and characters.

Everything here is integer-exact: polynomials map weights to nonzero
integer coefficients, partition functions are memoised integer DP, and
characters come from the Freudenthal recursion with the alternating-sum
formula retained as an independent cross-check.
"""

from __future__ import annotations

import hashlib
import threading
from functools import lru_cache

import numpy as np

from . import kernels
from .rootsys import (LeviDatum, RootDatum, Weight, WeightError,
                      coroot_pairing)
from .weylgrp import (DEFAULT_GROUP_GUARD, WeylElement, levi_group,
                      weyl_group)

DEFAULT_CHAR_BUDGET = 2_000_000


class BudgetError(RuntimeError):
    """A character or expansion would exceed the configured size budget."""


class WeightPolynomial:
    """Finite formal sum of exponentials e^beta with integer coefficients.

    Terms are kept in canonical (lexicographic) order; zero coefficients are
    never stored, so equality is plain dict equality.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Weight, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for w, c in items:
                if not isinstance(w, Weight):
                    w = Weight(w)
                c = int(c)
                if c:
                    c0 = data.get(w, 0) + c
                    if c0:
                        data[w] = c0
                    elif w in data:
                        del data[w]
        self._terms = {w: data[w] for w in sorted(data)}

    @classmethod
    def zero(cls) -> "WeightPolynomial":
        return cls()

    @classmethod
    def monomial(cls, w: Weight, c: int = 1) -> "WeightPolynomial":
        return cls({w: c})

    @classmethod
    def from_rows(cls, rows: np.ndarray, coeffs: np.ndarray) -> "WeightPolynomial":
        urows, sums = signed_bucket(rows, coeffs)
        return cls((Weight(r), int(s)) for r, s in zip(urows, sums) if s)

    # -- container protocol ------------------------------------------------
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __contains__(self, w) -> bool:
        return w in self._terms

    def coefficient(self, w: Weight) -> int:
        return self._terms.get(w, 0)

    def support(self) -> tuple[Weight, ...]:
        return tuple(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    # -- ring operations -----------------------------------------------------
    def __add__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        out = dict(self._terms)
        for w, c in other._terms.items():
            c0 = out.get(w, 0) + c
            if c0:
                out[w] = c0
            else:
                out.pop(w, None)
        return WeightPolynomial(out)

    def __sub__(self, other: "WeightPolynomial") -> "WeightPolynomial":
        return self + (-other)

    def __neg__(self) -> "WeightPolynomial":
        return WeightPolynomial({w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return WeightPolynomial({w: c * other for w, c in self._terms.items()})
        out: dict[Weight, int] = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                w = a + b
                c0 = out.get(w, 0) + ca * cb
                if c0:
                    out[w] = c0
                else:
                    del out[w]
        return WeightPolynomial(out)

    __rmul__ = __mul__

    def apply(self, w: WeylElement) -> "WeightPolynomial":
        return WeightPolynomial({w.act(b): c for b, c in self._terms.items()})

    def dimension(self) -> int:
        """Sum of all coefficients (the dimension when this is a character)."""
        return sum(self._terms.values())

    # -- serialization ---------------------------------------------------------
    def to_json(self) -> list:
        return [{"w": w.to_json(), "c": c} for w, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "WeightPolynomial":
        out = {}
        for item in data:
            doubled = []
            for x in item["w"]:
                d = int(round(2 * x))
                if d != 2 * x:
                    raise WeightError(f"coordinate {x} is not a half-integer")
                doubled.append(d)
            out[Weight(doubled)] = int(item["c"])
        return cls(out)

    def __repr__(self):
        inner = " + ".join(f"{c}*e^{w}" for w, c in list(self._terms.items())[:6])
        more = "" if len(self._terms) <= 6 else f" ... ({len(self._terms)} terms)"
        return f"WeightPolynomial({inner}{more})"


def signed_bucket(rows: np.ndarray, coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Collapse duplicate rows, summing integer coefficients exactly."""
    rows = np.asarray(rows, dtype=np.int64)
    coeffs = np.asarray(coeffs, dtype=np.int64)
    if rows.shape[0] == 0:
        return rows, coeffs
    keys = kernels.pack_rows(rows)
    uniq, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    sums = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(sums, inverse, coeffs)
    return rows[first], sums


# -- vectorised chamber cone test -------------------------------------------

def chamber_cone_mask(family: str, rows: np.ndarray) -> np.ndarray:
    """Rows expressible as N-combinations of the family's positive roots.

    Vectorised version of the triangular test; rows carry doubled coordinates.
    """
    rows = np.asarray(rows, dtype=np.int64)
    n = rows.shape[1]
    even = (rows & 1 == 0).all(axis=1)
    h = np.where(even[:, None], rows >> 1, 0)
    s = np.cumsum(h, axis=1)
    if family == "GL":
        ok = (s[:, :-1] >= 0).all(axis=1) & (s[:, -1] == 0) if n > 1 else (s[:, -1] == 0)
    elif family == "B":
        ok = (s >= 0).all(axis=1)
    elif family == "C":
        ok = (s >= 0).all(axis=1) & (s[:, -1] % 2 == 0)
    else:  # D
        ok = (s[:, -1] % 2 == 0)
        if n > 2:
            ok &= (s[:, : n - 2] >= 0).all(axis=1)
        before = s[:, -2] if n >= 2 else np.zeros(len(rows), dtype=np.int64)
        ok &= (before - h[:, -1] >= 0) & (before + h[:, -1] >= 0)
    return even & ok


# -- partition tables ---------------------------------------------------------

class PartitionTable:
    """Memoised vector-partition counts over a fixed multiset of roots.

    Counts the ways to write a weight as an N-combination of ``roots``;
    supports concurrent readers with a single-writer lock around the DP.
    """

    def __init__(self, roots, rank: int, label: str = ""):
        self.root_list = tuple(sorted(roots))
        self.rank = rank
        self.label = label
        self._roots_arr = (
            np.array(self.root_list, dtype=np.int64).reshape(len(self.root_list), rank)
            if self.root_list else np.zeros((0, rank), dtype=np.int64)
        )
        self._fcoef = np.arange(rank, 0, -1, dtype=np.int64)
        for r in self._roots_arr:
            if int(self._fcoef @ r) <= 0:
                raise WeightError(f"root {tuple(r)} has nonpositive height functional")
        self._use_numba = kernels.HAVE_NUMBA and rank <= 8
        if self._use_numba:
            self._batch = kernels.kostant_batch
            self._memo = kernels.new_memo()
        else:
            self._batch = kernels.kostant_batch_python
            self._memo = kernels.new_memo_python()
        self._lock = threading.Lock()
        self.values: dict[Weight, int] = {}

    def count(self, beta: Weight) -> int:
        hit = self.values.get(beta)
        if hit is not None:
            return hit
        out = self.count_rows(np.array([beta], dtype=np.int64))
        return int(out[0])

    def count_rows(self, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(rows, dtype=np.int64)
        with self._lock:
            out = self._batch(rows, self._roots_arr, self._fcoef, self._memo)
            for row, v in zip(rows, out):
                self.values[Weight(row)] = int(v)
        return out

    # -- persistence ----------------------------------------------------------
    def cache_token(self) -> str:
        payload = repr((self.rank, self.root_list)).encode()
        return hashlib.sha256(payload).hexdigest()[:16]

    def save_text(self, path) -> int:
        lines = []
        for w in sorted(self.values):
            lines.append(" ".join(str(c) for c in w) + f" {self.values[w]}")
        tmp = str(path) + ".tmp"
        with open(tmp, "w") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))
        import os
        os.replace(tmp, path)
        return len(lines)

    def load_text(self, path) -> int:
        m = len(self.root_list)
        loaded = 0
        with open(path) as fh:
            for line in fh:
                parts = line.split()
                if not parts:
                    continue
                w = Weight(int(x) for x in parts[:-1])
                v = int(parts[-1])
                self.values[w] = v
                if self._use_numba:
                    self._memo[kernels.key3_py(w, m)] = v
                else:
                    self._memo[(tuple(w), m)] = v
                loaded += 1
        return loaded


def kostant_partition(table: PartitionTable, beta: Weight) -> int:
    """Number of ways to write ``beta`` as an N-combination of the table roots."""
    return table.count(beta)


@lru_cache(maxsize=None)
def full_table(datum: RootDatum) -> PartitionTable:
    return PartitionTable(datum.positive_roots, datum.rank,
                          label=f"{datum.describe()}:full")


@lru_cache(maxsize=None)
def levi_table(levi: LeviDatum) -> PartitionTable:
    rbar = set(levi.rbar_plus)
    roots = [a for a in levi.parent.positive_roots if a not in rbar]
    return PartitionTable(roots, levi.parent.rank,
                          label=f"{levi.describe()}:complement")


@lru_cache(maxsize=None)
def rbar_table(levi: LeviDatum) -> PartitionTable:
    return PartitionTable(levi.rbar_plus, levi.parent.rank,
                          label=f"{levi.describe()}:levi")


# -- frames: a uniform view of a datum or a Levi ------------------------------

class _Frame:
    """Simple roots, positive roots and Weyl vector of either g or the Levi."""

    def __init__(self, owner):
        self.owner = owner
        if isinstance(owner, LeviDatum):
            self.datum = owner.parent
            self.simple_roots = owner.sbar_roots
            self.positive_roots = owner.rbar_plus
            self.rho = owner.rho_bar
            self._table = rbar_table(owner)
            self._full = False
        else:
            self.datum = owner
            self.simple_roots = owner.simple_roots
            self.positive_roots = owner.positive_roots
            self.rho = owner.rho
            self._table = full_table(owner)
            self._full = True
        self.n = self.datum.rank
        total = Weight.zero(self.n)
        for a in self.positive_roots:
            total = total + a
        self.two_rho = total  # doubled coords of 2*rho_frame

    def is_dominant(self, beta: Weight) -> bool:
        return all(beta.dot4(a) >= 0 for a in self.simple_roots)

    def domrep(self, beta: Weight) -> Weight:
        cur = beta
        while True:
            for a in self.simple_roots:
                p = coroot_pairing(cur, a)
                if p < 0:
                    cur = cur - p * a
                    break
            else:
                return cur

    def leq(self, gamma: Weight, beta: Weight) -> bool:
        if self._full:
            return self.datum.dominance_leq(gamma, beta)
        if not self.positive_roots:
            return gamma == beta
        return self._table.count(beta - gamma) > 0

    def orbit_rows(self, beta: Weight) -> np.ndarray:
        if self._full:
            group = weyl_group(self.datum)
            perm, sign, _ = group.arrays
            img = kernels.orbit_images(perm, sign, np.array(beta, dtype=np.int64))
            keys = kernels.pack_rows(img)
            _, first = np.unique(keys, return_index=True)
            return img[first]
        seen = {beta}
        todo = [beta]
        while todo:
            cur = todo.pop()
            for a in self.simple_roots:
                nxt = cur - coroot_pairing(cur, a) * a
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return np.array(sorted(seen), dtype=np.int64)

    def weyl_dim(self, mu: Weight) -> int:
        num = 1
        den = 1
        shifted = mu + self.rho
        for a in self.positive_roots:
            num *= shifted.dot4(a)
            den *= self.rho.dot4(a)
        q, r = divmod(num, den)
        if r != 0:
            raise WeightError(f"Weyl dimension of {mu} is not integral")
        return q


@lru_cache(maxsize=None)
def _frame_for(owner) -> _Frame:
    return _Frame(owner)


# -- Freudenthal characters ----------------------------------------------------

def dominants_below(owner, top: Weight) -> tuple[Weight, ...]:
    """All frame-dominant weights ``nu`` with ``nu`` <= ``top`` in the frame order."""
    frame = _frame_for(owner)
    seen = {top}
    todo = [top]
    while todo:
        nu = todo.pop()
        for a in frame.positive_roots:
            cand = frame.domrep(nu - a)
            if cand not in seen and frame.leq(cand, top):
                seen.add(cand)
                todo.append(cand)
    return tuple(sorted(seen))


@lru_cache(maxsize=None)
def dominant_multiplicities(owner, lam: Weight) -> dict:
    """Weight multiplicities of the irreducible with highest weight ``lam``,
    recorded on dominant representatives (Freudenthal recursion, exact)."""
    frame = _frame_for(owner)
    if not frame.is_dominant(lam):
        raise WeightError(f"{lam} is not dominant for {owner}")
    doms = dominants_below(owner, lam)
    order = sorted(doms, key=lambda nu: ((lam - nu).dot4(frame.two_rho), nu))
    mult = {lam: 1}
    lam_norm = (lam + frame.rho).dot4(lam + frame.rho)
    for nu in order:
        if nu == lam:
            continue
        num = 0
        for a in frame.positive_roots:
            k = 1
            while True:
                xi = nu + k * a
                m = mult.get(frame.domrep(xi))
                if m is None:
                    break
                num += m * xi.dot4(a)
                k += 1
        denom = lam_norm - (nu + frame.rho).dot4(nu + frame.rho)
        if denom <= 0:
            raise WeightError(f"Freudenthal denominator vanished at {nu}")
        q, r = divmod(2 * num, denom)
        if r != 0:
            raise WeightError(f"Freudenthal division failed at {nu}")
        mult[nu] = q
    return mult


def weyl_dim(owner, lam: Weight) -> int:
    """Dimension of the irreducible with highest weight ``lam`` (exact)."""
    return _frame_for(owner).weyl_dim(lam)


def weyl_character(owner, lam: Weight,
                   budget: int = DEFAULT_CHAR_BUDGET) -> WeightPolynomial:
    """Full weight multiset of the irreducible with highest weight ``lam``.

    ``owner`` may be a RootDatum or a LeviDatum.  The Freudenthal recursion
    supplies the dominant multiplicities; the result is validated against the
    Weyl dimension formula on every call.
    """
    frame = _frame_for(owner)
    owner.require_dominant(lam)
    dim = frame.weyl_dim(lam)
    if dim > budget:
        raise BudgetError(
            f"character of {lam} has dimension {dim} > budget {budget}")
    mult = dominant_multiplicities(owner, lam)
    terms: dict[Weight, int] = {}
    total = 0
    for nu, m in mult.items():
        rows = frame.orbit_rows(nu)
        total += m * len(rows)
        for row in rows:
            terms[Weight(row)] = m
    if total != dim:
        raise WeightError(
            f"character size {total} disagrees with the dimension formula {dim}")
    return WeightPolynomial(terms)


def kostka_multiplicity(datum: RootDatum, lam: Weight, beta: Weight) -> int:
    """dim of the ``beta`` weight space of the irreducible with h.w. ``lam``."""
    datum.require_dominant(lam)
    frame = _frame_for(datum)
    return dominant_multiplicities(datum, lam).get(frame.domrep(beta), 0)


def kostka_by_kostant(datum: RootDatum, lam: Weight, beta: Weight,
                      guard: int = DEFAULT_GROUP_GUARD) -> int:
    """The same multiplicity through the alternating partition-function sum.

    Independent of the Freudenthal route; used as a cross-check oracle.
    """
    group = weyl_group(datum, guard)
    perm, sign, eps = group.arrays
    shifted = np.array(lam + datum.rho, dtype=np.int64)
    img = kernels.orbit_images(perm, sign, shifted)
    args = img - np.array(beta + datum.rho, dtype=np.int64)
    mask = chamber_cone_mask(datum.family, args)
    if not mask.any():
        return 0
    counts = full_table(datum).count_rows(args[mask])
    return int((eps[mask] * counts).sum())


# -- symmetrisation and alternating sums ---------------------------------------

def symmetrize(datum: RootDatum, gamma: Weight,
               guard: int = DEFAULT_GROUP_GUARD) -> WeightPolynomial:
    """Orbit sum over the full Weyl group, counted with multiplicity.

    The coefficient of every orbit point equals the order of the stabiliser
    of ``gamma``, so the total mass is always |W|.
    """
    group = weyl_group(datum, guard)
    perm, sign, _ = group.arrays
    img = kernels.orbit_images(perm, sign, np.array(gamma, dtype=np.int64))
    keys = kernels.pack_rows(img)
    _, first, counts = np.unique(keys, return_index=True, return_counts=True)
    return WeightPolynomial((Weight(img[i]), int(c)) for i, c in zip(first, counts))


def alternating_sum(levi: LeviDatum, gamma: Weight,
                    guard: int = DEFAULT_GROUP_GUARD) -> WeightPolynomial:
    """Signed orbit sum over the Levi Weyl group; zero exactly on walls."""
    group = levi_group(levi, guard)
    perm, sign, eps = group.arrays
    img = kernels.orbit_images(perm, sign, np.array(gamma, dtype=np.int64))
    return WeightPolynomial.from_rows(img, eps)


def nabla_bar(levi: LeviDatum, guard: int = DEFAULT_GROUP_GUARD) -> WeightPolynomial:
    """The product of (1 - e^alpha) over the Levi positive roots.

    Expanded both as a literal product and as the signed orbit sum of the
    Levi Weyl vector; the two must agree term by term.
    """
    product = WeightPolynomial.monomial(Weight.zero(levi.parent.rank))
    for a in levi.rbar_plus:
        product = product * (WeightPolynomial.monomial(Weight.zero(levi.parent.rank))
                             - WeightPolynomial.monomial(a))
    group = levi_group(levi, guard)
    perm, sign, eps = group.arrays
    img = kernels.orbit_images(perm, sign, np.array(levi.rho_bar, dtype=np.int64))
    rows = np.array(levi.rho_bar, dtype=np.int64)[None, :] - img
    alt = WeightPolynomial.from_rows(rows, eps)
    if product != alt:
        raise WeightError("product and alternating expansions of nabla disagree")
    return product


# -- highest-weight stripping ---------------------------------------------------

def decompose_character(owner, poly: WeightPolynomial,
                        budget: int = DEFAULT_CHAR_BUDGET) -> dict:
    """Decompose a symmetric nonnegative weight multiset into irreducibles.

    Repeatedly extracts a maximal dominant weight (maximal for the frame
    dominance order) and strips that many copies of its character.  Exact:
    raises if the multiset is not a nonnegative combination of characters.
    """
    frame = _frame_for(owner)
    remaining = {w: c for w, c in poly}
    out: dict[Weight, int] = {}
    while remaining:
        cands = [w for w in remaining if frame.is_dominant(w)]
        if not cands:
            raise WeightError("multiset admits no dominant maximal weight")
        top = max(cands, key=lambda w: (w.dot4(frame.two_rho), w))
        m = remaining[top]
        if m <= 0:
            raise WeightError(f"negative multiplicity {m} at {top} while stripping")
        out[top] = m
        for w, c in weyl_character(owner, top, budget):
            c0 = remaining.get(w, 0) - m * c
            if c0:
                remaining[w] = c0
            else:
                remaining.pop(w, None)
    return out
