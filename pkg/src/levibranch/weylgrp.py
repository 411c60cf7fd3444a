"""Weyl groups as signed permutations: enumeration, actions, cosets.

An element acts on a weight by ``act(w, b)[i] = signs[i] * b[perm[i]]``.
Composition and equality are O(n); the sign character is the determinant
of the underlying signed permutation matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .rootsys import (LeviDatum, RootDatum, RootSystemError, Weight,
                      _positive_set)

DEFAULT_GROUP_GUARD = 2_000_000


class GroupSizeError(RuntimeError):
    """The requested enumeration exceeds the configured group guard."""

    def __init__(self, label: str, size: int, guard: int):
        super().__init__(f"|W| = {size} for {label} exceeds the guard {guard}")
        self.size = size
        self.guard = guard


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation; ``signs`` are +-1, all +1 in type GL."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @staticmethod
    def identity(n: int) -> "WeylElement":
        return WeylElement(tuple(range(n)), (1,) * n)

    def act(self, beta: Weight) -> Weight:
        return Weight(self.signs[i] * beta[self.perm[i]] for i in range(len(self.perm)))

    def compose(self, other: "WeylElement") -> "WeylElement":
        """self o other (first apply ``other``)."""
        p1, s1, p2, s2 = self.perm, self.signs, other.perm, other.signs
        return WeylElement(
            tuple(p2[p1[i]] for i in range(len(p1))),
            tuple(s1[i] * s2[p1[i]] for i in range(len(p1))),
        )

    def inverse(self) -> "WeylElement":
        n = len(self.perm)
        inv = [0] * n
        for i, j in enumerate(self.perm):
            inv[j] = i
        return WeylElement(tuple(inv), tuple(self.signs[inv[i]] for i in range(n)))

    def sign(self) -> int:
        perm = self.perm
        inv = sum(1 for i, j in itertools.combinations(range(len(perm)), 2)
                  if perm[i] > perm[j])
        s = -1 if inv % 2 else 1
        for x in self.signs:
            s *= x
        return s

    def is_identity(self) -> bool:
        return all(self.perm[i] == i for i in range(len(self.perm))) and all(
            s == 1 for s in self.signs)

    def sort_key(self):
        return (self.perm, tuple(0 if s == 1 else 1 for s in self.signs))

    def to_json(self) -> dict:
        return {"perm": [p + 1 for p in self.perm], "signs": list(self.signs)}

    @staticmethod
    def from_json(data: dict) -> "WeylElement":
        return WeylElement(tuple(p - 1 for p in data["perm"]), tuple(data["signs"]))

    @staticmethod
    def reflection(alpha: Weight) -> "WeylElement":
        """The reflection through ``alpha``; alpha must be a classical root."""
        n = len(alpha)
        aa = alpha.dot4(alpha)
        perm = [0] * n
        signs = [0] * n
        for i in range(n):
            e = Weight(4 if k == i else 0 for k in range(n))  # doubled 2*e_i
            img = e - (2 * e.dot4(alpha) // aa) * alpha
            nz = [k for k in range(n) if img[k] != 0]
            if len(nz) != 1 or abs(img[nz[0]]) != 4:
                raise RootSystemError(f"{alpha} is not a signed-permutation root")
            # column i of the matrix: contributes to row nz[0]
            perm[nz[0]] = i
            signs[nz[0]] = 1 if img[nz[0]] > 0 else -1
        return WeylElement(tuple(perm), tuple(signs))


class WeylGroup:
    """A deterministically ordered enumeration with cached action arrays."""

    def __init__(self, elements: tuple[WeylElement, ...]):
        self.elements = elements
        self.eps = tuple(w.sign() for w in elements)
        self._arrays = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def arrays(self):
        """(perm, signs, eps) as int64 arrays for the kernels."""
        if self._arrays is None:
            perm = np.array([w.perm for w in self.elements], dtype=np.int64)
            sign = np.array([w.signs for w in self.elements], dtype=np.int64)
            eps = np.array(self.eps, dtype=np.int64)
            self._arrays = (perm, sign, eps)
        return self._arrays


def weyl_order(datum: RootDatum) -> int:
    return datum.weyl_order()


def check_group_guard(label: str, size: int, guard: int) -> None:
    if size > guard:
        raise GroupSizeError(label, size, guard)


@lru_cache(maxsize=None)
def _group_for(datum: RootDatum) -> WeylGroup:
    n = datum.rank
    elements: list[WeylElement] = []
    if datum.family == "GL":
        for perm in itertools.permutations(range(n)):
            elements.append(WeylElement(perm, (1,) * n))
    else:
        even_only = datum.family == "D"
        sign_choices = [s for s in itertools.product((1, -1), repeat=n)
                        if not even_only or s.count(-1) % 2 == 0]
        for perm in itertools.permutations(range(n)):
            for s in sign_choices:
                elements.append(WeylElement(perm, s))
    return WeylGroup(tuple(elements))


def weyl_group(datum: RootDatum, guard: int = DEFAULT_GROUP_GUARD) -> WeylGroup:
    check_group_guard(datum.describe(), datum.weyl_order(), guard)
    return _group_for(datum)


def enumerate_group(datum: RootDatum, guard: int = DEFAULT_GROUP_GUARD):
    """Stream (element, sign) pairs in the fixed enumeration order."""
    group = weyl_group(datum, guard)
    yield from zip(group.elements, group.eps)


# -- normal forms ---------------------------------------------------------

def dominant_representative(datum: RootDatum, beta: Weight) -> tuple[WeylElement, Weight]:
    """Some w with w(beta) dominant, plus the (unique) dominant image.

    The element is produced by a fixed stable sort, so repeated calls agree;
    only the dominant weight itself is canonical when the stabiliser of
    ``beta`` is nontrivial.
    """
    n = datum.rank
    if datum.family == "GL":
        order = sorted(range(n), key=lambda j: (-beta[j], j))
        w = WeylElement(tuple(order), (1,) * n)
        return w, w.act(beta)
    order = sorted(range(n), key=lambda j: (-abs(beta[j]), j))
    signs = [1 if beta[j] >= 0 else -1 for j in order]
    if datum.family == "D" and sum(1 for c in beta if c < 0) % 2 == 1:
        signs[-1] = -signs[-1]
    w = WeylElement(tuple(order), tuple(signs))
    return w, w.act(beta)


def is_regular(datum: RootDatum, beta: Weight) -> bool:
    """No reflection of W fixes ``beta``."""
    return all(beta.dot4(a) != 0 for a in datum.positive_roots)


def stabilizer_order(datum: RootDatum, beta: Weight) -> int:
    return len(stabilizer_subgroup(datum, dominant_representative(datum, beta)[1]))


@lru_cache(maxsize=None)
def stabilizer_subgroup(datum: RootDatum, lam: Weight) -> tuple[WeylElement, ...]:
    """Stabiliser of a dominant weight: closure of the orthogonal simple reflections."""
    gens = [WeylElement.reflection(a) for a in datum.simple_roots if lam.dot4(a) == 0]
    return _closure(gens, datum.rank)


def _closure(gens: list[WeylElement], n: int) -> tuple[WeylElement, ...]:
    seen = {WeylElement.identity(n)}
    frontier = [WeylElement.identity(n)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                h = g.compose(w)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return tuple(sorted(seen, key=WeylElement.sort_key))


def straighten(datum: RootDatum, beta: Weight):
    """Resolve a formal character index: None on a wall, else (sign, dominant).

    The character labelled by ``beta`` equals sign times the character of the
    returned dominant weight; it vanishes exactly when ``beta`` plus the Weyl
    vector is fixed by some reflection.
    """
    shifted = beta + datum.rho
    if not is_regular(datum, shifted):
        return None
    w, dom = dominant_representative(datum, shifted)
    return w.sign(), dom - datum.rho


def dot_act(datum: RootDatum, w: WeylElement, beta: Weight) -> Weight:
    return w.act(beta + datum.rho) - datum.rho


# -- Levi-side groups ------------------------------------------------------

@dataclass(frozen=True)
class Transversal:
    """Minimal-length coset representatives of W over the Levi Weyl group."""

    levi: LeviDatum
    elements: tuple[WeylElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@lru_cache(maxsize=None)
def _levi_group_cached(levi: LeviDatum) -> WeylGroup:
    gens = [WeylElement.reflection(a) for a in levi.sbar_roots]
    return WeylGroup(_closure(gens, levi.parent.rank))


def levi_group(levi: LeviDatum, guard: int = DEFAULT_GROUP_GUARD) -> WeylGroup:
    check_group_guard(levi.describe(), levi.weylbar_order(), guard)
    group = _levi_group_cached(levi)
    if len(group) != levi.weylbar_order():
        raise RootSystemError(
            f"Levi Weyl group size {len(group)} disagrees with the "
            f"component formula {levi.weylbar_order()}")
    return group


@lru_cache(maxsize=None)
def _transversal_cached(levi: LeviDatum) -> Transversal:
    datum = levi.parent
    pos = _positive_set(datum)
    sbar = levi.sbar_roots
    reps = [w for w in _group_for(datum)
            if all(w.act(a) in pos for a in sbar)]
    return Transversal(levi, tuple(sorted(reps, key=WeylElement.sort_key)))


def transversal(levi: LeviDatum, guard: int = DEFAULT_GROUP_GUARD) -> Transversal:
    datum = levi.parent
    check_group_guard(datum.describe(), datum.weyl_order(), guard)
    trans = _transversal_cached(levi)
    expected = datum.weyl_order() // levi.weylbar_order()
    if len(trans) != expected:
        raise RootSystemError(
            f"transversal size {len(trans)} != |W|/|Wbar| = {expected}")
    return trans


def coset_decompose(levi: LeviDatum, w: WeylElement) -> tuple[WeylElement, WeylElement]:
    """Unique w = u * wbar with u in the transversal and wbar in the Levi group.

    Computed by stripping descents: while some retained simple root is sent
    to a negative root, multiply by its reflection on the right.
    """
    datum = levi.parent
    pos = _positive_set(datum)
    sbar = levi.sbar_roots
    u = w
    wbar = WeylElement.identity(datum.rank)
    while True:
        for alpha in sbar:
            if u.act(alpha) not in pos:
                s = WeylElement.reflection(alpha)
                u = u.compose(s)
                wbar = s.compose(wbar)
                break
        else:
            return u, wbar


@lru_cache(maxsize=None)
def _diagram_automorphisms_cached(levi: LeviDatum) -> tuple[WeylElement, ...]:
    rbar = frozenset(levi.rbar_plus)
    autos = [u for u in _transversal_cached(levi).elements
             if all(u.act(a) in rbar for a in levi.sbar_roots)]
    for u in autos:
        if u.act(levi.rho_bar) != levi.rho_bar:
            raise RootSystemError(
                f"automorphism candidate {u} moves the Levi Weyl vector")
    autos.sort(key=lambda u: (not u.is_identity(), u.sort_key()))
    return tuple(autos)


def diagram_automorphisms(levi: LeviDatum,
                          guard: int = DEFAULT_GROUP_GUARD) -> tuple[WeylElement, ...]:
    """All w in W with w(rbar_plus) = rbar_plus; a subgroup, identity first.

    Each element fixes the Levi Weyl vector (checked), i.e. acts as a Dynkin
    diagram automorphism of the Levi.
    """
    transversal(levi, guard)
    return _diagram_automorphisms_cached(levi)
