"""Classical root systems and Levi subsystems in exact ambient coordinates.

Supported families, all realised in the standard epsilon basis of Z^n:

* ``GL`` -- gl_n with positive roots e_i - e_j (i < j),
* ``B``  -- so_{2n+1} with e_i - e_j, e_i + e_j (i < j) and e_i,
* ``C``  -- sp_{2n}   with e_i - e_j, e_i + e_j (i < j) and 2 e_i,
* ``D``  -- so_{2n}   with e_i - e_j and e_i + e_j (i < j).

Every weight stores twice its true coordinates so that the half-integral
spin weights of B and D stay exact integers; no floating point appears
anywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

FAMILIES = ("GL", "B", "C", "D")


class WeightError(ValueError):
    """Malformed weight, or a weight outside the relevant lattice."""


class RootSystemError(ValueError):
    """Unsupported family/rank combination or bad Levi data."""


class Weight(tuple):
    """Ambient vector with exact half-integer entries (stored doubled).

    Lattice weights have uniform parity -- all integral, or (for the spin
    classes of B and D) all strictly half-integral; that law is enforced by
    the per-family lattice check, since intermediate vectors such as the
    Levi Weyl vector legitimately mix the two.
    """

    __slots__ = ()

    def __new__(cls, doubled):
        return tuple.__new__(cls, (int(c) for c in doubled))

    @classmethod
    def of(cls, *coords: int) -> "Weight":
        """Build a weight from true integer coordinates."""
        return cls(2 * c for c in coords)

    @classmethod
    def zero(cls, n: int) -> "Weight":
        return cls((0,) * n)

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """Parse '5,2,-1' or half-integral '5/2,1/2,-3/2' (also '2.5')."""
        doubled = []
        for part in text.replace("|", ",").split(","):
            part = part.strip()
            if not part:
                continue
            q = Fraction(part)
            if q.denominator not in (1, 2):
                raise WeightError(f"coordinate {part!r} is not a half-integer")
            doubled.append(q.numerator * (2 // q.denominator))
        if not doubled:
            raise WeightError("empty weight")
        return cls(doubled)

    # -- exact arithmetic ------------------------------------------------
    def __add__(self, other):
        return Weight(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return Weight(a - b for a, b in zip(self, other, strict=True))

    def __neg__(self):
        return Weight(-a for a in self)

    def __mul__(self, k):
        return Weight(a * int(k) for a in self)

    __rmul__ = __mul__

    def dot4(self, other: "Weight") -> int:
        """Four times the Euclidean inner product (doubled x doubled)."""
        return sum(a * b for a, b in zip(self, other, strict=True))

    # -- views -----------------------------------------------------------
    def halves(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self)

    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self)

    def is_zero(self) -> bool:
        return not any(self)

    def to_json(self) -> list:
        return [c // 2 if c % 2 == 0 else c / 2 for c in self]

    def __str__(self) -> str:
        if self.is_integral():
            return "(" + ",".join(str(c // 2) for c in self) + ")"
        return "(" + ",".join(f"{c}/2" for c in self) + ")"

    def __repr__(self) -> str:
        return f"Weight{str(self)}"


def pairing(beta: Weight, alpha: Weight) -> Fraction:
    """Exact Euclidean inner product (beta, alpha)."""
    return Fraction(beta.dot4(alpha), 4)


def coroot_pairing(beta: Weight, alpha: Weight) -> int:
    """(beta, alpha^vee) = 2 (beta, alpha) / (alpha, alpha); exact integer."""
    aa = alpha.dot4(alpha)
    if aa == 0:
        raise WeightError("pairing against the zero vector")
    num = 2 * beta.dot4(alpha)
    q, r = divmod(num, aa)
    if r != 0:
        raise WeightError(f"non-integral coroot pairing of {beta} against {alpha}")
    return q


@dataclass(frozen=True)
class RootDatum:
    """A classical root system with a fixed choice of positive roots."""

    family: str
    rank: int
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    rho: Weight

    @property
    def n(self) -> int:
        return self.rank

    @property
    def ambient_dim(self) -> int:
        return self.rank

    def describe(self) -> str:
        return f"{self.family}{self.rank}"

    def weyl_order(self) -> int:
        n = self.rank
        if self.family == "GL":
            return factorial(n)
        if self.family in ("B", "C"):
            return factorial(n) << n
        return factorial(n) << (n - 1)  # D

    @property
    def highest_root(self) -> Weight:
        return max(self.positive_roots, key=lambda a: (a.dot4(self.rho), a))

    # -- lattice and chamber tests ----------------------------------------
    def is_lattice_weight(self, beta: Weight) -> bool:
        if len(beta) != self.rank:
            return False
        if self.family in ("GL", "C"):
            return beta.is_integral()
        # B, D: the integral class or the all-half-integral spin class
        parities = {c & 1 for c in beta}
        return len(parities) <= 1

    def require_weight(self, beta: Weight) -> Weight:
        if not self.is_lattice_weight(beta):
            raise WeightError(f"{beta} is not an integral weight of {self.describe()}")
        return beta

    def is_dominant(self, beta: Weight) -> bool:
        return all(beta.dot4(a) >= 0 for a in self.simple_roots)

    def require_dominant(self, beta: Weight) -> Weight:
        self.require_weight(beta)
        if not self.is_dominant(beta):
            raise WeightError(f"{beta} is not dominant for {self.describe()}")
        return beta

    def is_positive_root(self, alpha: Weight) -> bool:
        return alpha in _positive_set(self)

    def dominance_leq(self, gamma: Weight, beta: Weight) -> bool:
        """gamma <= beta iff beta - gamma is an N-combination of positive roots."""
        return _chamber_leq(self.family, self.rank, beta - gamma)


@lru_cache(maxsize=None)
def _positive_set(datum: RootDatum) -> frozenset:
    return frozenset(datum.positive_roots)


def _unit(n: int, i: int, c: int = 2) -> Weight:
    v = [0] * n
    v[i] = c
    return Weight(v)


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootDatum:
    """Construct the root datum for one of the classical families."""
    if family not in FAMILIES:
        raise RootSystemError(f"unknown family {family!r}; expected one of {FAMILIES}")
    n = int(rank)
    if n < 1 or (family == "D" and n < 2):
        raise RootSystemError(f"rank {rank} unsupported for family {family}")

    pos: list[Weight] = []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_unit(n, i) - _unit(n, j))
    if family in ("B", "C", "D"):
        for i in range(n):
            for j in range(i + 1, n):
                pos.append(_unit(n, i) + _unit(n, j))
    if family == "B":
        pos.extend(_unit(n, i) for i in range(n))
    elif family == "C":
        pos.extend(_unit(n, i, 4) for i in range(n))

    simple = [_unit(n, i) - _unit(n, i + 1) for i in range(n - 1)]
    if family == "B":
        simple.append(_unit(n, n - 1))
    elif family == "C":
        simple.append(_unit(n, n - 1, 4))
    elif family == "D":
        simple.append(_unit(n, n - 2) + _unit(n, n - 1))

    pos = sorted(pos)
    total = Weight.zero(n)
    for a in pos:
        total = total + a
    if any(c % 2 for c in total):
        raise RootSystemError("positive roots do not sum to an even vector")
    rho = Weight(c // 2 for c in total)
    return RootDatum(family, n, tuple(simple), tuple(pos), rho)


def _chamber_leq(family: str, n: int, delta: Weight) -> bool:
    """Is ``delta`` an N-combination of the positive roots of the family?

    Triangular coordinate test: prefix sums against the fundamental
    coweights plus the root-lattice condition.
    """
    if any(c % 2 for c in delta):
        return False  # difference not in the (integral) root lattice
    d = [c // 2 for c in delta]
    s = list(itertools.accumulate(d))
    if family == "GL":
        return s[-1] == 0 and all(x >= 0 for x in s[:-1])
    if family == "B":
        return all(x >= 0 for x in s)
    if family == "C":
        return s[-1] % 2 == 0 and all(x >= 0 for x in s)
    # D
    if s[-1] % 2 != 0:
        return False
    if any(x < 0 for x in s[: n - 2]):
        return False
    before = s[-2] if n >= 2 else 0
    return before - d[-1] >= 0 and before + d[-1] >= 0


# -- generic cone membership (for subsets of the positive roots) ---------

_CONE_MEMO: dict = {}


def dominance_leq(datum: RootDatum, gamma: Weight, beta: Weight,
                  roots: tuple[Weight, ...] | None = None) -> bool:
    """gamma <= beta over ``roots`` (default: the full positive system).

    ``roots`` must be a subset of the positive roots of ``datum``; the
    membership test is a depth-first search memoised per root set and
    bounded by the height of ``beta - gamma``.
    """
    if roots is None:
        return datum.dominance_leq(gamma, beta)
    delta = beta - gamma
    fvec = Weight.of(*range(datum.rank, 0, -1))
    for r in roots:
        if r not in _positive_set(datum):
            raise RootSystemError(f"{r} is not a positive root of {datum.describe()}")
    memo = _CONE_MEMO.setdefault((datum.family, datum.rank, tuple(roots)), {})
    roots = tuple(sorted(roots))

    def member(delta: Weight, k: int) -> bool:
        if delta.is_zero():
            return True
        if k == 0:
            return False
        key = (delta, k)
        hit = memo.get(key)
        if hit is not None:
            return hit
        res = member(delta, k - 1)
        if not res:
            nxt = delta - roots[k - 1]
            if nxt.dot4(fvec) >= 0:
                res = member(nxt, k)
        memo[key] = res
        return res

    if delta.dot4(fvec) < 0:
        return False
    return member(delta, len(roots))


# -- Levi subsystems ------------------------------------------------------

@dataclass(frozen=True)
class LeviComponent:
    """One irreducible summand of a Levi subalgebra.

    ``family`` is the abstract Dynkin type, with A-chains reported as GL
    blocks of rank (#vertices + 1); ``coords`` lists the 1-based ambient
    coordinates its roots touch.
    """

    family: str
    rank: int
    coords: tuple[int, ...]

    def describe(self) -> str:
        if self.family == "GL":
            return f"gl{self.rank}"
        if self.family == "B":
            return f"so{2 * self.rank + 1}"
        if self.family == "C":
            return f"sp{2 * self.rank}"
        return f"so{2 * self.rank}"


@dataclass(frozen=True)
class LeviDatum:
    """A Levi subsystem spanned by a subset of the simple roots."""

    parent: RootDatum
    sbar: tuple[int, ...]          # 1-based indices into parent.simple_roots
    rbar_plus: tuple[Weight, ...]
    rho_bar: Weight
    components: tuple[LeviComponent, ...]

    @property
    def sbar_roots(self) -> tuple[Weight, ...]:
        return tuple(self.parent.simple_roots[i - 1] for i in self.sbar)

    @property
    def two_rho_bar(self) -> Weight:
        return self.rho_bar + self.rho_bar

    def describe(self) -> str:
        inner = "+".join(c.describe() for c in self.components) or "h"
        return f"{self.parent.describe()}>{inner}"

    def is_dominant(self, beta: Weight) -> bool:
        return all(beta.dot4(a) >= 0 for a in self.sbar_roots)

    def require_dominant(self, beta: Weight) -> Weight:
        self.parent.require_weight(beta)
        if not self.is_dominant(beta):
            raise WeightError(f"{beta} is not dominant for the Levi {self.describe()}")
        return beta

    def weylbar_order(self) -> int:
        order = 1
        for comp in self.components:
            order *= _component_weyl_order(comp)
        return order

    def preceq(self, gamma: Weight, beta: Weight) -> bool:
        """gamma ``preceq`` beta: beta - gamma is an N-combination of rbar_plus."""
        if not self.rbar_plus:
            return gamma == beta
        return dominance_leq(self.parent, gamma, beta, self.rbar_plus)

    def standard_gl_blocks(self) -> tuple[tuple[int, ...], ...] | None:
        """Consecutive GL coordinate blocks partitioning the ambient space.

        Returns None unless every component is a straight GL block (roots
        exactly e_a - e_b on a consecutive coordinate run) and the blocks,
        together with untouched gl1 coordinates, tile 1..n.
        """
        n = self.parent.rank
        blocks = []
        used: set[int] = set()
        for comp in self.components:
            if comp.family != "GL":
                return None
            coords = comp.coords
            if len(coords) != comp.rank:
                return None
            if any(coords[k + 1] - coords[k] != 1 for k in range(len(coords) - 1)):
                return None
            expected = {
                _unit(n, i - 1) - _unit(n, j - 1)
                for i, j in itertools.combinations(coords, 2)
            }
            actual = {a for a in self.rbar_plus
                      if all(a[i] == 0 for i in range(n) if i + 1 not in coords)}
            if expected != actual:
                return None
            if used & set(coords):
                return None
            used |= set(coords)
            blocks.append(coords)
        if used != set(range(1, n + 1)):
            return None
        return tuple(sorted(blocks))

    def is_full_gl_levi(self) -> bool:
        """True when the Levi is the standard gl_n inside B_n, C_n or D_n."""
        if self.parent.family not in ("B", "C", "D"):
            return False
        blocks = self.standard_gl_blocks()
        return blocks is not None and len(blocks) == 1


def _component_weyl_order(comp: LeviComponent) -> int:
    r = comp.rank
    if comp.family == "GL":
        return factorial(r)
    if comp.family in ("B", "C"):
        return factorial(r) << r
    return factorial(r) << (r - 1)


@lru_cache(maxsize=None)
def _simple_coordinates(datum: RootDatum) -> dict:
    """Expansion of each positive root over the simple roots (exact)."""
    simple = datum.simple_roots
    out = {}
    for root in datum.positive_roots:
        coeffs = _solve_integer(simple, root)
        out[root] = coeffs
    return out


def _solve_integer(basis: tuple[Weight, ...], target: Weight) -> tuple[int, ...]:
    """Solve target = sum c_k basis_k exactly; the c_k must be integers >= 0."""
    m = len(basis)
    n = len(target)
    rows = [[Fraction(basis[k][i]) for k in range(m)] + [Fraction(target[i])]
            for i in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        rows[r] = [x * inv for x in pr]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    coeffs = [Fraction(0)] * m
    for idx, c in enumerate(pivots):
        coeffs[c] = rows[idx][m]
    for i in range(r, n):
        if rows[i][m] != 0:
            raise RootSystemError(f"{target} is not in the span of the simple roots")
    out = []
    for q in coeffs:
        if q.denominator != 1 or q < 0:
            raise RootSystemError(f"non-integral expansion of {target}")
        out.append(int(q))
    return tuple(out)


def build_levi(datum: RootDatum, sbar) -> LeviDatum:
    """Build the Levi datum for the subset ``sbar`` of simple-root indices (1-based)."""
    indices = tuple(sorted({int(i) for i in sbar}))
    nsimple = len(datum.simple_roots)
    for i in indices:
        if not 1 <= i <= nsimple:
            raise RootSystemError(f"simple-root index {i} out of range 1..{nsimple}")

    support = _simple_coordinates(datum)
    keep = set(i - 1 for i in indices)
    rbar = tuple(
        root for root in datum.positive_roots
        if all(c == 0 for k, c in enumerate(support[root]) if k not in keep)
    )
    total = Weight.zero(datum.rank)
    for a in rbar:
        total = total + a
    rho_bar = Weight(c // 2 for c in total)

    components = _components(datum, indices)
    return LeviDatum(datum, indices, rbar, rho_bar, components)


def _components(datum: RootDatum, indices: tuple[int, ...]) -> tuple[LeviComponent, ...]:
    simple = datum.simple_roots
    chosen = [simple[i - 1] for i in indices]
    # connected components of the induced Dynkin subgraph
    adj = {i: set() for i in range(len(chosen))}
    for a, b in itertools.combinations(range(len(chosen)), 2):
        if chosen[a].dot4(chosen[b]) != 0:
            adj[a].add(b)
            adj[b].add(a)
    seen: set[int] = set()
    comps: list[LeviComponent] = []
    touched: set[int] = set()
    for start in range(len(chosen)):
        if start in seen:
            continue
        stack, nodes = [start], []
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            nodes.append(v)
            stack.extend(adj[v] - seen)
        roots = [chosen[v] for v in sorted(nodes)]
        coords = sorted({i + 1 for a in roots for i in range(len(a)) if a[i] != 0})
        touched.update(coords)
        comps.append(_classify_component(roots, tuple(coords)))
    # untouched coordinates are central gl1 summands
    for i in range(1, datum.rank + 1):
        if i not in touched:
            comps.append(LeviComponent("GL", 1, (i,)))
    return tuple(sorted(comps, key=lambda c: (c.coords[0], c.coords)))


def _classify_component(roots: list[Weight], coords: tuple[int, ...]) -> LeviComponent:
    k = len(roots)
    if k == 1:
        a = roots[0]
        if a.dot4(a) == 16:  # long root 2e_i
            return LeviComponent("C", 1, coords)
        if a.dot4(a) == 4:   # short root e_i
            return LeviComponent("B", 1, coords)
        return LeviComponent("GL", 2, coords)
    degrees = [0] * k
    has_double = False
    max_len = max(a.dot4(a) for a in roots)
    for i, j in itertools.combinations(range(k), 2):
        cij = coroot_pairing(roots[i], roots[j])
        cji = coroot_pairing(roots[j], roots[i])
        if cij != 0:
            degrees[i] += 1
            degrees[j] += 1
            if cij * cji == 2:
                has_double = True
    if has_double:
        # a doubled bond arises from 2e_i (type C, long root of squared
        # doubled norm 16) or e_i (type B, short root of norm 4)
        return LeviComponent("C" if max_len == 16 else "B", k, coords)
    if max(degrees) == 3:
        return LeviComponent("D", k, coords)
    return LeviComponent("GL", k + 1, coords)


def parse_system(spec: str | dict) -> tuple[RootDatum, LeviDatum | None]:
    """Parse a root-system descriptor.

    Accepts ``"C:6"`` / ``"GL:4"`` strings or a config mapping of the form
    ``{"family": "C", "rank": 6, "levi": [1,2,4,5,6]}`` (1-based simple-root
    indices for the retained subset).
    """
    if isinstance(spec, str):
        fam, _, rk = spec.partition(":")
        if not rk:
            raise RootSystemError(f"bad system descriptor {spec!r}; expected FAMILY:RANK")
        datum = build_root_system(fam.strip().upper(), int(rk))
        return datum, None
    known = {"family", "rank", "levi"}
    unknown = set(spec) - known
    if unknown:
        raise RootSystemError(f"unknown system fields: {sorted(unknown)}")
    datum = build_root_system(str(spec["family"]).upper(), int(spec["rank"]))
    levi = build_levi(datum, spec["levi"]) if "levi" in spec else None
    return datum, levi
