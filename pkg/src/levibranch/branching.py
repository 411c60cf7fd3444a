"""Branching coefficients, the restriction oracle and the M-functions.

The branching coefficient m_mu^lambda counts the Levi irreducible of highest
weight mu inside the restriction of the ambient irreducible of highest
weight lambda.  Two independent routes are implemented:

* the alternating Weyl sum over the complement partition function, and
* a highest-weight stripping oracle on the full character multiset.

Equality of the infinite induced characters H_mu is decided through the
finite M-function: the signed sum over the Levi Weyl group of full orbit
sums of mu + rho_bar - w(rho_bar).  M-functions are stored compactly on the
orbit-sum basis (coefficients indexed by dominant representatives); the low
term count makes exact equality checks cheap even for large Weyl groups.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .rootsys import LeviDatum, Weight, WeightError
from .weightpoly import (BudgetError, DEFAULT_CHAR_BUDGET, WeightPolynomial,
                         chamber_cone_mask, decompose_character, levi_table,
                         signed_bucket, weyl_character)
from .weylgrp import (DEFAULT_GROUP_GUARD, dominant_representative,
                      levi_group, stabilizer_subgroup, weyl_group)

DEFAULT_EXPAND_BUDGET = 5_000_000


@lru_cache(maxsize=None)
def _rho_drops(levi: LeviDatum):
    """Rows mu-independent part of the E-set: rho_bar - w(rho_bar), with signs."""
    group = levi_group(levi)
    perm, sign, eps = group.arrays
    rho = np.array(levi.rho_bar, dtype=np.int64)
    img = kernels.orbit_images(perm, sign, rho)
    return rho[None, :] - img, eps


def e_set(levi: LeviDatum, mu: Weight) -> list[Weight]:
    """The translates mu + rho_bar - w(rho_bar) over the Levi Weyl group.

    Always exactly |Wbar| distinct weights: rho_bar has trivial stabiliser
    inside the Levi Weyl group.
    """
    levi.require_dominant(mu)
    drops, _ = _rho_drops(levi)
    base = np.array(mu, dtype=np.int64)
    return [Weight(base + row) for row in drops]


def far_from_walls(levi: LeviDatum, mu: Weight) -> bool:
    """Is the whole E-set of ``mu`` contained in one closed Weyl chamber?

    Any chamber containing the E-set contains its barycentre mu + rho_bar,
    so only the stabiliser coset of that point needs searching.
    """
    levi.require_dominant(mu)
    datum = levi.parent
    members = e_set(levi, mu)
    w1, lam = dominant_representative(datum, mu + levi.rho_bar)
    for sigma in stabilizer_subgroup(datum, lam):
        w = sigma.compose(w1)
        if all(datum.is_dominant(w.act(g)) for g in members):
            return True
    return False


# -- alternating-sum branching ----------------------------------------------

def branch_multiplicity(levi: LeviDatum, lam: Weight, mu: Weight,
                        guard: int = DEFAULT_GROUP_GUARD) -> int:
    """Branching coefficient via the signed Weyl sum of partition counts.

    Terms whose argument fails the ambient cone test are pruned before the
    memoised partition DP runs.
    """
    datum = levi.parent
    datum.require_dominant(lam)
    levi.require_dominant(mu)
    if not (lam - mu).is_integral():
        return 0  # different lattice classes never branch into each other
    group = weyl_group(datum, guard)
    perm, sign, eps = group.arrays
    shifted = np.array(lam + datum.rho, dtype=np.int64)
    img = kernels.orbit_images(perm, sign, shifted)
    args = img - np.array(mu + datum.rho, dtype=np.int64)
    mask = chamber_cone_mask(datum.family, args)
    if not mask.any():
        return 0
    counts = levi_table(levi).count_rows(args[mask])
    total = int((eps[mask] * counts).sum())
    if total < 0:
        raise WeightError(f"negative branching multiplicity {total} at {lam}, {mu}")
    return total


@dataclass
class BranchingRow:
    """One row of the branching matrix: multiplicities of a fixed Levi weight."""

    levi: LeviDatum
    mu: Weight
    entries: dict
    box: tuple[Weight, ...] | None = None

    def multiplicity(self, lam: Weight) -> int:
        return self.entries.get(lam, 0)

    def support(self) -> tuple[Weight, ...]:
        return tuple(sorted(w for w, c in self.entries.items() if c))

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "entries": [{"lam": w.to_json(), "m": self.entries[w]}
                        for w in sorted(self.entries)],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([f"lam{i+1}" for i in range(self.levi.parent.rank)]
                        + ["multiplicity"])
        for w in sorted(self.entries):
            writer.writerow([str(x) for x in w.to_json()] + [self.entries[w]])
        return buf.getvalue()


def default_lambda_box(levi: LeviDatum, mu: Weight, k: int = 2) -> tuple[Weight, ...]:
    """Dominant lambda with mu <= lambda <= mu + k * (highest root)."""
    from .weightpoly import dominants_below

    datum = levi.parent
    top = mu + k * datum.highest_root
    _, anchor = dominant_representative(datum, top)
    box = [lam for lam in dominants_below(datum, anchor)
           if datum.dominance_leq(mu, lam) and datum.dominance_leq(lam, top)]
    return tuple(sorted(box))


def branch_row(levi: LeviDatum, mu: Weight, k: int = 2,
               guard: int = DEFAULT_GROUP_GUARD) -> BranchingRow:
    """Evaluate the alternating-sum branching over the default lambda box."""
    box = default_lambda_box(levi, mu, k)
    entries = {lam: branch_multiplicity(levi, lam, mu, guard) for lam in box}
    return BranchingRow(levi, mu, entries, box)


def branch_by_restriction(levi: LeviDatum, lam: Weight,
                          budget: int = DEFAULT_CHAR_BUDGET) -> dict:
    """Restriction oracle: strip Levi highest weights off the full character.

    Returns the complete row {mu: multiplicity} for the ambient highest
    weight ``lam``; independent of the alternating-sum route.
    """
    datum = levi.parent
    datum.require_dominant(lam)
    char = weyl_character(datum, lam, budget)
    return decompose_character(levi, char, budget)


# -- M-functions ---------------------------------------------------------------

@dataclass(frozen=True)
class MFunction:
    """Finite symmetrised alternating sum deciding induced-character equality.

    ``coeffs`` lists (dominant representative, signed count) pairs: the
    expansion of the function over full Weyl orbit sums.  Expanding every
    orbit yields the underlying weight polynomial; two induced characters
    agree exactly when these coefficient lists agree.
    """

    levi: LeviDatum
    mu: Weight
    coeffs: tuple[tuple[Weight, int], ...]

    @property
    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def same_function(self, other: "MFunction") -> bool:
        return self.levi == other.levi and self.coeffs == other.coeffs

    def leading(self) -> tuple[Weight, int]:
        return leading_term(self.levi, self.mu)

    def poly(self, budget: int = DEFAULT_EXPAND_BUDGET) -> WeightPolynomial:
        """Materialise the full weight polynomial (all orbit points)."""
        datum = self.levi.parent
        group = weyl_group(datum)
        perm, sign, _ = group.arrays
        total_rows = len(group) * len(self.coeffs)
        if total_rows > budget:
            raise BudgetError(
                f"expansion needs {total_rows} rows > budget {budget}")
        chunks = []
        weights = []
        for lam, a in self.coeffs:
            img = kernels.orbit_images(perm, sign, np.array(lam, dtype=np.int64))
            chunks.append(img)
            weights.append(np.full(len(img), a, dtype=np.int64))
        rows = np.concatenate(chunks) if chunks else np.zeros((0, datum.rank), np.int64)
        coeffs = np.concatenate(weights) if weights else np.zeros(0, np.int64)
        return WeightPolynomial.from_rows(rows, coeffs)

    def to_json(self) -> dict:
        return {
            "mu": self.mu.to_json(),
            "coeffs": [{"w": w.to_json(), "c": c} for w, c in self.coeffs],
        }


def leading_term(levi: LeviDatum, mu: Weight) -> tuple[Weight, int]:
    """The unique maximal term of the M-function and its orbit coefficient.

    The maximal support element is the dominant representative of
    mu + 2 rho_bar; its orbit-sum coefficient is the sign of the longest
    Levi Weyl element, (-1)^(number of Levi positive roots).
    """
    levi.require_dominant(mu)
    _, lam = dominant_representative(levi.parent, mu + levi.two_rho_bar)
    sign = -1 if len(levi.rbar_plus) % 2 else 1
    return lam, sign


def build_m(levi: LeviDatum, mu: Weight, *, self_check: bool = True,
            guard: int = DEFAULT_GROUP_GUARD) -> MFunction:
    """Construct the M-function of ``mu`` on the orbit-sum basis.

    Each translate mu + rho_bar - w(rho_bar) contributes its sign at its
    dominant representative.  A second, independent construction (the
    product of the two Levi alternants, summed over the group and divided
    by |Wbar|) is recomputed on every call and must agree exactly; the
    leading-term shape is also asserted.
    """
    levi.require_dominant(mu)
    datum = levi.parent
    levi_group(levi, guard)  # enforce the guard before any heavy work
    drops, eps = _rho_drops(levi)
    rows = np.array(mu, dtype=np.int64)[None, :] + drops
    code = kernels.FAMILY_CODE[datum.family]
    dom = kernels.dominant_rows(rows, code)
    urows, sums = signed_bucket(dom, eps)
    coeffs = tuple((Weight(r), int(s)) for r, s in
                   sorted(zip(map(Weight, urows), map(int, sums))) if s)
    fn = MFunction(levi, mu, coeffs)
    lam_top, lead = leading_term(levi, mu)
    table = dict(coeffs)
    if table.get(lam_top) != lead:
        raise WeightError(f"leading coefficient of M at {mu} is not {lead}")
    for w in table:
        if w != lam_top and not datum.dominance_leq(w, lam_top):
            raise WeightError(f"M-term {w} not dominated by the leading {lam_top}")
    if self_check:
        _check_dual_construction(levi, mu, table)
    return fn


def _check_dual_construction(levi: LeviDatum, mu: Weight, coeffs: dict) -> None:
    """Cross-check build_m through the product of the two Levi alternants.

    The alternants of mu + rho_bar and of rho_bar multiply to a Levi-invariant
    polynomial X; summing w(X) over the whole Weyl group gives |Wbar| times
    the M-function up to the sign of the longest Levi element.  On the
    orbit-sum basis that is a bucket sum of the |Wbar|^2 product terms, so the
    check stays cheap even when the ambient Weyl group is large.
    """
    datum = levi.parent
    group = levi_group(levi)
    perm, sign, eps = group.arrays
    a_rows = kernels.orbit_images(perm, sign, np.array(mu + levi.rho_bar, np.int64))
    b_rows = kernels.orbit_images(perm, sign, np.array(levi.rho_bar, np.int64))
    k = len(eps)
    code = kernels.FAMILY_CODE[datum.family]
    chunk = max(1, 2_000_000 // max(k, 1))
    acc: dict[Weight, int] = {}
    for start in range(0, k, chunk):
        stop = min(start + chunk, k)
        block = (a_rows[start:stop, None, :] + b_rows[None, :, :])
        block = block.reshape((stop - start) * k, -1)
        block_eps = (eps[start:stop, None] * eps[None, :]).reshape((stop - start) * k)
        dom = kernels.dominant_rows(block, code)
        urows, sums = signed_bucket(dom, block_eps)
        for r, s in zip(urows, sums):
            if s:
                w = Weight(r)
                c0 = acc.get(w, 0) + int(s)
                if c0:
                    acc[w] = c0
                else:
                    del acc[w]
    w0sign = -1 if len(levi.rbar_plus) % 2 else 1
    alt: dict[Weight, int] = {}
    for w, s in acc.items():
        q, rem = divmod(w0sign * s, k)
        if rem != 0:
            raise WeightError("dual M-construction is not divisible by |Wbar|")
        alt[w] = q
    if alt != coeffs:
        raise WeightError(f"dual M-constructions disagree at mu = {mu}")


def a_coefficient(levi: LeviDatum, lam: Weight, mu: Weight) -> int:
    """Signed count of Levi elements whose E-translate lands in the orbit of lam.

    These are the coefficients of the triangular expansion of the induced
    character over the h-basis of the chamber containing ``mu``; the diagonal
    value is always 1.
    """
    levi.require_dominant(mu)
    datum = levi.parent
    _, target = dominant_representative(datum, lam)
    drops, eps = _rho_drops(levi)
    rows = np.array(mu, dtype=np.int64)[None, :] + drops
    dom = kernels.dominant_rows(rows, kernels.FAMILY_CODE[datum.family])
    total = 0
    tgt = np.array(target, dtype=np.int64)
    hits = (dom == tgt).all(axis=1)
    total = int(np.asarray(eps)[hits].sum())
    return total
