"""Bookkeeping for the duality between product data and divisor series.

The divisor class of a built product, together with its weight, realizes the
vanishing relation c(0,0)*[degree symbol] + sum c(n,beta) [H(n,beta)] = 0 in
a formal sense: weight = c(0,0)/2 and the divisor equals the halved
principal-part sum.  `duality_relation_check` re-derives both sides from the
input form and compares exactly.  Chow-type classes are opaque symbols here;
only the pairing arithmetic is real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .lattice import DiscriminantGroup
from .lift import BorcherdsProduct, assemble_divisor
from .modforms import RealizabilityReport, VVForm, realizability_check


@dataclass(frozen=True)
class FormalDivisorSeries:
    """q-series whose coefficients are formal sums of divisor symbols.

    degree_term is the rational multiple of the degree symbol (the class of
    the weight -1/2 sheaf); heegner_terms maps (n > 0, coset) to the weight
    of the symbol H(-n, beta) at q^n.
    """

    degree_term: Fraction
    heegner_terms: tuple   # sorted ((n, beta, weight), ...)

    @staticmethod
    def from_dict(degree_term, terms: dict) -> "FormalDivisorSeries":
        items = []
        for (n, beta), wt in terms.items():
            n = Fraction(n)
            if n <= 0:
                raise ValidationError("series terms need n > 0, got %s" % n)
            items.append((n, int(beta), Fraction(wt)))
        items.sort()
        return FormalDivisorSeries(degree_term=Fraction(degree_term),
                                   heegner_terms=tuple(items))

    def validate_support(self, group: DiscriminantGroup):
        """Dual-representation support: n = -Q(beta) mod 1."""
        for n, beta, _wt in self.heegner_terms:
            want = (-group.q_values[beta]) % 1
            if (n - want) % 1 != 0:
                raise ValidationError(
                    "series index (n=%s, beta=%d) violates the dual support congruence"
                    % (n, beta))


@dataclass
class DualityReport:
    passed: bool
    mismatches: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def duality_relation_check(f: VVForm, P: BorcherdsProduct) -> DualityReport:
    """Does the built product carry exactly the weight and divisor dictated by f?

    Verifies 2 * weight = c(0,0) and that the stored divisor equals the
    halved, unit-orbit-reduced principal part of f.  Mismatches are reported
    with the offending index.
    """
    mismatches = []
    c00 = f.coefficient(Fraction(0), 0) if f.qmax > 0 else Fraction(0)
    if 2 * P.weight != c00:
        mismatches.append(("weight", P.weight, c00 / 2))
    expected = assemble_divisor(f, P.cusp)
    got = {(t.n, t.orbit): t.multiplicity for t in P.divisor}
    want = {(t.n, t.orbit): t.multiplicity for t in expected}
    for key in sorted(set(got) | set(want)):
        if got.get(key, Fraction(0)) != want.get(key, Fraction(0)):
            mismatches.append((key, got.get(key), want.get(key)))
    return DualityReport(passed=not mismatches, mismatches=mismatches)


def realizable_series(candidate, basis, group: DiscriminantGroup | None = None,
                      degree_term=None) -> RealizabilityReport:
    """Residue pairings of a rational candidate series against a basis of
    weakly holomorphic forms; realizable iff all pairings vanish.

    candidate maps (coset, n >= 0) -> rational.  When a group is supplied the
    dual support congruence of the positive part is enforced first.
    """
    series = {}
    for (beta, n), c in candidate.items():
        n = Fraction(n)
        if n < 0:
            raise ValidationError("candidate series must be supported in n >= 0")
        series[(int(beta), n)] = Fraction(c)
    if group is not None:
        for (beta, n) in series:
            if n == 0:
                continue
            want = (-group.q_values[beta]) % 1
            if (n - want) % 1 != 0:
                raise ValidationError(
                    "candidate index (n=%s, beta=%d) violates the dual support "
                    "congruence" % (n, beta))
    return realizability_check(series, basis)
