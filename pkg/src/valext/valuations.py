"""Rank-n monomial (generalized Gauss) valuations on F(x_1..x_n).

The value of a monomial prod x_i^(e_i) is the vector (e_1..e_n), compared
lexicographically with the first coordinate most significant, and the value
of a polynomial is the minimum over its monomials (additive convention; see
value_groups).  The valuation ring is {value >= 0}, the residue field is F,
and the residue map keeps the unique minimal monomial of a unit.

For truncated perfect-closure constructions the same machinery runs with a
denominator exponent N: the variables are then read as p^N-th roots, each of
value (1/p^N) e_i.

Rank-1 valuations additionally support finite-precision series expansion and
Hensel factor lifting of monic polynomials with squarefree residual
factorization.

Valuation descriptors are immutable and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import poly as poly_mod
from .errors import CapabilityError, DomainError, StructuralError
from .fields import FieldElement, FieldTower, _split_fraction, build_fraction_rep
from .poly import Polynomial, _padd, _pdivmod, _pmul, _ptrim
from .value_groups import ValueGroup, ValueWithZero


@dataclass(frozen=True)
class PrimeIdealInfo:
    """One prime of the valuation ring, with its residue field.

    Going up the chain kills the variables of dominant value first: the
    prime of index j contains x_1..x_j, and its residue field is the
    rational function field in the surviving variables x_{j+1}..x_n.
    """

    index: int
    dying_vars: tuple[str, ...]
    residue_field: FieldTower

    def describe(self) -> str:
        dead = ",".join(self.dying_vars) if self.dying_vars else "0"
        return f"prime[{self.index}] = ({dead})"


class MonomialValuation:
    """The monomial valuation on F(x_1..x_n) with value group (1/q^N) Z^n."""

    def __init__(
        self,
        coefficient_field: FieldTower,
        variables: Sequence[str],
        denom_exponent: int = 0,
    ):
        variables = tuple(variables)
        if not variables:
            raise StructuralError("a monomial valuation needs at least one variable")
        if len(set(variables)) != len(variables):
            raise StructuralError("variable names must be distinct")
        self.coefficient_field = coefficient_field
        self.variables = variables
        self.denom_exponent = denom_exponent
        q = coefficient_field.char_exponent
        if denom_exponent > 0 and q == 1:
            raise StructuralError("fractional values require positive characteristic")
        self.group = ValueGroup(len(variables), q, denom_exponent)
        k = coefficient_field
        for v in variables:
            k = k.extend_transcendental(v)
        self.function_field = k

    # -- identities -----------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, MonomialValuation)
            and self.coefficient_field == other.coefficient_field
            and self.variables == other.variables
            and self.denom_exponent == other.denom_exponent
        )

    def __hash__(self):
        return hash((self.coefficient_field, self.variables, self.denom_exponent))

    def describe(self) -> str:
        return (
            f"monomial valuation on ({self.coefficient_field.describe()})"
            f"({', '.join(self.variables)}), group {self.group.describe()}"
        )

    # -- values ---------------------------------------------------------------

    def coerce(self, z) -> FieldElement:
        return self.function_field.coerce(z)

    def _fraction_dicts(self, z: FieldElement):
        k = self.function_field
        cut = self.coefficient_field.level
        return _split_fraction(k, z.rep, cut)

    def value(self, z) -> ValueWithZero:
        z = self.coerce(z)
        if z.is_zero:
            return self.group.zero_value()
        num, den = self._fraction_dicts(z)
        vnum = min(num.keys())
        vden = min(den.keys())
        d = self.group.denominator
        return self.group.element(Fraction(a - b, d) for a, b in zip(vnum, vden))

    def in_ring(self, z) -> bool:
        return self.value(z).is_nonnegative()

    def in_maximal_ideal(self, z) -> bool:
        return self.value(z).is_positive()

    def is_unit(self, z) -> bool:
        v = self.value(z)
        return not v.is_zero and v == self.group.neutral()

    def residue(self, z) -> FieldElement:
        """The image of z in the residue field F, for z in the valuation ring."""
        z = self.coerce(z)
        v = self.value(z)
        if not v.is_nonnegative():
            raise DomainError(f"residue of an element of value {v} < 0")
        field = self.coefficient_field
        if v.is_zero or v.is_positive():
            return field.zero()
        num, den = self._fraction_dicts(z)
        cn = FieldElement(field, num[min(num.keys())])
        cd = FieldElement(field, den[min(den.keys())])
        return cn / cd

    def from_terms(self, terms: dict, den_exps=None) -> FieldElement:
        """Build (sum of terms)/(monomial) directly in canonical form.

        ``terms`` maps variable-exponent tuples to coefficient-field
        elements; ``den_exps`` is the denominator monomial (default 1).
        """
        field = self.coefficient_field
        cut = field.level
        if den_exps is None:
            den_exps = (0,) * self.rank
        reps = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != self.rank or any(e < 0 for e in exps):
                raise StructuralError(f"bad exponent vector {exps}")
            c = field.coerce(c)
            reps[exps] = c.rep
        rep = build_fraction_rep(self.function_field, cut, reps, den_exps)
        return FieldElement(self.function_field, rep)

    def monomial(self, value: ValueWithZero) -> FieldElement:
        """A field element whose value is the given group element."""
        if value.is_zero:
            raise DomainError("no monomial has the adjoined zero value")
        exps = []
        for c in value.coords:
            e = c * self.group.denominator
            if e.denominator != 1:
                raise DomainError(f"{value} is not in the value group")
            exps.append(int(e))
        pos = tuple(max(e, 0) for e in exps)
        neg = tuple(max(-e, 0) for e in exps)
        return self.from_terms({pos: self.coefficient_field.one()}, neg)

    # -- residual structure -----------------------------------------------------

    def residual_polynomial(self, f: Polynomial) -> Polynomial:
        """Coefficient-wise residue of a polynomial with ring coefficients."""
        field = self.coefficient_field
        out = {}
        for e, c in f.terms.items():
            rc = self.residue(c)
            if not rc.is_zero:
                out[e] = rc
        return Polynomial(field, f.vars, out)

    def prime_chain(self) -> list[PrimeIdealInfo]:
        """The n+1 primes of a rank-n monomial valuation ring, ascending."""
        out = []
        for j in range(self.rank + 1):
            kappa = self.coefficient_field
            for v in self.variables[j:]:
                kappa = kappa.extend_transcendental(v)
            out.append(PrimeIdealInfo(j, self.variables[:j], kappa))
        return out

    def ring_view(self) -> "ValuationRingView":
        return ValuationRingView(self)

    # -- rank-1 series ----------------------------------------------------------

    def series(self, z, precision: int) -> list[FieldElement]:
        """Coefficients of z as a power series in the variable, rank 1 only."""
        if self.rank != 1:
            raise CapabilityError("series expansion is a rank-1 operation")
        z = self.coerce(z)
        field = self.coefficient_field
        zero = field.zero()
        if z.is_zero:
            return [zero] * precision
        num, den = self._fraction_dicts(z)
        a = min(num.keys())[0]
        b = min(den.keys())[0]
        shift = a - b
        if shift < 0:
            raise DomainError("series expansion needs a ring element")
        nn = [zero] * precision
        for (e,), rep in num.items():
            if e - a < precision:
                nn[e - a] = FieldElement(field, rep)
        dd = [zero] * precision
        for (e,), rep in den.items():
            if e - b < precision:
                dd[e - b] = FieldElement(field, rep)
        inv0 = dd[0].inv()
        inv = [zero] * precision
        inv[0] = inv0
        for k in range(1, precision):
            acc = zero
            for j in range(1, k + 1):
                acc = acc + dd[j] * inv[k - j]
            inv[k] = -inv0 * acc
        prod = [zero] * precision
        for i in range(precision):
            if nn[i].is_zero:
                continue
            for j in range(precision - i):
                prod[i + j] = prod[i + j] + nn[i] * inv[j]
        return ([zero] * shift + prod)[:precision]

    def from_series(self, coeffs: Sequence[FieldElement]) -> FieldElement:
        """The polynomial sum coeffs[k] * x^k as a function-field element."""
        k = self.function_field
        x = k.gen(self.variables[0])
        out = k.zero()
        for i, c in enumerate(coeffs):
            out = out + k.embed(self.coefficient_field.coerce(c)) * x**i
        return out


class ValuationRingView:
    """Ring-level accessors of a monomial valuation: membership, units,
    maximal ideal, and the totally ordered prime chain."""

    def __init__(self, valuation: MonomialValuation):
        self.valuation = valuation

    def contains(self, z) -> bool:
        return self.valuation.in_ring(z)

    def in_maximal_ideal(self, z) -> bool:
        return self.valuation.in_maximal_ideal(z)

    def is_unit(self, z) -> bool:
        return self.valuation.is_unit(z)

    def prime_chain(self) -> list[PrimeIdealInfo]:
        return self.valuation.prime_chain()

    def residue(self, z) -> FieldElement:
        return self.valuation.residue(z)


# ---------------------------------------------------------------------------
# Hensel factor lifting (rank 1, finite precision)


@dataclass
class HenselLift:
    """Outcome of a factor lift: either lifted factors or a refusal.

    A refusal is not an error: it reports that the residual factorization is
    not squarefree, so the coprimality hypothesis of the lift fails.
    """

    factors: list[Polynomial] | None
    residual_factors: list[Polynomial]
    precision: int
    refusal: str | None = None

    @property
    def refused(self) -> bool:
        return self.refusal is not None


def hensel_factor_lift(
    valuation: MonomialValuation, f: Polynomial, precision: int | None = None
) -> HenselLift:
    """Lift the residual factorization of a monic f to finite precision.

    The returned factors are monic, congruent to the residual factors, and
    multiply to f modulo x^precision.  When the residual polynomial is
    irreducible the input is returned unchanged (exactly, not truncated).
    """
    if valuation.rank != 1:
        raise CapabilityError("factor lifting is implemented for rank-1 valuations only")
    f._require_univariate("factor lifting")
    if f.tower != valuation.function_field:
        raise StructuralError("polynomial is not over the valuation's field")
    deg = f.degree()
    if deg < 1:
        raise DomainError("factor lifting needs degree >= 1")
    if not (f.coeff(deg) == valuation.function_field.one()):
        raise DomainError("factor lifting needs a monic polynomial")
    for c in f.univariate_coeffs():
        if not c.is_zero and not valuation.in_ring(c):
            raise DomainError("coefficients must lie in the valuation ring")
    if precision is None:
        precision = 2 * deg + 2
    residual = valuation.residual_polynomial(f)
    fac = poly_mod.factor(residual)
    residual_factors = [g for g, _ in fac.factors]
    if any(m > 1 for _, m in fac.factors):
        worst = next((g, m) for g, m in fac.factors if m > 1)
        return HenselLift(
            None,
            residual_factors,
            precision,
            refusal=f"residual polynomial is not squarefree: ({worst[0]})^{worst[1]}",
        )
    if len(residual_factors) == 1:
        return HenselLift([f], residual_factors, precision)

    field = valuation.coefficient_field
    zero = field.zero()

    def to_series_poly(p: Polynomial) -> list[list[FieldElement]]:
        return [valuation.series(c, precision) for c in p.univariate_coeffs()]

    def embed_residual(p: Polynomial) -> list[list[FieldElement]]:
        return [[c] + [zero] * (precision - 1) for c in p.univariate_coeffs()]

    def smul(a: list[FieldElement], b: list[FieldElement]) -> list[FieldElement]:
        out = [zero] * precision
        for i, x in enumerate(a):
            if x.is_zero:
                continue
            for j in range(precision - i):
                out[i + j] = out[i + j] + x * b[j]
        return out

    def ymul(a, b):
        out = [[zero] * precision for _ in range(len(a) + len(b) - 1)]
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                prod = smul(ca, cb)
                tgt = out[i + j]
                for k in range(precision):
                    tgt[k] = tgt[k] + prod[k]
        return out

    fy = to_series_poly(f)

    def bezout(a: Polynomial, b: Polynomial):
        r0, r1 = a.univariate_coeffs(), b.univariate_coeffs()
        s0, s1 = [field.one()], []
        t0, t1 = [], [field.one()]
        while _ptrim(list(r1)):
            q, r = _pdivmod(field, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _padd(s0, [-c for c in _pmul(q, s1, field)])
            t0, t1 = t1, _padd(t0, [-c for c in _pmul(q, t1, field)])
        r0 = _ptrim(list(r0))
        if len(r0) != 1:
            raise DomainError("residual factors are not coprime")
        inv = r0[0].inv()
        return [c * inv for c in s0], [c * inv for c in t0]

    def lift_pair(target, gbar: Polynomial, hbar: Polynomial):
        s, t = bezout(gbar, hbar)
        g = embed_residual(gbar)
        h = embed_residual(hbar)
        gb = gbar.univariate_coeffs()
        hb = hbar.univariate_coeffs()
        for m in range(1, precision):
            prod = ymul(g, h)
            e = []
            for i in range(len(target)):
                have = prod[i][m] if i < len(prod) else zero
                e.append(target[i][m] - have)
            e = _ptrim(e)
            if not e:
                continue
            te = _pmul(t, e, field)
            q, dg = _pdivmod(field, te, gb)
            dh = _padd(_pmul(s, e, field), _pmul(q, hb, field))
            for i, c in enumerate(dg):
                g[i][m] = g[i][m] + c
            for i, c in enumerate(dh):
                h[i][m] = h[i][m] + c
        return g, h

    def lift_tree(target, parts: list[Polynomial]):
        if len(parts) == 1:
            return [target]
        half = len(parts) // 2
        gbar = parts[0]
        for p in parts[1:half]:
            gbar = gbar * p
        hbar = parts[half]
        for p in parts[half + 1 :]:
            hbar = hbar * p
        g, h = lift_pair(target, gbar, hbar)
        return lift_tree(g, parts[:half]) + lift_tree(h, parts[half:])

    lifted = lift_tree(fy, residual_factors)
    out = []
    for series_poly in lifted:
        coeffs = [valuation.from_series(cs) for cs in series_poly]
        out.append(Polynomial.from_coeffs(valuation.function_field, f.vars[0], coeffs))
    return HenselLift(out, residual_factors, precision)


def congruent_mod_precision(
    valuation: MonomialValuation, a: Polynomial, b: Polynomial, precision: int
) -> bool:
    """Coefficient-wise congruence modulo x^precision (rank 1)."""
    diff = a - b
    for c in diff.terms.values():
        series = valuation.series(c, precision)
        if any(not s.is_zero for s in series):
            return False
    return True
