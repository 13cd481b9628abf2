"""Correlation-differential coefficients by residue calculus.

Handles rational spectral curves of the shape x = z^2/2 with the single
branch point z = 0 and local involution z -> -z; the function y is supplied
as a Laurent germ. The two curves of interest are y = 1/z (Bessel, a simple
pole of y at the branch point) and y = z (Airy, y analytic there).

A correlation differential with 2g - 2 + n > 0 has poles only at the branch
point, so it is stored as the finite coefficient tensor of the expansion

    omega_{g,n}(z_1, ..., z_n) = sum_mu coeffs[mu] * prod_i mu_i dz_i / z_i^(mu_i + 1)

over ordered index tuples. The unstable differentials are never stored:
omega_{0,1} is excluded from the recursion bracket, and omega_{0,2} enters
only through its two closed forms. With one live variable z near the branch
point and a formal second variable w,

    omega_{0,2}(z, w)  = sum_{m >= 1} z^(m-1) dz * [m dw / w^(m+1)]
    omega_{0,2}(z, -z) = -dz (x) dz / (4 z^2).

The recursion residue is evaluated per external index assignment: the
bracket collapses to a one-variable Laurent density in z (the dz^2 is
stripped; evaluating a slot at -z contributes the sign (-1)^index), the
kernel contributes the geometric expansion of -1/D(z) * 1/(z_1 - z) with
D(z) = [y(z) - y(-z)] z, and reading the z^(-1) coefficient leaves a
polynomial in 1/z_1 whose coefficients are the new tensor entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .formal import ConsistencyError, LaurentPoly


@dataclass(frozen=True)
class SpectralCurve:
    """x = z^2/2 together with a Laurent germ for y and a display label."""

    y_germ: LaurentPoly
    label: str

    def kernel_denominator(self) -> LaurentPoly:
        """D(z) = [y(z) - y(-z)] * z, the dz-stripped kernel denominator."""
        return (self.y_germ - self.y_germ.reflect()).shift(1)

    def max_part(self, g: int, n: int) -> int:
        """A priori cap on the expansion indices of omega_{g,n}.

        The valuation of D classifies the branch point: 0 means y has a
        simple pole there and the pole order of omega_{g,n} is at most 2g;
        2 means y is analytic with dy nonzero and the pole order is at most
        6g - 4 + 2n. The expansion index is the pole order minus one.
        """
        den = self.kernel_denominator()
        if den.is_zero():
            raise ValueError(f"curve {self.label!r}: y(z) - y(-z) vanishes identically")
        v = den.valuation()
        if v == 0:
            bound = 2 * g - 1
        elif v == 2:
            bound = 6 * g - 5 + 2 * n
        else:
            raise ValueError(
                f"curve {self.label!r}: unsupported branch behaviour (valuation {v})"
            )
        return max(bound, 1)


def bessel_curve() -> SpectralCurve:
    return SpectralCurve(LaurentPoly({-1: 1}), "bessel")


def airy_curve() -> SpectralCurve:
    return SpectralCurve(LaurentPoly({1: 1}), "airy")


def kernel_coeffs(curve: SpectralCurve, order: int) -> dict[tuple[int, int], Fraction]:
    """Expansion of the recursion kernel times dz/dz1 for |z| < |z1|.

    Returns c[(a, b)] with K(z1, z) dz/dz1 = sum c[a, b] z^a z1^(-b): the
    geometric series -1/D(z) * sum_{t < order} z^t z1^(-t-1), with 1/D
    truncated to `order` terms.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    den = curve.kernel_denominator()
    if den.is_zero():
        raise ValueError(f"curve {curve.label!r}: y(z) - y(-z) vanishes identically")
    inv = den.inverse(-den.valuation() + order - 1)
    out: dict[tuple[int, int], Fraction] = {}
    for t in range(order):
        for u, d in inv.coeffs.items():
            key = (t + u, t + 1)
            out[key] = out.get(key, Fraction(0)) - d
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class OmegaCoeffs:
    """Coefficient tensor of one correlation differential, over ordered tuples."""

    g: int
    n: int
    coeffs: dict[tuple[int, ...], Fraction] = field(default_factory=dict)


class CorrelationEngine:
    """Residue-recursion evaluator with a shared memo of lower tensors.

    Tensors are computed in increasing 2g - 2 + n; the memo behaves as an
    idempotent-insert map (duplicate equal inserts are legal, differing
    values are fatal).
    """

    # extra expansion indices beyond the classification bound, so that the
    # bound shows up as computed zeros instead of being assumed
    MARGIN = 2

    def __init__(self, curve: SpectralCurve):
        self.curve = curve
        self._den = curve.kernel_denominator()
        if self._den.is_zero():
            raise ValueError(f"curve {curve.label!r}: y(z) - y(-z) vanishes identically")
        self._tensors: dict[tuple[int, int], OmegaCoeffs] = {}

    def omega(self, g: int, n: int) -> OmegaCoeffs:
        if g < 0 or n < 1 or 2 * g - 2 + n <= 0:
            raise ValueError(f"(g, n) = ({g}, {n}) is not produced by the recursion")
        key = (g, n)
        if key not in self._tensors:
            value = self._compute(g, n)
            existing = self._tensors.get(key)
            if existing is not None and existing.coeffs != value.coeffs:
                raise ConsistencyError(f"conflicting tensors for {key}")
            self._tensors[key] = value
        return self._tensors[key]

    def _compute(self, g: int, n: int) -> OmegaCoeffs:
        cap = self.curve.max_part(g, n) + self.MARGIN
        ext = n - 1
        # external index assignment -> z-density of the bracket (exponent -> coeff)
        bracket: dict[tuple[int, ...], dict[int, Fraction]] = {}

        def add_density(assignment: dict, exponent: int, coeff: Fraction) -> None:
            key = tuple(assignment[i] for i in range(ext))
            slot = bracket.setdefault(key, {})
            slot[exponent] = slot.get(exponent, Fraction(0)) + coeff

        # omega_{g-1, n+1}(z, -z, externals)
        if g >= 1:
            if (g - 1, n + 1) == (0, 2):
                add_density({}, -2, Fraction(-1, 4))
            else:
                lower = self.omega(g - 1, n + 1)
                for idx, u in lower.coeffs.items():
                    nu1, nu2, rest = idx[0], idx[1], idx[2:]
                    coeff = u * nu1 * nu2
                    if nu2 % 2:
                        coeff = -coeff
                    add_density(dict(enumerate(rest)), -(nu1 + nu2 + 2), coeff)

        # quadratic sum over ordered pairs (g1, I), (g2, J); pairs containing
        # omega_{0,1} are excluded before either factor is expanded (the
        # excluded partner of such a pair is omega_{g,n} itself)
        for g1 in range(g + 1):
            g2 = g - g1
            for mask in range(1 << ext):
                left = [i for i in range(ext) if mask >> i & 1]
                right = [i for i in range(ext) if not mask >> i & 1]
                if (g1 == 0 and not left) or (g2 == 0 and not right):
                    continue
                f1 = self._factor_terms(g1, left, barred=False, cap=cap)
                if not f1:
                    continue
                f2 = self._factor_terms(g2, right, barred=True, cap=cap)
                if not f2:
                    continue
                for a1, e1, c1 in f1:
                    for a2, e2, c2 in f2:
                        add_density({**a1, **a2}, e1 + e2, c1 * c2)

        coeffs: dict[tuple[int, ...], Fraction] = {}
        nonempty = [d for d in bracket.values() if any(d.values())]
        if nonempty:
            e_min = min(min(d) for d in nonempty)
            inv = self._den.inverse(max(-1 - e_min, -self._den.valuation()))
            for key, density_map in bracket.items():
                paired = inv * LaurentPoly(density_map)
                for b in range(1, cap + 2):
                    r = -paired.coefficient(-b)
                    if not r:
                        continue
                    if b == 1:
                        raise ConsistencyError(
                            f"({g},{n}): residue left a simple pole in the live slot"
                        )
                    coeffs[(b - 1,) + key] = r / (b - 1)
        return OmegaCoeffs(g, n, coeffs)

    def _factor_terms(self, g_i: int, slots: list[int], barred: bool, cap: int):
        """Expansion terms (assignment, z-exponent, coeff) of one product factor.

        The caller has already excluded omega_{0,1} factors. A barred factor
        is evaluated at -z, which multiplies the term attached to index nu by
        (-1)^nu.
        """
        k = len(slots)
        out = []
        if g_i == 0 and k == 1:
            label = slots[0]
            for m in range(1, cap + 1):
                coeff = Fraction(-1) if (barred and m % 2) else Fraction(1)
                out.append(({label: m}, m - 1, coeff))
        else:
            tensor = self.omega(g_i, k + 1)
            for idx, u in tensor.coeffs.items():
                nu1, rest = idx[0], idx[1:]
                coeff = u * nu1
                if barred and nu1 % 2:
                    coeff = -coeff
                out.append((dict(zip(slots, rest)), -(nu1 + 1), coeff))
        return out


def compute_omega(curve: SpectralCurve, g: int, n: int) -> OmegaCoeffs:
    """One-shot tensor computation (builds a transient engine)."""
    return CorrelationEngine(curve).omega(g, n)


def stable_pairs(chi_max: int):
    """All (g, n) with 0 < 2g - 2 + n <= chi_max, in increasing complexity."""
    for chi in range(1, chi_max + 1):
        for g in range((chi + 1) // 2 + 1):
            n = chi + 2 - 2 * g
            if n >= 1:
                yield g, n


def symmetric_table(omega: OmegaCoeffs) -> dict[tuple[int, ...], Fraction]:
    """Canonicalise a tensor to sorted-descending keys.

    Fails loudly if the tensor is not fully symmetric; this is the
    internal-consistency tripwire for the residue recursion, whose output
    symmetry is a theorem rather than a construction.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for key, value in omega.coeffs.items():
        if len(key) != omega.n:
            raise ConsistencyError(f"key {key} has wrong arity for n={omega.n}")
        canon = tuple(sorted(key, reverse=True))
        seen = out.get(canon)
        if seen is not None and seen != value:
            raise ConsistencyError(f"asymmetric tensor at {canon}: {seen} vs {value}")
        out[canon] = value
    for canon, value in out.items():
        for perm in set(permutations(canon)):
            if omega.coeffs.get(perm) != value:
                raise ConsistencyError(
                    f"asymmetric tensor: {perm} missing or differs from {canon}"
                )
    return out


def omega_records(omega: OmegaCoeffs) -> list[dict]:
    """Record-stream form: {"g", "n", "mu", "value"} with mu sorted descending."""
    table = symmetric_table(omega)
    return [
        {"g": omega.g, "n": omega.n, "mu": list(mu), "value": str(table[mu])}
        for mu in sorted(table)
    ]
