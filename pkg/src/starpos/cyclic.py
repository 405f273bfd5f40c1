"""Cyclic algebras (L/Q, sigma, a) with a graded involution.

The algebra is L + eL + ... + e^(n-1)L with e^n = a and l e = e sigma(l);
elements carry their coefficients on the right of the powers of e.  The
involution is parameterized by a unit c with e* = c e^(n-1) and validated
at construction on the full monomial basis (no involution theory is
assumed, invalid data is rejected with the failing axiom named).  The
module provides the diagonal-plus-shift embedding into n x n matrices over
L, the averaging projection back, the projection tower down to Q, and the
positivity criterion through the grading norms e*^k e^k.
"""

from __future__ import annotations

from fractions import Fraction

from . import ratpoly
from .numfield import FieldAutomorphism, NFElement, NumberField, ntrace, totally_real


class CyclicAlgebra:
    def __init__(self, field: NumberField, sigma: FieldAutomorphism,
                 a, star_unit):
        self.field = field
        self.sigma = sigma
        self.n = sigma.order()
        if self.n < 2:
            raise ValueError("sigma must have order n > 1")
        self.a = Fraction(a)
        if not self.a:
            raise ValueError("the twist a must be nonzero")
        if isinstance(star_unit, NFElement):
            self.star_unit = star_unit
        else:
            self.star_unit = field.element(star_unit)
        self._sigma_pows = self._compute_sigma_pows()
        self._estar = None
        self._estar_pows = None
        self._lambdas = None
        self._validate_involution()

    def _compute_sigma_pows(self):
        pows = [None] * self.n

        def apply_k(alpha, k):
            for _ in range(k):
                alpha = self.sigma(alpha)
            return alpha

        for k in range(self.n):
            pows[k] = (lambda k: (lambda alpha: apply_k(alpha, k)))(k)
        return pows

    def sigma_power(self, k: int):
        """sigma^k with k taken mod n."""
        return self._sigma_pows[k % self.n]

    # -- element constructors -------------------------------------------

    def element(self, parts) -> "CyclicElement":
        """From a length-n sequence of L-coefficients (e^k components)."""
        if len(parts) != self.n:
            raise ValueError(f"need {self.n} components")
        coeffs = []
        for p in parts:
            if isinstance(p, NFElement):
                coeffs.append(p)
            elif isinstance(p, (int, Fraction)):
                coeffs.append(self.field.rational(p))
            else:
                coeffs.append(self.field.element(p))
        return CyclicElement(self, coeffs)

    def zero(self) -> "CyclicElement":
        return self.element([0] * self.n)

    def one(self) -> "CyclicElement":
        return self.element([1] + [0] * (self.n - 1))

    def embed(self, l) -> "CyclicElement":
        """L (or Q) into the algebra as the grade-0 component."""
        parts = [l] + [0] * (self.n - 1)
        return self.element(parts)

    def e(self) -> "CyclicElement":
        parts = [0, 1] + [0] * (self.n - 2)
        return self.element(parts)

    def e_power(self, k: int) -> "CyclicElement":
        """e^k for any integer k; negative powers use e^-1 = a^-1 e^(n-1)."""
        k_mod = k % self.n
        wraps = (k - k_mod) // self.n
        parts = [0] * self.n
        parts[k_mod] = self.a ** wraps if wraps >= 0 else Fraction(1) / self.a ** (-wraps)
        return self.element(parts)

    # -- involution --------------------------------------------------------

    def estar(self) -> "CyclicElement":
        if self._estar is None:
            self._estar = self.embed(self.star_unit) * self.e_power(self.n - 1)
        return self._estar

    def estar_power(self, k: int) -> "CyclicElement":
        if self._estar_pows is None:
            pows = [self.one()]
            for _ in range(self.n):
                pows.append(pows[-1] * self.estar())
            self._estar_pows = pows
        return self._estar_pows[k]

    def star(self, x: "CyclicElement") -> "CyclicElement":
        """(sum e^k l_k)* = sum l_k (e*)^k; the involution fixes L pointwise."""
        out = self.zero()
        for k, l in enumerate(x.parts):
            out = out + self.embed(l) * self.estar_power(k)
        return out

    def lambdas(self) -> list:
        """The grading norms lambda_k = e*^k e^k as elements of L."""
        if self._lambdas is None:
            vals = []
            for k in range(self.n):
                prod = self.estar_power(k) * self.e_power(k)
                for j in range(1, self.n):
                    if not prod.parts[j].is_zero():
                        raise ValueError(f"lambda_{k} = e*^{k} e^{k} does not lie in L")
                vals.append(prod.parts[0])
            self._lambdas = vals
        return self._lambdas

    def _validate_involution(self):
        basis = [self.e_power(j) * self.embed(self.field.generator() ** u)
                 for j in range(self.n) for u in range(self.field.degree)]
        estar_n = self.estar_power(self.n)
        if estar_n != self.embed(self.a):
            raise ValueError("involution axiom (e*)^n = a fails for this star unit")
        for x in basis:
            if self.star(self.star(x)) != x:
                raise ValueError("involution axiom star(star(x)) = x fails on the basis")
        for x in basis:
            for y in basis:
                if self.star(x * y) != self.star(y) * self.star(x):
                    raise ValueError("involution axiom (xy)* = y* x* fails on the basis")
        self.lambdas()  # raises if some e*^k e^k leaves L

    # -- distinguished projections ------------------------------------------

    def p_to_field(self, x: "CyclicElement") -> NFElement:
        """Grade-0 component: the projection onto L defined by the grading."""
        return x.parts[0]

    def ntrace(self, x: "CyclicElement") -> Fraction:
        """Normalized trace down to Q: field trace after the grade-0 projection."""
        return ntrace(self.p_to_field(x))

    # -- matrix embedding ------------------------------------------------------

    def epsilon(self, x: "CyclicElement") -> list:
        """Embedding into M_n(L): l -> diag of sigma-twists, e -> the shift
        matrix with the twist a in the top-right corner; extended as
        epsilon(sum e^k l_k) = sum epsilon(e)^k epsilon(l_k)."""
        n = self.n
        zero = self.field.zero()
        out = [[zero for _ in range(n)] for _ in range(n)]
        for k, l in enumerate(x.parts):
            diag = self._eps_diag(l)
            term = mat_mul(self.field, self._eps_e_pow(k), diag)
            out = mat_add(out, term)
        return out

    def _eps_diag(self, l: NFElement) -> list:
        n = self.n
        zero = self.field.zero()
        out = [[zero for _ in range(n)] for _ in range(n)]
        img = l
        for i in range(n):
            out[i][i] = img
            img = self.sigma(img)
        return out

    def _eps_e(self) -> list:
        # ones below the diagonal, a in the (1, n) corner: the unique shift
        # orientation compatible with eps(l) eps(e) = eps(e) eps(sigma(l))
        # and with frak_p . epsilon = id
        n = self.n
        zero = self.field.zero()
        out = [[zero for _ in range(n)] for _ in range(n)]
        for i in range(1, n):
            out[i][i - 1] = self.field.one()
        out[0][n - 1] = self.field.rational(self.a)
        return out

    def _eps_e_pow(self, k: int) -> list:
        out = mat_identity(self.field, self.n)
        for _ in range(k):
            out = mat_mul(self.field, out, self._eps_e())
        return out

    def frak_p(self, m: list) -> "CyclicElement":
        """Averaging projection M_n(L) -> A: the matrix unit E_mk (x) l goes
        to e^(m-k) sigma^(1-k)(l) / n, extended additively."""
        out = self.zero()
        n = self.n
        for mi in range(n):
            for ki in range(n):
                l = m[mi][ki]
                if l.is_zero():
                    continue
                piece = self.e_power(mi - ki) * self.embed(self.sigma_power(-ki)(l))
                out = out + piece * Fraction(1, n)
        return out

    def tau(self, m: list) -> list:
        """Involution on M_n(L): X -> B^-1 X^T B with B = diag(lambda_k)."""
        lam = self.lambdas()
        n = self.n
        return [[lam[i].inv() * m[j][i] * lam[j] for j in range(n)] for i in range(n)]

    # -- positivity ------------------------------------------------------------

    def star_ordering_report(self) -> list:
        """One row per real embedding of L: (root interval, sign vector of
        the lambda_k, admits a star-ordering)."""
        if not totally_real(self.field):
            raise ValueError("L is not totally real: it carries no orderings")
        report = []
        for lo, hi in self.field.root_intervals():
            signs = [ratpoly.sign_at_root(l.coeffs, self.field.minpoly, lo, hi)
                     for l in self.lambdas()]
            report.append(((lo, hi), signs, all(s >= 0 for s in signs)))
        return report

    def star_orderings_exist(self) -> bool:
        """Whether some ordering of L is compatible with the involution:
        an embedding works exactly when every lambda_k lands >= 0 there."""
        return any(ok for _, _, ok in self.star_ordering_report())

    def __repr__(self):
        return (f"CyclicAlgebra(L=Q[x]/({ratpoly.trim(list(self.field.minpoly))}), "
                f"n={self.n}, a={self.a})")


class CyclicElement:
    """sum_k e^k l_k with l_k in L, stored as the length-n list of l_k."""

    __slots__ = ("algebra", "parts")

    def __init__(self, algebra: CyclicAlgebra, parts):
        self.algebra = algebra
        self.parts = list(parts)

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise ValueError("elements of different cyclic algebras")

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __eq__(self, other):
        if not isinstance(other, CyclicElement):
            return NotImplemented
        return self.algebra is other.algebra and self.parts == other.parts

    def __hash__(self):
        return hash((id(self.algebra), tuple(self.parts)))

    def __add__(self, other):
        self._check(other)
        return CyclicElement(self.algebra,
                             [p + q for p, q in zip(self.parts, other.parts)])

    def __neg__(self):
        return CyclicElement(self.algebra, [-p for p in self.parts])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        from .scalars import Scalar
        if isinstance(other, Scalar):
            other = other.to_fraction()  # only rational scalars act here
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return CyclicElement(self.algebra, [p * c for p in self.parts])
        if isinstance(other, NFElement):
            return self * self.algebra.embed(other)
        self._check(other)
        alg = self.algebra
        n = alg.n
        out = [alg.field.zero() for _ in range(n)]
        for j, l in enumerate(self.parts):
            if l.is_zero():
                continue
            for k, m in enumerate(other.parts):
                if m.is_zero():
                    continue
                # (e^j l)(e^k m) = e^(j+k) sigma^k(l) m, with e^n = a
                coeff = alg.sigma_power(k)(l) * m
                idx = j + k
                if idx >= n:
                    idx -= n
                    coeff = coeff * alg.a
                out[idx] = out[idx] + coeff
        return CyclicElement(alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, NFElement):
            return self.algebra.embed(other) * self
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported on elements")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def star(self) -> "CyclicElement":
        return self.algebra.star(self)

    def __repr__(self):
        terms = []
        for k, l in enumerate(self.parts):
            if l.is_zero():
                continue
            head = "1" if k == 0 else ("e" if k == 1 else f"e^{k}")
            terms.append(f"{head}*({l})")
        return "CyclicElement(" + (" + ".join(terms) if terms else "0") + ")"


def from_descriptor(data: dict) -> CyclicAlgebra:
    """Build an algebra from the JSON descriptor
    {"minpoly": "...", "sigma": "...", "n": 2, "a": "-1", "star_unit": "..."}
    with minpoly a polynomial in x and sigma/star_unit expressions in theta.
    """
    from . import exprs
    from .polyalg import PolyAlgebra
    from .scalars import parse_rational

    for key in ("minpoly", "sigma", "a", "star_unit"):
        if key not in data:
            raise ValueError(f"cyclic descriptor is missing {key!r}")
    x_line = PolyAlgebra(["x"])
    minpoly = exprs.parse_value(data["minpoly"], exprs.poly_context(x_line))
    field = NumberField(minpoly.rational_coeffs())
    ctx = exprs.nfield_context(field)
    sigma = field.automorphism(exprs.parse_value(data["sigma"], ctx))
    star_unit = exprs.parse_value(data["star_unit"], ctx)
    algebra = CyclicAlgebra(field, sigma, parse_rational(str(data["a"])), star_unit)
    if "n" in data and int(data["n"]) != algebra.n:
        raise ValueError(f"descriptor says n={data['n']} but sigma has order {algebra.n}")
    return algebra


# -- small exact matrix helpers over a number field ---------------------------

def mat_identity(field: NumberField, n: int) -> list:
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_add(a: list, b: list) -> list:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_mul(field: NumberField, a: list, b: list) -> list:
    n = len(a)
    m = len(b[0])
    inner = len(b)
    out = [[field.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for k in range(inner):
            if a[i][k].is_zero():
                continue
            for j in range(m):
                out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def mat_eq(a: list, b: list) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))
