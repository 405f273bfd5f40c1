"""Number fields Q[x]/(P): arithmetic, normalized trace, trace quadratic
forms, exact signatures, real-root counts, and ordering induction tests.

P is monic and squarefree; irreducibility is not checked (factoring over Q
is out of scope), so the computed root count refers to distinct real roots
of P.  Signatures are computed two independent ways: Descartes counts on
the characteristic polynomial, cross-checked by congruence elimination.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg, ratpoly


class NumberField:
    """Q[x]/(P) for monic squarefree P of degree >= 1."""

    def __init__(self, minpoly, name="theta"):
        p = ratpoly.poly(minpoly)
        if ratpoly.degree(p) < 1:
            raise ValueError("minimal polynomial must have degree >= 1")
        if ratpoly.lead(p) != 1:
            raise ValueError("minimal polynomial must be monic")
        if ratpoly.degree(ratpoly.gcd_poly(p, ratpoly.derivative(p))) > 0:
            raise ValueError("minimal polynomial must be squarefree")
        self.minpoly = p
        self.degree = ratpoly.degree(p)
        self.name = name
        self._root_intervals = None

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(tuple(self.minpoly))

    def __repr__(self):
        return f"NumberField(Q[x]/({ratpoly_str(self.minpoly, 'x')}))"

    # -- element constructors -------------------------------------------

    def element(self, coeffs) -> "NFElement":
        return NFElement(self, ratpoly.pmod(ratpoly.poly(coeffs), self.minpoly))

    def zero(self) -> "NFElement":
        return NFElement(self, [])

    def one(self) -> "NFElement":
        return self.element([1])

    def rational(self, c) -> "NFElement":
        return self.element([Fraction(c)])

    def generator(self) -> "NFElement":
        return self.element([0, 1])

    def automorphism(self, image) -> "FieldAutomorphism":
        return FieldAutomorphism(self, image)

    # -- field invariants ---------------------------------------------------

    def root_intervals(self):
        """Isolating intervals for the distinct real roots of P."""
        if self._root_intervals is None:
            self._root_intervals = ratpoly.isolate_real_roots(self.minpoly)
        return self._root_intervals

    def sturm_real_root_count(self) -> int:
        """Independent root count straight from the Sturm chain."""
        return ratpoly.count_real_roots(self.minpoly)


def ratpoly_str(p, var):
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        body = var if k == 1 else (f"{var}^{k}" if k else "")
        mag = abs(c)
        text = body if (mag == 1 and body) else (f"{mag}*{body}" if body else str(mag))
        if not parts:
            parts.append(text if c > 0 else f"-{text}")
        else:
            parts.append(f"+ {text}" if c > 0 else f"- {text}")
    return " ".join(parts)


class NFElement:
    """Residue class Q(theta), stored as a polynomial of degree < s."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = ratpoly.poly(coeffs)
        if ratpoly.degree(self.coeffs) >= field.degree:
            raise ValueError("element not reduced")

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("elements of different fields")

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return other

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        other = self._coerce(other)
        if not isinstance(other, NFElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return NFElement(self.field, ratpoly.add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, ratpoly.neg(self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        prod = ratpoly.mul(self.coeffs, other.coeffs)
        return NFElement(self.field, ratpoly.pmod(prod, self.field.minpoly))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inv(self) -> "NFElement":
        """Inverse via the extended Euclidean algorithm mod P.

        For squarefree reducible P a zero divisor has no inverse; that is
        reported rather than silently mishandled.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        # extended gcd of coeffs and minpoly
        r0, r1 = list(self.field.minpoly), list(self.coeffs)
        t0, t1 = [], [Fraction(1)]
        while r1:
            q, r = ratpoly.divmod_poly(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, ratpoly.sub(t0, ratpoly.mul(q, t1))
        if ratpoly.degree(r0) != 0:
            raise ZeroDivisionError("element is a zero divisor (P is reducible)")
        return NFElement(self.field,
                         ratpoly.pmod(ratpoly.scale(t0, 1 / r0[0]), self.field.minpoly))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inv()

    def to_fraction(self) -> Fraction:
        if ratpoly.degree(self.coeffs) > 0:
            raise ValueError("element is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __repr__(self):
        return f"NFElement({ratpoly_str(self.coeffs, self.field.name)})"

    def __str__(self):
        return ratpoly_str(self.coeffs, self.field.name)


class FieldAutomorphism:
    """Automorphism determined by the image of theta: theta -> g(theta)."""

    def __init__(self, field: NumberField, image):
        self.field = field
        if isinstance(image, NFElement):
            self.image = image
        else:
            self.image = field.element(image)
        check = ratpoly.pmod(ratpoly.compose(field.minpoly, self.image.coeffs),
                             field.minpoly)
        if check:
            raise ValueError("image polynomial does not map theta to a root of P")

    def __call__(self, alpha: NFElement) -> NFElement:
        if alpha.field != self.field:
            raise ValueError("element of a different field")
        out = self.field.zero()
        for k, c in enumerate(alpha.coeffs):
            out = out + self.image ** k * c
        return out

    def is_identity(self) -> bool:
        return self.image == self.field.generator()

    def order(self) -> int:
        """Order of the generated group, found by iteration (at most s)."""
        theta = self.field.generator()
        img = self.image
        for k in range(1, self.field.degree + 1):
            if img == theta:
                return k
            img = self(img)
        raise ValueError("automorphism order exceeds the field degree")


# -- trace machinery ---------------------------------------------------------

def ntrace(alpha: NFElement) -> Fraction:
    """Normalized trace: (1/s) tr of multiplication by alpha in the power basis."""
    field = alpha.field
    s = field.degree
    total = Fraction(0)
    theta = field.generator()
    col = alpha
    for i in range(s):
        coeffs = col.coeffs
        total += coeffs[i] if i < len(coeffs) else 0
        col = col * theta
    return total / s


def hermite_form(q: NFElement) -> list:
    """Trace form matrix M_ij = ntrace(q * theta^(i+j-2)), size s x s.

    Nondegenerate whenever q is nonzero in the field and P is squarefree.
    """
    if q.is_zero():
        raise ValueError("trace form requires a nonzero multiplier")
    field = q.field
    s = field.degree
    theta = field.generator()
    powers = [q]
    for _ in range(2 * s - 2):
        powers.append(powers[-1] * theta)
    traces = [ntrace(p) for p in powers]
    return [[traces[i + j] for j in range(s)] for i in range(s)]


def signature(m) -> tuple[int, int, int]:
    """(n+, n-, n0) of a symmetric rational matrix, exactly.

    Primary route: Descartes counts on the characteristic polynomial;
    cross-checked against pivoted congruence elimination.
    """
    primary = linalg.inertia_from_charpoly(m)
    check = linalg.hermitian_inertia(m)
    if primary != check:
        raise AssertionError(f"signature routes disagree: {primary} vs {check}")
    return primary


def real_root_count(field: NumberField) -> int:
    """Number of distinct real roots of P: the signature of the trace form."""
    npos, nneg, _ = signature(hermite_form(field.one()))
    return npos - nneg


def is_inducible(field: NumberField) -> bool:
    """Whether the rational ordering extends through the normalized trace:
    true exactly when every root of P is real."""
    return real_root_count(field) == field.degree


def totally_real(field: NumberField) -> bool:
    return is_inducible(field)


def in_induced_ordering(q: NFElement) -> bool:
    """Membership of q in the ordering induced from Q via the trace form:
    the signature of the q-twisted trace form must be (s, 0, 0),
    equivalently q is positive at every (real) root of P."""
    field = q.field
    if not is_inducible(field):
        raise ValueError("base ordering is not inducible (field is not totally real)")
    if q.is_zero():
        raise ValueError("membership of zero is not decided by the trace form")
    npos, nneg, nzero = signature(hermite_form(q))
    return (npos, nneg, nzero) == (field.degree, 0, 0)


def root_signs(q: NFElement) -> list:
    """Sign of q at every real root of P, ordered by the root; this is the
    root-isolation route, independent of the trace-form signature."""
    field = q.field
    return [ratpoly.sign_at_root(q.coeffs, field.minpoly, lo, hi)
            for lo, hi in field.root_intervals()]


def galois_average(alpha: NFElement, sigma: FieldAutomorphism) -> NFElement:
    """Average of alpha over the cyclic group generated by sigma."""
    if alpha.field != sigma.field:
        raise ValueError("element and automorphism live in different fields")
    n = sigma.order()
    total = alpha.field.zero()
    current = alpha
    for _ in range(n):
        total = total + current
        current = sigma(current)
    return total * Fraction(1, n)
