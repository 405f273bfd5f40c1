"""Dense univariate polynomials over Q: arithmetic, Sturm sequences,
real-root counting and isolation, and exact nonnegativity deciders.

A polynomial is a list of Fractions in ascending degree with no trailing
zeros; [] is the zero polynomial.  These are the workhorse routines behind
the commutative positivity decisions and the number-field signature code.
"""

from __future__ import annotations

from fractions import Fraction

Poly = list  # list[Fraction], ascending coefficients


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly(coeffs) -> Poly:
    return trim([Fraction(c) for c in coeffs])


def degree(p) -> int:
    return len(p) - 1  # -1 for the zero polynomial


def is_zero(p) -> bool:
    return not p


def lead(p) -> Fraction:
    if not p:
        raise ValueError("zero polynomial has no leading coefficient")
    return p[-1]


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                 for i in range(n)])


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    c = Fraction(c)
    if not c:
        return []
    return [a * c for a in p]


def monomial(k: int, c=1) -> Poly:
    return trim([Fraction(0)] * k + [Fraction(c)])


def divmod_poly(p, q):
    """Quotient and remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq, lq = degree(q), lead(q)
    while r and degree(r) >= dq:
        shift = degree(r) - dq
        c = r[-1] / lq
        quot[shift] = c
        for i in range(len(q)):
            r[shift + i] -= c * q[i]
        trim(r)
    return trim(quot), r


def pmod(p, q):
    return divmod_poly(p, q)[1]


def gcd_poly(p, q):
    """Monic gcd."""
    a, b = list(p), list(q)
    while b:
        a, b = b, pmod(a, b)
    if not a:
        return []
    return scale(a, 1 / lead(a))


def derivative(p):
    return trim([p[i] * i for i in range(1, len(p))])


def eval_poly(p, x):
    x = Fraction(x)
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def compose(p, q):
    """p(q(t))."""
    out = []
    for c in reversed(p):
        out = add(mul(out, q), [c] if c else [])
    return out


def shift(p, c):
    """p(t + c)."""
    return compose(p, [Fraction(c), Fraction(1)])


def squarefree_part(p):
    if degree(p) <= 0:
        return poly([1]) if p else []
    g = gcd_poly(p, derivative(p))
    q, _ = divmod_poly(p, g)
    return scale(q, 1 / lead(q))


def yun_decomposition(p):
    """Yun's squarefree decomposition: list of (a_i, i) with p ~ prod a_i^i,
    the a_i monic squarefree and pairwise coprime.  The leading coefficient
    of p is dropped."""
    if degree(p) <= 0:
        return []
    p = scale(p, 1 / lead(p))
    dp = derivative(p)
    g = gcd_poly(p, dp)
    if degree(g) == 0:
        return [(p, 1)]
    w, _ = divmod_poly(p, g)
    y, _ = divmod_poly(dp, g)
    z = sub(y, derivative(w))
    out = []
    i = 1
    while True:
        if not z:
            if degree(w) > 0:
                out.append((w, i))
            break
        a = gcd_poly(w, z)
        if degree(a) > 0:
            out.append((a, i))
        w, _ = divmod_poly(w, a)
        y, _ = divmod_poly(z, a)
        z = sub(y, derivative(w))
        i += 1
    return out


def cauchy_bound(p) -> Fraction:
    """All real roots of p lie in (-B, B) for B = 1 + max|c_i| / |lead|."""
    if degree(p) < 1:
        return Fraction(1)
    lc = abs(lead(p))
    m = max((abs(c) for c in p[:-1]), default=Fraction(0))
    return 1 + m / lc


def sturm_chain(p):
    chain = [list(p), derivative(p)]
    while chain[-1]:
        rem = neg(pmod(chain[-2], chain[-1]))
        if not rem:
            break
        chain.append(rem)
    return [c for c in chain if c]


def _variations(values) -> int:
    signs = [(v > 0) - (v < 0) for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at(chain, x) -> int:
    return _variations([eval_poly(c, x) for c in chain])


def _variations_at_inf(chain, positive: bool) -> int:
    vals = []
    for c in chain:
        s = lead(c)
        if not positive and degree(c) % 2 == 1:
            s = -s
        vals.append(s)
    return _variations(vals)


def count_real_roots(p, lo=None, hi=None) -> int:
    """Distinct real roots of p in (lo, hi]; None means the infinite end.

    p need not be squarefree; the count is taken on its squarefree part.
    """
    if not p:
        raise ValueError("root count of the zero polynomial")
    sf = squarefree_part(p)
    if degree(sf) < 1:
        return 0
    chain = sturm_chain(sf)
    va = _variations_at(chain, lo) if lo is not None else _variations_at_inf(chain, False)
    vb = _variations_at(chain, hi) if hi is not None else _variations_at_inf(chain, True)
    return va - vb


def isolate_real_roots(p):
    """Disjoint rational intervals (lo, hi], one per distinct real root."""
    sf = squarefree_part(p)
    if degree(sf) < 1:
        return []
    chain = sturm_chain(sf)
    bound = cauchy_bound(sf)

    def count(lo, hi):
        return _variations_at(chain, lo) - _variations_at(chain, hi)

    out = []
    stack = [(-bound, bound, count(-bound, bound))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        nl = count(lo, mid)
        stack.append((lo, mid, nl))
        stack.append((mid, hi, n - nl))
    out.sort()
    return out


def refine_root(p, lo, hi, predicate):
    """Bisect the isolating interval (lo, hi] of the unique root of the
    squarefree p until predicate(lo, hi) holds; returns the interval."""
    chain = sturm_chain(p)
    while not predicate(lo, hi):
        mid = (lo + hi) / 2
        if _variations_at(chain, lo) - _variations_at(chain, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


def sign_at_root(q, p, lo, hi) -> int:
    """Exact sign of q at the unique root of squarefree p in (lo, hi]."""
    if not q:
        return 0
    g = gcd_poly(p, q)
    if degree(g) >= 1 and count_real_roots(g, lo, hi) >= 1:
        return 0  # the root of p here is also a root of q
    qsf = squarefree_part(q)
    psf = squarefree_part(p)

    def clear(a, b):
        return count_real_roots(qsf, a, b) == 0 and eval_poly(q, b) != 0

    lo, hi = refine_root(psf, lo, hi, clear)
    val = eval_poly(q, hi)
    return (val > 0) - (val < 0)


# -- nonnegativity deciders ----------------------------------------------

def nonneg_on_reals(p) -> bool:
    """Exact decision of p(x) >= 0 for all real x."""
    if not p:
        return True
    if degree(p) == 0:
        return p[0] >= 0
    if lead(p) < 0 or degree(p) % 2 == 1:
        return False
    for factor, mult in yun_decomposition(p):
        if mult % 2 == 1 and count_real_roots(factor) > 0:
            return False
    return True


def nonneg_on_halfline(p) -> bool:
    """Exact decision of p(x) >= 0 for all x >= 0."""
    if not p:
        return True
    if eval_poly(p, 0) < 0:
        return False
    if degree(p) == 0:
        return p[0] >= 0
    if lead(p) < 0:
        return False
    bound = cauchy_bound(p)
    for factor, mult in yun_decomposition(p):
        if mult % 2 == 1 and count_real_roots(factor, 0, bound) > 0:
            return False
    return True


def nonneg_on_naturals(p) -> bool:
    """Exact decision of p(k) >= 0 for all integers k >= 0.

    Leading coefficient must be positive; values are then checked up to the
    Cauchy root bound, beyond which the sign equals the sign of the lead.
    """
    if not p:
        return True
    if degree(p) == 0:
        return p[0] >= 0
    if lead(p) < 0:
        return False
    horizon = int(cauchy_bound(p))
    return all(eval_poly(p, k) >= 0 for k in range(horizon + 1))
