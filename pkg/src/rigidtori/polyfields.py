"""Standalone number fields Q[t]/f for the polarization-existence decision.

Only what that decision needs: certified root enclosures, the pairing of
complex-conjugate roots, and the exact rational subspace of elements that
are purely imaginary under every embedding.  The latter is computed per
conjugate pair through the real subfield Q(theta), theta = alpha + conj(alpha):
the quadratic t^2 - theta t + p divides f, p = alpha * conj(alpha) lies in
Q(theta), and the power sums s_j = alpha^j + conj(alpha)^j obey
s_j = theta s_(j-1) - p s_(j-2), so the condition "sum x_j s_j = 0" becomes
deg(theta) exact rational linear equations on x.  No splitting fields, no
numerics in the kernel computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import Poly, Rational, factor_list, resultant, symbols

from . import linalg
from .cyclotomic import _poly_xgcd_mod

__all__ = [
    "PolynomialField",
    "ReduciblePolynomial",
    "RealEmbeddingPresent",
    "DEGREE_CAP",
]

DEGREE_CAP = 16

_T, _U = symbols("t u")


class ReduciblePolynomial(ValueError):
    pass


class RealEmbeddingPresent(ValueError):
    pass


# -- arithmetic in Q[u]/g ----------------------------------------------------


def _p_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _p_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _p_trim(out)


def _p_scale(a, c):
    return _p_trim([x * c for x in a])


def _p_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _p_trim(out)


def _p_rem(a, mod):
    a = list(a)
    dm = len(mod) - 1
    lead = mod[-1]
    while len(a) - 1 >= dm and a:
        f = a[-1] / lead
        off = len(a) - 1 - dm
        for i in range(dm + 1):
            a[off + i] -= f * mod[i]
        _p_trim(a)
    return a


class QuotientField:
    """Q[u]/g for a monic irreducible g, coefficients as Fraction lists."""

    def __init__(self, modulus):
        self.modulus = [Fraction(c) for c in modulus]
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.degree = len(self.modulus) - 1

    def elem(self, coeffs):
        return QElem(self, _p_rem([Fraction(c) for c in coeffs], self.modulus))

    def zero(self):
        return QElem(self, [])

    def one(self):
        return self.elem([1])

    def gen(self):
        return self.elem([0, 1])


@dataclass(frozen=True)
class QElem:
    field: QuotientField
    coeffs: list

    def __add__(self, other):
        return QElem(self.field, _p_add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return QElem(self.field, _p_add(self.coeffs, _p_scale(other.coeffs, -1)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QElem(self.field, _p_scale(self.coeffs, Fraction(other)))
        return QElem(self.field,
                     _p_rem(_p_mul(self.coeffs, other.coeffs), self.field.modulus))

    __rmul__ = __mul__

    def is_zero(self):
        return not self.coeffs

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError
        g, uco = _poly_xgcd_mod(
            list(self.coeffs) + [Fraction(0)] * (self.field.degree - len(self.coeffs)),
            self.field.modulus)
        inv = _p_scale(list(uco), Fraction(1) / g)
        return QElem(self.field, _p_rem(inv, self.field.modulus))

    def coefficient_vector(self):
        out = list(self.coeffs) + [Fraction(0)] * (self.field.degree - len(self.coeffs))
        return out


def _qpoly_gcd(a, b):
    """Monic gcd of polynomials over a QuotientField (coefficient lists of
    QElem, low degree first)."""

    def trim(p):
        while p and p[-1].is_zero():
            p.pop()
        return p

    a, b = trim(list(a)), trim(list(b))
    while b:
        # a mod b
        inv_lead = b[-1].inverse()
        r = list(a)
        while len(r) >= len(b):
            f = r[-1] * inv_lead
            off = len(r) - len(b)
            for i in range(len(b)):
                r[off + i] = r[off + i] - f * b[i]
            trim(r)
            if not r:
                break
        a, b = b, r
    if a:
        inv = a[-1].inverse()
        a = [x * inv for x in a]
    return a


# -- the field ---------------------------------------------------------------


@dataclass(frozen=True)
class ConjugatePairData:
    root_indices: tuple        # (i, ibar)
    theta_minpoly: tuple       # Fraction coefficients, low first, monic
    p_modulus: tuple           # monic polynomial over Q(theta) vanishing at
                               # p = alpha*conj(alpha); linear in the generic
                               # case, of higher degree when several
                               # conjugate pairs share the same theta


class PolynomialField:
    """Q[t]/f for a monic irreducible integer polynomial with no real roots."""

    def __init__(self, coefficients):
        coeffs = [int(c) for c in coefficients]
        if not coeffs or coeffs[-1] != 1:
            raise ReduciblePolynomial("polynomial must be monic with integer "
                                      "coefficients (low degree first)")
        self.coeffs = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if self.degree < 1 or self.degree > DEGREE_CAP:
            raise ReduciblePolynomial(
                f"degree must be between 1 and {DEGREE_CAP}")
        self._poly = Poly([c for c in reversed(coeffs)], _T)
        factors = factor_list(self._poly)[1]
        if len(factors) != 1 or factors[0][1] != 1:
            raise ReduciblePolynomial("polynomial is reducible over Q")
        self._roots = self._poly.all_roots(radicals=False)
        n_real = sum(1 for r in self._roots if r.is_real)
        if n_real:
            raise RealEmbeddingPresent(
                f"polynomial has {n_real} real roots; field is not totally "
                "imaginary")
        self.pairs = self._pair_roots()
        self._pair_data = None
        self._im_basis = None

    # -- certified enclosures ---------------------------------------------

    def root_box(self, index: int, prec_bits: int = 64):
        """Certified rational box (re, im, radius) around root `index`."""
        eps = Fraction(1, 2 ** prec_bits)
        val = self._roots[index].eval_rational(dx=eps, dy=eps)
        re, im = val.as_real_imag()
        return (Fraction(Rational(re)), Fraction(Rational(im)), eps)

    def _pair_roots(self):
        """Certified pairing of complex-conjugate roots by box separation."""
        n = self.degree
        prec = 32
        while prec <= 4096:
            boxes = [self.root_box(i, prec) for i in range(n)]
            # boxes must be pairwise separated from each other's conjugates
            assign = {}
            ok = True
            for i in range(n):
                re_i, im_i, r_i = boxes[i]
                matches = [
                    j for j in range(n)
                    if abs(boxes[j][0] - re_i) <= boxes[j][2] + r_i
                    and abs(boxes[j][1] + im_i) <= boxes[j][2] + r_i
                ]
                if len(matches) != 1:
                    ok = False
                    break
                assign[i] = matches[0]
            if ok and all(assign[assign[i]] == i and assign[i] != i
                          for i in range(n)):
                pairs = []
                seen = set()
                for i in range(n):
                    if i not in seen:
                        pairs.append((i, assign[i]))
                        seen |= {i, assign[i]}
                return tuple(pairs)
            prec *= 2
        raise AssertionError("failed to certify the conjugate pairing")

    def conjugate_index(self, i: int) -> int:
        for a, b in self.pairs:
            if i == a:
                return b
            if i == b:
                return a
        raise IndexError(i)

    # -- evaluation --------------------------------------------------------

    def evaluate_box(self, coeffs, root_index: int, prec_bits: int = 64):
        """Certified (re, im, radius) enclosure of x(alpha_i) for rational x,
        by interval Horner with exact rational interval endpoints."""
        re_c, im_c, rad = self.root_box(root_index, prec_bits)
        re_lo, re_hi = re_c - rad, re_c + rad
        im_lo, im_hi = im_c - rad, im_c + rad
        # rational interval arithmetic, boxes as (lo, hi) per component
        acc = (Fraction(0), Fraction(0), Fraction(0), Fraction(0))

        def interval_mul(a_lo, a_hi, b_lo, b_hi):
            vals = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
            return min(vals), max(vals)

        for c in reversed([Fraction(q) for q in coeffs]):
            # acc = acc * alpha + c
            rl, rh, il, ih = acc
            p1l, p1h = interval_mul(rl, rh, re_lo, re_hi)
            p2l, p2h = interval_mul(il, ih, im_lo, im_hi)
            new_rl, new_rh = p1l - p2h, p1h - p2l
            p3l, p3h = interval_mul(rl, rh, im_lo, im_hi)
            p4l, p4h = interval_mul(il, ih, re_lo, re_hi)
            new_il, new_ih = p3l + p4l, p3h + p4h
            acc = (new_rl + c, new_rh + c, new_il, new_ih)
        rl, rh, il, ih = acc
        mid_re, mid_im = (rl + rh) / 2, (il + ih) / 2
        radius = max(rh - mid_re, ih - mid_im)
        return mid_re, mid_im, radius

    def sign_imag(self, coeffs, root_index: int) -> int:
        """Exact sign of Im(x(alpha_i)) for x in the imaginary subspace:
        nonzero elements there have nonzero imaginary part everywhere."""
        if all(Fraction(q) == 0 for q in coeffs):
            return 0
        prec = 64
        while prec <= 65536:
            _, im, rad = self.evaluate_box(coeffs, root_index, prec)
            if im - rad > 0:
                return 1
            if im + rad < 0:
                return -1
            prec *= 2
        raise AssertionError("sign certification stalled; element may not be "
                             "purely imaginary")

    # -- the purely-imaginary subspace --------------------------------------

    def pair_data(self):
        if self._pair_data is not None:
            return self._pair_data
        sum_res = Poly(
            resultant(self._poly.as_expr().subs(_T, _U - _T),
                      self._poly.as_expr(), _T), _U)
        factors = [Poly(fac, _U) for fac, _ in factor_list(sum_res)[1]]
        data = []
        for (i, ibar) in self.pairs:
            g = self._identify_factor(factors, i, ibar)
            p_mod = self._p_modulus(g)
            data.append(ConjugatePairData(
                root_indices=(i, ibar),
                theta_minpoly=tuple(g),
                p_modulus=tuple(tuple(c.coefficient_vector()) for c in p_mod)))
        self._pair_data = tuple(data)
        return self._pair_data

    def _theta_box(self, i, ibar, prec):
        re, _, rad = self.root_box(i, prec)
        return 2 * re, 2 * rad  # theta = alpha + conj(alpha) = 2 Re alpha

    def _identify_factor(self, factors, i, ibar):
        """The irreducible factor vanishing at theta = 2 Re(alpha_i)."""
        prec = 64
        while prec <= 4096:
            mid, rad = self._theta_box(i, ibar, prec)
            alive = []
            for fac in factors:
                coeffs = [Fraction(Rational(c)) for c in reversed(fac.all_coeffs())]
                lo, hi = _real_interval_eval(coeffs, mid - rad, mid + rad)
                if lo <= 0 <= hi:
                    alive.append(fac)
            if len(alive) == 1:
                fac = alive[0]
                return [Fraction(Rational(c)) for c in reversed(fac.all_coeffs())]
            prec *= 2
        raise AssertionError("could not isolate the minimal polynomial of theta")

    def _p_modulus(self, g):
        """A monic polynomial over Q(theta) with p = alpha * conj(alpha)
        among its roots: the gcd of the remainder coefficients of
        f mod (t^2 - theta t + p).  Degree one generically; higher when
        distinct conjugate pairs share theta (e.g. even polynomials, where
        both pairs have theta = 0)."""
        qf = QuotientField(g)
        # remainder coefficients: divide f by t^2 - theta t + p symbolically.
        # Track r(t) = r1 * t + r0 with coefficients in Q(theta)[p].
        # Do the division with p symbolic: coefficients are polynomials in p
        # over Q(theta); represent as lists of QElem (low p-degree first).
        n = self.degree
        # current polynomial in t: coefficients c[k] in (Q(theta))[p]
        c = [[qf.elem([q])] for q in self.coeffs]  # c[k] = list of QElem
        theta = qf.gen()

        def padd(a, b):
            out = [qf.zero()] * max(len(a), len(b))
            for idx, x in enumerate(a):
                out[idx] = out[idx] + x
            for idx, x in enumerate(b):
                out[idx] = out[idx] + x
            return out

        def pscale_qelem(a, s):
            return [x * s for x in a]

        def pshift(a):  # multiply by p
            return [qf.zero()] + list(a)

        for k in range(n, 1, -1):
            lead = c[k]
            if not lead:
                continue
            # subtract lead * t^(k-2) * (t^2 - theta t + p)
            c[k] = []
            c[k - 1] = padd(c[k - 1], pscale_qelem(lead, theta))
            c[k - 2] = padd(c[k - 2], pscale_qelem(pshift(lead), Fraction(-1)))
        b0, b1 = c[0], c[1]
        gcd = _qpoly_gcd(b1, b0) if any(not x.is_zero() for x in b1) else _monic(b0)
        if len(gcd) < 2:
            raise AssertionError("remainder gcd degenerated; no p value")
        return gcd

    def imaginary_subspace(self):
        """Exact rational basis of {x in F : every embedding of x is purely
        imaginary}, as coefficient vectors in the power basis.

        Per conjugate pair the condition "sum_j x_j (alpha^j + conj(alpha)^j)
        vanishes" is expanded over the tower (Q[u]/g)[p]/G; imposing it on
        the whole tower is equivalent for rational x because every point of
        the (g, G) variety is a Galois conjugate of a genuine pair point."""
        if self._im_basis is not None:
            return self._im_basis
        n = self.degree
        rows = []
        seen_moduli = set()
        for pd in self.pair_data():
            key = (pd.theta_minpoly, pd.p_modulus)
            if key in seen_moduli:
                continue
            seen_moduli.add(key)
            qf = QuotientField(list(pd.theta_minpoly))
            theta = qf.gen()
            p_mod = [qf.elem(list(c)) for c in pd.p_modulus]
            p_deg = len(p_mod) - 1

            def p_reduce(vec):
                # vec: list of QElem, coefficients of powers of p
                out = list(vec)
                while len(out) > p_deg:
                    lead = out.pop()
                    if lead.is_zero():
                        continue
                    off = len(out) - p_deg
                    for t in range(p_deg):
                        out[off + t] = out[off + t] - lead * p_mod[t]
                return out + [qf.zero()] * (p_deg - len(out))

            def theta_mul(vec):
                return [theta * x for x in vec]

            def p_mul(vec):
                return p_reduce([qf.zero()] + list(vec))

            s = [p_reduce([qf.elem([2])]), p_reduce([theta])]
            while len(s) < n:
                prev, prev2 = s[-1], s[-2]
                term = [a - b for a, b in zip(theta_mul(prev), p_mul(prev2))]
                s.append(p_reduce(term))
            # each (p-power, theta-power) coordinate gives one rational row
            for p_pos in range(p_deg):
                for coeff_pos in range(qf.degree):
                    row = [s[j][p_pos].coefficient_vector()[coeff_pos]
                           for j in range(n)]
                    rows.append(row)
        basis = linalg.nullspace(rows) if rows else []
        cleaned = []
        for vec in linalg.row_space_basis(basis) if basis else []:
            den = 1
            for x in vec:
                den = den * x.denominator // _gcd_int(den, x.denominator)
            ints = [int(x * den) for x in vec]
            g = 0
            for x in ints:
                g = _gcd_int(g, x)
            cleaned.append(tuple(Fraction(x, g if g else 1) for x in ints))
        self._im_basis = tuple(cleaned)
        return self._im_basis

    def element_is_purely_imaginary(self, coeffs) -> bool:
        """Independent exact membership test: the characteristic polynomial
        of multiplication by x must be even/odd with chi(it) real-rooted."""
        charpoly = self._multiplication_charpoly(coeffs)
        n = len(charpoly) - 1
        # all roots purely imaginary => coefficients vanish in alternating
        # positions: chi(t) = +/- chi(-t)
        even_ok = all(charpoly[k] == 0 for k in range(1, n + 1, 2))
        odd_ok = all(charpoly[k] == 0 for k in range(0, n + 1, 2))
        if not (even_ok or odd_ok):
            return False
        # substitute t -> i t and check all roots real via Sturm
        sub = []
        for k, c in enumerate(charpoly):
            # i^k cycle 1, i, -1, -i; drop the overall i-multiple for odd case
            sign = (1, 1, -1, -1)[k % 4]
            sub.append(c * sign)
        poly = Poly([Rational(q.numerator, q.denominator)
                     for q in reversed(sub)], _T)
        if poly.degree() <= 0:
            return True
        square_free = poly.div(poly.gcd(poly.diff(_T)))[0]
        return square_free.count_roots() == square_free.degree()

    def _multiplication_charpoly(self, coeffs):
        n = self.degree
        mod = [Fraction(c) for c in self.coeffs]
        cols = []
        for j in range(n):
            vec = [Fraction(0)] * j + [Fraction(q) for q in coeffs]
            vec = _p_rem(vec, mod)
            vec += [Fraction(0)] * (n - len(vec))
            cols.append(vec)
        mat = [[cols[j][i] for j in range(n)] for i in range(n)]
        return _charpoly(mat)


def _monic(poly_list):
    trimmed = list(poly_list)
    while trimmed and trimmed[-1].is_zero():
        trimmed.pop()
    if not trimmed:
        return []
    inv = trimmed[-1].inverse()
    return [x * inv for x in trimmed]


def _real_interval_eval(coeffs, lo, hi):
    """Exact rational interval evaluation of a real polynomial on [lo, hi]."""
    acc_lo, acc_hi = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        vals = (acc_lo * lo, acc_lo * hi, acc_hi * lo, acc_hi * hi)
        acc_lo, acc_hi = min(vals) + c, max(vals) + c
    return acc_lo, acc_hi


def _charpoly(mat):
    """Characteristic polynomial by the Faddeev-LeVerrier recurrence."""
    n = len(mat)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M = A*M + c*I ; c = -tr(A*M)/k
        am = linalg.mat_mul(mat, m)
        for i in range(n):
            am[i][i] += c
        m = am
        prod = linalg.mat_mul(mat, m)
        c = -sum(prod[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return coeffs


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a
