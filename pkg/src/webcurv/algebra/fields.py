"""Rationals, single-extension number fields and their elements."""

from fractions import Fraction
from math import gcd

import flint
import mpmath

Rational = Fraction


def as_rational(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, flint.fmpq):
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, flint.fmpz):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot read {value!r} as a rational")


def _fmpq(r):
    r = as_rational(r)
    return flint.fmpq(r.numerator, r.denominator)


class NumberField:
    """ℚ(α) presented by the monic minimal polynomial of α.

    ``minimal_polynomial`` lists coefficients from the constant term up.
    Irreducibility is the caller's responsibility except for the shipped
    presets, which are checked on construction.
    """

    def __init__(self, minimal_polynomial, label, embedding=None, check=False):
        coeffs = [as_rational(c) for c in minimal_polynomial]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2 or coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minimal_polynomial = tuple(coeffs)
        self.label = label
        self.degree = len(coeffs) - 1
        self._m = flint.fmpq_poly([_fmpq(c) for c in coeffs])
        if check:
            factors = self._m.factor()[1]
            if len(factors) != 1 or factors[0][1] != 1:
                raise ValueError(f"{label}: minimal polynomial is reducible")
        self._embedding = embedding
        self.ctx = flint.fmpq_mpoly_ctx.get(("x", "y", "t"), "lex")
        self._mt = self.ctx.from_dict(
            {(0, 0, k): _fmpq(c) for k, c in enumerate(coeffs) if c}
        )

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.minimal_polynomial == self.minimal_polynomial

    def __hash__(self):
        return hash(self.minimal_polynomial)

    def __repr__(self):
        return f"NumberField({self.label})"

    def __call__(self, value):
        return self.coerce(value)

    def coerce(self, value):
        if isinstance(value, FieldScalar):
            if value.field == self:
                return value
            if value.field.degree == 1:
                return FieldScalar(self, value.coords[0])
            raise ValueError(f"field mismatch: {value.field.label} vs {self.label}")
        return FieldScalar(self, as_rational(value))

    def gen(self):
        if self.degree == 1:
            return FieldScalar(self, -self.minimal_polynomial[0])
        return FieldScalar._raw(self, flint.fmpq_poly([0, 1]))

    def zero(self):
        return FieldScalar(self, 0)

    def one(self):
        return FieldScalar(self, 1)

    def element(self, coords):
        return FieldScalar._raw(self, flint.fmpq_poly([_fmpq(c) for c in coords]) % self._m)

    def embedding(self, dps=40):
        """Complex value of α used for every numeric evaluation."""
        with mpmath.workdps(dps):
            if self._embedding is not None:
                return mpmath.mpc(self._embedding(dps))
            roots = mpmath.polyroots([mpmath.mpf(c.numerator) / c.denominator
                                      for c in reversed(self.minimal_polynomial)],
                                     maxsteps=200, extraprec=2 * dps)
            roots = sorted(roots, key=lambda z: (-mpmath.im(z), -mpmath.re(z)))
            return mpmath.mpc(roots[0])

    def has_real_embedding(self):
        return self.degree == 1 or mpmath.im(self.embedding(30)) == 0


class FieldScalar:
    """Element of a NumberField, stored reduced in the power basis."""

    __slots__ = ("field", "_p")

    def __init__(self, field, value=0):
        self.field = field
        self._p = flint.fmpq_poly([_fmpq(value)])

    @classmethod
    def _raw(cls, field, poly):
        obj = cls.__new__(cls)
        obj.field = field
        obj._p = poly
        return obj

    @property
    def coords(self):
        cs = [as_rational(c) for c in self._p.coeffs()]
        return cs + [Fraction(0)] * (self.field.degree - len(cs))

    def _other(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                if other.field.degree == 1:
                    return other._p
                if self.field.degree == 1:
                    raise _Promote(other.field)
                raise ValueError(f"field mismatch: {self.field.label} vs {other.field.label}")
            return other._p
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return flint.fmpq_poly([_fmpq(other)])
        return NotImplemented

    def _wrap(self, poly):
        return FieldScalar._raw(self.field, poly)

    def __add__(self, other):
        try:
            o = self._other(other)
        except _Promote as p:
            return p.field.coerce(self) + other
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self._p + o)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._p)

    def __sub__(self, other):
        try:
            o = self._other(other)
        except _Promote as p:
            return p.field.coerce(self) - other
        if o is NotImplemented:
            return NotImplemented
        return self._wrap(self._p - o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._other(other)
        except _Promote as p:
            return p.field.coerce(self) * other
        if o is NotImplemented:
            return NotImplemented
        return self._wrap((self._p * o) % self.field._m)

    __rmul__ = __mul__

    def inverse(self):
        if self._p.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        if self.field.degree == 1:
            return self._wrap(flint.fmpq_poly([1 / self._p.coeffs()[0]]))
        g, s, _ = self._p.xgcd(self.field._m)
        # g is a nonzero constant since the minimal polynomial is irreducible
        return self._wrap((s / g.coeffs()[0]) % self.field._m)

    def __truediv__(self, other):
        if isinstance(other, FieldScalar):
            if other.field.degree > 1 and self.field.degree == 1:
                return other.field.coerce(self) * other.inverse()
            return self * other.inverse()
        return self * _inv_rational(other)

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field and not (other.field.degree == 1 or self.field.degree == 1):
                return False
            return self._p == other._p
        if isinstance(other, (int, Fraction)):
            return self._p == flint.fmpq_poly([_fmpq(other)])
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coords[: max(1, self._p.length())]))

    def is_zero(self):
        return self._p.is_zero()

    def is_rational(self):
        return self._p.degree() <= 0

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def sign_key(self):
        """+1 or -1 from the first nonzero power-basis coordinate."""
        for c in self.coords:
            if c:
                return 1 if c > 0 else -1
        return 0

    def to_complex(self, dps=40):
        with mpmath.workdps(dps):
            if self.field.degree == 1:
                c = self.coords[0]
                return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
            a = self.field.embedding(dps)
            total = mpmath.mpc(0)
            for k, c in enumerate(self.coords):
                if c:
                    total += mpmath.mpf(c.numerator) / c.denominator * a ** k
            return total

    def __complex__(self):
        return complex(self.to_complex(20))

    def __repr__(self):
        return f"FieldScalar({self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def _inv_rational(value):
    r = as_rational(value)
    if r == 0:
        raise ZeroDivisionError("division by zero")
    return 1 / r


class _Promote(Exception):
    def __init__(self, field):
        self.field = field


def _cyclotomic_coeffs(k):
    p = flint.fmpz_poly.cyclotomic(k)
    return [int(c) for c in p.coeffs()]


QQ = NumberField([0, 1], "Q")
QQ_XI3 = NumberField([1, 1, 1], "Q(xi3)",
                     embedding=lambda dps: mpmath.expjpi(mpmath.mpf(2) / 3), check=True)
QQ_I = NumberField([1, 0, 1], "Q(i)", embedding=lambda dps: mpmath.mpc(0, 1), check=True)

_CYCLO = {}


def cyclotomic_field(k):
    """ℚ(ξ_k) as a preset when possible; ξ₆ lives in ℚ(ξ₃)."""
    if k in (1, 2):
        return QQ
    if k in (3, 6):
        return QQ_XI3
    if k == 4:
        return QQ_I
    if k not in _CYCLO:
        _CYCLO[k] = NumberField(_cyclotomic_coeffs(k), f"Q(xi{k})",
                                embedding=lambda dps, k=k: mpmath.expjpi(mpmath.mpf(2) / k),
                                check=True)
    return _CYCLO[k]


def root_of_unity(k):
    """ξ_k = exp(2πi/k) inside cyclotomic_field(k)."""
    field = cyclotomic_field(k)
    if k == 1:
        return field.one()
    if k == 2:
        return field(-1)
    if k == 6:
        return field.one() + field.gen()
    return field.gen()


def quadratic_field(d, label=None):
    """ℚ(√d) for a squarefree integer d with α = √d (imaginary root chosen for d < 0)."""
    if d == 1 or d == 0:
        raise ValueError("d must not be a square")
    emb = (lambda dps: mpmath.sqrt(mpmath.mpf(d)))
    return NumberField([-d, 0, 1], label or f"Q(sqrt({d}))", embedding=emb, check=True)


def content_scale(rationals):
    """Positive rational c such that c*r are coprime integers."""
    nums = []
    dens = []
    for r in rationals:
        if r:
            nums.append(abs(r.numerator))
            dens.append(r.denominator)
    if not nums:
        return Fraction(1)
    g = 0
    for n in nums:
        g = gcd(g, n)
    lcm = 1
    for d in dens:
        lcm = lcm * d // gcd(lcm, d)
    return Fraction(lcm, g)
