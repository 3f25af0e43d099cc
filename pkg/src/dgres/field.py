"""
Exact ground fields: the rationals and prime fields F_p.

Field elements are plain Python numbers. Over Q they are ``int`` or
``fractions.Fraction``; over F_p they are ints in ``range(p)``.  A
:class:`Field` only knows how to normalize, invert, print and parse them,
so hot loops can use ordinary arithmetic operators.
"""

from fractions import Fraction


class FieldMismatchError(ValueError):
    pass


class Field:

    def __init__(self, p=0):
        if p < 0 or (p and not _is_prime(p)):
            raise ValueError("characteristic must be 0 or a prime, got %r" % p)
        self.p = p

    @property
    def characteristic(self):
        return self.p

    zero = 0
    one = 1

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, or a 'p/q' string) into the field."""
        if isinstance(x, str):
            return self.parse(x)
        p = self.p
        if not p:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError("cannot coerce %r into Q" % (x,))
        if isinstance(x, Fraction):
            den = x.denominator % p
            if den == 0:
                raise ZeroDivisionError("denominator %d vanishes mod %d" % (x.denominator, p))
            return x.numerator * pow(den, p - 2, p) % p
        if isinstance(x, int):
            return x % p
        raise TypeError("cannot coerce %r into F_%d" % (x, p))

    def inv(self, a):
        if self.p:
            a %= self.p
            if a == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        r = 1 / Fraction(a)
        return r.numerator if r.denominator == 1 else r

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def sign(self, e):
        """(-1)**e as a field element."""
        return self(-1) if e % 2 else 1

    def parse(self, s):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return self(int(s))

    def fmt(self, a):
        if self.p:
            return str(a % self.p)
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)

    @property
    def name(self):
        return "F%d" % self.p if self.p else "Q"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(%s)" % self.name

    __str__ = lambda self: self.name


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = Field(0)


def GF(p):
    return Field(p)


def field_from_string(s):
    """Parse 'Q', 'QQ', 'F5', 'Fp:5' or 'GF(5)'."""
    t = s.strip().replace(" ", "")
    if t in ("Q", "QQ", "0"):
        return QQ
    for prefix in ("Fp:", "GF(", "F_", "F"):
        if t.startswith(prefix):
            body = t[len(prefix):].rstrip(")")
            if body.isdigit():
                return Field(int(body))
    raise ValueError("unknown field %r (expected Q or Fp:<p>)" % s)


def check_same(*fields):
    f0 = fields[0]
    for f in fields[1:]:
        if f != f0:
            raise FieldMismatchError("field mismatch: %s vs %s" % (f0, f))
    return f0
