"""The rational field as a coefficient context.

Elements of ``QQ`` are plain Python ``int`` (when integral) or
``fractions.Fraction``.  Keeping integers as ``int`` makes form evaluation and
orbit arithmetic run at big-int speed; the price is that raw ``/`` must never
be applied to coefficients.  Library code divides through ``ctx.div`` or
``ctx.inv`` only.
"""

from fractions import Fraction

from ..errors import ZeroInversion


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


class Rationals:
    name = "QQ"
    base = None
    parent = None
    absolute_degree = 1
    zero = 0
    one = 1

    def __call__(self, x):
        if type(x) is int:
            return x
        if type(x) is Fraction:
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(x, int):
            return int(x)
        if isinstance(x, Fraction):
            return _norm(Fraction(x))
        if isinstance(x, str):
            return _norm(Fraction(x.strip()))
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def is_zero(self, a):
        return a == 0

    # Over a field every nonzero element is a unit, so the dynamic-evaluation
    # zero test never splits here.
    def zero_test(self, a):
        return a == 0

    def is_unit(self, a):
        return a != 0

    def inv(self, a):
        if a == 0:
            raise ZeroInversion("inverse of zero in QQ")
        if type(a) is int:
            return 1 if a == 1 else (-1 if a == -1 else Fraction(1, a))
        return _norm(1 / a)

    def div(self, a, b):
        if b == 0:
            raise ZeroInversion("division by zero in QQ")
        return _norm(Fraction(a) / b)

    def render(self, a):
        return str(a)

    def tower(self):
        return [self]

    def lineage(self):
        return [self]

    def __repr__(self):
        return "QQ"


QQ = Rationals()


def is_rational_context(ctx):
    return ctx is QQ
