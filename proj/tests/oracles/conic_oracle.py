"""Extended-precision reference values for the cusp conic maps.

Frozen into tests/unit/test_conic_maps.cpp; rerun after changing any formula.
"""
from mpmath import mp, mpf, sqrt

mp.dps = 40


def t(x, y):
    x, y = mpf(x), mpf(y)
    return sqrt((2 * x**2 + 2 * y**2) / (x**2 + sqrt(x**4 + 4 * x**2 * y**2 * (x**2 + y**2))))


def H(x, y):
    x, y = mpf(x), mpf(y)
    tt = t(x, y)
    return tt * x, tt**2 * x * y


def H_inv(a, b):
    a, b = mpf(a), mpf(b)
    x = a**2 * sqrt((a**2 + b**2) / (a**4 + b**2))
    return x, b * x / a**2


def retraction(s, a, b):
    x, y = H_inv(a, b)
    return H(mpf(s) * x, mpf(s) * y)


if __name__ == "__main__":
    print("t(0.5,0.1) =", t("0.5", "0.1"))
    print("t(0.8,0.3) =", t("0.8", "0.3"))
    print("H(0.5,0.1) =", H("0.5", "0.1"))
    hx, hy = H("0.8", "0.3")
    print("|H(0.8,0.3)| =", sqrt(hx**2 + hy**2), " |q| =", sqrt(mpf("0.73")))
    print("H_inv(H(0.5,0.1)) =", H_inv(*H("0.5", "0.1")))
    r = retraction("0.5", "0.5", "0.1")
    print("r(0.5,(0.5,0.1)) =", r, " |r|^2 =", r[0]**2 + r[1]**2)
