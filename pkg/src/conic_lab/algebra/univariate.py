"""Dense univariate polynomials over a field, as coefficient lists (lowest degree first).

Coefficients may be any field element supported by the package (mpq or
RatFunc). These helpers back the squarefree decomposition of binary forms.
"""


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a):
    return len(trim(a)) - 1


def monic(a):
    a = trim(a)
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def deriv(a):
    return trim([a[i] * i for i in range(1, len(a))])


def sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return trim([x - y for x, y in zip(a, b)])


def divmod_(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    lc = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lc
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] = r[k + j] - c * bj
    return trim(q), trim(r[: len(b) - 1])


def exquo(a, b):
    q, r = divmod_(a, b)
    if r:
        raise ValueError("univariate division is not exact")
    return q


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def is_one(a):
    a = trim(a)
    return len(a) == 1 and a[0] == 1


def yun(f):
    """Squarefree decomposition of a nonconstant f: list of (monic factor, multiplicity)."""
    f = trim(f)
    if len(f) < 2:
        return []
    df = deriv(f)
    a = gcd(f, df)
    b = exquo(f, a)
    c = exquo(df, a)
    d = sub(c, deriv(b))
    out = []
    i = 1
    while degree(b) > 0:
        a = gcd(b, d)
        if degree(a) > 0:
            out.append((monic(a), i))
        b = exquo(b, a)
        c = exquo(d, a)
        d = sub(c, deriv(b))
        i += 1
    return out
