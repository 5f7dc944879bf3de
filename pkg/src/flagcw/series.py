"""Univariate integer polynomials in t, used for Poincare polynomials.

Represented as coefficient lists [c0, c1, ...] with no trailing zeros.
Only the handful of exact operations the ring computations need:
multiplication, subtraction, exact division with remainder check, and
the display format used by the CLI (`1 + 2*t + 2*t^2 + t^3`).
"""

from __future__ import annotations


def normalize(p: list) -> list:
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return list(p[:n])


def add(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return normalize(out)


def sub(a: list, b: list) -> list:
    return add(a, [-c for c in b])


def mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return normalize(out)


def scale(a: list, c: int) -> list:
    return normalize([c * x for x in a])


def shift(a: list, k: int) -> list:
    """Multiply by t^k."""
    return [0] * k + list(a) if a else []


def exact_div(a: list, b: list) -> list:
    """Exact quotient a/b; raises ArithmeticError on nonzero remainder."""
    a = normalize(a)
    b = normalize(b)
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    if len(a) < len(b):
        raise ArithmeticError("non-exact univariate division")
    quot = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    for i in range(len(quot) - 1, -1, -1):
        c, r = divmod(rem[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("non-exact univariate division")
        quot[i] = c
        if c:
            for j, cb in enumerate(b):
                rem[i + j] -= c * cb
    if any(rem):
        raise ArithmeticError("non-exact univariate division")
    return normalize(quot)


def one_minus_t_pow(j: int) -> list:
    """1 - t^j."""
    p = [1] + [0] * (j - 1) + [-1] if j > 0 else [0]
    return p


def prod(polys) -> list:
    out = [1]
    for p in polys:
        out = mul(out, p)
    return out


def to_string(p: list) -> str:
    p = normalize(p)
    if not p:
        return "0"
    parts = []
    for d, c in enumerate(p):
        if c == 0:
            continue
        if d == 0:
            body = str(abs(c))
        else:
            var = "t" if d == 1 else f"t^{d}"
            body = var if abs(c) == 1 else f"{abs(c)}*{var}"
        parts.append(("- " if c < 0 else "+ ") + body)
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]
