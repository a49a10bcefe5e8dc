"""Abel polynomials and the vanishing sum behind the zero volume."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients from the constant term up, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def times_x(self) -> IntPolynomial:
        return IntPolynomial((0,) + self.coeffs) if self.coeffs else self

    def divmod_one_plus_x(self) -> tuple[IntPolynomial, int]:
        """Synthetic division by (1 + x), i.e. at the root -1."""
        if not self.coeffs:
            return self, 0
        acc = 0
        out = []
        for c in reversed(self.coeffs):
            acc = c - acc
            out.append(acc)
        return IntPolynomial(tuple(reversed(out[:-1]))), out[-1]

    def multiplicity_of_minus_one(self) -> int:
        """Largest e with (1 + x)^e dividing the polynomial (0 stays 0)."""
        p = self
        e = 0
        while p.coeffs:
            q, r = p.divmod_one_plus_x()
            if r:
                break
            p = q
            e += 1
        return e

    def __str__(self) -> str:
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                mono = "" if k == 0 else "x" if k == 1 else f"x^{k}"
                coef = "" if mono and c == 1 else "-" if mono and c == -1 else str(c)
                terms.append(coef + mono)
        return " + ".join(terms) if terms else "0"


def abel_polynomial(n: int, a: int) -> IntPolynomial:
    """x (x - a n)^(n-1), expanded.  n = 0 gives 1 (the empty forest)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if n == 0:
        return IntPolynomial((1,))
    shift = -a * n
    coeffs = [0] * (n + 1)
    for j in range(n):
        coeffs[j + 1] = comb(n - 1, j) * shift ** (n - 1 - j)
    return IntPolynomial(tuple(coeffs))


def rooted_forest_counts(n: int) -> list[int]:
    """t_{n,k}, k = 0..n: forests on n labeled vertices made of k rooted trees."""
    c = list(abel_polynomial(n, -1).coeffs)
    return c + [0] * (n + 1 - len(c))


def q_n(n: int) -> int:
    """sum_{N=1}^{n} C(n,N) N^(N-1) A_{n-N}(-n)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return sum(comb(n, N) * N ** (N - 1) * abel_polynomial(n - N, -1)(-n) for N in range(1, n + 1))


def p_polynomial(n: int) -> IntPolynomial:
    """p(x) = sum_N N^(n-2) C(n,N) x^N, written out directly."""
    return IntPolynomial(tuple(N ** (n - 2) * comb(n, N) for N in range(n + 1)))


def p_sequence(n: int) -> list[IntPolynomial]:
    """p_0 = (1+x)^n and p_i = x p_{i-1}', for i = 0..n-2."""
    p = IntPolynomial(tuple(comb(n, N) for N in range(n + 1)))
    out = [p]
    for _ in range(1, n - 1):
        p = p.derivative().times_x()
        out.append(p)
    return out


def q_n_routes(n: int) -> dict[str, int]:
    """Q_n three ways: the Abel-polynomial sum, (-1)^n n p(-1) directly, and via the recursion."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    sign = (-1) ** n * n
    return {
        "abel_sum": q_n(n),
        "p_direct": sign * p_polynomial(n)(-1),
        "p_recursion": sign * p_sequence(n)[-1](-1),
    }
