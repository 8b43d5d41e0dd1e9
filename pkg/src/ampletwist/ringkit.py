"""
Exact coefficient fields and the small amount of linear algebra the
quotient constructions need.

Scalars are plain Python values: ``int`` residues for a prime field and
``fractions.Fraction`` for the rationals.  A field object supplies the
arithmetic, so vectors are just tuples of scalars.

>>> F = PrimeField(5)
>>> echelonize(F, [(1, 2), (0, 3)])
[(1, 0), (0, 1)]
>>> Q = VectorSpaceQuotient(F, 2, [(1, 1)])
>>> Q.coset_rep((2, 3))
(0, 1)
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"F{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    @property
    def label(self):
        return str(self.p)

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator, x.denominator)
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(self(a), self.inv(self(b)))

    def units(self):
        return list(range(1, self.p))

    def order(self, a):
        k, x = 1, a
        while x != 1:
            x = x * a % self.p
            k += 1
        return k

    def parse(self, text: str):
        text = text.strip()
        if " mod " in text:
            v, m = text.split(" mod ")
            if int(m) != self.p:
                raise ValueError(f"residue modulus {m} does not match field {self.p}")
            return self(int(v))
        if "/" in text:
            return self(Fraction(text))
        return self(int(text))

    def render(self, a) -> str:
        return str(a)


class Rationals:
    zero = Fraction(0)
    one = Fraction(1)
    p = 0

    def __repr__(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    @property
    def label(self):
        return "Q"

    def __call__(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    def parse(self, text: str):
        text = text.strip()
        if " mod " in text:
            raise ValueError("residue literal in a rational document")
        return Fraction(text)

    def render(self, a) -> str:
        return str(a)


def make_field(spec) -> PrimeField | Rationals:
    """``'Q'`` or a prime (int or digit string)."""
    if isinstance(spec, (PrimeField, Rationals)):
        return spec
    if str(spec).strip().upper() == "Q":
        return Rationals()
    return PrimeField(int(spec))


# -- vectors --------------------------------------------------------------------


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, a, v):
    return tuple(F.mul(a, x) for x in v)


def is_zero(v):
    return not any(v)


def echelonize(F, vectors: Iterable[Sequence], dim: int | None = None) -> list[tuple]:
    """Reduced row echelon form of the span, zero rows dropped.

    Pivots are taken left to right, so the result depends only on the span.
    """
    rows = [list(F(x) for x in v) for v in vectors]
    if not rows:
        return []
    n = len(rows[0]) if dim is None else dim
    pivot_row = 0
    for col in range(n):
        pr = next((i for i in range(pivot_row, len(rows)) if rows[i][col] != 0), None)
        if pr is None:
            continue
        rows[pivot_row], rows[pr] = rows[pr], rows[pivot_row]
        inv = F.inv(rows[pivot_row][col])
        rows[pivot_row] = [F.mul(inv, x) for x in rows[pivot_row]]
        prow = rows[pivot_row]
        for i in range(len(rows)):
            if i != pivot_row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], prow)]
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return [tuple(r) for r in rows[:pivot_row]]


def rank(F, vectors) -> int:
    return len(echelonize(F, vectors))


class VectorSpaceQuotient:
    """F^dim modulo the span of ``generators``."""

    def __init__(self, F, dim: int, generators: Iterable[Sequence] = ()):
        self.F = F
        self.dim = dim
        self.basis = echelonize(F, generators, dim)
        self.pivots = tuple(next(i for i, x in enumerate(r) if x != 0) for r in self.basis)
        pivset = set(self.pivots)
        # coordinates surviving in the quotient, in ambient order
        self.free = tuple(i for i in range(dim) if i not in pivset)

    @property
    def quotient_dim(self):
        return len(self.free)

    def coset_rep(self, v: Sequence) -> tuple:
        F = self.F
        v = [F(x) for x in v]
        for row, piv in zip(self.basis, self.pivots):
            a = v[piv]
            if a != 0:
                v = [F.sub(x, F.mul(a, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        return is_zero(self.coset_rep(v))

    def coords(self, v) -> tuple:
        """Coordinates of the coset of v in the basis of free unit vectors."""
        r = self.coset_rep(v)
        return tuple(r[i] for i in self.free)

    def lift(self, coords) -> tuple:
        v = [self.F.zero] * self.dim
        for i, x in zip(self.free, coords):
            v[i] = self.F(x)
        return tuple(v)


def solve(F, columns: Sequence[Sequence], target: Sequence):
    """Find x with sum_i x_i * columns[i] = target, or None."""
    n = len(columns)
    if n == 0:
        return () if is_zero(target) else None
    m = len(target)
    rows = [[columns[j][i] for j in range(n)] + [target[i]] for i in range(m)]
    R = echelonize(F, rows, n + 1)
    x = [F.zero] * n
    for r in R:
        piv = next(i for i, v in enumerate(r) if v != 0)
        if piv == n:
            return None
        x[piv] = r[n]
    return tuple(x)


# -- embeddings of finite abelian groups into units ----------------------------


def units_and_embedding(F, A) -> tuple | None:
    """An injective homomorphism from A into the unit group of F, or None.

    ``A`` needs ``n``, ``mult`` and ``identity``.  Over Q the only finite
    unit subgroup is {1, -1}.
    """
    if isinstance(F, Rationals):
        units = [Fraction(1), Fraction(-1)]
    else:
        units = F.units()
    n = A.n
    if n > len(units):
        return None
    order = list(range(n))
    emb = [None] * n
    emb[A.identity] = F.one
    used = {F.one}

    def ok(x):
        for y in range(n):
            if emb[y] is None:
                continue
            z = A.mult[x][y]
            if emb[z] is not None and emb[z] != F.mul(emb[x], emb[y]):
                return False
        for a in range(n):
            for b in range(n):
                if A.mult[a][b] == x and emb[a] is not None and emb[b] is not None:
                    if F.mul(emb[a], emb[b]) != emb[x]:
                        return False
        return True

    def go(i):
        if i == n:
            return True
        x = order[i]
        if emb[x] is not None:
            return go(i + 1)
        for u in units:
            if u in used:
                continue
            emb[x] = u
            used.add(u)
            if ok(x) and go(i + 1):
                return True
            used.discard(u)
        emb[x] = None
        return False

    if go(0):
        return tuple(emb)
    return None
