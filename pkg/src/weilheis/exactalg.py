"""Exact scalars and dense/monomial linear algebra.

Three coefficient domains, all exact (no floating point anywhere):

  * the rationals, represented by ``fractions.Fraction``;
  * the prime field F_p for an odd prime p (``Fp``);
  * the p-th cyclotomic field Q(zeta_p) (``Cyc``), the home of every
    character value and representation matrix entry in this package.

A ``Cyc`` is stored on the canonical basis 1, z, ..., z^(p-2) of Q(zeta_p)
(z = zeta_p), reduced modulo 1 + z + ... + z^(p-1) = 0, as an integer
coefficient vector over a common positive denominator in lowest terms.
Two elements are equal iff their stored data is equal, so equality is a
tuple comparison and hashing is cheap.

``Matrix`` is a dense matrix over any of the domains; ``MonomialMatrix``
is the sparse form (one nonzero entry per row and column) that Heisenberg
and most Weil operators take, with O(dim) products.  ``solve_linear`` /
``kernel_dimension`` do deterministic fraction-based elimination with a
fixed pivot order (first nonzero entry in row-major scan).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


class UnsupportedCharacteristic(ValueError):
    """Raised for p = 2 or p not prime."""


class DomainMismatch(ValueError):
    """Raised when operands live over different coefficient domains."""


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_odd_prime(p):
    if not is_prime(p) or p == 2:
        raise UnsupportedCharacteristic(
            "unsupported residue characteristic: p=%r (need an odd prime)" % (p,)
        )


# ---------------------------------------------------------------------------
# prime field scalars


class Fp:
    """An element of F_p, p an odd prime."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        check_odd_prime(p)
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise DomainMismatch("F_%d vs F_%d" % (self.p, other.p))
            return other
        if isinstance(other, int):
            return Fp(self.p, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __neg__(self):
        return Fp(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "Fp(%d, %d)" % (self.p, self.v)


# ---------------------------------------------------------------------------
# cyclotomic scalars


def _normalize(nums, den):
    if den < 0:
        nums = tuple(-a for a in nums)
        den = -den
    g = den
    for a in nums:
        g = gcd(g, a)
        if g == 1:
            break
    if g > 1:
        nums = tuple(a // g for a in nums)
        den //= g
    return nums, den


def _fold_top(p, raw):
    """Coefficients on exponents 0..p-1 -> canonical 0..p-2 via sum of roots = 0."""
    top = raw[p - 1]
    if top:
        return [raw[k] - top for k in range(p - 1)]
    return raw[: p - 1]


class Cyc:
    """An element of Q(zeta_p): sum of num[j]/den * zeta_p^j, 0 <= j <= p-2."""

    __slots__ = ("p", "num", "den", "_h")

    def __init__(self, p, num, den=1, _checked=False):
        if not _checked:
            check_odd_prime(p)
            num = tuple(int(a) for a in num)
            if len(num) != p - 1:
                raise ValueError("need %d coefficients, got %d" % (p - 1, len(num)))
            num, den = _normalize(num, int(den))
        self.p = p
        self.num = num
        self.den = den
        self._h = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(p):
        return Cyc(p, (0,) * (p - 1), 1, _checked=True)

    @staticmethod
    def from_rational(p, q):
        q = Fraction(q)
        num = [0] * (p - 1)
        num[0] = q.numerator
        return Cyc(p, tuple(num), q.denominator, _checked=True)

    @staticmethod
    def one(p):
        return Cyc.from_rational(p, 1)

    @staticmethod
    def zeta_pow(p, k):
        """zeta_p^k for any integer k."""
        check_odd_prime(p)
        k %= p
        if k == p - 1:
            return Cyc(p, (-1,) * (p - 1), 1, _checked=True)
        num = [0] * (p - 1)
        num[k] = 1
        return Cyc(p, tuple(num), 1, _checked=True)

    # -- helpers -------------------------------------------------------

    def _same(self, other):
        if isinstance(other, Cyc):
            if other.p != self.p:
                raise DomainMismatch("Q(zeta_%d) vs Q(zeta_%d)" % (self.p, other.p))
            return other
        if isinstance(other, (int, Fraction)):
            return Cyc.from_rational(self.p, other)
        return None

    def __bool__(self):
        return any(self.num)

    def __eq__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.p, self.num, self.den))
        return self._h

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        da, db = self.den, o.den
        if da == db:
            num = tuple(x + y for x, y in zip(self.num, o.num))
            den = da
        else:
            g = gcd(da, db)
            ma, mb = db // g, da // g
            num = tuple(x * ma + y * mb for x, y in zip(self.num, o.num))
            den = da // g * db
        return Cyc(self.p, *_normalize(num, den), _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyc(self.p, tuple(-a for a in self.num), self.den, _checked=True)

    def __sub__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        p = self.p
        a, b = self.num, o.num
        raw = [0] * p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        e = i + j
                        if e >= p:
                            e -= p
                        raw[e] += ai * bj
        num = _fold_top(p, raw)
        return Cyc(p, *_normalize(tuple(num), self.den * o.den), _checked=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._same(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyc.one(self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.p)
        if self.is_rational():
            return Cyc.from_rational(self.p, 1 / self.rational_value())
        nz = [j for j, a in enumerate(self.num) if a]
        if len(nz) == 1:
            # (q * zeta^j)^-1 = (1/q) * zeta^(p-j): the common monomial case
            j = nz[0]
            q = Fraction(self.num[j], self.den)
            return Cyc.zeta_pow(self.p, self.p - j) * Cyc.from_rational(self.p, 1 / q)
        return _cyc_inverse(self)

    def conj(self):
        """Complex conjugation: zeta |-> zeta^(p-1)."""
        p = self.p
        raw = [0] * p
        for j, a in enumerate(self.num):
            raw[(p - j) % p] += a
        num = _fold_top(p, raw)
        return Cyc(p, *_normalize(tuple(num), self.den), _checked=True)

    # -- inspection ------------------------------------------------------

    def is_rational(self):
        return not any(self.num[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational: %r" % (self,))
        return Fraction(self.num[0], self.den)

    def integer_value(self):
        q = self.rational_value()
        if q.denominator != 1:
            raise ValueError("not an integer: %r" % (self,))
        return q.numerator

    def __repr__(self):
        if self.is_rational():
            return "Cyc(%d, %s)" % (self.p, self.rational_value())
        terms = []
        for j, a in enumerate(self.num):
            if a:
                c = Fraction(a, self.den)
                terms.append("%s*z^%d" % (c, j) if j else str(c))
        return "Cyc(%d, %s)" % (self.p, " + ".join(terms))


@lru_cache(maxsize=4096)
def _cyc_inverse_cached(p, num, den):
    # y * x = 1 solved over Q in the coefficients of y: the columns of the
    # system are x * zeta^k expressed on the canonical basis.
    x = Cyc(p, num, den, _checked=True)
    cols = []
    for k in range(p - 1):
        cols.append((x * Cyc.zeta_pow(p, k)).num_fractions())
    n = p - 1
    aug = [[cols[k][i] for k in range(n)] + [Fraction(1) if i == 0 else Fraction(0)]
           for i in range(n)]
    # plain elimination; the system is invertible since x != 0 in a field
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [e / pv for e in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [e - f * pc for e, pc in zip(aug[r], aug[col])]
    ys = [aug[r][n] for r in range(n)]
    d = 1
    for y in ys:
        d = d * y.denominator // gcd(d, y.denominator)
    return Cyc(p, tuple(int(y * d) for y in ys), d)


def _cyc_inverse(x):
    return _cyc_inverse_cached(x.p, x.num, x.den)


def _num_fractions(self):
    return tuple(Fraction(a, self.den) for a in self.num)


Cyc.num_fractions = _num_fractions


def cyc_reduce(p, raw):
    """Canonical Q(zeta_p) element from a map {exponent: rational coefficient}."""
    check_odd_prime(p)
    acc = [Fraction(0)] * p
    for e, c in raw.items():
        acc[e % p] += Fraction(c)
    top = acc[p - 1]
    coeffs = [acc[k] - top for k in range(p - 1)]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    return Cyc(p, tuple(int(c * den) for c in coeffs), den)


def gauss_sum(p, c=1):
    """The quadratic Gauss sum sum_t zeta_p^(c t^2); squares to (-1)^((p-1)/2) p."""
    acc = Cyc.zero(p)
    for t in range(p):
        acc = acc + Cyc.zeta_pow(p, c * t * t)
    return acc


# ---------------------------------------------------------------------------
# coefficient domains


class Domain:
    """Tag object bundling zero/one/coercion for a coefficient domain."""

    def __init__(self, name, zero, one, from_int, is_field=True):
        self.name = name
        self.zero = zero
        self.one = one
        self.from_int = from_int
        self.is_field = is_field

    def __repr__(self):
        return "Domain(%s)" % self.name

    def __eq__(self, other):
        return isinstance(other, Domain) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


QQ = Domain("QQ", Fraction(0), Fraction(1), Fraction)


@lru_cache(maxsize=None)
def gf(p):
    return Domain("GF(%d)" % p, Fp(p, 0), Fp(p, 1), lambda n, p=p: Fp(p, n))


@lru_cache(maxsize=None)
def cyc(p):
    return Domain(
        "CYC(%d)" % p,
        Cyc.zero(p),
        Cyc.one(p),
        lambda n, p=p: Cyc.from_rational(p, n),
    )


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Immutable dense matrix over a Domain; entries carry the arithmetic."""

    __slots__ = ("domain", "rows", "nrows", "ncols")

    def __init__(self, domain, rows):
        self.domain = domain
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(domain, n):
        z, o = domain.zero, domain.one
        return Matrix(domain, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(domain, nrows, ncols):
        z = domain.zero
        return Matrix(domain, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def from_int_rows(domain, rows):
        f = domain.from_int
        return Matrix(domain, [[f(e) for e in r] for r in rows])

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix, got %r" % type(other))
        if other.domain != self.domain:
            raise DomainMismatch("%s vs %s" % (self.domain, other.domain))

    def __eq__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_matrix()
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.domain == other.domain and self.rows == other.rows

    def __hash__(self):
        return hash((self.domain, self.rows))

    def __add__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_matrix()
        self._check(other)
        return Matrix(
            self.domain,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __sub__(self, other):
        if isinstance(other, MonomialMatrix):
            other = other.to_matrix()
        self._check(other)
        return Matrix(
            self.domain,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
        )

    def __neg__(self):
        return Matrix(self.domain, [[-a for a in r] for r in self.rows])

    def scale(self, c):
        return Matrix(self.domain, [[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, MonomialMatrix):
            # columns of the result are scaled columns of self
            if self.ncols != other.n:
                raise ValueError("shape mismatch")
            rows = []
            for r in self.rows:
                rows.append([r[other.perm[j]] * other.scal[j] for j in range(other.n)])
            return Matrix(self.domain, rows)
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        bt = other.transpose().rows
        z = self.domain.zero
        out = []
        for ra in self.rows:
            row = []
            for cb in bt:
                acc = z
                for a, b in zip(ra, cb):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.domain, out)

    def transpose(self):
        return Matrix(self.domain, list(zip(*self.rows))) if self.rows else self

    def trace(self):
        acc = self.domain.zero
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def apply(self, vec):
        z = self.domain.zero
        out = []
        for r in self.rows:
            acc = z
            for a, v in zip(r, vec):
                if a and v:
                    acc = acc + a * v
            out.append(acc)
        return tuple(out)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        det = self.domain.one
        for col in range(n):
            piv = None
            for r in range(col, n):
                if m[r][col]:
                    piv = r
                    break
            if piv is None:
                return self.domain.zero
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv = self.domain.one / m[col][col]
            for r in range(col + 1, n):
                if m[r][col]:
                    f = m[r][col] * inv
                    m[r] = [e - f * pc for e, pc in zip(m[r], m[col])]
        return det

    def inverse(self):
        sol = solve_linear(self, Matrix.identity(self.domain, self.nrows))
        if sol is None or sol.kernel:
            raise ValueError("matrix not invertible")
        return sol.particular

    def to_matrix(self):
        return self

    def __repr__(self):
        return "Matrix(%s, %d x %d)" % (self.domain.name, self.nrows, self.ncols)


class MonomialMatrix:
    """Square matrix with one nonzero entry per row/column: M e_j = scal[j] e_perm[j]."""

    __slots__ = ("domain", "n", "perm", "scal")

    def __init__(self, domain, perm, scal):
        self.domain = domain
        self.n = len(perm)
        self.perm = tuple(perm)
        self.scal = tuple(scal)
        if sorted(self.perm) != list(range(self.n)):
            raise ValueError("not a permutation")

    @staticmethod
    def identity(domain, n):
        return MonomialMatrix(domain, range(n), (domain.one,) * n)

    @staticmethod
    def diagonal(domain, scal):
        return MonomialMatrix(domain, range(len(scal)), scal)

    def __mul__(self, other):
        if isinstance(other, MonomialMatrix):
            if other.n != self.n:
                raise ValueError("shape mismatch")
            perm = tuple(self.perm[other.perm[j]] for j in range(self.n))
            scal = tuple(other.scal[j] * self.scal[other.perm[j]] for j in range(self.n))
            return MonomialMatrix(self.domain, perm, scal)
        if isinstance(other, Matrix):
            # row i of result = scal[inv(i)] * row inv(i) of other
            inv = self.inv_perm()
            rows = [
                [self.scal[inv[i]] * e for e in other.rows[inv[i]]]
                for i in range(self.n)
            ]
            return Matrix(other.domain, rows)
        return NotImplemented

    def inv_perm(self):
        inv = [0] * self.n
        for j, i in enumerate(self.perm):
            inv[i] = j
        return tuple(inv)

    def inverse(self):
        inv = self.inv_perm()
        one = self.domain.one
        scal = tuple(one / self.scal[inv[j]] for j in range(self.n))
        return MonomialMatrix(self.domain, inv, scal)

    def trace(self):
        acc = self.domain.zero
        for j in range(self.n):
            if self.perm[j] == j:
                acc = acc + self.scal[j]
        return acc

    def scale(self, c):
        return MonomialMatrix(self.domain, self.perm, tuple(c * s for s in self.scal))

    def to_matrix(self):
        z = self.domain.zero
        rows = [[z] * self.n for _ in range(self.n)]
        for j in range(self.n):
            rows[self.perm[j]][j] = self.scal[j]
        return Matrix(self.domain, rows)

    def apply(self, vec):
        out = [self.domain.zero] * self.n
        for j in range(self.n):
            if vec[j]:
                out[self.perm[j]] = self.scal[j] * vec[j]
        return tuple(out)

    def det(self):
        seen = [False] * self.n
        sign = 1
        for start in range(self.n):
            if seen[start]:
                continue
            ln, j = 0, start
            while not seen[j]:
                seen[j] = True
                j = self.perm[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        acc = self.domain.one if sign > 0 else -self.domain.one
        for s in self.scal:
            acc = acc * s
        return acc

    def __eq__(self, other):
        if isinstance(other, MonomialMatrix):
            return (
                self.domain == other.domain
                and self.perm == other.perm
                and self.scal == other.scal
            )
        if isinstance(other, Matrix):
            return self.to_matrix() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.perm, self.scal))

    def __repr__(self):
        return "MonomialMatrix(%s, n=%d)" % (self.domain.name, self.n)


# ---------------------------------------------------------------------------
# elimination


class LinearSolution:
    """Particular solution plus echelonized kernel basis of A X = B."""

    __slots__ = ("particular", "kernel")

    def __init__(self, particular, kernel):
        self.particular = particular
        self.kernel = kernel

    @property
    def kernel_dim(self):
        return len(self.kernel)


def _rref(domain, rows, width):
    """In-place reduced row echelon form; returns pivot column list."""
    pivots = []
    r = 0
    nrows = len(rows)
    for col in range(width):
        piv = None
        for i in range(r, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = domain.one / rows[r][col]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [e - f * pc for e, pc in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_linear(a, b):
    """Solve A X = B exactly.  Returns a LinearSolution, or None if inconsistent.

    The kernel basis enumerates, per column slot of B, the echelonized kernel
    vectors of A (so a 2x2 zero A with zero B has kernel dimension 4: the four
    flattened matrix unknowns are all free).
    """
    if isinstance(a, MonomialMatrix):
        a = a.to_matrix()
    if isinstance(b, MonomialMatrix):
        b = b.to_matrix()
    if a.domain != b.domain:
        raise DomainMismatch("%s vs %s" % (a.domain, b.domain))
    if a.nrows != b.nrows:
        raise ValueError("row count mismatch")
    domain = a.domain
    n, m = a.ncols, b.ncols
    aug = [list(ra) + list(rb) for ra, rb in zip(a.rows, b.rows)]
    pivots = _rref(domain, aug, n)
    rank = len(pivots)
    for i in range(rank, a.nrows):
        if any(aug[i][n:]):
            return None
    z = domain.zero
    part = [[z] * m for _ in range(n)]
    for r, col in enumerate(pivots):
        for j in range(m):
            part[col][j] = aug[r][n + j]
    free = [c for c in range(n) if c not in pivots]
    kvecs = []
    for fc in free:
        vec = [z] * n
        vec[fc] = domain.one
        for r, col in enumerate(pivots):
            vec[col] = -aug[r][fc]
        kvecs.append(vec)
    kernel = []
    for j in range(m):
        for vec in kvecs:
            mat = [[z] * m for _ in range(n)]
            for i in range(n):
                mat[i][j] = vec[i]
            kernel.append(Matrix(domain, mat))
    return LinearSolution(Matrix(domain, part), kernel)


def rank(a):
    if isinstance(a, MonomialMatrix):
        a = a.to_matrix()
    rows = [list(r) for r in a.rows]
    return len(_rref(a.domain, rows, a.ncols))


def kernel_dimension(a):
    """cols(A) - rank(A), exactly."""
    if isinstance(a, MonomialMatrix):
        a = a.to_matrix()
    return a.ncols - rank(a)


def column_space_basis(a):
    """Deterministic basis (list of column tuples) for the column space.

    The pivot columns of the row-reduced matrix select original columns.
    """
    if isinstance(a, MonomialMatrix):
        a = a.to_matrix()
    rows = [list(r) for r in a.rows]
    pivots = _rref(a.domain, rows, a.ncols)
    cols = list(zip(*a.rows))
    return [tuple(cols[c]) for c in pivots]


# ---------------------------------------------------------------------------
# twisted-permutation (monomial) equivariance solver


def monomial_hom_basis(nrows, ncols, constraints, domain):
    """Solve X A_k = B_k X over all k for X (nrows x ncols).

    Each constraint is a pair (A, B) of MonomialMatrix with A of size ncols
    and B of size nrows.  The coupled entries form orbits; each orbit either
    dies (inconsistent scalar cycle) or contributes one basis element.
    Returns the echelonized basis, ordered by smallest entry position.
    """
    for a, b in constraints:
        if a.n != ncols or b.n != nrows:
            raise ValueError("constraint shape mismatch")
    npos = nrows * ncols
    parent = list(range(npos))
    ratio = [domain.one] * npos  # X[pos] = ratio[pos] * X[root(pos)]
    alive = [True] * npos

    def find(x):
        # two-pass find with ratio accumulation: afterwards parent[x] is the
        # root and ratio[x] is X[x]/X[root]
        chain = []
        while parent[x] != x:
            chain.append(x)
            x = parent[x]
        acc = domain.one
        for node in reversed(chain):
            acc = acc * ratio[node]
            ratio[node] = acc
            parent[node] = x
        return x

    for a, b in constraints:
        ainv = a.inv_perm()
        binv = b.inv_perm()
        for i in range(nrows):
            bi = binv[i]
            mu = b.scal[bi]
            for m in range(ncols):
                j = ainv[m]
                lam = a.scal[j]
                # X[i, m] * lam = mu * X[bi, j]
                pos1 = i * ncols + m
                pos2 = bi * ncols + j
                r1 = find(pos1)
                q1 = ratio[pos1] if parent[pos1] != pos1 else domain.one
                r2 = find(pos2)
                q2 = ratio[pos2] if parent[pos2] != pos2 else domain.one
                # X[pos1] = q1 X[r1]; X[pos2] = q2 X[r2]; and X[pos1] = (mu/lam) X[pos2]
                c = mu / lam * q2
                if r1 == r2:
                    if q1 != c:
                        alive[r1] = False
                else:
                    # attach r2's tree under r1: X[r2] = (q1 / c) X[r1]
                    parent[r2] = r1
                    ratio[r2] = q1 / c
                    if not alive[r2]:
                        alive[r1] = False

    comps = {}
    for pos in range(npos):
        root = find(pos)
        if not alive[root]:
            continue
        comps.setdefault(root, []).append(pos)
    basis = []
    for root in sorted(comps, key=lambda r: min(comps[r])):
        z = domain.zero
        mat = [[z] * ncols for _ in range(nrows)]
        for pos in comps[root]:
            q = ratio[pos] if parent[pos] != pos else domain.one
            mat[pos // ncols][pos % ncols] = q
        # normalize: first nonzero entry (row-major) = 1
        lead = None
        for r in mat:
            for e in r:
                if e:
                    lead = e
                    break
            if lead is not None:
                break
        inv = domain.one / lead
        mat = [[inv * e for e in r] for r in mat]
        basis.append(Matrix(domain, mat))
    return basis
