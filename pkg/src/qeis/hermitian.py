"""Concrete model of E = Q(sqrt(-D)) and the self-dual Hermitian lattice.

The global model is implemented for n = 2 only: the lattice is the
hyperbolic plane o_E c1 + o_E c2 with <c1, c2> = 1, pairing conjugate-linear
in the second slot, so a vector T = a c1 + b c2 has norm <T, T> = Tr(a conj(b)).
For n = 2 mod 4 with n > 2 no integral model is constructed; the Siegel
engine accepts hand-built :class:`LocalVectorData` for those ranks.

The ring of integers is Z[omega] with omega = (1 + sqrt(-D))/2, minimal
polynomial X^2 - X + (1+D)/4.  At a split prime the two embeddings into Z_p
are obtained by Hensel-lifting the two roots of that polynomial; at a
ramified odd prime the uniformizer is pinned to sqrt(-D) = 2 omega - 1
itself, which has trace 0 and square -D = p * unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import Splitting, splitting_class, validate_D, vp
from .errors import InternalConsistencyError, ValidationError


# ---------------------------------------------------------------------------
# Field and quadratic integers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldE:
    """The imaginary quadratic field Q(sqrt(-D)), D squarefree, D = 3 mod 4."""

    D: int

    def __post_init__(self):
        validate_D(self.D)

    @property
    def omega_norm(self) -> int:
        """N(omega) = (1 + D) / 4, the constant term of omega's minimal polynomial."""
        return (1 + self.D) // 4

    def splitting(self, p: int) -> Splitting:
        return splitting_class(self.D, p)


@dataclass(frozen=True)
class QuadInt:
    """x + y*omega with omega = (1 + sqrt(-D))/2; arithmetic needs the ambient field."""

    x: int
    y: int

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def add(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.x + other.x, self.y + other.y)

    def neg(self) -> "QuadInt":
        return QuadInt(-self.x, -self.y)

    def conj(self) -> "QuadInt":
        # omega + conj(omega) = 1
        return QuadInt(self.x + self.y, -self.y)

    def mul(self, other: "QuadInt", F: FieldE) -> "QuadInt":
        # omega^2 = omega - (1+D)/4
        c = F.omega_norm
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return QuadInt(x1 * x2 - c * y1 * y2, x1 * y2 + y1 * x2 + y1 * y2)

    def norm(self, F: FieldE) -> int:
        """N(x + y omega) = x^2 + xy + ((1+D)/4) y^2."""
        return self.x * self.x + self.x * self.y + F.omega_norm * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.y

    def scale(self, c: int) -> "QuadInt":
        return QuadInt(c * self.x, c * self.y)

    def complex_embed(self, F: FieldE) -> complex:
        """Image under the fixed embedding omega -> (1 + i sqrt(D))/2."""
        import math

        w = complex(0.5, math.sqrt(F.D) / 2.0)
        return self.x + self.y * w

    def as_list(self) -> list:
        return [self.x, self.y]


def quadint(x: int, y: int = 0) -> QuadInt:
    return QuadInt(x, y)


def sqrt_minus_D() -> QuadInt:
    """sqrt(-D) = 2 omega - 1."""
    return QuadInt(-1, 2)


# ---------------------------------------------------------------------------
# Eisenstein series parameters and global vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Params:
    """Hermitian-space rank parameter n and weight ell, with ell > n."""

    n: int
    ell: int

    def __post_init__(self):
        if self.n <= 0 or self.n % 4 != 2:
            raise ValidationError(f"n = {self.n} must be positive and = 2 mod 4")
        if self.ell <= self.n:
            raise ValidationError(f"ell = {self.ell} must exceed n = {self.n}")


@dataclass(frozen=True)
class GlobalVector:
    """T = a c1 + b c2 in the n = 2 hyperbolic model of the self-dual lattice."""

    a: QuadInt
    b: QuadInt

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def as_list(self) -> list:
        return [self.a.as_list(), self.b.as_list()]


def global_vector(ax: int, ay: int, bx: int, by: int) -> GlobalVector:
    return GlobalVector(QuadInt(ax, ay), QuadInt(bx, by))


def norm(T: GlobalVector, F: FieldE) -> int:
    """<T, T> = Tr(a conj(b)), always a rational integer."""
    return T.a.mul(T.b.conj(), F).trace()


# ---------------------------------------------------------------------------
# Hensel lifting for split primes
# ---------------------------------------------------------------------------

def _omega_root_mod_p(F: FieldE, p: int) -> int:
    """A root of X^2 - X + (1+D)/4 mod p (exists iff p splits)."""
    c = F.omega_norm
    for r in range(p):
        if (r * r - r + c) % p == 0:
            return r
    raise ValidationError(f"p = {p} is not split in Q(sqrt(-{F.D}))")


def omega_root_lift(F: FieldE, p: int, prec: int) -> int:
    """Hensel lift of the omega-root mod p to a root mod p^prec.

    The derivative 2r - 1 is a unit mod p for every split p (including 2),
    so Newton doubling applies directly.
    """
    c = F.omega_norm
    r = _omega_root_mod_p(F, p)
    e = 1
    mod = p
    while e < prec:
        e = min(2 * e, prec)
        mod = p ** e
        fr = (r * r - r + c) % mod
        dr = (2 * r - 1) % mod
        r = (r - fr * pow(dr, -1, mod)) % mod
    if (r * r - r + c) % (p ** prec) != 0:
        raise InternalConsistencyError("Hensel lift failed")
    return r


def _vp_bounded(x: int, p: int, prec: int):
    """Valuation of a residue known mod p^prec; None means >= prec (ambiguous)."""
    x %= p ** prec
    if x == 0:
        return None
    return vp(x, p)


# ---------------------------------------------------------------------------
# Per-prime-ideal valuations
# ---------------------------------------------------------------------------

def _split_vals(T: GlobalVector, F: FieldE, p: int) -> tuple:
    """(v_p1(T), v_p2(T)) via the Hensel-lifted root embeddings."""
    na = T.a.norm(F)
    nb = T.b.norm(F)
    cap = max(vp(na, p) if na else 0, vp(nb, p) if nb else 0, 0)
    prec = int(cap) + 2
    r = omega_root_lift(F, p, prec)
    r2 = (1 - r) % p ** prec  # the conjugate root: root sum is 1
    vals = []
    for root in (r, r2):
        vs = []
        for z in (T.a, T.b):
            if z:
                v = _vp_bounded(z.x + z.y * root, p, prec)
                if v is None:
                    raise InternalConsistencyError("split valuation exceeded precision cap")
                vs.append(v)
        vals.append(min(vs))
    return vals[0], vals[1]


def prime_ideal_valuation(T: GlobalVector, F: FieldE, p: int):
    """Valuation data of T at the primes above p.

    Split p: a pair (v_p1, v_p2).  Inert p: the single integer
    min over coordinates of v_p(N(.))/2.  Ramified p: min over coordinates
    of v_p(N(.)).
    """
    if not T:
        raise ValidationError("prime_ideal_valuation of the zero vector")
    cls = F.splitting(p)
    if cls is Splitting.SPLIT:
        return _split_vals(T, F, p)
    coords = [z for z in (T.a, T.b) if z]
    if cls is Splitting.INERT:
        vals = [vp(z.norm(F), p) for z in coords]
        if any(v % 2 for v in vals):
            raise InternalConsistencyError("odd norm valuation at an inert prime")
        return min(v // 2 for v in vals)
    return min(vp(z.norm(F), p) for z in coords)


# ---------------------------------------------------------------------------
# Local quadratic-lattice data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalVectorData:
    """Per-prime data feeding the Siegel-series engine.

    ``coords`` holds the quadratic-lattice coordinates of T in the split
    normal form Sum x_i y_i (case split/inert, rank 2m, layout x-block then
    y-block) or the ramified normal form Sum_{i<=m} x_i y_i + p Sum_{i>m}
    x_i y_i (rank 4m).  For the ramified case ``coords_over_uniformizer``
    additionally holds the coordinates of T/varpi, which may carry
    denominator p.  All integer entries are exact representatives of the
    p-adic coordinates modulo p^prec with prec >= k + 2.
    """

    p: int
    case: Splitting
    n: int
    k: int
    k1: int
    k2: int
    coords: tuple
    coords_over_uniformizer: tuple = field(default=())
    prec: int = 0

    @property
    def m(self) -> int:
        """Hyperbolic rank of the attached quadratic lattice."""
        return self.n if self.case is not Splitting.RAMIFIED else self.n // 2


def _min_vp(vec, p: int):
    vals = [vp(int(c), p) for c in vec]
    return min(vals)


def _split_local_data(T: GlobalVector, F: FieldE, p: int, n: int, k: int) -> LocalVectorData:
    na, nb = T.a.norm(F), T.b.norm(F)
    cap = max(vp(na, p) if na else 0, vp(nb, p) if nb else 0, k, 0)
    prec = int(cap) + 2
    mod = p ** prec
    r = omega_root_lift(F, p, prec)
    r2 = (1 - r) % mod
    # first embedding on the x-block, swapped second embedding on the y-block,
    # so that q(coords) = sigma1(a) sigma2(b) + sigma1(b) sigma2(a) = <T, T>
    t1 = ((T.a.x + T.a.y * r) % mod, (T.b.x + T.b.y * r) % mod)
    t2 = ((T.b.x + T.b.y * r2) % mod, (T.a.x + T.a.y * r2) % mod)
    k1 = _min_vp(t1, p)
    k2 = _min_vp(t2, p)
    q = (t1[0] * t2[0] + t1[1] * t2[1]) % mod
    if k < prec and vp(q, p) != k:
        raise InternalConsistencyError("split local data lost the norm valuation")
    return LocalVectorData(p=p, case=Splitting.SPLIT, n=n, k=k, k1=int(k1), k2=int(k2),
                           coords=t1 + t2, prec=prec)


def _inert_local_data(T: GlobalVector, F: FieldE, p: int, n: int, k: int) -> LocalVectorData:
    # q(a, b) = Tr(a conj(b)) = 2 a0 b0 + a0 b1 + a1 b0 + ((1+D)/2) a1 b1,
    # split over Z_p by the unimodular change of basis M = [[2, 1], [1, (1+D)/2]]
    # on the b-block (det M = D, a unit for p not dividing D).
    x = (T.a.x, T.a.y)
    y = (2 * T.b.x + T.b.y, T.b.x + ((1 + F.D) // 2) * T.b.y)
    k1 = _min_vp(x + y, p)
    data = LocalVectorData(p=p, case=Splitting.INERT, n=n, k=k, k1=int(k1), k2=int(k1),
                           coords=x + y, prec=max(k, 0) + 2)
    if x[0] * y[0] + x[1] * y[1] != norm(T, F):
        raise InternalConsistencyError("inert quadratic coordinates do not carry the norm")
    return data


def ramified_unit(F: FieldE, p: int) -> int:
    """The unit u with varpi^2 = p u for varpi = sqrt(-D), i.e. u = -D/p."""
    if F.D % p != 0 or p == 2:
        raise ValidationError(f"p = {p} is not an odd ramified prime for D = {F.D}")
    return -(F.D // p)


def _ramified_local_data(T: GlobalVector, F: FieldE, p: int, n: int, k: int) -> LocalVectorData:
    u = ramified_unit(F, p)
    prec = max(k, 0) + 4
    mod = p ** prec
    inv2 = pow(2, -1, mod)
    # rewrite a = x1 + x2 varpi, b = y1 + y2 varpi with varpi = 2 omega - 1
    x1 = (T.a.x + T.a.y * inv2) % mod
    x2 = (T.a.y * inv2) % mod
    y1 = (T.b.x + T.b.y * inv2) % mod
    y2 = (T.b.y * inv2) % mod
    # <v, v> = 2 (x1 y1 - p u x2 y2); rescale to q = X1 Y1 + p X2 Y2
    X1, X2 = x1, (-2 * u * x2) % mod
    Y1, Y2 = (2 * y1) % mod, y2
    coords = (X1, X2, Y1, Y2)
    if (X1 * Y1 + p * X2 * Y2 - norm(T, F)) % mod != 0:
        raise InternalConsistencyError("ramified normal form does not carry the norm")
    v_unit = _min_vp((X1, Y1), p)
    v_pblk = _min_vp((X2, Y2), p)
    k1 = min(v_unit, v_pblk)
    k2 = min(v_unit, v_pblk + 1)
    if not (k1 <= k2 <= k1 + 1) or k - k1 - k2 < 0:
        raise InternalConsistencyError("ramified valuations out of range")
    # T/varpi = (x2 + (x1/(p u)) varpi) c1 + (y2 + (y1/(p u)) varpi) c2: the unit
    # block and p-block swap, with denominators bounded by p
    uinv = pow(u, -1, mod)
    over = _ramified_quad_coords(Fraction(x2), Fraction(x1 * uinv % mod, p),
                                 Fraction(y2), Fraction(y1 * uinv % mod, p), u, p)
    return LocalVectorData(p=p, case=Splitting.RAMIFIED, n=n, k=k, k1=int(k1), k2=int(k2),
                           coords=coords, coords_over_uniformizer=over, prec=prec)


def _ramified_quad_coords(x1, x2, y1, y2, u: int, p: int) -> tuple:
    """Normal-form coordinates (X1, X2, Y1, Y2) of x = (x1 + x2 varpi) c1 + (y1 + y2 varpi) c2."""
    return (x1, -2 * u * x2, 2 * y1, y2)


def local_quadratic_data(T: GlobalVector, F: FieldE, p: int, P: Params) -> LocalVectorData:
    """Quadratic-lattice coordinates and valuation data of T at p (n = 2 model).

    Requires <T, T> != 0; rank-1 vectors never reach the Siegel engine.
    """
    if P.n != 2:
        raise ValidationError("the built-in global model has n = 2; supply LocalVectorData directly")
    nrm = norm(T, F)
    if nrm == 0:
        raise ValidationError("local quadratic data requires <T, T> != 0")
    k = int(vp(nrm, p))
    cls = F.splitting(p)
    if cls is Splitting.SPLIT:
        return _split_local_data(T, F, p, P.n, k)
    if cls is Splitting.INERT:
        return _inert_local_data(T, F, p, P.n, k)
    return _ramified_local_data(T, F, p, P.n, k)
