"""Exact sparse linear algebra, super matrices and contact vector fields.

Everything here works over Scalar coefficients and is deterministic: pivot
choices depend only on a caller-supplied (or natural) ordering of basis keys,
never on dict iteration order.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, ZERO, ONE, _coerce

__all__ = [
    "SuperVector",
    "SuperMatrix",
    "GrassmannElement",
    "ContactDerivation",
    "solve_membership",
    "verify_membership",
    "kernel",
    "contact_derivation",
    "contact_bracket",
]


def _clean(d: dict) -> dict:
    out = {}
    for k, v in d.items():
        v = _coerce(v)
        if not v.is_zero():
            out[k] = v
    return out


def vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        nc = out.get(k, ZERO) + c
        if nc.is_zero():
            out.pop(k, None)
        else:
            out[k] = nc
    return out


def vec_scale(u: dict, f) -> dict:
    f = _coerce(f)
    if f.is_zero():
        return {}
    return {k: c * f for k, c in u.items()}


class SuperVector:
    """Sparse vector with a parity tag (0 even, 1 odd, None mixed)."""

    __slots__ = ("coords", "parity")

    def __init__(self, coords: dict, parity=None):
        self.coords = _clean({k: _coerce(c) for k, c in coords.items()})
        self.parity = parity

    def __add__(self, other):
        parity = self.parity if self.parity == other.parity else None
        return SuperVector(vec_add(self.coords, other.coords), parity)

    def __mul__(self, f):
        return SuperVector(vec_scale(self.coords, f), self.parity)

    __rmul__ = __mul__

    def __neg__(self):
        return self * Scalar.from_int(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        return isinstance(other, SuperVector) and self.coords == other.coords

    def __repr__(self):
        terms = ", ".join(f"{k}: {c}" for k, c in sorted(self.coords.items(), key=str))
        return f"SuperVector({{{terms}}})"


# ---------------------------------------------------------------------------
# echelon machinery with certificates


class _Echelon:
    """Incremental echelon basis remembering how each row was built."""

    def __init__(self, key_order=None):
        self.rows: list[tuple] = []  # (pivot, row_dict, combo_dict)
        self.pivots: dict = {}
        self.key_order = key_order or (lambda k: k)

    def _pick_pivot(self, row: dict):
        return min(row, key=self.key_order)

    def reduce(self, vec: dict):
        """Reduce vec against the basis.

        Returns (residue, used) with residue = vec - sum used[tag]*original[tag],
        where original[tag] is the vector inserted under that tag.
        """
        used: dict = {}
        vec = dict(vec)
        changed = True
        while changed and vec:
            changed = False
            for pivot, row, rcombo in self.rows:
                c = vec.get(pivot)
                if c is None or c.is_zero():
                    continue
                factor = c / row[pivot]
                vec = vec_add(vec, vec_scale(row, -factor))
                for idx, f in rcombo.items():
                    nf = used.get(idx, ZERO) + factor * f
                    if nf.is_zero():
                        used.pop(idx, None)
                    else:
                        used[idx] = nf
                changed = True
        return vec, used

    def insert(self, vec: dict, tag) -> bool:
        """Insert a vector labelled by tag; False when already in the span."""
        residue, used = self.reduce(vec)
        if not residue:
            return False
        combo = {tag: ONE}
        for idx, f in used.items():
            combo[idx] = -f
        pivot = self._pick_pivot(residue)
        self.rows.append((pivot, residue, combo))
        self.rows.sort(key=lambda r: self.key_order(r[0]))
        self.pivots[pivot] = residue
        return True

    def rank(self):
        return len(self.rows)


def solve_membership(target: dict, spanning: list[dict], key_order=None):
    """Certificate {index: coeff} with target = sum coeff_i*spanning[i], or None.

    None only means the target is outside the span of the given family.  The
    certificate is exact; callers needing independence from this code path
    re-verify it with verify_membership.
    """
    ech = _Echelon(key_order)
    for i, vec in enumerate(spanning):
        ech.insert(_clean(dict(vec)), i)
    residue, used = ech.reduce(_clean(dict(target)))
    if residue:
        return None
    return used


def verify_membership(target: dict, spanning: list[dict], cert: dict) -> bool:
    """Independent recombination check of a membership certificate."""
    total: dict = {}
    for idx, coeff in cert.items():
        total = vec_add(total, vec_scale(spanning[idx], coeff))
    return total == _clean(dict(target))


def kernel(columns: list[dict], key_order=None) -> list[dict]:
    """Null-space basis of x -> sum x_j columns[j], as {j: Scalar} dicts."""
    ech = _Echelon(key_order)
    out: list[dict] = []
    for j, col in enumerate(columns):
        residue, used = ech.reduce(_clean(dict(col)))
        if not residue:
            combo = {j: ONE}
            for idx, f in used.items():
                combo[idx] = combo.get(idx, ZERO) - f
            out.append(combo)
        else:
            combo = {j: ONE}
            for idx, f in used.items():
                combo[idx] = combo.get(idx, ZERO) - f
            pivot = ech._pick_pivot(residue)
            ech.rows.append((pivot, residue, combo))
            ech.rows.sort(key=lambda r: ech.key_order(r[0]))
    return out


# ---------------------------------------------------------------------------
# super matrices (dense, small)


class SuperMatrix:
    """Dense matrix over Scalar split as (m|n) x (m|n) blocks A B / C D."""

    __slots__ = ("m", "n", "rows")

    def __init__(self, m: int, n: int, rows):
        self.m = m
        self.n = n
        self.rows = [[_coerce(x) for x in row] for row in rows]
        d = m + n
        if len(self.rows) != d or any(len(r) != d for r in self.rows):
            raise ValueError("matrix shape does not match superdimension")

    @staticmethod
    def zero(m: int, n: int) -> "SuperMatrix":
        d = m + n
        return SuperMatrix(m, n, [[ZERO] * d for _ in range(d)])

    @staticmethod
    def unit(m: int, n: int, i: int, j: int, value=1) -> "SuperMatrix":
        out = SuperMatrix.zero(m, n)
        out.rows[i][j] = _coerce(value)
        return out

    def parity(self):
        """0 for block-diagonal support, 1 for block-off-diagonal, None mixed."""
        even = odd = False
        for i in range(self.m + self.n):
            for j in range(self.m + self.n):
                if self.rows[i][j].is_zero():
                    continue
                if (i < self.m) == (j < self.m):
                    even = True
                else:
                    odd = True
        if even and odd:
            return None
        return 1 if odd else 0

    def __add__(self, other):
        self._check(other)
        return SuperMatrix(
            self.m,
            self.n,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return self + (other * Scalar.from_int(-1))

    def __mul__(self, other):
        if isinstance(other, SuperMatrix):
            self._check(other)
            d = self.m + self.n
            rows = []
            for i in range(d):
                row = []
                for j in range(d):
                    acc = ZERO
                    for t in range(d):
                        if not self.rows[i][t].is_zero():
                            acc = acc + self.rows[i][t] * other.rows[t][j]
                    row.append(acc)
                rows.append(row)
            return SuperMatrix(self.m, self.n, rows)
        f = _coerce(other)
        return SuperMatrix(
            self.m, self.n, [[x * f for x in row] for row in self.rows]
        )

    __rmul__ = __mul__

    def _check(self, other):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("superdimension mismatch")

    def supercommutator(self, other) -> "SuperMatrix":
        p1, p2 = self.parity(), other.parity()
        if p1 is None or p2 is None:
            raise ValueError("supercommutator needs homogeneous matrices")
        sign = Scalar.from_int(-1 if p1 and p2 else 1)
        return self * other - sign * (other * self)

    def supertranspose(self) -> "SuperMatrix":
        # [[A^T, C^T], [-B^T, D^T]]
        m, n = self.m, self.n
        out = SuperMatrix.zero(m, n)
        for i in range(m + n):
            for j in range(m + n):
                v = self.rows[i][j]
                if i < m and j < m:
                    out.rows[j][i] = v
                elif i >= m and j >= m:
                    out.rows[j][i] = v
                elif i < m <= j:  # B block -> -B^T in lower-left
                    out.rows[j][i] = -v
                else:  # C block -> C^T in upper-right
                    out.rows[j][i] = v
        return out

    def supertrace(self) -> Scalar:
        tr = ZERO
        for i in range(self.m):
            tr = tr + self.rows[i][i]
        for i in range(self.m, self.m + self.n):
            tr = tr - self.rows[i][i]
        return tr

    def entries_dict(self) -> dict:
        out = {}
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if not v.is_zero():
                    out[(i, j)] = v
        return out

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and (self.m, self.n) == (other.m, other.n)
            and all(
                a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
            )
        )

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.rows
        )
        return f"SuperMatrix({self.m}|{self.n}: {body})"


# ---------------------------------------------------------------------------
# Grassmann algebra with Laurent coefficient in t


class GrassmannElement:
    """Element of C[t, t^-1] (x) Lambda(theta_1..theta_N).

    Terms are keyed by (t_exponent, ascending tuple of theta indices).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for (te, subset), c in (terms or {}).items():
            c = _coerce(c)
            if not c.is_zero():
                clean[(te, tuple(sorted(subset)))] = c
        self.terms = clean

    @staticmethod
    def monomial(t_exp: int = 0, thetas=(), coeff=1) -> "GrassmannElement":
        thetas = tuple(thetas)
        if len(set(thetas)) != len(thetas):
            return GrassmannElement({})
        sign, ordered = _sort_sign(thetas)
        return GrassmannElement({(t_exp, ordered): _coerce(coeff) * sign})

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            nc = out.get(key, ZERO) + c
            if nc.is_zero():
                out.pop(key, None)
            else:
                out[key] = nc
        return GrassmannElement(out)

    def __neg__(self):
        return GrassmannElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            out: dict = {}
            for (t1, s1), c1 in self.terms.items():
                for (t2, s2), c2 in other.terms.items():
                    if set(s1) & set(s2):
                        continue
                    sign = _merge_sign(s1, s2)
                    key = (t1 + t2, tuple(sorted(s1 + s2)))
                    nc = out.get(key, ZERO) + c1 * c2 * sign
                    if nc.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = nc
            return GrassmannElement(out)
        f = _coerce(other)
        return GrassmannElement({k: c * f for k, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def parity(self):
        ps = {len(s) % 2 for (_, s) in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def theta_derivative(self, i: int) -> "GrassmannElement":
        """Left derivative by theta_i."""
        out = {}
        for (te, subset), c in self.terms.items():
            if i not in subset:
                continue
            pos = subset.index(i)
            rest = subset[:pos] + subset[pos + 1 :]
            sign = Scalar.from_int((-1) ** pos)
            out[(te, rest)] = out.get((te, rest), ZERO) + c * sign
        return GrassmannElement(out)

    def t_derivative(self) -> "GrassmannElement":
        out = {}
        for (te, subset), c in self.terms.items():
            if te:
                out[(te - 1, subset)] = c * Scalar.from_int(te)
        return GrassmannElement(out)

    def t_shift(self, k: int) -> "GrassmannElement":
        return GrassmannElement(
            {(te + k, subset): c for (te, subset), c in self.terms.items()}
        )

    def theta_degree_operator(self) -> "GrassmannElement":
        """sum_i theta_i d_theta_i, i.e. multiply each term by its theta-degree."""
        return GrassmannElement(
            {key: c * Scalar.from_int(len(key[1])) for key, c in self.terms.items()}
        )

    def __eq__(self, other):
        return isinstance(other, GrassmannElement) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (te, subset), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1])):
            body = []
            if te:
                body.append(f"t^{te}" if te != 1 else "t")
            body.extend(f"x{i}" for i in subset)
            parts.append(f"({c})" + ("*" + "*".join(body) if body else ""))
        return " + ".join(parts)


def _sort_sign(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return Scalar.from_int(sign), tuple(seq)


def _merge_sign(s1, s2) -> Scalar:
    inv = sum(1 for x in s1 for y in s2 if x > y)
    return Scalar.from_int((-1) ** inv)


# ---------------------------------------------------------------------------
# contact vector fields as superderivations


class ContactDerivation:
    """Superderivation of C[t,t^-1] (x) Lambda(N), stored by generator images."""

    __slots__ = ("n_theta", "parity", "image_t", "image_theta")

    def __init__(self, n_theta: int, parity: int, image_t: GrassmannElement,
                 image_theta: dict[int, GrassmannElement]):
        self.n_theta = n_theta
        self.parity = parity
        self.image_t = image_t
        self.image_theta = {i: image_theta.get(i, GrassmannElement()) for i in range(1, n_theta + 1)}

    def apply(self, element: GrassmannElement) -> GrassmannElement:
        out = GrassmannElement()
        for (te, subset), c in element.terms.items():
            # Leibniz over the factorisation t^te * theta_{j1} * ... * theta_{jm}
            # t-part: D(t^k) = k t^(k-1) D(t)
            if te:
                piece = self.image_t.t_shift(te - 1) * Scalar.from_int(te)
                piece = piece * GrassmannElement.monomial(0, subset)
                out = out + piece * c
            prefix_parity = 0
            for pos, j in enumerate(subset):
                sign = Scalar.from_int(
                    (-1) ** (self.parity * prefix_parity)
                )
                left = GrassmannElement.monomial(te, subset[:pos])
                right = GrassmannElement.monomial(0, subset[pos + 1 :])
                piece = left * self.image_theta[j] * right
                out = out + piece * (c * sign)
                prefix_parity ^= 1
        return out

    def bracket(self, other: "ContactDerivation") -> "ContactDerivation":
        sign = Scalar.from_int(-1 if self.parity and other.parity else 1)
        t_img = self.apply(other.image_t) - sign * other.apply(self.image_t)
        th_img = {
            i: self.apply(other.image_theta[i]) - sign * other.apply(self.image_theta[i])
            for i in range(1, self.n_theta + 1)
        }
        return ContactDerivation(
            self.n_theta, (self.parity + other.parity) % 2, t_img, th_img
        )

    def scale(self, f) -> "ContactDerivation":
        f = _coerce(f)
        return ContactDerivation(
            self.n_theta,
            self.parity,
            self.image_t * f,
            {i: g * f for i, g in self.image_theta.items()},
        )

    def add(self, other: "ContactDerivation") -> "ContactDerivation":
        if self.parity != other.parity:
            raise ValueError("cannot add derivations of different parity")
        return ContactDerivation(
            self.n_theta,
            self.parity,
            self.image_t + other.image_t,
            {
                i: self.image_theta[i] + other.image_theta[i]
                for i in range(1, self.n_theta + 1)
            },
        )

    def is_zero(self):
        return self.image_t.is_zero() and all(
            g.is_zero() for g in self.image_theta.values()
        )

    def flatten(self) -> dict:
        """Orderable coordinate dict for membership/kernel computations."""
        out = {}
        for (te, subset), c in self.image_t.terms.items():
            out[(0, 0, te, subset)] = c
        for i in range(1, self.n_theta + 1):
            for (te, subset), c in self.image_theta[i].terms.items():
                out[(1, i, te, subset)] = c
        return out

    def __eq__(self, other):
        return (
            isinstance(other, ContactDerivation)
            and self.n_theta == other.n_theta
            and self.image_t == other.image_t
            and self.image_theta == other.image_theta
        )


def _d_epsilon(f: GrassmannElement) -> GrassmannElement:
    # d_t - (1/2) t^-1 sum_i theta_i d_theta_i
    correction = f.theta_degree_operator().t_shift(-1)
    return f.t_derivative() - correction * Scalar.from_fraction(Fraction(1, 2))


def _delta_weight(f: GrassmannElement) -> GrassmannElement:
    # (2 - sum theta d_theta) f
    return f * Scalar.from_int(2) - f.theta_degree_operator()


def contact_derivation(f: GrassmannElement, n_theta: int) -> ContactDerivation:
    """The contact field attached to a homogeneous f.

    Images on generators, read off the defining operator:
      D_f(t)       = Delta(f)
      D_f(theta_j) = -1/2 t^-1 Delta(f) theta_j + D_eps(f) theta_j
                     + (-1)^|f| t^-1 d_theta_j(f)
    """
    pf = f.parity()
    if pf is None:
        raise ValueError("contact_derivation needs homogeneous input")
    delta_f = _delta_weight(f)
    deps_f = _d_epsilon(f)
    img_t = delta_f
    img_theta = {}
    sign = Scalar.from_int((-1) ** pf)
    for j in range(1, n_theta + 1):
        theta_j = GrassmannElement.monomial(0, (j,))
        term1 = (delta_f * theta_j).t_shift(-1) * Scalar.from_fraction(
            Fraction(-1, 2)
        )
        term2 = deps_f * theta_j
        term3 = f.theta_derivative(j).t_shift(-1) * sign
        img_theta[j] = term1 + term2 + term3
    return ContactDerivation(n_theta, pf, img_t, img_theta)


def contact_bracket(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    """{f,g} = Delta(f) D_eps(g) - D_eps(f) Delta(g) + (-1)^|f| t^-1 sum df dg."""
    pf = f.parity()
    if pf is None:
        raise ValueError("contact_bracket needs homogeneous input")
    out = _delta_weight(f) * _d_epsilon(g) - _d_epsilon(f) * _delta_weight(g)
    acc = GrassmannElement()
    n = max(
        [i for (_, s) in list(f.terms) + list(g.terms) for i in s],
        default=0,
    )
    for i in range(1, n + 1):
        acc = acc + f.theta_derivative(i) * g.theta_derivative(i)
    sign = Scalar.from_int((-1) ** pf)
    return out + acc.t_shift(-1) * sign
