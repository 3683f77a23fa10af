"""
Brute-force oracles over tiny finite fields, independent of the solver.

FiniteGL enumerates GL_n(F_q) for n <= 3 and prime q in {2, 3} as explicit
matrices.  The two-variable function is obtained by counting:

    Q(u, v) = (|L^F| |U^F|)^{-1} #{x in G^F : x^{-1} u x in v U^F}

for the block upper-triangular parabolic P = L U of a composition.  The
count is certified against directly computed Harish-Chandra induction: for
every irreducible character psi of L^F,

    |L^F| <psi, Q(u, .)> = (R_L^G psi)(u)
                         = |P^F|^{-1} sum_{x : x u x^{-1} in P} psi(pr_L(x u x^{-1}))

using the closed-form character table of GL_2(q) (families U_alpha,
St_alpha, pi_{alpha,beta}, theta_phi) and the linear characters of GL_1(q).

The Gelfand-Graev character Gamma = Ind_U^G psi_reg, for a regular linear
character of the full unipotent radical, gives the scalar-product oracle
<Gamma, Gamma>.

Classical one-variable Green polynomials are recovered from Hall-Littlewood
symmetric functions: p_mu = sum_lam X^lam_mu(t) P_lam(x; t) and

    Q^lam_mu(q) = q^{n(lam)} X^lam_mu(q^{-1}).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as _iter_product

import sympy

from .characters import partitions
from .cyclo import CycQ
from .qpoly import QPoly
from .springer import n_of_partition, transpose_partition


class OracleError(ArithmeticError):
    """A brute-force cross-check failed."""


# ---------------------------------------------------------------------------
# tiny matrix arithmetic mod p


def _mat_mul(a, b, p):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
        for i in range(n)
    )


def _det(m, p):
    n = len(m)
    if n == 1:
        return m[0][0] % p
    if n == 2:
        return (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % p
    total = 0
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1 :] for row in m[1:])
        total += (-1) ** j * m[0][j] * _det(minor, p)
    return total % p


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mat_inv(m, p):
    n = len(m)
    det = _det(m, p)
    det_inv = pow(det, -1, p)
    if n == 1:
        return ((det_inv,),)
    cof = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = tuple(
                tuple(m[r][c] for c in range(n) if c != j)
                for r in range(n)
                if r != i
            )
            row.append((-1) ** (i + j) * _det(minor, p) if n > 1 else 1)
        cof.append(row)
    return tuple(
        tuple((cof[j][i] * det_inv) % p for j in range(n)) for i in range(n)
    )


def jordan_type(u, p):
    """Partition of n from the ranks of (u - 1)^k over F_p."""
    n = len(u)
    m = tuple(tuple((u[i][j] - (1 if i == j else 0)) % p for j in range(n)) for i in range(n))
    ranks = [n]
    power = _identity(n)
    for _ in range(n):
        power = _mat_mul(power, m, p)
        ranks.append(_rank(power, p))
    col = tuple(ranks[k - 1] - ranks[k] for k in range(1, n + 1))
    return transpose_partition(tuple(v for v in col if v))


def _rank(m, p):
    rows = [list(r) for r in m]
    n = len(rows)
    rank = 0
    col = 0
    while rank < n and col < n:
        piv = next((r for r in range(rank, n) if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(n):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def jordan_matrix(lam, n, p):
    """Unipotent n x n representative with Jordan type lam."""
    m = [[0] * n for _ in range(n)]
    pos = 0
    for part in lam:
        for k in range(part):
            m[pos + k][pos + k] = 1
            if k + 1 < part:
                m[pos + k][pos + k + 1] = 1
        pos += part
    return tuple(tuple(row) for row in m)


# ---------------------------------------------------------------------------
# the group


class FiniteGL:
    """GL_n(F_q) as an explicit list of matrices (n <= 3, q in {2, 3})."""

    def __init__(self, n: int, q: int):
        if n > 3 or q not in (2, 3):
            raise ValueError("oracle supports n <= 3 and q in {2, 3}")
        self.n, self.q = n, q
        self.elements = tuple(
            m
            for m in (
                tuple(
                    tuple(flat[i * n + j] for j in range(n)) for i in range(n)
                )
                for flat in _iter_product(range(q), repeat=n * n)
            )
            if _det(m, q)
        )
        self._inv = {m: _mat_inv(m, q) for m in self.elements}

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, a, b):
        return _mat_mul(a, b, self.q)

    def inv(self, m):
        return self._inv[m]

    # -- unipotent structure -------------------------------------------------

    @lru_cache(maxsize=None)
    def unipotent_class_sizes(self):
        """{partition: number of unipotent elements of that Jordan type}."""
        n, q = self.n, self.q
        out = {}
        for lam in partitions(n):
            rep = jordan_matrix(lam, n, q)
            cent = sum(
                1
                for x in self.elements
                if self.mul(x, rep) == self.mul(rep, x)
            )
            out[lam] = self.order // cent
        return out

    # -- parabolic data ------------------------------------------------------

    def _blocks(self, composition):
        if sum(composition) != self.n:
            raise ValueError("composition does not sum to n")
        spans = []
        start = 0
        for s in composition:
            spans.append(range(start, start + s))
            start += s
        return spans

    def radical_elements(self, composition):
        """The unipotent radical of the block upper-triangular parabolic."""
        spans = self._blocks(composition)
        above = [
            (i, j)
            for bi, si in enumerate(spans)
            for bj, sj in enumerate(spans)
            if bj > bi
            for i in si
            for j in sj
        ]
        out = []
        for flat in _iter_product(range(self.q), repeat=len(above)):
            m = [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
            for (i, j), v in zip(above, flat):
                m[i][j] = v
            out.append(tuple(tuple(row) for row in m))
        return tuple(out)

    def levi_elements(self, composition):
        spans = self._blocks(composition)
        factors = [FiniteGL(len(s), self.q) for s in spans]
        out = []
        for combo in _iter_product(*[f.elements for f in factors]):
            m = [[0] * self.n for _ in range(self.n)]
            for span, g in zip(spans, combo):
                for a, i in enumerate(span):
                    for b, j in enumerate(span):
                        m[i][j] = g[a][b]
            out.append(tuple(tuple(row) for row in m))
        return tuple(out)

    def in_parabolic(self, m, composition) -> bool:
        spans = self._blocks(composition)
        block_of = {}
        for b, span in enumerate(spans):
            for i in span:
                block_of[i] = b
        return all(
            m[i][j] == 0
            for i in range(self.n)
            for j in range(self.n)
            if block_of[i] > block_of[j]
        )

    def levi_part(self, m, composition):
        spans = self._blocks(composition)
        blocks = []
        for span in spans:
            blocks.append(tuple(tuple(m[i][j] for j in span) for i in span))
        return tuple(blocks)

    def levi_embed(self, blocks, composition):
        spans = self._blocks(composition)
        m = [[0] * self.n for _ in range(self.n)]
        for span, g in zip(spans, blocks):
            for a, i in enumerate(span):
                for b, j in enumerate(span):
                    m[i][j] = g[a][b]
        return tuple(tuple(row) for row in m)

    # -- the counted two-variable function -----------------------------------

    def hc_two_var(self, composition, u_partition, v_partitions) -> Fraction:
        """(|L^F| |U^F|)^{-1} #{x : x^{-1} u x in v U^F}.

        ``u_partition`` is the Jordan type of u in G; ``v_partitions`` the
        per-block Jordan types of the unipotent v in L.
        """
        u = jordan_matrix(u_partition, self.n, self.q)
        v = self.levi_embed(
            [jordan_matrix(lam, s, self.q) for lam, s in zip(v_partitions, composition)],
            composition,
        )
        radical = self.radical_elements(composition)
        target = {self.mul(v, r) for r in radical}
        count = sum(
            1
            for x in self.elements
            if self.mul(self.mul(self._inv[x], u), x) in target
        )
        levi_order = 1
        for s in composition:
            levi_order *= FiniteGL(s, self.q).order
        return Fraction(count, levi_order * len(radical))

    # -- certification against Harish-Chandra induction ----------------------

    def certify_hc(self, composition):
        """Check |L^F| <psi, Q(u, .)> = (R_L^G psi)(u) for all irreducible
        psi of L^F and all unipotent classes u; raise OracleError on failure.
        """
        if max(composition) > 2:
            raise OracleError("certification needs block sizes at most 2")
        spans = self._blocks(composition)
        psis = _levi_irreducibles(composition, self.q)
        radical = self.radical_elements(composition)
        levi_order = 1
        for s in composition:
            levi_order *= FiniteGL(s, self.q).order
        parabolic_order = levi_order * len(radical)
        levi_unip = [
            tuple(lams)
            for lams in _iter_product(*[partitions(s) for s in composition])
        ]
        # class sizes of unipotent classes inside L^F
        levi_factors = [FiniteGL(len(s), self.q) for s in spans]
        for u_lam in partitions(self.n):
            u = jordan_matrix(u_lam, self.n, self.q)
            # multiset of Levi projections of the parabolic-valued conjugates
            projections = []
            for x in self.elements:
                c = self.mul(self.mul(x, u), self._inv[x])
                if self.in_parabolic(c, composition):
                    projections.append(self.levi_part(c, composition))
            q_values = {
                v_lams: self.hc_two_var(composition, u_lam, v_lams)
                for v_lams in levi_unip
            }
            v_sizes = {
                v_lams: _prod(
                    f.unipotent_class_sizes()[lam]
                    for f, lam in zip(levi_factors, v_lams)
                )
                for v_lams in levi_unip
            }
            for psi in psis:
                lhs = CycQ(0)
                for v_lams in levi_unip:
                    reps = tuple(
                        jordan_matrix(lam, s, self.q)
                        for lam, s in zip(v_lams, composition)
                    )
                    lhs = lhs + psi(reps) * CycQ(
                        Fraction(v_sizes[v_lams]) * q_values[v_lams]
                    )
                rhs = CycQ(0)
                for blocks in projections:
                    rhs = rhs + psi(blocks)
                rhs = rhs * CycQ(Fraction(1, parabolic_order))
                if lhs != rhs:
                    raise OracleError(
                        f"HC certification fails: composition {composition}, "
                        f"u {u_lam}: {lhs} != {rhs}"
                    )
        return True

    # -- Gelfand-Graev -------------------------------------------------------

    def gg_inner_product(self) -> CycQ:
        """<Gamma, Gamma> for Gamma = Ind_U^G of a regular character of U."""
        q = self.q
        radical = self.radical_elements(tuple([1] * self.n))

        def psi(m) -> CycQ:
            s = sum(m[i][i + 1] for i in range(self.n - 1)) % q
            return CycQ.zeta(q, s) if s else CycQ(1)

        u_set = set(radical)
        total = CycQ(0)
        for lam, size in self.unipotent_class_sizes().items():
            rep = jordan_matrix(lam, self.n, q)
            gamma = CycQ(0)
            for x in self.elements:
                c = self.mul(self.mul(x, rep), self._inv[x])
                if c in u_set:
                    gamma = gamma + psi(c)
            gamma = gamma * CycQ(Fraction(1, len(radical)))
            total = total + gamma * gamma.conjugate() * CycQ(size)
        return total * CycQ(Fraction(1, self.order))


def _prod(items):
    out = 1
    for v in items:
        out *= v
    return out


# ---------------------------------------------------------------------------
# character tables of the tiny Levi factors


class _FieldExt:
    """F_{q^2} = F_q[t]/(t^2 - c1 t - c0), with discrete logarithms."""

    MODULI = {2: (1, 1), 3: (0, 2)}  # t^2 = c1 t + c0

    def __init__(self, q: int):
        self.q = q
        self.c1, self.c0 = self.MODULI[q]
        self.elements = [
            (a, b) for a in range(q) for b in range(q) if (a, b) != (0, 0)
        ]
        gen = next(g for g in self.elements if self._order(g) == q * q - 1)
        self.dlog = {}
        z = (1, 0)
        for k in range(q * q - 1):
            self.dlog[z] = k
            z = self.mul(z, gen)

    def mul(self, x, y):
        q, c1, c0 = self.q, self.c1, self.c0
        a, b = x
        c, d = y
        hi = b * d
        return ((a * c + hi * c0) % q, (a * d + b * c + hi * c1) % q)

    def _order(self, x):
        k, z = 1, x
        while z != (1, 0):
            z = self.mul(z, x)
            k += 1
        return k

    def frobenius(self, x):
        out = (1, 0)
        for _ in range(self.q):
            out = self.mul(out, x)
        return out


def gl1_characters(q: int):
    """The q - 1 linear characters of GL_1(F_q), as functions of 1x1 blocks."""
    group = sorted(x for x in range(1, q))
    gen = next(g for g in group if _mult_order(g, q) == q - 1)
    dlog = {}
    z = 1
    for k in range(q - 1):
        dlog[z] = k
        z = (z * gen) % q
    chars = []
    for j in range(q - 1):
        def chi(m, j=j, dlog=dlog, q=q):
            x = m[0][0] % q
            e = (j * dlog[x]) % (q - 1)
            return CycQ.zeta(q - 1, e) if e else CycQ(1)

        chars.append(chi)
    return chars


def _mult_order(g, q):
    k, z = 1, g % q
    while z != 1:
        z = (z * g) % q
        k += 1
    return k


def _gl2_class(m, q, ext: _FieldExt):
    tr = (m[0][0] + m[1][1]) % q
    det = _det(m, q)
    roots = [x for x in range(q) if (x * x - tr * x + det) % q == 0]
    if len(roots) == 2:
        return ("split", roots[0], roots[1])
    if len(roots) == 1:
        x = roots[0]
        scalar = m == ((x, 0), (0, x))
        return ("scalar", x) if scalar else ("nonsemisimple", x)
    for w in ext.elements:
        lhs = ext.mul(w, w)
        rhs_t = ext.mul((tr % q, 0), w)
        rhs = ((rhs_t[0] - det) % q, rhs_t[1] % q)
        if lhs == rhs:
            return ("anisotropic", w)
    raise OracleError("characteristic polynomial has no root in F_{q^2}")


def gl2_characters(q: int):
    """The closed-form irreducible characters of GL_2(F_q)."""
    ext = _FieldExt(q)
    n1 = q - 1
    n2 = q * q - 1

    def a_val(j, x):  # alpha_j(x) for x in F_q^*
        e = (j * _fq_dlog(q)[x]) % n1
        return CycQ.zeta(n1, e) if e else CycQ(1)

    def phi_val(j, w):  # phi_j(w) for w in F_{q^2}^*
        e = (j * ext.dlog[w]) % n2
        return CycQ.zeta(n2, e) if e else CycQ(1)

    def embed(x):
        return (x % q, 0)

    chars = []
    for j in range(n1):  # U_alpha: alpha(det)
        def u_alpha(m, j=j):
            kind = _gl2_class(m, q, ext)
            if kind[0] in ("scalar", "nonsemisimple"):
                return a_val(j, kind[1]) * a_val(j, kind[1])
            if kind[0] == "split":
                return a_val(j, kind[1]) * a_val(j, kind[2])
            w = kind[1]
            norm = ext.mul(w, ext.frobenius(w))
            return a_val(j, norm[0])

        chars.append(u_alpha)
    for j in range(n1):  # St tensor U_alpha, degree q
        def st_alpha(m, j=j):
            kind = _gl2_class(m, q, ext)
            if kind[0] == "scalar":
                return CycQ(q) * a_val(j, kind[1]) * a_val(j, kind[1])
            if kind[0] == "nonsemisimple":
                return CycQ(0)
            if kind[0] == "split":
                return a_val(j, kind[1]) * a_val(j, kind[2])
            w = kind[1]
            norm = ext.mul(w, ext.frobenius(w))
            return -a_val(j, norm[0])

        chars.append(st_alpha)
    for j1 in range(n1):  # principal series pi_{alpha,beta}, degree q + 1
        for j2 in range(j1 + 1, n1):
            def prin(m, j1=j1, j2=j2):
                kind = _gl2_class(m, q, ext)
                if kind[0] == "scalar":
                    return CycQ(q + 1) * a_val(j1, kind[1]) * a_val(j2, kind[1])
                if kind[0] == "nonsemisimple":
                    return a_val(j1, kind[1]) * a_val(j2, kind[1])
                if kind[0] == "split":
                    x, y = kind[1], kind[2]
                    return a_val(j1, x) * a_val(j2, y) + a_val(j1, y) * a_val(j2, x)
                return CycQ(0)

            chars.append(prin)
    seen = set()
    for j in range(n2):  # cuspidal theta_phi, degree q - 1, phi^q != phi
        jq = (j * q) % n2
        if jq == j or j in seen:
            continue
        seen.add(j)
        seen.add(jq)

        def cusp(m, j=j):
            kind = _gl2_class(m, q, ext)
            if kind[0] == "scalar":
                return CycQ(q - 1) * phi_val(j, embed(kind[1]))
            if kind[0] == "nonsemisimple":
                return -phi_val(j, embed(kind[1]))
            if kind[0] == "split":
                return CycQ(0)
            w = kind[1]
            return -(phi_val(j, w) + phi_val(j, ext.frobenius(w)))

        chars.append(cusp)
    return chars


@lru_cache(maxsize=None)
def _fq_dlog(q: int):
    gen = next(g for g in range(1, q) if _mult_order(g, q) == q - 1)
    dlog = {}
    z = 1
    for k in range(q - 1):
        dlog[z] = k
        z = (z * gen) % q
    return dlog


def _levi_irreducibles(composition, q):
    """Irreducible characters of the Levi L^F, as functions of block tuples."""
    per_block = []
    for s in composition:
        if s == 1:
            per_block.append(gl1_characters(q))
        elif s == 2:
            per_block.append(gl2_characters(q))
        else:
            raise OracleError("characters available only for blocks of size <= 2")
    out = []
    for combo in _iter_product(*per_block):
        def psi(blocks, combo=combo):
            v = CycQ(1)
            for chi, blk in zip(combo, blocks):
                v = v * chi(blk)
            return v

        out.append(psi)
    return out


# ---------------------------------------------------------------------------
# classical Green polynomials via Hall-Littlewood symmetrization


@lru_cache(maxsize=None)
def _hall_littlewood_basis(n: int):
    """Monomial coefficient vectors of P_lam(x_1..x_n; t) for lam |- n."""
    xs = sympy.symbols(f"x0:{n}")
    t = sympy.Symbol("t")
    from itertools import permutations
    from sympy import cancel, factorial, prod

    def v_factor(lam):
        mults = {}
        padded = tuple(lam) + (0,) * (n - len(lam))
        for part in padded:
            mults[part] = mults.get(part, 0) + 1
        out = sympy.Integer(1)
        for m in mults.values():
            phi = sympy.Integer(1)
            for i in range(1, m + 1):
                phi *= (1 - t**i) / (1 - t)
            out *= phi
        return out

    basis = {}
    for lam in partitions(n):
        padded = tuple(lam) + (0,) * (n - len(lam))
        total = sympy.Integer(0)
        for w in permutations(range(n)):
            term = prod(xs[w[i]] ** padded[i] for i in range(n))
            for i in range(n):
                for j in range(i + 1, n):
                    term *= (xs[w[i]] - t * xs[w[j]]) / (xs[w[i]] - xs[w[j]])
            total += term
        poly = sympy.expand(cancel(total / v_factor(lam)))
        coeffs = {}
        for mono, c in sympy.Poly(poly, *xs).as_dict().items():
            coeffs[mono] = sympy.expand(c)
        basis[lam] = coeffs
    return basis, xs, t


@lru_cache(maxsize=None)
def green_polynomial(lam: tuple, mu: tuple) -> QPoly:
    """Q^lam_mu(q), the classical Green polynomial of GL_n.

    >>> from greenfn.qpoly import render_poly
    >>> render_poly(green_polynomial((1, 1), (1, 1)))
    'Phi2'
    """
    n = sum(lam)
    if sum(mu) != n:
        raise ValueError("partitions have different sizes")
    basis, xs, t = _hall_littlewood_basis(n)
    power = sympy.Integer(1)
    for k in mu:
        power *= sum(x**k for x in xs)
    target = sympy.Poly(sympy.expand(power), *xs).as_dict()
    # unitriangular change of basis: P_lam = m_lam + lower terms, so peel off
    # leading monomials in dominance (here: reverse-lex partition) order
    coeffs = {}
    remaining = dict(target)
    for lam2 in partitions(n):
        padded = tuple(lam2) + (0,) * (n - len(lam2))
        c = sympy.expand(remaining.get(padded, sympy.Integer(0)))
        coeffs[lam2] = c
        if c != 0:
            for mono, val in basis[lam2].items():
                new = sympy.expand(remaining.get(mono, sympy.Integer(0)) - c * val)
                remaining[mono] = new
    if any(sympy.expand(v) != 0 for v in remaining.values()):
        raise OracleError("power sum did not reduce in the Hall-Littlewood basis")
    x_poly = sympy.Poly(sympy.expand(coeffs[lam]), t)
    qs = sympy.Symbol("q")
    expr = sympy.expand(qs ** n_of_partition(lam) * x_poly.as_expr().subs(t, 1 / qs))
    out = sympy.Poly(expr, qs)
    vals = [0] * (sympy.degree(out, qs) + 1)
    for (e,), c in out.as_dict().items():
        vals[e] = Fraction(int(sympy.nsimplify(c)))
    return QPoly(vals)
