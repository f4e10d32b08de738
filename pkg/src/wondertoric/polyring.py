"""Graded integer polynomials, strong Groebner bases over Z, rank oracles.

Monomials are dense exponent tuples over a fixed variable table; the
order is degree-first (with per-variable weights) and reverse
lexicographic on ties, against a variable ranking that lists the largest
variable first.  Coefficients are arbitrary-precision integers.

The Groebner machinery is the strong (Z-coefficient) variant: reduction
divides coefficients with remainder, and completion closes under both
S-polynomials and GCD-polynomials.  All ideal generators the package
feeds in are homogeneous, which makes degree-truncated runs sound.
"""

from __future__ import annotations

from math import gcd

from .intlinalg import snf

Monomial = tuple


class VariableTable:
    """Fixed variable universe: names, weights and the monomial order.

    Positions run from the largest variable to the smallest; weights are
    positive integers (blowup variables weigh their nested-set size,
    toric variables weigh one).
    """

    def __init__(self, keys, weights, names, kinds):
        self.keys = tuple(keys)
        self.weights = tuple(int(w) for w in weights)
        self.names = tuple(names)
        self.kinds = tuple(kinds)
        self.n = len(self.keys)
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be positive")
        self.position = {k: i for i, k in enumerate(self.keys)}
        if len(self.position) != self.n:
            raise ValueError("duplicate variable keys")
        self._one = (0,) * self.n
        self._mono_cache: dict = {}

    # -- monomials -----------------------------------------------------

    def one(self) -> Monomial:
        return self._one

    def variable(self, key, exp: int = 1) -> Monomial:
        i = self.position[key]
        return self._one[:i] + (exp,) + self._one[i + 1:]

    def mono_degree(self, m: Monomial) -> int:
        w = self.weights
        return sum(e * w[i] for i, e in enumerate(m) if e)

    def mono_mul(self, a: Monomial, b: Monomial) -> Monomial:
        return tuple(x + y for x, y in zip(a, b))

    def mono_divides(self, a: Monomial, b: Monomial) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def mono_div(self, a: Monomial, b: Monomial) -> Monomial:
        return tuple(x - y for x, y in zip(a, b))

    def mono_lcm(self, a: Monomial, b: Monomial) -> Monomial:
        return tuple(x if x > y else y for x, y in zip(a, b))

    def mono_mask(self, m: Monomial) -> int:
        out = 0
        for i, e in enumerate(m):
            if e:
                out |= 1 << i
        return out

    def mono_key(self, m: Monomial):
        """Sort key: ascending under the monomial order."""
        return (self.mono_degree(m), tuple(-e for e in reversed(m)))

    def mono_name(self, m: Monomial) -> str:
        parts = []
        for i, e in enumerate(m):
            if not e:
                continue
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def monomials_of_degree(self, d: int, positions=None) -> list[Monomial]:
        pos = tuple(positions) if positions is not None else tuple(range(self.n))
        cached = self._mono_cache.get((d, pos))
        if cached is not None:
            return cached
        out: list[Monomial] = []
        expo = [0] * self.n

        def rec(i: int, rem: int):
            if rem == 0:
                out.append(tuple(expo))
                return
            if i == len(pos):
                return
            p = pos[i]
            w = self.weights[p]
            for e in range(rem // w, -1, -1):
                expo[p] = e
                rec(i + 1, rem - e * w)
            expo[p] = 0

        rec(0, d)
        out.sort(key=self.mono_key, reverse=True)
        self._mono_cache[(d, pos)] = out
        return out

    # -- polynomials ----------------------------------------------------

    def poly(self, terms: dict) -> "Polynomial":
        return Polynomial({m: int(c) for m, c in terms.items() if c})

    def term(self, coeff: int, mono: Monomial) -> "Polynomial":
        return Polynomial({mono: coeff}) if coeff else Polynomial({})

    def const(self, coeff: int) -> "Polynomial":
        return self.term(coeff, self._one)

    def leading(self, f: "Polynomial") -> tuple[Monomial, int]:
        m = max(f.terms, key=self.mono_key)
        return m, f.terms[m]

    def degree(self, f: "Polynomial") -> int:
        return max(self.mono_degree(m) for m in f.terms)

    def is_homogeneous(self, f: "Polynomial") -> bool:
        degs = {self.mono_degree(m) for m in f.terms}
        return len(degs) <= 1

    def sorted_terms(self, f: "Polynomial") -> list[tuple[Monomial, int]]:
        return sorted(f.terms.items(), key=lambda t: self.mono_key(t[0]),
                      reverse=True)

    def poly_name(self, f: "Polynomial") -> str:
        if not f.terms:
            return "0"
        bits = []
        for m, c in self.sorted_terms(f):
            s = self.mono_name(m)
            if s == "1":
                bits.append(f"{'+' if c > 0 else '-'}{abs(c)}")
            elif abs(c) == 1:
                bits.append(("+" if c > 0 else "-") + s)
            else:
                bits.append(f"{'+' if c > 0 else '-'}{abs(c)}*{s}")
        out = "".join(bits)
        return out[1:] if out.startswith("+") else out


def compare(table: VariableTable, m1: Monomial, m2: Monomial) -> int:
    """Weighted degree-reverse-lexicographic comparison: -1, 0 or 1."""
    k1, k2 = table.mono_key(m1), table.mono_key(m2)
    return (k1 > k2) - (k1 < k2)


class Polynomial:
    """Sparse integer polynomial: monomial -> nonzero coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(out)

    def __neg__(self):
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int):
        if scalar == 0:
            return Polynomial({})
        return Polynomial({m: scalar * c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.__rmul__(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = out.get(m, 0) + c1 * c2
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Polynomial(out)

    def mul_term(self, coeff: int, mono: Monomial) -> "Polynomial":
        if coeff == 0:
            return Polynomial({})
        return Polynomial({tuple(x + y for x, y in zip(m, mono)): coeff * c
                           for m, c in self.terms.items()})

    def __repr__(self):
        return f"Polynomial({len(self.terms)} terms)"


def _normalize_sign(table: VariableTable, f: Polynomial) -> Polynomial:
    _, lc = table.leading(f)
    return -f if lc < 0 else f


class GroebnerBasis:
    """A reducer set over Z with cached leading data.

    Reduction is coefficient-aware: a generator applies to a term when its
    leading monomial divides the term's and its (positive) leading
    coefficient is at most the term's in absolute value, in which case the
    term's coefficient is replaced by its remainder.
    """

    def __init__(self, table: VariableTable, polys):
        self.table = table
        self.elements: list[Polynomial] = []
        self._lm: list[Monomial] = []
        self._lc: list[int] = []
        self._mask: list[int] = []
        self._deg: list[int] = []
        seen = set()
        for f in polys:
            if not f:
                continue
            f = _normalize_sign(table, f)
            h = frozenset(f.terms.items())
            if h in seen:
                continue
            seen.add(h)
            self._append(f)

    def _append(self, f: Polynomial):
        lm, lc = self.table.leading(f)
        self.elements.append(f)
        self._lm.append(lm)
        self._lc.append(lc)
        self._mask.append(self.table.mono_mask(lm))
        self._deg.append(self.table.mono_degree(lm))

    def __len__(self):
        return len(self.elements)

    @property
    def torsion_suspect(self) -> bool:
        return any(abs(c) != 1 for c in self._lc)

    def _find_reducer(self, mono: Monomial, coeff: int, mask: int, deg: int):
        lms, lcs, masks, degs = self._lm, self._lc, self._mask, self._deg
        ac = abs(coeff)
        for i in range(len(lms)):
            if degs[i] > deg or (masks[i] & ~mask) or lcs[i] > ac:
                continue
            lm = lms[i]
            ok = True
            for a, b in zip(lm, mono):
                if a > b:
                    ok = False
                    break
            if ok:
                return i
        return None

    def reduce(self, f: Polynomial, certificate: bool = False):
        """Normal form: no remaining term is reducible by the basis."""
        table = self.table
        key = table.mono_key
        work = dict(f.terms)
        out: dict = {}
        cert: dict[int, Polynomial] = {}
        while work:
            m = max(work, key=key)
            c = work.pop(m)
            mask = table.mono_mask(m)
            deg = table.mono_degree(m)
            while True:
                i = self._find_reducer(m, c, mask, deg)
                if i is None:
                    out[m] = c
                    break
                q, r = divmod(c, self._lc[i])
                shift = table.mono_div(m, self._lm[i])
                for mm, cc in self.elements[i].terms.items():
                    if mm == self._lm[i]:
                        continue
                    key_m = table.mono_mul(mm, shift)
                    v = work.get(key_m, 0) - q * cc
                    if v:
                        work[key_m] = v
                    else:
                        work.pop(key_m, None)
                if certificate:
                    cert[i] = cert.get(i, Polynomial({})) + Polynomial({shift: q})
                c = r
                if c == 0:
                    break
        nf = Polynomial(out)
        return (nf, cert) if certificate else nf

    def minimalize(self) -> "GroebnerBasis":
        """Drop strongly redundant leads, tail-reduce, canonical sort."""
        keep = []
        for i in range(len(self.elements)):
            redundant = False
            for j in range(len(self.elements)):
                if i == j:
                    continue
                if (self.table.mono_divides(self._lm[j], self._lm[i])
                        and self._lc[i] % self._lc[j] == 0):
                    if self._lm[j] == self._lm[i] and self._lc[j] == self._lc[i] and j > i:
                        continue
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        kept = [self.elements[i] for i in keep]
        reduced = []
        for i, f in enumerate(kept):
            others = GroebnerBasis(self.table, reduced + kept[i + 1:])
            lm, lc = self.table.leading(f)
            tail = others.reduce(f - Polynomial({lm: lc}))
            reduced.append(Polynomial({lm: lc}) + tail)
        reduced.sort(key=lambda g: self.table.mono_key(self.table.leading(g)[0]))
        return GroebnerBasis(self.table, reduced)

    # -- escalier -------------------------------------------------------

    def _unit_leads(self):
        return [(self._lm[i], self._mask[i], self._deg[i])
                for i in range(len(self._lm)) if abs(self._lc[i]) == 1]

    def standard_monomials(self, d: int, positions=None) -> list[Monomial]:
        """Degree-d monomials outside the unit-coefficient initial ideal."""
        leads = self._unit_leads()
        out = []
        for m in self.table.monomials_of_degree(d, positions):
            mask = self.table.mono_mask(m)
            divisible = False
            for lm, lmask, ldeg in leads:
                if ldeg > d or (lmask & ~mask):
                    continue
                if self.table.mono_divides(lm, m):
                    divisible = True
                    break
            if not divisible:
                out.append(m)
        return out

    def hilbert(self, up_to: int, positions=None) -> list[int]:
        return [len(self.standard_monomials(d, positions))
                for d in range(up_to + 1)]


def normal_form(table: VariableTable, f: Polynomial, basis) -> Polynomial:
    """Normal form of ``f`` against a list of reducers (or a basis object)."""
    if not isinstance(basis, GroebnerBasis):
        basis = GroebnerBasis(table, basis)
    return basis.reduce(f)


def s_polynomial(table: VariableTable, f: Polynomial, g: Polynomial) -> Polynomial:
    mf, cf = table.leading(f)
    mg, cg = table.leading(g)
    lcm_m = table.mono_lcm(mf, mg)
    lcm_c = abs(cf * cg) // gcd(cf, cg)
    return (f.mul_term(lcm_c // cf, table.mono_div(lcm_m, mf))
            - g.mul_term(lcm_c // cg, table.mono_div(lcm_m, mg)))


def gcd_polynomial(table: VariableTable, f: Polynomial, g: Polynomial) -> Polynomial:
    mf, cf = table.leading(f)
    mg, cg = table.leading(g)
    lcm_m = table.mono_lcm(mf, mg)
    d, a, b = _ext_gcd(cf, cg)
    return (f.mul_term(a, table.mono_div(lcm_m, mf))
            + g.mul_term(b, table.mono_div(lcm_m, mg)))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _pair_degree(table, lm1, lm2) -> int:
    return table.mono_degree(table.mono_lcm(lm1, lm2))


def buchberger(table: VariableTable, gens, degree_cap: int) -> GroebnerBasis:
    """Strong Groebner basis over Z, truncated above ``degree_cap``.

    All generators must be homogeneous (this is what makes the truncation
    sound); the result is inter-reduced and canonically ordered.
    """
    gens = [g for g in gens if g]
    for g in gens:
        if not table.is_homogeneous(g):
            raise ValueError("degree-capped completion requires homogeneous input")
    basis = GroebnerBasis(table, gens)
    pending: list[tuple[int, int, int, str]] = []

    def add_pairs(j):
        for i in range(j):
            deg = _pair_degree(table, basis._lm[i], basis._lm[j])
            if deg > degree_cap:
                continue
            if len(basis.elements[i].terms) > 1 or len(basis.elements[j].terms) > 1:
                pending.append((deg, i, j, "s"))
            ci, cj = basis._lc[i], basis._lc[j]
            if ci % cj and cj % ci:
                pending.append((deg, i, j, "g"))

    for j in range(len(basis)):
        add_pairs(j)
    pending.sort()
    pos = 0
    while pos < len(pending):
        deg, i, j, kind = pending[pos]
        pos += 1
        if kind == "s":
            h = s_polynomial(table, basis.elements[i], basis.elements[j])
        else:
            h = gcd_polynomial(table, basis.elements[i], basis.elements[j])
        h = basis.reduce(h)
        if h:
            basis._append(_normalize_sign(table, h))
            add_pairs(len(basis) - 1)
            tail = pending[pos:]
            tail.sort()
            pending = pending[:pos] + tail
    return basis.minimalize()


def is_groebner(table: VariableTable, polys, degree_cap: int) -> bool:
    """Do all S- and GCD-pairs reduce to zero below the degree cap?"""
    basis = GroebnerBasis(table, polys)
    n = len(basis)
    for i in range(n):
        for j in range(i + 1, n):
            deg = _pair_degree(table, basis._lm[i], basis._lm[j])
            if deg > degree_cap:
                continue
            both_monomial = (len(basis.elements[i].terms) == 1
                             and len(basis.elements[j].terms) == 1)
            if not both_monomial:
                if basis.reduce(s_polynomial(table, basis.elements[i],
                                             basis.elements[j])):
                    return False
            ci, cj = basis._lc[i], basis._lc[j]
            if ci % cj and cj % ci:
                if basis.reduce(gcd_polynomial(table, basis.elements[i],
                                               basis.elements[j])):
                    return False
    return True


# -- SNF rank oracle --------------------------------------------------------


def _sparse_quotient(rows: list[dict], ncols: int) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of Z^ncols modulo the row span.

    Unit pivots are contracted greedily; anything left without a unit
    entry goes through a dense Smith normal form.
    """
    rows = [dict(r) for r in rows if r]
    col_rows: dict[int, set[int]] = {}
    for ridx, r in enumerate(rows):
        for c in r:
            col_rows.setdefault(c, set()).add(ridx)
    alive = set(range(len(rows)))
    contracted = 0

    def row_sub(dst: int, src: int, q: int):
        rd, rs = rows[dst], rows[src]
        for c, v in rs.items():
            nv = rd.get(c, 0) - q * v
            if nv:
                if c not in rd:
                    col_rows.setdefault(c, set()).add(dst)
                rd[c] = nv
            elif c in rd:
                del rd[c]
                col_rows[c].discard(dst)

    while True:
        pivot = None
        best = None
        for ridx in alive:
            for c, v in rows[ridx].items():
                if abs(v) == 1:
                    cost = (len(rows[ridx]) - 1) * (len(col_rows[c]) - 1)
                    if best is None or cost < best:
                        best = cost
                        pivot = (ridx, c)
                    if cost == 0:
                        break
            if best == 0:
                break
        if pivot is None:
            break
        ridx, c = pivot
        q0 = rows[ridx][c]
        if q0 < 0:
            rows[ridx] = {cc: -vv for cc, vv in rows[ridx].items()}
        for other in list(col_rows.get(c, ())):
            if other == ridx or other not in alive:
                continue
            row_sub(other, ridx, rows[other][c])
        for cc in rows[ridx]:
            col_rows[cc].discard(ridx)
        alive.discard(ridx)
        col_rows.pop(c, None)
        contracted += 1

    residual_rows = [rows[r] for r in alive if rows[r]]
    if not residual_rows:
        return ncols - contracted, ()
    res_cols = sorted({c for r in residual_rows for c in r})
    cidx = {c: k for k, c in enumerate(res_cols)}
    dense = [[0] * len(res_cols) for _ in residual_rows]
    for k, r in enumerate(residual_rows):
        for c, v in r.items():
            dense[k][cidx[c]] = v
    res = snf(dense)
    torsion = tuple(d for d in res.invariant_factors if d != 1)
    return ncols - contracted - res.rank, torsion


def graded_rank_oracle(table: VariableTable, gens, d: int,
                       max_monomials: int = 20000) -> tuple[int, tuple[int, ...]]:
    """Free rank and torsion of degree ``d`` of the quotient by ``gens``.

    Rows are all monomial multiples of the generators landing in degree
    ``d``, expressed in the degree-``d`` monomial basis; the quotient is
    read off a sparse Smith elimination.  Entirely independent of the
    Groebner route.
    """
    cols = table.monomials_of_degree(d)
    if len(cols) > max_monomials:
        raise ValueError(
            f"degree {d} has {len(cols)} monomials, above the cap {max_monomials}")
    col_index = {m: i for i, m in enumerate(cols)}
    rows = []
    for g in gens:
        if not g:
            continue
        gd = table.degree(g)
        if not table.is_homogeneous(g):
            raise ValueError("rank oracle requires homogeneous generators")
        if gd > d:
            continue
        for m in table.monomials_of_degree(d - gd):
            row = {}
            for mm, cc in g.terms.items():
                row[col_index[table.mono_mul(mm, m)]] = cc
            rows.append(row)
    return _sparse_quotient(rows, len(cols))
