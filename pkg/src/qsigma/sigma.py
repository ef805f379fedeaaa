"""The dual bimodule map on T (x) T, its spectrum, and verification checks.

For a tangent basis vector presented as rho(l·E_x) with l a pure-E Levi
word, the map acts by

    sigma(rho(l·E_x) (x) Y) = sum  l_(1) K_x^{-1} S(l_(3)) · Y  (x)  rho(l_(2) E_x)

over the three-leg coproduct of l (the grouplike pair attached to E_x is
(K_x, 1), fixed by the coproduct convention of the engine).  Everything is
exact over Q(q); spectra are found by specialising at rational points and
verifying candidates as exact kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import linalg
from .scalar import ONE, ZERO, LaurentFraction, q_power, render
from .tangent import ConsistencyError, TangentSpace, rho_restrict
from .uqg import AlgebraElement, Monomial


class NotAnEigenvectorError(Exception):
    """Raised when eigenvalue_of is handed a non-eigenvector."""


class SpectrumError(Exception):
    """A weight block could not be fully resolved into exact eigenspaces."""


class EquivarianceError(Exception):
    """The map fails to commute with a Levi generator (carries the generator)."""

    def __init__(self, generator):
        self.generator = generator
        super().__init__(f"map does not commute with {generator}")


class SingularMatrixError(Exception):
    """Inversion was requested for a singular matrix."""


DEFAULT_POINTS = (Fraction(2), Fraction(7, 3))


class SigmaMatrix:
    """Exact matrix of the dual map on T (x) T, block-diagonal by weight."""

    def __init__(self, tangent: TangentSpace, cols):
        self.tangent = tangent
        self.dim = tangent.dim * tangent.dim
        self.cols = cols

    def entry(self, r: int, c: int) -> LaurentFraction:
        return self.cols.get(c, {}).get(r, ZERO)

    def apply(self, vec: list) -> list:
        out = [ZERO] * self.dim
        for c, v in enumerate(vec):
            if not v:
                continue
            col = self.cols.get(c)
            if not col:
                continue
            for r, m in col.items():
                out[r] = out[r] + m * v
        return out

    def blocks(self):
        return self.tangent.tensor_blocks()

    def dense_block(self, idxs, shift: Optional[LaurentFraction] = None):
        """Dense submatrix on the given flat indices, optionally plus shift·I."""
        local = {flat: t for t, flat in enumerate(idxs)}
        m = len(idxs)
        out = [[ZERO] * m for _ in range(m)]
        for t, flat in enumerate(idxs):
            for r, v in self.cols.get(flat, {}).items():
                out[local[r]][t] = v
        if shift is not None:
            for t in range(m):
                out[t][t] = out[t][t] + shift
        return out

    def check_block_structure(self):
        """Entries must vanish between different total weights."""
        for c, col in self.cols.items():
            wc = self.tangent.tensor_weight(c)
            for r in col:
                if self.tangent.tensor_weight(r) != wc:
                    raise ConsistencyError(
                        "sigma matrix entry crosses weight blocks")


def sigma_apply(tangent: TangentSpace, levi_word: AlgebraElement,
                y: list) -> list:
    """Image of rho(l·E_x) (x) y under the dual map, in tensor coordinates.

    `levi_word` must be a weight-homogeneous element of the Levi subalgebra
    (no E_x, F_x); `y` is a coordinate vector of T.
    """
    alg = tangent.alg
    x = tangent.node
    weights = set()
    pure_words = True
    for m in levi_word.terms:
        if x in m.e_word or x in m.f_word:
            raise ConsistencyError("element is not in the Levi subalgebra")
        weights.add(alg.monomial_weight(m))
        if m.f_word or any(m.k_exp):
            pure_words = False
    if len(weights) > 1:
        raise ConsistencyError("element is not weight-homogeneous")

    n = tangent.dim
    out = [ZERO] * (n * n)
    if pure_words:
        for m, c in levi_word.terms.items():
            for j, b in enumerate(y):
                if b:
                    _sigma_word_column(tangent, m.e_word, j, c * b, out)
        return out

    y_hat = alg.zero()
    for i, c in enumerate(y):
        if c:
            y_hat = y_hat + alg.e_word(tangent.basis_words[i]).scaled(c)
    k_x_inv = alg.K(x, -1)
    e_x = alg.E(x)
    for (m1, m2, m3), coeff in levi_word.coproduct(3).terms.items():
        left = (AlgebraElement(alg, {m1: ONE}) * k_x_inv
                * AlgebraElement(alg, {m3: ONE}).antipode() * y_hat)
        right = AlgebraElement(alg, {m2: ONE}) * e_x
        _accumulate_tensor(tangent.express(rho_restrict(left)),
                           tangent.express(rho_restrict(right)), coeff, out, n)
    return out


def _accumulate_tensor(v1, v2, coeff, out, n):
    for i, a in enumerate(v1):
        if not a:
            continue
        ca = coeff * a
        for j, b in enumerate(v2):
            if b:
                out[i * n + j] = out[i * n + j] + ca * b


def _sigma_word_column(tangent: TangentSpace, word, y_index, coeff, out):
    """Accumulate the image of rho(word·E_x) (x) basis_y for one pure lift word.

    The three-leg coproduct of an E-word assigns each letter a leg; legs
    contribute to T only when their weights land on roots, so assignments
    are enumerated mask-first and weight-pruned before any algebra work.
    """
    alg = tangent.alg
    cd = tangent.cartan
    x = tangent.node
    n = tangent.dim
    alpha = [None] + [cd.simple_root(i) for i in range(1, cd.rank + 1)]
    root_set = tangent._roots
    m = len(word)
    y_word = tangent.basis_words[y_index]
    y_weight = tangent.basis_weights[y_index]
    word_weight = alg.word_weight(word)
    leg1_weight_total = tuple(a + b for a, b in zip(word_weight, y_weight))
    k_x_inv = Monomial((), tuple(-v for v in alpha[x]), ())
    y_mono = Monomial(y_word, alg._zero_k, ())
    e_x = Monomial((x,), alg._zero_k, ())

    unit = alg.unit_monomial()
    for mask2 in range(1 << m):
        wt2 = [0] * cd.rank
        for t in range(m):
            if mask2 >> t & 1:
                wt2[word[t] - 1] += 1
        wt2[x - 1] += 1
        if tuple(wt2) not in root_set:
            continue
        rem = [t for t in range(m) if not mask2 >> t & 1]
        leg1_weight = tuple(a - b for a, b in zip(leg1_weight_total, wt2))
        # leg1 carries one E_x (from y); add it back after removing leg2's
        leg1_weight = tuple(
            v + (1 if i == x - 1 else 0) for i, v in enumerate(leg1_weight))
        if leg1_weight not in root_set:
            continue
        for sub in range(1 << len(rem)):
            in_leg1 = [rem[t] for t in range(len(rem)) if sub >> t & 1]
            # build the three legs as monomials, folding letters in order
            legs = {t: 1 for t in range(m) if mask2 >> t & 1}
            for t in in_leg1:
                legs[t] = 0
            m1 = unit
            m2 = unit
            m3 = unit
            c = coeff
            for t in range(m):
                letter = word[t]
                leg = legs.get(t, 2)
                if leg == 0:
                    tok1 = Monomial((letter,), alg._zero_k, ())
                    tok2 = Monomial((), alpha[letter], ())
                    tok3 = tok2
                elif leg == 1:
                    tok1 = None
                    tok2 = Monomial((letter,), alg._zero_k, ())
                    tok3 = Monomial((), alpha[letter], ())
                else:
                    tok1 = None
                    tok2 = None
                    tok3 = Monomial((letter,), alg._zero_k, ())
                if tok1 is not None:
                    ((m1, f),) = alg.multiply_monomials(m1, tok1).items()
                    c = c * f
                if tok2 is not None:
                    ((m2, f),) = alg.multiply_monomials(m2, tok2).items()
                    c = c * f
                ((m3, f),) = alg.multiply_monomials(m3, tok3).items()
                c = c * f
            # left leg: m1 · K_x^{-1} · S(m3) · y_hat; every token is an E
            # or a K, so each product below stays a single monomial
            left = AlgebraElement(alg, {m1: c}) \
                * AlgebraElement(alg, {k_x_inv: ONE}) \
                * AlgebraElement(alg, {m3: ONE}).antipode() \
                * AlgebraElement(alg, {y_mono: ONE})
            ((m2x, f2),) = alg.multiply_monomials(m2, e_x).items()
            v1 = tangent.express(rho_restrict(left))
            v2 = tangent.express_words({m2x.e_word: f2})
            _accumulate_tensor(v1, v2, ONE, out, n)


def sigma_matrix(tangent: TangentSpace) -> SigmaMatrix:
    """Assemble the dual map column-by-column over all basis pairs."""
    n = tangent.dim
    cols = {}
    for i in range(n):
        lift = tangent.lift_element(i)
        for j in range(n):
            vec = sigma_apply(tangent, lift, _unit(n, j))
            col = {r: v for r, v in enumerate(vec) if v}
            if col:
                cols[i * n + j] = col
    matrix = SigmaMatrix(tangent, cols)
    matrix.check_block_structure()
    return matrix


def _unit(n: int, i: int) -> list:
    vec = [ZERO] * n
    vec[i] = ONE
    return vec


def eigenvalue_of(matrix: SigmaMatrix, tensor: list) -> LaurentFraction:
    """The exact eigenvalue on `tensor`, or NotAnEigenvectorError."""
    if not any(tensor):
        raise ValueError("eigenvalue_of requires a nonzero vector")
    image = matrix.apply(tensor)
    lam = None
    for t, v in zip(tensor, image):
        if t:
            lam = v / t
            break
    for t, v in zip(tensor, image):
        if v != lam * t:
            raise NotAnEigenvectorError("vector is not an eigenvector")
    return lam


@dataclass
class SpectralReport:
    """Exact eigen-structure of the dual map plus the dimension criterion."""

    eigenvalues: list          # [(LaurentFraction, multiplicity)], deterministic order
    minus_one_dim: int
    classical_lambda2_dim: int
    strongly_torsion_free: bool
    lowest_weight_summary: list  # [(weight, eigenvalue-or-None)]


def _block_kernel_dim(block, lam) -> int:
    m = len(block)
    rows = []
    for r in range(m):
        row = {}
        for c in range(m):
            v = block[r][c]
            if r == c:
                v = v - lam
            if v:
                row[c] = v
        rows.append(row)
    return m - linalg.rank(rows, ONE)


def _block_kernel_dim_specialized(block, lam, point: Fraction) -> int:
    m = len(block)
    lam0 = lam.specialize(point)
    rows = []
    for r in range(m):
        row = {}
        for c in range(m):
            v = block[r][c].specialize(point)
            if r == c:
                v = v - lam0
            if v:
                row[c] = v
        rows.append(row)
    return m - linalg.rank(rows, Fraction(1))


def _char_poly(matrix) -> list:
    """Characteristic polynomial coefficients [1, c1, ..., cn] over Q."""
    m = len(matrix)
    coeffs = [Fraction(1)]
    n_mat = [[Fraction(1) if i == j else Fraction(0) for j in range(m)]
             for i in range(m)]
    for step in range(1, m + 1):
        mn = [[sum(matrix[i][k] * n_mat[k][j] for k in range(m))
               for j in range(m)] for i in range(m)]
        c = -sum(mn[i][i] for i in range(m)) / step
        coeffs.append(c)
        for i in range(m):
            mn[i][i] += c
        n_mat = mn
    return coeffs


def _divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def _rational_roots(coeffs) -> set:
    """Rational roots of a polynomial given by leading-first Q coefficients."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()  # strip t = 0 roots; 0 is never an eigenvalue here
    if not ints or len(ints) == 1:
        return set()
    lead, const = ints[0], ints[-1]
    if abs(const) > 10 ** 12 or abs(lead) > 10 ** 12:
        return set()
    roots = set()
    for p in _divisors(const):
        for r in _divisors(lead):
            for cand in (Fraction(p, r), Fraction(-p, r)):
                total = Fraction(0)
                for c in ints:
                    total = total * cand + c
                if total == 0:
                    roots.add(cand)
    return roots


def _lift_candidates(roots_by_point, points) -> set:
    """Match rational roots across specialization points to Q(q) candidates."""
    candidates = set()
    first, rest = roots_by_point[0], roots_by_point[1:]
    for r in first:
        if all(r in other for other in rest):
            candidates.add(LaurentFraction.from_rational(r))
        for sign in (1, -1):
            v = sign * r
            if v <= 0:
                continue
            k = _exact_log(v, points[0])
            if k is None:
                continue
            if all(Fraction(sign) * points[t + 1] ** k in rest[t]
                   for t in range(len(rest))):
                candidates.add(
                    LaurentFraction.from_int(sign) * q_power(k))
    return candidates


def _exact_log(value: Fraction, base: Fraction):
    """Integer k with base^k == value, if one exists."""
    if value == 1:
        return 0
    for k in range(1, 64):
        if base ** k == value:
            return k
        if base ** (-k) == value:
            return -k
    return None


def spectrum(matrix: SigmaMatrix, points=DEFAULT_POINTS,
             cross_check: bool = True) -> SpectralReport:
    """Exact per-weight-block eigen-analysis of the dual map.

    Candidate eigenvalues come from lowest-weight-vector images and from
    rational roots of block characteristic polynomials at the given
    specialization points; every candidate is then verified as an exact
    kernel over Q(q).  Blocks whose eigenspace dimensions do not fill the
    block are reported via SpectrumError.
    """
    tangent = matrix.tangent
    points = tuple(Fraction(p) for p in points)

    lw_summary = []
    lw_values = set()
    for vec in tangent.lowest_weight_vectors():
        wt = tangent.tensor_weight(next(i for i, v in enumerate(vec) if v))
        try:
            lam = eigenvalue_of(matrix, vec)
            lw_values.add(lam)
        except NotAnEigenvectorError:
            lam = None
        lw_summary.append((wt, lam))

    minus_one = -ONE
    totals = {}
    minus_one_dim = 0
    for weight, idxs in matrix.blocks():
        block = matrix.dense_block(idxs)
        m = len(idxs)
        candidates = set(lw_values)
        candidates.add(minus_one)
        roots_by_point = []
        for p in points:
            dense = [[v.specialize(p) for v in row] for row in block]
            roots_by_point.append(_rational_roots(_char_poly(dense)))
        if roots_by_point:
            candidates |= _lift_candidates(roots_by_point, points)
        found = 0
        for lam in sorted(candidates, key=render):
            d = _block_kernel_dim(block, lam)
            if not d:
                continue
            if cross_check:
                for p in points:
                    ds = _block_kernel_dim_specialized(block, lam, p)
                    if ds != d:
                        raise ConsistencyError(
                            f"kernel dimension mismatch at q={p} "
                            f"(block {weight}, eigenvalue {render(lam)})")
            totals[lam] = totals.get(lam, 0) + d
            found += d
            if lam == minus_one:
                minus_one_dim += d
        if found != m:
            raise SpectrumError(
                f"block {weight}: eigenspaces fill {found} of {m} dimensions "
                "(missing candidate or non-diagonalizable block)")

    n = tangent.dim
    classical = n * (n - 1) // 2
    eigenvalues = sorted(totals.items(), key=lambda kv: render(kv[0]))
    return SpectralReport(
        eigenvalues=eigenvalues,
        minus_one_dim=minus_one_dim,
        classical_lambda2_dim=classical,
        strongly_torsion_free=(minus_one_dim == classical),
        lowest_weight_summary=lw_summary,
    )


def relation_space_dual(matrix: SigmaMatrix) -> list:
    """Exact basis of ker(sigma + id): the dual degree-two relation space."""
    out = []
    n2 = matrix.dim
    for _, idxs in matrix.blocks():
        block = matrix.dense_block(idxs, shift=ONE)
        rows = [{c: v for c, v in enumerate(row) if v} for row in block]
        for vec in linalg.kernel_basis(rows, len(idxs), ONE):
            full = [ZERO] * n2
            for t, v in vec.items():
                full[idxs[t]] = v
            lead = next(v for v in full if v)
            inv = ONE / lead
            out.append([v * inv for v in full])
    return out


def invert(matrix: SigmaMatrix) -> SigmaMatrix:
    """Exact inverse, assembled block by block; verifies M·M^{-1} = id."""
    tangent = matrix.tangent
    cols = {}
    for _, idxs in matrix.blocks():
        block = matrix.dense_block(idxs)
        inv = linalg.dense_inverse(block, ONE)
        if inv is None:
            raise SingularMatrixError("matrix is singular over Q(q)")
        m = len(idxs)
        for t in range(m):
            col = {}
            for r in range(m):
                if inv[r][t]:
                    col[idxs[r]] = inv[r][t]
            if col:
                cols[idxs[t]] = col
    inverse = SigmaMatrix(tangent, cols)
    for c in range(matrix.dim):
        vec = [ZERO] * matrix.dim
        vec[c] = ONE
        image = inverse.apply(matrix.apply(vec))
        if image != vec:
            raise SingularMatrixError("inverse verification failed")
    return inverse


def check_equivariance(matrix: SigmaMatrix, tangent: TangentSpace) -> bool:
    """Exact commutation with every Levi generator action on T (x) T.

    Raises EquivarianceError carrying the first violating generator.
    """
    generators = [("K", i) for i in range(1, tangent.cartan.rank + 1)]
    for j in tangent.levi:
        generators.append(("E", j))
        generators.append(("F", j))
    for kind, j in generators:
        g = tangent.tensor_act_matrix(kind, j)
        left = linalg.mat_mul(matrix.cols, g)
        right = linalg.mat_mul(g, matrix.cols)
        if not linalg.mat_equal(left, right):
            raise EquivarianceError((kind, j))
    return True
