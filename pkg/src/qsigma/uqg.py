"""Symbolic engine for the quantized enveloping algebra U_q(g).

Elements are Q(q)-linear combinations of normal-ordered words
(E-part)(K-part)(F-part).  The generator relations used for rewriting:

    K_i E_j = q^{(a_i, a_j)}  E_j K_i
    K_i F_j = q^{-(a_i, a_j)} F_j K_i
    E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})

with q_i = q^{d_i}.  Hopf structure maps:

    coproduct  E_i -> E_i (x) K_i + 1 (x) E_i
               F_i -> F_i (x) 1 + K_i^{-1} (x) F_i
               K_i -> K_i (x) K_i
    antipode   S(E_i) = -E_i K_i^{-1},  S(F_i) = -K_i F_i,  S(K_i) = K_i^{-1}
    counit     eps(K_i) = 1, eps(E_i) = eps(F_i) = 0

Equality modulo the q-Serre ideal is decided by graded linear algebra
(serre_reduce), not by rewriting.
"""

from __future__ import annotations

import threading
from itertools import product as iter_product
from typing import NamedTuple

from . import linalg
from .cartan import CartanData, weight_add, weight_height, weight_sub
from .scalar import ONE, ZERO, LaurentFraction, q_binom, q_power, render


class Monomial(NamedTuple):
    """Normal-ordered word: E-letters, K-exponent vector, F-letters (1-based nodes)."""

    e_word: tuple
    k_exp: tuple
    f_word: tuple


def _accumulate(terms, key, value):
    w = terms.get(key)
    w = value if w is None else w + value
    if w:
        terms[key] = w
    else:
        terms.pop(key, None)


class UqAlgebra:
    """Context object: one Cartan datum plus memoized rewriting caches."""

    def __init__(self, cartan: CartanData):
        self.cartan = cartan
        self.rank = cartan.rank
        self._zero_k = (0,) * cartan.rank
        self._f_past_e_cache = {}
        self._serre_cache = {}
        self._serre_lock = threading.Lock()

    # -- element constructors -------------------------------------------

    def element(self, terms=None) -> "AlgebraElement":
        return AlgebraElement(self, terms or {})

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.unit_monomial(): ONE})

    def unit_monomial(self) -> Monomial:
        return Monomial((), self._zero_k, ())

    def E(self, i: int) -> "AlgebraElement":
        self._check_node(i)
        return AlgebraElement(self, {Monomial((i,), self._zero_k, ()): ONE})

    def F(self, i: int) -> "AlgebraElement":
        self._check_node(i)
        return AlgebraElement(self, {Monomial((), self._zero_k, (i,)): ONE})

    def K(self, i: int, power: int = 1) -> "AlgebraElement":
        self._check_node(i)
        k = list(self._zero_k)
        k[i - 1] = power
        return AlgebraElement(self, {Monomial((), tuple(k), ()): ONE})

    def k_monomial(self, exponents) -> "AlgebraElement":
        return AlgebraElement(
            self, {Monomial((), tuple(exponents), ()): ONE})

    def e_word(self, word) -> "AlgebraElement":
        for i in word:
            self._check_node(i)
        return AlgebraElement(self, {Monomial(tuple(word), self._zero_k, ()): ONE})

    def _check_node(self, i):
        if not 1 <= i <= self.rank:
            raise ValueError(f"node {i} out of range 1..{self.rank}")

    # -- weights ----------------------------------------------------------

    def word_weight(self, word) -> tuple:
        w = [0] * self.rank
        for i in word:
            w[i - 1] += 1
        return tuple(w)

    def monomial_weight(self, m: Monomial) -> tuple:
        return weight_sub(self.word_weight(m.e_word), self.word_weight(m.f_word))

    def _pair(self, kappa, mu) -> int:
        return self.cartan.pairing(kappa, mu)

    def _qi_denominator(self, j: int) -> LaurentFraction:
        d = self.cartan.symmetrizers[j - 1]
        return q_power(d) - q_power(-d)

    # -- normal-ordering core ---------------------------------------------

    def _f_past_e(self, j: int, word: tuple):
        """F_j * E_word in normal order: list of (coeff, e_word, k_delta, f_word)."""
        key = (j, word)
        hit = self._f_past_e_cache.get(key)
        if hit is not None:
            return hit
        terms = [(ONE, word, self._zero_k, (j,))]
        denom = self._qi_denominator(j)
        alpha_j = self.cartan.simple_root(j)
        for p, letter in enumerate(word):
            if letter != j:
                continue
            suffix_wt = self.word_weight(word[p + 1:])
            a = self._pair(alpha_j, suffix_wt)
            # commutator drops (K_j - K_j^{-1})/(q_j - q_j^{-1}) at position p,
            # then the K's move right through the suffix
            plus = -(q_power(a) / denom)
            minus = q_power(-a) / denom
            shorter = word[:p] + word[p + 1:]
            kp = list(self._zero_k)
            kp[j - 1] = 1
            km = list(self._zero_k)
            km[j - 1] = -1
            terms.append((plus, shorter, tuple(kp), ()))
            terms.append((minus, shorter, tuple(km), ()))
        self._f_past_e_cache[key] = terms
        return terms

    def _fword_past_eword(self, fword: tuple, eword: tuple):
        """F_fword * E_eword as a list of normal-ordered (coeff, monomial-parts)."""
        terms = [(ONE, eword, self._zero_k, ())]
        for j in reversed(fword):
            nxt = []
            for coeff, u, k, f in terms:
                for c2, u2, kd, f2 in self._f_past_e(j, u):
                    # move the produced K past the already-accumulated F-part:
                    # nothing to do (kd lands left of k), but the trailing
                    # f2 of the new piece must slide left past k
                    if f2:
                        factor = q_power(self._pair(k, self.word_weight(f2)))
                        nxt.append((coeff * c2 * factor, u2,
                                    weight_add(kd, k), f2 + f))
                    else:
                        nxt.append((coeff * c2, u2, weight_add(kd, k), f))
            terms = nxt
        return terms

    def multiply_monomials(self, m1: Monomial, m2: Monomial):
        """Normal-ordered product of two monomials: dict Monomial -> coeff."""
        out = {}
        middle = self._fword_past_eword(m1.f_word, m2.e_word)
        k1, k2 = m1.k_exp, m2.k_exp
        for coeff, u, k, f in middle:
            c = coeff
            if any(k1):
                c = c * q_power(self._pair(k1, self.word_weight(u)))
            if any(k2):
                c = c * q_power(self._pair(k2, self.word_weight(f)))
            mono = Monomial(m1.e_word + u,
                            weight_add(weight_add(k1, k), k2),
                            f + m2.f_word)
            _accumulate(out, mono, c)
        return out

    # -- Serre ideal -------------------------------------------------------

    def serre_generators(self):
        """The q-Serre elements as (weight, [(word, coeff), ...]) pairs."""
        gens = []
        for i in range(1, self.rank + 1):
            for j in range(1, self.rank + 1):
                if i == j:
                    continue
                n = 1 - self.cartan.cartan_matrix[i - 1][j - 1]
                d = self.cartan.symmetrizers[i - 1]
                terms = []
                for k in range(n + 1):
                    coeff = q_binom(n, k, d)
                    if k % 2:
                        coeff = -coeff
                    terms.append(((i,) * (n - k) + (j,) + (i,) * k, coeff))
                wt = list(self._zero_k)
                wt[i - 1] = n
                wt[j - 1] += 1
                gens.append((tuple(wt), terms))
        return gens

    def _multiset_words(self, weight):
        letters = []
        for i, c in enumerate(weight):
            letters.extend([i + 1] * c)
        if not letters:
            return [()]
        seen = set()

        def rec(remaining, prefix):
            if not remaining:
                seen.add(prefix)
                return
            used = set()
            for t, letter in enumerate(remaining):
                if letter in used:
                    continue
                used.add(letter)
                rec(remaining[:t] + remaining[t + 1:], prefix + (letter,))

        rec(tuple(letters), ())
        return sorted(seen)

    def _serre_data(self, weight):
        """Per-weight reduction data: (canonical words, substitution map)."""
        data = self._serre_cache.get(weight)
        if data is not None:
            return data
        with self._serre_lock:
            data = self._serre_cache.get(weight)
            if data is not None:
                return data
            data = self._build_serre_data(weight)
            self._serre_cache[weight] = data
            return data

    def _build_serre_data(self, weight):
        words = self._multiset_words(weight)
        # columns in descending lex order so pivots eat the lex-greatest words
        ordered = sorted(words, reverse=True)
        col_of = {w: i for i, w in enumerate(ordered)}
        rows = []
        for gen_wt, gen_terms in self.serre_generators():
            rem = weight_sub(weight, gen_wt)
            if any(c < 0 for c in rem):
                continue
            for left_wt in iter_product(*(range(c + 1) for c in rem)):
                right_wt = weight_sub(rem, left_wt)
                for u in self._multiset_words(left_wt):
                    for v in self._multiset_words(right_wt):
                        row = {}
                        for sw, sc in gen_terms:
                            _accumulate(row, col_of[u + sw + v], sc)
                        if row:
                            rows.append(row)
        pivots = linalg.rref(rows, ONE)
        subst = {}
        for p, row in pivots.items():
            subst[ordered[p]] = [(ordered[c], -v) for c, v in sorted(row.items())
                                 if c != p]
        canonical = [w for i, w in enumerate(ordered) if i not in pivots]
        return (sorted(canonical), subst)

    def serre_basis(self, weight):
        """Canonical monomial basis of the degree-`weight` Serre quotient."""
        return list(self._serre_data(tuple(weight))[0])


class AlgebraElement:
    """Finite Q(q)-linear combination of normal-ordered monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: UqAlgebra, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return AlgebraElement(self.alg, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, -c)
        return AlgebraElement(self.alg, out)

    def __neg__(self):
        return AlgebraElement(self.alg, {m: -c for m, c in self.terms.items()})

    def scaled(self, scalar: LaurentFraction) -> "AlgebraElement":
        if not scalar:
            return AlgebraElement(self.alg, {})
        return AlgebraElement(self.alg,
                              {m: c * scalar for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentFraction):
            return self.scaled(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for mono, c in self.alg.multiply_monomials(m1, m2).items():
                    _accumulate(out, mono, c12 * c)
        return AlgebraElement(self.alg, out)

    def __rmul__(self, scalar: LaurentFraction):
        return self.scaled(scalar)

    # -- Hopf structure ----------------------------------------------------

    def counit(self) -> LaurentFraction:
        total = ZERO
        for m, c in self.terms.items():
            if not m.e_word and not m.f_word:
                total = total + c
        return total

    def antipode(self) -> "AlgebraElement":
        alg = self.alg
        out = {}
        for m, c in self.terms.items():
            # anti-homomorphism: reverse the word, apply the generator rules
            factors = []
            for i in reversed(m.f_word):
                k = list(alg._zero_k)
                k[i - 1] = 1
                factors.append((Monomial((), tuple(k), (i,)), -ONE))
            if any(m.k_exp):
                factors.append(
                    (Monomial((), tuple(-e for e in m.k_exp), ()), ONE))
            for i in reversed(m.e_word):
                k = list(alg._zero_k)
                k[i - 1] = -1
                factors.append((Monomial((i,), tuple(k), ()), -ONE))
            acc = {alg.unit_monomial(): c}
            for mono, sign in factors:
                nxt = {}
                for m1, c1 in acc.items():
                    for m2, c2 in alg.multiply_monomials(m1, mono).items():
                        _accumulate(nxt, m2, c1 * sign * c2)
                acc = nxt
            for mono, cc in acc.items():
                _accumulate(out, mono, cc)
        return AlgebraElement(alg, out)

    def coproduct(self, legs: int = 2) -> "TensorElement":
        if legs < 2:
            raise ValueError("coproduct needs at least 2 legs")
        alg = self.alg
        unit = alg.unit_monomial()
        out = {}
        for m, c in self.terms.items():
            acc = {(unit,) * legs: c}
            for letter_terms in self._letter_coproducts(m, legs):
                nxt = {}
                for tup, c1 in acc.items():
                    for tup2, c2 in letter_terms:
                        self._tensor_accumulate(nxt, tup, tup2, c1 * c2)
                acc = nxt
            for tup, cc in acc.items():
                _accumulate(out, tup, cc)
        return TensorElement(alg, legs, out)

    def _letter_coproducts(self, m: Monomial, legs: int):
        alg = self.alg
        unit = alg.unit_monomial()
        zero_k = alg._zero_k
        for i in m.e_word:
            ki = list(zero_k)
            ki[i - 1] = 1
            k_mono = Monomial((), tuple(ki), ())
            e_mono = Monomial((i,), zero_k, ())
            terms = []
            for p in range(legs):
                tup = (unit,) * p + (e_mono,) + (k_mono,) * (legs - p - 1)
                terms.append((tup, ONE))
            yield terms
        if any(m.k_exp):
            yield [((Monomial((), m.k_exp, ()),) * legs, ONE)]
        for i in m.f_word:
            ki = list(zero_k)
            ki[i - 1] = -1
            kinv_mono = Monomial((), tuple(ki), ())
            f_mono = Monomial((), zero_k, (i,))
            terms = []
            for p in range(legs):
                tup = (kinv_mono,) * p + (f_mono,) + (unit,) * (legs - p - 1)
                terms.append((tup, ONE))
            yield terms

    def _tensor_accumulate(self, out, tup1, tup2, coeff):
        alg = self.alg
        legwise = [alg.multiply_monomials(a, b) for a, b in zip(tup1, tup2)]
        for combo in iter_product(*(d.items() for d in legwise)):
            c = coeff
            monos = []
            for mono, cc in combo:
                monos.append(mono)
                c = c * cc
            _accumulate(out, tuple(monos), c)

    # -- Serre reduction -----------------------------------------------------

    def serre_reduce(self) -> "AlgebraElement":
        """Canonical form of a pure-E element modulo the two-sided q-Serre ideal."""
        alg = self.alg
        out = {}
        for m, c in self.terms.items():
            if m.f_word or any(m.k_exp):
                raise ValueError("serre_reduce requires pure E-word terms")
            weight = alg.word_weight(m.e_word)
            _, subst = alg._serre_data(weight)
            rewrite = subst.get(m.e_word)
            if rewrite is None:
                _accumulate(out, m, c)
            else:
                for word, c2 in rewrite:
                    _accumulate(out, Monomial(word, alg._zero_k, ()), c * c2)
        return AlgebraElement(alg, out)

    # -- presentation ----------------------------------------------------------

    def sorted_terms(self):
        def key(item):
            m, _ = item
            wt = self.alg.monomial_weight(m)
            return (weight_height(wt), wt, m.e_word, m.k_exp, m.f_word)

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            letters = [f"E{i}" for i in m.e_word]
            for i, e in enumerate(m.k_exp):
                if e == 1:
                    letters.append(f"K{i + 1}")
                elif e:
                    letters.append(f"K{i + 1}^{e}")
            letters.extend(f"F{i}" for i in m.f_word)
            word = " ".join(letters) if letters else "1"
            s = render(c)
            if s == "1" and letters:
                parts.append(word)
            elif s == "-1" and letters:
                parts.append(f"-{word}")
            elif not letters:
                parts.append(f"({s})" if (" " in s or "/" in s) else s)
            else:
                coeff = f"({s})" if (" " in s or "/" in s) else s
                parts.append(f"{coeff}·{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"<AlgebraElement {self}>"


class TensorElement:
    """Element of U_q(g)^(x legs): tuples of monomials with Q(q) coefficients."""

    __slots__ = ("alg", "legs", "terms")

    def __init__(self, alg: UqAlgebra, legs: int, terms):
        self.alg = alg
        self.legs = legs
        self.terms = {t: c for t, c in terms.items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.legs == other.legs
                and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            _accumulate(out, t, c)
        return TensorElement(self.alg, self.legs, out)

    def __sub__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            _accumulate(out, t, -c)
        return TensorElement(self.alg, self.legs, out)

    def __mul__(self, other):
        if isinstance(other, LaurentFraction):
            return TensorElement(self.alg, self.legs,
                                 {t: c * other for t, c in self.terms.items()})
        if self.legs != other.legs:
            raise ValueError("tensor leg mismatch")
        out = {}
        for t1, c1 in self.terms.items():
            for t2, c2 in other.terms.items():
                legwise = [self.alg.multiply_monomials(a, b)
                           for a, b in zip(t1, t2)]
                for combo in iter_product(*(d.items() for d in legwise)):
                    c = c1 * c2
                    monos = []
                    for mono, cc in combo:
                        monos.append(mono)
                        c = c * cc
                    _accumulate(out, tuple(monos), c)
        return TensorElement(self.alg, self.legs, out)

    def apply_map(self, leg: int, fn) -> "TensorElement":
        """Apply an AlgebraElement-valued map to one leg, expanding linearly."""
        out = {}
        for tup, c in self.terms.items():
            image = fn(AlgebraElement(self.alg, {tup[leg]: ONE}))
            for mono, c2 in image.terms.items():
                new = tup[:leg] + (mono,) + tup[leg + 1:]
                _accumulate(out, new, c * c2)
        return TensorElement(self.alg, self.legs, out)

    def multiply_all_legs(self) -> AlgebraElement:
        """Multiply the legs back together (m(S (x) id)-style checks)."""
        out = {}
        for tup, c in self.terms.items():
            acc = {self.alg.unit_monomial(): c}
            for mono in tup:
                nxt = {}
                for m1, c1 in acc.items():
                    for m2, c2 in self.alg.multiply_monomials(m1, mono).items():
                        _accumulate(nxt, m2, c1 * c2)
                acc = nxt
            for mono, cc in acc.items():
                _accumulate(out, mono, cc)
        return AlgebraElement(self.alg, out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for tup, c in sorted(self.terms.items()):
            body = " (x) ".join(
                str(AlgebraElement(self.alg, {m: ONE})) for m in tup)
            parts.append(f"({render(c)})·[{body}]")
        return " + ".join(parts)
