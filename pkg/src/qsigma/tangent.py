"""The anti-holomorphic tangent space of a cominuscule quantum flag manifold.

T is the irreducible module over the Levi subalgebra U_q(l_S) generated by
the class of E_x, realised concretely on normal-ordered E-words ending in
E_x.  Its weights are exactly the positive roots whose alpha_x coefficient
is 1 (checked against the root-generation oracle, never assumed), each with
a one-dimensional weight space.

The restriction normal form rho sends a normal-ordered element to its
pure-E part: terms with a trailing F vanish, the trailing K-part counits
to 1 (the q-factors were already collected during normal ordering).
Coordinates in T are computed per weight by the joint-F-lowering
functional; a weight whose lowerings all die has no tangent component.
"""

from __future__ import annotations

from .cartan import CartanData, ConfigError, weight_add, weight_height, weight_sub
from .scalar import ONE, ZERO, q_power
from .uqg import AlgebraElement, Monomial, UqAlgebra


class ConsistencyError(Exception):
    """An internal invariant failed (dimension or multiplicity mismatch)."""


def rho_restrict(element: AlgebraElement) -> AlgebraElement:
    """Restriction normal form: drop trailing F-terms, counit the K-part."""
    alg = element.alg
    out = {}
    for m, c in element.terms.items():
        if m.f_word:
            continue
        mono = Monomial(m.e_word, alg._zero_k, ())
        prev = out.get(mono)
        v = c if prev is None else prev + c
        if v:
            out[mono] = v
        else:
            out.pop(mono, None)
    return AlgebraElement(alg, out)


class TangentSpace:
    """Based realisation of T = U_q(l_S)·E_x with generator action matrices."""

    def __init__(self, cartan: CartanData, node: int):
        if node not in cartan.cominuscule_nodes:
            raise ConfigError(
                f"node {node} is not cominuscule for {cartan.series}{cartan.rank}")
        self.cartan = cartan
        self.node = node
        self.alg = UqAlgebra(cartan)
        self.levi = cartan.levi_nodes(node)
        self._alpha = {j: cartan.simple_root(j) for j in range(1, cartan.rank + 1)}
        self._roots = set(cartan.positive_roots_with_unit_coefficient(node))
        self._wdata = {}
        self._act_cache = {}
        self._tensor_act_cache = {}
        self._build_basis()

    # -- basis ------------------------------------------------------------

    def _build_basis(self):
        roots = sorted(self._roots, key=lambda r: (weight_height(r), r))
        self.basis_words = []
        self.basis_weights = []
        for mu in roots:
            lam, rep = self._weight_data(mu)
            if rep is None:
                raise ConsistencyError(
                    f"root weight {mu} produced no tangent vector")
            self.basis_words.append(rep)
            self.basis_weights.append(mu)
        self.dim = len(self.basis_words)
        if self.dim != len(self._roots):
            raise ConsistencyError("tangent dimension disagrees with root count")
        self.index_of_weight = {mu: i for i, mu in enumerate(self.basis_weights)}
        self.lifts = [w[:-1] for w in self.basis_words]

    @property
    def x_index(self) -> int:
        """Basis index of the generating vector E_x."""
        return self.index_of_weight[self._alpha[self.node]]

    # -- the per-weight lowering functional --------------------------------

    def _lower(self, j: int, word: tuple):
        """F_j acting on an E-word class: commute through and drop the tail."""
        alg = self.alg
        alpha_j = self._alpha[j]
        d = self.cartan.symmetrizers[j - 1]
        denom = q_power(d) - q_power(-d)
        out = []
        for p, letter in enumerate(word):
            if letter != j:
                continue
            a = self.cartan.pairing(alpha_j, alg.word_weight(word[p + 1:]))
            coeff = (q_power(-a) - q_power(a)) / denom
            out.append((word[:p] + word[p + 1:], coeff))
        return out

    def _weight_data(self, mu):
        """(lambda functional: full word -> coordinate, representative word).

        The representative is the lex-least word with nonzero image; it is
        None exactly when the weight space of T vanishes.  Multiplicity
        freeness (all lowering rows proportional) is verified, not assumed.
        """
        data = self._wdata.get(mu)
        if data is not None:
            return data
        x = self.node
        alpha_x = self._alpha[x]
        if mu == alpha_x:
            data = ({(x,): ONE}, (x,))
            self._wdata[mu] = data
            return data
        if mu[x - 1] != 1:
            raise ConsistencyError(f"weight {mu} outside the unit-E_x cone")
        levi_wt = weight_sub(mu, alpha_x)
        words = [w + (x,) for w in self.alg._multiset_words(levi_wt)]
        rows = []
        for j in self.levi:
            if mu[j - 1] == 0:
                continue
            sub_lam, _ = self._weight_data(weight_sub(mu, self._alpha[j]))
            row = {}
            for w in words:
                total = ZERO
                for w2, c in self._lower(j, w):
                    lam = sub_lam.get(w2)
                    if lam is not None:
                        total = total + c * lam
                if total:
                    row[w] = total
            rows.append(row)
        nonzero = [r for r in rows if r]
        if not nonzero:
            rep = None
            lam = {}
        else:
            r0 = nonzero[0]
            rep = min(r0)
            base = r0[rep]
            lam = {w: v / base for w, v in r0.items()}
            for r in nonzero[1:]:
                scale = r.get(rep)
                if scale is None:
                    raise ConsistencyError(
                        f"weight {mu} has multiplicity > 1 (support mismatch)")
                for w in words:
                    a = r.get(w, ZERO)
                    b = lam.get(w, ZERO)
                    if a != scale * b:
                        raise ConsistencyError(
                            f"weight {mu} has multiplicity > 1")
        if (rep is not None) != (mu in self._roots):
            raise ConsistencyError(
                f"tangent weight {mu}: lowering test and root oracle disagree")
        data = (lam, rep)
        self._wdata[mu] = data
        return data

    # -- expressing elements in the basis ----------------------------------

    def express_words(self, word_terms) -> list:
        """Coordinates of a pure-E combination {word: coeff} in the basis."""
        out = [ZERO] * self.dim
        for word, c in word_terms.items():
            if not word or word[-1] != self.node:
                raise ConsistencyError(
                    f"word {word} does not end in the generating node")
            mu = self.alg.word_weight(word)
            if mu[self.node - 1] != 1:
                raise ConsistencyError(f"word {word} outside the unit-E_x cone")
            lam, rep = self._weight_data(mu)
            if rep is None:
                continue
            v = lam.get(word)
            if v is None:
                continue
            idx = self.index_of_weight[mu]
            out[idx] = out[idx] + c * v
        return out

    def express(self, element: AlgebraElement) -> list:
        """Coordinates of a normal-ordered element after rho-restriction."""
        pure = rho_restrict(element)
        return self.express_words({m.e_word: c for m, c in pure.terms.items()})

    def basis_element(self, i: int) -> AlgebraElement:
        return self.alg.e_word(self.basis_words[i])

    def lift_element(self, i: int) -> AlgebraElement:
        """The Levi word l with basis vector i = rho(l · E_x)."""
        return self.alg.e_word(self.lifts[i])

    # -- generator actions ---------------------------------------------------

    def _check_generator(self, kind: str, j: int):
        if kind in ("E", "F"):
            if j == self.node:
                raise ConfigError("generator not in the Levi subalgebra")
            if j not in self.levi:
                raise ConfigError(f"node {j} out of range")
        elif kind in ("K", "Kinv"):
            if not 1 <= j <= self.cartan.rank:
                raise ConfigError(f"node {j} out of range")
        else:
            raise ConfigError(f"unknown generator kind {kind!r}")

    def act_matrix(self, kind: str, j: int):
        """Column-sparse dim x dim matrix of one generator on T."""
        self._check_generator(kind, j)
        key = (kind, j)
        hit = self._act_cache.get(key)
        if hit is not None:
            return hit
        cols = {}
        if kind in ("K", "Kinv"):
            sign = 1 if kind == "K" else -1
            for i, mu in enumerate(self.basis_weights):
                cols[i] = {i: q_power(sign * self.cartan.pairing(self._alpha[j], mu))}
        elif kind == "E":
            for i, word in enumerate(self.basis_words):
                # a raised weight outside the root set has no tangent
                # component (T is multiplicity-free on the roots)
                if weight_add(self.basis_weights[i], self._alpha[j]) not in self._roots:
                    continue
                vec = self.express_words({(j,) + word: ONE})
                col = {r: v for r, v in enumerate(vec) if v}
                if col:
                    cols[i] = col
        else:  # F
            for i, word in enumerate(self.basis_words):
                if weight_sub(self.basis_weights[i], self._alpha[j]) not in self._roots:
                    continue
                acc = {}
                for w2, c in self._lower(j, word):
                    prev = acc.get(w2)
                    acc[w2] = c if prev is None else prev + c
                vec = self.express_words({w: c for w, c in acc.items() if c})
                col = {r: v for r, v in enumerate(vec) if v}
                if col:
                    cols[i] = col
        self._act_cache[key] = cols
        return cols

    def act(self, kind: str, j: int, vec: list) -> list:
        """Generator action on a coordinate vector of T."""
        cols = self.act_matrix(kind, j)
        out = [ZERO] * self.dim
        for c, v in enumerate(vec):
            if not v:
                continue
            col = cols.get(c)
            if not col:
                continue
            for r, m in col.items():
                out[r] = out[r] + m * v
        return out

    # -- tensor square ---------------------------------------------------------

    def _leg_pairs(self, kind: str, j: int):
        """Coproduct legs of one generator as (left matrix, right matrix) pairs."""
        ident = {i: {i: ONE} for i in range(self.dim)}
        if kind == "E":
            return [(self.act_matrix("E", j), self.act_matrix("K", j)),
                    (ident, self.act_matrix("E", j))]
        if kind == "F":
            return [(self.act_matrix("F", j), ident),
                    (self.act_matrix("Kinv", j), self.act_matrix("F", j))]
        return [(self.act_matrix(kind, j), self.act_matrix(kind, j))]

    def tensor_act_matrix(self, kind: str, j: int):
        """Column-sparse dim^2 x dim^2 matrix of a generator on T (x) T."""
        self._check_generator(kind, j)
        key = (kind, j)
        hit = self._tensor_act_cache.get(key)
        if hit is not None:
            return hit
        n = self.dim
        cols = {}
        for pmat, qmat in self._leg_pairs(kind, j):
            for c1 in range(n):
                pcol = pmat.get(c1)
                if not pcol:
                    continue
                for c2 in range(n):
                    qcol = qmat.get(c2)
                    if not qcol:
                        continue
                    col = cols.setdefault(c1 * n + c2, {})
                    for r1, pv in pcol.items():
                        for r2, qv in qcol.items():
                            idx = r1 * n + r2
                            prev = col.get(idx)
                            v = pv * qv if prev is None else prev + pv * qv
                            if v:
                                col[idx] = v
                            else:
                                col.pop(idx, None)
        self._tensor_act_cache[key] = {c: col for c, col in cols.items() if col}
        return self._tensor_act_cache[key]

    def act_tensor(self, kind: str, j: int, tensor: list) -> list:
        cols = self.tensor_act_matrix(kind, j)
        out = [ZERO] * (self.dim * self.dim)
        for c, v in enumerate(tensor):
            if not v:
                continue
            col = cols.get(c)
            if not col:
                continue
            for r, m in col.items():
                out[r] = out[r] + m * v
        return out

    def tensor_weight(self, flat: int):
        i, j = divmod(flat, self.dim)
        return weight_add(self.basis_weights[i], self.basis_weights[j])

    def tensor_blocks(self):
        """Flat tensor indices grouped by total weight, deterministically ordered."""
        groups = {}
        for flat in range(self.dim * self.dim):
            groups.setdefault(self.tensor_weight(flat), []).append(flat)
        return sorted(groups.items(), key=lambda kv: (weight_height(kv[0]), kv[0]))

    def lowest_weight_vectors(self) -> list:
        """Basis of the joint kernel of all Levi F-actions on T (x) T.

        For an empty Levi (rank-1 case) the whole tensor square is returned;
        the degenerate convention is flagged by the caller.  Vectors are
        weight-homogeneous, scaled so the lex-least nonzero coordinate is 1.
        """
        from . import linalg

        n2 = self.dim * self.dim
        if not self.levi:
            out = []
            for flat in range(n2):
                vec = [ZERO] * n2
                vec[flat] = ONE
                out.append(vec)
            return out
        fmats = [self.tensor_act_matrix("F", j) for j in self.levi]
        vectors = []
        for _, idxs in self.tensor_blocks():
            local = {flat: t for t, flat in enumerate(idxs)}
            rows = []
            for fm in fmats:
                eq = {}
                for flat in idxs:
                    col = fm.get(flat)
                    if not col:
                        continue
                    for r, v in col.items():
                        eq.setdefault(r, {})[local[flat]] = v
                rows.extend(eq.values())
            for vec in linalg.kernel_basis(rows, len(idxs), ONE):
                full = [ZERO] * n2
                for t, v in vec.items():
                    full[idxs[t]] = v
                lead = next(v for v in full if v)
                inv = ONE / lead
                vectors.append([v * inv for v in full])
        return vectors


def build_tangent(cartan: CartanData, node: int) -> TangentSpace:
    """Construct T for one cominuscule node, with all consistency checks."""
    return TangentSpace(cartan, node)
