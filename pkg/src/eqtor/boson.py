"""Heisenberg modes, the level-(k,l) boson Fock module, and dressing exponentials.

States are monomials in the lowering modes a_{i,-m} (m > 0), stored as sorted
((color, m), multiplicity) tuples; vectors are dicts mapping states to
coefficients.  Raising modes act as derivations weighted by the mode bracket

    [a_{i,m}, a_{j,n}] = delta_{m+n,0} [b_ij m][k m]/m
                         * (1-p^m)/(1-p*^m) kappa^{-m m_ij} q^{-k m},

which carries the cyclic kappa twist for A-type; the induced-module action
keeps the same twist (dropping it would break the A-type exchange relations).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .cartan import CartanData
from .ellcore import Params, WindowOverflowError, poch_pairs_series

BosonState = tuple  # sorted tuple of ((color, mode), multiplicity)
BosonVec = dict     # BosonState -> complex

VACUUM: BosonState = ()


def state_degree(state: BosonState) -> int:
    return sum(m * mult for (_, m), mult in state)


def state_add_mode(state: BosonState, color: int, m: int) -> BosonState:
    d = dict(state)
    d[(color, m)] = d.get((color, m), 0) + 1
    return tuple(sorted(d.items()))


def state_drop_mode(state: BosonState, key: tuple) -> BosonState:
    d = dict(state)
    d[key] -= 1
    if d[key] == 0:
        del d[key]
    return tuple(sorted(d.items()))


def basis_states(colors, max_degree: int) -> list[BosonState]:
    """All monomials in modes of the given colors with degree <= max_degree."""
    out = [VACUUM]
    seen = {VACUUM}
    frontier = [VACUUM]
    while frontier:
        nxt = []
        for st in frontier:
            for c in colors:
                for m in range(1, max_degree - state_degree(st) + 1):
                    s2 = state_add_mode(st, c, m)
                    if s2 not in seen:
                        seen.add(s2)
                        out.append(s2)
                        nxt.append(s2)
        frontier = nxt
    out.sort(key=lambda s: (state_degree(s), s))
    return out


class BosonAlgebra:
    """Mode algebra over a Cartan datum at a fixed level k."""

    def __init__(self, data: CartanData, params: Params, level: int | None = None):
        self.data = data
        self.params = params
        self.level = params.level_k if level is None else level
        self._p = params.p
        self._pstar = params.p * params.q ** (-2 * self.level)

    def qnum(self, n: int) -> complex:
        q = self.params.q
        return (q ** n - q ** (-n)) / (q - 1 / q)

    def mode_commutator(self, i: int, m: int, j: int, n: int) -> complex:
        """[a_{i,m}, a_{j,n}] evaluated at this level."""
        if m + n != 0 or m == 0:
            return 0j
        q, kappa = self.params.q, self.params.kappa
        k = self.level
        return (self.qnum(self.data.b(i, j) * m) / m) * self.qnum(k * m) \
            * (1 - self._p ** m) / (1 - self._pstar ** m) \
            * kappa ** (-m * self.data.m[i][j]) * q ** (-k * m)

    def prime_scale(self, m: int) -> complex:
        """a'_{i,+-m} = prime_scale(m) * a_{i,+-m} on the module."""
        return self.params.q ** (self.level * m) * (1 - self._pstar ** m) / (1 - self._p ** m)

    # -- module action ------------------------------------------------------

    def apply_creator(self, vec: BosonVec, i: int, m: int, scale: complex = 1.0) -> BosonVec:
        return {state_add_mode(st, i, m): c * scale for st, c in vec.items()}

    def apply_annihilation(self, i: int, m: int, vec: BosonVec, scale: complex = 1.0) -> BosonVec:
        """a_{i,m} (m > 0) acting as a bracket-weighted derivation."""
        out: BosonVec = {}
        for st, c in vec.items():
            for key, mult in st:
                jc, mm = key
                if mm == m:
                    s2 = state_drop_mode(st, key)
                    out[s2] = out.get(s2, 0j) + c * scale * mult * self.mode_commutator(i, m, jc, -m)
        return out

    def apply_mode(self, i: int, m: int, vec: BosonVec, prime: bool = False) -> BosonVec:
        scale = self.prime_scale(abs(m)) if prime else 1.0
        if m < 0:
            return self.apply_creator(vec, i, -m, scale)
        return self.apply_annihilation(i, m, vec, scale)

    def _exp_mode_series(self, vec: BosonVec, i: int, coef: Callable[[int], complex],
                         creator: bool, tmax: int) -> dict[int, BosonVec]:
        """exp(sum_m coef(m) a_{i, +-m}) applied to vec, keyed by moved degree."""
        out: dict[int, BosonVec] = {0: dict(vec)}
        for m in range(1, tmax + 1):
            cm = coef(m)
            for t in sorted(out, reverse=True):
                powv = out[t]
                fact = 1.0
                for r in range(1, (tmax - t) // m + 1):
                    fact *= r
                    powv = (self.apply_creator(powv, i, m) if creator
                            else self.apply_annihilation(i, m, powv))
                    if not powv:
                        break
                    tgt = out.setdefault(t + r * m, {})
                    w = cm ** r / fact
                    for st, c in powv.items():
                        tgt[st] = tgt.get(st, 0j) + c * w
        return {t: v for t, v in out.items() if v}

    def ecoef(self, m: int) -> complex:
        q = self.params.q
        if self.level == 0 or abs(q ** (2 * self.level)) >= 1:
            raise ValueError("dressing exponentials need a level with |q^{2k}| < 1")
        return (q - 1 / q) / (q ** (self.level * m) - q ** (-self.level * m))

    def apply_E(self, sign: int, family: str, i: int, vec: BosonVec,
                degree_cap: int, window: int) -> dict[int, BosonVec]:
        """Dressing exponential applied to vec, as a map z-exponent -> vector.

        sign +1 selects the annihilator exponential (z-exponents <= 0), sign
        -1 the creator one (z-exponents >= 0); family is 'a' or "a'".  The
        output is exact for |z-exponent| <= window provided degrees stay
        below degree_cap, otherwise a WindowOverflowError is raised.
        """
        if family not in ("a", "a'"):
            raise ValueError("family must be 'a' or \"a'\"")
        prime = family == "a'"
        flip = -1 if prime else 1
        if sign > 0:
            coef = (lambda m: flip * self.ecoef(m) * (self.prime_scale(m) if prime else 1.0))
            indeg = max((state_degree(st) for st in vec), default=0)
            ts = self._exp_mode_series(vec, i, coef, creator=False, tmax=indeg)
            return {-t: v for t, v in ts.items()}
        coef = (lambda m: -flip * self.ecoef(m) * (self.prime_scale(m) if prime else 1.0))
        indeg = max((state_degree(st) for st in vec), default=0)
        if indeg + window > degree_cap:
            raise WindowOverflowError(
                f"window {window} from degree {indeg} exceeds cap {degree_cap}")
        ts = self._exp_mode_series(vec, i, coef, creator=True, tmax=degree_cap - indeg)
        return {t: v for t, v in ts.items()}

    def apply_current_boson(self, sign: int, i: int, vec: BosonVec,
                            zmin: int, zmax: int,
                            out_cap: int | None = None) -> dict[int, BosonVec]:
        """Boson factor of the level-k vertex current, exact on [zmin, zmax].

        x+ carries exp(+sum c_m a_{-m} z^m) exp(-sum c_m a_{m} z^{-m}); x-
        the primed mirror.  The group-algebra factor of the full current
        commutes with every dressing exponential and is handled elsewhere.
        ``out_cap`` discards output states above that degree (matrix-element
        targets of known degree never need them).
        """
        if sign > 0:
            cre = lambda m: self.ecoef(m)
            ann = lambda m: -self.ecoef(m)
        else:
            cre = lambda m: -self.ecoef(m) * self.prime_scale(m)
            ann = lambda m: self.ecoef(m) * self.prime_scale(m)
        out: dict[int, BosonVec] = {}
        indeg = max((state_degree(st) for st in vec), default=0)
        down = self._exp_mode_series(vec, i, ann, creator=False, tmax=indeg)
        for tplus, v1 in down.items():
            tminus_max = zmax + tplus
            if tminus_max < 0:
                continue
            buckets: dict[int, BosonVec] = {}
            for st, c in v1.items():
                buckets.setdefault(state_degree(st), {})[st] = c
            for deg, bvec in buckets.items():
                budget = tminus_max if out_cap is None else min(tminus_max, out_cap - deg)
                if budget < 0:
                    continue
                up = self._exp_mode_series(bvec, i, cre, creator=True, tmax=budget)
                for tminus, v2 in up.items():
                    ze = tminus - tplus
                    if zmin <= ze <= zmax:
                        tgt = out.setdefault(ze, {})
                        for st, c in v2.items():
                            tgt[st] = tgt.get(st, 0j) + c
        return out


# ---------------------------------------------------------------------------
# the sixteen dressing-exchange relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExchangeRelation:
    rel_id: int
    kind: str               # "commutator" or "exchange"
    left: tuple             # operator descriptors, applied z-op first in LHS order
    orientation: str        # "wz" (kernel in w/z) or "zw"
    kernel: tuple           # ((qb_pow, qk_pow, km_sign, base), ...) per Pochhammer pair
    comm_coeff: str = ""    # commutator coefficient selector


# kernel pair encoding: (q_b exponent sign, extra q^{k} power, kappa_m sign, base tag)
# producing ((q^{s1 b} q^{k e} kap^{s3 m} x; base)_oo in numerator against the
# same with s1 -> -s1 in the denominator.
_EXCHANGE_TABLE: list[ExchangeRelation] = [
    ExchangeRelation(1, "commutator", (("alpha", -1), ("E+", "a")), "wz", (), "full_minus"),
    ExchangeRelation(2, "commutator", (("alpha", +1), ("E-", "a")), "wz", (), "full_minus"),
    ExchangeRelation(3, "commutator", (("alpha", -1), ("E+", "a'")), "wz", (), "plain_plus"),
    ExchangeRelation(4, "commutator", (("alpha", +1), ("E-", "a'")), "wz", (), "plain_plus"),
    ExchangeRelation(5, "exchange", (("E+", "a"), ("E-", "a")), "wz",
                     ((-1, 0, -1, "q2k"), (-1, 0, -1, "pstar"))),
    ExchangeRelation(6, "exchange", (("E+", "a'"), ("E-", "a'")), "wz",
                     ((-1, 2, -1, "q2k"), (+1, 0, -1, "p"))),
    ExchangeRelation(7, "exchange", (("E+", "a"), ("E-", "a'")), "wz",
                     ((+1, 1, -1, "q2k"),)),
    ExchangeRelation(8, "exchange", (("E+", "a'"), ("E-", "a")), "wz",
                     ((+1, 1, -1, "q2k"),)),
    ExchangeRelation(9, "exchange", (("E+", "a"), ("x+",)), "wz",
                     ((+1, 0, -1, "q2k"), (+1, 0, -1, "pstar_p"))),
    ExchangeRelation(10, "exchange", (("E-", "a"), ("x+",)), "zw",
                     ((-1, 0, +1, "q2k"), (-1, 0, +1, "pstar_p"))),
    ExchangeRelation(11, "exchange", (("E+", "a"), ("x-",)), "wz",
                     ((-1, 1, -1, "q2k"),)),
    ExchangeRelation(12, "exchange", (("E-", "a"), ("x-",)), "zw",
                     ((+1, 1, +1, "q2k"),)),
    ExchangeRelation(13, "exchange", (("E+", "a'"), ("x+",)), "wz",
                     ((-1, 1, -1, "q2k"),)),
    ExchangeRelation(14, "exchange", (("E-", "a'"), ("x+",)), "zw",
                     ((+1, 1, +1, "q2k"),)),
    ExchangeRelation(15, "exchange", (("E+", "a'"), ("x-",)), "wz",
                     ((+1, 2, -1, "q2k"), (-1, 0, -1, "p_p"))),
    ExchangeRelation(16, "exchange", (("E-", "a'"), ("x-",)), "zw",
                     ((-1, 2, +1, "q2k"), (+1, 0, +1, "p_p"))),
]

EXCHANGE_IDS = tuple(r.rel_id for r in _EXCHANGE_TABLE)


def _kernel_pairs(rel: ExchangeRelation, alg: BosonAlgebra, i: int, j: int) -> list[tuple]:
    q, kappa = alg.params.q, alg.params.kappa
    b = alg.data.b(i, j)
    mm = alg.data.m[i][j]
    k = alg.level
    pairs = []
    for s1, ke, s3, tag in rel.kernel:
        base = {"q2k": q ** (2 * k), "pstar": alg._pstar, "p": alg._p,
                "pstar_p": alg._pstar, "p_p": alg._p}[tag]
        pref = {"q2k": 1.0, "pstar": alg._pstar, "p": alg._p,
                "pstar_p": alg._pstar, "p_p": alg._p}[tag]
        core = q ** (ke * k) * kappa ** (s3 * mm)
        pairs.append((pref * core * q ** (s1 * b), pref * core * q ** (-s1 * b), base))
    return pairs


def _apply_descriptor(alg: BosonAlgebra, desc: tuple, vec: BosonVec,
                      window: int, lo: int, hi: int,
                      out_cap: int | None) -> dict[int, BosonVec]:
    kind = desc[0]
    i = desc[-1]
    if not vec:
        return {}
    if kind in ("E+", "E-"):
        indeg = max(state_degree(st) for st in vec)
        sign = +1 if kind == "E+" else -1
        return alg.apply_E(sign, desc[1], i, vec, indeg + window, window)
    if kind == "x+":
        return alg.apply_current_boson(+1, i, vec, lo, hi, out_cap)
    if kind == "x-":
        return alg.apply_current_boson(-1, i, vec, lo, hi, out_cap)
    raise ValueError(f"unknown descriptor {desc!r}")


def check_exchange(rel_id: int, alg: BosonAlgebra, i: int, j: int,
                   max_degree: int = 4, window: int = 6) -> float:
    """Max coefficient residual of one dressing-exchange relation.

    Matrix elements between monomials in the colors {i, j} of degree up to
    max_degree are compared for both orderings within the exponent window;
    modes of other colors commute with every operator involved and are
    dropped from the basis.  Entries only couple within a fixed total
    exponent, which bounds the output degree and the current windows.
    """
    rel = next(r for r in _EXCHANGE_TABLE if r.rel_id == rel_id)
    if rel.kind == "commutator":
        return _check_commutator(rel, alg, i, j, max_degree, window)
    nker = 2 * window + 2 * max_degree
    lo = -(2 * window + max_degree)
    out_cap = max_degree + 2 * window  # entries read have degree <= d_in + A + B
    ker = poch_pairs_series(_kernel_pairs(rel, alg, i, j), nker)
    zop = rel.left[0] + (i,)
    wop = rel.left[1] + (j,)
    worst = 0.0
    for st in basis_states((i, j), max_degree):
        vec = {st: 1.0 + 0j}
        d_in = state_degree(st)
        # LHS: A(z) B(w) -> B applied first, read at |z|,|w| <= window
        lhs: dict[tuple[int, int], BosonVec] = {}
        for fe, v1 in _apply_descriptor(alg, wop, vec, window, lo, window,
                                        d_in + window + 2).items():
            for se, v2 in _apply_descriptor(alg, zop, v1, window, lo, window,
                                            out_cap).items():
                tgt = lhs.setdefault((se, fe), {})
                for st2, c in v2.items():
                    tgt[st2] = tgt.get(st2, 0j) + c
        # RHS operator: B(w) A(z) -> A applied first; kernel shifts read the
        # w-op beyond the window only against opposite z-op exponents
        rhs_op: dict[tuple[int, int], BosonVec] = {}
        for ze, v1 in _apply_descriptor(alg, zop, vec, window, lo,
                                        2 * window, d_in + 2 * window + 2).items():
            hi_w = window if rel.orientation == "wz" else max(window, 2 * window - ze)
            for we, v2 in _apply_descriptor(alg, wop, v1, window, lo,
                                            hi_w, out_cap).items():
                tgt = rhs_op.setdefault((ze, we), {})
                for st2, c in v2.items():
                    tgt[st2] = tgt.get(st2, 0j) + c
        for A in range(-window, window + 1):
            for B in range(-window, window + 1):
                acc: BosonVec = {}
                for n in range(0, nker + 1):
                    key = (A + n, B - n) if rel.orientation == "wz" else (A - n, B + n)
                    for st2, c in rhs_op.get(key, {}).items():
                        acc[st2] = acc.get(st2, 0j) + ker[n] * c
                left = lhs.get((A, B), {})
                for st2 in set(left) | set(acc):
                    a_, b_ = left.get(st2, 0j), acc.get(st2, 0j)
                    worst = max(worst, abs(a_ - b_) / (1 + abs(a_)))
    return worst


def _check_commutator(rel: ExchangeRelation, alg: BosonAlgebra, i: int, j: int,
                      max_degree: int, window: int) -> float:
    q, kappa = alg.params.q, alg.params.kappa
    k = alg.level
    b = alg.data.b(i, j)
    mm = alg.data.m[i][j]
    worst = 0.0
    mode_sign = rel.left[0][1]
    edesc = rel.left[1] + (j,)
    for ell in range(1, 5):
        if rel.comm_coeff == "full_minus":
            coeff = -(alg.qnum(b * ell) / ell) * (1 - alg._p ** ell) / (1 - alg._pstar ** ell) \
                * kappa ** (-mode_sign * ell * mm) * q ** (-k * ell)
        else:
            coeff = (alg.qnum(b * ell) / ell) * kappa ** (-mode_sign * ell * mm)
        zshift = mode_sign * ell  # z^{-l} for [a_{-l}, E+], z^{+l} for [a_{l}, E-]
        for st in basis_states((i, j), max_degree):
            vec = {st: 1.0 + 0j}
            w = window + ell
            emap = _apply_descriptor(alg, edesc, vec, w, -w, w, None)
            lhs: dict[int, BosonVec] = {}
            for ze, v1 in emap.items():
                v2 = alg.apply_mode(i, mode_sign * ell, v1)
                if v2:
                    tgt = lhs.setdefault(ze, {})
                    for st2, c in v2.items():
                        tgt[st2] = tgt.get(st2, 0j) + c
            pre = alg.apply_mode(i, mode_sign * ell, vec)
            if pre:
                for ze, v2 in _apply_descriptor(alg, edesc, pre, w, -w, w, None).items():
                    tgt = lhs.setdefault(ze, {})
                    for st2, c in v2.items():
                        tgt[st2] = tgt.get(st2, 0j) - c
            # lhs = [a_{i, +-l}, E]; RHS = coeff * z^{zshift} * E
            for ze in range(-window, window + 1):
                acc: BosonVec = {}
                for st2, c in emap.get(ze - zshift, {}).items():
                    acc[st2] = acc.get(st2, 0j) + coeff * c
                left = lhs.get(ze, {})
                for st2 in set(left) | set(acc):
                    a_, b_ = left.get(st2, 0j), acc.get(st2, 0j)
                    worst = max(worst, abs(a_ - b_) / (1 + abs(a_)))
    return worst
