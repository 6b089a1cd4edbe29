"""Exact operator-contraction bookkeeping for the condensate expectation values.

The perturbation series needs vacuum-style expectation values of short strings
of bosonic creation/annihilation operators in the Fock state with all N atoms
in the lowest orbital.  Wick bookkeeping applies: a string value is the sum
over contraction subsets (annihilator left of creator, Kronecker delta on the
mode labels), with every uncontracted operator forced onto the condensate
mode, whose normal-ordered moments are falling factorials of N.

Everything here is exact integer/rational arithmetic (fractions.Fraction), no
floats.  The module also classifies the surviving terms of the second- and
third-order energy structures into the named coefficient sums (beta2_2,
alpha3_2, ..., alpha5_3) and produces the integer prefactor tables that
multiply each named sum in the m-body effective interactions U_m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Op",
    "a",
    "adag",
    "WickTerm",
    "WickResult",
    "expectation",
    "falling_factorial_poly",
    "mbody_decompose",
    "mbody_reconstruct",
    "second_order_prefactors",
    "third_order_prefactors",
    "counterterm_prefactors",
    "KNOWN_PATTERNS",
]

GROUND = "0"


@dataclass(frozen=True)
class Op:
    """A single bosonic operator; mode "0" is the condensate orbital."""

    create: bool
    mode: str


def a(mode) -> Op:
    return Op(False, str(mode))


def adag(mode) -> Op:
    return Op(True, str(mode))


@dataclass(frozen=True)
class WickTerm:
    """One contraction pattern: deltas, zeroed symbols, and an N-polynomial.

    poly holds ascending coefficients c_0 + c_1 N + c_2 N^2 + ...
    """

    deltas: tuple[tuple[str, str], ...]
    zeroed: tuple[str, ...]
    poly: tuple[int, ...]


@dataclass(frozen=True)
class WickResult:
    terms: tuple[WickTerm, ...]

    def evaluate(self, n_particles: int, kron=None) -> int:
        """Sum of all terms for integer N; kron maps a symbol pair to 0/1.

        With kron=None every delta is taken as satisfied (all contracted
        labels equal), which is only useful for counting checks.
        """
        total = 0
        for t in self.terms:
            ok = 1
            if kron is not None:
                for pair in t.deltas:
                    ok *= kron(*pair)
            if ok:
                total += sum(c * n_particles**k for k, c in enumerate(t.poly)) * ok
        return total


def _poly_mul_linear(poly: tuple[int, ...], const: int) -> tuple[int, ...]:
    # multiply by (N + const)
    out = [0] * (len(poly) + 1)
    for k, c in enumerate(poly):
        out[k] += c * const
        out[k + 1] += c
    return tuple(out)


def falling_factorial_poly(count: int, offset: int = 0) -> tuple[int, ...]:
    """Coefficients of (N+offset)(N+offset-1)...(N+offset-count+1)."""
    if count < 0:
        raise ValueError("count must be >= 0")
    poly: tuple[int, ...] = (1,)
    for t in range(count):
        poly = _poly_mul_linear(poly, offset - t)
    return poly


def expectation(ops, particle_offset: int = 0) -> WickResult:
    """Expectation of an operator string in the condensate Fock state |N+offset>.

    ops: sequence of Op.  Mode "0" operators are condensate operators; any
    other mode string is a symbolic excited-orbital label (each label should
    be unique in the string).  Contractions pair an annihilator with a
    creator standing to its right and produce a delta on the two labels;
    the leftover symbolic operators are forced to the condensate and the
    resulting normal-ordered condensate moment is the falling factorial.
    """
    ops = list(ops)
    sym_ann = [(p, op.mode) for p, op in enumerate(ops) if not op.create and op.mode != GROUND]
    sym_cre = [(p, op.mode) for p, op in enumerate(ops) if op.create and op.mode != GROUND]
    ground_ann = sum(1 for op in ops if not op.create and op.mode == GROUND)
    ground_cre = sum(1 for op in ops if op.create and op.mode == GROUND)

    seen = [m for _, m in sym_ann] + [m for _, m in sym_cre]
    if len(set(seen)) != len(seen):
        raise ValueError("symbolic mode labels must be unique within the string")

    collected: dict[tuple, list] = {}
    max_r = min(len(sym_ann), len(sym_cre))
    for r in range(max_r + 1):
        for ann_subset in itertools.combinations(sym_ann, r):
            for cre_perm in itertools.permutations(sym_cre, r):
                if any(pa >= pc for (pa, _), (pc, _) in zip(ann_subset, cre_perm)):
                    continue
                deltas = tuple(sorted((ma, mc) for (_, ma), (_, mc) in zip(ann_subset, cre_perm)))
                used_ann = {p for p, _ in ann_subset}
                used_cre = {p for p, _ in cre_perm}
                zeroed = tuple(
                    sorted(
                        [m for p, m in sym_ann if p not in used_ann]
                        + [m for p, m in sym_cre if p not in used_cre]
                    )
                )
                pa = ground_ann + sum(1 for p, _ in sym_ann if p not in used_ann)
                pc = ground_cre + sum(1 for p, _ in sym_cre if p not in used_cre)
                if pa != pc:
                    continue
                poly = falling_factorial_poly(pc, particle_offset)
                key = (deltas, zeroed)
                if key in collected:
                    collected[key] = [
                        x + y
                        for x, y in itertools.zip_longest(collected[key], poly, fillvalue=0)
                    ]
                else:
                    collected[key] = list(poly)

    terms = tuple(
        WickTerm(deltas=k[0], zeroed=k[1], poly=tuple(v)) for k, v in sorted(collected.items())
    )
    return WickResult(terms=terms)


# ---------------------------------------------------------------------------
# m-body decomposition: N-polynomial -> binomial basis C(N, m)
# ---------------------------------------------------------------------------


def _stirling2(kmax: int) -> list[list[int]]:
    S = [[0] * (kmax + 1) for _ in range(kmax + 1)]
    S[0][0] = 1
    for k in range(1, kmax + 1):
        for m in range(1, k + 1):
            S[k][m] = m * S[k - 1][m] + S[k - 1][m - 1]
    return S


def mbody_decompose(poly) -> dict[int, Fraction]:
    """Write a polynomial in N as sum_m b_m C(N, m); returns {m: b_m}.

    poly: ascending coefficients (ints or Fractions).  The falling factorial
    N(N-1)...(N-m+1) maps to {m: m!}; e.g. N(N-1) -> {2: 2}.
    """
    coeffs = [Fraction(c) for c in poly]
    kmax = len(coeffs) - 1
    if kmax < 0:
        return {}
    S = _stirling2(kmax)
    # falling-factorial coefficients f_m with N^k = sum_m S(k,m) falling(N,m)
    f = [Fraction(0)] * (kmax + 1)
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for m in range(k + 1):
            f[m] += c * S[k][m]
    out: dict[int, Fraction] = {}
    fact = 1
    for m in range(kmax + 1):
        if m > 0:
            fact *= m
        if f[m] != 0:
            out[m] = f[m] * fact
    return out


def mbody_reconstruct(bcoeffs: dict[int, Fraction]) -> tuple[Fraction, ...]:
    """Inverse of mbody_decompose: {m: b_m} -> ascending N-polynomial."""
    if not bcoeffs:
        return (Fraction(0),)
    mmax = max(bcoeffs)
    out = [Fraction(0)] * (mmax + 1)
    for m, b in bcoeffs.items():
        ff = falling_factorial_poly(m)
        fact = 1
        for t in range(2, m + 1):
            fact *= t
        for k, c in enumerate(ff):
            out[k] += Fraction(b, fact) * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


# ---------------------------------------------------------------------------
# classification of energy-structure terms into named coefficient sums
# ---------------------------------------------------------------------------

_SYMS = "abcdefgh"


def _canonical_pattern(kslots, denoms):
    """Canonical key for (multiset of K factors, multiset of denominators).

    K factors are symmetric within each pair and under bra<->ket exchange;
    symbol names are arbitrary, so minimize over renamings.
    """
    syms = sorted(
        {s for slot in kslots for s in slot if s != GROUND}
        | {s for d in denoms for s in d if s != GROUND}
    )
    if len(syms) > len(_SYMS):
        raise ValueError("too many distinct symbols to canonicalize")
    best = None
    for perm in itertools.permutations(range(len(syms))):
        ren = {s: _SYMS[perm[i]] for i, s in enumerate(syms)}

        def r(x):
            return ren.get(x, GROUND)

        ks = []
        for b1, b2, k1, k2 in kslots:
            bra = tuple(sorted((r(b1), r(b2))))
            ket = tuple(sorted((r(k1), r(k2))))
            ks.append(min((bra, ket), (ket, bra)))
        enc = (
            tuple(sorted(ks)),
            tuple(sorted(tuple(sorted((r(x), r(y)))) for x, y in denoms)),
        )
        if best is None or enc < best:
            best = enc
    return best


# Reference shapes of the named sums.  Denominator pairs carry the index
# restrictions (a pair state equal to the condensate pair would be a zero
# denominator, and such terms are excluded from the sums).
_REFERENCE_SHAPES = {
    "alpha3_2": (
        (("0", "0", "a", "0"), ("a", "0", "0", "0")),
        (("a", "0"),),
    ),
    "beta2_2": (
        (("0", "0", "a", "b"), ("a", "b", "0", "0")),
        (("a", "b"),),
    ),
    "beta2_3": (
        (("0", "0", "a", "b"), ("a", "b", "c", "d"), ("c", "d", "0", "0")),
        (("a", "b"), ("c", "d")),
    ),
    "alpha3_3": (
        (("0", "0", "a", "b"), ("b", "0", "0", "c"), ("a", "c", "0", "0")),
        (("a", "b"), ("a", "c")),
    ),
    "beta3_3": (
        (("0", "0", "a", "b"), ("a", "b", "c", "0"), ("c", "0", "0", "0")),
        (("a", "b"), ("c", "0")),
    ),
    "alpha41_3": (
        (("0", "0", "a", "b"), ("b", "0", "0", "0"), ("a", "0", "0", "0")),
        (("a", "b"), ("a", "0")),
    ),
    "alpha42_3": (
        (("0", "0", "a", "0"), ("a", "0", "b", "0"), ("b", "0", "0", "0")),
        (("a", "0"), ("b", "0")),
    ),
    "alpha43_3": (
        (("0", "0", "a", "b"), ("0", "0", "0", "0"), ("a", "b", "0", "0")),
        (("a", "b"), ("a", "b")),
    ),
    "alpha5_3": (
        (("0", "0", "a", "0"), ("0", "0", "0", "0"), ("a", "0", "0", "0")),
        (("a", "0"), ("a", "0")),
    ),
}

KNOWN_PATTERNS = {
    name: _canonical_pattern(ks, ds) for name, (ks, ds) in _REFERENCE_SHAPES.items()
}
_PATTERN_NAMES = {v: k for k, v in KNOWN_PATTERNS.items()}


def _substitute(slots, mapping):
    return tuple(tuple(mapping.get(s, s) for s in slot) for slot in slots)


def _classify_terms(result: WickResult, kslots, denoms, outer_poly, prefactor):
    """Run classification over a WickResult for one energy structure.

    kslots/denoms are written with the symbolic labels used in the operator
    string.  outer_poly multiplies every term's polynomial (exact ints),
    prefactor is the overall rational factor of the structure.  Returns
    {(pattern_name, m): Fraction} with zero entries dropped.
    """
    table: dict[tuple[str, int], Fraction] = {}
    for term in result.terms:
        mapping = {z: GROUND for z in term.zeroed}
        for ann_m, cre_m in term.deltas:
            # unify the two labels of a contraction; keep the annihilator one
            mapping[cre_m] = ann_m
        # resolve chains (a creator label may map to a label that is zeroed)
        def resolve(s):
            while s in mapping and mapping[s] != s:
                s = mapping[s]
            return s

        res_map = {s: resolve(s) for s in mapping}
        ks = _substitute(kslots, res_map)
        ds = _substitute(denoms, res_map)
        if any(x == GROUND and y == GROUND for x, y in ds):
            continue  # zero denominator: outside the restricted sums
        key = _canonical_pattern(ks, ds)
        name = _PATTERN_NAMES.get(key)
        if name is None:
            name = f"unknown:{key}"
        # total N-polynomial: outer factor times the contraction moment
        poly = [Fraction(0)] * (len(outer_poly) + len(term.poly) - 1)
        for i, ci in enumerate(outer_poly):
            for j, cj in enumerate(term.poly):
                poly[i + j] += Fraction(ci) * cj
        for m, b in mbody_decompose(poly).items():
            k = (name, m)
            table[k] = table.get(k, Fraction(0)) + prefactor * b
    return {k: v for k, v in table.items() if v != 0}


def _merge(*tables):
    out: dict[tuple[str, int], Fraction] = {}
    for t in tables:
        for k, v in t.items():
            out[k] = out.get(k, Fraction(0)) + v
    return {k: v for k, v in out.items() if v != 0}


def second_order_prefactors() -> dict[tuple[str, int], Fraction]:
    """U_m prefactor table of the second-order energy.

    The structure is -(1/4) xi^2 N(N-1) sum K_{00;ij} K_{st;00} / d(ij)
    times <a_i a_j a_s+ a_t+> in the (N-2)-atom condensate.  Entries are the
    rational numbers multiplying each named sum inside U_m (per xi^2).
    """
    res = expectation([a("i"), a("j"), adag("s"), adag("t")], particle_offset=-2)
    return _classify_terms(
        res,
        kslots=(("0", "0", "i", "j"), ("s", "t", "0", "0")),
        denoms=(("i", "j"),),
        outer_poly=(0, -1, 1),  # N(N-1) = -N + N^2
        prefactor=Fraction(-1, 4),
    )


def third_order_prefactors(part: str = "full") -> dict[tuple[str, int], Fraction]:
    """U_m prefactor tables of the third-order energy (per xi^3).

    part = "direct":        the chain term sum <0|V|a><a|V|b><b|V|0>/(da db),
           "normalization":  -E1 * sum |<0|V|a>|^2 / da^2,
           "full":           both merged.
    """
    if part not in ("direct", "normalization", "full"):
        raise ValueError(f"unknown part {part!r}")
    tables = []
    if part in ("direct", "full"):
        res = expectation(
            [a("i"), a("j"), adag("k"), adag("l"), a("q"), a("r"), adag("s"), adag("t")],
            particle_offset=-2,
        )
        tables.append(
            _classify_terms(
                res,
                kslots=(("0", "0", "i", "j"), ("k", "l", "q", "r"), ("s", "t", "0", "0")),
                denoms=(("i", "j"), ("s", "t")),
                outer_poly=(0, -1, 1),
                prefactor=Fraction(1, 8),
            )
        )
    if part in ("normalization", "full"):
        res = expectation([a("i"), a("j"), adag("s"), adag("t")], particle_offset=-2)
        # N^2(N-1)^2 = N^2 - 2N^3 + N^4
        tables.append(
            _classify_terms(
                res,
                kslots=(("0", "0", "i", "j"), ("0", "0", "0", "0"), ("s", "t", "0", "0")),
                denoms=(("i", "j"), ("i", "j")),
                outer_poly=(0, 0, 1, -2, 1),
                prefactor=Fraction(-1, 8),
            )
        )
    return _merge(*tables)


def counterterm_prefactors() -> dict[tuple[str, int], Fraction]:
    """U_m prefactors of the counterterm cross term (per chi*xi).

    Structure: -(1/2) chi xi N(N-1) sum K_{00;ij} K_{st;00}/d(ij) <4 ops>.
    """
    res = expectation([a("i"), a("j"), adag("s"), adag("t")], particle_offset=-2)
    return _classify_terms(
        res,
        kslots=(("0", "0", "i", "j"), ("s", "t", "0", "0")),
        denoms=(("i", "j"),),
        outer_poly=(0, -1, 1),
        prefactor=Fraction(-1, 2),
    )
