"""The identity battery behind ``g2orbits verify``.

Every check is an exact equality.  Deterministic checks run over fixed
grids of fields and parameters; randomized checks draw from a seeded
generator so that a report can be reproduced from its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import case1, case2, sampling
from .cohomology import (
    Cocycle,
    SigmaStructure,
    cocycle_to_hermitian,
    hermitian_forms_equivalent,
    hermitian_to_cocycle,
    verify_cocycle,
)
from .fields import (
    QuadField,
    hilbert_symbol,
    is_norm,
    is_norm_oracle,
    relevant_places,
    squarefree_part,
)
from .g2rep import characters, delta, g1_membership
from .linalg import Mat

D_GRID = (-1, 2, -2, 3, -3, 5, -5, 7, -7, 10)
S_GRID = tuple(Fraction(s) for s in (1, -1, 2, -2, 3, -3, Fraction(1, 2), Fraction(-5, 3), Fraction(7, 4)))

SUITES = ("identities", "membership", "invariance", "reduction", "stabilizers", "norms", "cohomology")


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.detail:
            out["detail"] = self.detail
        return out


def _run(name: str, cases) -> Check:
    """Evaluate ``(label, thunk)`` pairs; the first failing label is reported."""
    n = 0
    for label, thunk in cases:
        n += 1
        try:
            ok = thunk()
        except Exception as exc:  # a raised invariant counts as a failure
            return Check(name, False, n, f"{label}: {type(exc).__name__}: {exc}")
        if not ok:
            return Check(name, False, n, f"{label}: false")
    return Check(name, True, n)


def _fields(ds=D_GRID):
    return [QuadField(d) for d in ds]


# -- deterministic identities ---------------------------------------------------


def identity_checks() -> list[Check]:
    fields = _fields()
    lam12 = Mat.diag(1, 1, -1)
    out = [
        _run("case 1: g_alpha^sigma = g_alpha tau", (
            (f"d={K.d}", lambda K=K: case1.g_alpha(K).sigma() == case1.g_alpha(K) @ case1.TAU)
            for K in fields)),
        _run("case 2: g_alpha^sigma = g_alpha tau", (
            (f"d={K.d}", lambda K=K: case2.g_alpha(K).sigma() == case2.g_alpha(K) @ case2.TAU)
            for K in fields)),
        _run("g_alpha agrees with its factored form", (
            (f"d={K.d}", lambda K=K: case1.g_alpha_factored(K) == case1.g_alpha(K))
            for K in fields)),
        _run("g_alpha w = t(0, d/2, 0, 0, -1/2, 0, 0)", (
            (f"d={K.d}", lambda K=K: case1.g_alpha(K).apply(case1.W) == case1.w_alpha(K))
            for K in fields)),
        _run("delta(w_alpha) = d", (
            (f"d={K.d}", lambda K=K: delta(case1.w_alpha(K)) == K.d) for K in fields)),
        _run("F_w = -4 v1 v2", [("w", lambda: case2.binary_form(case2.W) == case2.BinForm(0, -4, 0))]),
        _run("F_w(s) = -4s v1 v2", (
            (f"s={s}", lambda s=s: case2.binary_form(case2.w_of(s)) == case2.BinForm(0, -4 * s, 0))
            for s in S_GRID)),
        _run("A(s) Hbar(s) *A(s) = diag(1, Lambda2)", (
            (f"s={s}", lambda s=s: case2.A_of(s) @ case2.H_bar(s) @ case2.A_of(s).star == lam12)
            for s in S_GRID)),
        _run("A(s) agrees with its product form", (
            (f"s={s}", lambda s=s: case2.A_of_product(s) == case2.A_of(s)) for s in S_GRID)),
        _run("B1(s) agrees with its displayed form", (
            (f"s={s}", lambda s=s: case2.B1_of(s) == case2.B1_displayed(s)) for s in S_GRID)),
        _run("B(s) w = w(s)", (
            (f"s={s}", lambda s=s: case2.B_of(s).act(case2.W) == case2.w_of(s)) for s in S_GRID)),
        _run("B(s)^-1 tau B(s)^sigma tau = B(s)^-1 tau B(s) tau = d(h(s))", (
            (f"d={K.d},s={s}", lambda K=K, s=s: case2.verify_twist_identity(K, s))
            for K in fields for s in S_GRID)),
        _run("B(s)^-1 tau B(s) = ((1; 0, Hbar^-1; Hbar, 0), (0, 1/s; s, 0))", (
            (f"s={s}", lambda s=s: case2.verify_conjugate_identity(None, s)) for s in S_GRID)),
        _run("tau d(h(s)) tau = d(h(1/s))", (
            (f"s={s}", lambda s=s: case2.verify_tau_conjugation(s)) for s in S_GRID)),
        _run("w_alpha(s) is rational with F-roots +-alpha", (
            (f"d={K.d},s={s}", lambda K=K, s=s: _representative_ok(K, s))
            for K in fields for s in S_GRID)),
    ]
    return out


def _representative_ok(field: QuadField, s) -> bool:
    x = case2.representative(field, s)
    f = case2.binary_form(x)
    a = field.alpha
    return f(a, 1) == 0 and f(-a, 1) == 0 and case2.splitting_class(x) == field.d


# -- membership and characters ------------------------------------------------


def membership_checks(rng: random.Random, samples: int = 20) -> list[Check]:
    def in_g1(m):
        return g1_membership(m) is not None

    def rand_params():
        return [sampling.rand_rat(rng, 9) for _ in range(3)]

    return [
        _run("h0 in G1 with det 1", [("h0", lambda: in_g1(case1.H0) and case1.H0.det() == 1)]),
        _run("tau in G1", [("tau", lambda: in_g1(case1.TAU))]),
        _run("g_alpha in G1", ((f"d={K.d}", lambda K=K: in_g1(case1.g_alpha(K))) for K in _fields())),
        _run("u1, u2 in G1 with c = 1", (
            (f"sample {i}", lambda p=rand_params(), q=rand_params():
             g1_membership(case1.u1(*p)) == 1 and g1_membership(case1.u2(*q)) == 1)
            for i in range(samples))),
        _run("d(A), A in SL(3): characters (1, 1, 1)", (
            (f"sample {i}", lambda a=sampling.rand_sl3(rng):
             characters(case1.d_mat(a)) == (1, 1, 1))
            for i in range(samples))),
        _run("d(A) w = w in case 2", (
            (f"sample {i}", lambda a=sampling.rand_invertible(rng, 2):
             case2.d_pair(a).act(case2.W) == case2.W)
            for i in range(samples))),
    ]


# -- randomized invariance ----------------------------------------------------


def invariance_checks(rng: random.Random, samples: int = 50) -> list[Check]:
    def case1_sample():
        g = sampling.rand_g1_word(rng)
        x = sampling.rand_vec7(rng, 20)

        def check():
            c, chi, chi_prime = characters(g)
            return delta(g.apply(x)) == chi_prime ** 2 * delta(x) and c == chi_prime ** 3
        return check

    def case2_sample():
        g = sampling.rand_case2_word(rng)
        x = sampling.rand_pair(rng, 10)

        def check():
            _c, chi, _cp = characters(g.g1)
            return case2.binary_form(g.act(x)) == case2.binary_form(x).compose(g.g2).scale(chi)
        return check

    def class_sample():
        g = sampling.rand_g1_word(rng)
        x = sampling.rand_vec7(rng, 20)
        return lambda: case1.classify(g.apply(x)) == case1.classify(x)

    return [
        _run("delta(g x) = chi'(g)^2 delta(x), c = chi'^3",
             ((f"sample {i}", case1_sample()) for i in range(samples))),
        _run("F_(g x)(v) = chi(g1) F_x(v g2)",
             ((f"sample {i}", case2_sample()) for i in range(samples))),
        _run("classify is constant on G1-orbits",
             ((f"sample {i}", class_sample()) for i in range(samples))),
    ]


# -- reduction and classification ---------------------------------------------


def reduction_checks(rng: random.Random, samples: int = 50) -> list[Check]:
    def reduce_ok(x):
        g, y = case1.reduce_to_normal_form(x)
        return (g.act(x) == y and g.m.det() == 1
                and g1_membership(g.m) is not None
                and y == (0, 1, 0, 0, -delta(x) / 4, 0, 0)
                and case1.classify(y) == case1.classify(x))

    special = [case1.W, (Fraction(3), 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 1, 1, 0),
               case1.w_alpha(QuadField(-1)), case1.w_alpha(QuadField(5))]
    cases = [(f"fixed {x}", lambda x=x: reduce_ok(x)) for x in special]
    cases += [(f"sample {i}", lambda x=sampling.rand_vec7(rng, 100): reduce_ok(x)) for i in range(samples)]

    reps = [case1.w_alpha(QuadField(d)) for d in D_GRID]
    return [
        _run("reduction reaches t(0, 1, 0, 0, -delta/4, 0, 0) in G1 and SL(7)", cases),
        _run("representatives w_alpha(d) pairwise inequivalent", (
            (f"{i},{j}", lambda i=i, j=j: case1.same_orbit(reps[i], reps[j]) == (i == j))
            for i in range(len(reps)) for j in range(len(reps)))),
    ]


# -- stabilizers ---------------------------------------------------------------


def stabilizer_checks(rng: random.Random, samples: int = 5) -> list[Check]:
    def embed1(field):
        a = sampling.rand_su21(rng, field)
        return lambda: case1.stabilizer_embed(a, field) is not None

    def embed2(field, s):
        a = sampling.rand_unitary_H(rng, field, s)
        return lambda: case2.stabilizer_embed2(a, field, s) is not None

    fields = _fields((-1, 2, -3, 5))
    return [
        _run("SU(2,1) conjugates fix w_alpha and are rational", (
            (f"d={K.d} sample {i}", embed1(K)) for K in fields for i in range(samples))),
        _run("U(H(s)) conjugates fix w_alpha(s) and are rational", (
            (f"d={K.d},s={s} sample {i}", embed2(K, s))
            for K in fields for s in (Fraction(1), Fraction(-2), Fraction(1, 2)) for i in range(samples))),
    ]


# -- norms ----------------------------------------------------------------------


def norm_checks(rng: random.Random, samples: int = 100, s_max: int = 12, bound: int = 12) -> list[Check]:
    def agrees(field, s):
        return is_norm_oracle(field, s, bound) is None or is_norm(field, s)

    def product_formula():
        a = sampling.rand_rat(rng, 60, nonzero=True)
        b = sampling.rand_rat(rng, 60, nonzero=True)
        prod = 1
        for p in relevant_places(a, b):
            prod *= hilbert_symbol(a, b, p)
        return lambda: prod == 1

    grid = [(K, s) for K in _fields((-1, -2, -3, 5)) for m in range(1, s_max + 1) for s in (m, -m)]
    return [
        _run("is_norm agrees with the bounded search", (
            (f"d={K.d},s={s}", lambda K=K, s=s: agrees(K, s)) for K, s in grid)),
        _run("Hilbert product formula", ((f"sample {i}", product_formula()) for i in range(samples))),
    ]


# -- cohomology -----------------------------------------------------------------


def cohomology_checks(rng: random.Random, samples: int = 10) -> list[Check]:
    lam2 = case2.LAMBDA2
    lam12 = case2.LAMBDA12

    def h_pair(K, s):
        st = SigmaStructure.unitary(K, lam2)
        ok = verify_cocycle(st, case2.h(s))
        back = hermitian_to_cocycle(case2.H(s), st)
        return (ok and cocycle_to_hermitian(Cocycle(st, case2.h(s))) == case2.H(s)
                and back.h == case2.h(s))

    def hbar_pair(K, s):
        st = SigmaStructure.unitary(K, lam12)
        return cocycle_to_hermitian(Cocycle(st, case2.h_bar(s))) == case2.H_bar(s)

    def normalize_sample(K):
        a, b = sampling.rand_isotropic_diagonal(rng, K)
        herm = Mat.diag(a, b)

        def check():
            m, s = case2.normalize_hermitian(herm, K, bound=20)
            return (m @ herm @ m.star == case2.H(s)
                    and hermitian_forms_equivalent(herm, case2.H(s), K))
        return check

    fields = _fields((-1, 2, -3, 5))
    return [
        _run("h(s) is a cocycle paired with H(s)", (
            (f"d={K.d},s={s}", lambda K=K, s=s: h_pair(K, s)) for K in fields for s in S_GRID)),
        _run("hbar(s) is paired with Hbar(s)", (
            (f"d={K.d},s={s}", lambda K=K, s=s: hbar_pair(K, s)) for K in fields for s in S_GRID)),
        _run("2x2 Hermitian normalization reaches diag(-s, 1)", (
            (f"d={K.d} sample {i}", normalize_sample(K)) for K in fields for i in range(samples))),
    ]


# -- driver ---------------------------------------------------------------------


def run_suite(suite: str = "all", seed: int = 0) -> list[Check]:
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    rng = random.Random(seed)
    wanted = SUITES if suite == "all" else (suite,)
    builders = {
        "identities": lambda: identity_checks(),
        "membership": lambda: membership_checks(rng),
        "invariance": lambda: invariance_checks(rng),
        "reduction": lambda: reduction_checks(rng),
        "stabilizers": lambda: stabilizer_checks(rng),
        "norms": lambda: norm_checks(rng),
        "cohomology": lambda: cohomology_checks(rng),
    }
    out: list[Check] = []
    for name in wanted:
        out.extend(builders[name]())
    return out
