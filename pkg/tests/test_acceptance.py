"""Acceptance criteria 1 to 9, run at their stated sizes.

Each criterion is a function returning ``(passed, detail)``.  The tests
print one ``criterion N: PASS|FAIL`` line each, outside pytest's capture.
Run ``python3 tests/test_acceptance.py`` for the same nine lines without
pytest.

Criterion 1 includes two stated identities that do not hold as stated.
It is therefore reported as FAIL and marked as a strict xfail; the
corrected identities are asserted separately.
"""

from __future__ import annotations

import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from g2orbits import case1, case2, sampling
from g2orbits.cli import run as cli_run
from g2orbits.cohomology import (
    Cocycle,
    SigmaStructure,
    cocycle_to_hermitian,
    hermitian_to_cocycle,
    verify_cocycle,
)
from g2orbits.fields import (
    QuadField,
    hilbert_symbol,
    is_norm,
    is_norm_oracle,
    local_obstructions,
    relevant_places,
    squarefree_part,
)
from g2orbits.g2rep import characters, delta, g1_membership
from g2orbits.linalg import Mat
from g2orbits.verify import D_GRID, S_GRID, identity_checks

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracles  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
SEED = 20261017


def _first_failure(cases):
    """Evaluate (label, thunk) pairs; return the first failing label or None."""
    n = 0
    for label, thunk in cases:
        n += 1
        try:
            ok = thunk()
        except Exception as exc:  # an exception is a failed case
            return n, f"{label}: {type(exc).__name__}: {exc}"
        if not ok:
            return n, f"{label}: false"
    return n, None


def _summarize(parts):
    """parts: list of (name, (count, failure)) -> (passed, detail)."""
    bad = [f"{name} [{fail}]" for name, (_n, fail) in parts if fail]
    total = sum(n for _name, (n, _f) in parts)
    if bad:
        return False, "; ".join(bad)
    return True, f"{total} exact cases"


# -- criterion 1 ---------------------------------------------------------------


def stated_f_w_s(s) -> bool:
    """F_w(s) = -s v1 v2 as stated."""
    return case2.binary_form(case2.w_of(s)) == case2.BinForm(0, -s, 0)


def stated_conjugate_identity(s) -> bool:
    """B(s)^-1 tau B(s) = (diag(1, Hbar(s)^-1), (0, -1/s; -s, 0)) as stated."""
    b = case2.B_of(s)
    lhs = b.inverse() @ case2.TAU @ b
    hb_inv = case2.H_bar(s).inverse()
    rhs = case2.GroupElem2(Mat.block_diag(Mat([[1]]), hb_inv, Mat.identity(3)),
                           Mat([[0, -1 / s], [-s, 0]]))
    return lhs == rhs


def corrected_battery():
    t0 = time.perf_counter()
    checks = identity_checks()
    elapsed = time.perf_counter() - t0
    parts = [(c.name, (c.cases, None if c.passed else c.detail)) for c in checks]
    parts.append(("battery under 10 s", (1, None if elapsed < 10 else f"{elapsed:.1f} s")))
    return parts, elapsed


def criterion_1():
    parts, elapsed = corrected_battery()
    parts.append(("F_w(s) = -s v1 v2 as stated", _first_failure(
        (f"s={s}", lambda s=s: stated_f_w_s(s)) for s in S_GRID)))
    parts.append(("B(s)^-1 tau B(s) as stated", _first_failure(
        (f"s={s}", lambda s=s: stated_conjugate_identity(s)) for s in S_GRID)))
    ok, detail = _summarize(parts)
    return ok, f"{detail} ({elapsed:.2f} s)"


# -- criterion 2 ---------------------------------------------------------------


def criterion_2():
    rng = random.Random(SEED + 2)

    def in_g1(m):
        return g1_membership(m) is not None

    def reduction_det(x):
        g, _ = case1.reduce_to_normal_form(x)
        return g.m.det() == 1 and in_g1(g.m)

    params = [[sampling.rand_rat(rng, 20) for _ in range(3)] for _ in range(40)]
    parts = [
        ("h0", _first_failure([("h0", lambda: in_g1(case1.H0) and case1.H0.det() == 1)])),
        ("tau", _first_failure([("tau", lambda: in_g1(case1.TAU))])),
        ("g_alpha", _first_failure(
            (f"d={d}", lambda d=d: in_g1(case1.g_alpha(QuadField(d)))) for d in D_GRID)),
        ("u1", _first_failure((f"{p}", lambda p=p: in_g1(case1.u1(*p))) for p in params[:20])),
        ("u2", _first_failure((f"{p}", lambda p=p: in_g1(case1.u2(*p))) for p in params[20:])),
        ("d(A)", _first_failure(
            (f"sample {i}", lambda a=sampling.rand_sl3(rng): in_g1(case1.d_mat(a)))
            for i in range(20))),
        ("reduction products in SL(7)", _first_failure(
            (f"sample {i}", lambda x=sampling.rand_vec7(rng): reduction_det(x)) for i in range(20))),
    ]
    return _summarize(parts)


# -- criterion 3 ---------------------------------------------------------------


def criterion_3():
    rng = random.Random(SEED + 3)

    def case1_sample():
        g = sampling.rand_g1_word(rng)
        x = sampling.rand_vec7(rng, 20)

        def check():
            c, _chi, chi_prime = characters(g)
            return delta(g.apply(x)) == chi_prime ** 2 * delta(x) and c == chi_prime ** 3
        return check

    def case2_sample():
        g = sampling.rand_case2_word(rng)
        x = sampling.rand_pair(rng, 10)

        def check():
            _c, _chi, chi_prime = characters(g.g1)
            lhs = case2.binary_form(g.act(x))
            rhs = case2.binary_form(x).compose(g.g2).scale(chi_prime ** 2)
            return lhs == rhs
        return check

    return _summarize([
        ("case 1", _first_failure((f"sample {i}", case1_sample()) for i in range(1000))),
        ("case 2", _first_failure((f"sample {i}", case2_sample()) for i in range(500))),
    ])


# -- criterion 4 ---------------------------------------------------------------


def criterion_4():
    rng = random.Random(SEED + 4)

    def check(x):
        g, y = case1.reduce_to_normal_form(x)
        return (y == (0, 1, 0, 0, -delta(x) / 4, 0, 0)
                and g.act(x) == y
                and g.m.det() == 1
                and g1_membership(g.m) is not None
                and case1.classify(y) == case1.classify(x))

    return _summarize([("reduction", _first_failure(
        (f"sample {i}", lambda x=sampling.rand_vec7(rng, 100): check(x)) for i in range(1000)))])


# -- criterion 5 ---------------------------------------------------------------


def criterion_5():
    rng = random.Random(SEED + 5)
    pairs = []
    for i in range(50):
        x = sampling.rand_vec7(rng, 30)
        if i % 2:
            y = sampling.rand_vec7(rng, 30)
        else:
            y = sampling.rand_g1_word(rng).apply(x)
        pairs.append((x, y))

    def agrees(x, y):
        return case1.same_orbit(x, y) == (squarefree_part(delta(x)) == squarefree_part(delta(y)))

    reps = [case1.w_alpha(QuadField(d)) for d in D_GRID]
    return _summarize([
        ("random pairs", _first_failure((f"pair {i}", lambda p=p: agrees(*p)) for i, p in enumerate(pairs))),
        ("distinct representatives", _first_failure(
            (f"{D_GRID[i]},{D_GRID[j]}", lambda i=i, j=j: case1.same_orbit(reps[i], reps[j]) == (i == j))
            for i in range(len(reps)) for j in range(len(reps)))),
    ])


# -- criterion 6 ---------------------------------------------------------------

CASE2_D = (-1, 2, -3, 5, 10)
CASE2_S = (Fraction(1), Fraction(-2), Fraction(1, 2), Fraction(-5, 3))


def criterion_6():
    rng = random.Random(SEED + 6)

    def embed1(K):
        a = sampling.rand_su21(rng, K)

        def check():
            g = case1.stabilizer_embed(a, K)
            wa = case1.w_alpha(K)
            return g.m.is_rational() and g.m.apply(wa) == wa and g1_membership(g.m) is not None
        return check

    def embed2(K, s):
        a = sampling.rand_unitary_H(rng, K, s)

        def check():
            g = case2.stabilizer_embed2(a, K, s)
            ws = case2.representative(K, s)
            return g.is_rational() and g.act(ws) == ws and g.in_group()
        return check

    return _summarize([
        ("case 1", _first_failure(
            (f"d={d} sample {i}", embed1(QuadField(d))) for d in D_GRID for i in range(200))),
        ("case 2", _first_failure(
            (f"d={d},s={s} sample {i}", embed2(QuadField(d), s))
            for d in CASE2_D for s in CASE2_S for i in range(200))),
    ])


# -- criterion 7 ---------------------------------------------------------------

NORM_BOUND = 30


def criterion_7():
    rng = random.Random(SEED + 7)

    def grid_case(K, s):
        decided = is_norm(K, s)
        found = is_norm_oracle(K, s, NORM_BOUND)
        independent = oracles.norm_search(K.d, s, NORM_BOUND)
        if found or independent:
            return decided
        # no witness in range: the decision must be false with a reported obstruction
        return not decided and bool(local_obstructions(K, s))

    def product_formula():
        a = sampling.rand_rat(rng, 200, nonzero=True)
        b = sampling.rand_rat(rng, 200, nonzero=True)

        def check():
            prod = 1
            for p in relevant_places(a, b):
                prod *= hilbert_symbol(a, b, p)
            return prod == 1
        return check

    grid = [(QuadField(d), Fraction(m)) for d in (-1, -2, -3, 5)
            for k in range(1, 31) for m in (k, -k)]
    return _summarize([
        ("norm grid", _first_failure((f"d={K.d},s={s}", lambda K=K, s=s: grid_case(K, s)) for K, s in grid)),
        ("product formula", _first_failure((f"sample {i}", product_formula()) for i in range(500))),
    ])


# -- criterion 8 ---------------------------------------------------------------


def criterion_8():
    rng = random.Random(SEED + 8)
    fields = [QuadField(d) for d in (-1, 2, -3, 5)]

    def pairing(K, s):
        st = SigmaStructure.unitary(K, case2.LAMBDA2)
        c = Cocycle(st, case2.h(s))
        herm = cocycle_to_hermitian(c)
        back = hermitian_to_cocycle(herm, st)
        return (verify_cocycle(st, case2.h(s)) and herm == case2.H(s)
                and back.h == case2.h(s)
                and cocycle_to_hermitian(hermitian_to_cocycle(case2.H(s), st)) == case2.H(s))

    def normalize(K):
        a, b = sampling.rand_isotropic_diagonal(rng, K)
        herm = Mat.diag(a, b)

        def check():
            m, s = case2.normalize_hermitian(herm, K, bound=20)
            return m @ herm @ m.star == Mat.diag(-s, 1)
        return check

    return _summarize([
        ("h(s) pairing and round trip", _first_failure(
            (f"d={K.d},s={s}", lambda K=K, s=s: pairing(K, s)) for K in fields for s in S_GRID)),
        ("normalize_hermitian", _first_failure(
            (f"d={fields[i % 4].d} sample {i}", normalize(fields[i % 4])) for i in range(50))),
    ])


# -- criterion 9 ---------------------------------------------------------------


def _cli(argv):
    import io
    import os

    out, err = io.StringIO(), io.StringIO()
    cwd = os.getcwd()
    os.chdir(ROOT)
    try:
        code = cli_run(list(argv), out, err)
    finally:
        os.chdir(cwd)
    return code, out.getvalue(), err.getvalue()


def criterion_9():
    from g2orbits.cli import COMMANDS

    golden = sorted((ROOT / "tests" / "golden").glob("*.json"))

    def golden_ok(path):
        rec = json.loads(path.read_text())
        code, out, err = _cli(rec["argv"])
        return code == rec["exit"] and out == rec["stdout"] and (
            code == 0 or rec["stderr_contains"] in err)

    def covered():
        names = set()
        for p in golden:
            argv = json.loads(p.read_text())["argv"]
            names.add(argv[2] if argv[0] == "--format" else argv[0])
        return set(COMMANDS) <= names

    def verify_all():
        code, out, _ = _cli(["verify", "--suite", "all"])
        return code == 0 and json.loads(out)["passed"] is True

    invalid = [
        ("delta = 0", ["case1-classify", "--vector", "[0,1,0,0,0,0,0]"], "not semistable"),
        ("s = 0", ["case2-representative", "--d", "-1", "--s", "0"], "nonzero"),
        ("malformed JSON", ["case1-classify", "--vector", "[1,2"], "malformed JSON"),
    ]

    def rejects(argv, fragment):
        code, out, err = _cli(argv)
        return code == 2 and out == "" and fragment in err

    return _summarize([
        ("golden files", _first_failure((p.stem, lambda p=p: golden_ok(p)) for p in golden)),
        ("every subcommand covered", _first_failure([("coverage", covered)])),
        ("verify --suite all", _first_failure([("all", verify_all)])),
        ("invalid inputs", _first_failure(
            (name, lambda a=argv, f=frag: rejects(a, f)) for name, argv, frag in invalid)),
    ])


CRITERIA = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def report(n: int) -> tuple[bool, str]:
    ok, detail = CRITERIA[n]()
    return ok, f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"


# -- pytest entry points --------------------------------------------------------


def _check(n, capsys):
    ok, line = report(n)
    with capsys.disabled():
        print(f"\n{line}")
    assert ok, line


@pytest.mark.xfail(strict=True, reason="two stated identities do not hold literally; see corrected test")
def test_criterion_1(capsys):
    _check(1, capsys)


def test_criterion_1_corrected_identities():
    parts, _elapsed = corrected_battery()
    ok, detail = _summarize(parts)
    assert ok, detail


@pytest.mark.parametrize("n", range(2, 10))
def test_criterion(n, capsys):
    _check(n, capsys)


if __name__ == "__main__":
    results = []
    for n in CRITERIA:
        ok, line = report(n)
        results.append(ok)
        print(line, flush=True)
    sys.exit(0 if all(results) else 1)
