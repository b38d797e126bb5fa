"""Acceptance suite: one test per criterion, each checked against an independent oracle.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""
import itertools
import json
import math
import os
import random
import sys
import tempfile
import time

sys.path.insert(0, os.path.dirname(__file__))

from oracles import (brute_membership, cokernel_invariants, dense_tensor,  # noqa: E402
                     generic_transfer_index2, gf2_matvec, order_census, quotient_order_census,
                     reduce_h2, semidirect_elements, semidirect_mul, tensor_eval)
from perindex.abelian import FgAbelianGroup  # noqa: E402
from perindex.bockstein import build_modn, coeff_reduce  # noqa: E402
from perindex.cli import run  # noqa: E402
from perindex.examples import (enumerate_valid_models, model_a_teichner_orientable,  # noqa: E402
                               model_b_teichner_nonorientable)
from perindex.forms2 import all_symmetric_matrices, solve_diagonal  # noqa: E402
from perindex.grouptransfer import (IndexTwoData, abelianization,  # noqa: E402
                                    abelianized_presentation_group, build_semidirect,
                                    transfer_index2)
from perindex.linking import (QZPairing, equal_by_pairing, evaluation_pairing,  # noqa: E402
                              is_perfect, kernel_subgroup)
from perindex.periodindex import (NonMember, classify_index_period2, membership,  # noqa: E402
                                  solve_ex, tpic_report)


class CriterionFailed(AssertionError):
    pass


def check(cond, msg):
    if not cond:
        raise CriterionFailed(msg)


def bock_apply(m, x):
    """``bock(x)`` straight from the matrix rows."""
    return tuple(sum(c * b for c, b in zip(row, x)) % d
                 for row, d in zip(m.bock, m.H3.invariant_factors))


def report_json(m):
    """Run the ``report --json`` subcommand on a saved copy of ``m``."""
    from contextlib import redirect_stdout
    from io import StringIO

    from perindex.modelfile import save_model
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "model.json")
        save_model(m, path)
        buf = StringIO()
        with redirect_stdout(buf):
            code = run(["report", path, "--json"])
    return code, json.loads(buf.getvalue())


# -- criterion 1: diagonal in column space, exhaustively up to n = 5 ---------------


def criterion_1():
    expected = sum(2 ** (n * (n + 1) // 2) for n in range(6))
    forms = [f for n in range(6) for f in all_symmetric_matrices(n)]
    start = time.perf_counter()
    solutions = [solve_diagonal(f) for f in forms]
    elapsed = time.perf_counter() - start
    failures = sum(gf2_matvec(f.matrix, d) != tuple(f.matrix[i][i] for i in range(f.dim))
                   for f, d in zip(forms, solutions))
    check(len(forms) == expected, f"{len(forms)} matrices, expected {expected}")
    check(failures == 0, f"{failures} failures")
    check(elapsed < 5.0, f"runtime {elapsed:.2f}s")
    return f"{len(forms)} matrices, 0 failures, {elapsed:.2f}s"


# -- criteria 2 and 3: the two reference regimes ------------------------------------


def criterion_2():
    m = model_a_teichner_orientable()
    code, doc = report_json(m)
    check(code == 0, f"exit code {code}")
    (cls,) = doc["classes"]
    check((cls["period"], cls["index_exact"], cls["tpic"]) == (2, 4, True), str(cls))
    x = (0, 1)
    check(bock_apply(m, x) == tuple(cls["alpha"]), "alpha is not bock(x)")
    sols = brute_membership(m.dim_W, m.T.triples(), m.red2, m.H2.invariant_factors, x)
    T = dense_tensor(m.dim_W, m.T.triples())
    V = {reduce_h2(m.red2, e) for e in m.H2.elements()}
    check(any(tensor_eval(T, x, x, v) for v in V), "beta(x^2) vanishes")
    check(sols and all(any(s) for s in sols), "membership witness should be nonzero")
    return "per 2, ind 4, TPIC holds"


def criterion_3():
    m = model_b_teichner_nonorientable()
    code, doc = report_json(m)
    check(code == 3, f"exit code {code}")
    check(doc["spin_c"] is False, "model reported spin^c")
    x = (0, 1, 0)
    alpha = bock_apply(m, x)
    cls = next(c for c in doc["classes"] if tuple(c["alpha"]) == alpha)
    check((cls["period"], cls["index_exact"], cls["tpic"], cls["regime"])
          == (2, 8, False, "NON_MEMBER"), str(cls))
    check(isinstance(membership(m, x), NonMember), "membership did not return NON_MEMBER")
    check(brute_membership(m.dim_W, m.T.triples(), m.red2, m.H2.invariant_factors, x) == [],
          "brute force finds a membership witness")
    return "per 2, ind 8, NON_MEMBER, not spin^c, TPIC fails"


# -- criterion 4: abelianization and transfer of C8 x| C2 ---------------------------


def criterion_4():
    n, k = 8, 5
    G = build_semidirect(n, k)
    table_route = abelianization(G).group
    relation_route, _ = abelianized_presentation_group(n, k)
    target = FgAbelianGroup((2, 4))
    check(table_route == target, f"table quotient gives {table_route}")
    check(relation_route == target, f"relation SNF gives {relation_route}")
    check(cokernel_invariants([[k - 1, 0], [n, 0], [0, 2]], 2) == ((2, 4), 0),
          "determinantal divisors disagree")
    elems = semidirect_elements(n, k)
    mul = semidirect_mul(n, k)

    def inv(x):
        return next(y for y in elems if mul(x, y) == (0, 0))

    comm = {mul(mul(a, b), mul(inv(a), inv(b))) for a in elems for b in elems}
    check(quotient_order_census(elems, mul, inv, comm) == order_census((2, 4)),
          "coset quotient has the wrong element orders")

    tr = transfer_index2(IndexTwoData(G, {"a": 0, "b": 1}))
    a2 = G.parse_word("a^2")
    img = tr.as_element_of_G(tr.of_element(a2))
    expect = generic_transfer_index2(elems, mul, inv, lambda x: x[1] == 0, (0, 1))[(2, 0)]
    check(G.labels[img] == "a^4" and expect == (4, 0), f"transfer(a^2) = {G.labels[img]}")
    check(G.element_order(img) == 2, "transfer(a^2) should have order 2")
    return "G_ab = C2 x C4 both ways; transfer(a^2) = a^4, order 2"


# -- criterion 5: spin^c membership over the whole sweep ---------------------------


SWEEP_BOUNDS = (3, {2, 4})


def criterion_5():
    start = time.perf_counter()
    models = spin_c = checks = 0
    for m in enumerate_valid_models(*SWEEP_BOUNDS):
        models += 1
        if not m.is_spin_c:
            continue
        spin_c += 1
        T = dense_tensor(m.dim_W, m.T.triples())
        V = {reduce_h2(m.red2, e) for e in m.H2.elements()}
        for x in itertools.product((0, 1), repeat=m.dim_W):
            e = solve_ex(m, x)
            r = reduce_h2(m.red2, e)
            check(all(tensor_eval(T, x, x, v) == tensor_eval(T, x, r, v) for v in V),
                  f"certificate fails for model #{models}, x = {x}")
            check(not isinstance(membership(m, x), NonMember),
                  f"NON_MEMBER on spin^c model #{models}, x = {x}")
            checks += 1
    elapsed = time.perf_counter() - start
    check(spin_c > 0, "no spin^c models enumerated")
    check(elapsed < 600, f"runtime {elapsed:.0f}s")
    return f"{spin_c} spin^c of {models} models, {checks} classes x, {elapsed:.1f}s"


# -- criterion 6: per | ind | eps(n) n^2, and ind | per^2 on spin^c ----------------


def criterion_6():
    reports = 0
    models = [model_a_teichner_orientable(), model_b_teichner_nonorientable()]
    for m in itertools.chain(models, enumerate_valid_models(*SWEEP_BOUNDS)):
        for r in tpic_report(m):
            n = r.period
            check(n == math.lcm(*(d // math.gcd(d, a) for a, d
                                  in zip(r.alpha, m.H3.invariant_factors))),
                  f"period of {r.alpha} is not its order")
            bound = (2 if n % 2 == 0 else 1) * n * n
            cands = [r.index] if r.index is not None else list(r.candidates)
            for d in cands:
                check(d % n == 0 and bound % d == 0, f"ind {d} for per {n}")
            if m.is_spin_c and r.index is not None:
                check((n * n) % r.index == 0, f"spin^c ind {r.index} does not divide {n * n}")
            reports += 1
    return f"{reports} reports"


# -- criterion 7: Bockstein identities on random groups ----------------------------


def random_group(rng):
    chain = []
    for d in sorted(rng.choice((2, 3, 4, 8, 16)) for _ in range(rng.randint(0, 2))):
        if chain and d % chain[-1]:
            d = chain[-1]
        chain.append(d)
    return FgAbelianGroup(tuple(chain), rng.randint(0, 1))


def closure(G, gens):
    seen = {G.zero()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for s in frontier:
            for g in gens:
                t = G.add(s, g)
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return seen


def criterion_7(count=240, seed=20261016):
    rng = random.Random(seed)
    for _ in range(count):
        A, B, n = random_group(rng), random_group(rng), rng.choice((2, 3, 4, 6, 8))
        M = build_modn(A, B, n)
        C = M.carrier
        expected = (math.prod(math.gcd(a, n) for a in A.invariant_factors) * n ** A.free_rank
                    * math.prod(math.gcd(b, n) for b in B.invariant_factors))
        check(C.order == expected, f"|C_{n}| = {C.order}, expected {expected}")
        check(C.order <= 4096, "carrier too large to enumerate")
        elems = list(C.elements())
        beta = {c: M.beta(c) for c in elems}
        ker = {c for c in elems if not any(beta[c])}
        im_rho = closure(C, [M.rho(A.gen(i)) for i in range(A.ngens)])
        check(im_rho == ker, f"im rho != ker beta for {A}, {B}, n={n}")
        Bn = {tuple(b) for b in itertools.product(*(range(d) for d in B.invariant_factors))
              if all((n * x) % d == 0 for x, d in zip(b, B.invariant_factors))}
        Bn = {b + (0,) * B.free_rank for b in Bn}
        check(set(beta.values()) == Bn, f"im beta != B[{n}]")
        for c in elems:
            check(M.beta_qz(M.iota(c)) == beta[c], "beta^QZ o iota != beta")
        if n % 2 == 0:
            M2 = build_modn(A, B, 2)
            red = coeff_reduce(M, M2)
            for c in elems:
                check(M2.beta(red(c)) == B.scale(n // 2, beta[c]), "reduction identity fails")
    return f"{count} random cases"


# -- criterion 8: the linking/pairing layer ------------------------------------------


def chains(max_order):
    out = []

    def rec(prefix, prod):
        if prefix:
            out.append(tuple(prefix))
        last = prefix[-1] if prefix else 1
        for d in range(max(last, 2), max_order // prod + 1):
            if d % last == 0:
                rec(prefix + [d], prod * d)

    rec([], 1)
    return out


def criterion_8():
    groups = chains(64)
    for f in groups:
        G = FgAbelianGroup(f)
        phi = evaluation_pairing(G)
        check(is_perfect(phi) and is_perfect(phi, via="left"), f"pairing on {f} not perfect")
        if G.order <= 24:
            elems = list(G.elements())
            for h1 in elems:
                for h2 in elems:
                    check(equal_by_pairing(phi, h1, h2) == (h1 == h2),
                          f"equality by pairing fails on {f}")
    from fractions import Fraction
    Z2, Z4 = FgAbelianGroup((2,)), FgAbelianGroup((4,))
    half = QZPairing.from_function(Z2, Z4, lambda g, h: Fraction(g[0] * h[0], 2))
    check(not is_perfect(half), "half pairing reported perfect")
    H, incl = kernel_subgroup(half, "right")
    brute = {h for h in Z4.elements() if all(half(g, h) == 0 for g in Z2.elements())}
    check({incl(h) for h in H.elements()} == brute == {(0,), (2,)}, "wrong half-pairing kernel")
    return f"{len(groups)} groups perfect; half-pairing kernel {{0, 2}}"


# -- criterion 9: classifier x-independence -----------------------------------------


def criterion_9():
    checked = 0
    for m in (model_a_teichner_orientable(), model_b_teichner_nonorientable()):
        by_alpha = {}
        for x in itertools.product((0, 1), repeat=m.dim_W):
            alpha = bock_apply(m, x)
            if any(alpha):
                by_alpha.setdefault(alpha, []).append(x)
        for alpha, xs in by_alpha.items():
            reps = [classify_index_period2(m, x) for x in xs]
            check(all(r == reps[0] for r in reps), f"reports differ across preimages of {alpha}")
            checked += len(xs)
    return f"{checked} preimages"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in range(1, 10)}


def _run(i):
    try:
        detail = CRITERIA[i]()
    except CriterionFailed as exc:
        print(f"criterion {i}: FAIL ({exc})")
        raise
    print(f"criterion {i}: PASS ({detail})")


def test_criterion_1():
    _run(1)


def test_criterion_2():
    _run(2)


def test_criterion_3():
    _run(3)


def test_criterion_4():
    _run(4)


def test_criterion_5():
    _run(5)


def test_criterion_6():
    _run(6)


def test_criterion_7():
    _run(7)


def test_criterion_8():
    _run(8)


def test_criterion_9():
    _run(9)


if __name__ == "__main__":
    failed = 0
    for i in CRITERIA:
        try:
            _run(i)
        except CriterionFailed:
            failed += 1
    sys.exit(1 if failed else 0)
