"""One test per acceptance criterion. Each prints a single PASS/FAIL line
(also collected in the terminal summary). Run directly with
`python tests/test_acceptance.py` for the lines alone."""
import subprocess
import sys
import tempfile
from pathlib import Path

import pytest

from quadric_cw.combinatorics import full_mask, labels_of, size
from quadric_cw.intersection import basis_change_det, index_with_imaginary, vanishing_closed_form, vanishing_pair_index
from quadric_cw.monodromy import BMClass, MinusVariant, bubble_pinches, run_loops
from quadric_cw.verify import (
    check_boundary_squared,
    check_cube_lemma,
    check_generator_ranks,
    check_generators,
    check_geometry,
    check_sign_identities,
    check_tau_relations,
)


def _summarize(results):
    bad = [r for r in results if not r.ok]
    cases = sum(r.cases for r in results)
    detail = f"{cases} cases"
    if bad:
        detail += "; failing: " + "; ".join(f"{r.name} ({len(r.failures)}: {', '.join(r.failures[:3])})" for r in bad)
    return not bad, detail


def criterion_1():
    return _summarize([check_boundary_squared(n) for n in range(5)])


def criterion_2():
    return _summarize([check_cube_lemma(n) for n in range(4)])


def criterion_3():
    rs = []
    for n in range(4):
        rs += check_sign_identities(n)
    return _summarize(rs + check_tau_relations(6))


def criterion_4():
    rs = []
    for n in range(4):
        rs += check_generators(n)
    return _summarize(rs)


def criterion_5():
    rs = []
    ranks = []
    for n in (1, 2, 3):
        r = check_generator_ranks(n)
        ranks.append("/".join(x.info.split()[-1] for x in r))
        rs += r
    ok, detail = _summarize(rs)
    return ok, detail + "; ranks " + " ".join(ranks)


def criterion_6():
    fails = []
    cases = 0
    for N in range(1, 10):
        for k in range(1, N + 1):
            cases += 1
            if basis_change_det(N - 1, k) != (-1) ** (k - 1):
                fails.append(f"det n={N - 1} k={k}")
    for n in range(4):
        for I in range(1, full_mask(n) + 1):
            cases += 1
            v, cert = index_with_imaginary(I, n)
            want = 1 if size(I) == 1 else 0
            if v != want or not cert.shift_invariant:
                fails.append(f"n={n} I={labels_of(I)} index {v}")
    detail = f"{cases} cases"
    if fails:
        detail += f"; {len(fails)} failing: " + ", ".join(fails[:5])
    return not fails, detail


def criterion_7():
    fails = []
    cases = 0
    for n in range(5):
        for J in range(1, full_mask(n) + 1):
            for I in range(1, full_mask(n) + 1):
                cases += 1
                if vanishing_pair_index(J, I, n)[0] != vanishing_closed_form(J, I, n):
                    fails.append(f"n={n} J={labels_of(J)} I={labels_of(I)}")
    return not fails, f"{cases} cases" + (f"; failing: {', '.join(fails[:5])}" if fails else "")


def _case_table(D, plus, minus, word):
    s = (-1) ** ((D + 1) * (D + 2) // 2)
    n = D - 1
    if word == ["+"]:
        return BMClass(n, 1, {plus.sphere: s})
    if word == ["+", "+"]:
        return BMClass(n, 1) if D % 2 == 0 else BMClass(n, 1, {plus.sphere: 4 * s})
    if D % 2 == 0:
        return BMClass(n, 1, {plus.sphere: s, minus.sphere: 2 * (-1) ** (D * (D + 1) // 2)})
    return BMClass(n, 1, {plus.sphere: s})


def criterion_8():
    fails = []
    cases = 0
    for variant in MinusVariant:
        for D in (2, 3, 4, 5):
            plus, minus = bubble_pinches(D, variant)
            for word in (["+"], ["+", "+"], ["+", "-"]):
                cases += 1
                got = run_loops(D, word, variant)
                if got != _case_table(D, plus, minus, word):
                    fails.append(f"{variant.value} D={D} {''.join(word)}: base {got.base} "
                                 f"spheres {sorted(got.spheres.values())}")
    return not fails, f"{cases} cases" + (f"; {len(fails)} failing: {', '.join(fails[:4])}" if fails else "")


def criterion_9():
    return _summarize(check_geometry(2, 1000, 0))


def criterion_10():
    cmd = [sys.executable, "-m", "quadric_cw.cli"]
    runs = [subprocess.run(cmd + ["verify", "--n", "2", "--suite", "all"], capture_output=True) for _ in range(2)]
    same_report = runs[0].stdout == runs[1].stdout and runs[0].stdout
    with tempfile.TemporaryDirectory() as d:
        outs = []
        for t in ("a", "b"):
            p = Path(d) / f"{t}.json"
            subprocess.run(cmd + ["build", "--n", "2", "--out", str(p)], capture_output=True, check=True)
            outs.append(p.read_bytes())
    same_json = outs[0] == outs[1]
    ok = bool(same_report) and same_json
    return ok, f"verify report identical: {bool(same_report)}; complex JSON identical: {same_json}"


CRITERIA = {
    1: ("boundary squared is zero, n<=4", criterion_1),
    2: ("cube lemma, n<=3", criterion_2),
    3: ("sign identities n<=3 and tau relations m<=6", criterion_3),
    4: ("generator identities, n<=3", criterion_4),
    5: ("generator class ranks 3, 7, 15", criterion_5),
    6: ("intersection indices with the imaginary plane", criterion_6),
    7: ("vanishing pairings, n<=4", criterion_7),
    8: ("bubble monodromy case tables, D=2..5", criterion_8),
    9: ("geometry at n=2", criterion_9),
    10: ("determinism", criterion_10),
}


def line(k, ok, detail):
    return f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {CRITERIA[k][0]} ({detail})"


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, record_criterion):
    ok, detail = CRITERIA[k][1]()
    record_criterion(line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k][1]()
        print(line(k, ok, detail), flush=True)
        status |= not ok
    sys.exit(status)
