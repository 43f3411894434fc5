"""Exit criteria for the package, one test per criterion.

Every test logs a single PASS/FAIL line, shown in the "acceptance criteria"
section of the pytest summary.
"""

import json
import math
import random
import time
from functools import reduce
from itertools import combinations

import oracles
from domfam.counting import (
    BRUTE,
    INCLUSION_EXCLUSION,
    count_covering_bruteforce,
    count_covering_inclusion_exclusion,
    count_covering_subsets,
    count_report,
    full_union_subfamily_count,
    grinberg_pair_count,
)
from domfam.family import (
    build_family,
    family_from_masks,
    format_family,
    is_dominant,
    is_dominant_direct,
    parse_family,
    reduce_family,
    subfamily_unions_distinct,
)
from domfam.monomial import (
    Monomial,
    MonomialIdeal,
    format_ideal,
    generators_of_m,
    is_dominant_ideal,
    lcm_all,
    minimal_generators_of_m,
    parse_ideal,
    parse_monomial,
    taylor_parity_certificate,
)
from domfam.squarefree import (
    all_labels_distinct,
    condition_c,
    count_dominated_divisors,
    multiface_labels,
)
from test_cli import EXIT_MATRIX, GOLDEN, GOLDEN_CASES, VALID_FAMILIES, VALID_IDEALS, invoke


def test_criterion_1_theorem1_equivalence(criterion):
    log = criterion(1, "dominance == direct check == union distinctness")
    start = time.perf_counter()
    checked = mismatches = 0
    subsets = [c for r in range(1, 5) for c in combinations("abcd", r)]
    for n in (1, 2, 3):
        for combo in combinations(subsets, n):
            F = build_family(combo)
            verdicts = {is_dominant(F), is_dominant_direct(F), subfamily_unions_distinct(F).distinct}
            mismatches += len(verdicts) != 1 or verdicts != {oracles.dominant(combo)}
            checked += 1
    exhaustive = checked
    rng = random.Random(1)
    for _ in range(10_000):
        sets = oracles.random_family(rng, max_n=5, max_universe=10)
        F = build_family(sets)
        verdicts = {is_dominant(F), is_dominant_direct(F), subfamily_unions_distinct(F).distinct}
        mismatches += len(verdicts) != 1 or verdicts != {oracles.dominant(sets)}
        checked += 1
    elapsed = time.perf_counter() - start
    log.record(
        exhaustive == 575 and mismatches == 0 and elapsed < 60,
        f"{exhaustive} exhaustive + {checked - exhaustive} random families, {mismatches} mismatches, {elapsed:.1f}s (< 60s)",
    )


def test_criterion_2_theorem2_parity(criterion):
    log = criterion(2, "dominant families have odd covering counts; methods agree")
    start = time.perf_counter()
    rng = random.Random(2)
    even = disagree = 0
    for _ in range(1000):
        F = build_family(oracles.random_dominant_family(rng, max_n=6, max_union=18))
        assert is_dominant(F)
        brute = count_covering_bruteforce(F)
        ie = count_covering_inclusion_exclusion(F)
        disagree += brute != ie
        even += brute % 2 == 0
    elapsed = time.perf_counter() - start
    log.record(
        even == 0 and disagree == 0 and elapsed < 120,
        f"1000 dominant families, {even} even, {disagree} brute/IE disagreements, {elapsed:.1f}s (< 120s)",
    )


def test_criterion_3_non_biconditional_witness(criterion):
    log = criterion(3, "non-dominant {{1},{2},{1,2}} has covering count 3")
    F = build_family([["1"], ["2"], ["1", "2"]])
    r = count_report(F, (BRUTE, INCLUSION_EXCLUSION))
    ok = not is_dominant(F) and r.covering == 3 and r.covering_parity == "odd" and oracles.covering([{1}, {2}, {1, 2}]) == 3
    log.record(ok, f"dominant={is_dominant(F)}, covering={r.covering} ({r.covering_parity})")


def test_criterion_4_pair_double_count(criterion):
    log = criterion(4, "pair count two ways; parity matches noncovering; full-union count is 1 when dominant")
    rng = random.Random(4)
    bad_sum = bad_parity = bad_full = dominant_seen = 0
    for t in range(500):
        if t % 2:
            sets = oracles.random_dominant_family(rng, max_n=6, max_union=16)
        else:
            sets = oracles.random_family(rng, max_n=6, max_universe=16)
        F = build_family(sets)
        p = grinberg_pair_count(F)
        noncovering = count_report(F, (BRUTE,)).noncovering
        bad_sum += p.via_subsets != p.via_subfamilies
        bad_parity += p.via_subfamilies % 2 != noncovering % 2
        if is_dominant(F):
            dominant_seen += 1
            bad_full += full_union_subfamily_count(F) != 1
    log.record(
        bad_sum == bad_parity == bad_full == 0,
        f"500 families ({dominant_seen} dominant): {bad_sum} sum mismatches, {bad_parity} parity mismatches, {bad_full} full-union != 1",
    )


def test_criterion_5_reduction_parity(criterion):
    log = criterion(5, "reduction preserves noncovering parity and dominance")
    rng = random.Random(5)
    steps = bad = 0
    for _ in range(500):
        F = build_family(oracles.random_dominant_family(rng, max_n=6, max_union=16, min_n=2))
        base = count_report(F).noncovering % 2
        for i in range(len(F)):
            R = reduce_family(F, i)
            steps += 1
            bad += not is_dominant(R) or count_report(R).noncovering % 2 != base
    log.record(bad == 0, f"500 families, {steps} reductions, {bad} violations")


def test_criterion_6_number_theory(criterion):
    log = criterion(6, "(6, 15, 7, 33) satisfies condition C; (6, 10, 15) does not")
    a = [6, 15, 7, 33]
    cond = condition_c(a)
    labels = list(multiface_labels(a).labels.values())
    counted = count_dominated_divisors(a)
    top = reduce(math.lcm, a)
    scanned = sum(1 for n in oracles.divisors(top) if any(n % x == 0 for x in a))
    b = [6, 10, 15]
    b_labels = list(multiface_labels(b).labels.values())
    ok = (
        cond.holds
        and cond.witnesses == (2, 5, 7, 11)
        and len(labels) == 15
        and len(set(labels)) == 15
        and all_labels_distinct(a)
        and counted.n_size == counted.direct == scanned
        and counted.n_size % 2 == 1
        and not condition_c(b).holds
        and len(set(b_labels)) < len(b_labels)
    )
    log.record(
        ok,
        f"witnesses={cond.witnesses}, {len(set(labels))}/15 distinct labels, |N|={counted.n_size} "
        f"(direct {counted.direct}, scan {scanned}), (6,10,15): {len(set(b_labels))}/{len(b_labels)} distinct",
    )


def test_criterion_7_worked_ideal(criterion):
    log = criterion(7, "worked example ideal: minimal generators, certificate, count 11")
    M = MonomialIdeal.of("x1 x2", "x3 x4", "x5 x6", "x1 x3 x5", "x2 x4 x6", "x7")
    m = parse_monomial("x1 x2 x3 x4 x5 x6 x7")
    cert = taylor_parity_certificate(M, m)
    named = [{str(cert.A[i]) for i in S} for S in cert.minimal_generators_of_m]
    A1 = {"x1 x2", "x3 x4", "x5 x6", "x7"}
    A2 = {"x1 x3 x5", "x2 x4 x6", "x7"}
    # literal lcm over all 64 subfamilies
    exps = [g.exponents for g in M.generators]
    oracle_count = len(oracles.generator_subsets(exps, m.exponents))
    ok = (
        named == [A1, A2]
        and cert.union_covers_A
        and cert.family_dominant
        and cert.certified
        and oracle_count == 11
        and cert.generator_count == 11
        and generators_of_m(M.generators, m).count == 11
        and not is_dominant_ideal(M).dominant
    )
    log.record(
        ok,
        f"minimal generators {[sorted(s) for s in named]}, certified={cert.certified}, "
        f"count={cert.generator_count} (oracle {oracle_count}), ideal dominant={is_dominant_ideal(M).dominant}",
    )


def test_criterion_8_count_bridge(criterion):
    log = criterion(8, "generator count == covering count of the minimal-generator family over A")
    rng = random.Random(8)
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 10)
        A = [
            Monomial({v: rng.randint(1, 3) for v in rng.sample("abcdef", rng.randint(1, 4))})
            for _ in range(n)
        ]
        m = lcm_all(A)
        masks = [sum(1 << i for i in S) for S in minimal_generators_of_m(A, m)]
        F = family_from_masks(masks, [str(i) for i in range(n)])
        bad += generators_of_m(A, m).count != count_covering_subsets(F, over_universe=True)
    log.record(bad == 0, f"200 random instances, {bad} mismatches")


def test_criterion_9_cli_contract(criterion):
    log = criterion(9, "CLI round-trips, byte-stable golden reports, exit-code table")
    problems = []
    for path in VALID_FAMILIES:
        F = parse_family(path.read_text())
        if parse_family(format_family(F)) != F:
            problems.append(f"round-trip {path.name}")
    for path in VALID_IDEALS:
        M = parse_ideal(path.read_text())
        if parse_ideal(format_ideal(M)) != M:
            problems.append(f"round-trip {path.name}")
    for name, argv in GOLDEN_CASES.items():
        first, second = invoke(argv, json_out=True), invoke(argv, json_out=True)
        golden = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
        if not (first == second and first[1] == golden):
            problems.append(f"golden {name}")
        json.loads(first[1])
    codes = set()
    for argv, code in EXIT_MATRIX:
        got = invoke(argv)[0]
        codes.add(got)
        if got != code:
            problems.append(f"exit {argv}: {got} != {code}")
    ok = not problems and {0, 1, 2, 3} <= codes and 4 not in codes
    log.record(ok, f"{len(GOLDEN_CASES)} golden reports, {len(EXIT_MATRIX)} exit cases covering {sorted(codes)}; problems: {problems or 'none'}")
