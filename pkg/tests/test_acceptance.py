"""Acceptance suite: every criterion at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL
line per criterion together with measured runtimes.
"""

import math
import time

import numpy as np
import pytest

from odeco.eigen_enum import (
    canonical_vector,
    eigen_count,
    enumerate_eigenpairs,
    oracle_eigen_n2,
    projective_distance,
)
from odeco.equations import independent_count, jacobian_fermat_rank, residual
from odeco.groebner2 import buchberger_verify, dimension_certificate, squarefree_initial_check
from odeco.power_method import decompose, power_iterate
from odeco.symtensor import (
    OrthoDecomp,
    SymTensor,
    contract_last,
    frobenius_norm,
    multi_indices,
    random_odeco,
    tensor_from_decomp,
    to_ucoords,
)
from util import decomp_mismatch


def verdict(num: int, ok: bool, detail: str) -> None:
    print("criterion %2d: %s  %s" % (num, "PASS" if ok else "FAIL", detail))
    assert ok, "criterion %d failed: %s" % (num, detail)


def match_canonical(got, expected, tol):
    """Greedy coordinate-wise matching of canonical vectors; worst gap."""
    assert len(got) == len(expected)
    remaining = list(expected)
    worst = 0.0
    for w in got:
        gaps = [float(np.max(np.abs(w - q))) for q in remaining]
        k = int(np.argmin(gaps))
        worst = max(worst, gaps[k])
        remaining.pop(k)
    return worst


def test_criterion_01_eigenvector_counts():
    start = time.perf_counter()
    ok = True
    detail = []
    for d in range(3, 7):
        for l in range(1, 6):
            decomp, _ = random_odeco(5, d, seed=100 * d + l)
            sub = OrthoDecomp(decomp.lambdas[:l], decomp.basis[:l])
            enum = enumerate_eigenpairs(sub, 5, d)
            if len(enum.isolated) != eigen_count(d, l):
                ok = False
                detail.append("count mismatch at d=%d l=%d" % (d, l))
            bad = max(p.residual for p in enum.isolated)
            if bad >= 1e-8:
                ok = False
                detail.append("residual %.2e at d=%d l=%d" % (bad, d, l))
    if eigen_count(3, 3) != 7 or eigen_count(4, 2) != 4:
        ok = False
        detail.append("reference counts off")
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        ok = False
        detail.append("too slow")
    verdict(1, ok, "counts + residuals over d=3..6, l=1..5 (%.1fs)" % elapsed + "; ".join(detail))


def test_criterion_02_fermat_cubic_reproduction():
    lams = np.array([1.0, 2.0, 3.0])
    enum = enumerate_eigenpairs(OrthoDecomp(lams, np.eye(3)), 3, 3)
    expected = [
        canonical_vector(np.asarray(w, dtype=complex))
        for w in [
            [1 / lams[0], 0, 0],
            [0, 1 / lams[1], 0],
            [0, 0, 1 / lams[2]],
            [1 / lams[0], 1 / lams[1], 0],
            [1 / lams[0], 0, 1 / lams[2]],
            [0, 1 / lams[1], 1 / lams[2]],
            [1 / lams[0], 1 / lams[1], 1 / lams[2]],
        ]
    ]
    gap = match_canonical([p.w for p in enum.isolated], expected, 1e-10)
    verdict(2, len(enum.isolated) == 7 and gap < 1e-10, "worst coordinate gap %.2e" % gap)


def test_criterion_03_quartic_low_rank_reproduction():
    basis = np.zeros((2, 4))
    basis[0, 0] = basis[1, 1] = 1.0
    enum = enumerate_eigenpairs(OrthoDecomp(np.array([1.0, 2.0]), basis), 4, 4)
    expected = [
        canonical_vector(np.asarray(w, dtype=complex))
        for w in [
            [1, 0, 0, 0],
            [0, 2**-0.5, 0, 0],
            [1, 2**-0.5, 0, 0],
            [-1, 2**-0.5, 0, 0],
        ]
    ]
    gap = match_canonical([p.w for p in enum.isolated], expected, 1e-10)
    null_ok = len(enum.nullspace_basis) == 2
    for z in enum.nullspace_basis:
        null_ok = null_ok and float(np.max(np.abs(z[:2]))) < 1e-10
    gram = np.array([[float(a @ b) for a in enum.nullspace_basis] for b in enum.nullspace_basis])
    null_ok = null_ok and np.max(np.abs(gram - np.eye(2))) < 1e-10
    verdict(3, gap < 1e-10 and null_ok, "worst gap %.2e, nullspace spans e3,e4: %s" % (gap, null_ok))


def test_criterion_04_oracle_equivalence_n2():
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for d in (3, 4, 5):
        seeds = range(9) if d != 5 else range(7)  # 9 + 9 + 7 = 25 tensors
        for seed in seeds:
            decomp, T = random_odeco(2, d, seed=1000 + 10 * d + seed)
            enum = enumerate_eigenpairs(decomp, 2, d)
            pts = oracle_eigen_n2(T)
            if len(pts) != len(enum.isolated):
                verdict(4, False, "set sizes differ at d=%d seed=%d" % (d, seed))
            remaining = list(pts)
            for p in enum.isolated:
                gaps = [projective_distance(p.w, q) for q in remaining]
                k = int(np.argmin(gaps))
                worst = max(worst, gaps[k])
                remaining.pop(k)
            count += 1
    assert count == 25
    verdict(4, worst < 1e-6, "25 tensors, worst projective distance %.2e (%.1fs)" % (worst, time.perf_counter() - start))


def test_criterion_05_power_method_recovery():
    start = time.perf_counter()
    cases = [(n, d) for n in (2, 3, 4, 5) for d in (3, 4, 5)]
    cases += [(3, 3), (4, 3), (5, 4), (5, 5), (2, 4), (3, 5), (4, 4), (5, 3)]
    assert len(cases) == 20
    worst_rec = 0.0
    worst_recon = 0.0
    worst_basin = 1.0
    rng = np.random.default_rng(123)
    for idx, (n, d) in enumerate(cases):
        ref, T = random_odeco(n, d, seed=500 + idx)
        report = decompose(T, seed=idx)
        assert report.converged, (n, d)
        worst_rec = max(worst_rec, decomp_mismatch(report.decomp, ref, d))
        rebuilt = tensor_from_decomp(report.decomp, d)
        worst_recon = max(worst_recon, frobenius_norm(T - rebuilt) / frobenius_norm(T))
        hits = 0
        for _ in range(100):
            theta = rng.standard_normal(n)
            theta /= np.linalg.norm(theta)
            try:
                it = power_iterate(T, theta)
            except Exception:
                continue
            if not it.converged:
                continue
            gap = min(
                min(np.linalg.norm(it.limit - v), np.linalg.norm(it.limit + v))
                for v in ref.basis
            )
            hits += gap < 1e-8
        worst_basin = min(worst_basin, hits / 100.0)
    elapsed = time.perf_counter() - start
    ok = worst_rec < 1e-6 and worst_recon < 1e-6 and worst_basin >= 0.99 and elapsed < 60
    verdict(
        5,
        ok,
        "20 tensors: recovery %.2e, reconstruction %.2e, worst basin %.0f%% (%.1fs)"
        % (worst_rec, worst_recon, 100 * worst_basin, elapsed),
    )


def _odeco_corpus():
    corpus = []
    for n in range(1, 6):
        for d in range(2, 6):
            for seed in range(3):
                corpus.append(random_odeco(n, d, seed=7000 + seed)[1])
    return corpus


def test_criterion_06_vanishing_lemma():
    worst = 0.0
    for T in _odeco_corpus():
        worst = max(worst, residual(to_ucoords(T)))
    rng = np.random.default_rng(77)
    hits = 0
    for _ in range(100):
        T = SymTensor(3, 3, rng.uniform(-1, 1, len(multi_indices(3, 3))))
        hits += residual(to_ucoords(T)) > 1e-3
    ok = worst < 1e-10 and hits >= 95
    verdict(6, ok, "odeco worst %.2e; dense detections %d/100" % (worst, hits))


def test_criterion_07_generator_counts():
    start = time.perf_counter()
    table = {(3, 3): 6, (3, 4): 27, (3, 5): 75, (4, 3): 20, (4, 4): 126, (5, 3): 50}
    got = {key: independent_count(*key) for key in table}
    elapsed = time.perf_counter() - start
    ok = got == table and elapsed < 120
    verdict(7, ok, "counts %s (%.1fs)" % (sorted(got.values()), elapsed))


def test_criterion_08_codimension_certificate():
    ok = True
    details = []
    for n, d in [(3, 3), (3, 4), (4, 3), (4, 4), (5, 3)]:
        rank, expected = jacobian_fermat_rank(n, d)
        formula = math.comb(n + d - 1, d) - math.comb(n + 1, 2)
        if rank != expected or rank != formula:
            ok = False
        details.append("(%d,%d)->%d" % (n, d, rank))
    rank33, _ = jacobian_fermat_rank(3, 3)
    ok = ok and rank33 == 4
    verdict(8, ok, " ".join(details))


def test_criterion_09_groebner_verification():
    start = time.perf_counter()
    ok = True
    for d in range(3, 10):
        if not buchberger_verify(d).is_groebner or not squarefree_initial_check(d):
            ok = False
    for d in range(4, 10):
        cert = dimension_certificate(d)
        if not (cert.four_subsets_hit and cert.three_subset_free):
            ok = False
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 120
    verdict(9, ok, "d=3..9 basis+squarefree, d=4..9 dimension (%.1fs)" % elapsed)


def test_criterion_10_contraction_equivalence():
    tol = 1e-8
    corpus = _odeco_corpus()
    rng = np.random.default_rng(88)
    for n, d in [(3, 3), (2, 4), (4, 3)]:
        for _ in range(5):
            corpus.append(SymTensor(n, d, rng.uniform(-1, 1, len(multi_indices(n, d)))))
    agree = True
    for T in corpus:
        res_ok = residual(to_ucoords(T)) < tol
        _, defect = contract_last(T)
        defect_ok = defect < tol * frobenius_norm(T) ** 2
        if res_ok != defect_ok:
            agree = False
    verdict(10, agree, "verdicts agree on %d corpus tensors" % len(corpus))
