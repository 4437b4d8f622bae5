"""Acceptance gate: nine criteria, exact arithmetic, zero tolerance.

Each test prints one ``criterion N: PASS|FAIL (...)`` line. Instance counts
are the required minimums; seeds are fixed so every run sees the same data.
"""

import time
from dataclasses import replace
from fractions import Fraction as F

import pytest

from bvpairing import MINUS, PLUS, STAR, Domain, PiecewiseAffine
from bvpairing import harness as H
from bvpairing.bvfunc import extension_bound_check, step
from bvpairing.certify import (
    certify_dirichlet,
    certify_local,
    transfer_datum,
    traversed_endpoints,
    unimodal_oracle,
    verify_dirichlet,
)
from bvpairing.dmfield import div_bound_check, normal_trace

P = H.GeneratorParams
REPS = (PLUS, MINUS, STAR)
UNIT = Domain(0, 1)


@pytest.fixture
def announce(capsys):
    def _announce(n, ok, detail):
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return _announce


def _params(i, salt, **kw):
    return P(seed=salt * 1_000_000 + i, **kw)


def _jumpy(i, salt):
    """Mixed continuous / jumpy instances: jump probability cycles through 0..1."""
    return _params(i, salt, jump_probability=F(i % 5, 4))


def test_c1_definitional_consistency(announce):
    n, bad = 1000, []
    start = time.perf_counter()
    for i in range(n):
        b = _jumpy(i, 1)
        u = H.gen_bv(b)
        sigma = H.gen_field(replace(b, seed=b.seed + 1), nonincreasing=False)
        u0 = H.gen_continuous(replace(b, seed=b.seed + 2))
        phi0 = H.gen_test_function(replace(b, seed=b.seed + 3), vanish=True)
        phi = H.gen_test_function(replace(b, seed=b.seed + 4), vanish=False)
        rep = REPS[i % 3]
        if not (H.check_def_local(sigma, u, rep, phi0) and H.check_def_global(sigma, u, u0, rep, phi)):
            bad.append(b.seed)
    elapsed = time.perf_counter() - start
    announce(1, not bad and elapsed < 10,
             f"{n} instances, {len(bad)} mismatches, {elapsed:.1f}s of 10s")


def test_c2_local_estimate_and_boundary(announce):
    n, bad = 10_000, []
    for i in range(n):
        b = _jumpy(i, 2)
        u = H.gen_bv(b)
        sigma = H.gen_field(replace(b, seed=b.seed + 1))
        u0 = H.gen_continuous(replace(b, seed=b.seed + 2))
        for rep in REPS:
            if not (H.check_local_estimate(sigma, u, rep) and H.check_boundary_equality(sigma, u, u0, rep)):
                bad.append((b.seed, rep.value))
    announce(2, not bad, f"{n} instances x 3 representatives, {len(bad)} violations")


def test_c3_trivialization(announce):
    n, bad = 1000, []
    for i in range(n):
        b = _params(i, 3)
        u = H.gen_continuous(b)
        u0 = H.gen_continuous(replace(b, seed=b.seed + 1))
        sigma = H.gen_field(replace(b, seed=b.seed + 2), nonincreasing=bool(i % 2))
        if not H.check_trivialization(sigma, u, u0):
            bad.append(b.seed)
    announce(3, not bad, f"{n} continuous instances, {len(bad)} violations")


def test_c4_dimension_bounds(announce):
    n, bad, tightest = 2000, [], F(0)
    for i in range(n):
        b = _jumpy(i, 4)
        sigma = H.gen_field(b)
        u = H.gen_bv(replace(b, seed=b.seed + 1))
        ok1, mass, bound = div_bound_check(sigma)
        ok2, _, _ = extension_bound_check(u)
        if not (ok1 and ok2):
            bad.append(b.seed)
        if bound:
            tightest = max(tightest, mass / bound)
    ok_w, mass_w, bound_w = div_bound_check(step(UNIT, F(1, 2), 1, -1))
    witness = ok_w and mass_w == 2 and bound_w == 4
    announce(4, not bad and witness,
             f"{n} instances, {len(bad)} violations; step field mass {mass_w} of bound {bound_w}; "
             f"largest generated ratio {tightest}")


def test_c5_oracle(announce):
    n, bad, feasible = 10_000, [], 0
    start = time.perf_counter()
    for i in range(n):
        u = H.gen_bv(_jumpy(i, 5))
        cert = certify_local(u, PLUS)
        peak = unimodal_oracle(u)
        feasible += cert is not None
        if (cert is None) != (peak is None):
            bad.append(i)
    elapsed = time.perf_counter() - start
    announce(5, not bad and elapsed < 30,
             f"{n} instances ({feasible} certifiable), {len(bad)} disagreements, {elapsed:.1f}s of 30s")


def test_c6_compactness(announce):
    n, certified = 100, 0
    for i in range(n):
        u = H.gen_unimodal(_params(i, 6))
        family = H.ramp_family(u, range(1, 7))
        certified += H.run_compactness(family, u, PLUS).limit_certified

    spike = PiecewiseAffine.from_pieces([(-1, 0, -1, 0), (0, 1, 1, 0)])
    family = H.ramp_family(spike, range(1, 9))
    outcome = {rep: H.run_compactness(family, spike, rep) for rep in REPS}
    members_ok = all(len(r.members) == len(family) for r in outcome.values())
    spike_ok = (outcome[PLUS].limit_certified and not outcome[MINUS].limit_certified
                and not outcome[STAR].limit_certified)
    announce(6, certified == n and members_ok and spike_ok,
             f"{certified}/{n} limits certified; spike: plus certified, minus and star infeasible "
             f"with all {len(family)} members certified" if spike_ok else "spike outcome wrong")


def test_c7_dirichlet_certificates(announce):
    n, bad, positives = 10_000, [], 0
    for i in range(n):
        b = _jumpy(i, 7)
        u = H.gen_unimodal(b) if i % 2 else H.gen_bv(b)
        u0 = H.gen_continuous(replace(b, seed=b.seed + 1))
        cand = H.gen_certificate_candidate(replace(b, seed=b.seed + 2), u)
        fields = [cand]
        cert = certify_dirichlet(u, u0)
        if cert is not None:
            fields.append(cert.sigma)
            na, nb = normal_trace(cert.sigma)
            if (na, nb) == (-1, -1):
                bad.append((b.seed, "both endpoints"))
        for sigma in fields:
            positives += verify_dirichlet(sigma, u, u0)
            if not (H.check_dirichlet_equivalence(sigma, u, u0) and H.check_endpoint_facts(sigma, u)):
                bad.append(b.seed)
    announce(7, not bad and positives > 0,
             f"{n} instances, {positives} verified certificates, {len(bad)} violations")


def test_c8_dirichlet_compactness(announce):
    families = 0
    for i in range(100):
        fam, data, limit, datum = H.gen_dirichlet_family(_params(i, 8))
        H.run_compactness_dirichlet(fam, data, limit, datum)  # raises if the limit fails
        families += 1
    zero = PiecewiseAffine.constant(UNIT, 0)
    one = PiecewiseAffine.constant(UNIT, 1)
    ramps = H.boundary_ramp_family(UNIT, range(1, 9))
    ramp_report = H.run_compactness_dirichlet(ramps, [zero] * len(ramps), one, zero)

    transfers = attempts = 0
    i = 0
    while transfers < 100:
        b = _params(i, 80)
        i += 1
        u = H.gen_unimodal(b)
        u0 = H.gen_continuous(replace(b, seed=b.seed + 1))
        cert = certify_dirichlet(u, u0)
        if cert is None:
            continue
        shift = F(b.rng("shift").randint(-8, 8), 4)
        new_u0 = u0 + PiecewiseAffine.constant(u0.domain, shift)
        attempts += 1
        if not traversed_endpoints(u, u0, new_u0):
            assert transfer_datum(cert.sigma, u, u0, new_u0)
            transfers += 1
        else:
            assert not transfer_datum(cert.sigma, u, u0, new_u0)

    search = H.search_unmodified_witness()
    first = search.first
    outcome = (f"witness {H.serialize_function(first, 'w').splitlines()[1]}" if first is not None
               else "no witness found in family")
    announce(8, families == 100 and ramp_report.limit.verified and transfers >= 100,
             f"{families} generated families + ramp family certified; {transfers}/{attempts} "
             f"transfers with empty traversal succeeded; search examined {search.examined}, "
             f"{len(search.witnesses)} witnesses, {outcome}")


def test_c9_approx_from_above(announce):
    n, bad = 1000, []
    for i in range(n):
        u = H.gen_bv(_params(i, 9, jump_probability=F(3, 4)))
        for ell in range(1, 13):
            if not H.check_approx_from_above(u, ell):
                bad.append((i, ell))
    announce(9, not bad, f"{n} functions x ell 1..12, {len(bad)} violations")
