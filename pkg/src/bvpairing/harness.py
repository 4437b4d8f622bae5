"""Random instances, convergence experiments and property suites.

Generation is a pure function of the seed and parameters. Experiments check
theorem conclusions on instances whose hypotheses hold by construction.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import random
import threading
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .bvfunc import (
    MINUS,
    PLUS,
    STAR,
    Representative,
    approx_from_above,
    approx_from_below,
    extension_bound_check,
    gradient_measure,
    representative_value,
)
from .certify import (
    Certificate,
    boundary_reformulation,
    certify_dirichlet,
    certify_dirichlet_unmodified,
    certify_local,
    unimodal_oracle,
    verify_dirichlet,
    verify_local,
)
from .core import Domain, PiecewiseAffine, Q
from .dmfield import div_bound_check, is_nonincreasing, normal_trace
from .measure import Region, SignedMeasure, TestFunction, evaluate, measure_le, restrict, total_variation
from .pairing import (
    boundary_trace_term,
    pair_global,
    pair_global_def_eval,
    pair_local,
    pair_local_def_eval,
)
from .textio import serialize_function

REPS = (PLUS, MINUS, STAR)
UNIT = Domain(0, 1)


@dataclass(frozen=True)
class GeneratorParams:
    seed: int = 0
    max_pieces: int = 4
    value_range: tuple[Fraction, Fraction] = (Fraction(-2), Fraction(2))
    slope_range: tuple[Fraction, Fraction] = (Fraction(-3), Fraction(3))
    jump_probability: Fraction = Fraction(1, 2)
    domain: Domain = UNIT

    def __post_init__(self):
        object.__setattr__(self, "value_range", tuple(Q(v) for v in self.value_range))
        object.__setattr__(self, "slope_range", tuple(Q(v) for v in self.slope_range))
        object.__setattr__(self, "jump_probability", Q(self.jump_probability))
        if self.max_pieces < 1:
            raise ValueError("max_pieces must be at least 1")
        if self.value_range[0] > self.value_range[1] or self.slope_range[0] > self.slope_range[1]:
            raise ValueError("empty value or slope range")
        if not 0 <= self.jump_probability <= 1:
            raise ValueError("jump_probability must lie in [0, 1]")
        if self.seed < 0:
            raise ValueError("seed must be unsigned")

    def rng(self, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}:{salt}")


# -- generators --------------------------------------------------------------

GRID_DEN = 4


def _pick(rng: random.Random, lo: Fraction, hi: Fraction, den: int = GRID_DEN) -> Fraction:
    return Fraction(rng.randint(math.ceil(lo * den), math.floor(hi * den)), den)


def _coin(rng: random.Random, p: Fraction) -> bool:
    return rng.random() < p


def _knots(rng: random.Random, params: GeneratorParams, n_pieces: int) -> list[Fraction]:
    dom = params.domain
    grid = max(12, 2 * params.max_pieces)
    inner = sorted(rng.sample(range(1, grid), n_pieces - 1))
    return [dom.a] + [dom.a + dom.length * Fraction(k, grid) for k in inner] + [dom.b]


def _build(knots, starts, slopes) -> PiecewiseAffine:
    lo, hi = [], []
    for (l, h), v, s in zip(zip(knots, knots[1:]), starts, slopes):
        lo.append(v)
        hi.append(v + s * (h - l))
    return PiecewiseAffine(Domain(knots[0], knots[-1]), tuple(knots), tuple(lo), tuple(hi))


def gen_bv(params: GeneratorParams) -> PiecewiseAffine:
    """Random piecewise-affine BV function; continuous when jump_probability is 0."""
    rng = params.rng("bv")
    n = rng.randint(1, params.max_pieces)
    knots = _knots(rng, params, n)
    vlo, vhi = params.value_range
    starts, slopes = [], []
    end = None
    for i in range(n):
        if end is None:
            start = _pick(rng, vlo, vhi)
        elif _coin(rng, params.jump_probability):
            start = _pick(rng, vlo, vhi)
            while start == end:
                start += Fraction(1, GRID_DEN) if rng.random() < 0.5 else -Fraction(1, GRID_DEN)
        else:
            start = end
        slope = _pick(rng, *params.slope_range, den=2)
        starts.append(start)
        slopes.append(slope)
        end = start + slope * (knots[i + 1] - knots[i])
    return _build(knots, starts, slopes)


def gen_continuous(params: GeneratorParams) -> PiecewiseAffine:
    return gen_bv(replace(params, jump_probability=Fraction(0)))


def gen_field(params: GeneratorParams, nonincreasing: bool = True,
              bound: Fraction | None = None) -> PiecewiseAffine:
    """Random field; with ``nonincreasing`` its divergence is a nonpositive measure.

    ``bound`` rescales the field into [-bound, bound].
    """
    rng = params.rng("field")
    n = rng.randint(1, params.max_pieces)
    knots = _knots(rng, params, n)
    vlo, vhi = params.value_range
    starts, slopes = [], []
    end = None
    for i in range(n):
        if end is None:
            start = _pick(rng, vlo, vhi)
        elif _coin(rng, params.jump_probability):
            drop = abs(_pick(rng, vlo, vhi)) + Fraction(1, GRID_DEN)
            start = end - drop if nonincreasing else _pick(rng, vlo, vhi)
        else:
            start = end
        slope = _pick(rng, *params.slope_range, den=2)
        if nonincreasing:
            slope = -abs(slope)
        starts.append(start)
        slopes.append(slope)
        end = start + slope * (knots[i + 1] - knots[i])
    sigma = _build(knots, starts, slopes)
    if bound is not None and sigma.sup_norm > 0:
        sigma = sigma * (Q(bound) / sigma.sup_norm)
    return sigma


def gen_test_function(params: GeneratorParams, vanish: bool = True) -> TestFunction:
    rng = params.rng("phi")
    n = rng.randint(1, params.max_pieces + 1)
    knots = _knots(rng, replace(params, max_pieces=params.max_pieces + 1), n)
    vals = [_pick(rng, *params.value_range) for _ in knots]
    if vanish:
        vals[0] = vals[-1] = Fraction(0)
    return TestFunction(PiecewiseAffine.polyline(knots, vals))


def gen_unimodal(params: GeneratorParams) -> PiecewiseAffine:
    """Random u that increases up to a peak and decreases afterwards.

    Up-jumps only left of the peak knot, down-jumps only right of it, either
    kind at the peak itself.
    """
    rng = params.rng("unimodal")
    n = rng.randint(1, params.max_pieces)
    knots = _knots(rng, params, n)
    peak = rng.randint(0, n)  # knot index
    vlo, vhi = params.value_range
    smag = max(abs(params.slope_range[0]), abs(params.slope_range[1]))
    starts, slopes = [], []
    end = None
    for i in range(n):
        if end is None:
            start = _pick(rng, vlo, vhi)
        elif _coin(rng, params.jump_probability):
            size = _pick(rng, Fraction(1, GRID_DEN), max(vhi - vlo, Fraction(1, GRID_DEN)))
            if i < peak:
                start = end + size
            elif i > peak:
                start = end - size
            else:
                start = end + size if rng.random() < 0.5 else end - size
        else:
            start = end
        mag = _pick(rng, Fraction(0), smag, den=2)
        slope = mag if i < peak else -mag
        starts.append(start)
        slopes.append(slope)
        end = start + slope * (knots[i + 1] - knots[i])
    return _build(knots, starts, slopes)


def gen_certificate_candidate(params: GeneratorParams, u: PiecewiseAffine) -> PiecewiseAffine:
    """A field in S_infty with Div <= 0 on u's partition, biased toward +-1 values."""
    rng = params.rng("candidate")
    vals = []
    cur = Fraction(1)
    choices = [Fraction(v, 2) for v in range(-2, 3)]
    for _ in range(2 * u.n_pieces):
        if rng.random() < 0.35:
            cur = rng.choice([c for c in choices if c <= cur])
        vals.append(cur)
    pieces = []
    for i, (l, h) in enumerate(zip(u.knots, u.knots[1:])):
        m = (l + h) / 2
        pieces += [(l, m, vals[2 * i], vals[2 * i]), (m, h, vals[2 * i + 1], vals[2 * i + 1])]
    return PiecewiseAffine.from_pieces(pieces).simplify()


# -- monotone families ---------------------------------------------------------

def ramp_family(u: PiecewiseAffine, ks: Sequence[int]) -> list[PiecewiseAffine]:
    """Continuous u_k <= u with ramps of width 1/k replacing each jump."""
    return [approx_from_below(u, Fraction(1, k)) for k in ks]


def spike() -> PiecewiseAffine:
    """x on (-1, 0), 1 - x on (0, 1): an up-jump sitting on a peak."""
    return PiecewiseAffine.from_pieces([(-1, 0, -1, 0), (0, 1, 1, 0)])


def distance_to_boundary(domain: Domain) -> PiecewiseAffine:
    mid = (domain.a + domain.b) / 2
    return PiecewiseAffine.polyline([domain.a, mid, domain.b], [0, domain.length / 2, 0])


def boundary_ramp_family(domain: Domain, ks: Sequence[int], cap: PiecewiseAffine | Fraction = Fraction(1)):
    """u_k = min(cap, k * dist(x, boundary)), all vanishing at both endpoints."""
    if not isinstance(cap, PiecewiseAffine):
        cap = PiecewiseAffine.constant(domain, cap)
    dist = distance_to_boundary(domain)
    return [cap.minimum(dist * k).simplify() for k in ks]


# -- experiments ---------------------------------------------------------------

@dataclass
class CompactnessReport:
    rep: Representative
    members: list[Certificate]
    limit: Certificate | None
    finding: str = ""

    @property
    def limit_certified(self) -> bool:
        return self.limit is not None

    def to_text(self) -> str:
        status = "certified" if self.limit_certified else "NOT certified"
        lines = [
            f"compactness rep={self.rep.value} members={len(self.members)} (all certified)",
            f"limit {status}",
        ]
        if self.finding:
            lines.append(self.finding)
        return "\n".join(lines)


def _check_monotone(family: Sequence[PiecewiseAffine], limit: PiecewiseAffine) -> None:
    for k, uk in enumerate(family):
        if not uk.le(limit):
            raise ValueError(f"monotonicity violation: member {k} is not below the limit")
        if k + 1 < len(family) and not uk.le(family[k + 1]):
            raise ValueError(f"monotonicity violation: member {k} exceeds member {k + 1}")


def run_compactness(
    family: Sequence[PiecewiseAffine], limit: PiecewiseAffine, rep: Representative = PLUS
) -> CompactnessReport:
    """Certify every member and the limit of an increasing family."""
    _check_monotone(family, limit)
    members = []
    for k, uk in enumerate(family):
        cert = certify_local(uk, rep)
        if cert is None:
            raise ValueError(f"member {k} is not weakly super-1-harmonic for rep {rep.value}")
        members.append(cert)
    limit_cert = certify_local(limit, rep)
    finding = ""
    if limit_cert is None:
        if rep is PLUS:
            raise RuntimeError("limit of certified family not certified for rep plus")
        finding = (f"finding: with rep {rep.value} every member is certified "
                   "but the limit is not")
    return CompactnessReport(rep, members, limit_cert, finding)


@dataclass
class DirichletCompactnessReport:
    members: list[Certificate]
    limit: Certificate
    unmodified_limit: Certificate | None

    def to_text(self) -> str:
        um = "certified" if self.unmodified_limit else "NOT certified"
        return "\n".join([
            f"dirichlet compactness members={len(self.members)} (all certified)",
            "limit certified (modified pairing)",
            f"limit with unmodified pairing: {um}",
        ])


def run_compactness_dirichlet(
    family: Sequence[PiecewiseAffine],
    data: Sequence[PiecewiseAffine],
    limit: PiecewiseAffine,
    datum: PiecewiseAffine,
) -> DirichletCompactnessReport:
    if len(family) != len(data):
        raise ValueError("need one datum per family member")
    for k, uk in enumerate(family):
        if not uk.le(limit):
            raise ValueError(f"monotonicity violation: member {k} is not below the limit")
    members = []
    for k, (uk, dk) in enumerate(zip(family, data)):
        cert = certify_dirichlet(uk, dk)
        if cert is None:
            raise ValueError(f"member {k} is not certified with respect to its datum")
        members.append(cert)
    limit_cert = certify_dirichlet(limit, datum)
    if limit_cert is None:
        raise RuntimeError("Dirichlet limit not certified with the modified pairing")
    return DirichletCompactnessReport(members, limit_cert, certify_dirichlet_unmodified(limit, datum))


def gen_dirichlet_family(params: GeneratorParams, K: int = 4, max_tries: int = 200):
    """(family, data, limit, datum) with a certified limit, found by rejection."""
    for attempt in range(max_tries):
        p = replace(params, seed=params.seed * 1000 + attempt)
        u = gen_unimodal(p)
        u0 = gen_continuous(replace(p, seed=p.seed + 7))
        if certify_dirichlet(u, u0) is None:
            continue
        rng = p.rng("family")
        shift = _pick(rng, Fraction(0), Fraction(1))
        ks = range(1, K + 1)
        family = ramp_family(u, ks)
        data = [u0 - shift / k for k in ks]
        return family, data, u, u0
    raise RuntimeError("no certified Dirichlet instance found")


@dataclass
class WitnessSearch:
    examined: int
    hypotheses_met: int
    witnesses: list[PiecewiseAffine]

    @property
    def first(self) -> PiecewiseAffine | None:
        return self.witnesses[0] if self.witnesses else None

    def to_text(self) -> str:
        head = (f"unmodified-pairing witness search: examined {self.examined} limits, "
                f"{self.hypotheses_met} with certified families")
        if not self.witnesses:
            return head + "\nno witness found in family"
        w = self.witnesses[0]
        return (head + f"\n{len(self.witnesses)} witnesses; first:\n"
                + serialize_function(w, "witness"))


def search_unmodified_witness(
    domain: Domain = UNIT,
    max_breakpoints: int = 3,
    values: Sequence[Fraction] = (Fraction(0), Fraction(1, 2), Fraction(1)),
    ks: Sequence[int] = range(1, 7),
) -> WitnessSearch:
    """Exhaustive search over continuous limits on a small grid, datum 0.

    For each candidate limit u the family min(u, k dist) lies in W_0^{1,1} and
    increases to u. A witness is a limit whose family is certified for the
    unmodified pairing but which is itself not certified for it. The modified
    pairing must certify every such limit.
    """
    zero = PiecewiseAffine.constant(domain, 0)
    grid = [domain.a + domain.length * Fraction(k, 4) for k in (1, 2, 3)]
    examined = met = 0
    witnesses = []
    for nb in range(0, max_breakpoints + 1):
        for inner in combinations(grid, nb):
            knots = [domain.a, *inner, domain.b]
            for vals in product(values, repeat=len(knots)):
                u = PiecewiseAffine.polyline(knots, vals)
                examined += 1
                family = boundary_ramp_family(domain, ks, u)
                if not all(certify_dirichlet_unmodified(uk, zero) for uk in family):
                    continue
                met += 1
                if certify_dirichlet(u, zero) is None:
                    raise RuntimeError(f"modified pairing fails on limit {u}")
                if certify_dirichlet_unmodified(u, zero) is None:
                    witnesses.append(u)
    return WitnessSearch(examined, met, witnesses)


# -- property checks -----------------------------------------------------------

def check_def_local(sigma, u, rep, phi) -> bool:
    return evaluate(pair_local(sigma, u, rep), phi) == pair_local_def_eval(sigma, u, rep, phi)


def check_def_global(sigma, u, u0, rep, phi) -> bool:
    return evaluate(pair_global(sigma, u, u0, rep), phi) == pair_global_def_eval(sigma, u, u0, rep, phi)


def check_local_estimate(sigma, u, rep) -> bool:
    lhs = total_variation(pair_local(sigma, u, rep))
    rhs = total_variation(gradient_measure(u)) * sigma.sup_norm
    return measure_le(lhs, rhs)


def check_boundary_equality(sigma, u, u0, rep) -> bool:
    glob = pair_global(sigma, u, u0, rep)
    rest = glob - boundary_trace_term(sigma, u, u0)
    dom = glob.domain
    if not restrict(rest, Region.boundary_of(dom)).is_zero():
        return False
    bound = total_variation(gradient_measure(u)).closure() * sigma.sup_norm
    return measure_le(total_variation(rest), bound)


def check_trivialization(sigma, u_cont, u0) -> bool:
    dens = SignedMeasure(u_cont.domain, _product_density(sigma, u_cont))
    local = [pair_local(sigma, u_cont, r) for r in REPS]
    glob = [pair_global(sigma, u_cont, u0, r) for r in REPS]
    expected_global = dens.closure() + boundary_trace_term(sigma, u_cont, u0)
    na, nb = normal_trace(sigma)
    return (
        all(m == dens for m in local)
        and all(m == expected_global for m in glob)
        and max(abs(na), abs(nb)) <= sigma.sup_norm
    )


def _product_density(sigma, u) -> PiecewiseAffine:
    knots = sorted(set(sigma.knots) | set(u.knots))
    s, v = sigma.refine(knots), u.refine(knots)
    return PiecewiseAffine(
        s.domain, s.knots,
        tuple(a * d for a, d in zip(s.lo_values, v.slopes)),
        tuple(a * d for a, d in zip(s.hi_values, v.slopes)),
    )


def check_bounds(sigma_noninc, u) -> bool:
    ok1, _, _ = div_bound_check(sigma_noninc)
    ok2, _, _ = extension_bound_check(u)
    return ok1 and ok2


def check_oracle(u) -> bool:
    return (certify_local(u, PLUS) is None) == (unimodal_oracle(u) is None)


def check_dirichlet_equivalence(sigma, u, u0) -> bool:
    return verify_dirichlet(sigma, u, u0) == boundary_reformulation(sigma, u, u0)


def check_endpoint_facts(sigma, u) -> bool:
    if not is_nonincreasing(sigma):
        return True
    na, nb = normal_trace(sigma)
    if na == -1 and nb == -1:
        return False
    if verify_local(sigma, u, PLUS):
        increasing_somewhere = any(s > 0 for s in u.slopes) or any(r > l for _, l, r in u.jumps())
        decreasing_somewhere = any(s < 0 for s in u.slopes) or any(r < l for _, l, r in u.jumps())
        if na == -1 and increasing_somewhere:
            return False
        if nb == -1 and decreasing_somewhere:
            return False
    return True


def check_approx_from_above(u, ell) -> bool:
    v1 = approx_from_above(u, 1)
    v = approx_from_above(u, ell)
    if not (v.is_continuous and u.le(v) and v.le(v1)):
        return False
    for x, _, _ in u.jumps():
        if v.limit_left(x) != representative_value(u, x, PLUS):
            return False
    return True


# -- reporting -----------------------------------------------------------------

CSV_HEADER = ("seed", "instance", "check", "result", "witness")


@dataclass
class Report:
    """Ordered collection of trial rows; appends are serialised by a lock."""

    title: str = "report"
    rows: list[tuple[str, str, str, str, str]] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add(self, seed, instance: str, check: str, passed: bool | str, witness: str = "") -> None:
        result = passed if isinstance(passed, str) else ("pass" if passed else "fail")
        with self._lock:
            self.rows.append((str(seed), instance, check, result, witness))

    def extend(self, rows) -> None:
        with self._lock:
            self.rows.extend(rows)

    def counts(self) -> dict[str, Counter]:
        out: dict[str, Counter] = {}
        for _, _, check, result, _ in self.rows:
            out.setdefault(check, Counter())[result] += 1
        return out

    @property
    def failures(self) -> int:
        return sum(1 for r in self.rows if r[3] == "fail")

    def to_text(self) -> str:
        lines = [self.title]
        for check, c in self.counts().items():
            lines.append(f"  {check:<22} pass={c.get('pass', 0):<6} fail={c.get('fail', 0)}")
        lines.extend(self.notes)
        lines.append(f"total failures: {self.failures}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(self.rows)
        return buf.getvalue()


def instance_hash(*objs) -> str:
    h = hashlib.sha256()
    for o in objs:
        text = serialize_function(o, "x") if isinstance(o, PiecewiseAffine) else str(o)
        h.update(text.encode())
        h.update(b"\0")
    return h.hexdigest()[:12]


def _one_trial(args) -> list[tuple[str, str, str, str, str]]:
    seed, t = args
    trial_seed = seed * 1_000_003 + t
    base = GeneratorParams(seed=trial_seed, max_pieces=4)
    rng = base.rng("trial")
    jumpy = replace(base, jump_probability=Fraction(rng.choice([0, 1, 2, 3, 4]), 4))
    u = gen_bv(jumpy)
    sigma = gen_field(replace(base, seed=trial_seed + 1))
    sigma_any = gen_field(replace(base, seed=trial_seed + 2), nonincreasing=False)
    u0 = gen_continuous(replace(base, seed=trial_seed + 3))
    uc = gen_continuous(replace(base, seed=trial_seed + 4))
    phi0 = gen_test_function(replace(base, seed=trial_seed + 5), vanish=True)
    phi = gen_test_function(replace(base, seed=trial_seed + 6), vanish=False)
    rep = REPS[t % 3]
    ell = rng.randint(1, 12)
    cand = gen_certificate_candidate(replace(base, seed=trial_seed + 7), u)
    iid = instance_hash(u, sigma, u0)

    rows = []

    def add(check, ok, witness=""):
        rows.append((str(trial_seed), iid, check, "pass" if ok else "fail", "" if ok else witness))

    add("def_local", check_def_local(sigma_any, u, rep, phi0), f"rep={rep.value}")
    add("def_global", check_def_global(sigma_any, u, u0, rep, phi), f"rep={rep.value}")
    add("local_estimate", all(check_local_estimate(sigma, u, r) for r in REPS))
    add("boundary_equality", all(check_boundary_equality(sigma, u, u0, r) for r in REPS))
    add("trivialization", check_trivialization(sigma_any, uc, u0))
    add("dimension_bounds", check_bounds(sigma, u))
    add("oracle", check_oracle(u))
    add("dirichlet_equiv", check_dirichlet_equivalence(cand, u, u0))
    add("endpoints", check_endpoint_facts(cand, u))
    add("approx_above", check_approx_from_above(u, ell), f"ell={ell}")
    return rows


def run_suite(trials: int = 100, seed: int = 0, workers: int = 1) -> Report:
    """All property checks on ``trials`` random instances; deterministic in (trials, seed)."""
    report = Report(title=f"property suite: trials={trials} seed={seed}")
    jobs = [(seed, t) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for rows in pool.map(_one_trial, jobs, chunksize=16):
                report.extend(rows)
    else:
        for job in jobs:
            report.extend(_one_trial(job))
    return report
