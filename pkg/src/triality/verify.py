"""Invariant suite run by ``triality verify-theorems``.

Each check is a function of a shared context and a private random source
seeded from ``(seed, tag)``, so the outcome does not depend on the order in
which checks run.  A check returns ``(passed, detail)``; ``detail`` holds
only strings, integers and booleans, keeping reports deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property

from . import ternary as tn
from . import tri_ternary as tt
from .algebra import (
    Algebra,
    center,
    dual_extension,
    inner_automorphism,
    invert_element,
    is_automorphism,
    is_central,
    is_derivation,
    is_invertible_element,
    left_op,
    mul,
    right_op,
)
from .catalog import TrianEntry
from .errors import TrialityError
from .linalg import Matrix, RowSpace, unit_vector, vadd, vcombo, vsub, zero_vector
from .parallel import parallel_map
from .ternary import TernaryTriple
from .triangular import center_direct, center_pullback, embed

DEFAULT_SEED = 20240917
DEFAULT_TRIALS = 100


@dataclass
class Check:
    tag: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"tag": self.tag, "passed": self.passed, "detail": self.detail}


# random elements ------------------------------------------------------------

def random_element(a: Algebra, rng: random.Random, bound: int = 3) -> tuple:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(a.dim))


def random_invertible(a: Algebra, rng: random.Random, bound: int = 3) -> tuple:
    while True:
        x = random_element(a, rng, bound)
        if is_invertible_element(a, x):
            return x


def random_central(a: Algebra, rng: random.Random, basis=None, bound: int = 3) -> tuple:
    basis = center(a) if basis is None else basis
    return vcombo([rng.randint(-bound, bound) for _ in basis], basis, a.dim)


def random_central_invertible(a: Algebra, rng: random.Random, basis=None) -> tuple:
    basis = center(a) if basis is None else basis
    while True:
        z = random_central(a, rng, basis)
        if is_invertible_element(a, z):
            return z


def random_matrix(n: int, rng: random.Random, bound: int = 2) -> Matrix:
    return Matrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)], n)


# context ------------------------------------------------------------------

class Context:
    def __init__(self, algebra: Algebra, trian: TrianEntry | None, seed: int, trials: int):
        self.a = algebra
        self.trian = trian
        self.seed = seed
        self.trials = trials

    @property
    def t(self):
        return self.trian.algebra if self.trian else None

    @cached_property
    def der(self) -> list[Matrix]:
        return tn.derivation_space(self.a)

    @cached_property
    def terder(self) -> list[TernaryTriple]:
        return tn.terder_space(self.a)

    @cached_property
    def terder_span(self) -> RowSpace:
        return tn.terder_span(self.a, self.terder)

    @cached_property
    def center(self) -> list:
        return center(self.a)

    @cached_property
    def innder_dim(self) -> int:
        return self.a.dim - len(self.center)

    def rng(self, tag: str) -> random.Random:
        return random.Random(f"{self.seed}:{tag}")

    def warm(self):
        # fill caches before checks run in threads
        _ = self.der, self.terder, self.terder_span, self.center


# algebra-level checks -----------------------------------------------------

def check_dimension(ctx: Context, rng):
    n = ctx.a.dim
    ok = len(ctx.terder) == len(ctx.der) + 2 * n
    return ok, {"dim": n, "der": len(ctx.der), "terder": len(ctx.terder)}


def check_terder_roundtrip(ctx: Context, rng):
    a = ctx.a
    for t in ctx.terder:
        d, x, y = tn.decompose_terder(a, t)
        if tn.compose_terder(a, d, x, y) != t:
            return False, {"failed": "compose after decompose"}
    pairs = 0
    for d in ctx.der:
        x, y = random_element(a, rng), random_element(a, rng)
        if tuple(tn.decompose_terder(a, tn.compose_terder(a, d, x, y))) != (d, x, y):
            return False, {"failed": "decompose after compose"}
        pairs += 1
    return True, {"basis": len(ctx.terder), "recomposed": pairs}


def check_terauto_roundtrip(ctx: Context, rng):
    a = ctx.a
    n_inner = 0
    for _ in range(ctx.trials):
        x, y = random_invertible(a, rng), random_invertible(a, rng)
        if rng.random() < 0.5:
            sigma = Matrix.identity(a.dim)
        else:
            sigma = inner_automorphism(a, random_invertible(a, rng))
            n_inner += 1
        tri = tn.compose_terauto(a, sigma, x, y)
        if tuple(tn.decompose_terauto(a, tri)) != (sigma, x, y):
            return False, {"failed": "decomposition did not recover (sigma, x, y)"}
    return True, {"trials": ctx.trials, "inner_sigma": n_inner}


def check_inner_terauto(ctx: Context, rng):
    a = ctx.a
    for _ in range(10):
        w, x, y = (random_invertible(a, rng) for _ in range(3))
        tri = tn.make_inner_terauto(a, w, x, y)
        if not tn.is_terauto(a, tri):
            return False, {"failed": "not a ternary automorphism"}
        if tn.decompose_terauto(a, tri).sigma != inner_automorphism(a, w):
            return False, {"failed": "sigma is not In(w)"}
    return True, {"samples": 10}


def check_lie_closure(ctx: Context, rng):
    basis = ctx.terder
    span = ctx.terder_span
    count = 0
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if tn.lie_bracket(basis[i], basis[j]).flat() not in span:
                return False, {"failed_pair": f"{i},{j}"}
            count += 1
    return True, {"pairs": count}


def check_dual_numbers(ctx: Context, rng):
    a = ctx.a
    ext = dual_extension(a)
    n = a.dim
    rejected = 0
    for t in ctx.terder:
        if not tn.is_terauto(ext, tn.dual_lift_triple(a, t)):
            return False, {"failed": "lift of a ternary derivation is not a ternary automorphism"}
        pos = rng.randrange(3)
        while True:
            parts = list(t)
            parts[pos] = parts[pos] + random_matrix(n, rng)
            bad = TernaryTriple(*parts)
            if not tn.is_terder(a, bad):
                break
        if tn.is_terauto(ext, tn.dual_lift_triple(a, bad)):
            return False, {"failed": "lift of a perturbed triple passed"}
        rejected += 1
    return True, {"lifted": len(ctx.terder), "perturbed_rejected": rejected}


def check_zero_components(ctx: Context, rng):
    a = ctx.a
    n = a.dim
    second = tn.terders_with_zero_component(a, 2)
    third = tn.terders_with_zero_component(a, 3)
    if len(second) != n or len(third) != n:
        return False, {"zero_second": len(second), "zero_third": len(third)}
    for t in second:
        z = t.first @ a.unit
        if t != TernaryTriple(right_op(a, z), Matrix.zeros(n), right_op(a, z)):
            return False, {"failed": "zero second component not of the form (R_z, 0, R_z)"}
    for t in third:
        z = t.first @ a.unit
        if t != TernaryTriple(left_op(a, z), left_op(a, z), Matrix.zeros(n)):
            return False, {"failed": "zero third component not of the form (L_z, L_z, 0)"}
    return True, {"zero_second": n, "zero_third": n}


def check_shared_components(ctx: Context, rng):
    a = ctx.a
    for t in ctx.terder:
        b = random_element(a, rng)
        Rb, Lb = right_op(a, b), left_op(a, b)
        u = TernaryTriple(t.first - Rb, t.second, t.third - Rb)
        if not tn.is_terder(a, u) or tn.shared_component_witness(a, t, u, 2) is None:
            return False, {"failed": "shared second component"}
        w = tn.shared_component_witness(a, t, u, 2)
        if right_op(a, w) != Rb:
            return False, {"failed": "second-component witness"}
        v = TernaryTriple(t.first - Lb, t.second - Lb, t.third)
        w = tn.shared_component_witness(a, t, v, 3)
        if not tn.is_terder(a, v) or w is None or left_op(a, w) != Lb:
            return False, {"failed": "shared third component"}
    return True, {"basis": len(ctx.terder)}


def check_generalized_leibniz(ctx: Context, rng):
    a = ctx.a
    for t in ctx.terder:
        if not all(tn.satisfies_generalized_leibniz(a, m) for m in t):
            return False, {"failed": "component violates the generalized Leibniz rule"}
    return True, {"components": 3 * len(ctx.terder)}


def check_component_extension(ctx: Context, rng):
    a = ctx.a
    for t in ctx.terder:
        for pos in (1, 2, 3):
            out = tn.extend_component(a, t[pos - 1], pos, random_element(a, rng))
            if out[pos - 1] != t[pos - 1] or not tn.is_terder(a, out):
                return False, {"failed_position": pos}
    return True, {"extended": 3 * len(ctx.terder)}


def check_inner_terder(ctx: Context, rng):
    a = ctx.a
    n = a.dim
    inner = 0
    for t in ctx.terder:
        if tn.is_inner_terder(a, t) is not None:
            inner += 1
    z = zero_vector(n)
    gens = []
    for i in range(n):
        e = unit_vector(n, i)
        gens += [tn.inner_terder(a, e, z, z), tn.inner_terder(a, z, e, z), tn.inner_terder(a, z, z, e)]
    span = RowSpace([g.flat() for g in gens], 3 * n * n)
    expected = ctx.innder_dim + 2 * n
    ok = span.dim == expected and all(g.flat() in ctx.terder_span for g in gens)
    return ok, {"inner_basis_elements": inner, "inner_span_dim": span.dim, "expected": expected}


def _derivation_tuple(a, rng, zbasis):
    ea, eb, ed = (random_element(a, rng) for _ in range(3))
    z1 = random_central(a, rng, zbasis)
    z3 = random_central(a, rng, zbasis)
    z2 = vsub(z1, z3)
    return [ea, eb, vsub(ea, z1), ed, vadd(ed, z3), vsub(eb, z2)]


def _automorphism_tuple(a, rng, zbasis):
    ec, ed, ef = (random_invertible(a, rng) for _ in range(3))
    z1 = random_central_invertible(a, rng, zbasis)
    z3 = random_central_invertible(a, rng, zbasis)
    z2 = mul(a, invert_element(a, z1), z3)
    return [mul(a, ec, z1), mul(a, z2, ef), ec, ed, mul(a, invert_element(a, ed), z3), ef]


def tab_trials(a: Algebra, rng: random.Random, trials: int, variant: str):
    """Sample tuples mixing condition-satisfying, perturbed and random ones.

    Returns ``(agreements, condition_true, condition_false)``.
    """
    zbasis = center(a)
    agree = hit = miss = 0
    for _ in range(trials):
        mode = rng.randrange(3)
        if variant == "derivation":
            elems = _derivation_tuple(a, rng, zbasis)
            if mode == 1:
                k = rng.randrange(6)
                elems[k] = vadd(elems[k], random_element(a, rng))
            elif mode == 2:
                elems = [random_element(a, rng) for _ in range(6)]
        else:
            elems = _automorphism_tuple(a, rng, zbasis)
            if mode == 1:
                k = rng.randrange(6)
                elems[k] = mul(a, elems[k], random_invertible(a, rng))
            elif mode == 2:
                elems = [random_invertible(a, rng) for _ in range(6)]
        cond, member = tn.check_tab_family(a, elems, variant)
        agree += cond == member
        hit += cond
        miss += not cond
    return agree, hit, miss


def check_tab_family(ctx: Context, rng):
    detail = {}
    ok = True
    for variant in ("derivation", "automorphism"):
        agree, hit, miss = tab_trials(ctx.a, rng, ctx.trials, variant)
        ok = ok and agree == ctx.trials
        detail[variant] = {"trials": ctx.trials, "agree": agree, "condition_true": hit,
                           "condition_false": miss}
    return ok, detail


ALGEBRA_CHECKS = [
    ("Cor3.2-dimension", check_dimension),
    ("Cor3.2-roundtrip", check_terder_roundtrip),
    ("Thm3.1-roundtrip", check_terauto_roundtrip),
    ("Inner-terauto", check_inner_terauto),
    ("Lie-closure", check_lie_closure),
    ("Dual-number-correspondence", check_dual_numbers),
    ("Zero-components", check_zero_components),
    ("Shared-components", check_shared_components),
    ("Lemma4.8", check_generalized_leibniz),
    ("Lemma4.9-extension", check_component_extension),
    ("Thm4.4-inner", check_inner_terder),
    ("Prop4.5-equivalence", check_tab_family),
]


# triangular checks --------------------------------------------------------

def check_td_roundtrip(ctx: Context, rng):
    t = ctx.t
    for tri in ctx.terder:
        comps = tt.extract_td(t, tri)
        if tt.assemble_td(t, comps) != tri:
            return False, {"failed": "assemble after extract"}
        if tt.extract_td(t, tt.assemble_td(t, comps)) != comps:
            return False, {"failed": "extract after assemble"}
    return True, {"basis": len(ctx.terder)}


def check_td_conditions(ctx: Context, rng):
    t = ctx.t
    nm = t.M.dim
    for tri in ctx.terder:
        comps = tt.extract_td(t, tri)
        if not all(tt.check_td_conditions(t, comps)):
            return False, {"failed": "conditions on a ternary derivation"}
        while True:
            e = random_matrix(nm, rng)
            if not e.is_zero():
                break
        bad = tt.check_td_conditions(t, replace(comps, tau1=comps.tau1 + e))
        if bad.iii and bad.iv:
            return False, {"failed": "perturbed tau1 kept the M-conditions"}
    return True, {"basis": len(ctx.terder)}


def check_td_repair(ctx: Context, rng):
    t = ctx.t
    if not all(t.faithful()):
        return True, {"skipped": "bimodule not faithful"}
    keep = ("delta2", "mu3", "tau1", "tau2", "tau3", "n1", "n1p", "n2")
    for tri in ctx.terder:
        comps = tt.extract_td(t, tri)
        fixed = tt.extract_td(t, tt.repair_td(t, comps))
        if any(getattr(fixed, k) != getattr(comps, k) for k in keep):
            return False, {"failed": "repair changed a kept component"}
    return True, {"basis": len(ctx.terder)}


def check_counterexample(ctx: Context, rng):
    t = ctx.t
    if t.A != t.B or t.M.dim != t.A.dim or not all(t.faithful()):
        return True, {"skipped": "needs a faithful Trian(A, A, A)"}
    ders = tn.derivation_space(t.A)
    if not ders:
        return True, {"skipped": "A has no nonzero derivation"}
    d = ders[0]
    tri = tt.counterexample_triple(t, d)
    comps = tt.extract_td(t, tri, check=False)
    conds = tt.check_td_conditions(t, comps)
    fixed = tt.repair_td(t, comps)
    D = Matrix.block_diag(d, d, d)
    ok = tuple(conds) == (False, False, True, True) and fixed == TernaryTriple(D, D, D)
    return ok, {"conditions": [bool(c) for c in conds], "repaired_is_diagonal": fixed == TernaryTriple(D, D, D)}


def check_inner_agreement(ctx: Context, rng):
    t = ctx.t
    if not all(t.faithful()):
        return True, {"skipped": "bimodule not faithful"}
    inner = outer = 0
    for tri in ctx.terder:
        w1 = tt.is_inner_terder_triangular(t, tri)
        w2 = tn.is_inner_terder(t.algebra, tri)
        if (w1 is None) != (w2 is None):
            return False, {"failed": "routes disagree"}
        if w1 is not None:
            a1, b1 = w1
            tau = t.M.act_left(a1) + t.M.act_right(b1)
            if tau != tt.extract_td(t, tri).tau1:
                return False, {"failed": "witness does not reproduce tau1"}
        inner += w1 is not None
        outer += w1 is None
    return True, {"inner": inner, "outer": outer}


def check_terder_m_preserved(ctx: Context, rng):
    t = ctx.t
    ok = all(tt.maps_m_into_m(t, m) for tri in ctx.terder for m in tri)
    return ok, {"components": 3 * len(ctx.terder)}


def _probe_sigmas(ctx: Context, rng):
    t = ctx.t
    alg = t.algebra
    sigmas = [("identity", Matrix.identity(alg.dim))]
    for k in range(t.M.dim):
        sigmas.append((f"In(1,m{k},1)", tt.inner_element_automorphism(t, unit_vector(t.M.dim, k))))
    sigmas.append(("In(random)", inner_automorphism(alg, random_invertible(alg, rng))))
    u = random_invertible(t.A, rng)
    sigmas.append(("diag(In(u), L_u, Id)", tt.build_aut0(t, t.M.act_left(u), inner_automorphism(t.A, u),
                                                        Matrix.identity(t.B.dim))))
    for p in ctx.trian.probes:
        if is_automorphism(alg, p.sigma):
            sigmas.append((p.name, p.sigma))
    return sigmas


def check_terauto_blocks(ctx: Context, rng):
    t = ctx.t
    alg = t.algebra
    agree = preserving = 0
    sigmas = _probe_sigmas(ctx, rng)
    for name, sigma in sigmas:
        x, y = random_invertible(alg, rng), random_invertible(alg, rng)
        tri = tn.compose_terauto(alg, sigma, x, y)
        s_ok, c_ok = tt.terauto_block_criterion(t, tri, sigma)
        if s_ok != c_ok:
            return False, {"failed": name}
        agree += 1
        preserving += s_ok
    return True, {"samples": agree, "block_preserving": preserving}


def check_center(ctx: Context, rng):
    t = ctx.t
    n = t.dim
    pb = RowSpace(center_pullback(t), n)
    direct = RowSpace(center_direct(t), n)
    return pb == direct, {"pullback_dim": pb.dim, "center_dim": direct.dim}


def check_der_m_preserved(ctx: Context, rng):
    t = ctx.t
    ok = all(tt.maps_m_into_m(t, d) for d in ctx.der)
    return ok, {"derivations": len(ctx.der)}


def check_split(ctx: Context, rng):
    t = ctx.t
    for d in ctx.der:
        inner, d0 = tt.split_derivation(t, d)
        if inner + d0 != d or any(d0 @ t.p) or any(d0 @ t.q):
            return False, {"failed": "split"}
        if not is_derivation(t.algebra, d0):
            return False, {"failed": "d0 is not a derivation"}
    for tri in ctx.terder:
        tt.split_terder(t, tri)
    return True, {"derivations": len(ctx.der), "terders": len(ctx.terder)}


def check_factor_inner(ctx: Context, rng):
    t = ctx.t
    eye = Matrix.identity(t.dim)
    conj, tau = tt.factor_automorphism(t, eye)
    if conj != t.algebra.unit or tau != eye:
        return False, {"failed": "identity"}
    for k in range(t.M.dim):
        m = unit_vector(t.M.dim, k)
        conj, tau = tt.factor_automorphism(t, tt.inner_element_automorphism(t, m))
        if tau != eye or conj != embed(t, t.A.unit, m, t.B.unit):
            return False, {"failed": f"In(1, m{k}, 1)"}
    return True, {"inner_samples": t.M.dim}


def check_outder(ctx: Context, rng):
    t = ctx.t
    n2 = t.dim * t.dim
    d0 = tt.der0_space(t)
    i0 = tt.innder0_space(t)
    s0 = RowSpace([m.entries() for m in d0], n2)
    if not all(m.entries() in s0 for m in i0):
        return False, {"failed": "Innder0 not inside Der0"}
    for i in range(len(d0)):
        for j in range(i + 1, len(d0)):
            if tn.bracket(d0[i], d0[j]).entries() not in s0:
                return False, {"failed": "Der0 not closed under brackets"}
    lhs = len(d0) - len(i0)
    rhs = len(ctx.der) - ctx.innder_dim
    return lhs == rhs, {"der0": len(d0), "innder0": len(i0), "der": len(ctx.der),
                        "innder": ctx.innder_dim}


def check_innder0_dim(ctx: Context, rng):
    t = ctx.t
    got = len(tt.innder0_space(t))
    expected = t.A.dim + t.B.dim - len(center_direct(t))
    return got == expected, {"innder0": got, "expected": expected}


def check_der0_pullback(ctx: Context, rng):
    t = ctx.t
    n2 = t.dim * t.dim
    a = RowSpace([m.entries() for m in tt.der0_space(t)], n2)
    b = RowSpace([m.entries() for m in tt.der0_pullback_space(t)], n2)
    return a == b, {"der0": a.dim, "pullback": b.dim}


def check_aut0(ctx: Context, rng):
    t = ctx.t
    A, B, M = t.A, t.B, t.M
    ida, idb, idm = Matrix.identity(A.dim), Matrix.identity(B.dim), Matrix.identity(M.dim)
    if tt.build_aut0(t, idm, ida, idb) != Matrix.identity(t.dim):
        return False, {"failed": "identity"}
    if not tt.aut0_pullback_check(t, idm * 2, ida, idb):
        return False, {"failed": "scaling"}
    faithful = all(t.faithful())
    samples = 0
    for _ in range(5):
        u = random_invertible(A, rng)
        Lu = M.act_left(u)
        if not tt.aut0_pullback_check(t, Lu, inner_automorphism(A, u), idb):
            return False, {"failed": "(L_u, In(u), Id)"}
        tt.build_aut0(t, Lu, inner_automorphism(A, u), idb)
        plain = tt.aut0_pullback_check(t, Lu, ida, idb)
        if faithful and plain != is_central(A, u):
            return False, {"failed": "(L_u, Id, Id) against centrality of u"}
        samples += 1
    return True, {"samples": samples}


def _factor_probe(probe):
    def run(ctx: Context, rng):
        try:
            tt.factor_automorphism(ctx.t, probe.sigma)
            outcome = "ok"
        except TrialityError as exc:
            outcome = type(exc).__name__
        return outcome == probe.expect, {"outcome": outcome, "expected": probe.expect}
    return run


TRIAN_CHECKS = [
    ("Thm4.1-roundtrip", check_td_roundtrip),
    ("Thm4.1-conditions", check_td_conditions),
    ("Thm4.10-repair", check_td_repair),
    ("Example4.2-counterexample", check_counterexample),
    ("Thm4.7-vs-Thm4.4", check_inner_agreement),
    ("Cor3.4-M-preserved", check_terder_m_preserved),
    ("Thm3.3-block-criterion", check_terauto_blocks),
    ("Center-pullback", check_center),
    ("Cor5.2-M-preserved", check_der_m_preserved),
    ("Prop5.1-split", check_split),
    ("Prop5.1-factor-inner", check_factor_inner),
    ("Cor5.3-outer-dimension", check_outder),
    ("Innder0-dimension", check_innder0_dim),
    ("Cor5.6-der0-pullback", check_der0_pullback),
    ("Thm5.5-aut0", check_aut0),
]


def _run_one(ctx: Context, tag: str, fn) -> Check:
    try:
        passed, detail = fn(ctx, ctx.rng(tag))
    except TrialityError as exc:
        return Check(tag, False, {"error": type(exc).__name__, "message": str(exc)})
    return Check(tag, bool(passed), detail)


def run_suite(algebra: Algebra | None = None, trian: TrianEntry | None = None,
              seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> list[Check]:
    if trian is not None:
        algebra = trian.algebra.algebra
    if algebra is None:
        raise ValueError("an algebra or a triangular algebra is required")
    ctx = Context(algebra, trian, seed, trials)
    ctx.warm()
    jobs = list(ALGEBRA_CHECKS)
    if trian is not None:
        jobs += TRIAN_CHECKS
        jobs += [(f"factor({p.name})", _factor_probe(p)) for p in trian.probes]
    return parallel_map(lambda job: _run_one(ctx, *job), jobs)
