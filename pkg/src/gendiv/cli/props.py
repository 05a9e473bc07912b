"""Seeded property suites over the bundled curves.

Random divisors are drawn as *recipes*: lists of expression atoms such as
``P(3)``, ``-S(0)`` or ``W(0,[1,2])``.  A failing recipe is shrunk by
dropping atoms while the property still fails, and the shortest failing
expression is reported.
"""
from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass, field

from gendiv import divisors as dv
from gendiv.cli.curvefile import bundled_curves
from gendiv.cli.expr import evaluate, parse_divexpr
from gendiv.dualizing import dualizing_sheaf, is_gorenstein, serre_dual
from gendiv.sheafcoh import check_chi, h0, h1, pushforward_line_bundle, structure_sheaf

DEFAULT_SEED = 20240601
SUITES = ("monoid", "reflexivity", "riemann-roch", "duality", "general-position")


def default_seed() -> int:
    env = os.environ.get("GENDIV_SEED")
    if env is not None and env.strip():
        return int(env)
    return DEFAULT_SEED


@dataclass
class Violation:
    curve: str
    prop: str
    witness: str
    detail: str = ""

    def as_dict(self):
        return {"curve": self.curve, "property": self.prop, "witness": self.witness, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    checks: int = 0
    violations: list = field(default_factory=list)
    expected_failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self):
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "checks": self.checks,
            "violations": [v.as_dict() for v in self.violations],
            "expected_failures": [v.as_dict() for v in self.expected_failures],
            "notes": list(self.notes),
        }


# -- recipes ----------------------------------------------------------------------


def _smooth_pool(c):
    return [a for a in range(-6, 7) if not c.is_branch(a)]


def ev(c, atoms):
    if not atoms:
        return dv.zero_divisor(c)
    return evaluate(parse_divexpr("+".join(atoms)), c)


def random_recipe(c, rng, lo=-2, hi=6, singular=True):
    """Atoms of a generalized divisor with degree drawn from ``lo..hi``."""
    target = rng.randint(lo, hi)
    atoms = []
    if singular and c.clusters:
        for _ in range(rng.randint(0, 2)):
            i = rng.randrange(len(c.clusters))
            atoms.append(("-" if rng.random() < 0.4 else "") + "S(%d)" % i)
    d = dv.degree(ev(c, atoms))
    pool = _smooth_pool(c)
    while d != target:
        # INF, a smooth point, or a negated one, moving the degree by one
        p = "INF" if rng.random() < 0.15 else "P(%d)" % rng.choice(pool)
        atoms.append(p if d < target else "-" + p)
        d += 1 if d < target else -1
    rng.shuffle(atoms)
    return atoms


def random_effective_recipe(c, rng, d, singular=False):
    atoms = []
    if singular and c.clusters and d > 0:
        for i in range(len(c.clusters)):
            if rng.random() < 0.5 and len(atoms) < d:
                atoms.append("S(%d)" % i)
    pool = _smooth_pool(c)
    while len(atoms) < d:
        atoms.append("INF" if rng.random() < 0.1 else "P(%d)" % rng.choice(pool))
    return atoms


def omega_atom(c, rng):
    from gendiv.divisors import omega_fiber_basis

    choices = ["Kw", "wdiv(P(%d))" % rng.choice(_smooth_pool(c))]
    if c.clusters:
        i = rng.randrange(len(c.clusters))
        n = len(omega_fiber_basis(c, i))
        cov = [rng.randint(-2, 2) for _ in range(n)]
        if not any(cov):
            cov[rng.randrange(n)] = 1
        choices += ["W(%d)" % i, "W(%d,[%s])" % (i, ",".join(str(x) for x in cov)), "n(S(%d))" % i]
    choices.append("n(-P(%d))" % rng.choice(_smooth_pool(c)))
    return rng.choice(choices)


def random_omega_recipe(c, rng, lo=-2, hi=6):
    atoms = random_recipe(c, rng, lo, hi)
    return atoms + [omega_atom(c, rng)]


def shrink(atoms, fails, keep_last=False):
    """Greedy one-atom deletion while ``fails(atoms)`` stays true."""
    cur = list(atoms)
    changed = True
    while changed:
        changed = False
        span = len(cur) - 1 if keep_last else len(cur)
        for i in range(span):
            cand = cur[:i] + cur[i + 1 :]
            try:
                bad = fails(cand)
            except Exception:
                bad = False
            if bad:
                cur = cand
                changed = True
                break
    return cur


def _expr(atoms):
    return "+".join(atoms) if atoms else "0"


def _check(rep, name, cname, prop, atoms, fails, keep_last=False, expected=False):
    rep.checks += 1
    try:
        bad = fails(atoms)
    except Exception as exc:  # an exception is a violation too
        v = Violation(cname, prop, _expr(atoms), "%s: %s" % (type(exc).__name__, exc))
        (rep.expected_failures if expected else rep.violations).append(v)
        return
    if bad:
        small = shrink(atoms, fails, keep_last)
        v = Violation(cname, prop, _expr(small))
        (rep.expected_failures if expected else rep.violations).append(v)


# -- suites --------------------------------------------------------------------------


def _curves(curves):
    return curves if curves is not None else bundled_curves()


def suite_monoid(trials, seed, curves=None):
    rep = SuiteReport("monoid", seed, trials)
    for cname, c in _curves(curves).items():
        rng = random.Random("%s/%s/monoid" % (seed, cname))
        zero = dv.zero_divisor(c)
        gor = is_gorenstein(c)
        for _ in range(trials):
            A, B, C = (random_recipe(c, rng, -1, 3) for _ in range(3))
            # associativity with the atom lists split into three summands
            def assoc(_, A=A, B=B, C=C):
                a, b, cc = ev(c, A), ev(c, B), ev(c, C)
                return dv.dsum(dv.dsum(a, b), cc) != dv.dsum(a, dv.dsum(b, cc))

            _check(rep, "monoid", cname, "associativity", A, assoc)
            _check(rep, "monoid", cname, "commutativity", A + B,
                   lambda at, n=len(A): dv.dsum(ev(c, at[:n]), ev(c, at[n:])) != dv.dsum(ev(c, at[n:]), ev(c, at[:n])))
            _check(rep, "monoid", cname, "identity", A, lambda at: dv.dsum(ev(c, at), zero) != ev(c, at))
            a, b = ev(c, A), ev(c, B)
            if dv.is_cartier(a):
                _check(rep, "monoid", cname, "D + (-D) = 0 (Cartier D)", A,
                       lambda at: dv.is_cartier(ev(c, at)) and dv.dsum(ev(c, at), dv.dminus(ev(c, at))) != zero)
            if dv.is_cartier(b):
                def madd(at, B=B):
                    x, y = ev(c, at), ev(c, B)
                    return dv.dminus(dv.dsum(x, y)) != dv.dsum(dv.dminus(x), dv.dminus(y))

                _check(rep, "monoid", cname, "-(D+E) = -D + -E (Cartier E)", A, madd)

                def degadd(at, B=B):
                    x, y = ev(c, at), ev(c, B)
                    return dv.degree(dv.dsum(x, y)) != dv.degree(x) + dv.degree(y)

                _check(rep, "monoid", cname, "deg(D+E) = deg D + deg E (Cartier E)", A, degadd)
            if gor:
                _check(rep, "monoid", cname, "-(-D) = D (Gorenstein)", A, lambda at: dv.dminus(dv.dminus(ev(c, at))) != ev(c, at))
            W = random_omega_recipe(c, rng, -1, 3)
            _check(rep, "monoid", cname, "n(n(D_w)) = D_w", W,
                   lambda at: dv.negation(dv.negation(ev(c, at))) != ev(c, at), keep_last=True)
            _check(rep, "monoid", cname, "n(n(D)) = D", A, lambda at: dv.negation(dv.negation(ev(c, at))) != ev(c, at))
    return rep


def suite_reflexivity(trials, seed, curves=None):
    rep = SuiteReport("reflexivity", seed, trials)
    for cname, c in _curves(curves).items():
        rng = random.Random("%s/%s/reflexivity" % (seed, cname))
        gor = is_gorenstein(c)
        for _ in range(trials):
            A = random_recipe(c, rng)
            _check(rep, "reflexivity", cname, "-(-D) = D", A,
                   lambda at: dv.dminus(dv.dminus(ev(c, at))) != ev(c, at), expected=not gor)
            _check(rep, "reflexivity", cname, "n(n(D)) = D", A, lambda at: dv.negation(dv.negation(ev(c, at))) != ev(c, at))
            W = random_omega_recipe(c, rng)
            _check(rep, "reflexivity", cname, "n(n(D_w)) = D_w", W,
                   lambda at: dv.negation(dv.negation(ev(c, at))) != ev(c, at), keep_last=True)
        if not gor:
            # the dualizing sheaf itself is the standard non-reflexive example
            w = dv.omega_zero(c)
            as_div = dv.GDivisor(w.ideal)
            rep.checks += 1
            if dv.dminus(dv.dminus(as_div)) != as_div:
                rep.expected_failures.append(Violation(cname, "-(-D) = D", "omega (as a generalized divisor)"))
        if not gor and not any(v.curve == cname for v in rep.expected_failures):
            rep.notes.append("%s: non-Gorenstein but no non-reflexive sample was found" % cname)
    return rep


def suite_riemann_roch(trials, seed, curves=None):
    rep = SuiteReport("riemann-roch", seed, trials)
    for cname, c in _curves(curves).items():
        rng = random.Random("%s/%s/rr" % (seed, cname))
        gor = is_gorenstein(c)
        for _ in range(trials):
            if gor:
                A = random_recipe(c, rng)
                _check(rep, "riemann-roch", cname, "Riemann-Roch", A, lambda at: not dv.riemann_roch_check(ev(c, at)).passed)
            W = random_omega_recipe(c, rng)
            _check(rep, "riemann-roch", cname, "omega Riemann-Roch", W,
                   lambda at: not dv.riemann_roch_check(ev(c, at)).passed, keep_last=True)
        if not gor:
            rep.notes.append("%s: not Gorenstein, generalized form skipped" % cname)
    return rep


def suite_duality(trials, seed, curves=None):
    rep = SuiteReport("duality", seed, trials)
    for cname, c in _curves(curves).items():
        rng = random.Random("%s/%s/duality" % (seed, cname))
        g = c.genus
        w = dualizing_sheaf(c)
        from gendiv.sheafcoh import degree as sdeg

        for prop, ok in (
            ("deg omega = 2g-2", sdeg(w) == 2 * g - 2),
            ("h0(omega) = g", h0(w) == g),
            ("h1(omega) = 1", h1(w) == 1),
            ("h1(O) = g", h1(structure_sheaf(c)) == g),
            ("g = 1 - chi(O)", 1 - (h0(structure_sheaf(c)) - h1(structure_sheaf(c))) == g),
        ):
            rep.checks += 1
            if not ok:
                rep.violations.append(Violation(cname, prop, "-"))
        for _ in range(trials):
            A = random_recipe(c, rng, -3, 5)
            kind = rng.random()

            def sheaf_of(at, kind=kind):
                D = ev(c, at)
                return D.ideal if kind < 0.5 else dv.associated_sheaf(D)

            _check(rep, "duality", cname, "Serre duality", A,
                   lambda at: not _serre(sheaf_of(at)))
            _check(rep, "duality", cname, "chi consistency", A, lambda at: not check_chi(sheaf_of(at)))
        for n in range(-2, 3):
            rep.checks += 1
            s = pushforward_line_bundle(c, n)
            if not _serre(s) or not check_chi(s):
                rep.violations.append(Violation(cname, "Serre duality", "nu(%d)" % n))
    return rep


def _serre(s):
    d = serre_dual(s)
    return h0(d) == h1(s) and h1(d) == h0(s)


def suite_general_position(trials, seed, curves=None):
    rep = SuiteReport("general-position", seed, trials)
    for cname, c in _curves(curves).items():
        rng = random.Random("%s/%s/gp" % (seed, cname))
        g = c.genus
        gor = is_gorenstein(c)
        if gor:
            for d in range(max(2 * g - 1, 0), 2 * g + 2):
                for _ in range(trials):
                    A = random_effective_recipe(c, rng, d, singular=True)
                    _check(rep, "general-position", cname, "dim|D| = d-g at d=%d" % d, A,
                           lambda at, d=d: len(at) == d and dv.dim_linear_system(ev(c, at)) != d - g)
        else:
            rep.notes.append("%s: not Gorenstein, generalized corollary does not apply" % cname)
            if c.clusters:
                a, b = rng.sample(_smooth_pool(c), 2)
                cex = ["S(0)", "P(%d)" % a, "P(%d)" % b]
                D = ev(c, cex)
                d = dv.degree(D)
                n = dv.dim_linear_system(D)
                rep.checks += 1
                if d == 2 * g - 1 and n > d - g:
                    rep.expected_failures.append(
                        Violation(cname, "dim|D| = d-g", _expr(cex), "dim %d > %d (counterexample exhibited)" % (n, d - g))
                    )
                else:
                    rep.notes.append("%s: counterexample %s not exhibited (dim %d, deg %d)" % (cname, _expr(cex), n, d))
        for d in range(2 * g - 1 if g else 0, 2 * g + 2):
            if d < 0:
                continue
            for _ in range(max(1, trials // 2)):
                D = dv.random_effective_omega_divisor(c, d, rng)
                rep.checks += 1
                n = dv.dim_linear_system(D)
                if d > 2 * g - 2 and n != d - g:
                    rep.violations.append(Violation(cname, "omega dim|D_w| = d-g at d=%d" % d, str(D.ideal), "dim %d" % n))
    return rep


RUNNERS = {
    "monoid": suite_monoid,
    "reflexivity": suite_reflexivity,
    "riemann-roch": suite_riemann_roch,
    "duality": suite_duality,
    "general-position": suite_general_position,
}


def run_suite(name, trials, seed=None, curves=None) -> SuiteReport:
    if name not in RUNNERS:
        raise KeyError("unknown suite %r (choose from %s)" % (name, ", ".join(SUITES)))
    if trials <= 0:
        raise ValueError("trials must be positive")
    seed = default_seed() if seed is None else seed
    t0 = time.perf_counter()
    rep = RUNNERS[name](trials, seed, curves)
    rep.seconds = time.perf_counter() - t0
    return rep
