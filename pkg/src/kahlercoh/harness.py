"""Scenario-level verification of the coherent-state identities.

Every scenario returns a :class:`ScenarioReport`.  ``passed`` is decided by
comparing one gated error (absolute or relative, per scenario) with the
scenario tolerance.  Boolean checks enter as 0/1 errors.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import bundles, coherent, divisors, multipoint, projective
from .bundles import INF, BundleModel, is_inf
from .coherent import OrthonormalBasis, build_onb, coherent_embedding, coherent_kernel, coherent_vector, inner
from .errors import ConfigError, DegenerateTriangleError, FrameVanishingError, InvalidParameterError
from .projective import QuadratureSpec

PROBE_RADIUS = 3.0


@dataclass
class ScenarioReport:
    scenario: str
    cases: int
    max_abs_err: float
    max_rel_err: float
    tolerance: float
    passed: bool
    details: list = field(default_factory=list)
    seed: int | None = None
    metric: str = "abs"
    notes: dict = field(default_factory=dict)
    runtime_s: float = 0.0

    @classmethod
    def build(cls, scenario, details, tolerance, *, metric="abs", seed=None, notes=None):
        abs_errs = [d["abs_err"] for d in details if not d.get("skipped")]
        rel_errs = [d.get("rel_err", d["abs_err"]) for d in details if not d.get("skipped")]
        max_abs = float(max(abs_errs, default=0.0))
        max_rel = float(max(rel_errs, default=0.0))
        gated = max_abs if metric == "abs" else max_rel
        return cls(
            scenario=scenario,
            cases=len(abs_errs),
            max_abs_err=max_abs,
            max_rel_err=max_rel,
            tolerance=float(tolerance),
            passed=bool(abs_errs) and gated <= tolerance,
            details=details,
            seed=seed,
            metric=metric,
            notes=notes or {},
        )

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioReport":
        return cls(**data)

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        err = self.max_abs_err if self.metric == "abs" else self.max_rel_err
        return f"[{status}] {self.scenario}: {self.metric} err {err:.3e} <= tol {self.tolerance:.1e} over {self.cases} cases"


def cjson(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def point_json(x):
    if is_inf(x):
        return "inf"
    x = np.asarray(x, dtype=complex)
    if x.ndim == 0:
        return cjson(x)
    return [cjson(v) for v in x]


def random_chart_points(rng: np.random.Generator, count: int, n: int = 1, radius: float = PROBE_RADIUS,
                        min_radius: float = 0.0):
    """Points drawn uniformly from the disk (annulus) of the given radius, per coordinate."""
    r = np.sqrt(rng.uniform(min_radius**2, radius**2, size=(count, n)))
    z = r * np.exp(2j * np.pi * rng.uniform(size=(count, n)))
    return [complex(p[0]) for p in z] if n == 1 else [p for p in z]


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        report = fn(*args, **kwargs)
        report.runtime_s = time.perf_counter() - t0
        return report

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------- kernels and epsilon


@_timed
def kernel_law(powers=(1, 2, 3), count=20, seed=0, tolerance=1e-6, spec=None) -> ScenarioReport:
    """K(w', w) / K(0, 0) against (1 + conj(w) w')^m on quadrature-built bases."""
    rng = np.random.default_rng(seed)
    details, prefactors = [], {}
    for m in powers:
        basis = build_onb(BundleModel.p1(m), spec)
        k00 = coherent_kernel(basis, 0, 0)
        prefactors[str(m)] = {
            "measured": k00.real,
            "candidate_(m+1)/2pi": (m + 1) / (2 * math.pi),
            "candidate_(m+1)/(2pi m)": (m + 1) / (2 * math.pi * m),
        }
        for wp, w in zip(random_chart_points(rng, count), random_chart_points(rng, count)):
            got = coherent_kernel(basis, wp, w) / k00
            want = (1 + np.conj(w) * wp) ** m
            details.append({"m": m, "w_prime": cjson(wp), "w": cjson(w), "ratio": cjson(got),
                            "expected": cjson(want), "abs_err": abs(got - want), "rel_err": _rel(got, want)})
    return ScenarioReport.build("kernel_law", details, tolerance, metric="rel", seed=seed,
                                notes={"prefactor_K00": prefactors})


@_timed
def epsilon_constancy(powers=(1, 2, 3, 4, 5), count=100, seed=0, tolerance=1e-6, spec=None) -> ScenarioReport:
    """Relative standard deviation of the Epsilon function over random points."""
    rng = np.random.default_rng(seed)
    details = []
    for m in powers:
        basis = build_onb(BundleModel.p1(m), spec)
        eps = np.array([coherent.epsilon_function(basis, x) for x in random_chart_points(rng, count)])
        rsd = float(np.std(eps) / np.mean(eps))
        details.append({"m": m, "mean": float(np.mean(eps)), "dim_over_vol": (m + 1) / basis.model.volume(),
                        "abs_err": rsd, "rel_err": rsd})
    return ScenarioReport.build("epsilon_constancy", details, tolerance, metric="rel", seed=seed)


@_timed
def epsilon_value(m=1, points=(0, 1, 1j), tolerance=1e-7, spec=None) -> ScenarioReport:
    """Epsilon against dim / vol with vol from quadrature of the volume form."""
    model = BundleModel.p1(m)
    basis = build_onb(model, spec)
    vol = bundles.integrate(model, lambda z: np.ones_like(z, dtype=float), spec).real
    want = (m + 1) / vol
    details = []
    for x in points:
        got = coherent.epsilon_function(basis, x)
        details.append({"m": m, "x": cjson(x), "epsilon": got, "expected": want,
                        "abs_err": abs(got - want), "rel_err": _rel(got, want)})
    return ScenarioReport.build("epsilon_value", details, tolerance, notes={"volume": vol})


@_timed
def overcompleteness(powers=(1, 2, 3, 4), tolerance=1e-6, spec=None) -> ScenarioReport:
    details = []
    for m in powers:
        basis = build_onb(BundleModel.p1(m), spec)
        r = coherent.overcompleteness_residual(basis, spec)
        details.append({"m": m, "abs_err": r, "rel_err": r})
    return ScenarioReport.build("overcompleteness", details, tolerance)


# ---------------------------------------------------------------- Cauchy formulas


def _section_space_gram(basis: OrthonormalBasis, vecs, spec):
    """<e_a, e_b>_L computed from the sections themselves, not their coefficients."""
    E = basis.coeffs @ np.array([v.coeffs for v in vecs]).T  # monomial coefficients, one column per vector
    if basis.model.family == "P1":
        def integrand(z):
            vals = coherent.monomial_values(basis.exponents, z, 1) @ E
            h = basis.model.metric_hat(z)
            return h[..., None, None] * np.conj(vals)[..., :, None] * vals[..., None, :]

        return bundles.integrate(basis.model, integrand, spec)
    gram = coherent.closed_form_gram(basis.model, basis.exponents)
    return E.conj().T @ gram @ E


def random_lift_pairs(rng, count, n=1):
    xs = random_chart_points(rng, count, n)
    ys = random_chart_points(rng, count, n)
    cs = rng.normal(size=count) + 1j * rng.normal(size=count)
    ds = rng.normal(size=count) + 1j * rng.normal(size=count)
    return [((x, c), (y, d)) for x, y, c, d in zip(xs, ys, cs, ds)]


@_timed
def verify_cauchy_first(basis: OrthonormalBasis, probes, tolerance=1e-10, spec=None, seed=None) -> ScenarioReport:
    """<e_q, e_q'>_L = <phi(q'), phi(q)>_{C^{N+1}} for lifts q = c s(x)."""
    vecs = []
    for (x, c), (y, d) in probes:
        vecs += [coherent_vector(basis, x, None, c), coherent_vector(basis, y, None, d)]
    gram = _section_space_gram(basis, vecs, spec)
    details = []
    for k, ((x, c), (y, d)) in enumerate(probes):
        eq, eqp = vecs[2 * k], vecs[2 * k + 1]
        lhs = gram[2 * k, 2 * k + 1]
        rhs = complex(np.vdot(eqp.qhat, eq.qhat))
        details.append({"x": point_json(x), "y": point_json(y), "lift_x": cjson(c), "lift_y": cjson(d),
                        "lhs": cjson(lhs), "rhs": cjson(rhs), "abs_err": abs(lhs - rhs), "rel_err": _rel(lhs, rhs)})
    return ScenarioReport.build("cauchy_first", details, tolerance, seed=seed)


def hyperplane_basis(N: int) -> OrthonormalBasis:
    return build_onb(BundleModel.pn(N, 1))


def _affine(p: projective.ProjectivePoint, n: int):
    w = p.affine(0)
    return complex(w[0]) if n == 1 else w


@_timed
def verify_cauchy_second(basis: OrthonormalBasis, probes, tolerance=1e-10, seed=None) -> ScenarioReport:
    """<e_q, e_q'>_L = qhat(s_0) conj(qhat'(s_0)) <i(y)^, i(x)^> = (same factor / F) <e_i(x), e_i(y)>_{t_0}."""
    pn = hyperplane_basis(basis.N)
    F = coherent.epsilon_function(pn, _affine(projective.ProjectivePoint.from_affine(np.zeros(basis.N)), basis.N))
    details = []
    for (x, c), (y, d) in probes:
        eq, eqp = coherent_vector(basis, x, None, c), coherent_vector(basis, y, None, d)
        lhs = inner(eq, eqp)
        factor = eq.qhat[0] * np.conj(eqp.qhat[0])
        ix, iy = coherent_embedding(basis, x), coherent_embedding(basis, y)
        hx, hy = ix.coords / ix.coords[0], iy.coords / iy.coords[0]
        middle = factor * np.vdot(hy, hx)
        right = factor / F * coherent_kernel(pn, _affine(ix, basis.N), _affine(iy, basis.N))
        err = max(abs(lhs - middle), abs(lhs - right))
        rel = max(_rel(middle, lhs), _rel(right, lhs))
        details.append({"x": point_json(x), "y": point_json(y), "lhs": cjson(lhs), "middle": cjson(middle),
                        "rhs": cjson(right), "abs_err": err, "rel_err": rel})
    return ScenarioReport.build("cauchy_second", details, tolerance, metric="rel", seed=seed,
                                notes={"F": F, "F_closed_form": (basis.N + 1) / BundleModel.pn(basis.N, 1).volume()})


@_timed
def verify_cauchy_third(basis: OrthonormalBasis, probes, frames=None, tolerance=1e-8, seed=None) -> ScenarioReport:
    """<e_x, e_y>_{i*t} / <e_i(x), e_i(y)>_t is one constant over probes and frames.

    ``frames`` are linear forms on C^{N+1}.  The constant is reported next to
    vol(P^N) / (N+1), with vol(P^N) = (2 pi)^N / N!.
    """
    N = basis.N
    pn = hyperplane_basis(N)
    if frames is None:
        t1 = np.zeros(N + 1, dtype=complex)
        t1[0] = t1[1] = 1.0
        frames = [np.eye(N + 1, dtype=complex)[0], t1]
    ratios, details = [], []
    for fi, tau in enumerate(frames):
        tau = np.asarray(tau, dtype=complex)
        s = basis.pullback_frame(tau)
        for x, y in probes:
            ix, iy = coherent_embedding(basis, x), coherent_embedding(basis, y)
            try:
                lhs = coherent_kernel(basis, x, y, frame=s)
                rhs = coherent_kernel(pn, _affine(ix, N), _affine(iy, N), frame=tau)
            except FrameVanishingError:
                details.append({"frame": fi, "x": point_json(x), "y": point_json(y), "skipped": True,
                                "reason": "probe on the divisor of t", "abs_err": 0.0})
                continue
            ratio = lhs / rhs
            ratios.append(ratio)
            details.append({"frame": fi, "x": point_json(x), "y": point_json(y), "lhs": cjson(lhs),
                            "rhs": cjson(rhs), "ratio": cjson(ratio)})
    ratios = np.array(ratios)
    mean = complex(np.mean(ratios))
    for d in details:
        if not d.get("skipped"):
            r = complex(*d["ratio"])
            d["abs_err"] = abs(r - mean) / abs(mean)
            d["rel_err"] = d["abs_err"]
    cv = float(np.std(ratios) / abs(mean))
    predicted = BundleModel.pn(N, 1).volume() / (N + 1)
    report = ScenarioReport.build("cauchy_third", details, tolerance, metric="rel", seed=seed,
                                  notes={"constant": cjson(mean), "coefficient_of_variation": cv,
                                         "predicted_vol_over_dim": predicted,
                                         "vol_PN_derived": BundleModel.pn(N, 1).volume()})
    report.passed = report.passed and cv <= tolerance
    return report


# ---------------------------------------------------------------- m-point functions


def random_tuples(rng, count, sizes=(2, 3, 4, 5), n=1):
    out = []
    for _ in range(count):
        k = int(rng.choice(sizes))
        out.append(random_chart_points(rng, k, n))
    return out


@_timed
def verify_pullback_mpoint(basis: OrthonormalBasis, tuples, tolerance=1e-10, seed=None) -> ScenarioReport:
    details = []
    for pts in tuples:
        intrinsic = multipoint.cyclic_m_point(basis, pts).value
        pulled = multipoint.embedded_m_point(basis, pts)
        details.append({"m_bundle": basis.model.power, "points": [point_json(p) for p in pts],
                        "intrinsic": cjson(intrinsic), "embedded": cjson(pulled),
                        "abs_err": abs(intrinsic - pulled), "rel_err": _rel(intrinsic, pulled)})
    return ScenarioReport.build("mpoint_pullback", details, tolerance, seed=seed)


@_timed
def mpoint_symmetries(powers=(1, 2, 3), count=20, seed=0, tolerance=1e-12) -> ScenarioReport:
    """Cyclic invariance, reversal conjugation and Psi^(2) = psi."""
    rng = np.random.default_rng(seed)
    details = []
    for m in powers:
        basis = build_onb(BundleModel.p1(m))
        for pts in random_tuples(rng, count):
            v = multipoint.cyclic_m_point(basis, pts).value
            cyc = multipoint.cyclic_m_point(basis, pts[1:] + pts[:1]).value
            rev = multipoint.cyclic_m_point(basis, pts[::-1]).value
            err = max(abs(v - cyc), abs(rev - np.conj(v)))
            rec = {"m_bundle": m, "points": [point_json(p) for p in pts], "value": cjson(v),
                   "cyclic_err": abs(v - cyc), "reversal_err": abs(rev - np.conj(v))}
            if len(pts) == 2:
                psi = multipoint.two_point_modulus_sq(basis, *pts)
                rec["two_point_err"] = abs(v - psi)
                err = max(err, abs(v - psi))
            rec["abs_err"] = err
            details.append(rec)
    return ScenarioReport.build("mpoint_symmetries", details, tolerance, seed=seed)


@_timed
def mpoint_zero_set(powers=(1, 2, 3), count=20, seed=0, tolerance=1e-10) -> ScenarioReport:
    """Psi^(m) vanishes exactly when a consecutive pair is polar (y = -1/conj(x) on P^1)."""
    rng = np.random.default_rng(seed)
    details = []
    for m in powers:
        basis = build_onb(BundleModel.p1(m))
        for k in range(count):
            pts = random_chart_points(rng, int(rng.integers(2, 6)), min_radius=0.3)
            polar = k % 2 == 0
            if polar:
                j = int(rng.integers(len(pts)))
                pts[(j + 1) % len(pts)] = -1 / np.conj(pts[j])
            predicted = any(divisors.polar_membership(basis, pts[i], pts[(i + 1) % len(pts)])
                            for i in range(len(pts)))
            res = multipoint.cyclic_m_point(basis, pts)
            if polar:
                err = res.modulus if predicted else 1.0
            else:
                err = 1.0 if (predicted or res.degenerate) else 0.0
            details.append({"m_bundle": m, "points": [point_json(p) for p in pts], "polar_pair": polar,
                            "predicted_zero": predicted, "modulus": res.modulus, "abs_err": err})
    return ScenarioReport.build("mpoint_zero_set", details, tolerance, seed=seed)


# ---------------------------------------------------------------- three-point phase


def random_nondegenerate_triples(rng, count, n=1, basis=None, max_tries=10000):
    """Random chart triples whose embedded triangle is non-degenerate."""
    out, tries = [], 0
    while len(out) < count and tries < max_tries:
        tries += 1
        pts = random_chart_points(rng, 3, n)
        if basis is not None:
            imgs = [coherent_embedding(basis, p) for p in pts]
        else:
            imgs = [projective.ProjectivePoint.from_affine(p) for p in pts]
        try:
            projective.triangle_symplectic_area(*imgs, QuadratureSpec(nodes_u=4, nodes_v=4, refine_limit=2), tol=np.inf)
        except DegenerateTriangleError:
            continue
        out.append(pts)
    return out


@_timed
def verify_phase_area(basis: OrthonormalBasis, triples, spec=None, tolerance=1e-4, seed=None) -> ScenarioReport:
    """Phase of Psi^(3) against the symplectic area of the embedded geodesic triangle (mod 2 pi)."""
    details = []
    for x, y, z in triples:
        rec = {"points": [point_json(p) for p in (x, y, z)]}
        try:
            dec = multipoint.three_point_decompose(basis, x, y, z)
            area = projective.triangle_symplectic_area(*(coherent_embedding(basis, p) for p in (x, y, z)), spec)
        except DegenerateTriangleError as exc:
            rec.update(skipped=True, reason=str(exc), abs_err=0.0)
            details.append(rec)
            continue
        err = projective.circle_distance(dec.phi, area)
        rec.update(a=dec.a, b=dec.b, c=dec.c, phi=dec.phi, rho=dec.rho, area=area, abs_err=err, rel_err=err)
        details.append(rec)
    return ScenarioReport.build("phase_area", details, tolerance, seed=seed,
                                notes={"model": basis.model.to_dict()})


# ---------------------------------------------------------------- divisors and curvature


@_timed
def polar_divisors(powers=(1, 2, 3, 4, 5), count=10, seed=0, symmetry_probes=100, tolerance=1e-8) -> ScenarioReport:
    """Sigma_w = m[-1/conj(w)], Sigma_0 = m[inf], Sigma_inf = m[0], multiplicities and symmetry."""
    rng = np.random.default_rng(seed)
    details = []
    for m in powers:
        basis = build_onb(BundleModel.p1(m))
        for w in random_chart_points(rng, count, min_radius=0.3):
            d = divisors.polar_divisor_p1(basis, w)
            want = -1 / np.conj(w)
            ok = len(d.components) == 1 and not is_inf(d.components[0][0]) and d.components[0][1] == m
            root = d.components[0][0] if ok else None
            err = _rel(root, want) if ok else 1.0
            mult = divisors.multiplicity_at(basis, w, want)
            err = max(err, 0.0 if mult == m else 1.0)
            details.append({"kind": "generic", "m": m, "w": cjson(w), "root": cjson(root) if ok else None,
                            "expected_root": cjson(want), "multiplicity": d.components[0][1] if d.components else 0,
                            "multiplicity_at": mult, "abs_err": err, "rel_err": err})
        for w, want in ((0, INF), (INF, 0j)):
            d = divisors.polar_divisor_p1(basis, w)
            ok = d.components == ((want, m),)
            details.append({"kind": "special", "m": m, "w": point_json(w), "divisor": d.to_json(),
                            "abs_err": 0.0 if ok else 1.0})
    basis = build_onb(BundleModel.p1(2))
    for k in range(symmetry_probes):
        x = random_chart_points(rng, 1, min_radius=0.3)[0]
        y = -1 / np.conj(x) if k % 2 == 0 else random_chart_points(rng, 1)[0]
        a, b = divisors.polar_membership(basis, x, y), divisors.polar_membership(basis, y, x)
        details.append({"kind": "symmetry", "m": 2, "x": cjson(x), "y": cjson(y), "x_in": a, "y_in": b,
                        "abs_err": 0.0 if a == b else 1.0})
    return ScenarioReport.build("polar_divisors", details, tolerance, metric="rel", seed=seed)


@_timed
def divisor_sweep(m=3, count=10, seed=0, tolerance=1e-8) -> ScenarioReport:
    """Rows (w, root, multiplicity) for a batch of random w."""
    rng = np.random.default_rng(seed)
    basis = build_onb(BundleModel.p1(m))
    details = []
    for w in random_chart_points(rng, count, min_radius=0.3):
        d = divisors.polar_divisor_p1(basis, w)
        root, mult = d.components[0]
        err = max(_rel(root, -1 / np.conj(w)), 0.0 if mult == m else 1.0)
        details.append({"w": cjson(w), "root": cjson(root), "multiplicity": mult, "abs_err": err, "rel_err": err})
    return ScenarioReport.build("divisor_sweep", details, tolerance, metric="rel", seed=seed)


DEFAULT_CURVATURE_GRID = (0, 1, 1j, 1 + 1j)


@_timed
def curvature(powers=(1, 2, 3, 4, 5), grid=DEFAULT_CURVATURE_GRID, h_step=1e-3, tolerance=1e-4) -> ScenarioReport:
    """Quantum condition residual, its O(h^2) decay, and a perturbed-metric control."""
    details = []
    for m in powers:
        model = BundleModel.p1(m)
        r1 = bundles.curvature_residual(model, grid, h_step)
        r2 = bundles.curvature_residual(model, grid, h_step / 2)
        ratio = r1 / r2
        details.append({"kind": "residual", "m": m, "residual": r1, "residual_half_step": r2,
                        "richardson_ratio": ratio, "abs_err": r1})
        # second order decay means the ratio sits near 4
        details.append({"kind": "richardson", "m": m, "richardson_ratio": ratio,
                        "abs_err": 0.0 if 3.0 <= ratio <= 5.0 else 1.0})
    bad = BundleModel("P1", 1, 1, metric_override=lambda z: (1 + abs(z) ** 2) ** -1 * np.exp(abs(z) ** 2))
    control = bundles.curvature_residual(bad, grid, h_step)
    details.append({"kind": "negative_control", "residual": control, "abs_err": 0.0 if control > 0.1 else 1.0})
    return ScenarioReport.build("curvature", details, tolerance, notes={"h_step": h_step, "control_residual": control})


# ---------------------------------------------------------------- Plucker / Binet-Cauchy


PLUCKER_PAIRS = tuple(itertools.combinations(range(4), 2))


def plucker(A: np.ndarray) -> np.ndarray:
    """2x2 minors of a 2x4 matrix, columns (01, 02, 03, 12, 13, 23)."""
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 4):
        raise InvalidParameterError("expected a 2x4 matrix")
    if np.linalg.matrix_rank(A) < 2:
        raise InvalidParameterError("matrix must have rank 2")
    return np.array([A[0, i] * A[1, j] - A[0, j] * A[1, i] for i, j in PLUCKER_PAIRS])


def plucker_quadric(p: np.ndarray) -> complex:
    p01, p02, p03, p12, p13, p23 = p
    return complex(p01 * p23 - p02 * p13 + p03 * p12)


@_timed
def plucker_binet_cauchy(pairs, tolerance=1e-12, seed=None) -> ScenarioReport:
    """<p(A), p(B)> = det(conj(A) B^T) and the Plucker quadric, pair by pair."""
    details = []
    for A, B in pairs:
        pa, pb = plucker(A), plucker(B)
        lhs = complex(np.vdot(pa, pb))
        rhs = complex(np.linalg.det(np.conj(A) @ np.asarray(B).T))
        q = max(abs(plucker_quadric(pa)), abs(plucker_quadric(pb)))
        scale = max(1.0, np.linalg.norm(pa) * np.linalg.norm(pb))
        err = max(abs(lhs - rhs) / scale, q / max(1.0, np.linalg.norm(pa) ** 2, np.linalg.norm(pb) ** 2))
        details.append({"lhs": cjson(lhs), "rhs": cjson(rhs), "quadric": q, "abs_err": err, "rel_err": err})
    return ScenarioReport.build("plucker_binet_cauchy", details, tolerance, seed=seed)


def random_matrix_pairs(rng, count):
    def mat():
        return rng.normal(size=(2, 4)) + 1j * rng.normal(size=(2, 4))

    return [(mat(), mat()) for _ in range(count)]


# ---------------------------------------------------------------- config-driven entry point


def _model(block, default):
    spec = block.get("model", default)
    if spec is None:
        raise ConfigError("scenario needs a model")
    return BundleModel.parse(spec) if isinstance(spec, str) else BundleModel.from_dict(spec)


def _run_kernel_law(b, model, spec):
    return kernel_law(b.get("powers", [1, 2, 3]), b.get("count", 20), b["seed"], b["tolerance"], spec)


def _run_epsilon_constancy(b, model, spec):
    return epsilon_constancy(b.get("powers", [1, 2, 3, 4, 5]), b.get("count", 100), b["seed"], b["tolerance"], spec)


def _run_epsilon_value(b, model, spec):
    return epsilon_value(b.get("m", 1), tolerance=b["tolerance"], spec=spec)


def _run_overcompleteness(b, model, spec):
    return overcompleteness(b.get("powers", [1, 2, 3, 4]), b["tolerance"], spec)


def _run_cauchy_first(b, model, spec):
    basis = build_onb(_model(b, model), spec)
    rng = np.random.default_rng(b["seed"])
    return verify_cauchy_first(basis, random_lift_pairs(rng, b.get("count", 20), basis.model.n),
                               b["tolerance"], spec, seed=b["seed"])


def _run_cauchy_second(b, model, spec):
    basis = build_onb(_model(b, model), spec)
    rng = np.random.default_rng(b["seed"])
    return verify_cauchy_second(basis, random_lift_pairs(rng, b.get("count", 10), basis.model.n),
                                b["tolerance"], seed=b["seed"])


def _run_cauchy_third(b, model, spec):
    basis = build_onb(_model(b, model), spec)
    rng = np.random.default_rng(b["seed"])
    n = basis.model.n
    probes = list(zip(random_chart_points(rng, b.get("count", 20), n), random_chart_points(rng, b.get("count", 20), n)))
    frames = b.get("frames")
    if frames is not None:
        frames = [np.array([complex(*c) if isinstance(c, list) else complex(c) for c in f]) for f in frames]
    return verify_cauchy_third(basis, probes, frames, b["tolerance"], seed=b["seed"])


def _run_mpoint_pullback(b, model, spec):
    rng = np.random.default_rng(b["seed"])
    reports = []
    for m in b.get("powers", [1, 2, 3]):
        basis = build_onb(BundleModel.p1(m), spec)
        reports.append(verify_pullback_mpoint(basis, random_tuples(rng, b.get("count", 20)), b["tolerance"]))
    details = [d for r in reports for d in r.details]
    return ScenarioReport.build("mpoint_pullback", details, b["tolerance"], seed=b["seed"])


def _run_mpoint_symmetries(b, model, spec):
    return mpoint_symmetries(b.get("powers", [1, 2, 3]), b.get("count", 20), b["seed"], b["tolerance"])


def _run_mpoint_zero_set(b, model, spec):
    return mpoint_zero_set(b.get("powers", [1, 2, 3]), b.get("count", 20), b["seed"], b["tolerance"])


def _run_phase_area(b, model, spec):
    m = _model(b, model)
    basis = build_onb(m, spec)
    rng = np.random.default_rng(b["seed"])
    triples = random_nondegenerate_triples(rng, b.get("count", 20), m.n, basis)
    report = verify_phase_area(basis, triples, spec, b["tolerance"], seed=b["seed"])
    report.notes["requested"] = b.get("count", 20)
    return report


def _run_polar_divisors(b, model, spec):
    return polar_divisors(b.get("powers", [1, 2, 3, 4, 5]), b.get("count", 10), b["seed"],
                          b.get("symmetry_probes", 100), b["tolerance"])


def _run_divisor_sweep(b, model, spec):
    m = _model(b, model)
    return divisor_sweep(m.power, b.get("count", 10), b["seed"], b["tolerance"])


def _run_curvature(b, model, spec):
    grid = b.get("grid")
    grid = tuple(complex(*g) if isinstance(g, list) else complex(g) for g in grid) if grid else DEFAULT_CURVATURE_GRID
    return curvature(b.get("powers", [1, 2, 3, 4, 5]), grid, b.get("h_step", 1e-3), b["tolerance"])


def _run_plucker(b, model, spec):
    rng = np.random.default_rng(b["seed"])
    return plucker_binet_cauchy(random_matrix_pairs(rng, b.get("count", 50)), b["tolerance"], seed=b["seed"])


SCENARIOS: dict[str, Callable] = {
    "kernel_law": _run_kernel_law,
    "epsilon_constancy": _run_epsilon_constancy,
    "epsilon_value": _run_epsilon_value,
    "overcompleteness": _run_overcompleteness,
    "cauchy_first": _run_cauchy_first,
    "cauchy_second": _run_cauchy_second,
    "cauchy_third": _run_cauchy_third,
    "mpoint_pullback": _run_mpoint_pullback,
    "mpoint_symmetries": _run_mpoint_symmetries,
    "mpoint_zero_set": _run_mpoint_zero_set,
    "phase_area": _run_phase_area,
    "polar_divisors": _run_polar_divisors,
    "divisor_sweep": _run_divisor_sweep,
    "curvature": _run_curvature,
    "plucker_binet_cauchy": _run_plucker,
}


def run_scenario(block: dict, model=None, spec: QuadratureSpec | None = None) -> ScenarioReport:
    name = block.get("name")
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}")
    block = {"seed": 0, **block}
    if "quadrature" in block:
        spec = QuadratureSpec.from_dict(block["quadrature"])
    t0 = time.perf_counter()
    report = SCENARIOS[name](block, model, spec)
    report.scenario = block.get("label", name)
    report.runtime_s = time.perf_counter() - t0
    return report
