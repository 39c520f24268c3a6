"""Verification suites behind the command-line tool.

Each suite draws everything from one seeded generator and returns a
VerificationReport. Tolerances are fixed here and cannot be relaxed
through the config.
"""

from __future__ import annotations

import numpy as np

from . import __version__, algebra, constitutive, esposito, evolve, flat, lorentz, tetrad
from .config import ScenarioConfig
from .fields import random_analytic_field
from .report import VerificationReport, _slug, max_abs, scaled_residual

TOL_EXACT = 0.0
TOL_COV = 1e-10
TOL_INV = 1e-13
TOL_EUCLID = 1e-12
TOL_PAIR = 1e-10
TOL_PAIR_FD = 1e-7
TOL_CONN = 1e-8
TOL_SIGMA = 1e-12
TOL_EVOLVE = 1e-8
TOL_DIV = 1e-10
MIN_FD_RATIO = 3.5


def _rng(cfg):
    return np.random.default_rng(cfg.seed)


def _new_report(cfg):
    return VerificationReport(cfg.suite, __version__, cfg.echo())


# ------------------------------------------------------------------ algebra

def suite_algebra(cfg: ScenarioConfig) -> VerificationReport:
    r = _new_report(cfg)
    rep = algebra.verify_product_table()
    for name, v in rep.entries.items():
        r.add("algebra." + _slug(name), name, v, TOL_EXACT)
    for k in (1, 2, 3):
        r.add(f"algebra.n{k}_equals_i_s{k}", f"N^{k} = i S^{k}",
              max_abs(algebra.generator("N", k) - 1j * algebra.generator("S", k)), TOL_EXACT)
    return r


# ------------------------------------------------------------------ covariance

def _random_stencil(rng):
    d = np.zeros((4, 4), dtype=complex)
    d[:, 1:] = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
    return flat.DerivativeStencil(d)


def _random_source(rng):
    return flat.SourcePoint(rng.normal() * flat.EPS0, rng.normal(size=3) * flat.EPS0)


def suite_covariance(cfg: ScenarioConfig) -> VerificationReport:
    r = _new_report(cfg)
    rng = _rng(cfg)
    for _ in range(cfg.rotations):
        p = lorentz.random_rotation(rng)
        O = lorentz.rotation(p)
        rep = lorentz.check_rotation_covariance(O)
        r.add("covariance.rotation.alpha", "S alpha^j S^-1 = alpha^m O_mj",
              rep["S alpha^j S^-1 = alpha^m O_mj"], TOL_COV)
        r.add("covariance.rotation.beta", "S beta^j S^-1 = beta^m O_mj (rotation of beta)",
              rep["S beta^j S^-1 = beta^m O_mj"], TOL_COV)
        r.add("covariance.rotation.orthogonal", "Fedorov rotation is real orthogonal",
              max(max_abs(O @ O.T - np.eye(3)), max_abs(O.imag)), TOL_COV)
        rep = flat.check_field_covariance(p, _random_stencil(rng), _random_source(rng))
        r.add("covariance.rotation.field", "rotated residual = S residual",
              rep["rotated residual = S residual"], TOL_COV)

    for _ in range(cfg.boosts):
        p = lorentz.random_boost(rng, cfg.bmax)
        O = lorentz.boost(p)
        rep = lorentz.check_boost_covariance(p)
        r.add("covariance.boost.operator", "Delta S (-i d0 + alpha.d) S^-1 = -i d0' + alpha.d'",
              rep["Delta S (-i d0 + alpha.d) S^-1 = -i d0' + alpha.d'"], TOL_COV)
        r.add("covariance.boost.delta_alpha_beta", "Delta_alpha S = Delta_beta S^-1",
              rep["Delta_alpha S = Delta_beta S^-1"], TOL_COV)
        r.add("covariance.boost.beta_inverse", "S^-1 beta^j S = beta^m Oinv_mj",
              rep["S^-1 beta^j S = beta^m Oinv_mj"], TOL_COV)
        ax = lorentz.check_axis_boost_products(p.b)
        r.add("covariance.boost.axis_products", "Delta along e3 restores alpha1, alpha2", max(
            ax["Delta (ch alpha1 + i sh alpha2) = alpha1"], ax["Delta (ch alpha2 - i sh alpha1) = alpha2"]), TOL_COV)
        r.add("covariance.boost.axis_delta_s", "Delta S along e3 closed form",
              ax["Delta S along e3 (closed form)"], TOL_COV)
        rep = flat.check_field_covariance(p, _random_stencil(rng), _random_source(rng))
        r.add("covariance.boost.field", "boosted residual = Delta S residual",
              rep["boosted residual = Delta S residual"], TOL_COV)
        r.add("covariance.boost.current", "J' = Delta S J", rep["J' = Delta S J"], TOL_COV)

        sc = max(1.0, max_abs(O) ** 2)
        r.add("covariance.boost.conj_inverse", "conj(O) O = I for boosts",
              max_abs(np.conj(O) @ O - np.eye(3)) / sc, TOL_COV)
        r.add("covariance.boost.det", "det O = 1", abs(np.linalg.det(O) - 1) / max_abs(O) ** 3, TOL_COV)
        F = lorentz.rotation_from_fedorov(lorentz.fedorov_from_boost(p))
        r.add("covariance.boost.fedorov", "boost = Fedorov matrix with c0 = ch(b/2), c = i sh(b/2) n",
              max_abs(F - O) / max(1.0, max_abs(O)), TOL_COV)
        Dm = lorentz.delta("alpha", lorentz.BoostParam(-p.b, p.n))
        D = lorentz.delta("alpha", p)
        r.add("covariance.boost.delta_inverse", "Delta(b) Delta(-b) = I",
              max_abs(D @ Dm - np.eye(4)) / max(1.0, max_abs(D) ** 2), TOL_COV)
        q = lorentz.random_boost(rng, cfg.bmax)
        O2 = lorentz.boost(q)
        lhs = lorentz.embed_S(O) @ lorentz.embed_S(O2)
        r.add("covariance.group.embed_homomorphism", "S(O1) S(O2) = S(O1 O2)",
              scaled_residual(lhs - lorentz.embed_S(O @ O2), lhs), TOL_COV)
        j0, jv = rng.normal(), rng.normal(size=3)
        _, _, j0p, jp = lorentz.transform_coordinates_current(p, 0.0, np.zeros(3), j0, jv)
        r.add("covariance.boost.current_norm", "j0^2 - j^2 preserved by the boost",
              abs((j0p ** 2 - jp @ jp) - (j0 ** 2 - jv @ jv)) / max(1.0, j0p ** 2 + jp @ jp), TOL_COV)
    return r


# ------------------------------------------------------------------ constitutive

def _random_medium(rng):
    return constitutive.UniformMedium(rng.uniform(0.5, 5.0), rng.uniform(0.5, 5.0))


def _random_matrices(rng):
    return constitutive.LinearMediumMatrices(
        np.eye(3) * 2 + 0.5 * rng.normal(size=(3, 3)), np.eye(3) + 0.3 * rng.normal(size=(3, 3)),
        0.3 * rng.normal(size=(3, 3)), 0.3 * rng.normal(size=(3, 3)))


def _config_matrices(cfg):
    if all(getattr(cfg, k) is None for k in ("eps", "mu", "alpha", "beta")):
        return None
    return constitutive.LinearMediumMatrices.from_permeability(
        1.0 if cfg.eps is None else cfg.eps, 1.0 if cfg.mu is None else cfg.mu,
        0.0 if cfg.alpha is None else cfg.alpha, 0.0 if cfg.beta is None else cfg.beta)


def _cvec(rng):
    return rng.normal(size=3) + 1j * rng.normal(size=3)


def suite_constitutive(cfg: ScenarioConfig) -> VerificationReport:
    r = _new_report(cfg)
    rng = _rng(cfg)
    user = _config_matrices(cfg)
    for _ in range(cfg.triples):
        m = _random_medium(rng)
        mm = _random_matrices(rng)
        p = lorentz.random_boost(rng, cfg.bmax)
        O = lorentz.boost(p)
        f = _cvec(rng)

        back = constitutive.f_from_h_rest(m, constitutive.h_from_f_rest(m, f))
        r.add("constitutive.inverse_pair", "f(h(f)) = f for a uniform medium at rest",
              scaled_residual(back - f, f), TOL_INV)
        rep = constitutive.check_medium_triple(m, mm, O, f)
        r.add("constitutive.boosted_uniform", "moving-frame relation with O^2 vs pull-back",
              rep["uniform moving frame vs pull-back"], TOL_COV)
        r.add("constitutive.boosted_linear", "moving-frame linear media relation vs pull-back",
              rep["linear media moving frame vs pull-back"], TOL_COV)
        if user is not None:
            rep = constitutive.check_medium_triple(m, user, O, f)
            r.add("constitutive.boosted_config_medium", "configured medium: moving frame vs pull-back",
                  rep["linear media moving frame vs pull-back"], TOL_COV)
        O2 = constitutive.o_squared_double_angle(p)
        r.add("constitutive.o_squared", "double-angle O^2 = O O",
              max_abs(O2 - O @ O) / max(1.0, max_abs(O) ** 2), TOL_COV)
        r.add("constitutive.frame_factor", "O conj(O^-1) = O^2 for boosts",
              max_abs(constitutive.frame_factor(O) - O @ O) / max(1.0, max_abs(O) ** 2), TOL_COV)
        E, cB = rng.normal(size=3), rng.normal(size=3)
        r.add("constitutive.real_form", "real D', H' form = Re/Im of complex form",
              constitutive.check_real_form(m, O, E, cB), TOL_COV)

        # Euclidean rotations leave the form unchanged
        R = lorentz.rotation(lorentz.random_rotation(rng)).astype(complex)
        lhs = constitutive.h_from_f_boosted(m, R, f)
        rhs = constitutive.pullback_oracle(lambda x, xc: constitutive.h_from_f_rest(m, x, xc), R, f)
        rest = constitutive.h_from_f_rest(m, f)
        r.add("constitutive.euclidean_uniform", "rotated frame: same relation as at rest",
              scaled_residual(np.concatenate([lhs - rhs, lhs - rest]), lhs, f), TOL_EUCLID)
        lhs = constitutive.h_from_f_linear_media_boosted(mm, R, f)
        rhs = constitutive.pullback_oracle(lambda x, xc: constitutive.h_from_f_linear_media(mm, x, xc), R, f)
        r.add("constitutive.euclidean_linear", "rotated frame, linear media: conjugation oracle",
              scaled_residual(lhs - rhs, lhs, f), TOL_EUCLID)

        iso = constitutive.LinearMediumMatrices.from_uniform(m)
        r.add("constitutive.isotropic_reduction", "matrix relation reduces to the scalar one",
              scaled_residual(constitutive.h_from_f_linear_media(iso, f) - constitutive.h_from_f_rest(m, f), f),
              TOL_INV)
        vac = constitutive.UniformMedium(1.0, 1.0)
        r.add("constitutive.vacuum_transparency", "vacuum: h' = f' in every frame",
              scaled_residual(constitutive.h_from_f_boosted(vac, O, f) - f, f, O), TOL_EUCLID)
    return r


# ------------------------------------------------------------------ esposito

def _random_u(rng, bmax):
    n = rng.normal(size=3)
    n /= np.linalg.norm(n)
    b = rng.uniform(0, bmax)
    return np.concatenate([[np.cosh(b)], np.sinh(b) * n])


def suite_esposito(cfg: ScenarioConfig) -> VerificationReport:
    r = _new_report(cfg)
    rng = _rng(cfg)
    rep = esposito.check_rest_frame()
    for a in range(4):
        r.add(f"esposito.rest_gamma{a}", f"rest-frame Gamma^{a} entries",
              rep[f"Gamma^{a}(rest) entries"], TOL_EXACT)
    r.add("esposito.rest_beta_map", "beta (-i alpha^0) = Gamma^0, beta alpha^j = Gamma^j", max(
        v for k, v in rep.entries.items() if k.startswith("beta")), TOL_EXACT)

    for _ in range(cfg.u_samples):
        u = _random_u(rng, cfg.bmax)
        E, cB = rng.normal(size=3), rng.normal(size=3)
        F = esposito.faraday(E, cB)
        e, b = esposito.project_e_b(F, u)
        sc = max(1.0, max_abs(F)) * u[0] ** 2
        r.add("esposito.orthogonality", "u.e = u.b = 0",
              max(abs(esposito.mdot(u, e)), abs(esposito.mdot(u, b))) / sc, TOL_INV)
        e3, b3 = esposito.project_e_b_3d(E, cB, u)
        r.add("esposito.projection_3d", "3-vector projection formulas = tensor contraction",
              max_abs(np.concatenate([e - e3, b - b3])) / sc, TOL_EUCLID)
        F2 = esposito.reconstruct_F(e, b, u)
        r.add("esposito.round_trip", "F -> (e, b) -> F", max_abs(F2 - F) / sc, TOL_EUCLID)

        dE, dcB = rng.normal(size=(4, 3)), rng.normal(size=(4, 3))
        rho, j = rng.normal() * flat.EPS0, rng.normal(size=3) * flat.EPS0
        rep = esposito.check_equivalence_base(u, E, cB, dE, dcB, rho, j)
        r.add("esposito.beta_equivalence", "Esposito residual = beta base residual",
              rep["Esposito residual = beta base residual"], TOL_COV)
        r.add("esposito.operator_form", "Gamma^a(u) U(u) = beta alpha^a", rep["Gamma^a U = beta alpha^a"], TOL_COV)
        r.add("esposito.recovery", "(e, b) -> (E, cB) through U(u)^-1", rep["(e, b) -> (E, cB) recovery"], TOL_COV)
    return r


# ------------------------------------------------------------------ curved

def _sample_points(cfg, name, rng):
    if isinstance(cfg.points, list):
        return [np.array(p) for p in cfg.points]
    pts = []
    for _ in range(cfg.points):
        if name == "minkowski_cartesian":
            pts.append(rng.uniform(-1, 1, size=4))
        else:
            pts.append(np.array([rng.uniform(-1, 1), rng.uniform(cfg.r_min, cfg.r_max),
                                 rng.uniform(0.3, np.pi - 0.3), rng.uniform(0, 2 * np.pi)]))
    return pts


def _inv_ratio(coarse, fine):
    """fine/coarse; 0 when both are at rounding level (nothing left to converge)."""
    if coarse <= 1e-13:
        return 0.0
    return fine / coarse


def _random_lorentz_field(rng, kind):
    axis = int(rng.integers(1, 4))
    b0 = rng.uniform(-1, 1)
    b1 = rng.normal(size=4) * 0.3
    if kind == "boost":
        return tetrad.LocalLorentz.boost(axis, b0, b1)
    return tetrad.LocalLorentz.rotation(axis, b0, b1)


def suite_curved(cfg: ScenarioConfig) -> VerificationReport:
    r = _new_report(cfg)
    rng = _rng(cfg)
    h, hc = cfg.fd_step, cfg.fd_coarse
    params = {"M": cfg.M}
    for name in cfg.metric:
        pre = f"curved.{name}"
        for x in _sample_points(cfg, name, rng):
            m = tetrad.metric_catalog(name, params, x)
            t = tetrad.diagonal_tetrad(m)
            g = tetrad.ricci_rotation(t)
            r.add(f"{pre}.antisymmetry", "gamma_abc = -gamma_bac", g.antisymmetry(), 1e-9)
            r.add(f"{pre}.completeness", "eta^ab e_(a)alpha e_(b)beta = g", t.completeness(), 1e-10)

            # rotation coefficients from finite-difference metric derivatives
            gf = [tetrad.ricci_rotation(tetrad.diagonal_tetrad(tetrad.metric_catalog(name, params, x, fd_step=s)))
                  for s in (h, hc, hc / 2)]
            r.add(f"{pre}.gamma_fd", "rotation coefficients: analytic vs finite differences",
                  max_abs(gf[0].gamma - g.gamma), TOL_PAIR_FD)
            dc, df = max_abs(gf[1].gamma - g.gamma), max_abs(gf[2].gamma - g.gamma)
            r.add(f"{pre}.gamma_fd_convergence", "finite-difference order (inverse error ratio)",
                  _inv_ratio(dc, df), 1 / MIN_FD_RATIO)

            for _ in range(cfg.fields):
                fld = random_analytic_field(rng, 12, x + rng.normal(size=4) * 0.3)
                rho, j = rng.normal() * flat.EPS0, rng.normal(size=3) * flat.EPS0
                fm = tetrad.sample_from_field(t, fld, rho=rho, j=j)
                fv = fm.vacuum_part()

                R = tetrad.residual_matrix_curved(t, g, fv)
                b, s = tetrad.residual_tensor(t, g, fv)
                r.add(f"{pre}.pairing", "matrix vs tensor residuals (vacuum)",
                      max_abs(tetrad.pair_residuals(R, b, s)), TOL_PAIR)
                r.add(f"{pre}.components", "matrix residual split = eight explicit equations",
                      max_abs(tetrad.split_residual(R) - tetrad.residual_component_equations(g, fv)), TOL_EUCLID)

                Rm, RN = tetrad.residual_media_curved(t, g, fm)
                b, s = tetrad.residual_tensor(t, g, fm)
                r.add(f"{pre}.media_pairing", "media matrix vs tensor residuals",
                      max_abs(tetrad.pair_residuals(Rm, b, s)), TOL_PAIR)
                r.add(f"{pre}.media_components", "media residual split = explicit media equations",
                      max_abs(tetrad.split_residual(Rm) - tetrad.residual_component_equations(g, fm)), TOL_PAIR)
                Rv, RNv = tetrad.residual_media_curved(t, g, fv.with_vacuum_media())
                r.add(f"{pre}.media_vacuum_reduction", "media residual with D = E, H = B is the vacuum one",
                      max(max_abs(Rv - R), max_abs(RNv)), TOL_EUCLID)

                # coordinate-basis oracle: no rotation coefficients involved
                for Rx, ncomp, tag in ((R, 6, ""), (Rm, 12, "media_")):
                    view = _Truncated(fld, ncomp)
                    res = [max_abs(tetrad.pair_residuals(
                        Rx, *tetrad.coordinate_tensor_residual_fd(t, view, step, rho, j)))
                        for step in (h, hc, hc / 2)]
                    r.add(f"{pre}.{tag}pairing_fd", "matrix residual vs coordinate-basis finite differences",
                          res[0], TOL_PAIR_FD)
                    r.add(f"{pre}.{tag}pairing_fd_convergence", "finite-difference order (inverse error ratio)",
                          _inv_ratio(res[1], res[2]), 1 / MIN_FD_RATIO)

            # local Lorentz transformations of the frame
            for kind in ("rotation", "boost"):
                L = _random_lorentz_field(rng, kind)
                rep = tetrad.check_connection_transform(t, L, h)
                r.add(f"{pre}.connection_{kind}", "O A O^-1 + O dO^-1 = A'", rep["O A O^-1 + O dO^-1 = A'"], TOL_CONN)
                r.add(f"{pre}.connection_identity_{kind}", "tau O Tr[sigma sigmabar sigma C] + O dO^-1 = 0",
                      rep["tau^l O_lk Tr[...C] + O dO^-1 = 0"], TOL_CONN)
                rc = [tetrad.check_connection_transform(t, L, s)["O A O^-1 + O dO^-1 = A'"] for s in (hc, hc / 2)]
                r.add(f"{pre}.connection_{kind}_convergence", "finite-difference order (inverse error ratio)",
                      _inv_ratio(*rc), 1 / MIN_FD_RATIO)

            for cplx in (False, True):
                A = rng.normal(size=(4, 4)) + (1j * rng.normal(size=(4, 4)) if cplx else 0)
                rep = tetrad.sigma_trace_check(A - A.T)
                r.add(f"{pre}.sigma_trace", "sigma-matrix construction of A_(k)", rep.max(), TOL_SIGMA)

        if name == "minkowski_cartesian":
            x = rng.uniform(-1, 1, size=4)
            t = tetrad.diagonal_tetrad(tetrad.metric_catalog(name, params, x))
            g = tetrad.ricci_rotation(t)
            f = tetrad.sample_from_field(t, tetrad.cartesian_plane_wave())
            r.add(f"{pre}.plane_wave", "plane wave solves the curved equation in flat space",
                  max_abs(tetrad.residual_matrix_curved(t, g, f)), 1e-12)
            eps, mu = rng.uniform(1, 4), rng.uniform(1, 3)
            f = tetrad.sample_from_field(t, tetrad.dielectric_plane_wave(eps, mu))
            r.add(f"{pre}.dielectric_plane_wave", "plane wave in a uniform dielectric",
                  max_abs(tetrad.residual_media_curved(t, g, f)[0]), TOL_PAIR)
        if name == "minkowski_spherical":
            x = np.array([rng.uniform(-1, 1), rng.uniform(cfg.r_min, cfg.r_max), rng.uniform(0.3, 2.8),
                          rng.uniform(0, 2 * np.pi)])
            t = tetrad.diagonal_tetrad(tetrad.metric_catalog(name, params, x))
            g = tetrad.ricci_rotation(t)
            pw = tetrad.spherical_plane_wave()
            res = [max_abs(tetrad.residual_matrix_curved(t, g, tetrad.sample_from_field(t, pw, h=s)))
                   for s in (h, hc, hc / 2)]
            r.add(f"{pre}.plane_wave", "Cartesian plane wave in the spherical frame", res[0], TOL_CONN)
            r.add(f"{pre}.plane_wave_convergence", "finite-difference order (inverse error ratio)",
                  _inv_ratio(res[1], res[2]), 1 / MIN_FD_RATIO)
    return r


class _Truncated:
    """First ``n`` components of a field object."""

    def __init__(self, fld, n):
        self.fld, self.n = fld, n

    def value(self, x):
        return self.fld.value(x)[: self.n]

    def gradient(self, x):
        return self.fld.gradient(x)[:, : self.n]


# ------------------------------------------------------------------ evolve

def suite_evolve(cfg: ScenarioConfig, trajectory_sink=None) -> VerificationReport:
    r = _new_report(cfg)
    grid = evolve.plane_wave_grid(n=cfg.grid_n, k=cfg.k, cfl=cfg.cfl)
    res = evolve.evolve_periods(grid, cfg.periods, k=cfg.k)
    r.add("evolve.cross_check", "matrix form vs curl form trajectories", res.cross_check_max, TOL_EVOLVE)
    r.add("evolve.energy_drift", "relative energy drift", res.energy_drift, TOL_EVOLVE)
    r.add("evolve.divergence", "div E and div B stay zero", res.div_max, TOL_DIV)
    T = res.records[-1]["time"]
    z = grid.z
    exact = np.cos(cfg.k * (z - T))
    err = max(max_abs(res.psi.real[:, 0] - exact), max_abs(res.psi.imag[:, 1] - exact))
    r.add("evolve.exact_solution", "matrix form vs exact travelling wave", err, 1e-4)

    zero = evolve.Grid1D3V(cfg.grid_n, grid.length, cfg.cfl, np.zeros((cfg.grid_n, 3)), np.zeros((cfg.grid_n, 3)))
    z0 = evolve.evolve(zero, 10)
    r.add("evolve.zero_field", "zero field stays zero", max_abs(z0.psi), TOL_EXACT)
    if trajectory_sink is not None:
        trajectory_sink(res.to_jsonl())
    return r


SUITE_FUNCS = {
    "algebra": suite_algebra,
    "covariance": suite_covariance,
    "constitutive": suite_constitutive,
    "esposito": suite_esposito,
    "curved": suite_curved,
    "evolve": suite_evolve,
}


def run_suite(cfg: ScenarioConfig, corrupt=None, trajectory_sink=None) -> VerificationReport:
    """Run the configured suite, optionally with one stored constant damaged."""
    fn = SUITE_FUNCS[cfg.suite]
    kw = {"trajectory_sink": trajectory_sink} if cfg.suite == "evolve" else {}
    if corrupt:
        with algebra.corrupted(corrupt):
            rep = fn(cfg, **kw)
        rep.config = dict(rep.config, corrupt=corrupt)
        return rep
    return fn(cfg, **kw)
