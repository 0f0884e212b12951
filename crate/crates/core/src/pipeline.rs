//! End-to-end orchestration: the discriminant computed along both routes
//! (Macaulay resultant vs reduction -> periods -> theta constants), the
//! torsion-line representation with its shear fallback, and the seeded
//! self-test suites backing the CLI.

use crate::detrep::{torsion_line_pencil, verify_pencil, weierstrass_pencil};
use crate::error::{Error, Result};
use crate::forms::{weierstrass_form, MatrixPencil, TernaryForm, Transform3};
use crate::macaulay::{discriminant, resultant222, ResultantProblem};
use crate::periods::{normalize_basis, periods_from_invariants, LatticeData};
use crate::reduce::{affine_reduction, find_flexes, FlexPoint};
use crate::theta::{theta_constants, theta1_prime0, ThetaConstants};
use crate::tol::Tolerances;
use crate::wp::{two_torsion_values, wp, wp_prime};
use crate::xcheck::resultant_oracle;
use crate::C;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::f64::consts::PI;

pub fn cpx(c: C) -> Value {
    json!([c.re, c.im])
}

#[derive(Debug, Clone)]
pub struct DiscriminantReport {
    pub delta_resultant: C,
    pub delta_theta: C,
    pub det_m: C,
    pub omega1: C,
    pub tau: C,
    pub theta_constants: ThetaConstants,
    pub relative_gap: f64,
    pub retries: usize,
    pub flex_used: FlexPoint,
}

impl DiscriminantReport {
    pub fn to_json(&self) -> Value {
        let tri = |t: &[C; 3]| json!([cpx(t[0]), cpx(t[1]), cpx(t[2])]);
        json!({
            "delta_resultant": cpx(self.delta_resultant),
            "delta_theta": cpx(self.delta_theta),
            "detM": cpx(self.det_m),
            "omega1": cpx(self.omega1),
            "tau": cpx(self.tau),
            "theta_constants": {
                "a": cpx(self.theta_constants.a),
                "b": cpx(self.theta_constants.b),
                "c": cpx(self.theta_constants.c),
                "tau": cpx(self.theta_constants.tau),
            },
            "relative_gap": self.relative_gap,
            "retries": self.retries,
            "flex_used": { "coords": tri(&self.flex_used.coords), "tangent": tri(&self.flex_used.tangent) },
        })
    }
}

fn singularity_scale(f: &TernaryForm) -> f64 {
    f.max_coeff().powi(12)
}

/// The theta route for one chosen flex: preliminary frame, affine
/// reduction, periods, theta constants, then
/// delta = 2^16 / det(M)^12 * (pi/omega1)^12 (abc)^8.
fn theta_route(f: &TernaryForm, flex: &FlexPoint) -> Result<(C, C, LatticeData, ThetaConstants)> {
    let (frame, _psi, rd) = affine_reduction(f, flex).map_err(|e| e.at_stage("reduce"))?;
    let ld = periods_from_invariants(rd.g2, rd.g3).map_err(|e| e.at_stage("periods"))?;
    let nld = normalize_basis(&ld);
    let tc = theta_constants(nld.tau()).map_err(|e| e.at_stage("theta"))?;
    let det_m = frame.det() * rd.det_m;
    let p1 = C::new(PI, 0.0) / nld.omega1;
    let abc = tc.a * tc.b * tc.c;
    let delta = p1.powu(12) * abc.powu(8) * 65536.0 / det_m.powu(12);
    Ok((delta, det_m, nld, tc))
}

/// Discriminant along both routes with the relative gap.
pub fn discriminant_both_ways(f: &TernaryForm, tol: &Tolerances) -> Result<DiscriminantReport> {
    let delta_res = discriminant(f).map_err(|e| e.at_stage("resultant"))?;
    if delta_res.norm() < tol.singular * singularity_scale(f) {
        return Err(Error::SingularCurve.at_stage("resultant"));
    }
    let flexes = find_flexes(f).map_err(|e| e.at_stage("flex"))?;
    let mut last: Option<Error> = None;
    for (retries, flex) in flexes.iter().enumerate() {
        match theta_route(f, flex) {
            Ok((delta_theta, det_m, nld, tc)) => {
                let gap = (delta_res - delta_theta).norm()
                    / delta_res.norm().max(delta_theta.norm());
                return Ok(DiscriminantReport {
                    delta_resultant: delta_res,
                    delta_theta,
                    det_m,
                    omega1: nld.omega1,
                    tau: nld.tau(),
                    theta_constants: tc,
                    relative_gap: gap,
                    retries,
                    flex_used: *flex,
                });
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap())
}

/// delta_theta evaluated at every flex; the value is independent of the
/// flex chosen for the reduction.
pub fn delta_theta_all_flexes(f: &TernaryForm) -> Result<Vec<C>> {
    let flexes = find_flexes(f)?;
    flexes
        .iter()
        .map(|flex| theta_route(f, flex).map(|(d, _, _, _)| d))
        .collect()
}

/// Torsion-line representation with the shear fallback: up to 5 seeded
/// shears of f when the 2-torsion line is in degenerate position. Returns
/// the (possibly sheared) form the pencil actually represents.
pub fn torsion_representation(
    f: &TernaryForm,
) -> Result<(
    TernaryForm,
    MatrixPencil,
    crate::detrep::TorsionLineData,
    crate::reduce::ReductionData,
    LatticeData,
)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7368_6561);
    let mut last: Option<Error> = None;
    for attempt in 0..5 {
        let g = if attempt == 0 {
            f.clone()
        } else {
            let zero = C::new(0.0, 0.0);
            let one = C::new(1.0, 0.0);
            let mut rows = [[zero; 3]; 3];
            for row in rows.iter_mut().take(2) {
                for e in row.iter_mut() {
                    *e = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
            }
            rows[2] = [zero, zero, one];
            let s = Transform3::from_rows(rows);
            if (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).norm() < 0.2 {
                continue;
            }
            f.apply_transform(&s)
        };
        let flexes = match find_flexes(&g) {
            Ok(v) => v,
            Err(e) => {
                last = Some(e.at_stage("flex"));
                continue;
            }
        };
        for flex in flexes.iter().take(3) {
            let (_, psi, rd) = match affine_reduction(&g, flex) {
                Ok(v) => v,
                Err(e) => {
                    last = Some(e.at_stage("reduce"));
                    continue;
                }
            };
            let ld = match periods_from_invariants(rd.g2, rd.g3) {
                Ok(v) => normalize_basis(&v),
                Err(e) => {
                    last = Some(e.at_stage("periods"));
                    continue;
                }
            };
            match torsion_line_pencil(&psi, &rd, &ld) {
                Ok((pencil, data)) => return Ok((psi, pencil, data, rd, ld)),
                Err(e) => last = Some(e.at_stage("detrep")),
            }
        }
    }
    Err(last.unwrap_or(Error::DegenerateLine("no admissible shear found".into())))
}

/// Random nonsingular (g2, g3) with |g2^3 - 27 g3^2| >= 0.1.
pub fn random_invariants(rng: &mut ChaCha8Rng) -> (C, C) {
    loop {
        let g2 = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let g3 = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if (g2.powu(3) - g3 * g3 * 27.0).norm() >= 0.1 {
            return (g2, g3);
        }
    }
}

/// Random transform with singular values in [0.5, 2]: unitary x diagonal x
/// unitary, built from QR factors of random matrices.
pub fn random_well_conditioned(rng: &mut ChaCha8Rng) -> Transform3 {
    let unitary = |rng: &mut ChaCha8Rng| {
        let m = nalgebra::Matrix3::from_fn(|_, _| {
            C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        m.qr().q()
    };
    let q1 = unitary(rng);
    let q2 = unitary(rng);
    let d = nalgebra::Matrix3::from_diagonal(&nalgebra::Vector3::new(
        C::new(rng.gen_range(0.5..2.0), 0.0),
        C::new(rng.gen_range(0.5..2.0), 0.0),
        C::new(rng.gen_range(0.5..2.0), 0.0),
    ));
    let m = q1 * d * q2;
    Transform3::from_rows([
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ])
}

/// Random nonsingular general cubic: Weierstrass form composed with a
/// well-conditioned random transform.
pub fn random_cubic(rng: &mut ChaCha8Rng) -> TernaryForm {
    let (g2, g3) = random_invariants(rng);
    weierstrass_form(g2, g3).apply_transform(&random_well_conditioned(rng))
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub count: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub seed: u64,
    pub count: usize,
    pub suites: Vec<SuiteReport>,
    pub all_pass: bool,
}

impl SelftestReport {
    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "count": self.count,
            "all_pass": self.all_pass,
            "suites": self.suites.iter().map(|s| json!({
                "name": s.name,
                "count": s.count,
                "max_residual": s.max_residual,
                "tolerance": s.tolerance,
                "pass": s.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

/// Run every module's property suite on `count` seeded instances.
pub fn selftest(seed: u64, count: usize) -> SelftestReport {
    let mut suites: Vec<SuiteReport> = Vec::new();
    let mut run = |name: &'static str, tolerance: f64, f: &mut dyn FnMut(&mut ChaCha8Rng) -> f64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suites.len() as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut max = 0.0f64;
        for _ in 0..count {
            max = max.max(f(&mut rng));
        }
        suites.push(SuiteReport {
            name,
            count,
            max_residual: max,
            tolerance,
            pass: max <= tolerance,
        });
    };

    run("disc_identity", 1e-8, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let ld = periods_from_invariants(g2, g3).unwrap();
        let nld = normalize_basis(&ld);
        let tc = theta_constants(nld.tau()).unwrap();
        let lhs = (C::new(PI, 0.0) / nld.omega1).powu(12) * (tc.a * tc.b * tc.c).powu(8) * 65536.0;
        let rhs = (g2.powu(3) - g3 * g3 * 27.0) * 4096.0;
        rel(lhs, rhs)
    });
    run("weierstrass_pencil", 1e-10, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let t = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let mut d = (t.powu(3) * 4.0 - g2 * t - g3).sqrt();
        if rng.gen_bool(0.5) {
            d = -d;
        }
        let p = weierstrass_pencil(g2, g3, t, d).unwrap();
        verify_pencil(&p, &weierstrass_form(g2, g3)).unwrap().1
    });
    run("theta_pencil", 1e-9, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let ld = normalize_basis(&periods_from_invariants(g2, g3).unwrap());
        let p = crate::detrep::theta_pencil(&ld).unwrap();
        let (g2l, g3l) = crate::wp::invariants_from_lattice(&ld).unwrap();
        verify_pencil(&p, &weierstrass_form(g2l, g3l)).unwrap().1
    });
    run("theta_identities", 1e-12, &mut |rng| {
        let tau = C::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.87..2.5));
        let tc = theta_constants(tau).unwrap();
        let jac = tc.jacobi_residual();
        let t1p = theta1_prime0(tau).unwrap();
        let anchor = rel(t1p, tc.a * tc.b * tc.c * PI);
        jac.max(anchor)
    });
    run("macaulay_oracle", 1e-8, &mut |rng| {
        let mut q = || {
            let mut f = TernaryForm::zero(2);
            for &(i, j, k) in crate::forms::monomials(2).iter() {
                f.set_coeff(i, j, k, C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
            f
        };
        let p = ResultantProblem::new(q(), q(), q()).unwrap();
        let a = resultant222(&p).unwrap();
        let b = resultant_oracle(&p).unwrap();
        (a - b).norm() / a.norm().max(1.0)
    });
    run("weight12_covariance", 1e-7, &mut |rng| {
        let f = random_cubic(rng);
        let t = random_well_conditioned(rng);
        let d0 = discriminant(&f).unwrap();
        let dt = discriminant(&f.apply_transform(&t)).unwrap();
        rel(dt, d0 * t.det().powu(12))
    });
    run("end_to_end", 1e-6, &mut |rng| {
        let f = random_cubic(rng);
        // the generator guarantees |g2^3 - 27 g3^2| >= 0.1, but a lopsided
        // transform can push |disc|/max^12 below the default singular cutoff
        let tol = Tolerances::default().with_singular(1e-12);
        discriminant_both_ways(&f, &tol).unwrap().relative_gap
    });
    run("torsion_pencil", 1e-8, &mut |rng| {
        let f = random_cubic(rng);
        let (psi, pencil, _, _, _) = torsion_representation(&f).unwrap();
        verify_pencil(&pencil, &psi).unwrap().1
    });
    run("wp_ode", 1e-9, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let ld = periods_from_invariants(g2, g3).unwrap();
        let z = ld.omega1 * rng.gen_range(0.1..0.45) + ld.omega2 * rng.gen_range(0.1..0.45);
        let p = wp(z, &ld).unwrap();
        let dp = wp_prime(z, &ld).unwrap();
        (dp * dp - (p.powu(3) * 4.0 - g2 * p - g3)).norm() / p.norm().powi(3).max(1.0)
    });
    run("two_torsion_closed_forms", 1e-10, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let ld = periods_from_invariants(g2, g3).unwrap();
        let tv = two_torsion_values(&ld).unwrap();
        let halves = [ld.omega1 * 0.5, (ld.omega1 + ld.omega2) * 0.5, ld.omega2 * 0.5];
        let scale = tv.p_values().iter().map(|v| v.norm()).fold(1.0, f64::max);
        halves
            .iter()
            .zip(tv.p_values())
            .map(|(q, e)| (wp(*q, &ld).unwrap() - e).norm() / scale)
            .fold(0.0, f64::max)
    });
    run("period_roundtrip", 1e-9, &mut |rng| {
        let (g2, g3) = random_invariants(rng);
        let ld = periods_from_invariants(g2, g3).unwrap();
        let (h2, h3) = crate::wp::invariants_from_lattice(&ld).unwrap();
        rel(h2, g2).max(rel(h3, g3))
    });

    let all_pass = suites.iter().all(|s| s.pass);
    SelftestReport {
        seed,
        count,
        suites,
        all_pass,
    }
}
