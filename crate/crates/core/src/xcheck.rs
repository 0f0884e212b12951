//! Independent numerical oracles used to cross-check the main routines:
//! a Poisson product-formula resultant (Sylvester elimination, no Macaulay
//! matrix) and a direct lattice-sum Weierstrass P with an Eisenstein tail
//! correction.

use crate::error::{Error, Result};
use crate::forms::{TernaryForm, Transform3};
use crate::macaulay::ResultantProblem;
use crate::periods::{normalize_basis, LatticeData};
use crate::roots::polynomial_roots;
use crate::wp::invariants_from_lattice;
use crate::C;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn zero() -> C {
    C::new(0.0, 0.0)
}

/// Resultant of two binary quadratics a0 x^2 + a1 xy + a2 y^2 via the 4x4
/// Sylvester determinant.
fn sylvester_binary22(a: [C; 3], b: [C; 3]) -> C {
    let m = nalgebra::Matrix4::from_rows(&[
        nalgebra::RowVector4::new(a[0], a[1], a[2], zero()),
        nalgebra::RowVector4::new(zero(), a[0], a[1], a[2]),
        nalgebra::RowVector4::new(b[0], b[1], b[2], zero()),
        nalgebra::RowVector4::new(zero(), b[0], b[1], b[2]),
    ]);
    m.lu().determinant()
}

/// f(x, y, 1) as a quadratic in y: coefficients [y^2, y^1, y^0], each a
/// polynomial evaluated at the given x.
fn in_y_at(f: &TernaryForm, x: C) -> [C; 3] {
    let c = |i: u32, j: u32| f.coeff(i, j, 2 - i - j);
    [
        c(0, 2),
        c(1, 1) * x + c(0, 1),
        (c(2, 0) * x + c(1, 0)) * x + c(0, 0),
    ]
}

/// Eliminant R(x) = Res_y(f1(x,y,1), f2(x,y,1)), built by sampling the
/// Sylvester determinant on a circle and inverting the DFT. Returns
/// ascending coefficients trimmed at relative 1e-8.
fn eliminant_in_x(f1: &TernaryForm, f2: &TernaryForm) -> Vec<C> {
    let n = 9usize; // degree <= 8 a priori, 4 generically
    let r = 1.37; // avoid exact unit-circle coincidences
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let x = C::new(0.0, ang).exp() * r;
        samples.push(sylvester_binary22(in_y_at(f1, x), in_y_at(f2, x)));
    }
    let mut coeffs = vec![zero(); n];
    for (j, cj) in coeffs.iter_mut().enumerate() {
        let mut acc = zero();
        for (k, s) in samples.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
            acc += s * C::new(0.0, ang).exp();
        }
        *cj = acc / (n as f64 * r.powi(j as i32));
    }
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let deg = coeffs
        .iter()
        .rposition(|c| c.norm() > 1e-8 * max)
        .unwrap_or(0);
    coeffs.truncate(deg + 1);
    coeffs
}

/// Two Newton steps on the affine 2x2 system (f1, f2)(x, y, 1).
fn polish_point(f1: &TernaryForm, f2: &TernaryForm, mut x: C, mut y: C) -> Option<(C, C)> {
    let d = |f: &TernaryForm, v: usize| f.partial(v);
    let (f1x, f1y) = (d(f1, 0), d(f1, 1));
    let (f2x, f2y) = (d(f2, 0), d(f2, 1));
    for _ in 0..4 {
        let p = (x, y, C::new(1.0, 0.0));
        let (v1, v2) = (f1.evaluate(p), f2.evaluate(p));
        let (a, b) = (f1x.evaluate(p), f1y.evaluate(p));
        let (c, e) = (f2x.evaluate(p), f2y.evaluate(p));
        let det = a * e - b * c;
        if det.norm() < 1e-14 {
            return None;
        }
        x -= (v1 * e - v2 * b) / det;
        y -= (a * v2 - c * v1) / det;
    }
    let p = (x, y, C::new(1.0, 0.0));
    let scale = f1.max_coeff().max(f2.max_coeff()) * (1.0 + x.norm() + y.norm()).powi(2);
    if f1.evaluate(p).norm().max(f2.evaluate(p).norm()) > 1e-7 * scale {
        return None;
    }
    Some((x, y))
}

/// Poisson product formula on a generic-position triple:
/// Res(f1,f2,f3) = Res(f1bar, f2bar)^2 * prod f3(p) over the four affine
/// common zeros of f1, f2, where fibar = fi(x, y, 0). Returns None when the
/// configuration is non-generic (zeros at infinity, y-degree drop, ...).
fn poisson(f: &[TernaryForm; 3]) -> Option<C> {
    let bar = |g: &TernaryForm| {
        [
            g.coeff(2, 0, 0),
            g.coeff(1, 1, 0),
            g.coeff(0, 2, 0),
        ]
    };
    let scale: f64 = f.iter().map(|g| g.max_coeff()).product();
    let rb = sylvester_binary22(bar(&f[0]), bar(&f[1]));
    if rb.norm() < 1e-8 * scale / f[2].max_coeff().max(1e-300) {
        return None;
    }
    if f[0].coeff(0, 2, 0).norm() < 1e-8 * f[0].max_coeff() {
        return None;
    }
    let elim = eliminant_in_x(&f[0], &f[1]);
    if elim.len() != 5 {
        return None; // zeros at infinity: affine count below Bezout
    }
    let xs = polynomial_roots(&elim);
    if xs.len() != 4 {
        return None;
    }
    let mut prod = rb * rb;
    for &x in &xs {
        let [a, b, c] = in_y_at(&f[0], x);
        let ys = polynomial_roots(&[c, b, a]);
        let one = C::new(1.0, 0.0);
        let y = ys
            .into_iter()
            .min_by(|u, v| {
                let ru = f[1].evaluate((x, *u, one)).norm();
                let rv = f[1].evaluate((x, *v, one)).norm();
                ru.partial_cmp(&rv).unwrap()
            })?;
        let (x, y) = polish_point(&f[0], &f[1], x, y)?;
        prod *= f[2].evaluate((x, y, one));
    }
    Some(prod)
}

/// Resultant oracle independent of the Macaulay construction. Falls back to
/// deterministic random coordinate changes (Res(f o T) = det(T)^8 Res(f))
/// when the triple is in non-generic position.
pub fn resultant_oracle(problem: &ResultantProblem) -> Result<C> {
    if let Some(r) = poisson(&problem.f) {
        return Ok(r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x706f_6973);
    for _ in 0..24 {
        let mut rows = [[zero(); 3]; 3];
        for row in rows.iter_mut() {
            for e in row.iter_mut() {
                *e = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let t = Transform3::from_rows(rows);
        let det = t.det();
        if det.norm() < 0.05 {
            continue;
        }
        let g = [
            problem.f[0].apply_transform(&t),
            problem.f[1].apply_transform(&t),
            problem.f[2].apply_transform(&t),
        ];
        if let Some(r) = poisson(&g) {
            return Ok(r / det.powu(8));
        }
    }
    Err(Error::Inconsistency(
        "resultant oracle: no generic coordinate change found".into(),
    ))
}

/// Direct lattice sum for P(z): truncated double sum over |m|, |n| <= N
/// plus an Eisenstein tail that replaces the truncated series sums S_k by
/// the exact G_k for k = 4, 6, 8, 10.
pub fn wp_lattice_sum(z: C, ld: &LatticeData, n: i64) -> Result<C> {
    let nl = normalize_basis(ld);
    let (o1, o2) = (nl.omega1, nl.omega2);
    // reduce z to the centered fundamental cell
    let det = o1.re * o2.im - o1.im * o2.re;
    let s = (z.re * o2.im - z.im * o2.re) / det;
    let t = (o1.re * z.im - o1.im * z.re) / det;
    let zr = z - o1 * s.round() - o2 * t.round();
    if zr.norm() < 1e-8 * o1.norm() {
        return Err(Error::PoleAtLatticePoint);
    }
    let one = C::new(1.0, 0.0);
    let mut sum = one / (zr * zr);
    let mut s4 = zero();
    let mut s6 = zero();
    let mut s8 = zero();
    let mut s10 = zero();
    for m in -n..=n {
        for k in -n..=n {
            if m == 0 && k == 0 {
                continue;
            }
            let w = o1 * m as f64 + o2 * k as f64;
            let wi2 = one / (w * w);
            let d = zr - w;
            sum += one / (d * d) - wi2;
            let wi4 = wi2 * wi2;
            s4 += wi4;
            s6 += wi4 * wi2;
            s8 += wi4 * wi4;
            s10 += wi4 * wi4 * wi2;
        }
    }
    let (g2, g3) = invariants_from_lattice(&nl)?;
    let g4 = g2 / 60.0;
    let g6 = g3 / 140.0;
    let g8 = g4 * g4 * (3.0 / 7.0);
    let g10 = g4 * g6 * (5.0 / 11.0);
    sum += (g4 - s4) * zr.powu(2) * 3.0;
    sum += (g6 - s6) * zr.powu(4) * 5.0;
    sum += (g8 - s8) * zr.powu(6) * 7.0;
    sum += (g10 - s10) * zr.powu(8) * 9.0;
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::monomials;
    use crate::macaulay::resultant222;
    use crate::periods::periods_from_invariants;
    use crate::wp::wp;

    fn random_quadric(rng: &mut ChaCha8Rng) -> TernaryForm {
        let mut f = TernaryForm::zero(2);
        for &(i, j, k) in monomials(2).iter() {
            f.set_coeff(i, j, k, C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        f
    }

    #[test]
    fn oracle_matches_macaulay_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let p = ResultantProblem::new(
                random_quadric(&mut rng),
                random_quadric(&mut rng),
                random_quadric(&mut rng),
            )
            .unwrap();
            let a = resultant222(&p).unwrap();
            let b = resultant_oracle(&p).unwrap();
            assert!(
                (a - b).norm() <= 1e-8 * a.norm().max(1.0),
                "macaulay {a} vs oracle {b}"
            );
        }
    }

    #[test]
    fn oracle_special_position_via_fallback() {
        // xz - y^2 and xy - z^2 meet transversally but share the zero
        // (1, 0, 0) at infinity, so the direct product formula bails out
        // and the transform path must take over
        let one = C::new(1.0, 0.0);
        let mut f = [TernaryForm::zero(2), TernaryForm::zero(2), TernaryForm::zero(2)];
        f[0].set_coeff(1, 0, 1, one);
        f[0].set_coeff(0, 2, 0, -one);
        f[1].set_coeff(1, 1, 0, one);
        f[1].set_coeff(0, 0, 2, -one);
        f[2].set_coeff(2, 0, 0, one);
        f[2].set_coeff(0, 2, 0, one);
        f[2].set_coeff(0, 0, 2, one);
        let [a, b, c] = f;
        assert!(poisson(&[a.clone(), b.clone(), c.clone()]).is_none());
        let p = ResultantProblem::new(a, b, c).unwrap();
        let r = resultant_oracle(&p).unwrap();
        let m = resultant222(&p).unwrap();
        assert!((r - m).norm() < 1e-8 * m.norm().max(1.0), "{r} vs {m}");
    }

    #[test]
    fn lattice_sum_matches_theta_quotient() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..4 {
            let g2 = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let g3 = C::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if (g2.powu(3) - g3 * g3 * 27.0).norm() < 0.3 {
                continue;
            }
            let ld = periods_from_invariants(g2, g3).unwrap();
            for _ in 0..3 {
                let z = ld.omega1 * rng.gen_range(0.15..0.45)
                    + ld.omega2 * rng.gen_range(0.15..0.45);
                let a = wp(z, &ld).unwrap();
                let b = wp_lattice_sum(z, &ld, 60).unwrap();
                assert!(
                    (a - b).norm() <= 1e-8 * a.norm().max(1.0),
                    "theta {a} vs sum {b}"
                );
            }
        }
    }
}
