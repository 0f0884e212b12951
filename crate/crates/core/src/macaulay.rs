//! Macaulay resultant of three ternary quadrics and the cubic discriminant
//! built on it.
//!
//! For degrees (2,2,2) the Macaulay matrix lives on the 15 degree-4
//! monomials; Res = det(A) / det(minor), where the extraneous minor is taken
//! on the three monomials divisible by two variable squares. Normalized so
//! that Res(x^2, y^2, z^2) = 1.

use crate::error::{Error, Result};
use crate::forms::{monomial_index, monomials, TernaryForm, Transform3};
use crate::C;
use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Three quadrics whose resultant is wanted.
#[derive(Debug, Clone)]
pub struct ResultantProblem {
    pub f: [TernaryForm; 3],
}

impl ResultantProblem {
    pub fn new(f1: TernaryForm, f2: TernaryForm, f3: TernaryForm) -> Result<Self> {
        for f in [&f1, &f2, &f3] {
            if f.degree() != 2 {
                return Err(Error::KeyDegreeMismatch(f.degree(), 2, 0, 0));
            }
        }
        Ok(ResultantProblem { f: [f1, f2, f3] })
    }
}

/// Degree-4 monomials divisible by at least two of x^2, y^2, z^2.
const NON_REDUCED: [(u32, u32, u32); 3] = [(2, 2, 0), (2, 0, 2), (0, 2, 2)];

/// Build the 15x15 Macaulay matrix under a variable priority order and
/// return Some(det A / det minor), or None when the extraneous minor is
/// numerically singular for this ordering.
fn macaulay_quotient(f: &[TernaryForm; 3], priority: [usize; 3]) -> Option<C> {
    let rows = monomials(4);
    let n = rows.len(); // 15
    let mut a = DMatrix::<C>::zeros(n, n);
    for (r, &(i, j, k)) in rows.iter().enumerate() {
        let e = [i, j, k];
        // first variable in priority order whose square divides the monomial
        let var = *priority.iter().find(|&&v| e[v] >= 2).expect("degree 4");
        let which = priority.iter().position(|&v| v == var).unwrap();
        let fi = &f[which];
        let mut q = e;
        q[var] -= 2;
        for (&(mi, mj, mk), &c) in monomials(2).iter().zip(fi.coeffs()) {
            let col = monomial_index(4, q[0] + mi, q[1] + mj);
            debug_assert_eq!(
                rows[col],
                (q[0] + mi, q[1] + mj, q[2] + mk),
                "column bookkeeping"
            );
            a[(r, col)] += c;
        }
    }
    let mut minor = DMatrix::<C>::zeros(3, 3);
    let idx: Vec<usize> = NON_REDUCED
        .iter()
        .map(|&(i, j, _)| monomial_index(4, i, j))
        .collect();
    for (r, &ri) in idx.iter().enumerate() {
        for (c, &ci) in idx.iter().enumerate() {
            minor[(r, c)] = a[(ri, ci)];
        }
    }
    // Hadamard-style scale for the relative singularity test
    let scale: f64 = (0..3)
        .map(|r| {
            (0..3)
                .map(|c| minor[(r, c)].norm())
                .fold(0.0f64, f64::max)
                .max(1e-300)
        })
        .product();
    let det_minor = minor.lu().determinant();
    if det_minor.norm() < 1e-10 * scale {
        return None;
    }
    let det_a = a.lu().determinant();
    let res = det_a / det_minor;
    if res.re.is_finite() && res.im.is_finite() {
        Some(res)
    } else {
        None
    }
}

const PRIORITIES: [[usize; 3]; 3] = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];

fn resultant_direct(f: &[TernaryForm; 3]) -> Option<C> {
    PRIORITIES.iter().filter_map(|&p| macaulay_quotient(f, p)).next()
}

/// Resultant of three ternary quadrics. When every priority ordering hits a
/// singular extraneous minor (e.g. the partials of a Weierstrass cubic),
/// fall back to a deterministic coordinate change T and use
/// Res(f o T) = det(T)^8 Res(f).
pub fn resultant222(problem: &ResultantProblem) -> Result<C> {
    if let Some(res) = resultant_direct(&problem.f) {
        return Ok(res);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61_6361);
    for _ in 0..16 {
        let mut rows = [[C::new(0.0, 0.0); 3]; 3];
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
        if let Some(res) = resultant_direct(&g) {
            return Ok(res / det.powu(8));
        }
    }
    Err(Error::DegenerateMinor)
}

/// Discriminant of a ternary cubic: -Res(f_x, f_y, f_z) / 27.
pub fn discriminant(f: &TernaryForm) -> Result<C> {
    if f.degree() != 3 {
        return Err(Error::KeyDegreeMismatch(f.degree(), 3, 0, 0));
    }
    if f.is_zero(0.0) {
        return Err(Error::ZeroForm);
    }
    let problem = ResultantProblem::new(f.partial(0), f.partial(1), f.partial(2))?;
    Ok(-resultant222(&problem)? / 27.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::weierstrass_form;

    fn quadric(coeffs: [(u32, u32, f64); 6]) -> TernaryForm {
        let mut f = TernaryForm::zero(2);
        for (i, j, v) in coeffs {
            if v != 0.0 {
                f.set_coeff(i, j, 2 - i - j, C::new(v, 0.0));
            }
        }
        f
    }

    fn sq(var: usize) -> TernaryForm {
        let mut f = TernaryForm::zero(2);
        let (i, j, k) = [(2, 0, 0), (0, 2, 0), (0, 0, 2)][var];
        f.set_coeff(i, j, k, C::new(1.0, 0.0));
        f
    }

    #[test]
    fn normalization() {
        let p = ResultantProblem::new(sq(0), sq(1), sq(2)).unwrap();
        let r = resultant222(&p).unwrap();
        assert!((r - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn multilinearity_scaling() {
        let p = ResultantProblem::new(sq(0).scale(C::new(3.0, 0.0)), sq(1), sq(2)).unwrap();
        let r = resultant222(&p).unwrap();
        assert!((r - C::new(81.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn resultant_transform_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let mut rand_quadric = || {
                let mut f = TernaryForm::zero(2);
                for &(i, j, k) in monomials(2).iter() {
                    f.set_coeff(i, j, k, C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                }
                f
            };
            let f = [rand_quadric(), rand_quadric(), rand_quadric()];
            let mut rng2 = ChaCha8Rng::seed_from_u64(32);
            let mut rows = [[C::new(0.0, 0.0); 3]; 3];
            for row in rows.iter_mut() {
                for e in row.iter_mut() {
                    *e = C::new(rng2.gen_range(-1.0..1.0), rng2.gen_range(-1.0..1.0));
                }
            }
            let t = Transform3::from_rows(rows);
            let r0 = resultant222(&ResultantProblem {
                f: f.clone(),
            })
            .unwrap();
            let rt = resultant222(&ResultantProblem {
                f: [
                    f[0].apply_transform(&t),
                    f[1].apply_transform(&t),
                    f[2].apply_transform(&t),
                ],
            })
            .unwrap();
            let expect = r0 * t.det().powu(8);
            assert!((rt - expect).norm() < 1e-9 * expect.norm().max(1.0));
        }
    }

    #[test]
    fn common_zero_vanishes() {
        // all three vanish at (0:0:1)
        let f1 = quadric([(2, 0, 1.0), (1, 1, 2.0), (1, 0, 1.0), (0, 2, 0.0), (0, 1, 0.0), (0, 0, 0.0)]);
        let f2 = quadric([(2, 0, 0.5), (1, 1, -1.0), (1, 0, 0.0), (0, 2, 1.0), (0, 1, 2.0), (0, 0, 0.0)]);
        let f3 = quadric([(2, 0, 1.0), (1, 1, 0.0), (1, 0, -1.0), (0, 2, 1.0), (0, 1, 1.0), (0, 0, 0.0)]);
        let r = resultant222(&ResultantProblem::new(f1, f2, f3).unwrap()).unwrap();
        assert!(r.norm() < 1e-9);
    }

    #[test]
    fn weierstrass_closed_form() {
        // exercises the degenerate-minor transform fallback
        for (g2, g3) in [
            (C::new(4.0, 0.0), C::new(0.0, 0.0)),
            (C::new(0.0, 0.0), C::new(4.0, 0.0)),
            (C::new(1.5, -0.3), C::new(0.2, 0.9)),
        ] {
            let f = weierstrass_form(g2, g3);
            let d = discriminant(&f).unwrap();
            let expect = (g2.powu(3) - g3 * g3 * 27.0) * 4096.0;
            assert!(
                (d - expect).norm() < 1e-9 * expect.norm().max(1.0),
                "{d} vs {expect}"
            );
        }
    }

    #[test]
    fn cuspidal_cubic_vanishes() {
        // y^2 z - x^3 is singular at (0:0:1)
        let mut f = TernaryForm::zero(3);
        f.set_coeff(0, 2, 1, C::new(1.0, 0.0));
        f.set_coeff(3, 0, 0, C::new(-1.0, 0.0));
        let d = discriminant(&f).unwrap();
        assert!(d.norm() < 1e-9);
    }

    #[test]
    fn discriminant_degree_twelve() {
        let f = weierstrass_form(C::new(2.0, 1.0), C::new(-1.0, 0.5));
        let c = C::new(0.7, -1.1);
        let d0 = discriminant(&f).unwrap();
        let dc = discriminant(&f.scale(c)).unwrap();
        assert!((dc - d0 * c.powu(12)).norm() < 1e-8 * dc.norm());
    }

    #[test]
    fn discriminant_weight_twelve_covariance() {
        let f = weierstrass_form(C::new(1.0, 2.0), C::new(0.4, -0.2));
        let t = Transform3::from_rows([
            [C::new(1.0, 0.2), C::new(-0.5, 0.0), C::new(0.3, 0.1)],
            [C::new(0.0, 0.7), C::new(1.2, 0.0), C::new(-0.1, 0.4)],
            [C::new(0.5, 0.0), C::new(0.2, -0.3), C::new(0.9, 0.0)],
        ]);
        let d0 = discriminant(&f).unwrap();
        let dt = discriminant(&f.apply_transform(&t)).unwrap();
        let expect = d0 * t.det().powu(12);
        assert!((dt - expect).norm() < 1e-7 * expect.norm());
    }

    #[test]
    fn fermat_discriminant() {
        // partials 3x^2, 3y^2, 3z^2: Res = 3^12, disc = -3^12/27
        let mut f = TernaryForm::zero(3);
        f.set_coeff(3, 0, 0, C::new(1.0, 0.0));
        f.set_coeff(0, 3, 0, C::new(1.0, 0.0));
        f.set_coeff(0, 0, 3, C::new(1.0, 0.0));
        let d = discriminant(&f).unwrap();
        assert!((d - C::new(-19683.0, 0.0)).norm() < 1e-8);
    }
}
