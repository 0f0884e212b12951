//! Ternary homogeneous forms, 3x3 projective transforms and matrix pencils.
//!
//! A [`TernaryForm`] is stored densely over the graded-lex monomial basis
//! with x > y > z, e.g. for degree 3:
//! (3,0,0),(2,1,0),(2,0,1),(1,2,0),(1,1,1),(1,0,2),(0,3,0),(0,2,1),(0,1,2),(0,0,3).

use crate::error::{Error, Result};
use crate::C;
use nalgebra::{DMatrix, Matrix3, Vector3};
use serde::{Deserialize, Serialize};

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(degree: u32) -> usize {
    ((degree + 1) * (degree + 2) / 2) as usize
}

/// Monomial exponent triples of degree `d` in canonical (graded-lex, x>y>z) order.
pub fn monomials(degree: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::with_capacity(monomial_count(degree));
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push((i, j, degree - i - j));
        }
    }
    out
}

/// Index of the exponent triple (i,j,k) within the canonical order of its degree.
pub fn monomial_index(degree: u32, i: u32, j: u32) -> usize {
    let r = degree - i; // exponent weight left for y,z
    (r * (r + 1) / 2 + (r - j)) as usize
}

/// Homogeneous polynomial in x,y,z with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryForm {
    degree: u32,
    coeffs: Vec<C>,
}

impl TernaryForm {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            coeffs: vec![C::new(0.0, 0.0); monomial_count(degree)],
        }
    }

    /// Build a form from an exponent-keyed coefficient table; missing keys
    /// read as zero.
    pub fn from_coeffs(degree: u32, entries: &[((u32, u32, u32), C)]) -> Result<Self> {
        let mut f = TernaryForm::zero(degree);
        for &((i, j, k), c) in entries {
            if i + j + k != degree {
                return Err(Error::KeyDegreeMismatch(i, j, k, degree));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite);
            }
            f.coeffs[monomial_index(degree, i, j)] += c;
        }
        Ok(f)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32, k: u32) -> C {
        assert_eq!(i + j + k, self.degree, "exponent/degree mismatch");
        self.coeffs[monomial_index(self.degree, i, j)]
    }

    pub fn set_coeff(&mut self, i: u32, j: u32, k: u32, c: C) {
        assert_eq!(i + j + k, self.degree, "exponent/degree mismatch");
        self.coeffs[monomial_index(self.degree, i, j)] = c;
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_coeff() <= tol
    }

    /// Evaluate at a point.
    pub fn evaluate(&self, p: (C, C, C)) -> C {
        let (x, y, z) = p;
        let d = self.degree as usize;
        // power tables keep evaluation O(#monomials)
        let pow = |v: C| {
            let mut t = Vec::with_capacity(d + 1);
            let mut acc = C::new(1.0, 0.0);
            for _ in 0..=d {
                t.push(acc);
                acc *= v;
            }
            t
        };
        let (px, py, pz) = (pow(x), pow(y), pow(z));
        monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .map(|(&(i, j, k), &c)| c * px[i as usize] * py[j as usize] * pz[k as usize])
            .sum()
    }

    /// Formal partial derivative with respect to `var` (0 = x, 1 = y, 2 = z).
    pub fn partial(&self, var: usize) -> TernaryForm {
        assert!(self.degree >= 1, "partial of a constant form");
        let mut out = TernaryForm::zero(self.degree - 1);
        for (&(i, j, k), &c) in monomials(self.degree).iter().zip(&self.coeffs) {
            let (e, rest) = match var {
                0 => (i, (i.wrapping_sub(1), j)),
                1 => (j, (i, j.wrapping_sub(1))),
                2 => (k, (i, j)),
                _ => panic!("var must be 0,1,2"),
            };
            if e == 0 {
                continue;
            }
            let (ni, nj) = rest;
            out.coeffs[monomial_index(self.degree - 1, ni, nj)] += c * C::new(e as f64, 0.0);
        }
        out
    }

    pub fn add(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &TernaryForm) -> TernaryForm {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: C) -> TernaryForm {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Product of two forms.
    pub fn mul(&self, other: &TernaryForm) -> TernaryForm {
        let d = self.degree + other.degree;
        let mut out = TernaryForm::zero(d);
        for (&(i1, j1, _), &c1) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c1 == C::new(0.0, 0.0) {
                continue;
            }
            for (&(i2, j2, _), &c2) in monomials(other.degree).iter().zip(&other.coeffs) {
                out.coeffs[monomial_index(d, i1 + i2, j1 + j2)] += c1 * c2;
            }
        }
        out
    }

    /// f composed with a transform: returns f(T.(x,y,z)).
    pub fn apply_transform(&self, t: &Transform3) -> TernaryForm {
        let row = |r: usize| {
            TernaryForm::from_coeffs(
                1,
                &[
                    ((1, 0, 0), t.entries[(r, 0)]),
                    ((0, 1, 0), t.entries[(r, 1)]),
                    ((0, 0, 1), t.entries[(r, 2)]),
                ],
            )
            .expect("degree-1 keys")
        };
        let (lx, ly, lz) = (row(0), row(1), row(2));
        let d = self.degree as usize;
        let powers = |l: &TernaryForm| {
            let mut t = Vec::with_capacity(d + 1);
            t.push(TernaryForm::from_coeffs(0, &[((0, 0, 0), C::new(1.0, 0.0))]).unwrap());
            for e in 1..=d {
                let next = t[e - 1].mul(l);
                t.push(next);
            }
            t
        };
        let (px, py, pz) = (powers(&lx), powers(&ly), powers(&lz));
        let mut out = TernaryForm::zero(self.degree);
        for (&(i, j, k), &c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c == C::new(0.0, 0.0) {
                continue;
            }
            let term = px[i as usize].mul(&py[j as usize]).mul(&pz[k as usize]);
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Determinant of the 3x3 matrix of second partials; degree 3(d-2).
    pub fn hessian_det(&self) -> TernaryForm {
        assert!(self.degree >= 2, "hessian of degree < 2");
        let h = |a: usize, b: usize| self.partial(a).partial(b);
        let m: Vec<Vec<TernaryForm>> = (0..3).map(|a| (0..3).map(|b| h(a, b)).collect()).collect();
        let det2 = |a: &TernaryForm, b: &TernaryForm, c: &TernaryForm, d: &TernaryForm| {
            a.mul(d).sub(&b.mul(c))
        };
        let c0 = det2(&m[1][1], &m[1][2], &m[2][1], &m[2][2]);
        let c1 = det2(&m[1][0], &m[1][2], &m[2][0], &m[2][2]);
        let c2 = det2(&m[1][0], &m[1][1], &m[2][0], &m[2][1]);
        m[0][0]
            .mul(&c0)
            .sub(&m[0][1].mul(&c1))
            .add(&m[0][2].mul(&c2))
    }

    /// Coefficientwise equality within relative tolerance, after normalizing
    /// by the larger of the two max coefficient magnitudes.
    pub fn approx_eq(&self, other: &TernaryForm, tol: f64) -> bool {
        self.rel_distance(other) <= tol
    }

    /// Max coefficient deviation relative to the larger coefficient scale.
    pub fn rel_distance(&self, other: &TernaryForm) -> f64 {
        assert_eq!(self.degree, other.degree);
        let scale = self.max_coeff().max(other.max_coeff());
        if scale == 0.0 {
            return 0.0;
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
            / scale
    }
}

/// Serde wire format: {"degree": d, "coeffs": [{"exp":[i,j,k],"re":..,"im":..},..]}.
#[derive(Serialize, Deserialize)]
struct FormWire {
    degree: u32,
    coeffs: Vec<CoeffWire>,
}

#[derive(Serialize, Deserialize)]
struct CoeffWire {
    exp: [u32; 3],
    re: f64,
    im: f64,
}

impl Serialize for TernaryForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = monomials(self.degree)
            .iter()
            .zip(&self.coeffs)
            .map(|(&(i, j, k), c)| CoeffWire {
                exp: [i, j, k],
                re: c.re,
                im: c.im,
            })
            .collect();
        FormWire {
            degree: self.degree,
            coeffs,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TernaryForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = FormWire::deserialize(d)?;
        let entries: Vec<((u32, u32, u32), C)> = wire
            .coeffs
            .iter()
            .map(|c| ((c.exp[0], c.exp[1], c.exp[2]), C::new(c.re, c.im)))
            .collect();
        TernaryForm::from_coeffs(wire.degree, &entries).map_err(serde::de::Error::custom)
    }
}

/// 3x3 complex coordinate change.
#[derive(Debug, Clone, PartialEq)]
pub struct Transform3 {
    pub entries: Matrix3<C>,
}

impl Transform3 {
    pub fn new(entries: Matrix3<C>) -> Self {
        Transform3 { entries }
    }

    pub fn identity() -> Self {
        Transform3 {
            entries: Matrix3::identity(),
        }
    }

    pub fn from_rows(rows: [[C; 3]; 3]) -> Self {
        Transform3 {
            entries: Matrix3::new(
                rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
                rows[2][1], rows[2][2],
            ),
        }
    }

    pub fn scalar(s: C) -> Self {
        Transform3 {
            entries: Matrix3::identity() * s,
        }
    }

    pub fn det(&self) -> C {
        self.entries.determinant()
    }

    pub fn compose(&self, other: &Transform3) -> Transform3 {
        Transform3 {
            entries: self.entries * other.entries,
        }
    }

    pub fn inverse(&self, min_det: f64) -> Result<Transform3> {
        if self.det().norm() < min_det {
            return Err(Error::Inconsistency(
                "transform not invertible within threshold".into(),
            ));
        }
        Ok(Transform3 {
            entries: self
                .entries
                .try_inverse()
                .ok_or(Error::Inconsistency("matrix inverse failed".into()))?,
        })
    }

    pub fn apply_point(&self, p: (C, C, C)) -> (C, C, C) {
        let v = self.entries * Vector3::new(p.0, p.1, p.2);
        (v[0], v[1], v[2])
    }
}

/// Triple (L,M,N) of square matrices representing the pencil xL + yM + zN.
#[derive(Debug, Clone)]
pub struct MatrixPencil {
    pub dim: usize,
    pub l: DMatrix<C>,
    pub m: DMatrix<C>,
    pub n: DMatrix<C>,
}

impl MatrixPencil {
    pub fn new(l: DMatrix<C>, m: DMatrix<C>, n: DMatrix<C>) -> Self {
        let dim = l.nrows();
        assert!(l.is_square() && m.is_square() && n.is_square());
        assert!(m.nrows() == dim && n.nrows() == dim, "pencil dim mismatch");
        MatrixPencil { dim, l, m, n }
    }

    /// Numeric value of the pencil matrix at a point.
    pub fn evaluate(&self, p: (C, C, C)) -> DMatrix<C> {
        &self.l * p.0 + &self.m * p.1 + &self.n * p.2
    }

    /// det(xL + yM + zN) expanded symbolically as a ternary form of degree dim.
    ///
    /// Cofactor expansion over linear entries for dim <= 4; for larger
    /// pencils the determinant is sampled on a deterministic grid and
    /// interpolated.
    pub fn det_form(&self) -> TernaryForm {
        if self.dim <= 4 {
            let entries: Vec<Vec<TernaryForm>> = (0..self.dim)
                .map(|r| {
                    (0..self.dim)
                        .map(|c| {
                            TernaryForm::from_coeffs(
                                1,
                                &[
                                    ((1, 0, 0), self.l[(r, c)]),
                                    ((0, 1, 0), self.m[(r, c)]),
                                    ((0, 0, 1), self.n[(r, c)]),
                                ],
                            )
                            .expect("degree-1 keys")
                        })
                        .collect()
                })
                .collect();
            symbolic_det(&entries)
        } else {
            self.det_form_interpolated()
        }
    }

    /// Evaluation-interpolation route: sample det numerically on a
    /// deterministic grid and solve for the coefficients.
    pub fn det_form_interpolated(&self) -> TernaryForm {
        let d = self.dim as u32;
        let monos = monomials(d);
        let n = monos.len();
        // Deterministic well-spread sample points on a complex torus.
        let pts: Vec<(C, C, C)> = (0..2 * n)
            .map(|t| {
                let th = t as f64;
                (
                    C::from_polar(1.0, 2.399963 * th),
                    C::from_polar(1.0, 1.734223 * th + 0.5),
                    C::from_polar(1.0, 0.912931 * th + 1.1),
                )
            })
            .collect();
        let mut a = DMatrix::<C>::zeros(pts.len(), n);
        let mut b = DMatrix::<C>::zeros(pts.len(), 1);
        for (r, &(x, y, z)) in pts.iter().enumerate() {
            for (cidx, &(i, j, k)) in monos.iter().enumerate() {
                a[(r, cidx)] = x.powu(i) * y.powu(j) * z.powu(k);
            }
            b[(r, 0)] = self.evaluate((x, y, z)).determinant();
        }
        // normal equations are adequate at these sizes
        let ah = a.adjoint();
        let coeffs = (&ah * &a)
            .lu()
            .solve(&(&ah * &b))
            .expect("interpolation system solvable");
        let mut out = TernaryForm::zero(d);
        for (cidx, &(i, j, _)) in monos.iter().enumerate() {
            out.coeffs[monomial_index(d, i, j)] = coeffs[(cidx, 0)];
        }
        out
    }
}

fn symbolic_det(m: &[Vec<TernaryForm>]) -> TernaryForm {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = TernaryForm::zero(n as u32);
    for col in 0..n {
        let minor: Vec<Vec<TernaryForm>> = (1..n)
            .map(|r| {
                (0..n)
                    .filter(|&c| c != col)
                    .map(|c| m[r][c].clone())
                    .collect()
            })
            .collect();
        let cof = m[0][col].mul(&symbolic_det(&minor));
        if col % 2 == 0 {
            acc = acc.add(&cof);
        } else {
            acc = acc.sub(&cof);
        }
    }
    acc
}

/// Convenience constructor for the Weierstrass cubic y^2 z - 4x^3 + g2 x z^2 + g3 z^3.
pub fn weierstrass_form(g2: C, g3: C) -> TernaryForm {
    TernaryForm::from_coeffs(
        3,
        &[
            ((0, 2, 1), C::new(1.0, 0.0)),
            ((3, 0, 0), C::new(-4.0, 0.0)),
            ((1, 0, 2), g2),
            ((0, 0, 3), g3),
        ],
    )
    .expect("weierstrass keys")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn fermat() -> TernaryForm {
        TernaryForm::from_coeffs(
            3,
            &[
                ((3, 0, 0), c(1.0, 0.0)),
                ((0, 3, 0), c(1.0, 0.0)),
                ((0, 0, 3), c(1.0, 0.0)),
            ],
        )
        .unwrap()
    }

    fn random_form(rng: &mut ChaCha8Rng, degree: u32) -> TernaryForm {
        let mut f = TernaryForm::zero(degree);
        for (i, j, k) in monomials(degree) {
            f.set_coeff(
                i,
                j,
                k,
                c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            );
        }
        f
    }

    fn random_transform(rng: &mut ChaCha8Rng) -> Transform3 {
        loop {
            let m = Matrix3::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let t = Transform3::new(m);
            if t.det().norm() > 0.1 {
                return t;
            }
        }
    }

    #[test]
    fn canonical_monomial_order_degree3() {
        assert_eq!(
            monomials(3),
            vec![
                (3, 0, 0),
                (2, 1, 0),
                (2, 0, 1),
                (1, 2, 0),
                (1, 1, 1),
                (1, 0, 2),
                (0, 3, 0),
                (0, 2, 1),
                (0, 1, 2),
                (0, 0, 3)
            ]
        );
        for (idx, (i, j, _)) in monomials(3).into_iter().enumerate() {
            assert_eq!(monomial_index(3, i, j), idx);
        }
    }

    #[test]
    fn from_coeffs_rejects_bad_key() {
        let err = TernaryForm::from_coeffs(3, &[((2, 0, 0), c(1.0, 0.0))]).unwrap_err();
        assert_eq!(err.code(), "KEY_DEGREE_MISMATCH");
    }

    #[test]
    fn empty_table_is_zero_form() {
        let f = TernaryForm::from_coeffs(3, &[]).unwrap();
        assert!(f.is_zero(0.0));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(fermat().evaluate((c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0))), c(3.0, 0.0));
        assert_eq!(fermat().evaluate((c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0))), c(0.0, 0.0));
        // y^2 z - 4x^3 + 4x z^2 at (1,0,1): -4 + 4 = 0
        let w = weierstrass_form(c(4.0, 0.0), c(0.0, 0.0));
        assert!(w.evaluate((c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0))).norm() < 1e-15);
    }

    #[test]
    fn partial_examples() {
        let w = weierstrass_form(c(4.0, 0.0), c(0.0, 0.0));
        // d/dy of y^2 z - 4x^3 + g2 x z^2 + g3 z^3 = 2yz
        let fy = w.partial(1);
        let expect = TernaryForm::from_coeffs(2, &[((0, 1, 1), c(2.0, 0.0))]).unwrap();
        assert!(fy.approx_eq(&expect, 1e-15));
        let fx = fermat().partial(0);
        let expect = TernaryForm::from_coeffs(2, &[((2, 0, 0), c(3.0, 0.0))]).unwrap();
        assert!(fx.approx_eq(&expect, 1e-15));
        let x3 = TernaryForm::from_coeffs(3, &[((3, 0, 0), c(1.0, 0.0))]).unwrap();
        assert!(x3.partial(2).is_zero(0.0));
    }

    #[test]
    fn euler_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_form(&mut rng, 3);
            let x = TernaryForm::from_coeffs(1, &[((1, 0, 0), c(1.0, 0.0))]).unwrap();
            let y = TernaryForm::from_coeffs(1, &[((0, 1, 0), c(1.0, 0.0))]).unwrap();
            let z = TernaryForm::from_coeffs(1, &[((0, 0, 1), c(1.0, 0.0))]).unwrap();
            let lhs = x
                .mul(&f.partial(0))
                .add(&y.mul(&f.partial(1)))
                .add(&z.mul(&f.partial(2)));
            assert!(lhs.approx_eq(&f.scale(c(3.0, 0.0)), 1e-12));
        }
    }

    #[test]
    fn transform_identity_and_scalar() {
        let f = fermat();
        assert!(f.apply_transform(&Transform3::identity()).approx_eq(&f, 1e-15));
        let mu = c(0.3, 0.7);
        let g = f.apply_transform(&Transform3::scalar(mu));
        assert!(g.approx_eq(&f.scale(mu * mu * mu), 1e-13));
    }

    #[test]
    fn transform_permutation_swaps_coefficients() {
        let w = weierstrass_form(c(2.0, 1.0), c(0.5, -0.25));
        let swap_xz = Transform3::from_rows([
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        let g = w.apply_transform(&swap_xz);
        // direct substitution oracle: coefficient of x^i y^j z^k moves to z^i y^j x^k
        for (i, j, k) in monomials(3) {
            assert!((g.coeff(i, j, k) - w.coeff(k, j, i)).norm() < 1e-15);
        }
    }

    #[test]
    fn transform_composition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = random_form(&mut rng, 3);
            let a = random_transform(&mut rng);
            let b = random_transform(&mut rng);
            let lhs = f.apply_transform(&a).apply_transform(&b);
            let rhs = f.apply_transform(&a.compose(&b));
            assert!(lhs.approx_eq(&rhs, 1e-10));
        }
    }

    #[test]
    fn hessian_examples() {
        let h = fermat().hessian_det();
        let expect = TernaryForm::from_coeffs(3, &[((1, 1, 1), c(216.0, 0.0))]).unwrap();
        assert!(h.approx_eq(&expect, 1e-13));

        let x3 = TernaryForm::from_coeffs(3, &[((3, 0, 0), c(1.0, 0.0))]).unwrap();
        assert!(x3.hessian_det().is_zero(1e-15));

        let q = TernaryForm::from_coeffs(
            2,
            &[
                ((2, 0, 0), c(1.0, 0.0)),
                ((0, 2, 0), c(1.0, 0.0)),
                ((0, 0, 2), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let expect = TernaryForm::from_coeffs(0, &[((0, 0, 0), c(8.0, 0.0))]).unwrap();
        assert!(q.hessian_det().approx_eq(&expect, 1e-15));
    }

    #[test]
    fn hessian_covariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let f = random_form(&mut rng, 3);
            let t = random_transform(&mut rng);
            let lhs = f.apply_transform(&t).hessian_det();
            let det = t.det();
            let rhs = f.hessian_det().apply_transform(&t).scale(det * det);
            assert!(lhs.approx_eq(&rhs, 1e-9));
        }
    }

    #[test]
    fn pencil_det_trivial() {
        let id = DMatrix::<C>::identity(3, 3);
        let zero = DMatrix::<C>::zeros(3, 3);
        let p = MatrixPencil::new(id.clone(), id.clone(), id.clone());
        // (x+y+z)^3
        let lin = TernaryForm::from_coeffs(
            1,
            &[
                ((1, 0, 0), c(1.0, 0.0)),
                ((0, 1, 0), c(1.0, 0.0)),
                ((0, 0, 1), c(1.0, 0.0)),
            ],
        )
        .unwrap();
        let expect = lin.mul(&lin).mul(&lin);
        assert!(p.det_form().approx_eq(&expect, 1e-13));

        let p = MatrixPencil::new(id, zero.clone(), zero);
        let expect = TernaryForm::from_coeffs(3, &[((3, 0, 0), c(1.0, 0.0))]).unwrap();
        assert!(p.det_form().approx_eq(&expect, 1e-13));
    }

    #[test]
    fn pencil_det_two_method_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let mat = |rng: &mut ChaCha8Rng| {
                DMatrix::<C>::from_fn(3, 3, |_, _| {
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                })
            };
            let p = MatrixPencil::new(mat(&mut rng), mat(&mut rng), mat(&mut rng));
            let sym = p.det_form();
            let interp = p.det_form_interpolated();
            assert!(sym.approx_eq(&interp, 1e-10));
            // and both agree with direct numeric evaluation at random points
            for _ in 0..10 {
                let pt = (
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
                let direct = p.evaluate(pt).determinant();
                assert!((sym.evaluate(pt) - direct).norm() < 1e-10 * (1.0 + direct.norm()));
            }
        }
    }

    #[test]
    fn serde_round_trip_canonical_order() {
        let w = weierstrass_form(c(4.0, 0.0), c(1.0, -2.0));
        let json = serde_json::to_string(&w).unwrap();
        let back: TernaryForm = serde_json::from_str(&json).unwrap();
        assert!(w.approx_eq(&back, 0.0));
        // canonical order: first listed exponent is (3,0,0)
        assert!(json.contains("\"exp\":[3,0,0]"));
    }
}
