//! Flex points of a smooth plane cubic and the linear coordinate change to
//! Weierstrass form y^2 z - 4x^3 + g2 x z^2 + g3 z^3, together with the
//! lambda-coefficients of the affine parametrization
//! x = l11 P + l12 P' + l13, y = l21 P + l22 P' + l23.

use crate::error::{Error, Result};
use crate::forms::{TernaryForm, Transform3};
use crate::macaulay::discriminant;
use crate::roots::polynomial_roots;
use crate::C;
use nalgebra::{DMatrix, Matrix3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct FlexPoint {
    /// projective coordinates, normalized to unit max modulus
    pub coords: [C; 3],
    /// tangent line coefficients (the gradient at the flex), unit max modulus
    pub tangent: [C; 3],
}

#[derive(Debug, Clone)]
pub struct ReductionData {
    /// coordinate change with f o M = Weierstrass form
    pub m: Transform3,
    pub g2: C,
    pub g3: C,
    pub det_m: C,
    pub flex: FlexPoint,
}

fn normalize_triple(p: [C; 3]) -> [C; 3] {
    let max = p.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let pivot = p
        .iter()
        .find(|c| c.norm() >= max * (1.0 - 1e-12))
        .copied()
        .unwrap();
    [p[0] / pivot, p[1] / pivot, p[2] / pivot]
}

fn cross(a: [C; 3], b: [C; 3]) -> [C; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// f(x, 1, z) as ascending coefficients in z.
fn poly_in_z(f: &TernaryForm, x: C) -> Vec<C> {
    let d = f.degree() as usize;
    let mut acc = vec![C::new(0.0, 0.0); d + 1];
    for (&(i, j, k), &c) in crate::forms::monomials(f.degree()).iter().zip(f.coeffs()) {
        let _ = j;
        acc[k as usize] += c * x.powu(i);
    }
    acc
}

/// Sylvester resultant of two formal cubics in z (6x6 determinant).
fn sylvester33(a: &[C], b: &[C]) -> C {
    let z = C::new(0.0, 0.0);
    let mut m = DMatrix::<C>::from_element(6, 6, z);
    for r in 0..3 {
        for (s, &c) in a.iter().rev().enumerate() {
            m[(r, r + s)] = c;
        }
        for (s, &c) in b.iter().rev().enumerate() {
            m[(r + 3, r + s)] = c;
        }
    }
    m.lu().determinant()
}

/// Common affine points of g and hg on the chart y = 1, eliminating z.
/// Returns None when the chart is degenerate or does not exhibit all 9
/// points cleanly.
fn flexes_chart(g: &TernaryForm, hg: &TernaryForm) -> Option<Vec<[C; 3]>> {
    let scale_g = g.max_coeff();
    let scale_h = hg.max_coeff();
    if g.coeff(0, 0, 3).norm() < 1e-9 * scale_g
        || hg.coeff(0, 0, 3).norm() < 1e-9 * scale_h
    {
        return None; // z-degree drop in this chart
    }
    // eliminant R(x) = Res_z(g(x,1,z), hg(x,1,z)) has degree 9; sample on a
    // circle and invert the DFT
    let n = 12usize;
    let r = 1.29;
    let mut samples = Vec::with_capacity(n);
    for k in 0..n {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let x = C::new(0.0, ang).exp() * r;
        samples.push(sylvester33(&poly_in_z(g, x), &poly_in_z(hg, x)));
    }
    let mut coeffs = vec![C::new(0.0, 0.0); n];
    for (j, cj) in coeffs.iter_mut().enumerate() {
        let mut acc = C::new(0.0, 0.0);
        for (k, s) in samples.iter().enumerate() {
            let ang = -2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64;
            acc += s * C::new(0.0, ang).exp();
        }
        *cj = acc / (n as f64 * r.powi(j as i32));
    }
    let max = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let deg = coeffs.iter().rposition(|c| c.norm() > 1e-8 * max)?;
    if deg != 9 {
        return None;
    }
    coeffs.truncate(10);
    let xs = polynomial_roots(&coeffs);
    if xs.len() != 9 {
        return None;
    }
    let (gx, gz) = (g.partial(0), g.partial(2));
    let (hx, hz) = (hg.partial(0), hg.partial(2));
    let one = C::new(1.0, 0.0);
    let mut points = Vec::with_capacity(9);
    for &x0 in &xs {
        let zs = polynomial_roots(&poly_in_z(g, x0));
        let z0 = zs.into_iter().min_by(|u, v| {
            let ru = hg.evaluate((x0, one, *u)).norm();
            let rv = hg.evaluate((x0, one, *v)).norm();
            ru.partial_cmp(&rv).unwrap()
        })?;
        // Newton on the 2x2 affine system (g, hg) in (x, z)
        let (mut x, mut z) = (x0, z0);
        for _ in 0..6 {
            let p = (x, one, z);
            let (v1, v2) = (g.evaluate(p), hg.evaluate(p));
            let (a, b) = (gx.evaluate(p), gz.evaluate(p));
            let (c, d) = (hx.evaluate(p), hz.evaluate(p));
            let det = a * d - b * c;
            if det.norm() < 1e-14 {
                return None;
            }
            x -= (v1 * d - v2 * b) / det;
            z -= (a * v2 - c * v1) / det;
        }
        let p = [x, one, z];
        let m = p.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
        let ok = g.evaluate((x, one, z)).norm() <= 1e-8 * scale_g * m.powi(3)
            && hg.evaluate((x, one, z)).norm() <= 1e-8 * scale_h * m.powi(3);
        if !ok {
            return None;
        }
        points.push(p);
    }
    // the 9 flexes of a smooth cubic are distinct
    let norm: Vec<[C; 3]> = points.iter().map(|&p| normalize_triple(p)).collect();
    for i in 0..9 {
        for j in 0..i {
            let d: f64 = (0..3).map(|k| (norm[i][k] - norm[j][k]).norm()).sum();
            if d < 1e-6 {
                return None;
            }
        }
    }
    Some(points)
}

fn singularity_scale(f: &TernaryForm) -> f64 {
    f.max_coeff().powi(12)
}

fn sort_key(p: &[C; 3]) -> [f64; 6] {
    [p[0].im, p[1].im, p[2].im, p[0].re, p[1].re, p[2].re]
}

/// The 9 flexes of a nonsingular cubic: common zeros of f and its Hessian
/// determinant, sorted by the deterministic selection order (descending
/// Im-lex, then Re-lex, of normalized coordinates).
pub fn find_flexes(f: &TernaryForm) -> Result<Vec<FlexPoint>> {
    if f.degree() != 3 {
        return Err(Error::KeyDegreeMismatch(f.degree(), 3, 0, 0));
    }
    let disc = discriminant(f)?;
    // guard against genuinely singular input only; lopsided coefficient
    // vectors can push |disc| / max^12 well below 1e-8 on smooth curves
    if disc.norm() < 1e-12 * singularity_scale(f) {
        return Err(Error::SingularCurve);
    }
    let h = f.hessian_det();
    let mut attempts: Vec<Transform3> = Vec::new();
    attempts.push(Transform3::identity());
    // cyclic variable rotations exercise the other two charts
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    attempts.push(Transform3::from_rows([
        [zero, one, zero],
        [zero, zero, one],
        [one, zero, zero],
    ]));
    attempts.push(Transform3::from_rows([
        [zero, zero, one],
        [one, zero, zero],
        [zero, one, zero],
    ]));
    let mut rng = ChaCha8Rng::seed_from_u64(0x666c_6578);
    for _ in 0..8 {
        let mut rows = [[zero; 3]; 3];
        for row in rows.iter_mut() {
            for e in row.iter_mut() {
                *e = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let t = Transform3::from_rows(rows);
        if t.det().norm() > 0.05 {
            attempts.push(t);
        }
    }
    for t in &attempts {
        let g = f.apply_transform(t);
        let hg = g.hessian_det();
        let Some(points) = flexes_chart(&g, &hg) else {
            continue;
        };
        let grads = [f.partial(0), f.partial(1), f.partial(2)];
        let mut flexes = Vec::with_capacity(9);
        let mut good = true;
        for p in points {
            let (qx, qy, qz) = t.apply_point((p[0], p[1], p[2]));
            let q = normalize_triple([qx, qy, qz]);
            let qt = (q[0], q[1], q[2]);
            if f.evaluate(qt).norm() > 1e-8 * f.max_coeff()
                || h.evaluate(qt).norm() > 1e-8 * h.max_coeff()
            {
                good = false;
                break;
            }
            let grad = normalize_triple([
                grads[0].evaluate(qt),
                grads[1].evaluate(qt),
                grads[2].evaluate(qt),
            ]);
            flexes.push(FlexPoint {
                coords: q,
                tangent: grad,
            });
        }
        if !good {
            continue;
        }
        flexes.sort_by(|a, b| {
            sort_key(&b.coords)
                .partial_cmp(&sort_key(&a.coords))
                .unwrap()
        });
        return Ok(flexes);
    }
    Err(Error::FlexExtractionFailed(
        "elimination degenerate in all chart choices".into(),
    ))
}

/// Projective frame sending (0:1:0) to the flex and pulling its tangent
/// back to {z = 0}. Built so that it is the identity when the flex is
/// already (0:1:0) with tangent z = 0.
pub fn flex_frame(flex: &FlexPoint) -> Result<Transform3> {
    let p = flex.coords;
    let l = flex.tangent;
    let c1 = normalize_triple(cross(p, l));
    let c3 = normalize_triple([l[0].conj(), l[1].conj(), l[2].conj()]);
    let m = Matrix3::from_columns(&[
        nalgebra::Vector3::new(c1[0], c1[1], c1[2]),
        nalgebra::Vector3::new(p[0], p[1], p[2]),
        nalgebra::Vector3::new(c3[0], c3[1], c3[2]),
    ]);
    let t = Transform3::from_rows([
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ]);
    if t.det().norm() < 1e-10 {
        return Err(Error::FlexExtractionFailed("degenerate frame".into()));
    }
    Ok(t)
}

/// Reduce f, with the given flex, to the Weierstrass form. The composed M
/// satisfies f o M = y^2 z - 4 x^3 + g2 x z^2 + g3 z^3 exactly up to
/// floating-point error.
pub fn to_weierstrass_with_flex(f: &TernaryForm, flex: &FlexPoint) -> Result<ReductionData> {
    let m0 = flex_frame(flex)?;
    let g = f.apply_transform(&m0);
    let scale = g.max_coeff();
    let a = g.coeff(3, 0, 0); // x^3
    let b = g.coeff(0, 2, 1); // y^2 z
    if a.norm() < 1e-10 * scale {
        return Err(Error::FlexExtractionFailed("step shear: x^3 vanishes".into()));
    }
    if b.norm() < 1e-10 * scale {
        return Err(Error::FlexExtractionFailed("step shear: y^2 z vanishes".into()));
    }
    let c = g.coeff(1, 1, 1); // xyz
    let d = g.coeff(0, 1, 2); // yz^2
    let e = g.coeff(2, 0, 1); // x^2 z
    let hh = g.coeff(1, 0, 2); // xz^2
    let kk = g.coeff(0, 0, 3); // z^3
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    // (ii) shear in y killing xyz and yz^2
    let shear = Transform3::from_rows([
        [one, zero, zero],
        [-c / (b * 2.0), one, -d / (b * 2.0)],
        [zero, zero, one],
    ]);
    let e1 = e - c * c / (b * 4.0);
    let h1 = hh - c * d / (b * 2.0);
    let k1 = kk - d * d / (b * 4.0);
    // (iii) translate x killing x^2 z
    let t = -e1 / (a * 3.0);
    let trans = Transform3::from_rows([
        [one, zero, t],
        [zero, one, zero],
        [zero, zero, one],
    ]);
    // (iv) scale to coefficients (-4, 1) on (x^3, y^2 z)
    let u = crate::roots::cbrt(-C::new(4.0, 0.0) / a);
    let v = one / b.sqrt();
    let diag = Transform3::from_rows([
        [u, zero, zero],
        [zero, v, zero],
        [zero, zero, one],
    ]);
    let m = m0.compose(&shear).compose(&trans).compose(&diag);
    let _ = (h1, k1, t);
    // read g2, g3 off the fully transformed form (self-checking)
    let w = f.apply_transform(&m);
    let wscale = w.max_coeff();
    if (w.coeff(0, 2, 1) - one).norm() > 1e-8 || (w.coeff(3, 0, 0) + C::new(4.0, 0.0)).norm() > 1e-8 * wscale {
        return Err(Error::Inconsistency(
            "reduction did not reach Weierstrass shape".into(),
        ));
    }
    for &(i, j) in &[(2u32, 0u32), (1, 1), (2, 1), (1, 2), (0, 3), (0, 1)] {
        if w.coeff(i, j, 3 - i - j).norm() > 1e-8 * wscale {
            return Err(Error::Inconsistency(
                "residual non-Weierstrass coefficient after reduction".into(),
            ));
        }
    }
    Ok(ReductionData {
        det_m: m.det(),
        g2: w.coeff(1, 0, 2),
        g3: w.coeff(0, 0, 3),
        m,
        flex: *flex,
    })
}

/// Reduction at the deterministically chosen flex.
pub fn to_weierstrass(f: &TernaryForm) -> Result<ReductionData> {
    let flexes = find_flexes(f)?;
    let mut last = None;
    for flex in &flexes {
        match to_weierstrass_with_flex(f, flex) {
            Ok(rd) => return Ok(rd),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::FlexExtractionFailed("no flexes".into())))
}

/// lambda_ij = M_ij / m33 for i in {1,2}; requires the reduction to fix the
/// line at infinity (third row (0, 0, m33)).
pub fn lambda_coeffs(rd: &ReductionData) -> Result<[C; 6]> {
    let m = &rd.m.entries;
    let m33 = m[(2, 2)];
    let off = m[(2, 0)].norm().max(m[(2, 1)].norm());
    if m33.norm() < 1e-12 || off > 1e-10 * m33.norm() {
        return Err(Error::LineAtInfinityMoved);
    }
    Ok([
        m[(0, 0)] / m33,
        m[(0, 1)] / m33,
        m[(0, 2)] / m33,
        m[(1, 0)] / m33,
        m[(1, 1)] / m33,
        m[(1, 2)] / m33,
    ])
}

/// Split the reduction at the chosen flex into a preliminary frame T (which
/// may move the line at infinity) and an affine-compatible reduction of
/// psi = f o T, so that lambda_coeffs is always available on the second
/// factor. Discriminants transfer by Delta_f = Delta_psi / det(T)^12.
pub fn affine_reduction(
    f: &TernaryForm,
    flex: &FlexPoint,
) -> Result<(Transform3, TernaryForm, ReductionData)> {
    let frame = flex_frame(flex)?;
    let psi = f.apply_transform(&frame);
    // in psi-coordinates the flex sits at (0:1:0) with tangent z = 0
    let canonical = FlexPoint {
        coords: [C::new(0.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0)],
        tangent: [C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(1.0, 0.0)],
    };
    let rd = to_weierstrass_with_flex(&psi, &canonical)?;
    lambda_coeffs(&rd)?;
    Ok((frame, psi, rd))
}
