//! Complex polynomial root finding: Aberth-Ehrlich simultaneous iteration
//! for general degrees, Cardano with Newton polish for depressed cubics.

use crate::C;

/// Evaluate p and p' at z; coeffs ascending.
fn horner2(coeffs: &[C], z: C) -> (C, C) {
    let mut p = C::new(0.0, 0.0);
    let mut dp = C::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of the polynomial with ascending coefficients `coeffs`.
/// Leading coefficients below `1e-13 * max|c|` are trimmed; callers that
/// care about roots at infinity should compare the returned count with the
/// nominal degree.
pub fn polynomial_roots(coeffs: &[C]) -> Vec<C> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Vec::new();
    }
    let mut cs: Vec<C> = coeffs.to_vec();
    while let Some(last) = cs.last() {
        if last.norm() <= 1e-13 * scale && cs.len() > 1 {
            cs.pop();
        } else {
            break;
        }
    }
    let n = cs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // strip roots at zero
    let mut zeros = 0usize;
    while zeros < n && cs[zeros].norm() <= 1e-300 {
        zeros += 1;
    }
    let mut roots = vec![C::new(0.0, 0.0); zeros];
    let cs = &cs[zeros..];
    let n = cs.len() - 1;
    if n == 0 {
        return roots;
    }
    if n == 1 {
        roots.push(-cs[0] / cs[1]);
        return roots;
    }
    if n == 2 {
        let (a, b, c) = (cs[2], cs[1], cs[0]);
        let disc = (b * b - a * c * 4.0).sqrt();
        // stable quadratic: pick the sign that avoids cancellation
        let q = if (b + disc).norm() > (b - disc).norm() {
            -(b + disc) * 0.5
        } else {
            -(b - disc) * 0.5
        };
        roots.push(q / a);
        roots.push(c / q);
        return roots;
    }

    // Aberth-Ehrlich from a perturbed circle of radius given by the Cauchy bound
    let lead = cs[n];
    let radius = 1.0
        + cs[..n]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let mut zs: Vec<C> = (0..n)
        .map(|k| {
            C::from_polar(
                radius * (0.5 + 0.5 * (k as f64 + 1.0) / n as f64),
                2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.41,
            )
        })
        .collect();
    for _ in 0..300 {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner2(cs, zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = if dp.norm() > 0.0 { p / dp } else { C::new(1e-8, 0.0) };
            let mut s = C::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = zs[i] - zs[j];
                    if d.norm() > 1e-300 {
                        s += C::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = C::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
            zs[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + zs[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // final Newton polish
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner2(cs, *z);
            if dp.norm() > 0.0 {
                *z -= p / dp;
            }
        }
    }
    roots.extend(zs);
    roots
}

/// Branch-stable complex cube root close to the principal branch.
pub fn cbrt(z: C) -> C {
    if z.norm() == 0.0 {
        return C::new(0.0, 0.0);
    }
    C::from_polar(z.norm().cbrt(), z.arg() / 3.0)
}

/// Roots of the depressed cubic t^3 + p t + q by Cardano, each polished by
/// one Newton step.
pub fn depressed_cubic_roots(p: C, q: C) -> [C; 3] {
    let disc = (q * q * 0.25 + p * p * p / 27.0).sqrt();
    // pick the branch that keeps |u| large to avoid cancellation
    let c1 = -q * 0.5 + disc;
    let c2 = -q * 0.5 - disc;
    let u0 = if c1.norm() >= c2.norm() { cbrt(c1) } else { cbrt(c2) };
    let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    let mut roots = [C::new(0.0, 0.0); 3];
    let mut u = u0;
    for r in roots.iter_mut() {
        *r = if u.norm() > 1e-300 { u - p / (u * 3.0) } else { C::new(0.0, 0.0) };
        u *= omega;
    }
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let f = *r * *r * *r + p * *r + q;
            let df = *r * *r * 3.0 + p;
            if df.norm() > 1e-300 {
                *r -= f / df;
            }
        }
    }
    roots
}
