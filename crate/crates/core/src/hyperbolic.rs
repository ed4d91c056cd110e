//! The archimedean factor: upper half-space `H³ = {(z, t) : z ∈ C, t > 0}`,
//! with `H²` as the slice `z ∈ R`, acted on by `SL(2, C)` through Möbius
//! transformations.

use crate::arith::{FieldElement, Mat2, NumberField};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HypError {
    #[error("degenerate point: height t = {0} must be positive and finite")]
    DegenerateInput(f64),
    #[error("determinant {0} is not 1 within 1e-9")]
    DeterminantNotOne(Complex64),
    #[error("root index {index} out of range for a field of degree {degree}")]
    RootIndexOutOfRange { index: usize, degree: usize },
    #[error("root refinement did not converge (residual {0:e})")]
    RootRefinementFailed(f64),
}

/// Complex 2×2 matrix, row-major.
pub type CMat2 = [[Complex64; 2]; 2];

/// The ring map `Q(γ) → C` sending `γ` to a chosen complex root.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchimedeanEmbedding {
    field: NumberField,
    root: Complex64,
    root_index: usize,
}

fn eval_poly(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_derivative(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, (k, &c)| acc * z + c * k as f64)
}

/// All complex roots of a monic polynomial: Weierstrass (Durand–Kerner)
/// iteration followed by Newton polishing. Real roots come first in
/// decreasing order, then complex roots by decreasing real and imaginary part.
pub fn complex_roots(monic: &[i64]) -> Vec<Complex64> {
    let coeffs: Vec<f64> = monic.iter().map(|&c| c as f64).collect();
    let n = coeffs.len() - 1;
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..1000 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval_poly(&coeffs, roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..5 {
            let d = eval_derivative(&coeffs, *r);
            if d.norm() == 0.0 {
                break;
            }
            *r -= eval_poly(&coeffs, *r) / d;
        }
        if r.im.abs() < 1e-9 {
            r.im = 0.0;
        }
    }
    roots.sort_by(|a, b| {
        let real = |z: &Complex64| z.im == 0.0;
        real(b)
            .cmp(&real(a))
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
    roots
}

impl ArchimedeanEmbedding {
    pub fn new(field: &NumberField, root_index: usize) -> Result<Self, HypError> {
        let degree = field.degree();
        let roots = complex_roots(field.minpoly());
        let root = *roots
            .get(root_index)
            .ok_or(HypError::RootIndexOutOfRange { index: root_index, degree })?;
        let coeffs: Vec<f64> = field.minpoly().iter().map(|&c| c as f64).collect();
        let residual = eval_poly(&coeffs, root).norm();
        if residual >= 1e-12 {
            return Err(HypError::RootRefinementFailed(residual));
        }
        Ok(ArchimedeanEmbedding {
            field: field.clone(),
            root,
            root_index,
        })
    }

    pub fn root(&self) -> Complex64 {
        self.root
    }

    pub fn root_index(&self) -> usize {
        self.root_index
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// `Σ q_l · root^l`.
    pub fn embed(&self, e: &FieldElement) -> Complex64 {
        e.coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, q| {
                acc * self.root + q.to_f64().expect("finite rational")
            })
    }

    pub fn embed_matrix(&self, g: &Mat2) -> CMat2 {
        let r = g.rows();
        [
            [self.embed(&r[0][0]), self.embed(&r[0][1])],
            [self.embed(&r[1][0]), self.embed(&r[1][1])],
        ]
    }
}

/// A point of upper half-space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HPoint {
    pub z: Complex64,
    pub t: f64,
}

impl HPoint {
    pub fn new(z: Complex64, t: f64) -> Result<Self, HypError> {
        if !(t > 0.0 && t.is_finite() && z.re.is_finite() && z.im.is_finite()) {
            return Err(HypError::DegenerateInput(t));
        }
        Ok(HPoint { z, t })
    }

    /// The point `(0, 1)`; `i` in the half-plane picture.
    pub fn basepoint() -> Self {
        HPoint {
            z: Complex64::new(0.0, 0.0),
            t: 1.0,
        }
    }
}

pub fn cdet(g: &CMat2) -> Complex64 {
    g[0][0] * g[1][1] - g[0][1] * g[1][0]
}

/// Möbius action on upper half-space. With `D = |cz+d|² + |c|²t²`:
/// `z' = ((az+b)·conj(cz+d) + a·conj(c)·t²)/D`, `t' = t/D`.
pub fn mobius_act(g: &CMat2, p: &HPoint) -> Result<HPoint, HypError> {
    if !(p.t > 0.0) {
        return Err(HypError::DegenerateInput(p.t));
    }
    let det = cdet(g);
    if (det - 1.0).norm() > 1e-9 {
        return Err(HypError::DeterminantNotOne(det));
    }
    let [[a, b], [c, d]] = *g;
    let czd = c * p.z + d;
    let t2 = p.t * p.t;
    let denom = czd.norm_sqr() + c.norm_sqr() * t2;
    let z = ((a * p.z + b) * czd.conj() + a * c.conj() * t2) / denom;
    HPoint::new(z, p.t / denom)
}

/// `arccosh(1 + (|z₁−z₂|² + (t₁−t₂)²)/(2 t₁ t₂))`.
pub fn hyp_distance(p: &HPoint, q: &HPoint) -> f64 {
    let num = (p.z - q.z).norm_sqr() + (p.t - q.t).powi(2);
    (1.0 + num / (2.0 * p.t * q.t)).acosh()
}

/// Displacement of the basepoint `(0, 1)`: `arccosh(Σ|g_ij|² / 2)`.
pub fn displacement_of(g: &CMat2) -> f64 {
    let s: f64 = g.iter().flatten().map(|x| x.norm_sqr()).sum();
    (s / 2.0).max(1.0).acosh()
}

/// Basepoint displacement of an exact matrix under an embedding.
pub fn displacement_hyp(g: &Mat2, emb: &ArchimedeanEmbedding) -> f64 {
    displacement_of(&emb.embed_matrix(g))
}
