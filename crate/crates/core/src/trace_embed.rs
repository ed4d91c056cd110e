//! The 4-dimensional representation on trace functionals.
//!
//! For `g ∈ SL(2)` let `f_g(h) = tr(g h)`. The span `V` of all `f_g` is
//! 4-dimensional and `SL(2)` acts on it by `g.f_h = f_{gh}`. Given group
//! elements `g_1, …, g_4` whose functionals form a basis, the coordinates of
//! `g.f_{g_i}` solve the linear system
//! `tr(g g_i g_k) = Σ_j a_ij tr(g_j g_k)` with the trace Gram matrix on the
//! right. [`Rep4::alpha`] returns the matrix whose column `i` holds the
//! coordinates of `g.f_{g_i}`, so that `α(gh) = α(g)α(h)`.

use crate::arith::{rank, FieldElement, Mat2, Mat4, NumberField};
use std::collections::HashMap;
use std::sync::RwLock;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("determinant is not 1")]
    DetNotOne,
    #[error("trace functionals span only a rank-{rank} space; the input looks Zariski-non-dense")]
    RankDeficient { rank: usize },
}

/// `true` iff the characteristic polynomial `x² − tr(g)x + 1` has
/// algebraic-integer coefficients, i.e. iff `tr g` is an algebraic integer.
pub fn integral_characteristic(g: &Mat2) -> Result<bool, EmbedError> {
    if !g.det().is_one() {
        return Err(EmbedError::DetNotOne);
    }
    Ok(g.trace().is_algebraic_integer())
}

fn flatten(g: &Mat2) -> Vec<FieldElement> {
    g.entries().cloned().collect()
}

/// Four group elements whose trace functionals are a basis of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceBasis {
    elements: [Mat2; 4],
    gram: Mat4,
    gram_inv: Mat4,
}

impl TraceBasis {
    pub fn new(elements: [Mat2; 4]) -> Result<Self, EmbedError> {
        let gram = Mat4::from_fn(|i, k| (&elements[i] * &elements[k]).trace());
        let gram_inv = gram.inverse().map_err(|_| EmbedError::RankDeficient {
            rank: rank(&elements.iter().map(flatten).collect::<Vec<_>>()),
        })?;
        Ok(TraceBasis {
            elements,
            gram,
            gram_inv,
        })
    }

    pub fn elements(&self) -> &[Mat2; 4] {
        &self.elements
    }

    /// `gram[i][k] = tr(g_i g_k)`.
    pub fn gram(&self) -> &Mat4 {
        &self.gram
    }

    pub fn field(&self) -> &NumberField {
        self.elements[0].field()
    }
}

/// Greedy basis selection over a stream of group elements: an element is
/// kept when its functional is independent of those already kept. Since the
/// trace pairing on 2×2 matrices is nondegenerate, `f_g` are independent
/// exactly when the matrices are.
pub fn select_basis(words: impl IntoIterator<Item = Mat2>) -> Result<TraceBasis, EmbedError> {
    let mut kept: Vec<Mat2> = Vec::with_capacity(4);
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(4);
    for w in words {
        rows.push(flatten(&w));
        if rank(&rows) > kept.len() {
            kept.push(w);
            if kept.len() == 4 {
                let elements: [Mat2; 4] = kept.try_into().expect("four elements");
                return TraceBasis::new(elements);
            }
        } else {
            rows.pop();
        }
    }
    Err(EmbedError::RankDeficient { rank: kept.len() })
}

/// The representation `α` with an append-only cache keyed by exact matrix.
#[derive(Debug)]
pub struct Rep4 {
    basis: TraceBasis,
    cache: RwLock<HashMap<Mat2, Mat4>>,
}

impl Rep4 {
    pub fn new(basis: TraceBasis) -> Self {
        Rep4 {
            basis,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &TraceBasis {
        &self.basis
    }

    pub fn alpha(&self, g: &Mat2) -> Mat4 {
        if let Some(m) = self.cache.read().expect("cache lock").get(g) {
            return m.clone();
        }
        let m = alpha(g, &self.basis);
        self.cache
            .write()
            .expect("cache lock")
            .entry(g.clone())
            .or_insert(m)
            .clone()
    }

    pub fn cached(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }
}

/// `α(g)` in the column convention; see the module docs.
pub fn alpha(g: &Mat2, basis: &TraceBasis) -> Mat4 {
    let els = &basis.elements;
    let ggi: Vec<Mat2> = els.iter().map(|gi| g * gi).collect();
    // rhs[k][i] = tr(g g_i g_k)
    let rhs_t = Mat4::from_fn(|k, i| (&ggi[i] * &els[k]).trace());
    // a · gram = rhs with a[i][j] the row-convention coefficients; gram is
    // symmetric, so the column-convention matrix aᵀ equals gram⁻¹ · rhsᵀ.
    &basis.gram_inv * &rhs_t
}

/// Whether `g.f_1 = f_1` on every elementary matrix `E_ij`, i.e.
/// `tr(g E_ij) = tr(E_ij)`. Reading off entries shows this forces `g = I`.
pub fn fixes_identity_functional(g: &Mat2) -> bool {
    let field = g.field();
    (0..2).all(|i| {
        (0..2).all(|j| {
            let e = Mat2::from_fn(|r, c| if (r, c) == (i, j) { field.one() } else { field.zero() });
            (g * &e).trace() == e.trace()
        })
    })
}

fn poly_square(p: &[FieldElement]) -> Vec<FieldElement> {
    let field = p[0].field();
    let mut out = vec![field.zero(); 2 * p.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in p.iter().enumerate() {
            out[i + j] = &out[i + j] + &(a * b);
        }
    }
    out
}

/// `char(α(g)) = char(g)²`.
pub fn charpoly_identity_holds(g: &Mat2, a: &Mat4) -> bool {
    a.charpoly() == poly_square(&g.charpoly())
}

/// Outcome of [`verify_embedding`]; indices refer to the sample list.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EmbeddingReport {
    pub samples: usize,
    pub pairs_checked: usize,
    pub homomorphism_failures: Vec<usize>,
    pub inverse_failures: Vec<usize>,
    pub charpoly_failures: Vec<usize>,
    pub determinant_failures: Vec<usize>,
    /// Samples `g ≠ I` with `α(g) = I`.
    pub kernel_witnesses: Vec<usize>,
    /// Samples whose `α(g)` has an entry that is not an algebraic integer.
    pub non_integral: Vec<usize>,
}

impl EmbeddingReport {
    /// Every exact check passed. Integrality is reported separately.
    pub fn passed(&self) -> bool {
        self.homomorphism_failures.is_empty()
            && self.inverse_failures.is_empty()
            && self.charpoly_failures.is_empty()
            && self.determinant_failures.is_empty()
            && self.kernel_witnesses.is_empty()
    }
}

/// Checks `α` on the samples: homomorphism on consecutive pairs
/// `(s_i, s_{i+1})`, `α(g⁻¹) = α(g)⁻¹`, the characteristic polynomial
/// identity, `det α(g) = 1`, and that `α(g) = I` only for `g = I`.
pub fn verify_embedding(rep: &Rep4, samples: &[Mat2]) -> EmbeddingReport {
    let mut report = EmbeddingReport {
        samples: samples.len(),
        pairs_checked: samples.len().saturating_sub(1),
        ..Default::default()
    };
    for (i, g) in samples.iter().enumerate() {
        let a = rep.alpha(g);
        if let Some(h) = samples.get(i + 1) {
            if rep.alpha(&(g * h)) != &a * &rep.alpha(h) {
                report.homomorphism_failures.push(i);
            }
        }
        let inv = g.inverse().expect("unimodular");
        if a.inverse().ok() != Some(rep.alpha(&inv)) {
            report.inverse_failures.push(i);
        }
        if !charpoly_identity_holds(g, &a) {
            report.charpoly_failures.push(i);
        }
        if !a.det().is_one() {
            report.determinant_failures.push(i);
        }
        if a.is_identity() && !(fixes_identity_functional(g) && g.is_identity()) {
            report.kernel_witnesses.push(i);
        }
        if !a.entries().all(FieldElement::is_algebraic_integer) {
            report.non_integral.push(i);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, NumberField};
    use crate::proper::word_ball;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn s() -> Mat2 {
        Mat2::from_ints(&q(), [[0, -1], [1, 0]])
    }

    fn t() -> Mat2 {
        Mat2::from_ints(&q(), [[1, 1], [0, 1]])
    }

    #[test]
    fn integral_characteristic_examples() {
        assert_eq!(integral_characteristic(&t()), Ok(true));
        let k = NumberField::new(&[-5, 0, 1]).unwrap();
        let half = k.from_rational(ratio(1, 2));
        let phi = k.element(vec![ratio(1, 2), ratio(1, 2)]);
        // [[t, -1], [1, 0]] has trace t and determinant 1
        let g = Mat2::new(phi.clone(), k.from_int(-1), k.one(), k.zero());
        assert!(g.det().is_one());
        assert_eq!(integral_characteristic(&g), Ok(true));
        let g = Mat2::new(half.clone(), k.from_int(-1), k.one(), k.zero());
        assert_eq!(integral_characteristic(&g), Ok(false));
        let bad = Mat2::from_ints(&q(), [[2, 0], [0, 1]]);
        assert_eq!(integral_characteristic(&bad), Err(EmbedError::DetNotOne));
    }

    #[test]
    fn basis_from_sl2z_ball() {
        let ball = word_ball(&q(), &[s(), t()], 3);
        let basis = select_basis(ball).unwrap();
        let expected = [Mat2::identity(&q()), s(), t(), &s() * &t()];
        assert_eq!(basis.elements(), &expected);
        assert!(!basis.gram().det().is_zero());
    }

    #[test]
    fn minus_identity_rejected_and_diagonal_stream_deficient() {
        let id = Mat2::identity(&q());
        let minus = id.scale(&q().from_int(-1));
        let diag = |a: i64| Mat2::torus(&q().from_int(a));
        let err = select_basis([id.clone(), minus, diag(2), diag(3), diag(5)]).unwrap_err();
        assert_eq!(err, EmbedError::RankDeficient { rank: 2 });
    }

    #[test]
    fn alpha_of_identity_and_traces() {
        let basis = select_basis(word_ball(&q(), &[s(), t()], 3)).unwrap();
        let rep = Rep4::new(basis);
        assert!(rep.alpha(&Mat2::identity(&q())).is_identity());
        let g = &(&s() * &t()) * &t();
        let a = rep.alpha(&g);
        assert_eq!(a.trace(), &g.trace() + &g.trace());
        assert!(charpoly_identity_holds(&g, &a));
        assert_eq!(rep.alpha(&(&g * &s())), &a * &rep.alpha(&s()));
        assert_eq!(rep.cached(), 4);
    }

    #[test]
    fn elementary_probe() {
        assert!(fixes_identity_functional(&Mat2::identity(&q())));
        assert!(!fixes_identity_functional(&t()));
        assert!(!fixes_identity_functional(&Mat2::identity(&q()).scale(&q().from_int(-1))));
    }

    #[test]
    fn verify_on_short_words() {
        let basis = select_basis(word_ball(&q(), &[s(), t()], 3)).unwrap();
        let rep = Rep4::new(basis);
        let samples = word_ball(&q(), &[s(), t()], 3);
        let report = verify_embedding(&rep, &samples);
        assert!(report.passed(), "{report:?}");
    }
}
