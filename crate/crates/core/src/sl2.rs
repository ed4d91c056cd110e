//! Computations in `sl(2)` and `SL(2)` behind the classification of
//! Zariski-non-dense subgroups: brackets, the normal form `[x1, x2] = x1` of a
//! 2-dimensional subalgebra, its conjugation to upper-triangular form,
//! normalizers of the torus and of the unipotent group, and an explicit
//! factorization showing that the upper-triangular group `H` is maximal.
//!
//! Everything stays in the field of the input: the normalized `x2` always has
//! eigenvalues `±1/2`, so no extension is needed for eigenvectors.

use crate::arith::{kernel, solve, ArithError, FieldElement, Mat2, Rational};
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("matrix has nonzero trace")]
    NotTraceless,
    #[error("basis elements are linearly dependent")]
    IndependenceFailure,
    #[error("bracket {bracket:?} lies outside the span of the basis")]
    NotASubalgebra { bracket: Mat2 },
    #[error("commuting pair: {0}")]
    Commutative(ScalarRelation),
    #[error("determinant is not 1")]
    DetNotOne,
    #[error("g lies in the upper-triangular group (g21 = 0)")]
    GIsInH,
}

/// `multiple = λ · base`, the relation forced on any commuting pair in `sl(2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarRelation {
    /// Index (0 or 1) of the input that is the multiple.
    pub multiple: usize,
    pub lambda: FieldElement,
}

impl std::fmt::Display for ScalarRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = |i: usize| if i == 0 { "x" } else { "y" };
        write!(f, "{} = ({}) · {}", name(self.multiple), self.lambda, name(1 - self.multiple))
    }
}

/// Traceless 2×2 matrix `[[a, b], [c, −a]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LieElement(Mat2);

impl LieElement {
    pub fn new(m: Mat2) -> Result<Self, ClassifyError> {
        if !m.trace().is_zero() {
            return Err(ClassifyError::NotTraceless);
        }
        Ok(LieElement(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// `(a, b, c)` for `[[a, b], [c, −a]]`.
    pub fn coords(&self) -> [FieldElement; 3] {
        let r = self.0.rows();
        [r[0][0].clone(), r[0][1].clone(), r[1][0].clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.0.entries().all(FieldElement::is_zero)
    }

    /// `xy − yx`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        LieElement((&self.0 * &other.0).sub(&(&other.0 * &self.0)))
    }

    pub fn scale(&self, c: &FieldElement) -> LieElement {
        LieElement(self.0.scale(c))
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        LieElement(self.0.add(&other.0))
    }

    /// `P⁻¹ x P`.
    pub fn conjugate(&self, p: &Mat2) -> Result<LieElement, ArithError> {
        Ok(LieElement(&(&p.inverse()? * &self.0) * p))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.0.get(1, 0).is_zero()
    }
}

/// Columns are the coordinate vectors of `xs`.
fn coordinate_system(xs: &[&LieElement]) -> Vec<Vec<FieldElement>> {
    let cols: Vec<[FieldElement; 3]> = xs.iter().map(|x| x.coords()).collect();
    (0..3).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Writes `target = a·x + b·y`, if possible.
fn express(target: &LieElement, x: &LieElement, y: &LieElement) -> Option<[FieldElement; 2]> {
    let sol = solve(&coordinate_system(&[x, y]), &target.coords())?;
    Some([sol[0].clone(), sol[1].clone()])
}

fn scalar_relation(x: &LieElement, y: &LieElement) -> Option<ScalarRelation> {
    for (multiple, a, b) in [(0, x, y), (1, y, x)] {
        if b.is_zero() {
            continue;
        }
        let sol = solve(&coordinate_system(&[b]), &a.coords())?;
        return Some(ScalarRelation {
            multiple,
            lambda: sol[0].clone(),
        });
    }
    // both zero
    Some(ScalarRelation {
        multiple: 0,
        lambda: x.0.field().zero(),
    })
}

/// A 2-dimensional subalgebra of `sl(2)` given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra2 {
    basis: [LieElement; 2],
}

impl Subalgebra2 {
    /// Checks independence, then closure under the bracket.
    pub fn new(x: LieElement, y: LieElement) -> Result<Self, ClassifyError> {
        let rows = coordinate_system(&[&x, &y]);
        if crate::arith::rank(&rows) < 2 {
            return Err(ClassifyError::IndependenceFailure);
        }
        let br = x.bracket(&y);
        if express(&br, &x, &y).is_none() {
            return Err(ClassifyError::NotASubalgebra { bracket: br.0 });
        }
        Ok(Subalgebra2 { basis: [x, y] })
    }

    pub fn basis(&self) -> &[LieElement; 2] {
        &self.basis
    }

    pub fn contains(&self, z: &LieElement) -> bool {
        express(z, &self.basis[0], &self.basis[1]).is_some()
    }

    /// A basis `(x1, x2)` with `[x1, x2] = x1`: `x1` is the bracket of the
    /// given basis pair and `x2 = μ·x + ν·y` solves the linear condition.
    /// When the solution is not unique the free coordinate is set to zero.
    pub fn normalize(&self) -> Result<(LieElement, LieElement), ClassifyError> {
        let [x, y] = &self.basis;
        let x1 = x.bracket(y);
        if x1.is_zero() {
            let rel = scalar_relation(x, y).ok_or(ClassifyError::IndependenceFailure)?;
            return Err(ClassifyError::Commutative(rel));
        }
        let (bx, by) = (x1.bracket(x), x1.bracket(y));
        let [mu, nu] = express(&x1, &bx, &by)
            .expect("ad(x1) maps a nonabelian 2-dimensional algebra onto span(x1)");
        let x2 = x.scale(&mu).add(&y.scale(&nu));
        debug_assert_eq!(x1.bracket(&x2), x1);
        Ok((x1, x2))
    }
}

/// [`Subalgebra2::new`] followed by [`Subalgebra2::normalize`].
pub fn normalize_basis(x: LieElement, y: LieElement) -> Result<(LieElement, LieElement), ClassifyError> {
    Subalgebra2::new(x, y)?.normalize()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardForm {
    /// `{[[a, b], [0, −a]]}`.
    UpperTriangular,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationOutcome {
    /// `Q` with `Q⁻¹ s Q` upper triangular for every `s` in the subalgebra.
    pub conjugator: Mat2,
    pub kind: StandardForm,
    pub normalized: (LieElement, LieElement),
    /// The input basis after conjugation by `Q`.
    pub conjugated: [LieElement; 2],
}

/// Conjugates a 2-dimensional subalgebra of `sl(2)` onto the upper-triangular
/// one. Commuting pairs are rejected with the scalar relation they force.
pub fn classify_2dim(x: LieElement, y: LieElement) -> Result<ClassificationOutcome, ClassifyError> {
    if x.bracket(&y).is_zero() {
        let rel = scalar_relation(&x, &y).expect("commuting traceless 2×2 matrices are proportional");
        return Err(ClassifyError::Commutative(rel));
    }
    let sub = Subalgebra2::new(x, y)?;
    let (x1, x2) = sub.normalize()?;
    let field = x2.0.field().clone();
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let eigvec = |lambda: Rational| {
        let shifted = x2.0.sub(&Mat2::identity(&field).scale(&field.from_rational(lambda)));
        let rows: Vec<Vec<FieldElement>> = shifted.rows().iter().map(|r| r.to_vec()).collect();
        kernel(&rows).into_iter().next()
    };
    let (vm, vp) = match (eigvec(-half.clone()), eigvec(half)) {
        (Some(vm), Some(vp)) => (vm, vp),
        _ => unreachable!("[x1, x2] = x1 forces the eigenvalues of x2 to be ±1/2"),
    };
    for (c0, c1) in [(&vm, &vp), (&vp, &vm)] {
        let q = Mat2::new(c0[0].clone(), c1[0].clone(), c0[1].clone(), c1[1].clone());
        let conj = |z: &LieElement| z.conjugate(&q).expect("eigenvectors for distinct eigenvalues");
        if conj(&x1).is_upper_triangular() && conj(&x2).is_upper_triangular() {
            let [a, b] = sub.basis();
            let conjugated = [conj(a), conj(b)];
            debug_assert!(conjugated.iter().all(LieElement::is_upper_triangular));
            return Ok(ClassificationOutcome {
                conjugator: q,
                kind: StandardForm::UpperTriangular,
                normalized: (x1, x2),
                conjugated,
            });
        }
    }
    unreachable!("x1 is a nonzero ad(x2)-eigenvector, hence strictly triangular in one ordering")
}

/// `g` normalizes the diagonal torus iff `g11·g12 = 0` and `g21·g22 = 0`.
pub fn normalizes_torus(g: &Mat2) -> bool {
    (g.get(0, 0) * g.get(0, 1)).is_zero() && (g.get(1, 0) * g.get(1, 1)).is_zero()
}

/// `g` normalizes the upper unipotent group iff `g21 = 0`.
pub fn normalizes_unipotent(g: &Mat2) -> bool {
    g.get(1, 0).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factor {
    /// An element of the upper-triangular group `H`.
    H(Mat2),
    G,
    GInverse,
}

/// Multiplies out a word over `H ∪ {g, g⁻¹}`.
pub fn evaluate_word(word: &[Factor], g: &Mat2) -> Mat2 {
    let ginv = g.inverse().expect("invertible g");
    word.iter().fold(Mat2::identity(g.field()), |acc, f| match f {
        Factor::H(h) => &acc * h,
        Factor::G => &acc * g,
        Factor::GInverse => &acc * &ginv,
    })
}

/// Writes `target ∈ SL(2)` as a word in `H` and one `g ∉ H`:
///
/// 1. `w = g·h1` with `h1 = [[1/g21, −g22], [0, g21]]` gives `[[g11/g21, −1], [1, 0]]`;
/// 2. `h2·w = [[b, −a], [1/a, 0]]` for `h2 = [[a, b − a·g11/g21], [0, 1/a]]`,
///    whose inverse is `[[0, a], [−1/a, b]]`;
/// 3. `target = [[1, s11/s21], [0, 1]] · [[0, −1/s21], [s21, s22]]`, and the
///    second factor is step 2's inverse for `a = −1/s21`, `b = s22`.
///
/// The result is `[u, h1⁻¹, g⁻¹, h2⁻¹]`, or `[target]` when `target ∈ H`.
pub fn maximality_factor(g: &Mat2, target: &Mat2) -> Result<Vec<Factor>, ClassifyError> {
    if !g.det().is_one() || !target.det().is_one() {
        return Err(ClassifyError::DetNotOne);
    }
    let g21 = g.get(1, 0);
    if g21.is_zero() {
        return Err(ClassifyError::GIsInH);
    }
    let s21 = target.get(1, 0);
    if s21.is_zero() {
        return Ok(vec![Factor::H(target.clone())]);
    }
    let field = g.field();
    let (zero, one) = (field.zero(), field.one());
    let g21_inv = g21.checked_inv().expect("nonzero");
    let h1 = Mat2::new(g21_inv.clone(), -g.get(1, 1), zero.clone(), g21.clone());
    let ratio = g.get(0, 0) * &g21_inv;
    let s21_inv = s21.checked_inv().expect("nonzero");
    let a = -&s21_inv;
    let b = target.get(1, 1).clone();
    let h2 = Mat2::new(a.clone(), &b - &(&a * &ratio), zero.clone(), a.checked_inv().expect("nonzero"));
    let u = Mat2::new(one.clone(), target.get(0, 0) * &s21_inv, zero, one);
    let word = vec![
        Factor::H(u),
        Factor::H(h1.inverse().expect("unimodular")),
        Factor::GInverse,
        Factor::H(h2.inverse().expect("unimodular")),
    ];
    debug_assert_eq!(&evaluate_word(&word, g), target);
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, NumberField};

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn lie(m: [[i64; 2]; 2]) -> LieElement {
        LieElement::new(Mat2::from_ints(&q(), m)).unwrap()
    }

    fn e() -> LieElement {
        lie([[0, 1], [0, 0]])
    }
    fn f() -> LieElement {
        lie([[0, 0], [1, 0]])
    }
    fn h() -> LieElement {
        lie([[1, 0], [0, -1]])
    }
    fn half() -> FieldElement {
        q().from_rational(ratio(1, 2))
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(e().bracket(&f()), h());
        assert!(h().bracket(&h()).is_zero());
        assert_eq!(h().bracket(&e()), e().scale(&q().from_int(2)));
        assert_eq!(
            LieElement::new(Mat2::from_ints(&q(), [[1, 0], [0, 1]])),
            Err(ClassifyError::NotTraceless)
        );
    }

    #[test]
    fn normalize_examples() {
        let (x1, x2) = normalize_basis(e(), h()).unwrap();
        assert_eq!(x1, e().scale(&q().from_int(-2)));
        assert_eq!(x2, h().scale(&-half()));
        assert_eq!(x1.bracket(&x2), x1);

        assert_eq!(
            normalize_basis(e(), f()).unwrap_err(),
            ClassifyError::NotASubalgebra { bracket: h().matrix().clone() }
        );
        assert_eq!(
            normalize_basis(h(), h().scale(&q().from_int(2))).unwrap_err(),
            ClassifyError::IndependenceFailure
        );
    }

    #[test]
    fn classify_standard_algebra_is_fixed() {
        let out = classify_2dim(e(), h().scale(&half())).unwrap();
        assert!(out.conjugator.is_identity());
        assert_eq!(out.kind, StandardForm::UpperTriangular);
    }

    #[test]
    fn classify_lower_algebra_uses_the_swap() {
        let out = classify_2dim(f(), h().scale(&half())).unwrap();
        let c = &out.conjugator;
        assert!(c.get(0, 0).is_zero() && c.get(1, 1).is_zero());
        assert!(out.conjugated.iter().all(LieElement::is_upper_triangular));
    }

    #[test]
    fn commuting_pairs_rejected_with_relation() {
        let err = classify_2dim(h().scale(&q().from_int(3)), h()).unwrap_err();
        let ClassifyError::Commutative(rel) = err else { panic!() };
        assert_eq!(rel.multiple, 0);
        assert_eq!(rel.lambda, q().from_int(3));
    }

    #[test]
    fn normalizer_examples() {
        let a = q().from_rational(ratio(5, 3));
        assert!(normalizes_torus(&Mat2::torus(&a)));
        let anti = Mat2::new(q().zero(), a.clone(), -a.checked_inv().unwrap(), q().zero());
        assert!(normalizes_torus(&anti));
        assert!(!normalizes_torus(&Mat2::from_ints(&q(), [[1, 1], [0, 1]])));

        let up = Mat2::new(a.clone(), q().from_int(7), q().zero(), a.checked_inv().unwrap());
        assert!(normalizes_unipotent(&up));
        assert!(!normalizes_unipotent(&Mat2::from_ints(&q(), [[1, 0], [1, 1]])));
        assert!(!normalizes_unipotent(&Mat2::from_ints(&q(), [[0, 1], [-1, 0]])));
    }

    #[test]
    fn maximality_examples() {
        let g = Mat2::from_ints(&q(), [[0, -1], [1, 0]]);
        let target = Mat2::from_ints(&q(), [[1, 0], [1, 1]]);
        let word = maximality_factor(&g, &target).unwrap();
        assert_eq!(word.len(), 4);
        assert_eq!(word.iter().filter(|f| !matches!(f, Factor::H(_))).count(), 1);
        for f in &word {
            if let Factor::H(m) = f {
                assert!(m.get(1, 0).is_zero() && m.det().is_one());
            }
        }
        assert_eq!(evaluate_word(&word, &g), target);

        let in_h = Mat2::from_ints(&q(), [[1, 5], [0, 1]]);
        assert_eq!(maximality_factor(&g, &in_h).unwrap(), vec![Factor::H(in_h.clone())]);
        assert_eq!(maximality_factor(&in_h, &target).unwrap_err(), ClassifyError::GIsInH);
    }
}
