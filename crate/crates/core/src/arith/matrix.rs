use super::linalg::{row_reduce, solve};
use super::{ArithError, FieldElement, NumberField, Rational};
use std::fmt;
use std::ops::Mul;

/// `N × N` matrix over a number field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix<const N: usize> {
    rows: [[FieldElement; N]; N],
}

pub type Mat2 = SquareMatrix<2>;
pub type Mat4 = SquareMatrix<4>;

impl<const N: usize> SquareMatrix<N> {
    pub fn from_rows(rows: [[FieldElement; N]; N]) -> Self {
        let field = rows[0][0].field().clone();
        assert!(
            rows.iter().flatten().all(|x| *x.field() == field),
            "{}",
            ArithError::FieldMismatch
        );
        SquareMatrix { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        Self::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn identity(field: &NumberField) -> Self {
        Self::from_fn(|i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn field(&self) -> &NumberField {
        self.rows[0][0].field()
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[[FieldElement; N]; N] {
        &self.rows
    }

    pub fn entries(&self) -> impl Iterator<Item = &FieldElement> {
        self.rows.iter().flatten()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] * c)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] + &other.rows[i][j])
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] - &other.rows[i][j])
    }

    pub fn trace(&self) -> FieldElement {
        (1..N).fold(self.rows[0][0].clone(), |acc, i| &acc + &self.rows[i][i])
    }

    pub fn is_identity(&self) -> bool {
        (0..N).all(|i| (0..N).all(|j| if i == j { self.rows[i][j].is_one() } else { self.rows[i][j].is_zero() }))
    }

    fn as_vecs(&self) -> Vec<Vec<FieldElement>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn det(&self) -> FieldElement {
        if N == 2 {
            return &(&self.rows[0][0] * &self.rows[1][1]) - &(&self.rows[0][1] * &self.rows[1][0]);
        }
        // Gaussian elimination, first nonzero pivot in each column
        let mut a = self.as_vecs();
        let field = self.field();
        let mut det = field.one();
        for c in 0..N {
            let Some(p) = (c..N).find(|&r| !a[r][c].is_zero()) else {
                return field.zero();
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            det = &det * &a[c][c];
            let inv = a[c][c].checked_inv().expect("nonzero pivot");
            for r in c + 1..N {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for k in c..N {
                    let t = &f * &a[c][k];
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if N == 2 {
            let d = self.det();
            let inv = d.checked_inv().ok_or(ArithError::Singular)?;
            let r = &self.rows;
            return Ok(Self::from_fn(|i, j| {
                let adj = match (i, j) {
                    (0, 0) => r[1][1].clone(),
                    (0, 1) => -&r[0][1],
                    (1, 0) => -&r[1][0],
                    _ => r[0][0].clone(),
                };
                &adj * &inv
            }));
        }
        let field = self.field().clone();
        let mut aug: Vec<Vec<FieldElement>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v = row.to_vec();
                v.extend((0..N).map(|j| if i == j { field.one() } else { field.zero() }));
                v
            })
            .collect();
        let pivots = row_reduce(&mut aug);
        if pivots.len() < N || pivots[N - 1] != N - 1 {
            return Err(ArithError::Singular);
        }
        Ok(Self::from_fn(|i, j| aug[i][N + j].clone()))
    }

    /// Solves `x · self = b` for the row vector `x`.
    pub fn solve_left(&self, b: &[FieldElement; N]) -> Result<[FieldElement; N], ArithError> {
        let at = self.transpose().as_vecs();
        let x = solve(&at, b).ok_or(ArithError::Singular)?;
        Ok(std::array::from_fn(|i| x[i].clone()))
    }

    /// Coefficients of `det(x·I − self)`, lowest degree first (length `N + 1`),
    /// by the Faddeev–LeVerrier recurrence.
    pub fn charpoly(&self) -> Vec<FieldElement> {
        let field = self.field().clone();
        let mut coeffs = vec![field.zero(); N + 1];
        coeffs[N] = field.one();
        let mut m = Self::from_fn(|_, _| field.zero());
        let id = Self::identity(&field);
        for k in 1..=N {
            m = (self * &m).add(&id.scale(&coeffs[N - k + 1]));
            let t = (self * &m).trace();
            let kinv = Rational::new(1.into(), (k as i64).into());
            coeffs[N - k] = -(t.scale(&kinv));
        }
        coeffs
    }
}

impl Mat2 {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement, d: FieldElement) -> Self {
        Self::from_rows([[a, b], [c, d]])
    }

    pub fn from_rationals(field: &NumberField, m: [[Rational; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Self::new(
            field.from_rational(a),
            field.from_rational(b),
            field.from_rational(c),
            field.from_rational(d),
        )
    }

    pub fn from_ints(field: &NumberField, m: [[i64; 2]; 2]) -> Self {
        Self::from_fn(|i, j| field.from_int(m[i][j]))
    }

    /// `diag(a, a⁻¹)`.
    pub fn torus(a: &FieldElement) -> Self {
        let f = a.field();
        Self::new(a.clone(), f.zero(), f.zero(), a.checked_inv().expect("nonzero"))
    }
}

impl<'a, const N: usize> Mul<&'a SquareMatrix<N>> for &'a SquareMatrix<N> {
    type Output = SquareMatrix<N>;
    fn mul(self, rhs: &SquareMatrix<N>) -> SquareMatrix<N> {
        SquareMatrix::from_fn(|i, j| {
            let mut acc = self.rows[i][0].field().zero();
            for k in 0..N {
                let (a, b) = (&self.rows[i][k], &rhs.rows[k][j]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }
}

impl<const N: usize> Mul for SquareMatrix<N> {
    type Output = SquareMatrix<N>;
    fn mul(self, rhs: SquareMatrix<N>) -> SquareMatrix<N> {
        &self * &rhs
    }
}

impl<const N: usize> fmt::Debug for SquareMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}
