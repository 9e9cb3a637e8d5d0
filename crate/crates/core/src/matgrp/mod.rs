//! `GL_n` and `SL_n` over a field model.
//!
//! Elements are exact matrices of [`FieldElement`]s. `K = G(o)` is the group
//! of integral matrices with unit determinant, `K_m` its kernel of reduction
//! mod `π^m`.

mod cartan;
mod enumerate;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::localfield::{Field, FieldElement, ResidueElement, Valuation};
use crate::matrix::Matrix;

pub use cartan::CartanFactorization;
pub use enumerate::DEFAULT_BUDGET;
pub(crate) use enumerate::residue_ring_elements as enumerate_residue_ring;

/// A matrix over a residue ring `o/π^N`.
pub type ResidueMatrix = Matrix<ResidueElement>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    GL,
    SL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::GL => write!(f, "GL"),
            Family::SL => write!(f, "SL"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    family: Family,
    n: usize,
    field: Field,
}

/// A congruence level: `K` itself or `K_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    K,
    Congruence(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    matrix: Matrix<FieldElement>,
    det: FieldElement,
}

/// A dominant cocharacter `τ = (a_1 ≥ … ≥ a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanDatum(pub(crate) Vec<i64>);

impl CartanDatum {
    pub fn new(family: Family, a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidGroup("empty cocharacter".into()));
        }
        if a.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDominant(format_tuple(&a)));
        }
        if family == Family::SL && a.iter().sum::<i64>() != 0 {
            return Err(Error::SlTraceNonzero(format_tuple(&a)));
        }
        Ok(CartanDatum(a))
    }

    pub fn zero(n: usize) -> Self {
        CartanDatum(alloc::vec![0; n])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `‖τ‖ = max(|a_1|, |a_n|)`.
    pub fn norm(&self) -> u32 {
        let first = self.0[0].unsigned_abs();
        let last = self.0[self.0.len() - 1].unsigned_abs();
        first.max(last) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    /// `d_ij = a_i - a_j` for `i < j`, in row-major order of the pairs.
    pub fn upper_differences(&self) -> Vec<u32> {
        let n = self.0.len();
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                out.push((self.0[i] - self.0[j]) as u32);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        CartanDatum(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

fn format_tuple(a: &[i64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_tuple(&self.0))
    }
}

impl GroupElement {
    /// Any invertible square matrix. Group-specific checks live in
    /// [`GroupSpec::element`].
    pub fn new(matrix: Matrix<FieldElement>) -> Result<Self> {
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(Error::DimensionMismatch("group elements are non-empty square matrices".into()));
        }
        let det = matrix.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(GroupElement { matrix, det })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        GroupElement { matrix: Matrix::identity_like(n, &field.one()), det: field.one() }
    }

    pub fn matrix(&self) -> &Matrix<FieldElement> {
        &self.matrix
    }

    pub fn det(&self) -> &FieldElement {
        &self.det
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> &Field {
        self.det.field()
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        self.matrix.get(i, j)
    }

    pub fn mul(&self, other: &Self) -> Self {
        GroupElement { matrix: self.matrix.mul(&other.matrix), det: self.det.mul(&other.det) }
    }

    pub fn inverse(&self) -> Self {
        let det_inv = self.det.inv().expect("group elements are invertible");
        GroupElement { matrix: self.matrix.inverse_with_det_inverse(&det_inv), det: det_inv }
    }

    /// Smallest entry valuation.
    pub fn min_valuation(&self) -> Valuation {
        self.matrix.entries().iter().map(FieldElement::valuation).min().unwrap_or(Valuation::Infinity)
    }

    pub(crate) fn from_parts(matrix: Matrix<FieldElement>, det: FieldElement) -> Self {
        GroupElement { matrix, det }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_matrix(f, &self.matrix)
    }
}

pub(crate) fn write_matrix<T: fmt::Display>(f: &mut fmt::Formatter<'_>, m: &Matrix<T>) -> fmt::Result {
    write!(f, "[")?;
    for i in 0..m.rows() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for j in 0..m.cols() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m.get(i, j))?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// Row-major display of a residue matrix, e.g. `[[1,t],[0,1]]@2`.
pub fn format_residue_matrix(m: &ResidueMatrix) -> String {
    struct Plain<'a>(&'a ResidueMatrix);
    impl fmt::Display for Plain<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let lifted = self.0.map(ResidueElement::lift);
            write_matrix(f, &lifted)
        }
    }
    let precision = m.entries().first().map_or(0, ResidueElement::precision);
    format!("{}@{}", Plain(m), precision)
}

impl GroupSpec {
    pub fn new(family: Family, n: usize, field: Field) -> Result<Self> {
        match (family, n) {
            (_, 0) => Err(Error::InvalidGroup("rank must be positive".into())),
            (Family::SL, 1) => Err(Error::InvalidGroup("SL_1 is trivial; n = 1 is allowed for GL only".into())),
            _ => Ok(GroupSpec { family, n, field }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn with_field(&self, field: Field) -> GroupSpec {
        GroupSpec { family: self.family, n: self.n, field }
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::identity(&self.field, self.n)
    }

    /// Validates shape, field, invertibility and, for `SL`, `det = 1`.
    pub fn element(&self, matrix: Matrix<FieldElement>) -> Result<GroupElement> {
        if matrix.rows() != self.n || matrix.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                self.n,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.entries().iter().any(|x| x.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        let g = GroupElement::new(matrix)?;
        self.check(&g)?;
        Ok(g)
    }

    pub(crate) fn check(&self, g: &GroupElement) -> Result<()> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch(format!("expected dimension {}, got {}", self.n, g.dim())));
        }
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if self.family == Family::SL && g.det() != &self.field.one() {
            return Err(Error::DeterminantNotOne);
        }
        Ok(())
    }

    pub fn tau(&self, a: Vec<i64>) -> Result<CartanDatum> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch(format!("cocharacter of length {} for n = {}", a.len(), self.n)));
        }
        CartanDatum::new(self.family, a)
    }

    /// `n_τ = diag(π^{a_1}, …, π^{a_n})`.
    pub fn n_of_tau(&self, tau: &CartanDatum) -> GroupElement {
        let entries: Vec<FieldElement> = tau.entries().iter().map(|&a| self.field.uniformizer_pow(a)).collect();
        let det = self.field.uniformizer_pow(tau.entries().iter().sum());
        GroupElement::from_parts(Matrix::diagonal(entries), det)
    }

    pub fn in_k(&self, g: &GroupElement) -> bool {
        if !g.matrix.entries().iter().all(FieldElement::is_integral) {
            return false;
        }
        match self.family {
            Family::GL => g.det.is_unit(),
            Family::SL => g.det == self.field.one(),
        }
    }

    pub fn membership(&self, g: &GroupElement, level: Level) -> bool {
        if !self.in_k(g) {
            return false;
        }
        match level {
            Level::K => true,
            Level::Congruence(m) => {
                let one = self.field.one();
                (0..self.n).all(|i| {
                    (0..self.n).all(|j| {
                        let x = g.entry(i, j);
                        let d = if i == j { x.sub(&one) } else { x.clone() };
                        d.valuation() >= Valuation::Finite(m as i64)
                    })
                })
            }
        }
    }

    /// Entrywise reduction `K → G(o/π^N)`.
    pub fn reduce(&self, g: &GroupElement, precision: u32) -> Result<ResidueMatrix> {
        if !self.in_k(g) {
            return Err(Error::NotInK);
        }
        g.matrix.try_map(|x| x.reduce(precision))
    }

    /// Canonical section `G(o/π^N) → K`: entrywise least representatives, and
    /// for `SL` the first column divided by the determinant of the lift.
    pub fn lift(&self, r: &ResidueMatrix) -> Result<GroupElement> {
        if r.rows() != self.n || r.cols() != self.n {
            return Err(Error::DimensionMismatch(format!("expected a {0}x{0} residue matrix", self.n)));
        }
        let precision = r.get(0, 0).precision();
        if precision == 0 {
            return Ok(self.identity());
        }
        let rdet = r.det();
        if !rdet.is_unit() {
            return Err(Error::NonUnitDet);
        }
        if self.family == Family::SL && rdet != ResidueElement::one(&self.field, precision) {
            return Err(Error::DeterminantNotOne);
        }
        let g = GroupElement::new(r.map(ResidueElement::lift))?;
        Ok(match self.family {
            Family::GL => g,
            Family::SL => self.det_correct(g),
        })
    }

    /// Divides the first column by the determinant; the result has `det = 1`.
    pub(crate) fn det_correct(&self, g: GroupElement) -> GroupElement {
        if g.det == self.field.one() {
            return g;
        }
        let inv = g.det.inv().expect("invertible");
        let mut m = g.matrix;
        for i in 0..self.n {
            let x = m.get(i, 0).mul(&inv);
            m.set(i, 0, x);
        }
        GroupElement::from_parts(m, self.field.one())
    }

    /// Whether a residue matrix lies in `G(o/π^N)`.
    pub fn residue_in_group(&self, r: &ResidueMatrix) -> bool {
        let d = r.det();
        match self.family {
            Family::GL => d.is_unit(),
            Family::SL => d.precision() == 0 || d == ResidueElement::one(&self.field, d.precision()),
        }
    }

    pub fn residue_identity(&self, precision: u32) -> ResidueMatrix {
        Matrix::identity_like(self.n, &ResidueElement::zero(&self.field, precision))
    }

    /// Dominant cocharacters with `‖τ‖ ≤ bound`, in increasing order.
    pub fn dominant_taus(&self, bound: u32) -> Vec<CartanDatum> {
        let b = bound as i64;
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.n);
        fn rec(spec: &GroupSpec, b: i64, hi: i64, current: &mut Vec<i64>, out: &mut Vec<CartanDatum>) {
            if current.len() == spec.n {
                if let Ok(t) = CartanDatum::new(spec.family, current.clone()) {
                    out.push(t);
                }
                return;
            }
            for a in (-b..=hi).rev() {
                current.push(a);
                rec(spec, b, a, current, out);
                current.pop();
            }
        }
        rec(self, b, b, &mut current, &mut out);
        out.sort();
        out
    }

    /// `|G(o/π^m)|`.
    pub fn residue_group_order(&self, m: u32) -> u128 {
        if m == 0 {
            return 1;
        }
        let q = self.field.q() as u128;
        let n = self.n as u32;
        let mut gl_f = 1u128;
        for i in 0..n {
            gl_f *= q.pow(n) - q.pow(i);
        }
        let lift = q.pow((m - 1) * n * n);
        match self.family {
            Family::GL => gl_f * lift,
            Family::SL => gl_f / (q - 1) * lift / q.pow(m - 1),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.family, self.n, self.field)
    }
}
