//! Exact scalars and dense linear algebra.
//!
//! Everything downstream (Gröbner reduction, socles, Frobenius forms,
//! Nakayama automorphisms) runs over [`Scalar`], which is either an exact
//! rational or an element of a prime field selected at run time.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("cannot parse field selector {0:?} (expected q or fp:<prime>)")]
    BadField(String),
}

/// The ground field: exact rationals or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Field {
    #[default]
    Rational,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Maps `num/den` into the field; `None` when the denominator vanishes.
    pub fn from_ratio(self, r: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rational => Some(Scalar::Rational(r.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let num = r.numer().mod_floor(&m).to_u64()?;
                let den = r.denom().mod_floor(&m).to_u64()?;
                if den == 0 {
                    return None;
                }
                let n = Scalar::Modular {
                    value: num,
                    modulus: p,
                };
                let d = Scalar::Modular {
                    value: den,
                    modulus: p,
                };
                Some(&n * &d.inv()?)
            }
        }
    }

    /// Parses `"p/q"` or an integer.
    pub fn parse(self, s: &str) -> Result<Scalar, LinalgError> {
        let r = parse_rational(s)?;
        self.from_ratio(&r)
            .ok_or_else(|| LinalgError::BadScalar(s.to_string()))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::BadScalar(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" | "Q" => Ok(Field::Rational),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| LinalgError::BadField(s.to_string()))?;
                Field::prime(p)
            }
        }
    }
}

/// An exact field element.
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` normal form), so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Option<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.field().one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// The rational value, when this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different prime fields");
    a
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Modular {
                    value: ((*a as u128 + *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Modular {
                    value: a,
                    modulus: p,
                },
                Scalar::Modular {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::Modular {
                    value: ((*a as u128 * *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;

    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// Sign of a rational scalar (`0` for modular scalars).
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) if r.is_positive() => 1,
            Scalar::Rational(r) if r.is_negative() => -1,
            _ => 0,
        }
    }
}

/// Row-major dense matrix over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(DenseMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = DenseMatrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c) + &(a * b);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: DenseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination to the reduced row echelon form.
pub fn row_reduce(m: &DenseMatrix) -> RowReduction {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = a.get(row, col).inv().expect("pivot is nonzero");
        for c in col..a.cols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if factor.is_zero() {
                continue;
            }
            for c in col..a.cols {
                let pv = a.get(row, c);
                if pv.is_zero() {
                    continue;
                }
                let v = a.get(r, c) - &(&factor * pv);
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    RowReduction {
        rank: pivots.len(),
        rref: a,
        pivots,
    }
}

/// Basis of the null space, one vector per free column.
pub fn kernel(m: &DenseMatrix) -> Vec<Vec<Scalar>> {
    let rr = row_reduce(m);
    kernel_from_rref(&rr, m.cols)
}

fn kernel_from_rref(rr: &RowReduction, cols: usize) -> Vec<Vec<Scalar>> {
    let field = rr.rref.field;
    let mut is_pivot = vec![false; cols];
    for &p in &rr.pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (r, &p) in rr.pivots.iter().enumerate() {
            v[p] = -rr.rref.get(r, free);
        }
        basis.push(v);
    }
    basis
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<Scalar>,
    pub kernel: Vec<Vec<Scalar>>,
}

/// Solves `a·x = b`; `Ok(None)` when the system is inconsistent.
pub fn solve(a: &DenseMatrix, b: &[Scalar]) -> Result<Option<Solution>, LinalgError> {
    if a.rows != b.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let field = a.field;
    let mut aug = DenseMatrix::zeros(field, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols, b[r].clone());
    }
    let rr = row_reduce(&aug);
    if rr.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut particular = vec![field.zero(); a.cols];
    for (r, &p) in rr.pivots.iter().enumerate() {
        particular[p] = rr.rref.get(r, a.cols).clone();
    }
    let coeffs = RowReduction {
        rref: {
            let mut m = DenseMatrix::zeros(field, rr.rref.rows, a.cols);
            for r in 0..m.rows {
                for c in 0..a.cols {
                    m.set(r, c, rr.rref.get(r, c).clone());
                }
            }
            m
        },
        rank: rr.rank,
        pivots: rr.pivots.clone(),
    };
    Ok(Some(Solution {
        particular,
        kernel: kernel_from_rref(&coeffs, a.cols),
    }))
}

/// Inverse of a square matrix, `Ok(None)` when singular.
pub fn invert(m: &DenseMatrix) -> Result<Option<DenseMatrix>, LinalgError> {
    if m.rows != m.cols {
        return Err(LinalgError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let field = m.field;
    let mut aug = DenseMatrix::zeros(field, n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, field.one());
    }
    let rr = row_reduce(&aug);
    if rr.pivots.iter().take_while(|&&p| p < n).count() < n {
        return Ok(None);
    }
    let mut inv = DenseMatrix::zeros(field, n, n);
    for r in 0..n {
        for c in 0..n {
            inv.set(r, c, rr.rref.get(r, n + c).clone());
        }
    }
    Ok(Some(inv))
}

pub fn rank(m: &DenseMatrix) -> usize {
    row_reduce(m).rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> Scalar {
        Field::Rational.parse(s).unwrap()
    }

    #[test]
    fn rref_identity() {
        let m = DenseMatrix::identity(Field::Rational, 2);
        let rr = row_reduce(&m);
        assert_eq!(rr.rank, 2);
        assert_eq!(rr.pivots, vec![0, 1]);
        assert_eq!(rr.rref, m);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = DenseMatrix::from_i64_rows(Field::Rational, &[&[1, 2], &[2, 4]]).unwrap();
        let rr = row_reduce(&m);
        assert_eq!(rr.rank, 1);
        assert_eq!(
            rr.rref,
            DenseMatrix::from_i64_rows(Field::Rational, &[&[1, 2], &[0, 0]]).unwrap()
        );
    }

    #[test]
    fn rref_permutation() {
        let m = DenseMatrix::from_i64_rows(Field::Rational, &[&[0, 1], &[1, 0]]).unwrap();
        let rr = row_reduce(&m);
        assert_eq!(rr.rank, 2);
        assert!(rr.rref.is_identity());
    }

    #[test]
    fn solve_identity() {
        let a = DenseMatrix::identity(Field::Rational, 2);
        let sol = solve(&a, &[q("3"), q("-1/2")]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![q("3"), q("-1/2")]);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        let a = DenseMatrix::from_i64_rows(Field::Rational, &[&[1, 1]]).unwrap();
        let sol = solve(&a, &[q("0")]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![q("0"), q("0")]);
        assert_eq!(sol.kernel, vec![vec![q("-1"), q("1")]]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = DenseMatrix::from_i64_rows(Field::Rational, &[&[1], &[1]]).unwrap();
        assert_eq!(solve(&a, &[q("1"), q("2")]).unwrap(), None);
    }

    #[test]
    fn solve_rejects_mismatch() {
        let a = DenseMatrix::identity(Field::Rational, 2);
        assert!(matches!(
            solve(&a, &[q("1")]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invert_examples() {
        let id = DenseMatrix::identity(Field::Rational, 3);
        assert_eq!(invert(&id).unwrap().unwrap(), id);
        let two = DenseMatrix::from_i64_rows(Field::Rational, &[&[2]]).unwrap();
        assert_eq!(invert(&two).unwrap().unwrap().get(0, 0), &q("1/2"));
        let sing = DenseMatrix::from_i64_rows(Field::Rational, &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(invert(&sing).unwrap(), None);
        let rect = DenseMatrix::zeros(Field::Rational, 1, 2);
        assert!(matches!(invert(&rect), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn exact_arithmetic() {
        let a = q("7/3");
        assert!((&a + &(-&a)).is_zero());
        assert!((&a * &a.inv().unwrap()).is_one());
        let f = Field::prime(7).unwrap();
        let x = f.from_i64(3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!(f.parse("1/2").unwrap(), f.from_i64(4));
    }

    #[test]
    fn field_selector_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("fp:100".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    fn small_matrix() -> impl Strategy<Value = DenseMatrix> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec((-4i64..5, 1i64..4), n * n).prop_map(move |entries| {
                let rows = entries
                    .chunks(n)
                    .map(|row| row.iter().map(|&(a, b)| q(&format!("{a}/{b}"))).collect())
                    .collect();
                DenseMatrix::from_rows(Field::Rational, rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(m in small_matrix()) {
            if let Some(inv) = invert(&m).unwrap() {
                prop_assert!(inv.mul(&m).unwrap().is_identity());
                prop_assert!(m.mul(&inv).unwrap().is_identity());
            } else {
                prop_assert!(rank(&m) < m.rows());
            }
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = row_reduce(&m).rref;
            prop_assert_eq!(row_reduce(&once).rref, once);
        }

        #[test]
        fn solve_is_consistent(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 4)) {
            let b: Vec<Scalar> = (0..m.rows()).map(|i| Field::Rational.from_i64(seed[i % seed.len()])).collect();
            if let Some(sol) = solve(&m, &b).unwrap() {
                prop_assert_eq!(m.mul_vec(&sol.particular).unwrap(), b);
                for v in &sol.kernel {
                    prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
                }
                prop_assert_eq!(sol.kernel.len(), m.cols() - rank(&m));
            }
        }
    }
}
