//! Brute-force su(N) weights of pure chord diagrams, used to check the
//! closed forms in the weight table.

use num_complex::Complex64;
use thiserror::Error;

use crate::matchcount::{ChordId, Configuration};
use crate::polyalg::weight_table;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("{0}: only multiplicity-1 chord diagrams can be evaluated")]
    UnsupportedDiagram(String),
}

/// Dense square complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn adjoint(&self) -> Matrix {
        let mut out = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    fn max_diff(&self, rhs: &Matrix) -> f64 {
        self.data.iter().zip(&rhs.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Generalized Gell-Mann matrices scaled so that Tr(T^a T^b) = delta/2.
#[derive(Clone, Debug)]
pub struct SunBasis {
    pub n: usize,
    pub matrices: Vec<Matrix>,
}

pub fn sun_basis(n: usize) -> SunBasis {
    assert!(n >= 2, "su(N) needs N >= 2");
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let mut matrices = vec![];
    for j in 0..n {
        for k in j + 1..n {
            let mut s = Matrix::zeros(n);
            s.set(j, k, c(0.5, 0.0));
            s.set(k, j, c(0.5, 0.0));
            matrices.push(s);
            let mut a = Matrix::zeros(n);
            a.set(j, k, c(0.0, -0.5));
            a.set(k, j, c(0.0, 0.5));
            matrices.push(a);
        }
    }
    for l in 1..n {
        let f = 0.5 * (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut d = Matrix::zeros(n);
        for m in 0..l {
            d.set(m, m, c(f, 0.0));
        }
        d.set(l, l, c(-(l as f64) * f, 0.0));
        matrices.push(d);
    }
    SunBasis { n, matrices }
}

impl SunBasis {
    /// max |Tr(T^a T^b) - delta/2|.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, ta) in self.matrices.iter().enumerate() {
            for (b, tb) in self.matrices.iter().enumerate() {
                let want = if a == b { 0.5 } else { 0.0 };
                worst = worst.max((ta.mul(tb).trace() - want).norm());
            }
        }
        worst
    }

    /// max over the basis of |Tr T| and of the distance from Hermitian.
    pub fn structure_residual(&self) -> f64 {
        self.matrices.iter().map(|t| t.trace().norm().max(t.max_diff(&t.adjoint()))).fold(0.0, f64::max)
    }
}

/// W(D)/x^m: the sum over labelings of chords by basis elements of the
/// product over circles of the trace along each circle, divided by N^circles.
pub fn eval_chord_weight(d: &Configuration, basis: &SunBasis) -> Result<Complex64, WeightError> {
    if d.multiplicities().values().any(|m| *m != 1) {
        return Err(WeightError::UnsupportedDiagram(d.key.clone()));
    }
    let ids: Vec<ChordId> = d.multiplicities().keys().copied().collect();
    let dim = basis.matrices.len();
    let slot = |id: &ChordId| ids.iter().position(|x| x == id).unwrap();
    let words: Vec<Vec<usize>> = d.circles().iter().map(|w| w.iter().map(slot).collect()).collect();
    let mut label = vec![0usize; ids.len()];
    let mut total = Complex64::new(0.0, 0.0);
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        for w in &words {
            let m = w.iter().fold(Matrix::identity(basis.n), |acc, s| acc.mul(&basis.matrices[label[*s]]));
            term *= m.trace();
        }
        total += term;
        // next labeling, odometer style
        let mut i = 0;
        while i < label.len() {
            label[i] += 1;
            if label[i] < dim {
                break;
            }
            label[i] = 0;
            i += 1;
        }
        if i == label.len() {
            break;
        }
    }
    Ok(total / (basis.n as f64).powi(words.len() as i32))
}

/// The weight-table keys whose diagrams carry only chords, with a chord
/// diagram realizing each.
pub fn pure_chord_diagrams() -> Vec<(&'static str, Configuration)> {
    let d = |key: &'static str, words: &[&[ChordId]]| (key, Configuration::from_words(key, words, &[]));
    vec![
        d("wK.chord1", &[&[1, 1]]),
        d("wL.ca", &[&[1, 2], &[2, 1]]),
        d("wL.ec", &[&[1, 2, 3], &[3, 2, 1]]),
        d("wL.fc", &[&[1, 2], &[1, 3], &[2, 3]]),
        d("wL.fd", &[&[1, 2, 3, 4], &[4, 3, 2, 1]]),
        d("wL.fg", &[&[1, 2, 3, 4], &[1, 2], &[3, 4]]),
        d("wL.fh", &[&[1, 2], &[1, 3, 4], &[2, 4, 3]]),
        d("wL.fk", &[&[1, 2], &[1, 2], &[3, 4], &[3, 4]]),
        d("wL.fj", &[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]),
    ]
}

#[derive(Clone, Debug)]
pub struct WeightComparison {
    pub key: &'static str,
    pub n: usize,
    pub numeric: Complex64,
    pub table: f64,
}

impl WeightComparison {
    pub fn error(&self) -> f64 {
        (self.numeric - self.table).norm()
    }
}

/// Compares every pure-chord table entry with its brute-force value at each N.
pub fn check_table(ns: &[usize]) -> Vec<WeightComparison> {
    let table = weight_table();
    let mut out = vec![];
    for &n in ns {
        let basis = sun_basis(n);
        for (key, d) in pure_chord_diagrams() {
            let numeric = eval_chord_weight(&d, &basis).expect("pure chord diagram");
            let m = d.num_chords() as i32;
            out.push(WeightComparison { key, n, numeric, table: table.get(key).coeff(m).eval(n as f64) });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_normalization() {
        for n in 2..=4 {
            let b = sun_basis(n);
            assert_eq!(b.matrices.len(), n * n - 1);
            assert!(b.orthonormality_residual() < 1e-12);
            assert!(b.structure_residual() < 1e-12);
        }
    }

    #[test]
    fn single_chord() {
        let d = Configuration::from_words("k", &[&[1, 1]], &[]);
        let w = eval_chord_weight(&d, &sun_basis(2)).unwrap();
        assert!((w.re - 0.75).abs() < 1e-12 && w.im.abs() < 1e-12);
    }

    #[test]
    fn linking_pair() {
        let d = Configuration::from_words("ca", &[&[1, 2], &[2, 1]], &[]);
        let w = eval_chord_weight(&d, &sun_basis(2)).unwrap();
        assert!((w.re - 3.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn doubled_chord_rejected() {
        let d = Configuration::from_words("x", &[&[1, 2, 1, 2]], &[1]);
        assert!(eval_chord_weight(&d, &sun_basis(2)).is_err());
    }

    #[test]
    fn table_agrees() {
        for c in check_table(&[2, 3]) {
            assert!(c.error() < 1e-9, "{} at N={}: {} vs {}", c.key, c.n, c.numeric, c.table);
            assert!(c.numeric.im.abs() < 1e-9);
        }
    }
}
