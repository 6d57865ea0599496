//! Polynomials in N, truncated Laurent series in x, the su(N) weight table
//! and the degree-4 series assemblies.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::InvariantReport;

/// Lowest x-exponent a series may hold.
pub const X_MIN: i32 = -4;
/// Default truncation degree.
pub const X_MAX: i32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("x-exponent {0} is below the series window")]
    RangeOverflow(i32),
    #[error("report is missing {0}")]
    MissingInvariant(String),
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Finitely supported Laurent polynomial in N with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NPoly {
    coeffs: BTreeMap<i32, BigRational>,
}

impl NPoly {
    pub fn zero() -> Self {
        NPoly::default()
    }

    pub fn one() -> Self {
        NPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        NPoly::monomial(c, 0)
    }

    pub fn monomial(c: BigRational, exp: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        NPoly { coeffs }
    }

    /// Builds from (exponent, numerator, denominator) triples.
    pub fn from_terms(terms: &[(i32, i64, i64)]) -> Self {
        terms
            .iter()
            .fold(NPoly::zero(), |acc, &(e, n, d)| acc + NPoly::monomial(rat(n, d), e))
    }

    pub fn coeffs(&self) -> &BTreeMap<i32, BigRational> {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &BigRational) -> NPoly {
        if k.is_zero() {
            return NPoly::zero();
        }
        NPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    pub fn eval(&self, n: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * n.powi(*e))
            .sum()
    }

    fn add_term(&mut self, exp: i32, c: BigRational) {
        let e = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(e, c)| json!({"n_exp": e, "num": big_json(c.numer()), "den": big_json(c.denom())}))
                .collect(),
        )
    }
}

pub(crate) fn big_json(b: &BigInt) -> Value {
    match b.to_i64() {
        Some(v) => json!(v),
        None => json!(b.to_string()),
    }
}

impl Add for NPoly {
    type Output = NPoly;
    fn add(mut self, rhs: NPoly) -> NPoly {
        for (e, c) in rhs.coeffs {
            self.add_term(e, c);
        }
        self
    }
}

impl Neg for NPoly {
    type Output = NPoly;
    fn neg(self) -> NPoly {
        NPoly { coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for NPoly {
    type Output = NPoly;
    fn sub(self, rhs: NPoly) -> NPoly {
        self + (-rhs)
    }
}

impl Mul for &NPoly {
    type Output = NPoly;
    fn mul(self, rhs: &NPoly) -> NPoly {
        let mut out = NPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for NPoly {
    type Output = NPoly;
    fn mul(self, rhs: NPoly) -> NPoly {
        &self * &rhs
    }
}

impl fmt::Display for NPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let pow = if *e == 1 { "N".to_string() } else { format!("N^{e}") };
            match *e {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "{pow}")?,
                _ => write!(f, "{mag}*{pow}")?,
            }
        }
        Ok(())
    }
}

/// Laurent series in x with NPoly coefficients, truncated above `top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XSeries {
    top: i32,
    terms: BTreeMap<i32, NPoly>,
}

impl XSeries {
    pub fn zero() -> Self {
        XSeries::zero_to(X_MAX)
    }

    pub fn zero_to(top: i32) -> Self {
        XSeries { top, terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        XSeries::monomial(0, NPoly::one())
    }

    pub fn constant(c: NPoly) -> Self {
        XSeries::monomial(0, c)
    }

    pub fn monomial(x_exp: i32, c: NPoly) -> Self {
        XSeries::monomial_to(X_MAX, x_exp, c)
    }

    pub fn monomial_to(top: i32, x_exp: i32, c: NPoly) -> Self {
        let mut s = XSeries::zero_to(top);
        s.add_term(x_exp, c);
        s
    }

    pub fn top(&self) -> i32 {
        self.top
    }

    pub fn terms(&self) -> &BTreeMap<i32, NPoly> {
        &self.terms
    }

    pub fn coeff(&self, x_exp: i32) -> NPoly {
        self.terms.get(&x_exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lowest(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    fn add_term(&mut self, x_exp: i32, c: NPoly) {
        if x_exp > self.top || c.is_zero() {
            return;
        }
        let e = self.terms.entry(x_exp).or_default();
        *e = std::mem::take(e) + c;
        if e.is_zero() {
            self.terms.remove(&x_exp);
        }
    }

    /// Same series with a different truncation degree.
    pub fn truncate(&self, top: i32) -> XSeries {
        XSeries {
            top,
            terms: self.terms.iter().filter(|(e, _)| **e <= top).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> XSeries {
        self.scale_poly(&NPoly::constant(k.clone()))
    }

    pub fn scale_poly(&self, k: &NPoly) -> XSeries {
        let mut out = XSeries::zero_to(self.top);
        for (e, c) in &self.terms {
            out.add_term(*e, c * k);
        }
        out
    }

    pub fn checked_mul(&self, rhs: &XSeries) -> Result<XSeries, SeriesError> {
        let mut out = XSeries::zero_to(self.top.min(rhs.top));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea + eb;
                if e < X_MIN {
                    return Err(SeriesError::RangeOverflow(e));
                }
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// exp of a series without terms of degree below 1.
    pub fn exp(&self) -> XSeries {
        assert!(self.lowest().is_none_or(|e| e >= 1), "exp needs a series without constant term");
        let mut out = XSeries::monomial_to(self.top, 0, NPoly::one());
        let mut power = out.clone();
        for k in 1..=self.top.max(0) {
            power = power.checked_mul(self).expect("positive degrees").scale(&rat(1, k as i64));
            if power.is_zero() {
                break;
            }
            out = out + power.clone();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({"x_exp": e, "n_poly": c.to_json()}))
                .collect(),
        )
    }
}

impl Add for XSeries {
    type Output = XSeries;
    fn add(self, rhs: XSeries) -> XSeries {
        let mut out = XSeries { top: self.top.min(rhs.top), terms: BTreeMap::new() };
        for (e, c) in self.terms.into_iter().chain(rhs.terms) {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for XSeries {
    type Output = XSeries;
    fn neg(self) -> XSeries {
        XSeries { top: self.top, terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl Sub for XSeries {
    type Output = XSeries;
    fn sub(self, rhs: XSeries) -> XSeries {
        self + (-rhs)
    }
}

impl Mul for &XSeries {
    type Output = XSeries;
    fn mul(self, rhs: &XSeries) -> XSeries {
        self.checked_mul(rhs).expect("series product left the window")
    }
}

impl Mul for XSeries {
    type Output = XSeries;
    fn mul(self, rhs: XSeries) -> XSeries {
        &self * &rhs
    }
}

impl fmt::Display for XSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("({c})"),
                _ => format!("({c})*x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Weights of the basis diagrams, with the (-1/2)^k factors already
/// absorbed where the table lists them that way.
#[derive(Clone, Debug)]
pub struct WeightTable {
    entries: BTreeMap<&'static str, XSeries>,
}

pub const WEIGHT_KEYS: &[&str] = &[
    "wK.chord1", "wK.c2", "wK.d3", "wK.f4a", "wK.f4b", "wL.ca", "wL.ec", "wL.ef", "wL.fc", "wL.fd",
    "wL.fe", "wL.ff", "wL.fg", "wL.fh", "wL.fi", "wL.fk", "wL.fj",
];

pub fn weight_table() -> WeightTable {
    let p = NPoly::from_terms;
    let n2m1 = p(&[(2, 1, 1), (0, -1, 1)]);
    let n2m2 = p(&[(2, 1, 1), (0, -2, 1)]);
    let n2p2 = p(&[(2, 1, 1), (0, 2, 1)]);
    let quartic = p(&[(4, 1, 1), (2, -3, 1), (0, 3, 1)]);
    let mono = |k: i64, d: i64, e: i32| NPoly::monomial(rat(k, d), e);
    let w = |deg: i32, poly: NPoly| XSeries::monomial(deg, poly);
    let entries = BTreeMap::from([
        ("wK.chord1", w(1, &n2m1 * &mono(1, 2, -1))),
        ("wK.c2", w(2, &n2m1 * &mono(-1, 4, 0))),
        ("wK.d3", w(3, &n2m1 * &mono(1, 8, 1))),
        ("wK.f4a", w(4, &n2m1 * &mono(-1, 16, 2))),
        ("wK.f4b", w(4, &(&n2m1 * &n2p2) * &mono(1, 16, 0))),
        ("wL.ca", w(2, &n2m1 * &mono(1, 4, -2))),
        ("wL.ec", w(3, &(&n2m1 * &n2m2) * &mono(1, 8, -3))),
        ("wL.ef", w(3, &n2m1 * &mono(-1, 8, -1))),
        ("wL.fc", w(3, &n2m1 * &mono(1, 8, -3))),
        ("wL.fd", w(4, &(&n2m1 * &quartic) * &mono(1, 16, -4))),
        ("wL.fe", w(4, &(&n2m1 * &n2m2) * &mono(-1, 16, -2))),
        ("wL.ff", w(4, &n2m1 * &mono(1, 16, 0))),
        ("wL.fg", w(4, &(&n2m1 * &n2m1) * &mono(1, 16, -4))),
        ("wL.fh", w(4, &(&n2m1 * &n2m2) * &mono(1, 16, -4))),
        ("wL.fi", w(4, &n2m1 * &mono(-1, 16, -2))),
        ("wL.fk", w(4, &(&n2m1 * &n2m1) * &mono(1, 16, -4))),
        ("wL.fj", w(4, &n2m1 * &mono(1, 16, -4))),
    ]);
    WeightTable { entries }
}

impl WeightTable {
    pub fn get(&self, key: &str) -> &XSeries {
        &self.entries[key]
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

/// Coefficients of the basis diagrams for one link, computed from a report.
struct Coefficients {
    knot: Vec<(&'static str, BigRational)>,
    link: Vec<(&'static str, BigRational)>,
}

fn sum<'a>(vals: impl Iterator<Item = &'a BigRational>) -> BigRational {
    vals.fold(BigRational::zero(), |a, b| a + b)
}

fn link_coefficients(r: &InvariantReport) -> Result<Vec<(&'static str, BigRational)>, SeriesError> {
    let n = r.components;
    let v1 = |i: usize, j: usize| -> Result<BigRational, SeriesError> {
        r.v1.get(&(i.min(j), i.max(j)))
            .cloned()
            .ok_or_else(|| SeriesError::MissingInvariant(format!("v1({i},{j})")))
    };
    let half = rat(1, 2);
    let mut ca = BigRational::zero();
    let mut ec = BigRational::zero();
    let mut fd = BigRational::zero();
    let mut ef = BigRational::zero();
    let mut fe = BigRational::zero();
    let mut ff = BigRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            let v = v1(i, j)?;
            let v32 = r.v3_2.get(&(i, j)).ok_or_else(|| SeriesError::MissingInvariant(format!("v3_2({i},{j})")))?;
            let v43 = r.v4_3.get(&(i, j)).ok_or_else(|| SeriesError::MissingInvariant(format!("v4_3({i},{j})")))?;
            let v2 = &v * &v;
            ca += &v2 * &half;
            ec += &v2 * &v * rat(1, 6);
            fd += &v2 * &v2 * rat(1, 24);
            ef += v32;
            fe += &v * v32 * &half;
            ff += v43;
        }
    }
    let mut fc = BigRational::zero();
    let mut fg = BigRational::zero();
    let mut fh = BigRational::zero();
    let mut fi = BigRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                fc += v1(i, j)? * v1(j, k)? * v1(k, i)?;
                fi += r
                    .v4_4
                    .get(&(i, j, k))
                    .ok_or_else(|| SeriesError::MissingInvariant(format!("v4_4({i},{j},{k})")))?;
                // each component in turn as the shared one
                for (a, b, c) in [(i, j, k), (j, i, k), (k, i, j)] {
                    let (ab, ac, bc) = (v1(a, b)?, v1(a, c)?, v1(b, c)?);
                    fg += &ab * &ab * &half * &ac * &ac * &half;
                    fh += &ab * &ac * &half * &bc * &bc;
                }
            }
        }
    }
    let mut fk = BigRational::zero();
    let mut fj = BigRational::zero();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    for ((a, b), (c, d)) in [((i, j), (k, l)), ((i, k), (j, l)), ((i, l), (j, k))] {
                        let (x, y) = (v1(a, b)?, v1(c, d)?);
                        fk += &x * &x * &half * &y * &y * &half;
                    }
                    for [a, b, c, d] in [[i, j, k, l], [i, k, j, l], [i, j, l, k]] {
                        fj += v1(a, b)? * v1(b, c)? * v1(c, d)? * v1(d, a)?;
                    }
                }
            }
        }
    }
    Ok(vec![
        ("wL.ca", ca),
        ("wL.ec", ec),
        ("wL.ef", ef),
        ("wL.fc", fc),
        ("wL.fd", fd),
        ("wL.fe", fe),
        ("wL.ff", ff),
        ("wL.fg", fg),
        ("wL.fh", fh),
        ("wL.fi", fi),
        ("wL.fk", fk),
        ("wL.fj", fj),
    ])
}

fn knot_sums(r: &InvariantReport) -> [BigRational; 4] {
    [
        sum(r.v2.values()),
        sum(r.v3_1.values()),
        sum(r.v4_1.values()),
        sum(r.v4_2.values()),
    ]
}

fn check_knot_keys(r: &InvariantReport) -> Result<(), SeriesError> {
    for i in 0..r.components {
        for (name, m) in [("v2", &r.v2), ("v3_1", &r.v3_1), ("v4_1", &r.v4_1), ("v4_2", &r.v4_2)] {
            if !m.contains_key(&i) {
                return Err(SeriesError::MissingInvariant(format!("{name}({i})")));
            }
        }
    }
    Ok(())
}

fn homfly_coefficients(r: &InvariantReport) -> Result<Coefficients, SeriesError> {
    check_knot_keys(r)?;
    let [s2, s31, s41, s42] = knot_sums(r);
    let w1 = sum(r.v1.values());
    Ok(Coefficients {
        knot: vec![
            ("wK.chord1", -w1),
            ("wK.c2", rat(1, 6) + s2),
            ("wK.d3", s31),
            ("wK.f4a", rat(-1, 360) + s41),
            ("wK.f4b", rat(1, 360) + s42),
        ],
        link: link_coefficients(r)?,
    })
}

fn kontsevich_coefficients(r: &InvariantReport) -> Result<Coefficients, SeriesError> {
    check_knot_keys(r)?;
    let [s2, s31, s41, s42] = knot_sums(r);
    Ok(Coefficients {
        knot: vec![("wK.c2", s2), ("wK.d3", s31), ("wK.f4a", s41), ("wK.f4b", s42)],
        link: link_coefficients(r)?,
    })
}

fn assemble(c: &Coefficients) -> XSeries {
    let table = weight_table();
    let exponent = c
        .knot
        .iter()
        .fold(XSeries::zero(), |acc, (k, u)| acc + table.get(k).scale(u));
    let linear = c
        .link
        .iter()
        .fold(XSeries::one(), |acc, (k, w)| acc + table.get(k).scale(w));
    &exponent.exp() * &linear
}

/// Degree-4 expansion of the HOMFLY polynomial assembled from invariants.
pub fn homfly_series(r: &InvariantReport) -> Result<XSeries, SeriesError> {
    let prefactor = NPoly::monomial(BigRational::one(), r.components as i32 - 1);
    Ok(assemble(&homfly_coefficients(r)?).scale_poly(&prefactor))
}

/// Degree-4 truncation of the weighted Kontsevich integral.
pub fn kontsevich_series(r: &InvariantReport) -> Result<XSeries, SeriesError> {
    Ok(assemble(&kontsevich_coefficients(r)?))
}
