//! HOMFLY polynomial by skein recursion, and its substitution into the
//! degree-4 series.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::{Evaluator, InvariantError, InvariantReport};
use crate::linkcode::{CrossingId, LinkCode, LinkError, Sign};
use crate::matchcount::Catalog;
use crate::polyalg::{big_json, int, rat, NPoly, XSeries, X_MAX};
use crate::surgery::{alpha_defect_order, smooth, AlphaRule, Letter, SplitWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomflyError {
    #[error("substituted series has a nonzero x^{0} term")]
    PrincipalPartNonzero(i32),
}

/// Laurent polynomial in t and z with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HomflyPoly {
    coeffs: BTreeMap<(i32, i32), BigRational>,
}

impl HomflyPoly {
    pub fn zero() -> Self {
        HomflyPoly::default()
    }

    pub fn one() -> Self {
        HomflyPoly::monomial(BigRational::one(), 0, 0)
    }

    pub fn monomial(c: BigRational, t_exp: i32, z_exp: i32) -> Self {
        let mut p = HomflyPoly::zero();
        p.add_term(t_exp, z_exp, c);
        p
    }

    /// Builds from (coefficient, t-exponent, z-exponent) triples.
    pub fn from_terms(terms: &[(i64, i32, i32)]) -> Self {
        terms
            .iter()
            .fold(HomflyPoly::zero(), |acc, &(c, t, z)| acc + HomflyPoly::monomial(int(c), t, z))
    }

    /// (t - 1/t) / z.
    pub fn delta() -> Self {
        HomflyPoly::from_terms(&[(1, 1, -1), (-1, -1, -1)])
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(HomflyPoly::one(), |acc, _| &acc * self)
    }

    pub fn coeffs(&self) -> &BTreeMap<(i32, i32), BigRational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_z_exp(&self) -> Option<i32> {
        self.coeffs.keys().map(|(_, z)| *z).min()
    }

    /// Multiplies by c * t^a * z^b.
    pub fn shift(&self, c: &BigRational, a: i32, b: i32) -> Self {
        let mut out = HomflyPoly::zero();
        for ((t, z), k) in &self.coeffs {
            out.add_term(t + a, z + b, k * c);
        }
        out
    }

    fn add_term(&mut self, t: i32, z: i32, c: BigRational) {
        let e = self.coeffs.entry((t, z)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&(t, z));
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|((t, z), c)| {
                    json!({"t_exp": t, "z_exp": z, "num": big_json(c.numer()), "den": big_json(c.denom())})
                })
                .collect(),
        )
    }
}

impl Add for HomflyPoly {
    type Output = HomflyPoly;
    fn add(mut self, rhs: HomflyPoly) -> HomflyPoly {
        for ((t, z), c) in rhs.coeffs {
            self.add_term(t, z, c);
        }
        self
    }
}

impl Neg for HomflyPoly {
    type Output = HomflyPoly;
    fn neg(self) -> HomflyPoly {
        HomflyPoly { coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Sub for HomflyPoly {
    type Output = HomflyPoly;
    fn sub(self, rhs: HomflyPoly) -> HomflyPoly {
        self + (-rhs)
    }
}

impl Mul for &HomflyPoly {
    type Output = HomflyPoly;
    fn mul(self, rhs: &HomflyPoly) -> HomflyPoly {
        let mut out = HomflyPoly::zero();
        for ((ta, za), ca) in &self.coeffs {
            for ((tb, zb), cb) in &rhs.coeffs {
                out.add_term(ta + tb, za + zb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for HomflyPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // highest t first, then highest z
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        for (i, ((t, z), c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            let mut factors = vec![];
            if !mag.is_one() || (*t == 0 && *z == 0) {
                factors.push(mag.to_string());
            }
            if *t != 0 {
                factors.push(format!("t^{t}"));
            }
            if *z != 0 {
                factors.push(format!("z^{z}"));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// The diagrams with crossing `a` positive, negative and smoothed.
pub fn skein_triple(l: &LinkCode, a: CrossingId) -> Result<(LinkCode, LinkCode, LinkCode), LinkError> {
    let plus = l.with_sign(a, Sign::Pos)?;
    let minus = l.with_sign(a, Sign::Neg)?;
    let zero = smooth(l, &[a], &SplitWord(vec![Letter::A]))?;
    Ok((plus, minus, zero))
}

/// Memoizing skein solver.
#[derive(Default)]
pub struct HomflySolver {
    memo: HashMap<LinkCode, HomflyPoly>,
}

impl HomflySolver {
    pub fn new() -> Self {
        HomflySolver::default()
    }

    pub fn cache_len(&self) -> usize {
        self.memo.len()
    }

    pub fn compute(&mut self, l: &LinkCode) -> HomflyPoly {
        let key = canonical(l);
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let p = self.expand(&key);
        debug_assert!(p.min_z_exp().is_none_or(|z| z >= 1 - key.num_components() as i32));
        self.memo.insert(key, p.clone());
        p
    }

    fn expand(&mut self, l: &LinkCode) -> HomflyPoly {
        let Some(&d) = alpha_defect_order(l, AlphaRule::FirstOver).first() else {
            return HomflyPoly::delta().pow(l.num_components().saturating_sub(1) as u32);
        };
        let switched = l.switch_crossing(d).expect("defect crossing exists");
        let zero = smooth(l, &[d], &SplitWord(vec![Letter::A])).expect("defect crossing exists");
        let ps = self.compute(&switched);
        let p0 = self.compute(&zero);
        match l.sign(d).expect("defect crossing exists") {
            // t P+ - t^-1 P- = z P0
            Sign::Pos => ps.shift(&int(1), -2, 0) + p0.shift(&int(1), -1, 1),
            Sign::Neg => ps.shift(&int(1), 2, 0) - p0.shift(&int(1), 1, 1),
        }
    }
}

pub fn homfly(l: &LinkCode) -> HomflyPoly {
    HomflySolver::new().compute(l)
}

/// Above this many candidate orderings the memo key is only renumbered.
const CANON_BUDGET: usize = 4096;

/// A representative of `l` up to basepoint rotation, component order and
/// crossing renumbering.
pub fn canonical(l: &LinkCode) -> LinkCode {
    let comps = l.components();
    let n = comps.len();
    let mut budget: usize = (1..=n).product();
    for c in comps {
        budget = budget.saturating_mul(c.len().max(1));
    }
    if budget > CANON_BUDGET {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(comps[i].len()));
        return l.permute_components(&order).unwrap().renumbered();
    }
    let mut best: Option<LinkCode> = None;
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let permuted = l.permute_components(&order).unwrap();
        let mut shifts = vec![0usize; n];
        loop {
            let mut cand = permuted.clone();
            for (i, s) in shifts.iter().enumerate() {
                cand = cand.rotate(i, *s).unwrap();
            }
            let cand = cand.renumbered();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            // odometer over rotations
            let mut i = 0;
            while i < n {
                shifts[i] += 1;
                if shifts[i] < permuted.components()[i].len() {
                    break;
                }
                shifts[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        if !next_perm(&mut order) {
            break;
        }
    }
    best.unwrap_or_else(LinkCode::empty)
}

fn next_perm(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn factorial(k: i64) -> i64 {
    (1..=k).product()
}

/// (z/x) with z = e^{x/2} - e^{-x/2}, up to x^top.
fn z_over_x(top: i32) -> XSeries {
    let mut s = XSeries::zero_to(top);
    for k in 0..=top.max(0) / 2 {
        let d = 4i64.pow(k as u32) * factorial(2 * k as i64 + 1);
        s = s + XSeries::monomial_to(top, 2 * k, NPoly::constant(rat(1, d)));
    }
    s
}

/// 1/f for a series with constant term 1.
fn inverse_unit(f: &XSeries) -> XSeries {
    let top = f.top();
    let h = XSeries::monomial_to(top, 0, NPoly::one()) - f.clone();
    let mut out = XSeries::monomial_to(top, 0, NPoly::one());
    let mut power = out.clone();
    for _ in 0..top.max(0) {
        power = &power * &h;
        if power.is_zero() {
            break;
        }
        out = out + power.clone();
    }
    out
}

/// e^{a N x / 2} up to x^top.
fn exp_t(a: i32, top: i32) -> XSeries {
    let mut s = XSeries::zero_to(top);
    for k in 0..=top.max(0) {
        let c = rat((a as i64).pow(k as u32), 2i64.pow(k as u32) * factorial(k as i64));
        s = s + XSeries::monomial_to(top, k, NPoly::monomial(c, k));
    }
    s
}

/// P(e^{Nx/2}, e^{x/2} - e^{-x/2}) truncated at x^4.
pub fn substitute(p: &HomflyPoly) -> Result<XSeries, HomflyError> {
    let mut by_z: BTreeMap<i32, Vec<(i32, BigRational)>> = BTreeMap::new();
    for ((t, z), c) in p.coeffs() {
        by_z.entry(*z).or_default().push((*t, c.clone()));
    }
    let mut raw: BTreeMap<i32, NPoly> = BTreeMap::new();
    for (b, terms) in by_z {
        let top = X_MAX - b;
        let zx = z_over_x(top);
        let base = if b >= 0 { zx } else { inverse_unit(&zx) };
        let mut factor = XSeries::monomial_to(top, 0, NPoly::one());
        for _ in 0..b.unsigned_abs() {
            factor = &factor * &base;
        }
        let q = terms
            .iter()
            .fold(XSeries::zero_to(top), |acc, (a, c)| acc + exp_t(*a, top).scale(c));
        for (e, c) in (&factor * &q).terms() {
            let slot = raw.entry(e + b).or_default();
            *slot = std::mem::take(slot) + c.clone();
        }
    }
    let mut out = XSeries::zero();
    for (e, c) in raw {
        if c.is_zero() {
            continue;
        }
        if e < 0 {
            return Err(HomflyError::PrincipalPartNonzero(e));
        }
        out = out + XSeries::monomial(e, c);
    }
    Ok(out)
}

/// Which way the smoothing at the chosen crossing changes the component count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkeinCase {
    /// Self-crossing: L0 has one component more.
    Split,
    /// Joining crossing: L0 has one component fewer.
    Join,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SkeinReport {
    pub case: SkeinCase,
    /// (name, value) for V1..V7 or V8..V10.
    pub values: Vec<(String, BigRational)>,
}

impl SkeinReport {
    pub fn all_zero(&self) -> bool {
        self.values.iter().all(|(_, v)| v.is_zero())
    }
}

struct Lookup(InvariantReport);

impl Lookup {
    fn v1(&self, i: usize, j: usize) -> BigRational {
        self.0.v1[&(i.min(j), i.max(j))].clone()
    }
    fn v3_2(&self, i: usize, j: usize) -> BigRational {
        self.0.v3_2[&(i.min(j), i.max(j))].clone()
    }
    fn v4_3(&self, i: usize, j: usize) -> BigRational {
        self.0.v4_3[&(i.min(j), i.max(j))].clone()
    }
    fn v4_4(&self, i: usize, j: usize, k: usize) -> BigRational {
        let mut v = [i, j, k];
        v.sort();
        self.0.v4_4[&(v[0], v[1], v[2])].clone()
    }
}

/// Evaluates the degree-4 consistency identities for the skein triple at `a`.
pub fn verify_skein_identities(l: &LinkCode, a: CrossingId) -> Result<SkeinReport, InvariantError> {
    verify_skein_identities_with(&Evaluator::new(Catalog::builtin()), l, a)
}

pub fn verify_skein_identities_with(
    ev: &Evaluator,
    l: &LinkCode,
    a: CrossingId,
) -> Result<SkeinReport, InvariantError> {
    let [(c1, _), (c2, _)] = l.locate(a)?;
    let (lp, lm, l0) = skein_triple(l, a)?;
    let (p, m, z) = (Lookup(ev.all(&lp)?), Lookup(ev.all(&lm)?), Lookup(ev.all(&l0)?));
    let n = l.num_components();
    let q = |x: i64, y: i64| rat(x, y);
    let two = int(2);
    let mut values = vec![];
    if c1 == c2 {
        // smooth() keeps untouched components in place and inserts the two
        // pieces of component c at positions c and c + 1 of L0
        let c = c1;
        let (a0, b0) = (c, c + 1);
        let others: Vec<(usize, usize)> =
            (0..n).filter(|&o| o != c).map(|o| (o, if o < c { o } else { o + 1 })).collect();
        let lk0 = z.v1(a0, b0);
        let s2 = (&p.0.v2[&c] + &m.0.v2[&c]) - &two * (&z.0.v2[&a0] + &z.0.v2[&b0]);
        let v1 = (&p.0.v2[&c] - &m.0.v2[&c]) - &two * &lk0;
        let v2 = (&p.0.v3_1[&c] - &m.0.v3_1[&c]) - (&p.0.v2[&c] + &m.0.v2[&c])
            + &two * (&z.0.v2[&a0] + &z.0.v2[&b0])
            - &lk0 * &lk0
            + q(1, 3);
        let mut v3 = BigRational::zero();
        let mut v6 = BigRational::zero();
        for &(o, o0) in &others {
            v3 += (p.v3_2(o, c) - m.v3_2(o, c)) - &two * z.v1(o0, a0) * z.v1(o0, b0);
            v6 += (p.v4_3(o, c) - m.v4_3(o, c)) - (p.v3_2(o, c) + m.v3_2(o, c))
                + &two * (z.v3_2(o0, a0) + z.v3_2(o0, b0))
                - &two * &lk0 * z.v1(o0, a0) * z.v1(o0, b0);
        }
        let v4 = (&p.0.v4_1[&c] - &m.0.v4_1[&c]) - (&p.0.v3_1[&c] + &m.0.v3_1[&c])
            + &two * (&z.0.v3_1[&a0] + &z.0.v3_1[&b0])
            + z.v3_2(a0, b0)
            - q(3, 2) * &lk0 * &s2
            - q(1, 3) * &lk0 * &lk0 * &lk0
            + q(7, 6) * &lk0;
        let v5 = (&p.0.v4_2[&c] - &m.0.v4_2[&c]) + z.v3_2(a0, b0) + q(1, 6) * &lk0
            - q(1, 2) * &lk0 * &s2;
        let mut v7 = BigRational::zero();
        for (x, &(i, i0)) in others.iter().enumerate() {
            for &(j, j0) in &others[x + 1..] {
                v7 += (p.v4_4(i, j, c) - m.v4_4(i, j, c))
                    - &two * p.v1(i, j) * (z.v1(i0, a0) * z.v1(j0, b0) + z.v1(i0, b0) * z.v1(j0, a0));
            }
        }
        for (k, v) in [v1, v2, v3, v4, v5, v6, v7].into_iter().enumerate() {
            values.push((format!("V{}", k + 1), v));
        }
        Ok(SkeinReport { case: SkeinCase::Split, values })
    } else {
        // the merged component sits at position min(c1, c2) of L0
        let (c1, c2) = (c1.min(c2), c1.max(c2));
        let m0 = c1;
        let others: Vec<(usize, usize)> = (0..n)
            .filter(|&o| o != c1 && o != c2)
            .map(|o| (o, if o < c2 { o } else { o - 1 }))
            .collect();
        let d32 = p.v3_2(c1, c2) - m.v3_2(c1, c2);
        let s32 = p.v3_2(c1, c2) + m.v3_2(c1, c2);
        let v8 = d32.clone() + &two * (&p.0.v2[&c1] + &p.0.v2[&c2]) - &two * &z.0.v2[&m0] - q(1, 3);
        let pp = p.v1(c1, c2) - int(1);
        let v9 = (p.v4_3(c1, c2) - m.v4_3(c1, c2)) + &two * (&p.0.v3_1[&c1] + &p.0.v3_1[&c2])
            - &two * &z.0.v3_1[&m0]
            + &pp / &two * &d32
            - q(1, 2) * &s32;
        let mut v10 = BigRational::zero();
        for &(o, o0) in &others {
            v10 += (p.v4_4(o, c1, c2) - m.v4_4(o, c1, c2)) + &two * (p.v3_2(o, c1) + p.v3_2(o, c2))
                - &two * z.v3_2(o0, m0);
        }
        for (k, v) in [v8, v9, v10].into_iter().enumerate() {
            values.push((format!("V{}", k + 8), v));
        }
        Ok(SkeinReport { case: SkeinCase::Join, values })
    }
}
