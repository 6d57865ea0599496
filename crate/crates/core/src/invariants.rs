//! The degree-4 link invariants and their correction terms.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::gaussdiag::{gauss, partial_gauss, GaussSum};
use crate::linkcode::{CrossingId, LinkCode, LinkError};
use crate::matchcount::{pair, pair_sum, pair_sum_single, Catalog, ConfigCombo, Configuration};
use crate::polyalg::{int, rat};
use crate::surgery::{alpha_with, r_operator_with, AlphaRule, WordCombo};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("expected {expected} components, got {got}")]
    Arity { expected: usize, got: usize },
    #[error(transparent)]
    Link(#[from] LinkError),
}

type Q = BigRational;

/// All invariants of a link, keyed by component index tuples (ascending).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvariantReport {
    pub components: usize,
    pub v1: BTreeMap<(usize, usize), Q>,
    pub v2: BTreeMap<usize, Q>,
    pub v3_1: BTreeMap<usize, Q>,
    pub v3_2: BTreeMap<(usize, usize), Q>,
    pub v4_1: BTreeMap<usize, Q>,
    pub v4_2: BTreeMap<usize, Q>,
    pub v4_3: BTreeMap<(usize, usize), Q>,
    pub v4_4: BTreeMap<(usize, usize, usize), Q>,
}

fn q_json(q: &Q) -> Value {
    if q.is_integer() {
        json!(q.numer().to_string())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

impl InvariantReport {
    pub fn to_json(&self) -> Value {
        fn section<K>(m: &BTreeMap<K, Q>, name: impl Fn(&K) -> String) -> Value {
            Value::Object(m.iter().map(|(k, v)| (name(k), q_json(v))).collect::<Map<_, _>>())
        }
        json!({
            "components": self.components,
            "v1": section(&self.v1, |(i, j)| format!("{i},{j}")),
            "v2": section(&self.v2, |i| i.to_string()),
            "v3_1": section(&self.v3_1, |i| i.to_string()),
            "v3_2": section(&self.v3_2, |(i, j)| format!("{i},{j}")),
            "v4_1": section(&self.v4_1, |i| i.to_string()),
            "v4_2": section(&self.v4_2, |i| i.to_string()),
            "v4_3": section(&self.v4_3, |(i, j)| format!("{i},{j}")),
            "v4_4": section(&self.v4_4, |(i, j, k)| format!("{i},{j},{k}")),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("components {}\n", self.components);
        let mut line = |name: &str, key: String, v: &Q| out.push_str(&format!("{name}({key}) = {v}\n"));
        for (i, v) in &self.v2 {
            line("v2", i.to_string(), v);
        }
        for (i, v) in &self.v3_1 {
            line("v3.1", i.to_string(), v);
        }
        for (i, v) in &self.v4_1 {
            line("v4.1", i.to_string(), v);
        }
        for (i, v) in &self.v4_2 {
            line("v4.2", i.to_string(), v);
        }
        for ((i, j), v) in &self.v1 {
            line("v1", format!("{i},{j}"), v);
        }
        for ((i, j), v) in &self.v3_2 {
            line("v3.2", format!("{i},{j}"), v);
        }
        for ((i, j), v) in &self.v4_3 {
            line("v4.3", format!("{i},{j}"), v);
        }
        for ((i, j, k), v) in &self.v4_4 {
            line("v4.4", format!("{i},{j},{k}"), v);
        }
        out
    }
}

/// Evaluates the invariants against a catalog.
#[derive(Clone, Copy)]
pub struct Evaluator<'a> {
    catalog: &'a Catalog,
    rule: AlphaRule,
    prune: bool,
    reverse_words: bool,
}

fn combo(cat: &Catalog, terms: &[(Q, &str)]) -> ConfigCombo {
    terms.iter().fold(ConfigCombo::new(), |c, (k, key)| c.with(k.clone(), cat.at(key)))
}

fn arity(l: &LinkCode, n: usize) -> Result<(), InvariantError> {
    if l.num_components() == n {
        Ok(())
    } else {
        Err(InvariantError::Arity { expected: n, got: l.num_components() })
    }
}

impl<'a> Evaluator<'a> {
    pub fn new(catalog: &'a Catalog) -> Self {
        Evaluator { catalog, rule: AlphaRule::FirstOver, prune: true, reverse_words: false }
    }

    /// Uses a different descending reference.
    pub fn with_rule(mut self, rule: AlphaRule) -> Self {
        self.rule = rule;
        self
    }

    /// Evaluates every correction-term summand even when its pattern factor
    /// vanishes.
    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    /// Pairs split letters with the crossing selection in descending order.
    pub fn with_reversed_selection(mut self) -> Self {
        self.reverse_words = true;
        self
    }

    fn cfg(&self, key: &str) -> &'a Configuration {
        self.catalog.at(key)
    }

    pub fn bar_gauss(&self, l: &LinkCode) -> GaussSum {
        let mut s = GaussSum::single(gauss(l));
        s.push(int(-1), gauss(&alpha_with(l, self.rule)));
        s
    }

    pub fn bar_partial(&self, l: &LinkCode, a: &BTreeSet<CrossingId>) -> Result<GaussSum, LinkError> {
        let mut s = GaussSum::single(partial_gauss(l, a)?);
        s.push(int(-1), partial_gauss(&alpha_with(l, self.rule), a)?);
        Ok(s)
    }

    fn r_bb(&self, l: &LinkCode, sel: &[CrossingId], words: &WordCombo) -> Result<Q, LinkError> {
        let (sel, words) = if self.reverse_words && sel.len() > 1 {
            (sel.iter().rev().copied().collect::<Vec<_>>(), words.reversed_words())
        } else {
            (sel.to_vec(), words.clone())
        };
        let r = r_operator_with(l, &sel, &words, self.rule)?;
        Ok(pair_sum_single(&r, self.cfg("v2.D1")))
    }

    /// Sum over crossings a of <P(L:a), pattern> <R(L:a, words), v2.D1>.
    fn single_sum(&self, l: &LinkCode, pattern: &str, words: &WordCombo) -> Result<Q, LinkError> {
        let mut total = Q::zero();
        for a in l.crossing_ids() {
            let p = pair(&partial_gauss(l, &BTreeSet::from([a]))?, self.cfg(pattern));
            if self.prune && p.is_zero() {
                continue;
            }
            total += p * self.r_bb(l, &[a], words)?;
        }
        Ok(total)
    }

    /// Sum over unordered crossing pairs of <Pbar(L:a,b), pattern> <R(L:a,b, words), v2.D1>.
    fn pair_sum_terms(&self, l: &LinkCode, pattern: &str, words: &WordCombo) -> Result<Q, LinkError> {
        let ids: Vec<CrossingId> = l.crossing_ids().into_iter().collect();
        let mut total = Q::zero();
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i + 1..] {
                let p = pair_sum_single(&self.bar_partial(l, &BTreeSet::from([a, b]))?, self.cfg(pattern));
                if self.prune && p.is_zero() {
                    continue;
                }
                total += p * self.r_bb(l, &[a, b], words)?;
            }
        }
        Ok(total)
    }

    pub fn v1(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        Ok(pair(&gauss(l), self.cfg("v1.D1")))
    }

    pub fn v2(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        Ok(rat(-1, 6) + pair_sum_single(&self.bar_gauss(k), self.cfg("v2.D1")))
    }

    pub fn i3_1(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        Ok(self.single_sum(k, "pat.1chord", &WordCombo::from_ints(&[(1, "C"), (-1, "A")]))?)
    }

    pub fn v3_1(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let c = combo(self.catalog, &[(int(2), "v3.1.D1"), (int(1), "v3.1.D2"), (rat(1, 2), "v3.1.D3")]);
        Ok(pair_sum(&GaussSum::single(gauss(k)), &c) - self.i3_1(k)?)
    }

    pub fn i3_2(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        Ok(self.single_sum(l, "pat.join", &WordCombo::from_ints(&[(1, "A"), (-1, "C")]))?)
    }

    pub fn v3_2(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        let c = combo(self.catalog, &[(int(1), "v3.2.D1"), (int(1), "v3.2.D2"), (rat(1, 3), "v1.D1")]);
        Ok(pair_sum(&GaussSum::single(gauss(l)), &c) - self.i3_2(l)?)
    }

    pub fn i4_1_1(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let w = WordCombo::from_ints(&[(3, "CC"), (-2, "AC"), (-2, "CA"), (1, "BB")]);
        Ok(self.pair_sum_terms(k, "pat.pair.X", &w)?)
    }

    pub fn i4_1_2(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let w = WordCombo::from_ints(&[(1, "CC"), (-1, "AC"), (-1, "CA"), (1, "AA")]);
        Ok(self.pair_sum_terms(k, "pat.pair.P", &w)?)
    }

    pub fn i4_2(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let w = WordCombo::from_ints(&[(1, "CC"), (-1, "AC"), (-1, "CA"), (1, "BB")]);
        Ok(self.pair_sum_terms(k, "pat.pair.X", &w)?)
    }

    pub fn i4_3_1(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        let w = WordCombo::from_ints(&[(1, "CC"), (-1, "BB")]);
        Ok(self.pair_sum_terms(l, "pat.2join", &w)?)
    }

    pub fn i4_3_2(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        let w = WordCombo::from_ints(&[(1, "AC"), (1, "CA"), (-1, "CC"), (-1, "AA")]);
        Ok(self.pair_sum_terms(l, "pat.I432", &w)?)
    }

    pub fn i4_4(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 3)?;
        let w = WordCombo::from_ints(&[(1, "CC"), (1, "AA"), (-1, "AC"), (-1, "CA")]);
        Ok(self.pair_sum_terms(l, "pat.3chain", &w)?)
    }

    /// <Gbar(L), C> for one catalog key.
    pub fn bar_pairing(&self, l: &LinkCode, key: &str) -> Q {
        pair_sum_single(&self.bar_gauss(l), self.cfg(key))
    }

    fn bar_combo(&self, l: &LinkCode, terms: &[(Q, &str)]) -> Q {
        pair_sum(&self.bar_gauss(l), &combo(self.catalog, terms))
    }

    pub fn v4_1(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let main = self.bar_combo(
            k,
            &[
                (int(1), "v4.1.D1"),
                (int(1), "v4.1.D2"),
                (int(2), "v4.1.D3"),
                (int(4), "v4.1.D4"),
                (int(5), "v4.1.D5"),
                (int(7), "v4.1.D6"),
                (rat(1, 6), "v2.D1"),
                (rat(1, 2), "v4.1.E1"),
                (int(2), "v4.1.E2"),
                (int(2), "v4.1.E3"),
            ],
        );
        Ok(main - self.i4_1_1(k)? - self.i4_1_2(k)? + rat(1, 360))
    }

    pub fn v4_2(&self, k: &LinkCode) -> Result<Q, InvariantError> {
        arity(k, 1)?;
        let main = self.bar_combo(
            k,
            &[
                (int(1), "v4.1.D4"),
                (int(1), "v4.1.D5"),
                (int(1), "v4.1.D6"),
                (rat(1, 2), "v4.1.E2"),
                (rat(-1, 6), "v2.D1"),
            ],
        );
        Ok(main - self.i4_2(k)? - rat(1, 360))
    }

    pub fn v4_3(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 2)?;
        let main = self.bar_combo(
            l,
            &[
                (int(1), "v4.3.A1"),
                (int(1), "v4.3.A2"),
                (int(2), "v4.3.A3"),
                (int(1), "v4.3.A4"),
                (int(1), "v4.3.A5"),
                (int(1), "v4.3.A6"),
                (rat(1, 2), "v4.3.A7"),
                (rat(1, 2), "v4.3.A8"),
            ],
        );
        Ok(main - self.i4_3_1(l)? - self.i4_3_2(l)?)
    }

    pub fn v4_4(&self, l: &LinkCode) -> Result<Q, InvariantError> {
        arity(l, 3)?;
        let main = self.bar_combo(l, &[(int(1), "v4.4.B1"), (int(1), "v4.4.B2"), (int(1), "v4.4.B3")]);
        Ok(main - self.i4_4(l)?)
    }

    /// Evaluates every invariant on every component subset of matching size.
    pub fn all(&self, l: &LinkCode) -> Result<InvariantReport, InvariantError> {
        let n = l.num_components();
        let mut r = InvariantReport { components: n, ..Default::default() };
        for i in 0..n {
            let k = l.sub_link(&[i])?;
            r.v2.insert(i, self.v2(&k)?);
            r.v3_1.insert(i, self.v3_1(&k)?);
            r.v4_1.insert(i, self.v4_1(&k)?);
            r.v4_2.insert(i, self.v4_2(&k)?);
        }
        for i in 0..n {
            for j in i + 1..n {
                let p = l.sub_link(&[i, j])?;
                r.v1.insert((i, j), self.v1(&p)?);
                r.v3_2.insert((i, j), self.v3_2(&p)?);
                r.v4_3.insert((i, j), self.v4_3(&p)?);
                for k in j + 1..n {
                    let t = l.sub_link(&[i, j, k])?;
                    r.v4_4.insert((i, j, k), self.v4_4(&t)?);
                }
            }
        }
        Ok(r)
    }
}

/// Report using the built-in catalog and default conventions.
pub fn all_invariants(l: &LinkCode) -> Result<InvariantReport, InvariantError> {
    Evaluator::new(Catalog::builtin()).all(l)
}
