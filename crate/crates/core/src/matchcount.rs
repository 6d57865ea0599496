//! Pairing of Gauss diagrams with multiplicity-labelled chord configurations,
//! and the configuration catalog.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::gaussdiag::{GaussDiagram, GaussSum};
use crate::linkcode::Sign;

pub type ChordId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("catalog is missing key {0}")]
    MissingKey(String),
    #[error("configuration {key}: {msg}")]
    Invalid { key: String, msg: String },
    #[error("unknown configuration {0}")]
    Unknown(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

/// A chord configuration on 1 to 4 circles. Each chord has multiplicity 1
/// or 2, which is the power applied to the sign of the matched chord.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub key: String,
    circles: Vec<Vec<ChordId>>,
    mult: BTreeMap<ChordId, u8>,
    // per chord: the circles of its endpoints, smaller first
    ends: Vec<(ChordId, usize, usize)>,
}

impl Configuration {
    pub fn new(
        key: &str,
        circles: Vec<Vec<ChordId>>,
        mult: BTreeMap<ChordId, u8>,
    ) -> Result<Self, CatalogError> {
        let bad = |msg: String| CatalogError::Invalid { key: key.to_string(), msg };
        if circles.is_empty() || circles.len() > 4 {
            return Err(bad(format!("{} circles", circles.len())));
        }
        let mut where_: BTreeMap<ChordId, Vec<usize>> = BTreeMap::new();
        for (c, w) in circles.iter().enumerate() {
            for id in w {
                where_.entry(*id).or_default().push(c);
            }
        }
        for (id, v) in &where_ {
            if v.len() != 2 {
                return Err(bad(format!("chord {id} has {} endpoints", v.len())));
            }
            if !mult.contains_key(id) {
                return Err(bad(format!("chord {id} has no multiplicity")));
            }
        }
        for (id, m) in &mult {
            if !where_.contains_key(id) {
                return Err(bad(format!("chord {id} is not placed on any circle")));
            }
            if *m != 1 && *m != 2 {
                return Err(bad(format!("chord {id} has multiplicity {m}")));
            }
        }
        let ends = where_.into_iter().map(|(id, v)| (id, v[0].min(v[1]), v[0].max(v[1]))).collect();
        Ok(Configuration { key: key.to_string(), circles, mult, ends })
    }

    /// Convenience constructor: every chord has multiplicity 1 unless listed.
    pub fn from_words(key: &str, words: &[&[ChordId]], doubled: &[ChordId]) -> Self {
        let circles: Vec<Vec<ChordId>> = words.iter().map(|w| w.to_vec()).collect();
        let mult = circles
            .iter()
            .flatten()
            .map(|id| (*id, if doubled.contains(id) { 2 } else { 1 }))
            .collect();
        Configuration::new(key, circles, mult).expect("well-formed configuration")
    }

    pub fn circles(&self) -> &[Vec<ChordId>] {
        &self.circles
    }

    pub fn multiplicities(&self) -> &BTreeMap<ChordId, u8> {
        &self.mult
    }

    pub fn num_chords(&self) -> usize {
        self.mult.len()
    }

    /// Same layout with chord `id` given multiplicity `m`.
    pub fn with_multiplicity(&self, id: ChordId, m: u8) -> Result<Self, CatalogError> {
        let mut mult = self.mult.clone();
        mult.insert(id, m);
        Configuration::new(&self.key, self.circles.clone(), mult)
    }

    fn to_text(&self) -> String {
        let mut s = format!("key: {}\ncircles: {}\nchords:", self.key, self.circles.len());
        for (id, m) in &self.mult {
            s.push_str(&format!(" {id}:{m}"));
        }
        s.push('\n');
        for (i, w) in self.circles.iter().enumerate() {
            let toks: Vec<String> = w.iter().map(u32::to_string).collect();
            s.push_str(&format!("circle{}: {}\n", i + 1, toks.join(" ")));
        }
        s
    }
}

/// Signed count of embeddings of `c` into `g`, deduplicated by the induced
/// multiplicity map on the chords of `g`.
pub fn pair_int(g: &GaussDiagram, c: &Configuration) -> i64 {
    let n = c.circles.len();
    if g.circles().len() != n || c.num_chords() > g.num_chords() {
        return 0;
    }
    let gends: Vec<(ChordId, usize, usize)> =
        g.chord_circles().into_iter().map(|(id, (a, b))| (id, a, b)).collect();
    let mut seen: BTreeSet<Vec<(ChordId, u8)>> = BTreeSet::new();
    let mut total = 0i64;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut image = vec![0 as ChordId; c.ends.len()];
    let mut used = vec![false; gends.len()];
    loop {
        let mut st = Search { g, c, gends: &gends, perm: &perm, seen: &mut seen, total: &mut total };
        st.assign(0, &mut image, &mut used);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    total
}

struct Search<'a> {
    g: &'a GaussDiagram,
    c: &'a Configuration,
    gends: &'a [(ChordId, usize, usize)],
    perm: &'a [usize],
    seen: &'a mut BTreeSet<Vec<(ChordId, u8)>>,
    total: &'a mut i64,
}

impl Search<'_> {
    fn assign(&mut self, k: usize, image: &mut [ChordId], used: &mut [bool]) {
        if k == self.c.ends.len() {
            self.finish(image);
            return;
        }
        let (_, p, q) = self.c.ends[k];
        let (gp, gq) = (self.perm[p], self.perm[q]);
        let want = (gp.min(gq), gp.max(gq));
        for (j, &(gid, a, b)) in self.gends.iter().enumerate() {
            if used[j] || (a, b) != want {
                continue;
            }
            used[j] = true;
            image[k] = gid;
            self.assign(k + 1, image, used);
            used[j] = false;
        }
    }

    fn finish(&mut self, image: &[ChordId]) {
        let inverse: BTreeMap<ChordId, ChordId> =
            image.iter().zip(&self.c.ends).map(|(g, (cid, _, _))| (*g, *cid)).collect();
        for (ci, word) in self.c.circles.iter().enumerate() {
            let gcircle = &self.g.circles()[self.perm[ci]];
            let seen: Vec<ChordId> = gcircle.iter().filter_map(|id| inverse.get(id).copied()).collect();
            if !equal_up_to_rotation(&seen, word) {
                return;
            }
        }
        let mut kappa: Vec<(ChordId, u8)> = image
            .iter()
            .zip(&self.c.ends)
            .map(|(g, (cid, _, _))| (*g, self.c.mult[cid]))
            .collect();
        kappa.sort_unstable();
        let value: i64 = kappa
            .iter()
            .map(|(g, m)| if *m == 1 && self.g.sign(*g) == Sign::Neg { -1 } else { 1 })
            .product();
        if self.seen.insert(kappa) {
            *self.total += value;
        }
    }
}

fn equal_up_to_rotation(a: &[ChordId], b: &[ChordId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|r| a[r..].iter().chain(&a[..r]).eq(b.iter()))
}

fn next_permutation(p: &mut [usize]) -> bool {
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

pub fn pair(g: &GaussDiagram, c: &Configuration) -> BigRational {
    BigRational::from_integer(BigInt::from(pair_int(g, c)))
}

/// Formal rational combination of configurations.
#[derive(Clone, Debug, Default)]
pub struct ConfigCombo {
    pub terms: Vec<(BigRational, Configuration)>,
}

impl ConfigCombo {
    pub fn new() -> Self {
        ConfigCombo { terms: vec![] }
    }

    pub fn with(mut self, coeff: BigRational, c: &Configuration) -> Self {
        self.terms.push((coeff, c.clone()));
        self
    }
}

pub fn pair_combo(g: &GaussDiagram, cs: &ConfigCombo) -> BigRational {
    cs.terms.iter().fold(BigRational::zero(), |acc, (k, c)| acc + k * pair(g, c))
}

/// Bilinear extension of the pairing.
pub fn pair_sum(gs: &GaussSum, cs: &ConfigCombo) -> BigRational {
    gs.terms.iter().fold(BigRational::zero(), |acc, (b, g)| acc + b * pair_combo(g, cs))
}

pub fn pair_sum_single(gs: &GaussSum, c: &Configuration) -> BigRational {
    gs.terms.iter().fold(BigRational::zero(), |acc, (b, g)| acc + b * pair(g, c))
}

/// Keys every catalog must define.
pub const REQUIRED_KEYS: &[&str] = &[
    "v1.D1", "v2.D1", "v3.1.D1", "v3.1.D2", "v3.1.D3", "v3.2.D1", "v3.2.D2", "v4.1.D1", "v4.1.D2",
    "v4.1.D3", "v4.1.D4", "v4.1.D5", "v4.1.D6", "v4.1.E1", "v4.1.E2", "v4.1.E3", "v4.3.A1",
    "v4.3.A2", "v4.3.A3", "v4.3.A4", "v4.3.A5", "v4.3.A6", "v4.3.A7", "v4.3.A8", "v4.4.B1",
    "v4.4.B2", "v4.4.B3", "pat.1chord", "pat.join", "pat.pair.X", "pat.pair.P", "pat.2join",
    "pat.I432", "pat.3chain",
];

pub const BUILTIN_CATALOG: &str = include_str!("../data/configurations.txt");

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: BTreeMap<String, Configuration>,
}

impl Catalog {
    /// Parses catalog text and checks that all required keys are present.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let cat = Catalog::parse_partial(text)?;
        for k in REQUIRED_KEYS {
            if !cat.entries.contains_key(*k) {
                return Err(CatalogError::MissingKey(k.to_string()));
            }
        }
        Ok(cat)
    }

    /// Parses catalog text without the required-key check.
    pub fn parse_partial(text: &str) -> Result<Self, CatalogError> {
        let mut entries = BTreeMap::new();
        let mut cur: Option<Pending> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let syn = |msg: &str| CatalogError::Syntax { line: i + 1, msg: msg.to_string() };
            let (field, value) = line.split_once(':').ok_or_else(|| syn("expected `field: value`"))?;
            let (field, value) = (field.trim(), value.trim());
            if field == "key" {
                if let Some(p) = cur.take() {
                    let c = p.build()?;
                    entries.insert(c.key.clone(), c);
                }
                cur = Some(Pending::new(value));
                continue;
            }
            let p = cur.as_mut().ok_or_else(|| syn("field before first key"))?;
            match field {
                "circles" => {
                    p.circles = Some(value.parse().map_err(|_| syn("bad circle count"))?);
                }
                "chords" => {
                    for tok in value.split_whitespace() {
                        let (id, m) = tok.split_once(':').ok_or_else(|| syn("chord needs id:mult"))?;
                        let id: ChordId = id.parse().map_err(|_| syn("bad chord id"))?;
                        let m: u8 = m.parse().map_err(|_| syn("bad multiplicity"))?;
                        p.mult.insert(id, m);
                    }
                }
                f if f.starts_with("circle") => {
                    let n: usize = f["circle".len()..].parse().map_err(|_| syn("bad circle field"))?;
                    if n == 0 {
                        return Err(syn("circles are numbered from 1"));
                    }
                    let word = value
                        .split_whitespace()
                        .map(|t| t.parse::<ChordId>().map_err(|_| syn("bad endpoint")))
                        .collect::<Result<Vec<_>, _>>()?;
                    p.words.insert(n, word);
                }
                _ => return Err(syn("unknown field")),
            }
        }
        if let Some(p) = cur.take() {
            let c = p.build()?;
            entries.insert(c.key.clone(), c);
        }
        Ok(Catalog { entries })
    }

    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Catalog::parse(&text)
    }

    /// The catalog shipped with the crate, parsed once.
    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::parse(BUILTIN_CATALOG).expect("builtin catalog is valid"))
    }

    pub fn get(&self, key: &str) -> Result<&Configuration, CatalogError> {
        self.entries.get(key).ok_or_else(|| CatalogError::Unknown(key.to_string()))
    }

    /// Panics on unknown keys; for use once the catalog has been validated.
    pub fn at(&self, key: &str) -> &Configuration {
        &self.entries[key]
    }

    pub fn insert(&mut self, c: Configuration) {
        self.entries.insert(c.key.clone(), c);
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn to_text(&self) -> String {
        self.entries.values().map(|c| c.to_text()).collect::<Vec<_>>().join("\n")
    }
}

struct Pending {
    key: String,
    circles: Option<usize>,
    mult: BTreeMap<ChordId, u8>,
    words: BTreeMap<usize, Vec<ChordId>>,
}

impl Pending {
    fn new(key: &str) -> Self {
        Pending { key: key.to_string(), circles: None, mult: BTreeMap::new(), words: BTreeMap::new() }
    }

    fn build(self) -> Result<Configuration, CatalogError> {
        let bad = |msg: String| CatalogError::Invalid { key: self.key.clone(), msg };
        let n = self.circles.ok_or_else(|| bad("missing circle count".into()))?;
        if let Some(&k) = self.words.keys().next_back() {
            if k > n {
                return Err(bad(format!("circle{k} exceeds the circle count")));
            }
        }
        let circles = (1..=n).map(|i| self.words.get(&i).cloned().unwrap_or_default()).collect();
        Configuration::new(&self.key, circles, self.mult)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussdiag::gauss;
    use crate::linkcode::LinkCode;

    fn diagram(circles: Vec<Vec<ChordId>>, signs: &[(ChordId, Sign)]) -> GaussDiagram {
        GaussDiagram::new(circles, signs.iter().copied().collect()).unwrap()
    }

    fn pair_x() -> Configuration {
        Configuration::from_words("x", &[&[1, 2, 1, 2]], &[])
    }

    #[test]
    fn trefoil_interleaved_pairs() {
        let k = LinkCode::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(pair_int(&gauss(&k), &pair_x()), 3);
    }

    #[test]
    fn sign_product_example() {
        // chord 1 crosses chords 2 and 3, which are parallel
        for s1 in [Sign::Pos, Sign::Neg] {
            for s2 in [Sign::Pos, Sign::Neg] {
                for s3 in [Sign::Pos, Sign::Neg] {
                    let g = diagram(vec![vec![1, 2, 3, 1, 3, 2]], &[(1, s1), (2, s2), (3, s3)]);
                    let (e1, e2, e3) = (s1.value(), s2.value(), s3.value());
                    assert_eq!(pair_int(&g, &pair_x()), e1 * e2 + e1 * e3);
                    let dp = pair_x().with_multiplicity(1, 2).unwrap();
                    assert_eq!(pair_int(&g, &dp), e2 + e1 + e3 + e1);
                }
            }
        }
    }

    #[test]
    fn circle_count_mismatch_is_zero() {
        let g = diagram(vec![vec![1, 1]], &[(1, Sign::Pos)]);
        let join = Configuration::from_words("j", &[&[1], &[1]], &[]);
        assert_eq!(pair_int(&g, &join), 0);
        let empty2 = Configuration::from_words("e", &[&[], &[]], &[]);
        let g2 = diagram(vec![vec![], vec![]], &[]);
        assert_eq!(pair_int(&g2, &empty2), 1);
    }

    #[test]
    fn joining_chords_count_signs() {
        let h = LinkCode::parse("O1+ U2+\nU1+ O2+").unwrap();
        let join = Configuration::from_words("j", &[&[1], &[1]], &[]);
        assert_eq!(pair_int(&gauss(&h), &join), 2);
        let hn = h.switch_crossing(1).unwrap();
        assert_eq!(pair_int(&gauss(&hn), &join), 0);
    }

    #[test]
    fn catalog_round_trip_and_missing_key() {
        let text = "key: v2.D1\ncircles: 1\nchords: 1:1 2:1\ncircle1: 1 2 1 2\n\nkey: j\ncircles: 2\nchords: 1:1\ncircle1: 1\ncircle2: 1\n";
        let cat = Catalog::parse_partial(text).unwrap();
        assert_eq!(cat.get("v2.D1").unwrap().circles(), &[vec![1, 2, 1, 2]]);
        let again = Catalog::parse_partial(&cat.to_text()).unwrap();
        assert_eq!(again.get("j").unwrap(), cat.get("j").unwrap());
        assert!(matches!(Catalog::parse(text), Err(CatalogError::MissingKey(_))));
        assert!(matches!(
            Catalog::parse_partial("circles: 1"),
            Err(CatalogError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            Catalog::parse_partial("key: a\ncircles: 1\nchords: 1:3\ncircle1: 1 1"),
            Err(CatalogError::Invalid { .. })
        ));
    }

    #[test]
    fn builtin_catalog_loads() {
        let cat = Catalog::builtin();
        for k in REQUIRED_KEYS {
            assert!(cat.get(k).is_ok(), "{k}");
        }
    }
}
