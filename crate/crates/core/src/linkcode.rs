//! Oriented link diagrams as signed Gauss codes.
//!
//! A diagram is an ordered list of components, each a cyclic sequence of
//! passes through crossings. Every crossing is visited exactly twice, once
//! as the overpass and once as the underpass, and both visits carry the
//! crossing sign. Planarity is not checked.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

pub type CrossingId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinkError {
    #[error("line {line}: bad token `{token}`")]
    Syntax { line: usize, token: String },
    #[error("invalid code: {0}")]
    Validation(String),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("component index {index} out of range ({count} components)")]
    Index { index: usize, count: usize },
    #[error("selection has {selected} crossings but the word has {letters} letters")]
    LengthMismatch { selected: usize, letters: usize },
    #[error("crossing {0} selected twice")]
    DuplicateSelection(CrossingId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flip(self) -> Strand {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// One visit of a component to a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pass {
    pub crossing: CrossingId,
    pub strand: Strand,
    pub sign: Sign,
}

impl Pass {
    pub fn new(crossing: CrossingId, strand: Strand, sign: Sign) -> Self {
        Pass { crossing, strand, sign }
    }

    pub fn over(crossing: CrossingId, sign: Sign) -> Self {
        Pass::new(crossing, Strand::Over, sign)
    }

    pub fn under(crossing: CrossingId, sign: Sign) -> Self {
        Pass::new(crossing, Strand::Under, sign)
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.strand {
            Strand::Over => 'O',
            Strand::Under => 'U',
        };
        write!(f, "{}{}{}", s, self.crossing, self.sign.symbol())
    }
}

/// Position of a pass: (component index, index within the component).
pub type PassPos = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    /// Both passes lie on this component.
    SelfCrossing(usize),
    /// The passes lie on two different components (lower index first).
    Joining(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkCode {
    components: Vec<Vec<Pass>>,
}

/// Token used for a component without crossings.
pub const EMPTY_COMPONENT: &str = "()";

impl LinkCode {
    pub fn new(components: Vec<Vec<Pass>>) -> Result<Self, LinkError> {
        let code = LinkCode { components };
        code.validate()?;
        Ok(code)
    }

    pub(crate) fn from_unchecked(components: Vec<Vec<Pass>>) -> Self {
        let code = LinkCode { components };
        debug_assert!(code.validate().is_ok(), "invalid code {code}");
        code
    }

    pub fn empty() -> Self {
        LinkCode { components: vec![] }
    }

    /// `n` crossingless circles.
    pub fn unlink(n: usize) -> Self {
        LinkCode { components: vec![vec![]; n] }
    }

    fn validate(&self) -> Result<(), LinkError> {
        let mut seen: BTreeMap<CrossingId, Vec<Pass>> = BTreeMap::new();
        for comp in &self.components {
            for p in comp {
                if p.crossing == 0 {
                    return Err(LinkError::Validation("crossing id 0 is not allowed".into()));
                }
                seen.entry(p.crossing).or_default().push(*p);
            }
        }
        for (id, passes) in &seen {
            if passes.len() != 2 {
                return Err(LinkError::Validation(format!(
                    "crossing {id} occurs {} times",
                    passes.len()
                )));
            }
            if passes[0].strand == passes[1].strand {
                return Err(LinkError::Validation(format!(
                    "crossing {id} needs one over and one under pass"
                )));
            }
            if passes[0].sign != passes[1].sign {
                return Err(LinkError::Validation(format!("sign mismatch on crossing {id}")));
            }
        }
        Ok(())
    }

    /// Parses the line-oriented text format: one component per line,
    /// tokens like `O12+`, `#` comments, blank lines skipped, and `()` for a
    /// crossingless component.
    pub fn parse(text: &str) -> Result<Self, LinkError> {
        let mut components = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line == EMPTY_COMPONENT {
                components.push(vec![]);
                continue;
            }
            let comp = line
                .split_whitespace()
                .map(|tok| {
                    parse_token(tok).ok_or_else(|| LinkError::Syntax {
                        line: lineno + 1,
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            components.push(comp);
        }
        LinkCode::new(components)
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn crossing_ids(&self) -> BTreeSet<CrossingId> {
        self.passes().map(|(_, p)| p.crossing).collect()
    }

    /// All passes in traversal order: components by index, each from its
    /// basepoint.
    pub fn passes(&self) -> impl Iterator<Item = (PassPos, &Pass)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| comp.iter().enumerate().map(move |(i, p)| ((c, i), p)))
    }

    /// Positions of the two passes of `id`, in traversal order.
    pub fn locate(&self, id: CrossingId) -> Result<[PassPos; 2], LinkError> {
        let mut found = self.passes().filter(|(_, p)| p.crossing == id).map(|(pos, _)| pos);
        match (found.next(), found.next()) {
            (Some(a), Some(b)) => Ok([a, b]),
            _ => Err(LinkError::UnknownCrossing(id)),
        }
    }

    pub fn sign(&self, id: CrossingId) -> Result<Sign, LinkError> {
        let [(c, i), _] = self.locate(id)?;
        Ok(self.components[c][i].sign)
    }

    pub fn kind(&self, id: CrossingId) -> Result<CrossingKind, LinkError> {
        let [(a, _), (b, _)] = self.locate(id)?;
        Ok(if a == b {
            CrossingKind::SelfCrossing(a)
        } else {
            CrossingKind::Joining(a.min(b), a.max(b))
        })
    }

    pub fn writhe_signs(&self) -> BTreeMap<CrossingId, Sign> {
        self.passes().map(|(_, p)| (p.crossing, p.sign)).collect()
    }

    /// Crossing change at `id`: the sign is negated and over/under swapped.
    pub fn switch_crossing(&self, id: CrossingId) -> Result<LinkCode, LinkError> {
        self.locate(id)?;
        Ok(self.map_passes(|p| {
            if p.crossing == id {
                Pass::new(p.crossing, p.strand.flip(), p.sign.flip())
            } else {
                *p
            }
        }))
    }

    /// Forces crossing `id` to have the given sign, switching it if needed.
    pub fn with_sign(&self, id: CrossingId, sign: Sign) -> Result<LinkCode, LinkError> {
        if self.sign(id)? == sign {
            Ok(self.clone())
        } else {
            self.switch_crossing(id)
        }
    }

    pub(crate) fn map_passes(&self, f: impl Fn(&Pass) -> Pass) -> LinkCode {
        LinkCode {
            components: self.components.iter().map(|c| c.iter().map(&f).collect()).collect(),
        }
    }

    /// Component `index` on its own, keeping only its self-crossings.
    pub fn self_subdiagram(&self, index: usize) -> Result<LinkCode, LinkError> {
        self.sub_link(&[index])
    }

    /// The sub-diagram formed by the listed components (in the given order),
    /// keeping only crossings whose passes both lie on them.
    pub fn sub_link(&self, indices: &[usize]) -> Result<LinkCode, LinkError> {
        for &i in indices {
            if i >= self.components.len() {
                return Err(LinkError::Index { index: i, count: self.components.len() });
            }
        }
        let mut count: BTreeMap<CrossingId, usize> = BTreeMap::new();
        for &i in indices {
            for p in &self.components[i] {
                *count.entry(p.crossing).or_default() += 1;
            }
        }
        let components = indices
            .iter()
            .map(|&i| {
                self.components[i]
                    .iter()
                    .filter(|p| count[&p.crossing] == 2)
                    .copied()
                    .collect()
            })
            .collect();
        Ok(LinkCode::from_unchecked(components))
    }

    /// Moves the basepoint of `component` forward by `shift` passes.
    pub fn rotate(&self, component: usize, shift: usize) -> Result<LinkCode, LinkError> {
        let n = self.components.len();
        if component >= n {
            return Err(LinkError::Index { index: component, count: n });
        }
        let mut comps = self.components.clone();
        let len = comps[component].len();
        if len > 0 {
            comps[component].rotate_left(shift % len);
        }
        Ok(LinkCode { components: comps })
    }

    /// Reorders components: the new component `k` is the old `order[k]`.
    pub fn permute_components(&self, order: &[usize]) -> Result<LinkCode, LinkError> {
        let n = self.components.len();
        let distinct: BTreeSet<_> = order.iter().copied().collect();
        if order.len() != n || distinct.len() != n || order.iter().any(|&i| i >= n) {
            return Err(LinkError::Validation(format!("{order:?} is not a permutation of {n}")));
        }
        Ok(LinkCode { components: order.iter().map(|&i| self.components[i].clone()).collect() })
    }

    /// Reverses the orientation of every component. Signs are unchanged
    /// since both strands at each crossing flip.
    pub fn reversed(&self) -> LinkCode {
        LinkCode {
            components: self
                .components
                .iter()
                .map(|c| c.iter().rev().copied().collect())
                .collect(),
        }
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> LinkCode {
        self.map_passes(|p| Pass::new(p.crossing, p.strand.flip(), p.sign.flip()))
    }

    /// Renumbers crossings 1, 2, ... in order of first appearance.
    pub fn renumbered(&self) -> LinkCode {
        let mut map = BTreeMap::new();
        for (_, p) in self.passes() {
            let next = map.len() as CrossingId + 1;
            map.entry(p.crossing).or_insert(next);
        }
        self.map_passes(|p| Pass { crossing: map[&p.crossing], ..*p })
    }
}

fn parse_token(tok: &str) -> Option<Pass> {
    let bytes = tok.as_bytes();
    if bytes.len() < 3 {
        return None;
    }
    let strand = match bytes[0] {
        b'O' => Strand::Over,
        b'U' => Strand::Under,
        _ => return None,
    };
    let sign = match bytes[bytes.len() - 1] {
        b'+' => Sign::Pos,
        b'-' => Sign::Neg,
        _ => return None,
    };
    let digits = &tok[1..tok.len() - 1];
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let crossing = digits.parse().ok()?;
    Some(Pass { crossing, strand, sign })
}

impl fmt::Display for LinkCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for comp in &self.components {
            if comp.is_empty() {
                writeln!(f, "{EMPTY_COMPONENT}")?;
                continue;
            }
            let toks: Vec<String> = comp.iter().map(Pass::to_string).collect();
            writeln!(f, "{}", toks.join(" "))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for LinkCode {
    type Err = LinkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkCode::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LinkCode {
        "O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap()
    }

    #[test]
    fn parses_trefoil() {
        let k = trefoil();
        assert_eq!(k.num_components(), 1);
        assert_eq!(k.num_crossings(), 3);
        assert!(k.writhe_signs().values().all(|&s| s == Sign::Pos));
        assert_eq!(k.to_string(), "O1+ U2+ O3+ U1+ O2+ U3+\n");
    }

    #[test]
    fn empty_text_is_empty_link() {
        let l = LinkCode::parse("").unwrap();
        assert_eq!(l.num_components(), 0);
        assert!(l.writhe_signs().is_empty());
        let l = LinkCode::parse("# nothing\n\n").unwrap();
        assert_eq!(l, LinkCode::empty());
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(LinkCode::parse("O1+ U1-"), Err(LinkError::Validation(_))));
        assert!(matches!(LinkCode::parse("O1+ O1+"), Err(LinkError::Validation(_))));
        assert!(matches!(LinkCode::parse("O1+ U2+"), Err(LinkError::Validation(_))));
        assert!(matches!(LinkCode::parse("O1+ U1+ U1+"), Err(LinkError::Validation(_))));
        assert!(matches!(LinkCode::parse("X1+ U1+"), Err(LinkError::Syntax { line: 1, .. })));
        assert!(matches!(LinkCode::parse("O1+\nU1"), Err(LinkError::Syntax { line: 2, .. })));
        assert!(matches!(LinkCode::parse("O+ U+"), Err(LinkError::Syntax { .. })));
    }

    #[test]
    fn comments_and_empty_components() {
        let l = LinkCode::parse("O1+ U2+ # first\n\n()\nU1+ O2+\n").unwrap();
        assert_eq!(l.num_components(), 3);
        assert!(l.components()[1].is_empty());
        assert_eq!(LinkCode::parse(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn switching_is_local_involution() {
        let k = trefoil();
        let s = k.switch_crossing(1).unwrap();
        assert_eq!(s.components()[0][0], Pass::under(1, Sign::Neg));
        assert_eq!(s.components()[0][3], Pass::over(1, Sign::Neg));
        assert_eq!(s.components()[0][1], k.components()[0][1]);
        assert_eq!(s.writhe_signs()[&1], Sign::Neg);
        assert_eq!(s.switch_crossing(1).unwrap(), k);
        assert_eq!(k.switch_crossing(9), Err(LinkError::UnknownCrossing(9)));
    }

    #[test]
    fn hopf_switch_both() {
        let h = LinkCode::parse("O1+ U2+\nU1+ O2+").unwrap();
        let n = h.switch_crossing(1).unwrap().switch_crossing(2).unwrap();
        assert_eq!(n, LinkCode::parse("U1- O2-\nO1- U2-").unwrap());
    }

    #[test]
    fn self_subdiagrams() {
        let h = LinkCode::parse("O1+ U2+\nU1+ O2+").unwrap();
        assert_eq!(h.self_subdiagram(0).unwrap(), LinkCode::unlink(1));
        assert!(matches!(h.self_subdiagram(2), Err(LinkError::Index { .. })));
        let k = trefoil();
        assert_eq!(k.self_subdiagram(0).unwrap(), k);
        let l = LinkCode::parse("O1+ O3- U2+ U3-\nU1+ O2+").unwrap();
        let s = l.self_subdiagram(0).unwrap();
        assert_eq!(s.to_string(), "O3- U3-\n");
        assert_eq!(s.crossing_ids().into_iter().collect::<Vec<_>>(), vec![3]);
    }

    #[test]
    fn crossing_kinds() {
        let l = LinkCode::parse("O1+ O3- U2+ U3-\nU1+ O2+").unwrap();
        assert_eq!(l.kind(3).unwrap(), CrossingKind::SelfCrossing(0));
        assert_eq!(l.kind(1).unwrap(), CrossingKind::Joining(0, 1));
    }
}
