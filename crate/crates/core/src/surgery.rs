//! Diagram operators: descending unknotting, crossing smoothing, component
//! splitting and their composite R.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::gaussdiag::{gauss, GaussSum};
use crate::linkcode::{CrossingId, LinkCode, LinkError, Pass, PassPos, Strand};

/// Which pass of each crossing becomes the overpass in the unknotted
/// reference diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AlphaRule {
    /// Components in index order from their basepoints; the first pass met
    /// is made the overpass.
    #[default]
    FirstOver,
    /// Components in reverse index order; the first pass met is made the
    /// underpass.
    ReverseFirstUnder,
}

/// Descending (split unknotted) reference diagram using the default rule.
pub fn alpha_unknot(l: &LinkCode) -> LinkCode {
    alpha_with(l, AlphaRule::FirstOver)
}

pub fn alpha_with(l: &LinkCode, rule: AlphaRule) -> LinkCode {
    let to_switch = alpha_defects(l, rule);
    if to_switch.is_empty() {
        return l.clone();
    }
    l.map_passes(|p| {
        if to_switch.contains(&p.crossing) {
            Pass::new(p.crossing, p.strand.flip(), p.sign.flip())
        } else {
            *p
        }
    })
}

/// Crossings whose over/under assignment differs from the reference, in
/// the order they are first met.
pub fn alpha_defect_order(l: &LinkCode, rule: AlphaRule) -> Vec<CrossingId> {
    let mut seen = BTreeSet::new();
    let mut out = vec![];
    for p in rule_order(l, rule) {
        if seen.insert(p.crossing) {
            let want = match rule {
                AlphaRule::FirstOver => Strand::Over,
                AlphaRule::ReverseFirstUnder => Strand::Under,
            };
            if p.strand != want {
                out.push(p.crossing);
            }
        }
    }
    out
}

fn alpha_defects(l: &LinkCode, rule: AlphaRule) -> BTreeSet<CrossingId> {
    alpha_defect_order(l, rule).into_iter().collect()
}

fn rule_order(l: &LinkCode, rule: AlphaRule) -> Vec<Pass> {
    let comps = l.components();
    match rule {
        AlphaRule::FirstOver => comps.iter().flatten().copied().collect(),
        AlphaRule::ReverseFirstUnder => comps.iter().rev().flatten().copied().collect(),
    }
}

pub fn is_descending(l: &LinkCode) -> bool {
    alpha_defect_order(l, AlphaRule::FirstOver).is_empty()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Smoothing that respects the orientations at the crossing.
    A,
    /// The other smoothing.
    B,
    /// Crossing kept.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplitWord(pub Vec<Letter>);

impl SplitWord {
    pub fn parse(s: &str) -> Result<Self, LinkError> {
        s.chars()
            .map(|c| match c {
                'A' => Ok(Letter::A),
                'B' => Ok(Letter::B),
                'C' => Ok(Letter::C),
                _ => Err(LinkError::Validation(format!("bad split letter `{c}`"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SplitWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SplitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct WordCombo {
    pub terms: Vec<(BigRational, SplitWord)>,
}

impl WordCombo {
    /// Builds a combination from integer coefficients and word strings.
    pub fn from_ints(terms: &[(i64, &str)]) -> Self {
        WordCombo {
            terms: terms
                .iter()
                .map(|(k, w)| (BigRational::from_integer((*k).into()), SplitWord::parse(w).unwrap()))
                .collect(),
        }
    }

    /// Same combination with every word read right to left.
    pub fn reversed_words(&self) -> Self {
        WordCombo {
            terms: self
                .terms
                .iter()
                .map(|(k, w)| (k.clone(), SplitWord(w.0.iter().rev().copied().collect())))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LinkCodeSum {
    pub terms: Vec<(BigRational, LinkCode)>,
}

/// Arc identity: the arc of component `.0` that ends at pass `.1`.
type ArcKey = (usize, usize);

/// Smooths the selected crossings according to `w`, all at once.
///
/// Reconnections are read off the original orientations. Each resulting
/// circle is oriented along the original direction of its smallest arc,
/// and circles are ordered by that arc. A kept crossing changes sign when
/// exactly one of its two passes runs against its old direction.
pub fn smooth(l: &LinkCode, selected: &[CrossingId], w: &SplitWord) -> Result<LinkCode, LinkError> {
    if selected.len() != w.len() {
        return Err(LinkError::LengthMismatch { selected: selected.len(), letters: w.len() });
    }
    let mut letter: BTreeMap<CrossingId, Letter> = BTreeMap::new();
    for (id, x) in selected.iter().zip(&w.0) {
        l.locate(*id)?;
        if letter.insert(*id, *x).is_some() {
            return Err(LinkError::DuplicateSelection(*id));
        }
    }
    letter.retain(|_, x| *x != Letter::C);
    if letter.is_empty() {
        return Ok(l.clone());
    }

    let comps = l.components();
    let partner: BTreeMap<PassPos, PassPos> = letter
        .keys()
        .flat_map(|id| {
            let [u, v] = l.locate(*id).unwrap();
            [(u, v), (v, u)]
        })
        .collect();
    let next = |(c, j): PassPos| (c, (j + 1) % comps[c].len());

    let mut visited: BTreeSet<ArcKey> = BTreeSet::new();
    // (sort key, passes, reversed flags)
    let mut out: Vec<(ArcKey, Vec<Pass>, Vec<bool>)> = vec![];
    for (c, comp) in comps.iter().enumerate() {
        if comp.is_empty() {
            out.push(((c, 0), vec![], vec![]));
            continue;
        }
        for j in 0..comp.len() {
            let start: ArcKey = (c, j);
            if visited.contains(&start) {
                continue;
            }
            let mut passes = vec![];
            let mut reversed = vec![];
            let (mut arc, mut forward) = (start, true);
            loop {
                visited.insert(arc);
                // the pass reached at the end of the current step
                let at: PassPos = if forward {
                    arc
                } else {
                    let (ac, aj) = arc;
                    (ac, (aj + comps[ac].len() - 1) % comps[ac].len())
                };
                let pass = comps[at.0][at.1];
                match letter.get(&pass.crossing) {
                    None => {
                        passes.push(pass);
                        reversed.push(!forward);
                        arc = if forward { next(at) } else { at };
                    }
                    Some(Letter::A) => {
                        let v = partner[&at];
                        arc = if forward { next(v) } else { v };
                    }
                    Some(Letter::B) => {
                        let v = partner[&at];
                        if forward {
                            arc = v;
                            forward = false;
                        } else {
                            arc = next(v);
                            forward = true;
                        }
                    }
                    Some(Letter::C) => unreachable!(),
                }
                if arc == start && forward {
                    break;
                }
            }
            out.push((start, passes, reversed));
        }
    }
    out.sort_by_key(|(k, _, _)| *k);

    let mut flips: BTreeMap<CrossingId, usize> = BTreeMap::new();
    for (_, passes, rev) in &out {
        for (p, r) in passes.iter().zip(rev) {
            if *r {
                *flips.entry(p.crossing).or_default() += 1;
            }
        }
    }
    let components = out
        .into_iter()
        .map(|(_, passes, _)| {
            passes
                .into_iter()
                .map(|p| {
                    if flips.get(&p.crossing) == Some(&1) {
                        Pass { sign: p.sign.flip(), ..p }
                    } else {
                        p
                    }
                })
                .collect()
        })
        .collect();
    Ok(LinkCode::from_unchecked(components))
}

pub fn component_count_after(
    l: &LinkCode,
    selected: &[CrossingId],
    w: &SplitWord,
) -> Result<usize, LinkError> {
    Ok(smooth(l, selected, w)?.num_components())
}

/// Each component with only its self-crossings, coefficient 1.
pub fn split_components(l: &LinkCode) -> LinkCodeSum {
    LinkCodeSum {
        terms: (0..l.num_components())
            .map(|i| (BigRational::one(), l.self_subdiagram(i).unwrap()))
            .collect(),
    }
}

/// R = G o alpha o S o Q applied to a word combination.
pub fn r_operator(
    l: &LinkCode,
    selected: &[CrossingId],
    combo: &WordCombo,
) -> Result<GaussSum, LinkError> {
    r_operator_with(l, selected, combo, AlphaRule::FirstOver)
}

pub fn r_operator_with(
    l: &LinkCode,
    selected: &[CrossingId],
    combo: &WordCombo,
    rule: AlphaRule,
) -> Result<GaussSum, LinkError> {
    let mut out = GaussSum::new();
    for (k, w) in &combo.terms {
        if k.is_zero() {
            continue;
        }
        let q = smooth(l, selected, w)?;
        for (c, comp) in split_components(&q).terms {
            out.push(k * c, gauss(&alpha_with(&comp, rule)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkcode::Sign;

    fn code(s: &str) -> LinkCode {
        LinkCode::parse(s).unwrap()
    }

    fn word(s: &str) -> SplitWord {
        SplitWord::parse(s).unwrap()
    }

    #[test]
    fn alpha_makes_descending() {
        let k = code("U1- O2+ U3- O1- U2+ O3-");
        let a = alpha_unknot(&k);
        assert!(is_descending(&a));
        assert_eq!(alpha_unknot(&a), a);
        assert_eq!(a.to_string(), "O1+ O2+ O3+ U1+ U2+ U3+\n");
    }

    #[test]
    fn alpha_on_hopf() {
        let h = code("O1+ U2+\nU1+ O2+");
        let a = alpha_unknot(&h);
        assert_eq!(a.to_string(), "O1+ O2-\nU1+ U2-\n");
    }

    #[test]
    fn all_c_is_identity() {
        let k = code("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(smooth(&k, &[2], &word("C")).unwrap(), k);
        assert_eq!(smooth(&k, &[1, 3], &word("CC")).unwrap(), k);
        assert!(matches!(smooth(&k, &[1], &word("CC")), Err(LinkError::LengthMismatch { .. })));
        assert!(matches!(smooth(&k, &[5], &word("A")), Err(LinkError::UnknownCrossing(5))));
    }

    #[test]
    fn oriented_smoothing_of_trefoil_crossing() {
        let k = code("O1+ U2+ O3+ U1+ O2+ U3+");
        let s = smooth(&k, &[1], &word("A")).unwrap();
        assert_eq!(s.to_string(), "O2+ U3+\nU2+ O3+\n");
        let b = smooth(&k, &[1], &word("B")).unwrap();
        assert_eq!(b.num_components(), 1);
    }

    #[test]
    fn joining_smoothings_merge() {
        let h = code("O1+ U2+\nU1+ O2+");
        assert_eq!(component_count_after(&h, &[1], &word("A")).unwrap(), 1);
        assert_eq!(component_count_after(&h, &[1], &word("B")).unwrap(), 1);
        let s = smooth(&h, &[1], &word("A")).unwrap();
        assert_eq!(s.to_string(), "O2+ U2+\n");
        // one arc is reversed, so the survivor with one pass on it flips
        let b = smooth(&h, &[1], &word("B")).unwrap();
        assert_eq!(b.components()[0].len(), 2);
        assert!(b.components()[0].iter().all(|p| p.sign == Sign::Neg));
    }

    #[test]
    fn pair_patterns() {
        // interleaved pair on a knot
        let k = code("O1+ U2+ O3+ U1+ O2+ U3+");
        assert_eq!(component_count_after(&k, &[1, 2], &word("BB")).unwrap(), 2);
        assert_eq!(component_count_after(&k, &[1, 2], &word("AA")).unwrap(), 1);
        // parallel pair
        let f = code("O1+ U1+ O2+ U2+");
        assert_eq!(component_count_after(&f, &[1, 2], &word("AA")).unwrap(), 3);
    }

    #[test]
    fn crossingless_components_survive() {
        let l = code("O1+ U1+\n()");
        let s = smooth(&l, &[1], &word("A")).unwrap();
        assert_eq!(s.num_components(), 3);
    }

    #[test]
    fn r_of_gamma_is_gauss_of_alpha() {
        let k = code("O1+ U2+ O3+ U1+ O2+ U3+");
        let r = r_operator(&k, &[1], &WordCombo::from_ints(&[(1, "C")])).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].1, gauss(&alpha_unknot(&k)));
        let z = r_operator(&k, &[1], &WordCombo::from_ints(&[(0, "A")])).unwrap();
        assert!(z.is_empty());
    }
}
