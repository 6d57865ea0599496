//! Gauss diagrams: one circle per component, one signed chord per crossing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::linkcode::{CrossingId, LinkCode, LinkError, Sign};
use crate::surgery::alpha_unknot;

/// Circles are cyclic words over chord ids; each chord id occurs exactly
/// twice in total. Chords carry no direction, only a sign.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    circles: Vec<Vec<CrossingId>>,
    signs: BTreeMap<CrossingId, Sign>,
}

impl GaussDiagram {
    pub fn new(
        circles: Vec<Vec<CrossingId>>,
        signs: BTreeMap<CrossingId, Sign>,
    ) -> Result<Self, LinkError> {
        let mut count: BTreeMap<CrossingId, usize> = BTreeMap::new();
        for id in circles.iter().flatten() {
            *count.entry(*id).or_default() += 1;
        }
        for (id, n) in &count {
            if *n != 2 {
                return Err(LinkError::Validation(format!("chord {id} has {n} endpoints")));
            }
            if !signs.contains_key(id) {
                return Err(LinkError::Validation(format!("chord {id} has no sign")));
            }
        }
        if signs.len() != count.len() {
            return Err(LinkError::Validation("sign given for a missing chord".into()));
        }
        Ok(GaussDiagram { circles, signs })
    }

    pub fn circles(&self) -> &[Vec<CrossingId>] {
        &self.circles
    }

    pub fn signs(&self) -> &BTreeMap<CrossingId, Sign> {
        &self.signs
    }

    pub fn sign(&self, id: CrossingId) -> Sign {
        self.signs[&id]
    }

    pub fn num_chords(&self) -> usize {
        self.signs.len()
    }

    /// For every chord, the circles of its two endpoints (sorted).
    pub fn chord_circles(&self) -> BTreeMap<CrossingId, (usize, usize)> {
        let mut ends: BTreeMap<CrossingId, Vec<usize>> = BTreeMap::new();
        for (c, circle) in self.circles.iter().enumerate() {
            for id in circle {
                ends.entry(*id).or_default().push(c);
            }
        }
        ends.into_iter().map(|(id, v)| (id, (v[0].min(v[1]), v[0].max(v[1])))).collect()
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .circles
            .iter()
            .map(|c| {
                let toks: Vec<String> = c
                    .iter()
                    .map(|id| {
                        let s = if self.signs[id] == Sign::Pos { '+' } else { '-' };
                        format!("{id}{s}")
                    })
                    .collect();
                format!("({})", toks.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A formal rational combination of Gauss diagrams, kept unreduced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GaussSum {
    pub terms: Vec<(BigRational, GaussDiagram)>,
}

impl GaussSum {
    pub fn new() -> Self {
        GaussSum { terms: vec![] }
    }

    pub fn single(g: GaussDiagram) -> Self {
        GaussSum { terms: vec![(BigRational::one(), g)] }
    }

    pub fn push(&mut self, coeff: BigRational, g: GaussDiagram) {
        self.terms.push((coeff, g));
    }

    pub fn extend_scaled(&mut self, coeff: &BigRational, other: GaussSum) {
        for (c, g) in other.terms {
            self.terms.push((coeff * c, g));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn gauss(l: &LinkCode) -> GaussDiagram {
    GaussDiagram {
        circles: l
            .components()
            .iter()
            .map(|c| c.iter().map(|p| p.crossing).collect())
            .collect(),
        signs: l.writhe_signs(),
    }
}

/// The Gauss diagram restricted to the crossings in `a`.
pub fn partial_gauss(l: &LinkCode, a: &BTreeSet<CrossingId>) -> Result<GaussDiagram, LinkError> {
    for id in a {
        l.locate(*id)?;
    }
    let full = gauss(l);
    Ok(GaussDiagram {
        circles: full
            .circles
            .iter()
            .map(|c| c.iter().copied().filter(|id| a.contains(id)).collect())
            .collect(),
        signs: full.signs.into_iter().filter(|(id, _)| a.contains(id)).collect(),
    })
}

fn difference(a: GaussDiagram, b: GaussDiagram) -> GaussSum {
    GaussSum { terms: vec![(BigRational::one(), a), (-BigRational::one(), b)] }
}

/// G(L) - G(alpha(L)).
pub fn bar_gauss(l: &LinkCode) -> GaussSum {
    difference(gauss(l), gauss(&alpha_unknot(l)))
}

/// P(L:A) - P(alpha(L):A).
pub fn bar_partial(l: &LinkCode, a: &BTreeSet<CrossingId>) -> Result<GaussSum, LinkError> {
    Ok(difference(partial_gauss(l, a)?, partial_gauss(&alpha_unknot(l), a)?))
}
