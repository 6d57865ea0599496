//! Test diagrams: braid closures, random codes and the curated fixtures.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linkcode::{CrossingId, LinkCode, LinkError, Pass, Sign, Strand};

/// Closure of a braid on `strands` strands. Letter `i` is the generator
/// swapping positions i and i+1 (1-based) with the left strand over, `-i`
/// its inverse. Crossing k of the code is letter k (1-based).
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<LinkCode, LinkError> {
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if g == 0 || i >= strands {
            return Err(LinkError::Validation(format!("generator {g} on {strands} strands")));
        }
    }
    let mut visited = vec![false; strands];
    let mut components = vec![];
    for start in 0..strands {
        if visited[start] {
            continue;
        }
        let mut comp = vec![];
        let mut pos = start;
        loop {
            visited[pos] = true;
            for (k, &g) in word.iter().enumerate() {
                let left = g.unsigned_abs() as usize - 1;
                let sign = if g > 0 { Sign::Pos } else { Sign::Neg };
                let id = k as CrossingId + 1;
                if pos == left {
                    let strand = if g > 0 { Strand::Over } else { Strand::Under };
                    comp.push(Pass::new(id, strand, sign));
                    pos = left + 1;
                } else if pos == left + 1 {
                    let strand = if g > 0 { Strand::Under } else { Strand::Over };
                    comp.push(Pass::new(id, strand, sign));
                    pos = left;
                }
            }
            if pos == start {
                break;
            }
        }
        components.push(comp);
    }
    LinkCode::new(components)
}

/// A random braid closure with at most `max_crossings` crossings and at most
/// `max_components` components.
pub fn random_braid_link<R: Rng>(rng: &mut R, max_crossings: usize, max_components: usize) -> LinkCode {
    loop {
        let strands = rng.gen_range(1..=4usize);
        let len = if strands == 1 { 0 } else { rng.gen_range(0..=max_crossings) };
        let word: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let l = braid_closure(strands, &word).expect("generators in range");
        if l.num_components() <= max_components {
            return l;
        }
    }
}

/// A random valid signed Gauss code, not necessarily planar.
pub fn random_gauss_code<R: Rng>(rng: &mut R, max_crossings: usize, max_components: usize) -> LinkCode {
    let n = rng.gen_range(0..=max_crossings);
    let comps = rng.gen_range(1..=max_components);
    let mut tokens: Vec<Pass> = vec![];
    for id in 1..=n as CrossingId {
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        tokens.push(Pass::new(id, Strand::Over, sign));
        tokens.push(Pass::new(id, Strand::Under, sign));
    }
    tokens.shuffle(rng);
    let mut components: Vec<Vec<Pass>> = vec![vec![]; comps];
    for (i, p) in tokens.into_iter().enumerate() {
        let c = if i < comps { i } else { rng.gen_range(0..comps) };
        components[c].push(p);
    }
    LinkCode::new(components).expect("each crossing placed twice")
}

/// Named fixture diagrams shipped with the crate.
pub const FIXTURES: &[(&str, &str)] = &[
    ("unknot", include_str!("../fixtures/unknot.sgc")),
    ("unlink2", include_str!("../fixtures/unlink2.sgc")),
    ("unlink3", include_str!("../fixtures/unlink3.sgc")),
    ("hopf_pos", include_str!("../fixtures/hopf_pos.sgc")),
    ("hopf_neg", include_str!("../fixtures/hopf_neg.sgc")),
    ("hopf_r2", include_str!("../fixtures/hopf_r2.sgc")),
    ("trefoil3", include_str!("../fixtures/trefoil3.sgc")),
    ("trefoil5", include_str!("../fixtures/trefoil5.sgc")),
    ("figure_eight", include_str!("../fixtures/figure_eight.sgc")),
    ("six_two", include_str!("../fixtures/six_two.sgc")),
    ("chain3", include_str!("../fixtures/chain3.sgc")),
];

pub fn fixture(name: &str) -> LinkCode {
    let text = FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .unwrap_or_else(|| panic!("no fixture {name}"))
        .1;
    LinkCode::parse(text).expect("fixture parses")
}

pub fn curated() -> Vec<(&'static str, LinkCode)> {
    FIXTURES.iter().map(|(n, _)| (*n, fixture(n))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closures() {
        let t = braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(t.to_string(), "O1+ U2+ O3+ U1+ O2+ U3+\n");
        let h = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(h.num_components(), 2);
        assert_eq!(braid_closure(3, &[]).unwrap(), LinkCode::unlink(3));
        assert!(braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn random_codes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let l = random_braid_link(&mut rng, 8, 3);
            assert!(l.num_crossings() <= 8 && l.num_components() <= 3);
            let g = random_gauss_code(&mut rng, 8, 3);
            assert!(g.num_crossings() <= 8 && g.num_components() <= 3);
        }
    }

    #[test]
    fn fixtures_parse() {
        assert_eq!(curated().len(), FIXTURES.len());
        assert_eq!(fixture("unlink3").num_components(), 3);
    }
}
