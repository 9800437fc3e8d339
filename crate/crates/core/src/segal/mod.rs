//! The combinatorial bridge between ordinal-indexed colax diagrams and
//! labelled-simplex presheaves: the duality between the augmented simplex
//! category and extremity-preserving maps of pointed ordinals, labelled
//! simplex categories, and the presheaf correspondence.

pub mod bridge;
pub mod deltax;

use crate::error::{Error, Result};
use crate::simplex::{compose_tables, monotone_maps, ordinal_add};
use std::collections::BTreeMap;

/// Tables of the duality functor on hom-sets up to a bound. The forward
/// direction sends a monotone map of plain ordinals n -> k to an
/// extremity-preserving monotone map {0..k} -> {0..n}; it is built from
/// the two generators (the binary merge and the unit insertion) by
/// composition and gluing, not from the closed counting formula, so the
/// two routes check each other.
#[derive(Debug, Clone)]
pub struct JoyalIso {
    pub m: usize,
    forward: BTreeMap<(usize, usize), BTreeMap<Vec<usize>, Vec<usize>>>,
    backward: BTreeMap<(usize, usize), BTreeMap<Vec<usize>, Vec<usize>>>,
}

/// Forward image of the binary merge 2 -> 1: 0 |-> 0, 1 |-> 2.
fn t_mu() -> Vec<usize> {
    vec![0, 2]
}

/// Forward image of the unit insertion 0 -> 1: the constant map.
fn t_eta() -> Vec<usize> {
    vec![0, 0]
}

/// Extremity gluing of forward images: the two tables share the cut point.
fn glue(g1: &[usize], n1: usize, g2: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(g1.len() + g2.len() - 1);
    out.extend_from_slice(g1);
    for &v in &g2[1..] {
        out.push(n1 + v);
    }
    out
}

/// Forward image of the unique map n -> 1, by the recursion
/// merge o (merge_(n-1) + id).
fn t_fold(n: usize) -> Vec<usize> {
    match n {
        0 => t_eta(),
        1 => vec![0, 1],
        _ => {
            let prev = t_fold(n - 1); // {0,1} -> {0..n-1}
            let glued = glue(&prev, n - 1, &[0, 1]); // {0,1,2} -> {0..n}
            compose_tables(&t_mu(), &glued)
        }
    }
}

/// Forward image of an arbitrary monotone map via the fiber decomposition
/// phi = phi_0 + ... + phi_{k-1} with each phi_j a fold onto one point.
fn t_forward(phi: &[usize], n: usize, k: usize) -> Vec<usize> {
    if k == 0 {
        debug_assert_eq!(n, 0);
        return vec![0];
    }
    let mut acc: Option<(Vec<usize>, usize)> = None;
    for j in 0..k {
        let fiber = phi.iter().filter(|&&v| v == j).count();
        let part = t_fold(fiber);
        acc = Some(match acc {
            None => (part, fiber),
            Some((g, len)) => (glue(&g, len, &part), len + fiber),
        });
    }
    let (g, len) = acc.unwrap();
    debug_assert_eq!(len, n);
    g
}

/// Builds the duality tables for all hom-sets with endpoints at most m and
/// certifies totality and bijectivity per hom-set.
pub fn joyal_t(m: usize) -> Result<JoyalIso> {
    let mut forward = BTreeMap::new();
    let mut backward = BTreeMap::new();
    for n in 0..=m {
        for k in 0..=m {
            let mut fwd = BTreeMap::new();
            let mut bwd = BTreeMap::new();
            for phi in monotone_maps(n, k) {
                let g = t_forward(&phi, n, k);
                if g.len() != k + 1 || !crate::simplex::preserves_extremities(&g, n) {
                    return Err(Error::Internal(format!(
                        "forward image of {phi:?} is not extremity-preserving"
                    )));
                }
                if bwd.insert(g.clone(), phi.clone()).is_some() {
                    return Err(Error::Internal(format!("forward not injective at {phi:?}")));
                }
                fwd.insert(phi, g);
            }
            // surjectivity: every extremity-preserving monotone map is hit
            let expected = monotone_maps(k + 1, n + 1)
                .into_iter()
                .filter(|t| crate::simplex::preserves_extremities(t, n))
                .count();
            if bwd.len() != expected {
                return Err(Error::Internal(format!(
                    "forward not surjective on hom ({n},{k}): {} of {expected}",
                    bwd.len()
                )));
            }
            forward.insert((n, k), fwd);
            backward.insert((n, k), bwd);
        }
    }
    Ok(JoyalIso { m, forward, backward })
}

impl JoyalIso {
    pub fn forward(&self, n: usize, k: usize, phi: &[usize]) -> Option<&Vec<usize>> {
        self.forward.get(&(n, k))?.get(phi)
    }

    pub fn backward(&self, n: usize, k: usize, g: &[usize]) -> Option<&Vec<usize>> {
        self.backward.get(&(n, k))?.get(g)
    }

    pub fn hom_size(&self, n: usize, k: usize) -> usize {
        self.forward.get(&(n, k)).map(|m| m.len()).unwrap_or(0)
    }

    /// Contravariant functoriality on all composable pairs within bound.
    pub fn check_functorial(&self) -> Result<()> {
        for n in 0..=self.m {
            for k in 0..=self.m {
                for l in 0..=self.m {
                    for phi in monotone_maps(n, k) {
                        for psi in monotone_maps(k, l) {
                            let comp = compose_tables(&phi, &psi);
                            let lhs = self.forward(n, l, &comp).unwrap();
                            let rhs = compose_tables(
                                self.forward(k, l, &psi).unwrap(),
                                self.forward(n, k, &phi).unwrap(),
                            );
                            if *lhs != rhs {
                                return Err(Error::Internal(format!(
                                    "duality not functorial at {phi:?};{psi:?}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Monoidality: forward of a block sum is the extremity gluing.
    pub fn check_monoidal(&self) -> Result<()> {
        for n1 in 0..=self.m {
            for k1 in 0..=self.m {
                for n2 in 0..=self.m - n1.min(self.m) {
                    for k2 in 0..=self.m.saturating_sub(k1) {
                        if n1 + n2 > self.m || k1 + k2 > self.m {
                            continue;
                        }
                        for phi in monotone_maps(n1, k1) {
                            for psi in monotone_maps(n2, k2) {
                                let sum = ordinal_add(&phi, k1, &psi);
                                let lhs = self.forward(n1 + n2, k1 + k2, &sum).unwrap();
                                let rhs = glue(
                                    self.forward(n1, k1, &phi).unwrap(),
                                    n1,
                                    self.forward(n2, k2, &psi).unwrap(),
                                );
                                if *lhs != rhs {
                                    return Err(Error::Internal(format!(
                                        "duality not monoidal at {phi:?}+{psi:?}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::{binomial, joyal_dual};

    #[test]
    fn generator_images() {
        let j = joyal_t(3).unwrap();
        assert_eq!(j.forward(2, 1, &[0, 0]), Some(&vec![0, 2]));
        assert_eq!(j.forward(0, 1, &[]), Some(&vec![0, 0]));
    }

    #[test]
    fn matches_closed_formula() {
        let j = joyal_t(4).unwrap();
        for n in 0..=4 {
            for k in 0..=4 {
                for phi in monotone_maps(n, k) {
                    assert_eq!(j.forward(n, k, &phi), Some(&joyal_dual(&phi, n, k)));
                }
            }
        }
    }

    #[test]
    fn paper_surjection_example() {
        // 3 -> 2 collapsing the last two elements (0-based: [0,1,1])
        let j = joyal_t(3).unwrap();
        let img = j.forward(3, 2, &[0, 1, 1]).unwrap();
        assert_eq!(*img, vec![0, 1, 3]);
    }

    #[test]
    fn hom_sizes_match() {
        let j = joyal_t(4).unwrap();
        for n in 1..=4 {
            for k in 1..=4 {
                assert_eq!(j.hom_size(n, k), binomial(n + k - 1, n));
            }
        }
    }

    #[test]
    fn functorial_and_monoidal() {
        let j = joyal_t(3).unwrap();
        j.check_functorial().unwrap();
        j.check_monoidal().unwrap();
    }
}
