//! Reedy categories: finite categories with a degree function and a
//! direct/inverse classification such that non-identity direct arrows
//! strictly raise degree, non-identity inverse arrows strictly lower it,
//! every arrow factors uniquely as direct after inverse, and the only
//! isomorphisms are identities.

use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowClass {
    Identity,
    Direct,
    Inverse,
    /// composite of a non-identity inverse followed by a non-identity direct
    Mixed,
}

impl ArrowClass {
    pub fn parse(s: &str) -> Result<ArrowClass> {
        match s {
            "identity" => Ok(ArrowClass::Identity),
            "direct" => Ok(ArrowClass::Direct),
            "inverse" => Ok(ArrowClass::Inverse),
            "composite" | "mixed" => Ok(ArrowClass::Mixed),
            other => Err(Error::Domain(format!("unknown arrow class `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ArrowClass::Identity => "identity",
            ArrowClass::Direct => "direct",
            ArrowClass::Inverse => "inverse",
            ArrowClass::Mixed => "composite",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReedyCat {
    pub cat: FinCat,
    /// degree per object
    pub degree: Vec<u32>,
    /// classification per arrow
    pub class: Vec<ArrowClass>,
}

impl ReedyCat {
    /// Direct subcategory membership (identities included).
    pub fn is_direct(&self, f: usize) -> bool {
        matches!(self.class[f], ArrowClass::Direct | ArrowClass::Identity)
    }

    /// Inverse subcategory membership (identities included).
    pub fn is_inverse(&self, f: usize) -> bool {
        matches!(self.class[f], ArrowClass::Inverse | ArrowClass::Identity)
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.cat.is_identity(f)
    }

    /// The unique factorization u = direct o inverse.
    pub fn factorize(&self, u: usize) -> Result<(usize, usize)> {
        if u >= self.cat.arrows.len() {
            return Err(Error::Domain(format!("arrow index {u} out of range")));
        }
        let mut found = None;
        for inv in 0..self.cat.arrows.len() {
            if !self.is_inverse(inv) || self.cat.arrows[inv].src != self.cat.arrows[u].src {
                continue;
            }
            for dir in 0..self.cat.arrows.len() {
                if !self.is_direct(dir) || self.cat.arrows[dir].dst != self.cat.arrows[u].dst {
                    continue;
                }
                if self.cat.then(inv, dir) == Some(u) {
                    if let Some(prev) = found {
                        if prev != (inv, dir) {
                            return Err(Error::Internal(format!(
                                "arrow {} has two direct-inverse factorizations",
                                self.cat.arrows[u].label
                            )));
                        }
                    } else {
                        found = Some((inv, dir));
                    }
                }
            }
        }
        found.ok_or_else(|| {
            Error::Internal(format!(
                "arrow {} has no direct-inverse factorization",
                self.cat.arrows[u].label
            ))
        })
    }

    pub fn validate(&self) -> Report {
        let mut report = self.cat.validate();
        report.scope = "reedy".into();
        if self.degree.len() != self.cat.objects.len() || self.class.len() != self.cat.arrows.len() {
            report.fail("tables", "sizes", "degree/class tables do not match the category");
            return report;
        }
        for (f, a) in self.cat.arrows.iter().enumerate() {
            let (ds, dd) = (self.degree[a.src], self.degree[a.dst]);
            match self.class[f] {
                ArrowClass::Identity => {
                    if !self.cat.is_identity(f) {
                        report.fail("class-identity", &a.label, "non-identity arrow classed identity");
                    }
                }
                ArrowClass::Direct => {
                    if self.cat.is_identity(f) {
                        report.fail("class-direct", &a.label, "identity arrow classed direct");
                    } else if ds >= dd {
                        report.fail(
                            "degree-raise",
                            &a.label,
                            format!("direct arrow does not raise degree ({ds} -> {dd})"),
                        );
                    }
                }
                ArrowClass::Inverse => {
                    if self.cat.is_identity(f) {
                        report.fail("class-inverse", &a.label, "identity arrow classed inverse");
                    } else if ds <= dd {
                        report.fail(
                            "degree-lower",
                            &a.label,
                            format!("inverse arrow does not lower degree ({ds} -> {dd})"),
                        );
                    }
                }
                ArrowClass::Mixed => {
                    if self.cat.is_identity(f) {
                        report.fail("class-mixed", &a.label, "identity arrow classed composite");
                    }
                }
            }
        }
        // classes closed under composition
        for f in 0..self.cat.arrows.len() {
            for g in 0..self.cat.arrows.len() {
                if let Some(gf) = self.cat.then(f, g) {
                    if self.is_direct(f) && self.is_direct(g) && !self.is_direct(gf) {
                        report.fail(
                            "direct-closed",
                            format!("{};{}", self.cat.arrows[f].label, self.cat.arrows[g].label),
                            "composite of direct arrows is not direct",
                        );
                    }
                    if self.is_inverse(f) && self.is_inverse(g) && !self.is_inverse(gf) {
                        report.fail(
                            "inverse-closed",
                            format!("{};{}", self.cat.arrows[f].label, self.cat.arrows[g].label),
                            "composite of inverse arrows is not inverse",
                        );
                    }
                }
            }
        }
        // only identities are isomorphisms
        for f in 0..self.cat.arrows.len() {
            if self.cat.is_identity(f) {
                continue;
            }
            for g in 0..self.cat.arrows.len() {
                let fg_id = self.cat.then(f, g).map(|c| self.cat.is_identity(c)).unwrap_or(false);
                let gf_id = self.cat.then(g, f).map(|c| self.cat.is_identity(c)).unwrap_or(false);
                if fg_id && gf_id {
                    report.fail("no-isos", &self.cat.arrows[f].label, "non-identity isomorphism");
                }
            }
        }
        // unique direct-inverse factorization of every arrow
        for u in 0..self.cat.arrows.len() {
            if let Err(e) = self.factorize(u) {
                report.fail("unique-factorization", &self.cat.arrows[u].label, e.to_string());
            }
        }
        report.pass_if_clean("reedy-laws", "all");
        report
    }
}

/// Stock Reedy 1-categories used by the verifier and by tests.
pub mod examples {
    use super::*;

    /// a (deg 0) -> b (deg 1).
    pub fn walking_arrow() -> ReedyCat {
        let cat = FinCat::walking_arrow();
        ReedyCat {
            cat,
            degree: vec![0, 1],
            class: vec![ArrowClass::Identity, ArrowClass::Identity, ArrowClass::Direct],
        }
    }

    /// a -> c <- b with deg(a) = deg(b) = 0, deg(c) = 1.
    pub fn span_target() -> ReedyCat {
        let mut cat = FinCat::new(vec!["a".into(), "b".into(), "c".into()]);
        cat.add_arrow("f", 0, 2);
        cat.add_arrow("g", 1, 2);
        ReedyCat {
            cat,
            degree: vec![0, 0, 1],
            class: vec![
                ArrowClass::Identity,
                ArrowClass::Identity,
                ArrowClass::Identity,
                ArrowClass::Direct,
                ArrowClass::Direct,
            ],
        }
    }

    /// u (deg 1) -> v (deg 0), an inverse generator.
    pub fn walking_inverse() -> ReedyCat {
        let mut cat = FinCat::new(vec!["u".into(), "v".into()]);
        cat.add_arrow("s", 0, 1);
        ReedyCat {
            cat,
            degree: vec![1, 0],
            class: vec![ArrowClass::Identity, ArrowClass::Identity, ArrowClass::Inverse],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::examples::walking_arrow as walking_arrow_reedy;
    use super::*;

    #[test]
    fn walking_arrow_validates() {
        let r = walking_arrow_reedy();
        assert!(r.validate().passed());
    }

    #[test]
    fn stock_categories_validate() {
        assert!(examples::span_target().validate().passed());
        assert!(examples::walking_inverse().validate().passed());
    }

    #[test]
    fn factorize_direct_is_id_then_direct() {
        let r = walking_arrow_reedy();
        let f = r.cat.arrow_by_label("f").unwrap();
        let (inv, dir) = r.factorize(f).unwrap();
        assert!(r.cat.is_identity(inv));
        assert_eq!(dir, f);
    }

    #[test]
    fn misclassified_arrow_fails() {
        let mut r = walking_arrow_reedy();
        let f = r.cat.arrow_by_label("f").unwrap();
        r.class[f] = ArrowClass::Inverse;
        assert!(!r.validate().passed());
    }
}
