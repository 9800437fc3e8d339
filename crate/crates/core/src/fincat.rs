//! Finite categories presented by explicit composition tables.

use crate::error::{Error, Result};
use crate::report::Report;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FinCat {
    pub objects: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// identity arrow index per object
    pub identity: Vec<usize>,
    /// (f, g) -> g o f, keyed on composable pairs (dst f = src g)
    pub compose: BTreeMap<(usize, usize), usize>,
}

impl FinCat {
    pub fn new(objects: Vec<String>) -> Self {
        let mut cat = FinCat { objects, ..Default::default() };
        for i in 0..cat.objects.len() {
            let label = format!("id:{}", cat.objects[i]);
            cat.arrows.push(Arrow { label, src: i, dst: i });
            cat.identity.push(cat.arrows.len() - 1);
        }
        cat
    }

    pub fn add_arrow(&mut self, label: impl Into<String>, src: usize, dst: usize) -> usize {
        self.arrows.push(Arrow { label: label.into(), src, dst });
        self.arrows.len() - 1
    }

    pub fn set_compose(&mut self, f: usize, g: usize, gf: usize) {
        self.compose.insert((f, g), gf);
    }

    /// g after f, if composable.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        if self.arrows[f].dst != self.arrows[g].src {
            return None;
        }
        if f == self.identity[self.arrows[f].src] {
            return Some(g);
        }
        if g == self.identity[self.arrows[g].dst] {
            return Some(f);
        }
        self.compose.get(&(f, g)).copied()
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.arrows[f].src] == f && self.arrows[f].src == self.arrows[f].dst
    }

    /// Fills the composition table from a closure (used by builders that
    /// can compose representations directly).
    pub fn build_compose_with<F>(&mut self, mut comp: F) -> Result<()>
    where
        F: FnMut(&FinCat, usize, usize) -> Result<usize>,
    {
        let n = self.arrows.len();
        for f in 0..n {
            for g in 0..n {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                if self.is_identity(f) || self.is_identity(g) {
                    continue;
                }
                let gf = comp(self, f, g)?;
                self.compose.insert((f, g), gf);
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Report {
        let mut report = Report::new("fincat");
        for (i, a) in self.arrows.iter().enumerate() {
            if a.src >= self.objects.len() || a.dst >= self.objects.len() {
                report.fail("arrow-endpoints", &a.label, format!("arrow {i} endpoint out of range"));
            }
        }
        for (o, &id) in self.identity.iter().enumerate() {
            if self.arrows[id].src != o || self.arrows[id].dst != o {
                report.fail("identity", &self.objects[o], "identity arrow has wrong endpoints");
            }
        }
        // totality of composition + closure
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                match self.then(f, g) {
                    None => report.fail(
                        "compose-total",
                        format!("{};{}", self.arrows[f].label, self.arrows[g].label),
                        "composable pair has no composite",
                    ),
                    Some(gf) => {
                        if self.arrows[gf].src != self.arrows[f].src
                            || self.arrows[gf].dst != self.arrows[g].dst
                        {
                            report.fail(
                                "compose-endpoints",
                                format!("{};{}", self.arrows[f].label, self.arrows[g].label),
                                "composite has wrong endpoints",
                            );
                        }
                    }
                }
            }
        }
        // unit laws
        for f in 0..self.arrows.len() {
            let idl = self.identity[self.arrows[f].src];
            let idr = self.identity[self.arrows[f].dst];
            if self.then(idl, f) != Some(f) || self.then(f, idr) != Some(f) {
                report.fail("unit-law", &self.arrows[f].label, "identity law fails");
            }
        }
        // associativity on all composable triples
        for f in 0..self.arrows.len() {
            for g in 0..self.arrows.len() {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                for h in 0..self.arrows.len() {
                    if self.arrows[g].dst != self.arrows[h].src {
                        continue;
                    }
                    let a = self.then(f, g).and_then(|fg| self.then(fg, h));
                    let b = self.then(g, h).and_then(|gh| self.then(f, gh));
                    if a != b || a.is_none() {
                        report.fail(
                            "associativity",
                            format!(
                                "{};{};{}",
                                self.arrows[f].label, self.arrows[g].label, self.arrows[h].label
                            ),
                            "associativity fails",
                        );
                    }
                }
            }
        }
        report.pass_if_clean("category-laws", "all");
        report
    }

    pub fn arrow_by_label(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn object_by_label(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn find_arrow(&self, src: usize, dst: usize, label: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.src == src && a.dst == dst && a.label == label)
            .ok_or_else(|| Error::Internal(format!("arrow {label} not found")))
    }

    // -- small shape builders used for limits and tests --

    pub fn point() -> FinCat {
        FinCat::new(vec!["*".into()])
    }

    pub fn discrete(n: usize) -> FinCat {
        FinCat::new((0..n).map(|i| format!("o{i}")).collect())
    }

    /// b <- a -> c
    pub fn span() -> FinCat {
        let mut c = FinCat::new(vec!["a".into(), "b".into(), "c".into()]);
        c.add_arrow("l", 0, 1);
        c.add_arrow("r", 0, 2);
        c
    }

    /// a -> c <- b
    pub fn cospan() -> FinCat {
        let mut c = FinCat::new(vec!["a".into(), "b".into(), "c".into()]);
        c.add_arrow("l", 0, 2);
        c.add_arrow("r", 1, 2);
        c
    }

    /// a => b (two parallel arrows)
    pub fn parallel_pair() -> FinCat {
        let mut c = FinCat::new(vec!["a".into(), "b".into()]);
        c.add_arrow("f", 0, 1);
        c.add_arrow("g", 0, 1);
        c
    }

    /// a -> b
    pub fn walking_arrow() -> FinCat {
        let mut c = FinCat::new(vec!["a".into(), "b".into()]);
        c.add_arrow("f", 0, 1);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_validate() {
        for cat in [
            FinCat::point(),
            FinCat::discrete(3),
            FinCat::span(),
            FinCat::cospan(),
            FinCat::parallel_pair(),
            FinCat::walking_arrow(),
        ] {
            assert!(cat.validate().passed(), "{:?}", cat.validate());
        }
    }

    #[test]
    fn missing_composite_detected() {
        let mut c = FinCat::new(vec!["a".into(), "b".into(), "c".into()]);
        c.add_arrow("f", 0, 1);
        c.add_arrow("g", 1, 2);
        // no composite registered for (f, g)
        assert!(!c.validate().passed());
    }
}
