//! Finite truncations of simple locally Reedy 2-categories.
//!
//! A groupement has a finite object set, a Reedy category of 1-cells and
//! 2-cells for every ordered pair of objects, and a partial horizontal
//! composition defined exactly when degrees sum to at most the bound.
//! Degrees add under composition ("simple"), and the builders below cover
//! the three families the engine works with: the augmented simplex
//! category on one object, chain categories on a finite object set, and
//! the two-object groupement carrying a classical Reedy category.

use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::reedy::{ArrowClass, ReedyCat};
use crate::report::Report;
use crate::simplex::{
    compose_tables, is_injective_table, is_surjective_table, joyal_dual, monotone_maps, ordinal_add,
};
use std::collections::{BTreeMap, HashMap};

/// 1-cell address: hom(a, b), object index i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneCell {
    pub a: usize,
    pub b: usize,
    pub i: usize,
}

/// 2-cell address: hom(a, b), arrow index i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwoCell {
    pub a: usize,
    pub b: usize,
    pub i: usize,
}

/// Which builder produced a groupement; drives the oracle selection in
/// the model-axiom verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupementKind {
    Ordinals,
    Chains,
    Reedy1,
    Explicit,
}

#[derive(Debug, Clone)]
pub struct TwoGroupement {
    pub name: String,
    pub kind: GroupementKind,
    pub objects: Vec<String>,
    pub bound: u32,
    pub homs: BTreeMap<(usize, usize), ReedyCat>,
    pub units: Vec<OneCell>,
    hcomp1: BTreeMap<(OneCell, OneCell), OneCell>,
    hcomp2: BTreeMap<(TwoCell, TwoCell), TwoCell>,
}

impl TwoGroupement {
    pub fn hom(&self, a: usize, b: usize) -> &ReedyCat {
        &self.homs[&(a, b)]
    }

    pub fn one_cells(&self) -> Vec<OneCell> {
        let mut out = Vec::new();
        for (&(a, b), h) in &self.homs {
            for i in 0..h.cat.objects.len() {
                out.push(OneCell { a, b, i });
            }
        }
        out
    }

    /// Non-unit 1-cells in canonical (degree, hom, index) order.
    pub fn one_cells_by_degree(&self) -> Vec<OneCell> {
        let mut cells: Vec<OneCell> = self.one_cells().into_iter().filter(|z| !self.is_unit(*z)).collect();
        cells.sort_by_key(|z| (self.deg1(*z), z.a, z.b, z.i));
        cells
    }

    pub fn two_cells(&self) -> Vec<TwoCell> {
        let mut out = Vec::new();
        for (&(a, b), h) in &self.homs {
            for i in 0..h.cat.arrows.len() {
                out.push(TwoCell { a, b, i });
            }
        }
        out
    }

    pub fn deg1(&self, z: OneCell) -> u32 {
        self.hom(z.a, z.b).degree[z.i]
    }

    pub fn is_unit(&self, z: OneCell) -> bool {
        self.units.contains(&z)
    }

    pub fn label1(&self, z: OneCell) -> &str {
        &self.hom(z.a, z.b).cat.objects[z.i]
    }

    pub fn label2(&self, u: TwoCell) -> &str {
        &self.hom(u.a, u.b).cat.arrows[u.i].label
    }

    pub fn src2(&self, u: TwoCell) -> OneCell {
        OneCell { a: u.a, b: u.b, i: self.hom(u.a, u.b).cat.arrows[u.i].src }
    }

    pub fn dst2(&self, u: TwoCell) -> OneCell {
        OneCell { a: u.a, b: u.b, i: self.hom(u.a, u.b).cat.arrows[u.i].dst }
    }

    pub fn id2(&self, z: OneCell) -> TwoCell {
        TwoCell { a: z.a, b: z.b, i: self.hom(z.a, z.b).cat.identity[z.i] }
    }

    pub fn class2(&self, u: TwoCell) -> ArrowClass {
        self.hom(u.a, u.b).class[u.i]
    }

    pub fn is_direct2(&self, u: TwoCell) -> bool {
        self.hom(u.a, u.b).is_direct(u.i)
    }

    pub fn is_inverse2(&self, u: TwoCell) -> bool {
        self.hom(u.a, u.b).is_inverse(u.i)
    }

    pub fn is_id2(&self, u: TwoCell) -> bool {
        self.hom(u.a, u.b).cat.is_identity(u.i)
    }

    /// Vertical composition: v after u inside a hom category.
    pub fn then2(&self, u: TwoCell, v: TwoCell) -> Option<TwoCell> {
        if (u.a, u.b) != (v.a, v.b) {
            return None;
        }
        self.hom(u.a, u.b).cat.then(u.i, v.i).map(|i| TwoCell { a: u.a, b: u.b, i })
    }

    /// Horizontal composition of 1-cells (partial).
    pub fn tensor1(&self, s: OneCell, t: OneCell) -> Option<OneCell> {
        if s.b != t.a {
            return None;
        }
        if self.is_unit(s) {
            return Some(t);
        }
        if self.is_unit(t) {
            return Some(s);
        }
        self.hcomp1.get(&(s, t)).copied()
    }

    pub fn tensor1_many(&self, parts: &[OneCell]) -> Option<OneCell> {
        let mut it = parts.iter();
        let mut acc = *it.next()?;
        for &p in it {
            acc = self.tensor1(acc, p)?;
        }
        Some(acc)
    }

    /// Horizontal composition of 2-cells (partial).
    pub fn tensor2(&self, u: TwoCell, v: TwoCell) -> Option<TwoCell> {
        if u.b != v.a {
            return None;
        }
        if self.is_unit(self.src2(u)) && self.is_unit(self.dst2(u)) && self.is_id2(u) {
            return Some(v);
        }
        if self.is_unit(self.src2(v)) && self.is_unit(self.dst2(v)) && self.is_id2(v) {
            return Some(u);
        }
        self.hcomp2.get(&(u, v)).copied()
    }

    pub fn tensor2_many(&self, parts: &[TwoCell]) -> Option<TwoCell> {
        let mut it = parts.iter();
        let mut acc = *it.next()?;
        for &p in it {
            acc = self.tensor2(acc, p)?;
        }
        Some(acc)
    }

    pub fn one_cell_by_label(&self, a: usize, b: usize, label: &str) -> Option<OneCell> {
        self.hom(a, b).cat.object_by_label(label).map(|i| OneCell { a, b, i })
    }

    pub fn two_cell_by_label(&self, a: usize, b: usize, label: &str) -> Option<TwoCell> {
        self.hom(a, b).cat.arrow_by_label(label).map(|i| TwoCell { a, b, i })
    }

    /// Looks up a 1-cell by label anywhere.
    pub fn find_one_cell(&self, label: &str) -> Option<OneCell> {
        for (&(a, b), h) in &self.homs {
            if let Some(i) = h.cat.object_by_label(label) {
                return Some(OneCell { a, b, i });
            }
        }
        None
    }

    pub fn find_two_cell(&self, label: &str) -> Option<TwoCell> {
        for (&(a, b), h) in &self.homs {
            if let Some(i) = h.cat.arrow_by_label(label) {
                return Some(TwoCell { a, b, i });
            }
        }
        None
    }

    /// All non-unit binary decompositions of w.
    pub fn binary_decompositions(&self, w: OneCell) -> Vec<(OneCell, OneCell)> {
        let mut out = Vec::new();
        for (&(s, t), &prod) in &self.hcomp1 {
            if prod == w && !self.is_unit(s) && !self.is_unit(t) {
                out.push((s, t));
            }
        }
        out
    }

    /// All decompositions of w into tuples of one or more non-unit
    /// 1-cells, ordered with the trivial tuple [w] first.
    pub fn decompositions(&self, w: OneCell) -> Vec<Vec<OneCell>> {
        let mut out = vec![vec![w]];
        for (s, t) in self.binary_decompositions(w) {
            for rest in self.decompositions(t) {
                let mut tuple = vec![s];
                tuple.extend(rest);
                out.push(tuple);
            }
        }
        out.sort_by_key(|tuple| (tuple.len(), tuple.clone()));
        out.dedup();
        out
    }

    /// Unique splitting of a direct 2-cell along a decomposition of its
    /// target (the divisibility lift), computed by enumeration.
    pub fn split_direct(&self, alpha: TwoCell, parts: &[OneCell]) -> Result<Vec<TwoCell>> {
        if !self.is_direct2(alpha) {
            return Err(Error::Precondition(format!(
                "split_direct on non-direct 2-cell {}",
                self.label2(alpha)
            )));
        }
        if parts.len() == 1 {
            if self.dst2(alpha) != parts[0] {
                return Err(Error::Endpoint("split target mismatch".into()));
            }
            return Ok(vec![alpha]);
        }
        let rest_prod = self
            .tensor1_many(&parts[1..])
            .ok_or_else(|| Error::Truncation("decomposition tail not composable".into()))?;
        let (b1, b2) = self.binary_split_direct(alpha, parts[0], rest_prod)?;
        let mut out = vec![b1];
        out.extend(self.split_direct(b2, &parts[1..])?);
        Ok(out)
    }

    fn binary_split_direct(
        &self,
        alpha: TwoCell,
        p1: OneCell,
        p2: OneCell,
    ) -> Result<(TwoCell, TwoCell)> {
        let mut found: Option<(TwoCell, TwoCell)> = None;
        let h1 = self.hom(p1.a, p1.b);
        let h2 = self.hom(p2.a, p2.b);
        for i1 in 0..h1.cat.arrows.len() {
            if h1.cat.arrows[i1].dst != p1.i || !h1.is_direct(i1) {
                continue;
            }
            let b1 = TwoCell { a: p1.a, b: p1.b, i: i1 };
            for i2 in 0..h2.cat.arrows.len() {
                if h2.cat.arrows[i2].dst != p2.i || !h2.is_direct(i2) {
                    continue;
                }
                let b2 = TwoCell { a: p2.a, b: p2.b, i: i2 };
                if self.tensor2(b1, b2) == Some(alpha) {
                    if found.is_some() {
                        return Err(Error::Internal(format!(
                            "direct 2-cell {} has two splittings along ({}, {})",
                            self.label2(alpha),
                            self.label1(p1),
                            self.label1(p2)
                        )));
                    }
                    found = Some((b1, b2));
                }
            }
        }
        found.ok_or_else(|| {
            Error::Internal(format!(
                "direct 2-cell {} has no splitting along ({}, {})",
                self.label2(alpha),
                self.label1(p1),
                self.label1(p2)
            ))
        })
    }

    /// Unique Reedy factorization of a 2-cell as direct after inverse.
    pub fn reedy_factorize(&self, u: TwoCell) -> Result<(TwoCell, TwoCell)> {
        let (inv, dir) = self.hom(u.a, u.b).factorize(u.i)?;
        Ok((TwoCell { a: u.a, b: u.b, i: inv }, TwoCell { a: u.a, b: u.b, i: dir }))
    }

    pub fn validate_simple_lr(&self) -> Report {
        let mut report = Report::new(format!("groupement:{}", self.name));
        // per-hom Reedy structure
        for (&(a, b), h) in &self.homs {
            let sub = h.validate();
            if !sub.passed() {
                for f in sub.failures() {
                    report.fail(
                        format!("hom({},{}):{}", self.objects[a], self.objects[b], f.check),
                        &f.instance,
                        f.witness.clone().unwrap_or_default(),
                    );
                }
            }
        }
        // units: degree 0, in the right hom
        for (o, &u) in self.units.iter().enumerate() {
            if u.a != o || u.b != o {
                report.fail("unit-endpoint", &self.objects[o], "unit outside hom(a,a)");
            } else if self.deg1(u) != 0 {
                report.fail("unit-degree", &self.objects[o], "unit 1-cell has nonzero degree");
            }
        }
        // degree bound
        for z in self.one_cells() {
            if self.deg1(z) > self.bound {
                report.fail("degree-bound", self.label1(z), "1-cell exceeds the bound");
            }
        }
        // finiteness guard: composable non-unit pairs need both degrees >= 1
        for (&(s, t), _) in &self.hcomp1 {
            if !self.is_unit(s) && !self.is_unit(t) && (self.deg1(s) == 0 || self.deg1(t) == 0) {
                report.fail(
                    "degree-zero-composable",
                    format!("{};{}", self.label1(s), self.label1(t)),
                    "composable non-unit pair with a degree-0 member is outside the supported class",
                );
            }
        }
        // hcomp1: definedness iff degree sum within bound; additivity; endpoints
        let cells = self.one_cells();
        for &s in &cells {
            for &t in &cells {
                if s.b != t.a {
                    continue;
                }
                let within = self.deg1(s) + self.deg1(t) <= self.bound;
                match self.tensor1(s, t) {
                    None => {
                        if within {
                            report.fail(
                                "hcomp1-total",
                                format!("{};{}", self.label1(s), self.label1(t)),
                                "composite within bound is undefined",
                            );
                        }
                    }
                    Some(p) => {
                        if !within {
                            report.fail(
                                "hcomp1-bound",
                                format!("{};{}", self.label1(s), self.label1(t)),
                                "composite beyond bound is defined",
                            );
                        }
                        if p.a != s.a || p.b != t.b {
                            report.fail(
                                "hcomp1-endpoints",
                                format!("{};{}", self.label1(s), self.label1(t)),
                                "composite has wrong endpoints",
                            );
                        }
                        if self.deg1(p) != self.deg1(s) + self.deg1(t) {
                            report.fail(
                                "simplicity",
                                format!("{};{}", self.label1(s), self.label1(t)),
                                format!(
                                    "deg({}) != {} + {}",
                                    self.label1(p),
                                    self.deg1(s),
                                    self.deg1(t)
                                ),
                            );
                        }
                    }
                }
            }
        }
        // hcomp1 associativity
        for &s in &cells {
            for &t in &cells {
                if s.b != t.a {
                    continue;
                }
                for &u in &cells {
                    if t.b != u.a {
                        continue;
                    }
                    let lhs = self.tensor1(s, t).and_then(|st| self.tensor1(st, u));
                    let rhs = self.tensor1(t, u).and_then(|tu| self.tensor1(s, tu));
                    if lhs != rhs {
                        report.fail(
                            "hcomp1-assoc",
                            format!("{};{};{}", self.label1(s), self.label1(t), self.label1(u)),
                            "associativity fails",
                        );
                    }
                }
            }
        }
        // hcomp2 checks
        let twos = self.two_cells();
        for &u in &twos {
            for &v in &twos {
                if u.b != v.a {
                    continue;
                }
                let src_ok = self.tensor1(self.src2(u), self.src2(v));
                let dst_ok = self.tensor1(self.dst2(u), self.dst2(v));
                let defined = self.tensor2(u, v);
                match (&src_ok, &dst_ok, &defined) {
                    (Some(s), Some(d), Some(w)) => {
                        if self.src2(*w) != *s || self.dst2(*w) != *d {
                            report.fail(
                                "hcomp2-endpoints",
                                format!("{};{}", self.label2(u), self.label2(v)),
                                "2-cell composite has wrong endpoints",
                            );
                        }
                        // class preservation
                        if self.is_direct2(u) && self.is_direct2(v) && !self.is_direct2(*w) {
                            report.fail(
                                "hcomp2-direct",
                                format!("{};{}", self.label2(u), self.label2(v)),
                                "horizontal composite of direct cells is not direct",
                            );
                        }
                        if self.is_inverse2(u) && self.is_inverse2(v) && !self.is_inverse2(*w) {
                            report.fail(
                                "hcomp2-inverse",
                                format!("{};{}", self.label2(u), self.label2(v)),
                                "horizontal composite of inverse cells is not inverse",
                            );
                        }
                        // identity reflection
                        if self.is_id2(*w) && !(self.is_id2(u) && self.is_id2(v)) {
                            report.fail(
                                "identity-reflecting",
                                format!("{};{}", self.label2(u), self.label2(v)),
                                "non-identity cells compose to an identity",
                            );
                        }
                        if self.is_id2(u) && self.is_id2(v) && !self.is_id2(*w) {
                            report.fail(
                                "identity-composite",
                                format!("{};{}", self.label2(u), self.label2(v)),
                                "identities compose to a non-identity",
                            );
                        }
                    }
                    (Some(_), Some(_), None) => {
                        report.fail(
                            "hcomp2-total",
                            format!("{};{}", self.label2(u), self.label2(v)),
                            "2-cell composite within bound is undefined",
                        );
                    }
                    (_, _, Some(_)) => {
                        report.fail(
                            "hcomp2-bound",
                            format!("{};{}", self.label2(u), self.label2(v)),
                            "2-cell composite beyond bound is defined",
                        );
                    }
                    _ => {}
                }
            }
        }
        // interchange: (u;u') tensor (v;v') = (u tensor v); (u' tensor v')
        for &u in &twos {
            for &v in &twos {
                if u.b != v.a || self.tensor2(u, v).is_none() {
                    continue;
                }
                for &u2 in &twos {
                    if (u2.a, u2.b) != (u.a, u.b) || self.src2(u2) != self.dst2(u) {
                        continue;
                    }
                    for &v2 in &twos {
                        if (v2.a, v2.b) != (v.a, v.b) || self.src2(v2) != self.dst2(v) {
                            continue;
                        }
                        let Some(uv) = self.tensor2(u, v) else { continue };
                        let Some(u2v2) = self.tensor2(u2, v2) else { continue };
                        let vert_then_horiz =
                            self.then2(u, u2).and_then(|uu| self.then2(v, v2).and_then(|vv| self.tensor2(uu, vv)));
                        let horiz_then_vert = self.then2(uv, u2v2);
                        if vert_then_horiz != horiz_then_vert {
                            report.fail(
                                "interchange",
                                format!(
                                    "{};{};{};{}",
                                    self.label2(u),
                                    self.label2(v),
                                    self.label2(u2),
                                    self.label2(v2)
                                ),
                                "interchange law fails",
                            );
                        }
                    }
                }
            }
        }
        // hcomp2 associativity
        for &u in &twos {
            for &v in &twos {
                if u.b != v.a {
                    continue;
                }
                for &w in &twos {
                    if v.b != w.a {
                        continue;
                    }
                    let lhs = self.tensor2(u, v).and_then(|uv| self.tensor2(uv, w));
                    let rhs = self.tensor2(v, w).and_then(|vw| self.tensor2(u, vw));
                    if lhs != rhs {
                        report.fail(
                            "hcomp2-assoc",
                            format!("{};{};{}", self.label2(u), self.label2(v), self.label2(w)),
                            "associativity fails",
                        );
                    }
                }
            }
        }
        // identities tensor to identities
        for &s in &cells {
            for &t in &cells {
                if s.b != t.a {
                    continue;
                }
                if let Some(p) = self.tensor1(s, t) {
                    if self.tensor2(self.id2(s), self.id2(t)) != Some(self.id2(p)) {
                        report.fail(
                            "hcomp2-units",
                            format!("{};{}", self.label1(s), self.label1(t)),
                            "identity 2-cells do not compose to the identity",
                        );
                    }
                }
            }
        }
        report.pass_if_clean("simple-locally-reedy", "all");
        report
    }

    /// Verifies the divisibility property: horizontal composition
    /// restricted to direct 2-cells has unique lifts along every binary
    /// decomposition of the target, functorially.
    pub fn check_direct_divisibility(&self) -> Report {
        let mut report = Report::new(format!("divisibility:{}", self.name));
        let twos = self.two_cells();
        let directs: Vec<TwoCell> = twos.iter().copied().filter(|&u| self.is_direct2(u)).collect();
        for &alpha in &directs {
            let zp = self.dst2(alpha);
            for (&(s1, s2), &prod) in &self.hcomp1 {
                if prod != zp {
                    continue;
                }
                let mut count = 0;
                let mut witness = None;
                let h1 = self.hom(s1.a, s1.b);
                let h2 = self.hom(s2.a, s2.b);
                for i1 in 0..h1.cat.arrows.len() {
                    if h1.cat.arrows[i1].dst != s1.i || !h1.is_direct(i1) {
                        continue;
                    }
                    for i2 in 0..h2.cat.arrows.len() {
                        if h2.cat.arrows[i2].dst != s2.i || !h2.is_direct(i2) {
                            continue;
                        }
                        let b1 = TwoCell { a: s1.a, b: s1.b, i: i1 };
                        let b2 = TwoCell { a: s2.a, b: s2.b, i: i2 };
                        if self.tensor2(b1, b2) == Some(alpha) {
                            count += 1;
                            witness = Some((b1, b2));
                        }
                    }
                }
                if count != 1 {
                    report.fail(
                        "unique-lift",
                        format!(
                            "{} along ({},{})",
                            self.label2(alpha),
                            self.label1(s1),
                            self.label1(s2)
                        ),
                        format!("{count} lifts found"),
                    );
                    continue;
                }
                let _ = witness;
            }
        }
        // functoriality: lift of a composite = composite of lifts
        for &alpha in &directs {
            for &alpha2 in &directs {
                if (alpha.a, alpha.b) != (alpha2.a, alpha2.b) || self.dst2(alpha) != self.src2(alpha2)
                {
                    continue;
                }
                let Some(comp) = self.then2(alpha, alpha2) else { continue };
                let zpp = self.dst2(alpha2);
                for (s2, t2) in self.binary_decompositions(zpp) {
                    let parts2 = [s2, t2];
                    let lift2 = match self.split_direct(alpha2, &parts2) {
                        Ok(l) => l,
                        Err(_) => continue,
                    };
                    let mid = [self.src2(lift2[0]), self.src2(lift2[1])];
                    let lift1 = match self.split_direct(alpha, &mid) {
                        Ok(l) => l,
                        Err(_) => continue,
                    };
                    let lift_comp = match self.split_direct(comp, &parts2) {
                        Ok(l) => l,
                        Err(_) => continue,
                    };
                    let composed: Option<Vec<TwoCell>> = lift1
                        .iter()
                        .zip(&lift2)
                        .map(|(&x, &y)| self.then2(x, y))
                        .collect();
                    if composed.as_deref() != Some(&lift_comp[..]) {
                        report.fail(
                            "lift-functorial",
                            format!(
                                "{};{} along ({},{})",
                                self.label2(alpha),
                                self.label2(alpha2),
                                self.label1(s2),
                                self.label1(t2)
                            ),
                            "lift of composite differs from composite of lifts",
                        );
                    }
                }
            }
        }
        report.pass_if_clean("direct-divisible", "all");
        report
    }

    /// Restriction to 1-cells of degree at most k.
    pub fn truncate(&self, k: u32) -> Result<TwoGroupement> {
        if k > self.bound {
            return Err(Error::Truncation(format!("cannot truncate at {k} beyond bound {}", self.bound)));
        }
        let mut homs = BTreeMap::new();
        // object/arrow index remaps per hom
        let mut ob_map: BTreeMap<(usize, usize), Vec<Option<usize>>> = BTreeMap::new();
        let mut ar_map: BTreeMap<(usize, usize), Vec<Option<usize>>> = BTreeMap::new();
        for (&(a, b), h) in &self.homs {
            let mut objects = Vec::new();
            let mut degree = Vec::new();
            let mut omap = vec![None; h.cat.objects.len()];
            for (i, label) in h.cat.objects.iter().enumerate() {
                if h.degree[i] <= k {
                    omap[i] = Some(objects.len());
                    objects.push(label.clone());
                    degree.push(h.degree[i]);
                }
            }
            let mut cat = FinCat { objects, ..Default::default() };
            let mut class = Vec::new();
            let mut amap = vec![None; h.cat.arrows.len()];
            // identities first, mirroring FinCat::new
            cat.identity = vec![0; cat.objects.len()];
            for (i, arr) in h.cat.arrows.iter().enumerate() {
                let (Some(src), Some(dst)) = (omap[arr.src], omap[arr.dst]) else { continue };
                amap[i] = Some(cat.arrows.len());
                cat.arrows.push(crate::fincat::Arrow { label: arr.label.clone(), src, dst });
                class.push(h.class[i]);
                if h.cat.identity[arr.src] == i && arr.src == arr.dst {
                    cat.identity[src] = cat.arrows.len() - 1;
                }
            }
            for (&(f, g), &gf) in &h.cat.compose {
                if let (Some(nf), Some(ng), Some(ngf)) = (amap[f], amap[g], amap[gf]) {
                    cat.compose.insert((nf, ng), ngf);
                }
            }
            homs.insert((a, b), ReedyCat { cat, degree, class });
            ob_map.insert((a, b), omap);
            ar_map.insert((a, b), amap);
        }
        let remap1 = |z: OneCell| -> Option<OneCell> {
            ob_map[&(z.a, z.b)][z.i].map(|i| OneCell { a: z.a, b: z.b, i })
        };
        let remap2 = |u: TwoCell| -> Option<TwoCell> {
            ar_map[&(u.a, u.b)][u.i].map(|i| TwoCell { a: u.a, b: u.b, i })
        };
        let mut hcomp1 = BTreeMap::new();
        for (&(s, t), &p) in &self.hcomp1 {
            if let (Some(ns), Some(nt), Some(np)) = (remap1(s), remap1(t), remap1(p)) {
                hcomp1.insert((ns, nt), np);
            }
        }
        let mut hcomp2 = BTreeMap::new();
        for (&(u, v), &w) in &self.hcomp2 {
            if let (Some(nu), Some(nv), Some(nw)) = (remap2(u), remap2(v), remap2(w)) {
                hcomp2.insert((nu, nv), nw);
            }
        }
        let units = self.units.iter().map(|&u| remap1(u).expect("units survive truncation")).collect();
        Ok(TwoGroupement {
            name: format!("{}<= {k}", self.name),
            kind: self.kind.clone(),
            objects: self.objects.clone(),
            bound: k,
            homs,
            units,
            hcomp1,
            hcomp2,
        })
    }

    // -- mutation helpers for sensitivity fixtures --

    /// Removes one horizontal 2-cell composition entry.
    pub fn without_hcomp2_entry(&self, u: TwoCell, v: TwoCell) -> TwoGroupement {
        let mut g = self.clone();
        g.name = format!("{}~mut", g.name);
        g.hcomp2.remove(&(u, v));
        g
    }

    /// Reclassifies one hom arrow.
    pub fn with_reclassified(&self, u: TwoCell, class: ArrowClass) -> TwoGroupement {
        let mut g = self.clone();
        g.name = format!("{}~mut", g.name);
        g.homs.get_mut(&(u.a, u.b)).unwrap().class[u.i] = class;
        g
    }

    /// First hcomp2 entry whose left factor matches a predicate; used to
    /// pick deterministic mutation targets.
    pub fn some_hcomp2_entry<F>(&self, mut pred: F) -> Option<(TwoCell, TwoCell)>
    where
        F: FnMut(&TwoGroupement, TwoCell, TwoCell) -> bool,
    {
        self.hcomp2.keys().find(|&&(u, v)| pred(self, u, v)).copied()
    }
}

/// Builds a hom Reedy category from explicit object and arrow data, with
/// objects sorted by (degree, label). Composition is supplied as a closure
/// on labels and resolved to indices.
pub struct HomBuilder {
    pub objects: Vec<(String, u32)>,
    pub arrows: Vec<(String, String, String, ArrowClass)>, // label, src label, dst label
}

// -- builder: augmented simplex category on one object --

pub fn map_label(n: usize, k: usize, table: &[usize]) -> String {
    let items: Vec<String> = table.iter().map(|v| v.to_string()).collect();
    format!("{n}>{k}:{}", items.join("."))
}

/// The one-object groupement of finite ordinals under addition, truncated
/// at degree m: 1-cells are ordinals, 2-cells monotone maps, direct =
/// injective, inverse = surjective.
pub fn build_delta_plus(m: u32) -> TwoGroupement {
    let m = m as usize;
    let mut cat = FinCat::new((0..=m).map(|n| n.to_string()).collect());
    let mut class = vec![ArrowClass::Identity; cat.arrows.len()];
    // identities are the identity tables; skip them during enumeration
    let mut by_key: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
    for n in 0..=m {
        let id_table: Vec<usize> = (0..n).collect();
        by_key.insert((n, n, id_table), cat.identity[n]);
    }
    for n in 0..=m {
        for k in 0..=m {
            for table in monotone_maps(n, k) {
                if n == k && table.iter().enumerate().all(|(i, &v)| i == v) {
                    continue;
                }
                let idx = cat.add_arrow(map_label(n, k, &table), n, k);
                let c = if is_injective_table(&table) {
                    ArrowClass::Direct
                } else if is_surjective_table(&table, k) {
                    ArrowClass::Inverse
                } else {
                    ArrowClass::Mixed
                };
                class.push(c);
                by_key.insert((n, k, table), idx);
            }
        }
    }
    let tables: Vec<(usize, usize, Vec<usize>)> = {
        let mut v = vec![(0usize, 0usize, Vec::new()); cat.arrows.len()];
        for ((n, k, t), &i) in &by_key {
            v[i] = (*n, *k, t.clone());
        }
        v
    };
    cat.build_compose_with(|c, f, g| {
        let (fs, _fk, ft) = &tables[f];
        let (_gs, gk, gt) = &tables[g];
        let comp = compose_tables(ft, gt);
        by_key
            .get(&(*fs, *gk, comp))
            .copied()
            .ok_or_else(|| Error::Internal(format!("composite not found: {} ; {}", c.arrows[f].label, c.arrows[g].label)))
    })
    .expect("delta plus composition");
    let degree: Vec<u32> = (0..=m as u32).collect();
    let hom = ReedyCat { cat, degree, class };

    let mut homs = BTreeMap::new();
    homs.insert((0, 0), hom);
    let mut g = TwoGroupement {
        name: format!("delta_plus({m})"),
        kind: GroupementKind::Ordinals,
        objects: vec!["*".into()],
        bound: m as u32,
        homs,
        units: vec![OneCell { a: 0, b: 0, i: 0 }],
        hcomp1: BTreeMap::new(),
        hcomp2: BTreeMap::new(),
    };
    // hcomp1: ordinal addition
    for n in 0..=m {
        for k in 0..=m {
            if n + k <= m {
                g.hcomp1.insert(
                    (OneCell { a: 0, b: 0, i: n }, OneCell { a: 0, b: 0, i: k }),
                    OneCell { a: 0, b: 0, i: n + k },
                );
            }
        }
    }
    // hcomp2: block sum of tables
    let h = g.homs.get(&(0, 0)).unwrap().clone();
    let table_of = |i: usize| -> (usize, usize, Vec<usize>) {
        let a = &h.cat.arrows[i];
        let n: usize = h.cat.objects[a.src].parse().unwrap();
        let k: usize = h.cat.objects[a.dst].parse().unwrap();
        if h.cat.identity[a.src] == i && a.src == a.dst {
            (n, k, (0..n).collect())
        } else {
            let t = a.label.split(':').nth(1).unwrap();
            let table = if t.is_empty() {
                vec![]
            } else {
                t.split('.').map(|s| s.parse().unwrap()).collect()
            };
            (n, k, table)
        }
    };
    for f in 0..h.cat.arrows.len() {
        for gg in 0..h.cat.arrows.len() {
            let (fn_, fk, ft) = table_of(f);
            let (gn, gk, gt) = table_of(gg);
            if fn_ + gn > m || fk + gk > m {
                continue;
            }
            let sum = ordinal_add(&ft, fk, &gt);
            let sum_src = fn_ + gn;
            let sum_dst = fk + gk;
            let label = map_label(sum_src, sum_dst, &sum);
            let idx = if sum_src == sum_dst && sum.iter().enumerate().all(|(i, &v)| i == v) {
                h.cat.identity[sum_src]
            } else {
                h.cat.arrow_by_label(&label).expect("block sum exists")
            };
            g.hcomp2.insert(
                (TwoCell { a: 0, b: 0, i: f }, TwoCell { a: 0, b: 0, i: gg }),
                TwoCell { a: 0, b: 0, i: idx },
            );
        }
    }
    g
}

// -- builder: chain groupement on a finite object set --

fn chain_label(labels: &[String], chain: &[usize]) -> String {
    let parts: Vec<&str> = chain.iter().map(|&i| labels[i].as_str()).collect();
    format!("({})", parts.join(","))
}

fn px_two_label(labels: &[String], src: &[usize], tgt: &[usize], table: &[usize]) -> String {
    let t: Vec<String> = table.iter().map(|v| v.to_string()).collect();
    format!("{}>{}:{}", chain_label(labels, src), chain_label(labels, tgt), t.join("."))
}

/// The chain groupement on object set X truncated at m: 1-cells x -> y are
/// chains (x..y) with at most m edges, 2-cells are parametrized by
/// monotone maps with extremity-preserving reindexing, horizontal
/// composition is chain concatenation.
pub fn build_px(labels: &[&str], m: u32) -> TwoGroupement {
    let m = m as usize;
    let mut names: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    names.sort();
    let nx = names.len();
    // enumerate chains grouped by (start, end), sorted by (len, lex)
    let mut chains: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    let mut frontier: Vec<Vec<usize>> = (0..nx).map(|x| vec![x]).collect();
    for c in &frontier {
        chains.entry((c[0], c[0])).or_default().push(c.clone());
    }
    for _ in 0..m {
        let mut next = Vec::new();
        for c in &frontier {
            for y in 0..nx {
                let mut c2 = c.clone();
                c2.push(y);
                chains.entry((c2[0], y)).or_default().push(c2.clone());
                next.push(c2);
            }
        }
        frontier = next;
    }
    for v in chains.values_mut() {
        v.sort_by_key(|c| (c.len(), c.clone()));
    }

    let mut homs = BTreeMap::new();
    let mut units = vec![OneCell { a: 0, b: 0, i: 0 }; nx];
    for a in 0..nx {
        for b in 0..nx {
            let empty = Vec::new();
            let cs = chains.get(&(a, b)).unwrap_or(&empty);
            let mut cat = FinCat::new(cs.iter().map(|c| chain_label(&names, c)).collect());
            let degree: Vec<u32> = cs.iter().map(|c| (c.len() - 1) as u32).collect();
            let mut class = vec![ArrowClass::Identity; cat.arrows.len()];
            // key (source chain, target ordinal, table); the target ordinal
            // disambiguates maps out of the unit chain, whose tables are
            // all empty
            let mut by_key: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
            let chain_index: HashMap<Vec<usize>, usize> =
                cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
            for (ci, _) in cs.iter().enumerate() {
                let n = cs[ci].len() - 1;
                by_key.insert((ci, n, (0..n).collect()), cat.identity[ci]);
            }
            for (ci, c) in cs.iter().enumerate() {
                let n = c.len() - 1;
                for k in 0..=m {
                    for table in monotone_maps(n, k) {
                        if n == k && table.iter().enumerate().all(|(i, &v)| i == v) {
                            continue;
                        }
                        let dual = joyal_dual(&table, n, k);
                        let tgt: Vec<usize> = dual.iter().map(|&i| c[i]).collect();
                        let ti = chain_index[&tgt];
                        let label = px_two_label(&names, c, &tgt, &table);
                        let idx = cat.add_arrow(label, ci, ti);
                        let cl = if is_injective_table(&table) {
                            ArrowClass::Direct
                        } else if is_surjective_table(&table, k) {
                            ArrowClass::Inverse
                        } else {
                            ArrowClass::Mixed
                        };
                        class.push(cl);
                        by_key.insert((ci, k, table), idx);
                    }
                }
            }
            let tables: Vec<(usize, usize, Vec<usize>)> = {
                let mut v = vec![(0usize, 0usize, Vec::new()); cat.arrows.len()];
                for ((ci, k, t), &i) in &by_key {
                    v[i] = (*ci, *k, t.clone());
                }
                v
            };
            cat.build_compose_with(|c, f, g| {
                let (fsrc, _fk, ft) = &tables[f];
                let (_gsrc, gk, gt) = &tables[g];
                let comp = compose_tables(ft, gt);
                by_key.get(&(*fsrc, *gk, comp)).copied().ok_or_else(|| {
                    Error::Internal(format!(
                        "chain composite not found: {} ; {}",
                        c.arrows[f].label, c.arrows[g].label
                    ))
                })
            })
            .expect("px composition");
            if a == b {
                let unit_idx = cs.iter().position(|c| c.len() == 1).expect("unit chain");
                units[a] = OneCell { a, b, i: unit_idx };
            }
            homs.insert((a, b), ReedyCat { cat, degree, class });
        }
    }
    let mut g = TwoGroupement {
        name: format!("px({},{m})", names.join("")),
        kind: GroupementKind::Chains,
        objects: names.clone(),
        bound: m as u32,
        homs,
        units,
        hcomp1: BTreeMap::new(),
        hcomp2: BTreeMap::new(),
    };
    // chain concatenation for hcomp1
    let chain_of = |g: &TwoGroupement, z: OneCell| -> Vec<usize> {
        let label = g.label1(z);
        let inner = &label[1..label.len() - 1];
        inner.split(',').map(|s| names.iter().position(|n| n == s).unwrap()).collect()
    };
    let cells = g.one_cells();
    for &s in &cells {
        for &t in &cells {
            if s.b != t.a {
                continue;
            }
            let (ds, dt) = (g.deg1(s) as usize, g.deg1(t) as usize);
            if ds + dt > m {
                continue;
            }
            let mut c = chain_of(&g, s);
            let ct = chain_of(&g, t);
            c.extend_from_slice(&ct[1..]);
            let label = chain_label(&names, &c);
            let p = g.one_cell_by_label(s.a, t.b, &label).expect("concatenated chain exists");
            g.hcomp1.insert((s, t), p);
        }
    }
    // hcomp2: concatenate source chains, block-sum tables
    let two_data = |g: &TwoGroupement, u: TwoCell| -> (Vec<usize>, usize, usize, Vec<usize>) {
        let src = g.src2(u);
        let dst = g.dst2(u);
        let c = chain_of(g, src);
        let n = g.deg1(src) as usize;
        let k = g.deg1(dst) as usize;
        if g.is_id2(u) {
            return (c, n, k, (0..n).collect());
        }
        let label = g.label2(u).to_string();
        let t = label.rsplit(':').next().unwrap();
        let table: Vec<usize> =
            if t.is_empty() { vec![] } else { t.split('.').map(|s| s.parse().unwrap()).collect() };
        (c, n, k, table)
    };
    let twos = g.two_cells();
    let mut entries = Vec::new();
    for &u in &twos {
        for &v in &twos {
            if u.b != v.a {
                continue;
            }
            let (cu, nu, ku, tu) = two_data(&g, u);
            let (cv, nv, kv, tv) = two_data(&g, v);
            if nu + nv > m || ku + kv > m {
                continue;
            }
            let mut c = cu.clone();
            c.extend_from_slice(&cv[1..]);
            let sum = ordinal_add(&tu, ku, &tv);
            let src_label = chain_label(&names, &c);
            let src_cell = g.one_cell_by_label(u.a, v.b, &src_label).unwrap();
            let w = if sum.iter().enumerate().all(|(i, &x)| i == x) && nu + nv == ku + kv {
                g.id2(src_cell)
            } else {
                let dual = joyal_dual(&sum, nu + nv, ku + kv);
                let tgt: Vec<usize> = dual.iter().map(|&i| c[i]).collect();
                let label = px_two_label(&names, &c, &tgt, &sum);
                g.two_cell_by_label(u.a, v.b, &label).expect("block sum 2-cell exists")
            };
            entries.push(((u, v), w));
        }
    }
    g.hcomp2.extend(entries);
    g
}

// -- builder: two-object groupement from a classical Reedy category --

/// Views a classical Reedy category as a groupement with objects {0, 1}
/// and hom(0,1) = B. No non-unit pairs are composable, so colax diagrams
/// on the result are exactly functors from B into the base.
pub fn build_from_reedy1(b: &ReedyCat, name: &str) -> TwoGroupement {
    let bound = b.degree.iter().copied().max().unwrap_or(0);
    // re-sort B's objects by (degree, label) so truncation keeps prefixes
    let mut order: Vec<usize> = (0..b.cat.objects.len()).collect();
    order.sort_by_key(|&i| (b.degree[i], b.cat.objects[i].clone()));
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let mut cat = FinCat {
        objects: order.iter().map(|&i| b.cat.objects[i].clone()).collect(),
        ..Default::default()
    };
    let mut degree = Vec::new();
    for &i in &order {
        degree.push(b.degree[i]);
    }
    let mut arrow_map = vec![0usize; b.cat.arrows.len()];
    let mut class = Vec::new();
    // identities first
    cat.identity = vec![0; cat.objects.len()];
    for (old_idx, arr) in b.cat.arrows.iter().enumerate() {
        let src = pos[&arr.src];
        let dst = pos[&arr.dst];
        arrow_map[old_idx] = cat.arrows.len();
        cat.arrows.push(crate::fincat::Arrow { label: arr.label.clone(), src, dst });
        class.push(b.class[old_idx]);
        if b.cat.identity[arr.src] == old_idx && arr.src == arr.dst {
            cat.identity[src] = cat.arrows.len() - 1;
        }
    }
    for (&(f, g), &gf) in &b.cat.compose {
        cat.compose.insert((arrow_map[f], arrow_map[g]), arrow_map[gf]);
    }
    let hom01 = ReedyCat { cat, degree, class };

    let trivial = |label: &str| -> ReedyCat {
        ReedyCat {
            cat: FinCat::new(vec![label.to_string()]),
            degree: vec![0],
            class: vec![ArrowClass::Identity],
        }
    };
    let empty = ReedyCat { cat: FinCat::new(vec![]), degree: vec![], class: vec![] };
    let mut homs = BTreeMap::new();
    homs.insert((0, 0), trivial("1_0"));
    homs.insert((0, 1), hom01);
    homs.insert((1, 0), empty);
    homs.insert((1, 1), trivial("1_1"));
    TwoGroupement {
        name: name.to_string(),
        kind: GroupementKind::Reedy1,
        objects: vec!["0".into(), "1".into()],
        bound,
        homs,
        units: vec![OneCell { a: 0, b: 0, i: 0 }, OneCell { a: 1, b: 1, i: 0 }],
        hcomp1: BTreeMap::new(),
        hcomp2: BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex::binomial;

    #[test]
    fn delta_plus_validates() {
        let g = build_delta_plus(3);
        let r = g.validate_simple_lr();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn delta_plus_hom_counts() {
        let g = build_delta_plus(4);
        let h = g.hom(0, 0);
        for n in 1..=4usize {
            for k in 1..=4usize {
                let count = h
                    .cat
                    .arrows
                    .iter()
                    .filter(|a| {
                        h.cat.objects[a.src] == n.to_string() && h.cat.objects[a.dst] == k.to_string()
                    })
                    .count();
                assert_eq!(count, binomial(n + k - 1, n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn delta_plus_m1_has_eta() {
        let g = build_delta_plus(1);
        let eta = g.find_two_cell("0>1:").expect("eta exists");
        assert_eq!(g.deg1(g.src2(eta)), 0);
        assert_eq!(g.deg1(g.dst2(eta)), 1);
        assert!(g.is_direct2(eta));
        // the only 2-cells at bound 1 are eta and identities
        let non_id: Vec<_> = g.two_cells().into_iter().filter(|&u| !g.is_id2(u)).collect();
        assert_eq!(non_id.len(), 1);
    }

    #[test]
    fn unique_monotone_surjection_2_to_1() {
        let g = build_delta_plus(3);
        let h = g.hom(0, 0);
        let surj: Vec<_> = (0..h.cat.arrows.len())
            .filter(|&i| {
                h.cat.objects[h.cat.arrows[i].src] == "2"
                    && h.cat.objects[h.cat.arrows[i].dst] == "1"
                    && h.class[i] == ArrowClass::Inverse
            })
            .collect();
        assert_eq!(surj.len(), 1);
    }

    #[test]
    fn delta_plus_divisible() {
        let g = build_delta_plus(3);
        let r = g.check_direct_divisibility();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn reclassified_surjection_fails_validation() {
        let g = build_delta_plus(3);
        let sigma = g.find_two_cell("2>1:0.0").unwrap();
        let bad = g.with_reclassified(sigma, ArrowClass::Direct);
        let r = bad.validate_simple_lr();
        assert!(!r.passed());
        let w = r.first_failure().unwrap();
        assert!(w.instance.contains("2>1:0.0"));
    }

    #[test]
    fn deleted_lift_breaks_divisibility() {
        let g = build_delta_plus(3);
        // remove the composition producing some direct 2-cell into a sum
        let entry = g
            .some_hcomp2_entry(|g, u, v| {
                g.is_direct2(u) && g.is_direct2(v) && !g.is_id2(u) && !g.is_id2(v)
            })
            .expect("entry exists");
        let bad = g.without_hcomp2_entry(entry.0, entry.1);
        let r = bad.check_direct_divisibility();
        assert!(!r.passed());
        assert!(r.first_failure().is_some());
    }

    #[test]
    fn px_small_counts() {
        let g = build_px(&["a", "b"], 2);
        let r = g.validate_simple_lr();
        assert!(r.passed(), "{}", r.to_text());
        // P(a,b) has 1-cells (a,b), (a,a,b), (a,b,b)
        let h = g.hom(0, 1);
        assert_eq!(h.cat.objects.len(), 3);
        assert_eq!(h.cat.objects[0], "(a,b)");
        assert!(h.cat.objects.contains(&"(a,a,b)".to_string()));
        assert!(h.cat.objects.contains(&"(a,b,b)".to_string()));
    }

    #[test]
    fn px_merge_and_insert_cells() {
        let g = build_px(&["x", "y", "z"], 2);
        // (x,y,z) -> (x,z) over the surjection 2 -> 1
        let m = g.find_two_cell("(x,y,z)>(x,z):0.0").expect("merge 2-cell exists");
        assert!(g.is_inverse2(m));
        // (x) -> (x,x) over eta, endpoints coincide
        let e = g.find_two_cell("(x)>(x,x):").expect("insert 2-cell exists");
        assert!(g.is_direct2(e));
        // no (x) -> (x,y) cell
        assert!(g.find_two_cell("(x)>(x,y):").is_none());
    }

    #[test]
    fn px_divisible() {
        let g = build_px(&["a", "b"], 2);
        let r = g.check_direct_divisibility();
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn px_le_is_strict_two_functor() {
        // Le sends a 2-cell to its underlying table; tensor corresponds to
        // block sum and vertical composition to table composition. Check by
        // comparing against delta_plus on matching data.
        let g = build_px(&["a", "b"], 3);
        let twos = g.two_cells();
        let table_of = |u: TwoCell| -> (usize, usize, Vec<usize>) {
            let n = g.deg1(g.src2(u)) as usize;
            let k = g.deg1(g.dst2(u)) as usize;
            if g.is_id2(u) {
                return (n, k, (0..n).collect());
            }
            let label = g.label2(u).to_string();
            let t = label.rsplit(':').next().unwrap().to_string();
            let table =
                if t.is_empty() { vec![] } else { t.split('.').map(|s| s.parse().unwrap()).collect() };
            (n, k, table)
        };
        let mut checked = 0;
        for &u in &twos {
            for &v in &twos {
                if u.b != v.a {
                    continue;
                }
                if let Some(w) = g.tensor2(u, v) {
                    let (_, ku, tu) = table_of(u);
                    let (_, _, tv) = table_of(v);
                    let (_, _, tw) = table_of(w);
                    assert_eq!(tw, ordinal_add(&tu, ku, &tv));
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn px_unique_lift_per_source() {
        // for every table phi and chain over its source, exactly one 2-cell
        let g = build_px(&["a", "b", "c"], 3);
        for (a, b) in [(0usize, 1usize), (0, 0), (2, 1)] {
            let h = g.hom(a, b);
            for (ci, _) in h.cat.objects.iter().enumerate() {
                let z = OneCell { a, b, i: ci };
                let n = g.deg1(z) as usize;
                for k in 0..=3usize {
                    for table in monotone_maps(n, k) {
                        let count = (0..h.cat.arrows.len())
                            .filter(|&i| {
                                if h.cat.arrows[i].src != ci {
                                    return false;
                                }
                                let u = TwoCell { a, b, i };
                                let (un, uk, ut) = {
                                    let n2 = g.deg1(g.src2(u)) as usize;
                                    let k2 = g.deg1(g.dst2(u)) as usize;
                                    if g.is_id2(u) {
                                        (n2, k2, (0..n2).collect::<Vec<_>>())
                                    } else {
                                        let label = g.label2(u).to_string();
                                        let t = label.rsplit(':').next().unwrap().to_string();
                                        let tb: Vec<usize> = if t.is_empty() {
                                            vec![]
                                        } else {
                                            t.split('.').map(|s| s.parse().unwrap()).collect()
                                        };
                                        (n2, k2, tb)
                                    }
                                };
                                un == n && uk == k && ut == table
                            })
                            .count();
                        assert_eq!(count, 1, "chain {ci} table {table:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn reedy1_groupement_validates() {
        let b = crate::reedy::examples::walking_arrow();
        let g = build_from_reedy1(&b, "walking");
        let r = g.validate_simple_lr();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(g.hom(0, 1).cat.objects.len(), 2);
    }

    #[test]
    fn reedy_factorize_epi_mono() {
        let g = build_delta_plus(3);
        // 2 -> 2 sending both to 1 factors as (2>1 surjection, 1>2 mono at 1)
        let u = g.find_two_cell("2>2:1.1").unwrap();
        let (inv, dir) = g.reedy_factorize(u).unwrap();
        assert_eq!(g.label2(inv), "2>1:0.0");
        assert_eq!(g.label2(dir), "1>2:1");
    }

    #[test]
    fn reedy_factorize_trivial_cases() {
        let g = build_delta_plus(2);
        let d = g.find_two_cell("1>2:0").unwrap();
        let (inv, dir) = g.reedy_factorize(d).unwrap();
        assert!(g.is_id2(inv));
        assert_eq!(dir, d);
        let s = g.find_two_cell("2>1:0.0").unwrap();
        let (inv, dir) = g.reedy_factorize(s).unwrap();
        assert_eq!(inv, s);
        assert!(g.is_id2(dir));
    }

    #[test]
    fn truncation_keeps_labels() {
        let g = build_delta_plus(3);
        let t = g.truncate(2).unwrap();
        assert!(t.validate_simple_lr().passed());
        assert_eq!(t.hom(0, 0).cat.objects, vec!["0", "1", "2"]);
        assert!(t.find_two_cell("2>1:0.0").is_some());
        assert!(t.find_two_cell("3>1:0.0.0").is_none());
        // double truncation = truncation at min
        let t1 = t.truncate(1).unwrap();
        let t2 = g.truncate(1).unwrap();
        assert_eq!(t1.hom(0, 0).cat.objects, t2.hom(0, 0).cat.objects);
    }

    #[test]
    fn latching_test_category_as_groupement() {
        // {a -> c <- b} with deg(a) = deg(b) = 0, deg(c) = 1
        let mut cat = FinCat::new(vec!["a".into(), "b".into(), "c".into()]);
        cat.add_arrow("f", 0, 2);
        cat.add_arrow("g", 1, 2);
        let b = ReedyCat {
            cat,
            degree: vec![0, 0, 1],
            class: vec![
                ArrowClass::Identity,
                ArrowClass::Identity,
                ArrowClass::Identity,
                ArrowClass::Direct,
                ArrowClass::Direct,
            ],
        };
        assert!(b.validate().passed());
        let g = build_from_reedy1(&b, "latchtest");
        assert!(g.validate_simple_lr().passed());
    }
}
