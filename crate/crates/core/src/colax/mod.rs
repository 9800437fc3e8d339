//! Normal colax diagrams on a groupement truncation, icon morphisms
//! between them, and the coherence validators.
//!
//! A diagram assigns base objects to 1-cells, base arrows to 2-cells, and
//! a colaxity arrow F(s (x) t) -> F(s) (x) F(t) to every composable
//! non-unit pair inside its level. Unit values and unit colaxity maps are
//! pinned to the monoidal unit and identities (normality), so they are
//! never stored.

pub mod canonical;
pub mod index;

use crate::base::{compose, tensor, tensor_objects, Base, BaseArrow, BaseObject};
use crate::error::{Error, Result};
use crate::groupement::{OneCell, TwoCell, TwoGroupement};
use crate::report::Report;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ColaxDiagram {
    pub name: String,
    pub cx: Arc<TwoGroupement>,
    pub base: Base,
    /// diagram is defined on 1-cells of degree <= level
    pub level: u32,
    val1: BTreeMap<OneCell, BaseObject>,
    val2: BTreeMap<TwoCell, BaseArrow>,
    colax: BTreeMap<(OneCell, OneCell), BaseArrow>,
}

impl ColaxDiagram {
    pub fn new(
        name: impl Into<String>,
        cx: Arc<TwoGroupement>,
        base: Base,
        level: u32,
        val1: BTreeMap<OneCell, BaseObject>,
        val2: BTreeMap<TwoCell, BaseArrow>,
        colax: BTreeMap<(OneCell, OneCell), BaseArrow>,
    ) -> Result<ColaxDiagram> {
        if level > cx.bound {
            return Err(Error::Truncation(format!(
                "diagram level {level} beyond groupement bound {}",
                cx.bound
            )));
        }
        let d = ColaxDiagram { name: name.into(), cx, base, level, val1, val2, colax };
        d.check_shape()?;
        Ok(d)
    }

    /// The diagram with every non-unit value the monoidal unit and every
    /// action and colaxity map the identity.
    pub fn constant_unit(cx: Arc<TwoGroupement>, base: Base, level: u32) -> ColaxDiagram {
        let mut val1 = BTreeMap::new();
        let mut val2 = BTreeMap::new();
        let mut colax = BTreeMap::new();
        let unit = base.unit();
        let id = BaseArrow::identity(base, &unit);
        for z in cx.one_cells() {
            if !cx.is_unit(z) && cx.deg1(z) <= level {
                val1.insert(z, unit);
            }
        }
        for u in cx.two_cells() {
            if cx.is_id2(u) {
                continue;
            }
            if cx.deg1(cx.src2(u)) <= level && cx.deg1(cx.dst2(u)) <= level {
                val2.insert(u, id.clone());
            }
        }
        for (s, t) in composable_pairs(&cx, level) {
            colax.insert((s, t), id.clone());
        }
        ColaxDiagram {
            name: "constant-unit".into(),
            cx,
            base,
            level,
            val1,
            val2,
            colax,
        }
    }

    fn check_shape(&self) -> Result<()> {
        for z in self.in_level_cells() {
            if self.cx.is_unit(z) {
                continue;
            }
            if !self.val1.contains_key(&z) {
                return Err(Error::Domain(format!("missing value at 1-cell {}", self.cx.label1(z))));
            }
        }
        for u in self.cx.two_cells() {
            if self.cx.is_id2(u) {
                continue;
            }
            let (s, t) = (self.cx.src2(u), self.cx.dst2(u));
            if self.cx.deg1(s) > self.level || self.cx.deg1(t) > self.level {
                continue;
            }
            let f = self
                .val2
                .get(&u)
                .ok_or_else(|| Error::Domain(format!("missing action at 2-cell {}", self.cx.label2(u))))?;
            if f.src_ob() != self.val1_at(s) || f.dst_ob() != self.val1_at(t) {
                return Err(Error::Endpoint(format!(
                    "action at {} has wrong endpoints",
                    self.cx.label2(u)
                )));
            }
        }
        for (s, t) in composable_pairs(&self.cx, self.level) {
            let st = self.cx.tensor1(s, t).unwrap();
            let f = self.colax.get(&(s, t)).ok_or_else(|| {
                Error::Domain(format!(
                    "missing colaxity map at ({}, {})",
                    self.cx.label1(s),
                    self.cx.label1(t)
                ))
            })?;
            if f.src_ob() != self.val1_at(st)
                || f.dst_ob() != self.val1_at(s).tensor(&self.val1_at(t))
            {
                return Err(Error::Endpoint(format!(
                    "colaxity at ({}, {}) has wrong endpoints",
                    self.cx.label1(s),
                    self.cx.label1(t)
                )));
            }
        }
        Ok(())
    }

    /// All 1-cells of degree within the level, units included.
    pub fn in_level_cells(&self) -> Vec<OneCell> {
        self.cx.one_cells().into_iter().filter(|&z| self.cx.deg1(z) <= self.level).collect()
    }

    pub fn val1_at(&self, z: OneCell) -> BaseObject {
        if self.cx.is_unit(z) {
            return self.base.unit();
        }
        *self.val1.get(&z).unwrap_or_else(|| {
            panic!("value of {} outside level {}", self.cx.label1(z), self.level)
        })
    }

    pub fn val2_at(&self, u: TwoCell) -> BaseArrow {
        if self.cx.is_id2(u) {
            return BaseArrow::identity(self.base, &self.val1_at(self.cx.src2(u)));
        }
        self.val2.get(&u).cloned().unwrap_or_else(|| {
            panic!("action of {} outside level {}", self.cx.label2(u), self.level)
        })
    }

    /// Colaxity map F(s (x) t) -> F(s) (x) F(t); identity when either cell
    /// is a unit (normality under the strict encoding).
    pub fn colax_at(&self, s: OneCell, t: OneCell) -> BaseArrow {
        if self.cx.is_unit(s) || self.cx.is_unit(t) {
            let st = self.cx.tensor1(s, t).expect("composable");
            return BaseArrow::identity(self.base, &self.val1_at(st));
        }
        self.colax.get(&(s, t)).cloned().unwrap_or_else(|| {
            panic!(
                "colaxity of ({}, {}) outside level {}",
                self.cx.label1(s),
                self.cx.label1(t),
                self.level
            )
        })
    }

    /// Iterated colaxity F((x) parts) -> (x)_i F(parts_i), split left to
    /// right.
    pub fn iterated_colax(&self, parts: &[OneCell]) -> BaseArrow {
        assert!(!parts.is_empty());
        if parts.len() == 1 {
            return BaseArrow::identity(self.base, &self.val1_at(parts[0]));
        }
        let head = parts[0];
        let tail_prod = self.cx.tensor1_many(&parts[1..]).expect("tail composable");
        let first = self.colax_at(head, tail_prod);
        let rest = self.iterated_colax(&parts[1..]);
        let id_head = BaseArrow::identity(self.base, &self.val1_at(head));
        compose(&first, &tensor(&id_head, &rest)).expect("iterated colax composes")
    }

    /// Restriction to a lower level on the same groupement.
    pub fn truncate(&self, k: u32) -> Result<ColaxDiagram> {
        if k > self.level {
            return Err(Error::Truncation(format!(
                "cannot truncate level-{} diagram at {k}",
                self.level
            )));
        }
        let cx = &self.cx;
        let val1 = self
            .val1
            .iter()
            .filter(|(&z, _)| cx.deg1(z) <= k)
            .map(|(&z, &v)| (z, v))
            .collect();
        let val2 = self
            .val2
            .iter()
            .filter(|(&u, _)| cx.deg1(cx.src2(u)) <= k && cx.deg1(cx.dst2(u)) <= k)
            .map(|(&u, v)| (u, v.clone()))
            .collect();
        let colax = self
            .colax
            .iter()
            .filter(|(&(s, t), _)| cx.deg1(s) + cx.deg1(t) <= k)
            .map(|(&p, v)| (p, v.clone()))
            .collect();
        Ok(ColaxDiagram {
            name: self.name.clone(),
            cx: self.cx.clone(),
            base: self.base,
            level: k,
            val1,
            val2,
            colax,
        })
    }

    /// Raw table access for serialization and exact comparisons.
    pub fn tables(
        &self,
    ) -> (&BTreeMap<OneCell, BaseObject>, &BTreeMap<TwoCell, BaseArrow>, &BTreeMap<(OneCell, OneCell), BaseArrow>)
    {
        (&self.val1, &self.val2, &self.colax)
    }

    pub fn same_tables(&self, other: &ColaxDiagram) -> bool {
        self.level == other.level
            && self.val1 == other.val1
            && self.val2 == other.val2
            && self.colax == other.colax
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Composable non-unit 1-cell pairs with total degree within the level.
pub fn composable_pairs(cx: &TwoGroupement, level: u32) -> Vec<(OneCell, OneCell)> {
    let mut out = Vec::new();
    for s in cx.one_cells() {
        if cx.is_unit(s) {
            continue;
        }
        for t in cx.one_cells() {
            if cx.is_unit(t) || s.b != t.a {
                continue;
            }
            if cx.deg1(s) + cx.deg1(t) <= level && cx.tensor1(s, t).is_some() {
                out.push((s, t));
            }
        }
    }
    out
}

/// Checks the four diagram laws exhaustively within the level: per-hom
/// functoriality, normality of stored tables, naturality of colaxity
/// against horizontal composition, and coassociativity.
pub fn validate_colax(f: &ColaxDiagram) -> Report {
    let mut report = Report::new(format!("colax:{}", f.name));
    let cx = &f.cx;
    if let Err(e) = f.check_shape() {
        report.fail("shape", &f.name, e.to_string());
        return report;
    }
    // normality: unit 1-cells must not carry stored values
    for (&z, &v) in f.tables().0 {
        if cx.is_unit(z) && v != f.base.unit() {
            report.fail("normality", cx.label1(z), "unit 1-cell valued off the monoidal unit");
        }
    }
    // per-hom functoriality
    let twos: Vec<TwoCell> = cx
        .two_cells()
        .into_iter()
        .filter(|&u| cx.deg1(cx.src2(u)) <= f.level && cx.deg1(cx.dst2(u)) <= f.level)
        .collect();
    for &u in &twos {
        for &v in &twos {
            if (u.a, u.b) != (v.a, v.b) {
                continue;
            }
            if let Some(w) = cx.then2(u, v) {
                let lhs = compose(&f.val2_at(u), &f.val2_at(v)).unwrap();
                if lhs != f.val2_at(w) {
                    report.fail(
                        "functoriality",
                        format!("{};{}", cx.label2(u), cx.label2(v)),
                        "action does not respect vertical composition",
                    );
                }
            }
        }
    }
    // naturality: (F alpha (x) F beta) o colax(s,t) = colax(s',t') o F(alpha (x) beta)
    for &u in &twos {
        for &v in &twos {
            if u.b != v.a {
                continue;
            }
            let Some(w) = cx.tensor2(u, v) else { continue };
            let (s, t) = (cx.src2(u), cx.src2(v));
            let (s2, t2) = (cx.dst2(u), cx.dst2(v));
            if cx.deg1(s) + cx.deg1(t) > f.level || cx.deg1(s2) + cx.deg1(t2) > f.level {
                continue;
            }
            let lhs = compose(&f.colax_at(s, t), &tensor(&f.val2_at(u), &f.val2_at(v))).unwrap();
            let rhs = compose(&f.val2_at(w), &f.colax_at(s2, t2)).unwrap();
            if lhs != rhs {
                report.fail(
                    "naturality",
                    format!("{};{}", cx.label2(u), cx.label2(v)),
                    "colaxity square does not commute",
                );
            }
        }
    }
    // coassociativity on non-unit triples
    for (s, t) in composable_pairs(cx, f.level) {
        for u in cx.one_cells() {
            if cx.is_unit(u) || t.b != u.a {
                continue;
            }
            if cx.deg1(s) + cx.deg1(t) + cx.deg1(u) > f.level {
                continue;
            }
            let st = cx.tensor1(s, t).unwrap();
            let Some(tu) = cx.tensor1(t, u) else { continue };
            let id_s = BaseArrow::identity(f.base, &f.val1_at(s));
            let id_u = BaseArrow::identity(f.base, &f.val1_at(u));
            let lhs = compose(&f.colax_at(st, u), &tensor(&f.colax_at(s, t), &id_u)).unwrap();
            let rhs = compose(&f.colax_at(s, tu), &tensor(&id_s, &f.colax_at(t, u))).unwrap();
            if lhs != rhs {
                report.fail(
                    "coassociativity",
                    format!("{};{};{}", cx.label1(s), cx.label1(t), cx.label1(u)),
                    "two splitting orders disagree",
                );
            }
        }
    }
    report.pass_if_clean("colax-laws", "all");
    report
}

/// Degree-(level+1) candidate data for an inductive extension.
#[derive(Debug, Clone, Default)]
pub struct StageData {
    pub val1: BTreeMap<OneCell, BaseObject>,
    pub val2: BTreeMap<TwoCell, BaseArrow>,
    pub colax: BTreeMap<(OneCell, OneCell), BaseArrow>,
}

/// Merges candidate next-degree data onto a truncation and re-runs the
/// validator; the report localizes any coherence violation the candidate
/// introduces.
pub fn extend_check(f: &ColaxDiagram, stage: &StageData) -> Report {
    let mut report = Report::new(format!("extend:{}", f.name));
    if f.level >= f.cx.bound {
        report.fail("level", &f.name, "diagram already at the groupement bound");
        return report;
    }
    match merge_stage(f, stage) {
        Err(e) => {
            report.fail("shape", &f.name, e.to_string());
            report
        }
        Ok(bigger) => {
            report.merge(validate_colax(&bigger));
            report
        }
    }
}

pub fn merge_stage(f: &ColaxDiagram, stage: &StageData) -> Result<ColaxDiagram> {
    let mut val1 = f.val1.clone();
    let mut val2 = f.val2.clone();
    let mut colax = f.colax.clone();
    val1.extend(stage.val1.iter().map(|(&z, &v)| (z, v)));
    val2.extend(stage.val2.iter().map(|(&u, v)| (u, v.clone())));
    colax.extend(stage.colax.iter().map(|(&p, v)| (p, v.clone())));
    ColaxDiagram::new(
        f.name.clone(),
        f.cx.clone(),
        f.base,
        f.level + 1,
        val1,
        val2,
        colax,
    )
}

/// An icon: identity on objects, one component per 1-cell, compatible
/// with actions and colaxity maps. Unit components are identities and not
/// stored.
#[derive(Debug, Clone)]
pub struct Icon {
    pub name: String,
    pub src: Arc<ColaxDiagram>,
    pub dst: Arc<ColaxDiagram>,
    comp: BTreeMap<OneCell, BaseArrow>,
}

impl Icon {
    pub fn new(
        name: impl Into<String>,
        src: Arc<ColaxDiagram>,
        dst: Arc<ColaxDiagram>,
        comp: BTreeMap<OneCell, BaseArrow>,
    ) -> Result<Icon> {
        if !Arc::ptr_eq(&src.cx, &dst.cx) && src.cx.name != dst.cx.name {
            return Err(Error::Domain("icon endpoints on different groupements".into()));
        }
        if src.base != dst.base {
            return Err(Error::BaseMismatch("icon endpoints in different bases".into()));
        }
        if src.level != dst.level {
            return Err(Error::Truncation("icon endpoints at different levels".into()));
        }
        let icon = Icon { name: name.into(), src, dst, comp };
        icon.check_shape()?;
        Ok(icon)
    }

    pub fn identity(f: &Arc<ColaxDiagram>) -> Icon {
        let mut comp = BTreeMap::new();
        for z in f.in_level_cells() {
            if !f.cx.is_unit(z) {
                comp.insert(z, BaseArrow::identity(f.base, &f.val1_at(z)));
            }
        }
        Icon { name: format!("id:{}", f.name), src: f.clone(), dst: f.clone(), comp }
    }

    fn check_shape(&self) -> Result<()> {
        for z in self.src.in_level_cells() {
            if self.src.cx.is_unit(z) {
                continue;
            }
            let c = self.comp.get(&z).ok_or_else(|| {
                Error::Domain(format!("icon missing component at {}", self.src.cx.label1(z)))
            })?;
            if c.src_ob() != self.src.val1_at(z) || c.dst_ob() != self.dst.val1_at(z) {
                return Err(Error::Endpoint(format!(
                    "icon component at {} has wrong endpoints",
                    self.src.cx.label1(z)
                )));
            }
        }
        Ok(())
    }

    pub fn at(&self, z: OneCell) -> BaseArrow {
        if self.src.cx.is_unit(z) {
            return BaseArrow::identity(self.src.base, &self.src.base.unit());
        }
        self.comp[&z].clone()
    }

    pub fn components(&self) -> &BTreeMap<OneCell, BaseArrow> {
        &self.comp
    }

    pub fn truncate(&self, k: u32) -> Result<Icon> {
        let src = Arc::new(self.src.truncate(k)?);
        let dst = Arc::new(self.dst.truncate(k)?);
        let comp = self
            .comp
            .iter()
            .filter(|(&z, _)| self.src.cx.deg1(z) <= k)
            .map(|(&z, v)| (z, v.clone()))
            .collect();
        Icon::new(self.name.clone(), src, dst, comp)
    }
}

pub fn compose_icons(first: &Icon, second: &Icon) -> Result<Icon> {
    if !first.dst.same_tables(&second.src) {
        return Err(Error::Endpoint("icons do not share the middle diagram".into()));
    }
    let mut comp = BTreeMap::new();
    for (&z, f) in first.components() {
        comp.insert(z, compose(f, &second.at(z))?);
    }
    Icon::new(
        format!("{};{}", first.name, second.name),
        first.src.clone(),
        second.dst.clone(),
        comp,
    )
}

/// Checks icon naturality against every 2-cell and compatibility with
/// every colaxity pair inside the level.
pub fn validate_icon(icon: &Icon) -> Report {
    let mut report = Report::new(format!("icon:{}", icon.name));
    if let Err(e) = icon.check_shape() {
        report.fail("shape", &icon.name, e.to_string());
        return report;
    }
    let cx = &icon.src.cx;
    let level = icon.src.level;
    for u in cx.two_cells() {
        let (s, t) = (cx.src2(u), cx.dst2(u));
        if cx.deg1(s) > level || cx.deg1(t) > level {
            continue;
        }
        let lhs = compose(&icon.src.val2_at(u), &icon.at(t)).unwrap();
        let rhs = compose(&icon.at(s), &icon.dst.val2_at(u)).unwrap();
        if lhs != rhs {
            report.fail("naturality", cx.label2(u), "icon square does not commute");
        }
    }
    for (s, t) in composable_pairs(cx, level) {
        let st = cx.tensor1(s, t).unwrap();
        let lhs = compose(&icon.src.colax_at(s, t), &tensor(&icon.at(s), &icon.at(t))).unwrap();
        let rhs = compose(&icon.at(st), &icon.dst.colax_at(s, t)).unwrap();
        if lhs != rhs {
            report.fail(
                "colax-compat",
                format!("{};{}", cx.label1(s), cx.label1(t)),
                "icon does not commute with colaxity",
            );
        }
    }
    report.pass_if_clean("icon-laws", "all");
    report
}

/// Value of a decomposition under the diagram: (x)_i F(parts_i).
pub fn tensor_value(f: &ColaxDiagram, parts: &[OneCell]) -> BaseObject {
    let obs: Vec<BaseObject> = parts.iter().map(|&p| f.val1_at(p)).collect();
    tensor_objects(&obs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupement::build_delta_plus;

    #[test]
    fn constant_unit_validates() {
        let cx = Arc::new(build_delta_plus(3));
        let f = ColaxDiagram::constant_unit(cx, Base::FinSet, 3);
        let r = validate_colax(&f);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn truncate_full_is_identity() {
        let cx = Arc::new(build_delta_plus(2));
        let f = ColaxDiagram::constant_unit(cx, Base::FinVect { p: 2 }, 2);
        let t = f.truncate(2).unwrap();
        assert!(f.same_tables(&t));
        let t1 = f.truncate(1).unwrap().truncate(0).unwrap();
        let t0 = f.truncate(0).unwrap();
        assert!(t1.same_tables(&t0));
    }

    #[test]
    fn identity_icon_validates() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinSet, 2));
        let icon = Icon::identity(&f);
        assert!(validate_icon(&icon).passed());
    }
}
