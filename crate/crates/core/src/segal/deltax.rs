//! The category of labelled nonempty ordinals over a finite label set,
//! fibred over the plain simplex category, with unital presheaves on it
//! and their classical Reedy structure.

use crate::base::limits::{
    colimit_mediator, finite_colimit, finite_limit, limit_mediator, pullback, pushout, Cocone, Cone,
    FinDiagram,
};
use crate::base::model::ModelData;
use crate::base::{compose, Base, BaseArrow, BaseObject};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::report::Report;
use crate::simplex::{compose_tables, is_injective_table, is_surjective_table, monotone_maps};
use std::collections::HashMap;
use std::sync::Arc;

/// A morphism over a monotone map of pointed ordinals; the source labels
/// are pulled back from the target: src[i] = dst[map[i]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DxMor {
    pub src: usize,
    pub dst: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct DeltaX {
    pub labels: Vec<String>,
    pub n_max: usize,
    /// label-index sequences of length 1..=n_max+1, sorted by (len, lex)
    pub objects: Vec<Vec<usize>>,
    pub mors: Vec<DxMor>,
    obj_index: HashMap<Vec<usize>, usize>,
    mor_index: HashMap<(usize, usize, Vec<usize>), usize>,
    identity: Vec<usize>,
}

pub fn build_delta_x(labels: &[&str], n_max: usize) -> DeltaX {
    let mut names: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    names.sort();
    let nx = names.len();
    let mut objects = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..nx).map(|x| vec![x]).collect();
    objects.extend(frontier.iter().cloned());
    for _ in 0..n_max {
        let mut next = Vec::new();
        for c in &frontier {
            for y in 0..nx {
                let mut c2 = c.clone();
                c2.push(y);
                next.push(c2);
            }
        }
        objects.extend(next.iter().cloned());
        frontier = next;
    }
    objects.sort_by_key(|c| (c.len(), c.clone()));
    let obj_index: HashMap<Vec<usize>, usize> =
        objects.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let mut mors = Vec::new();
    let mut mor_index = HashMap::new();
    let mut identity = vec![0; objects.len()];
    // enumerate by (target, map); the source is determined
    for (di, dseq) in objects.iter().enumerate() {
        let m = dseq.len() - 1;
        for n in 0..=n_max {
            for map in monotone_maps(n + 1, m + 1) {
                let sseq: Vec<usize> = map.iter().map(|&j| dseq[j]).collect();
                let si = obj_index[&sseq];
                let id = mors.len();
                if si == di && map.iter().enumerate().all(|(i, &v)| i == v) {
                    identity[di] = id;
                }
                mor_index.insert((si, di, map.clone()), id);
                mors.push(DxMor { src: si, dst: di, map });
            }
        }
    }
    DeltaX { labels: names, n_max, objects, mors, obj_index, mor_index, identity }
}

impl DeltaX {
    pub fn object_of(&self, seq: &[usize]) -> Option<usize> {
        self.obj_index.get(seq).copied()
    }

    pub fn object_by_labels(&self, seq: &[&str]) -> Option<usize> {
        let idx: Option<Vec<usize>> =
            seq.iter().map(|s| self.labels.iter().position(|l| l == s)).collect();
        self.object_of(&idx?)
    }

    pub fn mor_of(&self, src: usize, dst: usize, map: &[usize]) -> Option<usize> {
        self.mor_index.get(&(src, dst, map.to_vec())).copied()
    }

    pub fn identity_of(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.mors[f].src] == f && self.mors[f].src == self.mors[f].dst
    }

    /// g after f.
    pub fn then(&self, f: usize, g: usize) -> Option<usize> {
        let mf = &self.mors[f];
        let mg = &self.mors[g];
        if mf.dst != mg.src {
            return None;
        }
        self.mor_of(mf.src, mg.dst, &compose_tables(&mf.map, &mg.map))
    }

    pub fn level(&self, o: usize) -> usize {
        self.objects[o].len() - 1
    }

    pub fn is_omega(&self, f: usize) -> bool {
        let m = &self.mors[f];
        let tgt_top = self.objects[m.dst].len() - 1;
        m.map[0] == 0 && *m.map.last().unwrap() == tgt_top
    }

    pub fn is_injective(&self, f: usize) -> bool {
        is_injective_table(&self.mors[f].map)
    }

    pub fn is_surjective(&self, f: usize) -> bool {
        is_surjective_table(&self.mors[f].map, self.objects[self.mors[f].dst].len())
    }

    pub fn seq_label(&self, o: usize) -> String {
        let parts: Vec<&str> = self.objects[o].iter().map(|&i| self.labels[i].as_str()).collect();
        format!("({})", parts.join(","))
    }

    /// The fibration property: for every map of pointed ordinals and every
    /// object over the codomain, exactly one morphism over the map with
    /// that codomain.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("delta_x");
        for (di, dseq) in self.objects.iter().enumerate() {
            let m = dseq.len() - 1;
            for n in 0..=self.n_max {
                for map in monotone_maps(n + 1, m + 1) {
                    let count = self
                        .mors
                        .iter()
                        .filter(|mo| mo.dst == di && mo.map == map)
                        .count();
                    if count != 1 {
                        report.fail(
                            "unique-lift",
                            format!("{} over {:?}", self.seq_label(di), map),
                            format!("{count} lifts"),
                        );
                    }
                }
            }
        }
        // composition closes
        for f in 0..self.mors.len() {
            for g in 0..self.mors.len() {
                if self.mors[f].dst == self.mors[g].src && self.then(f, g).is_none() {
                    report.fail("compose", format!("{f};{g}"), "composite missing");
                }
            }
        }
        report.pass_if_clean("delta-x", "all");
        report
    }
}

/// A contravariant diagram on the labelled simplex category with terminal
/// values on singletons.
#[derive(Debug, Clone)]
pub struct UnitalPresheaf {
    pub name: String,
    pub dx: Arc<DeltaX>,
    pub base: Base,
    pub val: Vec<BaseObject>,
    /// per morphism f: a -> b, the action val[b] -> val[a]
    pub act: Vec<BaseArrow>,
}

impl UnitalPresheaf {
    pub fn validate(&self) -> Report {
        let mut report = Report::new(format!("presheaf:{}", self.name));
        let dx = &self.dx;
        for (o, seq) in dx.objects.iter().enumerate() {
            if seq.len() == 1 && self.val[o] != self.base.terminal() {
                report.fail("unital", dx.seq_label(o), "singleton value is not terminal");
            }
        }
        for (f, m) in dx.mors.iter().enumerate() {
            if self.act[f].src_ob() != self.val[m.dst] || self.act[f].dst_ob() != self.val[m.src] {
                report.fail("endpoints", format!("mor {f}"), "action endpoints wrong");
            }
            if dx.is_identity(f) && !self.act[f].is_identity() {
                report.fail("identity", format!("mor {f}"), "identity acts nontrivially");
            }
        }
        for f in 0..dx.mors.len() {
            for g in 0..dx.mors.len() {
                if let Some(gf) = dx.then(f, g) {
                    let lhs = compose(&self.act[g], &self.act[f]).unwrap();
                    if lhs != self.act[gf] {
                        report.fail(
                            "contravariant",
                            format!("{f};{g}"),
                            "action does not respect composition",
                        );
                    }
                }
            }
        }
        report.pass_if_clean("presheaf", &self.name);
        report
    }
}

/// A natural transformation of presheaves (componentwise on objects).
#[derive(Debug, Clone)]
pub struct PresheafMap {
    pub name: String,
    pub src: Arc<UnitalPresheaf>,
    pub dst: Arc<UnitalPresheaf>,
    pub comp: Vec<BaseArrow>,
}

impl PresheafMap {
    pub fn validate(&self) -> Report {
        let mut report = Report::new(format!("presheaf-map:{}", self.name));
        let dx = &self.src.dx;
        for (f, m) in dx.mors.iter().enumerate() {
            let lhs = compose(&self.src.act[f], &self.comp[m.src]).unwrap();
            let rhs = compose(&self.comp[m.dst], &self.dst.act[f]).unwrap();
            if lhs != rhs {
                report.fail("naturality", format!("mor {f}"), "square does not commute");
            }
        }
        report.pass_if_clean("presheaf-map", &self.name);
        report
    }
}

/// Classical Reedy data at one object of the labelled simplex category:
/// latching over surjections out, matching over injections in.
pub struct PresheafLatching {
    pub sigmas: Vec<usize>,
    pub ob: BaseObject,
    pub legs: Vec<BaseArrow>,
    pub to_value: BaseArrow,
    cat: FinCat,
    hs: Vec<usize>,
}

pub struct PresheafMatching {
    pub deltas: Vec<usize>,
    pub ob: BaseObject,
    pub legs: Vec<BaseArrow>,
    pub from_value: BaseArrow,
    cat: FinCat,
    ts: Vec<usize>,
}

pub fn presheaf_latching(psi: &UnitalPresheaf, c: usize) -> Result<PresheafLatching> {
    let dx = &psi.dx;
    let sigmas: Vec<usize> = (0..dx.mors.len())
        .filter(|&f| dx.mors[f].src == c && dx.is_surjective(f) && !dx.is_identity(f))
        .collect();
    let mut cat = FinCat::new(sigmas.iter().map(|&f| format!("s{f}")).collect());
    let mut hs: Vec<usize> = sigmas.iter().map(|&f| dx.identity_of(dx.mors[f].dst)).collect();
    for (o1, &s1) in sigmas.iter().enumerate() {
        for (o2, &s2) in sigmas.iter().enumerate() {
            // morphism (s1) -> (s2): h: dst(s2) -> dst(s1) with h o s2 = s1
            for h in 0..dx.mors.len() {
                if dx.is_identity(h) {
                    continue;
                }
                if dx.mors[h].src != dx.mors[s2].dst || dx.mors[h].dst != dx.mors[s1].dst {
                    continue;
                }
                if dx.then(s2, h) == Some(s1) {
                    cat.add_arrow(format!("h{h}"), o1, o2);
                    hs.push(h);
                }
            }
        }
    }
    let hs2 = hs.clone();
    let dx2 = dx.clone();
    cat.build_compose_with(move |catr, f, g| {
        // composite of (h1: (s_a)->(s_b)) and (h2: (s_b)->(s_c)) carries
        // h1 o h2 in the simplex category (note the reversal)
        let comp = dx2
            .then(hs2[g], hs2[f])
            .ok_or_else(|| Error::Internal("latching morphisms do not compose".into()))?;
        if dx2.is_identity(comp) {
            return Ok(catr.identity[catr.arrows[f].src]);
        }
        (0..catr.arrows.len())
            .find(|&i| {
                catr.arrows[i].src == catr.arrows[f].src
                    && catr.arrows[i].dst == catr.arrows[g].dst
                    && hs2[i] == comp
            })
            .ok_or_else(|| Error::Internal("presheaf latching index not closed".into()))
    })?;
    let ob: Vec<BaseObject> = sigmas.iter().map(|&f| psi.val[dx.mors[f].dst]).collect();
    let arr: Vec<BaseArrow> = hs.iter().map(|&h| psi.act[h].clone()).collect();
    let fd = FinDiagram::from_parts(psi.base, cat.clone(), ob, arr)?;
    let (lob, cocone) = finite_colimit(&fd);
    let test = Cocone {
        apex: psi.val[c],
        legs: sigmas.iter().map(|&f| psi.act[f].clone()).collect(),
    };
    let to_value = colimit_mediator(&fd, &cocone, &test)?;
    Ok(PresheafLatching { sigmas, ob: lob, legs: cocone.legs, to_value, cat, hs })
}

pub fn presheaf_matching(psi: &UnitalPresheaf, c: usize) -> Result<PresheafMatching> {
    let dx = &psi.dx;
    let deltas: Vec<usize> = (0..dx.mors.len())
        .filter(|&f| dx.mors[f].dst == c && dx.is_injective(f) && !dx.is_identity(f))
        .collect();
    let mut cat = FinCat::new(deltas.iter().map(|&f| format!("d{f}")).collect());
    let mut ts: Vec<usize> = deltas.iter().map(|&f| dx.identity_of(dx.mors[f].src)).collect();
    for (o1, &d1) in deltas.iter().enumerate() {
        for (o2, &d2) in deltas.iter().enumerate() {
            // morphism (d1) -> (d2): t: src(d2) -> src(d1) with d1 o t = d2
            for t in 0..dx.mors.len() {
                if dx.is_identity(t) {
                    continue;
                }
                if dx.mors[t].src != dx.mors[d2].src || dx.mors[t].dst != dx.mors[d1].src {
                    continue;
                }
                if dx.then(t, d1) == Some(d2) {
                    cat.add_arrow(format!("t{t}"), o1, o2);
                    ts.push(t);
                }
            }
        }
    }
    let ts2 = ts.clone();
    let dx2 = dx.clone();
    cat.build_compose_with(move |catr, f, g| {
        let comp = dx2
            .then(ts2[g], ts2[f])
            .ok_or_else(|| Error::Internal("matching morphisms do not compose".into()))?;
        if dx2.is_identity(comp) {
            return Ok(catr.identity[catr.arrows[f].src]);
        }
        (0..catr.arrows.len())
            .find(|&i| {
                catr.arrows[i].src == catr.arrows[f].src
                    && catr.arrows[i].dst == catr.arrows[g].dst
                    && ts2[i] == comp
            })
            .ok_or_else(|| Error::Internal("presheaf matching index not closed".into()))
    })?;
    let ob: Vec<BaseObject> = deltas.iter().map(|&f| psi.val[dx.mors[f].src]).collect();
    let arr: Vec<BaseArrow> = ts.iter().map(|&t| psi.act[t].clone()).collect();
    let fd = FinDiagram::from_parts(psi.base, cat.clone(), ob, arr)?;
    let (mob, cone) = finite_limit(&fd);
    let test = Cone {
        apex: psi.val[c],
        legs: deltas.iter().map(|&f| psi.act[f].clone()).collect(),
    };
    let from_value = limit_mediator(&fd, &cone, &test)?;
    Ok(PresheafMatching { deltas, ob: mob, legs: cone.legs, from_value, cat, ts })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresheafClassification {
    pub is_we: bool,
    pub is_cof: bool,
    pub is_fib: bool,
}

/// Classical Reedy classification of a presheaf map: degree is the
/// sequence length, the direct part of the opposite category is carried by
/// surjections, the inverse part by injections.
pub fn presheaf_classify(nat: &PresheafMap, md: &ModelData) -> Result<PresheafClassification> {
    let dx = &nat.src.dx;
    let mut c = PresheafClassification { is_we: true, is_cof: true, is_fib: true };
    for comp in &nat.comp {
        c.is_we &= md.is_we(comp);
    }
    for z in 0..dx.objects.len() {
        let lr = presheaf_relative_latching(nat, z)?;
        let mr = presheaf_relative_matching(nat, z)?;
        c.is_cof &= md.is_cof(&lr);
        c.is_fib &= md.is_fib(&mr);
    }
    Ok(c)
}

pub fn presheaf_relative_latching(nat: &PresheafMap, z: usize) -> Result<BaseArrow> {
    let f = &nat.src;
    let g = &nat.dst;
    let lf = presheaf_latching(f, z)?;
    let lg = presheaf_latching(g, z)?;
    let fd = FinDiagram::from_parts(
        f.base,
        lf.cat.clone(),
        lf.sigmas.iter().map(|&s| f.val[f.dx.mors[s].dst]).collect(),
        lf.hs.iter().map(|&h| f.act[h].clone()).collect(),
    )?;
    let lsig = colimit_mediator(
        &fd,
        &Cocone { apex: lf.ob, legs: lf.legs.clone() },
        &Cocone {
            apex: lg.ob,
            legs: lf
                .sigmas
                .iter()
                .enumerate()
                .map(|(o, &s)| compose(&nat.comp[f.dx.mors[s].dst], &lg.legs[o]))
                .collect::<Result<Vec<_>>>()?,
        },
    )?;
    let (_, cocone) = pushout(f.base, &lf.to_value, &lsig)?;
    let span = FinDiagram::new(
        f.base,
        FinCat::span(),
        vec![lf.ob, f.val[z], lg.ob],
        vec![lf.to_value.clone(), lsig],
    )?;
    colimit_mediator(
        &span,
        &cocone,
        &Cocone {
            apex: g.val[z],
            legs: vec![compose(&lf.to_value, &nat.comp[z])?, nat.comp[z].clone(), lg.to_value],
        },
    )
}

pub fn presheaf_relative_matching(nat: &PresheafMap, z: usize) -> Result<BaseArrow> {
    let f = &nat.src;
    let g = &nat.dst;
    let mf = presheaf_matching(f, z)?;
    let mg = presheaf_matching(g, z)?;
    let gd = FinDiagram::from_parts(
        g.base,
        mg.cat.clone(),
        mg.deltas.iter().map(|&d| g.val[g.dx.mors[d].src]).collect(),
        mg.ts.iter().map(|&t| g.act[t].clone()).collect(),
    )?;
    let msig = limit_mediator(
        &gd,
        &Cone { apex: mg.ob, legs: mg.legs.clone() },
        &Cone {
            apex: mf.ob,
            legs: mg
                .deltas
                .iter()
                .enumerate()
                .map(|(o, &d)| compose(&mf.legs[o], &nat.comp[g.dx.mors[d].src]))
                .collect::<Result<Vec<_>>>()?,
        },
    )?;
    let (_, cone) = pullback(f.base, &mg.from_value, &msig)?;
    let cospan = FinDiagram::new(
        f.base,
        FinCat::cospan(),
        vec![g.val[z], mf.ob, mg.ob],
        vec![mg.from_value.clone(), msig],
    )?;
    limit_mediator(
        &cospan,
        &cone,
        &Cone {
            apex: f.val[z],
            legs: vec![
                nat.comp[z].clone(),
                mf.from_value.clone(),
                compose(&nat.comp[z], &mg.from_value)?,
            ],
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_x_counts() {
        let dx = build_delta_x(&["a", "b"], 1);
        // (a),(b) and the four pairs
        assert_eq!(dx.objects.len(), 6);
        assert!(dx.validate().passed());
    }

    #[test]
    fn singleton_label_set_is_plain_simplex() {
        let dx = build_delta_x(&["x"], 2);
        assert_eq!(dx.objects.len(), 3);
        // hom counts match the plain simplex category
        for n in 0..=2usize {
            for m in 0..=2usize {
                let count = dx
                    .mors
                    .iter()
                    .filter(|mo| dx.level(mo.src) == n && dx.level(mo.dst) == m)
                    .count();
                assert_eq!(count, monotone_maps(n + 1, m + 1).len());
            }
        }
    }

    #[test]
    fn unique_lift_of_identity() {
        let dx = build_delta_x(&["a", "b"], 1);
        let ab = dx.object_by_labels(&["a", "b"]).unwrap();
        let lifts: Vec<&DxMor> =
            dx.mors.iter().filter(|m| m.dst == ab && m.map == vec![0, 1]).collect();
        assert_eq!(lifts.len(), 1);
        assert_eq!(lifts[0].src, ab);
    }
}
