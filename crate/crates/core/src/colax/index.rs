//! Latching and matching index categories at a 1-cell, with the induced
//! diagrams into the base.
//!
//! The latching index at z is the classical latching category of the hom
//! Reedy category: non-identity direct 2-cells into z, with direct maps
//! under z. The matching index collects decompositions: objects are pairs
//! of a tuple of non-unit 1-cells and an inverse 2-cell from z to the
//! tuple's composite (the single object with a one-part tuple and the
//! identity is excluded). A morphism groups the finer tuple into
//! consecutive blocks and carries componentwise inverse cells, subject to
//! the triangle over z.

use super::{tensor_value, ColaxDiagram};
use crate::base::limits::{
    colimit_mediator, finite_colimit, finite_limit, Cocone, Cone, FinDiagram,
};
use crate::base::{compose, tensor_many, BaseArrow, BaseObject};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::groupement::{OneCell, TwoCell, TwoGroupement};

#[derive(Debug, Clone)]
pub struct LatchingIndex {
    pub z: OneCell,
    /// non-identity direct 2-cells into z, in arrow order
    pub alphas: Vec<TwoCell>,
    pub cat: FinCat,
    /// per index arrow: the direct 2-cell under z realizing it
    pub betas: Vec<TwoCell>,
}

impl LatchingIndex {
    pub fn source_of(&self, cx: &TwoGroupement, o: usize) -> OneCell {
        cx.src2(self.alphas[o])
    }
}

pub fn latching_index(cx: &TwoGroupement, z: OneCell) -> Result<LatchingIndex> {
    if cx.is_unit(z) {
        return Err(Error::Domain(format!("latching index at unit 1-cell {}", cx.label1(z))));
    }
    let hom = cx.hom(z.a, z.b);
    let mut alphas = Vec::new();
    for i in 0..hom.cat.arrows.len() {
        if hom.cat.arrows[i].dst == z.i && hom.is_direct(i) && !hom.cat.is_identity(i) {
            alphas.push(TwoCell { a: z.a, b: z.b, i });
        }
    }
    let mut cat = FinCat::new(alphas.iter().map(|&a| cx.label2(a).to_string()).collect());
    let mut betas: Vec<TwoCell> = alphas.iter().map(|&a| cx.id2(cx.src2(a))).collect();
    for (o1, &a1) in alphas.iter().enumerate() {
        for (o2, &a2) in alphas.iter().enumerate() {
            for i in 0..hom.cat.arrows.len() {
                let b = TwoCell { a: z.a, b: z.b, i };
                if !cx.is_direct2(b) || cx.is_id2(b) {
                    continue;
                }
                if cx.src2(b) != cx.src2(a1) || cx.dst2(b) != cx.src2(a2) {
                    continue;
                }
                if cx.then2(b, a2) == Some(a1) {
                    cat.add_arrow(cx.label2(b).to_string(), o1, o2);
                    betas.push(b);
                }
            }
        }
    }
    let betas_for_compose = betas.clone();
    let alphas_for_compose = alphas.clone();
    let cxc: &TwoGroupement = cx;
    cat.build_compose_with(move |c, f, g| {
        let comp = cxc
            .then2(betas_for_compose[f], betas_for_compose[g])
            .ok_or_else(|| Error::Internal("latching morphisms do not compose".into()))?;
        if cxc.is_id2(comp) {
            return Ok(c.identity[c.arrows[f].src]);
        }
        let src = c.arrows[f].src;
        let dst = c.arrows[g].dst;
        (0..c.arrows.len())
            .find(|&i| {
                c.arrows[i].src == src && c.arrows[i].dst == dst && betas_for_compose[i] == comp
            })
            .ok_or_else(|| {
                Error::Internal(format!(
                    "latching index not closed under composition at {}",
                    cxc.label2(alphas_for_compose[src])
                ))
            })
    })?;
    Ok(LatchingIndex { z, alphas, cat, betas })
}

/// One decomposition object of the matching index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct MatchObj {
    pub parts: Vec<OneCell>,
    pub beta: TwoCell,
}

/// One stored morphism: consecutive block sizes grouping the target's
/// parts, plus componentwise inverse 2-cells into the block products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchMor {
    pub blocks: Vec<usize>,
    pub comps: Vec<TwoCell>,
}

#[derive(Debug, Clone)]
pub struct MatchingIndex {
    pub z: OneCell,
    pub objs: Vec<MatchObj>,
    pub cat: FinCat,
    /// per index arrow, aligned with cat.arrows
    pub mors: Vec<MatchMor>,
}

impl MatchingIndex {
    fn identity_mor(&self, cx: &TwoGroupement, o: usize) -> MatchMor {
        MatchMor {
            blocks: vec![1; self.objs[o].parts.len()],
            comps: self.objs[o].parts.iter().map(|&p| cx.id2(p)).collect(),
        }
    }
}

fn obj_label(cx: &TwoGroupement, o: &MatchObj) -> String {
    let parts: Vec<&str> = o.parts.iter().map(|&p| cx.label1(p)).collect();
    format!("[{}]@{}", parts.join("|"), cx.label2(o.beta))
}

pub fn matching_index(cx: &TwoGroupement, z: OneCell) -> Result<MatchingIndex> {
    if cx.is_unit(z) {
        return Err(Error::Domain(format!("matching index at unit 1-cell {}", cx.label1(z))));
    }
    let hom = cx.hom(z.a, z.b);
    let mut objs = Vec::new();
    for i in 0..hom.cat.arrows.len() {
        let beta = TwoCell { a: z.a, b: z.b, i };
        if hom.cat.arrows[i].src != z.i || !cx.is_inverse2(beta) {
            continue;
        }
        let w = cx.dst2(beta);
        if cx.is_unit(w) {
            // inverse cells into a unit have no non-unit decomposition
            continue;
        }
        for parts in cx.decompositions(w) {
            if parts.len() == 1 && cx.is_id2(beta) {
                continue;
            }
            objs.push(MatchObj { parts, beta });
        }
    }
    objs.sort_by_key(|o| (o.parts.len(), o.beta, o.parts.clone()));
    objs.dedup();

    let mut cat = FinCat::new(objs.iter().map(|o| obj_label(cx, o)).collect());
    let mut mors: Vec<MatchMor> = objs
        .iter()
        .map(|o| MatchMor {
            blocks: vec![1; o.parts.len()],
            comps: o.parts.iter().map(|&p| cx.id2(p)).collect(),
        })
        .collect();
    for (o1, a) in objs.iter().enumerate() {
        for (o2, b) in objs.iter().enumerate() {
            let k = a.parts.len();
            let p = b.parts.len();
            if k > p {
                continue;
            }
            for blocks in compositions(p, k) {
                // block products of the finer tuple
                let mut products = Vec::with_capacity(k);
                let mut pos = 0;
                let mut ok = true;
                for &len in &blocks {
                    match cx.tensor1_many(&b.parts[pos..pos + len]) {
                        Some(w) => products.push(w),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                    pos += len;
                }
                if !ok {
                    continue;
                }
                // componentwise inverse cells x_i -> product_i
                let candidates: Vec<Vec<TwoCell>> = (0..k)
                    .map(|i| inverse_cells_between(cx, a.parts[i], products[i]))
                    .collect();
                for comps in cartesian(&candidates) {
                    let Some(tens) = cx.tensor2_many(&comps) else { continue };
                    if cx.then2(a.beta, tens) != Some(b.beta) {
                        continue;
                    }
                    // skip the identity (singleton blocks, identity comps, same object)
                    if o1 == o2
                        && blocks.iter().all(|&l| l == 1)
                        && comps.iter().all(|&u| cx.is_id2(u))
                    {
                        continue;
                    }
                    let label = format!(
                        "{}->{}:b{:?}u[{}]",
                        o1,
                        o2,
                        blocks,
                        comps.iter().map(|&u| cx.label2(u)).collect::<Vec<_>>().join("|")
                    );
                    cat.add_arrow(label, o1, o2);
                    mors.push(MatchMor { blocks: blocks.clone(), comps });
                }
            }
        }
    }
    let idx = MatchingIndex { z, objs, cat, mors };
    let mut cat = idx.cat.clone();
    let objs = idx.objs.clone();
    let mors = idx.mors.clone();
    let cxr: &TwoGroupement = cx;
    cat.build_compose_with(move |c, f, g| {
        let composed = compose_match_mors(cxr, &objs, c, &mors, f, g)?;
        let src = c.arrows[f].src;
        let dst = c.arrows[g].dst;
        if src == dst && is_identity_mor(cxr, &composed) {
            return Ok(c.identity[src]);
        }
        (0..c.arrows.len())
            .find(|&i| c.arrows[i].src == src && c.arrows[i].dst == dst && mors[i] == composed)
            .ok_or_else(|| {
                Error::Internal(format!(
                    "matching index not closed under composition: {} ; {}",
                    c.arrows[f].label, c.arrows[g].label
                ))
            })
    })?;
    Ok(MatchingIndex { z: idx.z, objs: idx.objs, cat, mors: idx.mors })
}

fn is_identity_mor(cx: &TwoGroupement, m: &MatchMor) -> bool {
    m.blocks.iter().all(|&l| l == 1) && m.comps.iter().all(|&u| cx.is_id2(u))
}

fn compose_match_mors(
    cx: &TwoGroupement,
    _objs: &[MatchObj],
    cat: &FinCat,
    mors: &[MatchMor],
    f: usize,
    g: usize,
) -> Result<MatchMor> {
    let m1 = &mors[f];
    let m2 = &mors[g];
    let _ = cat;
    let mut blocks = Vec::with_capacity(m1.blocks.len());
    let mut comps = Vec::with_capacity(m1.blocks.len());
    let mut pos = 0;
    for (i, &len1) in m1.blocks.iter().enumerate() {
        let seg = &m2.blocks[pos..pos + len1];
        blocks.push(seg.iter().sum());
        let useg = &m2.comps[pos..pos + len1];
        let tens = cx
            .tensor2_many(useg)
            .ok_or_else(|| Error::Internal("block components do not compose".into()))?;
        let comp = cx
            .then2(m1.comps[i], tens)
            .ok_or_else(|| Error::Internal("matching components do not compose".into()))?;
        comps.push(comp);
        pos += len1;
    }
    Ok(MatchMor { blocks, comps })
}

/// All compositions of p into k positive parts, lexicographic.
pub fn compositions(p: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if p == 0 { vec![vec![]] } else { vec![] };
    }
    if k == 1 {
        return vec![vec![p]];
    }
    let mut out = Vec::new();
    for first in 1..=(p + 1 - k) {
        for rest in compositions(p - first, k - 1) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn inverse_cells_between(cx: &TwoGroupement, from: OneCell, to: OneCell) -> Vec<TwoCell> {
    if (from.a, from.b) != (to.a, to.b) {
        return vec![];
    }
    let hom = cx.hom(from.a, from.b);
    (0..hom.cat.arrows.len())
        .filter(|&i| {
            hom.cat.arrows[i].src == from.i && hom.cat.arrows[i].dst == to.i && hom.is_inverse(i)
        })
        .map(|i| TwoCell { a: from.a, b: from.b, i })
        .collect()
}

fn cartesian(choices: &[Vec<TwoCell>]) -> Vec<Vec<TwoCell>> {
    let mut out = vec![vec![]];
    for c in choices {
        let mut next = Vec::new();
        for prefix in &out {
            for &x in c {
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// The diagram the latching index induces into the base.
pub fn latching_diagram(f: &ColaxDiagram, idx: &LatchingIndex) -> Result<FinDiagram> {
    let cx = &f.cx;
    let ob: Vec<BaseObject> = idx.alphas.iter().map(|&a| f.val1_at(cx.src2(a))).collect();
    let arr: Vec<BaseArrow> = idx.betas.iter().map(|&b| f.val2_at(b)).collect();
    FinDiagram::from_parts(f.base, idx.cat.clone(), ob, arr)
}

/// The diagram the matching index induces: objects to tensor values,
/// morphisms to blockwise (iterated colaxity after component action).
pub fn matching_diagram(f: &ColaxDiagram, idx: &MatchingIndex) -> Result<FinDiagram> {
    let cx = &f.cx;
    let ob: Vec<BaseObject> = idx.objs.iter().map(|o| tensor_value(f, &o.parts)).collect();
    let mut arr = Vec::with_capacity(idx.mors.len());
    for (i, m) in idx.mors.iter().enumerate() {
        let tgt = &idx.objs[idx.cat.arrows[i].dst];
        let mut pieces = Vec::with_capacity(m.blocks.len());
        let mut pos = 0;
        for (bi, &len) in m.blocks.iter().enumerate() {
            let block = &tgt.parts[pos..pos + len];
            let split = f.iterated_colax(block);
            let action = f.val2_at(m.comps[bi]);
            pieces.push(compose(&action, &split)?);
            pos += len;
        }
        arr.push(tensor_many(&pieces));
    }
    FinDiagram::from_parts(f.base, idx.cat.clone(), ob, arr)
}

#[derive(Debug, Clone)]
pub struct LatchingObject {
    pub index: LatchingIndex,
    pub ob: BaseObject,
    /// cocone legs F(src alpha) -> L
    pub legs: Vec<BaseArrow>,
    /// canonical arrow L -> F z when z is inside the diagram's level
    pub to_value: Option<BaseArrow>,
}

#[derive(Debug, Clone)]
pub struct MatchingObject {
    pub index: MatchingIndex,
    pub ob: BaseObject,
    /// cone legs M -> tensor value of each decomposition
    pub legs: Vec<BaseArrow>,
    /// canonical arrow F z -> M when z is inside the diagram's level
    pub from_value: Option<BaseArrow>,
}

/// Colimit of the latching diagram, with the canonical arrow into the
/// value when it exists.
pub fn colax_latching_object(f: &ColaxDiagram, z: OneCell) -> Result<LatchingObject> {
    let idx = latching_index(&f.cx, z)?;
    let d = latching_diagram(f, &idx)?;
    let (ob, cocone) = finite_colimit(&d);
    let to_value = if f.cx.deg1(z) <= f.level {
        let legs: Vec<BaseArrow> = idx.alphas.iter().map(|&a| f.val2_at(a)).collect();
        let test = Cocone { apex: f.val1_at(z), legs };
        Some(colimit_mediator(&d, &cocone, &test)?)
    } else {
        None
    };
    Ok(LatchingObject { index: idx, ob, legs: cocone.legs, to_value })
}

/// The canonical cone components F z -> tensor value at a decomposition:
/// the action of beta followed by the iterated colaxity.
pub fn matching_cone_component(f: &ColaxDiagram, obj: &MatchObj) -> Result<BaseArrow> {
    let split = f.iterated_colax(&obj.parts);
    compose(&f.val2_at(obj.beta), &split)
}

/// Limit of the matching diagram, with the canonical arrow from the value
/// when it exists.
pub fn colax_matching_object(f: &ColaxDiagram, z: OneCell) -> Result<MatchingObject> {
    let idx = matching_index(&f.cx, z)?;
    let d = matching_diagram(f, &idx)?;
    let (ob, cone) = finite_limit(&d);
    let from_value = if f.cx.deg1(z) <= f.level {
        let legs = idx
            .objs
            .iter()
            .map(|o| matching_cone_component(f, o))
            .collect::<Result<Vec<_>>>()?;
        let test = Cone { apex: f.val1_at(z), legs };
        Some(crate::base::limits::limit_mediator(&d, &cone, &test)?)
    } else {
        None
    };
    Ok(MatchingObject { index: idx, ob, legs: cone.legs, from_value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::groupement::{build_delta_plus, build_from_reedy1, build_px};
    use std::sync::Arc;

    #[test]
    fn compositions_small() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(2, 2), vec![vec![1, 1]]);
        assert_eq!(compositions(4, 1), vec![vec![4]]);
    }

    #[test]
    fn delta_plus_matching_index_at_2() {
        let cx = build_delta_plus(3);
        let z = cx.find_one_cell("2").unwrap();
        let idx = matching_index(&cx, z).unwrap();
        // ((1), sigma) and ((1,1), id), no non-identity morphisms
        assert_eq!(idx.objs.len(), 2);
        let labels: Vec<String> = idx.objs.iter().map(|o| obj_label(&cx, o)).collect();
        assert!(labels.iter().any(|l| l.contains("[1]@2>1:0.0")), "{labels:?}");
        assert!(labels.iter().any(|l| l.contains("[1|1]@id:2")), "{labels:?}");
        let non_id = idx.cat.arrows.iter().filter(|a| !a.label.starts_with("id:")).count();
        assert_eq!(non_id, 0);
    }

    #[test]
    fn delta_plus_latching_index_at_2_is_span() {
        let cx = build_delta_plus(3);
        let z = cx.find_one_cell("2").unwrap();
        let idx = latching_index(&cx, z).unwrap();
        // objects: the empty-source map 0 -> 2 and the two monos 1 -> 2
        assert_eq!(idx.alphas.len(), 3);
        let non_id = idx.cat.arrows.iter().filter(|a| !a.label.starts_with("id:")).count();
        assert_eq!(non_id, 2);
    }

    #[test]
    fn reedy1_matching_empty_when_direct_only() {
        let b = crate::reedy::examples::walking_arrow();
        let cx = build_from_reedy1(&b, "w");
        let z = cx.one_cell_by_label(0, 1, "b").unwrap();
        let idx = matching_index(&cx, z).unwrap();
        assert!(idx.objs.is_empty());
    }

    #[test]
    fn matching_object_of_deg1_chain_is_terminal() {
        let cx = Arc::new(build_px(&["a", "b"], 2));
        let f = super::super::ColaxDiagram::constant_unit(cx.clone(), Base::FinSet, 2);
        let z = cx.one_cell_by_label(0, 1, "(a,b)").unwrap();
        let m = colax_matching_object(&f, z).unwrap();
        assert!(m.index.objs.is_empty());
        assert_eq!(m.ob, Base::FinSet.terminal());
    }

    #[test]
    fn latching_object_empty_is_initial() {
        let b = crate::reedy::examples::walking_arrow();
        let cx = Arc::new(build_from_reedy1(&b, "w"));
        let f = super::super::ColaxDiagram::constant_unit(cx.clone(), Base::FinVect { p: 2 }, cx.bound);
        let z = cx.one_cell_by_label(0, 1, "a").unwrap();
        let l = colax_latching_object(&f, z).unwrap();
        assert!(l.index.alphas.is_empty());
        assert_eq!(l.ob, Base::FinVect { p: 2 }.initial());
    }

    #[test]
    fn px_deg3_matching_index_structure() {
        let cx = build_px(&["a", "b"], 3);
        let z = cx.one_cell_by_label(0, 1, "(a,b,a,b)").unwrap();
        let idx = matching_index(&cx, z).unwrap();
        // k=1 objects: surjections to degree-1 and degree-2 chains;
        // k=2: the two binary splits with id, plus splits of lower targets;
        // k=3: the full edge decomposition
        assert!(idx.objs.iter().any(|o| o.parts.len() == 3));
        assert!(idx.objs.iter().any(|o| o.parts.len() == 1));
        // composition closes: every pair of composable arrows has a composite
        assert!(idx.cat.validate().passed(), "{}", idx.cat.validate().to_text());
    }
}
