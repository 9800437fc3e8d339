//! Relative latching/matching maps of icons, the induced Reedy-style
//! classification, lifted factorization systems, inductive limits, and the
//! model-axiom verifier.

pub mod classical;
pub mod factor;
pub mod limits;
pub mod verify;

use crate::base::limits::{
    colimit_mediator, finite_colimit, finite_limit, limit_mediator, pullback, pushout, Cocone, Cone,
};
use crate::base::model::ModelData;
use crate::base::{compose, tensor_many, BaseArrow, BaseObject};
use crate::colax::index::{
    latching_diagram, matching_cone_component, matching_diagram, LatchingObject, MatchingObject,
};
use crate::colax::{ColaxDiagram, Icon};
use crate::error::{Error, Result};
use crate::groupement::OneCell;
use std::collections::BTreeMap;

/// Relative data of an icon at one 1-cell.
#[derive(Debug, Clone)]
pub struct RelAt {
    /// F z glued with L(G, z) over L(F, z)
    pub latch_dom: BaseObject,
    /// the relative latching map into G z
    pub latch_rel: BaseArrow,
    /// G z pulled back against M(F, z) over M(G, z)
    pub match_cod: BaseObject,
    /// the relative matching map out of F z
    pub match_rel: BaseArrow,
}

#[derive(Debug, Clone)]
pub struct RelativeMaps {
    pub per_z: BTreeMap<OneCell, RelAt>,
}

/// The arrow L(F,z) -> L(G,z) induced on latching objects by an icon.
pub fn induced_latching(
    icon: &Icon,
    lf: &LatchingObject,
    lg: &LatchingObject,
) -> Result<BaseArrow> {
    let f = &icon.src;
    let g = &icon.dst;
    let d = latching_diagram(f, &lf.index)?;
    let legs = lf
        .index
        .alphas
        .iter()
        .enumerate()
        .map(|(o, &a)| compose(&icon.at(f.cx.src2(a)), &lg.legs[o]))
        .collect::<Result<Vec<_>>>()?;
    let _ = g;
    colimit_mediator(&d, &Cocone { apex: lf.ob, legs: lf.legs.clone() }, &Cocone { apex: lg.ob, legs })
}

/// The arrow M(F,z) -> M(G,z) induced on matching objects by an icon.
pub fn induced_matching(
    icon: &Icon,
    mf: &MatchingObject,
    mg: &MatchingObject,
) -> Result<BaseArrow> {
    let f = &icon.src;
    let g = &icon.dst;
    let dg = matching_diagram(g, &mg.index)?;
    let legs = mg
        .index
        .objs
        .iter()
        .enumerate()
        .map(|(o, obj)| {
            let comps: Vec<BaseArrow> = obj.parts.iter().map(|&p| icon.at(p)).collect();
            compose(&mf.legs[o], &tensor_many(&comps))
        })
        .collect::<Result<Vec<_>>>()?;
    let _ = f;
    limit_mediator(&dg, &Cone { apex: mg.ob, legs: mg.legs.clone() }, &Cone { apex: mf.ob, legs })
}

/// Relative latching map of an icon at z; returns the pushout object, its
/// cocone (legs ordered L(F,z), F z, L(G,z)), and the relative map.
pub fn relative_latching(icon: &Icon, z: OneCell) -> Result<(BaseObject, Cocone, BaseArrow)> {
    let f = &icon.src;
    let g = &icon.dst;
    let lf = crate::colax::index::colax_latching_object(f, z)?;
    let lg = crate::colax::index::colax_latching_object(g, z)?;
    let to_f = lf.to_value.clone().ok_or_else(|| Error::Internal("latching arrow missing".into()))?;
    let to_g = lg.to_value.clone().ok_or_else(|| Error::Internal("latching arrow missing".into()))?;
    let lsigma = induced_latching(icon, &lf, &lg)?;
    let (apex, cocone) = pushout(f.base, &to_f, &lsigma)?;
    // mediate out of the pushout into G z
    let shape_d = crate::base::limits::FinDiagram::new(
        f.base,
        crate::fincat::FinCat::span(),
        vec![lf.ob, f.val1_at(z), lg.ob],
        vec![to_f.clone(), lsigma],
    )?;
    let test = Cocone {
        apex: g.val1_at(z),
        legs: vec![compose(&to_f, &icon.at(z))?, icon.at(z), to_g],
    };
    let rel = colimit_mediator(&shape_d, &cocone, &test)?;
    Ok((apex, cocone, rel))
}

/// Relative matching map of an icon at z; returns the pullback object, its
/// cone (legs ordered G z, M(F,z), M(G,z)), and the relative map.
pub fn relative_matching(icon: &Icon, z: OneCell) -> Result<(BaseObject, Cone, BaseArrow)> {
    let f = &icon.src;
    let g = &icon.dst;
    let mf = crate::colax::index::colax_matching_object(f, z)?;
    let mg = crate::colax::index::colax_matching_object(g, z)?;
    let from_f = mf.from_value.clone().ok_or_else(|| Error::Internal("matching arrow missing".into()))?;
    let from_g = mg.from_value.clone().ok_or_else(|| Error::Internal("matching arrow missing".into()))?;
    let msigma = induced_matching(icon, &mf, &mg)?;
    let (apex, cone) = pullback(f.base, &from_g, &msigma)?;
    let shape_d = crate::base::limits::FinDiagram::new(
        f.base,
        crate::fincat::FinCat::cospan(),
        vec![g.val1_at(z), mf.ob, mg.ob],
        vec![from_g.clone(), msigma],
    )?;
    let test = Cone {
        apex: f.val1_at(z),
        legs: vec![icon.at(z), from_f, compose(&icon.at(z), &from_g)?],
    };
    let rel = limit_mediator(&shape_d, &cone, &test)?;
    Ok((apex, cone, rel))
}

/// Computes pushout/pullback relative data for every non-unit 1-cell in
/// the icon's level.
pub fn relative_maps(icon: &Icon) -> Result<RelativeMaps> {
    let f = &icon.src;
    let mut per_z = BTreeMap::new();
    for z in f.in_level_cells() {
        if f.cx.is_unit(z) {
            continue;
        }
        let (latch_dom, _, latch_rel) = relative_latching(icon, z)?;
        let (match_cod, _, match_rel) = relative_matching(icon, z)?;
        per_z.insert(z, RelAt { latch_dom, latch_rel, match_cod, match_rel });
    }
    Ok(RelativeMaps { per_z })
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub is_we: bool,
    pub is_cof: bool,
    pub is_fib: bool,
    pub we_witness: Option<String>,
    pub cof_witness: Option<String>,
    pub fib_witness: Option<String>,
}

/// Classifies an icon per the Reedy-style definitions: weak equivalence
/// component-wise, cofibration by relative latching maps, fibration by
/// relative matching maps.
pub fn classify(icon: &Icon, md: &ModelData) -> Result<Classification> {
    let f = &icon.src;
    let mut c = Classification {
        is_we: true,
        is_cof: true,
        is_fib: true,
        we_witness: None,
        cof_witness: None,
        fib_witness: None,
    };
    for z in f.in_level_cells() {
        if !md.is_we(&icon.at(z)) && c.is_we {
            c.is_we = false;
            c.we_witness = Some(f.cx.label1(z).to_string());
        }
    }
    let rel = relative_maps(icon)?;
    for (z, at) in &rel.per_z {
        if !md.is_cof(&at.latch_rel) && c.is_cof {
            c.is_cof = false;
            c.cof_witness = Some(f.cx.label1(*z).to_string());
        }
        if !md.is_fib(&at.match_rel) && c.is_fib {
            c.is_fib = false;
            c.fib_witness = Some(f.cx.label1(*z).to_string());
        }
    }
    Ok(c)
}

/// Left/right class membership for a registered factorization system,
/// decided by the relative maps.
pub fn in_left_class(icon: &Icon, md: &ModelData, sys: crate::base::model::FactSystem) -> Result<bool> {
    let rel = relative_maps(icon)?;
    Ok(rel.per_z.values().all(|at| md.in_left(sys, &at.latch_rel)))
}

pub fn in_right_class(icon: &Icon, md: &ModelData, sys: crate::base::model::FactSystem) -> Result<bool> {
    let rel = relative_maps(icon)?;
    Ok(rel.per_z.values().all(|at| md.in_right(sys, &at.match_rel)))
}

/// Latching/matching data reused across the factorization and lifting
/// inductions: the canonical map with both universal objects at z for a
/// diagram defined strictly below z.
pub use crate::colax::canonical::{canonical_map_iz, CanonicalMap};

/// Stacks the per-object limits used by the limit construction: see
/// `limits::limit_colax`.
pub fn level_values(diagrams: &[std::sync::Arc<ColaxDiagram>], z: OneCell) -> Vec<BaseObject> {
    diagrams.iter().map(|d| d.val1_at(z)).collect()
}

pub use limits::{colimit_colax, limit_colax, ColimitResult, LimitResult};

/// Finite product/coproduct helpers over the value at one cell; used by
/// both limit directions.
pub fn values_limit(
    base: crate::base::Base,
    obs: &[BaseObject],
) -> (BaseObject, Vec<BaseArrow>) {
    let shape = crate::fincat::FinCat::discrete(obs.len());
    let d = crate::base::limits::FinDiagram::new(base, shape, obs.to_vec(), vec![]).unwrap();
    let (ob, cone) = finite_limit(&d);
    (ob, cone.legs)
}

pub fn values_colimit(
    base: crate::base::Base,
    obs: &[BaseObject],
) -> (BaseObject, Vec<BaseArrow>) {
    let shape = crate::fincat::FinCat::discrete(obs.len());
    let d = crate::base::limits::FinDiagram::new(base, shape, obs.to_vec(), vec![]).unwrap();
    let (ob, cocone) = finite_colimit(&d);
    (ob, cocone.legs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::groupement::build_delta_plus;
    use std::sync::Arc;

    #[test]
    fn identity_icon_classifies_everywhere() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinSet, 2));
        let icon = Icon::identity(&f);
        let md = ModelData::for_base(Base::FinSet);
        let c = classify(&icon, &md).unwrap();
        assert!(c.is_we && c.is_cof && c.is_fib);
    }

    #[test]
    fn identity_relative_maps_are_isos() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinVect { p: 2 }, 2));
        let icon = Icon::identity(&f);
        let rel = relative_maps(&icon).unwrap();
        for at in rel.per_z.values() {
            assert!(at.latch_rel.is_iso());
            assert!(at.match_rel.is_iso());
        }
    }
}
