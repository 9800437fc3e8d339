//! The canonical arrow from the latching object to the matching object at
//! a 1-cell one degree above the diagram's level.
//!
//! For each non-identity direct 2-cell into z and each decomposition
//! object of the matching index, the component is either the action of
//! the composed inverse cell followed by iterated colaxity (when the
//! inverse cell is not the identity), or the tensor of the divisibility
//! split's actions after the source's own iterated colaxity (when the
//! decomposition composes to z on the nose). The assembled family is
//! checked compatible with every matching-index morphism before either
//! mediator is taken.

use super::index::{
    colax_latching_object, colax_matching_object, latching_diagram, matching_diagram,
    LatchingObject, MatchingObject,
};
use crate::base::limits::{colimit_mediator, limit_mediator, Cocone, Cone};
use crate::base::{compose, tensor_many, BaseArrow};
use crate::colax::ColaxDiagram;
use crate::error::{Error, Result};
use crate::groupement::{OneCell, TwoCell};

/// Per-latching-leg components into the tensor values of the matching
/// index, before mediation.
fn component(
    f: &ColaxDiagram,
    alpha: TwoCell,
    obj: &super::index::MatchObj,
) -> Result<BaseArrow> {
    let cx = &f.cx;
    if cx.is_id2(obj.beta) {
        // pure decomposition: split alpha along the parts
        let splits = cx.split_direct(alpha, &obj.parts)?;
        let sources: Vec<OneCell> = splits.iter().map(|&b| cx.src2(b)).collect();
        let split_colax = f.iterated_colax(&sources);
        let actions: Vec<BaseArrow> = splits.iter().map(|&b| f.val2_at(b)).collect();
        compose(&split_colax, &tensor_many(&actions))
    } else {
        // beta after alpha lands strictly below z, where f is defined
        let ba = cx
            .then2(alpha, obj.beta)
            .ok_or_else(|| Error::Internal("beta after alpha undefined".into()))?;
        let split = f.iterated_colax(&obj.parts);
        compose(&f.val2_at(ba), &split)
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalMap {
    pub latching: LatchingObject,
    pub matching: MatchingObject,
    /// the canonical arrow from latching to matching object
    pub map: BaseArrow,
}

/// Builds i_z for a diagram defined up to degree(z) - 1 (a diagram defined
/// at z works too; only values below z are consulted).
pub fn canonical_map_iz(f: &ColaxDiagram, z: OneCell) -> Result<CanonicalMap> {
    let cx = &f.cx;
    let m = cx.deg1(z);
    if m == 0 {
        return Err(Error::Domain("canonical map needs a positive-degree 1-cell".into()));
    }
    if f.level + 1 < m {
        return Err(Error::Truncation(format!(
            "diagram level {} cannot reach degree {m}",
            f.level
        )));
    }
    let latching = colax_latching_object(f, z)?;
    let matching = colax_matching_object(f, z)?;
    let ld = latching_diagram(f, &latching.index)?;
    let md = matching_diagram(f, &matching.index)?;

    // assemble all components and check the compatibility triangles
    let mut comps: Vec<Vec<BaseArrow>> = Vec::with_capacity(latching.index.alphas.len());
    for &alpha in &latching.index.alphas {
        let legs = matching
            .index
            .objs
            .iter()
            .map(|o| component(f, alpha, o))
            .collect::<Result<Vec<_>>>()?;
        for (ai, arrow) in matching.index.cat.arrows.iter().enumerate() {
            if matching.index.cat.is_identity(ai) {
                continue;
            }
            let lhs = compose(&legs[arrow.src], &md.arr[ai])?;
            if lhs != legs[arrow.dst] {
                return Err(Error::Internal(format!(
                    "matching compatibility fails at triangle {} over leg {}",
                    matching.index.cat.arrows[ai].label,
                    cx.label2(alpha)
                )));
            }
        }
        comps.push(legs);
    }

    // mediate into the matching limit per latching leg
    let mut into_matching: Vec<BaseArrow> = Vec::with_capacity(comps.len());
    for (li, legs) in comps.iter().enumerate() {
        let apex = f.val1_at(cx.src2(latching.index.alphas[li]));
        let cone = Cone { apex, legs: legs.clone() };
        into_matching.push(limit_mediator(&md, &Cone { apex: matching.ob, legs: matching.legs.clone() }, &cone)?);
    }

    // the per-leg maps form a cocone over the latching index
    for (ai, arrow) in latching.index.cat.arrows.iter().enumerate() {
        if latching.index.cat.is_identity(ai) {
            continue;
        }
        let lhs = compose(&ld.arr[ai], &into_matching[arrow.dst])?;
        if lhs != into_matching[arrow.src] {
            return Err(Error::Internal(format!(
                "latching functoriality fails at {}",
                latching.index.cat.arrows[ai].label
            )));
        }
    }
    let cocone = Cocone { apex: matching.ob, legs: into_matching };
    let map = colimit_mediator(
        &ld,
        &Cocone { apex: latching.ob, legs: latching.legs.clone() },
        &cocone,
    )?;
    Ok(CanonicalMap { latching, matching, map })
}

/// When the diagram is defined at z itself, the canonical map must equal
/// the composite (F z -> M) after (L -> F z).
pub fn iz_factors_through_value(f: &ColaxDiagram, z: OneCell) -> Result<bool> {
    let cm = canonical_map_iz(f, z)?;
    let (Some(to_v), Some(from_v)) = (&cm.latching.to_value, &cm.matching.from_value) else {
        return Err(Error::Precondition("diagram not defined at z".into()));
    };
    Ok(compose(to_v, from_v)? == cm.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::matrix::Mat;
    use crate::base::{Base, BaseObject};
    use crate::colax::validate_colax;
    use crate::groupement::build_delta_plus;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    /// The ordinal diagram with F(1) = V over F_2, F(2) = V (x) V, the
    /// insertion eta acting by a chosen vector, identity colaxity, and the
    /// actions derived from a commutative algebra structure where needed.
    /// Here we take V one dimensional so everything is forced.
    fn tensor_line_diagram(cx: Arc<crate::groupement::TwoGroupement>) -> ColaxDiagram {
        let base = Base::FinVect { p: 2 };
        let mut val1 = BTreeMap::new();
        let mut val2 = BTreeMap::new();
        let mut colax = BTreeMap::new();
        let one = cx.find_one_cell("1").unwrap();
        let two = cx.find_one_cell("2").unwrap();
        val1.insert(one, BaseObject::FinVect { dim: 1 });
        val1.insert(two, BaseObject::FinVect { dim: 1 });
        let idm = BaseArrow::finvect(Mat::identity(1, 2));
        // eta: unit -> 1 acts by 1, the two faces 1 -> 2 and the
        // degeneracy 2 -> 1 act by identity on the line
        for u in cx.two_cells() {
            if cx.is_id2(u) {
                continue;
            }
            val2.insert(u, idm.clone());
        }
        colax.insert((one, one), idm.clone());
        ColaxDiagram::new("line", cx, base, 2, val1, val2, colax).unwrap()
    }

    #[test]
    fn iz_on_ordinal_two_line_diagram() {
        let cx = Arc::new(build_delta_plus(2));
        let f = tensor_line_diagram(cx.clone());
        assert!(validate_colax(&f).passed(), "{}", validate_colax(&f).to_text());
        let z = cx.find_one_cell("2").unwrap();
        let trunc = f.truncate(1).unwrap();
        let cm = canonical_map_iz(&trunc, z).unwrap();
        // latching object: pushout of two copies of the line over the unit
        assert_eq!(cm.latching.ob, BaseObject::FinVect { dim: 1 });
        // matching object: (V (x) V) x V = dim 2
        assert_eq!(cm.matching.ob, BaseObject::FinVect { dim: 2 });
        // factorization through the value
        assert!(iz_factors_through_value(&f, z).unwrap());
    }

    #[test]
    fn iz_needs_enough_level() {
        let cx = Arc::new(build_delta_plus(2));
        let f = tensor_line_diagram(cx.clone()).truncate(0).unwrap();
        let z = cx.find_one_cell("2").unwrap();
        assert!(canonical_map_iz(&f, z).is_err());
    }
}
