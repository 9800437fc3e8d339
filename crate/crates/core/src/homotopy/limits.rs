//! Colimits and limits of shaped families of colax diagrams.
//!
//! Colimits are level-wise at non-unit cells, with unit values pinned to
//! the monoidal unit. Limits are built degree by degree: each new value
//! is the joint pullback of the level-wise limit of values against the
//! matching object of the limit-so-far, which simultaneously produces the
//! colaxity maps and the actions on inverse cells out of the new cell.

use crate::base::limits::{
    colimit_mediator, finite_colimit, finite_limit, limit_mediator, Cocone, Cone, FinDiagram,
};
use crate::base::{compose, tensor, BaseArrow, BaseObject};
use crate::colax::canonical::canonical_map_iz;
use crate::colax::index::{
    colax_matching_object, latching_diagram, matching_cone_component, matching_diagram,
    MatchingObject,
};
use crate::colax::{validate_colax, validate_icon, ColaxDiagram, Icon};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::groupement::OneCell;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A shaped family: one diagram per shape object, one icon per non-identity
/// shape arrow (in shape order), checked functorial.
#[derive(Debug, Clone)]
pub struct Family {
    pub shape: FinCat,
    pub nodes: Vec<Arc<ColaxDiagram>>,
    /// aligned with shape.arrows; identity positions hold identity icons
    pub edges: Vec<Icon>,
}

impl Family {
    pub fn new(shape: FinCat, nodes: Vec<Arc<ColaxDiagram>>, non_id_edges: Vec<Icon>) -> Result<Family> {
        if nodes.len() != shape.objects.len() {
            return Err(Error::Domain("family nodes do not match shape".into()));
        }
        let mut edges = Vec::with_capacity(shape.arrows.len());
        let mut it = non_id_edges.into_iter();
        for i in 0..shape.arrows.len() {
            if shape.is_identity(i) {
                edges.push(Icon::identity(&nodes[shape.arrows[i].src]));
            } else {
                let e = it.next().ok_or_else(|| Error::Domain("not enough edges".into()))?;
                if !e.src.same_tables(&nodes[shape.arrows[i].src])
                    || !e.dst.same_tables(&nodes[shape.arrows[i].dst])
                {
                    return Err(Error::Endpoint(format!(
                        "edge {} does not match shape arrow {}",
                        e.name, shape.arrows[i].label
                    )));
                }
                edges.push(e);
            }
        }
        if it.next().is_some() {
            return Err(Error::Domain("too many edges".into()));
        }
        let fam = Family { shape, nodes, edges };
        fam.check_functorial()?;
        Ok(fam)
    }

    fn check_functorial(&self) -> Result<()> {
        for f in 0..self.shape.arrows.len() {
            for g in 0..self.shape.arrows.len() {
                if let Some(gf) = self.shape.then(f, g) {
                    for z in self.nodes[self.shape.arrows[f].src].in_level_cells() {
                        let lhs = compose(&self.edges[f].at(z), &self.edges[g].at(z))?;
                        if lhs != self.edges[gf].at(z) {
                            return Err(Error::Precondition(format!(
                                "family is not functorial at {}",
                                self.shape.arrows[gf].label
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> crate::base::Base {
        self.nodes[0].base
    }

    pub fn level(&self) -> u32 {
        self.nodes[0].level
    }

    /// Level-wise diagram of values at one 1-cell.
    fn values_at(&self, z: OneCell) -> Result<FinDiagram> {
        let ob: Vec<BaseObject> = self.nodes.iter().map(|n| n.val1_at(z)).collect();
        let arr: Vec<BaseArrow> = self.edges.iter().map(|e| e.at(z)).collect();
        FinDiagram::from_parts(self.base(), self.shape.clone(), ob, arr)
    }
}

#[derive(Debug, Clone)]
pub struct ColimitResult {
    pub family: Family,
    pub apex: Arc<ColaxDiagram>,
    /// injections, per shape object
    pub legs: Vec<Icon>,
}

#[derive(Debug, Clone)]
pub struct LimitResult {
    pub family: Family,
    pub apex: Arc<ColaxDiagram>,
    /// projections, per shape object
    pub legs: Vec<Icon>,
}

/// Level-wise colimit. Non-unit values are colimits of values; unit values
/// stay the monoidal unit. Actions out of a unit cell are the common value
/// of the injected actions and must agree (they always do for connected
/// shapes); an empty family needs the base to admit a unique map from the
/// unit into the initial object.
pub fn colimit_colax(fam: &Family) -> Result<ColimitResult> {
    if fam.nodes.is_empty() {
        return colimit_empty(fam);
    }
    let proto = &fam.nodes[0];
    let cx = proto.cx.clone();
    let base = proto.base;
    let level = proto.level;
    let mut val1 = BTreeMap::new();
    let mut inj: BTreeMap<OneCell, Vec<BaseArrow>> = BTreeMap::new();
    for z in proto.in_level_cells() {
        if cx.is_unit(z) {
            continue;
        }
        let d = fam.values_at(z)?;
        let (ob, cocone) = finite_colimit(&d);
        val1.insert(z, ob);
        inj.insert(z, cocone.legs);
    }
    let value_of = |z: OneCell| -> BaseObject {
        if cx.is_unit(z) {
            base.unit()
        } else {
            val1[&z]
        }
    };
    let mut val2 = BTreeMap::new();
    for u in cx.two_cells() {
        if cx.is_id2(u) {
            continue;
        }
        let (s, t) = (cx.src2(u), cx.dst2(u));
        if cx.deg1(s) > level || cx.deg1(t) > level {
            continue;
        }
        let legs: Vec<BaseArrow> = fam
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let into = if cx.is_unit(t) {
                    BaseArrow::identity(base, &base.unit())
                } else {
                    inj[&t][i].clone()
                };
                compose(&n.val2_at(u), &into)
            })
            .collect::<Result<Vec<_>>>()?;
        if cx.is_unit(s) {
            // all legs originate at the unit; they must coincide
            let first = legs.first().cloned();
            match first {
                None => {
                    return Err(Error::Domain(
                        "empty colimit needs a map from the unit; not level-wise in this base".into(),
                    ))
                }
                Some(f0) => {
                    if legs.iter().any(|l| *l != f0) {
                        return Err(Error::Domain(format!(
                            "colimit is not level-wise: unit action at {} is ambiguous",
                            cx.label2(u)
                        )));
                    }
                    val2.insert(u, f0);
                }
            }
        } else {
            let d = fam.values_at(s)?;
            let colim = Cocone { apex: value_of(s), legs: inj[&s].clone() };
            let test = Cocone { apex: value_of(t), legs };
            val2.insert(u, colimit_mediator(&d, &colim, &test)?);
        }
    }
    let mut colax = BTreeMap::new();
    for (s, t) in crate::colax::composable_pairs(&cx, level) {
        let st = cx.tensor1(s, t).unwrap();
        let legs: Vec<BaseArrow> = fam
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| {
                let side = tensor(&inj[&s][i], &inj[&t][i]);
                compose(&n.colax_at(s, t), &side)
            })
            .collect::<Result<Vec<_>>>()?;
        let d = fam.values_at(st)?;
        let colim = Cocone { apex: value_of(st), legs: inj[&st].clone() };
        let test = Cocone { apex: value_of(s).tensor(&value_of(t)), legs };
        colax.insert((s, t), colimit_mediator(&d, &colim, &test)?);
    }
    let apex = Arc::new(ColaxDiagram::new(
        "colimit",
        cx.clone(),
        base,
        level,
        val1,
        val2,
        colax,
    )?);
    let rep = validate_colax(&apex);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "level-wise colimit incoherent: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    let mut legs = Vec::new();
    for (i, n) in fam.nodes.iter().enumerate() {
        let comp: BTreeMap<OneCell, BaseArrow> = inj
            .iter()
            .map(|(&z, v)| (z, v[i].clone()))
            .collect();
        let icon = Icon::new(format!("inj{i}"), n.clone(), apex.clone(), comp)?;
        let r = validate_icon(&icon);
        if !r.passed() {
            return Err(Error::Internal("colimit injection is not an icon".into()));
        }
        legs.push(icon);
    }
    Ok(ColimitResult { family: fam.clone(), apex, legs })
}

fn colimit_empty(fam: &Family) -> Result<ColimitResult> {
    Err(Error::Domain(format!(
        "empty colimit requires a groupement/base reference; shape {} has no nodes",
        fam.shape.objects.len()
    )))
}

/// The initial diagram on a groupement: unit values at units, initial
/// objects elsewhere. Exists only when every action from a unit cell into
/// the initial object exists in the base.
pub fn initial_diagram(
    cx: Arc<crate::groupement::TwoGroupement>,
    base: crate::base::Base,
    level: u32,
) -> Result<Arc<ColaxDiagram>> {
    let mut val1 = BTreeMap::new();
    let mut val2 = BTreeMap::new();
    let mut colax = BTreeMap::new();
    let init = base.initial();
    for z in cx.one_cells() {
        if !cx.is_unit(z) && cx.deg1(z) <= level {
            val1.insert(z, init);
        }
    }
    for u in cx.two_cells() {
        if cx.is_id2(u) {
            continue;
        }
        let (s, t) = (cx.src2(u), cx.dst2(u));
        if cx.deg1(s) > level || cx.deg1(t) > level {
            continue;
        }
        let src_ob = if cx.is_unit(s) { base.unit() } else { init };
        let dst_ob = if cx.is_unit(t) { base.unit() } else { init };
        let arrow = match base {
            crate::base::Base::FinSet => {
                if src_ob.card() > 0 && dst_ob.card() == 0 {
                    return Err(Error::Domain(format!(
                        "initial diagram does not exist: no map from the unit at {}",
                        cx.label2(u)
                    )));
                }
                BaseArrow::finset(src_ob.card(), dst_ob.card(), vec![0; src_ob.card()])?
            }
            crate::base::Base::FinVect { p } => BaseArrow::finvect(
                crate::base::matrix::Mat::zeros(dst_ob.card(), src_ob.card(), p),
            ),
        };
        val2.insert(u, arrow);
    }
    for (s, t) in crate::colax::composable_pairs(&cx, level) {
        let st = cx.tensor1(s, t).unwrap();
        let _ = st;
        let arrow = match base {
            crate::base::Base::FinSet => BaseArrow::finset(0, 0, vec![])?,
            crate::base::Base::FinVect { p } => {
                BaseArrow::finvect(crate::base::matrix::Mat::zeros(0, 0, p))
            }
        };
        colax.insert((s, t), arrow);
    }
    let d = ColaxDiagram::new("initial", cx, base, level, val1, val2, colax)?;
    let rep = validate_colax(&d);
    if !rep.passed() {
        return Err(Error::Internal("initial diagram incoherent".into()));
    }
    Ok(Arc::new(d))
}

/// The unique mediating icon from the colimit to a competing cocone.
pub fn colimit_mediator_colax(
    res: &ColimitResult,
    target: &Arc<ColaxDiagram>,
    cocone: &[Icon],
) -> Result<Icon> {
    let fam = &res.family;
    let cx = res.apex.cx.clone();
    let mut comp = BTreeMap::new();
    for z in res.apex.in_level_cells() {
        if cx.is_unit(z) {
            continue;
        }
        let d = fam.values_at(z)?;
        let colim = Cocone {
            apex: res.apex.val1_at(z),
            legs: (0..fam.nodes.len()).map(|i| res.legs[i].at(z)).collect(),
        };
        let test = Cocone {
            apex: target.val1_at(z),
            legs: cocone.iter().map(|c| c.at(z)).collect(),
        };
        comp.insert(z, colimit_mediator(&d, &colim, &test)?);
    }
    let m = Icon::new("mediator", res.apex.clone(), target.clone(), comp)?;
    let rep = validate_icon(&m);
    if !rep.passed() {
        return Err(Error::Internal("colimit mediator is not an icon".into()));
    }
    Ok(m)
}

/// Inductive limit of a family. The groupement must be direct-divisible.
pub fn limit_colax(fam: &Family) -> Result<LimitResult> {
    let proto = fam
        .nodes
        .first()
        .ok_or_else(|| Error::Domain("empty limit needs an explicit groupement; use terminal_diagram".into()))?;
    let cx = proto.cx.clone();
    let div = cx.check_direct_divisibility();
    if !div.passed() {
        return Err(Error::Domain(format!(
            "groupement {} is not direct-divisible; run check_direct_divisibility",
            cx.name
        )));
    }
    let base = proto.base;
    let level = proto.level;
    let mut val1: BTreeMap<OneCell, BaseObject> = BTreeMap::new();
    let mut val2 = BTreeMap::new();
    let mut colax = BTreeMap::new();
    // projection components per node per cell
    let mut proj: BTreeMap<OneCell, Vec<BaseArrow>> = BTreeMap::new();
    let mut processed: std::collections::BTreeSet<OneCell> = Default::default();

    let cells: Vec<OneCell> =
        cx.one_cells_by_degree().into_iter().filter(|&z| cx.deg1(z) <= level).collect();
    for &z in &cells {
        let d = cx.deg1(z);
        let values = fam.values_at(z)?;
        let (xinf, xinf_cone) = finite_limit(&values);
        if d == 0 {
            val1.insert(z, xinf);
            proj.insert(z, xinf_cone.legs);
            processed.insert(z);
            continue;
        }
        let e_prev = ColaxDiagram::new(
            "limit",
            cx.clone(),
            base,
            d - 1,
            val1.clone(),
            val2.clone(),
            colax.clone(),
        )?;
        let cm = canonical_map_iz(&e_prev, z)?;
        let me = &cm.matching;
        // matching objects of the nodes with their canonical arrows
        let node_matchings: Vec<MatchingObject> = fam
            .nodes
            .iter()
            .map(|n| colax_matching_object(n, z))
            .collect::<Result<Vec<_>>>()?;
        // M(E,z) -> M(X_i,z) via the projections built so far
        let mp: Vec<BaseArrow> = (0..fam.nodes.len())
            .map(|i| {
                let ni = &fam.nodes[i];
                let nd = matching_diagram(ni, &node_matchings[i].index)?;
                let legs = node_matchings[i]
                    .index
                    .objs
                    .iter()
                    .enumerate()
                    .map(|(o, obj)| {
                        let comps: Vec<BaseArrow> = obj
                            .parts
                            .iter()
                            .map(|&c| {
                                if cx.is_unit(c) {
                                    BaseArrow::identity(base, &base.unit())
                                } else {
                                    proj[&c][i].clone()
                                }
                            })
                            .collect();
                        compose(&me.legs[o], &crate::base::tensor_many(&comps))
                    })
                    .collect::<Result<Vec<_>>>()?;
                limit_mediator(
                    &nd,
                    &Cone { apex: node_matchings[i].ob, legs: node_matchings[i].legs.clone() },
                    &Cone { apex: me.ob, legs },
                )
            })
            .collect::<Result<Vec<_>>>()?;
        // fan shape: M(E,z), Xinf, then one M(X_i,z) per node
        let n = fam.nodes.len();
        let mut fan = FinCat::new(
            std::iter::once("me".to_string())
                .chain(std::iter::once("xinf".to_string()))
                .chain((0..n).map(|i| format!("m{i}")))
                .collect(),
        );
        let mut fan_ob = vec![me.ob, xinf];
        let mut fan_arr = Vec::new();
        for i in 0..n {
            fan_ob.push(node_matchings[i].ob);
            fan.add_arrow(format!("p{i}"), 0, 2 + i);
            fan_arr.push(mp[i].clone());
            fan.add_arrow(format!("c{i}"), 1, 2 + i);
            fan_arr.push(compose(
                &xinf_cone.legs[i],
                &node_matchings[i].from_value.clone().expect("node defined at z"),
            )?);
        }
        let fan_d = FinDiagram::new(base, fan, fan_ob, fan_arr)?;
        let (ez, fan_cone) = finite_limit(&fan_d);
        val1.insert(z, ez);
        // projections at z
        let to_xinf = fan_cone.legs[1].clone();
        let projections: Vec<BaseArrow> = (0..n)
            .map(|i| compose(&to_xinf, &xinf_cone.legs[i]))
            .collect::<Result<Vec<_>>>()?;
        proj.insert(z, projections);
        // colaxity maps and inverse actions from the matching cone legs
        let to_me = fan_cone.legs[0].clone();
        for (o, obj) in me.index.objs.iter().enumerate() {
            let leg = compose(&to_me, &me.legs[o])?;
            if obj.parts.len() == 1 && !cx.is_id2(obj.beta) {
                val2.insert(obj.beta, leg);
            } else if obj.parts.len() == 2 && cx.is_id2(obj.beta) {
                colax.insert((obj.parts[0], obj.parts[1]), leg);
            }
        }
        // inverse cells into a unit: the family actions must agree
        for u in cx.two_cells() {
            if cx.src2(u) == z && cx.is_unit(cx.dst2(u)) && !cx.is_id2(u) {
                let legs: Vec<BaseArrow> = (0..n)
                    .map(|i| compose(&proj[&z][i], &fam.nodes[i].val2_at(u)))
                    .collect::<Result<Vec<_>>>()?;
                let f0 = legs[0].clone();
                if legs.iter().any(|l| *l != f0) {
                    return Err(Error::Domain(format!(
                        "limit action into the unit at {} is ambiguous",
                        cx.label2(u)
                    )));
                }
                val2.insert(u, f0);
            }
        }
        // direct actions into z via the latching mediator through the fan
        let le = &cm.latching;
        if !le.index.alphas.is_empty() {
            let led = latching_diagram(&e_prev, &le.index)?;
            // L(E,z) -> Xinf
            let le_to_xinf = {
                let legs: Vec<BaseArrow> = (0..n)
                    .map(|i| {
                        let per_alpha = le
                            .index
                            .alphas
                            .iter()
                            .map(|&a| {
                                let s = cx.src2(a);
                                let c = if cx.is_unit(s) {
                                    BaseArrow::identity(base, &base.unit())
                                } else {
                                    proj[&s][i].clone()
                                };
                                compose(&c, &fam.nodes[i].val2_at(a))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        colimit_mediator(
                            &led,
                            &Cocone { apex: le.ob, legs: le.legs.clone() },
                            &Cocone { apex: fam.nodes[i].val1_at(z), legs: per_alpha },
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                limit_mediator(
                    &values,
                    &Cone { apex: xinf, legs: xinf_cone.legs.clone() },
                    &Cone { apex: le.ob, legs },
                )?
            };
            let mut legs = vec![cm.map.clone(), le_to_xinf.clone()];
            for i in 0..n {
                legs.push(compose(&cm.map, &mp[i])?);
            }
            let u = limit_mediator(&fan_d, &fan_cone, &Cone { apex: le.ob, legs })?;
            for (o, &a) in le.index.alphas.iter().enumerate() {
                val2.insert(a, compose(&le.legs[o], &u)?);
            }
        }
        processed.insert(z);
        // mixed cells with both endpoints settled
        sweep_mixed_tables(&cx, base, &val1, &mut val2, &processed)?;
    }
    let apex = Arc::new(ColaxDiagram::new("limit", cx.clone(), base, level, val1, val2, colax)?);
    let rep = validate_colax(&apex);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "limit diagram incoherent: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    let mut legs = Vec::new();
    for (i, nref) in fam.nodes.iter().enumerate() {
        let comp: BTreeMap<OneCell, BaseArrow> =
            proj.iter().map(|(&z, v)| (z, v[i].clone())).collect();
        let icon = Icon::new(format!("proj{i}"), apex.clone(), nref.clone(), comp)?;
        let r = validate_icon(&icon);
        if !r.passed() {
            return Err(Error::Internal(format!(
                "limit projection is not an icon: {}",
                r.first_failure().map(|x| x.instance.clone()).unwrap_or_default()
            )));
        }
        legs.push(icon);
    }
    // cone property over the shape
    for (ai, arrow) in fam.shape.arrows.iter().enumerate() {
        for z in apex.in_level_cells() {
            let lhs = compose(&legs[arrow.src].at(z), &fam.edges[ai].at(z))?;
            if lhs != legs[arrow.dst].at(z) {
                return Err(Error::Internal("limit cone does not commute with the family".into()));
            }
        }
    }
    Ok(LimitResult { family: fam.clone(), apex, legs })
}

fn sweep_mixed_tables(
    cx: &crate::groupement::TwoGroupement,
    base: crate::base::Base,
    val1: &BTreeMap<OneCell, BaseObject>,
    val2: &mut BTreeMap<crate::groupement::TwoCell, BaseArrow>,
    processed: &std::collections::BTreeSet<OneCell>,
) -> Result<()> {
    let action = |val2: &BTreeMap<crate::groupement::TwoCell, BaseArrow>,
                  u: crate::groupement::TwoCell|
     -> Option<BaseArrow> {
        if cx.is_id2(u) {
            let s = cx.src2(u);
            let ob = if cx.is_unit(s) { base.unit() } else { *val1.get(&s)? };
            return Some(BaseArrow::identity(base, &ob));
        }
        val2.get(&u).cloned()
    };
    for u in cx.two_cells() {
        if val2.contains_key(&u) || cx.is_id2(u) {
            continue;
        }
        let (s, t) = (cx.src2(u), cx.dst2(u));
        let s_done = cx.is_unit(s) || processed.contains(&s);
        let t_done = cx.is_unit(t) || processed.contains(&t);
        if !s_done || !t_done {
            continue;
        }
        let (inv, dir) = cx.reedy_factorize(u)?;
        let (Some(a), Some(b)) = (action(val2, inv), action(val2, dir)) else {
            return Err(Error::Internal(format!("parts of {} not built", cx.label2(u))));
        };
        val2.insert(u, compose(&a, &b)?);
    }
    Ok(())
}

/// The unique mediating icon from a competing cone into the limit.
pub fn limit_mediator_colax(
    res: &LimitResult,
    source: &Arc<ColaxDiagram>,
    cone: &[Icon],
) -> Result<Icon> {
    let fam = &res.family;
    let cx = res.apex.cx.clone();
    let base = res.apex.base;
    let mut comp: BTreeMap<OneCell, BaseArrow> = BTreeMap::new();
    for z in cx.one_cells_by_degree() {
        if cx.deg1(z) > res.apex.level {
            continue;
        }
        let d = cx.deg1(z);
        let values = fam.values_at(z)?;
        let (xinf, xinf_cone) = finite_limit(&values);
        let t_to_xinf = limit_mediator(
            &values,
            &Cone { apex: xinf, legs: xinf_cone.legs.clone() },
            &Cone { apex: source.val1_at(z), legs: cone.iter().map(|c| c.at(z)).collect() },
        )?;
        if d == 0 {
            comp.insert(z, t_to_xinf);
            continue;
        }
        // mediate into the fan: rebuild the same canonical pieces
        let e_prev = res.apex.truncate(d - 1)?;
        let cm = canonical_map_iz(&e_prev, z)?;
        let me = &cm.matching;
        let med = matching_diagram(&e_prev, &me.index)?;
        let t_to_me = {
            let legs = me
                .index
                .objs
                .iter()
                .map(|obj| {
                    let into_t = matching_cone_component(source, obj)?;
                    let comps: Vec<BaseArrow> = obj
                        .parts
                        .iter()
                        .map(|&c| {
                            if cx.is_unit(c) {
                                BaseArrow::identity(base, &base.unit())
                            } else {
                                comp[&c].clone()
                            }
                        })
                        .collect();
                    compose(&into_t, &crate::base::tensor_many(&comps))
                })
                .collect::<Result<Vec<_>>>()?;
            limit_mediator(
                &med,
                &Cone { apex: me.ob, legs: me.legs.clone() },
                &Cone { apex: source.val1_at(z), legs },
            )?
        };
        // the fan limit legs of the stored value recover the mediator
        let node_matchings: Vec<MatchingObject> = fam
            .nodes
            .iter()
            .map(|n| colax_matching_object(n, z))
            .collect::<Result<Vec<_>>>()?;
        let n = fam.nodes.len();
        let mut fan = FinCat::new(
            std::iter::once("me".to_string())
                .chain(std::iter::once("xinf".to_string()))
                .chain((0..n).map(|i| format!("m{i}")))
                .collect(),
        );
        let mut fan_ob = vec![me.ob, xinf];
        let mut fan_arr = Vec::new();
        for i in 0..n {
            let ni = &fam.nodes[i];
            let nd = matching_diagram(ni, &node_matchings[i].index)?;
            let legs = node_matchings[i]
                .index
                .objs
                .iter()
                .enumerate()
                .map(|(o, obj)| {
                    let comps: Vec<BaseArrow> = obj
                        .parts
                        .iter()
                        .map(|&c| {
                            if cx.is_unit(c) {
                                BaseArrow::identity(base, &base.unit())
                            } else {
                                res.legs[i].at(c)
                            }
                        })
                        .collect();
                    compose(&me.legs[o], &crate::base::tensor_many(&comps))
                })
                .collect::<Result<Vec<_>>>()?;
            let mpi = limit_mediator(
                &nd,
                &Cone { apex: node_matchings[i].ob, legs: node_matchings[i].legs.clone() },
                &Cone { apex: me.ob, legs },
            )?;
            fan_ob.push(node_matchings[i].ob);
            fan.add_arrow(format!("p{i}"), 0, 2 + i);
            fan_arr.push(mpi);
            fan.add_arrow(format!("c{i}"), 1, 2 + i);
            fan_arr.push(compose(
                &xinf_cone.legs[i],
                &node_matchings[i].from_value.clone().expect("node defined at z"),
            )?);
        }
        let fan_d = FinDiagram::new(base, fan, fan_ob, fan_arr)?;
        let (ez, fan_cone) = finite_limit(&fan_d);
        if ez != res.apex.val1_at(z) {
            return Err(Error::Internal("fan limit differs from the stored value".into()));
        }
        let mut legs = vec![t_to_me, t_to_xinf.clone()];
        for i in 0..n {
            legs.push(compose(
                &compose(&t_to_xinf, &xinf_cone.legs[i])?,
                &node_matchings[i].from_value.clone().unwrap(),
            )?);
        }
        let m = limit_mediator(&fan_d, &fan_cone, &Cone { apex: source.val1_at(z), legs })?;
        comp.insert(z, m);
    }
    let m = Icon::new("mediator", source.clone(), res.apex.clone(), comp)?;
    let rep = validate_icon(&m);
    if !rep.passed() {
        return Err(Error::Internal("limit mediator is not an icon".into()));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::groupement::build_delta_plus;

    #[test]
    fn point_shape_limit_is_node() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinSet, 2));
        let fam = Family::new(FinCat::point(), vec![f.clone()], vec![]).unwrap();
        let lim = limit_colax(&fam).unwrap();
        for z in f.in_level_cells() {
            assert_eq!(lim.apex.val1_at(z).card(), f.val1_at(z).card());
        }
        let colim = colimit_colax(&fam).unwrap();
        for z in f.in_level_cells() {
            assert_eq!(colim.apex.val1_at(z).card(), f.val1_at(z).card());
        }
    }

    #[test]
    fn initial_diagram_finvect() {
        let cx = Arc::new(build_delta_plus(2));
        let d = initial_diagram(cx, Base::FinVect { p: 2 }, 2).unwrap();
        for z in d.in_level_cells() {
            if !d.cx.is_unit(z) {
                assert_eq!(d.val1_at(z), BaseObject::FinVect { dim: 0 });
            }
        }
    }

    #[test]
    fn initial_diagram_finset_fails_with_insertions() {
        // the unit cannot map into the empty set, so the level-wise initial
        // diagram does not exist on a groupement with unit-to-cell 2-cells
        let cx = Arc::new(build_delta_plus(2));
        assert!(initial_diagram(cx, Base::FinSet, 2).is_err());
    }
}
