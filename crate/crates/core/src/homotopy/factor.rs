//! Degree-wise factorization of icons through a middle diagram, and the
//! degree-wise lifting solver. Both inductions hinge on the canonical
//! latch-to-match comparison, which is where direct-divisibility of the
//! groupement enters.

use super::{relative_latching, relative_matching};
use crate::base::limits::{colimit_mediator, limit_mediator, Cocone, Cone, FinDiagram};
use crate::base::model::{find_lift, FactSystem, LiftSquare, ModelData};
use crate::base::{compose, tensor_many, BaseArrow};
use crate::colax::canonical::canonical_map_iz;
use crate::colax::index::{
    colax_latching_object, colax_matching_object, latching_diagram, matching_cone_component,
    matching_diagram,
};
use crate::colax::{compose_icons, validate_colax, validate_icon, ColaxDiagram, Icon, StageData};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::groupement::{OneCell, TwoGroupement};
use std::collections::BTreeMap;
use std::sync::Arc;

fn require_divisible(cx: &TwoGroupement) -> Result<()> {
    let r = cx.check_direct_divisibility();
    if !r.passed() {
        return Err(Error::Precondition(format!(
            "groupement {} is not direct-divisible; run check_direct_divisibility for witnesses ({})",
            cx.name,
            r.first_failure().map(|f| f.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(())
}

/// Middle-diagram construction state shared by the factorization stages.
struct MidBuilder {
    cx: Arc<TwoGroupement>,
    base: crate::base::Base,
    val1: BTreeMap<OneCell, crate::base::BaseObject>,
    val2: BTreeMap<crate::groupement::TwoCell, BaseArrow>,
    colax: BTreeMap<(OneCell, OneCell), BaseArrow>,
    processed: std::collections::BTreeSet<OneCell>,
}

impl MidBuilder {
    fn partial(&self, level: u32) -> Result<ColaxDiagram> {
        ColaxDiagram::new(
            "mid",
            self.cx.clone(),
            self.base,
            level,
            self.val1.clone(),
            self.val2.clone(),
            self.colax.clone(),
        )
    }

    /// Completes mixed 2-cells whose endpoints are both settled, using the
    /// unique Reedy factorization.
    fn sweep_mixed(&mut self) -> Result<()> {
        let cx = self.cx.clone();
        for u in cx.two_cells() {
            if self.val2.contains_key(&u) || cx.is_id2(u) {
                continue;
            }
            let (s, t) = (cx.src2(u), cx.dst2(u));
            let s_done = cx.is_unit(s) || self.processed.contains(&s);
            let t_done = cx.is_unit(t) || self.processed.contains(&t);
            if !s_done || !t_done {
                continue;
            }
            let (inv, dir) = cx.reedy_factorize(u)?;
            let a = self.action_of(inv)?;
            let b = self.action_of(dir)?;
            self.val2.insert(u, compose(&a, &b)?);
        }
        Ok(())
    }

    fn action_of(&self, u: crate::groupement::TwoCell) -> Result<BaseArrow> {
        let cx = &self.cx;
        if cx.is_id2(u) {
            let z = cx.src2(u);
            let ob = if cx.is_unit(z) { self.base.unit() } else { self.val1[&z] };
            return Ok(BaseArrow::identity(self.base, &ob));
        }
        self.val2
            .get(&u)
            .cloned()
            .ok_or_else(|| Error::Internal(format!("mid action {} not built", cx.label2(u))))
    }
}

/// Factors an icon as a left-class icon followed by a right-class icon of
/// the named system, building the middle diagram degree by degree.
pub fn factor_icon(
    sigma: &Icon,
    md: &ModelData,
    sys: FactSystem,
) -> Result<(Icon, Arc<ColaxDiagram>, Icon)> {
    let f = &sigma.src;
    let g = &sigma.dst;
    let cx = f.cx.clone();
    require_divisible(&cx)?;
    let level = f.level;
    let mut mid = MidBuilder {
        cx: cx.clone(),
        base: f.base,
        val1: BTreeMap::new(),
        val2: BTreeMap::new(),
        colax: BTreeMap::new(),
        processed: Default::default(),
    };
    let mut lam: BTreeMap<OneCell, BaseArrow> = BTreeMap::new();
    let mut rho: BTreeMap<OneCell, BaseArrow> = BTreeMap::new();

    let cells: Vec<OneCell> =
        cx.one_cells_by_degree().into_iter().filter(|&z| cx.deg1(z) <= level).collect();
    let mut idx = 0;
    while idx < cells.len() {
        let d = cx.deg1(cells[idx]);
        // process the whole degree-d slice
        let mut j = idx;
        while j < cells.len() && cx.deg1(cells[j]) == d {
            let z = cells[j];
            if d == 0 {
                // no latching, no matching, no 2-cells: factor the component
                let (i, p) = md.factorize(&sigma.at(z), sys)?;
                mid.val1.insert(z, i.dst_ob());
                lam.insert(z, i);
                rho.insert(z, p);
                mid.processed.insert(z);
            } else {
                stage(&mut mid, sigma, md, sys, z, d, &mut lam, &mut rho)?;
            }
            j += 1;
        }
        // coherence audit of the freshly completed degree
        if d == 0 {
            let rep = validate_colax(&mid.partial(0)?);
            if !rep.passed() {
                return Err(Error::Internal("base stage incoherent".into()));
            }
        } else {
            let stage_data = StageData {
                val1: mid
                    .val1
                    .iter()
                    .filter(|(&c, _)| cx.deg1(c) == d)
                    .map(|(&c, &v)| (c, v))
                    .collect(),
                val2: mid
                    .val2
                    .iter()
                    .filter(|(&u, _)| cx.deg1(cx.src2(u)).max(cx.deg1(cx.dst2(u))) == d)
                    .map(|(&u, v)| (u, v.clone()))
                    .collect(),
                colax: mid
                    .colax
                    .iter()
                    .filter(|(&(s, t), _)| cx.deg1(s) + cx.deg1(t) == d)
                    .map(|(&p, v)| (p, v.clone()))
                    .collect(),
            };
            let base_diag = mid.partial(d - 1)?.truncate(d - 1)?;
            let rep = crate::colax::extend_check(&base_diag, &stage_data);
            if !rep.passed() {
                return Err(Error::Internal(format!(
                    "factorization stage at degree {d} is incoherent: {}",
                    rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
                )));
            }
        }
        idx = j;
    }
    let k = Arc::new(
        ColaxDiagram::new(
            format!("{}~mid", sigma.name),
            cx.clone(),
            f.base,
            level,
            mid.val1,
            mid.val2,
            mid.colax,
        )?
        .with_name(format!("{}~mid", sigma.name)),
    );
    let rep = validate_colax(&k);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "middle diagram incoherent: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    let lambda = Icon::new(format!("{}~left", sigma.name), f.clone(), k.clone(), lam)?;
    let rhoi = Icon::new(format!("{}~right", sigma.name), k.clone(), g.clone(), rho)?;
    for icon in [&lambda, &rhoi] {
        let r = validate_icon(icon);
        if !r.passed() {
            return Err(Error::Internal(format!(
                "factorization icon invalid: {}",
                r.first_failure().map(|x| x.instance.clone()).unwrap_or_default()
            )));
        }
    }
    // exactness
    let back = compose_icons(&lambda, &rhoi)?;
    for (z, c) in sigma.components() {
        if back.at(*z) != *c {
            return Err(Error::Internal(format!(
                "factorization does not compose back at {}",
                cx.label1(*z)
            )));
        }
    }
    Ok((lambda, k, rhoi))
}

#[allow(clippy::too_many_arguments)]
fn stage(
    mid: &mut MidBuilder,
    sigma: &Icon,
    md: &ModelData,
    sys: FactSystem,
    z: OneCell,
    d: u32,
    lam: &mut BTreeMap<OneCell, BaseArrow>,
    rho: &mut BTreeMap<OneCell, BaseArrow>,
) -> Result<()> {
    let f = &sigma.src;
    let g = &sigma.dst;
    let cx = mid.cx.clone();
    let k_prev = mid.partial(d - 1)?;
    let cm = canonical_map_iz(&k_prev, z)?;
    let lk = &cm.latching;
    let mk = &cm.matching;
    let i_k = &cm.map;
    let lf = colax_latching_object(f, z)?;
    let mg = colax_matching_object(g, z)?;
    let lf_to_fz = lf.to_value.clone().expect("source defined at z");
    let mg_from_gz = mg.from_value.clone().expect("target defined at z");

    // L(F,z) -> L(K,z) along lambda below
    let fd = latching_diagram(f, &lf.index)?;
    let llam = colimit_mediator(
        &fd,
        &Cocone { apex: lf.ob, legs: lf.legs.clone() },
        &Cocone {
            apex: lk.ob,
            legs: lf
                .index
                .alphas
                .iter()
                .enumerate()
                .map(|(o, &a)| {
                    let s = cx.src2(a);
                    let c = if cx.is_unit(s) {
                        BaseArrow::identity(f.base, &f.base.unit())
                    } else {
                        lam[&s].clone()
                    };
                    compose(&c, &lk.legs[o])
                })
                .collect::<Result<Vec<_>>>()?,
        },
    )?;
    let (apex_a, cocone_a) = crate::base::limits::pushout(f.base, &lf_to_fz, &llam)?;
    let span = FinDiagram::new(
        f.base,
        FinCat::span(),
        vec![lf.ob, f.val1_at(z), lk.ob],
        vec![lf_to_fz.clone(), llam],
    )?;

    // M(K,z) -> M(G,z) along rho below
    let gd = matching_diagram(g, &mg.index)?;
    let mrho = limit_mediator(
        &gd,
        &Cone { apex: mg.ob, legs: mg.legs.clone() },
        &Cone {
            apex: mk.ob,
            legs: mg
                .index
                .objs
                .iter()
                .enumerate()
                .map(|(o, obj)| {
                    let comps: Vec<BaseArrow> = obj
                        .parts
                        .iter()
                        .map(|&p| {
                            if cx.is_unit(p) {
                                BaseArrow::identity(f.base, &f.base.unit())
                            } else {
                                rho[&p].clone()
                            }
                        })
                        .collect();
                    compose(&mk.legs[o], &tensor_many(&comps))
                })
                .collect::<Result<Vec<_>>>()?,
        },
    )?;
    let (_apex_b, cone_b) = crate::base::limits::pullback(f.base, &mg_from_gz, &mrho)?;
    let cospan = FinDiagram::new(
        f.base,
        FinCat::cospan(),
        vec![g.val1_at(z), mk.ob, mg.ob],
        vec![mg_from_gz.clone(), mrho],
    )?;

    // A -> G z
    let lk_to_gz = {
        let kd = latching_diagram(&k_prev, &lk.index)?;
        colimit_mediator(
            &kd,
            &Cocone { apex: lk.ob, legs: lk.legs.clone() },
            &Cocone {
                apex: g.val1_at(z),
                legs: lk
                    .index
                    .alphas
                    .iter()
                    .map(|&a| {
                        let s = cx.src2(a);
                        let c = if cx.is_unit(s) {
                            BaseArrow::identity(f.base, &f.base.unit())
                        } else {
                            rho[&s].clone()
                        };
                        compose(&c, &g.val2_at(a))
                    })
                    .collect::<Result<Vec<_>>>()?,
            },
        )?
    };
    let leg_gz = colimit_mediator(
        &span,
        &cocone_a,
        &Cocone {
            apex: g.val1_at(z),
            legs: vec![compose(&lf_to_fz, &sigma.at(z))?, sigma.at(z), lk_to_gz],
        },
    )?;

    // A -> M(K,z)
    let f_to_mk = {
        let kd = matching_diagram(&k_prev, &mk.index)?;
        limit_mediator(
            &kd,
            &Cone { apex: mk.ob, legs: mk.legs.clone() },
            &Cone {
                apex: f.val1_at(z),
                legs: mk
                    .index
                    .objs
                    .iter()
                    .map(|obj| {
                        let into_f = matching_cone_component(f, obj)?;
                        let comps: Vec<BaseArrow> = obj
                            .parts
                            .iter()
                            .map(|&p| {
                                if cx.is_unit(p) {
                                    BaseArrow::identity(f.base, &f.base.unit())
                                } else {
                                    lam[&p].clone()
                                }
                            })
                            .collect();
                        compose(&into_f, &tensor_many(&comps))
                    })
                    .collect::<Result<Vec<_>>>()?,
            },
        )?
    };
    let leg_mk = colimit_mediator(
        &span,
        &cocone_a,
        &Cocone {
            apex: mk.ob,
            legs: vec![compose(&lf_to_fz, &f_to_mk)?, f_to_mk, i_k.clone()],
        },
    )?;
    let h = limit_mediator(
        &cospan,
        &cone_b,
        &Cone {
            apex: apex_a,
            legs: vec![leg_gz.clone(), leg_mk, compose(&leg_gz, &mg_from_gz)?],
        },
    )?;
    let (i, p) = md.factorize(&h, sys)?;
    mid.val1.insert(z, i.dst_ob());
    lam.insert(z, compose(&cocone_a.legs[1], &i)?);
    rho.insert(z, compose(&p, &cone_b.legs[0])?);
    let latch_to_k = compose(&cocone_a.legs[2], &i)?;
    let k_to_match = compose(&p, &cone_b.legs[1])?;
    // actions on direct 2-cells into z
    for (o, &a) in lk.index.alphas.iter().enumerate() {
        mid.val2.insert(a, compose(&lk.legs[o], &latch_to_k)?);
    }
    // actions on inverse 2-cells out of z, and colaxity maps at z
    for (o, obj) in mk.index.objs.iter().enumerate() {
        let leg = compose(&k_to_match, &mk.legs[o])?;
        if obj.parts.len() == 1 && !cx.is_id2(obj.beta) {
            mid.val2.insert(obj.beta, leg);
        } else if obj.parts.len() == 2 && cx.is_id2(obj.beta) {
            mid.colax.insert((obj.parts[0], obj.parts[1]), leg);
        }
    }
    // inverse cells into a unit are forced by naturality under rho
    for u in cx.two_cells() {
        if cx.src2(u) == z && cx.is_unit(cx.dst2(u)) && !cx.is_id2(u) && cx.is_inverse2(u) {
            mid.val2.insert(u, compose(&rho[&z], &g.val2_at(u))?);
        }
    }
    mid.processed.insert(z);
    mid.sweep_mixed()?;
    Ok(())
}

/// Outcome of a lifting problem between icon classes.
#[derive(Debug, Clone)]
pub enum LiftOutcome {
    Found(Icon),
    /// first 1-cell at which the base lifting problem has no solution
    Obstructed(OneCell),
}

/// Solves the square rho o top = bottom o lambda degree-wise; each stage
/// reduces to one base lifting problem between the relative latching map
/// of lambda and the relative matching map of rho.
pub fn lift_icon(
    lambda: &Icon,
    rho: &Icon,
    top: &Icon,
    bottom: &Icon,
    _md: &ModelData,
) -> Result<LiftOutcome> {
    let f = &lambda.src;
    let g = &lambda.dst;
    let p = &rho.src;
    let q = &rho.dst;
    let cx = f.cx.clone();
    require_divisible(&cx)?;
    // the square must commute
    for z in f.in_level_cells() {
        if cx.is_unit(z) {
            continue;
        }
        let lhs = compose(&top.at(z), &rho.at(z))?;
        let rhs = compose(&lambda.at(z), &bottom.at(z))?;
        if lhs != rhs {
            return Err(Error::Precondition(format!(
                "icon square does not commute at {}",
                cx.label1(z)
            )));
        }
    }
    let mut h: BTreeMap<OneCell, BaseArrow> = BTreeMap::new();
    for z in cx.one_cells_by_degree() {
        if cx.deg1(z) > f.level {
            continue;
        }
        let (_, cocone_a, latch_rel) = relative_latching(lambda, z)?;
        let (_, cone_b, match_rel) = relative_matching(rho, z)?;
        let lf = colax_latching_object(f, z)?;
        let lg = colax_latching_object(g, z)?;
        let lg_to_p = {
            let gd = latching_diagram(g, &lg.index)?;
            colimit_mediator(
                &gd,
                &Cocone { apex: lg.ob, legs: lg.legs.clone() },
                &Cocone {
                    apex: p.val1_at(z),
                    legs: lg
                        .index
                        .alphas
                        .iter()
                        .map(|&a| {
                            let s = cx.src2(a);
                            let hz = if cx.is_unit(s) {
                                BaseArrow::identity(f.base, &f.base.unit())
                            } else {
                                h[&s].clone()
                            };
                            compose(&hz, &p.val2_at(a))
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let span = {
            let llam = super::induced_latching(lambda, &lf, &lg)?;
            FinDiagram::new(
                f.base,
                FinCat::span(),
                vec![lf.ob, f.val1_at(z), lg.ob],
                vec![lf.to_value.clone().unwrap(), llam],
            )?
        };
        let top_prime = colimit_mediator(
            &span,
            &cocone_a,
            &Cocone {
                apex: p.val1_at(z),
                legs: vec![
                    compose(&lf.to_value.clone().unwrap(), &top.at(z))?,
                    top.at(z),
                    lg_to_p,
                ],
            },
        )?;
        let mp = colax_matching_object(p, z)?;
        let mq = colax_matching_object(q, z)?;
        let g_to_mp = {
            let pd = matching_diagram(p, &mp.index)?;
            limit_mediator(
                &pd,
                &Cone { apex: mp.ob, legs: mp.legs.clone() },
                &Cone {
                    apex: g.val1_at(z),
                    legs: mp
                        .index
                        .objs
                        .iter()
                        .map(|obj| {
                            let into_g = matching_cone_component(g, obj)?;
                            let comps: Vec<BaseArrow> = obj
                                .parts
                                .iter()
                                .map(|&c| {
                                    if cx.is_unit(c) {
                                        BaseArrow::identity(f.base, &f.base.unit())
                                    } else {
                                        h[&c].clone()
                                    }
                                })
                                .collect();
                            compose(&into_g, &tensor_many(&comps))
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let cospan = {
            let msig = super::induced_matching(rho, &mp, &mq)?;
            FinDiagram::new(
                p.base,
                FinCat::cospan(),
                vec![q.val1_at(z), mp.ob, mq.ob],
                vec![mq.from_value.clone().unwrap(), msig],
            )?
        };
        let bottom_prime = limit_mediator(
            &cospan,
            &cone_b,
            &Cone {
                apex: g.val1_at(z),
                legs: vec![
                    bottom.at(z),
                    g_to_mp,
                    compose(&bottom.at(z), &mq.from_value.clone().unwrap())?,
                ],
            },
        )?;
        let sq = LiftSquare { i: latch_rel, p: match_rel, top: top_prime, bottom: bottom_prime };
        match find_lift(&sq)? {
            None => return Ok(LiftOutcome::Obstructed(z)),
            Some(hz) => {
                h.insert(z, hz);
            }
        }
    }
    let icon = Icon::new(
        format!("lift({},{})", lambda.name, rho.name),
        lambda.dst.clone(),
        rho.src.clone(),
        h,
    )?;
    let rep = validate_icon(&icon);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "assembled lift is not an icon: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(LiftOutcome::Found(icon))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::groupement::build_delta_plus;

    #[test]
    fn factor_identity_icon() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinVect { p: 2 }, 2));
        let icon = Icon::identity(&f);
        let md = ModelData::for_base(Base::FinVect { p: 2 });
        for sys in FactSystem::all() {
            let (lam, _k, rho) = factor_icon(&icon, &md, sys).unwrap();
            let back = compose_icons(&lam, &rho).unwrap();
            for (z, c) in icon.components() {
                assert_eq!(back.at(*z), *c);
            }
        }
    }

    #[test]
    fn lift_with_identity_left() {
        let cx = Arc::new(build_delta_plus(2));
        let f = Arc::new(ColaxDiagram::constant_unit(cx, Base::FinSet, 2));
        let id = Icon::identity(&f);
        let md = ModelData::for_base(Base::FinSet);
        match lift_icon(&id, &id, &id, &id, &md).unwrap() {
            LiftOutcome::Found(h) => {
                for (z, c) in id.components() {
                    assert_eq!(h.at(*z), *c);
                }
            }
            LiftOutcome::Obstructed(_) => panic!("identity square must lift"),
        }
    }
}
