//! Classical Reedy machinery for plain 1-diagrams on a Reedy category.
//!
//! This is a deliberately separate implementation used as an oracle: the
//! two-object groupement built from a Reedy category carries the same
//! diagrams as functors here, and latching/matching objects,
//! classifications, and factorizations must agree with the colax path.

use crate::base::limits::{
    colimit_mediator, finite_colimit, finite_limit, limit_mediator, pullback, pushout, Cocone, Cone,
    FinDiagram,
};
use crate::base::model::{find_lift, FactSystem, LiftSquare, ModelData};
use crate::base::{compose, BaseArrow, BaseObject};
use crate::colax::{ColaxDiagram, Icon};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::groupement::{build_from_reedy1, TwoGroupement};
use crate::reedy::ReedyCat;
use crate::report::Report;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A functor from a Reedy category into the base.
#[derive(Debug, Clone)]
pub struct Diagram1 {
    pub name: String,
    pub r: Arc<ReedyCat>,
    pub base: crate::base::Base,
    pub ob: Vec<BaseObject>,
    pub arr: Vec<BaseArrow>,
}

impl Diagram1 {
    pub fn validate(&self) -> Report {
        let mut report = Report::new(format!("diagram1:{}", self.name));
        match FinDiagram::from_parts(self.base, self.r.cat.clone(), self.ob.clone(), self.arr.clone())
        {
            Err(e) => report.fail("shape", &self.name, e.to_string()),
            Ok(d) => {
                if !d.is_functorial() {
                    report.fail("functorial", &self.name, "composition or identities violated");
                }
            }
        }
        report.pass_if_clean("diagram1", &self.name);
        report
    }

    fn fin_diagram(&self) -> Result<FinDiagram> {
        FinDiagram::from_parts(self.base, self.r.cat.clone(), self.ob.clone(), self.arr.clone())
    }
}

/// A natural transformation between two 1-diagrams on the same shape.
#[derive(Debug, Clone)]
pub struct Nat1 {
    pub name: String,
    pub src: Arc<Diagram1>,
    pub dst: Arc<Diagram1>,
    pub comp: Vec<BaseArrow>,
}

impl Nat1 {
    pub fn validate(&self) -> Report {
        let mut report = Report::new(format!("nat1:{}", self.name));
        for (i, a) in self.src.r.cat.arrows.iter().enumerate() {
            let lhs = compose(&self.src.arr[i], &self.comp[a.dst]);
            let rhs = compose(&self.comp[a.src], &self.dst.arr[i]);
            if lhs.is_err() || lhs.unwrap() != rhs.unwrap() {
                report.fail("naturality", &a.label, "square does not commute");
            }
        }
        report.pass_if_clean("nat1", &self.name);
        report
    }

    pub fn identity(d: &Arc<Diagram1>) -> Nat1 {
        Nat1 {
            name: format!("id:{}", d.name),
            src: d.clone(),
            dst: d.clone(),
            comp: d.ob.iter().map(|o| BaseArrow::identity(d.base, o)).collect(),
        }
    }
}

pub fn compose_nats(first: &Nat1, second: &Nat1) -> Result<Nat1> {
    let comp = first
        .comp
        .iter()
        .zip(&second.comp)
        .map(|(f, g)| compose(f, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(Nat1 {
        name: format!("{};{}", first.name, second.name),
        src: first.src.clone(),
        dst: second.dst.clone(),
        comp,
    })
}

pub struct Latching1 {
    /// non-identity direct arrows into z, in arrow order
    pub alphas: Vec<usize>,
    pub cat: FinCat,
    pub betas: Vec<usize>,
    pub ob: BaseObject,
    pub legs: Vec<BaseArrow>,
    pub to_value: BaseArrow,
}

pub struct Matching1 {
    /// non-identity inverse arrows out of z, in arrow order
    pub betas: Vec<usize>,
    pub cat: FinCat,
    pub mors: Vec<usize>,
    pub ob: BaseObject,
    pub legs: Vec<BaseArrow>,
    pub from_value: BaseArrow,
}

fn latching_index1(r: &ReedyCat, z: usize) -> Result<(Vec<usize>, FinCat, Vec<usize>)> {
    let mut alphas = Vec::new();
    for i in 0..r.cat.arrows.len() {
        if r.cat.arrows[i].dst == z && r.is_direct(i) && !r.cat.is_identity(i) {
            alphas.push(i);
        }
    }
    let mut cat = FinCat::new(alphas.iter().map(|&a| r.cat.arrows[a].label.clone()).collect());
    let mut betas: Vec<usize> = alphas.iter().map(|&a| r.cat.identity[r.cat.arrows[a].src]).collect();
    for (o1, &a1) in alphas.iter().enumerate() {
        for (o2, &a2) in alphas.iter().enumerate() {
            for b in 0..r.cat.arrows.len() {
                if r.cat.is_identity(b) || !r.is_direct(b) {
                    continue;
                }
                if r.cat.arrows[b].src != r.cat.arrows[a1].src
                    || r.cat.arrows[b].dst != r.cat.arrows[a2].src
                {
                    continue;
                }
                if r.cat.then(b, a2) == Some(a1) {
                    cat.add_arrow(r.cat.arrows[b].label.clone(), o1, o2);
                    betas.push(b);
                }
            }
        }
    }
    let betas2 = betas.clone();
    let rr = r.clone();
    cat.build_compose_with(move |c, f, g| {
        let comp = rr
            .cat
            .then(betas2[f], betas2[g])
            .ok_or_else(|| Error::Internal("latching morphisms do not compose".into()))?;
        if rr.cat.is_identity(comp) {
            return Ok(c.identity[c.arrows[f].src]);
        }
        (0..c.arrows.len())
            .find(|&i| {
                c.arrows[i].src == c.arrows[f].src
                    && c.arrows[i].dst == c.arrows[g].dst
                    && betas2[i] == comp
            })
            .ok_or_else(|| Error::Internal("latching index not closed".into()))
    })?;
    Ok((alphas, cat, betas))
}

fn matching_index1(r: &ReedyCat, z: usize) -> Result<(Vec<usize>, FinCat, Vec<usize>)> {
    let mut objs = Vec::new();
    for i in 0..r.cat.arrows.len() {
        if r.cat.arrows[i].src == z && r.is_inverse(i) && !r.cat.is_identity(i) {
            objs.push(i);
        }
    }
    let mut cat = FinCat::new(objs.iter().map(|&b| r.cat.arrows[b].label.clone()).collect());
    let mut mors: Vec<usize> = objs.iter().map(|&b| r.cat.identity[r.cat.arrows[b].dst]).collect();
    for (o1, &b1) in objs.iter().enumerate() {
        for (o2, &b2) in objs.iter().enumerate() {
            for u in 0..r.cat.arrows.len() {
                if r.cat.is_identity(u) || !r.is_inverse(u) {
                    continue;
                }
                if r.cat.arrows[u].src != r.cat.arrows[b1].dst
                    || r.cat.arrows[u].dst != r.cat.arrows[b2].dst
                {
                    continue;
                }
                if r.cat.then(b1, u) == Some(b2) {
                    cat.add_arrow(r.cat.arrows[u].label.clone(), o1, o2);
                    mors.push(u);
                }
            }
        }
    }
    let mors2 = mors.clone();
    let rr = r.clone();
    cat.build_compose_with(move |c, f, g| {
        let comp = rr
            .cat
            .then(mors2[f], mors2[g])
            .ok_or_else(|| Error::Internal("matching morphisms do not compose".into()))?;
        if rr.cat.is_identity(comp) {
            return Ok(c.identity[c.arrows[f].src]);
        }
        (0..c.arrows.len())
            .find(|&i| {
                c.arrows[i].src == c.arrows[f].src
                    && c.arrows[i].dst == c.arrows[g].dst
                    && mors2[i] == comp
            })
            .ok_or_else(|| Error::Internal("matching index not closed".into()))
    })?;
    Ok((objs, cat, mors))
}

fn latching_diagram1(d: &Diagram1, alphas: &[usize], cat: &FinCat, betas: &[usize]) -> Result<FinDiagram> {
    FinDiagram::from_parts(
        d.base,
        cat.clone(),
        alphas.iter().map(|&a| d.ob[d.r.cat.arrows[a].src]).collect(),
        betas.iter().map(|&b| d.arr[b].clone()).collect(),
    )
}

fn matching_diagram1(d: &Diagram1, objs: &[usize], cat: &FinCat, mors: &[usize]) -> Result<FinDiagram> {
    FinDiagram::from_parts(
        d.base,
        cat.clone(),
        objs.iter().map(|&b| d.ob[d.r.cat.arrows[b].dst]).collect(),
        mors.iter().map(|&u| d.arr[u].clone()).collect(),
    )
}

pub fn latching1(d: &Diagram1, z: usize) -> Result<Latching1> {
    let (alphas, cat, betas) = latching_index1(&d.r, z)?;
    let fd = latching_diagram1(d, &alphas, &cat, &betas)?;
    let (lob, cocone) = finite_colimit(&fd);
    let test = Cocone { apex: d.ob[z], legs: alphas.iter().map(|&a| d.arr[a].clone()).collect() };
    let to_value = colimit_mediator(&fd, &cocone, &test)?;
    Ok(Latching1 { alphas, cat, betas, ob: lob, legs: cocone.legs, to_value })
}

pub fn matching1(d: &Diagram1, z: usize) -> Result<Matching1> {
    let (objs, cat, mors) = matching_index1(&d.r, z)?;
    let fd = matching_diagram1(d, &objs, &cat, &mors)?;
    let (mob, cone) = finite_limit(&fd);
    let test = Cone { apex: d.ob[z], legs: objs.iter().map(|&b| d.arr[b].clone()).collect() };
    let from_value = limit_mediator(&fd, &cone, &test)?;
    Ok(Matching1 { betas: objs, cat, mors, ob: mob, legs: cone.legs, from_value })
}

/// The arrow L(F,z) -> L(G,z) induced by components at lower objects.
fn induced_latching1(
    f: &Diagram1,
    lf: &Latching1,
    lg: &Latching1,
    comp_at: &dyn Fn(usize) -> BaseArrow,
) -> Result<BaseArrow> {
    let fd = latching_diagram1(f, &lf.alphas, &lf.cat, &lf.betas)?;
    let legs = lf
        .alphas
        .iter()
        .enumerate()
        .map(|(o, &a)| compose(&comp_at(f.r.cat.arrows[a].src), &lg.legs[o]))
        .collect::<Result<Vec<_>>>()?;
    colimit_mediator(&fd, &Cocone { apex: lf.ob, legs: lf.legs.clone() }, &Cocone { apex: lg.ob, legs })
}

/// The arrow M(F,z) -> M(G,z) induced by components at lower objects.
fn induced_matching1(
    g: &Diagram1,
    mf: &Matching1,
    mg: &Matching1,
    comp_at: &dyn Fn(usize) -> BaseArrow,
) -> Result<BaseArrow> {
    let gd = matching_diagram1(g, &mg.betas, &mg.cat, &mg.mors)?;
    let legs = mg
        .betas
        .iter()
        .enumerate()
        .map(|(o, &b)| compose(&mf.legs[o], &comp_at(g.r.cat.arrows[b].dst)))
        .collect::<Result<Vec<_>>>()?;
    limit_mediator(&gd, &Cone { apex: mg.ob, legs: mg.legs.clone() }, &Cone { apex: mf.ob, legs })
}

/// Relative latching map at z; also returns the pushout cocone (legs
/// ordered L(F,z), F z, L(G,z)).
pub fn relative_latching1(nat: &Nat1, z: usize) -> Result<(BaseObject, Cocone, BaseArrow)> {
    let f = &nat.src;
    let g = &nat.dst;
    let lf = latching1(f, z)?;
    let lg = latching1(g, z)?;
    let comp = nat.comp.clone();
    let lsig = induced_latching1(f, &lf, &lg, &move |s| comp[s].clone())?;
    let (apex, cocone) = pushout(f.base, &lf.to_value, &lsig)?;
    let span = FinDiagram::new(
        f.base,
        FinCat::span(),
        vec![lf.ob, f.ob[z], lg.ob],
        vec![lf.to_value.clone(), lsig],
    )?;
    let rel = colimit_mediator(
        &span,
        &cocone,
        &Cocone {
            apex: g.ob[z],
            legs: vec![compose(&lf.to_value, &nat.comp[z])?, nat.comp[z].clone(), lg.to_value],
        },
    )?;
    Ok((apex, cocone, rel))
}

/// Relative matching map at z; also returns the pullback cone (legs
/// ordered G z, M(F,z), M(G,z)).
pub fn relative_matching1(nat: &Nat1, z: usize) -> Result<(BaseObject, Cone, BaseArrow)> {
    let f = &nat.src;
    let g = &nat.dst;
    let mf = matching1(f, z)?;
    let mg = matching1(g, z)?;
    let comp = nat.comp.clone();
    let msig = induced_matching1(g, &mf, &mg, &move |t| comp[t].clone())?;
    let (apex, cone) = pullback(f.base, &mg.from_value, &msig)?;
    let cospan = FinDiagram::new(
        f.base,
        FinCat::cospan(),
        vec![g.ob[z], mf.ob, mg.ob],
        vec![mg.from_value.clone(), msig],
    )?;
    let rel = limit_mediator(
        &cospan,
        &cone,
        &Cone {
            apex: f.ob[z],
            legs: vec![
                nat.comp[z].clone(),
                mf.from_value.clone(),
                compose(&nat.comp[z], &mg.from_value)?,
            ],
        },
    )?;
    Ok((apex, cone, rel))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification1 {
    pub is_we: bool,
    pub is_cof: bool,
    pub is_fib: bool,
}

pub fn classify1(nat: &Nat1, md: &ModelData) -> Result<Classification1> {
    let mut c = Classification1 { is_we: true, is_cof: true, is_fib: true };
    for comp in &nat.comp {
        c.is_we &= md.is_we(comp);
    }
    for z in 0..nat.src.r.cat.objects.len() {
        let (_, _, lr) = relative_latching1(nat, z)?;
        let (_, _, mr) = relative_matching1(nat, z)?;
        c.is_cof &= md.is_cof(&lr);
        c.is_fib &= md.is_fib(&mr);
    }
    Ok(c)
}

/// Objects in increasing (degree, label) order; the induction order.
fn stage_order(r: &ReedyCat) -> Vec<usize> {
    let mut order: Vec<usize> = (0..r.cat.objects.len()).collect();
    order.sort_by_key(|&i| (r.degree[i], r.cat.objects[i].clone()));
    order
}

/// Classical inductive Reedy factorization of a natural transformation.
pub fn factorize1(
    nat: &Nat1,
    md: &ModelData,
    sys: FactSystem,
) -> Result<(Nat1, Arc<Diagram1>, Nat1)> {
    let f = &nat.src;
    let g = &nat.dst;
    let r = f.r.clone();
    let n = r.cat.objects.len();
    let mut k_ob: Vec<Option<BaseObject>> = vec![None; n];
    let mut lam: Vec<Option<BaseArrow>> = vec![None; n];
    let mut rho: Vec<Option<BaseArrow>> = vec![None; n];
    let mut k_arr: BTreeMap<usize, BaseArrow> = BTreeMap::new();
    let mut processed = vec![false; n];

    for &z in &stage_order(&r) {
        // middle diagram so far; unbuilt slots are placeholders that are
        // never consulted because latching/matching stay strictly below z
        let m = Diagram1 {
            name: "mid".into(),
            r: r.clone(),
            base: f.base,
            ob: (0..n).map(|i| k_ob[i].unwrap_or(f.ob[i])).collect(),
            arr: (0..r.cat.arrows.len())
                .map(|i| {
                    if r.cat.is_identity(i) {
                        BaseArrow::identity(f.base, &k_ob[r.cat.arrows[i].src].unwrap_or(f.ob[r.cat.arrows[i].src]))
                    } else {
                        k_arr.get(&i).cloned().unwrap_or_else(|| f.arr[i].clone())
                    }
                })
                .collect(),
        };
        let lk = latching1(&m, z)?;
        let mk = matching1(&m, z)?;
        let lf = latching1(f, z)?;
        let mg = matching1(g, z)?;
        // L(F,z) -> L(K,z) along lambda below
        let lam_now = lam.clone();
        let llam = induced_latching1(f, &lf, &lk, &move |s| lam_now[s].clone().expect("lambda below"))?;
        let (apex_a, cocone_a) = pushout(f.base, &lf.to_value, &llam)?;
        let span = FinDiagram::new(
            f.base,
            FinCat::span(),
            vec![lf.ob, f.ob[z], lk.ob],
            vec![lf.to_value.clone(), llam],
        )?;
        // M(K,z) -> M(G,z) along rho below
        let rho_now = rho.clone();
        let mrho = induced_matching1(g, &mk, &mg, &move |t| rho_now[t].clone().expect("rho below"))?;
        let (apex_b, cone_b) = pullback(f.base, &mg.from_value, &mrho)?;
        let cospan = FinDiagram::new(
            f.base,
            FinCat::cospan(),
            vec![g.ob[z], mk.ob, mg.ob],
            vec![mg.from_value.clone(), mrho],
        )?;
        // A -> G z
        let lk_to_gz = {
            let kd = latching_diagram1(&m, &lk.alphas, &lk.cat, &lk.betas)?;
            colimit_mediator(
                &kd,
                &Cocone { apex: lk.ob, legs: lk.legs.clone() },
                &Cocone {
                    apex: g.ob[z],
                    legs: lk
                        .alphas
                        .iter()
                        .map(|&a| {
                            let s = r.cat.arrows[a].src;
                            compose(&rho[s].clone().expect("rho below"), &g.arr[a])
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let leg_gz = colimit_mediator(
            &span,
            &cocone_a,
            &Cocone {
                apex: g.ob[z],
                legs: vec![compose(&lf.to_value, &nat.comp[z])?, nat.comp[z].clone(), lk_to_gz],
            },
        )?;
        // A -> M(K,z)
        let f_to_mk = {
            let kd = matching_diagram1(&m, &mk.betas, &mk.cat, &mk.mors)?;
            limit_mediator(
                &kd,
                &Cone { apex: mk.ob, legs: mk.legs.clone() },
                &Cone {
                    apex: f.ob[z],
                    legs: mk
                        .betas
                        .iter()
                        .map(|&b| {
                            let t = r.cat.arrows[b].dst;
                            compose(&f.arr[b], &lam[t].clone().expect("lambda below"))
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let i_k = compose(&lk.to_value, &mk.from_value)?;
        let leg_mk = colimit_mediator(
            &span,
            &cocone_a,
            &Cocone {
                apex: mk.ob,
                legs: vec![compose(&lf.to_value, &f_to_mk)?, f_to_mk, i_k],
            },
        )?;
        let h = limit_mediator(
            &cospan,
            &cone_b,
            &Cone {
                apex: apex_a,
                legs: vec![leg_gz.clone(), leg_mk, compose(&leg_gz, &mg.from_value)?],
            },
        )?;
        let _ = apex_b;
        let (i, p) = md.factorize(&h, sys)?;
        k_ob[z] = Some(i.dst_ob());
        lam[z] = Some(compose(&cocone_a.legs[1], &i)?);
        rho[z] = Some(compose(&p, &cone_b.legs[0])?);
        let latch_to_k = compose(&cocone_a.legs[2], &i)?; // L(K,z) -> K z
        let k_to_match = compose(&p, &cone_b.legs[1])?; // K z -> M(K,z)
        for (o, &a) in lk.alphas.iter().enumerate() {
            k_arr.insert(a, compose(&lk.legs[o], &latch_to_k)?);
        }
        for (o, &b) in mk.betas.iter().enumerate() {
            k_arr.insert(b, compose(&k_to_match, &mk.legs[o])?);
        }
        processed[z] = true;
        // genuinely mixed arrows whose endpoints are both settled
        for u in 0..r.cat.arrows.len() {
            if k_arr.contains_key(&u) || r.cat.is_identity(u) {
                continue;
            }
            let (src, dst) = (r.cat.arrows[u].src, r.cat.arrows[u].dst);
            if !processed[src] || !processed[dst] {
                continue;
            }
            let (inv, dir) = r.factorize(u)?;
            let ki = if r.cat.is_identity(inv) { None } else { k_arr.get(&inv).cloned() };
            let kd = if r.cat.is_identity(dir) { None } else { k_arr.get(&dir).cloned() };
            match (ki, kd) {
                (Some(a), Some(b)) => {
                    k_arr.insert(u, compose(&a, &b)?);
                }
                _ => {
                    return Err(Error::Internal(format!(
                        "factorization parts of {} not built",
                        r.cat.arrows[u].label
                    )))
                }
            }
        }
    }
    let ob: Vec<BaseObject> = k_ob.into_iter().map(|o| o.unwrap()).collect();
    let kdiag = Arc::new(Diagram1 {
        name: format!("{}~mid", nat.name),
        r: r.clone(),
        base: f.base,
        ob: ob.clone(),
        arr: (0..r.cat.arrows.len())
            .map(|i| {
                if r.cat.is_identity(i) {
                    BaseArrow::identity(f.base, &ob[r.cat.arrows[i].src])
                } else {
                    k_arr[&i].clone()
                }
            })
            .collect(),
    });
    let lambda = Nat1 {
        name: format!("{}~left", nat.name),
        src: nat.src.clone(),
        dst: kdiag.clone(),
        comp: lam.into_iter().map(|c| c.unwrap()).collect(),
    };
    let rho = Nat1 {
        name: format!("{}~right", nat.name),
        src: kdiag.clone(),
        dst: nat.dst.clone(),
        comp: rho.into_iter().map(|c| c.unwrap()).collect(),
    };
    Ok((lambda, kdiag, rho))
}

/// Lifts a commuting square of natural transformations degree by degree.
/// Returns the diagonal or the first obstructed object.
pub fn lift1(
    lambda: &Nat1,
    rho: &Nat1,
    top: &Nat1,
    bottom: &Nat1,
) -> Result<std::result::Result<Nat1, usize>> {
    let f = &lambda.src;
    let g = &lambda.dst;
    let p = &rho.src;
    let q = &rho.dst;
    let r = f.r.clone();
    let n = r.cat.objects.len();
    let mut h: Vec<Option<BaseArrow>> = vec![None; n];
    for &z in &stage_order(&r) {
        let (_, cocone_a, latch_rel) = relative_latching1(lambda, z)?;
        let (_, cone_b, match_rel) = relative_matching1(rho, z)?;
        let lg = latching1(g, z)?;
        let h_now = h.clone();
        let lg_to_p = {
            let gd = latching_diagram1(g, &lg.alphas, &lg.cat, &lg.betas)?;
            colimit_mediator(
                &gd,
                &Cocone { apex: lg.ob, legs: lg.legs.clone() },
                &Cocone {
                    apex: p.ob[z],
                    legs: lg
                        .alphas
                        .iter()
                        .map(|&a| {
                            let s = r.cat.arrows[a].src;
                            compose(&h_now[s].clone().expect("h below"), &p.arr[a])
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let lf = latching1(f, z)?;
        let span = {
            let comp = lambda.comp.clone();
            let lsig = induced_latching1(f, &lf, &lg, &move |s| comp[s].clone())?;
            FinDiagram::new(
                f.base,
                FinCat::span(),
                vec![lf.ob, f.ob[z], lg.ob],
                vec![lf.to_value.clone(), lsig],
            )?
        };
        let top_prime = colimit_mediator(
            &span,
            &cocone_a,
            &Cocone {
                apex: p.ob[z],
                legs: vec![compose(&lf.to_value, &top.comp[z])?, top.comp[z].clone(), lg_to_p],
            },
        )?;
        let mp = matching1(p, z)?;
        let mq = matching1(q, z)?;
        let g_to_mp = {
            let pd = matching_diagram1(p, &mp.betas, &mp.cat, &mp.mors)?;
            limit_mediator(
                &pd,
                &Cone { apex: mp.ob, legs: mp.legs.clone() },
                &Cone {
                    apex: g.ob[z],
                    legs: mp
                        .betas
                        .iter()
                        .map(|&b| {
                            let t = r.cat.arrows[b].dst;
                            compose(&g.arr[b], &h_now[t].clone().expect("h below"))
                        })
                        .collect::<Result<Vec<_>>>()?,
                },
            )?
        };
        let cospan = {
            let comp = rho.comp.clone();
            let msig = induced_matching1(q, &mp, &mq, &move |t| comp[t].clone())?;
            FinDiagram::new(
                p.base,
                FinCat::cospan(),
                vec![q.ob[z], mp.ob, mq.ob],
                vec![mq.from_value.clone(), msig],
            )?
        };
        let bottom_prime = limit_mediator(
            &cospan,
            &cone_b,
            &Cone {
                apex: g.ob[z],
                legs: vec![bottom.comp[z].clone(), g_to_mp, compose(&bottom.comp[z], &mq.from_value)?],
            },
        )?;
        let sq = LiftSquare { i: latch_rel, p: match_rel, top: top_prime, bottom: bottom_prime };
        match find_lift(&sq)? {
            None => return Ok(Err(z)),
            Some(hz) => h[z] = Some(hz),
        }
    }
    Ok(Ok(Nat1 {
        name: format!("lift({},{})", lambda.name, rho.name),
        src: lambda.dst.clone(),
        dst: rho.src.clone(),
        comp: h.into_iter().map(|c| c.unwrap()).collect(),
    }))
}

/// A 1-diagram as the equivalent colax diagram on the two-object
/// groupement carrying its Reedy category.
pub fn to_colax(d: &Diagram1, cx: &Arc<TwoGroupement>) -> Result<ColaxDiagram> {
    let hom = cx.hom(0, 1);
    let mut val1 = BTreeMap::new();
    let mut val2 = BTreeMap::new();
    for (i, label) in hom.cat.objects.iter().enumerate() {
        let bi = d
            .r
            .cat
            .object_by_label(label)
            .ok_or_else(|| Error::Domain(format!("object {label} missing from the diagram shape")))?;
        val1.insert(crate::groupement::OneCell { a: 0, b: 1, i }, d.ob[bi]);
    }
    for (i, arr) in hom.cat.arrows.iter().enumerate() {
        if hom.cat.identity[arr.src] == i && arr.src == arr.dst {
            continue;
        }
        let bi = d
            .r
            .cat
            .arrow_by_label(&arr.label)
            .ok_or_else(|| Error::Domain(format!("arrow {} missing", arr.label)))?;
        val2.insert(crate::groupement::TwoCell { a: 0, b: 1, i }, d.arr[bi].clone());
    }
    ColaxDiagram::new(d.name.clone(), cx.clone(), d.base, cx.bound, val1, val2, BTreeMap::new())
}

pub fn nat_to_icon(nat: &Nat1, cx: &Arc<TwoGroupement>) -> Result<Icon> {
    let src = Arc::new(to_colax(&nat.src, cx)?);
    let dst = Arc::new(to_colax(&nat.dst, cx)?);
    let hom = cx.hom(0, 1);
    let mut comp = BTreeMap::new();
    for (i, label) in hom.cat.objects.iter().enumerate() {
        let bi = nat
            .src
            .r
            .cat
            .object_by_label(label)
            .ok_or_else(|| Error::Domain(format!("object {label} missing")))?;
        comp.insert(crate::groupement::OneCell { a: 0, b: 1, i }, nat.comp[bi].clone());
    }
    Icon::new(nat.name.clone(), src, dst, comp)
}

/// The groupement a 1-diagram family lives on.
pub fn groupement_of(r: &ReedyCat, name: &str) -> Arc<TwoGroupement> {
    Arc::new(build_from_reedy1(r, name))
}

/// Sanity check helper: a diagram as a FinDiagram (used by tests).
pub fn as_fin_diagram(d: &Diagram1) -> Result<FinDiagram> {
    d.fin_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::Base;
    use crate::reedy::examples;

    fn arrow_diagram(a: usize, c: usize, table: Vec<usize>) -> Arc<Diagram1> {
        let r = Arc::new(examples::walking_arrow());
        Arc::new(Diagram1 {
            name: format!("F{a}{c}"),
            r: r.clone(),
            base: Base::FinSet,
            ob: vec![
                BaseObject::FinSet { size: a },
                BaseObject::FinSet { size: c },
            ],
            arr: vec![
                BaseArrow::identity(Base::FinSet, &BaseObject::FinSet { size: a }),
                BaseArrow::identity(Base::FinSet, &BaseObject::FinSet { size: c }),
                BaseArrow::finset(a, c, table).unwrap(),
            ],
        })
    }

    #[test]
    fn walking_arrow_latching_matching() {
        let d = arrow_diagram(2, 3, vec![0, 2]);
        assert!(d.validate().passed());
        // latching at the target is the source object; matching is terminal
        let l = latching1(&d, 1).unwrap();
        assert_eq!(l.ob, BaseObject::FinSet { size: 2 });
        let m = matching1(&d, 1).unwrap();
        assert_eq!(m.ob, BaseObject::FinSet { size: 1 });
        let l0 = latching1(&d, 0).unwrap();
        assert_eq!(l0.ob, BaseObject::FinSet { size: 0 });
    }

    #[test]
    fn factorize_walking_arrow_ofs() {
        let f = arrow_diagram(2, 2, vec![1, 1]);
        let g = arrow_diagram(3, 1, vec![0, 1, 2]);
        // one natural transformation: components (any commuting pair)
        let nat = Nat1 {
            name: "t".into(),
            src: f.clone(),
            dst: g.clone(),
            comp: vec![
                BaseArrow::finset(2, 3, vec![0, 2]).unwrap(),
                BaseArrow::finset(2, 1, vec![0, 0]).unwrap(),
            ],
        };
        assert!(nat.validate().passed());
        let md = ModelData::for_base(Base::FinSet);
        let (lam, k, rho) = factorize1(&nat, &md, FactSystem::Ofs).unwrap();
        assert!(k.validate().passed(), "{}", k.validate().to_text());
        assert!(lam.validate().passed());
        assert!(rho.validate().passed());
        let back = compose_nats(&lam, &rho).unwrap();
        assert_eq!(back.comp, nat.comp);
        // classes: relative latching of lam surjective, relative matching of rho injective
        for z in 0..2 {
            let (_, _, lr) = relative_latching1(&lam, z).unwrap();
            assert!(lr.is_surjective());
            let (_, _, mr) = relative_matching1(&rho, z).unwrap();
            assert!(mr.is_injective());
        }
    }

    #[test]
    fn lift_identity_left() {
        let f = arrow_diagram(2, 3, vec![0, 2]);
        let id = Nat1::identity(&f);
        let lifted = lift1(&id, &id, &id, &id).unwrap();
        assert!(lifted.is_ok());
    }
}
