//! The model-axiom verifier: runs two-out-of-three, class closure,
//! factorization, and lifting certificates over a seeded family of icons,
//! and cross-checks verdicts against the classical implementations where
//! one applies.

use super::classical;
use super::factor::{factor_icon, lift_icon, LiftOutcome};
use super::{classify, relative_maps};
use crate::base::model::{FactSystem, ModelData};
use crate::base::Base;
use crate::colax::{compose_icons, ColaxDiagram, Icon};
use crate::error::Result;
use crate::groupement::{GroupementKind, TwoGroupement};
use crate::report::Report;
use crate::sample::{enumerate_icons, random_diagram, random_icon, rng_from_seed};
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct VerifySpec {
    pub cx: Arc<TwoGroupement>,
    pub base: Base,
    pub model: ModelData,
    pub max_size: usize,
    pub seed: u64,
    pub diagrams: usize,
    pub icons: usize,
    pub parallel: bool,
}

impl VerifySpec {
    pub fn new(cx: Arc<TwoGroupement>, base: Base) -> VerifySpec {
        VerifySpec {
            cx,
            base,
            model: ModelData::for_base(base),
            max_size: 2,
            seed: 1,
            diagrams: 6,
            icons: 24,
            parallel: false,
        }
    }
}

/// A seeded family of diagrams and icons, including composable chains.
pub struct IconFamily {
    pub diagrams: Vec<Arc<ColaxDiagram>>,
    pub icons: Vec<Icon>,
    /// indices of composable icon pairs (first, second)
    pub composable: Vec<(usize, usize)>,
}

pub fn seeded_family(spec: &VerifySpec) -> Result<IconFamily> {
    let mut rng = rng_from_seed(spec.seed);
    let level = spec.cx.bound;
    let mut diagrams = Vec::new();
    diagrams.push(Arc::new(ColaxDiagram::constant_unit(spec.cx.clone(), spec.base, level)));
    while diagrams.len() < spec.diagrams {
        diagrams.push(random_diagram(&spec.cx, spec.base, level, spec.max_size, &mut rng)?);
    }
    let mut icons = Vec::new();
    for d in &diagrams {
        icons.push(Icon::identity(d));
    }
    let mut attempts = 0;
    while icons.len() < spec.icons && attempts < spec.icons * 20 {
        attempts += 1;
        let f = &diagrams[rng_usize(&mut rng, diagrams.len())];
        let g = &diagrams[rng_usize(&mut rng, diagrams.len())];
        if let Some(icon) = random_icon(f, g, &mut rng)? {
            icons.push(icon);
        }
    }
    let mut composable = Vec::new();
    for (i, a) in icons.iter().enumerate() {
        for (j, b) in icons.iter().enumerate() {
            if a.dst.same_tables(&b.src) {
                composable.push((i, j));
            }
        }
    }
    Ok(IconFamily { diagrams, icons, composable })
}

fn rng_usize(rng: &mut rand::rngs::StdRng, n: usize) -> usize {
    use rand::Rng;
    rng.gen_range(0..n)
}

/// Runs every axiom check over the seeded family.
pub fn verify_model_axioms(spec: &VerifySpec) -> Result<Report> {
    let mut report = Report::new(format!("model:{}", spec.cx.name));
    let md = &spec.model;
    let fam = seeded_family(spec)?;

    // two-out-of-three and closure under composition
    for &(i, j) in &fam.composable {
        let a = &fam.icons[i];
        let b = &fam.icons[j];
        let ab = compose_icons(a, b)?;
        let ca = classify(a, md)?;
        let cb = classify(b, md)?;
        let cab = classify(&ab, md)?;
        let tag = format!("{i};{j}");
        let wes = [ca.is_we, cb.is_we, cab.is_we];
        if wes.iter().filter(|&&w| w).count() >= 2 && !wes.iter().all(|&w| w) {
            report.fail("two-of-three", &tag, "two of three weak equivalences, third fails");
        } else {
            report.pass("two-of-three", &tag);
        }
        if ca.is_cof && cb.is_cof && !cab.is_cof {
            report.fail("cof-closed", &tag, "composite of cofibrations is not one");
        }
        if ca.is_fib && cb.is_fib && !cab.is_fib {
            report.fail("fib-closed", &tag, "composite of fibrations is not one");
        }
        if ca.is_we && cb.is_we && !cab.is_we {
            report.fail("we-closed", &tag, "composite of weak equivalences is not one");
        }
    }
    report.pass_if_clean("closure", "all-pairs");

    // factorizations, re-verified through relative maps, plus the stock
    // lifting square each factorization pair produces
    let systems = [FactSystem::AcofFib, FactSystem::CofAfib];
    let fact_results: Vec<Result<Vec<Record>>> = if spec.parallel {
        fam.icons
            .par_iter()
            .enumerate()
            .map(|(i, icon)| factor_checks(spec, icon, i, &systems))
            .collect()
    } else {
        fam.icons
            .iter()
            .enumerate()
            .map(|(i, icon)| factor_checks(spec, icon, i, &systems))
            .collect()
    };
    let mut left_pool: Vec<(FactSystem, Icon)> = Vec::new();
    let mut right_pool: Vec<(FactSystem, Icon)> = Vec::new();
    for r in fact_results {
        let records = r?;
        for rec in records {
            match rec {
                Record::Pass(c, i) => report.pass(c, i),
                Record::Fail(c, i, w) => report.fail(c, i, w),
                Record::Left(sys, icon) => left_pool.push((sys, icon)),
                Record::Right(sys, icon) => right_pool.push((sys, icon)),
            }
        }
    }

    // lifting: every left-class against every right-class of the same
    // system, over enumerated commuting squares
    let mut squares = 0usize;
    for (sys_l, lam) in &left_pool {
        for (sys_r, rho) in &right_pool {
            if sys_l != sys_r {
                continue;
            }
            let tops = enumerate_icons(&lam.src, &rho.src, 8)?;
            for top in &tops {
                let bottoms = enumerate_icons(&lam.dst, &rho.dst, 8)?;
                for bottom in &bottoms {
                    // commuting filter
                    let commutes = lam.src.in_level_cells().iter().all(|&z| {
                        crate::base::compose(&top.at(z), &rho.at(z)).unwrap()
                            == crate::base::compose(&lam.at(z), &bottom.at(z)).unwrap()
                    });
                    if !commutes {
                        continue;
                    }
                    squares += 1;
                    match lift_icon(lam, rho, top, bottom, md)? {
                        LiftOutcome::Found(_) => {
                            report.pass("lifting", format!("square{squares}"))
                        }
                        LiftOutcome::Obstructed(z) => report.fail(
                            "lifting",
                            format!("square{squares}"),
                            format!("no lift at {}", spec.cx.label1(z)),
                        ),
                    }
                    if squares >= 60 {
                        break;
                    }
                }
                if squares >= 60 {
                    break;
                }
            }
            if squares >= 60 {
                break;
            }
        }
    }
    if squares == 0 {
        report.fail("lifting", "none", "no commuting squares were enumerated");
    }

    // oracle agreement per groupement kind
    match spec.cx.kind {
        GroupementKind::Reedy1 => {
            report.merge(classical_agreement(spec, &fam)?);
        }
        GroupementKind::Chains if spec.base.is_cartesian() => {
            report.merge(presheaf_agreement(spec, &fam)?);
        }
        _ => {}
    }
    Ok(report)
}

enum Record {
    Pass(String, String),
    Fail(String, String, String),
    Left(FactSystem, Icon),
    Right(FactSystem, Icon),
}

fn factor_checks(
    spec: &VerifySpec,
    icon: &Icon,
    i: usize,
    systems: &[FactSystem],
) -> Result<Vec<Record>> {
    let md = &spec.model;
    let mut out = Vec::new();
    for &sys in systems {
        let tag = format!("icon{i}:{}", sys.name());
        let (lam, _k, rho) = match factor_icon(icon, md, sys) {
            Ok(t) => t,
            Err(e) => {
                out.push(Record::Fail("factorize".into(), tag, e.to_string()));
                continue;
            }
        };
        // exactness
        let back = compose_icons(&lam, &rho)?;
        let exact = icon.components().iter().all(|(z, c)| back.at(*z) == *c);
        if !exact {
            out.push(Record::Fail("factorize-exact".into(), tag.clone(), "composite differs".into()));
            continue;
        }
        // class membership re-verified from scratch
        let rl = relative_maps(&lam)?;
        let rr = relative_maps(&rho)?;
        let left_ok = rl.per_z.values().all(|at| md.in_left(sys, &at.latch_rel));
        let right_ok = rr.per_z.values().all(|at| md.in_right(sys, &at.match_rel));
        if left_ok && right_ok {
            out.push(Record::Pass("factorize".into(), tag.clone()));
        } else {
            out.push(Record::Fail(
                "factorize-classes".into(),
                tag.clone(),
                format!("left={left_ok} right={right_ok}"),
            ));
        }
        out.push(Record::Left(sys, lam));
        out.push(Record::Right(sys, rho));
    }
    Ok(out)
}

/// For a two-object groupement carrying a Reedy category: every verdict
/// must agree with the classical implementation on the same data.
fn classical_agreement(spec: &VerifySpec, fam: &IconFamily) -> Result<Report> {
    let mut report = Report::new("classical-agreement");
    let cx = &spec.cx;
    let md = &spec.model;
    let r = Arc::new(cx.hom(0, 1).clone());
    for (i, icon) in fam.icons.iter().enumerate() {
        let to_nat = |d: &Arc<ColaxDiagram>, name: &str| -> Arc<classical::Diagram1> {
            Arc::new(classical::Diagram1 {
                name: name.into(),
                r: r.clone(),
                base: spec.base,
                ob: (0..r.cat.objects.len())
                    .map(|o| d.val1_at(crate::groupement::OneCell { a: 0, b: 1, i: o }))
                    .collect(),
                arr: (0..r.cat.arrows.len())
                    .map(|a| d.val2_at(crate::groupement::TwoCell { a: 0, b: 1, i: a }))
                    .collect(),
            })
        };
        let srcd = to_nat(&icon.src, "F");
        let dstd = to_nat(&icon.dst, "G");
        let nat = classical::Nat1 {
            name: format!("icon{i}"),
            src: srcd,
            dst: dstd,
            comp: (0..r.cat.objects.len())
                .map(|o| icon.at(crate::groupement::OneCell { a: 0, b: 1, i: o }))
                .collect(),
        };
        let colax_c = classify(icon, md)?;
        let class_c = classical::classify1(&nat, md)?;
        let agree = colax_c.is_we == class_c.is_we
            && colax_c.is_cof == class_c.is_cof
            && colax_c.is_fib == class_c.is_fib;
        if agree {
            report.pass("classify-agree", format!("icon{i}"));
        } else {
            report.fail("classify-agree", format!("icon{i}"), "verdicts differ");
        }
        // latching/matching objects coincide exactly
        for o in 0..r.cat.objects.len() {
            let z = crate::groupement::OneCell { a: 0, b: 1, i: o };
            let l1 = classical::latching1(&nat.src, o)?;
            let l2 = crate::colax::index::colax_latching_object(&icon.src, z)?;
            if l1.ob != l2.ob || l1.legs != l2.legs || Some(&l1.to_value) != l2.to_value.as_ref() {
                report.fail(
                    "latching-agree",
                    format!("icon{i}@{}", r.cat.objects[o]),
                    "latching objects differ",
                );
            }
            let m1 = classical::matching1(&nat.src, o)?;
            let m2 = crate::colax::index::colax_matching_object(&icon.src, z)?;
            if m1.ob != m2.ob || m1.legs != m2.legs || Some(&m1.from_value) != m2.from_value.as_ref()
            {
                report.fail(
                    "matching-agree",
                    format!("icon{i}@{}", r.cat.objects[o]),
                    "matching objects differ",
                );
            }
        }
        // factorizations coincide table by table
        for sys in [FactSystem::AcofFib, FactSystem::CofAfib, FactSystem::Ofs] {
            let colax_fact = factor_icon(icon, md, sys);
            let class_fact = classical::factorize1(&nat, md, sys);
            match (colax_fact, class_fact) {
                (Ok((cl, ck, cr)), Ok((nl, nk, nr))) => {
                    let mut same = true;
                    for o in 0..r.cat.objects.len() {
                        let z = crate::groupement::OneCell { a: 0, b: 1, i: o };
                        same &= ck.val1_at(z) == nk.ob[o];
                        same &= cl.at(z) == nl.comp[o];
                        same &= cr.at(z) == nr.comp[o];
                    }
                    if same {
                        report.pass("factorize-agree", format!("icon{i}:{}", sys.name()));
                    } else {
                        report.fail(
                            "factorize-agree",
                            format!("icon{i}:{}", sys.name()),
                            "middle tables differ",
                        );
                    }
                }
                (Err(e), _) | (_, Err(e)) => {
                    report.fail("factorize-agree", format!("icon{i}:{}", sys.name()), e.to_string());
                }
            }
        }
    }
    report.pass_if_clean("classical", "all");
    Ok(report)
}

/// For a chain groupement over the cartesian base: Reedy verdicts must
/// agree with the classical presheaf-side verdicts after transport.
fn presheaf_agreement(spec: &VerifySpec, fam: &IconFamily) -> Result<Report> {
    let mut report = Report::new("presheaf-agreement");
    let cx = &spec.cx;
    let md = &spec.model;
    let labels: Vec<&str> = cx.objects.iter().map(|s| s.as_str()).collect();
    let dx = Arc::new(crate::segal::deltax::build_delta_x(&labels, cx.bound as usize));
    for (i, icon) in fam.icons.iter().enumerate() {
        let nat = crate::segal::bridge::transport_icon(icon, &dx)?;
        let vp = nat.validate();
        if !vp.passed() {
            report.fail("transport", format!("icon{i}"), "transported map is not natural");
            continue;
        }
        let colax_c = classify(icon, md)?;
        let sheaf_c = crate::segal::deltax::presheaf_classify(&nat, md)?;
        let agree = colax_c.is_we == sheaf_c.is_we
            && colax_c.is_cof == sheaf_c.is_cof
            && colax_c.is_fib == sheaf_c.is_fib;
        if agree {
            report.pass("presheaf-agree", format!("icon{i}"));
        } else {
            report.fail(
                "presheaf-agree",
                format!("icon{i}"),
                format!(
                    "colax (we={},cof={},fib={}) vs presheaf (we={},cof={},fib={})",
                    colax_c.is_we,
                    colax_c.is_cof,
                    colax_c.is_fib,
                    sheaf_c.is_we,
                    sheaf_c.is_cof,
                    sheaf_c.is_fib
                ),
            );
        }
        // round trip through the bridge is the identity on tables
        let back = crate::segal::bridge::from_presheaf(&nat.src, cx)?;
        if !icon.src.same_tables(&back) {
            report.fail("round-trip", format!("icon{i}"), "tables changed through the bridge");
        }
    }
    report.pass_if_clean("presheaf", "all");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupement::build_delta_plus;

    #[test]
    fn verifier_smoke_finvect() {
        let cx = Arc::new(build_delta_plus(1));
        let base = Base::FinVect { p: 2 };
        let mut spec = VerifySpec::new(cx, base);
        spec.diagrams = 3;
        spec.icons = 6;
        spec.max_size = 1;
        let rep = verify_model_axioms(&spec).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
    }
}
