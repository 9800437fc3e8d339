//! The correspondence between colax diagrams on a chain groupement and
//! unital presheaves on the labelled simplex category: the hom-wise
//! isomorphism onto extremity-preserving morphisms, the presheaf built
//! from a diagram via colaxity projections on outer extensions, and the
//! inverse construction.

use super::deltax::{DeltaX, DxMor, PresheafMap, UnitalPresheaf};
use crate::base::{compose, Base, BaseArrow, BaseObject};
use crate::colax::{validate_colax, ColaxDiagram, Icon};
use crate::error::{Error, Result};
use crate::groupement::{OneCell, TwoCell, TwoGroupement};
use crate::report::Report;
use crate::simplex::{joyal_dual, joyal_dual_inverse};
use std::collections::BTreeMap;
use std::sync::Arc;

fn cell_seq(cx: &TwoGroupement, dx: &DeltaX, z: OneCell) -> Result<usize> {
    let label = cx.label1(z);
    let inner = &label[1..label.len() - 1];
    let parts: Vec<&str> = inner.split(',').collect();
    dx.object_by_labels(&parts)
        .ok_or_else(|| Error::Domain(format!("sequence {label} missing from the simplex category")))
}

fn seq_cell(cx: &TwoGroupement, dx: &DeltaX, o: usize) -> Result<OneCell> {
    let label = dx.seq_label(o);
    cx.find_one_cell(&label)
        .ok_or_else(|| Error::Domain(format!("chain {label} missing from the groupement")))
}

/// Underlying monotone table of a chain-groupement 2-cell.
fn two_cell_table(cx: &TwoGroupement, u: TwoCell) -> Vec<usize> {
    if cx.is_id2(u) {
        let n = cx.deg1(cx.src2(u)) as usize;
        return (0..n).collect();
    }
    let label = cx.label2(u).to_string();
    let t = label.rsplit(':').next().unwrap();
    if t.is_empty() {
        vec![]
    } else {
        t.split('.').map(|s| s.parse().unwrap()).collect()
    }
}

/// The hom-wise isomorphism: each 2-cell between chains from x to y
/// corresponds to the unique extremity-preserving morphism over its dual
/// table with the matching codomain.
pub struct IsoJ {
    pub x: usize,
    pub y: usize,
    /// (2-cell, simplex morphism id) pairs
    pub pairs: Vec<(TwoCell, usize)>,
}

pub fn iso_j(cx: &Arc<TwoGroupement>, dx: &Arc<DeltaX>, x: usize, y: usize) -> Result<IsoJ> {
    let hom = cx.hom(x, y);
    let mut pairs = Vec::new();
    for i in 0..hom.cat.arrows.len() {
        let u = TwoCell { a: x, b: y, i };
        let src = cx.src2(u);
        let dst = cx.dst2(u);
        let n = cx.deg1(src) as usize;
        let k = cx.deg1(dst) as usize;
        let table = two_cell_table(cx, u);
        let dual = joyal_dual(&table, n, k);
        // unique lift of the dual with codomain the source sequence
        let cod = cell_seq(cx, dx, src)?;
        let mor = dx
            .mors
            .iter()
            .position(|m| m.dst == cod && m.map == dual)
            .ok_or_else(|| Error::Internal("dual morphism missing".into()))?;
        // its source must be the target chain
        if dx.mors[mor].src != cell_seq(cx, dx, dst)? {
            return Err(Error::Internal(format!(
                "dual of {} lands at the wrong sequence",
                cx.label2(u)
            )));
        }
        pairs.push((u, mor));
    }
    Ok(IsoJ { x, y, pairs })
}

impl IsoJ {
    /// Checks bijectivity onto extremity-preserving morphisms between
    /// x..y sequences, and contravariant functoriality.
    pub fn validate(&self, cx: &TwoGroupement, dx: &DeltaX) -> Report {
        let mut report = Report::new(format!("iso-j:{},{}", self.x, self.y));
        let mut seen = std::collections::BTreeSet::new();
        for (_, m) in &self.pairs {
            if !seen.insert(*m) {
                report.fail("injective", format!("mor {m}"), "hit twice");
            }
        }
        // the image is exactly the omega morphisms between x..y sequences
        let omega_count = dx
            .mors
            .iter()
            .enumerate()
            .filter(|(i, m)| {
                let sseq = &dx.objects[m.src];
                let first = sseq[0];
                let last = *sseq.last().unwrap();
                dx.is_omega(*i)
                    && dx.labels[first] == cx.objects[self.x]
                    && dx.labels[last] == cx.objects[self.y]
            })
            .count();
        if omega_count != self.pairs.len() {
            report.fail(
                "bijective",
                format!("{} vs {}", self.pairs.len(), omega_count),
                "image does not exhaust extremity-preserving morphisms",
            );
        }
        // contravariant functoriality
        let lookup: BTreeMap<TwoCell, usize> = self.pairs.iter().copied().collect();
        for &(u, mu) in &self.pairs {
            for &(v, mv) in &self.pairs {
                if let Some(w) = cx.then2(u, v) {
                    let mw = lookup[&w];
                    if dx.then(mv, mu) != Some(mw) {
                        report.fail(
                            "functorial",
                            format!("{};{}", cx.label2(u), cx.label2(v)),
                            "duality breaks composition",
                        );
                    }
                }
            }
        }
        report.pass_if_clean("iso-j", "all");
        report
    }
}

/// First projection of a strict binary product of finsets.
fn pr1(base: Base, a: BaseObject, b: BaseObject) -> BaseArrow {
    debug_assert!(base.is_cartesian());
    let (an, bn) = (a.card(), b.card());
    BaseArrow::FinSet { src: an * bn, dst: an, table: (0..an * bn).map(|i| i / bn.max(1)).collect() }
}

fn pr2(base: Base, a: BaseObject, b: BaseObject) -> BaseArrow {
    debug_assert!(base.is_cartesian());
    let (an, bn) = (a.card(), b.card());
    BaseArrow::FinSet { src: an * bn, dst: bn, table: (0..an * bn).map(|i| i % bn.max(1)).collect() }
}

/// Pairing of two finset maps into the strict product.
fn pair(f: &BaseArrow, g: &BaseArrow) -> BaseArrow {
    let BaseArrow::FinSet { src, table: ft, .. } = f else { unreachable!() };
    let BaseArrow::FinSet { dst: gd, table: gt, .. } = g else { unreachable!() };
    let BaseArrow::FinSet { dst: fd, .. } = f else { unreachable!() };
    BaseArrow::FinSet {
        src: *src,
        dst: fd * gd,
        table: (0..*src).map(|x| ft[x] * gd + gt[x]).collect(),
    }
}

/// Drops the last edge of a chain: the colaxity split followed by the
/// first projection.
fn strip_last(f: &ColaxDiagram, seq: &[OneCell]) -> Result<(BaseArrow, Vec<OneCell>)> {
    // seq is the edge decomposition of the chain
    let front = &seq[..seq.len() - 1];
    let last = seq[seq.len() - 1];
    let cx = &f.cx;
    let front_cell = cx.tensor1_many(front).ok_or_else(|| Error::Truncation("front".into()))?;
    let split = f.colax_at(front_cell, last);
    let proj = pr1(f.base, f.val1_at(front_cell), f.val1_at(last));
    Ok((compose(&split, &proj)?, front.to_vec()))
}

fn strip_first(f: &ColaxDiagram, seq: &[OneCell]) -> Result<(BaseArrow, Vec<OneCell>)> {
    let first = seq[0];
    let rest = &seq[1..];
    let cx = &f.cx;
    let rest_cell = cx.tensor1_many(rest).ok_or_else(|| Error::Truncation("rest".into()))?;
    let split = f.colax_at(first, rest_cell);
    let proj = pr2(f.base, f.val1_at(first), f.val1_at(rest_cell));
    Ok((compose(&split, &proj)?, rest.to_vec()))
}

/// Edge decomposition of a chain 1-cell.
fn edges_of(cx: &TwoGroupement, dx: &DeltaX, z: OneCell) -> Result<Vec<OneCell>> {
    let o = cell_seq(cx, dx, z)?;
    let seq = &dx.objects[o];
    let mut out = Vec::new();
    for w in seq.windows(2) {
        let label = format!("({},{})", dx.labels[w[0]], dx.labels[w[1]]);
        out.push(
            cx.find_one_cell(&label)
                .ok_or_else(|| Error::Domain(format!("edge {label} missing")))?,
        );
    }
    Ok(out)
}

/// Builds the presheaf of a colax diagram on a chain groupement over a
/// cartesian base. Morphisms over extremity-preserving maps act through
/// the duality; the two outer extensions act by colaxity followed by a
/// projection; everything else factors canonically as outer extensions
/// after an extremity-preserving part.
pub fn to_presheaf(f: &ColaxDiagram, dx: &Arc<DeltaX>) -> Result<UnitalPresheaf> {
    if !f.base.is_cartesian() {
        return Err(Error::Domain("presheaf bridge needs a cartesian base".into()));
    }
    let cx = &f.cx;
    if dx.n_max as u32 != f.level {
        return Err(Error::Truncation(format!(
            "simplex bound {} does not match diagram level {}",
            dx.n_max, f.level
        )));
    }
    let mut val = Vec::with_capacity(dx.objects.len());
    for o in 0..dx.objects.len() {
        let z = seq_cell(cx, dx, o)?;
        val.push(f.val1_at(z));
    }
    let mut act = Vec::with_capacity(dx.mors.len());
    for m in &dx.mors {
        act.push(action_of(f, dx, m, &val)?);
    }
    Ok(UnitalPresheaf { name: f.name.clone(), dx: dx.clone(), base: f.base, val, act })
}

fn action_of(
    f: &ColaxDiagram,
    dx: &Arc<DeltaX>,
    m: &DxMor,
    val: &[BaseObject],
) -> Result<BaseArrow> {
    let cx = &f.cx;
    let n = dx.objects[m.src].len() - 1;
    let mm = dx.objects[m.dst].len() - 1;
    if m.src == m.dst && m.map.iter().enumerate().all(|(i, &v)| i == v) {
        return Ok(BaseArrow::identity(f.base, &val[m.dst]));
    }
    let a = m.map[0];
    let b = *m.map.last().unwrap();
    // strip the target chain down to positions a..=b
    let z_dst = seq_cell(cx, dx, m.dst)?;
    let mut arrow = BaseArrow::identity(f.base, &f.val1_at(z_dst));
    let mut seq = edges_of(cx, dx, z_dst)?;
    for _ in b..mm {
        let (step, rest) = strip_last(f, &seq)?;
        arrow = compose(&arrow, &step)?;
        seq = rest;
    }
    for _ in 0..a {
        let (step, rest) = strip_first(f, &seq)?;
        arrow = compose(&arrow, &step)?;
        seq = rest;
    }
    // the extremity-preserving part acts through the duality: the 2-cell
    // from the stripped chain to the morphism's source sequence
    let shifted: Vec<usize> = m.map.iter().map(|&v| v - a).collect();
    if shifted.iter().enumerate().any(|(i, &v)| i != v) || n != b - a {
        let phi = joyal_dual_inverse(&shifted, b - a, n);
        let src_chain = cx.tensor1_many(&seq).ok_or_else(|| Error::Truncation("mid".into()))?;
        let tstr: Vec<String> = phi.iter().map(|v| v.to_string()).collect();
        let label = format!(
            "{}>{}:{}",
            cx.label1(src_chain),
            dx.seq_label(m.src),
            tstr.join(".")
        );
        let u = cx
            .two_cell_by_label(src_chain.a, src_chain.b, &label)
            .ok_or_else(|| Error::Internal(format!("2-cell {label} missing")))?;
        arrow = compose(&arrow, &f.val2_at(u))?;
    }
    Ok(arrow)
}

/// Rebuilds the colax diagram from a unital presheaf: actions transport
/// through the duality and colaxity maps are pairings of the two
/// restriction actions.
pub fn from_presheaf(psi: &UnitalPresheaf, cx: &Arc<TwoGroupement>) -> Result<Arc<ColaxDiagram>> {
    if !psi.base.is_cartesian() {
        return Err(Error::Domain("presheaf bridge needs a cartesian base".into()));
    }
    let dx = &psi.dx;
    let level = dx.n_max as u32;
    let mut val1 = BTreeMap::new();
    for (o, seq) in dx.objects.iter().enumerate() {
        let z = seq_cell(cx, dx, o)?;
        if seq.len() == 1 {
            if psi.val[o] != psi.base.unit() {
                return Err(Error::Precondition("presheaf is not unital".into()));
            }
            continue;
        }
        val1.insert(z, psi.val[o]);
    }
    let mut val2 = BTreeMap::new();
    for u in cx.two_cells() {
        if cx.is_id2(u) {
            continue;
        }
        let (s, t) = (cx.src2(u), cx.dst2(u));
        if cx.deg1(s) > level || cx.deg1(t) > level {
            continue;
        }
        let n = cx.deg1(s) as usize;
        let k = cx.deg1(t) as usize;
        let table = two_cell_table(cx, u);
        let dual = joyal_dual(&table, n, k);
        let src_seq = cell_seq(cx, dx, s)?;
        let dst_seq = cell_seq(cx, dx, t)?;
        let mor = dx
            .mor_of(dst_seq, src_seq, &dual)
            .ok_or_else(|| Error::Internal("dual morphism missing".into()))?;
        val2.insert(u, psi.act[mor].clone());
    }
    let mut colax = BTreeMap::new();
    for (s, t) in crate::colax::composable_pairs(cx, level) {
        let st = cx.tensor1(s, t).unwrap();
        let o_st = cell_seq(cx, dx, st)?;
        let o_s = cell_seq(cx, dx, s)?;
        let o_t = cell_seq(cx, dx, t)?;
        let ns = dx.objects[o_s].len();
        let total = dx.objects[o_st].len();
        let incl_s: Vec<usize> = (0..ns).collect();
        let incl_t: Vec<usize> = (ns - 1..total).collect();
        let m_s = dx
            .mor_of(o_s, o_st, &incl_s)
            .ok_or_else(|| Error::Internal("prefix inclusion missing".into()))?;
        let m_t = dx
            .mor_of(o_t, o_st, &incl_t)
            .ok_or_else(|| Error::Internal("suffix inclusion missing".into()))?;
        colax.insert((s, t), pair(&psi.act[m_s], &psi.act[m_t]));
    }
    let d = Arc::new(ColaxDiagram::new(
        psi.name.clone(),
        cx.clone(),
        psi.base,
        level,
        val1,
        val2,
        colax,
    )?);
    let rep = validate_colax(&d);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "rebuilt diagram incoherent: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(d)
}

/// Transports an icon to a presheaf map (the components are the same
/// arrows, reindexed by sequences).
pub fn transport_icon(icon: &Icon, dx: &Arc<DeltaX>) -> Result<PresheafMap> {
    let src = Arc::new(to_presheaf(&icon.src, dx)?);
    let dst = Arc::new(to_presheaf(&icon.dst, dx)?);
    let cx = &icon.src.cx;
    let comp = (0..dx.objects.len())
        .map(|o| {
            let z = seq_cell(cx, dx, o)?;
            Ok(icon.at(z))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PresheafMap { name: icon.name.clone(), src, dst, comp })
}

/// Checks the Segal condition at every 1-cell of degree at least two: the
/// total colaxity map into the tensor of edge values must be a weak
/// equivalence. Cells without a full edge decomposition are skipped with a
/// note.
pub fn check_segal_conditions(f: &ColaxDiagram, md: &crate::base::model::ModelData) -> Report {
    let mut report = Report::new(format!("segal:{}", f.name));
    let cx = &f.cx;
    for z in f.in_level_cells() {
        if cx.deg1(z) < 2 {
            continue;
        }
        let decomps = cx.decompositions(z);
        let full: Vec<&Vec<OneCell>> = decomps
            .iter()
            .filter(|parts| parts.len() == cx.deg1(z) as usize && parts.iter().all(|&p| cx.deg1(p) == 1))
            .collect();
        if full.is_empty() {
            report.pass("segal-skip", cx.label1(z));
            continue;
        }
        for parts in full {
            let total = f.iterated_colax(parts);
            if md.is_we(&total) {
                report.pass("segal", cx.label1(z));
            } else {
                report.fail(
                    "segal",
                    cx.label1(z),
                    format!(
                        "total colaxity {} is not a weak equivalence",
                        crate::base::arrow_literal(&total)
                    ),
                );
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupement::build_px;
    use crate::sample::{random_diagram, rng_from_seed};
    use crate::segal::deltax::build_delta_x;

    #[test]
    fn round_trip_on_seeded_diagram() {
        let cx = Arc::new(build_px(&["a", "b"], 2));
        let dx = Arc::new(build_delta_x(&["a", "b"], 2));
        let mut rng = rng_from_seed(5);
        for _ in 0..3 {
            let f = random_diagram(&cx, Base::FinSet, 2, 2, &mut rng).unwrap();
            let psi = to_presheaf(&f, &dx).unwrap();
            assert!(psi.validate().passed(), "{}", psi.validate().to_text());
            let back = from_presheaf(&psi, &cx).unwrap();
            assert!(f.same_tables(&back), "round trip changed the diagram");
        }
    }

    #[test]
    fn constant_diagram_gives_terminal_presheaf() {
        let cx = Arc::new(build_px(&["a", "b"], 2));
        let dx = Arc::new(build_delta_x(&["a", "b"], 2));
        let f = ColaxDiagram::constant_unit(cx, Base::FinSet, 2);
        let psi = to_presheaf(&f, &dx).unwrap();
        assert!(psi.validate().passed());
        for v in &psi.val {
            assert_eq!(v.card(), 1);
        }
    }

    #[test]
    fn iso_j_bijective_functorial() {
        let cx = Arc::new(build_px(&["a", "b"], 3));
        let dx = Arc::new(build_delta_x(&["a", "b"], 3));
        for x in 0..2 {
            for y in 0..2 {
                let j = iso_j(&cx, &dx, x, y).unwrap();
                let rep = j.validate(&cx, &dx);
                assert!(rep.passed(), "{}", rep.to_text());
            }
        }
    }

    #[test]
    fn segal_check_on_nerve() {
        // a tensor diagram with identity colaxity passes everywhere
        let cx = Arc::new(crate::groupement::build_delta_plus(3));
        let mult = vec![vec![0, 1], vec![1, 0]];
        let d = crate::sample::monoid_nerve(&cx, &mult, 0, 3).unwrap();
        let md = crate::base::model::ModelData::for_base(Base::FinSet);
        let rep = check_segal_conditions(&d, &md);
        assert!(rep.passed(), "{}", rep.to_text());
    }
}
