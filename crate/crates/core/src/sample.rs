//! Seeded generation and exhaustive enumeration of valid diagrams and
//! icons.
//!
//! A diagram extension at a new cell z is exactly a choice of value V with
//! maps u: L -> V and v: V -> M such that v o u is the canonical
//! comparison; coherence then holds automatically, the validator is run as
//! a belt on every generated object. Icons are sampled the same way: a
//! component at z is any arrow compatible with the already-chosen lower
//! components under pre- and post-composition constraints.

use crate::base::matrix::Mat;
use crate::base::{all_arrows, compose, tensor_many, Base, BaseArrow, BaseObject};
use crate::colax::canonical::canonical_map_iz;
use crate::colax::index::matching_cone_component;
use crate::colax::{validate_colax, validate_icon, ColaxDiagram, Icon};
use crate::error::{Error, Result};
use crate::groupement::{OneCell, TwoGroupement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::sync::Arc;

pub fn rng_from_seed(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Pre/post composition constraints on an arrow src -> dst:
/// h o pre.0 = pre.1 and post.0 o h = post.1.
pub struct ArrowConstraints<'a> {
    pub base: Base,
    pub src: BaseObject,
    pub dst: BaseObject,
    pub pre: &'a [(BaseArrow, BaseArrow)],
    pub post: &'a [(BaseArrow, BaseArrow)],
}

impl ArrowConstraints<'_> {
    fn satisfied_by(&self, h: &BaseArrow) -> bool {
        self.pre.iter().all(|(a, b)| compose(a, h).map(|c| c == *b).unwrap_or(false))
            && self.post.iter().all(|(c, d)| compose(h, c).map(|e| e == *d).unwrap_or(false))
    }
}

/// All solutions, capped. FinSet solves per element; FinVect enumerates an
/// affine solution space.
pub fn enumerate_constrained(cs: &ArrowConstraints, cap: usize) -> Result<Vec<BaseArrow>> {
    match cs.base {
        Base::FinSet => {
            let srcn = cs.src.card();
            let dstn = cs.dst.card();
            // forced values from pre-constraints
            let mut forced: Vec<Option<usize>> = vec![None; srcn];
            for (a, b) in cs.pre {
                let BaseArrow::FinSet { table: at, .. } = a else { unreachable!() };
                let BaseArrow::FinSet { table: bt, .. } = b else { unreachable!() };
                for (x, &ax) in at.iter().enumerate() {
                    match forced[ax] {
                        None => forced[ax] = Some(bt[x]),
                        Some(v) if v == bt[x] => {}
                        Some(_) => return Ok(vec![]),
                    }
                }
            }
            // candidates per element from post-constraints
            let mut cand: Vec<Vec<usize>> = Vec::with_capacity(srcn);
            for x in 0..srcn {
                let ys: Vec<usize> = (0..dstn)
                    .filter(|&y| {
                        cs.post.iter().all(|(c, d)| {
                            let BaseArrow::FinSet { table: ct, .. } = c else { unreachable!() };
                            let BaseArrow::FinSet { table: dt, .. } = d else { unreachable!() };
                            ct[y] == dt[x]
                        })
                    })
                    .filter(|&y| forced[x].map(|f| f == y).unwrap_or(true))
                    .collect();
                if ys.is_empty() {
                    return Ok(vec![]);
                }
                cand.push(ys);
            }
            let mut out: Vec<BaseArrow> = vec![];
            let mut stack: Vec<usize> = vec![0; srcn];
            let mut pos = 0usize;
            if srcn == 0 {
                return Ok(vec![BaseArrow::finset(0, dstn, vec![])?]);
            }
            loop {
                if pos == srcn {
                    let table: Vec<usize> = (0..srcn).map(|x| cand[x][stack[x]]).collect();
                    out.push(BaseArrow::finset(srcn, dstn, table)?);
                    if out.len() >= cap {
                        return Ok(out);
                    }
                    pos -= 1;
                    loop {
                        stack[pos] += 1;
                        if stack[pos] < cand[pos].len() {
                            pos += 1;
                            break;
                        }
                        stack[pos] = 0;
                        if pos == 0 {
                            return Ok(out);
                        }
                        pos -= 1;
                    }
                } else {
                    pos += 1;
                }
            }
        }
        Base::FinVect { p } => {
            let (sys, rhs, rows, cols) = linear_system(cs, p);
            let Some(part) = sys.solve(&rhs) else { return Ok(vec![]) };
            let ker = sys.kernel_basis();
            let nsol = (p as u128).pow(ker.cols as u32).min(cap as u128) as usize;
            let mut out = Vec::with_capacity(nsol);
            let mut coeffs = vec![0u64; ker.cols];
            loop {
                let mut flat = part.clone();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c != 0 {
                        for r in 0..flat.rows {
                            let v = (flat.get(r, 0) + c * ker.get(r, k)) % p;
                            flat.set(r, 0, v);
                        }
                    }
                }
                out.push(unflatten(&flat, rows, cols, p));
                if out.len() >= cap {
                    return Ok(out);
                }
                let mut carry = true;
                for c in coeffs.iter_mut().rev() {
                    if carry {
                        *c += 1;
                        if *c == p {
                            *c = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
                if ker.cols == 0 {
                    break;
                }
            }
            Ok(out)
        }
    }
}

/// One random solution, or None.
pub fn sample_constrained(cs: &ArrowConstraints, rng: &mut StdRng) -> Result<Option<BaseArrow>> {
    match cs.base {
        Base::FinSet => {
            let all = enumerate_constrained(cs, 4096)?;
            if all.is_empty() {
                return Ok(None);
            }
            let h = all[rng.gen_range(0..all.len())].clone();
            debug_assert!(cs.satisfied_by(&h));
            Ok(Some(h))
        }
        Base::FinVect { p } => {
            let (sys, rhs, rows, cols) = linear_system(cs, p);
            let Some(part) = sys.solve(&rhs) else { return Ok(None) };
            let ker = sys.kernel_basis();
            let mut flat = part;
            for k in 0..ker.cols {
                let c = rng.gen_range(0..p);
                if c != 0 {
                    for r in 0..flat.rows {
                        let v = (flat.get(r, 0) + c * ker.get(r, k)) % p;
                        flat.set(r, 0, v);
                    }
                }
            }
            let h = unflatten(&flat, rows, cols, p);
            debug_assert!(cs.satisfied_by(&h));
            Ok(Some(h))
        }
    }
}

fn linear_system(cs: &ArrowConstraints, p: u64) -> (Mat, Mat, usize, usize) {
    let rows = cs.dst.card();
    let cols = cs.src.card();
    let nvar = rows * cols;
    let mut eqs: Vec<(Vec<(usize, u64)>, u64)> = Vec::new();
    for (a, b) in cs.pre {
        let BaseArrow::FinVect { mat: am } = a else { unreachable!() };
        let BaseArrow::FinVect { mat: bm } = b else { unreachable!() };
        // h * a = b: for r in rows, c in a.cols: sum_k h[r,k] a[k,c] = b[r,c]
        for r in 0..rows {
            for c in 0..am.cols {
                let mut terms = Vec::new();
                for k in 0..cols {
                    terms.push((r * cols + k, am.get(k, c)));
                }
                eqs.push((terms, bm.get(r, c)));
            }
        }
    }
    for (c_arr, d_arr) in cs.post {
        let BaseArrow::FinVect { mat: cm } = c_arr else { unreachable!() };
        let BaseArrow::FinVect { mat: dm } = d_arr else { unreachable!() };
        // c * h = d: for r in c.rows, x in cols: sum_k c[r,k] h[k,x] = d[r,x]
        for r in 0..cm.rows {
            for x in 0..cols {
                let mut terms = Vec::new();
                for k in 0..rows {
                    terms.push((k * cols + x, cm.get(r, k)));
                }
                eqs.push((terms, dm.get(r, x)));
            }
        }
    }
    let mut sys = Mat::zeros(eqs.len(), nvar, p);
    let mut rhs = Mat::zeros(eqs.len(), 1, p);
    for (i, (terms, b)) in eqs.iter().enumerate() {
        for &(v, coef) in terms {
            let prev = sys.get(i, v);
            sys.set(i, v, (prev + coef) % p);
        }
        rhs.set(i, 0, *b);
    }
    (sys, rhs, rows, cols)
}

fn unflatten(flat: &Mat, rows: usize, cols: usize, p: u64) -> BaseArrow {
    let mut m = Mat::zeros(rows, cols, p);
    for r in 0..rows {
        for c in 0..cols {
            m.set(r, c, flat.get(r * cols + c, 0));
        }
    }
    BaseArrow::finvect(m)
}

/// Random valid diagram on a groupement, built degree by degree. The
/// groupement must be direct-divisible.
pub fn random_diagram(
    cx: &Arc<TwoGroupement>,
    base: Base,
    level: u32,
    max_size: usize,
    rng: &mut StdRng,
) -> Result<Arc<ColaxDiagram>> {
    let mut val1: BTreeMap<OneCell, BaseObject> = BTreeMap::new();
    let mut val2 = BTreeMap::new();
    let mut colax = BTreeMap::new();
    let cells: Vec<OneCell> =
        cx.one_cells_by_degree().into_iter().filter(|&z| cx.deg1(z) <= level).collect();
    for z in cells {
        let d = cx.deg1(z);
        if d == 0 {
            val1.insert(z, base.object(rng.gen_range(0..=max_size)));
            continue;
        }
        let prev = ColaxDiagram::new(
            "rand",
            cx.clone(),
            base,
            d - 1,
            val1.clone(),
            val2.clone(),
            colax.clone(),
        )?;
        let cm = canonical_map_iz(&prev, z)?;
        let iz = &cm.map;
        // choose V with u: L -> V and v: V -> M, v o u = iz
        let (v_ob, u_arr, v_arr) = loop {
            if let Some(t) = try_extension(base, iz, max_size, rng)? {
                break t;
            }
        };
        val1.insert(z, v_ob);
        for (o, &a) in cm.latching.index.alphas.iter().enumerate() {
            val2.insert(a, compose(&cm.latching.legs[o], &u_arr)?);
        }
        for (o, obj) in cm.matching.index.objs.iter().enumerate() {
            let leg = compose(&v_arr, &cm.matching.legs[o])?;
            if obj.parts.len() == 1 && !cx.is_id2(obj.beta) {
                val2.insert(obj.beta, leg);
            } else if obj.parts.len() == 2 && cx.is_id2(obj.beta) {
                colax.insert((obj.parts[0], obj.parts[1]), leg);
            }
        }
        // mixed cells with settled endpoints
        let mut processed: std::collections::BTreeSet<OneCell> = val1.keys().copied().collect();
        processed.extend(cx.units.iter().copied());
        for u in cx.two_cells() {
            if val2.contains_key(&u) || cx.is_id2(u) {
                continue;
            }
            let (s, t) = (cx.src2(u), cx.dst2(u));
            if !processed.contains(&s) || !processed.contains(&t) {
                continue;
            }
            if cx.is_unit(s) && cx.is_unit(t) {
                continue;
            }
            let (inv, dir) = cx.reedy_factorize(u)?;
            let act = |w: crate::groupement::TwoCell,
                       val2: &BTreeMap<crate::groupement::TwoCell, BaseArrow>|
             -> Option<BaseArrow> {
                if cx.is_id2(w) {
                    let src = cx.src2(w);
                    let ob = if cx.is_unit(src) { base.unit() } else { *val1.get(&src)? };
                    Some(BaseArrow::identity(base, &ob))
                } else {
                    val2.get(&w).cloned()
                }
            };
            if let (Some(a), Some(b)) = (act(inv, &val2), act(dir, &val2)) {
                val2.insert(u, compose(&a, &b)?);
            }
        }
    }
    let d = Arc::new(ColaxDiagram::new("seeded", cx.clone(), base, level, val1, val2, colax)?);
    let rep = validate_colax(&d);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "seeded diagram invalid: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(d)
}

/// One attempt at choosing (V, u, v) with v o u = iz.
fn try_extension(
    base: Base,
    iz: &BaseArrow,
    max_size: usize,
    rng: &mut StdRng,
) -> Result<Option<(BaseObject, BaseArrow, BaseArrow)>> {
    let l_ob = iz.src_ob();
    let m_ob = iz.dst_ob();
    if rng.gen_bool(0.5) {
        // canonical fattening of the image factorization
        let (e, mno) = crate::base::model::image_factorization(iz);
        let extra = rng.gen_range(0..=max_size.min(2));
        match base {
            Base::FinSet => {
                let im = e.dst_ob().card();
                let v_ob = BaseObject::FinSet { size: im + extra };
                let BaseArrow::FinSet { table: et, .. } = &e else { unreachable!() };
                let u = BaseArrow::finset(l_ob.card(), im + extra, et.clone())?;
                let BaseArrow::FinSet { table: mt, .. } = &mno else { unreachable!() };
                let mut vt = mt.clone();
                for _ in 0..extra {
                    if m_ob.card() == 0 {
                        return Ok(None);
                    }
                    vt.push(rng.gen_range(0..m_ob.card()));
                }
                let v = BaseArrow::finset(im + extra, m_ob.card(), vt)?;
                Ok(Some((v_ob, u, v)))
            }
            Base::FinVect { p } => {
                let BaseArrow::FinVect { mat: em } = &e else { unreachable!() };
                let BaseArrow::FinVect { mat: mm } = &mno else { unreachable!() };
                let im = em.rows;
                let v_ob = BaseObject::FinVect { dim: im + extra };
                let mut um = Mat::zeros(im + extra, l_ob.card(), p);
                for r in 0..im {
                    for c in 0..l_ob.card() {
                        um.set(r, c, em.get(r, c));
                    }
                }
                let mut vm = Mat::zeros(m_ob.card(), im + extra, p);
                for r in 0..m_ob.card() {
                    for c in 0..im {
                        vm.set(r, c, mm.get(r, c));
                    }
                    for c in im..im + extra {
                        vm.set(r, c, rng.gen_range(0..p));
                    }
                }
                Ok(Some((v_ob, BaseArrow::finvect(um), BaseArrow::finvect(vm))))
            }
        }
    } else {
        // random v, then lift u through it
        let size = rng.gen_range(0..=max_size);
        let v_ob = base.object(size);
        let vs = all_arrows(base, &v_ob, &m_ob);
        if vs.is_empty() {
            return Ok(None);
        }
        let v = vs[rng.gen_range(0..vs.len())].clone();
        let pre: Vec<(BaseArrow, BaseArrow)> = vec![];
        let post = vec![(v.clone(), iz.clone())];
        let cs = ArrowConstraints { base, src: l_ob, dst: v_ob, pre: &pre, post: &post };
        match sample_constrained(&cs, rng)? {
            None => Ok(None),
            Some(u) => Ok(Some((v_ob, u, v))),
        }
    }
}

/// Constraints for an icon component at z given the lower components.
fn component_constraints(
    f: &ColaxDiagram,
    g: &ColaxDiagram,
    lower: &BTreeMap<OneCell, BaseArrow>,
    z: OneCell,
) -> Result<(Vec<(BaseArrow, BaseArrow)>, Vec<(BaseArrow, BaseArrow)>)> {
    let cx = &f.cx;
    let base = f.base;
    let at = |w: OneCell| -> BaseArrow {
        if cx.is_unit(w) {
            BaseArrow::identity(base, &base.unit())
        } else {
            lower[&w].clone()
        }
    };
    let mut pre = Vec::new();
    let mut post = Vec::new();
    let hom = cx.hom(z.a, z.b);
    for i in 0..hom.cat.arrows.len() {
        let u = crate::groupement::TwoCell { a: z.a, b: z.b, i };
        if cx.is_id2(u) {
            continue;
        }
        if cx.dst2(u) == z && cx.is_direct2(u) {
            let s = cx.src2(u);
            pre.push((f.val2_at(u), compose(&at(s), &g.val2_at(u))?));
        }
        if cx.src2(u) == z && cx.is_inverse2(u) {
            let w = cx.dst2(u);
            post.push((g.val2_at(u), compose(&f.val2_at(u), &at(w))?));
        }
    }
    // colaxity at decompositions of z
    let mobjs = crate::colax::index::matching_index(cx, z)?;
    for obj in &mobjs.objs {
        if !cx.is_id2(obj.beta) {
            continue;
        }
        let comps: Vec<BaseArrow> = obj.parts.iter().map(|&p| at(p)).collect();
        let c = matching_cone_component(g, obj)?;
        let d = compose(&matching_cone_component(f, obj)?, &tensor_many(&comps))?;
        post.push((c, d));
    }
    Ok((pre, post))
}

/// Random icon between two diagrams, or None if the lower components
/// sampled dead-end (callers typically retry with a fresh seed).
pub fn random_icon(
    f: &Arc<ColaxDiagram>,
    g: &Arc<ColaxDiagram>,
    rng: &mut StdRng,
) -> Result<Option<Icon>> {
    let cx = f.cx.clone();
    let mut comp: BTreeMap<OneCell, BaseArrow> = BTreeMap::new();
    for z in cx.one_cells_by_degree() {
        if cx.deg1(z) > f.level {
            continue;
        }
        let (pre, post) = component_constraints(f, g, &comp, z)?;
        let cs = ArrowConstraints {
            base: f.base,
            src: f.val1_at(z),
            dst: g.val1_at(z),
            pre: &pre,
            post: &post,
        };
        match sample_constrained(&cs, rng)? {
            None => return Ok(None),
            Some(h) => {
                comp.insert(z, h);
            }
        }
    }
    let icon = Icon::new("seeded", f.clone(), g.clone(), comp)?;
    let rep = validate_icon(&icon);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "seeded icon invalid: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(Some(icon))
}

/// All icons between two diagrams, capped; exhaustive when the total
/// solution count stays under the cap.
pub fn enumerate_icons(f: &Arc<ColaxDiagram>, g: &Arc<ColaxDiagram>, cap: usize) -> Result<Vec<Icon>> {
    let cx = f.cx.clone();
    let cells: Vec<OneCell> = cx
        .one_cells_by_degree()
        .into_iter()
        .filter(|&z| cx.deg1(z) <= f.level)
        .collect();
    let mut partials: Vec<BTreeMap<OneCell, BaseArrow>> = vec![BTreeMap::new()];
    for &z in &cells {
        let mut next = Vec::new();
        for partial in &partials {
            let (pre, post) = component_constraints(f, g, partial, z)?;
            let cs = ArrowConstraints {
                base: f.base,
                src: f.val1_at(z),
                dst: g.val1_at(z),
                pre: &pre,
                post: &post,
            };
            for h in enumerate_constrained(&cs, cap)? {
                let mut m = partial.clone();
                m.insert(z, h);
                next.push(m);
                if next.len() > cap {
                    break;
                }
            }
            if next.len() > cap {
                break;
            }
        }
        partials = next;
        if partials.is_empty() {
            return Ok(vec![]);
        }
    }
    partials
        .into_iter()
        .take(cap)
        .enumerate()
        .map(|(i, comp)| Icon::new(format!("icon{i}"), f.clone(), g.clone(), comp))
        .collect()
}

/// The tensor diagram of a finite monoid on the ordinal groupement over
/// finset: values are powers of the carrier, actions multiply along
/// fibers, colaxity maps are identities.
pub fn monoid_nerve(
    cx: &Arc<TwoGroupement>,
    mult: &[Vec<usize>],
    unit: usize,
    level: u32,
) -> Result<Arc<ColaxDiagram>> {
    let m = mult.len();
    let base = Base::FinSet;
    let mut val1 = BTreeMap::new();
    let mut val2 = BTreeMap::new();
    let mut colax = BTreeMap::new();
    let pow = |n: u32| -> usize { m.pow(n) };
    for z in cx.one_cells() {
        if cx.is_unit(z) || cx.deg1(z) > level {
            continue;
        }
        val1.insert(z, BaseObject::FinSet { size: pow(cx.deg1(z)) });
    }
    let digits = |mut x: usize, n: usize| -> Vec<usize> {
        let mut d = vec![0; n];
        for i in (0..n).rev() {
            d[i] = x % m;
            x /= m;
        }
        d
    };
    let undigits = |d: &[usize]| -> usize { d.iter().fold(0, |acc, &v| acc * m + v) };
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
        let label = cx.label2(u).to_string();
        let tableau = label.rsplit(':').next().unwrap();
        let phi: Vec<usize> = if tableau.is_empty() {
            vec![]
        } else {
            tableau.split('.').map(|v| v.parse().unwrap()).collect()
        };
        let mut table = Vec::with_capacity(pow(n as u32));
        for x in 0..pow(n as u32) {
            let d = digits(x, n);
            let mut out = vec![unit; k];
            for (i, &j) in phi.iter().enumerate() {
                out[j] = mult[out[j]][d[i]];
            }
            table.push(undigits(&out));
        }
        val2.insert(u, BaseArrow::finset(pow(n as u32), pow(k as u32), table)?);
    }
    for (s, t) in crate::colax::composable_pairs(cx, level) {
        let st = cx.tensor1(s, t).unwrap();
        colax.insert(
            (s, t),
            BaseArrow::identity(base, &BaseObject::FinSet { size: pow(cx.deg1(st)) }),
        );
    }
    let d = Arc::new(ColaxDiagram::new("nerve", cx.clone(), base, level, val1, val2, colax)?);
    let rep = validate_colax(&d);
    if !rep.passed() {
        return Err(Error::Internal(format!(
            "nerve diagram invalid: {}",
            rep.first_failure().map(|r| r.instance.clone()).unwrap_or_default()
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupement::{build_delta_plus, build_px};

    #[test]
    fn random_diagrams_validate() {
        let cx = Arc::new(build_delta_plus(2));
        let mut rng = rng_from_seed(7);
        for _ in 0..5 {
            random_diagram(&cx, Base::FinSet, 2, 2, &mut rng).unwrap();
            random_diagram(&cx, Base::FinVect { p: 2 }, 2, 2, &mut rng).unwrap();
        }
        let px = Arc::new(build_px(&["a", "b"], 2));
        for _ in 0..3 {
            random_diagram(&px, Base::FinSet, 2, 2, &mut rng).unwrap();
            random_diagram(&px, Base::FinVect { p: 2 }, 2, 2, &mut rng).unwrap();
        }
    }

    #[test]
    fn random_icons_validate() {
        let cx = Arc::new(build_delta_plus(2));
        let mut rng = rng_from_seed(11);
        let mut found = 0;
        for _ in 0..20 {
            let f = random_diagram(&cx, Base::FinVect { p: 2 }, 2, 2, &mut rng).unwrap();
            let g = random_diagram(&cx, Base::FinVect { p: 2 }, 2, 2, &mut rng).unwrap();
            if let Some(icon) = random_icon(&f, &g, &mut rng).unwrap() {
                assert!(validate_icon(&icon).passed());
                found += 1;
            }
        }
        assert!(found > 0, "no icons found across 20 attempts");
    }

    #[test]
    fn monoid_nerve_on_ordinals() {
        // Z/2 nerve
        let cx = Arc::new(build_delta_plus(3));
        let mult = vec![vec![0, 1], vec![1, 0]];
        let d = monoid_nerve(&cx, &mult, 0, 3).unwrap();
        assert_eq!(d.val1_at(cx.find_one_cell("2").unwrap()).card(), 4);
        // the merge 2 -> 1 multiplies: (a,b) -> a+b
        let mu = cx.find_two_cell("2>1:0.0").unwrap();
        let BaseArrow::FinSet { table, .. } = d.val2_at(mu) else { unreachable!() };
        assert_eq!(table, vec![0, 1, 1, 0]);
    }

    #[test]
    fn enumerate_icons_identity_endpoints() {
        let cx = Arc::new(build_delta_plus(1));
        let mut rng = rng_from_seed(3);
        let f = random_diagram(&cx, Base::FinSet, 1, 2, &mut rng).unwrap();
        let icons = enumerate_icons(&f, &f, 1000).unwrap();
        // at least the identity icon is present
        assert!(icons
            .iter()
            .any(|i| f.in_level_cells().iter().all(|&z| f.cx.is_unit(z) || i.at(z).is_identity())));
        for i in &icons {
            assert!(validate_icon(i).passed());
        }
    }
}
