//! Exact finite limits and colimits in the base categories.
//!
//! FinSet limits are subsets of products cut out by commutation equations,
//! enumerated in lexicographic order; colimits are disjoint unions
//! quotiented by a union-find with first-occurrence class numbering.
//! FinVect limits are kernels, colimits cokernels, both with canonical
//! echelon bases so results are bit-reproducible.

use super::matrix::Mat;
use super::{compose, Base, BaseArrow, BaseObject};
use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// A functor from a finite shape into the base: one object per shape
/// object, one arrow per shape arrow (identities included and consistent).
#[derive(Debug, Clone)]
pub struct FinDiagram {
    pub base: Base,
    pub shape: FinCat,
    pub ob: Vec<BaseObject>,
    pub arr: Vec<BaseArrow>,
}

impl FinDiagram {
    /// Builds a diagram from values on the non-identity arrows of the
    /// shape (in shape order); identity arrows are filled in.
    pub fn new(
        base: Base,
        shape: FinCat,
        ob: Vec<BaseObject>,
        non_id_arr: Vec<BaseArrow>,
    ) -> Result<Self> {
        let mut arr = Vec::with_capacity(shape.arrows.len());
        let mut it = non_id_arr.into_iter();
        for i in 0..shape.arrows.len() {
            if shape.is_identity(i) {
                arr.push(BaseArrow::identity(base, &ob[shape.arrows[i].src]));
            } else {
                arr.push(it.next().ok_or_else(|| {
                    Error::Domain("not enough arrows for the shape".into())
                })?);
            }
        }
        if it.next().is_some() {
            return Err(Error::Domain("too many arrows for the shape".into()));
        }
        FinDiagram::from_parts(base, shape, ob, arr)
    }

    /// Builds a diagram from a value for every shape arrow.
    pub fn from_parts(
        base: Base,
        shape: FinCat,
        ob: Vec<BaseObject>,
        arr: Vec<BaseArrow>,
    ) -> Result<Self> {
        if ob.len() != shape.objects.len() || arr.len() != shape.arrows.len() {
            return Err(Error::Domain("diagram tables do not match shape".into()));
        }
        for (i, a) in shape.arrows.iter().enumerate() {
            if arr[i].src_ob() != ob[a.src] || arr[i].dst_ob() != ob[a.dst] {
                return Err(Error::Endpoint(format!(
                    "diagram arrow {} has endpoints {:?} -> {:?}, expected {:?} -> {:?}",
                    a.label,
                    arr[i].src_ob(),
                    arr[i].dst_ob(),
                    ob[a.src],
                    ob[a.dst]
                )));
            }
        }
        Ok(FinDiagram { base, shape, ob, arr })
    }

    /// Checks functoriality (identities and composites) by enumeration.
    pub fn is_functorial(&self) -> bool {
        for (o, &id) in self.shape.identity.iter().enumerate() {
            if !self.arr[id].is_identity() || self.arr[id].src_ob() != self.ob[o] {
                return false;
            }
        }
        for f in 0..self.shape.arrows.len() {
            for g in 0..self.shape.arrows.len() {
                if let Some(gf) = self.shape.then(f, g) {
                    let lhs = compose(&self.arr[f], &self.arr[g]).unwrap();
                    if lhs != self.arr[gf] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: BaseObject,
    /// legs[i]: apex -> ob[i]
    pub legs: Vec<BaseArrow>,
}

#[derive(Debug, Clone)]
pub struct Cocone {
    pub apex: BaseObject,
    /// legs[i]: ob[i] -> apex
    pub legs: Vec<BaseArrow>,
}

impl Cone {
    pub fn is_cone(&self, d: &FinDiagram) -> bool {
        d.shape.arrows.iter().enumerate().all(|(i, a)| {
            compose(&self.legs[a.src], &d.arr[i]).map(|c| c == self.legs[a.dst]).unwrap_or(false)
        })
    }
}

impl Cocone {
    pub fn is_cocone(&self, d: &FinDiagram) -> bool {
        d.shape.arrows.iter().enumerate().all(|(i, a)| {
            compose(&d.arr[i], &self.legs[a.dst]).map(|c| c == self.legs[a.src]).unwrap_or(false)
        })
    }
}

fn block_offsets(obs: &[BaseObject]) -> (Vec<usize>, usize) {
    let mut offs = Vec::with_capacity(obs.len());
    let mut total = 0;
    for o in obs {
        offs.push(total);
        total += o.card();
    }
    (offs, total)
}

pub fn finite_limit(d: &FinDiagram) -> (BaseObject, Cone) {
    match d.base {
        Base::FinSet => finset_limit(d),
        Base::FinVect { p } => finvect_limit(d, p),
    }
}

pub fn finite_colimit(d: &FinDiagram) -> (BaseObject, Cocone) {
    match d.base {
        Base::FinSet => finset_colimit(d),
        Base::FinVect { p } => finvect_colimit(d, p),
    }
}

fn finset_limit(d: &FinDiagram) -> (BaseObject, Cone) {
    let n = d.ob.len();
    let sizes: Vec<usize> = d.ob.iter().map(|o| o.card()).collect();
    // enumerate tuples in lexicographic order (last coordinate fastest)
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut cur = vec![0usize; n];
    if sizes.iter().all(|&s| s > 0) || n == 0 {
        'outer: loop {
            // check all commutation equations
            let ok = d.shape.arrows.iter().enumerate().all(|(i, a)| {
                let BaseArrow::FinSet { table, .. } = &d.arr[i] else { unreachable!() };
                table[cur[a.src]] == cur[a.dst]
            });
            if ok {
                tuples.push(cur.clone());
            }
            if n == 0 {
                break;
            }
            let mut k = n;
            loop {
                if k == 0 {
                    break 'outer;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < sizes[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
    }
    let apex = BaseObject::FinSet { size: tuples.len() };
    let legs = (0..n)
        .map(|o| BaseArrow::FinSet {
            src: tuples.len(),
            dst: sizes[o],
            table: tuples.iter().map(|t| t[o]).collect(),
        })
        .collect();
    (apex, Cone { apex, legs })
}

fn finset_colimit(d: &FinDiagram) -> (BaseObject, Cocone) {
    let sizes: Vec<usize> = d.ob.iter().map(|o| o.card()).collect();
    let (offs, total) = block_offsets(&d.ob);
    let mut uf = UnionFind::new(total);
    for (i, a) in d.shape.arrows.iter().enumerate() {
        let BaseArrow::FinSet { table, .. } = &d.arr[i] else { unreachable!() };
        for (x, &fx) in table.iter().enumerate() {
            uf.union(offs[a.src] + x, offs[a.dst] + fx);
        }
    }
    // first-occurrence class numbering over the disjoint union order
    let mut class_of_root = std::collections::BTreeMap::new();
    let mut class = vec![0usize; total];
    let mut next = 0usize;
    for x in 0..total {
        let r = uf.find(x);
        let c = *class_of_root.entry(r).or_insert_with(|| {
            let c = next;
            next += 1;
            c
        });
        class[x] = c;
    }
    let apex = BaseObject::FinSet { size: next };
    let legs = (0..d.ob.len())
        .map(|o| BaseArrow::FinSet {
            src: sizes[o],
            dst: next,
            table: (0..sizes[o]).map(|x| class[offs[o] + x]).collect(),
        })
        .collect();
    (apex, Cocone { apex, legs })
}

fn finvect_limit(d: &FinDiagram, p: u64) -> (BaseObject, Cone) {
    let dims: Vec<usize> = d.ob.iter().map(|o| o.card()).collect();
    let (offs, total) = block_offsets(&d.ob);
    // difference map: prod F(o) -> prod over arrows of F(dst a)
    let eq_rows: usize = d.shape.arrows.iter().map(|a| dims[a.dst]).sum();
    let mut diff = Mat::zeros(eq_rows, total, p);
    let mut row = 0;
    for (i, a) in d.shape.arrows.iter().enumerate() {
        let BaseArrow::FinVect { mat } = &d.arr[i] else { unreachable!() };
        for r in 0..dims[a.dst] {
            for c in 0..dims[a.src] {
                diff.set(row + r, offs[a.src] + c, mat.get(r, c));
            }
            let v = (p - 1) % p;
            let prev = diff.get(row + r, offs[a.dst] + r);
            diff.set(row + r, offs[a.dst] + r, (prev + v) % p);
        }
        row += dims[a.dst];
    }
    let ker = diff.kernel_basis(); // total x nullity
    let apex = BaseObject::FinVect { dim: ker.cols };
    let legs = (0..d.ob.len())
        .map(|o| {
            let mut m = Mat::zeros(dims[o], ker.cols, p);
            for r in 0..dims[o] {
                for c in 0..ker.cols {
                    m.set(r, c, ker.get(offs[o] + r, c));
                }
            }
            BaseArrow::FinVect { mat: m }
        })
        .collect();
    (apex, Cone { apex, legs })
}

fn finvect_colimit(d: &FinDiagram, p: u64) -> (BaseObject, Cocone) {
    let dims: Vec<usize> = d.ob.iter().map(|o| o.card()).collect();
    let (offs, total) = block_offsets(&d.ob);
    // relation map: sum over arrows of F(src a) -> sum F(o);
    // xi |-> F(a)(xi) at dst minus xi at src
    let rel_cols: usize = d.shape.arrows.iter().map(|a| dims[a.src]).sum();
    let mut rel = Mat::zeros(total, rel_cols, p);
    let mut col = 0;
    for (i, a) in d.shape.arrows.iter().enumerate() {
        let BaseArrow::FinVect { mat } = &d.arr[i] else { unreachable!() };
        for c in 0..dims[a.src] {
            for r in 0..dims[a.dst] {
                rel.set(offs[a.dst] + r, col + c, mat.get(r, c));
            }
            let prev = rel.get(offs[a.src] + c, col + c);
            rel.set(offs[a.src] + c, col + c, (prev + p - 1) % p);
        }
        col += dims[a.src];
    }
    // cokernel: rows form a basis of the left kernel of rel
    let q = rel.left_kernel_basis();
    let apex = BaseObject::FinVect { dim: q.rows };
    let legs = (0..d.ob.len())
        .map(|o| {
            let mut m = Mat::zeros(q.rows, dims[o], p);
            for r in 0..q.rows {
                for c in 0..dims[o] {
                    m.set(r, c, q.get(r, offs[o] + c));
                }
            }
            BaseArrow::FinVect { mat: m }
        })
        .collect();
    (apex, Cocone { apex, legs })
}

/// The unique arrow from a competing cone into the limit.
pub fn limit_mediator(d: &FinDiagram, lim: &Cone, cone: &Cone) -> Result<BaseArrow> {
    if !cone.is_cone(d) {
        return Err(Error::Precondition("not a cone over the diagram".into()));
    }
    match d.base {
        Base::FinSet => {
            let n = cone.apex.card();
            let mut table = Vec::with_capacity(n);
            // limit tuples are recoverable from the projection legs
            let lim_size = lim.apex.card();
            for x in 0..n {
                let target: Vec<usize> = cone
                    .legs
                    .iter()
                    .map(|l| {
                        let BaseArrow::FinSet { table, .. } = l else { unreachable!() };
                        table[x]
                    })
                    .collect();
                let mut found = None;
                for t in 0..lim_size {
                    let matches = lim.legs.iter().enumerate().all(|(o, l)| {
                        let BaseArrow::FinSet { table, .. } = l else { unreachable!() };
                        table[t] == target[o]
                    });
                    if matches {
                        found = Some(t);
                        break;
                    }
                }
                table.push(found.ok_or_else(|| Error::Internal("mediator: tuple not in limit".into()))?);
            }
            Ok(BaseArrow::FinSet { src: n, dst: lim_size, table })
        }
        Base::FinVect { p } => {
            if d.ob.is_empty() {
                // terminal: unique map into dim 0
                return Ok(BaseArrow::FinVect { mat: Mat::zeros(0, cone.apex.card(), p) });
            }
            // solve E * x = stacked cone legs, E = stacked limit legs
            let stack = |legs: &[BaseArrow]| -> Mat {
                let mut acc: Option<Mat> = None;
                for l in legs {
                    let BaseArrow::FinVect { mat } = l else { unreachable!() };
                    acc = Some(match acc {
                        None => mat.clone(),
                        Some(a) => a.vstack(mat),
                    });
                }
                acc.unwrap()
            };
            let e = stack(&lim.legs);
            let rhs = stack(&cone.legs);
            let x = e.solve(&rhs).ok_or_else(|| Error::Internal("mediator: no solution".into()))?;
            Ok(BaseArrow::FinVect { mat: x })
        }
    }
}

/// The unique arrow out of the colimit to a competing cocone.
pub fn colimit_mediator(d: &FinDiagram, colim: &Cocone, cocone: &Cocone) -> Result<BaseArrow> {
    if !cocone.is_cocone(d) {
        return Err(Error::Precondition("not a cocone under the diagram".into()));
    }
    match d.base {
        Base::FinSet => {
            let size = colim.apex.card();
            let mut table = vec![usize::MAX; size];
            for (o, leg) in colim.legs.iter().enumerate() {
                let BaseArrow::FinSet { table: lt, .. } = leg else { unreachable!() };
                let BaseArrow::FinSet { table: ct, .. } = &cocone.legs[o] else { unreachable!() };
                for (x, &cls) in lt.iter().enumerate() {
                    let v = ct[x];
                    if table[cls] == usize::MAX {
                        table[cls] = v;
                    } else if table[cls] != v {
                        return Err(Error::Internal("mediator: cocone not constant on classes".into()));
                    }
                }
            }
            if table.iter().any(|&v| v == usize::MAX) {
                return Err(Error::Internal("mediator: class not covered".into()));
            }
            Ok(BaseArrow::FinSet { src: size, dst: cocone.apex.card(), table })
        }
        Base::FinVect { p } => {
            // h * Q = row-stacked cocone legs, Q = row-stacked colimit legs
            let hstack_all = |legs: &[BaseArrow], rows: usize| -> Mat {
                let mut acc: Option<Mat> = None;
                for l in legs {
                    let BaseArrow::FinVect { mat } = l else { unreachable!() };
                    acc = Some(match acc {
                        None => mat.clone(),
                        Some(a) => a.hstack(mat),
                    });
                }
                acc.unwrap_or_else(|| Mat::zeros(rows, 0, p))
            };
            let q = hstack_all(&colim.legs, colim.apex.card());
            let rhs = hstack_all(&cocone.legs, cocone.apex.card());
            // solve h * q = rhs  <=>  q^T h^T = rhs^T
            let ht = q
                .transpose()
                .solve(&rhs.transpose())
                .ok_or_else(|| Error::Internal("mediator: no solution".into()))?;
            Ok(BaseArrow::FinVect { mat: ht.transpose() })
        }
    }
}

// -- convenience two-legged shapes --

/// Pullback of f: B -> D <- C :g. Legs ordered (B, C, D).
pub fn pullback(base: Base, f: &BaseArrow, g: &BaseArrow) -> Result<(BaseObject, Cone)> {
    if f.dst_ob() != g.dst_ob() {
        return Err(Error::Endpoint("pullback: targets differ".into()));
    }
    let shape = FinCat::cospan();
    let d = FinDiagram::new(base, shape, vec![f.src_ob(), g.src_ob(), f.dst_ob()], vec![f.clone(), g.clone()])?;
    Ok(finite_limit(&d))
}

/// Pushout of B <- A -> C. Legs ordered (A, B, C).
pub fn pushout(base: Base, f: &BaseArrow, g: &BaseArrow) -> Result<(BaseObject, Cocone)> {
    if f.src_ob() != g.src_ob() {
        return Err(Error::Endpoint("pushout: sources differ".into()));
    }
    let shape = FinCat::span();
    let d = FinDiagram::new(base, shape, vec![f.src_ob(), f.dst_ob(), g.dst_ob()], vec![f.clone(), g.clone()])?;
    Ok(finite_colimit(&d))
}

pub fn equalizer(base: Base, f: &BaseArrow, g: &BaseArrow) -> Result<(BaseObject, Cone)> {
    if f.src_ob() != g.src_ob() || f.dst_ob() != g.dst_ob() {
        return Err(Error::Endpoint("equalizer: endpoints differ".into()));
    }
    let shape = FinCat::parallel_pair();
    let d = FinDiagram::new(base, shape, vec![f.src_ob(), f.dst_ob()], vec![f.clone(), g.clone()])?;
    Ok(finite_limit(&d))
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // keep the smaller index as root so numbering stays canonical
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_diagram(base: Base) -> FinDiagram {
        FinDiagram::new(base, FinCat::new(vec![]), vec![], vec![]).unwrap()
    }

    #[test]
    fn empty_limit_is_terminal() {
        let (t, _) = finite_limit(&empty_diagram(Base::FinSet));
        assert_eq!(t, BaseObject::FinSet { size: 1 });
        let (t, _) = finite_limit(&empty_diagram(Base::FinVect { p: 2 }));
        assert_eq!(t, BaseObject::FinVect { dim: 0 });
    }

    #[test]
    fn empty_colimit_is_initial() {
        let (t, _) = finite_colimit(&empty_diagram(Base::FinSet));
        assert_eq!(t, BaseObject::FinSet { size: 0 });
        let (t, _) = finite_colimit(&empty_diagram(Base::FinVect { p: 3 }));
        assert_eq!(t, BaseObject::FinVect { dim: 0 });
    }

    #[test]
    fn pullback_of_fold_along_id() {
        let f = BaseArrow::finset(2, 1, vec![0, 0]).unwrap();
        let id = BaseArrow::finset(1, 1, vec![0]).unwrap();
        let (ob, cone) = pullback(Base::FinSet, &f, &id).unwrap();
        assert_eq!(ob, BaseObject::FinSet { size: 2 });
        // projections commute
        let d = FinDiagram::new(
            Base::FinSet,
            FinCat::cospan(),
            vec![f.src_ob(), id.src_ob(), f.dst_ob()],
            vec![f, id],
        )
        .unwrap();
        assert!(cone.is_cone(&d));
    }

    #[test]
    fn pushout_glues_one_point() {
        // span 2 <- 1 -> 2 with both maps hitting element 0
        let f = BaseArrow::finset(1, 2, vec![0]).unwrap();
        let g = BaseArrow::finset(1, 2, vec![0]).unwrap();
        let (ob, _) = pushout(Base::FinSet, &f, &g).unwrap();
        assert_eq!(ob, BaseObject::FinSet { size: 3 });
    }

    #[test]
    fn equalizer_of_equal_maps_is_domain() {
        let f = BaseArrow::finset(3, 2, vec![0, 1, 0]).unwrap();
        let (ob, cone) = equalizer(Base::FinSet, &f, &f).unwrap();
        assert_eq!(ob, BaseObject::FinSet { size: 3 });
        assert!(cone.legs[0].is_iso());
    }

    #[test]
    fn coequalizer_of_equal_maps_is_codomain() {
        let f = BaseArrow::finvect(Mat::from_rows(2, &[vec![1, 0], vec![1, 1]]));
        let shape = FinCat::parallel_pair();
        let d = FinDiagram::new(
            Base::FinVect { p: 2 },
            shape,
            vec![f.src_ob(), f.dst_ob()],
            vec![f.clone(), f.clone()],
        )
        .unwrap();
        let (ob, cocone) = finite_colimit(&d);
        assert_eq!(ob, BaseObject::FinVect { dim: 2 });
        assert!(cocone.legs[1].is_iso());
    }

    #[test]
    fn finvect_pullback_universal() {
        let p = 2;
        let f = BaseArrow::finvect(Mat::from_rows(p, &[vec![1, 1]]));
        let g = BaseArrow::finvect(Mat::from_rows(p, &[vec![1]]));
        let (_, cone) = pullback(Base::FinVect { p }, &f, &g).unwrap();
        let d = FinDiagram::new(
            Base::FinVect { p },
            FinCat::cospan(),
            vec![f.src_ob(), g.src_ob(), f.dst_ob()],
            vec![f.clone(), g.clone()],
        )
        .unwrap();
        assert!(cone.is_cone(&d));
        // mediator from a hand cone
        let legs = vec![
            BaseArrow::finvect(Mat::from_rows(p, &[vec![1], vec![1]])),
            BaseArrow::finvect(Mat::from_rows(p, &[vec![0]])),
            BaseArrow::finvect(Mat::from_rows(p, &[vec![0]])),
        ];
        let hand = Cone { apex: BaseObject::FinVect { dim: 1 }, legs };
        assert!(hand.is_cone(&d));
        let m = limit_mediator(&d, &cone, &hand).unwrap();
        for o in 0..3 {
            assert_eq!(compose(&m, &cone.legs[o]).unwrap(), hand.legs[o]);
        }
    }
}
