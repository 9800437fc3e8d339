//! Model data on the base categories: weak equivalence / cofibration /
//! fibration predicates, registered factorization systems, and a lifting
//! solver.
//!
//! FinSet carries (we = bijections, cof = all, fib = all) plus the
//! standalone (surjections, injections) orthogonal factorization system.
//! FinVect carries (we = all, cof = monos, fib = epis) plus the image
//! factorization (epi, mono) as its standalone system.

use super::matrix::Mat;
use super::{compose, Base, BaseArrow};
use crate::error::{Error, Result};

/// Predicates a class of arrows can be checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowPred {
    All,
    Bijections,
    Injections,
    Surjections,
}

impl ArrowPred {
    pub fn holds(&self, f: &BaseArrow) -> bool {
        match self {
            ArrowPred::All => true,
            ArrowPred::Bijections => f.is_iso(),
            ArrowPred::Injections => f.is_injective(),
            ArrowPred::Surjections => f.is_surjective(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ArrowPred::All => "all",
            ArrowPred::Bijections => "bijections",
            ArrowPred::Injections => "injections",
            ArrowPred::Surjections => "surjections",
        }
    }
}

/// Names for the registered factorization systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactSystem {
    /// (cof and we, fib)
    AcofFib,
    /// (cof, fib and we)
    CofAfib,
    /// the standalone orthogonal factorization system
    Ofs,
}

impl FactSystem {
    pub fn parse(s: &str) -> Result<FactSystem> {
        match s {
            "acof_fib" => Ok(FactSystem::AcofFib),
            "cof_afib" => Ok(FactSystem::CofAfib),
            "ofs" => Ok(FactSystem::Ofs),
            other => Err(Error::UnknownSystem(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FactSystem::AcofFib => "acof_fib",
            FactSystem::CofAfib => "cof_afib",
            FactSystem::Ofs => "ofs",
        }
    }

    pub fn all() -> [FactSystem; 3] {
        [FactSystem::AcofFib, FactSystem::CofAfib, FactSystem::Ofs]
    }
}

/// Model structure data plus the standalone factorization system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelData {
    pub base: Base,
    pub we: ArrowPred,
    pub cof: ArrowPred,
    pub fib: ArrowPred,
    pub ofs_left: ArrowPred,
    pub ofs_right: ArrowPred,
}

impl ModelData {
    pub fn for_base(base: Base) -> ModelData {
        match base {
            Base::FinSet => ModelData {
                base,
                we: ArrowPred::Bijections,
                cof: ArrowPred::All,
                fib: ArrowPred::All,
                ofs_left: ArrowPred::Surjections,
                ofs_right: ArrowPred::Injections,
            },
            Base::FinVect { .. } => ModelData {
                base,
                we: ArrowPred::All,
                cof: ArrowPred::Injections,
                fib: ArrowPred::Surjections,
                ofs_left: ArrowPred::Surjections,
                ofs_right: ArrowPred::Injections,
            },
        }
    }

    /// Deliberately broken variant for mutation tests: the fibration class
    /// is narrowed to isomorphisms, so lifting certificates must fail.
    pub fn with_weakened_fib(mut self) -> ModelData {
        self.fib = ArrowPred::Bijections;
        self
    }

    pub fn is_we(&self, f: &BaseArrow) -> bool {
        self.we.holds(f)
    }

    pub fn is_cof(&self, f: &BaseArrow) -> bool {
        self.cof.holds(f)
    }

    pub fn is_fib(&self, f: &BaseArrow) -> bool {
        self.fib.holds(f)
    }

    /// Left/right class predicates of a registered system.
    pub fn classes(&self, sys: FactSystem) -> (Box<dyn Fn(&BaseArrow) -> bool + '_>, Box<dyn Fn(&BaseArrow) -> bool + '_>) {
        match sys {
            FactSystem::AcofFib => (
                Box::new(move |f| self.is_cof(f) && self.is_we(f)),
                Box::new(move |f| self.is_fib(f)),
            ),
            FactSystem::CofAfib => (
                Box::new(move |f| self.is_cof(f)),
                Box::new(move |f| self.is_fib(f) && self.is_we(f)),
            ),
            FactSystem::Ofs => (
                Box::new(move |f| self.ofs_left.holds(f)),
                Box::new(move |f| self.ofs_right.holds(f)),
            ),
        }
    }

    pub fn in_left(&self, sys: FactSystem, f: &BaseArrow) -> bool {
        self.classes(sys).0(f)
    }

    pub fn in_right(&self, sys: FactSystem, f: &BaseArrow) -> bool {
        self.classes(sys).1(f)
    }

    /// Factors f = p o i with i in the left class and p in the right class
    /// of the named system.
    pub fn factorize(&self, f: &BaseArrow, sys: FactSystem) -> Result<(BaseArrow, BaseArrow)> {
        let (i, p) = match (self.base, sys) {
            (Base::FinSet, FactSystem::Ofs) => image_factorization(f),
            (Base::FinSet, FactSystem::AcofFib) => {
                // (bijections, all): f = f o id
                (BaseArrow::identity(self.base, &f.src_ob()), f.clone())
            }
            (Base::FinSet, FactSystem::CofAfib) => {
                // (all, bijections): f = id o f
                (f.clone(), BaseArrow::identity(self.base, &f.dst_ob()))
            }
            (Base::FinVect { .. }, FactSystem::Ofs) => image_factorization(f),
            (Base::FinVect { .. }, _) => graph_factorization(f)?,
        };
        debug_assert_eq!(compose(&i, &p)?, *f);
        if !self.in_left(sys, &i) || !self.in_right(sys, &p) {
            return Err(Error::Internal(format!(
                "factorization of {} left system {}",
                super::arrow_literal(f),
                sys.name()
            )));
        }
        Ok((i, p))
    }
}

/// Epi-mono image factorization. FinSet: direct image with canonical
/// (ascending) ordering. FinVect: column space with reduced echelon basis.
pub fn image_factorization(f: &BaseArrow) -> (BaseArrow, BaseArrow) {
    match f {
        BaseArrow::FinSet { src, dst, table } => {
            let mut image: Vec<usize> = table.clone();
            image.sort_unstable();
            image.dedup();
            let pos = |v: usize| image.binary_search(&v).unwrap();
            let i = BaseArrow::FinSet {
                src: *src,
                dst: image.len(),
                table: table.iter().map(|&v| pos(v)).collect(),
            };
            let p = BaseArrow::FinSet { src: image.len(), dst: *dst, table: image };
            (i, p)
        }
        BaseArrow::FinVect { mat } => {
            // rref of the transpose gives a canonical row basis of the
            // column space; embed is that basis transposed back
            let (r, pivots) = mat.transpose().rref();
            let rank = pivots.len();
            let mut embed = Mat::zeros(mat.rows, rank, mat.p);
            for k in 0..rank {
                for c in 0..mat.rows {
                    embed.set(c, k, r.get(k, c));
                }
            }
            let proj = embed.solve(mat).expect("image factorization: solve must succeed");
            (BaseArrow::FinVect { mat: proj }, BaseArrow::FinVect { mat: embed })
        }
    }
}

/// Mono-epi factorization through the graph: i = (id, f): A -> A (+) B,
/// p = projection onto B. Only meaningful in finvect.
pub fn graph_factorization(f: &BaseArrow) -> Result<(BaseArrow, BaseArrow)> {
    let BaseArrow::FinVect { mat } = f else {
        return Err(Error::Domain("graph factorization needs finvect".into()));
    };
    let a = mat.cols;
    let b = mat.rows;
    let p = mat.p;
    let i = Mat::identity(a, p).vstack(mat);
    let mut proj = Mat::zeros(b, a + b, p);
    for r in 0..b {
        proj.set(r, a + r, 1);
    }
    Ok((BaseArrow::FinVect { mat: i }, BaseArrow::FinVect { mat: proj }))
}

/// A commuting lifting square: p o top = bottom o i must hold, and the
/// solver looks for h with h o i = top and p o h = bottom.
#[derive(Debug, Clone)]
pub struct LiftSquare {
    pub i: BaseArrow,
    pub p: BaseArrow,
    pub top: BaseArrow,
    pub bottom: BaseArrow,
}

impl LiftSquare {
    pub fn commutes(&self) -> bool {
        let lhs = compose(&self.top, &self.p);
        let rhs = compose(&self.i, &self.bottom);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// Finds a diagonal filler, first in deterministic order when several
/// exist. FinSet: per-element choice (candidates are independent across
/// elements of the middle object). FinVect: linear system solve.
pub fn find_lift(sq: &LiftSquare) -> Result<Option<BaseArrow>> {
    if !sq.commutes() {
        return Err(Error::Precondition("lifting square does not commute".into()));
    }
    match (&sq.i, &sq.p, &sq.top, &sq.bottom) {
        (
            BaseArrow::FinSet { src: ia, dst: ib, table: it },
            BaseArrow::FinSet { src: px, dst: _py, table: pt },
            BaseArrow::FinSet { table: tt, .. },
            BaseArrow::FinSet { table: bt, .. },
        ) => {
            let _ = ia;
            let mut h = vec![usize::MAX; *ib];
            // forced on the image of i
            for (a, &b) in it.iter().enumerate() {
                if h[b] == usize::MAX {
                    h[b] = tt[a];
                } else if h[b] != tt[a] {
                    return Ok(None);
                }
            }
            for b in 0..*ib {
                if h[b] != usize::MAX {
                    if pt[h[b]] != bt[b] {
                        return Ok(None);
                    }
                    continue;
                }
                // smallest preimage of bottom(b) under p
                match (0..*px).find(|&x| pt[x] == bt[b]) {
                    Some(x) => h[b] = x,
                    None => return Ok(None),
                }
            }
            Ok(Some(BaseArrow::FinSet { src: *ib, dst: *px, table: h }))
        }
        (
            BaseArrow::FinVect { mat: im },
            BaseArrow::FinVect { mat: pm },
            BaseArrow::FinVect { mat: tm },
            BaseArrow::FinVect { mat: bm },
        ) => {
            let p = im.p;
            let (a, b) = (im.cols, im.rows);
            let (x, y) = (pm.cols, pm.rows);
            // unknowns: h (x rows, b cols), flattened column-major by
            // variable index v = r*b + c
            let nvar = x * b;
            let neq = x * a + y * b;
            let mut sys = Mat::zeros(neq, nvar, p);
            let mut rhs = Mat::zeros(neq, 1, p);
            let mut eq = 0;
            // h * i = top: for each (r, c in A): sum_k h[r,k] i[k,c] = top[r,c]
            for r in 0..x {
                for c in 0..a {
                    for k in 0..b {
                        sys.set(eq, r * b + k, im.get(k, c));
                    }
                    rhs.set(eq, 0, tm.get(r, c));
                    eq += 1;
                }
            }
            // p * h = bottom: for each (r in Y, c in B): sum_k p[r,k] h[k,c] = bottom[r,c]
            for r in 0..y {
                for c in 0..b {
                    for k in 0..x {
                        sys.set(eq, k * b + c, pm.get(r, k));
                    }
                    rhs.set(eq, 0, bm.get(r, c));
                    eq += 1;
                }
            }
            match sys.solve(&rhs) {
                None => Ok(None),
                Some(sol) => {
                    let mut h = Mat::zeros(x, b, p);
                    for r in 0..x {
                        for c in 0..b {
                            h.set(r, c, sol.get(r * b + c, 0));
                        }
                    }
                    Ok(Some(BaseArrow::FinVect { mat: h }))
                }
            }
        }
        _ => Err(Error::BaseMismatch("lift across finset/finvect".into())),
    }
}

/// Counts diagonal fillers (used for orthogonality certification).
pub fn count_lifts(base: Base, sq: &LiftSquare) -> Result<usize> {
    if !sq.commutes() {
        return Err(Error::Precondition("lifting square does not commute".into()));
    }
    let mid_src = sq.i.dst_ob();
    let mid_dst = sq.p.src_ob();
    let mut count = 0;
    for h in super::all_arrows(base, &mid_src, &mid_dst) {
        let left = compose(&sq.i, &h)?;
        let right = compose(&h, &sq.p)?;
        if left == sq.top && right == sq.bottom {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseObject;

    #[test]
    fn finvect_graph_factorization_example() {
        // f = [[1,1]]: 2 -> 1 over F_2: i = (id,f): 2 -> 3 mono, p: 3 -> 1 epi
        let f = BaseArrow::finvect(Mat::from_rows(2, &[vec![1, 1]]));
        let md = ModelData::for_base(Base::FinVect { p: 2 });
        let (i, p) = md.factorize(&f, FactSystem::AcofFib).unwrap();
        assert!(i.is_injective());
        assert!(p.is_surjective());
        assert_eq!(i.dst_ob(), BaseObject::FinVect { dim: 3 });
        assert_eq!(compose(&i, &p).unwrap(), f);
        let BaseArrow::FinVect { mat } = &i else { unreachable!() };
        assert_eq!(*mat, Mat::from_rows(2, &[vec![1, 0], vec![0, 1], vec![1, 1]]));
    }

    #[test]
    fn finset_image_factorization_example() {
        // f = [0->1,1->1]: 2 -> 2: i = [0,0]: 2 -> 1 epi, p = [1]: 1 -> 2 mono
        let f = BaseArrow::finset(2, 2, vec![1, 1]).unwrap();
        let md = ModelData::for_base(Base::FinSet);
        let (i, p) = md.factorize(&f, FactSystem::Ofs).unwrap();
        assert_eq!(i, BaseArrow::finset(2, 1, vec![0, 0]).unwrap());
        assert_eq!(p, BaseArrow::finset(1, 2, vec![1]).unwrap());
    }

    #[test]
    fn factorize_identity() {
        for base in [Base::FinSet, Base::FinVect { p: 2 }] {
            let id = BaseArrow::identity(base, &base.object(2));
            let md = ModelData::for_base(base);
            for sys in FactSystem::all() {
                let (i, p) = md.factorize(&id, sys).unwrap();
                assert_eq!(compose(&i, &p).unwrap(), id);
            }
        }
    }

    #[test]
    fn lift_when_i_iso() {
        let i = BaseArrow::finset(2, 2, vec![1, 0]).unwrap();
        let p = BaseArrow::finset(3, 2, vec![0, 0, 1]).unwrap();
        let top = BaseArrow::finset(2, 3, vec![0, 2]).unwrap();
        let bottom = compose(&i.inverse().unwrap(), &compose(&top, &p).unwrap()).unwrap();
        let sq = LiftSquare { i: i.clone(), p, top: top.clone(), bottom };
        let h = find_lift(&sq).unwrap().unwrap();
        assert_eq!(compose(&i, &h).unwrap(), top);
    }

    #[test]
    fn lift_p_iso_equals_bottom() {
        // i = [0]: 1 -> 2, p = id: 1 -> 1, bottom = [0,0], top = [0]
        let i = BaseArrow::finset(1, 2, vec![0]).unwrap();
        let p = BaseArrow::finset(1, 1, vec![0]).unwrap();
        let top = BaseArrow::finset(1, 1, vec![0]).unwrap();
        let bottom = BaseArrow::finset(2, 1, vec![0, 0]).unwrap();
        let sq = LiftSquare { i, p, top, bottom: bottom.clone() };
        let h = find_lift(&sq).unwrap().unwrap();
        assert_eq!(h, bottom);
    }

    #[test]
    fn finvect_mono_epi_lift_exists() {
        // i mono 1->2, p epi 2->1 over F_2: every commuting square lifts
        let base = Base::FinVect { p: 2 };
        let i = BaseArrow::finvect(Mat::from_rows(2, &[vec![1], vec![0]]));
        let p = BaseArrow::finvect(Mat::from_rows(2, &[vec![0, 1]]));
        let mut total = 0;
        let mut lifted = 0;
        for top in crate::base::all_arrows(base, &base.object(1), &base.object(2)) {
            for bottom in crate::base::all_arrows(base, &base.object(2), &base.object(1)) {
                let sq = LiftSquare {
                    i: i.clone(),
                    p: p.clone(),
                    top: top.clone(),
                    bottom: bottom.clone(),
                };
                if sq.commutes() {
                    total += 1;
                    if find_lift(&sq).unwrap().is_some() {
                        lifted += 1;
                    }
                }
            }
        }
        assert!(total > 0);
        assert_eq!(total, lifted);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let i = BaseArrow::finset(1, 2, vec![0]).unwrap();
        let p = BaseArrow::finset(2, 2, vec![0, 1]).unwrap();
        let top = BaseArrow::finset(1, 2, vec![1]).unwrap();
        let bottom = BaseArrow::finset(2, 2, vec![0, 0]).unwrap();
        let sq = LiftSquare { i, p, top, bottom };
        assert!(matches!(find_lift(&sq), Err(Error::Precondition(_))));
    }
}
