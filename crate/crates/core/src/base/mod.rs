//! Concrete finite monoidal base categories.
//!
//! Two universes are supported: finite sets (cartesian) and finite
//! dimensional vector spaces over a prime field (noncartesian tensor).
//! Both use strict skeletal encodings: the monoidal product of objects is
//! literal multiplication of sizes/dimensions with row-major pairing, so
//! associators and unitors are identities.

pub mod limits;
pub mod matrix;
pub mod model;

use crate::error::{Error, Result};
use matrix::Mat;

/// Which concrete category values live in. FinVect carries its prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    FinSet,
    FinVect { p: u64 },
}

impl Base {
    pub fn unit(&self) -> BaseObject {
        match self {
            Base::FinSet => BaseObject::FinSet { size: 1 },
            Base::FinVect { .. } => BaseObject::FinVect { dim: 1 },
        }
    }

    pub fn terminal(&self) -> BaseObject {
        match self {
            Base::FinSet => BaseObject::FinSet { size: 1 },
            Base::FinVect { .. } => BaseObject::FinVect { dim: 0 },
        }
    }

    pub fn initial(&self) -> BaseObject {
        match self {
            Base::FinSet => BaseObject::FinSet { size: 0 },
            Base::FinVect { .. } => BaseObject::FinVect { dim: 0 },
        }
    }

    pub fn object(&self, n: usize) -> BaseObject {
        match self {
            Base::FinSet => BaseObject::FinSet { size: n },
            Base::FinVect { .. } => BaseObject::FinVect { dim: n },
        }
    }

    pub fn is_cartesian(&self) -> bool {
        matches!(self, Base::FinSet)
    }
}

impl std::fmt::Display for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Base::FinSet => write!(f, "finset"),
            Base::FinVect { p } => write!(f, "finvect(p={p})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseObject {
    FinSet { size: usize },
    FinVect { dim: usize },
}

impl BaseObject {
    /// Size for finset, dimension for finvect.
    pub fn card(&self) -> usize {
        match self {
            BaseObject::FinSet { size } => *size,
            BaseObject::FinVect { dim } => *dim,
        }
    }

    pub fn tensor(&self, other: &BaseObject) -> BaseObject {
        match (self, other) {
            (BaseObject::FinSet { size: a }, BaseObject::FinSet { size: b }) => {
                BaseObject::FinSet { size: a * b }
            }
            (BaseObject::FinVect { dim: a }, BaseObject::FinVect { dim: b }) => {
                BaseObject::FinVect { dim: a * b }
            }
            _ => panic!("tensor across different base kinds"),
        }
    }
}

impl std::fmt::Display for BaseObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseObject::FinSet { size } => write!(f, "set({size})"),
            BaseObject::FinVect { dim } => write!(f, "vect({dim})"),
        }
    }
}

/// A morphism of the base category. Finset arrows are total function
/// tables; finvect arrows are dst.dim x src.dim matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseArrow {
    FinSet { src: usize, dst: usize, table: Vec<usize> },
    FinVect { mat: Mat },
}

impl BaseArrow {
    pub fn finset(src: usize, dst: usize, table: Vec<usize>) -> Result<BaseArrow> {
        if table.len() != src {
            return Err(Error::Domain(format!(
                "table length {} does not match source size {}",
                table.len(),
                src
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= dst) {
            return Err(Error::Domain(format!("table value {v} out of range for target size {dst}")));
        }
        Ok(BaseArrow::FinSet { src, dst, table })
    }

    pub fn finvect(mat: Mat) -> BaseArrow {
        BaseArrow::FinVect { mat }
    }

    pub fn identity(base: Base, ob: &BaseObject) -> BaseArrow {
        match (base, ob) {
            (Base::FinSet, BaseObject::FinSet { size }) => BaseArrow::FinSet {
                src: *size,
                dst: *size,
                table: (0..*size).collect(),
            },
            (Base::FinVect { p }, BaseObject::FinVect { dim }) => {
                BaseArrow::FinVect { mat: Mat::identity(*dim, p) }
            }
            _ => panic!("identity: object does not live in base {base}"),
        }
    }

    pub fn src_ob(&self) -> BaseObject {
        match self {
            BaseArrow::FinSet { src, .. } => BaseObject::FinSet { size: *src },
            BaseArrow::FinVect { mat } => BaseObject::FinVect { dim: mat.cols },
        }
    }

    pub fn dst_ob(&self) -> BaseObject {
        match self {
            BaseArrow::FinSet { dst, .. } => BaseObject::FinSet { size: *dst },
            BaseArrow::FinVect { mat } => BaseObject::FinVect { dim: mat.rows },
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            BaseArrow::FinSet { src, dst, table } => {
                src == dst && table.iter().enumerate().all(|(i, &v)| i == v)
            }
            BaseArrow::FinVect { mat } => {
                mat.rows == mat.cols && *mat == Mat::identity(mat.rows, mat.p)
            }
        }
    }

    pub fn is_injective(&self) -> bool {
        match self {
            BaseArrow::FinSet { dst, table, .. } => {
                let mut seen = vec![false; *dst];
                for &v in table {
                    if seen[v] {
                        return false;
                    }
                    seen[v] = true;
                }
                true
            }
            BaseArrow::FinVect { mat } => mat.rank() == mat.cols,
        }
    }

    pub fn is_surjective(&self) -> bool {
        match self {
            BaseArrow::FinSet { dst, table, .. } => {
                let mut seen = vec![false; *dst];
                for &v in table {
                    seen[v] = true;
                }
                seen.iter().all(|&b| b)
            }
            BaseArrow::FinVect { mat } => mat.rank() == mat.rows,
        }
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn inverse(&self) -> Result<BaseArrow> {
        if !self.is_iso() {
            return Err(Error::Precondition("arrow is not invertible".into()));
        }
        match self {
            BaseArrow::FinSet { src, dst, table } => {
                let mut inv = vec![0usize; *dst];
                for (i, &v) in table.iter().enumerate() {
                    inv[v] = i;
                }
                Ok(BaseArrow::FinSet { src: *dst, dst: *src, table: inv })
            }
            BaseArrow::FinVect { mat } => {
                let id = Mat::identity(mat.rows, mat.p);
                let inv = mat.solve(&id).ok_or_else(|| Error::Internal("invert failed".into()))?;
                Ok(BaseArrow::FinVect { mat: inv })
            }
        }
    }
}

/// Composition g after f.
pub fn compose(f: &BaseArrow, g: &BaseArrow) -> Result<BaseArrow> {
    match (f, g) {
        (BaseArrow::FinSet { src, dst, table }, BaseArrow::FinSet { src: gs, dst: gd, table: gt }) => {
            if dst != gs {
                return Err(Error::Endpoint(format!("finset compose: {dst} vs {gs}")));
            }
            let composed = table.iter().map(|&v| gt[v]).collect();
            Ok(BaseArrow::FinSet { src: *src, dst: *gd, table: composed })
        }
        (BaseArrow::FinVect { mat: mf }, BaseArrow::FinVect { mat: mg }) => {
            if mf.rows != mg.cols || mf.p != mg.p {
                return Err(Error::Endpoint(format!(
                    "finvect compose: {}x{} after {}x{}",
                    mg.rows, mg.cols, mf.rows, mf.cols
                )));
            }
            Ok(BaseArrow::FinVect { mat: mg.mul(mf)? })
        }
        _ => Err(Error::BaseMismatch("compose across finset/finvect".into())),
    }
}

/// Monoidal product of arrows: pairing-indexed product map for finset,
/// Kronecker product for finvect (both row-major).
pub fn tensor(f: &BaseArrow, g: &BaseArrow) -> BaseArrow {
    match (f, g) {
        (
            BaseArrow::FinSet { src: fs, dst: fd, table: ft },
            BaseArrow::FinSet { src: gs, dst: gd, table: gt },
        ) => {
            let mut table = Vec::with_capacity(fs * gs);
            for i in 0..*fs {
                for j in 0..*gs {
                    table.push(ft[i] * gd + gt[j]);
                }
            }
            BaseArrow::FinSet { src: fs * gs, dst: fd * gd, table }
        }
        (BaseArrow::FinVect { mat: mf }, BaseArrow::FinVect { mat: mg }) => {
            BaseArrow::FinVect { mat: mf.kronecker(mg) }
        }
        _ => panic!("tensor across finset/finvect"),
    }
}

/// Left-to-right tensor of a nonempty arrow list.
pub fn tensor_many(arrows: &[BaseArrow]) -> BaseArrow {
    let mut it = arrows.iter();
    let first = it.next().expect("tensor_many of empty list").clone();
    it.fold(first, |acc, a| tensor(&acc, a))
}

pub fn tensor_objects(obs: &[BaseObject]) -> BaseObject {
    let mut it = obs.iter();
    let first = *it.next().expect("tensor_objects of empty list");
    it.fold(first, |acc, o| acc.tensor(o))
}

/// Every arrow src -> dst in deterministic order. Finset: all function
/// tables in lexicographic order. Finvect: all matrices in lexicographic
/// row-major order. Sizes must stay tiny.
pub fn all_arrows(base: Base, src: &BaseObject, dst: &BaseObject) -> Vec<BaseArrow> {
    match (base, src, dst) {
        (Base::FinSet, BaseObject::FinSet { size: s }, BaseObject::FinSet { size: d }) => {
            if *s == 0 {
                return vec![BaseArrow::FinSet { src: 0, dst: *d, table: vec![] }];
            }
            if *d == 0 {
                return vec![];
            }
            let mut out = Vec::new();
            let mut table = vec![0usize; *s];
            loop {
                out.push(BaseArrow::FinSet { src: *s, dst: *d, table: table.clone() });
                let mut carry = true;
                for i in (0..*s).rev() {
                    if carry {
                        table[i] += 1;
                        if table[i] == *d {
                            table[i] = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
            }
            out
        }
        (Base::FinVect { p }, BaseObject::FinVect { dim: s }, BaseObject::FinVect { dim: d }) => {
            let entries = d * s;
            let total = (p as u128).checked_pow(entries as u32).expect("arrow space too large");
            let mut out = Vec::with_capacity(total as usize);
            let mut flat = vec![0u64; entries];
            loop {
                let mut m = Mat::zeros(*d, *s, p);
                if *s > 0 {
                    for (k, &v) in flat.iter().enumerate() {
                        m.set(k / s, k % s, v);
                    }
                }
                out.push(BaseArrow::FinVect { mat: m });
                if entries == 0 {
                    break;
                }
                let mut carry = true;
                for i in (0..entries).rev() {
                    if carry {
                        flat[i] += 1;
                        if flat[i] == p {
                            flat[i] = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
            }
            out
        }
        _ => panic!("all_arrows: objects do not match base"),
    }
}

/// Renders an arrow in the project-file literal syntax.
pub fn arrow_literal(f: &BaseArrow) -> String {
    match f {
        BaseArrow::FinSet { table, .. } => {
            let items: Vec<String> = table.iter().map(|v| v.to_string()).collect();
            format!("[{}]", items.join(","))
        }
        BaseArrow::FinVect { mat } => {
            let rows: Vec<String> = (0..mat.rows)
                .map(|i| {
                    let items: Vec<String> = mat.row(i).iter().map(|v| v.to_string()).collect();
                    format!("[{}]", items.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_finset_roundtrip_to_identity() {
        // f = [0->1]: 1->2, g = [0->0,1->0]: 2->1, g.f = id on one point
        let f = BaseArrow::finset(1, 2, vec![1]).unwrap();
        let g = BaseArrow::finset(2, 1, vec![0, 0]).unwrap();
        let gf = compose(&f, &g).unwrap();
        assert!(gf.is_identity());
    }

    #[test]
    fn compose_finvect_f2() {
        // [[1,1]] after [[1],[1]] = [0] over F_2
        let f = BaseArrow::finvect(Mat::from_rows(2, &[vec![1], vec![1]]));
        let g = BaseArrow::finvect(Mat::from_rows(2, &[vec![1, 1]]));
        let gf = compose(&f, &g).unwrap();
        assert_eq!(gf, BaseArrow::finvect(Mat::from_rows(2, &[vec![0]])));
    }

    #[test]
    fn compose_identity_laws() {
        let f = BaseArrow::finset(2, 3, vec![2, 0]).unwrap();
        let id2 = BaseArrow::identity(Base::FinSet, &BaseObject::FinSet { size: 2 });
        let id3 = BaseArrow::identity(Base::FinSet, &BaseObject::FinSet { size: 3 });
        assert_eq!(compose(&id2, &f).unwrap(), f);
        assert_eq!(compose(&f, &id3).unwrap(), f);
    }

    #[test]
    fn compose_endpoint_error() {
        let f = BaseArrow::finset(1, 2, vec![0]).unwrap();
        let g = BaseArrow::finset(3, 1, vec![0, 0, 0]).unwrap();
        assert!(matches!(compose(&f, &g), Err(Error::Endpoint(_))));
    }

    #[test]
    fn tensor_of_identities() {
        let a = BaseObject::FinSet { size: 2 };
        let b = BaseObject::FinSet { size: 3 };
        let t = tensor(
            &BaseArrow::identity(Base::FinSet, &a),
            &BaseArrow::identity(Base::FinSet, &b),
        );
        assert!(t.is_identity());
        assert_eq!(t.src_ob().card(), 6);
    }

    #[test]
    fn tensor_finvect_kronecker() {
        let f = BaseArrow::finvect(Mat::from_rows(2, &[vec![1, 0]]));
        let g = BaseArrow::finvect(Mat::from_rows(2, &[vec![1], vec![1]]));
        let t = tensor(&f, &g);
        assert_eq!(t, BaseArrow::finvect(Mat::from_rows(2, &[vec![1, 0], vec![1, 0]])));
    }

    #[test]
    fn finset_pairing_index() {
        // (1,2) in 2x3 sits at index 1*3+2 = 5
        let a = BaseObject::FinSet { size: 2 };
        let b = BaseObject::FinSet { size: 3 };
        assert_eq!(a.tensor(&b).card(), 6);
        // the pairing is realized by tensor of "point picks":
        let pick1 = BaseArrow::finset(1, 2, vec![1]).unwrap();
        let pick2 = BaseArrow::finset(1, 3, vec![2]).unwrap();
        let pair = tensor(&pick1, &pick2);
        assert_eq!(pair, BaseArrow::finset(1, 6, vec![5]).unwrap());
    }

    #[test]
    fn tensor_interchange() {
        let f = BaseArrow::finset(2, 2, vec![1, 1]).unwrap();
        let g = BaseArrow::finset(2, 3, vec![0, 2]).unwrap();
        let h = BaseArrow::finset(3, 1, vec![0, 0, 0]).unwrap();
        let k = BaseArrow::finset(1, 2, vec![1]).unwrap();
        // (g.f) tensor (k.h)... endpoints: f: 2->2, g: 2->3; h: 3->1, k: 1->2
        let lhs = tensor(&compose(&f, &g).unwrap(), &compose(&h, &k).unwrap());
        let rhs = compose(&tensor(&f, &h), &tensor(&g, &k)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
