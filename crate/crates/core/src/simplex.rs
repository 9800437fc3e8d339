//! Monotone map combinatorics shared by the ordinal-based builders.
//!
//! Maps n -> k are tables of length n with nondecreasing values in 0..k.
//! The augmented-simplex side uses ordinals {0..n-1} (the empty ordinal is
//! allowed); the simplicial side uses pointed ordinals {0..n}.

/// All monotone maps {0..n-1} -> {0..k-1} in lexicographic table order.
pub fn monotone_maps(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if k == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.clone());
        // next nondecreasing table
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < k {
                cur[i] += 1;
                let v = cur[i];
                for j in i + 1..n {
                    cur[j] = v;
                }
                break;
            }
        }
    }
}

pub fn is_monotone(table: &[usize]) -> bool {
    table.windows(2).all(|w| w[0] <= w[1])
}

pub fn is_injective_table(table: &[usize]) -> bool {
    table.windows(2).all(|w| w[0] < w[1])
}

pub fn is_surjective_table(table: &[usize], k: usize) -> bool {
    let mut seen = vec![false; k];
    for &v in table {
        seen[v] = true;
    }
    seen.iter().all(|&b| b)
}

pub fn compose_tables(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&v| g[v]).collect()
}

/// Ordinal addition of maps: block sum of f: n->k and g: n2->k2.
pub fn ordinal_add(f: &[usize], k: usize, g: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    out.extend_from_slice(f);
    out.extend(g.iter().map(|&v| v + k));
    out
}

/// The Joyal dual of a monotone map phi: {0..n-1} -> {0..k-1}, as the
/// extremity-preserving monotone map {0..k} -> {0..n} with
/// dual(j) = #{ i < n : phi(i) < j }.
pub fn joyal_dual(phi: &[usize], n: usize, k: usize) -> Vec<usize> {
    debug_assert_eq!(phi.len(), n);
    (0..=k).map(|j| phi.iter().filter(|&&v| v < j).count()).collect()
}

/// Inverse of `joyal_dual`: from g: {0..k} -> {0..n} extremity-preserving
/// monotone back to phi: {0..n-1} -> {0..k-1} with
/// phi(i) = max { j : g(j) <= i }.
pub fn joyal_dual_inverse(g: &[usize], n: usize, k: usize) -> Vec<usize> {
    debug_assert_eq!(g.len(), k + 1);
    debug_assert_eq!(g[0], 0);
    debug_assert_eq!(g[k], n);
    (0..n)
        .map(|i| (0..=k).rev().find(|&j| g[j] <= i).expect("extremity endpoint"))
        .collect()
}

/// Extremity preservation for a table on {0..k} -> {0..n}.
pub fn preserves_extremities(g: &[usize], n: usize) -> bool {
    !g.is_empty() && g[0] == 0 && *g.last().unwrap() == n
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomial() {
        // |maps(n,k)| = C(n+k-1, n) for n,k >= 1
        for n in 1..=4 {
            for k in 1..=4 {
                assert_eq!(monotone_maps(n, k).len(), binomial(n + k - 1, n), "n={n} k={k}");
            }
        }
        assert_eq!(monotone_maps(0, 0).len(), 1);
        assert_eq!(monotone_maps(2, 0).len(), 0);
    }

    #[test]
    fn unique_surjection_2_to_1() {
        let surj: Vec<_> =
            monotone_maps(2, 1).into_iter().filter(|t| is_surjective_table(t, 1)).collect();
        assert_eq!(surj, vec![vec![0, 0]]);
    }

    #[test]
    fn three_maps_2_to_2() {
        assert_eq!(monotone_maps(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn joyal_generators() {
        // mu: 2 -> 1 dualizes to 0->0, 1->2
        assert_eq!(joyal_dual(&[0, 0], 2, 1), vec![0, 2]);
        // eta: 0 -> 1 dualizes to the constant map {0,1} -> {0}
        assert_eq!(joyal_dual(&[], 0, 1), vec![0, 0]);
        // identity dualizes to identity
        assert_eq!(joyal_dual(&[0, 1, 2], 3, 3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn joyal_roundtrip_everywhere() {
        for n in 0..=4 {
            for k in 0..=4 {
                for phi in monotone_maps(n, k) {
                    let d = joyal_dual(&phi, n, k);
                    assert!(is_monotone(&d));
                    assert!(preserves_extremities(&d, n));
                    assert_eq!(joyal_dual_inverse(&d, n, k), phi);
                }
            }
        }
    }

    #[test]
    fn joyal_contravariant() {
        // dual(g o f) = dual(f) o dual(g) as tables
        for f in monotone_maps(2, 3) {
            for g in monotone_maps(3, 2) {
                let gf = compose_tables(&f, &g);
                let lhs = joyal_dual(&gf, 2, 2);
                let via = compose_tables(&joyal_dual(&g, 3, 2), &joyal_dual(&f, 2, 3));
                assert_eq!(lhs, via);
            }
        }
    }
}
