//! Independent oracles on machine integers. They read only weights, genera
//! and edges from a graph and share no code with the library's algorithms.

#![allow(dead_code)]

use singinv::ResolutionGraph;

pub type Mat = Vec<Vec<i64>>;

pub fn matrix(g: &ResolutionGraph) -> Mat {
    let n = g.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, v) in g.vertices().iter().enumerate() {
        m[i][i] = v.weight;
    }
    for &(a, b) in g.edges() {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    m
}

pub fn apply(m: &Mat, z: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(z).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn dot(m: &Mat, a: &[i64], b: &[i64]) -> i64 {
    apply(m, b).iter().zip(a).map(|(x, y)| x * y).sum()
}

/// `K.E_i = -E_i^2 + 2 g_i - 2`.
pub fn canonical_degrees(g: &ResolutionGraph) -> Vec<i64> {
    g.vertices()
        .iter()
        .map(|v| -v.weight + 2 * v.genus as i64 - 2)
        .collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Mat = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * det(&minor);
    }
    total
}

/// Sylvester on `-M` with cofactor determinants.
pub fn negative_definite(m: &Mat) -> bool {
    let n = m.len();
    (1..=n).all(|k| {
        let minor: Mat = m[..k]
            .iter()
            .map(|r| r[..k].iter().map(|v| -v).collect())
            .collect();
        det(&minor) > 0
    })
}

/// `ceil(x)` for each `x` solving `m x = b`, via Cramer's rule.
pub fn ceil_solution(m: &Mat, b: &[i64]) -> Vec<i64> {
    let d = det(m);
    assert_ne!(d, 0);
    (0..m.len())
        .map(|i| {
            let mi: Mat = m
                .iter()
                .zip(b)
                .map(|(row, &bv)| {
                    let mut r = row.clone();
                    r[i] = bv;
                    r
                })
                .collect();
            let (mut num, mut den) = (det(&mi), d);
            if den < 0 {
                num = -num;
                den = -den;
            }
            let q = num.div_euclid(den);
            (if num.rem_euclid(den) == 0 { q } else { q + 1 }) as i64
        })
        .collect()
}

/// Calls `f` on every integer vector with `lo <= v <= hi`.
pub fn for_box(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let n = lo.len();
    let mut cur = lo.to_vec();
    loop {
        f(&cur);
        let mut i = 0;
        while i < n {
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
            i += 1;
        }
        if i == n {
            return;
        }
    }
}

pub fn anti_nef(m: &Mat, z: &[i64]) -> bool {
    apply(m, z).iter().all(|&v| v <= 0)
}

/// Least positive anti-nef cycle in the box `[0, bound]^n`, by exhaustive
/// search (componentwise minimum of all solutions).
pub fn brute_fundamental_cycle(m: &Mat, bound: i64) -> Option<Vec<i64>> {
    let n = m.len();
    let mut best: Option<Vec<i64>> = None;
    for_box(&vec![0; n], &vec![bound; n], |z| {
        if z.iter().any(|&v| v > 0) && anti_nef(m, z) {
            best = Some(match best.take() {
                None => z.to_vec(),
                Some(b) => b.iter().zip(z).map(|(a, c)| *a.min(c)).collect(),
            });
        }
    });
    best
}

/// `true` iff `z` is positive, anti-nef, and no other positive anti-nef
/// cycle lies in the box `[0, z]`. Since anti-nef cycles are closed under
/// componentwise minimum, this makes `z` the fundamental cycle.
pub fn is_fundamental_cycle(m: &Mat, z: &[i64]) -> bool {
    if !z.iter().any(|&v| v > 0) || !anti_nef(m, z) {
        return false;
    }
    let mut others = false;
    for_box(&vec![0; z.len()], z, |c| {
        if c != z && c.iter().any(|&v| v > 0) && anti_nef(m, c) {
            others = true;
        }
    });
    !others
}

pub fn satisfies_bound(m: &Mat, d: &[i64], l: &[i64]) -> bool {
    apply(m, d).iter().zip(l).all(|(a, b)| a <= b)
}

/// `true` iff `d` is the least integral cycle with `d.E_i <= l_i`: it is
/// feasible and no other feasible cycle lies in `[ceil(a), d]`, where every
/// feasible cycle dominates the rational solution `a` of `M a = l`.
pub fn is_round_up(m: &Mat, l: &[i64], d: &[i64]) -> bool {
    if !satisfies_bound(m, d, l) {
        return false;
    }
    let lo = ceil_solution(m, l);
    if lo.iter().zip(d).any(|(a, b)| a > b) {
        return false;
    }
    let mut others = false;
    for_box(&lo, d, |c| {
        if c != d && satisfies_bound(m, c, l) {
            others = true;
        }
    });
    !others
}

/// Least feasible cycle in the box `[ceil(a), ceil(a) + extra]` by
/// exhaustive search.
pub fn brute_round_up(m: &Mat, l: &[i64], extra: i64) -> Option<Vec<i64>> {
    let lo = ceil_solution(m, l);
    let hi: Vec<i64> = lo.iter().map(|v| v + extra).collect();
    let mut best: Option<Vec<i64>> = None;
    for_box(&lo, &hi, |c| {
        if satisfies_bound(m, c, l) {
            best = Some(match best.take() {
                None => c.to_vec(),
                Some(b) => b.iter().zip(c).map(|(a, x)| *a.min(x)).collect(),
            });
        }
    });
    best
}

/// `E.(E+3K)/2` from weights and edges: `E.E = sum w_i + 2 #edges`.
pub fn e_e3k_half(g: &ResolutionGraph) -> i64 {
    let ee: i64 = g.vertices().iter().map(|v| v.weight).sum::<i64>() + 2 * g.edges().len() as i64;
    let ek: i64 = canonical_degrees(g).iter().sum();
    (ee + 3 * ek) / 2
}

/// `sum (2 - 2 g_i) - #edges`.
pub fn chi_t(g: &ResolutionGraph) -> i64 {
    g.vertices()
        .iter()
        .map(|v| 2 - 2 * v.genus as i64)
        .sum::<i64>()
        - g.edges().len() as i64
}

/// `sum (g_i + d_i - 1)`.
pub fn normal_h1(g: &ResolutionGraph) -> i64 {
    g.vertices()
        .iter()
        .map(|v| v.genus as i64 - v.weight - 1)
        .sum()
}

/// Every weight vector in `[lo, hi]^n`.
pub fn weight_vectors(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for_box(&vec![lo; n], &vec![hi; n], |w| out.push(w.to_vec()));
    out
}

/// Brute-force weighted graph isomorphism over all permutations.
pub fn isomorphic(a: &ResolutionGraph, b: &ResolutionGraph) -> bool {
    if a.len() != b.len() || a.edges().len() != b.edges().len() {
        return false;
    }
    let n = a.len();
    let ma = matrix(a);
    let mb = matrix(b);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let same = (0..n).all(|i| {
            a.vertex(i).genus == b.vertex(perm[i]).genus
                && (0..n).all(|j| ma[i][j] == mb[perm[i]][perm[j]])
        });
        if same {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Number of `m` with `0 <= m_i <= a_i - 2` and `sum m_i w_i = c (mod r)`,
/// by listing every monomial.
pub fn monomial_counts(a: &[u32], r: u32, w: &[u32]) -> Vec<u64> {
    let mut counts = vec![0u64; r as usize];
    let lo = vec![0i64; a.len()];
    let hi: Vec<i64> = a.iter().map(|&x| x as i64 - 2).collect();
    for_box(&lo, &hi, |m| {
        let c: i64 = m.iter().zip(w).map(|(&e, &wi)| e * wi as i64).sum();
        counts[c.rem_euclid(r as i64) as usize] += 1;
    });
    counts
}
