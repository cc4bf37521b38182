//! Brute-force state-sum oracle for link diagrams given as PD codes.
//!
//! Shares nothing with the library: polynomials are plain `i64` maps,
//! crossing signs come from the PD edge labelling rule (edges numbered
//! along the orientation) and resolutions are glued with a throwaway
//! union-find.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Sparse exponent -> coefficient map, zero coefficients dropped.
pub type Poly = BTreeMap<i64, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_into(acc: &mut Poly, p: &Poly) {
    for (e, c) in p {
        *acc.entry(*e).or_insert(0) += c;
    }
    acc.retain(|_, c| *c != 0);
}

fn mono(c: i64, e: i64) -> Poly {
    let mut p = Poly::new();
    if c != 0 {
        p.insert(e, c);
    }
    p
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let n = parent[y];
        parent[y] = r;
        y = n;
    }
    r
}

/// PD positivity rule: over strand runs l -> j when j == l + 1 (mod 2n).
pub fn pd_positive(x: [usize; 4], n_edges: usize) -> bool {
    let [_, j, _, l] = x;
    (l % n_edges) + 1 == j || (j == 1 && l == n_edges)
}

/// Unnormalized Jones value of a link diagram.
///
/// `extra_loops` counts crossingless unknotted components.
/// Each crossing `[a,b,c,d]` lists edges counterclockwise from the incoming
/// under edge; the 0-smoothing joins (a,b),(c,d) and the 1-smoothing (a,d),(b,c).
pub fn unnormalized_jones(pd: &[[usize; 4]], extra_loops: usize) -> Poly {
    let n_edges = 2 * pd.len();
    let signs: Vec<bool> = pd.iter().map(|x| pd_positive(*x, n_edges)).collect();
    unnormalized_jones_signed(pd, &signs, extra_loops)
}

/// Same as [`unnormalized_jones`] with crossing signs given explicitly
/// (needed when the labelling rule is ambiguous, e.g. a lone kink).
pub fn unnormalized_jones_signed(pd: &[[usize; 4]], signs: &[bool], extra_loops: usize) -> Poly {
    let loop_value = {
        let mut p = Poly::new();
        p.insert(-1, 1);
        p.insert(1, 1);
        p
    };
    let mut total = Poly::new();
    for state in 0u32..(1u32 << pd.len()) {
        // ends: crossing c, position p -> 4c + p
        let mut parent: Vec<usize> = (0..4 * pd.len()).collect();
        let mut coeff = mono(1, 0);
        for ci in 0..pd.len() {
            let bit = (state >> ci) & 1;
            let pos = signs[ci];
            let (p0, p1) = if bit == 0 { ((0, 1), (2, 3)) } else { ((0, 3), (1, 2)) };
            for (u, v) in [p0, p1] {
                let (ru, rv) = (find(&mut parent, 4 * ci + u), find(&mut parent, 4 * ci + v));
                parent[ru] = rv;
            }
            let w = match (pos, bit) {
                (true, 0) => mono(1, 1),
                (true, _) => mono(-1, 2),
                (false, 0) => mono(-1, -2),
                (false, _) => mono(1, -1),
            };
            coeff = mul(&coeff, &w);
        }
        // glue equal edge labels
        let mut first_end: BTreeMap<usize, usize> = BTreeMap::new();
        for (ci, x) in pd.iter().enumerate() {
            for (p, e) in x.iter().enumerate() {
                let end = 4 * ci + p;
                if let Some(&other) = first_end.get(e) {
                    let (ra, rb) = (find(&mut parent, end), find(&mut parent, other));
                    parent[ra] = rb;
                } else {
                    first_end.insert(*e, end);
                }
            }
        }
        let mut roots: Vec<usize> = (0..4 * pd.len()).map(|i| find(&mut parent, i)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len() + extra_loops;
        for _ in 0..loops {
            coeff = mul(&coeff, &loop_value);
        }
        add_into(&mut total, &coeff);
    }
    total
}

/// Divide by (q + q^-1); panics when the division is not exact.
pub fn divide_by_loop(p: &Poly) -> Poly {
    let mut rem = p.clone();
    let mut quot = Poly::new();
    let mut steps = 0;
    while let Some((&e, &c)) = rem.iter().next() {
        steps += 1;
        assert!(steps < 4096, "not divisible by q + q^-1");
        // leading (lowest) term c q^e = (c q^{e+1}) * q^{-1}
        quot.insert(e + 1, c);
        add_into(&mut rem, &mono(-c, e));
        add_into(&mut rem, &mono(-c, e + 2));
    }
    quot
}

pub fn render(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    p.iter()
        .map(|(e, c)| format!("{c}*q^{e}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub const TREFOIL: [[usize; 4]; 3] = [[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]];
pub const FIGURE_EIGHT: [[usize; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
pub const HOPF: [[usize; 4]; 2] = [[4, 1, 3, 2], [2, 3, 1, 4]];
