//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use orderdim::{FinitePoset, LinearOrder, OrderedStructure, Point};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|i| format!("e{i}")).collect()
}

/// A structure whose realizers are `n` uniformly random orders.
pub fn random_structure(rng: &mut impl Rng, m: usize, n: usize) -> OrderedStructure {
    let orders = (0..n)
        .map(|_| {
            let mut seq: Vec<usize> = (0..m).collect();
            seq.shuffle(rng);
            LinearOrder::from_sequence(seq).unwrap()
        })
        .collect();
    OrderedStructure::from_orders(labels(m), orders).unwrap()
}

/// A random poset: a random DAG along a shuffled order, closed.
pub fn random_poset(rng: &mut impl Rng, m: usize, density: f64) -> FinitePoset {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if rng.gen_bool(density) {
                pairs.push((perm[i], perm[j]));
            }
        }
    }
    FinitePoset::from_pairs(labels(m), &pairs).unwrap()
}

/// Every permutation of `0..m`, by swapping, in no particular order.
pub fn all_perms(m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            go(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    let mut out = Vec::new();
    go(0, &mut (0..m).collect(), &mut out);
    out
}

/// Linear extensions by filtering all permutations.
pub fn brute_extensions(p: &FinitePoset) -> Vec<Vec<usize>> {
    let m = p.len();
    all_perms(m)
        .into_iter()
        .filter(|seq| {
            let mut pos = vec![0; m];
            for (i, &e) in seq.iter().enumerate() {
                pos[e] = i;
            }
            (0..m).all(|a| (0..m).all(|b| !p.lt(a, b) || pos[a] < pos[b]))
        })
        .collect()
}

/// Dimension by trying every multiset of extensions of growing size.
pub fn brute_dimension(p: &FinitePoset) -> usize {
    let m = p.len();
    let exts: Vec<Vec<usize>> = brute_extensions(p)
        .into_iter()
        .map(|seq| {
            let mut pos = vec![0; m];
            for (i, &e) in seq.iter().enumerate() {
                pos[e] = i;
            }
            pos
        })
        .collect();
    // pairs a, b with a before b in the extension
    let incomparable: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (0..m).map(move |b| (a, b))).filter(|&(a, b)| a != b && !p.comparable(a, b)).collect();
    fn choose(exts: &[Vec<usize>], k: usize, start: usize, picked: &mut Vec<usize>, inc: &[(usize, usize)]) -> bool {
        if picked.len() == k {
            // every incomparable pair must be reversed by some chosen extension
            return inc.iter().all(|&(a, b)| picked.iter().any(|&i| exts[i][b] < exts[i][a]));
        }
        for i in start..exts.len() {
            picked.push(i);
            if choose(exts, k, i, picked, inc) {
                return true;
            }
            picked.pop();
        }
        false
    }
    (1..=m.max(1)).find(|&k| choose(&exts, k, 0, &mut Vec::new(), &incomparable)).unwrap()
}

pub fn product_lt_ints(a: &[usize], b: &[usize]) -> bool {
    a != b && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Lexicographic comparison starting at axis `i`, cyclically.
pub fn lex_lt_ints(a: &[usize], b: &[usize], i: usize) -> bool {
    let n = a.len();
    for t in 0..n {
        let k = (i + t) % n;
        if a[k] != b[k] {
            return a[k] < b[k];
        }
    }
    false
}

/// All embeddings of `s` into `{1..m}^n` (with product and lexicographic
/// orders) whose image has no shared coordinates.
pub fn colinear_free_embeddings(s: &OrderedStructure) -> Vec<Vec<Vec<usize>>> {
    let m = s.len();
    let n = s.arity();
    let mut grid: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        grid = grid.into_iter().flat_map(|p| (1..=m).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    let orders = s.realizers().orders();
    let mut out = Vec::new();
    fn go(
        k: usize,
        s: &OrderedStructure,
        orders: &[LinearOrder],
        grid: &[Vec<usize>],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if k == s.len() {
            out.push(cur.clone());
            return;
        }
        for g in grid {
            let ok = cur.iter().enumerate().all(|(j, h)| {
                h.iter().zip(g).all(|(x, y)| x != y)
                    && s.poset().lt(j, k) == product_lt_ints(h, g)
                    && s.poset().lt(k, j) == product_lt_ints(g, h)
                    && orders.iter().enumerate().all(|(i, o)| o.before(j, k) == lex_lt_ints(h, g, i))
            });
            if ok {
                cur.push(g.clone());
                go(k + 1, s, orders, grid, cur, out);
                cur.pop();
            }
        }
    }
    go(0, s, orders, &grid, &mut Vec::new(), &mut out);
    out
}

pub fn ints(p: &Point) -> Vec<i64> {
    p.0.iter().map(|c| c.to_integer().try_into().unwrap()).collect()
}
