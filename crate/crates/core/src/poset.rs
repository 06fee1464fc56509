//! Finite strict partial orders, linear orders and realizers.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// A finite strict partial order over labelled elements.
///
/// Elements are addressed by index; labels are opaque and only used for
/// display and serialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::PosetJson", into = "crate::io::PosetJson")]
pub struct FinitePoset {
    labels: Vec<String>,
    lt: BitMatrix,
}

/// Checks irreflexivity and transitivity of a labelled relation.
///
/// The error names the first offending element or triple in index order.
pub fn validate_poset(labels: Vec<String>, rel: &[Vec<bool>]) -> Result<FinitePoset> {
    let m = labels.len();
    if rel.len() != m || rel.iter().any(|r| r.len() != m) {
        return Err(Error::Shape { labels: m });
    }
    check_labels(&labels)?;
    let mut lt = BitMatrix::new(m);
    for (a, row) in rel.iter().enumerate() {
        for (b, &x) in row.iter().enumerate() {
            if x {
                lt.set(a, b);
            }
        }
    }
    if let Some(a) = lt.diagonal_hit() {
        return Err(Error::ReflexiveViolation(labels[a].clone()));
    }
    for a in 0..m {
        for b in 0..m {
            if !lt.get(a, b) {
                continue;
            }
            for c in 0..m {
                if lt.get(b, c) && !lt.get(a, c) {
                    return Err(Error::TransitivityViolation(labels[a].clone(), labels[b].clone(), labels[c].clone()));
                }
            }
        }
    }
    Ok(FinitePoset { labels, lt })
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Finds a directed cycle in the graph given by `edge`, returned as a closed
/// walk `v0, v1, ..., v0`.
pub(crate) fn find_cycle(m: usize, edge: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    // 0 = unseen, 1 = on stack, 2 = done
    let mut state = vec![0u8; m];
    let mut parent = vec![usize::MAX; m];
    for root in 0..m {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        state[root] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next == m {
                state[v] = 2;
                stack.pop();
                continue;
            }
            let w = *next;
            *next += 1;
            if !edge(v, w) {
                continue;
            }
            match state[w] {
                0 => {
                    state[w] = 1;
                    parent[w] = v;
                    stack.push((w, 0));
                }
                1 => {
                    let mut cycle = vec![v];
                    let mut u = v;
                    while u != w {
                        u = parent[u];
                        cycle.push(u);
                    }
                    cycle.reverse();
                    cycle.push(w);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

impl FinitePoset {
    /// Builds a poset from an explicit strict relation.
    pub fn new(labels: Vec<String>, rel: &[Vec<bool>]) -> Result<Self> {
        validate_poset(labels, rel)
    }

    /// Builds the transitive closure of the given pairs.
    ///
    /// Fails with `CycleFound` when the pairs contain a cycle.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        check_labels(&labels)?;
        let m = labels.len();
        let mut lt = BitMatrix::new(m);
        for &(a, b) in pairs {
            if a >= m || b >= m {
                return Err(Error::Shape { labels: m });
            }
            lt.set(a, b);
        }
        if let Some(c) = find_cycle(m, |a, b| lt.get(a, b)) {
            return Err(Error::CycleFound(c.into_iter().map(|i| labels[i].clone()).collect()));
        }
        lt.close();
        Ok(FinitePoset { labels, lt })
    }

    pub(crate) fn from_matrix(labels: Vec<String>, lt: BitMatrix) -> Self {
        debug_assert_eq!(labels.len(), lt.size());
        FinitePoset { labels, lt }
    }

    pub(crate) fn matrix(&self) -> &BitMatrix {
        &self.lt
    }

    pub fn antichain(m: usize) -> Self {
        FinitePoset { labels: default_labels(m), lt: BitMatrix::new(m) }
    }

    /// The chain `0 < 1 < ... < m-1`.
    pub fn chain(m: usize) -> Self {
        let mut lt = BitMatrix::new(m);
        for a in 0..m {
            for b in a + 1..m {
                lt.set(a, b);
            }
        }
        FinitePoset { labels: default_labels(m), lt }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt.get(a, b)
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt.get(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b) || self.lt(b, a)
    }

    pub fn relation(&self) -> Vec<Vec<bool>> {
        (0..self.len()).map(|a| (0..self.len()).map(|b| self.lt(a, b)).collect()).collect()
    }

    /// Number of strictly related pairs.
    pub fn relation_count(&self) -> usize {
        self.lt.count()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.comparable(a, b)))
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for a in 0..m {
            for b in 0..m {
                if self.lt(a, b) && !(0..m).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The induced subposet on `elems`, in the given order.
    pub fn induced(&self, elems: &[usize]) -> FinitePoset {
        let mut lt = BitMatrix::new(elems.len());
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                if self.lt(a, b) {
                    lt.set(i, j);
                }
            }
        }
        FinitePoset { labels: elems.iter().map(|&a| self.labels[a].clone()).collect(), lt }
    }

    /// Same relation under new labels.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Shape { labels: labels.len() });
        }
        check_labels(&labels)?;
        Ok(FinitePoset { labels, lt: self.lt.clone() })
    }
}

pub(crate) fn default_labels(m: usize) -> Vec<String> {
    (0..m).map(|i| i.to_string()).collect()
}

/// A linear order, stored as its sequence from least to greatest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrder {
    /// Builds the order listing `seq` from least to greatest.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self> {
        let m = seq.len();
        let mut pos = vec![usize::MAX; m];
        for (i, &e) in seq.iter().enumerate() {
            if e >= m || pos[e] != usize::MAX {
                return Err(Error::InvalidArgument(format!("{seq:?} is not a permutation")));
            }
            pos[e] = i;
        }
        Ok(LinearOrder { seq, pos })
    }

    /// Builds the order from 1-based ranks indexed by element.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let m = ranks.len();
        let mut seq = vec![usize::MAX; m];
        for (e, &r) in ranks.iter().enumerate() {
            if r == 0 || r > m || seq[r - 1] != usize::MAX {
                return Err(Error::InvalidArgument(format!("{ranks:?} is not a rank bijection")));
            }
            seq[r - 1] = e;
        }
        Self::from_sequence(seq)
    }

    pub fn identity(m: usize) -> Self {
        LinearOrder { seq: (0..m).collect(), pos: (0..m).collect() }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Elements from least to greatest.
    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    /// 1-based rank of `e`.
    pub fn rank(&self, e: usize) -> usize {
        self.pos[e] + 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.pos.iter().map(|p| p + 1).collect()
    }

    #[inline]
    pub fn before(&self, a: usize, b: usize) -> bool {
        self.pos[a] < self.pos[b]
    }

    pub fn extends(&self, p: &FinitePoset) -> bool {
        self.len() == p.len() && (0..p.len()).all(|a| (0..p.len()).all(|b| !p.lt(a, b) || self.before(a, b)))
    }

    /// The order with every element renamed through `g`.
    pub fn mapped(&self, g: &[usize]) -> LinearOrder {
        let seq: Vec<usize> = self.seq.iter().map(|&e| g[e]).collect();
        LinearOrder::from_sequence(seq).expect("image of a permutation")
    }

    pub fn reversed(&self) -> LinearOrder {
        let mut seq = self.seq.clone();
        seq.reverse();
        LinearOrder::from_sequence(seq).expect("reversal of a permutation")
    }

    /// The chain poset this order describes.
    pub fn to_poset(&self, labels: Vec<String>) -> Result<FinitePoset> {
        let pairs: Vec<_> = self.seq.windows(2).map(|w| (w[0], w[1])).collect();
        FinitePoset::from_pairs(labels, &pairs)
    }
}

/// An ordered tuple of linear orders over one element set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealizerTuple {
    orders: Vec<LinearOrder>,
}

impl RealizerTuple {
    pub fn new(orders: Vec<LinearOrder>) -> Self {
        RealizerTuple { orders }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[LinearOrder] {
        &self.orders
    }

    pub fn into_orders(self) -> Vec<LinearOrder> {
        self.orders
    }

    /// The intersection of the orders as a poset on `labels`.
    pub fn intersection(&self, labels: Vec<String>) -> Result<FinitePoset> {
        let m = labels.len();
        if self.orders.iter().any(|o| o.len() != m) {
            return Err(Error::ElementMismatch);
        }
        check_labels(&labels)?;
        let mut lt = BitMatrix::new(m);
        for a in 0..m {
            for b in 0..m {
                if a != b && self.orders.iter().all(|o| o.before(a, b)) {
                    lt.set(a, b);
                }
            }
        }
        Ok(FinitePoset::from_matrix(labels, lt))
    }
}

/// True iff `a < b` exactly when `a` precedes `b` in every order of `t`.
pub fn is_realizer(p: &FinitePoset, t: &RealizerTuple) -> Result<bool> {
    if t.orders.iter().any(|o| o.len() != p.len()) {
        return Err(Error::ElementMismatch);
    }
    let m = p.len();
    Ok((0..m).all(|a| (0..m).all(|b| a == b || p.lt(a, b) == t.orders.iter().all(|o| o.before(a, b)))))
}

/// A poset together with a realizer tuple for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::StructureJson", into = "crate::io::StructureJson")]
pub struct OrderedStructure {
    poset: FinitePoset,
    realizers: RealizerTuple,
}

impl OrderedStructure {
    pub fn new(poset: FinitePoset, realizers: RealizerTuple) -> Result<Self> {
        if !is_realizer(&poset, &realizers)? {
            return Err(Error::NotARealizer);
        }
        Ok(OrderedStructure { poset, realizers })
    }

    /// The structure whose partial order is the intersection of `orders`.
    pub fn from_orders(labels: Vec<String>, orders: Vec<LinearOrder>) -> Result<Self> {
        let realizers = RealizerTuple::new(orders);
        let poset = realizers.intersection(labels)?;
        Ok(OrderedStructure { poset, realizers })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn realizers(&self) -> &RealizerTuple {
        &self.realizers
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Number of realizing orders.
    pub fn arity(&self) -> usize {
        self.realizers.len()
    }

    /// The substructure on `elems`, listed in the given order.
    pub fn induced(&self, elems: &[usize]) -> OrderedStructure {
        let poset = self.poset.induced(elems);
        let orders = self
            .realizers
            .orders
            .iter()
            .map(|o| {
                let mut idx: Vec<usize> = (0..elems.len()).collect();
                idx.sort_by_key(|&i| o.rank(elems[i]));
                LinearOrder::from_sequence(idx).expect("sorted indices")
            })
            .collect();
        OrderedStructure { poset, realizers: RealizerTuple::new(orders) }
    }

    /// The isomorphism onto `other`, if one exists.
    ///
    /// Isomorphisms must respect the first order, so the candidate map is
    /// forced; only the remaining relations need checking.
    pub fn isomorphism_to(&self, other: &OrderedStructure) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.arity() != other.arity() {
            return None;
        }
        if self.is_empty() {
            return Some(Vec::new());
        }
        if self.arity() == 0 {
            // only structures with at most one element have no orders
            return Some((0..self.len()).collect());
        }
        let mut map = vec![0; self.len()];
        for (x, y) in self.realizers.orders[0].seq.iter().zip(&other.realizers.orders[0].seq) {
            map[*x] = *y;
        }
        let ok = self
            .realizers
            .orders
            .iter()
            .zip(&other.realizers.orders)
            .all(|(o, q)| o.seq.windows(2).all(|w| q.before(map[w[0]], map[w[1]])));
        ok.then_some(map)
    }

    pub fn is_isomorphic(&self, other: &OrderedStructure) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

/// Extends `p` to a linear order placing `a` before `b` for each forced pair.
///
/// Among the minimal remaining elements the one with the least index is
/// always taken next, so the output is the lexicographically least extension.
pub fn szpilrajn_extend(p: &FinitePoset, forced: &[(usize, usize)]) -> Result<LinearOrder> {
    let m = p.len();
    let mut rel = p.lt.clone();
    for &(a, b) in forced {
        if a >= m || b >= m {
            return Err(Error::ElementMismatch);
        }
        rel.set(a, b);
    }
    if let Some(c) = find_cycle(m, |a, b| rel.get(a, b)) {
        return Err(Error::CycleIntroduced(c.into_iter().map(|i| p.labels[i].clone()).collect()));
    }
    rel.close();
    Ok(greedy_extension(&rel))
}

/// Least-index-first topological sort of an acyclic closed relation.
pub(crate) fn greedy_extension(rel: &BitMatrix) -> LinearOrder {
    let m = rel.size();
    let mut indeg: Vec<usize> = (0..m).map(|b| (0..m).filter(|&a| rel.get(a, b)).count()).collect();
    let mut placed = vec![false; m];
    let mut seq = Vec::with_capacity(m);
    for _ in 0..m {
        let e = (0..m).find(|&e| !placed[e] && indeg[e] == 0).expect("relation is acyclic");
        placed[e] = true;
        seq.push(e);
        for (b, d) in indeg.iter_mut().enumerate() {
            if rel.get(e, b) {
                *d -= 1;
            }
        }
    }
    LinearOrder::from_sequence(seq).expect("topological order")
}

/// The crown on `a_1..a_n, b_1..b_n` with `a_i < b_j` iff `i != j`.
///
/// Elements `a_i` have index `i-1`, elements `b_j` index `n+j-1`.
pub fn crown(n: usize) -> FinitePoset {
    let labels = (1..=n).map(|i| format!("a{i}")).chain((1..=n).map(|j| format!("b{j}"))).collect();
    let mut lt = BitMatrix::new(2 * n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                lt.set(i, n + j);
            }
        }
    }
    FinitePoset::from_matrix(labels, lt)
}

/// Mixed-radix indexing of a cartesian product, last coordinate fastest.
#[derive(Clone, Debug)]
pub(crate) struct Radix {
    dims: Vec<usize>,
}

impl Radix {
    pub fn new(dims: Vec<usize>) -> Self {
        Radix { dims }
    }

    pub fn size(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| acc * d + c)
    }
}

/// The product order on the cartesian product of `ps`.
///
/// Tuples are indexed lexicographically (last factor fastest) and labelled
/// `(x,y,...)` from the factor labels.
pub fn product_order(ps: &[FinitePoset]) -> Result<FinitePoset> {
    if ps.is_empty() {
        return Err(Error::InvalidArgument("product of no factors".into()));
    }
    let radix = Radix::new(ps.iter().map(FinitePoset::len).collect());
    let size = radix.size();
    let tuples: Vec<Vec<usize>> = (0..size).map(|i| radix.decode(i)).collect();
    let labels = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(ps).map(|(&c, p)| p.label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut lt = BitMatrix::new(size);
    for (i, x) in tuples.iter().enumerate() {
        for (j, y) in tuples.iter().enumerate() {
            if i != j && x.iter().zip(y).zip(ps).all(|((&a, &b), p)| p.le(a, b)) {
                lt.set(i, j);
            }
        }
    }
    Ok(FinitePoset::from_matrix(labels, lt))
}

/// Rank (0-based) of every element of a chain.
fn chain_ranks(p: &FinitePoset) -> Vec<usize> {
    (0..p.len()).map(|a| (0..p.len()).filter(|&b| p.lt(b, a)).count()).collect()
}

/// The `i`-th lexicographic order (1-based) on the product of chains.
///
/// Coordinates are compared with priority `i, i+1, ..., n, 1, ..., i-1`.
pub fn lex_order(ps: &[FinitePoset], i: usize) -> Result<LinearOrder> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::InvalidArgument("product of no factors".into()));
    }
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!("lexicographic index {i} outside 1..={n}")));
    }
    if let Some(bad) = ps.iter().position(|p| !p.is_chain()) {
        return Err(Error::NotLinear(bad));
    }
    let ranks: Vec<Vec<usize>> = ps.iter().map(chain_ranks).collect();
    let radix = Radix::new(ps.iter().map(FinitePoset::len).collect());
    let priority: Vec<usize> = (0..n).map(|k| (i - 1 + k) % n).collect();
    let key = |idx: usize| -> Vec<usize> {
        let t = radix.decode(idx);
        priority.iter().map(|&c| ranks[c][t[c]]).collect()
    };
    let mut seq: Vec<usize> = (0..radix.size()).collect();
    seq.sort_by_cached_key(|&x| key(x));
    LinearOrder::from_sequence(seq)
}

/// `floor(|P| / 2)`, the classical upper bound on dimension for `|P| >= 4`.
pub fn hiraguchi_bound(p: &FinitePoset) -> Result<usize> {
    if p.len() < 4 {
        return Err(Error::TooSmall(p.len()));
    }
    Ok(p.len() / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn empty_relation_is_antichain() {
        let p = validate_poset(labels("abc"), &vec![vec![false; 3]; 3]).unwrap();
        assert_eq!(p.relation_count(), 0);
    }

    #[test]
    fn missing_transitive_pair() {
        let mut rel = vec![vec![false; 3]; 3];
        rel[0][1] = true;
        rel[1][2] = true;
        let err = validate_poset(labels("abc"), &rel).unwrap_err();
        assert_eq!(err, Error::TransitivityViolation("a".into(), "b".into(), "c".into()));
    }

    #[test]
    fn reflexive_pair_rejected() {
        let mut rel = vec![vec![false; 2]; 2];
        rel[1][1] = true;
        assert_eq!(validate_poset(labels("ab"), &rel), Err(Error::ReflexiveViolation("b".into())));
    }

    #[test]
    fn szpilrajn_examples() {
        let p = FinitePoset::from_pairs(labels("ab"), &[(0, 1)]).unwrap();
        assert_eq!(szpilrajn_extend(&p, &[]).unwrap().ranks(), vec![1, 2]);

        let p = FinitePoset::from_pairs(labels("abc"), &[(0, 1)]).unwrap();
        assert_eq!(szpilrajn_extend(&p, &[(2, 0)]).unwrap().sequence(), &[2, 0, 1]);

        let p = FinitePoset::new(labels("ab"), &vec![vec![false; 2]; 2]).unwrap();
        assert_eq!(
            szpilrajn_extend(&p, &[(0, 1), (1, 0)]),
            Err(Error::CycleIntroduced(vec!["a".into(), "b".into(), "a".into()]))
        );
    }

    #[test]
    fn crown_shapes() {
        let c3 = crown(3);
        assert_eq!(c3.len(), 6);
        assert_eq!(c3.covers().len(), 6);
        let c2 = crown(2);
        assert!(c2.lt(0, 3) && c2.lt(1, 2));
        assert_eq!(c2.relation_count(), 2);
        assert_eq!(crown(4).relation_count(), 12);
    }

    #[test]
    fn lex_orders_of_two_chains() {
        let ps = [FinitePoset::chain(2), FinitePoset::chain(2)];
        let prod = product_order(&ps).unwrap();
        let name =
            |o: LinearOrder| -> Vec<String> { o.sequence().iter().map(|&e| prod.label(e).to_string()).collect() };
        assert_eq!(name(lex_order(&ps, 1).unwrap()), ["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(name(lex_order(&ps, 2).unwrap()), ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]);
        assert_eq!(prod.relation_count(), 5);
    }

    #[test]
    fn lex_rejects_non_chain() {
        let ps = [FinitePoset::chain(2), FinitePoset::antichain(2)];
        assert_eq!(lex_order(&ps, 1), Err(Error::NotLinear(1)));
    }

    #[test]
    fn product_with_singleton_is_isomorphic() {
        let p = crown(2);
        let q = product_order(&[FinitePoset::chain(1), p.clone()]).unwrap();
        assert_eq!(q.relation(), p.relation());
    }

    #[test]
    fn hiraguchi_values() {
        assert_eq!(hiraguchi_bound(&crown(3)), Ok(3));
        assert_eq!(hiraguchi_bound(&FinitePoset::antichain(4)), Ok(2));
        assert_eq!(hiraguchi_bound(&FinitePoset::antichain(7)), Ok(3));
        assert_eq!(hiraguchi_bound(&FinitePoset::antichain(3)), Err(Error::TooSmall(3)));
    }

    #[test]
    fn realizer_examples() {
        let chain = FinitePoset::chain(2);
        assert!(is_realizer(&chain, &RealizerTuple::new(vec![LinearOrder::identity(2)])).unwrap());
        let anti = FinitePoset::antichain(2);
        let t = RealizerTuple::new(vec![
            LinearOrder::from_sequence(vec![0, 1]).unwrap(),
            LinearOrder::from_sequence(vec![1, 0]).unwrap(),
        ]);
        assert!(is_realizer(&anti, &t).unwrap());
        let short = RealizerTuple::new(vec![LinearOrder::identity(3)]);
        assert_eq!(is_realizer(&anti, &short), Err(Error::ElementMismatch));
    }

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(vec![2, 3, 4]);
        for i in 0..r.size() {
            assert_eq!(r.encode(&r.decode(i)), i);
        }
        assert_eq!(r.decode(5), vec![0, 1, 1]);
    }
}
