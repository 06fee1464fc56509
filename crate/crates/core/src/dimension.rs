//! Linear extensions, realizer search and order dimension.

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::poset::{greedy_extension, is_realizer, FinitePoset, LinearOrder, RealizerTuple};

/// Limits on exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest poset whose linear extensions may be enumerated.
    pub max_elements: usize,
    /// Most linear extensions collected for one poset.
    pub max_extensions: u64,
    /// Most search nodes visited by one call.
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_elements: 10, max_extensions: 1_000_000, max_nodes: 200_000_000 }
    }
}

impl Budget {
    /// Default element limit with extension and node limits set to `limit`.
    pub fn with_limit(limit: u64) -> Self {
        Budget { max_extensions: limit, max_nodes: limit, ..Budget::default() }
    }
}

#[derive(Debug)]
pub(crate) struct NodeCounter {
    used: u64,
    limit: u64,
}

impl NodeCounter {
    pub fn new(limit: u64) -> Self {
        NodeCounter { used: 0, limit }
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::LimitExceeded { what: "search nodes", limit: self.limit });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Stream of the linear extensions of a closed acyclic relation, in
/// lexicographic order of their element sequences.
pub struct LinearExtensions {
    rel: BitMatrix,
    seq: Vec<usize>,
    cursor: Vec<usize>,
    indeg: Vec<usize>,
    placed: Vec<bool>,
    started: bool,
    done: bool,
}

impl LinearExtensions {
    /// Streams the extensions of `p`, refusing posets above the element limit.
    pub fn new(p: &FinitePoset, budget: &Budget) -> Result<Self> {
        if p.len() > budget.max_elements {
            return Err(Error::LimitExceeded { what: "elements", limit: budget.max_elements as u64 });
        }
        Ok(Self::of_relation(p.matrix().clone()))
    }

    pub(crate) fn of_relation(rel: BitMatrix) -> Self {
        let m = rel.size();
        let indeg = (0..m).map(|b| (0..m).filter(|&a| rel.get(a, b)).count()).collect();
        LinearExtensions {
            rel,
            seq: Vec::with_capacity(m),
            cursor: vec![0; m + 1],
            indeg,
            placed: vec![false; m],
            started: false,
            done: false,
        }
    }

    fn place(&mut self, e: usize) {
        self.placed[e] = true;
        self.seq.push(e);
        for b in 0..self.rel.size() {
            if self.rel.get(e, b) {
                self.indeg[b] -= 1;
            }
        }
    }

    fn unplace(&mut self) {
        let e = self.seq.pop().expect("nonempty prefix");
        self.placed[e] = false;
        for b in 0..self.rel.size() {
            if self.rel.get(e, b) {
                self.indeg[b] += 1;
            }
        }
    }

    fn advance(&mut self) -> bool {
        let m = self.rel.size();
        loop {
            let d = self.seq.len();
            if d == m {
                return true;
            }
            let next = (self.cursor[d]..m).find(|&c| !self.placed[c] && self.indeg[c] == 0);
            match next {
                Some(c) => {
                    self.cursor[d] = c + 1;
                    self.cursor[d + 1] = 0;
                    self.place(c);
                }
                None => {
                    if d == 0 {
                        return false;
                    }
                    self.unplace();
                }
            }
        }
    }
}

impl Iterator for LinearExtensions {
    type Item = LinearOrder;

    fn next(&mut self) -> Option<LinearOrder> {
        if self.done {
            return None;
        }
        if self.rel.size() == 0 {
            self.done = true;
            return Some(LinearOrder::identity(0));
        }
        if self.started {
            self.unplace();
        }
        self.started = true;
        if self.advance() {
            Some(LinearOrder::from_sequence(self.seq.clone()).expect("permutation"))
        } else {
            self.done = true;
            None
        }
    }
}

/// Every linear extension of `p`, in the deterministic stream order.
pub fn all_linear_extensions(p: &FinitePoset, budget: &Budget) -> Result<Vec<LinearOrder>> {
    collect_extensions(LinearExtensions::new(p, budget)?, budget)
}

fn collect_extensions(stream: LinearExtensions, budget: &Budget) -> Result<Vec<LinearOrder>> {
    let mut out = Vec::new();
    for e in stream {
        if out.len() as u64 >= budget.max_extensions {
            return Err(Error::LimitExceeded { what: "linear extensions", limit: budget.max_extensions });
        }
        out.push(e);
    }
    Ok(out)
}

/// Minimum number of linear extensions realizing a poset, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionResult {
    pub dim: usize,
    pub witness: RealizerTuple,
}

/// Depth-first search over tuples of linear orders, slot `i` drawn from the
/// extensions of `bases[i]`, whose intersection is `target`.
///
/// Every base must contain `target`. When all bases coincide the search may
/// treat tuples as multisets.
struct TupleSearch<'a> {
    target: &'a FinitePoset,
    bases: &'a [BitMatrix],
    lists: Vec<&'a [LinearOrder]>,
    multiset: bool,
    counter: NodeCounter,
}

/// Which directions each incomparable pair has been seen in so far.
#[derive(Clone)]
struct Separation {
    seen: BitMatrix,
}

enum Visit {
    Stop,
    Continue,
}

impl<'a> TupleSearch<'a> {
    fn incomparable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.target.len();
        (0..m).flat_map(move |a| (a + 1..m).map(move |b| (a, b))).filter(|&(a, b)| !self.target.comparable(a, b))
    }

    fn record(&self, sep: &mut Separation, order: &LinearOrder) {
        for (a, b) in self.incomparable_pairs() {
            if order.before(a, b) {
                sep.seen.set(a, b);
            } else {
                sep.seen.set(b, a);
            }
        }
    }

    /// Ordered pairs `(x, y)` that some remaining order must place `x` first.
    fn needed(&self, sep: &Separation) -> (Vec<(usize, usize)>, bool) {
        let mut out = Vec::new();
        let mut unseen = false;
        for (a, b) in self.incomparable_pairs() {
            match (sep.seen.get(a, b), sep.seen.get(b, a)) {
                (true, false) => out.push((b, a)),
                (false, true) => out.push((a, b)),
                (false, false) => unseen = true,
                _ => {}
            }
        }
        (out, unseen)
    }

    /// Lower bound on how many more orders the needed reversals require.
    fn clique_bound(&self, needed: &[(usize, usize)]) -> usize {
        let mut clique: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in needed {
            let clash = clique.iter().all(|&(u, v)| self.target.le(y, u) && self.target.le(v, x));
            if clash {
                clique.push((x, y));
            }
        }
        clique.len()
    }

    fn run(
        &mut self,
        chosen: &mut Vec<LinearOrder>,
        last_index: usize,
        sep: &Separation,
        visit: &mut dyn FnMut(&[LinearOrder]) -> Visit,
    ) -> Result<bool> {
        self.counter.tick()?;
        let n = self.bases.len();
        let depth = chosen.len();
        if depth == n {
            return Ok(match visit(chosen) {
                Visit::Stop => true,
                Visit::Continue => false,
            });
        }
        let (needed, unseen) = self.needed(sep);
        if depth + 1 == n {
            if unseen && depth > 0 {
                return Ok(false);
            }
            if unseen {
                // a single order must be the target itself
                if self.incomparable_pairs().next().is_some() {
                    return Ok(false);
                }
            }
            let mut q = self.bases[depth].clone();
            for &(x, y) in &needed {
                q.set(x, y);
            }
            q.close();
            if q.diagonal_hit().is_some() {
                return Ok(false);
            }
            if self.multiset {
                chosen.push(greedy_extension(&q));
                let stop = self.run(chosen, last_index, sep, visit)?;
                chosen.pop();
                return Ok(stop);
            }
            for ext in LinearExtensions::of_relation(q) {
                chosen.push(ext);
                let stop = self.run(chosen, last_index, sep, visit)?;
                chosen.pop();
                if stop {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let start = if self.multiset { last_index } else { 0 };
        let list = self.lists[depth];
        for (idx, order) in list.iter().enumerate().skip(start) {
            let mut next = sep.clone();
            self.record(&mut next, order);
            let remaining = n - depth - 1;
            let (needed, _) = self.needed(&next);
            let blocked = needed.iter().any(|&(x, y)| (depth + 1..n).all(|j| self.bases[j].get(y, x)));
            if blocked || self.clique_bound(&needed) > remaining {
                continue;
            }
            chosen.push(order.clone());
            let stop = self.run(chosen, idx, &next, visit)?;
            chosen.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search(
    target: &FinitePoset,
    bases: &[BitMatrix],
    lists: Vec<&[LinearOrder]>,
    multiset: bool,
    budget: &Budget,
    visit: &mut dyn FnMut(&[LinearOrder]) -> Visit,
) -> Result<u64> {
    let m = target.len();
    let mut s = TupleSearch { target, bases, lists, multiset, counter: NodeCounter::new(budget.max_nodes) };
    let sep = Separation { seen: BitMatrix::new(m) };
    s.run(&mut Vec::new(), 0, &sep, visit)?;
    Ok(s.counter.used())
}

fn find_in(p: &FinitePoset, exts: &[LinearOrder], n: usize, budget: &Budget) -> Result<Option<RealizerTuple>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one order".into()));
    }
    let bases = vec![p.matrix().clone(); n];
    let lists = vec![exts; n];
    let mut found = None;
    search(p, &bases, lists, true, budget, &mut |t| {
        found = Some(RealizerTuple::new(t.to_vec()));
        Visit::Stop
    })?;
    Ok(found)
}

/// A tuple of `n` linear extensions whose intersection is `p`, if any.
pub fn find_realizers(p: &FinitePoset, n: usize, budget: &Budget) -> Result<Option<RealizerTuple>> {
    let exts = all_linear_extensions(p, budget)?;
    find_in(p, &exts, n, budget)
}

/// Every ordered `n`-tuple of linear extensions realizing `p`.
pub fn all_realizers(p: &FinitePoset, n: usize, budget: &Budget) -> Result<Vec<RealizerTuple>> {
    let exts = all_linear_extensions(p, budget)?;
    let bases = vec![p.matrix().clone(); n];
    let lists = vec![exts.as_slice(); n];
    let mut out = Vec::new();
    let mut overflow = false;
    search(p, &bases, lists, false, budget, &mut |t| {
        if out.len() as u64 >= budget.max_extensions {
            overflow = true;
            return Visit::Stop;
        }
        out.push(RealizerTuple::new(t.to_vec()));
        Visit::Continue
    })?;
    if overflow {
        return Err(Error::LimitExceeded { what: "realizer tuples", limit: budget.max_extensions });
    }
    Ok(out)
}

/// A realizer of `target` whose `i`-th order extends `bases[i]`.
///
/// Every base must contain the relation of `target`.
pub fn find_realizers_over(
    target: &FinitePoset,
    bases: &[FinitePoset],
    budget: &Budget,
) -> Result<Option<RealizerTuple>> {
    if bases.iter().any(|b| b.len() != target.len()) {
        return Err(Error::ElementMismatch);
    }
    let mut lists = Vec::with_capacity(bases.len());
    for b in bases {
        lists.push(all_linear_extensions(b, budget)?);
    }
    let mats: Vec<BitMatrix> = bases.iter().map(|b| b.matrix().clone()).collect();
    let mut found = None;
    search(target, &mats, lists.iter().map(Vec::as_slice).collect(), false, budget, &mut |t| {
        found = Some(RealizerTuple::new(t.to_vec()));
        Visit::Stop
    })?;
    Ok(found)
}

/// The order dimension of `p` with the first witness found.
pub fn dimension(p: &FinitePoset, budget: &Budget) -> Result<DimensionResult> {
    let exts = all_linear_extensions(p, budget)?;
    for n in 1..=p.len().max(1) {
        if let Some(witness) = find_in(p, &exts, n, budget)? {
            return Ok(DimensionResult { dim: n, witness });
        }
    }
    unreachable!("the set of all linear extensions realizes every poset")
}

/// The diagonal embedding of a poset into the product of its realizing chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreEmbedding {
    /// 1-based rank coordinates of every element, one per order.
    pub coords: Vec<Vec<usize>>,
}

impl OreEmbedding {
    /// Index of `e` in `product_order` of the chains (rank `r` at position `r-1`).
    pub fn product_index(&self, e: usize) -> usize {
        let m = self.coords.len();
        self.coords[e].iter().fold(0, |acc, &r| acc * m + (r - 1))
    }
}

/// Maps every element to its tuple of ranks and checks the embedding property.
pub fn ore_embedding(p: &FinitePoset, t: &RealizerTuple) -> Result<OreEmbedding> {
    if !is_realizer(p, t)? {
        return Err(Error::NotARealizer);
    }
    let coords: Vec<Vec<usize>> = (0..p.len()).map(|e| t.orders().iter().map(|o| o.rank(e)).collect()).collect();
    for a in 0..p.len() {
        for b in 0..p.len() {
            let below = a != b && coords[a].iter().zip(&coords[b]).all(|(x, y)| x <= y);
            if below != p.lt(a, b) {
                return Err(Error::NotARealizer);
            }
        }
    }
    Ok(OreEmbedding { coords })
}
