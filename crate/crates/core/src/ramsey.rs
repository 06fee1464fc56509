//! Grids with their lexicographic orders, rigid embeddings, copies of one
//! structure inside another, and exhaustive small-instance Ramsey checks.
//!
//! Canonical orderings: grid points and subgrids are listed in mixed radix
//! with axis 0 slowest; subsets of an axis are listed as sorted index lists
//! in lexicographic order. Coordinates are 1-based.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::dimension::{Budget, NodeCounter};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::poset::{LinearOrder, OrderedStructure, Radix};

/// All `l`-subsets of `{1..r}` as sorted lists, in lexicographic order.
pub fn combinations(r: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for v in start..=r {
            if r - v + 1 < l - cur.len() {
                break;
            }
            cur.push(v);
            go(v + 1, r, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, r, l, &mut Vec::new(), &mut out);
    out
}

/// The grid `{1..m}^n` with the product order and its `n` lexicographic orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridStruct {
    m: usize,
    n: usize,
    structure: OrderedStructure,
}

impl GridStruct {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("grid side and dimension must be positive".into()));
        }
        let radix = Radix::new(vec![m; n]);
        let pts: Vec<Point> = (0..radix.size())
            .map(|i| Point::from_ints(&radix.decode(i).iter().map(|&c| c as i64 + 1).collect::<Vec<_>>()))
            .collect();
        let labels = pts
            .iter()
            .map(|p| format!("({})", p.0.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        let orders = (0..n)
            .map(|i| {
                let mut seq: Vec<usize> = (0..pts.len()).collect();
                seq.sort_by(|&a, &b| pts[a].lex_cmp(&pts[b], i));
                LinearOrder::from_sequence(seq)
            })
            .collect::<Result<Vec<_>>>()?;
        let structure = OrderedStructure::from_orders(labels, orders)?;
        let realizes =
            (0..pts.len()).all(|a| (0..pts.len()).all(|b| structure.poset().lt(a, b) == pts[a].product_lt(&pts[b])));
        if !realizes {
            return Err(Error::NotARealizer);
        }
        Ok(GridStruct { m, n, structure })
    }

    pub fn side(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.structure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structure.is_empty()
    }

    pub fn structure(&self) -> &OrderedStructure {
        &self.structure
    }

    /// Index of a 1-based grid point.
    pub fn index(&self, coords: &[usize]) -> usize {
        Radix::new(vec![self.m; self.n]).encode(&coords.iter().map(|c| c - 1).collect::<Vec<_>>())
    }

    /// 1-based coordinates of a grid point.
    pub fn coords(&self, idx: usize) -> Vec<usize> {
        Radix::new(vec![self.m; self.n]).decode(idx).into_iter().map(|c| c + 1).collect()
    }
}

/// A product of chosen coordinate subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgrid {
    pub axes: Vec<Vec<usize>>,
}

impl Subgrid {
    /// Side length when all axes have the same number of values.
    pub fn side(&self) -> Option<usize> {
        let l = self.axes.first()?.len();
        self.axes.iter().all(|a| a.len() == l).then_some(l)
    }

    /// Points of the subgrid, axis 0 slowest.
    pub fn points(&self) -> Vec<Vec<usize>> {
        let radix = Radix::new(self.axes.iter().map(Vec::len).collect());
        (0..radix.size()).map(|i| radix.decode(i).iter().zip(&self.axes).map(|(&k, a)| a[k]).collect()).collect()
    }

    /// Whether every value of every axis also belongs to `outer`.
    pub fn within(&self, outer: &Subgrid) -> bool {
        self.axes.iter().zip(&outer.axes).all(|(a, o)| a.iter().all(|v| o.contains(v)))
    }
}

/// All `l^n`-subgrids of `r^n` in canonical order.
pub fn subgrids(r: usize, l: usize, n: usize) -> Vec<Subgrid> {
    let combos = combinations(r, l);
    let radix = Radix::new(vec![combos.len(); n]);
    (0..radix.size())
        .map(|i| Subgrid { axes: radix.decode(i).into_iter().map(|k| combos[k].clone()).collect() })
        .collect()
}

/// Canonical positions of the `l^n`-subgrids of `r^n`.
struct SubgridIndex {
    rank: HashMap<Vec<usize>, usize>,
    per_axis: usize,
}

impl SubgridIndex {
    fn new(r: usize, l: usize) -> Self {
        let combos = combinations(r, l);
        let per_axis = combos.len();
        SubgridIndex { rank: combos.into_iter().enumerate().map(|(i, c)| (c, i)).collect(), per_axis }
    }

    fn index(&self, s: &Subgrid) -> usize {
        s.axes.iter().fold(0, |acc, a| acc * self.per_axis + self.rank[a])
    }
}

/// Maps each element to its tuple of 1-based ranks in the realizing orders.
pub fn rigid_embed(s: &OrderedStructure) -> Vec<Vec<usize>> {
    let orders = s.realizers().orders();
    (0..s.len()).map(|e| orders.iter().map(|o| o.rank(e)).collect()).collect()
}

/// Every subset of `b` whose induced structure is isomorphic to `a`, as
/// sorted element lists in lexicographic order.
pub fn enumerate_copies(b: &OrderedStructure, a: &OrderedStructure) -> Vec<Vec<usize>> {
    if a.len() > b.len() || a.arity() != b.arity() {
        return Vec::new();
    }
    combinations(b.len(), a.len())
        .into_iter()
        .map(|c| c.into_iter().map(|v| v - 1).collect::<Vec<_>>())
        .filter(|elems| b.induced(elems).is_isomorphic(a))
        .collect()
}

/// What a coloring assigns colors to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ColoringTarget {
    /// Copies of a structure in `r^n`, as sorted grid point indices.
    Copies { r: usize, n: usize, copies: Vec<Vec<usize>> },
    /// The `l^n`-subgrids of `r^n` in canonical order.
    Subgrids { r: usize, l: usize, n: usize },
}

/// A map from a target set to colors `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub target: ColoringTarget,
    pub k: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn new(target: ColoringTarget, k: usize, colors: Vec<usize>) -> Result<Self> {
        let size = match &target {
            ColoringTarget::Copies { copies, .. } => copies.len(),
            ColoringTarget::Subgrids { r, l, n } => combinations(*r, *l).len().pow(*n as u32),
        };
        if colors.len() != size {
            return Err(Error::InvalidArgument(format!("coloring has {} colors for {size} targets", colors.len())));
        }
        if let Some(bad) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::InvalidArgument(format!("color {bad} outside 1..={k}")));
        }
        Ok(Coloring { target, k, colors })
    }
}

/// Colors each `l^n`-subgrid by the color of the rigid copy of `a` inside it.
pub fn induced_coloring(c: &Coloring, a: &OrderedStructure) -> Result<Coloring> {
    let ColoringTarget::Copies { r, n, copies } = &c.target else {
        return Err(Error::InvalidArgument("induced coloring needs a coloring of copies".into()));
    };
    let (r, n, l) = (*r, *n, a.len());
    if a.arity() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.arity() });
    }
    let grid = GridStruct::new(r, n)?;
    let position: HashMap<&[usize], usize> = copies.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let rigid = rigid_embed(a);
    let colors = subgrids(r, l, n)
        .iter()
        .map(|s| {
            let mut pts: Vec<usize> = rigid
                .iter()
                .map(|ranks| grid.index(&ranks.iter().zip(&s.axes).map(|(&k, ax)| ax[k - 1]).collect::<Vec<_>>()))
                .collect();
            pts.sort();
            position
                .get(pts.as_slice())
                .map(|&i| c.colors[i])
                .ok_or_else(|| Error::InvalidArgument("coloring does not cover every rigid copy".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Coloring::new(ColoringTarget::Subgrids { r, l, n }, c.k, colors)
}

/// For each `m^n`-subgrid of `r^n`, the canonical indices of its `l^n`-subgrids.
fn subgrid_groups(r: usize, l: usize, m: usize, n: usize) -> (Vec<Subgrid>, Vec<Vec<usize>>) {
    let index = SubgridIndex::new(r, l);
    let big = subgrids(r, m, n);
    let groups = big
        .iter()
        .map(|s| {
            subgrids(m, l, n)
                .iter()
                .map(|inner| {
                    let axes =
                        inner.axes.iter().zip(&s.axes).map(|(pick, ax)| pick.iter().map(|&k| ax[k - 1]).collect());
                    index.index(&Subgrid { axes: axes.collect() })
                })
                .collect()
        })
        .collect();
    (big, groups)
}

/// The first `m^n`-subgrid all of whose `l^n`-subgrids share a color.
pub fn find_mono_subgrid(col: &Coloring, m: usize) -> Result<Option<Subgrid>> {
    let ColoringTarget::Subgrids { r, l, n } = col.target else {
        return Err(Error::InvalidArgument("expected a coloring of subgrids".into()));
    };
    if !(l <= m && m <= r) {
        return Err(Error::InvalidArgument(format!("need l <= m <= r, got {l}, {m}, {r}")));
    }
    let (big, groups) = subgrid_groups(r, l, m, n);
    Ok(big.into_iter().zip(groups).find(|(_, g)| g.iter().all(|&i| col.colors[i] == col.colors[g[0]])).map(|(s, _)| s))
}

/// Searches for a `k`-coloring of `items` under which no group is
/// monochromatic. With `prune`, colorings are only visited up to renaming
/// of colors: each item uses at most one more color than those before it.
pub fn find_bad_coloring(
    items: usize,
    groups: &[Vec<usize>],
    k: usize,
    prune: bool,
    budget: &Budget,
) -> Result<Option<Vec<usize>>> {
    let mut closing: Vec<Vec<&[usize]>> = vec![Vec::new(); items];
    for g in groups {
        match g.iter().max() {
            Some(&last) => closing[last].push(g),
            // an empty group is never monochromatic
            None => continue,
        }
    }
    let mut colors = vec![0usize; items];
    let mut counter = NodeCounter::new(budget.max_nodes);
    let found = bad_search(0, 0, &closing, k, prune, &mut colors, &mut counter)?;
    Ok(found.then_some(colors))
}

fn bad_search(
    i: usize,
    used: usize,
    closing: &[Vec<&[usize]>],
    k: usize,
    prune: bool,
    colors: &mut [usize],
    counter: &mut NodeCounter,
) -> Result<bool> {
    counter.tick()?;
    if i == colors.len() {
        return Ok(true);
    }
    let top = if prune { k.min(used + 1) } else { k };
    for c in 1..=top {
        colors[i] = c;
        let ok = closing[i].iter().all(|g| g.iter().any(|&j| colors[j] != c));
        if ok && bad_search(i + 1, used.max(c), closing, k, prune, colors, counter)? {
            return Ok(true);
        }
    }
    colors[i] = 0;
    Ok(false)
}

/// A `k`-coloring of the `l^n`-subgrids of `r^n` with no monochromatic
/// `m^n`-subgrid, if one exists.
pub fn find_bad_subgrid_coloring(
    k: usize,
    l: usize,
    m: usize,
    n: usize,
    r: usize,
    prune: bool,
    budget: &Budget,
) -> Result<Option<Coloring>> {
    if !(1..=m).contains(&l) || k == 0 || n == 0 {
        return Err(Error::InvalidArgument("need 1 <= l <= m, k >= 1 and n >= 1".into()));
    }
    if r < m {
        let count = combinations(r, l).len().pow(n as u32);
        return Ok(Some(Coloring::new(ColoringTarget::Subgrids { r, l, n }, k, vec![1; count])?));
    }
    let (_, groups) = subgrid_groups(r, l, m, n);
    let items = combinations(r, l).len().pow(n as u32);
    let found = find_bad_coloring(items, &groups, k, prune, budget)?;
    found.map(|colors| Coloring::new(ColoringTarget::Subgrids { r, l, n }, k, colors)).transpose()
}

/// The least `r <= r_max` such that every `k`-coloring of the
/// `l^n`-subgrids of `r^n` has a monochromatic `m^n`-subgrid.
pub fn product_ramsey_number(
    k: usize,
    l: usize,
    m: usize,
    n: usize,
    r_max: usize,
    budget: &Budget,
) -> Result<Option<usize>> {
    for r in m..=r_max {
        if find_bad_subgrid_coloring(k, l, m, n, r, true, budget)?.is_none() {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// How [`ramsey_witness_check`] decides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessPath {
    /// Every coloring of the copies of `A` is searched directly.
    Exhaustive,
    /// Colorings are reduced to subgrid colorings, whose monochromatic
    /// subgrids carry a rigid copy of `B` with monochromatic `A`-copies.
    ProofReduction,
}

fn check_pair(a: &OrderedStructure, b: &OrderedStructure) -> Result<usize> {
    if a.arity() != b.arity() {
        return Err(Error::DimensionMismatch { expected: a.arity(), found: b.arity() });
    }
    if a.is_empty() || enumerate_copies(b, a).is_empty() {
        return Err(Error::InvalidArgument("A must be a nonempty substructure of B".into()));
    }
    Ok(a.arity())
}

/// Whether `r^n` with its lexicographic orders witnesses the Ramsey
/// property for `A <= B` with `k` colors.
///
/// The proof reduction is sound but not complete: it may answer `false`
/// where some non-rigid copy of `B` would still be monochromatic.
pub fn ramsey_witness_check(
    a: &OrderedStructure,
    b: &OrderedStructure,
    k: usize,
    r: usize,
    path: WitnessPath,
    budget: &Budget,
) -> Result<bool> {
    let n = check_pair(a, b)?;
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one color".into()));
    }
    match path {
        WitnessPath::ProofReduction => {
            Ok(find_bad_subgrid_coloring(k, a.len(), b.len(), n, r, true, budget)?.is_none())
        }
        WitnessPath::Exhaustive => {
            let grid = GridStruct::new(r, n)?;
            let c = grid.structure();
            let a_copies = enumerate_copies(c, a);
            let position: HashMap<&[usize], usize> =
                a_copies.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let groups: Vec<Vec<usize>> = enumerate_copies(c, b)
                .iter()
                .map(|bc| {
                    enumerate_copies(&c.induced(bc), a)
                        .iter()
                        .map(|inner| {
                            let mut g: Vec<usize> = inner.iter().map(|&e| bc[e]).collect();
                            g.sort();
                            position[g.as_slice()]
                        })
                        .collect()
                })
                .collect();
            if groups.is_empty() {
                return Ok(false);
            }
            Ok(find_bad_coloring(a_copies.len(), &groups, k, true, budget)?.is_none())
        }
    }
}

/// Replays the reduction on one coloring of the copies of `a` in `r^n`:
/// returns the rigid copy of `b` inside the first monochromatic subgrid of
/// the induced coloring, after confirming its `a`-copies share a color.
pub fn reduce_coloring(c: &Coloring, a: &OrderedStructure, b: &OrderedStructure) -> Result<Option<Vec<usize>>> {
    check_pair(a, b)?;
    let ColoringTarget::Copies { r, n, copies } = &c.target else {
        return Err(Error::InvalidArgument("expected a coloring of copies".into()));
    };
    let hat = induced_coloring(c, a)?;
    let Some(mono) = find_mono_subgrid(&hat, b.len())? else {
        return Ok(None);
    };
    let grid = GridStruct::new(*r, *n)?;
    let mut copy: Vec<usize> = rigid_embed(b)
        .iter()
        .map(|ranks| grid.index(&ranks.iter().zip(&mono.axes).map(|(&k, ax)| ax[k - 1]).collect::<Vec<_>>()))
        .collect();
    copy.sort();
    let position: HashMap<&[usize], usize> = copies.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let colors: Vec<usize> = enumerate_copies(&grid.structure().induced(&copy), a)
        .iter()
        .map(|inner| {
            let mut g: Vec<usize> = inner.iter().map(|&e| copy[e]).collect();
            g.sort();
            c.colors[position[g.as_slice()]]
        })
        .collect();
    Ok(colors.windows(2).all(|w| w[0] == w[1]).then_some(copy))
}
