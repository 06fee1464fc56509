//! Realizers of finite point clouds, their classification by coordinate
//! permutations, realizer extension, and the action of order automorphisms
//! on realizers. Everything here is a finite shadow: the automorphism
//! groups are those of finite samples.

use serde::{Deserialize, Serialize};

use crate::dimension::{all_realizers, find_realizers_over, Budget, NodeCounter};
use crate::error::{Error, Result};
use crate::geometry::{invert, permutations, Point, PointCloud};
use crate::poset::{is_realizer, szpilrajn_extend, FinitePoset, LinearOrder, OrderedStructure, RealizerTuple};

/// A realizing tuple with the coordinate permutation it matches, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizerEntry {
    pub tuple: RealizerTuple,
    /// 0-based: order `sigma[i]` of the tuple equals reference order `i`.
    pub sigma: Option<Vec<usize>>,
}

/// All realizers of a structure's order, classified against the
/// structure's own realizing orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizerSet {
    pub structure: OrderedStructure,
    pub entries: Vec<RealizerEntry>,
}

impl RealizerSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Whether every tuple is a permutation of the reference orders.
    pub fn all_classified(&self) -> bool {
        self.entries.iter().all(|e| e.sigma.is_some())
    }
}

/// Every permutation `sigma` with `t[sigma[i]] == reference[i]` for all `i`,
/// in lexicographic order.
pub fn all_classifications(reference: &RealizerTuple, t: &RealizerTuple) -> Vec<Vec<usize>> {
    let (r, o) = (reference.orders(), t.orders());
    if r.len() != o.len() {
        return Vec::new();
    }
    permutations(r.len()).into_iter().filter(|s| (0..r.len()).all(|i| o[s[i]] == r[i])).collect()
}

/// The first permutation matching `t` to `reference`.
pub fn classify_against(reference: &RealizerTuple, t: &RealizerTuple) -> Option<Vec<usize>> {
    all_classifications(reference, t).into_iter().next()
}

/// Matches a realizer of the cloud's order to its coordinate orders.
pub fn classify_realizer(c: &PointCloud, t: &RealizerTuple) -> Result<Option<Vec<usize>>> {
    let s = crate::geometry::induced_structure(c);
    if t.len() != c.dim() || !is_realizer(s.poset(), t)? {
        return Err(Error::NotARealizer);
    }
    Ok(classify_against(s.realizers(), t))
}

/// The first permutation with `a_i < b_i => a before b in order sigma[i]`
/// for all points and coordinates. Unlike [`classify_realizer`] this only
/// asks for one direction, so it applies to point sets with shared
/// coordinates such as grids.
pub fn coordinate_permutation(points: &[Point], t: &RealizerTuple) -> Option<Vec<usize>> {
    let n = points.first()?.dim();
    if t.len() != n {
        return None;
    }
    let m = points.len();
    permutations(n).into_iter().find(|s| {
        (0..n).all(|i| {
            let o = &t.orders()[s[i]];
            (0..m).all(|a| (0..m).all(|b| points[a].0[i] >= points[b].0[i] || o.before(a, b)))
        })
    })
}

/// All ordered tuples of `arity` linear extensions realizing the order.
pub fn enumerate_realizers(s: &OrderedStructure, budget: &Budget) -> Result<RealizerSet> {
    let entries = all_realizers(s.poset(), s.arity(), budget)?
        .into_iter()
        .map(|tuple| {
            let sigma = classify_against(s.realizers(), &tuple);
            RealizerEntry { tuple, sigma }
        })
        .collect();
    Ok(RealizerSet { structure: s.clone(), entries })
}

/// The transitive closure of `base` together with a linear order given on
/// the elements `subset` (positions of `partial` index into `subset`).
pub fn extend_realizer_closure(base: &FinitePoset, subset: &[usize], partial: &LinearOrder) -> Result<FinitePoset> {
    if partial.len() != subset.len() || subset.iter().any(|&e| e >= base.len()) {
        return Err(Error::ElementMismatch);
    }
    let m = base.len();
    let mut pairs: Vec<(usize, usize)> =
        (0..m).flat_map(|a| (0..m).filter(move |&b| base.lt(a, b)).map(move |b| (a, b))).collect();
    pairs.extend(partial.sequence().windows(2).map(|w| (subset[w[0]], subset[w[1]])));
    FinitePoset::from_pairs(base.labels().to_vec(), &pairs)
}

/// How [`extend_realizers`] produced its orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionMethod {
    /// Each closure extended independently.
    Independent,
    /// A joint search over extensions of the closures.
    Search,
}

/// Extends a realizer of the order restricted to `subset` to a realizer of
/// `superset`, each new order extending the matching old one.
///
/// Each closure is first linearly extended on its own; if the result fails
/// to separate some incomparable pair, a search over extensions of the
/// closures is run. `None` means no such realizer exists.
pub fn extend_realizers(
    superset: &FinitePoset,
    subset: &[usize],
    t: &RealizerTuple,
    budget: &Budget,
) -> Result<Option<(RealizerTuple, ExtensionMethod)>> {
    let closures =
        t.orders().iter().map(|o| extend_realizer_closure(superset, subset, o)).collect::<Result<Vec<_>>>()?;
    let direct = RealizerTuple::new(closures.iter().map(|c| szpilrajn_extend(c, &[])).collect::<Result<Vec<_>>>()?);
    if is_realizer(superset, &direct)? {
        return Ok(Some((direct, ExtensionMethod::Independent)));
    }
    Ok(find_realizers_over(superset, &closures, budget)?.map(|r| (r, ExtensionMethod::Search)))
}

/// All bijections of the cloud preserving the product order both ways, as
/// image lists, in lexicographic order.
pub fn cloud_automorphisms(c: &PointCloud, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let m = c.len();
    if m > budget.max_elements.max(12) {
        return Err(Error::LimitExceeded { what: "cloud size", limit: budget.max_elements.max(12) as u64 });
    }
    let lt: Vec<Vec<bool>> = (0..m).map(|a| (0..m).map(|b| c.point(a).product_lt(c.point(b))).collect()).collect();
    let mut out = Vec::new();
    let mut counter = NodeCounter::new(budget.max_nodes);
    automorphism_search(&lt, &mut Vec::new(), &mut vec![false; m], &mut out, &mut counter)?;
    Ok(out)
}

fn automorphism_search(
    lt: &[Vec<bool>],
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    counter: &mut NodeCounter,
) -> Result<()> {
    counter.tick()?;
    let k = map.len();
    if k == lt.len() {
        out.push(map.clone());
        return Ok(());
    }
    for cand in 0..lt.len() {
        if used[cand] || (0..k).any(|j| lt[j][k] != lt[map[j]][cand] || lt[k][j] != lt[cand][map[j]]) {
            continue;
        }
        used[cand] = true;
        map.push(cand);
        automorphism_search(lt, map, used, out, counter)?;
        map.pop();
        used[cand] = false;
    }
    Ok(())
}

fn preserves(p: &FinitePoset, g: &[usize]) -> bool {
    let m = p.len();
    let mut seen = vec![false; m];
    g.len() == m
        && g.iter().all(|&x| x < m && !std::mem::replace(&mut seen[x], true))
        && (0..m).all(|a| (0..m).all(|b| p.lt(a, b) == p.lt(g[a], g[b])))
}

/// Transports each order along `g`: `a` precedes `b` in the new order iff
/// `g^-1(a)` precedes `g^-1(b)` in the old one.
pub fn logic_action(p: &FinitePoset, g: &[usize], t: &RealizerTuple) -> Result<RealizerTuple> {
    if !preserves(p, g) {
        return Err(Error::NotOrderPreserving);
    }
    let moved = RealizerTuple::new(t.orders().iter().map(|o| o.mapped(g)).collect());
    if !is_realizer(p, &moved)? {
        return Err(Error::NotARealizer);
    }
    Ok(moved)
}

/// The point map of a coordinate permutation on a cloud closed under it.
pub fn coordinate_map(c: &PointCloud, perm: &[usize]) -> Option<Vec<usize>> {
    c.points().iter().map(|p| c.index_of(&p.permuted(perm))).collect()
}

/// One automorphism split into a coordinate permutation and a map
/// preserving every coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub g: Vec<usize>,
    pub sigma: Vec<usize>,
    pub h: Vec<usize>,
}

/// Factorizations of the automorphisms of a finite symmetric sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub group_order: usize,
    /// Automorphisms preserving every coordinate order.
    pub coordinate_preserving: usize,
    /// Coordinate permutations mapping the sample onto itself.
    pub coordinate_permutations: usize,
    pub factorizations: Vec<Factorization>,
    /// Automorphisms with no factorization or more than one.
    pub failures: Vec<Vec<usize>>,
    /// `group_order == coordinate_preserving * n!`, checked when every
    /// coordinate permutation maps the sample onto itself.
    pub order_law: Option<bool>,
}

fn preserves_coordinates(c: &PointCloud, h: &[usize]) -> bool {
    let m = c.len();
    (0..c.dim()).all(|i| {
        (0..m).all(|a| (0..m).all(|b| (c.point(a).0[i] < c.point(b).0[i]) == (c.point(h[a]).0[i] < c.point(h[b]).0[i])))
    })
}

/// Writes every automorphism `g` as `P_sigma . h` with `P_sigma` a
/// coordinate permutation of the sample and `h` preserving all coordinate
/// orders, and checks the factorization is unique.
pub fn semidirect_decomposition(c: &PointCloud, budget: &Budget) -> Result<DecompositionReport> {
    let group = cloud_automorphisms(c, budget)?;
    let n = c.dim();
    let perms: Vec<(Vec<usize>, Vec<usize>)> =
        permutations(n).into_iter().filter_map(|s| coordinate_map(c, &s).map(|m| (s, m))).collect();
    let mut factorizations = Vec::new();
    let mut failures = Vec::new();
    for g in &group {
        let options: Vec<Factorization> = perms
            .iter()
            .filter_map(|(sigma, pm)| {
                let back = invert(pm);
                let h: Vec<usize> = g.iter().map(|&x| back[x]).collect();
                preserves_coordinates(c, &h).then(|| Factorization { g: g.clone(), sigma: sigma.clone(), h })
            })
            .collect();
        match <[Factorization; 1]>::try_from(options) {
            Ok([f]) => factorizations.push(f),
            Err(_) => failures.push(g.clone()),
        }
    }
    let coordinate_preserving = group.iter().filter(|g| preserves_coordinates(c, g)).count();
    let n_fact: usize = (1..=n).product();
    let order_law = (perms.len() == n_fact).then_some(group.len() == coordinate_preserving * n_fact);
    Ok(DecompositionReport {
        group_order: group.len(),
        coordinate_preserving,
        coordinate_permutations: perms.len(),
        factorizations,
        failures,
        order_law,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{induced_structure, symmetric_sample};

    fn antichain3() -> PointCloud {
        PointCloud::new(2, vec![Point::from_ints(&[1, 4]), Point::from_ints(&[2, 2]), Point::from_ints(&[3, 1])])
            .unwrap()
    }

    #[test]
    fn finite_scale_two_antichain_has_two_realizers() {
        let c = PointCloud::new(2, vec![Point::from_ints(&[0, 1]), Point::from_ints(&[1, 0])]).unwrap();
        let set = enumerate_realizers(&induced_structure(&c), &Budget::default()).unwrap();
        assert_eq!(set.len(), 2);
        let sigmas: Vec<_> = set.entries.iter().map(|e| e.sigma.clone().unwrap()).collect();
        assert_eq!(sigmas, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn finite_scale_antichain_automorphisms() {
        let c = antichain3();
        assert_eq!(cloud_automorphisms(&c, &Budget::default()).unwrap().len(), 6);
        let chain = PointCloud::new(2, vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]).unwrap();
        assert_eq!(cloud_automorphisms(&chain, &Budget::default()).unwrap(), vec![vec![0, 1]]);
    }

    #[test]
    fn finite_scale_logic_action_rejects_non_automorphisms() {
        let chain = PointCloud::new(2, vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1])]).unwrap();
        let s = induced_structure(&chain);
        assert_eq!(logic_action(s.poset(), &[1, 0], s.realizers()), Err(Error::NotOrderPreserving));
        assert_eq!(logic_action(s.poset(), &[0, 1], s.realizers()).unwrap(), *s.realizers());
    }

    #[test]
    fn finite_scale_swap_changes_classification() {
        let c = antichain3();
        let s = induced_structure(&c);
        let moved = logic_action(s.poset(), &[1, 0, 2], s.realizers()).unwrap();
        assert!(classify_realizer(&c, &moved).unwrap().is_none());
    }

    #[test]
    fn finite_scale_single_orbit_decomposes() {
        let c = symmetric_sample(2, 2, 0).unwrap();
        let r = semidirect_decomposition(&c, &Budget::default()).unwrap();
        assert_eq!((r.group_order, r.coordinate_preserving), (2, 1));
        assert!(r.failures.is_empty());
        assert_eq!(r.order_law, Some(true));
    }

    #[test]
    fn closure_of_whole_set_is_the_order() {
        let p = FinitePoset::antichain(3);
        let o = LinearOrder::from_sequence(vec![2, 0, 1]).unwrap();
        let c = extend_realizer_closure(&p, &[0, 1, 2], &o).unwrap();
        assert_eq!(c.relation_count(), 3);
        let bad =
            extend_realizer_closure(&FinitePoset::chain(2), &[0, 1], &LinearOrder::from_sequence(vec![1, 0]).unwrap());
        assert!(matches!(bad, Err(Error::CycleFound(_))));
    }
}
