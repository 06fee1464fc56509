//! Axiom checks for finite fragments and replayable certificates for the
//! homogeneity properties of the generic n-dimensional order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constraint::{solve, Atom, Clause, Cmp};
use crate::dimension::{find_realizers, Budget};
use crate::error::{Error, Result};
use crate::geometry::{
    format_rational, int, invert, permutations, pick_in_region, rat, sample_dn, BackAndForth, FlipPattern, Interval,
    PartialIsomorphism, Point, PointCloud, Rational, Region,
};
use crate::poset::{crown, default_labels, FinitePoset, LinearOrder};

/// Which claim a certificate carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    APFailure,
    NotUltrahomogeneous,
    QnLexNotUltrahomogeneous,
    TwoHomogeneityExtension,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPoint {
    pub name: String,
    pub coords: Vec<String>,
}

impl NamedPoint {
    fn new(name: &str, p: &Point) -> Self {
        NamedPoint { name: name.to_string(), coords: p.to_strings() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
}

/// A finite configuration with the claims checked on it. The verdict is the
/// conjunction of the claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub n: usize,
    pub points: Vec<NamedPoint>,
    pub relations: Vec<(String, String)>,
    pub claims: Vec<Claim>,
    pub counts: BTreeMap<String, u64>,
    pub verdict: bool,
}

impl Certificate {
    fn new(kind: CertificateKind, n: usize) -> Self {
        Certificate {
            kind,
            n,
            points: Vec::new(),
            relations: Vec::new(),
            claims: Vec::new(),
            counts: BTreeMap::new(),
            verdict: false,
        }
    }

    fn claim(&mut self, name: &str, holds: bool) {
        self.claims.push(Claim { name: name.to_string(), holds });
    }

    fn count(&mut self, name: &str, v: u64) {
        self.counts.insert(name.to_string(), v);
    }

    fn finish(mut self) -> Self {
        self.verdict = self.claims.iter().all(|c| c.holds);
        self
    }

    pub fn claim_holds(&self, name: &str) -> Option<bool> {
        self.claims.iter().find(|c| c.name == name).map(|c| c.holds)
    }

    /// Recomputes the certificate from its kind and parameters and compares.
    pub fn replay(&self) -> Result<bool> {
        let again = match self.kind {
            CertificateKind::APFailure => ap_failure_certificate(self.n)?,
            CertificateKind::NotUltrahomogeneous => nonhom_witness(self.n)?,
            CertificateKind::QnLexNotUltrahomogeneous => qn_lex_nonhom_witness(self.n)?,
            CertificateKind::TwoHomogeneityExtension => {
                let seed = self.counts.get("seed").copied().unwrap_or(0);
                let steps = self.counts.get("steps").copied().unwrap_or(10) as usize;
                two_homogeneity_certificate(self.n, seed, steps)?
            }
        };
        Ok(again == *self && self.verdict)
    }
}

// ---------------------------------------------------------------------------
// Relations of the point signature and their constraint encodings.

/// A binary relation of the signature on rational points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    Product,
    /// 0-based index of a lexicographic order.
    Lex(usize),
}

/// How `z` relates to `y` under a relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    /// `z` before `y`
    Below,
    /// `y` before `z`
    Above,
    Equal,
    Incomparable,
}

pub(crate) fn outcome(rel: Relation, z: &Point, y: &Point) -> Outcome {
    match rel {
        Relation::Product => {
            if z == y {
                Outcome::Equal
            } else if z.product_lt(y) {
                Outcome::Below
            } else if y.product_lt(z) {
                Outcome::Above
            } else {
                Outcome::Incomparable
            }
        }
        Relation::Lex(i) => match z.lex_cmp(y, i) {
            std::cmp::Ordering::Less => Outcome::Below,
            std::cmp::Ordering::Greater => Outcome::Above,
            std::cmp::Ordering::Equal => Outcome::Equal,
        },
    }
}

/// Constraints on an unknown `y` meaning `outcome(rel, z, y) == want`.
pub(crate) fn clause_for(rel: Relation, z: &Point, want: Outcome) -> Clause {
    let n = z.dim();
    let c = |i: usize| &z.0[i];
    let equal = || (0..n).map(|i| Atom::new(i, Cmp::Eq, c(i))).collect::<Vec<_>>();
    match (rel, want) {
        (_, Outcome::Equal) => Clause::all(equal()),
        (Relation::Product, Outcome::Below | Outcome::Above) => {
            let (strict, weak) = if want == Outcome::Below { (Cmp::Gt, Cmp::Ge) } else { (Cmp::Lt, Cmp::Le) };
            Clause(
                (0..n)
                    .map(|k| (0..n).map(|i| Atom::new(i, if i == k { strict } else { weak }, c(i))).collect())
                    .collect(),
            )
        }
        (Relation::Product, Outcome::Incomparable) => Clause(
            (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| vec![Atom::new(i, Cmp::Gt, c(i)), Atom::new(j, Cmp::Lt, c(j))])
                .collect(),
        ),
        (Relation::Lex(start), Outcome::Below | Outcome::Above) => {
            let strict = if want == Outcome::Below { Cmp::Gt } else { Cmp::Lt };
            let axes: Vec<usize> = (0..n).map(|t| (start + t) % n).collect();
            Clause(
                (0..n)
                    .map(|k| {
                        let mut conj: Vec<Atom> = axes[..k].iter().map(|&a| Atom::new(a, Cmp::Eq, c(a))).collect();
                        conj.push(Atom::new(axes[k], strict, c(axes[k])));
                        conj
                    })
                    .collect(),
            )
        }
        (Relation::Lex(_), Outcome::Incomparable) => Clause(Vec::new()),
    }
}

/// `not (z < y)` in the product order.
fn not_below(z: &Point) -> Clause {
    let n = z.dim();
    let mut c: Vec<Vec<Atom>> = (0..n).map(|i| vec![Atom::new(i, Cmp::Lt, &z.0[i])]).collect();
    c.push((0..n).map(|i| Atom::new(i, Cmp::Eq, &z.0[i])).collect());
    Clause(c)
}

/// `y` shares no coordinate with any of `pts`.
fn fresh_coordinates(pts: &[&Point]) -> Clause {
    Clause::all(pts.iter().flat_map(|p| p.0.iter().enumerate().map(|(i, v)| Atom::new(i, Cmp::Ne, v))).collect())
}

/// Constraints forcing `y` to relate to every `dst[t]` as `x` relates to `src[t]`.
fn type_clauses(rels: &[Relation], src: &[&Point], x: &Point, dst: &[&Point]) -> Vec<Clause> {
    let mut out = Vec::new();
    for (s, d) in src.iter().zip(dst) {
        for &r in rels {
            out.push(clause_for(r, d, outcome(r, s, x)));
        }
    }
    out
}

fn same_type(rels: &[Relation], src: &[&Point], dst: &[&Point]) -> bool {
    src.iter().enumerate().all(|(i, a)| {
        src.iter().enumerate().all(|(j, b)| rels.iter().all(|&r| outcome(r, a, b) == outcome(r, dst[i], dst[j])))
    })
}

/// All points with coordinates in quarter steps over the bounding box of
/// `pts` widened by one on each side.
fn grid_candidates(pts: &[&Point]) -> Vec<Point> {
    let n = pts[0].dim();
    let quarter = rat(1, 4);
    let axes: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let lo = pts.iter().map(|p| p.0[i].floor()).min().unwrap() - int(1);
            let hi = pts.iter().map(|p| p.0[i].ceil()).max().unwrap() + int(1);
            let mut v = Vec::new();
            let mut x = lo;
            while x <= hi {
                v.push(x.clone());
                x += &quarter;
            }
            v
        })
        .collect();
    let mut out = vec![Vec::new()];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<Rational>| {
                axis.iter().map(move |v| {
                    let mut p = pre.clone();
                    p.push(v.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Point).collect()
}

fn grid_solutions(candidates: &[Point], clauses: &[Clause]) -> u64 {
    candidates.iter().filter(|y| clauses.iter().all(|c| c.holds(y))).count() as u64
}

// ---------------------------------------------------------------------------
// Non-ultrahomogeneity of the bare order on the generic sample.

fn lifted(n: usize, first: i64, rest: i64) -> Point {
    let mut v = vec![int(first)];
    v.extend((1..n).map(|_| int(rest)));
    Point(v)
}

/// Three pairwise incomparable points `a, b, c` and a point `x` above `b` and
/// `c` but not `a`. Swapping `a` and `b` is an isomorphism of the three-point
/// suborder, yet no image for `x` exists: above `b` and `c` on every axis
/// means above `a`.
pub fn nonhom_witness(n: usize) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let a = lifted(n, 1, 4);
    let b = lifted(n, 2, 2);
    let c = lifted(n, 3, 1);
    let x = lifted(n, 4, 3);
    let rel = [Relation::Product];
    let mut cert = Certificate::new(CertificateKind::NotUltrahomogeneous, n);
    for (name, p) in [("a", &a), ("b", &b), ("c", &c), ("x", &x)] {
        cert.points.push(NamedPoint::new(name, p));
    }
    let cloud_ok = PointCloud::new(n, vec![a.clone(), b.clone(), c.clone(), x.clone()]).is_ok();
    cert.claim("configuration has no shared coordinates", cloud_ok);
    cert.claim(
        "x above b and c, incomparable to a",
        b.product_lt(&x) && c.product_lt(&x) && { outcome(Relation::Product, &a, &x) == Outcome::Incomparable },
    );
    cert.claim("swapping a and b preserves the order", same_type(&rel, &[&a, &b, &c], &[&b, &a, &c]));

    // images: f(a) = b, f(b) = a, f(c) = c
    let known = [&a, &b, &c];
    let mut system = vec![
        clause_for(Relation::Product, &a, Outcome::Below),
        clause_for(Relation::Product, &c, Outcome::Below),
        not_below(&b),
        fresh_coordinates(&known),
    ];
    let sol = solve(n, &system);
    cert.claim("no image for x exists", sol.witness.is_none());
    cert.count("solver_nodes", sol.nodes);

    let candidates = grid_candidates(&[&a, &b, &c, &x]);
    cert.count("grid_candidates", candidates.len() as u64);
    let hits = grid_solutions(&candidates, &system);
    cert.count("grid_solutions", hits);
    cert.claim("grid search finds no image", hits == 0);

    // with the image of a unconstrained an image exists
    system.remove(2);
    let control = solve(n, &system);
    cert.claim("control system is satisfiable", control.witness.is_some());
    let cloud = PointCloud::new(n, vec![a.clone(), b.clone(), c.clone()])?;
    let region = Region::new((0..n).map(|i| Interval::new(Some(a.0[i].clone().max(c.0[i].clone())), None)).collect())?;
    let y = pick_in_region(&cloud, &region);
    cert.claim("control point picked above a and c", system.iter().all(|cl| cl.holds(&y)));
    cert.points.push(NamedPoint::new("control", &y));
    let control_hits = grid_solutions(&candidates, &system);
    cert.count("control_grid_solutions", control_hits);
    cert.claim("grid search finds control images", control_hits > 0);
    Ok(cert.finish())
}

/// The same phenomenon for rational space with the product order and all
/// lexicographic orders: a triple is mapped onto a colinear triple, which
/// squeezes any image of `x` onto the image of `a`.
pub fn qn_lex_nonhom_witness(n: usize) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let a = lifted(n, 1, 1);
    let b = lifted(n, 2, 4);
    let c = lifted(n, 4, 2);
    let x = Point(vec![rat(3, 2); n]);
    let a2 = lifted(n, 1, 1);
    let b2 = lifted(n, 1, 4);
    let c2 = lifted(n, 4, 1);
    let mut rels = vec![Relation::Product];
    rels.extend((0..n).map(Relation::Lex));

    let mut cert = Certificate::new(CertificateKind::QnLexNotUltrahomogeneous, n);
    for (name, p) in [("a", &a), ("b", &b), ("c", &c), ("x", &x), ("a'", &a2), ("b'", &b2), ("c'", &c2)] {
        cert.points.push(NamedPoint::new(name, p));
    }
    cert.claim("a, b, c to a', b', c' preserves every relation", same_type(&rels, &[&a, &b, &c], &[&a2, &b2, &c2]));

    let system = type_clauses(&rels, &[&a, &b, &c], &x, &[&a2, &b2, &c2]);
    let sol = solve(n, &system);
    cert.claim("no image for x exists", sol.witness.is_none());
    cert.count("solver_nodes", sol.nodes);

    // between a' and b' and below c' coordinatewise leaves only a' itself
    let mut squeeze: Vec<Clause> = (0..n)
        .map(|i| {
            Clause::all(vec![
                Atom::new(i, Cmp::Ge, &a2.0[i]),
                Atom::new(i, Cmp::Le, &b2.0[i]),
                Atom::new(i, Cmp::Le, &c2.0[i]),
            ])
        })
        .collect();
    squeeze.push(Clause((0..n).map(|i| vec![Atom::new(i, Cmp::Ne, &a2.0[i])]).collect()));
    cert.claim("weak bounds force the image onto a'", solve(n, &squeeze).witness.is_none());

    let candidates = grid_candidates(&[&a, &b, &c, &x, &a2, &b2, &c2]);
    cert.count("grid_candidates", candidates.len() as u64);
    let hits = grid_solutions(&candidates, &system);
    cert.count("grid_solutions", hits);
    cert.claim("grid search finds no image", hits == 0);

    // a triple with no shared coordinates leaves room
    let control = type_clauses(&rels, &[&a, &b, &c], &x, &[&a, &b, &c]);
    cert.claim("control system is satisfiable", solve(n, &control).witness.is_some());
    let cloud = PointCloud::new(n, vec![a.clone(), b.clone(), c.clone()])?;
    let mut intervals = vec![Interval::whole(); n];
    for p in [&a, &b, &c] {
        for (i, iv) in intervals.iter_mut().enumerate() {
            if p.0[i] < x.0[i] {
                if iv.lo.as_ref().is_none_or(|l| l < &p.0[i]) {
                    iv.lo = Some(p.0[i].clone());
                }
            } else if iv.hi.as_ref().is_none_or(|h| &p.0[i] < h) {
                iv.hi = Some(p.0[i].clone());
            }
        }
    }
    let y = pick_in_region(&cloud, &Region::new(intervals)?);
    cert.claim("control point picked in the cell of x", control.iter().all(|cl| cl.holds(&y)));
    cert.points.push(NamedPoint::new("control", &y));
    let control_hits = grid_solutions(&candidates, &control);
    cert.count("control_grid_solutions", control_hits);
    cert.claim("grid search finds control images", control_hits > 0);
    Ok(cert.finish())
}

// ---------------------------------------------------------------------------
// Amalgamation failure.

/// Relation state of a pair during completion search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairState {
    Open,
    Less,
    Greater,
    Apart,
}

struct Completion {
    size: usize,
    rel: Vec<Vec<PairState>>,
}

impl Completion {
    fn lt(&self, u: usize, v: usize) -> bool {
        self.rel[u][v] == PairState::Less
    }

    fn set(&mut self, u: usize, v: usize, s: PairState) {
        self.rel[u][v] = s;
        self.rel[v][u] = match s {
            PairState::Less => PairState::Greater,
            PairState::Greater => PairState::Less,
            other => other,
        };
    }

    /// Transitivity among triples through `u, v` whose pairs are all decided.
    fn consistent_at(&self, u: usize, v: usize) -> bool {
        (0..self.size).filter(|&w| w != u && w != v).all(|w| {
            let t = [u, v, w];
            if t.iter().any(|&p| t.iter().any(|&q| p != q && self.rel[p][q] == PairState::Open)) {
                return true;
            }
            t.iter().all(|&p| t.iter().all(|&q| t.iter().all(|&r| !(self.lt(p, q) && self.lt(q, r)) || self.lt(p, r))))
        })
    }

    fn poset(&self, labels: &[String]) -> FinitePoset {
        let rel: Vec<Vec<bool>> = (0..self.size).map(|u| (0..self.size).map(|v| self.lt(u, v)).collect()).collect();
        FinitePoset::new(labels.to_vec(), &rel).expect("completion is transitive")
    }
}

fn complete(c: &mut Completion, open: &[(usize, usize)], labels: &[String], out: &mut Vec<FinitePoset>) {
    let Some((&(u, v), rest)) = open.split_first() else {
        out.push(c.poset(labels));
        return;
    };
    for s in [PairState::Less, PairState::Greater, PairState::Apart] {
        c.set(u, v, s);
        if c.consistent_at(u, v) {
            complete(c, rest, labels, out);
        }
    }
    c.set(u, v, PairState::Open);
}

/// Whether `big` has an induced subposet isomorphic to `small`.
pub fn contains_induced(big: &FinitePoset, small: &FinitePoset) -> bool {
    fn extend(big: &FinitePoset, small: &FinitePoset, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let k = map.len();
        if k == small.len() {
            return true;
        }
        for cand in 0..big.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..k).all(|j| small.lt(j, k) == big.lt(map[j], cand) && small.lt(k, j) == big.lt(cand, map[j]));
            if ok {
                used[cand] = true;
                map.push(cand);
                if extend(big, small, map, used) {
                    return true;
                }
                map.pop();
                used[cand] = false;
            }
        }
        false
    }
    small.len() <= big.len() && extend(big, small, &mut Vec::new(), &mut vec![false; big.len()])
}

/// Enumerates every partial order on the amalgam of `B = A + {b_2..b_{n+1}}`
/// and `C = A + {b_1}` over the antichain `A = {a_1..a_{n+1}}`, where both
/// factors sit in the crown on `n + 1` pairs, optionally with extra free
/// elements. Returns labels and all completions.
fn amalgam_completions(n: usize, extra: usize) -> (Vec<String>, Vec<FinitePoset>, Vec<(usize, usize)>) {
    let k = n + 1;
    // indices: a_i -> i-1, b_j -> k+j-1, extras after
    let size = 2 * k + extra;
    let mut labels: Vec<String> = (1..=k).map(|i| format!("a{i}")).chain((1..=k).map(|j| format!("b{j}"))).collect();
    labels.extend((1..=extra).map(|e| format!("x{e}")));
    let mut c = Completion { size, rel: vec![vec![PairState::Open; size]; size] };
    let mut fixed = Vec::new();
    let b_of = |j: usize| k + j - 1;
    // inside A and inside B or C everything is dictated by the crown
    for i in 1..=k {
        for j in 1..=k {
            if i != j {
                c.set(i - 1, j - 1, PairState::Apart);
            }
            let s = if i != j { PairState::Less } else { PairState::Apart };
            c.set(i - 1, b_of(j), s);
            if s == PairState::Less {
                fixed.push((i - 1, b_of(j)));
            }
        }
    }
    for j in 2..=k {
        for l in 2..=k {
            if j != l {
                c.set(b_of(j), b_of(l), PairState::Apart);
            }
        }
    }
    let mut open = Vec::new();
    for u in 0..size {
        for v in u + 1..size {
            if c.rel[u][v] == PairState::Open {
                open.push((u, v));
            }
        }
    }
    let mut out = Vec::new();
    complete(&mut c, &open, &labels, &mut out);
    (labels, out, fixed)
}

/// Exhausts all amalgams of the two one-point extensions of the antichain
/// inside the crown and checks that each contains the whole crown on `n + 1`
/// pairs, so no amalgam is `n`-dimensional. For `n = 2` the amalgams are also
/// enumerated with one additional free element and every completion's
/// dimension is computed.
pub fn ap_failure_certificate(n: usize) -> Result<Certificate> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidArgument("amalgam enumeration supports 2 <= n <= 6".into()));
    }
    let k = n + 1;
    let target = crown(k);
    let budget = Budget::default();
    let mut cert = Certificate::new(CertificateKind::APFailure, n);

    let (labels, completions, fixed) = amalgam_completions(n, 0);
    cert.relations = fixed.iter().map(|&(u, v)| (labels[u].clone(), labels[v].clone())).collect();
    cert.count("completions", completions.len() as u64);
    let b1 = k;
    let b = |j: usize| k + j - 1;
    let forced_a = completions.iter().all(|d| (1..=k).all(|i| d.lt(i - 1, b1) == (i != 1)));
    let none_below = completions.iter().all(|d| (2..=k).all(|j| !d.le(b(j), b1)));
    let none_above = completions.iter().all(|d| (2..=k).all(|j| !d.lt(b1, b(j))));
    cert.claim("a_i < b_1 exactly when i != 1", forced_a);
    cert.claim("no b_j is at or below b_1", none_below);
    cert.claim("b_1 is below no b_j", none_above);
    // identifying b_1 with b_j would need a_1 both below and apart from it
    cert.claim("b_1 cannot be identified with any b_j", (2..=k).all(|j| target.lt(0, b(j)) != target.lt(0, b1)));
    let all_crowns = completions.iter().all(|d| d.relation() == target.relation());
    cert.claim("every completion is the crown", all_crowns && !completions.is_empty());

    if n == 2 {
        let (_, wide, _) = amalgam_completions(n, 1);
        cert.count("completions_with_extra_element", wide.len() as u64);
        let mut low = 0u64;
        let mut detector_agrees = true;
        for d in &wide {
            let two_dim = find_realizers(d, 2, &budget)?.is_some();
            let has_crown = contains_induced(d, &target);
            if two_dim {
                low += 1;
            }
            detector_agrees &= has_crown == !two_dim;
        }
        cert.count("completions_of_dimension_at_most_2", low);
        cert.claim("no completion has dimension at most 2", low == 0 && !wide.is_empty());
        cert.claim("crown detector agrees with dimension", detector_agrees);
        let c3 = crate::dimension::dimension(&target, &budget)?;
        cert.claim("the crown on three pairs has dimension 3", c3.dim == 3);
    }
    Ok(cert.finish())
}

// ---------------------------------------------------------------------------
// Axiom checks on finite fragments.

/// One cell of the finite fragment: a gap in every realizing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityDefect {
    /// Per order, the labels of the neighbours bounding the gap.
    pub bounds: Vec<(Option<String>, Option<String>)>,
    /// Distinct elements bounding the cell.
    pub witnesses: Vec<String>,
    /// The cell as a box, when the orders are coordinate orders of a cloud.
    pub region: Option<Vec<(Option<String>, Option<String>)>>,
    /// Whether some point of rational space lies in the cell.
    pub fillable: bool,
}

/// Universal axioms and the empty cells of a finite fragment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub poset_ok: bool,
    pub linears_ok: bool,
    pub realization_ok: bool,
    pub density_defects: Vec<DensityDefect>,
}

impl AxiomReport {
    pub fn universal_ok(&self) -> bool {
        self.poset_ok && self.linears_ok && self.realization_ok
    }
}

/// Input to [`check_dpo_fragment`].
#[derive(Clone, Debug)]
pub enum Fragment<'a> {
    /// Arbitrary relations: a candidate strict order and candidate linear orders.
    Relations { labels: &'a [String], lt: &'a [Vec<bool>], orders: &'a [Vec<Vec<bool>>] },
    /// A validated structure.
    Structure(&'a crate::poset::OrderedStructure),
    /// Points of rational space with the product and lexicographic orders,
    /// shared coordinates allowed.
    Points { dim: usize, points: &'a [Point] },
    /// A cloud, whose lexicographic orders are its coordinate orders.
    Cloud(&'a PointCloud),
}

fn is_strict_order(rel: &[Vec<bool>]) -> bool {
    let m = rel.len();
    (0..m).all(|a| !rel[a][a]) && (0..m).all(|a| (0..m).all(|b| !rel[a][b] || (0..m).all(|c| !rel[b][c] || rel[a][c])))
}

fn is_linear(rel: &[Vec<bool>]) -> bool {
    let m = rel.len();
    is_strict_order(rel) && (0..m).all(|a| (0..m).all(|b| a == b || rel[a][b] || rel[b][a]))
}

fn linear_from(rel: &[Vec<bool>]) -> LinearOrder {
    let m = rel.len();
    let ranks: Vec<usize> = (0..m).map(|a| 1 + (0..m).filter(|&b| rel[b][a]).count()).collect();
    LinearOrder::from_ranks(&ranks).expect("linear relation")
}

/// A relation as a square boolean matrix.
type BoolMatrix = Vec<Vec<bool>>;

fn point_relations(dim: usize, points: &[Point]) -> (BoolMatrix, Vec<BoolMatrix>) {
    let m = points.len();
    let lt = (0..m).map(|a| (0..m).map(|b| points[a].product_lt(&points[b])).collect()).collect();
    let orders = (0..dim)
        .map(|i| (0..m).map(|a| (0..m).map(|b| points[a].lex_cmp(&points[b], i).is_lt()).collect()).collect())
        .collect();
    (lt, orders)
}

/// Checks the universal axioms (strict order, linear realizing orders,
/// realization) and lists every cell of the fragment, each of which is empty
/// of fragment elements by construction. For point inputs each cell is also
/// tested for points of rational space inside it.
pub fn check_dpo_fragment(input: Fragment<'_>) -> AxiomReport {
    let (labels, lt, orders, points) = match input {
        Fragment::Relations { labels, lt, orders } => (labels.to_vec(), lt.to_vec(), orders.to_vec(), None),
        Fragment::Structure(s) => {
            let m = s.len();
            let orders = s
                .realizers()
                .orders()
                .iter()
                .map(|o| (0..m).map(|a| (0..m).map(|b| o.before(a, b)).collect()).collect())
                .collect();
            (s.poset().labels().to_vec(), s.poset().relation(), orders, None)
        }
        Fragment::Points { dim, points } => {
            let (lt, orders) = point_relations(dim, points);
            (default_labels(points.len()), lt, orders, Some((dim, points.to_vec())))
        }
        Fragment::Cloud(c) => {
            let (lt, orders) = point_relations(c.dim(), c.points());
            (default_labels(c.len()), lt, orders, Some((c.dim(), c.points().to_vec())))
        }
    };
    let m = labels.len();
    let shape_ok = lt.len() == m && lt.iter().all(|r| r.len() == m);
    let poset_ok = shape_ok && is_strict_order(&lt);
    let linears_ok = orders.iter().all(|o| o.len() == m && o.iter().all(|r| r.len() == m) && is_linear(o));
    let realization_ok =
        shape_ok && linears_ok && (0..m).all(|a| (0..m).all(|b| a == b || lt[a][b] == orders.iter().all(|o| o[a][b])));
    let mut report = AxiomReport { poset_ok, linears_ok, realization_ok, density_defects: Vec::new() };
    if !linears_ok {
        return report;
    }
    let seqs: Vec<Vec<usize>> = orders.iter().map(|o| linear_from(o).sequence().to_vec()).collect();
    let n = seqs.len();
    // a cell picks one of the m + 1 gaps in every order
    let cells = (m + 1).checked_pow(n as u32).unwrap_or(usize::MAX);
    let colinear_free = points.as_ref().is_some_and(|(d, p)| PointCloud::new(*d, p.clone()).is_ok());
    for cell in 0..cells {
        let mut rest = cell;
        let mut gaps = vec![0; n];
        for g in gaps.iter_mut().rev() {
            *g = rest % (m + 1);
            rest /= m + 1;
        }
        let bounds: Vec<(Option<usize>, Option<usize>)> =
            gaps.iter().zip(&seqs).map(|(&g, s)| (g.checked_sub(1).map(|i| s[i]), s.get(g).copied())).collect();
        let mut witnesses: Vec<usize> = bounds.iter().flat_map(|&(l, h)| l.into_iter().chain(h)).collect();
        witnesses.sort();
        witnesses.dedup();
        let (fillable, region) = match &points {
            None => (true, None),
            Some((dim, pts)) => {
                let clauses: Vec<Clause> = bounds
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &(l, h))| {
                        let lo = l.map(|l| clause_for(Relation::Lex(i), &pts[l], Outcome::Below));
                        let hi = h.map(|h| clause_for(Relation::Lex(i), &pts[h], Outcome::Above));
                        lo.into_iter().chain(hi)
                    })
                    .collect();
                let fill = solve(*dim, &clauses).witness.is_some();
                let region = colinear_free.then(|| {
                    bounds
                        .iter()
                        .enumerate()
                        .map(|(i, &(l, h))| {
                            (l.map(|l| format_rational(&pts[l].0[i])), h.map(|h| format_rational(&pts[h].0[i])))
                        })
                        .collect()
                });
                (fill, region)
            }
        };
        let name = |i: usize| labels[i].clone();
        report.density_defects.push(DensityDefect {
            bounds: bounds.iter().map(|&(l, h)| (l.map(name), h.map(name))).collect(),
            witnesses: witnesses.into_iter().map(name).collect(),
            region,
            fillable,
        });
    }
    report
}

// ---------------------------------------------------------------------------
// Two-point homogeneity.

/// A partial automorphism of a grown cloud extending a map between two pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoHomogeneityExtension {
    /// Per coordinate, whether the two pairs compare alike or oppositely.
    pub flip: FlipPattern,
    /// The map, on one shared cloud, with its coordinate correspondence.
    pub iso: PartialIsomorphism,
}

impl TwoHomogeneityExtension {
    pub fn cloud(&self) -> &PointCloud {
        &self.iso.a
    }

    pub fn is_injective(&self) -> bool {
        let mut dom: Vec<usize> = self.iso.pairs.iter().map(|p| p.0).collect();
        let mut ran: Vec<usize> = self.iso.pairs.iter().map(|p| p.1).collect();
        let k = dom.len();
        dom.sort();
        dom.dedup();
        ran.sort();
        ran.dedup();
        dom.len() == k && ran.len() == k
    }

    /// Pairwise check that the map preserves the order in both directions.
    pub fn preserves_order(&self) -> bool {
        let c = self.cloud();
        self.iso.pairs.iter().all(|&(x, y)| {
            self.iso.pairs.iter().all(|&(u, v)| c.point(x).product_lt(c.point(u)) == c.point(y).product_lt(c.point(v)))
        })
    }
}

/// The first coordinate correspondence carrying the comparison directions of
/// `p` onto those of `q`, preferring the identity.
fn axis_map_for(p: &[bool], q: &[bool]) -> Option<Vec<usize>> {
    let n = p.len();
    permutations(n).into_iter().find(|perm| (0..n).all(|i| q[perm[i]] == p[i]))
}

/// Extends the map `pair1 -> pair2` to a partial automorphism of the cloud
/// by `steps` back-and-forth steps.
///
/// The automorphisms of the generic order permute coordinates, so the map
/// is realized by matching coordinate `i` of the source with coordinate
/// `axis_map[i]` of the target; such a correspondence exists exactly when
/// the two pairs have the same number of increasing coordinates.
pub fn two_homogeneity_extend(
    c: &PointCloud,
    pair1: (&Point, &Point),
    pair2: (&Point, &Point),
    steps: usize,
) -> Result<TwoHomogeneityExtension> {
    let idx = |p: &Point| c.index_of(p).ok_or_else(|| Error::InvalidArgument(format!("{p} is not in the cloud")));
    let (p, q, p2, q2) = (idx(pair1.0)?, idx(pair1.1)?, idx(pair2.0)?, idx(pair2.1)?);
    if (p == q) != (p2 == q2)
        || pair1.0.product_lt(pair1.1) != pair2.0.product_lt(pair2.1)
        || pair1.1.product_lt(pair1.0) != pair2.1.product_lt(pair2.0)
    {
        return Err(Error::NotOrderPreserving);
    }
    let dir = |a: &Point, b: &Point| -> Vec<bool> { a.0.iter().zip(&b.0).map(|(x, y)| x < y).collect() };
    let axis_map = axis_map_for(&dir(pair1.0, pair1.1), &dir(pair2.0, pair2.1)).ok_or(Error::PatternMismatch)?;
    let flip = FlipPattern::between(pair1, pair2);
    let mut pairs = vec![(p, p2)];
    if p != q {
        pairs.push((q, q2));
    }
    let mut run = BackAndForth { clouds: vec![c.clone()], axis_map, pairs };
    run.run(steps);
    let cloud = run.clouds.pop().unwrap();
    let iso = PartialIsomorphism { a: cloud.clone(), b: cloud, axis_map: run.axis_map, pairs: run.pairs };
    Ok(TwoHomogeneityExtension { flip, iso })
}

/// Sign-pattern classes of incomparable pairs that no coordinate
/// correspondence relates, in a cloud: pairs `(i, j)` with `i < j` whose
/// numbers of increasing coordinates differ from the reference pair.
fn unmatched_incomparable_pairs(c: &PointCloud) -> u64 {
    let k = c.len();
    let mut counts = std::collections::BTreeSet::new();
    for i in 0..k {
        for j in 0..k {
            let (a, b) = (c.point(i), c.point(j));
            if i != j && !a.product_lt(b) && !b.product_lt(a) {
                counts.insert(a.0.iter().zip(&b.0).filter(|(x, y)| x < y).count());
            }
        }
    }
    counts.len().saturating_sub(1) as u64
}

/// Runs [`two_homogeneity_extend`] on a sampled cloud for the first pair of
/// incomparable pairs with a nontrivial flip pattern.
pub fn two_homogeneity_certificate(n: usize, seed: u64, steps: usize) -> Result<Certificate> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be at least 2".into()));
    }
    let cloud = sample_dn(n, 12, seed);
    let k = cloud.len();
    let pts = cloud.points();
    let mut chosen = None;
    'outer: for i in 0..k {
        for j in 0..k {
            for u in 0..k {
                for v in 0..k {
                    if i == j || u == v || (i, j) == (u, v) {
                        continue;
                    }
                    let incomparable = |a: &Point, b: &Point| !a.product_lt(b) && !b.product_lt(a);
                    if !incomparable(&pts[i], &pts[j]) || !incomparable(&pts[u], &pts[v]) {
                        continue;
                    }
                    let flip = FlipPattern::between((&pts[i], &pts[j]), (&pts[u], &pts[v]));
                    if flip.is_identity() {
                        continue;
                    }
                    if let Ok(ext) = two_homogeneity_extend(&cloud, (&pts[i], &pts[j]), (&pts[u], &pts[v]), steps) {
                        chosen = Some(((i, j, u, v), ext));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut cert = Certificate::new(CertificateKind::TwoHomogeneityExtension, n);
    cert.count("seed", seed);
    cert.count("steps", steps as u64);
    cert.count("pattern_classes_without_correspondence", unmatched_incomparable_pairs(&cloud));
    let Some(((i, j, u, v), ext)) = chosen else {
        cert.claim("a nontrivially flipped pair map was found", false);
        return Ok(cert.finish());
    };
    for (name, idx) in [("p", i), ("q", j), ("p'", u), ("q'", v)] {
        cert.points.push(NamedPoint::new(name, &pts[idx]));
    }
    cert.relations = ext.flip.flipped().iter().map(|f| ("flipped".to_string(), f.to_string())).collect();
    cert.count("matched_points", ext.iso.pairs.len() as u64);
    cert.count("cloud_size", ext.cloud().len() as u64);
    cert.claim("a nontrivially flipped pair map was found", true);
    cert.claim("extension starts with the pair map", ext.iso.pairs[..2] == [(i, u), (j, v)]);
    cert.claim("extension is injective", ext.is_injective());
    cert.claim("extension preserves the order", ext.preserves_order());
    cert.claim("extension carries every coordinate order to its partner", ext.iso.verify());
    Ok(cert.finish())
}

/// The coordinate correspondence inverse, exposed for reporting.
pub fn inverse_axis_map(axis_map: &[usize]) -> Vec<usize> {
    invert(axis_map)
}
