//! Exact rational point clouds in n dimensions with no two points sharing a
//! coordinate, their cells, and embedding constructions into them.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{default_labels, LinearOrder, OrderedStructure};

pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim().parse::<BigInt>().map(|d| d.is_zero()).unwrap_or(false) {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a fraction: {s:?}")))
}

/// Always `"p/q"`, reduced, with the sign on the numerator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A point of rational n-space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn from_ints(v: &[i64]) -> Self {
        Point(v.iter().map(|&x| int(x)).collect())
    }

    /// Point from `(num, den)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Self {
        Point(v.iter().map(|&(a, b)| rat(a, b)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// Product order: coordinatewise at most, and distinct.
    pub fn product_lt(&self, other: &Point) -> bool {
        self != other && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Compares in the `i`-th lexicographic order (0-based), which reads
    /// coordinates `i, i+1, ..., n-1, 0, ..., i-1`.
    pub fn lex_cmp(&self, other: &Point, i: usize) -> Ordering {
        let n = self.dim();
        (0..n).map(|k| (i + k) % n).map(|c| self.0[c].cmp(&other.0[c])).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
    }

    /// The point with coordinates moved by `perm`: output coordinate `perm[i]`
    /// takes input coordinate `i`.
    pub fn permuted(&self, perm: &[usize]) -> Point {
        let mut out = self.0.clone();
        for (i, &j) in perm.iter().enumerate() {
            out[j] = self.0[i].clone();
        }
        Point(out)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// A finite set of points no two of which share any coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "crate::io::CloudJson", into = "crate::io::CloudJson")]
pub struct PointCloud {
    dim: usize,
    points: Vec<Point>,
    used: Vec<HashSet<Rational>>,
}

impl PartialEq for PointCloud {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.points == other.points
    }
}

impl Eq for PointCloud {}

impl PointCloud {
    pub fn empty(dim: usize) -> Self {
        PointCloud { dim, points: Vec::new(), used: vec![HashSet::new(); dim] }
    }

    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        let mut c = PointCloud::empty(dim);
        for p in points {
            c.push(p)?;
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Whether no point of the cloud has `value` as its coordinate `axis`.
    pub fn is_free(&self, axis: usize, value: &Rational) -> bool {
        !self.used[axis].contains(value)
    }

    /// Appends a point, returning its index.
    pub fn push(&mut self, p: Point) -> Result<usize> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        for (axis, v) in p.0.iter().enumerate() {
            if !self.is_free(axis, v) {
                let other = self.points.iter().position(|q| &q.0[axis] == v).expect("used value");
                return Err(Error::Colinear(other, self.points.len()));
            }
        }
        for (axis, v) in p.0.iter().enumerate() {
            self.used[axis].insert(v.clone());
        }
        self.points.push(p);
        Ok(self.points.len() - 1)
    }

    /// A new cloud with `p` appended, and the index of `p` in it.
    pub fn with_point(&self, p: Point) -> Result<(PointCloud, usize)> {
        let mut c = self.clone();
        let i = c.push(p)?;
        Ok((c, i))
    }

    /// The order on point indices by coordinate `axis`.
    pub fn coordinate_order(&self, axis: usize) -> LinearOrder {
        let mut seq: Vec<usize> = (0..self.len()).collect();
        seq.sort_by(|&a, &b| self.points[a].0[axis].cmp(&self.points[b].0[axis]));
        LinearOrder::from_sequence(seq).expect("sorted indices")
    }

    /// Sub-cloud of the given points, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> PointCloud {
        PointCloud::new(self.dim, idx.iter().map(|&i| self.points[i].clone()).collect()).expect("subset of a cloud")
    }
}

/// The product order on the cloud with its coordinate orders as realizers.
pub fn induced_structure(c: &PointCloud) -> OrderedStructure {
    let orders = (0..c.dim()).map(|i| c.coordinate_order(i)).collect();
    OrderedStructure::from_orders(default_labels(c.len()), orders).expect("coordinate orders on distinct labels")
}

/// An open interval with optional finite endpoints (`None` is infinite).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Interval {
    pub fn whole() -> Self {
        Interval { lo: None, hi: None }
    }

    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        Interval { lo, hi }
    }

    pub fn is_nonempty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some(l), Some(h)) => l < h,
            _ => true,
        }
    }

    /// Shrinks the interval to lie above `v` (if `below`) or under it.
    fn tighten(&mut self, v: &Rational, below: bool) {
        if below {
            if self.lo.as_ref().is_none_or(|l| l < v) {
                self.lo = Some(v.clone());
            }
        } else if self.hi.as_ref().is_none_or(|h| v < h) {
            self.hi = Some(v.clone());
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| l < x) && self.hi.as_ref().is_none_or(|h| x < h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lo.as_ref().map_or("-inf".to_string(), format_rational);
        let hi = self.hi.as_ref().map_or("+inf".to_string(), format_rational);
        write!(f, "({lo}, {hi})")
    }
}

/// A product of open intervals, one per axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Region {
    intervals: Vec<Interval>,
}

impl Region {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if let Some(i) = intervals.iter().position(|iv| !iv.is_nonempty()) {
            return Err(Error::InvalidArgument(format!("interval {i} of the region is empty")));
        }
        Ok(Region { intervals })
    }

    pub fn whole(n: usize) -> Self {
        Region { intervals: vec![Interval::whole(); n] }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim() && self.intervals.iter().zip(&p.0).all(|(iv, x)| iv.contains(x))
    }
}

/// All cells cut out by the coordinate values of the cloud: on each axis the
/// open gaps between consecutive values. Cells are listed with the first
/// axis varying slowest.
pub fn regions_of(c: &PointCloud) -> Vec<Region> {
    let gaps: Vec<Vec<Interval>> = (0..c.dim())
        .map(|axis| {
            let mut vals: Vec<&Rational> = c.points().iter().map(|p| &p.0[axis]).collect();
            vals.sort();
            vals.dedup();
            let mut out = Vec::with_capacity(vals.len() + 1);
            let mut lo = None;
            for v in vals {
                out.push(Interval::new(lo, Some(v.clone())));
                lo = Some(v.clone());
            }
            out.push(Interval::new(lo, None));
            out
        })
        .collect();
    let mut cells = vec![Vec::new()];
    for axis in gaps {
        let mut next = Vec::with_capacity(cells.len() * axis.len());
        for prefix in &cells {
            for iv in &axis {
                let mut cell = prefix.clone();
                cell.push(iv.clone());
                next.push(cell);
            }
        }
        cells = next;
    }
    cells.into_iter().map(|intervals| Region { intervals }).collect()
}

/// A point strictly inside `r` sharing no coordinate with the cloud.
///
/// Each coordinate starts at the midpoint (or one unit inside a half-infinite
/// interval, or 0 on the whole line) and moves toward the upper end until it
/// is unused: by halving the remaining gap when the upper end is finite,
/// otherwise by unit steps.
pub fn pick_in_region(c: &PointCloud, r: &Region) -> Point {
    let two = int(2);
    let coords = r
        .intervals
        .iter()
        .enumerate()
        .map(|(axis, iv)| {
            let mut x = match (&iv.lo, &iv.hi) {
                (Some(l), Some(h)) => (l + h) / &two,
                (Some(l), None) => l + Rational::one(),
                (None, Some(h)) => h - Rational::one(),
                (None, None) => Rational::zero(),
            };
            while !c.is_free(axis, &x) {
                x = match &iv.hi {
                    Some(h) => (&x + h) / &two,
                    None => x + Rational::one(),
                };
            }
            x
        })
        .collect();
    Point(coords)
}

/// A sup-norm ball: the open box of half-width `radius` around `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    pub center: Vec<Rational>,
    pub radius: Rational,
}

/// Enumerates every ball with radius `2^-j` and center in `(2^-j Z)^n`.
///
/// A ball is assigned the weight `2j + s` where `s` is the ceiling of the
/// sup-norm of its center; weights are visited in increasing order, then by
/// `j`, then by center in lexicographic order. Each weight class is finite,
/// so every ball is reached.
#[derive(Clone, Debug)]
pub struct BallEnumeration {
    n: usize,
    weight: u32,
    j: u32,
    odometer: Option<Vec<i64>>,
}

impl BallEnumeration {
    pub fn new(n: usize) -> Self {
        BallEnumeration { n, weight: 0, j: 0, odometer: None }
    }

    fn shell(&self) -> u32 {
        self.weight - 2 * self.j
    }

    /// Advances to the next (weight, j) class.
    fn next_class(&mut self) {
        if 2 * (self.j + 1) <= self.weight {
            self.j += 1;
        } else {
            self.weight += 1;
            self.j = 0;
        }
        self.odometer = None;
    }

    fn in_shell(&self, z: &[i64]) -> bool {
        let scale = 1i64 << self.j;
        let s = self.shell() as i64;
        let m = z.iter().map(|v| v.abs()).max().unwrap_or(0);
        if s == 0 {
            m == 0
        } else {
            (s - 1) * scale < m && m <= s * scale
        }
    }

    /// Next integer vector in the current class's bounding cube.
    fn step(&mut self) -> Option<Vec<i64>> {
        let bound = self.shell() as i64 * (1i64 << self.j);
        match &mut self.odometer {
            None => {
                let start = vec![-bound; self.n];
                self.odometer = Some(start.clone());
                Some(start)
            }
            Some(z) => {
                for k in (0..z.len()).rev() {
                    if z[k] < bound {
                        z[k] += 1;
                        return Some(z.clone());
                    }
                    z[k] = -bound;
                }
                None
            }
        }
    }
}

impl Iterator for BallEnumeration {
    type Item = Ball;

    fn next(&mut self) -> Option<Ball> {
        loop {
            match self.step() {
                Some(z) if self.in_shell(&z) => {
                    let den = BigInt::one() << self.j as usize;
                    let center = z.iter().map(|&v| Rational::new(BigInt::from(v), den.clone())).collect();
                    return Some(Ball { center, radius: Rational::new(BigInt::one(), den) });
                }
                Some(_) => {}
                None => self.next_class(),
            }
        }
    }
}

const SAMPLE_BITS: usize = 16;

fn sample_in_ball(rng: &mut ChaCha8Rng, ball: &Ball, accept: impl Fn(usize, &Rational) -> bool) -> Point {
    let limit: i64 = (1 << SAMPLE_BITS) - 1;
    let den = BigInt::one() << SAMPLE_BITS;
    let coords = ball
        .center
        .iter()
        .enumerate()
        .map(|(axis, c)| loop {
            let num: i64 = rng.gen_range(-limit..=limit);
            let x = c + &ball.radius * Rational::new(BigInt::from(num), den.clone());
            if accept(axis, &x) {
                break x;
            }
        })
        .collect();
    Point(coords)
}

/// A deterministic cloud of `count` points, the `k`-th inside the `k`-th
/// ball of [`BallEnumeration`]; the seed only moves points within their
/// balls. Samples for increasing `count` extend one another.
pub fn sample_dn(n: usize, count: usize, seed: u64) -> PointCloud {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = PointCloud::empty(n);
    for ball in BallEnumeration::new(n).take(count) {
        let p = sample_in_ball(&mut rng, &ball, |axis, x| cloud.is_free(axis, x));
        cloud.push(p).expect("sampled coordinates are fresh");
    }
    cloud
}

/// Like [`sample_dn`], but every point comes with its whole orbit under
/// coordinate permutations, and no coordinate value occurs twice anywhere in
/// the cloud. The count is rounded up to whole orbits.
///
/// Only `n <= 2` is possible: an orbit has `n!` points but only `n` values
/// per axis, so for `n >= 3` two of its points always share a coordinate.
pub fn symmetric_sample(n: usize, count: usize, seed: u64) -> Result<PointCloud> {
    if n > 2 {
        return Err(Error::InvalidArgument(format!(
            "a colinear-free cloud closed under coordinate permutations needs n <= 2, got {n}"
        )));
    }
    let perms = permutations(n);
    let orbits = count.div_ceil(perms.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cloud = PointCloud::empty(n);
    let mut values: HashSet<Rational> = HashSet::new();
    for ball in BallEnumeration::new(n).take(orbits) {
        let base = loop {
            let p = sample_in_ball(&mut rng, &ball, |_, x| !values.contains(x));
            let distinct: HashSet<&Rational> = p.0.iter().collect();
            if distinct.len() == n {
                break p;
            }
        };
        values.extend(base.0.iter().cloned());
        for perm in &perms {
            cloud.push(base.permuted(perm)).expect("globally distinct coordinates");
        }
    }
    Ok(cloud)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// A partial map from a structure's elements into a cloud that preserves the
/// order and every realizing order (matched to the coordinate orders).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialEmbedding {
    source: OrderedStructure,
    cloud: PointCloud,
    images: Vec<Option<usize>>,
}

impl PartialEmbedding {
    /// The empty map.
    pub fn empty(source: OrderedStructure, cloud: PointCloud) -> Result<Self> {
        if source.arity() != cloud.dim() {
            return Err(Error::DimensionMismatch { expected: cloud.dim(), found: source.arity() });
        }
        let images = vec![None; source.len()];
        Ok(PartialEmbedding { source, cloud, images })
    }

    /// A map with the given images (indices into the cloud), validated.
    pub fn new(source: OrderedStructure, cloud: PointCloud, images: Vec<Option<usize>>) -> Result<Self> {
        let mut f = Self::empty(source, cloud)?;
        if images.len() != f.source.len() || images.iter().flatten().any(|&i| i >= f.cloud.len()) {
            return Err(Error::InvalidEmbedding("image table does not fit source and cloud".into()));
        }
        f.images = images;
        f.validate()?;
        Ok(f)
    }

    pub fn source(&self) -> &OrderedStructure {
        &self.source
    }

    pub fn cloud(&self) -> &PointCloud {
        &self.cloud
    }

    pub fn images(&self) -> &[Option<usize>] {
        &self.images
    }

    pub fn image(&self, e: usize) -> Option<&Point> {
        self.images[e].map(|i| self.cloud.point(i))
    }

    pub fn domain(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&e| self.images[e].is_some()).collect()
    }

    /// Checks that the map preserves `<` and every realizing order.
    pub fn validate(&self) -> Result<()> {
        let dom = self.domain();
        for &x in &dom {
            for &y in &dom {
                if x == y {
                    continue;
                }
                let (px, py) = (self.image(x).unwrap(), self.image(y).unwrap());
                if px == py {
                    return Err(Error::InvalidEmbedding(format!("elements {x} and {y} share an image")));
                }
                if self.source.poset().lt(x, y) != px.product_lt(py) {
                    return Err(Error::InvalidEmbedding(format!("order between {x} and {y} not preserved")));
                }
                for (i, o) in self.source.realizers().orders().iter().enumerate() {
                    if o.before(x, y) != (px.0[i] < py.0[i]) {
                        return Err(Error::InvalidEmbedding(format!("order {i} between {x} and {y} not preserved")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The structure induced on the images of the domain, listed in domain order.
    pub fn image_structure(&self) -> OrderedStructure {
        let idx: Vec<usize> = self.domain().iter().map(|&e| self.images[e].unwrap()).collect();
        induced_structure(&self.cloud.restrict(&idx))
    }
}

/// Extends `f` to the source element `q`.
///
/// On each axis `q`'s image is confined between the images of its nearest
/// mapped neighbours in the matching realizing order, unbounded on a side
/// with no neighbour; the image is then picked inside the resulting box.
pub fn forth_extend(f: &PartialEmbedding, q: usize) -> Result<PartialEmbedding> {
    f.validate()?;
    if q >= f.source.len() {
        return Err(Error::InvalidArgument(format!("element {q} is not in the source")));
    }
    if f.images[q].is_some() {
        return Err(Error::InvalidArgument(format!("element {q} is already mapped")));
    }
    let orders = f.source.realizers().orders();
    let mut intervals = vec![Interval::whole(); f.cloud.dim()];
    for e in f.domain() {
        let img = f.image(e).unwrap();
        for (axis, iv) in intervals.iter_mut().enumerate() {
            iv.tighten(&img.0[axis], orders[axis].before(e, q));
        }
    }
    let p = pick_in_region(&f.cloud, &Region { intervals });
    let mut g = f.clone();
    let idx = g.cloud.push(p).expect("picked point is fresh");
    g.images[q] = Some(idx);
    Ok(g)
}

/// A finite partial isomorphism between two clouds, matching coordinate `i`
/// of the first cloud with coordinate `axis_map[i]` of the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialIsomorphism {
    pub a: PointCloud,
    pub b: PointCloud,
    pub axis_map: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl PartialIsomorphism {
    /// Pairwise check that every coordinate comparison is carried over.
    pub fn verify(&self) -> bool {
        let mut dom = HashSet::new();
        let mut ran = HashSet::new();
        for &(x, y) in &self.pairs {
            if !dom.insert(x) || !ran.insert(y) {
                return false;
            }
        }
        self.pairs.iter().all(|&(x, y)| {
            self.pairs.iter().all(|&(u, v)| {
                let (px, pu, py, pv) = (self.a.point(x), self.a.point(u), self.b.point(y), self.b.point(v));
                self.axis_map.iter().enumerate().all(|(i, &j)| (px.0[i] < pu.0[i]) == (py.0[j] < pv.0[j]))
            })
        })
    }

    /// The map as an embedding of the first cloud's structure into the second.
    pub fn forward(&self) -> Result<PartialEmbedding> {
        let mut images = vec![None; self.a.len()];
        for &(x, y) in &self.pairs {
            images[x] = Some(y);
        }
        let source = permuted_structure(&self.a, &self.axis_map);
        PartialEmbedding::new(source, self.b.clone(), images)
    }

    /// The inverse map as an embedding of the second cloud's structure.
    pub fn inverse(&self) -> Result<PartialEmbedding> {
        let mut images = vec![None; self.b.len()];
        for &(x, y) in &self.pairs {
            images[y] = Some(x);
        }
        let source = permuted_structure(&self.b, &invert(&self.axis_map));
        PartialEmbedding::new(source, self.a.clone(), images)
    }
}

/// The induced structure with its coordinate orders relisted so that order
/// `axis_map[i]` is the order of coordinate `i`.
fn permuted_structure(c: &PointCloud, axis_map: &[usize]) -> OrderedStructure {
    let s = induced_structure(c);
    let mut orders = vec![LinearOrder::identity(0); c.dim()];
    for (i, &j) in axis_map.iter().enumerate() {
        orders[j] = s.realizers().orders()[i].clone();
    }
    OrderedStructure::from_orders(default_labels(c.len()), orders).expect("relisted realizers")
}

pub(crate) fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Back-and-forth over one or two clouds. With one cloud, source and target
/// coincide and the result is a partial automorphism.
pub(crate) struct BackAndForth {
    pub clouds: Vec<PointCloud>,
    pub axis_map: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl BackAndForth {
    fn target(&self) -> usize {
        self.clouds.len() - 1
    }

    /// One step matching a new point; `forth` picks from the source side.
    fn step(&mut self, forth: bool) {
        let (from, to) = if forth { (0, self.target()) } else { (self.target(), 0) };
        let map: Vec<usize> = if forth { self.axis_map.clone() } else { invert(&self.axis_map) };
        let (known_from, known_to): (HashSet<usize>, HashSet<usize>) = if forth {
            (self.pairs.iter().map(|p| p.0).collect(), self.pairs.iter().map(|p| p.1).collect())
        } else {
            (self.pairs.iter().map(|p| p.1).collect(), self.pairs.iter().map(|p| p.0).collect())
        };
        let n = self.clouds[0].dim();
        let x = match (0..self.clouds[from].len()).find(|i| !known_from.contains(i)) {
            Some(x) => x,
            None => {
                let p = pick_in_region(&self.clouds[from], &Region::whole(n));
                self.clouds[from].push(p).expect("fresh point")
            }
        };
        let pairs: Vec<(usize, usize)> = self.pairs.iter().map(|&(u, v)| if forth { (u, v) } else { (v, u) }).collect();
        let px = self.clouds[from].point(x).clone();
        let mut intervals = vec![Interval::whole(); n];
        for &(u, v) in &pairs {
            let pu = self.clouds[from].point(u);
            let pv = self.clouds[to].point(v);
            for (i, &j) in map.iter().enumerate() {
                intervals[j].tighten(&pv.0[j], pu.0[i] < px.0[i]);
            }
        }
        let region = Region { intervals };
        let existing =
            (0..self.clouds[to].len()).find(|y| !known_to.contains(y) && region.contains(self.clouds[to].point(*y)));
        let y = match existing {
            Some(y) => y,
            None => {
                let p = pick_in_region(&self.clouds[to], &region);
                self.clouds[to].push(p).expect("fresh point")
            }
        };
        self.pairs.push(if forth { (x, y) } else { (y, x) });
    }

    /// Runs `steps` alternating steps, starting with a forth step.
    pub fn run(&mut self, steps: usize) {
        for k in 0..steps {
            self.step(k % 2 == 0);
        }
    }
}

/// Grows a partial isomorphism between `a` and `b` by `steps` alternating
/// steps. A step first tries an unmatched existing point of the other cloud
/// in the required cell and only adds a new point when none is there.
pub fn back_and_forth_iso(a: &PointCloud, b: &PointCloud, steps: usize) -> Result<PartialIsomorphism> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let mut run =
        BackAndForth { clouds: vec![a.clone(), b.clone()], axis_map: (0..a.dim()).collect(), pairs: Vec::new() };
    run.run(steps);
    let b = run.clouds.pop().unwrap();
    let a = run.clouds.pop().unwrap();
    Ok(PartialIsomorphism { a, b, axis_map: run.axis_map, pairs: run.pairs })
}

/// Sign of each coordinate comparison of a pair relative to a reference pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// Per coordinate, whether two pairs compare the same way (`+`) or
/// oppositely (`-`) on that coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlipPattern(pub Vec<Sign>);

impl FlipPattern {
    pub fn between(p: (&Point, &Point), q: (&Point, &Point)) -> Self {
        FlipPattern(
            (0..p.0.dim())
                .map(|i| if (p.0 .0[i] < p.1 .0[i]) == (q.0 .0[i] < q.1 .0[i]) { Sign::Plus } else { Sign::Minus })
                .collect(),
        )
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|s| *s == Sign::Plus)
    }

    /// 1-based indices of the flipped coordinates.
    pub fn flipped(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, s)| **s == Sign::Minus).map(|(i, _)| i + 1).collect()
    }
}
