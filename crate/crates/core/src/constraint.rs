//! Exact satisfiability of conjunctions of disjunctive coordinate
//! constraints over rational n-space.
//!
//! Every constraint compares one coordinate of the unknown point with a
//! constant, so feasibility of a conjunction is decided axis by axis; the
//! disjunctions are split by backtracking with the per-axis bounds pruning
//! dead branches.

use std::cmp::Ordering;

use num_traits::One;

use crate::geometry::{int, Point, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

/// `y[axis] cmp value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atom {
    pub axis: usize,
    pub cmp: Cmp,
    pub value: Rational,
}

impl Atom {
    pub fn new(axis: usize, cmp: Cmp, value: &Rational) -> Self {
        Atom { axis, cmp, value: value.clone() }
    }

    pub fn holds(&self, y: &Point) -> bool {
        let o = y.0[self.axis].cmp(&self.value);
        match self.cmp {
            Cmp::Lt => o == Ordering::Less,
            Cmp::Le => o != Ordering::Greater,
            Cmp::Gt => o == Ordering::Greater,
            Cmp::Ge => o != Ordering::Less,
            Cmp::Eq => o == Ordering::Equal,
            Cmp::Ne => o != Ordering::Equal,
        }
    }
}

/// A disjunction of conjunctions of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Clause(pub Vec<Vec<Atom>>);

impl Clause {
    pub fn all(atoms: Vec<Atom>) -> Self {
        Clause(vec![atoms])
    }

    pub fn holds(&self, y: &Point) -> bool {
        self.0.iter().any(|conj| conj.iter().all(|a| a.holds(y)))
    }
}

/// Bounds on one coordinate: `(value, strict)` endpoints, a pinned value,
/// and excluded values.
#[derive(Clone, Debug, Default)]
struct AxisBounds {
    lo: Option<(Rational, bool)>,
    hi: Option<(Rational, bool)>,
    pinned: Option<Rational>,
    excluded: Vec<Rational>,
}

impl AxisBounds {
    fn raise(&mut self, v: &Rational, strict: bool) {
        let tighter = match &self.lo {
            None => true,
            Some((l, s)) => v > l || (v == l && strict && !s),
        };
        if tighter {
            self.lo = Some((v.clone(), strict));
        }
    }

    fn lower(&mut self, v: &Rational, strict: bool) {
        let tighter = match &self.hi {
            None => true,
            Some((h, s)) => v < h || (v == h && strict && !s),
        };
        if tighter {
            self.hi = Some((v.clone(), strict));
        }
    }

    fn apply(&mut self, cmp: Cmp, v: &Rational) -> bool {
        match cmp {
            Cmp::Lt => self.lower(v, true),
            Cmp::Le => self.lower(v, false),
            Cmp::Gt => self.raise(v, true),
            Cmp::Ge => self.raise(v, false),
            Cmp::Eq => match &self.pinned {
                Some(p) if p != v => return false,
                _ => self.pinned = Some(v.clone()),
            },
            Cmp::Ne => self.excluded.push(v.clone()),
        }
        self.feasible()
    }

    fn admits(&self, x: &Rational) -> bool {
        let above = match &self.lo {
            None => true,
            Some((l, true)) => x > l,
            Some((l, false)) => x >= l,
        };
        let below = match &self.hi {
            None => true,
            Some((h, true)) => x < h,
            Some((h, false)) => x <= h,
        };
        above && below && !self.excluded.contains(x)
    }

    fn feasible(&self) -> bool {
        if let Some(p) = &self.pinned {
            return self.admits(p);
        }
        match (&self.lo, &self.hi) {
            (Some((l, ls)), Some((h, hs))) => {
                if l < h {
                    true
                } else {
                    l == h && !ls && !hs && !self.excluded.contains(l)
                }
            }
            _ => true,
        }
    }

    /// A value meeting the bounds; assumes feasibility.
    fn witness(&self) -> Rational {
        if let Some(p) = &self.pinned {
            return p.clone();
        }
        let two = int(2);
        let hi = self.hi.as_ref().map(|(h, _)| h.clone());
        let mut x = match (&self.lo, &hi) {
            (Some((l, _)), Some(h)) if l == h => return l.clone(),
            (Some((l, _)), Some(h)) => (l + h) / &two,
            (Some((l, _)), None) => l + Rational::one(),
            (None, Some(h)) => h - Rational::one(),
            (None, None) => int(0),
        };
        while !self.admits(&x) {
            x = match &hi {
                Some(h) => (&x + h) / &two,
                None => x + Rational::one(),
            };
        }
        x
    }
}

/// Outcome of a satisfiability run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub witness: Option<Point>,
    /// Partial assignments explored.
    pub nodes: u64,
}

/// Decides whether some point of rational `n`-space meets every clause.
pub fn solve(n: usize, clauses: &[Clause]) -> Solution {
    let mut order: Vec<&Clause> = clauses.iter().collect();
    order.sort_by_key(|c| c.0.len());
    let mut nodes = 0;
    let start = vec![AxisBounds::default(); n];
    let witness = search(&order, 0, &start, &mut nodes).map(|b| Point(b.iter().map(AxisBounds::witness).collect()));
    if let Some(w) = &witness {
        debug_assert!(clauses.iter().all(|c| c.holds(w)));
    }
    Solution { witness, nodes }
}

fn search(clauses: &[&Clause], i: usize, state: &[AxisBounds], nodes: &mut u64) -> Option<Vec<AxisBounds>> {
    *nodes += 1;
    let Some(clause) = clauses.get(i) else {
        return Some(state.to_vec());
    };
    for conj in &clause.0 {
        let mut next = state.to_vec();
        if conj.iter().all(|a| next[a.axis].apply(a.cmp, &a.value)) {
            if let Some(done) = search(clauses, i + 1, &next, nodes) {
                return Some(done);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    #[test]
    fn pinned_conflict() {
        let c =
            vec![Clause::all(vec![Atom::new(0, Cmp::Eq, &int(1))]), Clause::all(vec![Atom::new(0, Cmp::Gt, &int(1))])];
        assert_eq!(solve(1, &c).witness, None);
    }

    #[test]
    fn closed_interval_point() {
        let c = vec![Clause::all(vec![Atom::new(0, Cmp::Ge, &int(2)), Atom::new(0, Cmp::Le, &int(2))])];
        assert_eq!(solve(1, &c).witness, Some(Point(vec![int(2)])));
        let c2 = vec![c[0].clone(), Clause::all(vec![Atom::new(0, Cmp::Ne, &int(2))])];
        assert_eq!(solve(1, &c2).witness, None);
    }

    #[test]
    fn disjunction_backtracks() {
        // y0 < 0 or y0 > 5, and y0 > 1, and y0 != 6
        let c = vec![
            Clause(vec![vec![Atom::new(0, Cmp::Lt, &int(0))], vec![Atom::new(0, Cmp::Gt, &int(5))]]),
            Clause::all(vec![Atom::new(0, Cmp::Gt, &int(1)), Atom::new(0, Cmp::Ne, &int(6))]),
        ];
        let w = solve(1, &c).witness.unwrap();
        assert!(w.0[0] > int(5) && w.0[0] != int(6));
    }

    #[test]
    fn witness_avoids_exclusions() {
        let c = vec![Clause::all(vec![
            Atom::new(0, Cmp::Gt, &int(0)),
            Atom::new(0, Cmp::Lt, &int(1)),
            Atom::new(0, Cmp::Ne, &rat(1, 2)),
        ])];
        assert_eq!(solve(1, &c).witness, Some(Point(vec![rat(3, 4)])));
    }
}
