//! JSON interchange formats.
//!
//! * poset: `{"elements": [label, ...], "lt": [[bool, ...], ...]}`
//! * structure: a poset plus `"realizers": [[label, ...], ...]`, each a
//!   linear order listed from least to greatest
//! * cloud: `{"dim": n, "points": [["p/q", ...], ...]}` with exact fractions

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::RealizerSet;
use crate::geometry::{parse_rational, Point, PointCloud};
use crate::poset::{validate_poset, FinitePoset, LinearOrder, OrderedStructure, RealizerTuple};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub lt: Vec<Vec<bool>>,
}

impl From<FinitePoset> for PosetJson {
    fn from(p: FinitePoset) -> Self {
        PosetJson { lt: p.relation(), elements: p.labels().to_vec() }
    }
}

impl TryFrom<PosetJson> for FinitePoset {
    type Error = Error;

    fn try_from(j: PosetJson) -> Result<Self> {
        validate_poset(j.elements, &j.lt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub elements: Vec<String>,
    pub lt: Vec<Vec<bool>>,
    pub realizers: Vec<Vec<String>>,
}

/// Label sequences of a tuple's orders.
pub fn tuple_labels(labels: &[String], t: &RealizerTuple) -> Vec<Vec<String>> {
    t.orders().iter().map(|o| o.sequence().iter().map(|&e| labels[e].clone()).collect()).collect()
}

/// Reads orders given as label sequences over `labels`.
pub fn tuple_from_labels(labels: &[String], orders: &[Vec<String>]) -> Result<RealizerTuple> {
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let orders = orders
        .iter()
        .map(|seq| {
            let idx = seq
                .iter()
                .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown element {l:?}"))))
                .collect::<Result<Vec<_>>>()?;
            if idx.len() != labels.len() {
                return Err(Error::ElementMismatch);
            }
            LinearOrder::from_sequence(idx)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RealizerTuple::new(orders))
}

impl From<OrderedStructure> for StructureJson {
    fn from(s: OrderedStructure) -> Self {
        let labels = s.poset().labels().to_vec();
        StructureJson { realizers: tuple_labels(&labels, s.realizers()), lt: s.poset().relation(), elements: labels }
    }
}

impl TryFrom<StructureJson> for OrderedStructure {
    type Error = Error;

    fn try_from(j: StructureJson) -> Result<Self> {
        let t = tuple_from_labels(&j.elements, &j.realizers)?;
        OrderedStructure::new(validate_poset(j.elements, &j.lt)?, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CloudJson {
    pub dim: usize,
    pub points: Vec<Vec<String>>,
}

impl From<PointCloud> for CloudJson {
    fn from(c: PointCloud) -> Self {
        CloudJson { dim: c.dim(), points: c.points().iter().map(Point::to_strings).collect() }
    }
}

impl TryFrom<CloudJson> for PointCloud {
    type Error = Error;

    fn try_from(j: CloudJson) -> Result<Self> {
        let points = j
            .points
            .iter()
            .map(|p| {
                if p.len() != j.dim {
                    return Err(Error::DimensionMismatch { expected: j.dim, found: p.len() });
                }
                Ok(Point(p.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        PointCloud::new(j.dim, points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerEntryJson {
    pub orders: Vec<Vec<String>>,
    /// 0-based coordinate permutation, when the tuple is one.
    pub sigma: Option<Vec<usize>>,
}

/// Realizer census of a structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerSetJson {
    pub n: usize,
    pub count: usize,
    pub classified: usize,
    pub tuples: Vec<RealizerEntryJson>,
}

impl From<&RealizerSet> for RealizerSetJson {
    fn from(s: &RealizerSet) -> Self {
        let labels = s.structure.poset().labels();
        let tuples: Vec<RealizerEntryJson> = s
            .entries
            .iter()
            .map(|e| RealizerEntryJson { orders: tuple_labels(labels, &e.tuple), sigma: e.sigma.clone() })
            .collect();
        RealizerSetJson {
            n: s.structure.arity(),
            count: tuples.len(),
            classified: tuples.iter().filter(|t| t.sigma.is_some()).count(),
            tuples,
        }
    }
}
