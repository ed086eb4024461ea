//! Metric instances and their JSON representation.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::error::{Error, Result};
use crate::graph::ThresholdGraph;
use crate::numeric::{format_rational, parse_rational, Length, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "ft")]
    FaultTolerant,
    #[serde(rename = "conservative")]
    Conservative,
}

/// On-disk layout. Keys are emitted in sorted order by [`MetricInstance::to_json`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    n: usize,
    k: usize,
    alpha: usize,
    variant: Variant,
    capacities: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dist: Option<Vec<Vec<Number>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<[Number; 2]>>,
}

#[derive(Clone, Debug)]
enum Source {
    Matrix(Vec<Vec<Number>>),
    Points(Vec<[Number; 2]>),
}

#[derive(Clone, Debug)]
pub struct MetricInstance {
    pub name: String,
    pub k: usize,
    pub alpha: usize,
    pub capacities: Vec<u64>,
    pub variant: Variant,
    dist: Vec<Length>,
    n: usize,
    source: Source,
}

fn number_of(r: &Rational) -> Result<Number> {
    let text = format_rational(r);
    Number::from_str(&text).map_err(|_| Error::InvalidInstance(format!("{text} has no finite decimal form")))
}

fn rational_of(n: &Number) -> Result<Rational> {
    parse_rational(&n.to_string())
}

impl MetricInstance {
    pub fn from_matrix(
        name: impl Into<String>,
        dist: &[Vec<Rational>],
        k: usize,
        alpha: usize,
        capacities: Vec<u64>,
        variant: Variant,
    ) -> Result<Self> {
        let numbers = dist
            .iter()
            .map(|row| row.iter().map(number_of).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::build(name.into(), k, alpha, capacities, variant, Source::Matrix(numbers))
    }

    pub fn from_points(
        name: impl Into<String>,
        points: &[(Rational, Rational)],
        k: usize,
        alpha: usize,
        capacities: Vec<u64>,
        variant: Variant,
    ) -> Result<Self> {
        let numbers = points
            .iter()
            .map(|(x, y)| Ok([number_of(x)?, number_of(y)?]))
            .collect::<Result<Vec<_>>>()?;
        Self::build(name.into(), k, alpha, capacities, variant, Source::Points(numbers))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let source = match (file.dist, file.points) {
            (Some(d), None) => Source::Matrix(d),
            (None, Some(p)) => Source::Points(p),
            _ => {
                return Err(Error::InvalidInstance(
                    "exactly one of \"dist\" or \"points\" must be present".into(),
                ))
            }
        };
        let inst = Self::build(file.name, file.k, file.alpha, file.capacities, file.variant, source)?;
        if inst.n != file.n {
            return Err(Error::InvalidInstance(format!("n = {} but data has {} vertices", file.n, inst.n)));
        }
        Ok(inst)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let (dist, points) = match &self.source {
            Source::Matrix(d) => (Some(d.clone()), None),
            Source::Points(p) => (None, Some(p.clone())),
        };
        let file = InstanceFile {
            name: self.name.clone(),
            n: self.n,
            k: self.k,
            alpha: self.alpha,
            variant: self.variant,
            capacities: self.capacities.clone(),
            dist,
            points,
        };
        // Value maps are BTreeMaps, so keys come out sorted.
        let value = serde_json::to_value(&file).expect("instance serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    fn build(
        name: String,
        k: usize,
        alpha: usize,
        capacities: Vec<u64>,
        variant: Variant,
        source: Source,
    ) -> Result<Self> {
        let (n, dist) = match &source {
            Source::Matrix(rows) => {
                let n = rows.len();
                let mut dist = Vec::with_capacity(n * n);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != n {
                        return Err(Error::InvalidInstance(format!("row {i} has {} entries, expected {n}", row.len())));
                    }
                    for x in row {
                        dist.push(Length::from_rational(&rational_of(x)?)?);
                    }
                }
                (n, dist)
            }
            Source::Points(pts) => {
                let coords = pts
                    .iter()
                    .map(|[x, y]| Ok((rational_of(x)?, rational_of(y)?)))
                    .collect::<Result<Vec<_>>>()?;
                let n = coords.len();
                let mut dist = Vec::with_capacity(n * n);
                for (xa, ya) in &coords {
                    for (xb, yb) in &coords {
                        let dx = xa - xb;
                        let dy = ya - yb;
                        dist.push(Length::from_squared(&dx * &dx + &dy * &dy)?);
                    }
                }
                (n, dist)
            }
        };
        let inst = MetricInstance { name, k, alpha, capacities, variant, dist, n, source };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.capacities.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} capacities for {n} vertices",
                self.capacities.len()
            )));
        }
        if self.k == 0 || self.k > n {
            return Err(Error::InvalidInstance(format!("need 1 <= k <= n, got k = {}, n = {n}", self.k)));
        }
        if self.alpha >= self.k {
            return Err(Error::InvalidInstance(format!("need alpha < k, got alpha = {}, k = {}", self.alpha, self.k)));
        }
        for u in 0..n {
            if !self.distance(u, u).is_zero() {
                return Err(Error::NotMetric(format!("d({u},{u}) is not zero")));
            }
            for v in 0..u {
                if self.distance(u, v) != self.distance(v, u) {
                    return Err(Error::NotMetric(format!("d({u},{v}) != d({v},{u})")));
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if !self.distance(u, w).le_sum(self.distance(u, v), self.distance(v, w)) {
                        return Err(Error::NotMetric(format!("triangle inequality fails for ({u},{v},{w})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, u: usize, v: usize) -> &Length {
        &self.dist[u * self.n + v]
    }

    /// Sorted distinct pairwise distances, zero included.
    pub fn distinct_distances(&self) -> Vec<Length> {
        let mut values = self.dist.clone();
        values.sort();
        values.dedup();
        values
    }

    /// `G_{<= tau}`.
    pub fn threshold_graph(&self, tau: &Length) -> ThresholdGraph {
        let n = self.n;
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.distance(u, v) <= tau);
        let edges: Vec<_> = edges.collect();
        ThresholdGraph::from_edges(n, edges).with_tau(tau.clone())
    }

    pub fn with_capacities(&self, capacities: Vec<u64>) -> Result<Self> {
        let inst = MetricInstance { capacities, ..self.clone() };
        inst.validate()?;
        Ok(inst)
    }

    pub fn is_zero_l(&self) -> bool {
        crate::graph::zero_l_level(&self.capacities).is_ok()
    }
}
