//! Degree-based graph indices.
//!
//! Integer-valued indices use exact integer arithmetic. Only the general
//! Albertson index `irr_p` is floating point.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::degseq::DegreeSequence;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IndexError {
    #[error("exponent p must be positive, got {0}")]
    NonPositiveExponent(f64),
    #[error("degree sum {0} is odd")]
    OddDegreeSum(usize),
    #[error("vertices {0} and {1} are consecutive on the path but not adjacent")]
    NotAdjacent(usize, usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("spine needs at least 2 vertices, got {0}")]
    ShortSpine(usize),
    #[error("degree formula needs at least 2 degrees, got {0}")]
    ShortSequence(usize),
}

/// An exact non-negative multiple of one half, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInteger {
    twice: u64,
}

impl HalfInteger {
    pub fn from_twice(twice: u64) -> Self {
        Self { twice }
    }

    pub fn from_integer(value: u64) -> Self {
        Self { twice: 2 * value }
    }

    pub fn twice(self) -> u64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub fn to_integer(self) -> Option<u64> {
        self.is_integer().then_some(self.twice / 2)
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}.5", self.twice / 2),
        }
    }
}

/// Integral values serialize as JSON integers, halves as `x.5`.
impl Serialize for HalfInteger {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_integer() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_f64(self.to_f64()),
        }
    }
}

impl<'de> Deserialize<'de> for HalfInteger {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = f64::deserialize(deserializer)?;
        let twice = value * 2.0;
        if twice < 0.0 || twice.fract() != 0.0 {
            return Err(serde::de::Error::custom(format!("{value} is not a non-negative multiple of 1/2")));
        }
        Ok(Self { twice: twice as u64 })
    }
}

fn edge_gaps(g: &Graph) -> impl Iterator<Item = u64> + '_ {
    g.edges()
        .iter()
        .map(|&(u, v)| g.degree(u).abs_diff(g.degree(v)) as u64)
}

/// Albertson index: sum over edges of `|d_u - d_v|`.
pub fn albertson(g: &Graph) -> u64 {
    edge_gaps(g).sum()
}

/// Sigma index: sum over edges of `(d_u - d_v)^2`.
pub fn sigma(g: &Graph) -> u64 {
    edge_gaps(g).map(|x| x * x).sum()
}

/// General Albertson index `(Σ |d_u - d_v|^p)^(1/p)`.
///
/// `p = 1` is evaluated exactly so that it coincides with [`albertson`].
pub fn general_albertson(g: &Graph, p: f64) -> Result<f64, IndexError> {
    if p.is_nan() || p <= 0.0 {
        return Err(IndexError::NonPositiveExponent(p));
    }
    if p == 1.0 {
        return Ok(albertson(g) as f64);
    }
    let sum: f64 = edge_gaps(g).map(|x| (x as f64).powf(p)).sum();
    Ok(sum.powf(p.recip()))
}

/// Total irregularity: `|d_u - d_v|` summed over all unordered vertex pairs.
pub fn total_albertson(g: &Graph) -> u64 {
    let d = g.degrees();
    let mut total = 0u64;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            total += d[i].abs_diff(d[j]) as u64;
        }
    }
    total
}

/// Closed form `2(n+1)m - 2 Σ i·d_i` over the non-increasing sequence with
/// 1-based positions. Equals [`total_albertson`] of any realization.
pub fn total_albertson_sorted_formula(ds: &DegreeSequence) -> Result<i64, IndexError> {
    let sum = ds.sum();
    if sum % 2 == 1 {
        return Err(IndexError::OddDegreeSum(sum));
    }
    let n = ds.len() as i64;
    let m = (sum / 2) as i64;
    let weighted: i64 = ds
        .values()
        .iter()
        .enumerate()
        .map(|(i, &d)| (i as i64 + 1) * d as i64)
        .sum();
    Ok(2 * (n + 1) * m - 2 * weighted)
}

/// Modified total sigma: half the sum over ordered vertex pairs of
/// `(d_u - d_v)^2`.
pub fn sigma_t(g: &Graph) -> HalfInteger {
    let d = g.degrees();
    let mut twice = 0u64;
    for &du in d {
        for &dv in d {
            let gap = du.abs_diff(dv) as u64;
            twice += gap * gap;
        }
    }
    HalfInteger::from_twice(twice)
}

/// `(d_u - d_v)^2` summed over unordered vertex pairs.
pub fn pairwise_squared_gaps(g: &Graph) -> u64 {
    let d = g.degrees();
    let mut total = 0u64;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let gap = d[i].abs_diff(d[j]) as u64;
            total += gap * gap;
        }
    }
    total
}

/// First Zagreb index `Σ_v d_v^2`.
pub fn zagreb_m1(g: &Graph) -> u64 {
    g.degrees().iter().map(|&d| (d * d) as u64).sum()
}

/// First Zagreb index in its edge form `Σ_{uv} (d_u + d_v)`.
pub fn zagreb_m1_edgewise(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .map(|&(u, v)| (g.degree(u) + g.degree(v)) as u64)
        .sum()
}

/// Second Zagreb index `Σ_{uv} d_u d_v`.
pub fn zagreb_m2(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .map(|&(u, v)| (g.degree(u) * g.degree(v)) as u64)
        .sum()
}

/// Forgotten index `Σ_v d_v^3`.
pub fn forgotten(g: &Graph) -> u64 {
    g.degrees().iter().map(|&d| (d as u64).pow(3)).sum()
}

/// Forgotten index in its edge form `Σ_{uv} (d_u^2 + d_v^2)`.
pub fn forgotten_edgewise(g: &Graph) -> u64 {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (g.degree(u) as u64, g.degree(v) as u64);
            a * a + b * b
        })
        .sum()
}

/// Sum of `|d(u_i) - d(u_{i+1})|` along a walk of adjacent vertices.
pub fn imbalance_along_path(g: &Graph, path: &[usize]) -> Result<u64, IndexError> {
    if let Some(&v) = path.iter().find(|&&v| v >= g.order()) {
        return Err(IndexError::VertexOutOfRange(v));
    }
    path.windows(2)
        .map(|w| {
            if g.has_edge(w[0], w[1]) {
                Ok(g.degree(w[0]).abs_diff(g.degree(w[1])) as u64)
            } else {
                Err(IndexError::NotAdjacent(w[0], w[1]))
            }
        })
        .sum()
}

/// Caterpillar formula over spine degrees `d_1..d_k`:
/// `(d_k-1)^2 + (d_1-1)^2 + Σ_{i=2}^{k-1} (d_i-1)(d_i-2) + Σ_{i=1}^{k-1} |d_i - d_{i+1}|`.
pub fn caterpillar_irr_formula(spine: &[usize]) -> Result<i64, IndexError> {
    let k = spine.len();
    if k < 2 {
        return Err(IndexError::ShortSpine(k));
    }
    let d: Vec<i64> = spine.iter().map(|&x| x as i64).collect();
    let ends = (d[k - 1] - 1).pow(2) + (d[0] - 1).pow(2);
    let internal: i64 = d[1..k - 1].iter().map(|&x| (x - 1) * (x - 2)).sum();
    let steps: i64 = d.windows(2).map(|w| (w[0] - w[1]).abs()).sum();
    Ok(ends + internal + steps)
}

/// Closed-form tree expression over the degrees in ascending order
/// `d_1 <= ... <= d_n`:
/// `d_1^2 + d_n^2 + Σ_{i=2}^{n-1} d_i^2 + Σ_{i=2}^{n-1} d_i + d_n - d_1 - 2n - 2`.
///
/// This is evaluated as written; it is compared against [`albertson`]
/// by the claim harness rather than assumed equal.
pub fn albertson_degree_formula(ds: &DegreeSequence) -> Result<i64, IndexError> {
    let n = ds.len();
    if n < 2 {
        return Err(IndexError::ShortSequence(n));
    }
    let mut d: Vec<i64> = ds.values().iter().map(|&x| x as i64).collect();
    d.reverse();
    let (first, last) = (d[0], d[n - 1]);
    let inner = &d[1..n - 1];
    let inner_squares: i64 = inner.iter().map(|x| x * x).sum();
    let inner_sum: i64 = inner.iter().sum();
    Ok(first * first + last * last + inner_squares + inner_sum + last - first - 2 * n as i64 - 2)
}

/// Every index value for one graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexBundle {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub irr: u64,
    pub sigma: u64,
    pub irr_t: u64,
    pub sigma_t: HalfInteger,
    pub m1: u64,
    pub m2: u64,
    pub forgotten: u64,
}

/// One pass over edges and one over vertex pairs.
pub fn compute_bundle(g: &Graph) -> IndexBundle {
    let mut irr = 0;
    let mut sigma = 0;
    let mut m2 = 0;
    for &(u, v) in g.edges() {
        let (a, b) = (g.degree(u) as u64, g.degree(v) as u64);
        let gap = a.abs_diff(b);
        irr += gap;
        sigma += gap * gap;
        m2 += a * b;
    }
    let d = g.degrees();
    let mut m1 = 0;
    let mut forgotten = 0;
    let mut irr_t = 0;
    let mut sigma_t_twice = 0;
    for (i, &du) in d.iter().enumerate() {
        let du64 = du as u64;
        m1 += du64 * du64;
        forgotten += du64 * du64 * du64;
        for &dv in &d[i + 1..] {
            let gap = du.abs_diff(dv) as u64;
            irr_t += gap;
            // Each unordered pair stands for two ordered pairs.
            sigma_t_twice += 2 * gap * gap;
        }
    }
    IndexBundle {
        n: g.order(),
        m: g.size(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        irr,
        sigma,
        irr_t,
        sigma_t: HalfInteger::from_twice(sigma_t_twice),
        m1,
        m2,
        forgotten,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges).unwrap()
    }

    fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        graph(n, &edges)
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        graph(n, &edges)
    }

    fn cycle4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn albertson_examples() {
        assert_eq!(albertson(&star(5)), 12);
        assert_eq!(albertson(&path(4)), 2);
        assert_eq!(albertson(&path(2)), 0);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&star(5)), 36);
        for n in 3..12 {
            assert_eq!(sigma(&path(n)), 2);
        }
        assert_eq!(sigma(&path(2)), 0);
    }

    #[test]
    fn general_albertson_examples() {
        let p4 = path(4);
        assert!((general_albertson(&p4, 2.0).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(general_albertson(&star(7), 1.0).unwrap(), albertson(&star(7)) as f64);
        assert!((general_albertson(&star(5), 2.0).unwrap() - 6.0).abs() < 1e-12);
        assert!((general_albertson(&star(5), 2.0).unwrap() - (sigma(&star(5)) as f64).sqrt()).abs() < 1e-12);
        assert!(matches!(
            general_albertson(&p4, 0.0),
            Err(IndexError::NonPositiveExponent(_))
        ));
        assert!(general_albertson(&p4, -1.0).is_err());
    }

    #[test]
    fn total_albertson_examples() {
        assert_eq!(total_albertson(&path(4)), 4);
        assert_eq!(total_albertson(&star(5)), 12);
        assert_eq!(total_albertson(&cycle4()), 0);
    }

    #[test]
    fn sorted_formula_examples() {
        let f = |v: &[usize]| total_albertson_sorted_formula(&DegreeSequence::new(v.to_vec()));
        assert_eq!(f(&[2, 2, 1, 1]), Ok(4));
        assert_eq!(f(&[4, 1, 1, 1, 1]), Ok(12));
        assert_eq!(f(&[2, 2, 2, 2]), Ok(0));
        assert_eq!(f(&[2, 1, 1, 1]), Err(IndexError::OddDegreeSum(5)));
    }

    #[test]
    fn sigma_t_examples() {
        assert_eq!(sigma_t(&path(4)), HalfInteger::from_integer(4));
        assert_eq!(sigma_t(&star(5)), HalfInteger::from_integer(36));
        assert_eq!(sigma_t(&cycle4()), HalfInteger::from_integer(0));
        assert_eq!(pairwise_squared_gaps(&star(5)), 36);
    }

    #[test]
    fn zagreb_and_forgotten_examples() {
        let s5 = star(5);
        assert_eq!((zagreb_m1(&s5), zagreb_m2(&s5), forgotten(&s5)), (20, 16, 68));
        let p4 = path(4);
        assert_eq!((zagreb_m1(&p4), zagreb_m2(&p4), forgotten(&p4)), (10, 8, 18));
        let k2 = path(2);
        assert_eq!((zagreb_m1(&k2), zagreb_m2(&k2), forgotten(&k2)), (2, 1, 2));
        for g in [s5, p4, k2, cycle4()] {
            assert_eq!(forgotten(&g), forgotten_edgewise(&g));
            assert_eq!(zagreb_m1(&g), zagreb_m1_edgewise(&g));
        }
    }

    #[test]
    fn imbalance_examples() {
        assert_eq!(imbalance_along_path(&path(4), &[0, 1, 2, 3]), Ok(2));
        assert_eq!(imbalance_along_path(&path(4), &[2]), Ok(0));
        assert_eq!(imbalance_along_path(&star(5), &[1, 0, 2]), Ok(6));
        assert_eq!(
            imbalance_along_path(&path(4), &[0, 2]),
            Err(IndexError::NotAdjacent(0, 2))
        );
        assert_eq!(
            imbalance_along_path(&path(4), &[0, 7]),
            Err(IndexError::VertexOutOfRange(7))
        );
    }

    #[test]
    fn caterpillar_formula_examples() {
        assert_eq!(caterpillar_irr_formula(&[2, 2]), Ok(2));
        assert_eq!(caterpillar_irr_formula(&[3, 3]), Ok(8));
        assert_eq!(caterpillar_irr_formula(&[2, 3, 2]), Ok(6));
        assert_eq!(caterpillar_irr_formula(&[4]), Err(IndexError::ShortSpine(1)));
    }

    #[test]
    fn albertson_degree_formula_examples() {
        let f = |v: &[usize]| albertson_degree_formula(&DegreeSequence::new(v.to_vec()));
        // P_4: ascending (1,1,2,2) -> 1+4+(1+4)+(1+2)+2-1-8-2.
        assert_eq!(f(&[2, 2, 1, 1]), Ok(4));
        // K_2: 1+1+0+0+1-1-4-2.
        assert_eq!(f(&[1, 1]), Ok(-4));
        // S_4: ascending (1,1,1,3) -> 1+9+(1+1)+(1+1)+3-1-8-2.
        assert_eq!(f(&[3, 1, 1, 1]), Ok(6));
        assert_eq!(f(&[0]), Err(IndexError::ShortSequence(1)));
    }

    #[test]
    fn bundle_examples() {
        let b = compute_bundle(&star(5));
        assert_eq!((b.irr, b.sigma, b.irr_t), (12, 36, 12));
        assert_eq!((b.m1, b.m2, b.forgotten), (20, 16, 68));
        assert_eq!((b.max_degree, b.min_degree), (4, 1));
        assert_eq!(b.sigma_t, HalfInteger::from_integer(36));

        let k2 = compute_bundle(&path(2));
        assert_eq!((k2.irr, k2.sigma, k2.irr_t, k2.sigma_t.twice()), (0, 0, 0, 0));

        let p4 = compute_bundle(&path(4));
        assert_eq!((p4.irr, p4.sigma, p4.irr_t), (2, 2, 4));
        assert_eq!((p4.m1, p4.m2, p4.forgotten), (10, 8, 18));
        assert_eq!((p4.n, p4.m), (4, 3));
    }

    #[test]
    fn half_integer_serialization() {
        assert_eq!(serde_json::to_string(&HalfInteger::from_integer(36)).unwrap(), "36");
        assert_eq!(serde_json::to_string(&HalfInteger::from_twice(7)).unwrap(), "3.5");
        assert_eq!(HalfInteger::from_twice(7).to_string(), "3.5");
        let back: HalfInteger = serde_json::from_str("3.5").unwrap();
        assert_eq!(back.twice(), 7);
        assert!(serde_json::from_str::<HalfInteger>("0.25").is_err());
    }
}
