//! Borel–Moore chain complexes of cell complexes, Betti numbers and the
//! stratified pieces used to count direct-image summands.

use crate::geometry::{projected_dim, Cell, CellComplex};
use crate::linalg::{det, rank, solve_unique, transpose};
use crate::rational::{q, sign, to_q_vec, Q};
use num_traits::Zero;
use serde_json::{Map, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex {
    /// Cell ids of each dimension, in complex order.
    pub generators: BTreeMap<usize, Vec<String>>,
    /// `boundary[k]` has one row per `(k-1)`-cell and one column per `k`-cell.
    pub boundary: BTreeMap<usize, Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub betti: BTreeMap<usize, usize>,
}

impl BettiTable {
    pub fn get(&self, k: usize) -> usize {
        self.betti.get(&k).copied().unwrap_or(0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.betti.values().copied().collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.betti.iter().map(|(k, b)| (k.to_string(), Value::from(*b))).collect::<Map<_, _>>())
    }
}

/// A point in the relative interior: vertex barycenter pushed along every ray.
fn interior_point(c: &Cell) -> Vec<Q> {
    let mut p = c.barycenter();
    for r in &c.vrep().rays {
        for (pi, ri) in p.iter_mut().zip(r) {
            *pi += ri;
        }
    }
    p
}

/// Sign of the orientation of `tau` induced from `sigma` (outward vector
/// first) against its own lattice basis.
fn induced_sign(sigma: &Cell, tau: &Cell) -> i32 {
    let bs: Vec<Vec<Q>> = sigma.direction_lattice().iter().map(|v| to_q_vec(v)).collect();
    let m = sigma.ambient_dim();
    let n = bs.len();
    let a = transpose(&bs, m);
    let outward: Vec<Q> = interior_point(tau).iter().zip(interior_point(sigma)).map(|(t, s)| t - s).collect();
    let mut cols = vec![outward];
    cols.extend(tau.direction_lattice().iter().map(|v| to_q_vec(v)));
    let coords: Vec<Vec<Q>> = cols
        .iter()
        .map(|u| solve_unique(&a, u, n).expect("face direction lies in the cell's direction space"))
        .collect();
    let s = sign(&det(&coords));
    assert!(s != 0, "outward vector is tangent to the facet");
    s
}

fn chain_complex_on(k: &CellComplex, keep: &dyn Fn(&Cell) -> bool) -> ChainComplex {
    let mut generators: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for c in k.cells().iter().filter(|c| keep(c)) {
        generators.entry(c.dim()).or_default().push(c.id.clone());
    }
    let mut boundary = BTreeMap::new();
    for (&d, cols) in &generators {
        if d == 0 {
            continue;
        }
        let rows = generators.get(&(d - 1)).cloned().unwrap_or_default();
        let mut mat = vec![vec![Q::zero(); cols.len()]; rows.len()];
        for (j, sid) in cols.iter().enumerate() {
            let sigma = k.cell(sid).expect("cell in complex");
            for inc in k.facets(sid).expect("cell in complex") {
                if let Some(i) = rows.iter().position(|r| *r == inc.facet) {
                    let tau = k.cell(&inc.facet).expect("facet in complex");
                    mat[i][j] = q(induced_sign(sigma, tau) as i64);
                }
            }
        }
        boundary.insert(d, mat);
    }
    let cc = ChainComplex { generators, boundary };
    debug_assert!(cc.is_complex());
    cc
}

/// The closed-support cellular chain complex; facets missing from `k` drop out.
pub fn bm_chain_complex(k: &CellComplex) -> ChainComplex {
    let cc = chain_complex_on(k, &|_| true);
    assert!(cc.is_complex(), "boundary of a boundary must vanish");
    cc
}

/// Cells whose image under the projection to the first `s` coordinates has
/// dimension `k`, with the boundary restricted to pairs inside this set.
pub fn stratum_subcomplex(kx: &CellComplex, s: usize, k: usize) -> ChainComplex {
    chain_complex_on(kx, &|c| projected_dim(c, s) == k)
}

impl ChainComplex {
    pub fn rank_of(&self, k: usize) -> usize {
        self.generators.get(&k).map_or(0, Vec::len)
    }

    fn boundary_rank(&self, k: usize) -> usize {
        self.boundary.get(&k).map_or(0, |m| rank(m))
    }

    /// `d_{k-1} d_k = 0` for every `k`.
    pub fn is_complex(&self) -> bool {
        self.boundary.iter().all(|(&k, dk)| {
            let Some(dk1) = self.boundary.get(&(k - 1)) else { return true };
            let inner = dk.len();
            dk1.iter().all(|row| {
                (0..self.rank_of(k)).all(|j| {
                    let mut acc = Q::zero();
                    for (t, a) in row.iter().enumerate().take(inner) {
                        if !a.is_zero() {
                            acc += a * &dk[t][j];
                        }
                    }
                    acc.is_zero()
                })
            })
        })
    }

    /// `dim H_k`, zero in degrees without cells.
    pub fn homology_dim(&self, k: usize) -> usize {
        self.rank_of(k) - self.boundary_rank(k) - self.boundary_rank(k + 1)
    }

    pub fn betti(&self) -> BettiTable {
        let top = self.generators.keys().next_back().copied();
        let betti = match top {
            None => BTreeMap::new(),
            Some(t) => (0..=t).map(|k| (k, self.homology_dim(k))).collect(),
        };
        BettiTable { betti }
    }
}

pub fn bm_betti(k: &CellComplex) -> BettiTable {
    bm_chain_complex(k).betti()
}

/// `count[(k, i)] = dim H_{i+k}` of the stratum of projected dimension `k`,
/// for `-(m-s) <= i <= m-s`.
pub fn direct_image_summand_counts(kx: &CellComplex, s: usize) -> BTreeMap<(usize, i64), usize> {
    let spread = (kx.ambient_dim() - s.min(kx.ambient_dim())) as i64;
    let mut out = BTreeMap::new();
    for k in 0..=s {
        let cc = stratum_subcomplex(kx, s, k);
        for i in -spread..=spread {
            let deg = k as i64 + i;
            let count = if deg < 0 { 0 } else { cc.homology_dim(deg as usize) };
            out.insert((k, i), count);
        }
    }
    out
}
