//! Multivariate B-splines as fiber volumes of cells, and pointwise checks of
//! the de Boor–Höllig relations.

use crate::dirimage::{adapted, euler_coefficient};
use crate::geometry::{fiber_polytope, lattice_volume, projected_dim, Cell, CellComplex, Fiber, GeometryError};
use crate::rational::{dot_z, format_q, gcd_all, qz, Q, Z};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplineError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("fiber of {0} is unbounded")]
    UnboundedFiber(String),
    #[error("no generic sample found after {0} attempts")]
    NonGenericSample(usize),
}

pub type Result<T> = std::result::Result<T, SplineError>;

#[derive(Clone, Debug, PartialEq)]
pub struct SplineValue {
    /// Volume of the fiber in the lattice of fiber directions of the cell.
    pub lattice_value: Q,
    /// Index of the projected direction lattice in `Z^s`; the density with
    /// respect to Lebesgue measure on `R^s` is `lattice_value / index`.
    pub projection_index: Z,
    /// Euclidean volume of a fundamental domain of the fiber lattice.
    pub euclidean_factor: f64,
}

impl SplineValue {
    pub fn density(&self) -> Q {
        &self.lattice_value / qz(&self.projection_index)
    }

    pub fn euclidean(&self) -> f64 {
        to_f64(&self.lattice_value) * self.euclidean_factor
    }
}

/// gcd of the maximal minors of the projected lattice basis; 0 when the
/// projection is not onto.
fn projection_index(c: &Cell, s: usize) -> Z {
    let basis = c.direction_lattice();
    let cols: Vec<Vec<Q>> = basis.iter().map(|b| b[..s].iter().map(qz).collect()).collect();
    if cols.len() < s {
        return Z::zero();
    }
    let mut minors = Vec::new();
    for pick in itertools::Itertools::combinations(0..cols.len(), s) {
        let mat: Vec<Vec<Q>> = (0..s).map(|r| pick.iter().map(|&k| cols[k][r].clone()).collect()).collect();
        minors.push(crate::linalg::det(&mat).to_integer());
    }
    gcd_all(&minors)
}

fn fiber_covolume(c: &Cell, s: usize) -> f64 {
    let fiber = adapted(c, s).fiber;
    let gram: Vec<Vec<Q>> = fiber
        .iter()
        .map(|a| fiber.iter().map(|b| qz(&dot_z(a, b))).collect())
        .collect();
    let d = if gram.is_empty() { Q::from_integer(1.into()) } else { crate::linalg::det(&gram) };
    to_f64(&d).sqrt()
}

/// `vol(pi^{-1}(x) ∩ sigma)` in the fiber lattice.
pub fn bspline_value(sigma: &Cell, s: usize, x: &[Q]) -> Result<SplineValue> {
    let m = sigma.ambient_dim();
    if s == 0 || s > m || x.len() != s {
        return Err(GeometryError::BadProjection { s, m }.into());
    }
    let lattice_value = match fiber_polytope(sigma, s, x) {
        Fiber::Empty => Q::zero(),
        Fiber::Polytope(f) => {
            if !f.is_bounded() {
                return Err(SplineError::UnboundedFiber(sigma.id.clone()));
            }
            lattice_volume(&f)?
        }
    };
    Ok(SplineValue {
        lattice_value,
        projection_index: projection_index(sigma, s),
        euclidean_factor: fiber_covolume(sigma, s),
    })
}

/// Density of the pushforward of the lattice measure of a cell; zero for cells
/// whose image has lower dimension.
pub fn density(sigma: &Cell, s: usize, x: &[Q]) -> Result<Q> {
    let v = bspline_value(sigma, s, x)?;
    if v.projection_index.is_zero() {
        return Ok(Q::zero());
    }
    Ok(v.density())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DbhEntry {
    pub relation: &'static str,
    pub cell: String,
    pub sample: Vec<Q>,
    pub lhs: Q,
    pub rhs: Q,
    pub equal: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DbhReport {
    pub entries: Vec<DbhEntry>,
}

impl DbhReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "relation": e.relation,
                        "cell": e.cell,
                        "sample": e.sample.iter().map(format_q).collect::<Vec<_>>(),
                        "lhs": format_q(&e.lhs),
                        "rhs": format_q(&e.rhs),
                        "equal": e.equal,
                    })
                })
                .collect(),
        )
    }
}

/// Whether no face of any cell with a lower-dimensional image meets the fiber over `x`.
pub fn is_generic(k: &CellComplex, s: usize, x: &[Q]) -> bool {
    k.cells().iter().all(|c| {
        c.face_cells()
            .iter()
            .filter(|f| projected_dim(f, s) < s)
            .all(|f| matches!(fiber_polytope(f, s, x), Fiber::Empty))
    })
}

/// Seeded rational points in the bounding box of the projected vertices that
/// avoid the images of lower-dimensional pieces.
pub fn generic_samples(k: &CellComplex, s: usize, count: usize, seed: u64) -> Result<Vec<Vec<Q>>> {
    let pts: Vec<Vec<Q>> = k.cells().iter().flat_map(|c| c.vertices().iter().map(|v| v[..s].to_vec())).collect();
    let Some(first) = pts.first() else { return Ok(Vec::new()) };
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in &pts {
        for j in 0..s {
            if p[j] < lo[j] {
                lo[j] = p[j].clone();
            }
            if p[j] > hi[j] {
                hi[j] = p[j].clone();
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = 100 * count.max(1);
    let mut out = Vec::with_capacity(count);
    let mut tries = 0;
    while out.len() < count {
        if tries == budget {
            return Err(SplineError::NonGenericSample(budget));
        }
        tries += 1;
        let x: Vec<Q> = (0..s)
            .map(|j| &lo[j] + (&hi[j] - &lo[j]) * Q::new(rng.gen_range(1..997).into(), 997.into()))
            .collect();
        if is_generic(k, s, &x) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Points of a cell: its vertex barycenter followed by seeded convex combinations of vertices.
fn facet_points(c: &Cell, extra: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
    let mut out = vec![c.barycenter()];
    let verts = c.vertices();
    for _ in 0..extra {
        let w: Vec<Q> = verts.iter().map(|_| Q::from_integer(rng.gen_range(1..=50).into())).collect();
        let total: Q = w.iter().sum();
        let mut p = vec![Q::zero(); c.ambient_dim()];
        for (wi, v) in w.iter().zip(verts) {
            for (pj, vj) in p.iter_mut().zip(v) {
                *pj += wi * vj;
            }
        }
        out.push(p.into_iter().map(|x| x / &total).collect());
    }
    out
}

/// Evaluates relations (ii) and (iii) for every cell of full-dimensional image
/// and positive fiber dimension at each sample. Relation (iii) is evaluated
/// with the barycenter of each facet and `alternatives` further facet points;
/// all choices must agree.
pub fn check_dbh(k: &CellComplex, s: usize, samples: &[Vec<Q>], alternatives: usize, seed: u64) -> Result<DbhReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = DbhReport::default();
    for sigma in k.cells() {
        if projected_dim(sigma, s) != s || sigma.dim() == s {
            continue;
        }
        let ad = adapted(sigma, s);
        let facets: Vec<(Cell, crate::geometry::HalfSpace)> = sigma
            .faces()
            .into_iter()
            .filter(|f| f.dim + 1 == sigma.dim())
            .map(|f| {
                let n = crate::geometry::lattice_outward_normal(sigma, &f);
                (sigma.face_cell(&f, "facet"), n)
            })
            .collect();
        let points: Vec<Vec<Vec<Q>>> = facets.iter().map(|(f, _)| facet_points(f, alternatives, &mut rng)).collect();
        for x in samples {
            let values: Vec<Q> = facets
                .iter()
                .map(|(f, _)| density(f, s, x))
                .collect::<Result<_>>()?;
            for ((f, _), v) in facets.iter().zip(&values) {
                if projected_dim(f, s) < s && !v.is_zero() {
                    return Err(SplineError::NonGenericSample(0));
                }
            }
            for u in &ad.fiber {
                let lhs: Q = facets.iter().zip(&values).map(|((_, n), v)| qz(&dot_z(u, &n.normal)) * v).sum();
                report.entries.push(DbhEntry {
                    relation: "ii",
                    cell: sigma.id.clone(),
                    sample: x.clone(),
                    equal: lhs.is_zero(),
                    lhs,
                    rhs: Q::zero(),
                });
            }
            let lhs = Q::from_integer(ad.fiber.len().into()) * density(sigma, s, x)?;
            let mut rhs_choices: Vec<Q> = Vec::new();
            for choice in 0..=alternatives {
                let mut rhs = Q::zero();
                for (((_, n), v), pts) in facets.iter().zip(&values).zip(&points) {
                    if v.is_zero() {
                        continue;
                    }
                    let (g, c0) = euler_coefficient(sigma, &ad.fiber, n, s, Some(&pts[choice]));
                    let c: Q = c0 + g.iter().zip(x).map(|(a, b)| a * b).sum::<Q>();
                    rhs += c * v;
                }
                rhs_choices.push(rhs);
            }
            let rhs = rhs_choices[0].clone();
            let equal = rhs_choices.iter().all(|r| *r == lhs);
            report.entries.push(DbhEntry {
                relation: "iii",
                cell: sigma.id.clone(),
                sample: x.clone(),
                lhs,
                rhs,
                equal,
            });
        }
    }
    Ok(report)
}

/// Monte Carlo estimate of a one-dimensional fiber length, with its standard error.
pub fn monte_carlo_fiber_length(sigma: &Cell, s: usize, x: &[Q], lo: f64, hi: f64, n: usize, seed: u64) -> (f64, f64) {
    assert_eq!(sigma.ambient_dim(), s + 1, "fiber must be one-dimensional");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xf: Vec<f64> = x.iter().map(to_f64).collect();
    let rows: Vec<(Vec<f64>, f64)> = sigma.ineqs().iter().map(|h| (h.normal.iter().map(|a| to_f64(&qz(a))).collect(), to_f64(&h.offset))).collect();
    let mut hits = 0usize;
    for _ in 0..n {
        let t = rng.gen_range(lo..hi);
        let inside = rows.iter().all(|(a, b)| {
            let mut v = 0.0;
            for j in 0..s {
                v += a[j] * xf[j];
            }
            v += a[s] * t;
            v <= *b
        });
        hits += usize::from(inside);
    }
    let p = hits as f64 / n as f64;
    let width = hi - lo;
    (p * width, width * (p * (1.0 - p) / n as f64).sqrt())
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
