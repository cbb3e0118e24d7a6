use super::{GeometryError, HalfSpace, Result};
use crate::linalg::{integer_kernel, nullspace, rank, rref, solve_any};
use crate::rational::{dot_q, primitive_integer, to_q_vec, Q, Z};
use itertools::Itertools;
use num_traits::{Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Generators of a polyhedron: vertices and extreme rays of its intersection
/// with the orthogonal complement of the lineality space, plus a basis of the
/// lineality space in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub vertices: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Q>>,
    pub lineality: Vec<Vec<Q>>,
}

/// Identifies a cell by its point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub vertices: Vec<Vec<Q>>,
    pub rays: Vec<Vec<Q>>,
    pub lineality: Vec<Vec<Q>>,
}

/// A nonempty face of a cell, described by the closure of its tight inequalities.
#[derive(Clone, Debug)]
pub struct FaceInfo {
    pub tight: Vec<usize>,
    pub vertices: Vec<usize>,
    pub rays: Vec<usize>,
    pub dim: usize,
}

/// A convex rational H-polyhedron.
#[derive(Clone, Debug)]
pub struct Cell {
    pub id: String,
    ambient_dim: usize,
    ineqs: Vec<HalfSpace>,
    eqs: Vec<HalfSpace>,
    dim: usize,
    vrep: VRep,
}

fn affine_rank(vrep: &VRep, vertices: &[usize], rays: &[usize]) -> usize {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    if let Some(&v0) = vertices.first() {
        let base = &vrep.vertices[v0];
        for &v in &vertices[1..] {
            rows.push(vrep.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect());
        }
    }
    rows.extend(rays.iter().map(|&r| vrep.rays[r].clone()));
    rows.extend(vrep.lineality.iter().cloned());
    rank(&rows)
}

fn canonical_direction(v: &[Q]) -> Vec<Q> {
    to_q_vec(&primitive_integer(v))
}

/// Vertex/ray enumeration by brute force over active constraint sets.
pub(crate) fn compute_vrep(m: usize, ineqs: &[HalfSpace], eqs: &[HalfSpace]) -> Option<VRep> {
    if m == 0 {
        return Some(VRep {
            vertices: vec![vec![]],
            rays: vec![],
            lineality: vec![],
        });
    }
    let normals: Vec<Vec<Q>> = ineqs.iter().chain(eqs).map(|h| h.normal_q()).collect();
    let lineality: Vec<Vec<Q>> = if normals.is_empty() {
        (0..m)
            .map(|i| (0..m).map(|j| if i == j { Q::from_integer(1.into()) } else { Q::zero() }).collect())
            .collect()
    } else {
        let mut l = nullspace(&normals, m);
        rref(&mut l, m);
        l
    };
    let mut eq_rows: Vec<Vec<Q>> = eqs.iter().map(|h| h.normal_q()).collect();
    let mut eq_rhs: Vec<Q> = eqs.iter().map(|h| h.offset.clone()).collect();
    for l in &lineality {
        eq_rows.push(l.clone());
        eq_rhs.push(Q::zero());
    }
    // Equalities must be consistent on their own.
    solve_any(&eq_rows, &eq_rhs, m)?;
    let eq_rank = rank(&eq_rows);
    let need = m - eq_rank;
    let ineq_rows: Vec<Vec<Q>> = ineqs.iter().map(|h| h.normal_q()).collect();

    let mut vertices: BTreeSet<Vec<Q>> = BTreeSet::new();
    for subset in (0..ineqs.len()).combinations(need) {
        let mut rows = eq_rows.clone();
        let mut rhs = eq_rhs.clone();
        for &i in &subset {
            rows.push(ineq_rows[i].clone());
            rhs.push(ineqs[i].offset.clone());
        }
        if rank(&rows) != m {
            continue;
        }
        let Some(x) = solve_any(&rows, &rhs, m) else { continue };
        if ineqs.iter().all(|h| h.contains(&x)) {
            vertices.insert(x);
        }
    }
    if vertices.is_empty() {
        return None;
    }

    let mut rays: BTreeSet<Vec<Q>> = BTreeSet::new();
    if need >= 1 {
        for subset in (0..ineqs.len()).combinations(need - 1) {
            let mut rows = eq_rows.clone();
            for &i in &subset {
                rows.push(ineq_rows[i].clone());
            }
            if rank(&rows) != m - 1 {
                continue;
            }
            let d = nullspace(&rows, m).remove(0);
            let ok = |dir: &[Q]| ineq_rows.iter().all(|a| !dot_q(a, dir).is_positive());
            if ok(&d) {
                rays.insert(canonical_direction(&d));
            } else {
                let neg: Vec<Q> = d.iter().map(|x| -x).collect();
                if ok(&neg) {
                    rays.insert(canonical_direction(&neg));
                }
            }
        }
    }
    Some(VRep {
        vertices: vertices.into_iter().collect(),
        rays: rays.into_iter().collect(),
        lineality,
    })
}

/// Picks a maximal independent subset of equalities.
fn independent_equalities(m: usize, eqs: impl IntoIterator<Item = HalfSpace>) -> Vec<HalfSpace> {
    let mut out: Vec<HalfSpace> = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for h in eqs {
        let h = h.as_equality();
        if out.contains(&h) {
            continue;
        }
        rows.push(h.normal_q());
        if rank(&rows) > out.len() {
            out.push(h);
        } else {
            rows.pop();
        }
        if out.len() == m {
            break;
        }
    }
    out
}

impl Cell {
    pub fn new(id: impl Into<String>, ambient_dim: usize, ineqs: Vec<HalfSpace>, eqs: Vec<HalfSpace>) -> Result<Self> {
        let id = id.into();
        for h in ineqs.iter().chain(&eqs) {
            if h.dim() != ambient_dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: ambient_dim,
                    found: h.dim(),
                });
            }
        }
        let mut uniq: Vec<HalfSpace> = Vec::new();
        for h in ineqs {
            if !uniq.contains(&h) {
                uniq.push(h);
            }
        }
        let vrep = compute_vrep(ambient_dim, &uniq, &eqs).ok_or_else(|| GeometryError::EmptyCell(id.clone()))?;
        let (implicit, strict): (Vec<HalfSpace>, Vec<HalfSpace>) = uniq.into_iter().partition(|h| {
            vrep.vertices.iter().all(|v| h.slack(v).is_zero())
                && vrep.rays.iter().all(|r| h.eval(r).is_zero())
        });
        let eqs = independent_equalities(ambient_dim, eqs.into_iter().chain(implicit));
        let all: Vec<usize> = (0..vrep.vertices.len()).collect();
        let rs: Vec<usize> = (0..vrep.rays.len()).collect();
        let dim = affine_rank(&vrep, &all, &rs);
        Ok(Cell {
            id,
            ambient_dim,
            ineqs: strict,
            eqs,
            dim,
            vrep,
        })
    }

    /// Parses rows of the form `[a_1, ..., a_m, b]`.
    pub fn from_rows(id: impl Into<String>, ambient_dim: usize, ineqs: &[Vec<Q>], eqs: &[Vec<Q>]) -> Result<Self> {
        let parse = |rows: &[Vec<Q>]| -> Result<Vec<HalfSpace>> {
            rows.iter()
                .map(|r| {
                    if r.len() != ambient_dim + 1 {
                        return Err(GeometryError::DimensionMismatch {
                            expected: ambient_dim + 1,
                            found: r.len(),
                        });
                    }
                    HalfSpace::from_row(r)
                })
                .collect()
        };
        Cell::new(id, ambient_dim, parse(ineqs)?, parse(eqs)?)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[HalfSpace] {
        &self.ineqs
    }

    /// Independent equalities cutting out the affine hull.
    pub fn eqs(&self) -> &[HalfSpace] {
        &self.eqs
    }

    pub fn vrep(&self) -> &VRep {
        &self.vrep
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vrep.vertices
    }

    pub fn is_bounded(&self) -> bool {
        self.vrep.rays.is_empty() && self.vrep.lineality.is_empty()
    }

    pub fn key(&self) -> CellKey {
        CellKey {
            vertices: self.vrep.vertices.clone(),
            rays: self.vrep.rays.clone(),
            lineality: self.vrep.lineality.clone(),
        }
    }

    pub fn contains_point(&self, x: &[Q]) -> bool {
        self.ineqs.iter().all(|h| h.contains(x)) && self.eqs.iter().all(|h| h.slack(x).is_zero())
    }

    /// Lattice basis (Hermite normal form) of the direction space of the
    /// affine hull intersected with `Z^m`.
    pub fn direction_lattice(&self) -> Vec<Vec<Z>> {
        let rows: Vec<Vec<Z>> = self.eqs.iter().map(|h| h.normal.clone()).collect();
        integer_kernel(&rows, self.ambient_dim)
    }

    /// Some point of the cell (its first vertex).
    pub fn point(&self) -> &[Q] {
        &self.vrep.vertices[0]
    }

    /// Vertex barycenter.
    pub fn barycenter(&self) -> Vec<Q> {
        let n = Q::from_integer(Z::from(self.vrep.vertices.len()));
        let mut c = vec![Q::zero(); self.ambient_dim];
        for v in &self.vrep.vertices {
            for (ci, vi) in c.iter_mut().zip(v) {
                *ci += vi;
            }
        }
        c.into_iter().map(|x| x / &n).collect()
    }

    pub fn intersect(&self, other: &Cell) -> Option<Cell> {
        let ineqs = self.ineqs.iter().chain(&other.ineqs).cloned().collect();
        let eqs = self.eqs.iter().chain(&other.eqs).cloned().collect();
        Cell::new(format!("{}&{}", self.id, other.id), self.ambient_dim, ineqs, eqs).ok()
    }

    /// All nonempty faces, the cell itself first, in decreasing dimension.
    pub fn faces(&self) -> Vec<FaceInfo> {
        let nv = self.vrep.vertices.len();
        let nr = self.vrep.rays.len();
        let vt: Vec<BTreeSet<usize>> = self
            .ineqs
            .iter()
            .map(|h| (0..nv).filter(|&v| h.slack(&self.vrep.vertices[v]).is_zero()).collect())
            .collect();
        let rt: Vec<BTreeSet<usize>> = self
            .ineqs
            .iter()
            .map(|h| (0..nr).filter(|&r| h.eval(&self.vrep.rays[r]).is_zero()).collect())
            .collect();
        let closure = |s: &[usize]| -> Option<FaceInfo> {
            let mut verts: BTreeSet<usize> = (0..nv).collect();
            let mut rays: BTreeSet<usize> = (0..nr).collect();
            for &i in s {
                verts = &verts & &vt[i];
                rays = &rays & &rt[i];
            }
            if verts.is_empty() {
                return None;
            }
            let tight: Vec<usize> = (0..self.ineqs.len())
                .filter(|&i| verts.is_subset(&vt[i]) && rays.is_subset(&rt[i]))
                .collect();
            let vertices: Vec<usize> = verts.into_iter().collect();
            let rays: Vec<usize> = rays.into_iter().collect();
            let dim = affine_rank(&self.vrep, &vertices, &rays);
            Some(FaceInfo {
                tight,
                vertices,
                rays,
                dim,
            })
        };
        let mut seen: BTreeMap<Vec<usize>, FaceInfo> = BTreeMap::new();
        let mut queue: VecDeque<Vec<usize>> = VecDeque::new();
        let top = closure(&[]).expect("nonempty cell");
        queue.push_back(top.tight.clone());
        seen.insert(top.tight.clone(), top);
        while let Some(s) = queue.pop_front() {
            for i in 0..self.ineqs.len() {
                if s.contains(&i) {
                    continue;
                }
                let mut t = s.clone();
                t.push(i);
                if let Some(f) = closure(&t) {
                    if !seen.contains_key(&f.tight) {
                        queue.push_back(f.tight.clone());
                        seen.insert(f.tight.clone(), f);
                    }
                }
            }
        }
        let mut faces: Vec<FaceInfo> = seen.into_values().collect();
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.tight.cmp(&b.tight)));
        faces
    }

    /// Materializes a face as a cell.
    pub fn face_cell(&self, face: &FaceInfo, id: impl Into<String>) -> Cell {
        let eqs = independent_equalities(
            self.ambient_dim,
            self.eqs.iter().cloned().chain(face.tight.iter().map(|&i| self.ineqs[i].clone())),
        );
        let ineqs = (0..self.ineqs.len())
            .filter(|i| !face.tight.contains(i))
            .map(|i| self.ineqs[i].clone())
            .collect();
        let vrep = VRep {
            vertices: face.vertices.iter().map(|&v| self.vrep.vertices[v].clone()).collect(),
            rays: face.rays.iter().map(|&r| self.vrep.rays[r].clone()).collect(),
            lineality: self.vrep.lineality.clone(),
        };
        Cell {
            id: id.into(),
            ambient_dim: self.ambient_dim,
            ineqs,
            eqs,
            dim: face.dim,
            vrep,
        }
    }

    /// All faces materialized, named `<id>:<tight inequality indices>`.
    pub fn face_cells(&self) -> Vec<Cell> {
        self.faces()
            .iter()
            .map(|f| {
                if f.tight.is_empty() {
                    self.clone()
                } else {
                    let name = f.tight.iter().map(|i| i.to_string()).join(",");
                    self.face_cell(f, format!("{}:{}", self.id, name))
                }
            })
            .collect()
    }
}
