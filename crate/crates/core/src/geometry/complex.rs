use super::cell::{Cell, CellKey, FaceInfo};
use super::{GeometryError, HalfSpace, Result};
use crate::linalg::{rank, solve_integer};
use crate::rational::{dot_z, dot_zq, gcd_all, qz, Q, Z};
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A facet of a cell together with its outward lattice normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub facet: String,
    pub normal: HalfSpace,
}

/// A polyhedral cone: a cell all of whose constraints are tight at `apex`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub apex: Vec<Q>,
    pub cell: Cell,
}

impl Cone {
    /// Primitive integer directions of the extreme rays.
    pub fn rays(&self) -> Vec<Vec<Z>> {
        self.cell
            .vrep()
            .rays
            .iter()
            .map(|r| crate::rational::primitive_integer(r))
            .collect()
    }
}

/// Outward normal of `sigma` at the face `face` (a facet), scaled so that it
/// is primitive on the direction lattice of `sigma`.
pub fn lattice_outward_normal(sigma: &Cell, face: &FaceInfo) -> HalfSpace {
    let m = sigma.ambient_dim();
    let a0 = &sigma.ineqs()[face.tight[0]].normal;
    let basis = sigma.direction_lattice();
    let w: Vec<Z> = basis.iter().map(|b| dot_z(b, a0)).collect();
    let g = gcd_all(&w);
    let w: Vec<Z> = w.into_iter().map(|x| x / &g).collect();
    let normal = solve_integer(&basis, &w, m).expect("direction lattice is saturated");
    let p = &sigma.vrep().vertices[face.vertices[0]];
    let offset = dot_zq(&normal, p);
    HalfSpace { normal, offset }
}

#[derive(Clone, Debug)]
struct CellData {
    faces: HashMap<CellKey, FaceInfo>,
}

/// A validated polyhedral cell complex.
#[derive(Clone, Debug)]
pub struct CellComplex {
    ambient_dim: usize,
    cells: Vec<Cell>,
    facet_incidence: BTreeMap<String, Vec<Incidence>>,
    index: HashMap<String, usize>,
    // indices of cells of the complex that are faces of each cell (itself included)
    faces_in: Vec<Vec<usize>>,
}

impl CellComplex {
    pub fn build(cells: Vec<Cell>, generate_faces: bool) -> Result<Self> {
        let Some(first) = cells.first() else {
            return Err(GeometryError::EmptyCell("<no cells>".into()));
        };
        let m = first.ambient_dim();
        for c in &cells {
            if c.ambient_dim() != m {
                return Err(GeometryError::DimensionMismatch {
                    expected: m,
                    found: c.ambient_dim(),
                });
            }
        }
        let mut all: Vec<Cell> = Vec::new();
        for c in cells {
            if generate_faces {
                all.extend(c.face_cells());
            } else {
                all.push(c);
            }
        }
        let mut seen: HashMap<CellKey, ()> = HashMap::new();
        let mut ids: BTreeSet<String> = BTreeSet::new();
        let mut uniq: Vec<Cell> = Vec::new();
        for c in all {
            if seen.insert(c.key(), ()).is_none() {
                let mut c = c;
                while !ids.insert(c.id.clone()) {
                    c.id.push('\'');
                }
                uniq.push(c);
            }
        }
        uniq.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.id.cmp(&b.id)));

        let data: Vec<CellData> = uniq
            .iter()
            .map(|c| {
                let faces = c
                    .faces()
                    .into_iter()
                    .map(|f| {
                        let key = if f.tight.is_empty() { c.key() } else { c.face_cell(&f, "").key() };
                        (key, f)
                    })
                    .collect();
                CellData { faces }
            })
            .collect();

        for i in 0..uniq.len() {
            for j in i + 1..uniq.len() {
                if let Some(x) = uniq[i].intersect(&uniq[j]) {
                    let k = x.key();
                    if !data[i].faces.contains_key(&k) || !data[j].faces.contains_key(&k) {
                        return Err(GeometryError::NonFaceIntersection(uniq[i].id.clone(), uniq[j].id.clone()));
                    }
                }
            }
        }

        let keys: Vec<CellKey> = uniq.iter().map(|c| c.key()).collect();
        let key_index: HashMap<&CellKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut faces_in = Vec::with_capacity(uniq.len());
        let mut facet_incidence = BTreeMap::new();
        for (i, c) in uniq.iter().enumerate() {
            let mut fs: Vec<usize> = data[i].faces.keys().filter_map(|k| key_index.get(k).copied()).collect();
            fs.sort();
            let mut inc = Vec::new();
            if c.dim() > 0 {
                for &f in &fs {
                    if uniq[f].dim() + 1 == c.dim() {
                        let info = &data[i].faces[&keys[f]];
                        inc.push(Incidence {
                            facet: uniq[f].id.clone(),
                            normal: lattice_outward_normal(c, info),
                        });
                    }
                }
            }
            facet_incidence.insert(c.id.clone(), inc);
            faces_in.push(fs);
        }
        let index = uniq.iter().enumerate().map(|(i, c)| (c.id.clone(), i)).collect();
        Ok(CellComplex {
            ambient_dim: m,
            cells: uniq,
            facet_incidence,
            index,
            faces_in,
        })
    }

    /// The complex with no cells.
    pub fn empty(ambient_dim: usize) -> Self {
        CellComplex {
            ambient_dim,
            cells: Vec::new(),
            facet_incidence: BTreeMap::new(),
            index: HashMap::new(),
            faces_in: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Cells sorted by dimension, then id.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| GeometryError::NotInComplex(id.to_string()))
    }

    pub fn cell(&self, id: &str) -> Result<&Cell> {
        Ok(&self.cells[self.index_of(id)?])
    }

    pub fn facet_incidence(&self) -> &BTreeMap<String, Vec<Incidence>> {
        &self.facet_incidence
    }

    /// Facets of the cell present in the complex, with outward lattice normals.
    pub fn facets(&self, id: &str) -> Result<&[Incidence]> {
        self.index_of(id)?;
        Ok(&self.facet_incidence[id])
    }

    /// Indices of the cells of the complex that are faces of cell `i`, itself included.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces_in[i]
    }

    /// Ids of the cells having `id` as a proper face.
    pub fn cofaces(&self, id: &str) -> Result<Vec<String>> {
        let i = self.index_of(id)?;
        Ok((0..self.cells.len())
            .filter(|&j| j != i && self.faces_in[j].contains(&i))
            .map(|j| self.cells[j].id.clone())
            .collect())
    }

    pub fn outward_normals(&self, id: &str) -> Result<Vec<(String, HalfSpace)>> {
        let c = self.cell(id)?;
        if c.dim() == 0 {
            return Err(GeometryError::ZeroDimensionalCell(id.to_string()));
        }
        Ok(self.facet_incidence[id].iter().map(|i| (i.facet.clone(), i.normal.clone())).collect())
    }

    /// The cone at a vertex `p` (a 0-cell of the complex) spanned by the faces of `sigma` through it.
    pub fn vertex_cone(&self, sigma: &str, p: &str) -> Result<Cone> {
        let s = self.cell(sigma)?;
        let v = self.cell(p)?;
        let pi = self.index_of(p)?;
        if v.dim() != 0 || !self.faces_in[self.index_of(sigma)?].contains(&pi) {
            return Err(GeometryError::NotAVertex(sigma.to_string(), p.to_string()));
        }
        let apex = v.point().to_vec();
        cone_at(s, &apex)
    }

    pub fn fiber_dimension(&self, id: &str, s: usize) -> Result<usize> {
        self.check_projection(s)?;
        Ok(fiber_dim(self.cell(id)?, s))
    }

    pub(crate) fn check_projection(&self, s: usize) -> Result<()> {
        if s == 0 || s > self.ambient_dim {
            return Err(GeometryError::BadProjection { s, m: self.ambient_dim });
        }
        Ok(())
    }

    /// Free pairs `(sigma, tau)`: `tau` a facet of `sigma` and a face of no other cell.
    /// With `Some(s)`, only pairs with fiber dimensions 1 and 0.
    pub fn free_pairs(&self, s: Option<usize>) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (ti, tau) in self.cells.iter().enumerate() {
            let owners: Vec<usize> =
                (0..self.cells.len()).filter(|&j| j != ti && self.faces_in[j].contains(&ti)).collect();
            if owners.len() != 1 {
                continue;
            }
            let sigma = &self.cells[owners[0]];
            if sigma.dim() != tau.dim() + 1 {
                continue;
            }
            if let Some(s) = s {
                if s == 0 || s > self.ambient_dim || fiber_dim(sigma, s) != 1 || fiber_dim(tau, s) != 0 {
                    continue;
                }
            }
            out.push((sigma.id.clone(), tau.id.clone()));
        }
        out.sort();
        out
    }

    pub fn collapse(&self, pair: (&str, &str)) -> Result<CellComplex> {
        let (s, t) = pair;
        if !self.free_pairs(None).iter().any(|(a, b)| a == s && b == t) {
            return Err(GeometryError::NotFreePair(s.to_string(), t.to_string()));
        }
        self.without(&[s, t])
    }

    /// The complex with the named cells removed. Any subset of a complex
    /// satisfies the intersection condition, so nothing is revalidated.
    pub fn without(&self, ids: &[&str]) -> Result<CellComplex> {
        for id in ids {
            self.index_of(id)?;
        }
        let keep = (0..self.cells.len()).filter(|&i| !ids.contains(&self.cells[i].id.as_str())).collect();
        Ok(self.restrict(&keep))
    }

    /// The subcomplex of all faces of the named cells.
    pub fn closure_of(&self, ids: &[&str]) -> Result<CellComplex> {
        let mut keep: BTreeSet<usize> = BTreeSet::new();
        for id in ids {
            keep.extend(self.faces_in[self.index_of(id)?].iter().copied());
        }
        Ok(self.restrict(&keep))
    }

    /// The cells with the given indices, keeping incidences among them.
    pub fn restrict(&self, keep: &BTreeSet<usize>) -> CellComplex {
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let cells: Vec<Cell> = keep.iter().map(|&i| self.cells[i].clone()).collect();
        let faces_in = keep
            .iter()
            .map(|&i| self.faces_in[i].iter().filter_map(|f| remap.get(f).copied()).collect())
            .collect();
        let facet_incidence = cells
            .iter()
            .map(|c| {
                let inc = self.facet_incidence[&c.id]
                    .iter()
                    .filter(|inc| remap.contains_key(&self.index[&inc.facet]))
                    .cloned()
                    .collect();
                (c.id.clone(), inc)
            })
            .collect();
        let index = cells.iter().enumerate().map(|(i, c)| (c.id.clone(), i)).collect();
        CellComplex {
            ambient_dim: self.ambient_dim,
            cells,
            facet_incidence,
            index,
            faces_in,
        }
    }
}

/// Cone of `sigma` at `apex`: the constraints active there.
pub(crate) fn cone_at(sigma: &Cell, apex: &[Q]) -> Result<Cone> {
    let ineqs: Vec<HalfSpace> = sigma.ineqs().iter().filter(|h| h.slack(apex).is_zero()).cloned().collect();
    let cell = Cell::new(format!("{}@apex", sigma.id), sigma.ambient_dim(), ineqs, sigma.eqs().to_vec())?;
    Ok(Cone { apex: apex.to_vec(), cell })
}

/// Dimension of the projection of the cell to the first `s` coordinates.
pub fn projected_dim(c: &Cell, s: usize) -> usize {
    let rows: Vec<Vec<Q>> = c.direction_lattice().iter().map(|b| b[..s].iter().map(qz).collect()).collect();
    rank(&rows)
}

pub fn fiber_dim(c: &Cell, s: usize) -> usize {
    c.dim() - projected_dim(c, s)
}
