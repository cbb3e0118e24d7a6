//! The zeroth direct image of the characteristic module under the projection
//! to the first `s` coordinates: its presentation, the elimination of
//! generators with positive fiber dimension, and the spline isomorphism
//! certificate.

use crate::charmod::{affine_form, directional_derivative};
use crate::geometry::{fiber_dim, fiber_polytope, lattice_outward_normal, projected_dim, Cell, CellComplex, Fiber, GeometryError, HalfSpace};
use crate::linalg::{integer_kernel, inverse, rank, solve_any};
use crate::rational::{dot_z, dot_zq, qz, to_q_vec, Q, Z};
use crate::weyl::{FreeSubmodule, LeftIdeal, ModuleElement, TermOrder, WeylElement, WeylError};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirImageError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("relation count {found} differs from the expected {expected}")]
    CountMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, DirImageError>;

/// Which standard relation a vector is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RelationKind {
    /// `d_{pi(z)} g_s + sum <z, N_i> g_i` for tangent `z`.
    Derivative,
    /// `sum <v, N_i> g_i` for `v` in the fiber lattice.
    Fiber,
    /// `v(s) g_s - sum c_i(x) g_i`.
    Euler,
    /// `p(x) g_s` for `p` vanishing on the image of the affine hull.
    Hull,
    /// A fiber relation of a cell missing from the complex.
    Missing,
}

impl RelationKind {
    pub fn label(self) -> &'static str {
        match self {
            RelationKind::Derivative => "i",
            RelationKind::Fiber => "ii",
            RelationKind::Euler => "iii",
            RelationKind::Hull => "iv",
            RelationKind::Missing => "missing",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirImagePresentation {
    pub s: usize,
    pub generators: Vec<String>,
    pub v_table: BTreeMap<String, usize>,
    pub relations: Vec<ModuleElement>,
    /// Kind and source cell of each relation.
    pub kinds: Vec<(RelationKind, String)>,
    /// For a reduced presentation: every eliminated generator as a combination
    /// of the remaining ones.
    pub eliminated: BTreeMap<String, ModuleElement>,
}

/// Lattice data of a cell relative to the projection.
pub(crate) struct Adapted {
    /// Lattice vectors whose projections form a basis of the image directions.
    pub tangent: Vec<Vec<Z>>,
    /// Lattice basis of the fiber directions.
    pub fiber: Vec<Vec<Z>>,
    /// Integer forms on `R^s` cutting out the image of the affine hull, with offsets.
    pub image_eqs: Vec<(Vec<Z>, Q)>,
}

pub(crate) fn adapted(c: &Cell, s: usize) -> Adapted {
    let basis = c.direction_lattice();
    let d = basis.len();
    let proj: Vec<Vec<Z>> = (0..s).map(|j| basis.iter().map(|b| b[j].clone()).collect()).collect();
    let fiber = integer_kernel(&proj, d)
        .into_iter()
        .map(|coef| {
            let mut u = vec![Z::zero(); c.ambient_dim()];
            for (ck, b) in coef.iter().zip(&basis) {
                for (ui, bi) in u.iter_mut().zip(b) {
                    *ui += ck * bi;
                }
            }
            u
        })
        .collect();
    let mut tangent: Vec<Vec<Z>> = Vec::new();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for b in &basis {
        let mut trial = rows.clone();
        trial.push(b[..s].iter().map(qz).collect());
        if rank(&trial) > rows.len() {
            rows = trial;
            tangent.push(b.clone());
        }
    }
    let projected: Vec<Vec<Z>> = basis.iter().map(|b| b[..s].to_vec()).collect();
    let p = c.point();
    let image_eqs = integer_kernel(&projected, s)
        .into_iter()
        .map(|a| {
            let off = dot_zq(&a, &p[..s]);
            (a, off)
        })
        .collect();
    Adapted {
        tangent,
        fiber,
        image_eqs,
    }
}

/// Coefficient `c_i` of the Euler-type relation for the facet with outward
/// normal `n`: the affine function of the first `s` coordinates equal, on the
/// facet, to `sum_k phi_k(x) <u_k, N>` where `phi` is dual to the fiber basis `u`.
/// Returned as coefficients `(g, constant)`; `const_at` supplies `<N, k>` and
/// `<a_e, k>` for a point `k` of the facet.
pub(crate) fn euler_coefficient(sigma: &Cell, fiber: &[Vec<Z>], n: &HalfSpace, s: usize, k: Option<&[Q]>) -> (Vec<Q>, Q) {
    let m = sigma.ambient_dim();
    let u: Vec<Vec<Q>> = fiber.iter().map(|v| to_q_vec(v)).collect();
    let v = u.len();
    let gram: Vec<Vec<Q>> = (0..v)
        .map(|a| (0..v).map(|b| u[a].iter().zip(&u[b]).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let ginv = inverse(&gram).expect("fiber basis is independent");
    let mut psi = vec![Q::zero(); m];
    for a in 0..v {
        let w = qz(&dot_z(&fiber[a], &n.normal));
        if w.is_zero() {
            continue;
        }
        for b in 0..v {
            let coef = &w * &ginv[a][b];
            for j in 0..m {
                psi[j] += &coef * &u[b][j];
            }
        }
    }
    let eqs = sigma.eqs();
    let nq = to_q_vec(&n.normal);
    // fiber coefficients of psi - N must come from the hull equations
    let target: Vec<Q> = (s..m).map(|j| &psi[j] - &nq[j]).collect();
    let a_rows: Vec<Vec<Q>> = (s..m).map(|j| eqs.iter().map(|h| qz(&h.normal[j])).collect()).collect();
    let lambda = if eqs.is_empty() {
        Vec::new()
    } else {
        solve_any(&a_rows, &target, eqs.len()).expect("fiber part lies in the span of the hull equations")
    };
    let mut g: Vec<Q> = (0..s).map(|j| &psi[j] - &nq[j]).collect();
    for (l, h) in lambda.iter().zip(eqs) {
        for j in 0..s {
            g[j] -= l * qz(&h.normal[j]);
        }
    }
    let mut constant = match k {
        Some(k) => dot_zq(&n.normal, k),
        None => n.offset.clone(),
    };
    for (l, h) in lambda.iter().zip(eqs) {
        constant += l * match k {
            Some(k) => dot_zq(&h.normal, k),
            None => h.offset.clone(),
        };
    }
    (g, constant)
}

fn affine_in(s: usize, g: &[Q], c: &Q) -> WeylElement {
    let mut r = WeylElement::constant(s, c.clone());
    for (j, gj) in g.iter().enumerate() {
        r = r.add(&WeylElement::x(s, j).scale(gj));
    }
    r
}

fn check_s(k: &CellComplex, s: usize) -> Result<()> {
    if s == 0 || s >= k.ambient_dim() {
        return Err(GeometryError::BadProjection { s, m: k.ambient_dim() }.into());
    }
    Ok(())
}

/// The standard relations of the direct image, with their kinds.
pub fn dir_image_relations(k: &CellComplex, s: usize) -> Result<Vec<(RelationKind, String, ModuleElement)>> {
    check_s(k, s)?;
    let c = k.len();
    let zero = || vec![WeylElement::zero(s); c];
    let mut out = Vec::new();
    for (i, sigma) in k.cells().iter().enumerate() {
        let ad = adapted(sigma, s);
        let incs = &k.facet_incidence()[&sigma.id];
        let facet_index = |f: &str| k.index_of(f).expect("facet in complex");
        for z in &ad.tangent {
            let mut r = zero();
            r[i] = directional_derivative(s, &z[..s]);
            for inc in incs {
                r[facet_index(&inc.facet)] = WeylElement::constant(s, qz(&dot_z(z, &inc.normal.normal)));
            }
            out.push((RelationKind::Derivative, sigma.id.clone(), r));
        }
        for u in &ad.fiber {
            let mut r = zero();
            for inc in incs {
                r[facet_index(&inc.facet)] = WeylElement::constant(s, qz(&dot_z(u, &inc.normal.normal)));
            }
            out.push((RelationKind::Fiber, sigma.id.clone(), r));
        }
        if !ad.fiber.is_empty() {
            let mut r = zero();
            r[i] = WeylElement::constant(s, Q::from_integer(Z::from(ad.fiber.len())));
            for inc in incs {
                let (g, c0) = euler_coefficient(sigma, &ad.fiber, &inc.normal, s, None);
                r[facet_index(&inc.facet)] = affine_in(s, &g, &c0).neg();
            }
            out.push((RelationKind::Euler, sigma.id.clone(), r));
        }
        for (a, off) in &ad.image_eqs {
            let mut r = zero();
            r[i] = affine_form(s, a, off);
            out.push((RelationKind::Hull, sigma.id.clone(), r));
        }
    }
    Ok(out)
}

/// `(s + 1) c + sum (v(s) - [v(s) = 0])`.
pub fn expected_relation_count(k: &CellComplex, s: usize) -> usize {
    k.cells()
        .iter()
        .map(|c| {
            let v = fiber_dim(c, s);
            s + 1 + v - usize::from(v == 0)
        })
        .sum()
}

pub fn dir_image_presentation(k: &CellComplex, s: usize) -> Result<DirImagePresentation> {
    let rels = dir_image_relations(k, s)?;
    let expected = expected_relation_count(k, s);
    if rels.len() != expected {
        return Err(DirImageError::CountMismatch {
            expected,
            found: rels.len(),
        });
    }
    let mut kinds = Vec::with_capacity(rels.len());
    let mut relations = Vec::with_capacity(rels.len());
    for (kind, id, r) in rels {
        kinds.push((kind, id));
        relations.push(r);
    }
    Ok(DirImagePresentation {
        s,
        generators: k.cells().iter().map(|c| c.id.clone()).collect(),
        v_table: k.cells().iter().map(|c| (c.id.clone(), fiber_dim(c, s))).collect(),
        relations,
        kinds,
        eliminated: BTreeMap::new(),
    })
}

impl DirImagePresentation {
    pub fn position(&self, id: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g == id)
            .ok_or_else(|| GeometryError::NotInComplex(id.to_string()).into())
    }

    pub fn module(&self) -> FreeSubmodule {
        FreeSubmodule::new(self.s, self.generators.len(), self.relations.clone(), TermOrder::grevlex())
            .expect("relations have full rank")
    }

    /// Whether `v` is a combination of the relations.
    pub fn contains(&self, v: &[WeylElement]) -> Result<bool> {
        Ok(self.module().contains(v)?)
    }

    /// The annihilator of the class of `g_id`, by a position-over-term
    /// elimination with `g_id` lowest.
    pub fn annihilator_of(&self, id: &str) -> Result<LeftIdeal> {
        let pos = self.position(id)?;
        let mut priority: Vec<usize> = (0..self.generators.len()).filter(|&i| i != pos).collect();
        priority.push(pos);
        let module = FreeSubmodule::new(
            self.s,
            self.generators.len(),
            self.relations.clone(),
            TermOrder::position_over_term(priority),
        )?;
        let gens = module.gb_supported_on(&[pos]).into_iter().map(|v| v[pos].clone()).collect();
        Ok(LeftIdeal::grevlex(self.s, gens)?)
    }

    /// Relations as maps from generator id to operator text.
    pub fn relation_set(&self) -> BTreeSet<BTreeMap<String, String>> {
        self.relations
            .iter()
            .map(|r| {
                r.iter()
                    .zip(&self.generators)
                    .filter(|(w, _)| !w.is_zero())
                    .map(|(w, g)| (g.clone(), w.to_string()))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relations
            .iter()
            .zip(&self.kinds)
            .map(|(r, (kind, cell))| {
                let terms: serde_json::Map<String, Value> = r
                    .iter()
                    .zip(&self.generators)
                    .filter(|(w, _)| !w.is_zero())
                    .map(|(w, g)| (g.clone(), Value::String(w.to_string())))
                    .collect();
                json!({"kind": kind.label(), "cell": cell, "terms": terms})
            })
            .collect();
        json!({
            "s": self.s,
            "generators": self.generators,
            "fiber_dimensions": self.v_table,
            "relations": rels,
        })
    }
}

/// Eliminates every generator of positive fiber dimension through its
/// Euler-type relation, lowest dimension first.
pub fn reduce_generators(p: &DirImagePresentation) -> DirImagePresentation {
    let s = p.s;
    let keep: Vec<String> = p.generators.iter().filter(|g| p.v_table[*g] == 0).cloned().collect();
    let unit = |j: usize| {
        let mut v = vec![WeylElement::zero(s); keep.len()];
        v[j] = WeylElement::one(s);
        v
    };
    let euler: BTreeMap<&str, &ModuleElement> = p
        .relations
        .iter()
        .zip(&p.kinds)
        .filter(|(_, (k, _))| *k == RelationKind::Euler)
        .map(|(r, (_, id))| (id.as_str(), r))
        .collect();
    // generators are in nondecreasing dimension, so facets come first
    let mut expr: Vec<ModuleElement> = Vec::with_capacity(p.generators.len());
    let mut eliminated = BTreeMap::new();
    for (i, g) in p.generators.iter().enumerate() {
        if let Some(j) = keep.iter().position(|x| x == g) {
            expr.push(unit(j));
            continue;
        }
        let r = euler[g.as_str()];
        let v = r[i].terms().values().next().expect("nonzero fiber dimension").clone();
        let mut e = vec![WeylElement::zero(s); keep.len()];
        for (t, coef) in r.iter().enumerate() {
            if t == i || coef.is_zero() {
                continue;
            }
            let c = coef.scale(&(-Q::one() / &v));
            for (ej, xj) in e.iter_mut().zip(&expr[t]) {
                if !xj.is_zero() {
                    *ej = ej.add(&c.mul(xj));
                }
            }
        }
        eliminated.insert(g.clone(), e.clone());
        expr.push(e);
    }
    let mut relations = Vec::new();
    let mut kinds = Vec::new();
    for (r, kind) in p.relations.iter().zip(&p.kinds) {
        if kind.0 == RelationKind::Euler && p.v_table[&kind.1] > 0 {
            continue;
        }
        let mut out = vec![WeylElement::zero(s); keep.len()];
        for (t, coef) in r.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (oj, xj) in out.iter_mut().zip(&expr[t]) {
                if !xj.is_zero() {
                    *oj = oj.add(&coef.mul(xj));
                }
            }
        }
        if out.iter().any(|w| !w.is_zero()) {
            relations.push(out);
            kinds.push(kind.clone());
        }
    }
    DirImagePresentation {
        s,
        v_table: keep.iter().map(|g| (g.clone(), 0)).collect(),
        generators: keep,
        relations,
        kinds,
        eliminated,
    }
}

/// Hyperplane `<a, x> = b` with a sign-normalized primitive normal.
fn normalized(h: &HalfSpace) -> (Vec<Z>, Q) {
    let neg = h.normal.iter().find(|a| !a.is_zero()).is_some_and(|a| *a < Z::zero());
    if neg {
        (h.normal.iter().map(|a| -a).collect(), -h.offset.clone())
    } else {
        (h.normal.clone(), h.offset.clone())
    }
}

fn bounding_box(points: &[Vec<Q>], dim: usize) -> Option<Cell> {
    let first = points.first()?;
    let mut lo = first.clone();
    let mut hi = first.clone();
    for p in points {
        for j in 0..dim {
            if p[j] < lo[j] {
                lo[j] = p[j].clone();
            }
            if p[j] > hi[j] {
                hi[j] = p[j].clone();
            }
        }
    }
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for j in 0..dim {
        let mut e = vec![Z::zero(); dim];
        e[j] = Z::one();
        if lo[j] == hi[j] {
            eqs.push(HalfSpace { normal: e, offset: lo[j].clone() });
        } else {
            ineqs.push(HalfSpace { normal: e.clone(), offset: hi[j].clone() });
            ineqs.push(HalfSpace {
                normal: e.iter().map(|a| -a).collect(),
                offset: -lo[j].clone(),
            });
        }
    }
    Cell::new("region", dim, ineqs, eqs).ok()
}

/// Full-dimensional regions of `region` cut out by the hyperplanes.
fn chambers(region: Cell, hyperplanes: &BTreeSet<(Vec<Z>, Q)>) -> Vec<Cell> {
    let dim = region.dim();
    let mut cells = vec![region];
    for (a, b) in hyperplanes {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for c in cells {
            let m = c.ambient_dim();
            let pieces: Vec<Cell> = [1, -1]
                .iter()
                .filter_map(|&sgn| {
                    let h = HalfSpace {
                        normal: a.iter().map(|x| x * sgn).collect(),
                        offset: b * Q::from_integer(sgn.into()),
                    };
                    let mut ineqs = c.ineqs().to_vec();
                    ineqs.push(h);
                    Cell::new(c.id.clone(), m, ineqs, c.eqs().to_vec()).ok().filter(|p| p.dim() == dim)
                })
                .collect();
            if pieces.len() == 2 {
                next.extend(pieces);
            } else {
                next.push(c);
            }
        }
        cells = next;
    }
    cells
}

/// Fiber relations contributed by cells of the hyperplane arrangement of `k`
/// that are not in `k` but whose relevant facets all are.
pub fn missing_cell_relations(k: &CellComplex, s: usize) -> Result<Vec<(String, ModuleElement)>> {
    check_s(k, s)?;
    let m = k.ambient_dim();
    let keys: BTreeMap<_, usize> = k.cells().iter().enumerate().map(|(i, c)| (c.key(), i)).collect();
    let mut hyperplanes = BTreeSet::new();
    let mut points = Vec::new();
    for c in k.cells() {
        for h in c.ineqs().iter().chain(c.eqs()) {
            hyperplanes.insert(normalized(h));
        }
        points.extend(c.vertices().iter().cloned());
    }
    let Some(region) = bounding_box(&points, m) else { return Ok(Vec::new()) };
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for ch in chambers(region, &hyperplanes) {
        for f in ch.face_cells() {
            if !keys.contains_key(&f.key()) && seen.insert(f.key()) {
                candidates.push(f);
            }
        }
    }
    let mut out = Vec::new();
    let mut emitted = BTreeSet::new();
    for tau in candidates {
        let ad = adapted(&tau, s);
        if ad.fiber.is_empty() {
            continue;
        }
        let facets: Vec<_> = tau.faces().into_iter().filter(|f| f.dim + 1 == tau.dim()).collect();
        for u in &ad.fiber {
            let mut r = vec![WeylElement::zero(s); k.len()];
            let mut names = Vec::new();
            let mut complete = true;
            for f in &facets {
                let n = lattice_outward_normal(&tau, f);
                let w = dot_z(u, &n.normal);
                if w.is_zero() {
                    continue;
                }
                match keys.get(&tau.face_cell(f, "f").key()) {
                    Some(&j) => {
                        r[j] = WeylElement::constant(s, qz(&w));
                        names.push(k.cells()[j].id.clone());
                    }
                    None => complete = false,
                }
            }
            if !complete || names.is_empty() {
                continue;
            }
            let key: Vec<String> = r.iter().map(|w| w.to_string()).collect();
            if emitted.insert(key) {
                out.push((format!("missing[{}]", names.join("|")), r));
            }
        }
    }
    Ok(out)
}

/// The presentation of the spline module: the direct-image relations plus the
/// fiber relations of missing cells.
pub fn spline_module_presentation(k: &CellComplex, s: usize) -> Result<DirImagePresentation> {
    let mut p = dir_image_presentation(k, s)?;
    for (id, r) in missing_cell_relations(k, s)? {
        p.relations.push(r);
        p.kinds.push((RelationKind::Missing, id));
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isomorphic,
    Unknown,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub point: Vec<Q>,
    pub connected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoCertificate {
    pub verdict: Verdict,
    pub collapse_sequence: Vec<(String, String)>,
    pub witnesses: Vec<Witness>,
}

impl IsoCertificate {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": match self.verdict { Verdict::Isomorphic => "Isomorphic", Verdict::Unknown => "Unknown" },
            "collapse_sequence": self.collapse_sequence.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "witnesses": self.witnesses.iter().map(|w| json!({
                "point": w.point.iter().map(crate::rational::format_q).collect::<Vec<_>>(),
                "connected": w.connected,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Seeded interior points of the chambers cut out in `R^s` by the images of
/// the cells of `k` whose projection has codimension one.
pub fn chamber_samples(k: &CellComplex, s: usize, per_chamber: usize, seed: u64) -> Vec<Vec<Q>> {
    let mut hyperplanes = BTreeSet::new();
    let mut points = Vec::new();
    for c in k.cells() {
        if projected_dim(c, s) + 1 == s {
            for (a, b) in adapted(c, s).image_eqs {
                hyperplanes.insert(normalized(&HalfSpace { normal: a, offset: b }));
            }
        }
        points.extend(c.vertices().iter().map(|v| v[..s].to_vec()));
    }
    let Some(region) = bounding_box(&points, s) else { return Vec::new() };
    if region.dim() < s {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for ch in chambers(region, &hyperplanes) {
        let verts = ch.vertices();
        for _ in 0..per_chamber {
            let weights: Vec<Q> = verts.iter().map(|_| Q::from_integer(rng.gen_range(1..=64).into())).collect();
            let total: Q = weights.iter().sum();
            let mut p = vec![Q::zero(); s];
            for (w, v) in weights.iter().zip(verts) {
                for (pj, vj) in p.iter_mut().zip(v) {
                    *pj += w * vj;
                }
            }
            out.push(p.into_iter().map(|x| x / &total).collect());
        }
    }
    out
}

/// Whether the union of the relative interiors of the cells over `x` is connected.
pub fn fiber_is_connected(k: &CellComplex, s: usize, x: &[Q]) -> bool {
    let present: Vec<usize> = (0..k.len())
        .filter(|&i| !matches!(fiber_polytope(&k.cells()[i], s, x), Fiber::Empty))
        .collect();
    if present.len() <= 1 {
        return true;
    }
    let mut parent: BTreeMap<usize, usize> = present.iter().map(|&i| (i, i)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, i: usize) -> usize {
        let mut r = i;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(i, r);
        r
    }
    for &i in &present {
        for &j in k.faces_of(i) {
            if j != i && parent.contains_key(&j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent.insert(a, b);
            }
        }
    }
    let roots: BTreeSet<usize> = present.iter().map(|&i| find(&mut parent, i)).collect();
    roots.len() == 1
}

fn all_connected(k: &CellComplex, s: usize, samples: &[Vec<Q>]) -> bool {
    samples.iter().all(|x| fiber_is_connected(k, s, x))
}

/// Searches for a sequence of 1-free collapses after which all sampled
/// fibers are connected; alternatives are explored at the first two levels.
fn search(k: &CellComplex, s: usize, samples: &[Vec<Q>], depth: usize, seq: &mut Vec<(String, String)>) -> Option<CellComplex> {
    if all_connected(k, s, samples) {
        return Some(k.clone());
    }
    let pairs = k.free_pairs(Some(s));
    let tries = if depth < 2 { pairs.len() } else { pairs.len().min(1) };
    for (a, b) in pairs.into_iter().take(tries) {
        let Ok(next) = k.collapse((&a, &b)) else { continue };
        seq.push((a, b));
        if let Some(done) = search(&next, s, samples, depth + 1, seq) {
            return Some(done);
        }
        seq.pop();
    }
    None
}

/// Certificate that the canonical map from the direct image to the spline
/// module is an isomorphism: collapses to a complex with connected fibers.
pub fn spline_iso_certificate(k: &CellComplex, s: usize, sample_count: usize, seed: u64) -> Result<IsoCertificate> {
    check_s(k, s)?;
    let samples = chamber_samples(k, s, sample_count.max(1), seed);
    let mut seq = Vec::new();
    let (verdict, end) = match search(k, s, &samples, 0, &mut seq) {
        Some(end) => (Verdict::Isomorphic, end),
        None => {
            seq.clear();
            (Verdict::Unknown, k.clone())
        }
    };
    let witnesses = samples
        .iter()
        .map(|x| Witness {
            point: x.clone(),
            connected: fiber_is_connected(&end, s, x),
        })
        .collect();
    Ok(IsoCertificate {
        verdict,
        collapse_sequence: seq,
        witnesses,
    })
}
