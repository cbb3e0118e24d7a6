use super::cell::{Cell, FaceInfo};
use super::fiber::lattice_coordinates;
use super::{GeometryError, Result};
use crate::linalg::det;
use crate::rational::{factorial, qz, Q};
use num_traits::{Signed, Zero};
use std::collections::HashMap;

/// Exact volume; `full_dimensional` is false (and the value zero) for
/// polytopes lying in a proper affine subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Volume {
    pub value: Q,
    pub full_dimensional: bool,
}

fn check(p: &Cell) -> Result<Option<Volume>> {
    if !p.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    if p.dim() < p.ambient_dim() {
        return Ok(Some(Volume {
            value: Q::zero(),
            full_dimensional: false,
        }));
    }
    Ok(None)
}

pub fn volume(p: &Cell) -> Result<Volume> {
    volume_by_triangulation(p)
}

/// Pulling triangulation from the lexicographically smallest vertex of every face.
pub fn volume_by_triangulation(p: &Cell) -> Result<Volume> {
    if let Some(v) = check(p)? {
        return Ok(v);
    }
    let d = p.ambient_dim();
    if d == 0 {
        return Ok(Volume {
            value: Q::from_integer(1.into()),
            full_dimensional: true,
        });
    }
    let faces = p.faces();
    let mut memo: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
    let simplices = triangulate(&faces, 0, &mut memo);
    let verts = &p.vrep().vertices;
    let mut total = Q::zero();
    for s in simplices {
        let base = &verts[s[0]];
        let rows: Vec<Vec<Q>> = s[1..].iter().map(|&i| verts[i].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        total += det(&rows).abs();
    }
    Ok(Volume {
        value: total / qz(&factorial(d as u32)),
        full_dimensional: true,
    })
}

fn triangulate(faces: &[FaceInfo], g: usize, memo: &mut HashMap<Vec<usize>, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
    let face = &faces[g];
    if let Some(r) = memo.get(&face.vertices) {
        return r.clone();
    }
    let out = if face.dim == 0 {
        vec![vec![face.vertices[0]]]
    } else {
        let v0 = face.vertices[0];
        let mut out = Vec::new();
        for (fi, f) in faces.iter().enumerate() {
            let is_facet = f.dim + 1 == face.dim && f.vertices.iter().all(|v| face.vertices.contains(v));
            if !is_facet || f.vertices.contains(&v0) {
                continue;
            }
            for mut s in triangulate(faces, fi, memo) {
                s.insert(0, v0);
                out.push(s);
            }
        }
        out
    };
    memo.insert(face.vertices.clone(), out.clone());
    out
}

/// Sum of pyramids over the facets with apex at the vertex centroid,
/// facet measures computed recursively in lattice coordinates.
pub fn volume_by_facet_pyramids(p: &Cell) -> Result<Volume> {
    if let Some(v) = check(p)? {
        return Ok(v);
    }
    Ok(Volume {
        value: pyramid_volume(p),
        full_dimensional: true,
    })
}

fn pyramid_volume(p: &Cell) -> Q {
    let d = p.ambient_dim();
    match d {
        0 => return Q::from_integer(1.into()),
        1 => {
            let vs = &p.vrep().vertices;
            return (&vs[vs.len() - 1][0] - &vs[0][0]).abs();
        }
        _ => {}
    }
    let c = p.barycenter();
    let mut total = Q::zero();
    for f in p.faces().iter().filter(|f| f.dim + 1 == d) {
        let h = &p.ineqs()[f.tight[0]];
        let facet = p.face_cell(f, "facet");
        total += h.slack(&c) * pyramid_volume(&lattice_coordinates(&facet));
    }
    total / Q::from_integer((d as i64).into())
}

/// Volume relative to the integer lattice of the affine hull.
pub fn lattice_volume(p: &Cell) -> Result<Q> {
    if !p.is_bounded() {
        return Err(GeometryError::Unbounded);
    }
    Ok(volume(&lattice_coordinates(p))?.value)
}
