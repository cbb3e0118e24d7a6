use super::cell::Cell;
use super::HalfSpace;
use crate::rational::{dot_zq, qz, Q};
use num_traits::{Signed, Zero};

/// Result of slicing a cell by a fiber of the coordinate projection.
#[derive(Clone, Debug)]
pub enum Fiber {
    Empty,
    Polytope(Cell),
}

impl Fiber {
    pub fn is_empty(&self) -> bool {
        matches!(self, Fiber::Empty)
    }

    pub fn cell(&self) -> Option<&Cell> {
        match self {
            Fiber::Empty => None,
            Fiber::Polytope(c) => Some(c),
        }
    }
}

enum Row {
    Trivial(bool),
    Constraint(HalfSpace),
}

fn substitute(h: &HalfSpace, s: usize, x: &[Q], is_eq: bool) -> Row {
    let rest: Vec<Q> = h.normal[s..].iter().map(qz).collect();
    let rhs = &h.offset - dot_zq(&h.normal[..s], x);
    if rest.iter().all(|c| c.is_zero()) {
        let ok = if is_eq { rhs.is_zero() } else { !rhs.is_negative() };
        return Row::Trivial(ok);
    }
    Row::Constraint(HalfSpace::from_rational(&rest, rhs).expect("nonzero normal"))
}

/// The fiber `{y : (x, y) in sigma}` as a polyhedron in the last `m - s` coordinates.
pub fn fiber_polytope(sigma: &Cell, s: usize, x: &[Q]) -> Fiber {
    assert_eq!(x.len(), s, "point has wrong length");
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for (h, is_eq) in sigma.ineqs().iter().map(|h| (h, false)).chain(sigma.eqs().iter().map(|h| (h, true))) {
        match substitute(h, s, x, is_eq) {
            Row::Trivial(true) => {}
            Row::Trivial(false) => return Fiber::Empty,
            Row::Constraint(c) if is_eq => eqs.push(c),
            Row::Constraint(c) => ineqs.push(c),
        }
    }
    match Cell::new(format!("{}|fiber", sigma.id), sigma.ambient_dim() - s, ineqs, eqs) {
        Ok(c) => Fiber::Polytope(c),
        Err(_) => Fiber::Empty,
    }
}

/// Rewrites a cell in coordinates of the direction lattice of its affine hull,
/// giving a full-dimensional polyhedron whose Lebesgue measure is the lattice
/// measure of the original.
pub fn lattice_coordinates(c: &Cell) -> Cell {
    let basis = c.direction_lattice();
    let p = c.point().to_vec();
    let ineqs: Vec<HalfSpace> = c
        .ineqs()
        .iter()
        .filter_map(|h| {
            let a: Vec<Q> = basis.iter().map(|b| qz(&crate::rational::dot_z(b, &h.normal))).collect();
            let rhs = h.slack(&p);
            HalfSpace::from_rational(&a, rhs).ok()
        })
        .collect();
    Cell::new(c.id.clone(), basis.len(), ineqs, vec![]).expect("point lies in the cell")
}

