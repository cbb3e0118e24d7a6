//! Small named complexes used by tests, benchmarks and the command line.

use crate::geometry::{Cell, CellComplex};
use crate::rational::q;

/// Builds a cell from integer rows `[a_1, ..., a_m, b]`.
pub fn cell(id: &str, m: usize, ineqs: &[&[i64]], eqs: &[&[i64]]) -> Cell {
    let conv = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>();
    Cell::from_rows(id, m, &conv(ineqs), &conv(eqs)).expect("sample cell is valid")
}

/// The box `[0,1]^m` with optional fixed coordinates `(i, value)`.
pub fn box_cell(id: &str, m: usize, fixed: &[(usize, i64)]) -> Cell {
    let mut ineqs: Vec<Vec<i64>> = Vec::new();
    let mut eqs: Vec<Vec<i64>> = Vec::new();
    for i in 0..m {
        let mut e = vec![0; m + 1];
        e[i] = 1;
        if let Some(&(_, v)) = fixed.iter().find(|(j, _)| *j == i) {
            e[m] = v;
            eqs.push(e);
        } else {
            let mut lo = vec![0; m + 1];
            lo[i] = -1;
            ineqs.push(lo);
            e[m] = 1;
            ineqs.push(e);
        }
    }
    let a: Vec<&[i64]> = ineqs.iter().map(|r| r.as_slice()).collect();
    let b: Vec<&[i64]> = eqs.iter().map(|r| r.as_slice()).collect();
    cell(id, m, &a, &b)
}

fn closure(cells: Vec<Cell>) -> CellComplex {
    CellComplex::build(cells, true).expect("sample complex is valid")
}

/// `[0,1]` with its two endpoints.
pub fn interval() -> CellComplex {
    closure(vec![box_cell("I", 1, &[])])
}

/// The closed half-line `[0, oo)` with its endpoint.
pub fn half_line() -> CellComplex {
    closure(vec![cell("R+", 1, &[&[-1, 0]], &[])])
}

/// The standard 2-simplex with vertices `(0,0), (1,0), (0,1)` and its faces.
pub fn simplex2() -> CellComplex {
    closure(vec![cell("T", 2, &[&[-1, 0, 0], &[0, -1, 0], &[1, 1, 1]], &[])])
}

pub fn unit_square() -> CellComplex {
    closure(vec![box_cell("Q", 2, &[])])
}

/// The four edges and four vertices of the unit square.
pub fn square_boundary() -> CellComplex {
    closure(vec![
        box_cell("bottom", 2, &[(1, 0)]),
        box_cell("top", 2, &[(1, 1)]),
        box_cell("left", 2, &[(0, 0)]),
        box_cell("right", 2, &[(0, 1)]),
    ])
}

pub fn unit_box() -> CellComplex {
    closure(vec![box_cell("B", 3, &[])])
}

/// The non-convex cone over the rays `(1,0,0), (0,1,0), (0,0,1), (-1,-1,-1)`
/// (joined cyclically), split into the octant and the simplicial cone
/// over the first, third and fourth ray.
pub fn four_ray_cone_cells() -> Vec<Cell> {
    vec![
        cell("C1", 3, &[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0]], &[]),
        cell("C2", 3, &[&[0, 1, 0, 0], &[0, 1, -1, 0], &[-1, 1, 0, 0]], &[]),
    ]
}

pub fn four_ray_cone() -> CellComplex {
    closure(four_ray_cone_cells())
}

/// Boundary of `[0,1]^3` without the two vertical facets `x = 1` and `y = 1`.
pub fn open_box_shell() -> CellComplex {
    closure(vec![
        box_cell("bottom", 3, &[(2, 0)]),
        box_cell("top", 3, &[(2, 1)]),
        box_cell("x0", 3, &[(0, 0)]),
        box_cell("y0", 3, &[(1, 0)]),
    ])
}

/// Named samples, for the command line.
pub fn by_name(name: &str) -> Option<CellComplex> {
    Some(match name {
        "interval" => interval(),
        "half-line" => half_line(),
        "simplex2" => simplex2(),
        "square" => unit_square(),
        "square-boundary" => square_boundary(),
        "box" => unit_box(),
        "four-ray-cone" => four_ray_cone(),
        "open-box-shell" => open_box_shell(),
        _ => return None,
    })
}
