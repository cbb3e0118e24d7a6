use charmod_core::geometry::*;
use charmod_core::rational::{q, qf, Q, Z};
use charmod_core::samples::{self, box_cell, cell};
use proptest::prelude::*;

fn zv(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

fn count_dims(k: &CellComplex) -> Vec<usize> {
    let mut c = vec![0; k.ambient_dim() + 1];
    for cell in k.cells() {
        c[cell.dim()] += 1;
    }
    c
}

#[test]
fn interval_and_box_censuses() {
    assert_eq!(samples::interval().len(), 3);
    let b = samples::unit_box();
    assert_eq!(b.len(), 27);
    assert_eq!(count_dims(&b), vec![8, 12, 6, 1]);
}

#[test]
fn overlapping_squares_are_rejected() {
    let a = box_cell("A", 2, &[]);
    let b = cell("B", 2, &[&[-2, 0, -1], &[2, 0, 3], &[0, -1, 0], &[0, 1, 1]], &[]);
    let r = CellComplex::build(vec![a, b], true);
    assert!(matches!(r, Err(GeometryError::NonFaceIntersection(_, _))));
}

#[test]
fn interval_normals() {
    let k = samples::interval();
    let mut ns = k.outward_normals("I").unwrap();
    ns.sort_by(|a, b| a.1.offset.cmp(&b.1.offset));
    assert_eq!(ns[0].1.normal, zv(&[-1]));
    assert_eq!(ns[0].1.offset, q(0));
    assert_eq!(ns[1].1.normal, zv(&[1]));
    assert_eq!(ns[1].1.offset, q(1));
    let v = &k.cells()[0].id;
    assert!(matches!(k.outward_normals(v), Err(GeometryError::ZeroDimensionalCell(_))));
    assert!(matches!(k.outward_normals("nope"), Err(GeometryError::NotInComplex(_))));
}

#[test]
fn simplex_hypotenuse_normal() {
    let k = samples::simplex2();
    let ns = k.outward_normals("T").unwrap();
    assert_eq!(ns.len(), 3);
    assert!(ns.iter().any(|(_, h)| h.normal == zv(&[1, 1]) && h.offset == q(1)));
}

fn cross(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[test]
fn cone_normals_match_cross_products() {
    let k = samples::four_ray_cone();
    let rays = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]];
    let spans = |c: &str| -> Vec<(usize, usize)> {
        match c {
            "C1" => vec![(0, 1), (1, 2), (0, 2)],
            _ => vec![(0, 2), (2, 3), (0, 3)],
        }
    };
    for c in ["C1", "C2"] {
        let ns = k.outward_normals(c).unwrap();
        assert_eq!(ns.len(), 3);
        for (i, j) in spans(c) {
            let n = cross(&rays[i], &rays[j]);
            let hit = ns.iter().any(|(_, h)| {
                let dots: Vec<i64> = [i, j].iter().map(|&r| rays[r].iter().zip(&h.normal).map(|(a, b)| Z::from(*a) * b).sum::<Z>().try_into().unwrap()).collect();
                let par = h.normal == zv(&n) || h.normal == zv(&n.iter().map(|x| -x).collect::<Vec<_>>());
                dots == vec![0, 0] && par
            });
            assert!(hit, "{c}: no normal for rays {i},{j}");
        }
    }
    let ns = k.outward_normals("C1").unwrap();
    assert!(ns.iter().any(|(_, h)| h.normal == zv(&[0, 0, -1])));
    assert_eq!(k.len(), 12);
}

#[test]
fn lower_dimensional_normals_are_lattice_primitive() {
    // triangle (1,0,0),(0,1,0),(0,0,1) in R^3
    let c = cell("T", 3, &[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0]], &[&[1, 1, 1, 1]]);
    let k = CellComplex::build(vec![c], true).unwrap();
    for (_, h) in k.outward_normals("T").unwrap() {
        let t = k.cell("T").unwrap();
        let basis = t.direction_lattice();
        let w: Vec<Z> = basis.iter().map(|b| b.iter().zip(&h.normal).map(|(x, y)| x * y).sum()).collect();
        assert_eq!(charmod_core::rational::gcd_all(&w), Z::from(1));
        // outward: the opposite vertex lies strictly inside
        assert!(t.vertices().iter().any(|v| h.slack(v) > q(0)));
    }
}

#[test]
fn vertex_cones_of_simplex() {
    let k = samples::simplex2();
    let id_at = |p: [i64; 2]| {
        k.cells().iter().find(|c| c.dim() == 0 && c.point() == [q(p[0]), q(p[1])]).unwrap().id.clone()
    };
    let c = k.vertex_cone("T", &id_at([0, 0])).unwrap();
    assert_eq!(c.cell.ineqs().len(), 2);
    let mut rays = c.rays();
    rays.sort();
    assert_eq!(rays, vec![zv(&[0, 1]), zv(&[1, 0])]);
    let c = k.vertex_cone("T", &id_at([1, 0])).unwrap();
    let mut normals: Vec<(Vec<Z>, Q)> = c.cell.ineqs().iter().map(|h| (h.normal.clone(), h.offset.clone())).collect();
    normals.sort();
    assert_eq!(normals, vec![(zv(&[0, -1]), q(0)), (zv(&[1, 1]), q(1))]);
    assert!(matches!(k.vertex_cone("T", "T"), Err(GeometryError::NotAVertex(_, _))));
}

#[test]
fn interval_vertex_cone_at_one() {
    let k = samples::interval();
    let one = k.cells().iter().find(|c| c.dim() == 0 && c.point() == [q(1)]).unwrap();
    let c = k.vertex_cone("I", &one.id).unwrap();
    assert_eq!(c.cell.ineqs().len(), 1);
    assert_eq!(c.cell.ineqs()[0].normal, zv(&[1]));
    assert_eq!(c.cell.ineqs()[0].offset, q(1));
}

#[test]
fn box_fiber_dimensions() {
    let k = samples::unit_box();
    assert_eq!(k.fiber_dimension("B", 2).unwrap(), 1);
    let vertical = k.cells().iter().find(|c| c.dim() == 1 && c.direction_lattice() == vec![zv(&[0, 0, 1])]).unwrap();
    assert_eq!(k.fiber_dimension(&vertical.id, 2).unwrap(), 1);
    let bottom = k
        .cells()
        .iter()
        .find(|c| c.dim() == 2 && c.vertices().iter().all(|v| v[2] == q(0)))
        .unwrap();
    assert_eq!(k.fiber_dimension(&bottom.id, 2).unwrap(), 0);
    for c in k.cells() {
        assert_eq!(fiber_dim(c, 2) + projected_dim(c, 2), c.dim());
    }
}

#[test]
fn free_pairs_and_collapses() {
    let sq = samples::unit_square();
    let pairs = sq.free_pairs(None);
    assert_eq!(pairs.len(), 4);
    assert!(pairs.iter().all(|(s, _)| s == "Q"));
    let after = sq.collapse((&pairs[0].0, &pairs[0].1)).unwrap();
    assert_eq!(after.len(), 7);
    assert!(samples::square_boundary().free_pairs(None).is_empty());
    assert!(matches!(sq.collapse(("Q", "Q")), Err(GeometryError::NotFreePair(_, _))));

    let mut k = samples::interval();
    while let Some((s, t)) = k.free_pairs(None).first().cloned() {
        k = k.collapse((&s, &t)).unwrap();
    }
    assert_eq!(k.len(), 1);
    assert_eq!(k.cells()[0].dim(), 0);
}

#[test]
fn open_box_shell_has_no_one_free_pairs() {
    let k = samples::open_box_shell();
    assert_eq!(count_dims(&k), vec![8, 11, 4, 0]);
    assert!(k.free_pairs(Some(2)).is_empty());
    // ordinary free pairs exist along the missing facets, but a free face of
    // a cell with fiber dimension 1 has fiber dimension 1 itself
    let plain = k.free_pairs(None);
    assert!(plain.iter().any(|(s, _)| k.fiber_dimension(s, 2).unwrap() == 1));
    for (s, t) in plain {
        if k.fiber_dimension(&s, 2).unwrap() == 1 {
            assert_eq!(k.fiber_dimension(&t, 2).unwrap(), 1);
        }
    }
}

#[test]
fn fibers() {
    let b = box_cell("B", 3, &[]);
    let f = fiber_polytope(&b, 2, &[qf(1, 2), qf(1, 2)]);
    let c = f.cell().unwrap();
    assert_eq!(c.vertices(), &[vec![q(0)], vec![q(1)]]);
    assert!(fiber_polytope(&b, 2, &[q(2), q(0)]).is_empty());

    let cone = samples::four_ray_cone();
    let c2 = cone.cell("C2").unwrap();
    // the cone contains the ray (0,0,1), so nonempty fibers are half-lines
    assert!(fiber_polytope(c2, 2, &[q(1), q(1)]).is_empty());
    let f = fiber_polytope(cone.cell("C1").unwrap(), 2, &[q(1), q(1)]);
    let h = f.cell().unwrap();
    assert_eq!((h.dim(), h.vertices()), (1, &[vec![q(0)]][..]));
    assert!(!h.is_bounded());
    let f = fiber_polytope(c2, 2, &[q(1), qf(-1, 2)]);
    let h = f.cell().unwrap();
    assert_eq!((h.dim(), h.vertices()), (1, &[vec![qf(-1, 2)]][..]));
    assert_eq!(h.vrep().rays, vec![vec![q(1)]]);
    // truncating at z <= 1 gives a segment
    let cut = cell("C2t", 3, &[&[0, 1, 0, 0], &[0, 1, -1, 0], &[-1, 1, 0, 0], &[0, 0, 1, 1]], &[]);
    let f = fiber_polytope(&cut, 2, &[q(1), qf(-1, 2)]);
    assert_eq!(f.cell().unwrap().vertices(), &[vec![qf(-1, 2)], vec![q(1)]]);
}

#[test]
fn volumes() {
    assert_eq!(volume(&box_cell("B", 3, &[])).unwrap().value, q(1));
    let t = cell("T", 2, &[&[-1, 0, 0], &[0, -1, 0], &[1, 1, 1]], &[]);
    assert_eq!(volume(&t).unwrap().value, qf(1, 2));
    assert_eq!(volume_by_facet_pyramids(&t).unwrap().value, qf(1, 2));
    let r = cell("R", 1, &[&[-1, 0]], &[]);
    assert_eq!(volume(&r), Err(GeometryError::Unbounded));
    let flat = box_cell("F", 3, &[(2, 0)]);
    let v = volume(&flat).unwrap();
    assert!(!v.full_dimensional);
    assert_eq!(v.value, q(0));
    assert_eq!(lattice_volume(&flat).unwrap(), q(1));
    // triangle x+y+z=1 in the positive octant has lattice area 1/2
    let tri = cell("T3", 3, &[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, -1, 0]], &[&[1, 1, 1, 1]]);
    assert_eq!(lattice_volume(&tri).unwrap(), qf(1, 2));
}

fn random_polytope(rows: Vec<(Vec<i64>, i64)>) -> Cell {
    let mut ineqs: Vec<Vec<Q>> = Vec::new();
    for i in 0..3 {
        for s in [-1, 1] {
            let mut r = vec![q(0); 4];
            r[i] = q(s);
            r[3] = q(2);
            ineqs.push(r);
        }
    }
    for (a, b) in rows {
        if a.iter().all(|&x| x == 0) {
            continue;
        }
        let mut r: Vec<Q> = a.iter().map(|&x| q(x)).collect();
        r.push(qf(b, 3));
        ineqs.push(r);
    }
    Cell::from_rows("P", 3, &ineqs, &[]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn volume_routes_agree(rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 1i64..9), 0..4)) {
        let p = random_polytope(rows);
        let a = volume_by_triangulation(&p).unwrap();
        let b = volume_by_facet_pyramids(&p).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn facet_normals_are_tight_on_facets(rows in prop::collection::vec((prop::collection::vec(-3i64..=3, 3), 1i64..9), 0..3)) {
        let p = random_polytope(rows);
        let k = CellComplex::build(vec![p], true).unwrap();
        for (fid, h) in k.outward_normals("P").unwrap() {
            let f = k.cell(&fid).unwrap();
            prop_assert!(f.vertices().iter().all(|v| h.slack(v) == q(0)));
            prop_assert!(k.cell("P").unwrap().vertices().iter().any(|v| h.slack(v) > q(0)));
        }
        for a in k.cells() {
            for b in k.cells() {
                if let Some(x) = a.intersect(b) {
                    prop_assert!(k.cells().iter().any(|c| c.key() == x.key()));
                }
            }
        }
        for c in k.cells() {
            prop_assert_eq!(fiber_dim(c, 2) + projected_dim(c, 2), c.dim());
        }
    }

    #[test]
    fn collapses_stay_valid(steps in 1usize..6) {
        let mut k = samples::unit_box();
        for _ in 0..steps {
            let Some((s, t)) = k.free_pairs(None).first().cloned() else { break };
            k = k.collapse((&s, &t)).unwrap();
            let rebuilt = CellComplex::build(k.cells().to_vec(), false);
            prop_assert!(rebuilt.is_ok());
        }
    }

    #[test]
    fn cones_are_scale_invariant(num in 1i64..20, den in 1i64..20) {
        let k = samples::simplex2();
        let v = k.cells().iter().find(|c| c.dim() == 0 && c.point() == [q(1), q(0)]).unwrap();
        let cone = k.vertex_cone("T", &v.id).unwrap();
        let t = qf(num, den);
        for r in cone.rays() {
            let x: Vec<Q> = cone.apex.iter().zip(&r).map(|(a, d)| a + &t * Q::from_integer(d.clone())).collect();
            prop_assert!(cone.cell.contains_point(&x));
            prop_assert!(cone.cell.ineqs().iter().all(|h| h.slack(&cone.apex) == q(0)));
        }
    }
}
