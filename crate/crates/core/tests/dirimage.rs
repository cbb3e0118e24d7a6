use charmod_core::charmod::presentation;
use charmod_core::dirimage::*;
use charmod_core::geometry::{fiber_dim, CellComplex};
use charmod_core::rational::q;
use charmod_core::samples;
use charmod_core::weyl::{parse_weyl, WeylElement};
use std::collections::BTreeMap;

fn census(k: &CellComplex, s: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for c in k.cells() {
        *out.entry(fiber_dim(c, s)).or_insert(0) += 1;
    }
    out
}

#[test]
fn box_counts() {
    let k = samples::unit_box();
    let p = dir_image_presentation(&k, 2).unwrap();
    assert_eq!(p.generators.len(), 27);
    assert_eq!(p.relations.len(), 72);
    // independent census: 9 cells with v = 1 and 18 with v = 0
    let c = census(&k, 2);
    assert_eq!(c, BTreeMap::from([(0, 18), (1, 9)]));
    assert_eq!(3 * 27 + c[&1] - c[&0], 72);
}

#[test]
fn square_counts() {
    let k = samples::unit_square();
    let p = dir_image_presentation(&k, 1).unwrap();
    assert_eq!((p.generators.len(), p.relations.len()), (9, 15));
    let r = reduce_generators(&p);
    assert_eq!(r.generators.len(), 6);
}

#[test]
fn bad_projection() {
    assert!(matches!(
        dir_image_presentation(&samples::interval(), 1),
        Err(DirImageError::Geometry(charmod_core::geometry::GeometryError::BadProjection { .. }))
    ));
}

fn find<'a>(p: &'a DirImagePresentation, kind: RelationKind, cell: &str) -> Vec<BTreeMap<String, String>> {
    p.relations
        .iter()
        .zip(&p.kinds)
        .filter(|(_, (k, c))| *k == kind && c == cell)
        .map(|(r, _)| {
            r.iter()
                .zip(&p.generators)
                .filter(|(w, _)| !w.is_zero())
                .map(|(w, g)| (g.clone(), w.to_string()))
                .collect()
        })
        .collect()
}

#[test]
fn box_body_relations() {
    let k = samples::unit_box();
    let p = dir_image_presentation(&k, 2).unwrap();
    // facets of B: x1 <= 1, -x1 <= 0, ... named by their tight inequality
    let top = k.cells().iter().find(|c| c.dim() == 2 && c.vertices().iter().all(|v| v[2] == q(1))).unwrap();
    let bottom = k.cells().iter().find(|c| c.dim() == 2 && c.vertices().iter().all(|v| v[2] == q(0))).unwrap();
    let fiber = find(&p, RelationKind::Fiber, "B");
    assert_eq!(fiber.len(), 1);
    let f = &fiber[0];
    assert_eq!(f.len(), 2);
    let signs: Vec<&String> = vec![&f[&top.id], &f[&bottom.id]];
    assert!(signs == ["1", "-1"] || signs == ["-1", "1"]);
    let euler = &find(&p, RelationKind::Euler, "B")[0];
    assert_eq!(euler["B"], "1");
    assert_eq!(euler[&top.id], "-1");
    assert!(!euler.contains_key(&bottom.id));
    let mut affine = 0;
    for c in k.cells().iter().filter(|c| c.dim() == 2 && c.id != top.id && c.id != bottom.id) {
        let x0 = c.vertices()[0][0].clone();
        let expect = if c.vertices().iter().all(|v| v[0] == x0) {
            if x0 == q(0) { "-x1" } else { "x1 - 1" }
        } else {
            let y0 = c.vertices()[0][1].clone();
            if y0 == q(0) { "-x2" } else { "x2 - 1" }
        };
        assert_eq!(euler[&c.id], expect, "{}", c.id);
        affine += 1;
    }
    assert_eq!(affine, 4);
}

#[test]
fn euler_relation_is_a_consequence_in_the_full_module() {
    // sum_{j>s} x_j d_j g_s + sum_i c_i g_i vanishes in the characteristic module
    for (k, s) in [(samples::unit_box(), 2), (samples::unit_square(), 1), (samples::simplex2(), 1)] {
        let m = k.ambient_dim();
        let full = presentation(&k);
        let p = dir_image_presentation(&k, s).unwrap();
        for (r, (kind, id)) in p.relations.iter().zip(&p.kinds) {
            if *kind != RelationKind::Euler || k.cell(id).unwrap().dim() != m {
                continue;
            }
            let mut v = vec![WeylElement::zero(m); k.len()];
            let i = full.position(id).unwrap();
            for j in s..m {
                v[i] = v[i].add(&WeylElement::x(m, j).mul(&WeylElement::d(m, j)));
            }
            for (t, w) in r.iter().enumerate() {
                if t != i && !w.is_zero() {
                    // lift an operator in x_1..x_s to m variables
                    let lifted = parse_weyl(&w.to_string(), m).unwrap();
                    v[full.position(&p.generators[t]).unwrap()] = lifted.neg();
                }
            }
            assert!(full.is_zero_in_module(&v).unwrap(), "{id}");
        }
    }
}

#[test]
fn reduction_keeps_annihilators() {
    for (k, s) in [(samples::unit_square(), 1), (samples::simplex2(), 1)] {
        let p = dir_image_presentation(&k, s).unwrap();
        let r = reduce_generators(&p);
        assert!(r.generators.iter().all(|g| p.v_table[g] == 0));
        for g in &r.generators {
            let a = p.annihilator_of(g).unwrap();
            let b = r.annihilator_of(g).unwrap();
            assert!(a.same_as(&b), "{g}");
        }
    }
    let b = reduce_generators(&dir_image_presentation(&samples::unit_box(), 2).unwrap());
    assert_eq!(b.generators.len(), 18);
}

#[test]
fn certificates() {
    let cert = spline_iso_certificate(&samples::unit_box(), 2, 2, 7).unwrap();
    assert_eq!(cert.verdict, Verdict::Isomorphic);
    assert!(cert.collapse_sequence.is_empty());
    assert!(!cert.witnesses.is_empty() && cert.witnesses.iter().all(|w| w.connected));
    for (k, s) in [(samples::unit_square(), 1), (samples::simplex2(), 1), (samples::unit_box(), 1)] {
        assert_eq!(spline_iso_certificate(&k, s, 2, 1).unwrap().verdict, Verdict::Isomorphic);
    }
    let shell = spline_iso_certificate(&samples::open_box_shell(), 2, 2, 7).unwrap();
    assert_eq!(shell.verdict, Verdict::Unknown);
    assert!(shell.witnesses.iter().any(|w| !w.connected));
}

#[test]
fn spline_module_relations() {
    let k = samples::unit_box();
    let a = dir_image_presentation(&k, 2).unwrap();
    let b = spline_module_presentation(&k, 2).unwrap();
    assert_eq!(a.relation_set(), b.relation_set());

    let shell = samples::open_box_shell();
    let d = dir_image_presentation(&shell, 2).unwrap();
    let sp = spline_module_presentation(&shell, 2).unwrap();
    assert!(sp.relations.len() > d.relations.len());
    let mut v = vec![WeylElement::zero(2); shell.len()];
    v[d.position("top").unwrap()] = WeylElement::one(2);
    v[d.position("bottom").unwrap()] = WeylElement::one(2).neg();
    assert!(sp.contains(&v).unwrap());
    assert!(!d.contains(&v).unwrap());

    // two horizontal segments whose shadows do not overlap
    let segs = CellComplex::build(
        vec![
            samples::cell("low", 2, &[&[-1, 0, 0], &[1, 0, 1]], &[&[0, 1, 0]]),
            samples::cell("high", 2, &[&[-1, 0, -2], &[1, 0, 3]], &[&[0, 1, 1]]),
        ],
        true,
    )
    .unwrap();
    let a = dir_image_presentation(&segs, 1).unwrap();
    let b = spline_module_presentation(&segs, 1).unwrap();
    assert_eq!(a.relation_set(), b.relation_set());
}
