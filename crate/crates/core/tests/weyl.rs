use charmod_core::rational::{q, qf, Q};
use charmod_core::weyl::*;
use proptest::prelude::*;

fn w(s: &str, m: usize) -> WeylElement {
    parse_weyl(s, m).unwrap()
}

fn ideal(m: usize, gens: &[&str]) -> LeftIdeal {
    LeftIdeal::grevlex(m, gens.iter().map(|g| w(g, m)).collect()).unwrap()
}

#[test]
fn multiply_examples() {
    assert_eq!(w("dx", 1).mul(&w("x", 1)), w("x*dx + 1", 1));
    assert_eq!(w("x1", 2).mul(&w("x2", 2)), w("x2*x1", 2));
    assert_eq!(w("dx^2", 1).mul(&w("x^2", 1)), w("x^2*dx^2 + 4*x*dx + 2", 1));
    assert!(w("x", 1).multiply(&w("x", 2)).is_err());
}

#[test]
fn commutation_relations() {
    let m = 3;
    for i in 0..m {
        for j in 0..m {
            let c = WeylElement::d(m, i).commutator(&WeylElement::x(m, j));
            let expect = if i == j { WeylElement::one(m) } else { WeylElement::zero(m) };
            assert_eq!(c, expect);
            assert!(WeylElement::x(m, i).commutator(&WeylElement::x(m, j)).is_zero());
            assert!(WeylElement::d(m, i).commutator(&WeylElement::d(m, j)).is_zero());
        }
    }
}

#[test]
fn fourier_examples() {
    assert_eq!(w("x*dx", 1).fourier(), w("-x*dx - 1", 1));
    assert_eq!(WeylElement::constant(2, q(5)).fourier(), WeylElement::constant(2, q(5)));
}

fn rf(num: &str, den: &str, m: usize) -> RationalFunction {
    RationalFunction::new(parse_poly(num, m).unwrap(), parse_poly(den, m).unwrap())
}

#[test]
fn apply_examples() {
    let f = rf("1", "x", 1);
    assert_eq!(w("x*dx", 1).apply_to_rational(&f).unwrap(), rf("-1", "x", 1));
    let cone = rf("x+z", "x*y*z*(x+y+z)", 3);
    assert!(w("x*dx+y*dy+z*dz+3", 3).apply_to_rational(&cone).unwrap().is_zero());
    assert!(w("dx", 1).apply_to_rational(&rf("1", "1", 1)).unwrap().is_zero());
}

#[test]
fn four_ray_cone_laplace_ideal() {
    // generators of the annihilator of the Laplace transform of the four-ray cone
    let cone = rf("x+z", "x*y*z*(x+y+z)", 3);
    let gens = [
        "x*dx+y*dy+z*dz+3",
        "z*dy*dz-z*dz^2+dy-2*dz",
        "y*z*(dy^2-dz^2)+2*z*dy-2*y*dz-2*z*dz-2",
        "y*z*dx*(dy-dz)+z*(dx-dz)-y*dy-2",
        "y*z*(x+z)*(dy-dz)-x*y+x*z+z^2",
    ];
    for g in gens {
        assert!(w(g, 3).apply_to_rational(&cone).unwrap().is_zero(), "{g}");
    }
    // the space-side generators are their Fourier images
    let space = [
        "x*dx+y*dy+z*dz",
        "(y-z)*z*dz",
        "(y^2-z^2)*dy*dz+2*z*dz",
        "(y-z)*x*dy*dz+(y-x)*dy+z*dz",
        "(z-y)*(dx+dz)*dy*dz+2*dy*dz",
    ];
    let lap = LeftIdeal::grevlex(3, gens.iter().map(|g| w(g, 3)).collect()).unwrap();
    let spc = LeftIdeal::grevlex(3, space.iter().map(|g| w(g, 3).inverse_fourier()).collect()).unwrap();
    assert!(lap.same_as(&spc));
}

#[test]
fn substitution_examples() {
    let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
    let x = w("x1", 2).linear_substitution(&id, &[q(1), q(0)]).unwrap();
    assert_eq!(x, w("x1 + 1", 2));
    let a = vec![vec![q(2), q(0)], vec![q(0), q(1)]];
    let d = w("d1", 2).linear_substitution(&a, &[q(0), q(0)]).unwrap();
    assert_eq!(d, w("d1", 2).scale(&qf(1, 2)));
    let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
    assert_eq!(w("d1", 2).linear_substitution(&sing, &[q(0), q(0)]), Err(WeylError::SingularMatrix));
}

#[test]
fn simplex_vertex_cone_intersection() {
    let a = ideal(2, &["x*dx", "y*dy"]);
    let b = ideal(2, &["(x+y-1)*dx", "y*(dx-dy)"]);
    let c = ideal(2, &["(x+y-1)*dy", "x*(dx-dy)"]);
    let ab = ideal_intersection(&a, &b).unwrap();
    let abc = ideal_intersection(&ab, &c).unwrap();
    let expect = ideal(2, &["x*(x+y-1)*dx", "y*(x+y-1)*dy"]);
    assert!(abc.same_as(&expect));
}

#[test]
fn intersection_of_x_and_d() {
    let i = ideal(1, &["x"]);
    let j = ideal(1, &["dx"]);
    let k = ideal_intersection(&i, &j).unwrap();
    assert!(!k.groebner().is_empty());
    for g in k.groebner() {
        assert!(i.contains(&g).unwrap());
        assert!(j.contains(&g).unwrap());
    }
    for probe in ["x^2*dx^2", "x*dx^2", "dx*x*dx", "x^2*dx^2 + x*dx", "x*dx*x*dx", "dx*x"] {
        let p = w(probe, 1);
        let expect = i.contains(&p).unwrap() && j.contains(&p).unwrap();
        assert_eq!(k.contains(&p).unwrap(), expect, "{probe}");
    }
    let ii = ideal_intersection(&i, &i).unwrap();
    assert!(ii.same_as(&i));
}

fn arb_elem(m: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2 * m), -4i64..5), 0..4).prop_map(move |ts| {
        WeylElement::from_terms(m, ts.into_iter().map(|(e, c)| (e, q(c))))
    })
}

fn arb_poly(m: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..3, m), -4i64..5), 0..3)
        .prop_map(move |ts| Poly::from_terms(m, ts.into_iter().map(|(e, c)| (e, q(c)))))
}

/// Commutative intersection oracle for monomial ideals: generated by pairwise lcms.
fn monomial_lcm_ideal(a: &[Vec<u32>], b: &[Vec<u32>], m: usize) -> LeftIdeal {
    let mut gens = Vec::new();
    for x in a {
        for y in b {
            let e: Vec<u32> = x.iter().zip(y).map(|(p, q)| *p.max(q)).collect();
            let mut full = e.clone();
            full.resize(2 * m, 0);
            gens.push(WeylElement::monomial(m, full, Q::from_integer(1.into())));
        }
    }
    LeftIdeal::grevlex(m, gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn associativity(a in arb_elem(2), b in arb_elem(2), c in arb_elem(2)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn fourier_is_algebra_map(a in arb_elem(2), b in arb_elem(2)) {
        prop_assert_eq!(a.mul(&b).fourier(), a.fourier().mul(&b.fourier()));
        prop_assert_eq!(a.fourier().fourier().fourier().fourier(), a.clone());
        prop_assert_eq!(a.fourier().inverse_fourier(), a);
    }

    #[test]
    fn substitution_preserves_commutators(
        entries in prop::collection::vec(-3i64..4, 4),
        shift in prop::collection::vec(-3i64..4, 2),
        p in arb_elem(2),
        r in arb_elem(2),
    ) {
        let a = vec![vec![q(entries[0]), q(entries[1])], vec![q(entries[2]), q(entries[3])]];
        prop_assume!(entries[0] * entries[3] - entries[1] * entries[2] != 0);
        let b = vec![q(shift[0]), q(shift[1])];
        for i in 0..2 {
            for j in 0..2 {
                let di = WeylElement::d(2, i).linear_substitution(&a, &b).unwrap();
                let xj = WeylElement::x(2, j).linear_substitution(&a, &b).unwrap();
                let expect = if i == j { WeylElement::one(2) } else { WeylElement::zero(2) };
                prop_assert_eq!(di.commutator(&xj), expect);
            }
        }
        let lhs = p.mul(&r).linear_substitution(&a, &b).unwrap();
        let rhs = p.linear_substitution(&a, &b).unwrap().mul(&r.linear_substitution(&a, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_a_module_action(a in arb_elem(2), b in arb_elem(2), num in arb_poly(2), den in arb_poly(2)) {
        prop_assume!(!den.is_zero());
        let f = RationalFunction::new(num, den);
        let lhs = a.mul(&b).apply_to_rational(&f).unwrap();
        let rhs = a.apply_to_rational(&b.apply_to_rational(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_reduce_to_zero(gens in prop::collection::vec(arb_elem(2), 1..3)) {
        let gens: Vec<WeylElement> = gens.into_iter().filter(|g| g.total_degree().unwrap_or(0) <= 3).collect();
        let i = LeftIdeal::grevlex(2, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(i.reduce(g).unwrap().is_zero());
        }
        for g in i.groebner() {
            prop_assert!(i.reduce(&g).unwrap().is_zero());
        }
        let probe = w("x1*d2 + d1^2", 2);
        let r = i.reduce(&probe).unwrap();
        prop_assert_eq!(i.reduce(&r).unwrap(), r);
    }

    #[test]
    fn intersection_members_lie_in_both(
        a in prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..3),
        b in prop::collection::vec(prop::collection::vec(0u32..3, 2), 1..3),
    ) {
        let to_ideal = |ms: &[Vec<u32>]| {
            let gens = ms.iter().map(|e| {
                let mut f = e.clone();
                f.resize(4, 0);
                WeylElement::monomial(2, f, q(1))
            }).collect();
            LeftIdeal::grevlex(2, gens).unwrap()
        };
        let (i, j) = (to_ideal(&a), to_ideal(&b));
        let k = ideal_intersection(&i, &j).unwrap();
        for g in k.groebner() {
            prop_assert!(i.contains(&g).unwrap());
            prop_assert!(j.contains(&g).unwrap());
        }
        prop_assert!(k.same_as(&monomial_lcm_ideal(&a, &b, 2)));
    }
}
