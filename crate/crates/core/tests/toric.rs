use lgfrob::fixtures::{self, Fixture};
use lgfrob::lattice::smith_normal_form;
use lgfrob::matrix::{integer_determinant, Matrix};
use lgfrob::toric::{
    anticanonical_polytope, betti_numbers, class_group, extraisom_necessary_check, monomial_basis, normalized_volume,
    validate_fan, ExtraisomStatus, FanData, Witness,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn positive() -> Vec<Fixture> {
    vec![
        fixtures::projective(3).unwrap(),
        fixtures::projective(4).unwrap(),
        fixtures::projective(5).unwrap(),
        fixtures::product_p1p1(),
        fixtures::bundle_p2(),
        fixtures::bundle_p6(),
        fixtures::weighted_p112(),
    ]
}

fn p2() -> FanData {
    fixtures::projective(3).unwrap().fan
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lattice points of `{u : <u, rho> >= -t}` inside the cube of the given
/// radius, counted by brute force.
fn sweep(rays: &[Vec<i64>], dim: usize, t: i64, radius: i64) -> (u64, bool) {
    let mut count = 0;
    let mut touches = false;
    let mut p = vec![-radius; dim];
    loop {
        if rays.iter().all(|r| dot(&p, r) >= -t) {
            count += 1;
            touches |= p.iter().any(|x| x.abs() == radius);
        }
        let mut k = 0;
        loop {
            if k == dim {
                return (count, touches);
            }
            if p[k] < radius {
                p[k] += 1;
                break;
            }
            p[k] = -radius;
            k += 1;
        }
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn p2_class_group() {
    let fan = p2();
    let snf = smith_normal_form(&fan.ray_matrix());
    assert_eq!(snf.diagonal(), vec![1, 1]);
    let g = class_group(&fan).unwrap();
    assert_eq!(g.rank(), 1);
    assert_eq!(
        (0..3).map(|i| g.variable_degree(i).to_vec()).collect::<Vec<_>>(),
        vec![vec![1]; 3]
    );
    assert_eq!(g.beta(), &[3]);
}

#[test]
fn weighted_class_group() {
    let g = class_group(&fixtures::weighted_p112().fan).unwrap();
    let degs: Vec<i64> = (0..3).map(|i| g.variable_degree(i)[0]).collect();
    assert_eq!((degs, g.beta().to_vec()), (vec![1, 1, 2], vec![4]));
    // the ray order (1,0),(0,1),(-1,-2) puts the weight-2 variable in the middle
    let fan = FanData::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -2]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .unwrap();
    let g = class_group(&fan).unwrap();
    let degs: Vec<i64> = (0..3).map(|i| g.variable_degree(i)[0]).collect();
    assert_eq!((degs, g.beta().to_vec()), (vec![1, 2, 1], vec![4]));
}

#[test]
fn gale_duality_on_fixtures() {
    for fx in positive() {
        let g = class_group(&fx.fan).unwrap();
        let q = g.degree_matrix();
        for c in 0..g.rank() {
            for j in 0..fx.fan.dim {
                let s: i64 = (0..g.num_vars()).map(|i| q[(i, c)] * fx.fan.rays[i][j]).sum();
                assert_eq!(s, 0, "{}", fx.name);
            }
        }
        assert!(g.gale_duality_holds(&fx.fan));
        // the degrees generate the whole class group
        assert!(smith_normal_form(q).diagonal().iter().all(|d| *d == 1), "{}", fx.name);
        let beta: Vec<i64> = (0..g.rank())
            .map(|c| (0..g.num_vars()).map(|i| q[(i, c)]).sum())
            .collect();
        assert_eq!(g.beta(), &beta[..]);
    }
}

#[test]
fn validation_examples() {
    assert!(validate_fan(&p2()).all_pass());
    let h = validate_fan(&fixtures::hirzebruch3().fan);
    assert!(h.simplicial.pass && h.complete_criterion.pass && h.gorenstein.pass);
    assert!(!h.ample.pass);
    assert_eq!(
        h.ample.witness,
        Some(Witness::Pairing {
            cone: 0,
            ray: 2,
            value: "-2".into()
        })
    );
    let mut fan = p2();
    fan.max_cones.pop();
    let v = validate_fan(&fan);
    assert!(!v.complete_criterion.pass);
    assert!(matches!(v.complete_criterion.witness, Some(Witness::RidgeCount { .. })));
}

#[test]
fn vertices_touch_exactly_their_cone() {
    for fx in positive() {
        let poly = anticanonical_polytope(&fx.fan).unwrap();
        for (k, cone) in fx.fan.max_cones.iter().enumerate() {
            let m = &poly.cone_vertex[k];
            for (j, ray) in fx.fan.rays.iter().enumerate() {
                let v = dot(m, ray);
                assert!(v >= -1, "{}", fx.name);
                assert_eq!(v == -1, cone.contains(&j), "{} cone {k} ray {j}", fx.name);
            }
        }
    }
}

#[test]
fn polytope_examples() {
    let p1 = FanData::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
    let poly = anticanonical_polytope(&p1).unwrap();
    assert_eq!(poly.vertices, vec![vec![-1], vec![1]]);
    assert_eq!(normalized_volume(&poly).unwrap(), 2);
    let poly = anticanonical_polytope(&p2()).unwrap();
    assert_eq!(poly.vertices, vec![vec![-1, -1], vec![-1, 2], vec![2, -1]]);
    assert_eq!(normalized_volume(&poly).unwrap(), 9);
    let poly = anticanonical_polytope(&fixtures::product_p1p1().fan).unwrap();
    assert_eq!(poly.vertices, vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]);
    assert_eq!(normalized_volume(&poly).unwrap(), 8);
}

#[test]
fn volume_matches_ehrhart_difference() {
    // the m-th finite difference of t -> #(tΔ ∩ Z^m) at 0 is m!·Vol(Δ)
    for fx in positive().into_iter().filter(|f| f.fan.dim <= 4) {
        let m = fx.fan.dim as i64;
        let poly = anticanonical_polytope(&fx.fan).unwrap();
        let r = poly.vertices.iter().flatten().map(|x| x.abs()).max().unwrap();
        let mut diff = 0;
        for t in 0..=m {
            let (n, touches) = sweep(&fx.fan.rays, fx.fan.dim, t, t * r + 1);
            assert!(!touches);
            diff += (-1i64).pow((m - t) as u32) * binomial(m, t) * n as i64;
        }
        assert_eq!(diff as u64, normalized_volume(&poly).unwrap(), "{}", fx.name);
    }
}

#[test]
fn monomial_count_matches_lattice_sweep() {
    for fx in positive().into_iter().filter(|f| f.fan.dim <= 4) {
        let g = class_group(&fx.fan).unwrap();
        let poly = anticanonical_polytope(&fx.fan).unwrap();
        let r = poly.vertices.iter().flatten().map(|x| x.abs()).max().unwrap();
        for a in 0..=3 {
            let basis = monomial_basis(&g, &fx.fan, &g.beta_multiple(a)).unwrap();
            let (n, touches) = sweep(&fx.fan.rays, fx.fan.dim, a, a * r + 1);
            assert!(!touches);
            assert_eq!(basis.len() as u64, n, "{} a={a}", fx.name);
            assert!(basis
                .iter()
                .all(|m| g.exponent_degree(m.exponents()) == g.beta_multiple(a)));
            assert!(basis.windows(2).all(|w| w[0] > w[1]), "descending order");
        }
    }
}

#[test]
fn monomial_count_examples() {
    let g = class_group(&p2()).unwrap();
    assert_eq!(monomial_basis(&g, &p2(), &[3]).unwrap().len(), 10);
    let fx = fixtures::product_p1p1();
    let g = class_group(&fx.fan).unwrap();
    assert_eq!(monomial_basis(&g, &fx.fan, g.beta()).unwrap().len(), 9);
    let fx = fixtures::bundle_p2();
    let g = class_group(&fx.fan).unwrap();
    let n: i64 = (0..=2).map(|b| binomial(2 + b + 2, 2)).sum();
    assert_eq!(monomial_basis(&g, &fx.fan, g.beta()).unwrap().len() as i64, n);
    assert_eq!(n, 31);
}

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> Matrix<i64> {
    let mut t = Matrix::<i64>::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            if rng.gen_bool(0.5) {
                for c in 0..n {
                    t[(i, c)] = -t[(i, c)];
                }
            }
            continue;
        }
        let k = rng.gen_range(-2..3);
        for c in 0..n {
            let v = t[(j, c)] * k;
            t[(i, c)] += v;
        }
    }
    t
}

#[test]
fn invariants_survive_unimodular_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for fx in positive() {
        let vol = normalized_volume(&anticanonical_polytope(&fx.fan).unwrap()).unwrap();
        let g = class_group(&fx.fan).unwrap();
        for _ in 0..5 {
            let t = random_unimodular(&mut rng, fx.fan.dim);
            assert_eq!(integer_determinant(&t).abs(), 1);
            let rays = fx.fan.rays.iter().map(|r| t.mul_vec(r)).collect();
            let fan = FanData::new(fx.fan.dim, rays, fx.fan.max_cones.clone()).unwrap();
            assert!(validate_fan(&fan).all_pass(), "{}", fx.name);
            assert_eq!(
                normalized_volume(&anticanonical_polytope(&fan).unwrap()).unwrap(),
                vol,
                "{}",
                fx.name
            );
            assert_eq!(class_group(&fan).unwrap().degree_matrix(), g.degree_matrix());
            assert_eq!(betti_numbers(&fan), betti_numbers(&fx.fan));
        }
    }
}

#[test]
fn betti_examples_and_duality() {
    assert_eq!(betti_numbers(&p2()), vec![1, 0, 1, 0, 1]);
    let p1 = FanData::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).unwrap();
    assert_eq!(betti_numbers(&p1), vec![1, 0, 1]);
    // (1 + t + ... + t^6)(1 + t)
    let mut expected = vec![0; 15];
    for i in 0..7 {
        expected[2 * i] += 1;
        expected[2 * i + 2] += 1;
    }
    assert_eq!(betti_numbers(&fixtures::bundle_p6().fan), expected);
    for fx in positive().into_iter().chain([fixtures::hirzebruch3()]) {
        let b = betti_numbers(&fx.fan);
        let mut rev = b.clone();
        rev.reverse();
        assert_eq!(b, rev, "{}", fx.name);
        assert_eq!(b[2], fx.variables.len() as i64 - fx.fan.dim as i64, "{}", fx.name);
    }
}

#[test]
fn extraisom_examples() {
    let p6 = fixtures::bundle_p6().fan;
    assert_eq!(
        extraisom_necessary_check(&p6, &betti_numbers(&p6)),
        ExtraisomStatus::TriviallyHolds
    );
    assert_eq!(
        extraisom_necessary_check(&p2(), &betti_numbers(&p2())),
        ExtraisomStatus::NecessaryConditionOk { b_m_minus_2: 1, b_m: 1 }
    );
    let p3 = fixtures::projective(4).unwrap().fan;
    assert_eq!(
        extraisom_necessary_check(&p3, &betti_numbers(&p3)),
        ExtraisomStatus::TriviallyHolds
    );
}

#[test]
fn bundle_p6_grading() {
    let fx = fixtures::bundle_p6();
    let g = class_group(&fx.fan).unwrap();
    let t = g
        .unimodular_transform_to(fx.expected_degrees.as_ref().unwrap())
        .unwrap();
    assert_eq!(t.mul_vec(g.beta()), vec![2, 2]);
}
