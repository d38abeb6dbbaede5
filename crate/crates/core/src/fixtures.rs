//! Built-in fans and polynomials.
//!
//! Projective-bundle ray layouts are derived from their degree relations:
//! the two degree columns must annihilate the ray matrix, which
//! [`Fixture::check_relations`] re-verifies on construction.

use crate::report::{FanInput, RunConfig, RunOptions, SCHEMA_VERSION};
use crate::toric::FanData;

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub fan: FanData,
    pub variables: Vec<String>,
    pub polynomial: String,
    /// Variable sets whose vanishing should leave every partial zero.
    pub crit_subspaces: Vec<Vec<String>>,
    /// Reference variable degrees, compared up to unimodular transform.
    pub expected_degrees: Option<Vec<Vec<i64>>>,
    /// Negative control.
    pub expected_fail: bool,
    pub max_degree_a: Option<usize>,
}

pub const NAMES: &[&str] = &[
    "projective-3",
    "projective-4",
    "projective-5",
    "product-p1p1",
    "bundle-p2",
    "bundle-p6",
    "weighted-p112",
    "hirzebruch-3",
    "degenerate-cubic",
];

fn unit(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn power_sum(vars: &[String], d: u32) -> String {
    vars.iter().map(|v| format!("{v}^{d}")).collect::<Vec<_>>().join(" + ")
}

impl Fixture {
    fn new(name: &str, fan: FanData, variables: Vec<String>, polynomial: String) -> Self {
        Fixture {
            name: name.to_string(),
            fan,
            variables,
            polynomial,
            crit_subspaces: Vec::new(),
            expected_degrees: None,
            expected_fail: false,
            max_degree_a: None,
        }
    }

    /// True when every declared degree column annihilates the ray matrix.
    pub fn check_relations(&self) -> bool {
        let Some(deg) = &self.expected_degrees else {
            return true;
        };
        let k = deg.first().map_or(0, Vec::len);
        (0..k).all(|c| {
            (0..self.fan.dim).all(|j| {
                deg.iter()
                    .zip(&self.fan.rays)
                    .map(|(d, ray)| d[c] * ray[j])
                    .sum::<i64>()
                    == 0
            })
        })
    }

    pub fn to_config(&self) -> RunConfig {
        RunConfig {
            schema_version: SCHEMA_VERSION,
            name: Some(self.name.clone()),
            fan: FanInput {
                dim: self.fan.dim,
                rays: self.fan.rays.clone(),
                max_cones: self.fan.max_cones.clone(),
            },
            variables: self.variables.clone(),
            polynomial: self.polynomial.clone(),
            crit_subspaces: self.crit_subspaces.clone(),
            expected_degrees: self.expected_degrees.clone(),
            options: RunOptions {
                max_degree_a: self.max_degree_a,
                ..RunOptions::default()
            },
        }
    }
}

/// `P^{r-1}` with the Fermat polynomial `sum z_i^r`.
pub fn projective(r: usize) -> Option<Fixture> {
    if r < 3 {
        return None;
    }
    let m = r - 1;
    let mut rays: Vec<Vec<i64>> = (0..m).map(|i| unit(m, i)).collect();
    rays.push(vec![-1; m]);
    let cones = (0..r).map(|skip| (0..r).filter(|&i| i != skip).collect()).collect();
    let fan = FanData::new(m, rays, cones).expect("projective fan");
    let vars = names("z", r);
    let poly = power_sum(&vars, r as u32);
    let mut fx = Fixture::new(&format!("projective-{r}"), fan, vars, poly);
    fx.expected_degrees = Some(vec![vec![1]; r]);
    Some(fx)
}

/// `P^1 x P^1` with `x0^2 y0^2 + x1^2 y1^2 + x0 x1 y0 y1`.
pub fn product_p1p1() -> Fixture {
    let fan = FanData::new(
        2,
        vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
        vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]],
    )
    .expect("product fan");
    let vars = vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()];
    let mut fx = Fixture::new("product-p1p1", fan, vars, "x0^2*y0^2 + x1^2*y1^2 + x0*x1*y0*y1".into());
    fx.expected_degrees = Some(vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]]);
    fx
}

/// Maximal cones of a `P^1`-bundle over `P^n`: all but one base ray plus
/// one of the two fiber rays (indices `n+1`, `n+2`).
fn bundle_cones(n: usize) -> Vec<Vec<usize>> {
    let mut cones = Vec::new();
    for skip in 0..=n {
        for y in [n + 1, n + 2] {
            let mut c: Vec<usize> = (0..=n).filter(|&i| i != skip).collect();
            c.push(y);
            cones.push(c);
        }
    }
    cones
}

/// Rays of `P(O ⊕ O(k))`-type bundles over `P^n` with fiber relation
/// `rho_{y1} + rho_{y2} = 0` and base relation
/// `sum rho_{x_i} = -e_{n+1}`, so that a degree column `(1,..,1, a, b)` with
/// `a - b = 1` annihilates the rays.
fn bundle_rays(n: usize) -> Vec<Vec<i64>> {
    let dim = n + 1;
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(dim, i)).collect();
    rays.push(vec![-1; dim]);
    rays.push(unit(dim, n));
    let mut down = vec![0; dim];
    down[n] = -1;
    rays.push(down);
    rays
}

/// `P(O ⊕ O(1))` over `P^2` with `f = y1^2 u(x) + y2^2 v(x)`, `u` a quadric
/// and `v` a quartic with fixed coefficients.
pub fn bundle_p2() -> Fixture {
    let fan = FanData::new(3, bundle_rays(2), bundle_cones(2)).expect("bundle fan");
    let mut vars = names("x", 3);
    vars.extend(["y1".to_string(), "y2".to_string()]);
    let u = "5*x0^2 - 2*x0*x1 + 3*x0*x2 + 5*x1^2 + 5*x1*x2 + 5*x2^2";
    let v = "x0^4 - x0^3*x1 - 2*x0^3*x2 + 2*x0^2*x1^2 + x0^2*x1*x2 + 7*x0^2*x2^2 + 5*x0*x1^3 \
             - 2*x0*x1^2*x2 + 2*x0*x1*x2^2 + 3*x0*x2^3 + 2*x1^4 + x1^3*x2 - x1^2*x2^2 + 5*x1*x2^3 + x2^4";
    let poly = format!("y1^2*({u}) + y2^2*({v})");
    let mut fx = Fixture::new("bundle-p2", fan, vars, poly);
    fx.crit_subspaces = vec![vec!["y1".into(), "y2".into()], names("x", 3)];
    fx.expected_degrees = Some(vec![vec![1, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![-1, 1]]);
    fx
}

/// `P(O(2) ⊕ O(3))` over `P^6` with `f = y1^2 sum x_i^6 + y2^2 sum x_i^8`.
/// The degrees `x_i:(1,0)`, `y1:(-2,1)`, `y2:(-3,1)` give the relations
/// `sum rho_{x_i} - 2 rho_{y1} - 3 rho_{y2} = 0` and `rho_{y1} + rho_{y2} = 0`.
pub fn bundle_p6() -> Fixture {
    let fan = FanData::new(7, bundle_rays(6), bundle_cones(6)).expect("bundle fan");
    let xs = names("x", 7);
    let mut vars = xs.clone();
    vars.extend(["y1".to_string(), "y2".to_string()]);
    let poly = format!("y1^2*({}) + y2^2*({})", power_sum(&xs, 6), power_sum(&xs, 8));
    let mut fx = Fixture::new("bundle-p6", fan, vars, poly);
    fx.crit_subspaces = vec![vec!["y1".into(), "y2".into()], xs];
    let mut deg = vec![vec![1, 0]; 7];
    deg.extend([vec![-2, 1], vec![-3, 1]]);
    fx.expected_degrees = Some(deg);
    fx.max_degree_a = Some(1);
    fx
}

/// `P(1,1,2)` with `x^4 + y^4 + z^2`. The rays are ordered so that the
/// variables `x, y, z` have degrees `1, 1, 2`.
pub fn weighted_p112() -> Fixture {
    let fan = FanData::new(
        2,
        vec![vec![1, 0], vec![-1, -2], vec![0, 1]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .expect("weighted fan");
    let vars = vec!["x".into(), "y".into(), "z".into()];
    let mut fx = Fixture::new("weighted-p112", fan, vars, "x^4 + y^4 + z^2".into());
    fx.expected_degrees = Some(vec![vec![1], vec![1], vec![2]]);
    fx
}

/// Hirzebruch surface `F_3`; its anti-canonical class is not ample.
pub fn hirzebruch3() -> Fixture {
    let fan = FanData::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, 3], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .expect("hirzebruch fan");
    let vars = names("z", 4);
    let mut fx = Fixture::new("hirzebruch-3", fan, vars, "z0*z1*z2*z3 + z0^2*z1*z3".into());
    fx.expected_fail = true;
    fx
}

/// `f = x^3` on `P^2`, whose Jacobian quotient has no one-dimensional socle.
pub fn degenerate_cubic() -> Fixture {
    let mut fx = projective(3).unwrap();
    fx.name = "degenerate-cubic".into();
    fx.polynomial = "z0^3".into();
    fx.expected_fail = true;
    fx
}

pub fn by_name(name: &str) -> Option<Fixture> {
    match name {
        "product-p1p1" => Some(product_p1p1()),
        "bundle-p2" => Some(bundle_p2()),
        "bundle-p6" => Some(bundle_p6()),
        "weighted-p112" => Some(weighted_p112()),
        "hirzebruch-3" => Some(hirzebruch3()),
        "degenerate-cubic" => Some(degenerate_cubic()),
        _ => name.strip_prefix("projective-")?.parse().ok().and_then(projective),
    }
}
