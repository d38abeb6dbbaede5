use serde::{Deserialize, Serialize};

use super::FanData;

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Betti numbers `b_0, ..., b_{2m}` of a complete simplicial toric variety,
/// from `sum_k b_{2k} t^k = sum_{sigma} (t - 1)^{m - dim sigma}` over all
/// cones including the zero cone. Odd Betti numbers vanish.
pub fn betti_numbers(fan: &FanData) -> Vec<i64> {
    let m = fan.dim;
    let mut poincare = vec![0i64; m + 1];
    for cone in fan.all_cones() {
        let e = (m - cone.len()) as u64;
        for k in 0..=e {
            // (t - 1)^e = sum_k C(e, k) t^k (-1)^{e-k}
            let sign = if (e - k).is_multiple_of(2) { 1 } else { -1 };
            poincare[k as usize] += sign * binomial(e, k);
        }
    }
    let mut b = vec![0i64; 2 * m + 1];
    for (k, c) in poincare.into_iter().enumerate() {
        b[2 * k] = c;
    }
    b
}

/// Dimension-level necessary condition for `H^{m-2}(P) -> H^m(P)`, cup with
/// the hypersurface class, to be an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExtraisomStatus {
    /// `m` odd: both groups sit in odd degree and vanish.
    TriviallyHolds,
    /// `b_{m-2} = b_m`; the cup-product map itself is not verified.
    NecessaryConditionOk {
        b_m_minus_2: i64,
        b_m: i64,
    },
    NecessaryConditionFails {
        b_m_minus_2: i64,
        b_m: i64,
    },
}

impl ExtraisomStatus {
    pub fn is_failure(&self) -> bool {
        matches!(self, ExtraisomStatus::NecessaryConditionFails { .. })
    }
}

pub fn extraisom_necessary_check(fan: &FanData, betti: &[i64]) -> ExtraisomStatus {
    let m = fan.dim;
    if m % 2 == 1 {
        return ExtraisomStatus::TriviallyHolds;
    }
    let b_m_minus_2 = betti[m - 2];
    let b_m = betti[m];
    if b_m_minus_2 == b_m {
        ExtraisomStatus::NecessaryConditionOk { b_m_minus_2, b_m }
    } else {
        ExtraisomStatus::NecessaryConditionFails { b_m_minus_2, b_m }
    }
}
