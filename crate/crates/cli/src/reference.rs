//! Published values the suites compare against.

use std::collections::BTreeMap;

use witt_core::truncalg::MultiPoly;

/// Byte-exact rendering of `C` at `p = 5`.
pub const GOLDEN_C_P5: &str = include_str!("../golden/c_p5.txt");

/// The published `p = 5` display of `C`: `(coefficient, [l0..l4 exponents], w exponent)`.
pub const DISPLAYED_C_P5: [(u32, [u16; 5], u16); 14] = [
    (1, [3, 0, 0, 0, 1], 0),
    (2, [2, 1, 0, 1, 0], 0),
    (1, [2, 0, 2, 0, 0], 0),
    (2, [1, 2, 1, 0, 0], 0),
    (1, [0, 4, 0, 0, 0], 0),
    (2, [1, 1, 0, 0, 2], 1),
    (4, [1, 0, 1, 1, 1], 1),
    (4, [1, 0, 0, 3, 0], 1),
    (2, [0, 2, 0, 1, 1], 1),
    (2, [0, 1, 2, 0, 1], 1),
    (2, [0, 1, 1, 2, 0], 1),
    (4, [0, 0, 3, 1, 0], 1),
    (4, [0, 0, 1, 0, 3], 2),
    (1, [0, 0, 0, 2, 2], 2),
];

pub fn displayed_c_p5() -> BTreeMap<Vec<u16>, u32> {
    DISPLAYED_C_P5
        .iter()
        .map(|(c, l, w)| {
            let mut e = l.to_vec();
            e.push(*w);
            (e, *c)
        })
        .collect()
}

/// Monomials whose coefficients differ, as `(monomial, computed, displayed)`.
pub fn c_differences(computed: &MultiPoly, displayed: &BTreeMap<Vec<u16>, u32>) -> Vec<(String, u32, u32)> {
    let mut keys: Vec<&Vec<u16>> = computed.terms().keys().chain(displayed.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .filter_map(|e| {
            let (a, b) = (computed.coeff(e), displayed.get(e).copied().unwrap_or(0));
            (a != b).then(|| (monomial_name(computed.vars(), e), a, b))
        })
        .collect()
}

fn monomial_name(vars: &[String], e: &[u16]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}
