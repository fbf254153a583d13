//! Dense polynomials over `F_p` stored as `Vec<u64>` (low degree first), used
//! to validate extension-field moduli and to build the log/antilog tables of
//! `F_{p^k}`.

use super::FieldError;

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `b` over `F_p`; `b` must be non-zero.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Exhaustive factor search: `f` is irreducible iff no monic polynomial of
/// degree `1..=deg/2` divides it.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let mut f = f.to_vec();
    trim(&mut f);
    if f.is_empty() {
        return false;
    }
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

pub(crate) fn digits(mut code: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

pub(crate) fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Lexicographically first monic irreducible polynomial of degree `k`
/// (low-order coefficients varying fastest). This is the built-in modulus
/// table: deterministic, and cheap for the field sizes in use.
pub fn default_modulus(p: u64, k: usize) -> Vec<u64> {
    let count = p.pow(k as u32);
    for code in 0..count {
        let mut m = digits(code, p, k);
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Multiply two residues mod the monic `modulus`, both as digit vectors of length k.
fn mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &mi) in modulus.iter().take(k).enumerate() {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p - c * mi % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

/// Log/antilog tables for `F_p[x]/(modulus)`.
#[derive(Debug, Clone)]
pub(crate) struct ExtTables {
    pub exp: Vec<u32>,
    pub log: Vec<u32>,
}

pub(crate) const MAX_EXT_ORDER: u64 = 1 << 20;

pub(crate) fn build_tables(p: u64, modulus: &[u64]) -> Result<ExtTables, FieldError> {
    let k = modulus.len() - 1;
    let q = p.pow(k as u32);
    if q > MAX_EXT_ORDER {
        return Err(FieldError::FieldTooLarge { order: q });
    }
    let one = from_digits(&digits(1, p, k), p);
    for cand in 1..q {
        let g = digits(cand, p, k);
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut cur = digits(1, p, k);
        let mut ok = true;
        for i in 0..q - 1 {
            let code = from_digits(&cur, p);
            if i > 0 && code == one {
                ok = false;
                break;
            }
            exp.push(code as u32);
            cur = mul_mod(&cur, &g, modulus, p);
        }
        if ok && from_digits(&cur, p) == one {
            let mut log = vec![u32::MAX; q as usize];
            for (i, &c) in exp.iter().enumerate() {
                log[c as usize] = i as u32;
            }
            return Ok(ExtTables { exp, log });
        }
    }
    Err(FieldError::NotIrreducible)
}
