use std::collections::HashSet;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::Serialize;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::Ring;

use super::{
    add_vec, enumerate_vectors, is_zero_vec, LieError, ResLieAlgebra, Subspace, Vector,
    SEARCH_CAP,
};

/// Subspaces up to this many points get an exhaustive `p`-map double check.
const SUBSPACE_ENUM_CAP: u64 = 10_000;
/// Random vectors used when a domain is too large to enumerate.
const DERIVATION_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PClosed {
    Additive,
    Multiplicative(FieldElement),
    NotClosed,
}

impl ResLieAlgebra {
    /// Joint kernel of all `ad(e_i)`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let zero = self.field().zero();
        let mut rows = Vec::with_capacity(n * n);
        for i in 0..n {
            for r in 0..n {
                rows.push(self.ad_basis(i).row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return Subspace::zero(self.field(), 0);
        }
        let m = Matrix::from_rows(rows, &zero);
        Subspace::span(self.field(), n, &m.kernel())
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_subalgebra(&self) -> Subspace {
        let vs: Vec<Vector> = self.bracket_constants().iter().flatten().cloned().collect();
        Subspace::span(self.field(), self.dim(), &vs)
    }

    fn pmap_closed(&self, s: &Subspace) -> bool {
        if !s.basis().iter().all(|b| s.contains(&self.p_map(b))) {
            return false;
        }
        match s.elements(SUBSPACE_ENUM_CAP) {
            Some(all) => all.iter().all(|v| s.contains(&self.p_map(v))),
            None => true,
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let b = s.basis();
        let closed = b
            .iter()
            .enumerate()
            .all(|(i, x)| b[i + 1..].iter().all(|y| s.contains(&self.bracket_vec(x, y))));
        closed && self.pmap_closed(s)
    }

    /// Ideal in the restricted sense: `[g, S] ⊂ S` and `S^{[p]} ⊂ S`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        self.ideal_witness(s).is_none() && self.pmap_closed(s)
    }

    /// A pair `(basis index of g, basis vector of S)` whose bracket leaves `S`.
    pub fn ideal_witness(&self, s: &Subspace) -> Option<(usize, Vector)> {
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            for b in s.basis() {
                if !s.contains(&self.bracket_vec(&e, b)) {
                    return Some((i, b.clone()));
                }
            }
        }
        None
    }

    /// The smallest subspace containing `v` and stable under every `ad(e_i)`.
    pub fn ideal_generated_by(&self, v: &[FieldElement]) -> Subspace {
        let mut s = Subspace::span(self.field(), self.dim(), &[v.to_vec()]);
        loop {
            let mut vs = s.basis().to_vec();
            for i in 0..self.dim() {
                for b in s.basis() {
                    vs.push(self.ad_basis(i).mul_vec(b));
                }
            }
            let next = Subspace::span(self.field(), self.dim(), &vs);
            if next.dim() == s.dim() {
                return s;
            }
            s = next;
        }
    }
}

/// Whether `d` (a matrix on all of `g`) restricts to a restricted derivation of
/// the subalgebra `domain`: `D(a^{[p]}) = ad_a^{p-1}(D a)`.
///
/// The condition is checked on every vector of the domain when it has at most
/// `10^5` points, otherwise on a fixed-seed random sample.
pub fn is_restricted_derivation(
    g: &ResLieAlgebra,
    d: &Matrix<FieldElement>,
    domain: &Subspace,
) -> Result<bool, LieError> {
    let n = g.dim();
    if d.rows() != n || d.cols() != n || domain.ambient_dim() != n {
        return Err(LieError::BadParams("matrix and domain must match the algebra".into()));
    }
    let basis = domain.basis();
    for b in basis {
        if !domain.contains(&d.mul_vec(b)) {
            return Err(LieError::NotADerivation("does not preserve the domain".into()));
        }
    }
    for x in basis {
        for y in basis {
            let lhs = d.mul_vec(&g.bracket_vec(x, y));
            let rhs = add_vec(&g.bracket_vec(&d.mul_vec(x), y), &g.bracket_vec(x, &d.mul_vec(y)));
            if lhs != rhs {
                return Err(LieError::NotADerivation("Leibniz rule fails on the domain basis".into()));
            }
        }
    }
    let p = g.p();
    let holds = |a: &Vector| {
        let lhs = d.mul_vec(&g.p_map(a));
        let rhs = g.ad(a).pow(p - 1).mul_vec(&d.mul_vec(a));
        lhs == rhs
    };
    match domain.elements(100_000) {
        Some(all) => Ok(all.iter().all(holds)),
        None => {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            let f = g.field();
            Ok((0..DERIVATION_SAMPLES).all(|_| {
                let a = basis.iter().fold(g.zero_vector(), |acc, b| {
                    let c = f.random(&mut rng);
                    add_vec(&acc, &b.iter().map(|x| x.mul(&c)).collect::<Vector>())
                });
                holds(&a)
            }))
        }
    }
}

fn toral_elements(g: &ResLieAlgebra) -> Result<Vec<Vector>, LieError> {
    Ok(g.all_vectors()?
        .into_iter()
        .filter(|v| !is_zero_vec(v) && g.p_map(v) == *v)
        .collect())
}

fn max_torus(g: &ResLieAlgebra, toral: &[Vector], chosen: &mut Vec<usize>, start: usize, best: &mut usize) {
    *best = (*best).max(chosen.len());
    if *best == g.dim() {
        return;
    }
    let span = Subspace::span(
        g.field(),
        g.dim(),
        &chosen.iter().map(|&i| toral[i].clone()).collect::<Vec<_>>(),
    );
    let candidates: Vec<usize> = (start..toral.len())
        .filter(|&j| {
            !span.contains(&toral[j])
                && chosen.iter().all(|&i| is_zero_vec(&g.bracket_vec(&toral[i], &toral[j])))
        })
        .collect();
    if chosen.len() + candidates.len().min(g.dim() - chosen.len()) <= *best {
        return;
    }
    for &j in &candidates {
        chosen.push(j);
        max_torus(g, toral, chosen, j + 1, best);
        chosen.pop();
        if *best == g.dim() {
            return;
        }
    }
}

fn extension_of(g: &ResLieAlgebra, k: usize) -> Result<Arc<ResLieAlgebra>, LieError> {
    let target = if k <= 1 {
        g.field().clone()
    } else {
        FieldDescriptor::extension(g.p(), k).map_err(|e| LieError::BadParams(e.to_string()))?
    };
    let size = target
        .order()
        .ok_or(LieError::InfiniteField)?
        .checked_pow(g.dim() as u32)
        .unwrap_or(u64::MAX);
    if size > SEARCH_CAP {
        return Err(LieError::SearchSpaceTooLarge { size, cap: SEARCH_CAP });
    }
    g.base_change(&target)
}

/// Largest `r` with `r` independent, pairwise commuting toral vectors over `F_{p^k}`.
pub fn toral_rank_lower_bound(g: &ResLieAlgebra, k: usize) -> Result<usize, LieError> {
    let h = extension_of(g, k)?;
    let toral = toral_elements(&h)?;
    let mut best = 0;
    max_torus(&h, &toral, &mut Vec::new(), 0, &mut best);
    Ok(best)
}

/// Whether some `nu <= nu_max` has `x^{[p^nu]} = 0` for every vector.
pub fn is_unipotent(g: &ResLieAlgebra, nu_max: usize) -> Result<bool, LieError> {
    for v in g.all_vectors()? {
        let mut x = v;
        let mut nu = 0;
        while !is_zero_vec(&x) {
            if nu == nu_max {
                return Ok(false);
            }
            x = g.p_map(&x);
            nu += 1;
        }
    }
    Ok(true)
}

/// Isomorphism-invariant summary of a restricted Lie algebra over `F_{p^k}`.
/// The vector counts range over non-zero vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub center_dim: usize,
    pub derived_dim: usize,
    pub toral_rank: usize,
    pub additive: u64,
    pub multiplicative: u64,
    pub non_closed: u64,
    pub ext_degree: usize,
}

pub fn fingerprint(g: &ResLieAlgebra, k: usize) -> Result<Fingerprint, LieError> {
    let h = extension_of(g, k)?;
    let (mut additive, mut multiplicative, mut non_closed) = (0, 0, 0);
    let mut toral = Vec::new();
    for v in h.all_vectors()? {
        if is_zero_vec(&v) {
            continue;
        }
        match h.is_p_closed(&v) {
            PClosed::Additive => additive += 1,
            PClosed::Multiplicative(c) => {
                multiplicative += 1;
                if c.is_one() {
                    toral.push(v);
                }
            }
            PClosed::NotClosed => non_closed += 1,
        }
    }
    let mut toral_rank = 0;
    max_torus(&h, &toral, &mut Vec::new(), 0, &mut toral_rank);
    Ok(Fingerprint {
        dim: h.dim(),
        center_dim: h.center().dim(),
        derived_dim: h.derived_subalgebra().dim(),
        toral_rank,
        additive,
        multiplicative,
        non_closed,
        ext_degree: k.max(1),
    })
}

#[derive(Debug, Clone)]
pub struct SubalgebraRecord {
    pub subspace: Subspace,
    /// `Some(true)` when the subalgebra is not contained in the designated subspace.
    pub transitive: Option<bool>,
    pub fingerprint: Fingerprint,
}

/// Every echelon basis over a finite field with the given pivot columns.
fn echelon_forms(field: &Arc<FieldDescriptor>, n: usize, pivots: &[usize]) -> Result<Vec<Vec<Vector>>, LieError> {
    let free: Vec<(usize, usize)> = pivots
        .iter()
        .enumerate()
        .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
        .collect();
    let fills = enumerate_vectors(field, free.len(), SEARCH_CAP)?;
    Ok(fills
        .into_iter()
        .map(|fill| {
            let mut rows = vec![vec![field.zero(); n]; pivots.len()];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = field.one();
            }
            for (&(r, c), x) in free.iter().zip(fill) {
                rows[r][c] = x;
            }
            rows
        })
        .collect())
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// All restricted subalgebras of `g` (over `F_p`, `dim g <= 5`, `p <= 5`) in
/// echelon-lex order, each with its fingerprint over `F_{p^k}`.
pub fn subalgebra_enumeration(
    g: &ResLieAlgebra,
    designated: Option<&Subspace>,
    k: usize,
) -> Result<Vec<SubalgebraRecord>, LieError> {
    if g.dim() > 5 || g.p() > 5 {
        return Err(LieError::BadParams("subalgebra enumeration needs dim <= 5 and p <= 5".into()));
    }
    if !matches!(g.field().kind(), crate::fields::FieldKind::Prime) {
        return Err(LieError::BadParams("subalgebra enumeration runs over F_p".into()));
    }
    let n = g.dim();
    let mut out = Vec::new();
    for d in 0..=n {
        for pivots in combinations(n, d) {
            for rows in echelon_forms(g.field(), n, &pivots)? {
                let s = Subspace::from_rref(g.field(), n, rows);
                if !g.is_subalgebra(&s) {
                    continue;
                }
                let fp = fingerprint(&*g.restrict_to(&s)?, k)?;
                let transitive = designated.map(|r| !s.is_subset_of(r));
                out.push(SubalgebraRecord { subspace: s, transitive, fingerprint: fp });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct AutomorphismReport {
    pub count: u64,
    /// Greedy generating set: each entry lies outside the group generated by the earlier ones.
    pub generators: Vec<Matrix<FieldElement>>,
}

/// Invertible matrices over `field` preserving the bracket and `p`-map constants
/// of `g` (base changed to `field`).
pub fn automorphism_points(
    g: &ResLieAlgebra,
    field: &Arc<FieldDescriptor>,
) -> Result<AutomorphismReport, LieError> {
    let n = g.dim();
    if n > 3 {
        return Err(LieError::BadParams("automorphism search needs dim <= 3".into()));
    }
    let q = field.order().ok_or(LieError::InfiniteField)?;
    let size = q.checked_pow((n * n) as u32).unwrap_or(u64::MAX);
    if size > 100_000_000 {
        return Err(LieError::SearchSpaceTooLarge { size, cap: 100_000_000 });
    }
    let h = g.base_change(field)?;
    let columns = enumerate_vectors(field, n, SEARCH_CAP)?;
    let support = |v: &Vector| -> usize { v.iter().rposition(|x| !x.is_zero()).map_or(0, |i| i + 1) };
    let mut found = Vec::new();
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    search_columns(&h, &columns, &support, &mut cols, &mut found);
    let zero = field.zero();
    let mats: Vec<Matrix<FieldElement>> = found.iter().map(|c| Matrix::from_cols(c, n, &zero)).collect();
    let count = mats.len() as u64;
    let mut generators = Vec::new();
    let mut group: HashSet<Vec<FieldElement>> = HashSet::new();
    group.insert(Matrix::identity(n, &zero).entries().to_vec());
    for m in &mats {
        if group.contains(m.entries()) {
            continue;
        }
        generators.push(m.clone());
        group = closure(&generators, n, &zero);
    }
    Ok(AutomorphismReport { count, generators })
}

fn closure(gens: &[Matrix<FieldElement>], n: usize, zero: &FieldElement) -> HashSet<Vec<FieldElement>> {
    let id = Matrix::identity(n, zero);
    let mut seen: HashSet<Vec<FieldElement>> = HashSet::new();
    seen.insert(id.entries().to_vec());
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in gens {
            let x = m.mul(g);
            if seen.insert(x.entries().to_vec()) {
                frontier.push(x);
            }
        }
    }
    seen
}

fn apply_partial(cols: &[Vector], v: &[FieldElement], zero: &FieldElement) -> Vector {
    let mut out = vec![zero.clone(); v.len()];
    for (c, col) in v.iter().zip(cols) {
        if !c.is_zero() {
            out = add_vec(&out, &col.iter().map(|x| x.mul(c)).collect::<Vector>());
        }
    }
    out
}

fn search_columns(
    g: &ResLieAlgebra,
    columns: &[Vector],
    support: &dyn Fn(&Vector) -> usize,
    cols: &mut Vec<Vector>,
    found: &mut Vec<Vec<Vector>>,
) {
    let n = g.dim();
    let zero = g.field().zero();
    if cols.len() == n {
        if Matrix::from_cols(cols, n, &zero).rank() == n {
            found.push(cols.clone());
        }
        return;
    }
    for c in columns {
        cols.push(c.clone());
        if determined_constraints_hold(g, cols, support, &zero) {
            search_columns(g, columns, support, cols, found);
        }
        cols.pop();
    }
}

/// Checks `A[e_a, e_b] = [A e_a, A e_b]` and `A e_a^{[p]} = (A e_a)^{[p]}` for
/// every constraint already fixed by the chosen columns.
fn determined_constraints_hold(
    g: &ResLieAlgebra,
    cols: &[Vector],
    support: &dyn Fn(&Vector) -> usize,
    zero: &FieldElement,
) -> bool {
    let k = cols.len();
    for a in 0..k {
        for b in a + 1..k {
            let target = &g.bracket_constants()[a][b];
            if support(target) <= k && g.bracket_vec(&cols[a], &cols[b]) != apply_partial(cols, target, zero) {
                return false;
            }
        }
        let m = &g.pmap_constants()[a];
        if support(m) <= k && g.p_map(&cols[a]) != apply_partial(cols, m, zero) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslie::{standard_algebra, StandardAlgebra};

    fn std(name: StandardAlgebra, p: u64) -> Arc<ResLieAlgebra> {
        standard_algebra(&name, &FieldDescriptor::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn sl2_centers() {
        assert_eq!(std(StandardAlgebra::Sl(2), 3).center().dim(), 0);
        let g = std(StandardAlgebra::Sl(2), 2);
        let z = g.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&g.basis_vector(0)));
    }

    #[test]
    fn restricted_derivations_of_gl1() {
        let g = std(StandardAlgebra::Gl1, 5);
        let full = Subspace::full(g.field(), 1);
        for c in 0..5 {
            let d = Matrix::identity(1, &g.field().zero()).scale(&g.field().from_int(c));
            assert_eq!(is_restricted_derivation(&g, &d, &full).unwrap(), c == 0);
        }
    }

    #[test]
    fn inner_derivations_are_restricted() {
        let g = std(StandardAlgebra::Sl(2), 3);
        let full = Subspace::full(g.field(), 3);
        for i in 0..3 {
            assert!(is_restricted_derivation(&g, g.ad_basis(i), &full).unwrap());
        }
    }

    #[test]
    fn toral_ranks() {
        assert_eq!(toral_rank_lower_bound(&std(StandardAlgebra::Trivial(2), 3), 1).unwrap(), 0);
        assert_eq!(toral_rank_lower_bound(&std(StandardAlgebra::SemidirectKnGl1(2), 3), 1).unwrap(), 1);
        assert_eq!(toral_rank_lower_bound(&std(StandardAlgebra::Gl(2), 2), 1).unwrap(), 2);
    }

    #[test]
    fn unipotence() {
        assert!(is_unipotent(&std(StandardAlgebra::Trivial(2), 3), 1).unwrap());
        assert!(!is_unipotent(&std(StandardAlgebra::Gl1, 3), 3).unwrap());
    }

    #[test]
    fn fingerprints_separate_small_algebras() {
        let f = fingerprint(&std(StandardAlgebra::Sl(2), 3), 1).unwrap();
        assert_eq!((f.dim, f.center_dim, f.derived_dim), (3, 0, 3));
        let f = fingerprint(&std(StandardAlgebra::SemidirectKnGl1(1), 3), 1).unwrap();
        assert_eq!((f.dim, f.center_dim, f.derived_dim), (2, 0, 1));
    }

    #[test]
    fn trivial_plane_has_five_subalgebras_over_f2() {
        let g = std(StandardAlgebra::Trivial(2), 2);
        assert_eq!(subalgebra_enumeration(&g, None, 1).unwrap().len(), 5);
    }

    #[test]
    fn automorphism_counts() {
        for (p, k) in [(3u64, 1usize), (3, 2), (5, 1), (5, 2)] {
            let f = FieldDescriptor::extension(p, k).unwrap();
            let q = f.order().unwrap();
            let gl1 = std(StandardAlgebra::Gl1, p);
            assert_eq!(automorphism_points(&gl1, &f).unwrap().count, gcd(p - 1, q - 1));
            let t = std(StandardAlgebra::Trivial(1), p);
            assert_eq!(automorphism_points(&t, &f).unwrap().count, q - 1);
        }
        let s = std(StandardAlgebra::SemidirectKnGl1(1), 2);
        assert_eq!(automorphism_points(&s, &FieldDescriptor::prime(2).unwrap()).unwrap().count, 2);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
}
