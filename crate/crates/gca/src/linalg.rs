//! Exact sparse Gaussian elimination over Q(i) with canonical pivoting.
//!
//! Rows are sparse vectors keyed by an ordered coordinate type; pivots are
//! always chosen in ascending key order, so reduced echelon forms (and hence
//! all solver output bases) are canonical regardless of row order or
//! internal scheduling.

use std::collections::BTreeMap;

use crate::scalar::GaussianRational;

/// A sparse vector over an ordered coordinate type. Never stores zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct SparseVec<K: Ord + Clone> {
    terms: BTreeMap<K, GaussianRational>,
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }

    pub fn unit(k: K) -> Self {
        let mut v = SparseVec::new();
        v.insert_add(k, GaussianRational::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&GaussianRational> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &GaussianRational)> {
        self.terms.iter()
    }

    /// Leading (smallest-key) entry.
    pub fn lead(&self) -> Option<(&K, &GaussianRational)> {
        self.terms.iter().next()
    }

    pub fn insert_add(&mut self, k: K, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &GaussianRational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.terms.iter() {
            self.insert_add(k.clone(), c * v);
        }
    }

    pub fn scale(&mut self, c: &GaussianRational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v = &*v * c;
        }
    }

    /// Keeps only the entries whose key satisfies the predicate.
    pub fn filter_keys(&self, keep: impl Fn(&K) -> bool) -> Self {
        SparseVec {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn map_keys<K2: Ord + Clone>(&self, f: impl Fn(&K) -> K2) -> SparseVec<K2> {
        let mut out = SparseVec::new();
        for (k, v) in self.terms.iter() {
            out.insert_add(f(k), v.clone());
        }
        out
    }
}

/// A matrix in reduced row echelon form: rows sorted by strictly increasing
/// pivot key, each row monic at its pivot, and every pivot column cleared
/// from all other rows. The RREF of a row span is unique, which makes all
/// bases derived from it canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Rref<K: Ord + Clone> {
    rows: Vec<SparseVec<K>>,
}

impl<K: Ord + Clone> Rref<K> {
    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.iter().map(|r| r.lead().expect("rref rows are nonzero").0)
    }

    /// Remainder of `v` after elimination against the rows.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        for row in &self.rows {
            let p = row.lead().expect("rref rows are nonzero").0.clone();
            if let Some(c) = v.get(&p) {
                let c = -c;
                v.axpy(&c, row);
            }
        }
        v
    }

    /// True when `v` lies in the row span.
    pub fn contains(&self, v: SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Wraps rows that are already in reduced echelon form (debug-checked).
    pub fn from_canonical_rows(rows: Vec<SparseVec<K>>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0].lead().unwrap().0 < w[1].lead().unwrap().0));
        Rref { rows }
    }
}

/// Reduced row echelon form of arbitrary rows, by incremental elimination
/// followed by back-substitution.
pub(crate) fn rref<K: Ord + Clone>(rows: impl IntoIterator<Item = SparseVec<K>>) -> Rref<K> {
    // Forward phase: keep one monic row per pivot key.
    let mut echelon: BTreeMap<K, SparseVec<K>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((k, c)) = row.lead().map(|(k, c)| (k.clone(), c.clone())) else {
                break;
            };
            match echelon.get(&k) {
                Some(pivot_row) => {
                    let c = -c;
                    row.axpy(&c, pivot_row);
                }
                None => {
                    let inv = c.inv().expect("leading coefficient is nonzero");
                    row.scale(&inv);
                    echelon.insert(k, row);
                    break;
                }
            }
        }
    }
    // Back-substitution: clear pivot columns from earlier rows. Working from
    // the last pivot upward means every row used for reduction is already
    // fully reduced, so no new pivot-column entries can appear.
    let mut rows: Vec<SparseVec<K>> = echelon.into_values().collect();
    let index: BTreeMap<K, usize> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.lead().unwrap().0.clone(), i))
        .collect();
    for i in (0..rows.len()).rev() {
        let reductions: Vec<(usize, GaussianRational)> = rows[i]
            .iter()
            .skip(1)
            .filter_map(|(k, c)| index.get(k).map(|&j| (j, -c)))
            .collect();
        for (j, c) in reductions {
            debug_assert!(j > i);
            let (head, tail) = rows.split_at_mut(j);
            head[i].axpy(&c, &tail[0]);
        }
    }
    Rref { rows }
}

/// Canonical basis of the nullspace of a row system, over an explicit
/// coordinate universe. The result is itself in reduced echelon form.
pub(crate) fn nullspace<K: Ord + Clone>(
    system: &Rref<K>,
    universe: impl IntoIterator<Item = K>,
) -> Vec<SparseVec<K>> {
    let pivots: Vec<K> = system.pivots().cloned().collect();
    let pivot_set: std::collections::BTreeSet<&K> = pivots.iter().collect();
    let mut basis = Vec::new();
    for f in universe {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = SparseVec::unit(f.clone());
        for row in system.rows() {
            if let Some(c) = row.get(&f) {
                let p = row.lead().unwrap().0.clone();
                v.insert_add(p, -c);
            }
        }
        basis.push(v);
    }
    rref(basis).rows
}

/// Augmented coordinate for affine systems; the right-hand side sorts last
/// so it is never chosen as a pivot while variables remain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub(crate) enum Aug<K: Ord + Clone> {
    Var(K),
    Rhs,
}

/// Solution set of a consistent affine system: the canonical particular
/// solution (all free variables zero) plus a basis of the homogeneous part.
#[derive(Clone, Debug)]
pub(crate) struct AffineSolution<K: Ord + Clone> {
    pub particular: SparseVec<K>,
    pub homogeneous: Vec<SparseVec<K>>,
}

/// Solves `row . x = rhs` for every `(row, rhs)` pair. Returns `None` when
/// the system is inconsistent.
pub(crate) fn solve_affine<K: Ord + Clone>(
    rows: Vec<(SparseVec<K>, GaussianRational)>,
    universe: impl IntoIterator<Item = K>,
) -> Option<AffineSolution<K>> {
    let augmented = rows.into_iter().map(|(row, rhs)| {
        let mut v: SparseVec<Aug<K>> = row.map_keys(|k| Aug::Var(k.clone()));
        v.insert_add(Aug::Rhs, -rhs);
        v
    });
    let reduced = rref(augmented);
    // A pivot in the RHS column means an equation `0 = c` with `c != 0`.
    if reduced.pivots().any(|p| *p == Aug::Rhs) {
        return None;
    }
    let mut particular = SparseVec::new();
    let mut var_rows = Vec::new();
    for row in reduced.rows() {
        let pivot = match row.lead().unwrap().0 {
            Aug::Var(k) => k.clone(),
            Aug::Rhs => unreachable!("checked above"),
        };
        if let Some(c) = row.get(&Aug::Rhs) {
            particular.insert_add(pivot, -c);
        }
        var_rows.push(row.filter_keys(|k| *k != Aug::Rhs).map_keys(|k| match k {
            Aug::Var(v) => v.clone(),
            Aug::Rhs => unreachable!(),
        }));
    }
    // With the RHS column last, stripping it leaves the RREF of the
    // coefficient matrix (consistency rules out rows that vanish on the
    // variables but not on the RHS).
    let homogeneous = nullspace(&Rref::from_canonical_rows(var_rows), universe);
    Some(AffineSolution { particular, homogeneous })
}

/// Canonical basis of the intersection of two spans.
pub(crate) fn intersect_spans<K: Ord + Clone>(
    a: &[SparseVec<K>],
    b: &[SparseVec<K>],
) -> Vec<SparseVec<K>> {
    let ra = rref(a.to_vec()).rows;
    let rb = rref(b.to_vec()).rows;
    if ra.is_empty() || rb.is_empty() {
        return Vec::new();
    }
    // A vector lies in both spans iff sum_i x_i a_i - sum_j y_j b_j = 0 for
    // some coefficients; one equation per coordinate, unknowns indexed by
    // the basis vectors of both sides.
    let k = ra.len();
    let mut equations: BTreeMap<K, SparseVec<usize>> = BTreeMap::new();
    for (i, v) in ra.iter().enumerate() {
        for (key, c) in v.iter() {
            equations.entry(key.clone()).or_insert_with(SparseVec::new).insert_add(i, c.clone());
        }
    }
    for (j, v) in rb.iter().enumerate() {
        for (key, c) in v.iter() {
            equations
                .entry(key.clone())
                .or_insert_with(SparseVec::new)
                .insert_add(k + j, -c);
        }
    }
    let system = rref(equations.into_values());
    let coeff_vectors = nullspace(&system, 0..k + rb.len());
    let mut members = Vec::new();
    for cv in coeff_vectors {
        let mut m = SparseVec::new();
        for (idx, c) in cv.iter() {
            if *idx < k {
                m.axpy(c, &ra[*idx]);
            }
        }
        members.push(m);
    }
    rref(members).rows
}

/// True when two vector lists span the same subspace.
pub(crate) fn spans_equal<K: Ord + Clone>(a: &[SparseVec<K>], b: &[SparseVec<K>]) -> bool {
    rref(a.to_vec()) == rref(b.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        let mut out = SparseVec::new();
        for (k, c) in entries {
            out.insert_add(*k, GaussianRational::from_integer(*c));
        }
        out
    }

    #[test]
    fn rref_is_canonical() {
        let rows = vec![v(&[(0, 2), (1, 4)]), v(&[(0, 1), (1, 2), (2, 1)])];
        let r1 = rref(rows.clone());
        let mut rev = rows;
        rev.reverse();
        let r2 = rref(rev);
        assert_eq!(r1, r2);
        assert_eq!(r1.rank(), 2);
        // First row is monic with pivot 0 and cleared of pivot column 2.
        assert_eq!(r1.rows()[0], v(&[(0, 1), (1, 2)]));
        assert_eq!(r1.rows()[1], v(&[(2, 1)]));
    }

    #[test]
    fn nullspace_of_a_rank_one_system() {
        // x0 + 2 x1 - x2 = 0 over {0, 1, 2}
        let sys = rref(vec![v(&[(0, 1), (1, 2), (2, -1)])]);
        let ns = nullspace(&sys, 0..3u32);
        assert_eq!(ns.len(), 2);
        for b in &ns {
            let dot = sys.rows()[0].iter().fold(GaussianRational::zero(), |acc, (k, c)| {
                &acc + &(c * &b.get(k).cloned().unwrap_or_else(GaussianRational::zero))
            });
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn affine_solve_finds_particular_and_kernel() {
        // x0 + x1 = 3 ; x1 = 1  =>  particular (2, 1), kernel {0}
        let rows = vec![
            (v(&[(0, 1), (1, 1)]), GaussianRational::from_integer(3)),
            (v(&[(1, 1)]), GaussianRational::from_integer(1)),
        ];
        let sol = solve_affine(rows, 0..2u32).unwrap();
        assert_eq!(sol.particular, v(&[(0, 2), (1, 1)]));
        assert!(sol.homogeneous.is_empty());
    }

    #[test]
    fn affine_solve_detects_inconsistency() {
        let rows = vec![
            (v(&[(0, 1)]), GaussianRational::from_integer(1)),
            (v(&[(0, 1)]), GaussianRational::from_integer(2)),
        ];
        assert!(solve_affine(rows, 0..1u32).is_none());
    }

    #[test]
    fn affine_solve_with_free_variables_zeroes_them() {
        // x0 + x1 = 5 over {0, 1}: canonical particular sets the free x1 to 0.
        let rows = vec![(v(&[(0, 1), (1, 1)]), GaussianRational::from_integer(5))];
        let sol = solve_affine(rows, 0..2u32).unwrap();
        assert_eq!(sol.particular, v(&[(0, 5)]));
        assert_eq!(sol.homogeneous.len(), 1);
        // Canonical basis vectors are monic at their pivot.
        assert_eq!(sol.homogeneous[0], v(&[(0, 1), (1, -1)]));
    }

    #[test]
    fn intersection_of_planes() {
        // span{e0, e1} intersect span{e1, e2} = span{e1}
        let a = vec![v(&[(0, 1)]), v(&[(1, 1)])];
        let b = vec![v(&[(1, 1)]), v(&[(2, 1)])];
        let m = intersect_spans(&a, &b);
        assert_eq!(m, vec![v(&[(1, 1)])]);
    }

    #[test]
    fn intersection_of_skew_lines_is_trivial() {
        let a = vec![v(&[(0, 1), (1, 1)])];
        let b = vec![v(&[(0, 1), (1, -1)])];
        assert!(intersect_spans(&a, &b).is_empty());
    }
}
