//! Exact rational linear systems and their solution, kernel, or
//! infeasibility certificate.
//!
//! Elimination is normalized to reduced row echelon form, which is unique,
//! so reports are byte-stable however the rows arrive. Certificates are
//! rational row combinations summing to `0 = nonzero` and re-verify exactly.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector over unknown indices, sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

fn add_scaled_sparse(dst: &SparseVec, c: &Scalar, src: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        match (dst.get(i), src.get(j)) {
            (Some((ci, vi)), Some((cj, vj))) if ci == cj => {
                let v = vi + &(c * vj);
                if !v.is_zero() {
                    out.push((*ci, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ci, vi)), Some((cj, _))) if ci < cj => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (Some(_), Some((cj, vj))) => {
                let v = c * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (Some((ci, vi)), None) => {
                out.push((*ci, vi.clone()));
                i += 1;
            }
            (None, Some((cj, vj))) => {
                let v = c * vj;
                if !v.is_zero() {
                    out.push((*cj, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn scale_sparse(v: &SparseVec, c: &Scalar) -> SparseVec {
    v.iter().map(|(i, x)| (*i, c * x)).collect()
}

#[derive(Clone, Debug)]
struct EchelonRow {
    terms: SparseVec, // monic: leading coefficient 1
    rhs: Scalar,
    history: Option<SparseVec>, // combination of original rows
}

/// An incremental echelon basis; rows are kept monic and fully reduced
/// against each other on demand.
#[derive(Clone, Debug, Default)]
struct Echelon {
    pivots: BTreeMap<usize, usize>, // pivot column -> row slot
    rows: Vec<EchelonRow>,
    track_history: bool,
}

enum Inserted {
    Pivot,
    Dependent,
    /// Reduced to `0 = nonzero`; the row combination witnessing it.
    Contradiction(SparseVec),
}

impl Echelon {
    fn new(track_history: bool) -> Self {
        Echelon { pivots: BTreeMap::new(), rows: Vec::new(), track_history }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a row against the basis in place.
    fn reduce(&self, terms: &mut SparseVec, rhs: &mut Scalar, history: &mut Option<SparseVec>) {
        loop {
            let Some((lead_col, lead_coeff)) = terms.first().map(|(c, v)| (*c, v.clone())) else {
                return;
            };
            let Some(&slot) = self.pivots.get(&lead_col) else {
                // leading column is pivot-free; interior columns may still
                // reduce, handled below
                break;
            };
            let row = &self.rows[slot];
            let c = -lead_coeff;
            *terms = add_scaled_sparse(terms, &c, &row.terms);
            *rhs += &(&c * &row.rhs);
            if let (Some(h), Some(rh)) = (history.as_mut(), row.history.as_ref()) {
                *h = add_scaled_sparse(h, &c, rh);
            }
        }
        // eliminate non-leading pivot columns for full reduction
        let mut changed = true;
        while changed {
            changed = false;
            let hit = terms
                .iter()
                .skip(1)
                .find_map(|(c, v)| self.pivots.get(c).map(|&s| (s, v.clone())));
            if let Some((slot, coeff)) = hit {
                let row = &self.rows[slot];
                let c = -coeff;
                *terms = add_scaled_sparse(terms, &c, &row.terms);
                *rhs += &(&c * &row.rhs);
                if let (Some(h), Some(rh)) = (history.as_mut(), row.history.as_ref()) {
                    *h = add_scaled_sparse(h, &c, rh);
                }
                changed = true;
                // the leading column may now be reducible again
                while let Some(&slot) = terms.first().and_then(|(c, _)| self.pivots.get(c)) {
                    let row = &self.rows[slot];
                    let c = -terms[0].1.clone();
                    *terms = add_scaled_sparse(terms, &c, &row.terms);
                    *rhs += &(&c * &row.rhs);
                    if let (Some(h), Some(rh)) = (history.as_mut(), row.history.as_ref()) {
                        *h = add_scaled_sparse(h, &c, rh);
                    }
                }
            }
        }
    }

    fn insert(&mut self, mut terms: SparseVec, mut rhs: Scalar, origin: usize) -> Inserted {
        let mut history = if self.track_history {
            Some(vec![(origin, Scalar::one())])
        } else {
            None
        };
        self.reduce(&mut terms, &mut rhs, &mut history);
        if terms.is_empty() {
            return if rhs.is_zero() {
                Inserted::Dependent
            } else {
                Inserted::Contradiction(history.unwrap_or_default())
            };
        }
        // normalize to a monic pivot row
        let lead = terms[0].1.clone();
        let inv = lead.recip();
        let terms = scale_sparse(&terms, &inv);
        let rhs = &rhs * &inv;
        let history = history.map(|h| scale_sparse(&h, &inv));
        let col = terms[0].0;
        // clear this column from existing rows to keep the basis reduced
        let new_row = EchelonRow { terms, rhs, history };
        for row in &mut self.rows {
            if let Some(pos) = row.terms.iter().position(|(c, _)| *c == col) {
                let c = -row.terms[pos].1.clone();
                row.terms = add_scaled_sparse(&row.terms, &c, &new_row.terms);
                row.rhs += &(&c * &new_row.rhs);
                if let (Some(h), Some(nh)) = (row.history.as_mut(), new_row.history.as_ref()) {
                    *h = add_scaled_sparse(h, &c, nh);
                }
            }
        }
        self.rows.push(new_row);
        self.pivots.insert(col, self.rows.len() - 1);
        Inserted::Pivot
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Solvable {
        /// One exact solution (free unknowns set to zero).
        particular: Vec<Scalar>,
        /// Canonical kernel basis, one vector per free column.
        kernel: Vec<SparseVec>,
    },
    Infeasible {
        /// Row multipliers combining to `0 = nonzero`.
        certificate: SparseVec,
    },
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub rank: usize,
    pub nullity: usize,
}

impl SolveReport {
    pub fn is_solvable(&self) -> bool {
        matches!(self.status, SolveStatus::Solvable { .. })
    }

    pub fn kernel(&self) -> &[SparseVec] {
        match &self.status {
            SolveStatus::Solvable { kernel, .. } => kernel,
            SolveStatus::Infeasible { .. } => &[],
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    terms: SparseVec,
    rhs: Scalar,
}

/// An exact linear system over labelled unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem<L: Ord + Clone> {
    unknowns: Vec<L>,
    index: BTreeMap<L, usize>,
    rows: Vec<Row>,
}

impl<L: Ord + Clone> Default for LinearSystem<L> {
    fn default() -> Self {
        Self::new()
    }
}

impl<L: Ord + Clone> LinearSystem<L> {
    pub fn new() -> Self {
        LinearSystem { unknowns: Vec::new(), index: BTreeMap::new(), rows: Vec::new() }
    }

    /// Index of a label, declaring it if new; declaration order is the
    /// column order.
    pub fn unknown(&mut self, label: L) -> usize {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.unknowns.len();
        self.unknowns.push(label.clone());
        self.index.insert(label, i);
        i
    }

    pub fn lookup(&self, label: &L) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[L] {
        &self.unknowns
    }

    pub fn num_unknowns(&self) -> usize {
        self.unknowns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn add_row(&mut self, terms: impl IntoIterator<Item = (usize, Scalar)>, rhs: Scalar) {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, c) in terms {
            assert!(i < self.unknowns.len(), "row references undeclared unknown");
            let e = map.entry(i).or_insert_with(Scalar::zero);
            *e += &c;
        }
        let terms: SparseVec = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        self.rows.push(Row { terms, rhs });
    }

    /// Exact Gaussian elimination; deterministic output in reduced row
    /// echelon form.
    pub fn solve(&self) -> SolveReport {
        let track = self.rows.iter().any(|r| !r.rhs.is_zero());
        let mut ech = Echelon::new(track);
        let mut first_certificate: Option<SparseVec> = None;
        for (i, row) in self.rows.iter().enumerate() {
            match ech.insert(row.terms.clone(), row.rhs.clone(), i) {
                Inserted::Contradiction(cert) => {
                    // keep eliminating so the reported rank is the full
                    // coefficient-matrix rank
                    first_certificate.get_or_insert(cert);
                }
                Inserted::Pivot | Inserted::Dependent => {}
            }
        }
        let rank = ech.rank();
        if let Some(certificate) = first_certificate {
            return SolveReport {
                status: SolveStatus::Infeasible { certificate },
                rank,
                nullity: self.num_unknowns() - rank,
            };
        }
        let n = self.num_unknowns();
        let mut particular = vec![Scalar::zero(); n];
        for row in &ech.rows {
            particular[row.terms[0].0] = row.rhs.clone();
        }
        let mut kernel = Vec::with_capacity(n - rank);
        for free in 0..n {
            if ech.pivots.contains_key(&free) {
                continue;
            }
            let mut v: BTreeMap<usize, Scalar> = BTreeMap::new();
            v.insert(free, Scalar::one());
            for row in &ech.rows {
                if let Some((_, c)) = row.terms.iter().find(|(j, _)| *j == free) {
                    v.insert(row.terms[0].0, -c.clone());
                }
            }
            kernel.push(v.into_iter().collect());
        }
        SolveReport {
            status: SolveStatus::Solvable { particular, kernel },
            rank,
            nullity: n - rank,
        }
    }

    /// Substitutes a dense assignment into every row.
    pub fn satisfied_by(&self, assignment: &[Scalar]) -> bool {
        self.rows.iter().all(|row| {
            let lhs: Scalar = row
                .terms
                .iter()
                .map(|(i, c)| c * &assignment[*i])
                .sum();
            lhs == row.rhs
        })
    }

    /// Substitutes a sparse homogeneous vector into every row (rhs must be
    /// all zero for this to make sense).
    pub fn in_kernel(&self, v: &SparseVec) -> bool {
        let dense: BTreeMap<usize, &Scalar> = v.iter().map(|(i, c)| (*i, c)).collect();
        self.rows.iter().all(|row| {
            let lhs: Scalar = row
                .terms
                .iter()
                .filter_map(|(i, c)| dense.get(i).map(|x| c * *x))
                .sum();
            lhs == row.rhs
        })
    }

    /// Recomputes a certificate combination and checks it is exactly
    /// `0 = nonzero`.
    pub fn verify_certificate(&self, certificate: &SparseVec) -> bool {
        let mut terms: SparseVec = Vec::new();
        let mut rhs = Scalar::zero();
        for (i, c) in certificate {
            let Some(row) = self.rows.get(*i) else { return false };
            terms = add_scaled_sparse(&terms, c, &row.terms);
            rhs += &(c * &row.rhs);
        }
        terms.is_empty() && !rhs.is_zero()
    }
}

/// An incremental row space over a fixed column universe, for exact rank
/// arithmetic and span membership.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    ech: Echelon,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace { ech: Echelon::new(false) }
    }

    /// Inserts a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        matches!(self.ech.insert(v, Scalar::zero(), 0), Inserted::Pivot)
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut terms = v.clone();
        let mut rhs = Scalar::zero();
        self.ech.reduce(&mut terms, &mut rhs, &mut None);
        terms.is_empty()
    }

    /// The residual of a vector after reduction against the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut terms = v.clone();
        let mut rhs = Scalar::zero();
        self.ech.reduce(&mut terms, &mut rhs, &mut None);
        terms
    }

    /// The canonical (monic, fully reduced) basis rows of the span, sorted
    /// by pivot column.
    pub fn basis(&self) -> Vec<SparseVec> {
        let mut rows: Vec<&EchelonRow> = self.ech.rows.iter().collect();
        rows.sort_by_key(|r| r.terms[0].0);
        rows.into_iter().map(|r| r.terms.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn two_by_two() {
        // x + y = 1, x - y = 1
        let mut sys = LinearSystem::new();
        let x = sys.unknown("x");
        let y = sys.unknown("y");
        sys.add_row([(x, s(1)), (y, s(1))], s(1));
        sys.add_row([(x, s(1)), (y, s(-1))], s(1));
        let r = sys.solve();
        assert_eq!(r.rank, 2);
        assert_eq!(r.nullity, 0);
        match r.status {
            SolveStatus::Solvable { particular, kernel } => {
                assert_eq!(particular, vec![s(1), s(0)]);
                assert!(kernel.is_empty());
            }
            _ => panic!("expected solvable"),
        }
    }

    #[test]
    fn contradiction_certificate() {
        // x = 1, x = 2
        let mut sys = LinearSystem::new();
        let x = sys.unknown("x");
        sys.add_row([(x, s(1))], s(1));
        sys.add_row([(x, s(1))], s(2));
        let r = sys.solve();
        match &r.status {
            SolveStatus::Infeasible { certificate } => {
                assert!(sys.verify_certificate(certificate));
            }
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn kernel_basis() {
        // x + 2y = 0
        let mut sys = LinearSystem::new();
        let x = sys.unknown("x");
        let y = sys.unknown("y");
        sys.add_row([(x, s(1)), (y, s(2))], s(0));
        let r = sys.solve();
        assert_eq!(r.rank, 1);
        assert_eq!(r.nullity, 1);
        assert_eq!(r.kernel(), &[vec![(x, s(-2)), (y, s(1))]]);
    }

    #[test]
    fn duplicate_terms_combine() {
        let mut sys = LinearSystem::new();
        let x = sys.unknown(0u32);
        sys.add_row([(x, s(1)), (x, s(-1))], s(0));
        let r = sys.solve();
        assert_eq!(r.rank, 0);
        assert_eq!(r.nullity, 1);
    }

    #[test]
    fn row_space_rank_and_membership() {
        let mut rs = RowSpace::new();
        assert!(rs.insert(vec![(0, s(1)), (1, s(2))]));
        assert!(rs.insert(vec![(1, s(1)), (2, s(1))]));
        assert!(!rs.insert(vec![(0, s(2)), (1, s(6)), (2, s(2))]));
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&vec![(0, s(1)), (1, s(4)), (2, s(2))]));
        assert!(!rs.contains(&vec![(2, s(1))]));
    }

    fn arb_system() -> impl Strategy<Value = LinearSystem<u32>> {
        (1usize..5, proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 0..7))
            .prop_map(|(n, rows)| {
                let mut sys = LinearSystem::new();
                for i in 0..n {
                    sys.unknown(i as u32);
                }
                for r in rows {
                    let rhs = s(r[4]);
                    let terms: Vec<_> =
                        r[..n.min(4)].iter().enumerate().map(|(i, &c)| (i, s(c))).collect();
                    sys.add_row(terms, rhs);
                }
                sys
            })
    }

    proptest! {
        #[test]
        fn solutions_satisfy_exactly(sys in arb_system()) {
            let r = sys.solve();
            match &r.status {
                SolveStatus::Solvable { particular, kernel } => {
                    prop_assert!(sys.satisfied_by(particular));
                    prop_assert_eq!(r.rank + r.nullity, sys.num_unknowns());
                    prop_assert_eq!(kernel.len(), r.nullity);
                    // kernel vectors solve the homogeneous system on top of
                    // the particular solution
                    for v in kernel {
                        let mut shifted = particular.clone();
                        for (i, c) in v {
                            shifted[*i] += c;
                        }
                        prop_assert!(sys.satisfied_by(&shifted));
                    }
                    // canonical kernel: each vector is monic at its free column
                    let mut rs = RowSpace::new();
                    for v in kernel {
                        prop_assert!(rs.insert(v.clone()));
                    }
                }
                SolveStatus::Infeasible { certificate } => {
                    prop_assert!(sys.verify_certificate(certificate));
                }
            }
        }

        #[test]
        fn rref_is_order_independent(sys in arb_system()) {
            let forward = sys.solve();
            let mut rev = LinearSystem::new();
            for i in 0..sys.num_unknowns() {
                rev.unknown(i as u32);
            }
            for row in sys.rows.iter().rev() {
                rev.add_row(row.terms.clone(), row.rhs.clone());
            }
            let backward = rev.solve();
            prop_assert_eq!(forward.rank, backward.rank);
            match (&forward.status, &backward.status) {
                (SolveStatus::Solvable { particular: p1, kernel: k1 },
                 SolveStatus::Solvable { particular: p2, kernel: k2 }) => {
                    prop_assert_eq!(p1, p2);
                    prop_assert_eq!(k1, k2);
                }
                (SolveStatus::Infeasible { .. }, SolveStatus::Infeasible { .. }) => {}
                _ => prop_assert!(false, "status mismatch"),
            }
        }
    }
}
