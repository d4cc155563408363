//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! A solve first runs on `Ratio<i64>` with checked arithmetic; if any
//! intermediate value overflows, the whole solve is repeated on
//! `BigRational`. Both paths perform the same pivots, so results are
//! identical.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `Σ coeffs · x  (<=|>=|=)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<(usize, BigRational)>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, BigRational)>, relation: Relation, rhs: BigRational) -> Self {
        Self { coeffs, relation, rhs }
    }
}

/// Maximize `objective · x` subject to the constraints. Variables are
/// nonnegative unless marked free.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<(usize, BigRational)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, free: vec![false; num_vars], ..Default::default() }
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn solve(&self) -> LpOutcome {
        match Tableau::<Ratio<i64>>::build(self).and_then(|t| t.run(self)) {
            Some(out) => out,
            None => Tableau::<BigRational>::build(self)
                .and_then(|t| t.run(self))
                .expect("arbitrary-precision arithmetic cannot overflow"),
        }
    }

    /// Runs only the arbitrary-precision path.
    pub fn solve_big(&self) -> LpOutcome {
        Tableau::<BigRational>::build(self).and_then(|t| t.run(self)).expect("no overflow")
    }
}

trait Scalar: Clone + PartialOrd + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn from_big(x: &BigRational) -> Option<Self>;
    fn to_big(&self) -> BigRational;
}

impl Scalar for Ratio<i64> {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn neg(&self) -> Option<Self> {
        Some(Ratio::new_raw(self.numer().checked_neg()?, *self.denom()))
    }
    fn from_big(x: &BigRational) -> Option<Self> {
        Some(Ratio::new_raw(x.numer().to_i64()?, x.denom().to_i64()?))
    }
    fn to_big(&self) -> BigRational {
        BigRational::new_raw(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn from_big(x: &BigRational) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

/// Dense simplex tableau in standard form `A z = b, z >= 0, b >= 0`.
/// The last entry of every row is the right-hand side.
struct Tableau<T> {
    rows: Vec<Vec<T>>,
    cost: Vec<T>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    active: Vec<bool>,
    /// First artificial column; artificials occupy the tail.
    first_artificial: usize,
    /// Column of each original variable (and of its negative part, if free).
    var_cols: Vec<(usize, Option<usize>)>,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn build(lp: &LinearProgram) -> Option<Self> {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut ncols = 0;
        for j in 0..lp.num_vars {
            if lp.free.get(j).copied().unwrap_or(false) {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        let m = lp.constraints.len();
        // Normalize rows to nonnegative right-hand sides.
        let mut normalized = Vec::with_capacity(m);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let rel = match (c.relation, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            normalized.push((c, flip, rel));
        }
        let n_slack = normalized.iter().filter(|(_, _, r)| *r != Relation::Eq).count();
        let n_art = normalized.iter().filter(|(_, _, r)| *r != Relation::Le).count();
        let first_slack = ncols;
        let first_artificial = ncols + n_slack;
        let width = first_artificial + n_art + 1;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (first_slack, first_artificial);
        for (c, flip, rel) in normalized {
            let mut row = vec![T::zero(); width];
            for (j, a) in &c.coeffs {
                let mut a = T::from_big(a)?;
                if flip {
                    a = a.neg()?;
                }
                let (p, q) = var_cols[*j];
                row[p] = row[p].add(&a)?;
                if let Some(q) = q {
                    row[q] = row[q].sub(&a)?;
                }
            }
            let mut b = T::from_big(&c.rhs)?;
            if flip {
                b = b.neg()?;
            }
            row[width - 1] = b;
            match rel {
                Relation::Le => {
                    row[slack] = T::one();
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = T::one().neg()?;
                    slack += 1;
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = T::one();
                    basis.push(art);
                    art += 1;
                }
            }
            rows.push(row);
        }
        Some(Self {
            rows,
            cost: vec![T::zero(); width],
            basis,
            active: vec![true; width - 1],
            first_artificial,
            var_cols,
        })
    }

    fn width(&self) -> usize {
        self.cost.len()
    }

    /// Sets the cost row to `c` reduced against the current basis.
    fn set_cost(&mut self, c: Vec<T>) -> Option<()> {
        self.cost = c;
        for r in 0..self.rows.len() {
            let cb = self.cost[self.basis[r]].clone();
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.width() {
                if !self.rows[r][j].is_zero() {
                    self.cost[j] = self.cost[j].sub(&cb.mul(&self.rows[r][j])?)?;
                }
            }
        }
        Some(())
    }

    fn pivot(&mut self, r: usize, c: usize) -> Option<()> {
        let p = self.rows[r][c].clone();
        let nz: Vec<usize> = (0..self.width()).filter(|&j| !self.rows[r][j].is_zero()).collect();
        for &j in &nz {
            self.rows[r][j] = self.rows[r][j].div(&p)?;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] = row[j].sub(&f.mul(&prow[j])?)?;
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nz {
                self.cost[j] = self.cost[j].sub(&f.mul(&prow[j])?)?;
            }
        }
        self.basis[r] = c;
        Some(())
    }

    /// Minimizes the current cost row. Bland's rule: lowest-index entering
    /// column, ties in the ratio test broken by lowest basic column.
    fn optimize(&mut self) -> Option<Phase> {
        let rhs = self.width() - 1;
        loop {
            let Some(c) = (0..rhs).find(|&j| self.active[j] && self.cost[j].is_neg()) else {
                return Some(Phase::Optimal);
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rows[r][rhs].div(a)?;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c)?,
                None => return Some(Phase::Unbounded),
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> Option<LpOutcome> {
        let width = self.width();
        let rhs = width - 1;
        if self.first_artificial < rhs {
            let mut c = vec![T::zero(); width];
            for slot in c.iter_mut().take(rhs).skip(self.first_artificial) {
                *slot = T::one();
            }
            self.set_cost(c)?;
            self.optimize()?;
            // The cost row's rhs entry holds minus the phase-1 objective.
            if !self.cost[rhs].is_zero() {
                return Some(LpOutcome::Infeasible);
            }
            // Drive zero-valued artificials out of the basis; rows where
            // that is impossible are redundant and dropped.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(j) => self.pivot(r, j)?,
                        None => {
                            self.rows.swap_remove(r);
                            self.basis.swap_remove(r);
                            continue;
                        }
                    }
                }
                r += 1;
            }
            for a in self.active.iter_mut().skip(self.first_artificial) {
                *a = false;
            }
        }

        let mut c = vec![T::zero(); width];
        for (j, v) in &lp.objective {
            // Maximizing the objective is minimizing its negation.
            let v = T::from_big(v)?;
            let (p, q) = self.var_cols[*j];
            c[p] = c[p].sub(&v)?;
            if let Some(q) = q {
                c[q] = c[q].add(&v)?;
            }
        }
        self.set_cost(c)?;
        if let Phase::Unbounded = self.optimize()? {
            return Some(LpOutcome::Unbounded);
        }

        let mut z = vec![<BigRational as Zero>::zero(); rhs];
        for (r, &b) in self.basis.iter().enumerate() {
            z[b] = self.rows[r][rhs].to_big();
        }
        let x: Vec<BigRational> = self
            .var_cols
            .iter()
            .map(|&(p, q)| match q {
                Some(q) => &z[p] - &z[q],
                None => z[p].clone(),
            })
            .collect();
        let value = lp.objective.iter().map(|(j, v)| v * &x[*j]).fold(<BigRational as Zero>::zero(), |a, b| a + b);
        Some(LpOutcome::Optimal { x, value })
    }
}
