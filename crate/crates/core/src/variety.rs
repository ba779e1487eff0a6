//! Point counts of the variety `X = lang^{-1}(Y)` inside `U`, cohomological
//! predictions, and the zeta-side bookkeeping.
//!
//! `Y` is the hyperplane `a_n = 0`, so `X(F_{q^{nk}})` is the solution set of
//! `pr_n(lang(g)) = 0`. The norm morphism splits `X` into `q` components
//! `N(g) = c`, `c` in `F_q`.
//!
//! Counting strategies:
//! * `brute` enumerates all `n` coordinates and tests the defining equation,
//!   attributing each point to its component by evaluating `N`;
//! * `fiber` enumerates the first `n - 1` coordinates only: the top
//!   coordinate enters the defining equation through `a_n^{q^n} - a_n`
//!   (the Lang image of the central factor `1 + a_n e_n`), so the residual
//!   count is a solvability-weighted Artin-Schreier fiber. A solvable fiber
//!   is a torsor under `F_{q^n}` whose points spread evenly over the `q`
//!   components (rational central translates shift `N` by the full trace
//!   image), contributing `q^{n-1}` to each.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::field::Fq;
use crate::norm::NormOracle;
use crate::unipotent::{Ambient, GroupError, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarietyError {
    Group(GroupError),
    SpaceTooLarge(u128),
    InternalCheck(&'static str),
}

impl fmt::Display for VarietyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyError::Group(e) => write!(f, "{e}"),
            VarietyError::SpaceTooLarge(s) => {
                write!(f, "enumeration space of {s} points too large")
            }
            VarietyError::InternalCheck(msg) => {
                write!(f, "internal consistency check failed: {msg}")
            }
        }
    }
}

impl From<GroupError> for VarietyError {
    fn from(e: GroupError) -> Self {
        VarietyError::Group(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Brute,
    Fiber,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Brute => "brute",
            CountMethod::Fiber => "fiber",
        }
    }
}

/// Raw counting result: total and per-component totals indexed by the
/// canonical enumeration of `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountOutcome {
    pub total: u64,
    pub per_component: Vec<u64>,
}

impl CountOutcome {
    pub fn zero(q: u64) -> CountOutcome {
        CountOutcome {
            total: 0,
            per_component: vec![0; q as usize],
        }
    }

    pub fn absorb(&mut self, other: &CountOutcome) {
        self.total += other.total;
        for (a, b) in self.per_component.iter_mut().zip(&other.per_component) {
            *a += b;
        }
    }
}

/// Size of the enumeration space for a method.
pub fn space_size(amb: &Ambient, method: CountMethod) -> u128 {
    let coords = match method {
        CountMethod::Brute => amb.spec.n,
        CountMethod::Fiber => amb.spec.n - 1,
    };
    let mut out: u128 = 1;
    for _ in 0..coords {
        out = out.saturating_mul(amb.field().size() as u128);
    }
    out
}

/// Counts points with enumeration index in `lo..hi` (mixed-radix over the
/// swept coordinates, first coordinate most significant). Chunks combine by
/// [`CountOutcome::absorb`]; the split is deterministic, so per-chunk results
/// are independent of how the range is carved up.
pub fn count_range(
    amb: &Ambient,
    method: CountMethod,
    lo: u64,
    hi: u64,
) -> Result<CountOutcome, VarietyError> {
    let grp = amb.group();
    let field = amb.field();
    let spec = amb.spec;
    let n = spec.n as usize;
    let q = spec.q();
    let oracle = NormOracle::new(grp);
    let mut out = CountOutcome::zero(q);
    let size = field.size();
    let q_pow_n = {
        let mut v = 1u64;
        for _ in 0..spec.rational_degree() {
            v = v.saturating_mul(spec.p);
        }
        v
    };

    let coords = match method {
        CountMethod::Brute => n,
        CountMethod::Fiber => n - 1,
    };
    let mut digits = vec![0u64; coords];
    let mut nil = vec![Fq(0); n];

    for idx in lo..hi {
        let mut v = idx;
        for slot in digits.iter_mut().rev() {
            *slot = v % size;
            v /= size;
        }
        for (j, &dig) in digits.iter().enumerate() {
            nil[j] = Fq(dig);
        }
        match method {
            CountMethod::Brute => {
                let g = grp.elem(&nil);
                if grp.pr_n(&grp.lang(&g)) == field.zero() {
                    out.total += 1;
                    let nv = oracle.norm_morphism(&g);
                    let comp = amb
                        .base()
                        .index_of(nv)
                        .ok_or(VarietyError::InternalCheck("norm value outside F_q on X"))?;
                    out.per_component[comp as usize] += 1;
                }
            }
            CountMethod::Fiber => {
                nil[n - 1] = Fq(0);
                let g0 = grp.elem(&nil);
                let c = grp.pr_n(&grp.lang(&g0));
                // a_n^(q^n) - a_n = -c.
                let fiber = field
                    .artin_schreier_count(field.neg(c), q_pow_n)
                    .map_err(GroupError::Field)?;
                if fiber > 0 {
                    debug_assert_eq!(fiber, q_pow_n);
                    out.total += fiber;
                    let share = fiber / q;
                    for slot in out.per_component.iter_mut() {
                        *slot += share;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Full count over the ambient field.
pub fn count_points(amb: &Ambient, method: CountMethod) -> Result<CountOutcome, VarietyError> {
    let space = space_size(amb, method);
    if space > u64::MAX as u128 {
        return Err(VarietyError::SpaceTooLarge(space));
    }
    count_range(amb, method, 0, space as u64)
}

// ---------------------------------------------------------------------------
// Cohomological bookkeeping
// ---------------------------------------------------------------------------

/// One row per conductor-exponent divisor `d | n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiRow {
    pub d: u32,
    pub n1: u32,
    /// Cohomological degree `n + n1 - 2` carrying these classes.
    pub degree: u32,
    /// Number of central characters with conductor exponent exactly `d`.
    pub char_count: BigUint,
    /// Dimension of each attached irreducible.
    pub dim_rho: BigUint,
    /// Frobenius eigenvalue sign `(-1)^degree`; the eigenvalue is
    /// `sign * q^(n * degree / 2)`.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    pub spec: GroupSpec,
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    /// Compactly supported Betti numbers: `(degree, dimension)` pairs in
    /// ascending degree; dimensions from distinct conductors in the same
    /// degree accumulate.
    pub fn betti_numbers(&self) -> Vec<(u32, BigUint)> {
        let mut map: alloc::collections::BTreeMap<u32, BigUint> = Default::default();
        for row in &self.rows {
            let entry = map.entry(row.degree).or_insert_with(BigUint::zero);
            *entry += &row.char_count * &row.dim_rho;
        }
        map.into_iter().collect()
    }

    /// The Weil-style upper bound `sum_i q^(n i / 2) dim H^i_c`, attained
    /// exactly on maximal varieties.
    pub fn maximality_bound(&self) -> BigUint {
        let q = BigUint::from(self.spec.q());
        let n = self.spec.n;
        let mut out = BigUint::zero();
        for (deg, dim) in self.betti_numbers() {
            out += dim * q.pow(n * deg / 2);
        }
        out
    }
}

fn moebius(mut m: u32) -> i32 {
    let mut out = 1i32;
    let mut k = 2u32;
    while k * k <= m {
        if m % k == 0 {
            m /= k;
            if m % k == 0 {
                return 0;
            }
            out = -out;
        }
        k += 1;
    }
    if m > 1 {
        out = -out;
    }
    out
}

/// Betti data of `X` for a spec: for each `d | n` with `n1 = n / d`, the
/// `c(d) = sum_{e|d} mu(d/e) q^e` characters of conductor exponent `d`
/// contribute irreducibles of a single dimension in degree `n + n1 - 2`.
pub fn betti(spec: GroupSpec) -> Result<BettiTable, VarietyError> {
    let n = spec.n;
    let q = BigUint::from(spec.q());
    let mut rows = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let n1 = n / d;
        // Exact-conductor character count by Moebius inversion over e | d.
        let mut count = BigInt::zero();
        for e in 1..=d {
            if d % e == 0 {
                let mu = moebius(d / e);
                if mu != 0 {
                    count += BigInt::from(mu) * BigInt::from(q.pow(e));
                }
            }
        }
        if count.is_negative() {
            return Err(VarietyError::InternalCheck("negative character count"));
        }
        let char_count = count.to_biguint().unwrap();
        let degree = n + n1 - 2;
        if (n * degree) % 2 != 0 {
            return Err(VarietyError::InternalCheck("odd eigenvalue exponent"));
        }
        // Index formulas [U : H(d)] and [U : Gamma(d)].
        let regular = d % 2 == 1 || n1 % 2 == 0;
        let exp = if regular {
            n * (n / 2 - n1 / 2)
        } else {
            n * (n / 2 - n1 / 2) - n / 2
        };
        let dim_rho = q.pow(exp);
        let sign = if degree % 2 == 0 { 1 } else { -1 };
        rows.push(BettiRow {
            d,
            n1,
            degree,
            char_count,
            dim_rho,
            sign,
        });
    }

    let table = BettiTable { spec, rows };
    // Self-check: total weighted dimension reproduces the group order
    // q^(n^2), which is #X over the rational field.
    let mut total = BigUint::zero();
    for row in &table.rows {
        total += &row.char_count * &row.dim_rho * q.pow(n * row.degree / 2);
    }
    if total != q.pow(n * n) {
        return Err(VarietyError::InternalCheck(
            "weighted Betti sum differs from q^(n^2)",
        ));
    }
    // The char counts partition all q^n central characters.
    let mut chars = BigUint::zero();
    for row in &table.rows {
        chars += &row.char_count;
    }
    if chars != q.pow(n) {
        return Err(VarietyError::InternalCheck(
            "character counts do not sum to q^n",
        ));
    }
    Ok(table)
}

/// Lefschetz prediction for `#X(F_{q^{nk}})`: each degree-`i` class
/// contributes `(-1)^(i(k+1)) q^(n i k / 2)`.
pub fn predict_count(spec: GroupSpec, k: u32) -> Result<BigUint, VarietyError> {
    let table = betti(spec)?;
    let q = BigInt::from(spec.q());
    let n = spec.n;
    let mut acc = BigInt::zero();
    for (deg, dim) in table.betti_numbers() {
        let mag = q.pow(n * deg * k / 2);
        let sign = if (deg * (k + 1)) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        acc += sign * BigInt::from(dim) * mag;
    }
    if acc.is_negative() {
        return Err(VarietyError::InternalCheck("negative predicted count"));
    }
    Ok(acc.to_biguint().unwrap())
}

/// Outcome of the maximality identity at `k = 1`: the counted points must
/// attain the Weil-style bound computed from the Betti data.
#[derive(Debug, Clone)]
pub struct MaximalityReport {
    pub counted: u64,
    pub bound: BigUint,
    pub attained: bool,
}

pub fn maximality_check(
    amb: &Ambient,
    method: CountMethod,
) -> Result<MaximalityReport, VarietyError> {
    debug_assert_eq!(amb.k, 1);
    let counted = count_points(amb, method)?.total;
    let bound = betti(amb.spec)?.maximality_bound();
    let attained = BigUint::from(counted) == bound;
    Ok(MaximalityReport {
        counted,
        bound,
        attained,
    })
}
