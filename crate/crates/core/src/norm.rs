//! The reduced-norm morphism `N: U -> G_a`.
//!
//! `N` is pinned by two properties: `N(1) = 0` and
//! `pr_n(lang(g)) = N(g)^q - N(g)` for all `g`. It is computed by a
//! descending recursion over the normal form
//! `g = (1 - b_1 e_1) ... (1 - b_n e_n)`: with `F_n(b_n) = -(b_n + b_n^q +
//! ... + b_n^(q^(n-1)))` and, for `k < n`,
//!
//! ```text
//! F_k = F_{k+1} - sum_i (A_i + A_i^q + ... + A_i^(q^(k-1))),
//! A_i = c_{n-ik} * b_k^(q^(n-ik) + q^(n-ik+k) + ... + q^(n-k)),
//! ```
//!
//! where the `c_j` are the coefficients of the Lang image of the tail
//! `(1 - b_{k+1} e_{k+1}) ... (1 - b_n e_n)` and `c_0 = 1`. Coefficients
//! `c_j` with `1 <= j <= k` vanish because the tail has no generator of
//! index `<= k`. In the top-only product regime the only surviving terms are
//! `i = 1` and, when `n = 2k`, the pure square `i = 2` with `c_0 = 1`.
//!
//! On rational points `N` agrees with the reduced norm `Nm`, the unique
//! `F_{q^n}^x`-conjugation-invariant homomorphism `U(F_{q^n}) -> F_q`
//! restricting to the field trace on the center; `Nm` also has closed forms
//! on one-parameter factors, summed over the normal form.

use alloc::string::String;
use alloc::vec::Vec;

use crate::field::Fq;
use crate::rng::SplitMix64;
use crate::unipotent::{Ambient, Group, GroupError, MulCase, SubgroupId, UElem};

/// Evaluator for the norm morphism over a fixed coefficient field.
#[derive(Clone, Copy)]
pub struct NormOracle<'a> {
    pub grp: Group<'a>,
}

impl<'a> NormOracle<'a> {
    pub fn new(grp: Group<'a>) -> NormOracle<'a> {
        NormOracle { grp }
    }

    /// `N(g)` over any coefficient field, by the descending recursion.
    pub fn norm_morphism(&self, g: &UElem) -> Fq {
        let grp = self.grp;
        let fq = grp.field;
        let n = grp.spec.n;
        let bs = grp.normal_form(g);

        // Base case: F_n = -(b_n + b_n^q + ... + b_n^(q^(n-1))).
        let bn = bs[(n - 1) as usize];
        let mut f = fq.zero();
        for t in 0..n {
            f = fq.sub(f, grp.frob_q(bn, t));
        }

        let mut tail = grp.one_param(fq.neg(bn), n as usize);
        for k in (1..n).rev() {
            let bk = bs[(k - 1) as usize];
            if bk != fq.zero() {
                let lt = grp.lang(&tail);
                for i in 1..=(n / k) {
                    let r = n - i * k;
                    if grp.spec.case == MulCase::TopOnly && !(i == 1 || (i == 2 && r == 0)) {
                        continue;
                    }
                    // c_0 = 1 is the unipotent constant term of the Lang
                    // image; c_r for 1 <= r <= k is automatically zero.
                    let c = lt.coeff(r as usize);
                    if c == fq.zero() {
                        continue;
                    }
                    let mut pw = fq.one();
                    for t in 0..i {
                        pw = fq.mul(pw, grp.frob_q(bk, r + t * k));
                    }
                    let a = fq.mul(c, pw);
                    for t in 0..k {
                        f = fq.sub(f, grp.frob_q(a, t));
                    }
                }
            }
            tail = grp.mul(&grp.one_param(fq.neg(bk), k as usize), &tail);
        }
        f
    }

    /// Closed form of `N(1 - b e_j)` on a one-parameter factor.
    pub fn factor_norm(&self, b: Fq, j: u32) -> Fq {
        let grp = self.grp;
        let fq = grp.field;
        let n = grp.spec.n;
        let supported = match grp.spec.case {
            MulCase::Truncated => n % j == 0,
            MulCase::TopOnly => j == n || 2 * j == n,
        };
        if !supported || b == fq.zero() {
            return fq.zero();
        }
        // phi(b) = b^(1 + q^j + ... + q^(n-j)).
        let mut phi = fq.one();
        for t in 0..(n / j) {
            phi = fq.mul(phi, grp.frob_q(b, j * t));
        }
        let mut out = fq.zero();
        for t in 0..j {
            out = fq.sub(out, grp.frob_q(phi, t));
        }
        out
    }

    /// `Nm(g)` on a rational point, as the sum of factor closed forms over
    /// the normal form (valid because `Nm` is a homomorphism on rational
    /// points). The value lies in `F_q`.
    pub fn reduced_norm_point(&self, g: &UElem) -> Result<Fq, GroupError> {
        let grp = self.grp;
        if !grp.is_rational(g) {
            return Err(GroupError::Field(crate::field::FieldError::NotInSubfield));
        }
        let bs = grp.normal_form(g);
        let mut out = grp.field.zero();
        for (k, &b) in bs.iter().enumerate() {
            out = grp.field.add(out, self.factor_norm(b, k as u32 + 1));
        }
        debug_assert!(grp.field.in_subfield(out, grp.spec.f));
        Ok(out)
    }
}

/// Verification record for the defining properties of the reduced norm on
/// rational points and the constructive generation certificate.
#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub group_order: u64,
    pub homomorphism_pairs: u64,
    pub homomorphism_exhaustive: bool,
    pub homomorphism_ok: bool,
    pub invariance_checks: u64,
    pub invariance_exhaustive: bool,
    pub invariance_ok: bool,
    pub center_matches_trace: bool,
    /// Every element written as commutators-with-scalars times a central
    /// element; counts the elements successfully decomposed.
    pub decomposition_witnesses: u64,
    pub decomposition_complete: bool,
    /// Normalization provenance of the recursion base case.
    pub base_case_used: String,
    pub base_case_rejected: String,
    pub base_case_reason: String,
}

impl CertifyReport {
    pub fn certified(&self) -> bool {
        self.homomorphism_ok
            && self.invariance_ok
            && self.center_matches_trace
            && self.decomposition_complete
    }
}

const CERTIFY_ORDER_BUDGET: u64 = 1 << 20;
const EXHAUSTIVE_PAIR_BUDGET: u64 = 1 << 12;
const SAMPLED_CHECKS: u64 = 10_000;

/// Exhaustively (within budget) verifies that the reduced norm on rational
/// points is the conjugation-invariant homomorphism restricting to the trace
/// on the center, and certifies uniqueness constructively by decomposing
/// every element as scalar-conjugation commutators times a central element.
pub fn certify_reduced_norm(amb: &Ambient) -> Result<CertifyReport, GroupError> {
    let grp = amb.group();
    let fq = grp.field;
    let oracle = NormOracle::new(grp);
    let full = amb.enumerate(SubgroupId::Full)?;
    let order = full.len();
    if order > CERTIFY_ORDER_BUDGET {
        return Err(GroupError::TooLarge(order as u128));
    }
    let n = grp.spec.n;

    // Homomorphism: Nm(gh) = Nm(g) + Nm(h).
    let mut hom_ok = true;
    let mut hom_pairs = 0u64;
    let hom_exhaustive = order <= EXHAUSTIVE_PAIR_BUDGET;
    if hom_exhaustive {
        let norms: Vec<Fq> = (0..order)
            .map(|i| oracle.reduced_norm_point(&full.element(i)).unwrap())
            .collect();
        for i in 0..order {
            let gi = full.element(i);
            for j in 0..order {
                let gj = full.element(j);
                let prod = grp.mul(&gi, &gj);
                let expect = fq.add(norms[i as usize], norms[j as usize]);
                if oracle.reduced_norm_point(&prod).unwrap() != expect {
                    hom_ok = false;
                }
                hom_pairs += 1;
            }
        }
    } else {
        let mut rng = SplitMix64::new(0x6e6f726d);
        for _ in 0..SAMPLED_CHECKS {
            let gi = full.element(rng.below(order));
            let gj = full.element(rng.below(order));
            let lhs = oracle.reduced_norm_point(&grp.mul(&gi, &gj)).unwrap();
            let rhs = fq.add(
                oracle.reduced_norm_point(&gi).unwrap(),
                oracle.reduced_norm_point(&gj).unwrap(),
            );
            if lhs != rhs {
                hom_ok = false;
            }
            hom_pairs += 1;
        }
    }

    // Invariance under scalar conjugation.
    let units = fq.size() - 1;
    let mut inv_ok = true;
    let mut inv_checks = 0u64;
    let inv_exhaustive = order.saturating_mul(units) <= 1 << 22;
    if inv_exhaustive {
        for i in 0..order {
            let g = full.element(i);
            let ng = oracle.reduced_norm_point(&g).unwrap();
            for v in 1..=units {
                let lam = fq.element(v);
                let c = grp.gm_conj(lam, &g)?;
                if oracle.reduced_norm_point(&c).unwrap() != ng {
                    inv_ok = false;
                }
                inv_checks += 1;
            }
        }
    } else {
        let mut rng = SplitMix64::new(0x696e7661);
        for _ in 0..SAMPLED_CHECKS {
            let g = full.element(rng.below(order));
            let lam = fq.element(1 + rng.below(units));
            let c = grp.gm_conj(lam, &g)?;
            if oracle.reduced_norm_point(&c)? != oracle.reduced_norm_point(&g)? {
                inv_ok = false;
            }
            inv_checks += 1;
        }
    }

    // Restriction to the center is the field trace.
    let mut center_ok = true;
    for a in fq.elements() {
        let z = grp.one_param(a, n as usize);
        let tr = fq.trace_to(a, grp.spec.f)?;
        if oracle.reduced_norm_point(&z)? != tr {
            center_ok = false;
        }
    }

    // Constructive generation: peel each element down to the center through
    // commutators g_1^{-1} (lambda g_1 lambda^{-1}).
    let mut witnesses = 0u64;
    'elems: for i in 0..order {
        let mut cur = full.element(i);
        for _ in 0..n {
            let Some(k) = (1..n).find(|&k| cur.coeff(k as usize) != fq.zero()) else {
                break;
            };
            let ak = cur.coeff(k as usize);
            // First unit with lambda^(1-q^k) != 1.
            let mut found = None;
            for v in 1..=units {
                let lam = fq.element(v);
                let ratio = fq.mul(lam, fq.inv(grp.frob_q(lam, k))?);
                if ratio != fq.one() {
                    found = Some((lam, ratio));
                    break;
                }
            }
            let Some((lam, ratio)) = found else {
                continue 'elems;
            };
            let b = fq.mul(ak, fq.inv(fq.sub(ratio, fq.one()))?);
            let g1 = grp.one_param(b, k as usize);
            let w = grp.mul(&grp.inv(&g1), &grp.gm_conj(lam, &g1)?);
            debug_assert_eq!(w.coeff(k as usize), ak);
            cur = grp.mul(&grp.inv(&w), &cur);
            if cur.coeff(k as usize) != fq.zero() {
                continue 'elems;
            }
        }
        let central = (1..n).all(|j| cur.coeff(j as usize) == fq.zero());
        if central {
            witnesses += 1;
        }
    }

    Ok(CertifyReport {
        group_order: order,
        homomorphism_pairs: hom_pairs,
        homomorphism_exhaustive: hom_exhaustive,
        homomorphism_ok: hom_ok,
        invariance_checks: inv_checks,
        invariance_exhaustive: inv_exhaustive,
        invariance_ok: inv_ok,
        center_matches_trace: center_ok,
        decomposition_witnesses: witnesses,
        decomposition_complete: witnesses == order,
        base_case_used: String::from("-(b + b^q + ... + b^(q^(n-1)))"),
        base_case_rejected: String::from("-(1 + b^q + ... + b^(q^(n-1)))"),
        base_case_reason: String::from(
            "the constant-led variant violates N(1) = 0 and F^q - F = b - b^(q^n)",
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::unipotent::GroupSpec;

    fn oracle_for(
        p: u64,
        f: u32,
        n: u32,
        case: MulCase,
        k: u32,
    ) -> (GroupSpec, crate::field::FieldCtx) {
        let spec = GroupSpec::new(p, f, n, case).unwrap();
        let field = make_field(p, f * n * k).unwrap();
        (spec, field)
    }

    #[test]
    fn norm_of_identity_is_zero() {
        for (p, f, n, case) in [
            (2u64, 1u32, 2u32, MulCase::Truncated),
            (2, 1, 3, MulCase::TopOnly),
            (3, 1, 3, MulCase::Truncated),
            (2, 1, 4, MulCase::TopOnly),
            (2, 2, 2, MulCase::Truncated),
        ] {
            let (spec, field) = oracle_for(p, f, n, case, 2);
            let grp = Group::new(spec, &field).unwrap();
            let o = NormOracle::new(grp);
            assert_eq!(o.norm_morphism(&grp.one()), field.zero());
        }
    }

    #[test]
    fn rank2_closed_formula() {
        // N(1 + a_1 e_1 + a_2 e_2) = a_2 + a_2^q - a_1^(1+q), exhaustive over
        // the rational field and sampled over an extension.
        for q_spec in [(2u64, 1u32), (3, 1), (2, 2)] {
            let (spec, field) = oracle_for(q_spec.0, q_spec.1, 2, MulCase::Truncated, 2);
            let grp = Group::new(spec, &field).unwrap();
            let o = NormOracle::new(grp);
            let mut rng = SplitMix64::new(5);
            for _ in 0..2000 {
                let a1 = Fq(rng.below(field.size()));
                let a2 = Fq(rng.below(field.size()));
                let g = grp.elem(&[a1, a2]);
                let expect = field.sub(
                    field.add(a2, grp.frob_q(a2, 1)),
                    field.mul(a1, grp.frob_q(a1, 1)),
                );
                assert_eq!(o.norm_morphism(&g), expect);
            }
        }
    }

    #[test]
    fn rank2_cases_agree() {
        let (s1, field) = oracle_for(3, 1, 2, MulCase::Truncated, 2);
        let s2 = GroupSpec::new(3, 1, 2, MulCase::TopOnly).unwrap();
        let g1 = Group::new(s1, &field).unwrap();
        let g2 = Group::new(s2, &field).unwrap();
        let o1 = NormOracle::new(g1);
        let o2 = NormOracle::new(g2);
        let mut rng = SplitMix64::new(6);
        for _ in 0..1000 {
            let a1 = Fq(rng.below(field.size()));
            let a2 = Fq(rng.below(field.size()));
            let g = g1.elem(&[a1, a2]);
            assert_eq!(o1.norm_morphism(&g), o2.norm_morphism(&g));
        }
    }

    #[test]
    fn factor_outside_support_has_zero_norm() {
        // Truncated, j not dividing n.
        let (spec, field) = oracle_for(2, 1, 3, MulCase::Truncated, 2);
        let grp = Group::new(spec, &field).unwrap();
        let o = NormOracle::new(grp);
        for b in field.elements() {
            let g = grp.one_param(field.neg(b), 2);
            assert_eq!(o.norm_morphism(&g), field.zero());
            assert_eq!(o.factor_norm(b, 2), field.zero());
        }
        // Top-only, j with j != n and 2j != n.
        let (spec, field) = oracle_for(2, 1, 4, MulCase::TopOnly, 1);
        let grp = Group::new(spec, &field).unwrap();
        let o = NormOracle::new(grp);
        for b in field.elements() {
            assert_eq!(o.factor_norm(b, 1), field.zero());
            assert_eq!(o.factor_norm(b, 3), field.zero());
            assert_eq!(o.norm_morphism(&grp.one_param(b, 3)), field.zero());
        }
    }

    #[test]
    fn artin_schreier_identity_random() {
        // N(g)^q - N(g) = pr_n(lang(g)) over extensions of every desk spec.
        for (p, f, n, case) in [
            (2u64, 1u32, 2u32, MulCase::Truncated),
            (2, 1, 2, MulCase::TopOnly),
            (3, 1, 2, MulCase::Truncated),
            (2, 1, 3, MulCase::Truncated),
            (2, 1, 3, MulCase::TopOnly),
            (2, 1, 4, MulCase::Truncated),
            (2, 1, 4, MulCase::TopOnly),
            (3, 1, 3, MulCase::Truncated),
            (2, 2, 2, MulCase::Truncated),
        ] {
            for k in [1u32, 2, 3] {
                if p.pow(f * n * k) > 1 << 22 {
                    continue;
                }
                let (spec, field) = oracle_for(p, f, n, case, k);
                let grp = Group::new(spec, &field).unwrap();
                let o = NormOracle::new(grp);
                let mut rng = SplitMix64::new(n as u64 * 7 + k as u64);
                for _ in 0..2000 {
                    let mut coeffs = alloc::vec![Fq(0); n as usize];
                    for c in coeffs.iter_mut() {
                        *c = Fq(rng.below(field.size()));
                    }
                    let g = grp.elem(&coeffs);
                    let nv = o.norm_morphism(&g);
                    let lhs = field.sub(field.frob(nv, spec.f as i64), nv);
                    assert_eq!(lhs, grp.pr_n(&grp.lang(&g)));
                }
            }
        }
    }

    #[test]
    fn additivity_with_rational_translate() {
        // N(gh) = N(g) + Nm(h) for rational h; g over an extension.
        let (spec, field) = oracle_for(2, 1, 3, MulCase::TopOnly, 2);
        let grp = Group::new(spec, &field).unwrap();
        let o = NormOracle::new(grp);
        let rational: Vec<Fq> = field
            .elements()
            .filter(|&e| field.in_subfield(e, 3))
            .collect();
        let mut rng = SplitMix64::new(31);
        for _ in 0..500 {
            let g = grp.elem(&[
                Fq(rng.below(field.size())),
                Fq(rng.below(field.size())),
                Fq(rng.below(field.size())),
            ]);
            let h = grp.elem(&[
                rational[rng.below(8) as usize],
                rational[rng.below(8) as usize],
                rational[rng.below(8) as usize],
            ]);
            let lhs = o.norm_morphism(&grp.mul(&g, &h));
            let rhs = field.add(o.norm_morphism(&g), o.reduced_norm_point(&h).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn center_restricts_to_trace() {
        for (p, f, n, case) in [
            (2u64, 1u32, 2u32, MulCase::Truncated),
            (3, 1, 2, MulCase::Truncated),
            (2, 1, 3, MulCase::TopOnly),
            (2, 1, 4, MulCase::TopOnly),
        ] {
            let (spec, field) = oracle_for(p, f, n, case, 1);
            let grp = Group::new(spec, &field).unwrap();
            let o = NormOracle::new(grp);
            for a in field.elements() {
                let z = grp.one_param(a, n as usize);
                assert_eq!(
                    o.reduced_norm_point(&z).unwrap(),
                    field.trace_to(a, f).unwrap()
                );
            }
        }
    }

    #[test]
    fn closed_form_matches_recursion_on_rational_points() {
        for (p, f, n, case) in [
            (2u64, 1u32, 2u32, MulCase::Truncated),
            (3, 1, 2, MulCase::Truncated),
            (2, 1, 3, MulCase::Truncated),
            (2, 1, 3, MulCase::TopOnly),
        ] {
            let spec = GroupSpec::new(p, f, n, case).unwrap();
            let amb = Ambient::new(spec, 1).unwrap();
            let grp = amb.group();
            let o = NormOracle::new(grp);
            let full = amb.enumerate(SubgroupId::Full).unwrap();
            for i in 0..full.len() {
                let g = full.element(i);
                assert_eq!(o.reduced_norm_point(&g).unwrap(), o.norm_morphism(&g));
            }
        }
    }

    #[test]
    fn rejects_non_rational_points() {
        let (spec, field) = oracle_for(2, 1, 2, MulCase::Truncated, 2);
        let grp = Group::new(spec, &field).unwrap();
        let o = NormOracle::new(grp);
        let bad = field
            .elements()
            .find(|&e| !field.in_subfield(e, 2))
            .unwrap();
        let g = grp.elem(&[bad, Fq(0)]);
        assert!(o.reduced_norm_point(&g).is_err());
    }

    #[test]
    fn frobenius_trace_identity() {
        // Tr_{F_{q^n}/F_q}(pr_n(lang(g))) = N(Fr(g)) - N(g) whenever
        // pr_n(lang(g)) lies in F_{q^n}; exhaustive over U(F_16) for the
        // rank-2 group over F_4.
        let (spec, field) = oracle_for(2, 1, 2, MulCase::Truncated, 2);
        let grp = Group::new(spec, &field).unwrap();
        let o = NormOracle::new(grp);
        let mut tested = 0u64;
        for v1 in 0..field.size() {
            for v2 in 0..field.size() {
                let g = grp.elem(&[Fq(v1), Fq(v2)]);
                let c = grp.pr_n(&grp.lang(&g));
                if !field.in_subfield(c, 2) {
                    continue;
                }
                tested += 1;
                let lhs = field.trace_in(c, 2, 1).unwrap();
                let frg = grp.frob_q_elem(g.as_ring(), spec.n);
                let frg = grp.unit(frg).unwrap();
                let rhs = field.sub(o.norm_morphism(&frg), o.norm_morphism(&g));
                assert_eq!(lhs, rhs);
            }
        }
        assert!(tested > 0);
    }

    #[test]
    fn certify_small_specs() {
        for (p, f, n, case) in [
            (2u64, 1u32, 2u32, MulCase::Truncated),
            (3, 1, 2, MulCase::Truncated),
            (2, 1, 3, MulCase::Truncated),
            (2, 1, 3, MulCase::TopOnly),
        ] {
            let spec = GroupSpec::new(p, f, n, case).unwrap();
            let amb = Ambient::new(spec, 1).unwrap();
            let report = certify_reduced_norm(&amb).unwrap();
            assert!(report.certified(), "{report:?}");
            assert_eq!(report.decomposition_witnesses, report.group_order);
            assert!(report.homomorphism_exhaustive);
        }
    }
}
