//! The multigraded module with one generator per poset element.
//!
//! The module is presented by relations identifying each generator with the
//! product of the variable at any immediate successor and that successor's
//! generator. A K-basis is given by pairs `mu * u_tau` where `mu` is a chain
//! monomial supported strictly below `tau`. The variable action is computed
//! through per-variable operators on that basis; the two operator axioms
//! (commutation, and vanishing of double actions at incomparable indices) are
//! what make the iterated action well-defined, and the test suites check them
//! exhaustively before anything else relies on the action.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Elem, Poset};
use crate::ring::{ChainMonomial, MonomialIdeal, Multidegree, Ring, RingElem};
use crate::scalar::Scalar;

/// Basis element `mu * u_tau`: `mu` is supported strictly below `tau`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MBasisElem {
    pub mu: ChainMonomial,
    pub tau: Elem,
}

/// A K-linear combination of basis elements, in canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MElem {
    terms: BTreeMap<MBasisElem, Scalar>,
}

impl MElem {
    pub fn zero() -> MElem {
        MElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MBasisElem, &Scalar)> {
        self.terms.iter()
    }

    fn insert(&mut self, b: MBasisElem, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            None => {
                self.terms.insert(b, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(b, sum);
                }
            }
        }
    }
}

/// The unique splitting of `mu` used by the top-variable action.
///
/// With the chain below `tau` written `[t_0, ..., t_n]`, the index `k` is one
/// plus the largest `j < n` such that the variable at `t_j` does not divide
/// `mu` (the minimal `t_0` never carries a variable, so `k >= 1`). Then
/// `gamma` is the part of `mu` on `t_k..t_{n-1}` (every such variable occurs)
/// and `nu` is the rest, supported within `t_1..t_{k-2}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub nu: ChainMonomial,
    pub gamma: ChainMonomial,
    pub k: usize,
}

/// Module context over a ring context.
#[derive(Clone, Copy)]
pub struct Module<'p> {
    pub ring: Ring<'p>,
}

/// Certificate that a basis element lies in `P * M` for a monomial prime.
#[derive(Clone, Debug, Serialize)]
pub struct PmCertificate {
    pub element: String,
    pub successor: String,
}

/// Outcome of the `M = P*M` scan for one monomial prime.
#[derive(Clone, Debug, Serialize)]
pub struct PmReport {
    pub certificates: Vec<PmCertificate>,
    pub frontier_excluded: usize,
    pub failures: Vec<String>,
}

impl PmReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The three checks on the non-flatness witness for a cover `sigma < sigma1`.
///
/// The witness is `x_sigma^2 * u_sigma1`: a nonzero basis element killed by
/// `x_sigma1` yet not in `Ann(x_sigma1) * M`, which a flat module would force.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub sigma: String,
    pub sigma1: String,
    pub witness: String,
    pub witness_is_basis: bool,
    pub annihilated_by_top_variable: bool,
    pub outside_annihilator_expansion: bool,
}

impl WitnessReport {
    pub fn is_ok(&self) -> bool {
        self.witness_is_basis
            && self.annihilated_by_top_variable
            && self.outside_annihilator_expansion
    }
}

impl<'p> Module<'p> {
    pub fn new(ring: Ring<'p>) -> Module<'p> {
        Module { ring }
    }

    fn poset(&self) -> &'p Poset {
        self.ring.poset
    }

    /// Validates and builds a basis element.
    pub fn basis_elem(&self, mu: ChainMonomial, tau: Elem) -> Result<MBasisElem> {
        for e in mu.support() {
            if !(self.poset().leq(e, tau) && e != tau) {
                return Err(Error::invalid(format!(
                    "variable at `{}` is not strictly below `{}`",
                    self.poset().id(e),
                    self.poset().id(tau)
                )));
            }
        }
        Ok(MBasisElem { mu, tau })
    }

    /// The generator `u_tau`.
    pub fn generator(&self, tau: Elem) -> MBasisElem {
        MBasisElem { mu: ChainMonomial::one(), tau }
    }

    pub fn elem(&self, b: MBasisElem) -> MElem {
        let mut out = MElem::zero();
        out.insert(b, self.ring.field.one());
        out
    }

    pub fn add(&self, v: &MElem, w: &MElem) -> MElem {
        let mut out = v.clone();
        for (b, c) in w.terms() {
            out.insert(b.clone(), c.clone());
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar, v: &MElem) -> MElem {
        let mut out = MElem::zero();
        for (b, a) in v.terms() {
            out.insert(b.clone(), c.mul(a));
        }
        out
    }

    pub fn sub(&self, v: &MElem, w: &MElem) -> MElem {
        let neg = self.scalar_mul(&self.ring.field.from_i64(-1), w);
        self.add(v, &neg)
    }

    /// Splits `mu` for the top-variable action at `tau`.
    pub fn factor(&self, b: &MBasisElem) -> Result<Factorization> {
        let chain = self.poset().chain_below(b.tau);
        let n = chain.len() - 1;
        if n == 0 {
            return Err(Error::invalid("no factorization below a minimal element"));
        }
        let occurs: Vec<bool> = chain.iter().map(|&e| b.mu.exponent(e) > 0).collect();
        debug_assert!(!occurs[0], "minimal elements carry no variable");
        debug_assert!(!occurs[n], "mu is supported strictly below tau");
        let max_missing = (0..n).rev().find(|&j| !occurs[j]).expect("j = 0 always qualifies");
        let k = max_missing + 1;
        let mut gamma_exps = Vec::new();
        let mut nu_exps = Vec::new();
        for &(e, m) in b.mu.exps() {
            let pos = chain.iter().position(|&c| c == e).expect("support lies on the chain");
            if pos >= k {
                gamma_exps.push((e, m));
            } else {
                nu_exps.push((e, m));
            }
        }
        let gamma = exps_to_monomial(gamma_exps);
        let nu = exps_to_monomial(nu_exps);
        Ok(Factorization { nu, gamma, k })
    }

    /// One-variable action on a basis element; `None` is zero.
    ///
    /// Case table, for the variable at `sigma` acting on `mu * u_tau`:
    /// strictly below `tau` it multiplies into `mu`; at `sigma = tau` it
    /// either peels the chain down to `u_{t_{k-1}}` (all split exponents 1)
    /// or dies (some split exponent >= 2); anywhere else it dies.
    pub fn theta_basis(&self, sigma: Elem, b: &MBasisElem) -> Result<Option<MBasisElem>> {
        if self.poset().is_minimal(sigma) {
            return Err(Error::invalid(format!(
                "minimal element `{}` has no variable",
                self.poset().id(sigma)
            )));
        }
        if sigma == b.tau {
            let f = self.factor(b)?;
            if f.gamma.exps().iter().all(|&(_, k)| k == 1) {
                let chain = self.poset().chain_below(b.tau);
                let target = chain[f.k - 1];
                Ok(Some(MBasisElem { mu: f.nu, tau: target }))
            } else {
                Ok(None)
            }
        } else if self.poset().leq(sigma, b.tau) {
            let mu = self
                .ring
                .mono_mul(&b.mu, &ChainMonomial::var(sigma))
                .expect("support stays within one chain");
            Ok(Some(MBasisElem { mu, tau: b.tau }))
        } else {
            Ok(None)
        }
    }

    /// One-variable action as a module element.
    pub fn theta(&self, sigma: Elem, b: &MBasisElem) -> Result<MElem> {
        Ok(match self.theta_basis(sigma, b)? {
            None => MElem::zero(),
            Some(b2) => self.elem(b2),
        })
    }

    /// Monomial action: variables applied in canonical order. The result is
    /// order-independent by the operator axioms.
    pub fn act_mono(&self, m: &ChainMonomial, b: &MBasisElem) -> Option<MBasisElem> {
        let mut cur = b.clone();
        for &(e, k) in m.exps() {
            for _ in 0..k {
                match self.theta_basis(e, &cur).expect("monomial variables are non-minimal") {
                    None => return None,
                    Some(next) => cur = next,
                }
            }
        }
        Some(cur)
    }

    /// Bilinear extension of the monomial action.
    pub fn act(&self, f: &RingElem, v: &MElem) -> MElem {
        let mut out = MElem::zero();
        for (m, a) in f.terms() {
            for (b, c) in v.terms() {
                if let Some(b2) = self.act_mono(m, b) {
                    out.insert(b2, a.mul(c));
                }
            }
        }
        out
    }

    /// Degree of `mu * u_tau`: the monomial degree minus one at every element
    /// weakly below `tau`.
    pub fn multidegree(&self, b: &MBasisElem) -> Multidegree {
        let mut d = self.ring.multidegree(&b.mu);
        for e in self.poset().chain_below(b.tau) {
            d.add_to(e, -1);
        }
        d
    }

    pub fn total_degree(&self, b: &MBasisElem) -> i64 {
        b.mu.total_degree() as i64 - (self.poset().height(b.tau) as i64 + 1)
    }

    /// Inverts `multidegree`; `None` when no basis element has that degree.
    ///
    /// The subscript is the unique maximal element carrying a negative
    /// coefficient; every exponent of `mu` on the chain is the coefficient
    /// plus one; off-chain coefficients must vanish.
    pub fn basis_from_multidegree(&self, d: &Multidegree) -> Option<MBasisElem> {
        let negatives: Vec<Elem> = d.entries().filter(|&(_, v)| v < 0).map(|(e, _)| e).collect();
        let tau = *negatives.iter().max_by_key(|&&e| self.poset().height(e))?;
        // Every entry (positive or negative) must sit on the chain below tau.
        for (e, _) in d.entries() {
            if !self.poset().leq(e, tau) {
                return None;
            }
        }
        let chain = self.poset().chain_below(tau);
        if d.coeff(tau) != -1 || d.coeff(chain[0]) != -1 {
            return None;
        }
        let mut exps = Vec::new();
        for &e in &chain {
            if e == tau || self.poset().is_minimal(e) {
                continue;
            }
            let coeff = d.coeff(e);
            if coeff < -1 {
                return None;
            }
            let exp = (coeff + 1) as u32;
            if exp > 0 {
                exps.push((e, exp));
            }
        }
        exps.sort_by_key(|&(e, _)| e);
        let b = MBasisElem { mu: exps_to_monomial(exps), tau };
        debug_assert_eq!(self.multidegree(&b), *d);
        Some(b)
    }

    /// Generators of the annihilator of `u_tau`: one variable for every index
    /// not weakly below `tau`, plus the squared saturated upper chains
    /// `x_{t_k}^2 x_{t_{k+1}} ... x_{t_n}` for `1 <= k <= n`.
    pub fn ann_u_generators(&self, tau: Elem) -> MonomialIdeal {
        let mut gens: Vec<ChainMonomial> = self
            .poset()
            .variables()
            .into_iter()
            .filter(|&e| !self.poset().leq(e, tau))
            .map(ChainMonomial::var)
            .collect();
        let chain = self.poset().chain_below(tau);
        let n = chain.len() - 1;
        for k in 1..=n {
            let mut exps: Vec<(Elem, u32)> = vec![(chain[k], 2)];
            for &e in &chain[k + 1..=n] {
                exps.push((e, 1));
            }
            exps.sort_by_key(|&(e, _)| e);
            gens.push(exps_to_monomial(exps));
        }
        MonomialIdeal::new(gens)
    }

    /// Variables strictly below `tau` (the allowed support of `mu`).
    pub fn strict_lower_variables(&self, tau: Elem) -> Vec<Elem> {
        self.poset()
            .chain_below(tau)
            .into_iter()
            .filter(|&e| !self.poset().is_minimal(e) && e != tau)
            .collect()
    }

    /// All basis elements with monomial degree at most `mu_degree_bound`.
    pub fn enumerate_basis(&self, mu_degree_bound: u32) -> Vec<MBasisElem> {
        let mut out = Vec::new();
        for tau in self.poset().elems() {
            let vars = self.strict_lower_variables(tau);
            for mu in monomials_on(&vars, mu_degree_bound) {
                out.push(MBasisElem { mu, tau });
            }
        }
        out.sort();
        out
    }

    /// Basis elements of one total degree, restricted to monomial degree at
    /// most `mu_degree_bound`.
    pub fn basis_of_total_degree(&self, t: i64, mu_degree_bound: u32) -> Vec<MBasisElem> {
        self.enumerate_basis(mu_degree_bound)
            .into_iter()
            .filter(|b| self.total_degree(b) == t)
            .collect()
    }

    /// For every enumerated interior basis element, certify membership in
    /// `P * M` through an immediate successor outside the chain; frontier
    /// elements have no successor in the truncation and are excluded.
    pub fn check_pm_eq_m(&self, chain: &[Elem], mu_degree_bound: u32) -> Result<PmReport> {
        self.ring.minimal_prime(chain)?;
        let frontier = self.poset().frontier_height();
        let mut report =
            PmReport { certificates: Vec::new(), frontier_excluded: 0, failures: Vec::new() };
        for b in self.enumerate_basis(mu_degree_bound) {
            if self.poset().height(b.tau) >= frontier {
                report.frontier_excluded += 1;
                continue;
            }
            let omega = self
                .poset()
                .immediate_successors(b.tau)
                .into_iter()
                .find(|w| !chain.contains(w));
            let Some(omega) = omega else {
                report.failures.push(format!(
                    "no successor of `{}` outside the chain",
                    self.poset().id(b.tau)
                ));
                continue;
            };
            // The certificate: the element equals x_omega * (mu * u_omega).
            let lifted = MBasisElem { mu: b.mu.clone(), tau: omega };
            let back = self.act_mono(&ChainMonomial::var(omega), &lifted);
            if back.as_ref() == Some(&b) {
                report.certificates.push(PmCertificate {
                    element: self.render_basis(&b),
                    successor: self.poset().id(omega).to_string(),
                });
            } else {
                report.failures.push(format!("certificate failed for {}", self.render_basis(&b)));
            }
        }
        Ok(report)
    }

    /// Verifies the non-flatness witness for a cover `sigma < sigma1`:
    /// `w = x_sigma^2 * u_sigma1` is a nonzero basis element, the variable at
    /// `sigma1` kills it, and no product of a variable incomparable to
    /// `sigma1` with a basis element lands on it (each graded piece has
    /// dimension at most one, so that scan is exact).
    pub fn nonflat_witness(&self, sigma: Elem, sigma1: Elem) -> Result<WitnessReport> {
        if self.poset().is_minimal(sigma) {
            return Err(Error::invalid(format!(
                "`{}` is minimal and carries no variable",
                self.poset().id(sigma)
            )));
        }
        if self.poset().parent(sigma1) != Some(sigma) {
            return Err(Error::invalid(format!(
                "`{}` is not an immediate successor of `{}`",
                self.poset().id(sigma1),
                self.poset().id(sigma)
            )));
        }
        let witness = self.basis_elem(ChainMonomial::power(sigma, 2), sigma1)?;
        let annihilated =
            self.act_mono(&ChainMonomial::var(sigma1), &witness).is_none();

        let target = self.multidegree(&witness);
        let mut reached = false;
        for rho in self.poset().variables() {
            if !self.poset().incomparable(rho, sigma1) {
                continue;
            }
            let mut lower = target.clone();
            lower.add_to(rho, -1);
            if let Some(b) = self.basis_from_multidegree(&lower) {
                if self.act_mono(&ChainMonomial::var(rho), &b).as_ref() == Some(&witness) {
                    reached = true;
                    break;
                }
            }
        }
        Ok(WitnessReport {
            sigma: self.poset().id(sigma).to_string(),
            sigma1: self.poset().id(sigma1).to_string(),
            witness: self.render_basis(&witness),
            witness_is_basis: true,
            annihilated_by_top_variable: annihilated,
            outside_annihilator_expansion: !reached,
        })
    }

    pub fn render_basis(&self, b: &MBasisElem) -> String {
        let u = format!("u_{{{}}}", self.poset().id(b.tau));
        if b.mu.is_one() {
            u
        } else {
            format!("{}*{}", self.ring.render_monomial(&b.mu), u)
        }
    }

    pub fn render_elem(&self, v: &MElem) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.terms()
            .map(|(b, c)| {
                if c.is_one() {
                    self.render_basis(b)
                } else {
                    format!("{}*{}", c.render(), self.render_basis(b))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Serializes per the interchange schema:
    /// `[{"coeff": "...", "mu": {...}, "tau": "id"}, ...]`.
    pub fn elem_to_json(&self, v: &MElem) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            mu: BTreeMap<String, u32>,
            tau: String,
        }
        let terms: Vec<Term> = v
            .terms()
            .map(|(b, c)| Term {
                coeff: c.render(),
                mu: b
                    .mu
                    .exps()
                    .iter()
                    .map(|&(e, k)| (self.poset().id(e).to_string(), k))
                    .collect(),
                tau: self.poset().id(b.tau).to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("module element serialization cannot fail")
    }
}

/// Monomials of degree at most `bound` on an arbitrary variable list (used
/// for basis enumeration, where the support is automatically a chain).
fn monomials_on(vars: &[Elem], bound: u32) -> Vec<ChainMonomial> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Vec<(Elem, u32)>)> = vec![(0, bound, vec![])];
    while let Some((i, rest, acc)) = stack.pop() {
        if i == vars.len() {
            let mut exps = acc;
            exps.sort_by_key(|&(e, _)| e);
            out.push(exps_to_monomial(exps));
            continue;
        }
        for k in 0..=rest {
            let mut acc2 = acc.clone();
            if k > 0 {
                acc2.push((vars[i], k));
            }
            stack.push((i + 1, rest - k, acc2));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn exps_to_monomial(exps: Vec<(Elem, u32)>) -> ChainMonomial {
    ChainMonomial::from_pairs(exps)
}

impl fmt::Display for MBasisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mu.is_one() {
            write!(f, "u[{}]", self.tau.index())
        } else {
            write!(f, "{}*u[{}]", self.mu, self.tau.index())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn modctx(poset: &Poset) -> Module<'_> {
        Module::new(Ring::new(poset, Field::Rational))
    }

    fn mono<'a>(m: &Module<'a>, exps: &[(&str, u32)]) -> ChainMonomial {
        m.ring.monomial(exps).unwrap()
    }

    #[test]
    fn factor_examples() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let tau = p.elem("01").unwrap();

        let b = m.basis_elem(ChainMonomial::one(), tau).unwrap();
        let f = m.factor(&b).unwrap();
        assert_eq!((f.k, f.gamma.is_one(), f.nu.is_one()), (2, true, true));

        let b = m.basis_elem(mono(&m, &[("0", 1)]), tau).unwrap();
        let f = m.factor(&b).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(f.gamma, mono(&m, &[("0", 1)]));
        assert!(f.nu.is_one());

        let b = m.basis_elem(mono(&m, &[("0", 2)]), tau).unwrap();
        let f = m.factor(&b).unwrap();
        assert_eq!(f.k, 1);
        assert_eq!(f.gamma, mono(&m, &[("0", 2)]));
        assert!(f.nu.is_one());
    }

    #[test]
    fn basis_elem_rejects_support_not_strictly_below() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let tau = p.elem("0").unwrap();
        assert!(m.basis_elem(mono(&m, &[("0", 1)]), tau).is_err());
        assert!(m.basis_elem(mono(&m, &[("1", 1)]), tau).is_err());
    }

    #[test]
    fn theta_case_table() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let u0 = m.generator(p.elem("0").unwrap());

        // Top variable peels one step down.
        let down = m.theta_basis(p.elem("0").unwrap(), &u0).unwrap().unwrap();
        assert_eq!(down, m.generator(p.elem("").unwrap()));

        // Incomparable variable kills.
        assert!(m.theta_basis(p.elem("1").unwrap(), &u0).unwrap().is_none());

        // Squared top variable kills: x^2 u = x (x u) = x u_parent = 0.
        let sq = mono(&m, &[("0", 2)]);
        assert!(m.act_mono(&sq, &u0).is_none());

        // Saturated chain with unit exponents collapses to the bottom.
        let b = m.basis_elem(mono(&m, &[("0", 1)]), p.elem("01").unwrap()).unwrap();
        let got = m.theta_basis(p.elem("01").unwrap(), &b).unwrap().unwrap();
        assert_eq!(got, m.generator(p.elem("").unwrap()));

        // No variable at minimal elements.
        assert!(m.theta_basis(p.elem("").unwrap(), &u0).is_err());
    }

    #[test]
    fn variables_strictly_below_act_injectively() {
        // A variable strictly below the subscript multiplies into the
        // monomial part and lands on another basis element; in particular
        // x_sigma * (x_sigma u_sigma1) is the nonzero basis element
        // x_sigma^2 u_sigma1, not zero.
        let p = Poset::binary(2);
        let m = modctx(&p);
        let sigma = p.elem("0").unwrap();
        let b = m.basis_elem(mono(&m, &[("0", 1)]), p.elem("00").unwrap()).unwrap();
        let got = m.theta_basis(sigma, &b).unwrap().unwrap();
        assert_eq!(got, m.basis_elem(mono(&m, &[("0", 2)]), p.elem("00").unwrap()).unwrap());
    }

    #[test]
    fn act_examples() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let u01 = m.generator(p.elem("01").unwrap());

        assert_eq!(
            m.act_mono(&mono(&m, &[("0", 1), ("01", 1)]), &u01),
            Some(m.generator(p.elem("").unwrap()))
        );
        assert_eq!(m.act_mono(&mono(&m, &[("0", 2), ("01", 1)]), &u01), None);

        let v = m.add(&m.elem(u01.clone()), &m.elem(m.generator(p.elem("1").unwrap())));
        assert_eq!(m.act(&m.ring.one(), &v), v);
    }

    #[test]
    fn defining_relations_hold() {
        let p = Poset::binary(3);
        let m = modctx(&p);
        for tau in p.elems() {
            let Some(parent) = p.parent(tau) else { continue };
            let got = m.act_mono(&ChainMonomial::var(tau), &m.generator(tau));
            assert_eq!(got, Some(m.generator(parent)));
        }
    }

    #[test]
    fn operator_axioms_exhaustive_small() {
        // Commutation of double actions, and vanishing at incomparable pairs,
        // on every enumerated basis element.
        let p = Poset::binary(2);
        let m = modctx(&p);
        let basis = m.enumerate_basis(4);
        let vars = p.variables();
        for &s in &vars {
            for &t in &vars {
                for b in &basis {
                    let st = m
                        .theta_basis(t, b)
                        .unwrap()
                        .and_then(|b2| m.theta_basis(s, &b2).unwrap());
                    let ts = m
                        .theta_basis(s, b)
                        .unwrap()
                        .and_then(|b2| m.theta_basis(t, &b2).unwrap());
                    assert_eq!(st, ts, "double action differs at {b} for ({s:?},{t:?})");
                    if p.incomparable(s, t) {
                        assert_eq!(st, None);
                    }
                }
            }
        }
    }

    #[test]
    fn saturated_chain_products() {
        // Unit exponents along a saturated upper chain collapse to the
        // generator below the chain; any exponent >= 2 kills.
        let p = Poset::binary(3);
        let m = modctx(&p);
        for top in p.elems() {
            if p.is_minimal(top) {
                continue;
            }
            let chain = p.chain_below(top);
            for start in 1..chain.len() {
                let seg = &chain[start..];
                let ones: Vec<(Elem, u32)> = seg.iter().map(|&e| (e, 1)).collect();
                let all_ones = ChainMonomial::from_pairs(ones.clone());
                assert_eq!(
                    m.act_mono(&all_ones, &m.generator(top)),
                    Some(m.generator(chain[start - 1]))
                );
                for bump in 0..seg.len() {
                    let mut exps = ones.clone();
                    exps[bump].1 = 2;
                    let monomial = ChainMonomial::from_pairs(exps);
                    assert_eq!(m.act_mono(&monomial, &m.generator(top)), None);
                }
            }
        }
    }

    #[test]
    fn multidegree_examples_and_round_trip() {
        let p = Poset::binary(2);
        let m = modctx(&p);

        let u0 = m.generator(p.elem("0").unwrap());
        let mut expected = Multidegree::zero();
        expected.add_to(p.elem("").unwrap(), -1);
        expected.add_to(p.elem("0").unwrap(), -1);
        assert_eq!(m.multidegree(&u0), expected);
        assert_eq!(m.total_degree(&u0), -2);

        // The middle coordinate cancels.
        let b = m.basis_elem(mono(&m, &[("0", 1)]), p.elem("00").unwrap()).unwrap();
        let mut expected = Multidegree::zero();
        expected.add_to(p.elem("").unwrap(), -1);
        expected.add_to(p.elem("00").unwrap(), -1);
        assert_eq!(m.multidegree(&b), expected);
        assert_eq!(m.basis_from_multidegree(&expected), Some(b));

        // Two incomparable negative entries: no preimage.
        let mut bad = Multidegree::zero();
        bad.add_to(p.elem("00").unwrap(), -1);
        bad.add_to(p.elem("01").unwrap(), -1);
        assert_eq!(m.basis_from_multidegree(&bad), None);
    }

    #[test]
    fn multidegree_is_injective_on_enumerated_basis() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let basis = m.enumerate_basis(4);
        let mut seen = BTreeMap::new();
        for b in &basis {
            let d = m.multidegree(b);
            assert_eq!(m.basis_from_multidegree(&d).as_ref(), Some(b));
            assert!(seen.insert(d, b.clone()).is_none(), "duplicate multidegree at {b}");
        }
    }

    #[test]
    fn annihilator_generators_for_height_one() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let tau = p.elem("0").unwrap();
        let ann = m.ann_u_generators(tau);
        let rendered: Vec<String> =
            ann.generators().iter().map(|g| m.ring.render_monomial(g)).collect();
        assert_eq!(
            rendered,
            vec!["x_{00}", "x_{01}", "x_{1}", "x_{10}", "x_{11}", "x_{0}^2"]
        );
        for g in ann.generators() {
            assert_eq!(m.act_mono(g, &m.generator(tau)), None);
        }
    }

    #[test]
    fn annihilator_matches_brute_force_kernel() {
        // The formula ideal and the kernel of the action on u_tau agree on
        // every monomial of bounded degree.
        let p = Poset::binary(2);
        let m = modctx(&p);
        for tau in p.elems() {
            let ann = m.ann_u_generators(tau);
            for mono in m.ring.monomials_up_to_degree(4) {
                let kills = m.act_mono(&mono, &m.generator(tau)).is_none();
                assert_eq!(
                    kills,
                    ann.contains(&mono),
                    "disagreement at tau={} monomial={mono}",
                    p.id(tau)
                );
            }
        }
    }

    #[test]
    fn cyclic_submodule_matches_quotient_by_annihilator() {
        // m -> act(m, u_tau) is injective on non-annihilator monomials,
        // degreewise: the cyclic submodule looks like the quotient ring.
        let p = Poset::binary(2);
        let m = modctx(&p);
        for tau in p.elems() {
            let ann = m.ann_u_generators(tau);
            for d in 0..=4 {
                let mut images = Vec::new();
                for mono in m.ring.monomials_of_degree(d) {
                    if ann.contains(&mono) {
                        continue;
                    }
                    let img = m.act_mono(&mono, &m.generator(tau));
                    assert!(img.is_some());
                    images.push(img.unwrap());
                }
                let total = images.len();
                images.sort();
                images.dedup();
                assert_eq!(images.len(), total, "collision at tau={} d={d}", p.id(tau));
            }
        }
    }

    #[test]
    fn pm_certificates_cover_interior_basis() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        for chain in p.maximal_chains() {
            let report = m.check_pm_eq_m(&chain, 4).unwrap();
            assert!(report.is_ok());
            assert!(report.frontier_excluded > 0);
            assert!(!report.certificates.is_empty());
        }
        // u_{"0"} against the chain through "00": certificate must route
        // through "01".
        let chain = p.chain_below(p.elem("00").unwrap());
        let report = m.check_pm_eq_m(&chain, 0).unwrap();
        assert!(report
            .certificates
            .iter()
            .any(|c| c.element == "u_{0}" && c.successor == "01"));
    }

    #[test]
    fn nonflat_witness_verifies() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        let sigma = p.elem("0").unwrap();
        let sigma1 = p.elem("00").unwrap();
        let report = m.nonflat_witness(sigma, sigma1).unwrap();
        assert!(report.is_ok(), "{report:?}");
        assert_eq!(report.witness, "x_{0}^2*u_{00}");

        // Root carries no variable; non-successors are rejected.
        assert!(m.nonflat_witness(p.elem("").unwrap(), sigma).is_err());
        assert!(m.nonflat_witness(sigma, p.elem("10").unwrap()).is_err());
    }

    #[test]
    fn melem_arithmetic_cancels() {
        let p = Poset::binary(1);
        let m = Module::new(Ring::new(&p, Field::Prime(2)));
        let v = m.elem(m.generator(p.elem("0").unwrap()));
        assert!(m.add(&v, &v).is_zero());
        assert_eq!(m.sub(&v, &v), MElem::zero());
    }

    #[test]
    fn basis_of_total_degree_filters() {
        let p = Poset::binary(2);
        let m = modctx(&p);
        // Total degree -(h+1) for the plain generators.
        for tau in p.elems() {
            let t = -(p.height(tau) as i64 + 1);
            let piece = m.basis_of_total_degree(t, 0);
            assert!(piece.contains(&m.generator(tau)));
        }
    }
}
