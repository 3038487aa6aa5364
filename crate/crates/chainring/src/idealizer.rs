//! The Nagata idealizer: the ring on `R ⊕ M` in which the module part
//! squares to zero.
//!
//! Multiplication is `(r, m)(r', m') = (rr', rm' + r'm)`. For a monomial
//! prime `Q` of the base ring, `Q * (R ⊕ M) = Q ⊕ QM`, so the quotient splits
//! as `R/Q ⊕ M/QM`; the checks here certify, degree by degree and below the
//! truncation frontier, that the module part collapses and the ring part is a
//! polynomial ring on the surviving chain of variables. That is quotient-ring
//! evidence that monomial primes extend to primes of the idealizer, while the
//! module's non-flatness witnesses transfer verbatim (the idealizer contains
//! the module as a direct summand).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::{MBasisElem, MElem, Module, PmCertificate};
use crate::poset::Elem;
use crate::ring::{ChainMonomial, RingElem};

/// An element `r ⊕ m` of the idealizer.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IdealizerElem {
    pub r: RingElem,
    pub m: MElem,
}

/// Idealizer context over a module context.
#[derive(Clone, Copy)]
pub struct Idealizer<'p> {
    pub module: Module<'p>,
}

/// Degreewise comparison of the quotient of the idealizer with the quotient
/// of the base ring, for one monomial prime.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientIsoReport {
    /// Generating variables of the prime, by id.
    pub prime: Vec<String>,
    /// Ids of the surviving chain of variables.
    pub surviving_chain: Vec<String>,
    /// Graded dimensions of the ring-part quotient for degrees `0..=D`,
    /// computed by enumeration and cross-checked against piece subtraction.
    pub ring_quotient_dims: Vec<usize>,
    pub iso_pieces_checked: usize,
    /// Certificates that interior module basis elements die in the quotient.
    pub collapse_certificates: Vec<PmCertificate>,
    /// Frontier basis elements skipped per truncation semantics.
    pub frontier_excluded: usize,
    /// Pairs of surviving monomials whose product was checked nonzero.
    pub products_checked: usize,
    pub status: String,
    pub failures: Vec<String>,
}

impl QuotientIsoReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One entry per monomial prime of the truncated ring.
#[derive(Clone, Debug, Serialize)]
pub struct PrimeExtensionReport {
    pub degree_bound: u32,
    /// Bounded-degree evidence, not a proof for the untruncated ring.
    pub evidence: String,
    pub primes: Vec<QuotientIsoReport>,
}

impl PrimeExtensionReport {
    pub fn is_ok(&self) -> bool {
        self.primes.iter().all(QuotientIsoReport::is_ok)
    }
}

impl<'p> Idealizer<'p> {
    pub fn new(module: Module<'p>) -> Idealizer<'p> {
        Idealizer { module }
    }

    pub fn zero(&self) -> IdealizerElem {
        IdealizerElem::default()
    }

    pub fn one(&self) -> IdealizerElem {
        IdealizerElem { r: self.module.ring.one(), m: MElem::zero() }
    }

    pub fn from_ring(&self, r: RingElem) -> IdealizerElem {
        IdealizerElem { r, m: MElem::zero() }
    }

    pub fn from_module(&self, m: MElem) -> IdealizerElem {
        IdealizerElem { r: RingElem::zero(), m }
    }

    pub fn add(&self, a: &IdealizerElem, b: &IdealizerElem) -> IdealizerElem {
        IdealizerElem {
            r: self.module.ring.add(&a.r, &b.r),
            m: self.module.add(&a.m, &b.m),
        }
    }

    /// `(r, m)(r', m') = (rr', rm' + r'm)`.
    pub fn mul(&self, a: &IdealizerElem, b: &IdealizerElem) -> IdealizerElem {
        IdealizerElem {
            r: self.module.ring.mul(&a.r, &b.r),
            m: self.module.add(&self.module.act(&a.r, &b.m), &self.module.act(&b.r, &a.m)),
        }
    }

    /// Verifies, degree by degree up to `degree_bound`, that the quotient of
    /// the idealizer by a variable-generated prime matches the quotient of
    /// the base ring.
    ///
    /// `q_vars` lists the generating variables; the complement must be
    /// totally ordered (the prime shape). Checks: (i) every interior module
    /// basis element receives a collapse certificate through a successor
    /// variable inside the prime, (ii) the ring-part dimensions agree along
    /// two routes, (iii) surviving monomials never multiply to zero.
    pub fn check_quotient_iso(
        &self,
        q_vars: &[Elem],
        degree_bound: u32,
    ) -> Result<QuotientIsoReport> {
        let ring = self.module.ring;
        let poset = ring.poset;
        if !ring.is_prime_variable_ideal(q_vars) {
            let ids: Vec<&str> = q_vars.iter().map(|&e| poset.id(e)).collect();
            return Err(Error::NotPrimeShape(format!("{ids:?}")));
        }
        let surviving: Vec<Elem> =
            poset.variables().into_iter().filter(|e| !q_vars.contains(e)).collect();
        let mut report = QuotientIsoReport {
            prime: q_vars.iter().map(|&e| poset.id(e).to_string()).collect(),
            surviving_chain: surviving.iter().map(|&e| poset.id(e).to_string()).collect(),
            ring_quotient_dims: Vec::new(),
            iso_pieces_checked: 0,
            collapse_certificates: Vec::new(),
            frontier_excluded: 0,
            products_checked: 0,
            status: String::new(),
            failures: Vec::new(),
        };

        // (i) Module part collapses below the frontier.
        for b in self.module.enumerate_basis(degree_bound) {
            if poset.height(b.tau) >= poset.frontier_height() {
                report.frontier_excluded += 1;
                continue;
            }
            let omega =
                poset.immediate_successors(b.tau).into_iter().find(|w| q_vars.contains(w));
            let Some(omega) = omega else {
                report
                    .failures
                    .push(format!("no killing successor for {}", self.module.render_basis(&b)));
                continue;
            };
            let lifted = MBasisElem { mu: b.mu.clone(), tau: omega };
            if self.module.act_mono(&ChainMonomial::var(omega), &lifted).as_ref() == Some(&b) {
                report.collapse_certificates.push(PmCertificate {
                    element: self.module.render_basis(&b),
                    successor: poset.id(omega).to_string(),
                });
            } else {
                report
                    .failures
                    .push(format!("certificate failed for {}", self.module.render_basis(&b)));
            }
        }

        // (ii) Ring part: survivors of each degree, two routes.
        for d in 0..=degree_bound {
            let all = ring.monomials_of_degree(d);
            let survivors: Vec<&ChainMonomial> = all
                .iter()
                .filter(|m| m.support().all(|e| surviving.contains(&e)))
                .collect();
            let killed = all.iter().filter(|m| m.support().any(|e| q_vars.contains(&e))).count();
            if survivors.len() + killed != all.len() {
                report.failures.push(format!("piece decomposition broken in degree {d}"));
            }
            report.ring_quotient_dims.push(survivors.len());
            report.iso_pieces_checked += 1;

            // (iii) Products of survivors stay nonzero (their supports join
            // inside one chain).
            for (i, a) in survivors.iter().enumerate() {
                for b in survivors.iter().skip(i) {
                    if a.total_degree() + b.total_degree() > degree_bound {
                        continue;
                    }
                    report.products_checked += 1;
                    if ring.mono_mul(a, b).is_none() {
                        report.failures.push(format!(
                            "zero divisor among survivors: {} * {}",
                            ring.render_monomial(a),
                            ring.render_monomial(b)
                        ));
                    }
                }
            }
        }
        report.status = if report.failures.is_empty() { "ok" } else { "fail" }.to_string();
        Ok(report)
    }

    /// Runs the quotient check over every variable-generated prime of the
    /// truncated ring. The verdicts are bounded-degree evidence by design.
    pub fn prime_extension_report(&self, degree_bound: u32) -> PrimeExtensionReport {
        let ring = self.module.ring;
        let primes = ring.prime_variable_ideals();
        let reports = primes
            .iter()
            .map(|q| {
                self.check_quotient_iso(q, degree_bound)
                    .expect("enumerated variable sets have prime shape")
            })
            .collect();
        PrimeExtensionReport {
            degree_bound,
            evidence: "bounded-degree evidence on the truncated instance".to_string(),
            primes: reports,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use crate::ring::Ring;
    use crate::scalar::Field;

    fn ctx(poset: &Poset) -> Idealizer<'_> {
        Idealizer::new(Module::new(Ring::new(poset, Field::Rational)))
    }

    #[test]
    fn module_part_squares_to_zero() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        let basis = s.module.enumerate_basis(2);
        for a in &basis {
            for b in &basis {
                let x = s.from_module(s.module.elem(a.clone()));
                let y = s.from_module(s.module.elem(b.clone()));
                let prod = s.mul(&x, &y);
                assert!(prod.r.is_zero() && prod.m.is_zero());
            }
        }
    }

    #[test]
    fn unit_and_mixed_products() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        let r = s.module.ring;
        let x0 = r.var(p.elem("0").unwrap());
        let u0 = s.module.elem(s.module.generator(p.elem("0").unwrap()));
        let a = IdealizerElem { r: x0.clone(), m: u0.clone() };

        assert_eq!(s.mul(&s.one(), &a), a);

        let prod = s.mul(&s.from_ring(x0), &s.from_module(u0));
        assert!(prod.r.is_zero());
        assert_eq!(prod.m, s.module.elem(s.module.generator(p.elem("").unwrap())));
    }

    #[test]
    fn mul_is_commutative_associative_on_small_elements() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        let r = s.module.ring;
        let mut pool = vec![s.one(), s.from_ring(r.var(p.elem("0").unwrap()))];
        pool.push(s.from_module(s.module.elem(s.module.generator(p.elem("0").unwrap()))));
        pool.push(IdealizerElem {
            r: r.add(&r.one(), &r.var(p.elem("1").unwrap())),
            m: s.module.elem(s.module.generator(p.elem("01").unwrap())),
        });
        pool.push(s.from_module(s.module.elem(s.module.generator(p.elem("").unwrap()))));
        for a in &pool {
            for b in &pool {
                assert_eq!(s.mul(a, b), s.mul(b, a));
                for c in &pool {
                    assert_eq!(s.mul(&s.mul(a, b), c), s.mul(a, &s.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn quotient_by_minimal_prime_is_polynomial_on_the_chain() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        let r = s.module.ring;
        for chain in p.maximal_chains() {
            let q: Vec<_> =
                p.variables().into_iter().filter(|e| !chain.contains(e)).collect();
            let report = s.check_quotient_iso(&q, 4).unwrap();
            assert!(report.is_ok(), "{:?}", report.failures);
            // Polynomial ring on H = 2 variables: dims 1, 2, 3, 4, 5.
            assert_eq!(report.ring_quotient_dims, vec![1, 2, 3, 4, 5]);
            assert!(report.frontier_excluded > 0);
        }
        // Enlarged prime: add the top chain variable; the quotient shrinks.
        let chain = p.chain_below(p.elem("00").unwrap());
        let mut q: Vec<_> = p.variables().into_iter().filter(|e| !chain.contains(e)).collect();
        q.push(p.elem("00").unwrap());
        q.sort();
        let report = s.check_quotient_iso(&q, 4).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.ring_quotient_dims, vec![1, 1, 1, 1, 1]);

        // All variables: the residue field.
        let report = s.check_quotient_iso(&p.variables(), 4).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.ring_quotient_dims, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn non_prime_shape_is_rejected() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        // Killing only "10" leaves "0" and "1" alive: not a chain.
        let q = vec![p.elem("10").unwrap()];
        assert!(s.check_quotient_iso(&q, 3).is_err());
    }

    #[test]
    fn prime_extension_report_covers_all_primes() {
        let p = Poset::binary(2);
        let s = ctx(&p);
        let report = s.prime_extension_report(3);
        assert_eq!(report.primes.len(), 11);
        assert!(report.is_ok());
        // Minimal primes appear among the entries: complement size is 4.
        let minimal = report.primes.iter().filter(|r| r.prime.len() == 4).count();
        assert_eq!(minimal, 4);
    }
}
