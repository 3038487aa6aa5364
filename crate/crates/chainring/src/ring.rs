//! Arithmetic in the quotient of a polynomial ring by the squarefree monomial
//! ideal of incomparable pairs.
//!
//! Variables are indexed by the non-minimal poset elements. Products of
//! variables at incomparable indices vanish, so a K-basis is given by the
//! monomials whose support is totally ordered ("chain monomials"). Monomial
//! ideals, their lcm-based intersections, and the dictionary between maximal
//! chains and minimal primes all live here.

use serde::Serialize;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{Elem, Poset};
use crate::scalar::{Field, Scalar};

/// A monomial with chain support. The empty product is `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ChainMonomial {
    /// (element, exponent) pairs, sorted by element id, exponents positive.
    exps: Vec<(Elem, u32)>,
}

impl ChainMonomial {
    pub fn one() -> ChainMonomial {
        ChainMonomial::default()
    }

    pub fn var(e: Elem) -> ChainMonomial {
        ChainMonomial { exps: vec![(e, 1)] }
    }

    pub fn power(e: Elem, k: u32) -> ChainMonomial {
        if k == 0 {
            ChainMonomial::one()
        } else {
            ChainMonomial { exps: vec![(e, k)] }
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&(_, k)| k).sum()
    }

    pub fn exponent(&self, e: Elem) -> u32 {
        self.exps.iter().find(|&&(s, _)| s == e).map_or(0, |&(_, k)| k)
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.exps.iter().map(|&(e, _)| e)
    }

    pub fn exps(&self) -> &[(Elem, u32)] {
        &self.exps
    }

    /// True iff `other` divides `self` exponentwise.
    pub fn divisible_by(&self, other: &ChainMonomial) -> bool {
        other.exps.iter().all(|&(e, k)| self.exponent(e) >= k)
    }

    /// Exponentwise quotient, when `other` divides `self`.
    pub fn div(&self, other: &ChainMonomial) -> Option<ChainMonomial> {
        if !self.divisible_by(other) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .filter_map(|&(e, k)| {
                let rest = k - other.exponent(e);
                (rest > 0).then_some((e, rest))
            })
            .collect();
        Some(ChainMonomial { exps })
    }

    fn from_sorted(exps: Vec<(Elem, u32)>) -> ChainMonomial {
        debug_assert!(exps.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(exps.iter().all(|&(_, k)| k > 0));
        ChainMonomial { exps }
    }

    /// Sorts, merges, and drops zero exponents. Does not check the chain
    /// condition; callers enumerate supports that are chains by construction.
    pub(crate) fn from_pairs(pairs: Vec<(Elem, u32)>) -> ChainMonomial {
        let mut merged: BTreeMap<Elem, u32> = BTreeMap::new();
        for (e, k) in pairs {
            *merged.entry(e).or_insert(0) += k;
        }
        let exps = merged.into_iter().filter(|&(_, k)| k > 0).collect();
        ChainMonomial::from_sorted(exps)
    }
}

impl Ord for ChainMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total degree first, then lexicographic on the support ids
        // (element handles sort by id) with exponents.
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for ChainMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free abelian group on the poset, with finite support.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Multidegree(BTreeMap<Elem, i64>);

impl Multidegree {
    pub fn zero() -> Multidegree {
        Multidegree::default()
    }

    pub fn coeff(&self, e: Elem) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn add_to(&mut self, e: Elem, delta: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += delta;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn plus(&self, other: &Multidegree) -> Multidegree {
        let mut out = self.clone();
        for (&e, &v) in &other.0 {
            out.add_to(e, v);
        }
        out
    }

    /// Sum of all components: the induced Z-grading.
    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Elem, i64)> + '_ {
        self.0.iter().map(|(&e, &v)| (e, v))
    }

    pub fn to_json_value(&self, poset: &Poset) -> serde_json::Value {
        let map: BTreeMap<String, i64> =
            self.entries().map(|(e, v)| (poset.id(e).to_string(), v)).collect();
        serde_json::to_value(map).expect("multidegree serialization cannot fail")
    }
}

/// A K-linear combination of chain monomials, in canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RingElem {
    terms: BTreeMap<ChainMonomial, Scalar>,
}

impl RingElem {
    pub fn zero() -> RingElem {
        RingElem::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ChainMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &ChainMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    fn insert(&mut self, m: ChainMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let sum = old.add(&c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
        }
    }
}

/// A monomial ideal presented by its unique minimal (antichain) generators.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MonomialIdeal {
    gens: Vec<ChainMonomial>,
}

impl MonomialIdeal {
    pub fn zero() -> MonomialIdeal {
        MonomialIdeal::default()
    }

    /// Minimalizes an arbitrary generating set to a sorted antichain.
    pub fn new(mut gens: Vec<ChainMonomial>) -> MonomialIdeal {
        gens.sort();
        gens.dedup();
        let keep: Vec<ChainMonomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && g.divisible_by(h)))
            .cloned()
            .collect();
        MonomialIdeal { gens: keep }
    }

    pub fn generators(&self) -> &[ChainMonomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Membership of a chain monomial: some generator divides it.
    pub fn contains(&self, m: &ChainMonomial) -> bool {
        self.gens.iter().any(|g| m.divisible_by(g))
    }
}

/// Ring context: the poset that indexes the variables plus the scalar field.
#[derive(Clone, Copy)]
pub struct Ring<'p> {
    pub poset: &'p Poset,
    pub field: Field,
}

impl<'p> Ring<'p> {
    pub fn new(poset: &'p Poset, field: Field) -> Ring<'p> {
        Ring { poset, field }
    }

    /// True iff the elements are pairwise comparable.
    pub fn is_chain(&self, elems: &[Elem]) -> bool {
        let mut sorted: Vec<Elem> = elems.to_vec();
        sorted.sort_by_key(|&e| self.poset.height(e));
        sorted.windows(2).all(|w| self.poset.leq(w[0], w[1]))
    }

    /// Builds a monomial from (id, exponent) pairs, checking the support.
    pub fn monomial(&self, exps: &[(&str, u32)]) -> Result<ChainMonomial> {
        let mut pairs = Vec::new();
        for &(id, k) in exps {
            if k == 0 {
                continue;
            }
            let e = self.poset.elem(id)?;
            if self.poset.is_minimal(e) {
                return Err(Error::invalid(format!("minimal element `{id}` has no variable")));
            }
            pairs.push((e, k));
        }
        pairs.sort_by_key(|&(e, _)| e);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("repeated variable in monomial"));
        }
        let support: Vec<Elem> = pairs.iter().map(|&(e, _)| e).collect();
        if !self.is_chain(&support) {
            return Err(Error::invalid("monomial support is not a chain"));
        }
        Ok(ChainMonomial::from_sorted(pairs))
    }

    /// Product of chain monomials: `None` is the zero of the quotient ring,
    /// reached exactly when the combined support is not a chain.
    pub fn mono_mul(&self, a: &ChainMonomial, b: &ChainMonomial) -> Option<ChainMonomial> {
        let merged = merge_exps(a, b, |x, y| x + y);
        let support: Vec<Elem> = merged.iter().map(|&(e, _)| e).collect();
        if !self.is_chain(&support) {
            return None;
        }
        Some(ChainMonomial::from_sorted(merged))
    }

    /// Least common multiple; `None` when the combined support is not a chain.
    pub fn mono_lcm(&self, a: &ChainMonomial, b: &ChainMonomial) -> Option<ChainMonomial> {
        let merged = merge_exps(a, b, |x, y| x.max(y));
        let support: Vec<Elem> = merged.iter().map(|&(e, _)| e).collect();
        if !self.is_chain(&support) {
            return None;
        }
        Some(ChainMonomial::from_sorted(merged))
    }

    pub fn multidegree(&self, m: &ChainMonomial) -> Multidegree {
        let mut d = Multidegree::zero();
        for &(e, k) in m.exps() {
            d.add_to(e, k as i64);
        }
        d
    }

    pub fn zero(&self) -> RingElem {
        RingElem::zero()
    }

    pub fn one(&self) -> RingElem {
        self.mono(ChainMonomial::one())
    }

    pub fn mono(&self, m: ChainMonomial) -> RingElem {
        let mut out = RingElem::zero();
        out.insert(m, self.field.one());
        out
    }

    pub fn var(&self, e: Elem) -> RingElem {
        self.mono(ChainMonomial::var(e))
    }

    pub fn term(&self, c: Scalar, m: ChainMonomial) -> RingElem {
        let mut out = RingElem::zero();
        out.insert(m, c);
        out
    }

    pub fn add(&self, f: &RingElem, g: &RingElem) -> RingElem {
        let mut out = f.clone();
        for (m, c) in g.terms() {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, f: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (m, c) in f.terms() {
            out.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, f: &RingElem, g: &RingElem) -> RingElem {
        self.add(f, &self.neg(g))
    }

    pub fn scalar_mul(&self, c: &Scalar, f: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (m, a) in f.terms() {
            out.insert(m.clone(), c.mul(a));
        }
        out
    }

    /// Quotient-ring product: bilinear extension of `mono_mul`.
    pub fn mul(&self, f: &RingElem, g: &RingElem) -> RingElem {
        let mut out = RingElem::zero();
        for (m, a) in f.terms() {
            for (n, b) in g.terms() {
                if let Some(prod) = self.mono_mul(m, n) {
                    out.insert(prod, a.mul(b));
                }
            }
        }
        out
    }

    /// Terms of the given total degree.
    pub fn homogeneous_component(&self, f: &RingElem, d: u32) -> RingElem {
        let mut out = RingElem::zero();
        for (m, c) in f.terms() {
            if m.total_degree() == d {
                out.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// The lowest-degree nonzero homogeneous component, with its degree.
    pub fn lowest_component(&self, f: &RingElem) -> Option<(u32, RingElem)> {
        let d = f.terms().map(|(m, _)| m.total_degree()).min()?;
        Some((d, self.homogeneous_component(f, d)))
    }

    /// The canonical K-basis of the degree-`d` graded piece.
    ///
    /// Every chain monomial has a unique top (maximal support element), so the
    /// enumeration walks tops and distributes the remaining degree over the
    /// strictly lower chain.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<ChainMonomial> {
        if d == 0 {
            return vec![ChainMonomial::one()];
        }
        let mut out = Vec::new();
        for top in self.poset.variables() {
            // Variables strictly below the top, lowest first, minimal excluded.
            let lower: Vec<Elem> = self
                .poset
                .chain_below(top)
                .into_iter()
                .filter(|&e| !self.poset.is_minimal(e) && e != top)
                .collect();
            let mut stack: Vec<(usize, u32, Vec<(Elem, u32)>)> = vec![(0, d - 1, vec![])];
            while let Some((i, rest, acc)) = stack.pop() {
                if i == lower.len() {
                    let mut exps = acc.clone();
                    exps.push((top, rest + 1));
                    exps.retain(|&(_, k)| k > 0);
                    exps.sort_by_key(|&(e, _)| e);
                    out.push(ChainMonomial::from_sorted(exps));
                    continue;
                }
                for k in 0..=rest {
                    let mut acc2 = acc.clone();
                    if k > 0 {
                        acc2.push((lower[i], k));
                    }
                    stack.push((i + 1, rest - k, acc2));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn monomials_up_to_degree(&self, d: u32) -> Vec<ChainMonomial> {
        (0..=d).flat_map(|k| self.monomials_of_degree(k)).collect()
    }

    /// The minimal prime attached to a maximal chain: all variables whose
    /// index lies outside the chain.
    pub fn minimal_prime(&self, chain: &[Elem]) -> Result<MonomialIdeal> {
        let top = *chain.last().ok_or_else(|| Error::NotMaximalChain("empty chain".into()))?;
        if self.poset.height(top) != self.poset.frontier_height()
            || self.poset.chain_below(top) != chain
        {
            let ids: Vec<&str> = chain.iter().map(|&e| self.poset.id(e)).collect();
            return Err(Error::NotMaximalChain(format!("{ids:?}")));
        }
        let gens = self
            .poset
            .variables()
            .into_iter()
            .filter(|e| !chain.contains(e))
            .map(ChainMonomial::var)
            .collect();
        Ok(MonomialIdeal::new(gens))
    }

    /// Intersection via pairwise lcms; pairs whose supports are incompatible
    /// contribute nothing (their lcm is zero in the quotient).
    pub fn ideal_intersect(&self, i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::new();
        for a in i.generators() {
            for b in j.generators() {
                if let Some(l) = self.mono_lcm(a, b) {
                    gens.push(l);
                }
            }
        }
        MonomialIdeal::new(gens)
    }

    pub fn ideal_sum(&self, i: &MonomialIdeal, j: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = i.generators().to_vec();
        gens.extend_from_slice(j.generators());
        MonomialIdeal::new(gens)
    }

    /// Basis monomials of total degree `d` inside the ideal.
    pub fn ideal_piece(&self, i: &MonomialIdeal, d: u32) -> Vec<ChainMonomial> {
        self.monomials_of_degree(d).into_iter().filter(|m| i.contains(m)).collect()
    }

    /// True iff killing the variables in `a` leaves a domain: the surviving
    /// variable indices must be totally ordered.
    pub fn is_prime_variable_ideal(&self, a: &[Elem]) -> bool {
        let survivors: Vec<Elem> =
            self.poset.variables().into_iter().filter(|e| !a.contains(e)).collect();
        self.is_chain(&survivors)
    }

    /// All variable sets whose span is prime: complements of chains in the
    /// variable poset (the chain need not be saturated or maximal).
    pub fn prime_variable_ideals(&self) -> Vec<Vec<Elem>> {
        let vars = self.poset.variables();
        let mut chains: Vec<Vec<Elem>> = vec![vec![]];
        for top in &vars {
            // Chains with a fixed top: any subset of the strictly-lower
            // variables, plus the top itself.
            let lower: Vec<Elem> = self
                .poset
                .chain_below(*top)
                .into_iter()
                .filter(|&e| !self.poset.is_minimal(e) && e != *top)
                .collect();
            for mask in 0..(1u64 << lower.len()) {
                let mut chain: Vec<Elem> = lower
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                chain.push(*top);
                chains.push(chain);
            }
        }
        let mut out: Vec<Vec<Elem>> = chains
            .into_iter()
            .map(|chain| vars.iter().copied().filter(|e| !chain.contains(e)).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn render_monomial(&self, m: &ChainMonomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        m.exps()
            .iter()
            .map(|&(e, k)| {
                let id = self.poset.id(e);
                if k == 1 {
                    format!("x_{{{id}}}")
                } else {
                    format!("x_{{{id}}}^{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render_elem(&self, f: &RingElem) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        f.terms()
            .map(|(m, c)| {
                if m.is_one() {
                    c.render()
                } else if c.is_one() {
                    self.render_monomial(m)
                } else {
                    format!("{}*{}", c.render(), self.render_monomial(m))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Serializes per the interchange schema:
    /// `[{"coeff": "...", "monomial": {"id": exp, ...}}, ...]`.
    pub fn elem_to_json(&self, f: &RingElem) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            monomial: BTreeMap<String, u32>,
        }
        let terms: Vec<Term> = f
            .terms()
            .map(|(m, c)| Term {
                coeff: c.render(),
                monomial: m
                    .exps()
                    .iter()
                    .map(|&(e, k)| (self.poset.id(e).to_string(), k))
                    .collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("ring element serialization cannot fail")
    }

    pub fn elem_from_json(&self, value: &serde_json::Value) -> Result<RingElem> {
        let terms = value
            .as_array()
            .ok_or_else(|| Error::invalid("ring element JSON must be an array of terms"))?;
        let mut out = RingElem::zero();
        for t in terms {
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::invalid("term is missing a string `coeff`"))?;
            let c = self.field.parse_scalar(coeff)?;
            let mono = t
                .get("monomial")
                .and_then(|m| m.as_object())
                .ok_or_else(|| Error::invalid("term is missing a `monomial` object"))?;
            let mut exps = Vec::new();
            for (id, k) in mono {
                let k = k
                    .as_u64()
                    .ok_or_else(|| Error::invalid("monomial exponent must be an integer"))?;
                exps.push((id.as_str(), k as u32));
            }
            let m = self.monomial(&exps)?;
            out.insert(m, c);
        }
        Ok(out)
    }
}

fn merge_exps(
    a: &ChainMonomial,
    b: &ChainMonomial,
    combine: impl Fn(u32, u32) -> u32,
) -> Vec<(Elem, u32)> {
    let mut merged: BTreeMap<Elem, (u32, u32)> = BTreeMap::new();
    for &(e, k) in a.exps() {
        merged.entry(e).or_insert((0, 0)).0 = k;
    }
    for &(e, k) in b.exps() {
        merged.entry(e).or_insert((0, 0)).1 = k;
    }
    merged
        .into_iter()
        .map(|(e, (x, y))| (e, combine(x, y)))
        .filter(|&(_, k)| k > 0)
        .collect()
}

impl fmt::Display for ChainMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(e, k)| if k == 1 { format!("x[{}]", e.0) } else { format!("x[{}]^{}", e.0, k) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn ring(poset: &Poset) -> Ring<'_> {
        Ring::new(poset, Field::Rational)
    }

    #[test]
    fn mono_mul_respects_chains() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let x0 = r.monomial(&[("0", 1)]).unwrap();
        let x01 = r.monomial(&[("01", 1)]).unwrap();
        let x1 = r.monomial(&[("1", 1)]).unwrap();

        let prod = r.mono_mul(&x0, &x01).unwrap();
        assert_eq!(prod, r.monomial(&[("0", 1), ("01", 1)]).unwrap());
        assert!(r.mono_mul(&x0, &x1).is_none());

        let sq = r.monomial(&[("0", 2)]).unwrap();
        assert_eq!(r.mono_mul(&ChainMonomial::one(), &sq).unwrap(), sq);
    }

    #[test]
    fn monomial_constructor_rejects_bad_support() {
        let p = Poset::binary(2);
        let r = ring(&p);
        assert!(r.monomial(&[("0", 1), ("1", 1)]).is_err());
        assert!(r.monomial(&[("", 1)]).is_err());
        assert!(r.monomial(&[("0", 0), ("00", 1)]).is_ok());
    }

    #[test]
    fn square_of_sum_drops_cross_terms() {
        let p = Poset::binary(1);
        let r = ring(&p);
        let f = r.add(&r.var(p.elem("0").unwrap()), &r.var(p.elem("1").unwrap()));
        let sq = r.mul(&f, &f);
        let expected = r.add(
            &r.mono(r.monomial(&[("0", 2)]).unwrap()),
            &r.mono(r.monomial(&[("1", 2)]).unwrap()),
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn unit_law_and_degree_filter() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let f = r.add(
            &r.add(&r.one(), &r.var(p.elem("0").unwrap())),
            &r.mono(r.monomial(&[("0", 1), ("00", 1)]).unwrap()),
        );
        assert_eq!(r.mul(&f, &r.one()), f);
        let deg2 = r.homogeneous_component(&f, 2);
        assert_eq!(deg2, r.mono(r.monomial(&[("0", 1), ("00", 1)]).unwrap()));
    }

    #[test]
    fn minimal_prime_is_chain_complement() {
        let p1 = Poset::binary(1);
        let r1 = ring(&p1);
        let chain = p1.chain_below(p1.elem("0").unwrap());
        let prime = r1.minimal_prime(&chain).unwrap();
        assert_eq!(prime.generators(), &[ChainMonomial::var(p1.elem("1").unwrap())]);

        let p2 = Poset::binary(2);
        let r2 = ring(&p2);
        let chain = p2.chain_below(p2.elem("00").unwrap());
        let prime = r2.minimal_prime(&chain).unwrap();
        let ids: Vec<&str> =
            prime.generators().iter().map(|g| p2.id(g.support().next().unwrap())).collect();
        assert_eq!(ids, vec!["01", "1", "10", "11"]);

        // Non-maximal chain is rejected.
        assert!(r2.minimal_prime(&p2.chain_below(p2.elem("0").unwrap())).is_err());
    }

    #[test]
    fn minimal_primes_intersect_to_zero_degreewise() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let primes: Vec<MonomialIdeal> =
            p.maximal_chains().iter().map(|c| r.minimal_prime(c).unwrap()).collect();

        // Fold with the lcm rule.
        let mut acc = primes[0].clone();
        for prime in &primes[1..] {
            acc = r.ideal_intersect(&acc, prime);
        }
        assert!(acc.is_zero());

        // Degreewise brute force agrees.
        for d in 0..=4 {
            for m in r.monomials_of_degree(d) {
                let in_all = primes.iter().all(|prime| prime.contains(&m));
                assert!(!in_all, "monomial {m} lies in every minimal prime");
            }
        }
    }

    #[test]
    fn ideal_operations_match_examples() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let x0 = r.monomial(&[("0", 1)]).unwrap();
        let x1 = r.monomial(&[("1", 1)]).unwrap();
        let x0x00 = r.monomial(&[("0", 1), ("00", 1)]).unwrap();
        let x0sq = r.monomial(&[("0", 2)]).unwrap();

        let i0 = MonomialIdeal::new(vec![x0.clone()]);
        assert!(i0.contains(&x0x00));

        let i1 = MonomialIdeal::new(vec![x1.clone()]);
        assert!(r.ideal_intersect(&i0, &i1).is_zero());

        let a = MonomialIdeal::new(vec![x0sq.clone()]);
        let b = MonomialIdeal::new(vec![x0x00.clone()]);
        let meet = r.ideal_intersect(&a, &b);
        assert_eq!(meet.generators(), &[r.monomial(&[("0", 2), ("00", 1)]).unwrap()]);

        let join = r.ideal_sum(&a, &b);
        assert_eq!(join.generators().len(), 2);
    }

    #[test]
    fn ideal_intersect_agrees_with_degreewise_brute_force() {
        let p = Poset::binary(3);
        let r = ring(&p);
        let pool = r.monomials_up_to_degree(2);
        // A handful of deterministic generator picks across the pool.
        for step in 1..6 {
            let gens_a: Vec<ChainMonomial> = pool.iter().step_by(step + 1).cloned().collect();
            let gens_b: Vec<ChainMonomial> = pool.iter().skip(step).step_by(7).cloned().collect();
            let a = MonomialIdeal::new(gens_a);
            let b = MonomialIdeal::new(gens_b);
            let meet = r.ideal_intersect(&a, &b);
            for d in 0..=5 {
                for m in r.monomials_of_degree(d) {
                    assert_eq!(
                        meet.contains(&m),
                        a.contains(&m) && b.contains(&m),
                        "membership mismatch at {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn prime_shape_detection() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let all: Vec<Elem> = p.variables();
        // Complement of a maximal chain is prime.
        let chain = p.chain_below(p.elem("00").unwrap());
        let comp: Vec<Elem> = all.iter().copied().filter(|e| !chain.contains(e)).collect();
        assert!(r.is_prime_variable_ideal(&comp));
        // The zero ideal is not prime: "0" and "1" survive.
        assert!(!r.is_prime_variable_ideal(&[]));
        // Killing everything leaves the field.
        assert!(r.is_prime_variable_ideal(&all));
    }

    #[test]
    fn prime_variable_ideal_enumeration_is_consistent() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let primes = r.prime_variable_ideals();
        for a in &primes {
            assert!(r.is_prime_variable_ideal(a));
        }
        // Chains: empty + per-top subsets: 2*(1) at h=1 + 4*(2) at h=2 = 11.
        assert_eq!(primes.len(), 11);
    }

    #[test]
    fn graded_piece_dimensions() {
        let p = Poset::binary(2);
        let r = ring(&p);
        assert_eq!(r.monomials_of_degree(0).len(), 1);
        assert_eq!(r.monomials_of_degree(1).len(), 6);
        // Degree 2: squares (6) + products along saturated pairs (4).
        assert_eq!(r.monomials_of_degree(2).len(), 10);
    }

    #[test]
    fn mul_is_commutative_and_associative_exhaustively() {
        let p = Poset::binary(3);
        let r = ring(&p);
        let monos = r.monomials_up_to_degree(3);
        for a in &monos {
            for b in &monos {
                assert_eq!(r.mono_mul(a, b), r.mono_mul(b, a));
            }
        }
        for a in &monos {
            for b in &monos {
                let ab = r.mono_mul(a, b);
                for c in &monos {
                    let left = ab.as_ref().and_then(|ab| r.mono_mul(ab, c));
                    let right = r.mono_mul(b, c).and_then(|bc| r.mono_mul(a, &bc));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn graded_nonzerodivisor_property() {
        // f = c + f' with c != 0: the lowest component of f*v is c times the
        // lowest component of v, so f is a nonzerodivisor.
        let p = Poset::binary(2);
        let r = ring(&p);
        let c = Field::Rational.from_i64(3);
        let mut f = r.term(c.clone(), ChainMonomial::one());
        f = r.add(&f, &r.var(p.elem("0").unwrap()));
        f = r.add(&f, &r.mono(r.monomial(&[("1", 1), ("10", 1)]).unwrap()));
        for d in 0..=4 {
            for m in r.monomials_of_degree(d) {
                let v = r.mono(m.clone());
                let prod = r.mul(&f, &v);
                let (low_deg, low) = r.lowest_component(&prod).unwrap();
                assert_eq!(low_deg, d);
                assert_eq!(low, r.scalar_mul(&c, &v));
            }
        }
    }

    #[test]
    fn elem_json_round_trip() {
        let p = Poset::binary(2);
        let r = ring(&p);
        let f = r.add(
            &r.term(Field::Rational.parse_scalar("3/7").unwrap(), ChainMonomial::one()),
            &r.mono(r.monomial(&[("0", 2), ("00", 1)]).unwrap()),
        );
        let json = r.elem_to_json(&f);
        let back = r.elem_from_json(&json).unwrap();
        assert_eq!(f, back);
    }
}
