//! Finite-dimensional commutative algebras by structure constants.
//!
//! This is the instance lab: algebras, modules by action matrices, and
//! algebra maps, all over an exact field, with ideal arithmetic done by
//! echelon linear algebra. The flatness, intersection-flatness, content, and
//! prime-intersection checks live in [`flatness`]; instance generation and
//! the JSON interchange format live in [`instances`].

pub mod flatness;
pub mod instances;
pub mod linalg;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use linalg::{vec_is_zero, vec_scale, Mat, Subspace};

/// A commutative associative unital K-algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct FinAlg {
    pub field: Field,
    pub dim: usize,
    pub labels: Vec<String>,
    /// `mult[i][j]` is the coordinate vector of the product of basis i and j.
    mult: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl FinAlg {
    /// Validates commutativity, associativity, and the unit law on basis
    /// elements (which extends bilinearly to the whole algebra).
    pub fn new(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<FinAlg> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidInstance("algebra must be nonzero".to_string()));
        }
        if mult.len() != dim
            || mult.iter().any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
            || unit.len() != dim
        {
            return Err(Error::Dimension("structure constant table shape".to_string()));
        }
        let alg = FinAlg { field, dim, labels, mult, unit };
        for i in 0..dim {
            for j in 0..dim {
                if alg.mult[i][j] != alg.mult[j][i] {
                    return Err(Error::InvalidInstance(format!(
                        "not commutative at basis pair ({i},{j})"
                    )));
                }
            }
        }
        for i in 0..dim {
            let e = alg.basis_vec(i);
            if alg.mul_vec(&alg.unit, &e) != e {
                return Err(Error::InvalidInstance(format!("unit law fails at basis {i}")));
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = alg.mult[i][j].clone();
                for k in 0..dim {
                    let left = alg.mul_vec(&ij, &alg.basis_vec(k));
                    let right = alg.mul_vec(&alg.basis_vec(i), &alg.mult[j][k]);
                    if left != right {
                        return Err(Error::InvalidInstance(format!(
                            "not associative at basis triple ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn mul_vec(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let c = a[i].mul(&b[j]);
                for k in 0..self.dim {
                    let s = &self.mult[i][j][k];
                    if !s.is_zero() {
                        out[k] = out[k].add(&c.mul(s));
                    }
                }
            }
        }
        out
    }

    /// The multiplication-by-`a` operator.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_vec(a, &self.basis_vec(j));
            for i in 0..self.dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    pub fn is_nilpotent(&self, a: &[Scalar]) -> bool {
        self.left_mul_matrix(a).pow(self.dim as u32).is_zero()
    }

    /// The annihilator of `a` as a subspace (it is automatically an ideal).
    pub fn annihilator(&self, a: &[Scalar]) -> Subspace {
        let kernel = self.left_mul_matrix(a).kernel_basis();
        Subspace::span(self.field, self.dim, &kernel)
    }

    /// Smallest ideal containing the generators: span closed under
    /// multiplication by basis elements.
    pub fn ideal_from_gens(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let mut space = Subspace::span(self.field, self.dim, gens);
        loop {
            let mut grew = false;
            let mut vectors = space.basis().to_vec();
            for v in space.basis() {
                for j in 0..self.dim {
                    let prod = self.mul_vec(v, &self.basis_vec(j));
                    if !space.contains(&prod) {
                        vectors.push(prod);
                        grew = true;
                    }
                }
            }
            if !grew {
                return space;
            }
            space = Subspace::span(self.field, self.dim, &vectors);
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            (0..self.dim).all(|j| s.contains(&self.mul_vec(v, &self.basis_vec(j))))
        })
    }

    /// Product ideal: span of pairwise products of the bases.
    pub fn ideal_product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vectors = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vectors.push(self.mul_vec(x, y));
            }
        }
        self.ideal_from_gens(&vectors)
    }

    /// Quotient algebra by an ideal, with the projection data.
    pub fn quotient(&self, ideal: &Subspace) -> Result<AlgQuotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::InvalidInstance("subspace is not an ideal".to_string()));
        }
        let reduced: Vec<usize> =
            (0..self.dim).filter(|&j| !vec_is_zero(&ideal.reduce(&self.basis_vec(j)))).collect();
        // Surviving coordinates: standard basis vectors that stay independent
        // mod the ideal, i.e. the non-pivot columns of its echelon basis.
        let surviving: Vec<usize> = {
            let pivotless: Vec<usize> = (0..self.dim)
                .filter(|&j| {
                    let e = self.basis_vec(j);
                    let r = ideal.reduce(&e);
                    r == e
                })
                .collect();
            // reduce(e_j) == e_j exactly when j is not a pivot column.
            let _ = reduced;
            pivotless
        };
        let qdim = self.dim - ideal.dim();
        if surviving.len() != qdim {
            return Err(Error::Dimension(
                "quotient basis selection disagrees with codimension".to_string(),
            ));
        }
        if qdim == 0 {
            return Err(Error::InvalidInstance("quotient by the unit ideal is zero".to_string()));
        }
        let project = |v: &[Scalar]| -> Vec<Scalar> {
            let r = ideal.reduce(v);
            surviving.iter().map(|&j| r[j].clone()).collect()
        };
        let labels = surviving.iter().map(|&j| self.labels[j].clone()).collect();
        let mut mult = vec![vec![Vec::new(); qdim]; qdim];
        for (a, &ja) in surviving.iter().enumerate() {
            for (b, &jb) in surviving.iter().enumerate() {
                mult[a][b] = project(&self.mult[ja][jb]);
            }
        }
        let unit = project(&self.unit);
        let alg = FinAlg::new(self.field, labels, mult, unit)?;
        let mut proj = Mat::zeros(self.field, qdim, self.dim);
        for j in 0..self.dim {
            let col = project(&self.basis_vec(j));
            for i in 0..qdim {
                proj.set(i, j, col[i].clone());
            }
        }
        Ok(AlgQuotient { alg, proj, surviving })
    }

    /// The maximal ideal, assuming the algebra is local with residue field K.
    ///
    /// Each basis element must differ from a unique scalar multiple of 1 by a
    /// nilpotent; the span of those differences must be an ideal of
    /// codimension one. Anything else is rejected.
    pub fn maximal_ideal_local(&self) -> Result<Subspace> {
        let mut diffs = Vec::new();
        for i in 0..self.dim {
            let e = self.basis_vec(i);
            let c = self.residue_candidate(&e)?;
            diffs.push(linalg::vec_sub(&e, &vec_scale(&c, &self.unit)));
        }
        let m = Subspace::span(self.field, self.dim, &diffs);
        if m.dim() + 1 != self.dim {
            return Err(Error::NotLocal("nilpotent differences span the wrong codimension".into()));
        }
        if !self.is_ideal(&m) {
            return Err(Error::NotLocal("nilpotent differences do not form an ideal".into()));
        }
        Ok(m)
    }

    /// The unique scalar `c` with `a - c*1` nilpotent, if one exists.
    fn residue_candidate(&self, a: &[Scalar]) -> Result<Scalar> {
        match self.field {
            Field::Rational => {
                // Nilpotent part has trace zero, so c is trace/dim.
                let t = self.left_mul_matrix(a).trace();
                let c = t.div(&self.field.from_i64(self.dim as i64)).expect("dim is nonzero in Q");
                let diff = linalg::vec_sub(a, &vec_scale(&c, &self.unit));
                if self.is_nilpotent(&diff) {
                    Ok(c)
                } else {
                    Err(Error::NotLocal("basis element has no scalar residue".into()))
                }
            }
            Field::Prime(p) => {
                let mut found = None;
                for v in 0..p {
                    let c = Field::Prime(p).from_i64(v as i64);
                    let diff = linalg::vec_sub(a, &vec_scale(&c, &self.unit));
                    if self.is_nilpotent(&diff) {
                        found = Some(c);
                        break;
                    }
                }
                found.ok_or_else(|| Error::NotLocal("basis element has no scalar residue".into()))
            }
        }
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideal_local().is_ok()
    }

    /// Ideals generated by subsets of the basis (deterministic order).
    pub fn subset_generated_ideals(&self) -> Vec<Subspace> {
        let mut out = Vec::new();
        for mask in 0..(1u64 << self.dim) {
            let gens: Vec<Vec<Scalar>> = (0..self.dim)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.basis_vec(i))
                .collect();
            out.push(self.ideal_from_gens(&gens));
        }
        dedup_subspaces(out)
    }

    /// All ideals, for small algebras over small finite fields. `None` when
    /// the element count is too large to enumerate.
    pub fn all_ideals(&self, element_cap: usize) -> Option<Vec<Subspace>> {
        let elements = self.enumerate_elements(element_cap)?;
        let nonzero: Vec<Vec<Scalar>> =
            elements.into_iter().filter(|v| !vec_is_zero(v)).collect();
        if nonzero.len() > 20 {
            return None;
        }
        let mut seen = Vec::new();
        for mask in 0..(1u64 << nonzero.len()) {
            let gens: Vec<Vec<Scalar>> = (0..nonzero.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| nonzero[i].clone())
                .collect();
            let span = Subspace::span(self.field, self.dim, &gens);
            if self.is_ideal(&span) && !seen.contains(&span) {
                seen.push(span);
            }
        }
        Some(dedup_subspaces(seen))
    }

    /// All coordinate vectors, when the field is finite and small enough.
    pub fn enumerate_elements(&self, cap: usize) -> Option<Vec<Vec<Scalar>>> {
        let Field::Prime(p) = self.field else { return None };
        let count = (p as u128).checked_pow(self.dim as u32)?;
        if count > cap as u128 {
            return None;
        }
        let scalars = self.field.enumerate()?;
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim {
            let mut next = Vec::with_capacity(out.len() * scalars.len());
            for prefix in &out {
                for s in &scalars {
                    let mut v = prefix.clone();
                    v.push(s.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Direct product of algebras, with the componentwise structure.
    pub fn product(a: &FinAlg, b: &FinAlg) -> Result<FinAlg> {
        if a.field != b.field {
            return Err(Error::InvalidInstance("product over mixed fields".to_string()));
        }
        let dim = a.dim + b.dim;
        let field = a.field;
        let mut labels: Vec<String> = a.labels.iter().map(|l| format!("l.{l}")).collect();
        labels.extend(b.labels.iter().map(|l| format!("r.{l}")));
        let embed_a = |v: &[Scalar]| {
            let mut out = vec![field.zero(); dim];
            out[..a.dim].clone_from_slice(v);
            out
        };
        let embed_b = |v: &[Scalar]| {
            let mut out = vec![field.zero(); dim];
            out[a.dim..].clone_from_slice(v);
            out
        };
        let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                mult[i][j] = embed_a(&a.mult[i][j]);
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                mult[a.dim + i][a.dim + j] = embed_b(&b.mult[i][j]);
            }
        }
        let mut unit = embed_a(&a.unit);
        let ub = embed_b(&b.unit);
        for k in 0..dim {
            unit[k] = unit[k].add(&ub[k]);
        }
        FinAlg::new(field, labels, mult, unit)
    }
}

/// Quotient algebra plus projection onto the surviving coordinates.
#[derive(Clone, Debug)]
pub struct AlgQuotient {
    pub alg: FinAlg,
    pub proj: Mat,
    /// Indices of the basis elements of the source that survive as the
    /// quotient basis.
    pub surviving: Vec<usize>,
}

impl AlgQuotient {
    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.proj.apply(v)
    }
}

/// A truncated monomial algebra `K[t_1..t_k]` with per-variable nilpotency
/// bounds, an optional total-degree cutoff, and extra monomial relations.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    pub alg: FinAlg,
    pub var_names: Vec<String>,
    /// Exponent vector of each basis element, aligned with `alg` basis order.
    pub basis_exps: Vec<Vec<u32>>,
    max_exps: Vec<u32>,
    cutoff: Option<u32>,
    extra: Vec<Vec<u32>>,
}

impl MonomialAlgebra {
    pub fn new(
        field: Field,
        var_names: Vec<String>,
        max_exps: Vec<u32>,
        cutoff: Option<u32>,
        extra: Vec<Vec<u32>>,
    ) -> Result<MonomialAlgebra> {
        if var_names.len() != max_exps.len() {
            return Err(Error::Dimension("one bound per variable".to_string()));
        }
        if max_exps.iter().any(|&m| m == 0) {
            return Err(Error::InvalidInstance("max exponent must be positive".to_string()));
        }
        let k = var_names.len();
        let mut basis_exps: Vec<Vec<u32>> = vec![vec![]];
        for i in 0..k {
            let mut next = Vec::new();
            for prefix in &basis_exps {
                for e in 0..max_exps[i] {
                    let mut v = prefix.clone();
                    v.push(e);
                    next.push(v);
                }
            }
            basis_exps = next;
        }
        let killed = |e: &[u32]| -> bool {
            if let Some(c) = cutoff {
                if e.iter().sum::<u32>() >= c {
                    return true;
                }
            }
            extra.iter().any(|r| r.iter().zip(e).all(|(&a, &b)| b >= a))
        };
        let mut basis_exps: Vec<Vec<u32>> =
            basis_exps.into_iter().filter(|e| !killed(e)).collect();
        basis_exps.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
        if basis_exps.first().map(|e| e.iter().any(|&x| x > 0)).unwrap_or(true) {
            return Err(Error::InvalidInstance("relations kill the unit".to_string()));
        }
        let dim = basis_exps.len();
        let label = |e: &[u32]| -> String {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        var_names[i].clone()
                    } else {
                        format!("{}^{}", var_names[i], x)
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let labels: Vec<String> = basis_exps.iter().map(|e| label(e)).collect();
        let index_of = |e: &[u32]| basis_exps.iter().position(|b| b == e);
        let mut mult = vec![vec![vec![field.zero(); dim]; dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let sum: Vec<u32> =
                    basis_exps[i].iter().zip(&basis_exps[j]).map(|(&a, &b)| a + b).collect();
                let dead = killed(&sum) || sum.iter().zip(&max_exps).any(|(&s, &m)| s >= m);
                if !dead {
                    if let Some(k) = index_of(&sum) {
                        mult[i][j][k] = field.one();
                    }
                }
            }
        }
        let mut unit = vec![field.zero(); dim];
        unit[0] = field.one();
        let alg = FinAlg::new(field, labels, mult, unit)?;
        Ok(MonomialAlgebra { alg, var_names, basis_exps, max_exps, cutoff, extra })
    }

    /// Coordinates of a monomial, or `None` when it is zero in the algebra.
    pub fn monomial_vec(&self, exps: &[u32]) -> Option<Vec<Scalar>> {
        if exps.iter().zip(&self.max_exps).any(|(&e, &m)| e >= m) {
            return None;
        }
        if let Some(c) = self.cutoff {
            if exps.iter().sum::<u32>() >= c {
                return None;
            }
        }
        if self.extra.iter().any(|r| r.iter().zip(exps).all(|(&a, &b)| b >= a)) {
            return None;
        }
        let idx = self.basis_exps.iter().position(|b| b == exps)?;
        Some(self.alg.basis_vec(idx))
    }

    pub fn var_vec(&self, i: usize) -> Option<Vec<Scalar>> {
        let mut exps = vec![0; self.var_names.len()];
        exps[i] = 1;
        self.monomial_vec(&exps)
    }
}

/// A unital K-algebra homomorphism, stored as the matrix of basis images.
#[derive(Clone, Debug)]
pub struct AlgMap {
    pub source: FinAlg,
    pub target: FinAlg,
    /// `dim target x dim source`; column `j` is the image of source basis `j`.
    pub mat: Mat,
}

impl AlgMap {
    /// Validates unit preservation and multiplicativity on basis pairs.
    pub fn from_images(source: FinAlg, target: FinAlg, images: Vec<Vec<Scalar>>) -> Result<AlgMap> {
        if images.len() != source.dim || images.iter().any(|v| v.len() != target.dim) {
            return Err(Error::Dimension("one image per source basis element".to_string()));
        }
        let mut mat = Mat::zeros(target.field, target.dim, source.dim);
        for (j, img) in images.iter().enumerate() {
            for i in 0..target.dim {
                mat.set(i, j, img[i].clone());
            }
        }
        let map = AlgMap { source, target, mat };
        if map.apply(&map.source.unit) != map.target.unit {
            return Err(Error::InvalidInstance("map does not preserve the unit".to_string()));
        }
        for i in 0..map.source.dim {
            for j in 0..map.source.dim {
                let lhs = map.apply(&map.source.mul_vec(
                    &map.source.basis_vec(i),
                    &map.source.basis_vec(j),
                ));
                let rhs = map.target.mul_vec(
                    &map.apply(&map.source.basis_vec(i)),
                    &map.apply(&map.source.basis_vec(j)),
                );
                if lhs != rhs {
                    return Err(Error::InvalidInstance(format!(
                        "map is not multiplicative at basis pair ({i},{j})"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(alg: &FinAlg) -> AlgMap {
        let images = (0..alg.dim).map(|i| alg.basis_vec(i)).collect();
        AlgMap::from_images(alg.clone(), alg.clone(), images)
            .expect("identity is a homomorphism")
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.mat.apply(v)
    }

    /// Expansion of an ideal of the source to the target.
    pub fn expand_ideal(&self, ideal: &Subspace) -> Subspace {
        let gens: Vec<Vec<Scalar>> = ideal.basis().iter().map(|v| self.apply(v)).collect();
        self.target.ideal_from_gens(&gens)
    }
}

/// An R-module given by one action matrix per algebra basis element.
#[derive(Clone, Debug)]
pub struct FinMod {
    pub dim: usize,
    /// `action[j]` is the operator of the j-th algebra basis element.
    pub action: Vec<Mat>,
}

impl FinMod {
    /// Validates the module axioms against the algebra.
    pub fn new(alg: &FinAlg, action: Vec<Mat>) -> Result<FinMod> {
        if action.len() != alg.dim {
            return Err(Error::Dimension("one action matrix per basis element".to_string()));
        }
        let dim = action.first().map_or(0, |m| m.rows);
        if action.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::Dimension("action matrices must be square and equal".to_string()));
        }
        let module = FinMod { dim, action };
        // unit acts as identity
        let mut unit_action = Mat::zeros(alg.field, dim, dim);
        for (j, c) in alg.unit.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for r in 0..dim {
                for s in 0..dim {
                    let v = unit_action.get(r, s).add(&c.mul(module.action[j].get(r, s)));
                    unit_action.set(r, s, v);
                }
            }
        }
        if unit_action != Mat::identity(alg.field, dim) {
            return Err(Error::InvalidInstance("unit does not act as identity".to_string()));
        }
        // A_i A_j = sum_k c[i][j][k] A_k
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let lhs = module.action[i].mul(&module.action[j]);
                let coeffs = alg.mul_vec(&alg.basis_vec(i), &alg.basis_vec(j));
                let mut rhs = Mat::zeros(alg.field, dim, dim);
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for r in 0..dim {
                        for s in 0..dim {
                            let v = rhs.get(r, s).add(&c.mul(module.action[k].get(r, s)));
                            rhs.set(r, s, v);
                        }
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidInstance(format!(
                        "action matrices violate the product rule at ({i},{j})"
                    )));
                }
            }
        }
        Ok(module)
    }

    /// The free module of rank `k` with the block-diagonal regular action.
    pub fn free(alg: &FinAlg, k: usize) -> FinMod {
        let dim = alg.dim * k;
        let action = (0..alg.dim)
            .map(|j| {
                let block = alg.left_mul_matrix(&alg.basis_vec(j));
                let mut m = Mat::zeros(alg.field, dim, dim);
                for b in 0..k {
                    for r in 0..alg.dim {
                        for s in 0..alg.dim {
                            m.set(b * alg.dim + r, b * alg.dim + s, block.get(r, s).clone());
                        }
                    }
                }
                m
            })
            .collect();
        FinMod { dim, action }
    }

    pub fn act(&self, alg_elem: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let field = self.action[0].field();
        let mut out = vec![field.zero(); self.dim];
        for (j, c) in alg_elem.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let av = self.action[j].apply(v);
            for r in 0..self.dim {
                out[r] = out[r].add(&c.mul(&av[r]));
            }
        }
        out
    }

    /// Closes a subspace under the action (smallest submodule containing it).
    pub fn submodule_closure(&self, space: &Subspace) -> Subspace {
        let field = self.action[0].field();
        let mut cur = space.clone();
        loop {
            let mut grew = false;
            let mut vectors = cur.basis().to_vec();
            for v in cur.basis() {
                for a in &self.action {
                    let w = a.apply(v);
                    if !cur.contains(&w) {
                        vectors.push(w);
                        grew = true;
                    }
                }
            }
            if !grew {
                return cur;
            }
            cur = Subspace::span(field, self.dim, &vectors);
        }
    }

    pub fn is_submodule(&self, space: &Subspace) -> bool {
        space
            .basis()
            .iter()
            .all(|v| self.action.iter().all(|a| space.contains(&a.apply(v))))
    }
}

fn dedup_subspaces(spaces: Vec<Subspace>) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::new();
    let mut keys = BTreeSet::new();
    for s in spaces {
        let key = format!("{s:?}");
        if keys.insert(key) {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.dim(), format!("{s:?}")));
    out
}
