//! Loop modules L_{a,b}(μ) and the shifted tensor module L(λ,l,k,c) ⊗ L(μ) ⊗ ℂ[t^{±1}].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::affvir::{AffVirElement, Gen};
use crate::error::{Error, Result};
use crate::exact::scalar::{self, Scalar};
use crate::highest_weight::{HWModule, ModVec};
use crate::lie::{FiniteModule, SimpleLieAlgebra};
use crate::pbw::{Monomial, UEnvElement};

/// L(μ) ⊗ ℂ[t^{±1}] with d_m(v⊗tⁿ) = (a+bm+n) v⊗t^{m+n} and x(m)(v⊗tⁿ) = xv⊗t^{m+n}.
#[derive(Clone, Debug)]
pub struct LoopModule {
    pub fin: Arc<FiniteModule>,
    pub a: Scalar,
    pub b: Scalar,
}

/// Finitely supported Σ vₙ ⊗ tⁿ.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LoopVector {
    comps: BTreeMap<i64, Vec<Scalar>>,
}

impl LoopVector {
    pub fn single(n: i64, v: Vec<Scalar>) -> Self {
        let mut w = LoopVector::default();
        w.add(n, &v);
        w
    }

    pub fn add(&mut self, n: i64, v: &[Scalar]) {
        if v.iter().all(|x| x.is_zero()) {
            return;
        }
        let e = self.comps.entry(n).or_insert_with(|| vec![scalar::zero(); v.len()]);
        for (a, b) in e.iter_mut().zip(v) {
            *a += b;
        }
        if e.iter().all(|x| x.is_zero()) {
            self.comps.remove(&n);
        }
    }

    pub fn component(&self, n: i64) -> Option<&Vec<Scalar>> {
        self.comps.get(&n)
    }

    pub fn components(&self) -> impl Iterator<Item = (&i64, &Vec<Scalar>)> {
        self.comps.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }
}

impl LoopModule {
    pub fn new(fin: Arc<FiniteModule>, a: Scalar, b: Scalar) -> Self {
        LoopModule { fin, a, b }
    }

    pub fn act(&self, g: Gen, w: &LoopVector) -> LoopVector {
        let mut out = LoopVector::default();
        for (&n, v) in &w.comps {
            match g {
                Gen::Loop(i, m) => out.add(n + m, &self.fin.act(i, v)),
                Gen::D(m) => {
                    let s = &self.a + &self.b * scalar::int(m) + scalar::int(n);
                    let sv: Vec<Scalar> = v.iter().map(|x| x * &s).collect();
                    out.add(n + m, &sv);
                }
                Gen::K | Gen::C => {}
            }
        }
        out
    }

    pub fn act_elem(&self, x: &AffVirElement, w: &LoopVector) -> LoopVector {
        let mut out = LoopVector::default();
        for (g, c) in x.terms() {
            for (n, v) in self.act(*g, w).comps {
                let sv: Vec<Scalar> = v.iter().map(|y| y * c).collect();
                out.add(n, &sv);
            }
        }
        out
    }
}

/// Element of L(λ,l,k,c) ⊗ L(μ) ⊗ ℂ[t^{±1}]: terms P·ū ⊗ v_j ⊗ tⁿ keyed by (n, P, j).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TensorVector {
    terms: BTreeMap<(i64, Monomial, usize), Scalar>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pure(n: i64, p: Monomial, j: usize) -> Self {
        let mut t = Self::zero();
        t.add_term((n, p, j), &scalar::one());
        t
    }

    /// (Σ c_P P·ū) ⊗ v ⊗ tⁿ for a coordinate vector v of L(μ).
    pub fn from_parts(n: i64, x: &ModVec, v: &[Scalar]) -> Self {
        let mut t = Self::zero();
        for (p, c) in x.terms() {
            for (j, y) in v.iter().enumerate() {
                t.add_term((n, p.clone(), j), &(c * y));
            }
        }
        t
    }

    pub fn add_term(&mut self, key: (i64, Monomial, usize), c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &Scalar) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorVector {
        let mut out = TensorVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, Monomial, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The shifted module L^{μ,a,b}_{λ,l,k,c} over a truncated L(λ,l,k,c).
pub struct TensorContext {
    pub module: Arc<HWModule>,
    pub fin: Arc<FiniteModule>,
    pub a: Scalar,
    pub b: Scalar,
    /// Slices n ∈ [−window, window] are represented.
    pub window: i64,
    fin_drops: Vec<Vec<i64>>,
}

impl TensorContext {
    pub fn new(module: Arc<HWModule>, fin: Arc<FiniteModule>, a: Scalar, b: Scalar, window: i64) -> Self {
        let alg = module.alg().clone();
        let fin_drops = (0..fin.dim())
            .map(|j| {
                let mut d = vec![0i64; alg.rank()];
                for &x in fin.label(j) {
                    for (r, c) in alg.root_coords(x).iter().enumerate() {
                        d[r] -= c;
                    }
                }
                d
            })
            .collect();
        TensorContext { module, fin, a, b, window, fin_drops }
    }

    pub fn alg(&self) -> &Arc<SimpleLieAlgebra> {
        self.module.alg()
    }

    /// Drop of μ − wt(v_j) in simple-root coordinates.
    pub fn fin_drop(&self, j: usize) -> &[i64] {
        &self.fin_drops[j]
    }

    fn module_part(&self, x: &ModVec, n: i64, j: usize, c: &Scalar, out: &mut TensorVector) {
        for (p, y) in x.terms() {
            out.add_term((n, p.clone(), j), &(c * y));
        }
    }

    fn fin_part(&self, p: &Monomial, n: i64, v: &[Scalar], c: &Scalar, out: &mut TensorVector) {
        for (j, y) in v.iter().enumerate() {
            out.add_term((n, p.clone(), j), &(c * y));
        }
    }

    fn check_window(&self, n: i64) -> Result<()> {
        if n.abs() > self.window {
            return Err(Error::TruncationEscape(format!("t-index {n} outside [-{0}, {0}]", self.window)));
        }
        Ok(())
    }

    /// Action on the shifted module:
    /// d_m(Pū⊗v⊗tⁿ) = (d_m + a + n − deg P + bm)Pū ⊗ v ⊗ t^{m+n},
    /// x(m)(Pū⊗v⊗tⁿ) = (x(m)Pū⊗v + Pū⊗xv) ⊗ t^{m+n}.
    pub fn shifted_act(&self, g: Gen, w: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for ((n, p, j), c) in w.terms() {
            let pv = UEnvElement::monomial(p.clone());
            match g {
                Gen::Loop(i, m) => {
                    self.check_window(n + m)?;
                    self.module_part(&self.module.act(g, &pv)?, n + m, *j, c, &mut out);
                    let v = self.fin.act(i, &self.fin.basis_vector(*j));
                    self.fin_part(p, n + m, &v, c, &mut out);
                }
                Gen::D(m) => {
                    self.check_window(n + m)?;
                    self.module_part(&self.module.act(g, &pv)?, n + m, *j, c, &mut out);
                    let s = &self.a + scalar::int(*n - p.degree()) + &self.b * scalar::int(m);
                    out.add_term((n + m, p.clone(), *j), &(c * s));
                }
                Gen::K => out.add_term((*n, p.clone(), *j), &(c * &self.module.params().k)),
                Gen::C => out.add_term((*n, p.clone(), *j), &(c * &self.module.params().c)),
            }
        }
        Ok(out)
    }

    pub fn shifted_act_elem(&self, x: &AffVirElement, w: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.shifted_act(*g, w)?, c);
        }
        Ok(out)
    }

    /// Action on the plain tensor product L(λ,l,k,c) ⊗ L_{a,b}(μ), where the
    /// t-index of a term is the loop-module index.
    pub fn plain_act(&self, g: Gen, w: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for ((n, p, j), c) in w.terms() {
            let pv = UEnvElement::monomial(p.clone());
            match g {
                Gen::Loop(i, m) => {
                    self.module_part(&self.module.act(g, &pv)?, *n, *j, c, &mut out);
                    let v = self.fin.act(i, &self.fin.basis_vector(*j));
                    self.fin_part(p, n + m, &v, c, &mut out);
                }
                Gen::D(m) => {
                    self.module_part(&self.module.act(g, &pv)?, *n, *j, c, &mut out);
                    let s = &self.a + &self.b * scalar::int(m) + scalar::int(*n);
                    out.add_term((n + m, p.clone(), *j), &(c * s));
                }
                Gen::K => out.add_term((*n, p.clone(), *j), &(c * &self.module.params().k)),
                Gen::C => out.add_term((*n, p.clone(), *j), &(c * &self.module.params().c)),
            }
        }
        Ok(out)
    }

    /// Basis of the slice {x : d₀x = (a+l+n)x} within the truncation: every
    /// module basis monomial paired with every basis vector of L(μ).
    pub fn tensor_weight_basis(&self, _n: i64) -> Vec<(Monomial, usize)> {
        let mut out = Vec::new();
        for key in self.module.weight_keys() {
            for p in self.module.basis(key) {
                for j in 0..self.fin.dim() {
                    out.push((p.clone(), j));
                }
            }
        }
        out
    }

    /// Total drop of Pū ⊗ v_j relative to λ + μ; the 𝔥-weight of the term.
    pub fn total_drop(&self, p: &Monomial, j: usize) -> Vec<i64> {
        let alg = self.alg();
        p.drop(alg).iter().zip(&self.fin_drops[j]).map(|(a, b)| a + b).collect()
    }
}

/// Pū⊗v⊗tⁿ ↦ Pū⊗v⊗t^{n−deg P}, from the shifted module onto the plain
/// tensor product; it intertwines `shifted_act` with `plain_act`.
pub fn unshift_iso(w: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for ((n, p, j), c) in w.terms() {
        out.add_term((n - p.degree(), p.clone(), *j), c);
    }
    out
}

/// Pū⊗v⊗tⁿ ↦ Pū⊗v⊗t^{n+deg P}.
pub fn unshift_iso_inverse(w: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero();
    for ((n, p, j), c) in w.terms() {
        out.add_term((n + p.degree(), p.clone(), *j), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};
    use crate::highest_weight::{build_verma, Bounds, HwParams};
    use crate::lie::{finite_irrep, GWeight};

    fn ctx(window: i64) -> TensorContext {
        let alg = Arc::new(SimpleLieAlgebra::sl2());
        let p = HwParams::new(GWeight(vec![int(0)]), int(0), int(1), int(2));
        let m = build_verma(alg.clone(), p, Bounds::new(1, 1)).unwrap().irreducible_quotient().unwrap();
        let fin = finite_irrep(&alg, &GWeight(vec![int(1)])).unwrap();
        TensorContext::new(Arc::new(m), Arc::new(fin), int(0), frac(1, 2), window)
    }

    #[test]
    fn loop_action_rules() {
        let alg = SimpleLieAlgebra::sl2();
        let fin = Arc::new(finite_irrep(&alg, &GWeight(vec![int(1)])).unwrap());
        let lm = LoopModule::new(fin.clone(), int(0), frac(1, 2));
        let v = fin.basis_vector(0);
        let w = LoopVector::single(3, v.clone());
        let r = lm.act(Gen::D(2), &w);
        assert_eq!(r, LoopVector::single(5, v.iter().map(|x| x * int(4)).collect()));
        assert!(lm.act(Gen::K, &w).is_zero());
        let fv = LoopVector::single(0, fin.act(1, &v));
        assert_eq!(lm.act(Gen::Loop(0, 1), &fv), LoopVector::single(1, v));
    }

    #[test]
    fn shifted_d0_and_unshift() {
        let c = ctx(6);
        let u = TensorVector::pure(2, Monomial::one(), 0);
        assert_eq!(c.shifted_act(Gen::D(0), &u).unwrap(), u.scale(&int(2)));
        let d2 = Monomial::parse(c.alg(), "d(-1)").unwrap();
        let w = TensorVector::pure(5, d2.clone(), 0);
        assert_eq!(unshift_iso(&w), TensorVector::pure(6, d2, 0));
        assert_eq!(unshift_iso_inverse(&unshift_iso(&w)), w);
        assert_eq!(c.tensor_weight_basis(0).len(), c.module.total_dim() * 2);
    }
}
