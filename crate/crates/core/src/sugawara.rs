//! Sugawara operators T_n and the coset operators D_n = d_n − T_n/(k+g).

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::affvir::{AffVirElement, Gen};
use crate::error::{Error, Result};
use crate::exact::scalar::{self, Scalar};
use crate::highest_weight::{HWModule, HwParams, ModVec};
use crate::lie::{casimir_eigenvalue, dual_coxeter, GElem, SimpleLieAlgebra};
use crate::pbw::UEnvElement;

#[derive(Clone, Debug)]
pub struct SugawaraContext {
    alg: Arc<SimpleLieAlgebra>,
    k: Scalar,
    g: Scalar,
    k_plus_g: Scalar,
    /// Pairs (x_i, y_i) of dual bases.
    pairs: Vec<(usize, GElem)>,
}

impl SugawaraContext {
    pub fn new(alg: Arc<SimpleLieAlgebra>, k: Scalar) -> Result<Self> {
        let g = dual_coxeter(&alg)?;
        let k_plus_g = &k + &g;
        if k_plus_g.is_zero() {
            return Err(Error::LevelIsMinusDualCoxeter);
        }
        let pairs = (0..alg.dim()).map(|i| (i, alg.dual(i).clone())).collect();
        Ok(SugawaraContext { alg, k, g, k_plus_g, pairs })
    }

    pub fn level(&self) -> &Scalar {
        &self.k
    }

    pub fn dual_coxeter(&self) -> &Scalar {
        &self.g
    }

    pub fn k_plus_g(&self) -> &Scalar {
        &self.k_plus_g
    }

    /// l′ = l + c_λ / (2(k+g)).
    pub fn l_prime(&self, p: &HwParams) -> Scalar {
        &p.l + casimir_eigenvalue(&self.alg, &p.lambda) / (scalar::int(2) * &self.k_plus_g)
    }

    /// c′ = c − k·dim 𝔤 / (k+g).
    pub fn c_prime(&self, p: &HwParams) -> Scalar {
        &p.c - &self.k * scalar::int(self.alg.dim() as i64) / &self.k_plus_g
    }

    fn pair_term(&self, module: &HWModule, x: usize, y: &GElem, left_mode: i64, right_mode: i64, v: &ModVec) -> ModVec {
        // x(left_mode) · y(right_mode) · v
        let ye = AffVirElement::loop_elem(y, right_mode);
        let w = module.verma_act_elem(&ye, v);
        if w.is_zero() {
            return w;
        }
        module.verma_act(Gen::Loop(x, left_mode), &w)
    }

    fn pair_term_rev(&self, module: &HWModule, x: usize, y: &GElem, left_mode: i64, right_mode: i64, v: &ModVec) -> ModVec {
        // y(right_mode) · x(left_mode) · v
        let w = module.verma_act(Gen::Loop(x, left_mode), v);
        if w.is_zero() {
            return w;
        }
        module.verma_act_elem(&AffVirElement::loop_elem(y, right_mode), &w)
    }

    /// T_n v in the Verma module, with no truncation. `tie_reversed` evaluates
    /// the terms with −j = j+n in the opposite order.
    pub fn apply_t_verma_with(&self, module: &HWModule, n: i64, v: &ModVec, tie_reversed: bool) -> ModVec {
        let mut out = UEnvElement::zero();
        for (m, c) in v.terms() {
            let d = -m.degree();
            let mv = UEnvElement::monomial(m.clone());
            let mut acc = UEnvElement::zero();
            for j in -d..=(d - n) {
                for (x, y) in &self.pairs {
                    let (l, r) = (-j, j + n);
                    let t = if l < r || (l == r && !tie_reversed) {
                        self.pair_term(module, *x, y, l, r, &mv)
                    } else {
                        self.pair_term_rev(module, *x, y, l, r, &mv)
                    };
                    acc.add_scaled(&t, &scalar::one());
                }
            }
            out.add_scaled(&acc, &(c * scalar::frac(-1, 2)));
        }
        out
    }

    pub fn apply_t_verma(&self, module: &HWModule, n: i64, v: &ModVec) -> ModVec {
        self.apply_t_verma_with(module, n, v, false)
    }

    /// D_n v = d_n v − T_n v/(k+g) in the Verma module.
    pub fn apply_d_verma(&self, module: &HWModule, n: i64, v: &ModVec) -> ModVec {
        let mut out = module.verma_act(Gen::D(n), v);
        out.add_scaled(&self.apply_t_verma(module, n, v), &(-scalar::one() / &self.k_plus_g));
        out
    }

    /// T_n v within the module's bounds.
    pub fn apply_t(&self, module: &HWModule, n: i64, v: &ModVec) -> Result<ModVec> {
        module.reduce(&self.apply_t_verma(module, n, v))
    }

    /// D_n v within the module's bounds.
    pub fn apply_d(&self, module: &HWModule, n: i64, v: &ModVec) -> Result<ModVec> {
        module.reduce(&self.apply_d_verma(module, n, v))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FactorizationReport {
    pub l_prime: String,
    pub c_prime: String,
    pub depth: u32,
    pub vectors_checked: usize,
    pub checks: Vec<IdentityCheck>,
}

impl FactorizationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Verifies the coset Virasoro relations of D_n, their commutation with 𝔤̃,
/// and the D₀-eigenvalue of u on all basis vectors up to `depth`, for mode
/// indices in [−`modes`, `modes`].
pub fn factorization_report(ctx: &SugawaraContext, module: &HWModule, depth: u32, modes: i64) -> Result<FactorizationReport> {
    let alg = module.alg().clone();
    let p = module.params();
    let lp = ctx.l_prime(p);
    let cp = ctx.c_prime(p);
    let mut vectors = Vec::new();
    for key in module.weight_keys() {
        if key.0 <= depth {
            vectors.extend(module.space(key).unwrap().verma_basis().iter().cloned().map(UEnvElement::monomial));
        }
    }
    let mut checks = Vec::new();

    let mut vir = IdentityCheck { name: "[D_m,D_n] = (n-m)D_{m+n} + delta_{m+n,0}(m^3-m)/12 c'".into(), passed: true, witness: None };
    'outer: for m in -modes..=modes {
        for n in -modes..=modes {
            for v in &vectors {
                let dn = ctx.apply_d_verma(module, n, v);
                let dm = ctx.apply_d_verma(module, m, v);
                let mut lhs = ctx.apply_d_verma(module, m, &dn);
                lhs.add_scaled(&ctx.apply_d_verma(module, n, &dm), &scalar::int(-1));
                let mut rhs = ctx.apply_d_verma(module, m + n, v).scale(&scalar::int(n - m));
                if m + n == 0 {
                    rhs.add_scaled(v, &(&cp * scalar::frac(m * m * m - m, 12)));
                }
                if lhs != rhs {
                    vir.passed = false;
                    vir.witness = Some(format!("m={m}, n={n}, v={}", v.display(&alg)));
                    break 'outer;
                }
            }
        }
    }
    checks.push(vir);

    let mut comm = IdentityCheck { name: "[D_n, x(m)] = 0".into(), passed: true, witness: None };
    'outer2: for n in -modes..=modes {
        for m in -modes..=modes {
            for x in 0..alg.dim() {
                for v in &vectors {
                    let xv = module.verma_act(Gen::Loop(x, m), v);
                    let mut lhs = ctx.apply_d_verma(module, n, &xv);
                    lhs.add_scaled(&module.verma_act(Gen::Loop(x, m), &ctx.apply_d_verma(module, n, v)), &scalar::int(-1));
                    if !lhs.is_zero() {
                        comm.passed = false;
                        comm.witness = Some(format!("n={n}, x={}, m={m}, v={}", alg.name_of(x), v.display(&alg)));
                        break 'outer2;
                    }
                }
            }
        }
    }
    checks.push(comm);

    let u = module.highest();
    let d0u = ctx.apply_d_verma(module, 0, &u);
    let eig = d0u == u.scale(&lp);
    checks.push(IdentityCheck {
        name: "D_0 u = l' u".into(),
        passed: eig,
        witness: (!eig).then(|| d0u.display(&alg)),
    });

    Ok(FactorizationReport {
        l_prime: scalar::fmt(&lp),
        c_prime: scalar::fmt(&cp),
        depth,
        vectors_checked: vectors.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};
    use crate::highest_weight::{build_verma, Bounds};
    use crate::lie::GWeight;

    fn setup(lam: i64, l: Scalar, k: Scalar, c: Scalar, b: Bounds) -> (SugawaraContext, HWModule) {
        let alg = Arc::new(SimpleLieAlgebra::sl2());
        let p = HwParams::new(GWeight(vec![int(lam)]), l, k.clone(), c);
        let m = build_verma(alg.clone(), p, b).unwrap();
        (SugawaraContext::new(alg, k).unwrap(), m)
    }

    #[test]
    fn t_on_highest_weight_vector() {
        let (ctx, m) = setup(2, frac(3, 2), int(2), frac(5, 2), Bounds::new(2, 2));
        let u = m.highest();
        for n in 1..=3 {
            assert!(ctx.apply_t_verma(&m, n, &u).is_zero());
        }
        assert_eq!(ctx.apply_t(&m, 0, &u).unwrap(), u.scale(&int(-2)));
        assert_eq!(ctx.apply_d(&m, 0, &u).unwrap(), u.scale(&int(2)));
    }

    #[test]
    fn example_primes() {
        let (ctx, m) = setup(2, frac(3, 2), int(2), frac(5, 2), Bounds::new(1, 1));
        assert_eq!((ctx.l_prime(m.params()), ctx.c_prime(m.params())), (int(2), int(1)));
        let (ctx, m) = setup(0, int(0), int(1), int(2), Bounds::new(1, 1));
        assert_eq!((ctx.l_prime(m.params()), ctx.c_prime(m.params())), (int(0), int(1)));
    }

    #[test]
    fn level_minus_dual_coxeter() {
        let alg = Arc::new(SimpleLieAlgebra::sl2());
        assert!(matches!(SugawaraContext::new(alg, int(-2)), Err(Error::LevelIsMinusDualCoxeter)));
    }

    #[test]
    fn d_minus_one_on_trivial_weight() {
        let (ctx, m) = setup(0, int(0), int(1), int(2), Bounds::new(1, 1));
        let u = m.highest();
        let got = ctx.apply_d(&m, -1, &u).unwrap();
        let alg = m.alg();
        let mut expect = UEnvElement::monomial(crate::pbw::Monomial::parse(alg, "d(-1)").unwrap());
        expect.add_term(crate::pbw::Monomial::parse(alg, "e(-1) f").unwrap(), &frac(1, 3));
        assert_eq!(got, expect);
    }

    #[test]
    fn small_factorization_report() {
        let (ctx, m) = setup(0, int(0), int(1), int(2), Bounds::new(1, 1));
        let r = factorization_report(&ctx, &m, 1, 1).unwrap();
        assert!(r.all_passed(), "{r:?}");
        assert_eq!((r.l_prime.as_str(), r.c_prime.as_str()), ("0", "1"));
    }
}
