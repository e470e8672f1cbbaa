//! Generators of the annihilator of ū in U(𝔏(𝔤)₋).

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::{build_verma, height, Bounds, HWModule, HwParams};
use crate::affvir::Gen;
use crate::error::{Error, Result};
use crate::exact::matrix::{rank_and_kernel, RowEchelon, SparseMatrix, SparseVec};
use crate::exact::scalar::{self, Scalar};
use crate::lie::{dual_coxeter, is_dominant, SimpleLieAlgebra};
use crate::pbw::{BaseAction, Engine, Monomial, UEnvElement};
use crate::sugawara::SugawaraContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    DominantFormula,
    ComputedSingular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnMode {
    /// Dominant formula when λ + kΛ₀ is dominant, computed singular vectors otherwise.
    Auto,
    Dominant,
    Computed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnGenerator {
    /// Short name such as `f0^2`, `f1` or `D(-1)`.
    pub label: String,
    pub element: UEnvElement,
    /// Whether element·u was checked to be a singular vector of M(λ,l,k,c).
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnGenerators {
    pub generators: Vec<AnnGenerator>,
    pub provenance: Provenance,
    /// (l′, c′) of the Virasoro factor, on the dominant path.
    pub virasoro_params: Option<(Scalar, Scalar)>,
}

impl AnnGenerators {
    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn elements(&self) -> Vec<UEnvElement> {
        self.generators.iter().map(|g| g.element.clone()).collect()
    }

    pub fn all_verified(&self) -> bool {
        self.generators.iter().all(|g| g.verified)
    }

    pub fn max_depth(&self) -> u32 {
        self.generators.iter().flat_map(|g| g.element.terms().map(|(m, _)| (-m.degree()) as u32)).max().unwrap_or(0)
    }
}

/// Virasoro Verma module M_𝒱(l, c) acting on U(𝒱₋).
pub struct VirasoroVerma {
    engine: Engine,
}

impl VirasoroVerma {
    pub fn new(alg: Arc<SimpleLieAlgebra>, l: Scalar, c: Scalar) -> Self {
        let engine = Engine::with_base(
            alg,
            Box::new(move |g| match g {
                Gen::D(m) if m < 0 => BaseAction::Push,
                Gen::D(0) => BaseAction::Scalar(l.clone()),
                Gen::C => BaseAction::Scalar(c.clone()),
                _ => BaseAction::Scalar(scalar::zero()),
            }),
        );
        VirasoroVerma { engine }
    }

    pub fn act(&self, g: Gen, v: &UEnvElement) -> UEnvElement {
        self.engine.lmul_elem(g, v)
    }

    /// Monomials d_{−k_r}⋯d_{−k_1} of depth exactly `d`.
    pub fn basis(&self, d: u32) -> Vec<Monomial> {
        fn rec(left: i64, max: i64, cur: &mut Vec<(Gen, u32)>, out: &mut Vec<Vec<(Gen, u32)>>) {
            if left == 0 {
                out.push(cur.clone());
                return;
            }
            for k in (1..=max.min(left)).rev() {
                cur.push((Gen::D(-k), 1));
                rec(left - k, k, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        rec(d as i64, d as i64, &mut Vec::new(), &mut raw);
        raw.into_iter().map(|f| Monomial::from_sorted(self.engine.alg(), &f)).collect()
    }

    /// Singular vectors at depth `d` (kernel of d₁ and d₂).
    pub fn singular(&self, d: u32) -> Vec<UEnvElement> {
        let basis = self.basis(d);
        let mut rows: HashMap<(i64, Monomial), usize> = HashMap::new();
        let mut entries = Vec::new();
        for (j, m) in basis.iter().enumerate() {
            for op in [1i64, 2] {
                for (m2, c) in self.act(Gen::D(op), &UEnvElement::monomial(m.clone())).terms() {
                    let n = rows.len();
                    let r = *rows.entry((op, m2.clone())).or_insert(n);
                    entries.push((r, j, c.clone()));
                }
            }
        }
        let mut mat = SparseMatrix::new(rows.len(), basis.len());
        for (r, j, c) in entries {
            let old = mat.get(r, j).cloned().unwrap_or_else(scalar::zero);
            mat.set(r, j, old + c);
        }
        rank_and_kernel(&mat)
            .1
            .into_iter()
            .map(|k| {
                let mut v = UEnvElement::zero();
                for (j, c) in k.iter().enumerate() {
                    v.add_term(basis[j].clone(), c);
                }
                v
            })
            .collect()
    }

    /// Singular vectors generating the maximal submodule up to `max_depth`:
    /// at each depth those not already in the submodule generated by earlier ones.
    pub fn singular_generators(&self, max_depth: u32) -> Vec<UEnvElement> {
        let bases: Vec<Vec<Monomial>> = (0..=max_depth).map(|d| self.basis(d)).collect();
        let pos: Vec<HashMap<Monomial, usize>> =
            bases.iter().map(|b| b.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect()).collect();
        let to_sparse = |d: usize, v: &UEnvElement| -> SparseVec {
            v.terms().map(|(m, c)| (pos[d][m], c.clone())).collect()
        };
        let mut sub: Vec<RowEchelon> = vec![RowEchelon::new(); max_depth as usize + 1];
        let mut gens = Vec::new();
        for d in 1..=max_depth as usize {
            for s in self.singular(d as u32) {
                if sub[d].contains(&to_sparse(d, &s)) {
                    continue;
                }
                gens.push(s.clone());
                let mut stack = vec![(d, s)];
                while let Some((dd, v)) = stack.pop() {
                    if !sub[dd].insert(to_sparse(dd, &v)) {
                        continue;
                    }
                    for j in 1..=(max_depth as usize - dd) {
                        stack.push((dd + j, self.act(Gen::D(-(j as i64)), &v)));
                    }
                }
            }
        }
        gens
    }
}

fn power_label(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}

/// Ann_{U(𝔏(𝔤)₋)}(ū) generators.
///
/// `bounds` sizes the module used for verification and for the computed
/// path; `vir_depth` is the Virasoro depth searched on the dominant path.
pub fn ann_generators(
    alg: Arc<SimpleLieAlgebra>,
    params: &HwParams,
    bounds: Bounds,
    vir_depth: u32,
    mode: AnnMode,
) -> Result<AnnGenerators> {
    let dominant = is_dominant(&alg, &params.lambda, &params.k);
    let use_formula = match mode {
        AnnMode::Dominant => {
            if !dominant {
                return Err(Error::NotDominant(format!("{} at level {}", params.lambda, scalar::fmt(&params.k))));
            }
            true
        }
        AnnMode::Auto => dominant,
        AnnMode::Computed => false,
    };
    let module = build_verma(alg.clone(), params.clone(), bounds)?;
    if use_formula {
        dominant_generators(alg, params, &module, vir_depth)
    } else {
        computed_generators(&module)
    }
}

fn dominant_generators(alg: Arc<SimpleLieAlgebra>, p: &HwParams, module: &HWModule, vir_depth: u32) -> Result<AnnGenerators> {
    let g = dual_coxeter(&alg)?;
    if (&p.k + &g).is_zero() {
        return Err(Error::LevelIsMinusDualCoxeter);
    }
    let mut gens = Vec::new();
    let e0 = scalar::to_i64(&(&p.k - alg.theta_coroot_value(&p.lambda))).expect("dominant level is integral") + 1;
    let f0 = Monomial::from_sorted(&alg, &[(Gen::Loop(alg.theta(), -1), e0 as u32)]);
    gens.push((power_label("f0", e0 as u32), UEnvElement::monomial(f0)));
    for i in 0..alg.rank() {
        let e = scalar::to_i64(&p.lambda.0[i]).expect("dominant weight is integral") + 1;
        let fi = Monomial::from_sorted(&alg, &[(Gen::Loop(alg.simple_negative(i), 0), e as u32)]);
        gens.push((power_label(&format!("f{}", i + 1), e as u32), UEnvElement::monomial(fi)));
    }

    let ctx = SugawaraContext::new(alg.clone(), p.k.clone())?;
    let (lp, cp) = (ctx.l_prime(p), ctx.c_prime(p));
    let vir = VirasoroVerma::new(alg.clone(), lp.clone(), cp.clone());
    for (j, f) in vir.singular_generators(vir_depth).into_iter().enumerate() {
        let mut e = UEnvElement::zero();
        for (m, c) in f.terms() {
            let mut v = module.highest();
            for g in m.word().iter().rev() {
                let Gen::D(n) = g else { unreachable!() };
                v = ctx.apply_d_verma(module, *n, &v);
            }
            e.add_scaled(&v, c);
        }
        let label = if f.len() == 1 {
            f.terms().next().unwrap().0.display(&alg).replace("d(", "D(")
        } else {
            format!("E{}", j + 1)
        };
        gens.push((label, e));
    }
    let generators = gens
        .into_iter()
        .map(|(label, element)| {
            let verified = module.is_singular(&element);
            AnnGenerator { label, element, verified }
        })
        .collect();
    Ok(AnnGenerators { generators, provenance: Provenance::DominantFormula, virasoro_params: Some((lp, cp)) })
}

fn computed_generators(module: &HWModule) -> Result<AnnGenerators> {
    let mut keys: Vec<_> = module.weight_keys().cloned().collect();
    keys.sort_by_key(|k| (k.0, height(&k.1), k.1.clone()));
    let mut seeds: Vec<UEnvElement> = Vec::new();
    let mut closure: BTreeMap<_, RowEchelon> = BTreeMap::new();
    let mut generators = Vec::new();
    for key in keys {
        if key.0 == 0 && key.1.iter().all(|&x| x == 0) {
            continue;
        }
        let basis = module.space(&key).unwrap().verma_basis().to_vec();
        let pos: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        for s in module.singular_in_space(&key) {
            let sv: SparseVec = s.terms().map(|(m, c)| (pos[m], c.clone())).collect();
            if closure.get(&key).is_some_and(|e| e.contains(&sv)) {
                continue;
            }
            seeds.push(s.clone());
            closure = module.lowering_closure(&seeds);
            let n = generators.len() + 1;
            generators.push(AnnGenerator { label: format!("S{n}"), element: s, verified: true });
        }
    }
    Ok(AnnGenerators { generators, provenance: Provenance::ComputedSingular, virasoro_params: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};
    use crate::lie::GWeight;

    fn sl2() -> Arc<SimpleLieAlgebra> {
        Arc::new(SimpleLieAlgebra::sl2())
    }

    #[test]
    fn virasoro_level_one_singular() {
        let v = VirasoroVerma::new(sl2(), int(0), int(1));
        let s = v.singular(1);
        assert_eq!(s.len(), 1);
        assert_eq!(v.singular_generators(4).len(), 1);
    }

    #[test]
    fn virasoro_without_singular_vectors() {
        let v = VirasoroVerma::new(sl2(), int(2), int(1));
        assert!(v.singular_generators(6).is_empty());
    }

    #[test]
    fn example_generators() {
        let alg = sl2();
        let p = HwParams::new(GWeight(vec![int(0)]), int(0), int(1), int(2));
        let a = ann_generators(alg.clone(), &p, Bounds::new(2, 2), 6, AnnMode::Auto).unwrap();
        assert_eq!(a.labels(), vec!["f0^2", "f1", "D(-1)"]);
        assert!(a.all_verified());

        let p = HwParams::new(GWeight(vec![int(2)]), frac(3, 2), int(2), frac(5, 2));
        let a = ann_generators(alg, &p, Bounds::new(2, 3), 6, AnnMode::Auto).unwrap();
        assert_eq!(a.labels(), vec!["f0", "f1^3"]);
        assert!(a.all_verified());
    }

    #[test]
    fn non_dominant_request() {
        let alg = sl2();
        let p = HwParams::new(GWeight(vec![frac(1, 3)]), int(1), int(1), int(1));
        assert!(matches!(ann_generators(alg, &p, Bounds::new(1, 1), 2, AnnMode::Dominant), Err(Error::NotDominant(_))));
    }
}
