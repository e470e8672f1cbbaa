//! The maps ψ_n, ∘ and φ_n, and the irreducibility test for tensor modules.

mod closure;
mod endo;

pub use closure::{claim_check, corollary_witness, submodule_closure, ActionTable, ClaimCheck, ClosureMoves, SliceFamily, Witness};
pub use endo::{doubled, endo_dimension, iso_params_check, ActionBlocks, Doubled, IsoReport, ModuleBlocks, TensorBlocks};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affvir::Gen;
use crate::error::{Error, Result};
use crate::exact::matrix::{rank, rank_over_function_field, SparseMatrix};
use crate::exact::poly::NuPoly;
use crate::exact::scalar::{self, serde_scalar, Scalar};
use crate::highest_weight::{ann_generators, build_verma, height, AnnMode, Bounds, HWModule, HwParams, ModVec};
use crate::lie::{finite_irrep, is_dominant, BasisKind, FiniteModule, GWeight, SimpleLieAlgebra};
use crate::pbw::{gen_key, Engine, Monomial, UEnvElement};

/// Which factor of d_{−k_r}⋯d_{−k_1} is k₁.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiConvention {
    /// k₁ is the rightmost factor.
    #[default]
    Right,
    Left,
}

/// (λ, l, k, c, μ, a, b)
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorParams {
    pub hw: HwParams,
    pub mu: GWeight,
    #[serde(with = "serde_scalar")]
    pub a: Scalar,
    #[serde(with = "serde_scalar")]
    pub b: Scalar,
}

impl TensorParams {
    pub fn new(hw: HwParams, mu: GWeight, a: Scalar, b: Scalar) -> Self {
        TensorParams { hw, mu, a, b }
    }
}

/// ψ_ν(d_{−k_r}⋯d_{−k_1}) = ∏_j (k_j b − a − ν − Σ_{i≤j} k_i).
pub fn psi(y: &Monomial, a: &Scalar, b: &Scalar, conv: PsiConvention) -> NuPoly {
    let mut ks: Vec<i64> = y
        .word()
        .iter()
        .map(|g| match g {
            Gen::D(m) if *m < 0 => -m,
            _ => panic!("psi expects a product of negative Virasoro modes"),
        })
        .collect();
    if conv == PsiConvention::Right {
        ks.reverse();
    }
    let mut acc = 0i64;
    let mut out = NuPoly::one();
    for k in ks {
        acc += k;
        let c0 = scalar::int(k) * b - a - scalar::int(acc);
        out = &out * &NuPoly::linear(c0, -scalar::one());
    }
    out
}

pub fn psi_at(y: &Monomial, a: &Scalar, b: &Scalar, conv: PsiConvention, n: i64) -> Scalar {
    psi(y, a, b, conv).eval(&scalar::int(n))
}

/// (g₁⋯g_s)∘v = (−1)^s g_s⋯g₁ v.
pub fn circ(fin: &FiniteModule, word: &[usize], v: &[Scalar]) -> Vec<Scalar> {
    let mut w = v.to_vec();
    for &g in word {
        w = fin.act(g, &w);
    }
    if word.len() % 2 == 1 {
        w.iter_mut().for_each(|x| *x = -x.clone());
    }
    w
}

/// Vectors of L(λ,l,k,c)₀ ⊗ L(μ) with coefficients in ℚ[ν].
pub type TargetVec = Vec<NuPoly>;

/// Target data for φ: the degree-zero part L(λ) (or its truncation when λ
/// is not dominant) tensored with L(μ).
pub struct PhiContext {
    alg: Arc<SimpleLieAlgebra>,
    params: TensorParams,
    base: HWModule,
    fin: FiniteModule,
    rows: Vec<(Monomial, usize)>,
    row_index: HashMap<(Monomial, usize), usize>,
    dominant: bool,
    convention: PsiConvention,
    engine: Engine,
}

impl PhiContext {
    /// `charge` bounds the degree-zero part only when λ + kΛ₀ is not dominant.
    pub fn new(alg: Arc<SimpleLieAlgebra>, params: &TensorParams, convention: PsiConvention, charge: i64) -> Result<Self> {
        if params.mu.is_zero() {
            return Err(Error::ZeroLoopWeight);
        }
        let fin = finite_irrep(&alg, &params.mu)?;
        let dominant = is_dominant(&alg, &params.hw.lambda, &params.hw.k);
        let charge = if dominant {
            let top = scalar::to_i64(&alg.two_rho_check_value(&params.hw.lambda)).expect("dominant weight is integral");
            top + alg.height(alg.theta())
        } else {
            charge
        };
        let base = build_verma(alg.clone(), params.hw.clone(), Bounds::new(0, charge))?.irreducible_quotient()?;
        let mut keys: Vec<_> = base.weight_keys().cloned().collect();
        keys.sort_by_key(|k| (height(&k.1), k.1.clone()));
        let mut rows = Vec::new();
        for key in &keys {
            for p in base.basis(key) {
                for j in 0..fin.dim() {
                    rows.push((p.clone(), j));
                }
            }
        }
        let row_index = rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let engine = Engine::algebra(alg.clone());
        Ok(PhiContext { alg, params: params.clone(), base, fin, rows, row_index, dominant, convention, engine })
    }

    pub fn alg(&self) -> &Arc<SimpleLieAlgebra> {
        &self.alg
    }

    pub fn params(&self) -> &TensorParams {
        &self.params
    }

    pub fn fin(&self) -> &FiniteModule {
        &self.fin
    }

    pub fn base(&self) -> &HWModule {
        &self.base
    }

    pub fn rows(&self) -> &[(Monomial, usize)] {
        &self.rows
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.dominant
    }

    pub fn convention(&self) -> PsiConvention {
        self.convention
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// Action on L(λ)'s truncation; weights beyond it are dropped.
    fn base_act(&self, g: Gen, x: &ModVec) -> ModVec {
        let raw = self.base.verma_act(g, x);
        let mut kept = UEnvElement::zero();
        for (m, c) in raw.terms() {
            if self.base.in_bounds(&self.base.key_of(m)) {
                kept.add_term(m.clone(), c);
            }
        }
        self.base.reduce(&kept).expect("in-bounds terms reduce")
    }

    /// z·ū for z ∈ U(𝔫₋).
    fn z_on_highest(&self, z: &Monomial) -> ModVec {
        let mut x = self.base.highest();
        for g in z.word().iter().rev() {
            x = self.base_act(*g, &x);
            if x.is_zero() {
                break;
            }
        }
        x
    }

    fn accumulate(&self, out: &mut TargetVec, x: &ModVec, v: &[Scalar], coeff: &NuPoly) {
        for (p, c) in x.terms() {
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let r = self.row_index[&(p.clone(), j)];
                out[r] = &out[r] + &coeff.scale(&(c * y));
            }
        }
    }

    pub fn zero_target(&self) -> TargetVec {
        vec![NuPoly::zero(); self.rows.len()]
    }

    /// φ without the dominance requirement; used by the window method.
    pub fn phi_unchecked(&self, p: &UEnvElement, v: &[Scalar]) -> Result<TargetVec> {
        let mut out = self.zero_target();
        for (m, c) in p.terms() {
            if !m.is_negative(&self.alg) {
                return Err(Error::NonNegativePart(m.display(&self.alg)));
            }
            let (x, y, z) = m.split();
            let zu = self.z_on_highest(&z);
            if zu.is_zero() {
                continue;
            }
            let word: Vec<usize> = x
                .word()
                .iter()
                .map(|g| match g {
                    Gen::Loop(i, _) => *i,
                    _ => unreachable!(),
                })
                .collect();
            let xv = circ(&self.fin, &word, v);
            let ps = psi(&y, &self.params.a, &self.params.b, self.convention).scale(c);
            self.accumulate(&mut out, &zu, &xv, &ps);
        }
        Ok(out)
    }

    /// φ_ν(P ⊗ v) = Σ ψ_ν(y) zū ⊗ (x̃∘v) over the monomials xyz of P.
    pub fn phi(&self, p: &UEnvElement, v: &[Scalar]) -> Result<TargetVec> {
        if !self.dominant {
            return Err(Error::NotDominantContext(format!("{} at level {}", self.params.hw.lambda, scalar::fmt(&self.params.hw.k))));
        }
        self.phi_unchecked(p, v)
    }

    pub fn phi_at(&self, p: &UEnvElement, v: &[Scalar], n: i64) -> Result<Vec<Scalar>> {
        let n = scalar::int(n);
        Ok(self.phi(p, v)?.iter().map(|q| q.eval(&n)).collect())
    }

    /// Diagonal action of a basis element x ∈ 𝔤 on L(λ) ⊗ L(μ).
    pub fn act_diag(&self, x: usize, w: &TargetVec) -> TargetVec {
        let mut out = self.zero_target();
        for (r, q) in w.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let (p, j) = &self.rows[r];
            let xp = self.base_act(Gen::Loop(x, 0), &UEnvElement::monomial(p.clone()));
            self.accumulate(&mut out, &xp, &self.fin.basis_vector(*j), q);
            let xv = self.fin.act(x, &self.fin.basis_vector(*j));
            self.accumulate(&mut out, &UEnvElement::monomial(p.clone()), &xv, q);
        }
        out
    }

    /// ⟨λ+μ, 2ρ̌⟩: 𝔫₋-words of larger height act by zero on L(λ) ⊗ L(μ).
    pub fn nilpotency_height(&self) -> i64 {
        let top = |w: &GWeight| scalar::to_i64(&self.alg.two_rho_check_value(w)).unwrap_or(0);
        if self.dominant {
            top(&self.params.hw.lambda) + top(&self.params.mu)
        } else {
            self.base.bounds().charge + top(&self.params.mu)
        }
    }

    /// PBW monomials of U(𝔏(𝔤)₋) with loop and Virasoro depth ≤ `pbound`
    /// and 𝔫₋-part height ≤ `zbound`, in PBW order.
    pub fn column_monomials(&self, pbound: u32, zbound: i64) -> Vec<Monomial> {
        let alg = &self.alg;
        let mut cands: Vec<Gen> = Vec::new();
        for m in 1..=pbound as i64 {
            cands.extend((0..alg.dim()).map(|i| Gen::Loop(i, -m)));
            cands.push(Gen::D(-m));
        }
        cands.extend(alg.negative().iter().map(|&i| Gen::Loop(i, 0)));
        cands.sort_by_key(|g| gen_key(alg, g));
        let cost = |g: &Gen| -> (i64, i64) {
            match *g {
                Gen::Loop(i, 0) => (0, alg.height(i).abs()),
                g => (-g.degree(), 0),
            }
        };
        let mut out = Vec::new();
        let mut cur: Vec<(Gen, u32)> = Vec::new();
        fn rec(
            idx: usize,
            depth: i64,
            ht: i64,
            cands: &[Gen],
            cost: &dyn Fn(&Gen) -> (i64, i64),
            lim: (i64, i64),
            cur: &mut Vec<(Gen, u32)>,
            out: &mut Vec<Vec<(Gen, u32)>>,
        ) {
            if idx == cands.len() {
                out.push(cur.clone());
                return;
            }
            let g = cands[idx];
            let (cd, ch) = cost(&g);
            let mut e = 0u32;
            loop {
                let (d, h) = (depth + cd * e as i64, ht + ch * e as i64);
                if d > lim.0 || h > lim.1 {
                    break;
                }
                if e > 0 {
                    cur.push((g, e));
                }
                rec(idx + 1, d, h, cands, cost, lim, cur, out);
                if e > 0 {
                    cur.pop();
                }
                if cd == 0 && ch == 0 {
                    break;
                }
                e += 1;
            }
        }
        let mut raw = Vec::new();
        rec(0, 0, 0, &cands, &cost, (pbound as i64, zbound), &mut cur, &mut raw);
        for f in raw {
            out.push(Monomial::from_sorted(alg, &f));
        }
        out.sort();
        out
    }

    /// φ(P·g ⊗ v) for P = x(−m), d_{−m} or f ∈ 𝔫₋, predicted from φ(g ⊗ ·):
    /// −φ(g⊗xv), (bm − a − ν + deg q − m)φ(q⊗v) summed over the terms q of g,
    /// and f·φ(g⊗v) − φ(g⊗fv).
    pub fn predicted_left_factor(&self, p: Gen, g: &UEnvElement, v: &[Scalar]) -> Result<TargetVec> {
        match p {
            Gen::Loop(i, m) if m < 0 => {
                let w = self.phi_unchecked(g, &self.fin.act(i, v))?;
                Ok(w.iter().map(|q| q.scale(&-scalar::one())).collect())
            }
            Gen::D(m) if m < 0 => {
                let mut out = self.zero_target();
                let (a, b) = (&self.params.a, &self.params.b);
                for (q, c) in g.terms() {
                    let c0 = b * scalar::int(-m) - a + scalar::int(q.degree() + m);
                    let f = NuPoly::linear(c0, -scalar::one());
                    let w = self.phi_unchecked(&UEnvElement::term(q.clone(), c.clone()), v)?;
                    for (o, x) in out.iter_mut().zip(w) {
                        *o = &*o + &(&f * &x);
                    }
                }
                Ok(out)
            }
            Gen::Loop(i, 0) if matches!(self.alg.kind(i), BasisKind::Negative(_)) => {
                let mut out = self.act_diag(i, &self.phi_unchecked(g, v)?);
                let w = self.phi_unchecked(g, &self.fin.act(i, v))?;
                for (o, x) in out.iter_mut().zip(w) {
                    *o = &*o - &x;
                }
                Ok(out)
            }
            g => Err(Error::NonNegativePart(g.display(&self.alg))),
        }
    }

    /// φ(P·g ⊗ v) with P·g brought to PBW normal form first.
    pub fn phi_product(&self, p: &Monomial, g: &UEnvElement, v: &[Scalar]) -> Result<TargetVec> {
        let pg = self.engine.multiply(&UEnvElement::monomial(p.clone()), g);
        self.phi_unchecked(&pg, v)
    }

    /// Matrix with columns φ(P·g_i ⊗ v) for P from [`PhiContext::column_monomials`].
    pub fn phi_image(&self, gens: &[UEnvElement], pbound: u32) -> Result<PhiImage> {
        let monos = self.column_monomials(pbound, self.nilpotency_height());
        let mut matrix = SparseMatrix::new(self.rows.len(), 0);
        let mut seen = std::collections::HashSet::new();
        let mut labels = Vec::new();
        let mut max_nu_degree = 0usize;
        for (gi, g) in gens.iter().enumerate() {
            for p in &monos {
                let pg = self.engine.multiply(&UEnvElement::monomial(p.clone()), g);
                let vir_len = pg.terms().map(|(m, _)| m.split().1.len() as usize).max().unwrap_or(0);
                for j in 0..self.fin.dim() {
                    let col = self.phi_unchecked(&pg, &self.fin.basis_vector(j))?;
                    if col.iter().all(|q| q.is_zero()) || !seen.insert(col.clone()) {
                        continue;
                    }
                    let deg = col.iter().filter_map(|q| q.degree()).max().unwrap_or(0);
                    assert!(deg <= vir_len, "column degree in nu exceeds its Virasoro length");
                    max_nu_degree = max_nu_degree.max(deg);
                    matrix.push_col(col.into_iter().enumerate().filter(|(_, q)| !q.is_zero()));
                    labels.push((gi, p.display(&self.alg), j));
                }
            }
        }
        let certified = pbound >= 1 && self.left_factor_identities(gens)?;
        let (generic_rank, exceptional, nonrational) = if matrix.cols() == 0 || matrix.rows() == 0 {
            (0, Vec::new(), false)
        } else {
            let r = rank_over_function_field(&matrix)?;
            (r.generic_rank, r.exceptional, r.nonrational_factor)
        };
        Ok(PhiImage { matrix, columns: labels, generic_rank, exceptional, nonrational_factor: nonrational, certified, max_nu_degree })
    }

    /// Checks [`PhiContext::predicted_left_factor`] against normal-form
    /// expansion for every degree −1 and 𝔫₋ left factor, generator and basis vector.
    pub fn left_factor_identities(&self, gens: &[UEnvElement]) -> Result<bool> {
        let mut lefts: Vec<Gen> = (0..self.alg.dim()).map(|i| Gen::Loop(i, -1)).collect();
        lefts.push(Gen::D(-1));
        lefts.extend(self.alg.negative().iter().map(|&i| Gen::Loop(i, 0)));
        for g in gens {
            for &p in &lefts {
                for j in 0..self.fin.dim() {
                    let v = self.fin.basis_vector(j);
                    if self.phi_product(&Monomial::gen(p), g, &v)? != self.predicted_left_factor(p, g, &v)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// The φ-image matrix and its rank data over ℚ(ν).
#[derive(Clone, Debug)]
pub struct PhiImage {
    pub matrix: SparseMatrix<NuPoly>,
    /// (generator index, left factor P, L(μ) basis index) per column.
    pub columns: Vec<(usize, String, usize)>,
    pub generic_rank: usize,
    /// Rational ν where the rank drops.
    pub exceptional: Vec<Scalar>,
    pub nonrational_factor: bool,
    /// Left-factor reduction identities verified, so higher P add no new directions.
    pub certified: bool,
    pub max_nu_degree: usize,
}

impl PhiImage {
    pub fn exceptional_integers(&self) -> Vec<i64> {
        self.exceptional.iter().filter_map(scalar::to_i64).collect()
    }

    pub fn rank_at(&self, n: i64) -> usize {
        if self.matrix.cols() == 0 {
            return 0;
        }
        rank(&self.matrix.eval(&scalar::int(n)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum VerdictMethod {
    SymbolicRank,
    Window,
    /// Ann_{U(𝔏(𝔤)₋)}(ū) = 0, so the module is reducible outright.
    EmptyAnnihilator,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IrredVerdict {
    pub irreducible: bool,
    pub method: VerdictMethod,
    pub generic_surjective: bool,
    pub generic_rank: usize,
    pub target_dim: usize,
    /// Integers n where the image of φ_n is proper.
    pub exceptional_n: Vec<i64>,
    /// All rational ν where the rank drops.
    pub exceptional_roots: Vec<String>,
    pub nonrational_factor: bool,
    pub window_checked: Option<(i64, i64)>,
    /// Scalar rank at each n in the window matches the symbolic prediction.
    pub window_agrees: Option<bool>,
    pub truncation_certified: bool,
    pub ann_labels: Vec<String>,
    pub matrix_rows: usize,
    pub matrix_cols: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrredOptions {
    /// Module used to verify or compute Ann generators.
    pub bounds: Bounds,
    pub vir_depth: u32,
    pub pbound: u32,
    pub window: i64,
    pub convention: PsiConvention,
    pub symbolic: bool,
    pub ann_mode: AnnMode,
}

impl Default for IrredOptions {
    fn default() -> Self {
        IrredOptions {
            bounds: Bounds::new(2, 2),
            vir_depth: 2,
            pbound: 1,
            window: 10,
            convention: PsiConvention::Right,
            symbolic: true,
            ann_mode: AnnMode::Auto,
        }
    }
}

/// Decides irreducibility of L(λ,l,k,c) ⊗ L_{a,b}(μ).
pub fn is_irreducible(alg: Arc<SimpleLieAlgebra>, params: &TensorParams, opts: &IrredOptions) -> Result<IrredVerdict> {
    if params.mu.is_zero() {
        return Err(Error::ZeroLoopWeight);
    }
    let ann = ann_generators(alg.clone(), &params.hw, opts.bounds, opts.vir_depth, opts.ann_mode)?;
    let ctx = PhiContext::new(alg, params, opts.convention, opts.bounds.charge)?;
    let labels = ann.labels();
    if ann.generators.is_empty() {
        return Ok(IrredVerdict {
            irreducible: false,
            method: VerdictMethod::EmptyAnnihilator,
            generic_surjective: false,
            generic_rank: 0,
            target_dim: ctx.target_dim(),
            exceptional_n: Vec::new(),
            exceptional_roots: Vec::new(),
            nonrational_factor: false,
            window_checked: None,
            window_agrees: None,
            truncation_certified: true,
            ann_labels: labels,
            matrix_rows: ctx.target_dim(),
            matrix_cols: 0,
        });
    }
    verdict_from_generators(&ctx, &ann.elements(), labels, opts)
}

/// The decision procedure for a fixed generating set of Ann_{U(𝔏(𝔤)₋)}(ū).
pub fn verdict_from_generators(ctx: &PhiContext, gens: &[UEnvElement], labels: Vec<String>, opts: &IrredOptions) -> Result<IrredVerdict> {
    let img = ctx.phi_image(gens, opts.pbound)?;
    let target = ctx.target_dim();
    let w = opts.window;
    let window_ranks: BTreeMap<i64, usize> = (-w..=w).map(|n| (n, img.rank_at(n))).collect();
    let generic_surjective = img.generic_rank == target;
    let symbolic = opts.symbolic && ctx.is_dominant();
    if symbolic {
        let exc = img.exceptional_integers();
        let agrees = window_ranks
            .iter()
            .all(|(n, r)| if exc.contains(n) { *r < img.generic_rank } else { *r == img.generic_rank });
        Ok(IrredVerdict {
            irreducible: generic_surjective && exc.is_empty(),
            method: VerdictMethod::SymbolicRank,
            generic_surjective,
            generic_rank: img.generic_rank,
            target_dim: target,
            exceptional_n: exc,
            exceptional_roots: img.exceptional.iter().map(scalar::fmt).collect(),
            nonrational_factor: img.nonrational_factor,
            window_checked: Some((-w, w)),
            window_agrees: Some(agrees),
            truncation_certified: img.certified,
            ann_labels: labels,
            matrix_rows: target,
            matrix_cols: img.matrix.cols(),
        })
    } else {
        let proper: Vec<i64> = window_ranks.iter().filter(|(_, r)| **r < target).map(|(n, _)| *n).collect();
        Ok(IrredVerdict {
            irreducible: proper.is_empty(),
            method: VerdictMethod::Window,
            generic_surjective,
            generic_rank: img.generic_rank,
            target_dim: target,
            exceptional_n: proper,
            exceptional_roots: Vec::new(),
            nonrational_factor: img.nonrational_factor,
            window_checked: Some((-w, w)),
            window_agrees: None,
            truncation_certified: false,
            ann_labels: labels,
            matrix_rows: target,
            matrix_cols: img.matrix.cols(),
        })
    }
}

/// Compares the φ-image of ℂ[f]·g ⊗ L(μ) with ℂ[f]·(ū ⊗ x·L(μ)) inside
/// L(λ) ⊗ L(μ), where f runs over 𝔫₋ words and both sides are evaluated at ν = 0.
/// Returns (dimension of the first, dimension of the second, equal).
pub fn bridging_check(ctx: &PhiContext, g: &UEnvElement, x: usize) -> Result<(usize, usize, bool)> {
    use crate::exact::matrix::RowEchelon;
    let to_sparse = |w: &TargetVec| -> crate::exact::SparseVec {
        w.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(i, q)| (i, q.eval(&scalar::zero()))).filter(|(_, c)| !c.is_zero()).collect()
    };
    let monos: Vec<Monomial> = ctx
        .column_monomials(0, ctx.nilpotency_height())
        .into_iter()
        .filter(|m| m.split().0.is_one() && m.split().1.is_one())
        .collect();
    let mut lhs = RowEchelon::new();
    let mut rhs = RowEchelon::new();
    for z in &monos {
        for j in 0..ctx.fin.dim() {
            let v = ctx.fin.basis_vector(j);
            lhs.insert(to_sparse(&ctx.phi_product(z, g, &v)?));
            let mut w = ctx.zero_target();
            ctx.accumulate(&mut w, &ctx.base.highest(), &ctx.fin.act(x, &v), &NuPoly::one());
            for f in z.word().iter().rev() {
                let Gen::Loop(i, _) = f else { unreachable!() };
                w = ctx.act_diag(*i, &w);
            }
            rhs.insert(to_sparse(&w));
        }
    }
    let equal = lhs.rank() == rhs.rank() && rhs.rows().iter().all(|r| lhs.contains(r));
    Ok((lhs.rank(), rhs.rank(), equal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    fn sl2() -> Arc<SimpleLieAlgebra> {
        Arc::new(SimpleLieAlgebra::sl2())
    }

    fn params(lam: i64, l: Scalar, k: i64, c: Scalar, mu: i64, a: Scalar, b: Scalar) -> TensorParams {
        TensorParams::new(HwParams::new(GWeight(vec![int(lam)]), l, int(k), c), GWeight(vec![int(mu)]), a, b)
    }

    #[test]
    fn psi_values() {
        let alg = sl2();
        let (a, b) = (frac(1, 3), frac(1, 2));
        assert_eq!(psi(&Monomial::one(), &a, &b, PsiConvention::Right), NuPoly::one());
        let d1 = Monomial::parse(&alg, "d(-1)").unwrap();
        assert_eq!(psi(&d1, &a, &b, PsiConvention::Right), NuPoly::linear(&b - &a - int(1), -int(1)));
        let d21 = Monomial::parse(&alg, "d(-2) d(-1)").unwrap();
        for n in -3..=3 {
            let nn = int(n);
            let expect = (&b - &a - &nn - int(1)) * (int(2) * &b - &a - &nn - int(3));
            assert_eq!(psi_at(&d21, &a, &b, PsiConvention::Right, n), expect);
            let left = (int(2) * &b - &a - &nn - int(2)) * (&b - &a - &nn - int(3));
            assert_eq!(psi_at(&d21, &a, &b, PsiConvention::Left, n), left);
        }
    }

    #[test]
    fn circ_signs() {
        let alg = sl2();
        let fin = finite_irrep(&alg, &GWeight(vec![int(2)])).unwrap();
        let v = fin.basis_vector(1);
        assert_eq!(circ(&fin, &[], &v), v);
        let ev: Vec<Scalar> = fin.act(0, &v).iter().map(|x| -x.clone()).collect();
        assert_eq!(circ(&fin, &[0], &v), ev);
        assert_eq!(circ(&fin, &[0, 1], &v), fin.act(1, &fin.act(0, &v)));
    }

    #[test]
    fn phi_examples() {
        let alg = sl2();
        let p = params(0, int(0), 1, int(2), 2, int(0), frac(1, 2));
        let ctx = PhiContext::new(alg.clone(), &p, PsiConvention::Right, 2).unwrap();
        assert_eq!(ctx.target_dim(), 3);
        let v = ctx.fin().basis_vector(1);
        let one = ctx.phi(&UEnvElement::one(), &v).unwrap();
        assert_eq!(one[1], NuPoly::one());
        let d1 = UEnvElement::monomial(Monomial::parse(&alg, "d(-1)").unwrap());
        let r = ctx.phi(&d1, &v).unwrap();
        assert_eq!(r[1], NuPoly::linear(frac(-1, 2), -int(1)));
        let e2 = UEnvElement::monomial(Monomial::parse(&alg, "e(-2)").unwrap());
        let r = ctx.phi_at(&e2, &v, 0).unwrap();
        let ev: Vec<Scalar> = ctx.fin().act(0, &v).iter().map(|x| -x.clone()).collect();
        assert_eq!(r, ev);
        assert!(matches!(ctx.phi(&UEnvElement::monomial(Monomial::parse(&alg, "e").unwrap()), &v), Err(Error::NonNegativePart(_))));
    }

    #[test]
    fn example_trivial_weight_verdicts() {
        let alg = sl2();
        let opts = IrredOptions::default();
        let p = params(0, int(0), 1, int(2), 2, int(0), frac(1, 2));
        let v = is_irreducible(alg.clone(), &p, &opts).unwrap();
        assert!(v.irreducible, "{v:?}");
        assert_eq!(v.exceptional_n, Vec::<i64>::new());
        assert_eq!(v.window_agrees, Some(true));
        assert!(v.truncation_certified);
        let p = params(0, int(0), 1, int(2), 1, int(0), int(1));
        let v = is_irreducible(alg.clone(), &p, &opts).unwrap();
        assert!(!v.irreducible);
        assert_eq!(v.exceptional_n, vec![0]);
        assert_eq!(v.window_agrees, Some(true));
        // for m ≥ 2 the f0^2 columns already fill the target at ν = 0
        let p = params(0, int(0), 1, int(2), 2, int(0), int(1));
        let v = is_irreducible(alg, &p, &opts).unwrap();
        assert!(v.irreducible, "{v:?}");
    }

    #[test]
    fn example_two_epsilon_verdict_and_bridge() {
        let alg = sl2();
        let p = params(2, frac(3, 2), 2, frac(5, 2), 3, frac(1, 5), frac(2, 7));
        let v = is_irreducible(alg.clone(), &p, &IrredOptions::default()).unwrap();
        assert!(v.irreducible, "{v:?}");
        assert_eq!(v.ann_labels, vec!["f0", "f1^3"]);
        let ctx = PhiContext::new(alg.clone(), &p, PsiConvention::Right, 2).unwrap();
        let f0 = UEnvElement::monomial(Monomial::parse(&alg, "e(-1)").unwrap());
        let (l, r, eq) = bridging_check(&ctx, &f0, 0).unwrap();
        assert!(eq);
        assert_eq!((l, r), (12, 12));
    }
}
