//! Truncated highest-weight modules M(λ,l,k,c) and their irreducible quotients.
//!
//! Vectors are elements of U(𝔏(𝔤)₋) standing for P·u. A module keeps every
//! weight space with depth ≤ N and charge drop (height of λ − η) ≤ C. In the
//! irreducible quotient each weight space carries a pivot set of Verma
//! monomials together with the expression of every Verma monomial in it,
//! obtained from the radical of the contravariant form.

mod ann;
mod dump;

pub use ann::{ann_generators, AnnGenerator, AnnGenerators, AnnMode, Provenance, VirasoroVerma};

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affvir::{AffVirElement, Gen};
use crate::error::{Error, Result};
use crate::exact::matrix::{rank_and_kernel, RowEchelon, SparseMatrix, SparseVec};
use crate::exact::scalar::{self, serde_scalar, Scalar};
use crate::lie::{BasisKind, GWeight, SimpleLieAlgebra};
use crate::pbw::{BaseAction, Engine, Monomial, UEnvElement};

/// Module vectors: P stands for P·u.
pub type ModVec = UEnvElement;

/// Weight-space key: depth d (d₀-eigenvalue l − d) and drop λ − η in simple-root coordinates.
pub type WeightKey = (u32, Vec<i64>);

const BASIS_BUDGET: usize = 400_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwParams {
    pub lambda: GWeight,
    #[serde(with = "serde_scalar")]
    pub l: Scalar,
    #[serde(with = "serde_scalar")]
    pub k: Scalar,
    #[serde(with = "serde_scalar")]
    pub c: Scalar,
}

impl HwParams {
    pub fn new(lambda: GWeight, l: Scalar, k: Scalar, c: Scalar) -> Self {
        HwParams { lambda, l, k, c }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub depth: u32,
    pub charge: i64,
}

impl Bounds {
    pub fn new(depth: u32, charge: i64) -> Self {
        Bounds { depth, charge }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleKind {
    Verma,
    IrreducibleQuotient,
}

/// Eigenvalues of ℋ = 𝔥 ⊕ ℂd₀ ⊕ ℂ𝐤 ⊕ ℂ𝐜 on a weight space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightLabel {
    pub h_weight: GWeight,
    pub d0: Scalar,
    pub k: Scalar,
    pub c: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Quotient {
    /// Basis indices kept in the quotient.
    pivots: Vec<usize>,
    /// For every Verma basis index, its coordinates over `pivots` (by position).
    reps: Vec<Vec<(usize, Scalar)>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSpace {
    pub(crate) basis: Vec<Monomial>,
    pub(crate) quotient: Option<Quotient>,
}

impl WeightSpace {
    pub fn verma_basis(&self) -> &[Monomial] {
        &self.basis
    }
}

pub struct HWModule {
    alg: Arc<SimpleLieAlgebra>,
    params: HwParams,
    bounds: Bounds,
    kind: ModuleKind,
    spaces: BTreeMap<WeightKey, WeightSpace>,
    index: HashMap<Monomial, (WeightKey, usize)>,
    engine: Arc<Engine>,
    form_memo: Arc<Mutex<HashMap<(Monomial, Monomial), Scalar>>>,
}

fn verma_engine(alg: &Arc<SimpleLieAlgebra>, p: &HwParams) -> Engine {
    let a2 = alg.clone();
    let vals = alg.weight_values(&p.lambda);
    let (l, k, c) = (p.l.clone(), p.k.clone(), p.c.clone());
    Engine::with_base(
        alg.clone(),
        Box::new(move |g| {
            if g.is_negative(&a2) {
                return BaseAction::Push;
            }
            BaseAction::Scalar(match g {
                Gen::Loop(i, 0) => match a2.kind(i) {
                    BasisKind::Cartan(a) => vals[a].clone(),
                    _ => scalar::zero(),
                },
                Gen::D(0) => l.clone(),
                Gen::K => k.clone(),
                Gen::C => c.clone(),
                _ => scalar::zero(),
            })
        }),
    )
}

/// Sum of the entries of a drop vector.
pub fn height(drop: &[i64]) -> i64 {
    drop.iter().sum()
}

/// All monomials of U(𝔏(𝔤)₋) with depth ≤ N and drop height ≤ C.
fn enumerate_basis(alg: &SimpleLieAlgebra, b: Bounds) -> Result<Vec<Monomial>> {
    let n = b.depth as i64;
    let mut lv: Vec<Gen> = Vec::new();
    for m in -n..=-1 {
        for i in 0..alg.dim() {
            lv.push(Gen::Loop(i, m));
        }
    }
    for m in -n..=-1 {
        lv.push(Gen::D(m));
    }
    let fin: Vec<Gen> = alg.negative().iter().map(|&i| Gen::Loop(i, 0)).collect();

    fn rec_lv(lv: &[Gen], start: usize, left: i64, cur: &mut Vec<(Gen, u32)>, out: &mut Vec<Vec<(Gen, u32)>>) {
        out.push(cur.clone());
        for i in start..lv.len() {
            let d = -lv[i].degree();
            if d > left {
                continue;
            }
            let mut e = 1u32;
            while d * e as i64 <= left {
                cur.push((lv[i], e));
                rec_lv(lv, i + 1, left - d * e as i64, cur, out);
                cur.pop();
                e += 1;
            }
        }
    }
    fn rec_fin(
        alg: &SimpleLieAlgebra,
        fin: &[Gen],
        start: usize,
        left: i64,
        cur: &mut Vec<(Gen, u32)>,
        out: &mut Vec<Vec<(Gen, u32)>>,
        budget: usize,
    ) -> bool {
        out.push(cur.clone());
        if out.len() > budget {
            return false;
        }
        for i in start..fin.len() {
            let Gen::Loop(x, _) = fin[i] else { unreachable!() };
            let h = -alg.height(x);
            let mut e = 1u32;
            while h * e as i64 <= left {
                cur.push((fin[i], e));
                if !rec_fin(alg, fin, i + 1, left - h * e as i64, cur, out, budget) {
                    return false;
                }
                cur.pop();
                e += 1;
            }
        }
        true
    }

    let mut heads = Vec::new();
    rec_lv(&lv, 0, n, &mut Vec::new(), &mut heads);
    let mut out = Vec::new();
    for head in heads {
        let hm = Monomial::from_sorted(alg, &head);
        let left = b.charge - height(&hm.drop(alg));
        if left < 0 {
            continue;
        }
        let mut tails = Vec::new();
        if !rec_fin(alg, &fin, 0, left, &mut Vec::new(), &mut tails, BASIS_BUDGET) {
            return Err(Error::BoundsTooLargeForMemory(BASIS_BUDGET + 1, BASIS_BUDGET));
        }
        for t in tails {
            let mut f = head.clone();
            f.extend(t);
            out.push(Monomial::from_sorted(alg, &f));
        }
        if out.len() > BASIS_BUDGET {
            return Err(Error::BoundsTooLargeForMemory(out.len(), BASIS_BUDGET));
        }
    }
    Ok(out)
}

/// Generators of 𝔏(𝔤)₊ used for singularity tests: 𝔫₊ simple root vectors, every x(1), d₁, d₂.
pub fn raising_operators(alg: &SimpleLieAlgebra) -> Vec<Gen> {
    let mut ops: Vec<Gen> = alg.simple().iter().map(|&s| Gen::Loop(s, 0)).collect();
    ops.extend((0..alg.dim()).map(|i| Gen::Loop(i, 1)));
    ops.push(Gen::D(1));
    ops.push(Gen::D(2));
    ops
}

/// Generators of 𝔏(𝔤)₋ that can act within depth N.
pub fn lowering_operators(alg: &SimpleLieAlgebra, depth: u32) -> Vec<Gen> {
    let mut ops: Vec<Gen> = alg.negative().iter().map(|&i| Gen::Loop(i, 0)).collect();
    for j in 1..=depth as i64 {
        ops.extend((0..alg.dim()).map(|i| Gen::Loop(i, -j)));
        ops.push(Gen::D(-j));
    }
    ops
}

/// Builds the truncated Verma module M(λ,l,k,c).
pub fn build_verma(alg: Arc<SimpleLieAlgebra>, params: HwParams, bounds: Bounds) -> Result<HWModule> {
    if params.lambda.0.len() != alg.rank() {
        return Err(Error::BadInput(format!("weight {} has the wrong rank", params.lambda)));
    }
    if bounds.charge < 0 {
        return Err(Error::BadInput("charge bound must be nonnegative".into()));
    }
    let basis = enumerate_basis(&alg, bounds)?;
    let mut spaces: BTreeMap<WeightKey, WeightSpace> = BTreeMap::new();
    for m in basis {
        let key = ((-m.degree()) as u32, m.drop(&alg));
        spaces.entry(key).or_insert_with(|| WeightSpace { basis: Vec::new(), quotient: None }).basis.push(m);
    }
    let engine = Arc::new(verma_engine(&alg, &params));
    Ok(HWModule::assemble(alg, params, bounds, ModuleKind::Verma, spaces, engine, Arc::new(Mutex::new(HashMap::new()))))
}

impl HWModule {
    fn assemble(
        alg: Arc<SimpleLieAlgebra>,
        params: HwParams,
        bounds: Bounds,
        kind: ModuleKind,
        spaces: BTreeMap<WeightKey, WeightSpace>,
        engine: Arc<Engine>,
        form_memo: Arc<Mutex<HashMap<(Monomial, Monomial), Scalar>>>,
    ) -> Self {
        let mut index = HashMap::new();
        for (key, sp) in &spaces {
            for (i, m) in sp.basis.iter().enumerate() {
                index.insert(m.clone(), (key.clone(), i));
            }
        }
        HWModule { alg, params, bounds, kind, spaces, index, engine, form_memo }
    }

    pub fn alg(&self) -> &Arc<SimpleLieAlgebra> {
        &self.alg
    }

    pub fn params(&self) -> &HwParams {
        &self.params
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn engine(&self) -> &Arc<Engine> {
        &self.engine
    }

    pub fn weight_keys(&self) -> impl Iterator<Item = &WeightKey> {
        self.spaces.keys()
    }

    pub fn space(&self, key: &WeightKey) -> Option<&WeightSpace> {
        self.spaces.get(key)
    }

    /// The highest weight vector u (or ū).
    pub fn highest(&self) -> ModVec {
        UEnvElement::one()
    }

    pub fn weight_label(&self, key: &WeightKey) -> WeightLabel {
        WeightLabel {
            h_weight: self.alg.shift_weight(&self.params.lambda, &key.1.iter().map(|x| -x).collect::<Vec<_>>()),
            d0: &self.params.l - scalar::int(key.0 as i64),
            k: self.params.k.clone(),
            c: self.params.c.clone(),
        }
    }

    pub fn key_of(&self, m: &Monomial) -> WeightKey {
        ((-m.degree()) as u32, m.drop(&self.alg))
    }

    pub fn in_bounds(&self, key: &WeightKey) -> bool {
        key.0 <= self.bounds.depth && height(&key.1) <= self.bounds.charge
    }

    /// Weight spaces whose every contribution from U(𝔏(𝔤)₋)-translates of
    /// higher vectors stays inside the bounds.
    pub fn is_interior(&self, key: &WeightKey) -> bool {
        height(&key.1) + key.0 as i64 * self.alg.height(self.alg.theta()) <= self.bounds.charge
    }

    /// Monomials spanning the weight space in this module (pivots for quotients).
    pub fn basis(&self, key: &WeightKey) -> Vec<Monomial> {
        match self.spaces.get(key) {
            None => Vec::new(),
            Some(sp) => match &sp.quotient {
                None => sp.basis.clone(),
                Some(q) => q.pivots.iter().map(|&i| sp.basis[i].clone()).collect(),
            },
        }
    }

    pub fn dim(&self, key: &WeightKey) -> usize {
        match self.spaces.get(key) {
            None => 0,
            Some(sp) => sp.quotient.as_ref().map_or(sp.basis.len(), |q| q.pivots.len()),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.keys().map(|k| self.dim(k)).sum()
    }

    pub fn basis_vectors(&self, key: &WeightKey) -> Vec<ModVec> {
        self.basis(key).into_iter().map(UEnvElement::monomial).collect()
    }

    /// Action in the Verma module with no truncation.
    pub fn verma_act(&self, g: Gen, v: &ModVec) -> ModVec {
        self.engine.lmul_elem(g, v)
    }

    pub fn verma_act_elem(&self, x: &AffVirElement, v: &ModVec) -> ModVec {
        let mut out = UEnvElement::zero();
        for (g, c) in x.terms() {
            out.add_scaled(&self.verma_act(*g, v), c);
        }
        out
    }

    /// Canonical representative of a vector: checks the bounds and, for
    /// quotients, rewrites in the pivot monomials.
    pub fn reduce(&self, v: &ModVec) -> Result<ModVec> {
        let mut out = UEnvElement::zero();
        for (m, c) in v.terms() {
            let Some((key, i)) = self.index.get(m) else {
                return Err(Error::TruncationEscape(m.display(&self.alg)));
            };
            let sp = &self.spaces[key];
            match &sp.quotient {
                None => out.add_term(m.clone(), c),
                Some(q) => {
                    for (pos, x) in &q.reps[*i] {
                        out.add_term(sp.basis[q.pivots[*pos]].clone(), &(c * x));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn act(&self, g: Gen, v: &ModVec) -> Result<ModVec> {
        self.reduce(&self.verma_act(g, v))
    }

    pub fn act_elem(&self, x: &AffVirElement, v: &ModVec) -> Result<ModVec> {
        self.reduce(&self.verma_act_elem(x, v))
    }

    /// Coordinates of a weight vector over [`HWModule::basis`].
    pub fn coords(&self, key: &WeightKey, v: &ModVec) -> Result<Vec<Scalar>> {
        let r = self.reduce(v)?;
        let basis = self.basis(key);
        let pos: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = vec![scalar::zero(); basis.len()];
        for (m, c) in r.terms() {
            match pos.get(m) {
                Some(&i) => out[i] = c.clone(),
                None => return Err(Error::BadInput(format!("{} is not in the requested weight space", m.display(&self.alg)))),
            }
        }
        Ok(out)
    }

    /// Contravariant form ⟨P u, Q u⟩ with ⟨u, u⟩ = 1.
    pub fn form(&self, p: &Monomial, q: &Monomial) -> Scalar {
        if p.degree() != q.degree() || p.drop(&self.alg) != q.drop(&self.alg) {
            return scalar::zero();
        }
        self.form_same_weight(p, q)
    }

    fn form_same_weight(&self, p: &Monomial, q: &Monomial) -> Scalar {
        let Some((p1, rest)) = p.pop_front() else {
            return if q.is_one() { scalar::one() } else { scalar::zero() };
        };
        let key = (p.clone(), q.clone());
        if let Some(x) = self.form_memo.lock().unwrap().get(&key) {
            return x.clone();
        }
        let w = self.engine.lmul(p1.omega(&self.alg), q);
        let mut s = scalar::zero();
        for (q2, c) in w.terms() {
            let f = self.form_same_weight(&rest, q2);
            if !f.is_zero() {
                s += c * f;
            }
        }
        self.form_memo.lock().unwrap().insert(key, s.clone());
        s
    }

    pub fn form_vec(&self, v: &ModVec, w: &ModVec) -> Scalar {
        let mut s = scalar::zero();
        for (p, a) in v.terms() {
            for (q, b) in w.terms() {
                let f = self.form(p, q);
                if !f.is_zero() {
                    s += a * b * f;
                }
            }
        }
        s
    }

    /// Gram matrix of the Verma basis of one weight space.
    pub fn gram(&self, key: &WeightKey) -> Vec<Vec<Scalar>> {
        let basis = self.spaces.get(key).map(|s| s.basis.clone()).unwrap_or_default();
        let n = basis.len();
        let mut g = vec![vec![scalar::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let x = self.form_same_weight(&basis[i], &basis[j]);
                g[j][i] = x.clone();
                g[i][j] = x;
            }
        }
        g
    }

    /// Radical of the contravariant form on one weight space of the Verma module.
    pub fn radical(&self, key: &WeightKey) -> Vec<ModVec> {
        let Some(sp) = self.spaces.get(key) else { return Vec::new() };
        let mut ech = RowEchelon::new();
        for row in self.gram(key) {
            ech.insert(dense_to_sparse(&row));
        }
        ech.kernel(sp.basis.len()).into_iter().map(|k| self.sparse_to_vec(sp, &k)).collect()
    }

    fn sparse_to_vec(&self, sp: &WeightSpace, k: &SparseVec) -> ModVec {
        let mut v = UEnvElement::zero();
        for (i, c) in k {
            v.add_term(sp.basis[*i].clone(), c);
        }
        v
    }

    /// The quotient L(λ,l,k,c) = M/J computed weight space by weight space.
    pub fn irreducible_quotient(&self) -> Result<HWModule> {
        let mut spaces = BTreeMap::new();
        for (key, sp) in &self.spaces {
            let mut ech = RowEchelon::new();
            for row in self.gram(key) {
                ech.insert(dense_to_sparse(&row));
            }
            let pivots: Vec<usize> = ech.pivots().to_vec();
            let mut order: Vec<usize> = (0..pivots.len()).collect();
            order.sort_by_key(|&r| pivots[r]);
            let sorted_pivots: Vec<usize> = order.iter().map(|&r| pivots[r]).collect();
            let pos_of_row: HashMap<usize, usize> = order.iter().enumerate().map(|(pos, &r)| (r, pos)).collect();
            let mut reps = vec![Vec::new(); sp.basis.len()];
            for j in 0..sp.basis.len() {
                let mut v: Vec<(usize, Scalar)> = Vec::new();
                for (r, row) in ech.rows().iter().enumerate() {
                    if let Some(x) = row.get(&j) {
                        v.push((pos_of_row[&r], x.clone()));
                    }
                }
                v.sort_by_key(|t| t.0);
                reps[j] = v;
            }
            spaces.insert(
                key.clone(),
                WeightSpace { basis: sp.basis.clone(), quotient: Some(Quotient { pivots: sorted_pivots, reps }) },
            );
        }
        Ok(HWModule::assemble(
            self.alg.clone(),
            self.params.clone(),
            self.bounds,
            ModuleKind::IrreducibleQuotient,
            spaces,
            self.engine.clone(),
            self.form_memo.clone(),
        ))
    }

    /// Whether the Verma vector v is killed by every raising operator.
    pub fn is_singular(&self, v: &ModVec) -> bool {
        !v.is_zero() && raising_operators(&self.alg).into_iter().all(|g| self.verma_act(g, v).is_zero())
    }

    /// Basis of the singular vectors of the Verma module in one weight space.
    pub fn singular_in_space(&self, key: &WeightKey) -> Vec<ModVec> {
        let Some(sp) = self.spaces.get(key) else { return Vec::new() };
        let ops = raising_operators(&self.alg);
        let mut rows: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut entries = Vec::new();
        for (j, m) in sp.basis.iter().enumerate() {
            let v = UEnvElement::monomial(m.clone());
            for (o, g) in ops.iter().enumerate() {
                for (m2, c) in self.verma_act(*g, &v).terms() {
                    let n = rows.len();
                    let r = *rows.entry((o, m2.clone())).or_insert(n);
                    entries.push((r, j, c.clone()));
                }
            }
        }
        let mut mat = SparseMatrix::new(rows.len(), sp.basis.len());
        for (r, j, c) in entries {
            let old = mat.get(r, j).cloned().unwrap_or_else(scalar::zero);
            mat.set(r, j, old + c);
        }
        let (_, kernel) = rank_and_kernel(&mat);
        kernel.into_iter().map(|k| self.sparse_to_vec(sp, &dense_to_sparse(&k))).collect()
    }

    /// Singular vectors at depth `depth` with drop height in `charges`.
    pub fn singular_vectors(&self, depth: u32, charges: RangeInclusive<i64>) -> Result<Vec<ModVec>> {
        if depth + 1 > self.bounds.depth {
            return Err(Error::InsufficientHeadroom { depth, bound: self.bounds.depth });
        }
        let mut out = Vec::new();
        for key in self.spaces.keys() {
            if key.0 == depth && charges.contains(&height(&key.1)) {
                out.extend(self.singular_in_space(key));
            }
        }
        Ok(out)
    }

    /// Smallest family of subspaces containing `seeds` and closed under the
    /// lowering operators, restricted to the computed weight spaces. Subspaces
    /// are in Verma coordinates.
    pub fn lowering_closure(&self, seeds: &[ModVec]) -> BTreeMap<WeightKey, RowEchelon> {
        let ops = lowering_operators(&self.alg, self.bounds.depth);
        let mut subs: BTreeMap<WeightKey, RowEchelon> = BTreeMap::new();
        let mut queue: VecDeque<ModVec> = seeds.iter().cloned().collect();
        while let Some(v) = queue.pop_front() {
            let Some(first) = v.terms().next().map(|(m, _)| m.clone()) else { continue };
            let Some((key, _)) = self.index.get(&first) else { continue };
            let sp = &self.spaces[key];
            let Some(sv) = self.to_sparse(sp, &v) else { continue };
            let ech = subs.entry(key.clone()).or_default();
            if !ech.insert(sv) {
                continue;
            }
            for g in &ops {
                let w = self.verma_act(*g, &v);
                if w.is_zero() {
                    continue;
                }
                let k2 = self.key_of(w.terms().next().unwrap().0);
                if self.in_bounds(&k2) {
                    queue.push_back(w);
                }
            }
        }
        subs
    }

    fn to_sparse(&self, sp: &WeightSpace, v: &ModVec) -> Option<SparseVec> {
        let pos: HashMap<&Monomial, usize> = sp.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = SparseVec::new();
        for (m, c) in v.terms() {
            out.insert(*pos.get(m)?, c.clone());
        }
        Some(out)
    }

    /// Submodule of the Verma module generated by all singular vectors below
    /// u found in the computed weight spaces.
    pub fn singular_generated_submodule(&self) -> BTreeMap<WeightKey, RowEchelon> {
        let mut seeds = Vec::new();
        for key in self.spaces.keys() {
            if key.0 == 0 && key.1.iter().all(|&x| x == 0) {
                continue;
            }
            seeds.extend(self.singular_in_space(key));
        }
        self.lowering_closure(&seeds)
    }

    /// Rank of the radical on one weight space.
    pub fn radical_dim(&self, key: &WeightKey) -> usize {
        match self.spaces.get(key).and_then(|s| s.quotient.as_ref()) {
            Some(q) => self.spaces[key].basis.len() - q.pivots.len(),
            None => self.radical(key).len(),
        }
    }

    /// Whether `v` is zero in this module.
    pub fn is_zero_vec(&self, v: &ModVec) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }
}

pub(crate) fn dense_to_sparse(row: &[Scalar]) -> SparseVec {
    row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    fn sl2() -> Arc<SimpleLieAlgebra> {
        Arc::new(SimpleLieAlgebra::sl2())
    }

    fn params(lam: i64, l: Scalar, k: Scalar, c: Scalar) -> HwParams {
        HwParams::new(GWeight(vec![int(lam)]), l, k, c)
    }

    #[test]
    fn small_weight_spaces() {
        let alg = sl2();
        let m = build_verma(alg.clone(), params(0, int(0), int(1), int(2)), Bounds::new(1, 1)).unwrap();
        let names: Vec<String> = m.basis(&(1, vec![0])).iter().map(|x| x.display(&alg)).collect();
        assert_eq!(names, vec!["e(-1) f", "h(-1)", "d(-1)"]);
        assert_eq!(m.dim(&(0, vec![0])), 1);
        assert_eq!(m.basis(&(0, vec![1]))[0].display(&alg), "f");
    }

    #[test]
    fn highest_weight_relations() {
        let alg = sl2();
        let p = params(3, frac(1, 2), int(2), int(5));
        let m = build_verma(alg, p, Bounds::new(2, 2)).unwrap();
        let u = m.highest();
        assert_eq!(m.act(Gen::D(0), &u).unwrap(), u.scale(&frac(1, 2)));
        let v = m.act(Gen::D(-1), &u).unwrap();
        assert!(m.act(Gen::Loop(0, 1), &v).unwrap().is_zero());
        assert_eq!(m.act(Gen::K, &v).unwrap(), v.scale(&int(2)));
        assert!(matches!(m.act(Gen::D(-3), &u), Err(Error::TruncationEscape(_))));
    }

    #[test]
    fn sl2_fin_singular() {
        let alg = sl2();
        let m = build_verma(alg, params(0, int(0), int(1), int(2)), Bounds::new(1, 1)).unwrap();
        let s = m.singular_vectors(0, 1..=1).unwrap();
        assert_eq!(s.len(), 1);
        assert!(matches!(m.singular_vectors(1, 0..=1), Err(Error::InsufficientHeadroom { .. })));
    }
}
