//! Finite-dimensional irreducible 𝔤-modules L(μ).
//!
//! L(μ) is realized as the quotient of the 𝔤-Verma module by the radical of
//! its contravariant form, computed on all weight spaces down to the lowest
//! weight. Basis vectors are labelled by sorted words in the negative root
//! vectors applied to v_μ.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{BasisKind, GElem, GWeight, SimpleLieAlgebra};
use crate::error::{Error, Result};
use crate::exact::matrix::{dense_inverse, mat_vec, RowEchelon, SparseVec};
use crate::exact::scalar::{self, Scalar};

type Word = Vec<usize>;
type Comb = BTreeMap<Word, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteModule {
    highest_weight: GWeight,
    weights: Vec<GWeight>,
    labels: Vec<Word>,
    /// `matrices[x][i][j]`: coefficient of basis vector `i` in `x · b_j`.
    matrices: Vec<Vec<Vec<Scalar>>>,
}

impl FiniteModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn highest_weight(&self) -> &GWeight {
        &self.highest_weight
    }

    /// Index of v_μ in the basis (always 0).
    pub fn highest_index(&self) -> usize {
        0
    }

    pub fn weight(&self, i: usize) -> &GWeight {
        &self.weights[i]
    }

    /// Negative root vectors (basis indices of 𝔤) whose product labels basis vector `i`.
    pub fn label(&self, i: usize) -> &[usize] {
        &self.labels[i]
    }

    pub fn matrix(&self, x: usize) -> &[Vec<Scalar>] {
        &self.matrices[x]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![scalar::zero(); self.dim()];
        v[i] = scalar::one();
        v
    }

    /// Action of the basis element `x` of 𝔤.
    pub fn act(&self, x: usize, v: &[Scalar]) -> Vec<Scalar> {
        mat_vec(&self.matrices[x], v)
    }

    pub fn act_elem(&self, x: &GElem, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![scalar::zero(); self.dim()];
        for (i, c) in x {
            for (o, w) in out.iter_mut().zip(self.act(*i, v)) {
                *o += c * w;
            }
        }
        out
    }
}

struct GVerma<'a> {
    alg: &'a SimpleLieAlgebra,
    weight_vals: Vec<Scalar>,
    order: HashMap<usize, usize>,
    memo: HashMap<(usize, Word), Comb>,
}

impl<'a> GVerma<'a> {
    fn is_neg(&self, x: usize) -> bool {
        matches!(self.alg.kind(x), BasisKind::Negative(_))
    }

    /// x · (word · v_μ) as a combination of sorted words.
    fn act(&mut self, x: usize, w: &[usize]) -> Comb {
        if let Some(r) = self.memo.get(&(x, w.to_vec())) {
            return r.clone();
        }
        let mut out = Comb::new();
        if w.is_empty() {
            match self.alg.kind(x) {
                BasisKind::Negative(_) => {
                    out.insert(vec![x], scalar::one());
                }
                BasisKind::Cartan(a) => {
                    if !self.weight_vals[a].is_zero() {
                        out.insert(Vec::new(), self.weight_vals[a].clone());
                    }
                }
                BasisKind::Positive(_) => {}
            }
        } else if self.is_neg(x) && self.order[&x] <= self.order[&w[0]] {
            let mut nw = vec![x];
            nw.extend_from_slice(w);
            out.insert(nw, scalar::one());
        } else {
            let p1 = w[0];
            let rest = &w[1..];
            let inner = self.act(x, rest);
            for (word, c) in inner {
                for (word2, c2) in self.act(p1, &word) {
                    add_comb(&mut out, word2, &(&c * &c2));
                }
            }
            let br = self.alg.bracket_basis(x, p1).clone();
            for (y, c) in br {
                for (word2, c2) in self.act(y, rest) {
                    add_comb(&mut out, word2, &(&c * &c2));
                }
            }
        }
        self.memo.insert((x, w.to_vec()), out.clone());
        out
    }

    fn act_comb(&mut self, x: usize, v: &Comb) -> Comb {
        let mut out = Comb::new();
        for (w, c) in v {
            for (w2, c2) in self.act(x, w) {
                add_comb(&mut out, w2, &(c * &c2));
            }
        }
        out
    }

    /// ⟨a v, b v⟩ for the contravariant form with ω the Chevalley anti-involution.
    fn form(&mut self, a: &[usize], b: &[usize]) -> Scalar {
        let mut cur: Comb = Comb::new();
        cur.insert(b.to_vec(), scalar::one());
        for &p in a {
            let q = self.alg.partner(p);
            cur = self.act_comb(q, &cur);
            if cur.is_empty() {
                return scalar::zero();
            }
        }
        cur.get(&Vec::new()).cloned().unwrap_or_else(scalar::zero)
    }
}

fn add_comb(c: &mut Comb, w: Word, x: &Scalar) {
    if x.is_zero() {
        return;
    }
    let e = c.entry(w.clone()).or_insert_with(scalar::zero);
    *e += x;
    if e.is_zero() {
        c.remove(&w);
    }
}

/// Sorted words (nondecreasing in `negs` order) of total height at most `max_height`.
fn enumerate_words(alg: &SimpleLieAlgebra, negs: &[usize], max_height: i64) -> Vec<Word> {
    fn rec(alg: &SimpleLieAlgebra, negs: &[usize], start: usize, left: i64, cur: &mut Word, out: &mut Vec<Word>) {
        out.push(cur.clone());
        for i in start..negs.len() {
            let h = -alg.height(negs[i]);
            if h <= left {
                cur.push(negs[i]);
                rec(alg, negs, i, left - h, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(alg, negs, 0, max_height, &mut Vec::new(), &mut out);
    out
}

/// The finite-dimensional irreducible module with highest weight μ.
pub fn finite_irrep(alg: &SimpleLieAlgebra, mu: &GWeight) -> Result<FiniteModule> {
    if mu.0.len() != alg.rank() || !mu.is_dominant_integral() {
        return Err(Error::NotDominantIntegral(mu.to_string()));
    }
    let max_height = scalar::to_i64(&alg.two_rho_check_value(mu)).expect("integral weight");
    let negs: Vec<usize> = alg.negative().to_vec();
    let order: HashMap<usize, usize> = negs.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut gv = GVerma { alg, weight_vals: alg.weight_values(mu), order, memo: HashMap::new() };

    let drop_of = |w: &Word| -> Vec<i64> {
        let mut d = vec![0i64; alg.rank()];
        for &x in w {
            for (a, c) in alg.root_coords(x).iter().enumerate() {
                d[a] -= c;
            }
        }
        d
    };
    let mut spaces: BTreeMap<(i64, Vec<i64>), Vec<Word>> = BTreeMap::new();
    for w in enumerate_words(alg, &negs, max_height) {
        let d = drop_of(&w);
        spaces.entry((d.iter().sum(), d)).or_default().push(w);
    }

    // Per weight space: quotient basis words and the projection of every word.
    let mut labels: Vec<Word> = Vec::new();
    let mut weights: Vec<GWeight> = Vec::new();
    let mut projection: HashMap<Word, Vec<(usize, Scalar)>> = HashMap::new();
    for ((_, d), words) in &spaces {
        let n = words.len();
        let gram: Vec<Vec<Scalar>> =
            (0..n).map(|i| (0..n).map(|j| gv.form(&words[i], &words[j])).collect()).collect();
        let mut ech = RowEchelon::new();
        let mut chosen = Vec::new();
        for (i, row) in gram.iter().enumerate() {
            let sv: SparseVec = row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect();
            if ech.insert(sv) {
                chosen.push(i);
            }
        }
        if chosen.is_empty() {
            continue;
        }
        let gbb: Vec<Vec<Scalar>> = chosen.iter().map(|&i| chosen.iter().map(|&j| gram[i][j].clone()).collect()).collect();
        let inv = dense_inverse(&gbb).expect("Gram matrix restricted to a maximal independent set is invertible");
        let base = labels.len();
        let neg_drop: Vec<i64> = d.iter().map(|x| -x).collect();
        let wt = alg.shift_weight(mu, &neg_drop);
        for &i in &chosen {
            labels.push(words[i].clone());
            weights.push(wt.clone());
        }
        for (j, w) in words.iter().enumerate() {
            let col: Vec<Scalar> = chosen.iter().map(|&i| gram[i][j].clone()).collect();
            let coords = mat_vec(&inv, &col);
            let p = coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (base + t, c)).collect();
            projection.insert(w.clone(), p);
        }
    }

    let dim = labels.len();
    let mut matrices = vec![vec![vec![scalar::zero(); dim]; dim]; alg.dim()];
    for x in 0..alg.dim() {
        for (j, w) in labels.iter().enumerate() {
            for (w2, c) in gv.act(x, w) {
                if let Some(p) = projection.get(&w2) {
                    for (i, c2) in p {
                        matrices[x][*i][j] += &c * c2;
                    }
                }
            }
        }
    }
    Ok(FiniteModule { highest_weight: mu.clone(), weights, labels, matrices })
}

impl FiniteModule {
    /// Checks M([x,y]) = [M(x), M(y)] on all basis pairs.
    pub fn check_representation(&self, alg: &SimpleLieAlgebra) -> bool {
        let n = self.dim();
        for x in 0..alg.dim() {
            for y in 0..alg.dim() {
                for j in 0..n {
                    let v = self.basis_vector(j);
                    let lhs = self.act_elem(alg.bracket_basis(x, y), &v);
                    let xy = self.act(x, &self.act(y, &v));
                    let yx = self.act(y, &self.act(x, &v));
                    if lhs.iter().zip(xy.iter().zip(&yx)).any(|(l, (a, b))| *l != a - b) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    fn w(i: i64) -> GWeight {
        GWeight(vec![int(i)])
    }

    #[test]
    fn sl2_three_epsilon() {
        let g = SimpleLieAlgebra::sl2();
        let m = finite_irrep(&g, &w(3)).unwrap();
        assert_eq!(m.dim(), 4);
        let ws: Vec<GWeight> = (0..4).map(|i| m.weight(i).clone()).collect();
        assert_eq!(ws, vec![w(3), w(1), w(-1), w(-3)]);
        assert!(m.check_representation(&g));
    }

    #[test]
    fn trivial_module() {
        let g = SimpleLieAlgebra::sl2();
        let m = finite_irrep(&g, &w(0)).unwrap();
        assert_eq!(m.dim(), 1);
        for x in 0..3 {
            assert!(m.matrix(x)[0][0].is_zero());
        }
    }

    #[test]
    fn raising_on_string_basis() {
        // e f^j v = j(m - j + 1) f^{j-1} v
        let g = SimpleLieAlgebra::sl2();
        for mm in 0..5i64 {
            let m = finite_irrep(&g, &w(mm)).unwrap();
            assert_eq!(m.dim() as i64, mm + 1);
            let mut v = m.basis_vector(0);
            let mut chain = vec![v.clone()];
            for _ in 0..mm {
                v = m.act(1, &v);
                chain.push(v.clone());
            }
            assert!(m.act(1, &v).iter().all(|x| x.is_zero()));
            for j in 1..=mm as usize {
                let lhs = m.act(0, &chain[j]);
                let k = int(j as i64 * (mm - j as i64 + 1));
                let rhs: Vec<Scalar> = chain[j - 1].iter().map(|x| x * &k).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let g = SimpleLieAlgebra::sl2();
        assert!(matches!(finite_irrep(&g, &w(-1)), Err(Error::NotDominantIntegral(_))));
    }
}
