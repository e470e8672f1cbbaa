//! Submodule closures inside the truncated shifted tensor module.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;

use super::PhiContext;
use crate::affvir::Gen;
use crate::error::Result;
use crate::exact::matrix::{RowEchelon, SparseVec};
use crate::exact::poly::NuPoly;
use crate::exact::scalar;
use crate::highest_weight::height;
use crate::loop_tensor::{TensorContext, TensorVector};
use crate::pbw::{Monomial, UEnvElement};

/// A generating set of 𝔏(𝔤): every x(0) and x(±1), with d_{±1} and d_{±2}.
#[derive(Clone, Debug)]
pub struct ClosureMoves(pub Vec<Gen>);

impl ClosureMoves {
    pub fn standard(dim: usize) -> Self {
        let mut g = Vec::new();
        for m in [-1, 0, 1] {
            g.extend((0..dim).map(|i| Gen::Loop(i, m)));
        }
        g.extend([Gen::D(-2), Gen::D(-1), Gen::D(1), Gen::D(2)]);
        ClosureMoves(g)
    }
}

/// Sparse action tables of the moves on every slice of the window.
///
/// Columns of a slice are the tensor basis ordered deepest first, so that a
/// reduced echelon row never has components deeper than its pivot.
pub struct ActionTable {
    pub basis: Vec<(Monomial, usize)>,
    pub index: HashMap<(Monomial, usize), usize>,
    pub window: i64,
    pub moves: Vec<Gen>,
    /// `images[(move, n)][col]`: image of a basis vector, `None` if it leaves the truncation.
    pub images: HashMap<(usize, i64), Vec<Option<SparseVec>>>,
}

impl ActionTable {
    pub fn new(ctx: &TensorContext, moves: &ClosureMoves) -> Result<Self> {
        let mut basis = ctx.tensor_weight_basis(0);
        let alg = ctx.alg().clone();
        basis.sort_by_key(|(p, j)| (Reverse(-p.degree()), Reverse(height(&p.drop(&alg))), p.clone(), *j));
        let index: HashMap<_, _> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let w = ctx.window;
        let mut images = HashMap::new();
        for (mi, &g) in moves.0.iter().enumerate() {
            let shift = g.degree();
            for n in -w..=w {
                if (n + shift).abs() > w {
                    continue;
                }
                let col: Vec<Option<SparseVec>> = basis
                    .iter()
                    .map(|(p, j)| {
                        let img = ctx.shifted_act(g, &TensorVector::pure(n, p.clone(), *j)).ok()?;
                        Some(img.terms().map(|((_, q, k), c)| (index[&(q.clone(), *k)], c.clone())).collect())
                    })
                    .collect();
                images.insert((mi, n), col);
            }
        }
        Ok(ActionTable { basis, index, window: w, moves: moves.0.clone(), images })
    }

    pub fn slice_dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of `v` ∈ slice n under move `mi`, or `None` when it leaves the truncation.
    pub fn apply(&self, mi: usize, n: i64, v: &SparseVec) -> Option<SparseVec> {
        let table = self.images.get(&(mi, n))?;
        let mut out = SparseVec::new();
        for (c, x) in v {
            for (r, y) in table[*c].as_ref()? {
                let e = out.entry(*r).or_insert_with(scalar::zero);
                *e += x * y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        Some(out)
    }

    pub fn to_sparse(&self, w: &TensorVector) -> BTreeMap<i64, SparseVec> {
        let mut out: BTreeMap<i64, SparseVec> = BTreeMap::new();
        for ((n, p, j), c) in w.terms() {
            out.entry(*n).or_default().insert(self.index[&(p.clone(), *j)], c.clone());
        }
        out
    }
}

/// Per-slice subspaces of the truncated tensor module.
pub struct SliceFamily {
    pub slices: BTreeMap<i64, RowEchelon>,
    pub slice_dim: usize,
}

impl SliceFamily {
    pub fn dim(&self, n: i64) -> usize {
        self.slices.get(&n).map_or(0, |e| e.rank())
    }

    pub fn is_full(&self, n: i64) -> bool {
        self.dim(n) == self.slice_dim
    }

    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.slices.iter().map(|(n, e)| (*n, e.rank())).collect()
    }
}

/// Least family of subspaces containing the seeds and closed under every
/// move that stays inside the truncation.
pub fn submodule_closure(table: &ActionTable, seeds: &[(i64, SparseVec)]) -> SliceFamily {
    let w = table.window;
    let mut slices: BTreeMap<i64, RowEchelon> = (-w..=w).map(|n| (n, RowEchelon::new())).collect();
    for (n, v) in seeds {
        if let Some(e) = slices.get_mut(n) {
            e.insert(v.clone());
        }
    }
    let mut done: HashMap<i64, HashSet<Vec<(usize, String)>>> = HashMap::new();
    loop {
        let mut grew = false;
        for n in -w..=w {
            let rows: Vec<SparseVec> = slices[&n].rows().to_vec();
            for r in rows {
                let key: Vec<(usize, String)> = r.iter().map(|(c, x)| (*c, x.to_string())).collect();
                if !done.entry(n).or_default().insert(key) {
                    continue;
                }
                for (mi, g) in table.moves.iter().enumerate() {
                    let t = n + g.degree();
                    if t.abs() > w {
                        continue;
                    }
                    if let Some(img) = table.apply(mi, n, &r) {
                        if !img.is_empty() && slices.get_mut(&t).unwrap().insert(img) {
                            grew = true;
                        }
                    }
                }
            }
        }
        if !grew {
            break;
        }
    }
    SliceFamily { slices, slice_dim: table.slice_dim() }
}

/// The submodule generated by all full slices n ≥ n₀+1 and its slice at n₀.
pub struct Witness {
    pub n0: i64,
    pub slice_dim: usize,
    pub closure_dim: usize,
    pub proper: bool,
}

pub fn corollary_witness(table: &ActionTable, n0: i64) -> (Witness, SliceFamily) {
    let mut seeds = Vec::new();
    for n in n0 + 1..=table.window {
        for c in 0..table.slice_dim() {
            seeds.push((n, crate::exact::matrix::unit_vec(c)));
        }
    }
    let fam = submodule_closure(table, &seeds);
    let d = fam.dim(n0);
    (Witness { n0, slice_dim: table.slice_dim(), closure_dim: d, proper: d < table.slice_dim() }, fam)
}

/// Outcome of comparing a closure slice with φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub n: i64,
    pub rows_checked: usize,
    /// Every closure row maps into φ_n(Ann ⊗ L(μ)).
    pub holds: bool,
}

/// Checks that φ̂_n(xyzū⊗v) = ψ_n(y)zū⊗(x̃∘v) sends the n-slice of the
/// submodule generated by the slices above n into φ_n(Ann ⊗ L(μ)).
pub fn claim_check(table: &ActionTable, phi: &PhiContext, gens: &[UEnvElement], n: i64) -> Result<ClaimCheck> {
    let nn = scalar::int(n);
    let eval = |w: Vec<NuPoly>| -> SparseVec {
        w.into_iter().enumerate().map(|(i, q)| (i, q.eval(&nn))).filter(|(_, c)| !c.is_zero()).collect()
    };
    let mut image = RowEchelon::new();
    for g in gens {
        for p in phi.column_monomials(0, phi.nilpotency_height()) {
            for j in 0..phi.fin().dim() {
                image.insert(eval(phi.phi_product(&p, g, &phi.fin().basis_vector(j))?));
            }
        }
    }
    let (_, fam) = corollary_witness(table, n);
    let rows = fam.slices[&n].rows();
    for r in rows {
        let mut acc = phi.zero_target();
        for (c, x) in r {
            let (p, j) = &table.basis[*c];
            let w = phi.phi_unchecked(&UEnvElement::monomial(p.clone()), &phi.fin().basis_vector(*j))?;
            for (a, b) in acc.iter_mut().zip(w) {
                *a = &*a + &b.scale(x);
            }
        }
        if !image.contains(&eval(acc)) {
            return Ok(ClaimCheck { n, rows_checked: rows.len(), holds: false });
        }
    }
    Ok(ClaimCheck { n, rows_checked: rows.len(), holds: true })
}
