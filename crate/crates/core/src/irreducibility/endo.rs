//! Endomorphism spaces of truncated modules and the isomorphism-class test.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::closure::ActionTable;
use super::TensorParams;
use crate::affvir::Gen;
use crate::exact::matrix::{unit_vec, RowEchelon, SparseVec};
use crate::exact::scalar::{self, Scalar};
use crate::highest_weight::{lowering_operators, raising_operators, HWModule, WeightKey};
use crate::loop_tensor::TensorContext;
use crate::pbw::UEnvElement;

/// A finite-dimensional module split into weight blocks, with a finite set
/// of operators that map blocks to blocks.
pub trait ActionBlocks {
    type Key: Ord + Clone + std::hash::Hash + std::fmt::Debug;

    fn blocks(&self) -> Vec<(Self::Key, usize)>;
    fn num_moves(&self) -> usize;
    /// Block hit by move `m`, or `None` when it lies outside the truncation.
    fn target(&self, m: usize, b: &Self::Key) -> Option<Self::Key>;
    /// Image of basis vector `i` of block `b`; `None` if it leaves the truncation.
    fn image(&self, m: usize, b: &Self::Key, i: usize) -> Option<SparseVec>;
    /// Vectors expected to generate the module.
    fn seeds(&self) -> Vec<(Self::Key, SparseVec)> {
        Vec::new()
    }

    fn apply(&self, m: usize, b: &Self::Key, v: &SparseVec) -> Option<SparseVec> {
        let mut out = SparseVec::new();
        for (i, x) in v {
            for (r, y) in self.image(m, b, *i)? {
                *out.entry(r).or_insert_with(scalar::zero) += x * &y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        Some(out)
    }
}

/// Blocks (n, total drop) of the truncated shifted tensor module.
pub struct TensorBlocks<'a> {
    table: &'a ActionTable,
    /// Global column → (total drop, local index).
    local: Vec<(Vec<i64>, usize)>,
    global: HashMap<(Vec<i64>, usize), usize>,
    sizes: BTreeMap<Vec<i64>, usize>,
    move_drop: Vec<Vec<i64>>,
    seeds: Vec<(i64, usize)>,
}

impl<'a> TensorBlocks<'a> {
    pub fn new(ctx: &TensorContext, table: &'a ActionTable) -> Self {
        let alg = ctx.alg();
        let mut sizes: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let local: Vec<(Vec<i64>, usize)> = table
            .basis
            .iter()
            .map(|(p, j)| {
                let d = ctx.total_drop(p, *j);
                let s = sizes.entry(d.clone()).or_default();
                *s += 1;
                (d, *s - 1)
            })
            .collect();
        let global = local.iter().cloned().enumerate().map(|(g, l)| (l, g)).collect();
        let move_drop = table
            .moves
            .iter()
            .map(|g| match g {
                Gen::Loop(i, _) => alg.root_coords(*i).iter().map(|c| -c).collect(),
                _ => vec![0; alg.rank()],
            })
            .collect();
        let top = table.index[&(crate::pbw::Monomial::one(), ctx.fin.highest_index())];
        let seeds = (-table.window..=table.window).map(|n| (n, top)).collect();
        TensorBlocks { table, local, global, sizes, move_drop, seeds }
    }
}

impl ActionBlocks for TensorBlocks<'_> {
    type Key = (i64, Vec<i64>);

    fn blocks(&self) -> Vec<(Self::Key, usize)> {
        let w = self.table.window;
        (-w..=w).flat_map(|n| self.sizes.iter().map(move |(d, s)| ((n, d.clone()), *s))).collect()
    }

    fn num_moves(&self) -> usize {
        self.table.moves.len()
    }

    fn target(&self, m: usize, b: &Self::Key) -> Option<Self::Key> {
        let n = b.0 + self.table.moves[m].degree();
        let d: Vec<i64> = b.1.iter().zip(&self.move_drop[m]).map(|(x, y)| x + y).collect();
        (n.abs() <= self.table.window && self.sizes.contains_key(&d)).then_some((n, d))
    }

    fn image(&self, m: usize, b: &Self::Key, i: usize) -> Option<SparseVec> {
        let col = self.global[&(b.1.clone(), i)];
        let img = self.table.images.get(&(m, b.0))?[col].as_ref()?;
        Some(img.iter().map(|(r, x)| (self.local[*r].1, x.clone())).collect())
    }

    fn seeds(&self) -> Vec<(Self::Key, SparseVec)> {
        self.seeds
            .iter()
            .map(|&(n, c)| ((n, self.local[c].0.clone()), unit_vec(self.local[c].1)))
            .collect()
    }
}

/// Weight spaces of a truncated highest-weight module with raising and lowering operators.
pub struct ModuleBlocks<'a> {
    module: &'a HWModule,
    moves: Vec<Gen>,
}

impl<'a> ModuleBlocks<'a> {
    pub fn new(module: &'a HWModule) -> Self {
        let alg = module.alg();
        let mut moves = raising_operators(alg);
        moves.extend(lowering_operators(alg, module.bounds().depth));
        ModuleBlocks { module, moves }
    }
}

impl ActionBlocks for ModuleBlocks<'_> {
    type Key = WeightKey;

    fn blocks(&self) -> Vec<(Self::Key, usize)> {
        self.module.weight_keys().map(|k| (k.clone(), self.module.dim(k))).filter(|(_, d)| *d > 0).collect()
    }

    fn num_moves(&self) -> usize {
        self.moves.len()
    }

    fn target(&self, m: usize, b: &Self::Key) -> Option<Self::Key> {
        let alg = self.module.alg();
        let g = self.moves[m];
        let depth = b.0 as i64 - g.degree();
        if depth < 0 {
            return None;
        }
        let mut drop = b.1.clone();
        if let Gen::Loop(i, _) = g {
            for (d, c) in drop.iter_mut().zip(alg.root_coords(i)) {
                *d -= c;
            }
        }
        let key = (depth as u32, drop);
        (self.module.in_bounds(&key) && self.module.dim(&key) > 0).then_some(key)
    }

    fn image(&self, m: usize, b: &Self::Key, i: usize) -> Option<SparseVec> {
        let t = self.target(m, b)?;
        let v = UEnvElement::monomial(self.module.basis(b)[i].clone());
        let img = self.module.act(self.moves[m], &v).ok()?;
        let c = self.module.coords(&t, &img).ok()?;
        Some(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
    }

    fn seeds(&self) -> Vec<(Self::Key, SparseVec)> {
        vec![((0, vec![0; self.module.alg().rank()]), unit_vec(0))]
    }
}

/// M ⊕ M.
pub struct Doubled<'a, T: ActionBlocks> {
    inner: &'a T,
    sizes: BTreeMap<T::Key, usize>,
}

pub fn doubled<T: ActionBlocks>(inner: &T) -> Doubled<'_, T> {
    Doubled { inner, sizes: inner.blocks().into_iter().collect() }
}

impl<T: ActionBlocks> ActionBlocks for Doubled<'_, T> {
    type Key = T::Key;

    fn blocks(&self) -> Vec<(Self::Key, usize)> {
        self.sizes.iter().map(|(k, d)| (k.clone(), 2 * d)).collect()
    }

    fn num_moves(&self) -> usize {
        self.inner.num_moves()
    }

    fn target(&self, m: usize, b: &Self::Key) -> Option<Self::Key> {
        self.inner.target(m, b)
    }

    fn image(&self, m: usize, b: &Self::Key, i: usize) -> Option<SparseVec> {
        let d = self.sizes[b];
        let t = self.target(m, b)?;
        let dt = self.sizes[&t];
        let img = self.inner.image(m, b, i % d)?;
        let off = if i >= d { dt } else { 0 };
        Some(img.into_iter().map(|(r, x)| (r + off, x)).collect())
    }

    fn seeds(&self) -> Vec<(Self::Key, SparseVec)> {
        let mut s = self.inner.seeds();
        let shifted: Vec<_> = s
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(|(i, x)| (i + self.sizes[k], x.clone())).collect()))
            .collect();
        s.extend(shifted);
        s
    }
}

/// Vector of a block together with its image under an unknown endomorphism,
/// stored as a linear function of the unknowns: one sparse row per block coordinate.
struct Tracked {
    vec: SparseVec,
    image: Vec<SparseVec>,
}

fn sub_scaled(a: &mut Tracked, c: &Scalar, b: &Tracked) {
    crate::exact::matrix::axpy(&mut a.vec, &-c.clone(), &b.vec);
    for (x, y) in a.image.iter_mut().zip(&b.image) {
        crate::exact::matrix::axpy(x, &-c.clone(), y);
    }
}

/// Dimension of the space of block-preserving linear maps commuting with
/// every move wherever the move stays inside the truncation.
///
/// The map is propagated from generating vectors: its value on each seed is
/// a vector of unknowns, its value on g·w is g applied to its value on w, and
/// every linear dependency found along the way becomes an equation.
pub fn endo_dimension<T: ActionBlocks>(m: &T) -> usize {
    let blocks: BTreeMap<T::Key, usize> = m.blocks().into_iter().collect();
    let mut rows: BTreeMap<T::Key, Vec<Tracked>> = BTreeMap::new();
    let mut pivots: HashMap<T::Key, Vec<usize>> = HashMap::new();
    let mut equations = RowEchelon::new();
    let mut unknowns = 0usize;
    let mut queue: Vec<(T::Key, usize)> = Vec::new();

    let mut insert = |key: &T::Key, mut t: Tracked, rows: &mut BTreeMap<T::Key, Vec<Tracked>>, eqs: &mut RowEchelon, queue: &mut Vec<(T::Key, usize)>| {
        let rs = rows.entry(key.clone()).or_default();
        let ps = pivots.entry(key.clone()).or_default();
        for (r, &p) in rs.iter().zip(ps.iter()) {
            if let Some(c) = t.vec.get(&p).cloned() {
                sub_scaled(&mut t, &c, r);
            }
        }
        if t.vec.is_empty() {
            for e in t.image {
                if !e.is_empty() {
                    eqs.insert(e);
                }
            }
            return;
        }
        let p = *t.vec.keys().next().unwrap();
        let inv = scalar::one() / &t.vec[&p];
        t.vec.values_mut().for_each(|x| *x *= &inv);
        t.image.iter_mut().for_each(|r| r.values_mut().for_each(|x| *x *= &inv));
        // keep rows reduced at the new pivot so sequential reduction stays valid
        for r in rs.iter_mut() {
            if let Some(c) = r.vec.get(&p).cloned() {
                sub_scaled(r, &c, &t);
            }
        }
        ps.push(p);
        rs.push(t);
        queue.push((key.clone(), rs.len() - 1));
    };

    let fresh = |key: &T::Key, v: SparseVec, unknowns: &mut usize| -> Tracked {
        let d = blocks[key];
        let image = (0..d)
            .map(|i| {
                let mut r = SparseVec::new();
                r.insert(*unknowns + i, scalar::one());
                r
            })
            .collect();
        *unknowns += d;
        Tracked { vec: v, image }
    };

    let mut seeds = m.seeds();
    let mut extra = blocks.iter().flat_map(|(k, d)| (0..*d).map(move |i| (k.clone(), i)));
    loop {
        for (k, v) in seeds.drain(..) {
            let t = fresh(&k, v, &mut unknowns);
            insert(&k, t, &mut rows, &mut equations, &mut queue);
        }
        while let Some((key, idx)) = queue.pop() {
            for mv in 0..m.num_moves() {
                let Some(tk) = m.target(mv, &key) else { continue };
                let src = &rows[&key][idx];
                let Some(vec) = m.apply(mv, &key, &src.vec) else { continue };
                let dt = blocks[&tk];
                let mut image = vec![SparseVec::new(); dt];
                let mut ok = true;
                // image[r] = Σ_i (g e_i)_r · src.image[i]
                for (i, row) in src.image.iter().enumerate() {
                    if row.is_empty() {
                        continue;
                    }
                    let Some(gi) = m.image(mv, &key, i) else {
                        ok = false;
                        break;
                    };
                    for (r, c) in gi {
                        crate::exact::matrix::axpy(&mut image[r], &c, row);
                    }
                }
                if !ok {
                    continue;
                }
                insert(&tk, Tracked { vec, image }, &mut rows, &mut equations, &mut queue);
            }
        }
        // add a basis vector outside the span, if any remains
        let next = extra.by_ref().find(|(k, i)| {
            let rs = rows.get(k).map_or(0, |r| r.len());
            rs < blocks[k] && {
                let mut v = unit_vec(*i);
                for (r, &p) in rows.get(k).into_iter().flatten().zip(pivots_of(&rows, k).iter()) {
                    if let Some(c) = v.get(&p).cloned() {
                        crate::exact::matrix::axpy(&mut v, &-c, &r.vec);
                    }
                }
                !v.is_empty()
            }
        });
        match next {
            Some((k, i)) => seeds.push((k, unit_vec(i))),
            None => break,
        }
    }
    unknowns - equations.rank()
}

fn pivots_of<K: Ord>(rows: &BTreeMap<K, Vec<Tracked>>, k: &K) -> Vec<usize> {
    rows.get(k).map_or(Vec::new(), |rs| rs.iter().map(|t| *t.vec.keys().next().unwrap()).collect())
}

/// Result of comparing two parameter tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub isomorphic: bool,
    /// Name of the first component that differs after normalizing a mod ℤ.
    pub first_difference: Option<String>,
}

/// Isomorphism test for L(λ,l,k,c) ⊗ L_{a,b}(μ): tuples agree with a taken mod ℤ.
pub fn iso_params_check(p1: &TensorParams, p2: &TensorParams) -> IsoReport {
    let checks: [(&str, bool); 7] = [
        ("lambda", p1.hw.lambda == p2.hw.lambda),
        ("l", p1.hw.l == p2.hw.l),
        ("k", p1.hw.k == p2.hw.k),
        ("c", p1.hw.c == p2.hw.c),
        ("mu", p1.mu == p2.mu),
        ("a", scalar::frac_part(&p1.a) == scalar::frac_part(&p2.a)),
        ("b", p1.b == p2.b),
    ];
    let first = checks.iter().find(|(_, same)| !same).map(|(n, _)| n.to_string());
    IsoReport { isomorphic: first.is_none(), first_difference: first }
}
