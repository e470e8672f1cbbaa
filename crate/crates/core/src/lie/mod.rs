//! Finite-dimensional simple Lie algebras given by structure constants.
//!
//! The basis must split into a Cartan part, positive root vectors and
//! negative root vectors, with `negative[i]` the Chevalley partner of
//! `positive[i]`. Everything else (roots, θ, ρ, coroots, dual basis) is
//! derived and checked at load time.

pub mod finite;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::matrix::{dense_inverse, mat_vec};
use crate::exact::scalar::{self, Scalar};

pub use finite::{finite_irrep, FiniteModule};

/// Sparse linear combination of basis elements of 𝔤.
pub type GElem = Vec<(usize, Scalar)>;

/// On-disk description of an algebra. Rationals are `"p/q"` strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraConfig {
    pub name: String,
    pub basis: Vec<String>,
    pub cartan: Vec<String>,
    pub positive: Vec<String>,
    pub negative: Vec<String>,
    pub simple: Vec<String>,
    /// `(i, j, [(k, c)])` meaning `[x_i, x_j] = Σ c·x_k`.
    pub brackets: Vec<(usize, usize, Vec<(usize, String)>)>,
    pub form: Vec<Vec<String>>,
    #[serde(default = "default_true")]
    pub normalize: bool,
}

fn default_true() -> bool {
    true
}

impl AlgebraConfig {
    pub fn sl2() -> Self {
        let s = |x: &str| x.to_string();
        AlgebraConfig {
            name: s("sl2"),
            basis: vec![s("e"), s("f"), s("h")],
            cartan: vec![s("h")],
            positive: vec![s("e")],
            negative: vec![s("f")],
            simple: vec![s("e")],
            brackets: vec![(0, 1, vec![(2, s("1"))]), (2, 0, vec![(0, s("2"))]), (2, 1, vec![(1, s("-2"))])],
            form: vec![vec![s("0"), s("1"), s("0")], vec![s("1"), s("0"), s("0")], vec![s("0"), s("0"), s("2")]],
            normalize: true,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::BadAlgebra(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::BadAlgebra(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Cartan(usize),
    Positive(usize),
    Negative(usize),
}

/// A weight of 𝔤 stored by its values ⟨λ, α̌_i⟩ on the simple coroots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GWeight(#[serde(with = "serde_weight")] pub Vec<Scalar>);

mod serde_weight {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
        x.iter().map(scalar::fmt).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Scalar>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| scalar::parse(s).map_err(serde::de::Error::custom)).collect()
    }
}

impl GWeight {
    pub fn zero(rank: usize) -> Self {
        GWeight(vec![scalar::zero(); rank])
    }

    /// Multiple of the first fundamental weight (ε for sl₂).
    pub fn fundamental_multiple(rank: usize, c: Scalar) -> Self {
        let mut w = Self::zero(rank);
        w.0[0] = c;
        w
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.0.iter().all(|x| scalar::is_integer(x) && !x.is_negative())
    }
}

impl fmt::Display for GWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(scalar::fmt).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug)]
pub struct SimpleLieAlgebra {
    pub name: String,
    names: Vec<String>,
    table: Vec<Vec<GElem>>,
    form: Vec<Vec<Scalar>>,
    kind: Vec<BasisKind>,
    cartan: Vec<usize>,
    positive: Vec<usize>,
    negative: Vec<usize>,
    simple: Vec<usize>,
    /// α(h_a) for the root of each basis element (zero for Cartan elements).
    root_values: Vec<Vec<Scalar>>,
    /// Root of each basis element in simple-root coordinates.
    root_coords: Vec<Vec<i64>>,
    /// Simple coroots as vectors in the Cartan basis.
    coroots: Vec<Vec<Scalar>>,
    /// Inverse of the form restricted to the Cartan basis.
    cartan_form_inv: Vec<Vec<Scalar>>,
    /// Maps coroot coordinates of a weight to its values on the Cartan basis.
    coroot_to_cartan: Vec<Vec<Scalar>>,
    theta: usize,
    rho: Vec<Scalar>,
    dual: Vec<GElem>,
    partner: Vec<usize>,
}

impl SimpleLieAlgebra {
    pub fn sl2() -> Self {
        Self::load(&AlgebraConfig::sl2()).expect("built-in sl2 preset is valid")
    }

    /// Builds and validates an algebra from its description.
    pub fn load(cfg: &AlgebraConfig) -> Result<Self> {
        let d = cfg.basis.len();
        let idx = |n: &str| -> Result<usize> {
            cfg.basis.iter().position(|b| b == n).ok_or_else(|| Error::BadAlgebra(format!("unknown basis name {n:?}")))
        };
        let cartan: Vec<usize> = cfg.cartan.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        let positive: Vec<usize> = cfg.positive.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        let negative: Vec<usize> = cfg.negative.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        let simple: Vec<usize> = cfg.simple.iter().map(|n| idx(n)).collect::<Result<_>>()?;
        if positive.len() != negative.len() || cartan.len() + positive.len() + negative.len() != d {
            return Err(Error::BadAlgebra("basis must split into Cartan, positive and paired negative parts".into()));
        }
        let mut kind = vec![None; d];
        for (k, &i) in cartan.iter().enumerate() {
            kind[i] = Some(BasisKind::Cartan(k));
        }
        for (k, &i) in positive.iter().enumerate() {
            if kind[i].replace(BasisKind::Positive(k)).is_some() {
                return Err(Error::BadAlgebra(format!("{} listed twice", cfg.basis[i])));
            }
        }
        for (k, &i) in negative.iter().enumerate() {
            if kind[i].replace(BasisKind::Negative(k)).is_some() {
                return Err(Error::BadAlgebra(format!("{} listed twice", cfg.basis[i])));
            }
        }
        let kind: Vec<BasisKind> = kind.into_iter().map(|k| k.unwrap()).collect();
        if simple.len() != cartan.len() || simple.iter().any(|&s| !matches!(kind[s], BasisKind::Positive(_))) {
            return Err(Error::BadAlgebra("simple root vectors must be rank-many positive elements".into()));
        }

        let mut table: Vec<Vec<Option<GElem>>> = vec![vec![None; d]; d];
        for (i, j, terms) in &cfg.brackets {
            if *i >= d || *j >= d || terms.iter().any(|(k, _)| *k >= d) {
                return Err(Error::BadAlgebra(format!("bracket index out of range in ({i}, {j})")));
            }
            let mut v: GElem = Vec::new();
            for (k, c) in terms {
                add_term(&mut v, *k, &scalar::parse(c)?);
            }
            let neg: GElem = v.iter().map(|(k, c)| (*k, -c)).collect();
            if i == j && !v.is_empty() {
                return Err(Error::NotAntisymmetric(cfg.basis[*i].clone(), cfg.basis[*j].clone()));
            }
            for ((a, b), val) in [((*i, *j), v), ((*j, *i), neg)] {
                match &table[a][b] {
                    Some(old) if !same_elem(old, &val) => {
                        return Err(Error::NotAntisymmetric(cfg.basis[a].clone(), cfg.basis[b].clone()));
                    }
                    _ => table[a][b] = Some(val),
                }
            }
        }
        let table: Vec<Vec<GElem>> =
            table.into_iter().map(|r| r.into_iter().map(|x| x.unwrap_or_default()).collect()).collect();

        let mut form = Vec::with_capacity(d);
        if cfg.form.len() != d {
            return Err(Error::BadAlgebra("form matrix has the wrong size".into()));
        }
        for row in &cfg.form {
            if row.len() != d {
                return Err(Error::BadAlgebra("form matrix has the wrong size".into()));
            }
            form.push(row.iter().map(|s| scalar::parse(s)).collect::<Result<Vec<_>>>()?);
        }

        let names = cfg.basis.clone();
        let br = |a: &GElem, b: &GElem| -> GElem {
            let mut out = Vec::new();
            for (i, x) in a {
                for (j, y) in b {
                    for (k, z) in &table[*i][*j] {
                        add_term(&mut out, *k, &(x * y * z));
                    }
                }
            }
            out
        };
        let unit = |i: usize| -> GElem { vec![(i, scalar::one())] };

        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut s = br(&br(&unit(i), &unit(j)), &unit(k));
                    for (a, c) in br(&br(&unit(j), &unit(k)), &unit(i)) {
                        add_term(&mut s, a, &c);
                    }
                    for (a, c) in br(&br(&unit(k), &unit(i)), &unit(j)) {
                        add_term(&mut s, a, &c);
                    }
                    if !s.is_empty() {
                        return Err(Error::JacobiViolation(names[i].clone(), names[j].clone(), names[k].clone()));
                    }
                }
            }
        }
        let pair = |a: &GElem, b: &GElem| -> Scalar {
            let mut s = scalar::zero();
            for (i, x) in a {
                for (j, y) in b {
                    s += x * y * &form[*i][*j];
                }
            }
            s
        };
        for i in 0..d {
            for j in 0..d {
                if form[i][j] != form[j][i] {
                    return Err(Error::FormNotInvariant(names[i].clone(), names[j].clone(), "symmetry".into()));
                }
                for k in 0..d {
                    if pair(&br(&unit(i), &unit(j)), &unit(k)) != pair(&unit(i), &br(&unit(j), &unit(k))) {
                        return Err(Error::FormNotInvariant(names[i].clone(), names[j].clone(), names[k].clone()));
                    }
                }
            }
        }

        // Roots: every non-Cartan basis element must be a common eigenvector.
        let r = cartan.len();
        let mut root_values = vec![vec![scalar::zero(); r]; d];
        for x in 0..d {
            for (a, &h) in cartan.iter().enumerate() {
                let b = &table[h][x];
                let val = match b.as_slice() {
                    [] => scalar::zero(),
                    [(k, c)] if *k == x => c.clone(),
                    _ => return Err(Error::BadAlgebra(format!("{} is not an ad(𝔥)-eigenvector", names[x]))),
                };
                if matches!(kind[x], BasisKind::Cartan(_)) && !val.is_zero() {
                    return Err(Error::BadAlgebra("Cartan subalgebra is not abelian".into()));
                }
                root_values[x][a] = val;
            }
        }
        for k in 0..positive.len() {
            let (p, n) = (positive[k], negative[k]);
            let neg: Vec<Scalar> = root_values[p].iter().map(|v| -v).collect();
            if root_values[n] != neg || root_values[p].iter().all(|v| v.is_zero()) {
                return Err(Error::BadAlgebra(format!("{} and {} are not opposite root vectors", names[p], names[n])));
            }
        }

        // Chevalley anti-involution ω: x_α ↔ x_{-α}, h ↦ h.
        let mut partner: Vec<usize> = (0..d).collect();
        for k in 0..positive.len() {
            partner[positive[k]] = negative[k];
            partner[negative[k]] = positive[k];
        }
        let omega = |v: &GElem| -> GElem { v.iter().map(|(i, c)| (partner[*i], c.clone())).collect() };
        for i in 0..d {
            for j in 0..d {
                let lhs = omega(&table[i][j]);
                let rhs = br(&unit(partner[j]), &unit(partner[i]));
                if !same_elem(&lhs, &rhs) {
                    return Err(Error::BadAlgebra(format!(
                        "pairing is not a Chevalley anti-involution on ({}, {})",
                        names[i], names[j]
                    )));
                }
            }
        }

        let cartan_form: Vec<Vec<Scalar>> =
            cartan.iter().map(|&a| cartan.iter().map(|&b| form[a][b].clone()).collect()).collect();
        let cartan_form_inv = dense_inverse(&cartan_form)
            .ok_or_else(|| Error::NormalizationImpossible("form is degenerate on the Cartan subalgebra".into()))?;

        let simple_vals: Vec<Vec<Scalar>> = simple.iter().map(|&s| root_values[s].clone()).collect();
        let simple_t = transpose(&simple_vals);
        let simple_inv = dense_inverse(&simple_t)
            .ok_or_else(|| Error::BadAlgebra("simple roots are linearly dependent".into()))?;
        let mut root_coords = vec![vec![0i64; r]; d];
        for x in 0..d {
            let c = mat_vec(&simple_inv, &root_values[x]);
            for (i, v) in c.iter().enumerate() {
                root_coords[x][i] = scalar::to_i64(v)
                    .ok_or_else(|| Error::BadAlgebra(format!("root of {} is not in the root lattice", names[x])))?;
            }
            let positive_root = root_coords[x].iter().all(|&v| v >= 0) && root_coords[x].iter().any(|&v| v > 0);
            let ok = match kind[x] {
                BasisKind::Cartan(_) => true,
                BasisKind::Positive(_) => positive_root,
                BasisKind::Negative(_) => root_coords[x].iter().all(|&v| v <= 0),
            };
            if !ok {
                return Err(Error::BadAlgebra(format!("{} has a root of the wrong sign", names[x])));
            }
        }
        let height = |x: usize| root_coords[x].iter().sum::<i64>();
        let theta = *positive.iter().max_by_key(|&&x| (height(x), std::cmp::Reverse(x))).unwrap();
        if positive.iter().filter(|&&x| height(x) == height(theta)).count() != 1 {
            return Err(Error::BadAlgebra("highest root is not unique".into()));
        }

        let ip = |a: &[Scalar], b: &[Scalar]| -> Scalar { a.iter().zip(mat_vec(&cartan_form_inv, b)).map(|(x, y)| x * y).sum() };
        let theta_sq = ip(&root_values[theta], &root_values[theta]);
        if theta_sq.is_zero() {
            return Err(Error::NormalizationImpossible("(θ|θ) = 0".into()));
        }
        let two = scalar::int(2);
        let (form, cartan_form_inv) = if cfg.normalize && theta_sq != two {
            // Scaling the form by s scales (θ|θ) by 1/s.
            let s = &theta_sq / &two;
            let f: Vec<Vec<Scalar>> = form.iter().map(|r| r.iter().map(|x| x * &s).collect()).collect();
            let inv: Vec<Vec<Scalar>> = cartan_form_inv.iter().map(|r| r.iter().map(|x| x / &s).collect()).collect();
            (f, inv)
        } else {
            (form, cartan_form_inv)
        };

        let dual_mat = dense_inverse(&form).ok_or_else(|| Error::NormalizationImpossible("form is degenerate".into()))?;
        let dual: Vec<GElem> = (0..d)
            .map(|i| (0..d).filter(|&j| !dual_mat[j][i].is_zero()).map(|j| (j, dual_mat[j][i].clone())).collect())
            .collect();

        let mut rho = vec![scalar::zero(); r];
        for &p in &positive {
            for a in 0..r {
                rho[a] += &root_values[p][a] / &two;
            }
        }

        let mut alg = SimpleLieAlgebra {
            name: cfg.name.clone(),
            names,
            table,
            form,
            kind,
            cartan,
            positive,
            negative,
            simple,
            root_values,
            root_coords,
            coroots: Vec::new(),
            cartan_form_inv,
            coroot_to_cartan: Vec::new(),
            theta,
            rho,
            dual,
            partner,
        };
        alg.coroots = alg.simple.iter().map(|&s| alg.coroot_of(&alg.root_values[s])).collect();
        alg.coroot_to_cartan = dense_inverse(&alg.coroots).expect("simple coroots are independent");

        let g = alg.half_casimir_theta();
        if !(scalar::is_integer(&g) && g.is_positive()) {
            return Err(Error::NonIntegerDualCoxeter(scalar::fmt(&g)));
        }
        let theta_sq = alg.inner(&alg.root_values[theta], &alg.root_values[theta]);
        if theta_sq != two {
            return Err(Error::NormalizationImpossible(format!("(θ|θ) = {}, expected 2", scalar::fmt(&theta_sq))));
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn name_of(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn kind(&self, i: usize) -> BasisKind {
        self.kind[i]
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    /// Basis indices of the simple root vectors e_i.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    /// Basis index of the negative partner f_i of the i-th simple root vector.
    pub fn simple_negative(&self, i: usize) -> usize {
        self.partner[self.simple[i]]
    }

    /// Basis index of a highest root vector e_θ.
    pub fn theta(&self) -> usize {
        self.theta
    }

    /// Image of basis element `i` under the Chevalley anti-involution.
    pub fn partner(&self, i: usize) -> usize {
        self.partner[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &GElem {
        &self.table[i][j]
    }

    pub fn bracket(&self, a: &GElem, b: &GElem) -> GElem {
        let mut out = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                for (k, z) in &self.table[*i][*j] {
                    add_term(&mut out, *k, &(x * y * z));
                }
            }
        }
        out
    }

    /// The normalized invariant form on basis elements.
    pub fn form(&self, i: usize, j: usize) -> &Scalar {
        &self.form[i][j]
    }

    pub fn pairing(&self, a: &GElem, b: &GElem) -> Scalar {
        let mut s = scalar::zero();
        for (i, x) in a {
            for (j, y) in b {
                s += x * y * &self.form[*i][*j];
            }
        }
        s
    }

    /// Dual basis element y_i with (x_i | y_j) = δ_ij.
    pub fn dual(&self, i: usize) -> &GElem {
        &self.dual[i]
    }

    /// Values α(h_a) of the root of basis element `i` on the Cartan basis.
    pub fn root_values(&self, i: usize) -> &[Scalar] {
        &self.root_values[i]
    }

    /// Root of basis element `i` in simple-root coordinates.
    pub fn root_coords(&self, i: usize) -> &[i64] {
        &self.root_coords[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.root_coords[i].iter().sum()
    }

    /// Inner product on 𝔥* of two functionals given by their Cartan-basis values.
    pub fn inner(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        a.iter().zip(mat_vec(&self.cartan_form_inv, b)).map(|(x, y)| x * y).sum()
    }

    fn coroot_of(&self, alpha: &[Scalar]) -> Vec<Scalar> {
        let t = mat_vec(&self.cartan_form_inv, alpha);
        let sq = self.inner(alpha, alpha);
        t.iter().map(|x| scalar::int(2) * x / &sq).collect()
    }

    /// Values λ(h_a) of a weight on the Cartan basis.
    pub fn weight_values(&self, w: &GWeight) -> Vec<Scalar> {
        mat_vec(&self.coroot_to_cartan, &w.0)
    }

    /// Coroot coordinates of a functional given by its Cartan-basis values.
    pub fn weight_from_values(&self, v: &[Scalar]) -> GWeight {
        GWeight(self.coroots.iter().map(|c| c.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
    }

    /// Weight λ - Σ n_i α_i for a drop given in simple-root coordinates.
    pub fn shift_weight(&self, w: &GWeight, root: &[i64]) -> GWeight {
        let mut vals = self.weight_values(w);
        for (i, &n) in root.iter().enumerate() {
            let s = self.simple[i];
            for (a, v) in vals.iter_mut().enumerate() {
                *v += scalar::int(n) * &self.root_values[s][a];
            }
        }
        self.weight_from_values(&vals)
    }

    /// ⟨λ, θ̌⟩
    pub fn theta_coroot_value(&self, w: &GWeight) -> Scalar {
        let c = self.coroot_of(&self.root_values[self.theta]);
        c.iter().zip(self.weight_values(w)).map(|(x, y)| x * y).sum()
    }

    /// ⟨λ, 2ρ̌⟩, the sum of λ over all positive coroots.
    pub fn two_rho_check_value(&self, w: &GWeight) -> Scalar {
        let vals = self.weight_values(w);
        self.positive
            .iter()
            .map(|&p| self.coroot_of(&self.root_values[p]).iter().zip(&vals).map(|(x, y)| x * y).sum::<Scalar>())
            .sum()
    }

    pub fn rho_values(&self) -> &[Scalar] {
        &self.rho
    }

    pub fn theta_weight(&self) -> GWeight {
        self.weight_from_values(&self.root_values[self.theta])
    }

    pub fn rho_weight(&self) -> GWeight {
        self.weight_from_values(&self.rho)
    }

    fn half_casimir_theta(&self) -> Scalar {
        casimir_eigenvalue(self, &self.theta_weight()) / scalar::int(2)
    }
}

/// c_λ = (λ + 2ρ | λ).
pub fn casimir_eigenvalue(alg: &SimpleLieAlgebra, w: &GWeight) -> Scalar {
    let v = alg.weight_values(w);
    let shifted: Vec<Scalar> = v.iter().zip(&alg.rho).map(|(a, r)| a + scalar::int(2) * r).collect();
    alg.inner(&shifted, &v)
}

/// g = ½ c_θ.
pub fn dual_coxeter(alg: &SimpleLieAlgebra) -> Result<Scalar> {
    let g = alg.half_casimir_theta();
    if scalar::is_integer(&g) && g.is_positive() {
        Ok(g)
    } else {
        Err(Error::NonIntegerDualCoxeter(scalar::fmt(&g)))
    }
}

/// λ + kΛ₀ is dominant: λ dominant integral, k a nonnegative integer with k ≥ ⟨λ, θ̌⟩.
pub fn is_dominant(alg: &SimpleLieAlgebra, w: &GWeight, k: &Scalar) -> bool {
    w.is_dominant_integral() && scalar::is_integer(k) && !k.is_negative() && *k >= alg.theta_coroot_value(w)
}

pub(crate) fn add_term(v: &mut GElem, k: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match v.iter().position(|(i, _)| *i == k) {
        Some(p) => {
            v[p].1 += c;
            if v[p].1.is_zero() {
                v.remove(p);
            }
        }
        None => {
            v.push((k, c.clone()));
            v.sort_by_key(|t| t.0);
        }
    }
}

fn same_elem(a: &GElem, b: &GElem) -> bool {
    let mut d = a.clone();
    for (k, c) in b {
        add_term(&mut d, *k, &-c);
    }
    d.is_empty()
}

fn transpose(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

impl SimpleLieAlgebra {
    /// `Σ_i (x | y_i) x_i`, which must reproduce `x`.
    pub fn expand_in_dual(&self, x: &GElem) -> GElem {
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let c = self.pairing(x, &self.dual[i]);
            add_term(&mut out, i, &c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    #[test]
    fn sl2_preset() {
        let g = SimpleLieAlgebra::sl2();
        assert_eq!((g.dim(), g.rank()), (3, 1));
        let (e, f, h) = (0, 1, 2);
        assert_eq!(g.form(e, f), &int(1));
        assert_eq!(g.form(h, h), &int(2));
        assert_eq!(g.theta_weight(), GWeight(vec![int(2)]));
        assert_eq!(g.rho_weight(), GWeight(vec![int(1)]));
        assert_eq!(dual_coxeter(&g).unwrap(), int(2));
        assert_eq!(g.dual(h), &vec![(h, frac(1, 2))]);
    }

    #[test]
    fn casimir_values() {
        let g = SimpleLieAlgebra::sl2();
        let w = |i: i64| GWeight(vec![int(i)]);
        assert_eq!(casimir_eigenvalue(&g, &w(2)), int(4));
        assert_eq!(casimir_eigenvalue(&g, &w(0)), int(0));
        assert_eq!(casimir_eigenvalue(&g, &w(3)), frac(15, 2));
        assert_eq!(casimir_eigenvalue(&g, &g.theta_weight()) / int(2), dual_coxeter(&g).unwrap());
    }

    #[test]
    fn dominance() {
        let g = SimpleLieAlgebra::sl2();
        let w = |i: i64| GWeight(vec![int(i)]);
        assert!(is_dominant(&g, &w(2), &int(2)));
        assert!(is_dominant(&g, &w(0), &int(0)));
        assert!(!is_dominant(&g, &w(2), &int(1)));
        assert!(!is_dominant(&g, &GWeight(vec![frac(1, 3)]), &int(3)));
    }

    #[test]
    fn corrupted_bracket_is_rejected() {
        let mut cfg = AlgebraConfig::sl2();
        cfg.brackets[0] = (0, 1, vec![(0, "1".into())]);
        assert!(matches!(SimpleLieAlgebra::load(&cfg), Err(Error::JacobiViolation(..))));
    }

    #[test]
    fn unnormalized_forms() {
        // form halved: (θ|θ) = 4
        let mut cfg = AlgebraConfig::sl2();
        cfg.normalize = false;
        cfg.form = vec![
            vec!["0".into(), "1/2".into(), "0".into()],
            vec!["1/2".into(), "0".into(), "0".into()],
            vec!["0".into(), "0".into(), "1".into()],
        ];
        assert!(matches!(SimpleLieAlgebra::load(&cfg), Err(Error::NormalizationImpossible(_))));
        // (θ|θ) = 4/3 gives g = 4/3
        cfg.form = vec![
            vec!["0".into(), "3/2".into(), "0".into()],
            vec!["3/2".into(), "0".into(), "0".into()],
            vec!["0".into(), "0".into(), "3".into()],
        ];
        assert!(matches!(SimpleLieAlgebra::load(&cfg), Err(Error::NonIntegerDualCoxeter(_))));
        // with normalization on, the same table loads
        cfg.normalize = true;
        assert_eq!(SimpleLieAlgebra::load(&cfg).unwrap().form(2, 2), &int(2));
    }

    #[test]
    fn dual_basis_completeness() {
        let g = SimpleLieAlgebra::sl2();
        let x: GElem = vec![(0, int(3)), (1, frac(-1, 2)), (2, int(5))];
        assert_eq!(g.expand_in_dual(&x), x);
    }

    #[test]
    fn config_round_trip() {
        let cfg = AlgebraConfig::sl2();
        let json = serde_json::to_string(&cfg).unwrap();
        assert_eq!(AlgebraConfig::from_json(&json).unwrap(), cfg);
        let t = toml::to_string(&cfg).unwrap();
        assert_eq!(AlgebraConfig::from_toml(&t).unwrap(), cfg);
    }
}
