//! The affine-Virasoro algebra 𝔏(𝔤) = 𝔤 ⊗ ℂ[t^{±1}] ⊕ span{d_m} ⊕ ℂ𝐤 ⊕ ℂ𝐜.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exact::scalar::{self, Scalar};
use crate::lie::{BasisKind, GElem, SimpleLieAlgebra};

/// A basis element of 𝔏(𝔤).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// x_i(m) = x_i ⊗ t^m for the i-th basis element of 𝔤.
    Loop(usize, i64),
    /// The Virasoro generator d_m.
    D(i64),
    K,
    C,
}

impl Gen {
    /// Eigenvalue of ad d₀.
    pub fn degree(&self) -> i64 {
        match self {
            Gen::Loop(_, m) | Gen::D(m) => *m,
            Gen::K | Gen::C => 0,
        }
    }

    /// Whether the generator lies in 𝔏(𝔤)₋ (negative degree, or degree 0 in 𝔫₋).
    pub fn is_negative(&self, alg: &SimpleLieAlgebra) -> bool {
        match *self {
            Gen::Loop(i, m) => m < 0 || (m == 0 && matches!(alg.kind(i), BasisKind::Negative(_))),
            Gen::D(m) => m < 0,
            _ => false,
        }
    }

    /// Whether the generator lies in 𝔏(𝔤)₊.
    pub fn is_positive(&self, alg: &SimpleLieAlgebra) -> bool {
        match *self {
            Gen::Loop(i, m) => m > 0 || (m == 0 && matches!(alg.kind(i), BasisKind::Positive(_))),
            Gen::D(m) => m > 0,
            _ => false,
        }
    }

    /// Image under the anti-involution x_α(m) ↦ x_{-α}(-m), d_m ↦ d_{-m}.
    pub fn omega(&self, alg: &SimpleLieAlgebra) -> Gen {
        match *self {
            Gen::Loop(i, m) => Gen::Loop(alg.partner(i), -m),
            Gen::D(m) => Gen::D(-m),
            g => g,
        }
    }

    pub fn display(&self, alg: &SimpleLieAlgebra) -> String {
        match *self {
            Gen::Loop(i, m) => format!("{}({m})", alg.name_of(i)),
            Gen::D(m) => format!("d({m})"),
            Gen::K => "k".into(),
            Gen::C => "c".into(),
        }
    }
}

/// A finite linear combination of generators with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AffVirElement {
    terms: BTreeMap<Gen, Scalar>,
}

impl AffVirElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen) -> Self {
        Self::term(g, scalar::one())
    }

    pub fn term(g: Gen, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(g, &c);
        e
    }

    /// x(m) for an element x of 𝔤.
    pub fn loop_elem(x: &GElem, m: i64) -> Self {
        let mut e = Self::zero();
        for (i, c) in x {
            e.add_term(Gen::Loop(*i, m), c);
        }
        e
    }

    pub fn add_term(&mut self, g: Gen, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(g).or_insert_with(scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        for (g, x) in &self.terms {
            out.add_term(*g, &(x * c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Gen, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Gen) -> Scalar {
        self.terms.get(g).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn display(&self, alg: &SimpleLieAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(g, c)| format!("({})*{}", scalar::fmt(c), g.display(alg))).collect();
        parts.join(" + ")
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Loop(i, m) => write!(f, "x{i}({m})"),
            Gen::D(m) => write!(f, "d({m})"),
            Gen::K => write!(f, "k"),
            Gen::C => write!(f, "c"),
        }
    }
}

/// Bracket of two generators.
pub fn bracket_gens(alg: &SimpleLieAlgebra, a: Gen, b: Gen) -> AffVirElement {
    let mut out = AffVirElement::zero();
    match (a, b) {
        (Gen::Loop(i, m), Gen::Loop(j, n)) => {
            for (k, c) in alg.bracket_basis(i, j) {
                out.add_term(Gen::Loop(*k, m + n), c);
            }
            if m + n == 0 && m != 0 {
                out.add_term(Gen::K, &(scalar::int(m) * alg.form(i, j)));
            }
        }
        (Gen::D(m), Gen::D(n)) => {
            out.add_term(Gen::D(m + n), &scalar::int(n - m));
            if m + n == 0 {
                out.add_term(Gen::C, &scalar::frac(m * m * m - m, 12));
            }
        }
        (Gen::D(n), Gen::Loop(i, m)) => out.add_term(Gen::Loop(i, m + n), &scalar::int(m)),
        (Gen::Loop(i, m), Gen::D(n)) => out.add_term(Gen::Loop(i, m + n), &scalar::int(-m)),
        _ => {}
    }
    out
}

/// Bilinear extension of the generator bracket.
pub fn bracket(alg: &SimpleLieAlgebra, a: &AffVirElement, b: &AffVirElement) -> AffVirElement {
    let mut out = AffVirElement::zero();
    for (g, x) in &a.terms {
        for (h, y) in &b.terms {
            let xy = x * y;
            for (k, z) in bracket_gens(alg, *g, *h).terms {
                out.add_term(k, &(&xy * &z));
            }
        }
    }
    out
}

/// The d₀-degree of a homogeneous element, or `None` for inhomogeneous elements.
/// The zero element is reported as degree 0.
pub fn degree(x: &AffVirElement) -> Option<i64> {
    let mut it = x.terms.keys().map(Gen::degree);
    let first = it.next().unwrap_or(0);
    it.all(|d| d == first).then_some(first)
}
