//! PBW monomials and normal forms in U(𝔏(𝔤)).
//!
//! Factors are ordered by blocks: loop modes x(−i) (most negative first, then
//! basis index), Virasoro modes d_{−k} (most negative first), 𝔫₋, then the
//! Cartan/central part, 𝔫₊ and positive modes. A monomial in U(𝔏(𝔤)₋) thus
//! reads as x·y·z with x loop, y Virasoro and z in U(𝔫₋).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::affvir::{bracket_gens, Gen};
use crate::error::{Error, Result};
use crate::exact::scalar::{self, Scalar};
use crate::lie::{BasisKind, SimpleLieAlgebra};

/// Position of a generator in the PBW order.
pub fn gen_key(alg: &SimpleLieAlgebra, g: &Gen) -> (u8, i64, i64) {
    match *g {
        Gen::Loop(i, m) if m < 0 => (0, m, i as i64),
        Gen::D(m) if m < 0 => (1, m, 0),
        Gen::Loop(i, 0) => match alg.kind(i) {
            BasisKind::Negative(k) => (2, k as i64, 0),
            BasisKind::Cartan(a) => (3, 0, a as i64),
            BasisKind::Positive(k) => (4, k as i64, 0),
        },
        Gen::D(0) => (3, 1, 0),
        Gen::K => (3, 2, 0),
        Gen::C => (3, 3, 0),
        Gen::Loop(i, m) => (5, m, i as i64),
        Gen::D(m) => (5, m, alg.dim() as i64),
    }
}

/// An ordered, exponent-compressed product of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    factors: Vec<(Gen, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from factors already in PBW order; adjacent equal
    /// generators are merged.
    pub fn from_sorted(alg: &SimpleLieAlgebra, factors: &[(Gen, u32)]) -> Self {
        let mut out: Vec<(Gen, u32)> = Vec::new();
        for &(g, e) in factors {
            if e == 0 {
                continue;
            }
            if let Some(last) = out.last_mut() {
                debug_assert!(gen_key(alg, &last.0) <= gen_key(alg, &g), "factors out of order");
                if last.0 == g {
                    last.1 += e;
                    continue;
                }
            }
            out.push((g, e));
        }
        Monomial { factors: out }
    }

    pub fn gen(g: Gen) -> Self {
        Monomial { factors: vec![(g, 1)] }
    }

    pub fn factors(&self) -> &[(Gen, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of factors counted with multiplicity.
    pub fn len(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Flattened factor list, leftmost first.
    pub fn word(&self) -> Vec<Gen> {
        self.factors.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize)).collect()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|(g, e)| g.degree() * *e as i64).sum()
    }

    /// Lowering of the 𝔥-weight in simple-root coordinates.
    pub fn drop(&self, alg: &SimpleLieAlgebra) -> Vec<i64> {
        let mut d = vec![0i64; alg.rank()];
        for (g, e) in &self.factors {
            if let Gen::Loop(i, _) = g {
                for (a, c) in alg.root_coords(*i).iter().enumerate() {
                    d[a] -= c * *e as i64;
                }
            }
        }
        d
    }

    pub fn is_negative(&self, alg: &SimpleLieAlgebra) -> bool {
        self.factors.iter().all(|(g, _)| g.is_negative(alg))
    }

    /// Splits x·y·z into the loop, Virasoro and 𝔫₋ blocks.
    pub fn split(&self) -> (Monomial, Monomial, Monomial) {
        let (mut x, mut y, mut z) = (Vec::new(), Vec::new(), Vec::new());
        for &(g, e) in &self.factors {
            match g {
                Gen::Loop(_, m) if m < 0 => x.push((g, e)),
                Gen::D(m) if m < 0 => y.push((g, e)),
                _ => z.push((g, e)),
            }
        }
        (Monomial { factors: x }, Monomial { factors: y }, Monomial { factors: z })
    }

    /// First factor and the monomial with one copy of it removed.
    pub fn pop_front(&self) -> Option<(Gen, Monomial)> {
        let (g, e) = *self.factors.first()?;
        let mut rest = self.factors.clone();
        if e == 1 {
            rest.remove(0);
        } else {
            rest[0].1 -= 1;
        }
        Some((g, Monomial { factors: rest }))
    }

    fn push_front(&self, g: Gen) -> Monomial {
        let mut f = self.factors.clone();
        match f.first_mut() {
            Some(first) if first.0 == g => first.1 += 1,
            _ => f.insert(0, (g, 1)),
        }
        Monomial { factors: f }
    }

    /// Text form such as `e(-1)^2 d(-3) f`; `1` for the empty monomial.
    pub fn display(&self, alg: &SimpleLieAlgebra) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for (n, (g, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                s.push(' ');
            }
            match *g {
                Gen::Loop(i, 0) => s.push_str(alg.name_of(i)),
                Gen::Loop(i, m) => {
                    let _ = write!(s, "{}({m})", alg.name_of(i));
                }
                Gen::D(m) => {
                    let _ = write!(s, "d({m})");
                }
                Gen::K => s.push('k'),
                Gen::C => s.push('c'),
            }
            if *e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Inverse of [`Monomial::display`]. Factors must already be in PBW order.
    pub fn parse(alg: &SimpleLieAlgebra, text: &str) -> Result<Monomial> {
        let bad = || Error::ParseMonomial(text.to_string());
        let t = text.trim();
        if t == "1" || t.is_empty() {
            return Ok(Monomial::one());
        }
        let mut factors = Vec::new();
        for tok in t.split_whitespace() {
            let (body, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad())?),
                None => (tok, 1),
            };
            let (name, mode) = match body.split_once('(') {
                Some((n, rest)) => {
                    let m = rest.strip_suffix(')').ok_or_else(bad)?.parse::<i64>().map_err(|_| bad())?;
                    (n, Some(m))
                }
                None => (body, None),
            };
            let g = match (alg.index_of(name), name, mode) {
                (Some(i), _, m) => Gen::Loop(i, m.unwrap_or(0)),
                (None, "d", Some(m)) => Gen::D(m),
                (None, "k", None) => Gen::K,
                (None, "c", None) => Gen::C,
                _ => return Err(bad()),
            };
            factors.push((g, exp));
        }
        for w in factors.windows(2) {
            if gen_key(alg, &w[0].0) >= gen_key(alg, &w[1].0) {
                return Err(bad());
            }
        }
        Ok(Monomial::from_sorted(alg, &factors))
    }
}

/// A linear combination of PBW monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UEnvElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl UEnvElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(m, &c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UEnvElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), &(x * c));
        }
    }

    pub fn add(&self, other: &UEnvElement) -> UEnvElement {
        let mut out = self.clone();
        out.add_scaled(other, &scalar::one());
        out
    }

    pub fn sub(&self, other: &UEnvElement) -> UEnvElement {
        let mut out = self.clone();
        out.add_scaled(other, &scalar::int(-1));
        out
    }

    pub fn scale(&self, c: &Scalar) -> UEnvElement {
        let mut out = UEnvElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all monomials, if homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_negative(&self, alg: &SimpleLieAlgebra) -> bool {
        self.terms.keys().all(|m| m.is_negative(alg))
    }

    pub fn display(&self, alg: &SimpleLieAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(m, c)| format!("({}) {}", scalar::fmt(c), m.display(alg))).collect();
        parts.join(" + ")
    }
}

/// How a generator acts on the empty monomial.
#[derive(Clone, Debug)]
pub enum BaseAction {
    /// g · 1 = g (the enveloping algebra itself).
    Push,
    /// g · 1 = c · 1 (a highest weight vector).
    Scalar(Scalar),
}

pub type BaseFn = Box<dyn Fn(Gen) -> BaseAction + Send + Sync>;

/// Memoized left multiplication by generators on PBW normal forms.
///
/// With the default base this is multiplication in U(𝔏(𝔤)); with a
/// highest-weight base it is the action on U(𝔏(𝔤)₋)·u.
pub struct Engine {
    alg: Arc<SimpleLieAlgebra>,
    base: BaseFn,
    memo: Mutex<HashMap<(Gen, Monomial), Arc<UEnvElement>>>,
}

impl Engine {
    pub fn algebra(alg: Arc<SimpleLieAlgebra>) -> Self {
        Self::with_base(alg, Box::new(|_| BaseAction::Push))
    }

    pub fn with_base(alg: Arc<SimpleLieAlgebra>, base: BaseFn) -> Self {
        Engine { alg, base, memo: Mutex::new(HashMap::new()) }
    }

    pub fn alg(&self) -> &SimpleLieAlgebra {
        &self.alg
    }

    /// g · m in normal form.
    pub fn lmul(&self, g: Gen, m: &Monomial) -> Arc<UEnvElement> {
        let key = (g, m.clone());
        if let Some(r) = self.memo.lock().unwrap().get(&key) {
            return r.clone();
        }
        let out = Arc::new(self.lmul_uncached(g, m));
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    fn lmul_uncached(&self, g: Gen, m: &Monomial) -> UEnvElement {
        let Some((p1, rest)) = m.pop_front() else {
            return match (self.base)(g) {
                BaseAction::Push => UEnvElement::monomial(Monomial::gen(g)),
                BaseAction::Scalar(c) => UEnvElement::term(Monomial::one(), c),
            };
        };
        if gen_key(&self.alg, &g) <= gen_key(&self.alg, &p1) {
            return UEnvElement::monomial(m.push_front(g));
        }
        // g p1 R = p1 (g R) + [g, p1] R
        let mut out = self.lmul_elem(p1, &self.lmul(g, &rest));
        for (y, c) in bracket_gens(&self.alg, g, p1).terms() {
            out.add_scaled(&self.lmul(*y, &rest), c);
        }
        out
    }

    pub fn lmul_elem(&self, g: Gen, v: &UEnvElement) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (m, c) in v.terms() {
            out.add_scaled(&self.lmul(g, m), c);
        }
        out
    }

    /// Applies the word right to left: `word[0] · (word[1] · (… v))`.
    pub fn apply_word(&self, word: &[Gen], v: &UEnvElement) -> UEnvElement {
        let mut cur = v.clone();
        for g in word.iter().rev() {
            cur = self.lmul_elem(*g, &cur);
        }
        cur
    }

    /// Product p·q in normal form.
    pub fn multiply(&self, p: &UEnvElement, q: &UEnvElement) -> UEnvElement {
        let mut out = UEnvElement::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.apply_word(&m.word(), q), c);
        }
        out
    }
}

/// Normal form of a word by adjacent transpositions u·v → v·u + [u,v].
pub struct Straightener<'a> {
    alg: &'a SimpleLieAlgebra,
    memo: HashMap<Vec<Gen>, UEnvElement>,
}

impl<'a> Straightener<'a> {
    pub fn new(alg: &'a SimpleLieAlgebra) -> Self {
        Straightener { alg, memo: HashMap::new() }
    }

    pub fn straighten(&mut self, word: &[Gen]) -> UEnvElement {
        if let Some(r) = self.memo.get(word) {
            return r.clone();
        }
        let pos = word.windows(2).position(|w| gen_key(self.alg, &w[0]) > gen_key(self.alg, &w[1]));
        let out = match pos {
            None => {
                let f: Vec<(Gen, u32)> = word.iter().map(|&g| (g, 1)).collect();
                UEnvElement::monomial(Monomial::from_sorted(self.alg, &f))
            }
            Some(i) => {
                let mut swapped = word.to_vec();
                swapped.swap(i, i + 1);
                let mut out = self.straighten(&swapped);
                for (y, c) in bracket_gens(self.alg, word[i], word[i + 1]).terms() {
                    let mut w = word[..i].to_vec();
                    w.push(*y);
                    w.extend_from_slice(&word[i + 2..]);
                    let s = self.straighten(&w);
                    out.add_scaled(&s, c);
                }
                out
            }
        };
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// As [`Straightener::straighten`], requiring every factor to lie in 𝔏(𝔤)₋.
    pub fn straighten_negative(&mut self, word: &[Gen]) -> Result<UEnvElement> {
        if let Some(g) = word.iter().find(|g| !g.is_negative(self.alg)) {
            return Err(Error::PositiveFactorInNegativeMode(g.display(self.alg)));
        }
        Ok(self.straighten(word))
    }
}

/// One-shot straightening.
pub fn straighten(alg: &SimpleLieAlgebra, word: &[Gen]) -> UEnvElement {
    Straightener::new(alg).straighten(word)
}

/// One-shot product in U(𝔏(𝔤)).
pub fn multiply(alg: &Arc<SimpleLieAlgebra>, p: &UEnvElement, q: &UEnvElement) -> UEnvElement {
    Engine::algebra(alg.clone()).multiply(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::int;

    const E: usize = 0;
    const F: usize = 1;
    const H: usize = 2;

    fn mono(alg: &SimpleLieAlgebra, s: &str) -> Monomial {
        Monomial::parse(alg, s).unwrap()
    }

    #[test]
    fn virasoro_straightening() {
        let alg = SimpleLieAlgebra::sl2();
        let r = straighten(&alg, &[Gen::D(-1), Gen::D(-2)]);
        let mut expect = UEnvElement::monomial(mono(&alg, "d(-2) d(-1)"));
        expect.add_term(mono(&alg, "d(-3)"), &int(-1));
        assert_eq!(r, expect);
        assert_eq!(straighten(&alg, &[Gen::D(-2), Gen::D(-1)]), UEnvElement::monomial(mono(&alg, "d(-2) d(-1)")));
    }

    #[test]
    fn loop_straightening() {
        let alg = SimpleLieAlgebra::sl2();
        // f(−1)e(−1) = e(−1)f(−1) + [f,e](−2)
        let r = straighten(&alg, &[Gen::Loop(F, -1), Gen::Loop(E, -1)]);
        let mut expect = UEnvElement::monomial(mono(&alg, "e(-1) f(-1)"));
        expect.add_term(Monomial::gen(Gen::Loop(H, -2)), &int(-1));
        assert_eq!(r, expect);
    }

    #[test]
    fn products() {
        let alg = Arc::new(SimpleLieAlgebra::sl2());
        let q = UEnvElement::monomial(mono(&alg, "d(-2) d(-1)"));
        assert_eq!(multiply(&alg, &UEnvElement::one(), &q), q);
        let d1 = UEnvElement::monomial(mono(&alg, "d(-1)"));
        assert_eq!(multiply(&alg, &d1, &d1), UEnvElement::monomial(mono(&alg, "d(-1)^2")));
        let mut expect = UEnvElement::monomial(mono(&alg, "d(-2) d(-1)^2"));
        expect.add_term(mono(&alg, "d(-3) d(-1)"), &int(-1));
        assert_eq!(multiply(&alg, &d1, &q), expect);
        assert_eq!(straighten(&alg, &[Gen::D(-1), Gen::D(-2), Gen::D(-1)]), expect);
    }

    #[test]
    fn negative_mode_rejects_raising() {
        let alg = SimpleLieAlgebra::sl2();
        let mut s = Straightener::new(&alg);
        assert!(matches!(s.straighten_negative(&[Gen::D(-1), Gen::Loop(E, 0)]), Err(Error::PositiveFactorInNegativeMode(_))));
        assert!(s.straighten_negative(&[Gen::D(-1), Gen::Loop(F, 0)]).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let alg = SimpleLieAlgebra::sl2();
        let m = mono(&alg, "e(-1)^2 d(-3) f");
        assert_eq!(m.display(&alg), "e(-1)^2 d(-3) f");
        assert_eq!(m.degree(), -5);
        assert_eq!(m.drop(&alg), vec![-1]);
        assert!(Monomial::parse(&alg, "f e(-1)").is_err());
        assert!(Monomial::parse(&alg, "q(-1)").is_err());
    }
}
