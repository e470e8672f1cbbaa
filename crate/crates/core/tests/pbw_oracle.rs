use std::sync::Arc;

use affvir_core::affvir::{bracket_gens, Gen};
use affvir_core::exact::scalar::frac;
use affvir_core::highest_weight::{build_verma, Bounds, HWModule, HwParams, ModVec};
use affvir_core::lie::{GWeight, SimpleLieAlgebra};
use affvir_core::pbw::{gen_key, multiply, straighten, Monomial, UEnvElement};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn alg() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl2())
}

fn module() -> HWModule {
    let p = HwParams::new(GWeight(vec![frac(1, 3)]), frac(2, 5), frac(3, 7), frac(-1, 2));
    build_verma(alg(), p, Bounds::new(3, 3)).unwrap()
}

fn negative_gens() -> Vec<Gen> {
    let mut g = vec![Gen::Loop(1, 0)];
    for m in 1..=2 {
        g.extend([Gen::Loop(0, -m), Gen::Loop(1, -m), Gen::Loop(2, -m), Gen::D(-m)]);
    }
    g
}

fn all_gens() -> Vec<Gen> {
    let mut g = vec![Gen::K, Gen::C];
    for m in -2..=2 {
        g.extend([Gen::Loop(0, m), Gen::Loop(1, m), Gen::Loop(2, m), Gen::D(m)]);
    }
    g
}

fn act_word(m: &HWModule, word: &[Gen], v: &ModVec) -> ModVec {
    let mut cur = v.clone();
    for g in word.iter().rev() {
        cur = m.verma_act(*g, &cur);
    }
    cur
}

fn act_straightened(m: &HWModule, word: &[Gen], v: &ModVec) -> ModVec {
    let alg = m.alg().clone();
    let mut out = UEnvElement::zero();
    for (mono, c) in straighten(&alg, word).terms() {
        out.add_scaled(&act_word(m, &mono.word(), v), c);
    }
    out
}

#[test]
fn straighten_then_act_equals_act_factorwise() {
    let m = module();
    let neg = negative_gens();
    let vectors: Vec<ModVec> = m.weight_keys().flat_map(|k| m.basis_vectors(k)).filter(|v| v.degree().unwrap_or(0) >= -1).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let len = rng.gen_range(1..=5);
        let word: Vec<Gen> = (0..len).map(|_| neg[rng.gen_range(0..neg.len())]).collect();
        let v = &vectors[rng.gen_range(0..vectors.len())];
        assert_eq!(act_straightened(&m, &word, v), act_word(&m, &word, v), "{word:?}");
    }
}

#[test]
fn mixed_words_on_the_highest_weight_vector() {
    let m = module();
    let gens = all_gens();
    let u = m.highest();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let len = rng.gen_range(1..=4);
        let word: Vec<Gen> = (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        assert_eq!(act_straightened(&m, &word, &u), act_word(&m, &word, &u), "{word:?}");
    }
}

#[test]
fn normal_forms_are_sorted() {
    let a = alg();
    let gens = all_gens();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let word: Vec<Gen> = (0..4).map(|_| gens[rng.gen_range(0..gens.len())]).collect();
        for (mono, _) in straighten(&a, &word).terms() {
            let w = mono.word();
            assert!(w.windows(2).all(|p| gen_key(&a, &p[0]) <= gen_key(&a, &p[1])), "{w:?}");
        }
    }
}

fn element(word_a: &[Gen], word_b: &[Gen]) -> UEnvElement {
    let a = alg();
    straighten(&a, word_a).add(&straighten(&a, word_b).scale(&frac(-2, 3)))
}

fn gen_strategy() -> impl Strategy<Value = Gen> {
    prop::sample::select(all_gens())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(
        p1 in prop::collection::vec(gen_strategy(), 0..3),
        p2 in prop::collection::vec(gen_strategy(), 0..3),
        q in prop::collection::vec(gen_strategy(), 0..3),
        r in prop::collection::vec(gen_strategy(), 0..3),
    ) {
        let a = alg();
        let (p, q, r) = (element(&p1, &p2), straighten(&a, &q), straighten(&a, &r));
        let left = multiply(&a, &multiply(&a, &p, &q), &r);
        let right = multiply(&a, &p, &multiply(&a, &q, &r));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutators_match_brackets(x in gen_strategy(), y in gen_strategy()) {
        let a = alg();
        let xy = straighten(&a, &[x, y]);
        let yx = straighten(&a, &[y, x]);
        let mut br = UEnvElement::zero();
        for (g, c) in bracket_gens(&a, x, y).terms() {
            br.add_term(Monomial::gen(*g), c);
        }
        prop_assert_eq!(xy.sub(&yx), br);
    }

    #[test]
    fn verma_is_a_representation(x in gen_strategy(), y in gen_strategy(), idx in 0usize..64) {
        let m = module();
        let vectors: Vec<ModVec> = m.weight_keys().flat_map(|k| m.basis_vectors(k)).filter(|v| v.degree().unwrap_or(0) >= -1).collect();
        let v = &vectors[idx % vectors.len()];
        let lhs = m.verma_act(x, &m.verma_act(y, v)).sub(&m.verma_act(y, &m.verma_act(x, v)));
        let a = m.alg().clone();
        let mut rhs = UEnvElement::zero();
        for (g, c) in bracket_gens(&a, x, y).terms() {
            rhs.add_scaled(&m.verma_act(*g, v), c);
        }
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn central_elements_act_by_scalars() {
    let m = module();
    let v = UEnvElement::monomial(Monomial::parse(m.alg(), "f(-1) d(-1)").unwrap());
    assert_eq!(m.verma_act(Gen::K, &v), v.scale(&frac(3, 7)));
    assert_eq!(m.verma_act(Gen::C, &v), v.scale(&frac(-1, 2)));
    assert_eq!(m.verma_act(Gen::D(0), &m.highest()), m.highest().scale(&frac(2, 5)));
    assert_eq!(m.verma_act(Gen::Loop(2, 0), &m.highest()), m.highest().scale(&frac(1, 3)));
    assert!(m.verma_act(Gen::Loop(0, 1), &m.highest()).is_zero());
}
