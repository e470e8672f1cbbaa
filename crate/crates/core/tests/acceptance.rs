//! Acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use affvir_core::affvir::{bracket, AffVirElement, Gen};
use affvir_core::cli::run_preset;
use affvir_core::exact::matrix::unit_vec;
use affvir_core::exact::scalar::{self, frac, int, Scalar};
use affvir_core::highest_weight::{build_verma, Bounds, HWModule, HwParams, ModVec};
use affvir_core::irreducibility::{
    doubled, endo_dimension, is_irreducible, iso_params_check, psi_at, submodule_closure, ActionTable, ClosureMoves, IrredOptions, PsiConvention,
    TensorBlocks, TensorParams,
};
use affvir_core::lie::{finite_irrep, GWeight, SimpleLieAlgebra};
use affvir_core::loop_tensor::TensorContext;
use affvir_core::pbw::{straighten, Monomial, UEnvElement};
use affvir_core::sugawara::{factorization_report, SugawaraContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sl2() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl2())
}

fn hw(lam: i64, l: Scalar, k: i64, c: Scalar) -> HwParams {
    HwParams::new(GWeight(vec![int(lam)]), l, int(k), c)
}

fn trivial_hw() -> HwParams {
    hw(0, int(0), 1, int(2))
}

fn two_eps_hw() -> HwParams {
    hw(2, frac(3, 2), 2, frac(5, 2))
}

fn example_45() -> TensorParams {
    TensorParams::new(trivial_hw(), GWeight(vec![int(1)]), int(0), frac(1, 2))
}

fn example_46() -> TensorParams {
    TensorParams::new(two_eps_hw(), GWeight(vec![int(3)]), frac(1, 5), frac(2, 7))
}

fn tensor_context(p: &TensorParams, bounds: Bounds, window: i64) -> TensorContext {
    let a = sl2();
    let q = build_verma(a.clone(), p.hw.clone(), bounds).unwrap().irreducible_quotient().unwrap();
    let fin = finite_irrep(&a, &p.mu).unwrap();
    TensorContext::new(Arc::new(q), Arc::new(fin), p.a.clone(), p.b.clone(), window)
}

fn algebra_axioms() -> Check {
    let alg = sl2();
    let mut gens = Vec::new();
    for m in -6..=6 {
        gens.extend((0..3).map(|i| Gen::Loop(i, m)));
        gens.push(Gen::D(m));
    }
    gens.extend([Gen::K, Gen::C]);
    let e = |g: Gen| AffVirElement::gen(g);
    let form = |a: &AffVirElement, b: &AffVirElement| -> Scalar {
        let mut s = scalar::zero();
        for (g, x) in a.terms() {
            for (h, y) in b.terms() {
                if let (Gen::Loop(i, m), Gen::Loop(j, n)) = (g, h) {
                    if m + n == 0 {
                        s += x * y * alg.form(*i, *j);
                    }
                }
            }
        }
        s
    };
    let mut triples = 0;
    for i in 0..gens.len() {
        for j in i..gens.len() {
            for k in j..gens.len() {
                let (a, b, c) = (e(gens[i]), e(gens[j]), e(gens[k]));
                let jac = bracket(&alg, &a, &bracket(&alg, &b, &c))
                    .add(&bracket(&alg, &b, &bracket(&alg, &c, &a)))
                    .add(&bracket(&alg, &c, &bracket(&alg, &a, &b)));
                ensure(jac.is_zero(), format!("Jacobi fails on {:?} {:?} {:?}", gens[i], gens[j], gens[k]))?;
                let all_loop = [gens[i], gens[j], gens[k]].iter().all(|g| matches!(g, Gen::Loop(..)));
                if all_loop {
                    ensure(form(&a, &bracket(&alg, &b, &c)) == form(&bracket(&alg, &a, &b), &c), "form not invariant")?;
                }
                triples += 1;
            }
        }
    }
    Ok(format!("{triples} triples"))
}

fn act_word(m: &HWModule, word: &[Gen], v: &ModVec) -> ModVec {
    word.iter().rev().fold(v.clone(), |cur, g| m.verma_act(*g, &cur))
}

fn pbw_oracle() -> Check {
    let p = HwParams::new(GWeight(vec![frac(1, 3)]), frac(2, 5), frac(3, 7), frac(-1, 2));
    let m = build_verma(sl2(), p, Bounds::new(3, 3)).map_err(|e| e.to_string())?;
    let mut neg = vec![Gen::Loop(1, 0)];
    for d in 1..=2 {
        neg.extend([Gen::Loop(0, -d), Gen::Loop(1, -d), Gen::Loop(2, -d), Gen::D(-d)]);
    }
    let vectors: Vec<ModVec> = m.weight_keys().filter(|k| k.0 <= 1).flat_map(|k| m.basis_vectors(k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..500 {
        let word: Vec<Gen> = (0..rng.gen_range(1..=5)).map(|_| neg[rng.gen_range(0..neg.len())]).collect();
        let v = &vectors[rng.gen_range(0..vectors.len())];
        let mut lhs = UEnvElement::zero();
        for (mono, c) in straighten(m.alg(), &word).terms() {
            lhs.add_scaled(&act_word(&m, &mono.word(), v), c);
        }
        ensure(lhs == act_word(&m, &word, v), format!("mismatch on {word:?}"))?;
    }
    Ok("500 words".into())
}

fn sugawara_relations() -> Check {
    let m = build_verma(sl2(), two_eps_hw(), Bounds::new(4, 2)).map_err(|e| e.to_string())?;
    let ctx = SugawaraContext::new(sl2(), int(2)).map_err(|e| e.to_string())?;
    let kg = ctx.k_plus_g().clone();
    let vs: Vec<ModVec> = m.weight_keys().flat_map(|k| m.basis_vectors(k)).collect();
    for v in &vs {
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let tb = ctx.apply_t_verma(&m, b, v);
                let ta = ctx.apply_t_verma(&m, a, v);
                let lhs = ctx.apply_t_verma(&m, a, &tb).sub(&ctx.apply_t_verma(&m, b, &ta));
                let mut rhs = ctx.apply_t_verma(&m, a + b, v).scale(&(int(b - a) * &kg));
                if a + b == 0 {
                    rhs.add_scaled(v, &(frac(a * a * a - a, 12) * int(3) * &kg * int(2)));
                }
                ensure(lhs == rhs, format!("[T_{a},T_{b}] fails"))?;
                for x in 0..3 {
                    let lhs = ctx.apply_t_verma(&m, a, &m.verma_act(Gen::Loop(x, b), v)).sub(&m.verma_act(Gen::Loop(x, b), &ta));
                    ensure(lhs == m.verma_act(Gen::Loop(x, a + b), v).scale(&(int(b) * &kg)), format!("[T_{a},x({b})] fails"))?;
                }
            }
        }
    }
    Ok(format!("{} basis vectors", vs.len()))
}

fn lemma_factorization() -> Check {
    for (p, expect) in [(trivial_hw(), ("0", "1")), (two_eps_hw(), ("2", "1"))] {
        let m = build_verma(sl2(), p.clone(), Bounds::new(2, 2)).map_err(|e| e.to_string())?;
        let ctx = SugawaraContext::new(sl2(), p.k.clone()).map_err(|e| e.to_string())?;
        let r = factorization_report(&ctx, &m, 2, 2).map_err(|e| e.to_string())?;
        ensure((r.l_prime.as_str(), r.c_prime.as_str()) == expect, format!("(l', c') = ({}, {})", r.l_prime, r.c_prime))?;
        ensure(r.all_passed(), format!("{:?}", r.checks))?;
    }
    Ok("(0,1) and (2,1)".into())
}

fn example_trivial_weight() -> Check {
    run_preset("example-4.5").map_err(|e| e.to_string())?;
    let p = example_45();
    let y = Monomial::parse(&sl2(), "d(-1)").unwrap();
    for n in -10..=10 {
        ensure(psi_at(&y, &p.a, &p.b, PsiConvention::Right, n) == &p.b - &p.a - int(n) - int(1), format!("psi at {n}"))?;
    }
    let v = is_irreducible(sl2(), &p, &IrredOptions::default()).map_err(|e| e.to_string())?;
    ensure(v.irreducible && v.exceptional_n.is_empty() && v.window_agrees == Some(true), format!("{v:?}"))?;
    ensure(v.window_checked == Some((-10, 10)), "window")?;
    Ok("irreducible, empty exceptional set".into())
}

fn example_two_eps() -> Check {
    run_preset("example-4.6").map_err(|e| e.to_string())?;
    Ok("irreducible, bridge 12 = 12".into())
}

fn corollary() -> Check {
    run_preset("corollary-4.4").map_err(|e| e.to_string())?;
    Ok("reducible, proper witness".into())
}

fn endo_counts() -> Check {
    let mut dims = Vec::new();
    for p in [example_45(), example_46()] {
        let ctx = tensor_context(&p, Bounds::new(2, 2), 4);
        let table = ActionTable::new(&ctx, &ClosureMoves::standard(3)).map_err(|e| e.to_string())?;
        let blocks = TensorBlocks::new(&ctx, &table);
        let d = endo_dimension(&blocks);
        ensure(d == 1, format!("endo dimension {d}"))?;
        if dims.is_empty() {
            let dd = endo_dimension(&doubled(&blocks));
            ensure(dd == 4, format!("doubled endo dimension {dd}"))?;
            dims.push(dd);
        }
        dims.push(d);
    }
    Ok(format!("doubled {}, presets {} and {}", dims[0], dims[1], dims[2]))
}

fn random_params(rng: &mut ChaCha8Rng) -> TensorParams {
    let mut r = |den: i64| frac(rng.gen_range(-20..=20), rng.gen_range(1..=den));
    let hw = HwParams::new(GWeight(vec![r(3)]), r(5), r(5), r(7));
    let (a, b) = (r(4), r(4));
    TensorParams::new(hw, GWeight(vec![int(rng.gen_range(1..5))]), a, b)
}

fn iso_classes() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let names = ["lambda", "l", "k", "c", "mu", "a", "b"];
    for _ in 0..10_000 {
        let p = random_params(&mut rng);
        let mut q = p.clone();
        let which = rng.gen_range(0..8);
        let bump = frac(rng.gen_range(1..10), rng.gen_range(2..5)) + frac(1, 97);
        match which {
            0 => q.hw.lambda.0[0] += &bump,
            1 => q.hw.l += &bump,
            2 => q.hw.k += &bump,
            3 => q.hw.c += &bump,
            4 => q.mu.0[0] += int(1),
            5 => q.a += &bump,
            6 => q.b += &bump,
            _ => q.a += int(rng.gen_range(-5..=5)),
        }
        let r = iso_params_check(&p, &q);
        if which == 7 {
            ensure(r.isomorphic, "integer a-shift not identified")?;
        } else {
            ensure(!r.isomorphic, format!("false equivalence after changing {}", names[which]))?;
            ensure(r.first_difference.as_deref() == Some(names[which]), "wrong component reported")?;
        }
    }
    Ok("10000 pairs, no false equivalences".into())
}

fn lemma_generation() -> Check {
    let mut out = Vec::new();
    for p in [example_45(), example_46()] {
        let ctx = tensor_context(&p, Bounds::new(2, 2), 4);
        let table = ActionTable::new(&ctx, &ClosureMoves::standard(3)).map_err(|e| e.to_string())?;
        let top = table.index[&(Monomial::one(), 0)];
        let seeds: Vec<_> = (-4..=4).map(|m| (m, unit_vec(top))).collect();
        let fam = submodule_closure(&table, &seeds);
        for n in -4..=4 {
            ensure(fam.is_full(n), format!("slice {n}: {} of {}", fam.dim(n), fam.slice_dim))?;
        }
        out.push(fam.slice_dim.to_string());
    }
    Ok(format!("slices of dimension {} filled", out.join(" and ")))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 algebra axioms on loop degrees [-6,6]", algebra_axioms),
        ("2 straightening agrees with factorwise action", pbw_oracle),
        ("3 Sugawara operator relations", sugawara_relations),
        ("4 coset Virasoro factorization", lemma_factorization),
        ("5 trivial-weight example", example_trivial_weight),
        ("6 two-epsilon example", example_two_eps),
        ("7 generic parameters are reducible", corollary),
        ("8 endomorphism dimensions", endo_counts),
        ("9 isomorphism invariants", iso_classes),
        ("10 generation by the top vectors", lemma_generation),
    ];
    let results: Vec<(String, Check, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(name, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
                    (name.to_string(), r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (name, r, secs) in &results {
        match r {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({secs:.1}s)");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
