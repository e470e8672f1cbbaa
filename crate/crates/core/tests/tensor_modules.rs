use std::sync::Arc;

use affvir_core::affvir::{bracket_gens, Gen};
use affvir_core::exact::scalar::{frac, int, Scalar};
use affvir_core::highest_weight::{build_verma, Bounds, HwParams};
use affvir_core::lie::{finite_irrep, GWeight, SimpleLieAlgebra};
use affvir_core::loop_tensor::{unshift_iso, unshift_iso_inverse, LoopModule, LoopVector, TensorContext, TensorVector};
use affvir_core::Error;
use proptest::prelude::*;

fn alg() -> Arc<SimpleLieAlgebra> {
    Arc::new(SimpleLieAlgebra::sl2())
}

fn loop_module(m: i64, a: Scalar, b: Scalar) -> LoopModule {
    LoopModule::new(Arc::new(finite_irrep(&alg(), &GWeight(vec![int(m)])).unwrap()), a, b)
}

fn shifted(lam: i64, l: Scalar, k: i64, c: Scalar, mu: i64, window: i64) -> TensorContext {
    let a = alg();
    let hw = HwParams::new(GWeight(vec![int(lam)]), l, int(k), c);
    let q = build_verma(a.clone(), hw, Bounds::new(2, 2)).unwrap().irreducible_quotient().unwrap();
    let fin = finite_irrep(&a, &GWeight(vec![int(mu)])).unwrap();
    TensorContext::new(Arc::new(q), Arc::new(fin), frac(1, 5), frac(2, 7), window)
}

fn gen_strategy() -> impl Strategy<Value = Gen> {
    let mut g = vec![Gen::K, Gen::C];
    for m in -2..=2 {
        g.extend([Gen::Loop(0, m), Gen::Loop(1, m), Gen::Loop(2, m), Gen::D(m)]);
    }
    prop::sample::select(g)
}

fn loop_vec(m: &LoopModule, n: i64, j: usize) -> LoopVector {
    LoopVector::single(n, m.fin.basis_vector(j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn loop_module_is_a_representation(x in gen_strategy(), y in gen_strategy(), n in -5i64..5, j in 0usize..3) {
        let m = loop_module(2, frac(1, 3), frac(-3, 4));
        let v = loop_vec(&m, n, j);
        let mut lhs = m.act(x, &m.act(y, &v));
        for (k, c) in m.act(y, &m.act(x, &v)).components() {
            lhs.add(*k, &c.iter().map(|s| -s).collect::<Vec<_>>());
        }
        let rhs = m.act_elem(&bracket_gens(&alg(), x, y), &v);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_shifts_of_a_relabel_the_loop_index(g in gen_strategy(), n in -5i64..5, j in 0usize..2, s in -3i64..3) {
        let a = frac(2, 9);
        let m0 = loop_module(1, a.clone(), frac(1, 2));
        let m1 = loop_module(1, a + int(s), frac(1, 2));
        let left: Vec<(i64, Vec<Scalar>)> = m1.act(g, &loop_vec(&m1, n, j)).components().map(|(k, v)| (*k, v.clone())).collect();
        let right: Vec<(i64, Vec<Scalar>)> = m0.act(g, &loop_vec(&m0, n + s, j)).components().map(|(k, v)| (k - s, v.clone())).collect();
        prop_assert_eq!(left, right);
    }
}

#[test]
fn unshift_intertwines_the_two_actions() {
    let ctx = shifted(2, frac(3, 2), 2, frac(5, 2), 3, 6);
    let basis = ctx.tensor_weight_basis(0);
    let mut checked = 0;
    for (p, j) in basis.iter().step_by(3) {
        for n in [-2, 0, 2] {
            let w = TensorVector::pure(n, p.clone(), *j);
            assert_eq!(unshift_iso_inverse(&unshift_iso(&w)), w);
            for m in -1..=1 {
                for g in [Gen::Loop(0, m), Gen::Loop(1, m), Gen::Loop(2, m), Gen::D(m), Gen::D(2 * m)] {
                    let (Ok(s), Ok(t)) = (ctx.shifted_act(g, &w), ctx.plain_act(g, &unshift_iso(&w))) else { continue };
                    assert_eq!(unshift_iso(&s), t, "{g:?} on {}", p.display(ctx.alg()));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn shifted_action_is_a_representation() {
    let ctx = shifted(0, int(0), 1, int(2), 1, 5);
    let gens: Vec<Gen> = (-1..=1).flat_map(|m| [Gen::Loop(0, m), Gen::Loop(1, m), Gen::Loop(2, m), Gen::D(m)]).collect();
    for (p, j) in ctx.tensor_weight_basis(0) {
        let w = TensorVector::pure(0, p.clone(), j);
        for &x in &gens {
            for &y in &gens {
                let xy = ctx.shifted_act(y, &w).and_then(|v| ctx.shifted_act(x, &v));
                let yx = ctx.shifted_act(x, &w).and_then(|v| ctx.shifted_act(y, &v));
                let br = ctx.shifted_act_elem(&bracket_gens(ctx.alg(), x, y), &w);
                let (Ok(xy), Ok(yx), Ok(br)) = (xy, yx, br) else { continue };
                let mut lhs = xy;
                lhs.add_scaled(&yx, &int(-1));
                assert_eq!(lhs, br, "{x:?} {y:?} on {}", p.display(ctx.alg()));
            }
        }
    }
}

#[test]
fn leaving_the_window_is_reported() {
    let ctx = shifted(0, int(0), 1, int(2), 1, 2);
    let w = TensorVector::pure(2, ctx.tensor_weight_basis(0)[0].0.clone(), 0);
    assert!(matches!(ctx.shifted_act(Gen::D(1), &w), Err(Error::TruncationEscape(_))));
    assert!(ctx.shifted_act(Gen::D(-1), &w).is_ok());
}

#[test]
fn degree_zero_action_on_the_top_slice() {
    let ctx = shifted(0, int(0), 1, int(2), 1, 3);
    let top = TensorVector::pure(1, ctx.tensor_weight_basis(0).iter().find(|(p, _)| p.is_one()).unwrap().0.clone(), 0);
    // d₀ acts by a + n on ū ⊗ v ⊗ tⁿ since l = 0
    assert_eq!(ctx.shifted_act(Gen::D(0), &top).unwrap(), top.scale(&(frac(1, 5) + int(1))));
}
