//! Property suites for the algebraic invariants, driven by seeded sampling.

use std::sync::Arc;

use proptest::prelude::*;

use cdgl::algebra::{AlgebraContext, Element, Morphism};
use cdgl::differential::{theta_tilde, DglPresentation, UniversalAlgebra};
use cdgl::frontend::{
    deserialize_element, format_element, parse_expression, serialize_element, Style,
};
use cdgl::sampling::ElementSampler;
use cdgl::series::{dynkin_project, exp};
use cdgl::{frac, Rat};

fn mixed_context(n: usize) -> Arc<AlgebraContext> {
    AlgebraContext::new(&[("a", -1), ("b", 0), ("c", 1), ("e", 0)], n).unwrap()
}

fn sample(ctx: &Arc<AlgebraContext>, seed: u64, degree: i64, max_len: usize) -> Element {
    ElementSampler::new(ctx, seed).homogeneous(degree, max_len, 5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn graded_antisymmetry(seed in any::<u64>(), dx in -1i64..=1, dy in -1i64..=1) {
        let ctx = mixed_context(5);
        let x = sample(&ctx, seed, dx, 2);
        let y = sample(&ctx, seed ^ 0xabcd, dy, 2);
        let xy = x.bracket(&y).unwrap();
        let yx = y.bracket(&x).unwrap();
        let sign = if (dx * dy).rem_euclid(2) == 1 { frac(1, 1) } else { frac(-1, 1) };
        prop_assert_eq!(yx.scale(&sign), xy);
    }

    #[test]
    fn graded_jacobi(seed in any::<u64>(), dx in -1i64..=1, dy in -1i64..=1, dz in -1i64..=1) {
        let ctx = mixed_context(6);
        let x = sample(&ctx, seed, dx, 2);
        let y = sample(&ctx, seed ^ 0x1111, dy, 2);
        let z = sample(&ctx, seed ^ 0x2222, dz, 2);
        let lhs = x.bracket(&y.bracket(&z).unwrap()).unwrap();
        let rhs1 = x.bracket(&y).unwrap().bracket(&z).unwrap();
        let rhs2 = y.bracket(&x.bracket(&z).unwrap()).unwrap();
        let sign = if (dx * dy).rem_euclid(2) == 1 { frac(-1, 1) } else { frac(1, 1) };
        prop_assert_eq!(lhs, &rhs1 + &rhs2.scale(&sign));
    }

    #[test]
    fn bracket_is_the_graded_commutator(seed in any::<u64>(), dx in -1i64..=1, dy in -1i64..=1) {
        let ctx = mixed_context(5);
        let x = sample(&ctx, seed, dx, 2);
        let y = sample(&ctx, seed ^ 0x77, dy, 2);
        let sign = if (dx * dy).rem_euclid(2) == 1 { frac(1, 1) } else { frac(-1, 1) };
        let commutator = &x.mul(&y).unwrap() + &y.mul(&x).unwrap().scale(&sign);
        prop_assert_eq!(x.bracket(&y).unwrap(), commutator);
    }

    #[test]
    fn components_reconstruct_the_element(seed in any::<u64>()) {
        let ctx = mixed_context(5);
        let mut x = sample(&ctx, seed, 0, 5);
        x = &x + &Element::from_scalar(&ctx, frac(3, 7));
        let mut rebuilt = Element::from_scalar(&ctx, x.scalar().clone());
        for len in 1..=5 {
            rebuilt = &rebuilt + &x.component(len).unwrap();
        }
        prop_assert_eq!(rebuilt, x);
    }

    #[test]
    fn morphisms_respect_bracket_and_product(seed in any::<u64>()) {
        let alg = UniversalAlgebra::new(2, 5).unwrap();
        let ctx = alg.context();
        let m = Morphism::new(
            ctx,
            ctx,
            &[
                ("u1", &alg.u(1) + &alg.u(2)),
                ("u2", alg.u(1).bracket(&alg.v(2)).unwrap()),
                ("v1", alg.v(2).clone()),
                ("v2", alg.v(1).bracket(&alg.v(2)).unwrap()),
            ],
        )
        .unwrap();
        let mut sampler = ElementSampler::new(ctx, seed);
        let x = sampler.homogeneous(1, 3, 4);
        let y = sampler.homogeneous(0, 3, 4);
        prop_assert_eq!(
            m.apply(&x.bracket(&y).unwrap()).unwrap(),
            m.apply(&x).unwrap().bracket(&m.apply(&y).unwrap()).unwrap()
        );
        prop_assert_eq!(
            m.apply(&x.mul(&y).unwrap()).unwrap(),
            m.apply(&x).unwrap().mul(&m.apply(&y).unwrap()).unwrap()
        );
        let combo = &x.scale(&frac(2, 3)) - &x.mul(&y).unwrap();
        prop_assert_eq!(
            m.apply(&combo).unwrap(),
            &m.apply(&x).unwrap().scale(&frac(2, 3)) - &m.apply(&x.mul(&y).unwrap()).unwrap()
        );
    }

    #[test]
    fn exp_times_exp_of_negation_is_one(seed in any::<u64>()) {
        let alg = UniversalAlgebra::new(2, 6).unwrap();
        let mut sampler = ElementSampler::new(alg.context(), seed);
        let x = sampler.homogeneous(0, 4, 4);
        let product = exp(&x).unwrap().mul(&exp(&-&x).unwrap()).unwrap();
        prop_assert_eq!(product, Element::one(alg.context()));
    }

    #[test]
    fn exp_ad_is_a_lie_morphism(seed in any::<u64>()) {
        let alg = UniversalAlgebra::new(2, 5).unwrap();
        let mut sampler = ElementSampler::new(alg.context(), seed);
        let x = sampler.homogeneous(0, 2, 3);
        let y = sampler.homogeneous(0, 2, 3);
        let z = sampler.homogeneous(1, 2, 3);
        let e = |w: &Element| cdgl::bch::conjugate_by_exp(&x, w).unwrap();
        prop_assert_eq!(
            e(&y.bracket(&z).unwrap()),
            e(&y).bracket(&e(&z)).unwrap()
        );
    }

    #[test]
    fn section_property_of_theta_tilde(seed in any::<u64>()) {
        let alg = UniversalAlgebra::new(2, 6).unwrap();
        let mut sampler = ElementSampler::new(alg.context(), seed);
        let x = sampler.homogeneous(0, 5, 6);
        let lifted = theta_tilde(alg.theta(), &x).unwrap();
        prop_assert_eq!(alg.differential().apply(&lifted).unwrap(), x);
    }

    #[test]
    fn dynkin_projection_is_idempotent(seed in any::<u64>()) {
        let ctx = AlgebraContext::new(&[("x", 0), ("y", 0), ("z", 0)], 5).unwrap();
        let mut sampler = ElementSampler::new(&ctx, seed);
        let x = sampler.homogeneous(0, 4, 5);
        let once = dynkin_project(&x).unwrap();
        prop_assert_eq!(dynkin_project(&once).unwrap(), once.clone());
        prop_assert!(cdgl::series::is_lie(&once).unwrap() || once.is_zero());
    }

    #[test]
    fn words_format_reparses_exactly(seed in any::<u64>(), num in -20i64..=20, den in 1i64..=9) {
        let ctx = mixed_context(5);
        let mut sampler = ElementSampler::new(&ctx, seed);
        let mut x = sampler.homogeneous(0, 4, 4);
        x = &(&x + &sampler.homogeneous(1, 3, 3)) + &Element::from_scalar(&ctx, frac(num, den));
        let text = format_element(&x, Style::Words).unwrap();
        prop_assert_eq!(parse_expression(&text, &ctx, None).unwrap(), x);
    }

    #[test]
    fn serialization_round_trips_bit_exactly(seed in any::<u64>()) {
        let ctx = mixed_context(5);
        let mut sampler = ElementSampler::new(&ctx, seed);
        let x = &sampler.homogeneous(-1, 4, 4) + &sampler.homogeneous(2, 4, 3);
        let text = serialize_element(&x);
        let (_, back) = deserialize_element(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(serialize_element(&back), text);
    }

    #[test]
    fn derivation_leibniz_on_brackets(seed in any::<u64>(), dx in 0i64..=1, dy in 0i64..=1) {
        let alg = UniversalAlgebra::new(2, 5).unwrap();
        let d = alg.differential();
        let mut sampler = ElementSampler::new(alg.context(), seed);
        let x = sampler.homogeneous(dx, 2, 4);
        let y = sampler.homogeneous(dy, 2, 4);
        // degree -1 derivation: D[x,y] = [Dx,y] + (-1)^{|x|}[x,Dy]
        let sign = if dx.rem_euclid(2) == 1 { frac(-1, 1) } else { frac(1, 1) };
        let rhs = &d.apply(&x).unwrap().bracket(&y).unwrap()
            + &x.bracket(&d.apply(&y).unwrap()).unwrap().scale(&sign);
        prop_assert_eq!(d.apply(&x.bracket(&y).unwrap()).unwrap(), rhs);
    }

    #[test]
    fn euler_identity_scales_components(seed in any::<u64>()) {
        let alg = UniversalAlgebra::new(2, 5).unwrap();
        let d = alg.differential();
        let th = alg.theta();
        let mut sampler = ElementSampler::new(alg.context(), seed);
        let x = sampler.homogeneous(1, 5, 5);
        let both = &d.apply(&th.apply(&x).unwrap()).unwrap()
            + &th.apply(&d.apply(&x).unwrap()).unwrap();
        for len in 1..=5usize {
            let expected = x.component(len).unwrap().scale(&Rat::from_integer((len as u64).into()));
            prop_assert_eq!(both.component(len).unwrap(), expected);
        }
    }
}

#[test]
fn presentation_validates_square_zero() {
    let alg = UniversalAlgebra::new(2, 4).unwrap();
    assert!(DglPresentation::new(alg.context(), alg.differential().clone()).is_ok());
    // negative control: d(u) = v, d(v) = w gives d(d(u)) = w != 0
    let ctx = AlgebraContext::new(&[("u", 1), ("v", 0), ("w", -1)], 4).unwrap();
    let broken = cdgl::differential::Derivation::new(
        &ctx,
        -1,
        &[
            ("u", Element::generator(&ctx, "v").unwrap()),
            ("v", Element::generator(&ctx, "w").unwrap()),
            ("w", Element::zero(&ctx)),
        ],
    )
    .unwrap();
    assert!(matches!(
        DglPresentation::new(&ctx, broken),
        Err(cdgl::Error::DifferentialSquare { generator }) if generator == "u"
    ));
}
