//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Two tests are expected to fail and document why in their panic messages:
//! `c05_group_associativity` and `c13_model_dim_4_pentahedroid`. The product
//! on degree-1 elements defined by substitution into the universal algebra
//! is not associative (binary folds differ from the flattened product at
//! word length 3), and the stated boundary of the dimension-4 top generator
//! is not a perturbed cycle for the same reason. Both facts are exact and
//! reproducible; every identity that does not depend on regrouping chains
//! holds and is verified by the green tests.

use std::sync::Arc;

use cdgl::algebra::{AlgebraContext, Element};
use cdgl::bch::{bch, bullet, bullet_many, conjugate_by_exp};
use cdgl::correctors::{bullet_cycle_left, bullet_cycle_right, sigma, solve_translation, tau};
use cdgl::differential::{
    exactness_report, theta_tilde, Derivation, DglPresentation, UniversalAlgebra,
};
use cdgl::frontend::{
    deserialize_element, format_element, parse_expression, serialize_element, Style,
};
use cdgl::sampling::ElementSampler;
use cdgl::series::{ad_series, CoefficientTable};
use cdgl::simplex::{verify_model_with, SimplexModel};
use cdgl::{frac, Rat};

fn pass(name: &str) {
    println!("acceptance {name}: PASS");
}

/// Independent oracle: the explicit double-sum expansion of log(e^x e^y)
/// over compositions, evaluated with brackets only (no exp/log machinery).
fn dynkin_bch_oracle(x: &Element, y: &Element, max_len: usize) -> Element {
    let ctx = x.context();
    let mut acc = Element::zero(ctx);
    let mut factorials: Vec<u64> = vec![1];
    for i in 1..=max_len as u64 {
        factorials.push(factorials.last().unwrap() * i);
    }
    // enumerate tuples ((p_1, q_1), .., (p_n, q_n)), (p_i, q_i) != (0, 0),
    // with total letter count m <= max_len
    fn go(
        tuple: &mut Vec<(usize, usize)>,
        weight: usize,
        max_len: usize,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if !tuple.is_empty() {
            out.push(tuple.clone());
        }
        for p in 0..=(max_len - weight) {
            for q in 0..=(max_len - weight - p) {
                if p + q == 0 {
                    continue;
                }
                tuple.push((p, q));
                go(tuple, weight + p + q, max_len, out);
                tuple.pop();
            }
        }
    }
    let mut tuples = Vec::new();
    go(&mut Vec::new(), 0, max_len, &mut tuples);

    for tuple in tuples {
        let n = tuple.len();
        let m: usize = tuple.iter().map(|(p, q)| p + q).sum();
        let mut letters: Vec<&Element> = Vec::with_capacity(m);
        for &(p, q) in &tuple {
            letters.extend(std::iter::repeat_n(x, p));
            letters.extend(std::iter::repeat_n(y, q));
        }
        // right-nested bracket [l1, [l2, .. [l_{m-1}, l_m] .. ]]
        let mut bracket = letters[m - 1].clone();
        for letter in letters[..m - 1].iter().rev() {
            bracket = letter.bracket(&bracket).unwrap();
        }
        if bracket.is_zero() {
            continue;
        }
        let mut denom: u64 = (n as u64) * (m as u64);
        for &(p, q) in &tuple {
            denom *= factorials[p] * factorials[q];
        }
        let sign = if n % 2 == 1 { 1i64 } else { -1 };
        acc = &acc + &bracket.scale(&Rat::new(sign.into(), denom.into()));
    }
    acc
}

#[test]
fn c01_bch_lowest_terms_and_dynkin_oracle() {
    let ctx = AlgebraContext::new(&[("x", 0), ("y", 0)], 4).unwrap();
    let x = Element::generator(&ctx, "x").unwrap();
    let y = Element::generator(&ctx, "y").unwrap();
    let p = bch(&x, &y).unwrap();
    let xy = x.bracket(&y).unwrap();
    let low = &(&(&x + &y) + &xy.scale(&frac(1, 2)))
        + &(&x.bracket(&xy).unwrap().scale(&frac(1, 12))
            - &y.bracket(&xy).unwrap().scale(&frac(1, 12)));
    for len in 1..=3 {
        assert_eq!(
            p.component(len).unwrap(),
            low.component(len).unwrap(),
            "BCH length-{len} terms"
        );
    }
    let oracle = dynkin_bch_oracle(&x, &y, 4);
    assert_eq!(
        p, oracle,
        "full order-4 expansion vs the composition oracle"
    );
    pass("c01 bch lowest terms + independent oracle");
}

#[test]
fn c02_section_and_euler_suite() {
    let alg = UniversalAlgebra::new(2, 8).unwrap();
    let d = alg.differential();
    let th = alg.theta();
    let mut sampler = ElementSampler::new(alg.context(), 0xC02);
    for i in 0..200 {
        let x = sampler.homogeneous(0, 8, 6);
        let lift = theta_tilde(th, &x).unwrap();
        assert_eq!(d.apply(&lift).unwrap(), x, "section failed on sample {i}");
        let both =
            &d.apply(&th.apply(&x).unwrap()).unwrap() + &th.apply(&d.apply(&x).unwrap()).unwrap();
        for len in 1..=8usize {
            assert_eq!(
                both.component(len).unwrap(),
                x.component(len)
                    .unwrap()
                    .scale(&Rat::from_integer((len as u64).into())),
                "euler identity failed on sample {i} at length {len}"
            );
        }
    }
    pass("c02 d∘theta_tilde = id and euler identity on 200 samples at N=8");
}

#[test]
fn c03_contractibility_blocks() {
    for k in [1usize, 2] {
        let alg = UniversalAlgebra::new(k, 5).unwrap();
        let pres = DglPresentation::new(alg.context(), alg.differential().clone()).unwrap();
        let report = exactness_report(&pres, 5).unwrap();
        assert!(
            report.is_exact(),
            "nonzero homology for {k} pair(s):\n{report}"
        );
    }
    pass("c03 zero homology in every (length, degree) block through length 5");
}

#[test]
fn c04_universal_bullet_low_terms() {
    let alg = UniversalAlgebra::new(2, 4).unwrap();
    let b = cdgl::bch::bullet_universal(2, 4).unwrap();
    let (u1, u2, v1, v2) = (alg.u(1), alg.u(2), alg.v(1), alg.v(2));
    assert_eq!(b.component(1).unwrap(), &u1 + &u2);
    let quad =
        &u1.bracket(&v2).unwrap().scale(&frac(1, 4)) + &v1.bracket(&u2).unwrap().scale(&frac(1, 4));
    assert_eq!(
        b.component(2).unwrap(),
        quad,
        "quadratic terms: degree-consistent reading [u1,v2]/4 + [v1,u2]/4"
    );
    let c = |a: &Element, b: &Element| a.bracket(b).unwrap();
    let vv = c(&v1, &v2);
    let cubic = &(&(&c(&u1, &vv).scale(&frac(1, 36)) + &c(&v1, &c(&u1, &v2)).scale(&frac(1, 36)))
        + &(&c(&v1, &c(&v1, &u2)).scale(&frac(1, 36)) - &c(&u2, &vv).scale(&frac(1, 36))))
        + &(&c(&v2, &c(&u1, &v2)).scale(&frac(-1, 36))
            + &c(&v2, &c(&v1, &u2)).scale(&frac(-1, 36)));
    assert_eq!(b.component(3).unwrap(), cubic, "the six cubic 1/36 terms");
    pass("c04 universal product quadratic and cubic coefficients");
}

#[test]
fn c05_group_identity_and_inverse() {
    let alg = UniversalAlgebra::new(2, 8).unwrap();
    let d = alg.differential();
    let zero = Element::zero(alg.context());
    let mut sampler = ElementSampler::new(alg.context(), 0xC05);
    for _ in 0..5 {
        let alpha = sampler.homogeneous(1, 6, 5);
        assert_eq!(bullet(d, &alpha, &zero).unwrap(), alpha, "right identity");
        assert_eq!(bullet(d, &zero, &alpha).unwrap(), alpha, "left identity");
        assert!(
            bullet(d, &alpha, &-&alpha).unwrap().is_zero(),
            "right inverse"
        );
        assert!(
            bullet(d, &-&alpha, &alpha).unwrap().is_zero(),
            "left inverse"
        );
    }
    pass("c05 group identity and inverse at N=8");
}

#[test]
fn c05_group_associativity() {
    // Expected to fail: the substitution product is not associative. The
    // exact counterexample is already visible on the generators: in the
    // flattened triple product the word u3.v1.v2 has coefficient -1/18,
    // while ((u1 • u2) • u3) gives -1/8 + 1/36 = -7/72; the difference
    // -1/24 appears at word length 3 and is truncation-independent for
    // any N >= 3.
    let alg = UniversalAlgebra::new(3, 6).unwrap();
    let d = alg.differential();
    let (u1, u2, u3) = (alg.u(1), alg.u(2), alg.u(3));

    let mut failures = Vec::new();
    let triple = bullet_many(d, &[u1.clone(), u2.clone(), u3.clone()]).unwrap();
    let left = bullet(d, &bullet(d, &u1, &u2).unwrap(), &u3).unwrap();
    let right = bullet(d, &u1, &bullet(d, &u2, &u3).unwrap()).unwrap();
    if left != triple || right != triple {
        let diff = &left - &triple;
        failures.push(format!(
            "generators: ((u1•u2)•u3) - (u1•u2•u3) has {} terms, first at word length {:?}",
            diff.term_count(),
            diff.min_word_length()
        ));
    }
    let mut sampler = ElementSampler::new(alg.context(), 0xC05B);
    let pool: Vec<Element> = (0..20).map(|_| sampler.homogeneous(1, 3, 3)).collect();
    let mut random_failures = 0;
    for i in 0..pool.len() {
        let (a, b, c) = (&pool[i], &pool[(i + 1) % 20], &pool[(i + 2) % 20]);
        let flat = bullet_many(d, &[a.clone(), b.clone(), c.clone()]).unwrap();
        let folded = bullet(d, &bullet(d, a, b).unwrap(), c).unwrap();
        if flat != folded {
            random_failures += 1;
        }
    }
    if random_failures > 0 {
        failures.push(format!(
            "{random_failures} of 20 random triples fail left-fold == flattened"
        ));
    }
    assert!(
        failures.is_empty(),
        "associativity does not hold for the substitution product: {}",
        failures.join("; ")
    );
    pass("c05 group associativity at N=6");
}

#[test]
fn c06_bullet_integrates_bch() {
    let alg = UniversalAlgebra::new(2, 8).unwrap();
    let d = alg.differential();
    let mut sampler = ElementSampler::new(alg.context(), 0xC06);
    for _ in 0..4 {
        let alpha = sampler.homogeneous(1, 5, 5);
        let beta = sampler.homogeneous(1, 5, 5);
        let lhs = d.apply(&bullet(d, &alpha, &beta).unwrap()).unwrap();
        let rhs = bch(&d.apply(&alpha).unwrap(), &d.apply(&beta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    pass("c06 d(x • y) = dx * dy at N=8 on random inputs");
}

#[test]
fn c07_conjugation_with_sigma() {
    let alg = UniversalAlgebra::new(2, 6).unwrap();
    let d = alg.differential();
    let mut cases = vec![(alg.u(1), alg.u(2))];
    let mut sampler = ElementSampler::new(alg.context(), 0xC07);
    for _ in 0..3 {
        cases.push((sampler.homogeneous(1, 4, 4), sampler.homogeneous(1, 4, 4)));
    }
    for (alpha, beta) in cases {
        let a = d.apply(&alpha).unwrap();
        let lhs = bullet_many(d, &[alpha.clone(), beta.clone(), -&alpha]).unwrap();
        let rhs = &conjugate_by_exp(&a, &beta).unwrap()
            - &d.apply(&sigma(d, &alpha, &beta).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
    pass("c07 x•y•x^{-1} = e^{ad_a}(y) - d sigma(x,y) at N=6");
}

fn extended_universal(n: usize) -> (Arc<AlgebraContext>, Derivation) {
    // two pairs plus one degree-1 cycle generator w
    let ctx =
        AlgebraContext::new(&[("u1", 1), ("u2", 1), ("w", 1), ("v1", 0), ("v2", 0)], n).unwrap();
    let d = Derivation::new(
        &ctx,
        -1,
        &[
            ("u1", Element::generator(&ctx, "v1").unwrap()),
            ("u2", Element::generator(&ctx, "v2").unwrap()),
            ("w", Element::zero(&ctx)),
            ("v1", Element::zero(&ctx)),
            ("v2", Element::zero(&ctx)),
        ],
    )
    .unwrap();
    (ctx, d)
}

/// A degree-1 cycle: words with exactly one `w` and the rest `v`'s.
fn random_cycle(ctx: &Arc<AlgebraContext>, d: &Derivation, seed: u64, max_len: usize) -> Element {
    let mut sampler = ElementSampler::new(ctx, seed);
    loop {
        let candidate = sampler.homogeneous(1, max_len, 5);
        if !candidate.is_zero() && d.apply(&candidate).unwrap().is_zero() {
            return candidate;
        }
    }
}

#[test]
fn c08_conjugation_of_cycles() {
    let (ctx, d) = extended_universal(8);
    let mut sampler = ElementSampler::new(&ctx, 0xC08);
    let eps = CoefficientTable::epsilon(8);
    for seed in 0..3u64 {
        let alpha = sampler.homogeneous(1, 5, 5);
        let beta = random_cycle(&ctx, &d, 0x1000 + seed, 4);
        let a = d.apply(&alpha).unwrap();
        let lhs = bullet_many(&d, &[alpha.clone(), beta.clone(), -&alpha]).unwrap();
        let rhs = ad_series(eps.values(), &a, &beta).unwrap();
        assert_eq!(lhs, rhs);
    }
    pass("c08 x•y•x^{-1} = eps(ad_a)(y) for cycles y at N=8");
}

#[test]
fn c09_cycle_multiplication_closed_forms() {
    let (ctx, d) = extended_universal(8);
    let mut sampler = ElementSampler::new(&ctx, 0xC09);
    for seed in 0..3u64 {
        let alpha = sampler.homogeneous(1, 5, 5);
        let cycle = random_cycle(&ctx, &d, 0x2000 + seed, 4);
        let closed = bullet_cycle_right(&d, &alpha, &cycle).unwrap();
        let general = bullet(&d, &alpha, &cycle).unwrap();
        assert_eq!(closed, general, "right-cycle closed form");
        let closed = bullet_cycle_left(&d, &cycle, &alpha).unwrap();
        let general = bullet(&d, &cycle, &alpha).unwrap();
        assert_eq!(closed, general, "left-cycle closed form");
    }
    pass("c09 cycle-multiplication closed forms equal the general product at N=8");
}

#[test]
fn c10_translation_by_a_cycle() {
    let (ctx, d) = extended_universal(8);
    let mut sampler = ElementSampler::new(&ctx, 0xC10);
    for seed in 0..3u64 {
        let alpha = sampler.homogeneous(1, 5, 5);
        let gamma = random_cycle(&ctx, &d, 0x3000 + seed, 4);
        let beta = solve_translation(&d, &alpha, &gamma).unwrap();
        assert!(d.apply(&beta).unwrap().is_zero(), "solution is a cycle");
        assert_eq!(
            bullet(&d, &alpha, &beta).unwrap(),
            &alpha + &gamma,
            "x • xi(ad_a)(c) = x + c"
        );
    }
    pass("c10 translation by a cycle at N=8");
}

#[test]
fn c11_conjugation_with_tau() {
    let alg = UniversalAlgebra::new(2, 6).unwrap();
    let d = alg.differential();
    let mut cases = vec![(alg.u(1), alg.u(2))];
    let mut sampler = ElementSampler::new(alg.context(), 0xC11);
    for _ in 0..2 {
        cases.push((sampler.homogeneous(1, 4, 4), sampler.homogeneous(1, 4, 4)));
    }
    for (alpha, beta) in cases {
        let a = d.apply(&alpha).unwrap();
        let lhs = bullet_many(d, &[alpha.clone(), beta.clone(), -&alpha]).unwrap();
        let t = tau(d, &alpha, &beta).unwrap();
        let rhs = bullet(
            d,
            &conjugate_by_exp(&a, &beta).unwrap(),
            &-&d.apply(&t).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs, "conjugation through tau");
    }
    // tau = sigma when the second argument is a cycle
    let alpha = alg.u(1);
    let beta = d.apply(&alg.u(1).bracket(&alg.u(2)).unwrap()).unwrap();
    assert_eq!(
        tau(d, &alpha, &beta).unwrap(),
        sigma(d, &alpha, &beta).unwrap()
    );
    pass("c11 x•y•x^{-1} = e^{ad_a}(y) • d tau(x,y)^{-1} at N=6, tau = sigma on cycles");
}

#[test]
fn c12_coefficient_tables() {
    let b = CoefficientTable::bernoulli(6);
    let expected = [
        frac(1, 1),
        frac(-1, 2),
        frac(1, 6),
        frac(0, 1),
        frac(-1, 30),
        frac(0, 1),
        frac(1, 42),
    ];
    assert_eq!(b.values(), &expected, "bernoulli numbers through index 6");

    let a = CoefficientTable::xi(12);
    assert_eq!(a.values()[1], frac(-1, 4));
    assert_eq!(a.values()[2], frac(5, 144));
    assert_eq!(a.values()[3], frac(-1, 576));
    assert_eq!(
        a.values()[4],
        frac(-131, 518400),
        "exact A_4 from inversion"
    );
    assert_ne!(
        a.values()[4],
        frac(-4, 15829),
        "quoted value is a different rational"
    );
    let f = CoefficientTable::f(12);
    for n in 1..=12 {
        let mut acc = Rat::from_integer(0.into());
        for i in 0..=n {
            acc += &a.values()[i] * &f.values()[n - i];
        }
        assert!(
            acc == Rat::from_integer(0.into()),
            "inversion identity at order {n}"
        );
    }

    // the discrepancy is reported on the CLI
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cdgl::frontend::cli::run(
        ["cdgl", "coeffs", "xi", "4"].iter().map(|s| s.to_string()),
        &mut out,
        &mut err,
    );
    let text = String::from_utf8(out).unwrap();
    assert_eq!(code, 0);
    assert!(text.contains("A_4 = -131/518400"));
    assert!(text.contains("note:") && text.contains("-4/15829"));

    // tau expansion through the displayed orders
    let alg = UniversalAlgebra::new(2, 6).unwrap();
    let d = alg.differential();
    let (x, y, a_el, b_el) = (alg.u(1), alg.u(2), alg.v(1), alg.v(2));
    let t = tau(d, &x, &y).unwrap();
    let xy = x.bracket(&y).unwrap();
    assert_eq!(t.component(2).unwrap(), xy.scale(&frac(1, 2)));
    let len3 = &(&a_el.bracket(&xy).unwrap().scale(&frac(1, 6))
        + &x.bracket(&a_el.bracket(&y).unwrap())
            .unwrap()
            .scale(&frac(1, 6)))
        + &b_el.bracket(&xy).unwrap().scale(&frac(-1, 8));
    assert_eq!(t.component(3).unwrap(), len3, "displayed tau terms");
    pass("c12 coefficient tables, A_4 discrepancy reported, tau display");
}

fn assert_model_verifies(n: usize, trunc: usize, threads: usize) {
    let model = SimplexModel::build(n, trunc).unwrap();
    let report = verify_model_with(&model, threads).unwrap();
    assert!(report.verified(), "{report}");
}

#[test]
fn c13_model_dim_0_and_1() {
    assert_model_verifies(0, 8, 1);
    assert_model_verifies(1, 8, 2);
    pass("c13 models of dimensions 0 and 1 at N=8 (incl. the gauge identity)");
}

#[test]
fn c13_model_dim_2() {
    assert_model_verifies(2, 6, 2);
    pass("c13 model of dimension 2 at N=6");
}

#[test]
fn c13_model_dim_3() {
    assert_model_verifies(3, 6, 2);
    pass("c13 model of dimension 3 at N=6");
}

#[test]
fn c13_model_dim_4_pentahedroid() {
    // Expected to fail: the stated boundary of the top generator is not a
    // perturbed cycle under the substitution product (the defect starts at
    // word length 3; every regrouping-free identity holds and the other
    // checks pass). See the d-squared and phi-cycle lines of the report.
    let model = SimplexModel::build(4, 4).unwrap();
    let report = verify_model_with(&model, 4).unwrap();
    assert!(report.verified(), "{report}");
    pass("c13 model of dimension 4 at N=4");
}

#[test]
fn c14_exponential_operator_law() {
    let ctx = AlgebraContext::new(&[("x", 0), ("y", 0), ("z", 0)], 6).unwrap();
    let mut sampler = ElementSampler::new(&ctx, 0xC14);
    for _ in 0..4 {
        let x = sampler.homogeneous(0, 3, 4);
        let y = sampler.homogeneous(0, 3, 4);
        let z = sampler.homogeneous(0, 3, 4);
        let lhs = conjugate_by_exp(&x, &conjugate_by_exp(&y, &z).unwrap()).unwrap();
        let rhs = conjugate_by_exp(&bch(&x, &y).unwrap(), &z).unwrap();
        assert_eq!(lhs, rhs);
    }
    pass("c14 e^{ad_x} ∘ e^{ad_y} = e^{ad_{x*y}} at N=6");
}

#[test]
fn c15_frontend_round_trips_and_exit_codes() {
    let ctx = AlgebraContext::new(&[("a", -1), ("b", 0), ("c", 1), ("e", 0)], 5).unwrap();
    let mut sampler = ElementSampler::new(&ctx, 0xC15);
    for i in 0..500 {
        let degree = [-1, 0, 1, 2][i % 4];
        let mut x = sampler.homogeneous(degree, 4, 4);
        if i % 5 == 0 {
            x = &x + &Element::from_scalar(&ctx, frac((i as i64 % 17) - 8, 3));
        }
        let text = format_element(&x, Style::Words).unwrap();
        assert_eq!(
            parse_expression(&text, &ctx, None).unwrap(),
            x,
            "parse∘format at sample {i}: {text}"
        );
        let json = serialize_element(&x);
        let (_, back) = deserialize_element(&json).unwrap();
        assert_eq!(back, x, "serialize∘deserialize at sample {i}");
        assert_eq!(
            serialize_element(&back),
            json,
            "byte-stable reserialization"
        );
    }

    // `model verify` exit codes through the real binary
    let bin = env!("CARGO_BIN_EXE_cdgl");
    let ok = std::process::Command::new(bin)
        .args(["model", "verify", "2", "--trunc", "4"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "verified model exits 0");
    let failing = std::process::Command::new(bin)
        .args(["model", "verify", "4", "--trunc", "3"])
        .output()
        .unwrap();
    assert_eq!(
        failing.status.code(),
        Some(1),
        "failing verification exits 1"
    );
    let usage = std::process::Command::new(bin)
        .args(["model", "verify"])
        .output()
        .unwrap();
    assert_eq!(usage.status.code(), Some(2), "usage error exits 2");
    pass("c15 frontend round trips (500 samples) and CLI exit codes");
}
