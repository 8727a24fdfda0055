use proptest::prelude::*;
use proptest::strategy::ValueTree;
use pseudosym_expr::{parse_expression, Assignment, Atom, Context, Expr, RBig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
enum Node {
    Int(i64),
    Leaf(Atom),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
}

const ATOMS: [Atom; 5] = [
    Atom::Coord(0),
    Atom::Coord(1),
    Atom::Exp(0),
    Atom::Exp(1),
    Atom::Param(0),
];

fn ctx() -> Context {
    Context::new(&["x1", "x2"], &["a"])
}

fn node() -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![
        (-5i64..=5).prop_map(Node::Int),
        (0usize..ATOMS.len()).prop_map(|i| Node::Leaf(ATOMS[i])),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::Add(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::Sub(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::Mul(a.into(), b.into())),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::Div(a.into(), b.into())),
            (inner, -2i32..=3).prop_map(|(a, k)| Node::Pow(a.into(), k)),
        ]
    })
}

// None when a divisor is canonically zero.
fn build(n: &Node) -> Option<Expr> {
    Some(match n {
        Node::Int(v) => Expr::int(*v),
        Node::Leaf(a) => Expr::atom(*a),
        Node::Add(a, b) => build(a)? + build(b)?,
        Node::Sub(a, b) => build(a)? - build(b)?,
        Node::Mul(a, b) => build(a)? * build(b)?,
        Node::Div(a, b) => build(a)?.div_ref(&build(b)?).ok()?,
        Node::Pow(a, k) => {
            let base = build(a)?;
            if *k < 0 && base.is_zero() {
                return None;
            }
            base.powi(*k)
        }
    })
}

// Direct rational evaluation of the tree; None on a vanishing divisor.
fn eval_tree(n: &Node, at: &Assignment) -> Option<RBig> {
    Some(match n {
        Node::Int(v) => RBig::from(*v),
        Node::Leaf(a) => at[a].clone(),
        Node::Add(a, b) => eval_tree(a, at)? + eval_tree(b, at)?,
        Node::Sub(a, b) => eval_tree(a, at)? - eval_tree(b, at)?,
        Node::Mul(a, b) => eval_tree(a, at)? * eval_tree(b, at)?,
        Node::Div(a, b) => {
            let d = eval_tree(b, at)?;
            if d == RBig::ZERO {
                return None;
            }
            eval_tree(a, at)? / d
        }
        Node::Pow(a, k) => {
            let b = eval_tree(a, at)?;
            if *k < 0 && b == RBig::ZERO {
                return None;
            }
            b.pow(*k as isize)
        }
    })
}

fn random_point(rng: &mut ChaCha8Rng) -> Assignment {
    ATOMS
        .iter()
        .map(|&a| {
            let p: i64 = rng.random_range(1..=1_000_000);
            let q: i64 = rng.random_range(1..=1_000_000);
            (a, RBig::from(p) / RBig::from(q))
        })
        .collect()
}

fn pair() -> impl Strategy<Value = (Expr, Expr)> {
    (node(), node()).prop_filter_map("zero divisor", |(a, b)| Some((build(&a)?, build(&b)?)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn addition_and_multiplication_commute((a, b) in pair()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn arithmetic_is_associative_and_distributive((a, b) in pair(), c in node()) {
            let Some(c) = build(&c) else { return Ok(()); };
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn evaluation_is_a_homomorphism((a, b) in pair(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let at = random_point(&mut rng);
        let (Ok(va), Ok(vb)) = (a.evaluate_rational(&at), b.evaluate_rational(&at)) else {
            return Ok(());
        };
        prop_assert_eq!((&a * &b).evaluate_rational(&at).unwrap(), &va * &vb);
        prop_assert_eq!((&a + &b).evaluate_rational(&at).unwrap(), &va + &vb);
        prop_assert_eq!((&a - &b).evaluate_rational(&at).unwrap(), &va - &vb);
    }

    #[test]
    fn canonical_form_matches_tree_evaluation(n in node(), seed in any::<u64>()) {
        let Some(e) = build(&n) else { return Ok(()); };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let at = random_point(&mut rng);
            if let (Some(expected), Ok(got)) = (eval_tree(&n, &at), e.evaluate_rational(&at)) {
                prop_assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn partial_derivatives_commute(n in node()) {
        let Some(e) = build(&n) else { return Ok(()); };
        prop_assert_eq!(e.differentiate(0).differentiate(1), e.differentiate(1).differentiate(0));
    }

    #[test]
    fn print_then_parse_is_identity(n in node()) {
        let Some(e) = build(&n) else { return Ok(()); };
        let ctx = ctx();
        let text = e.render(&ctx);
        prop_assert_eq!(parse_expression(&text, &ctx).unwrap(), e);
    }

    #[test]
    fn sqrt_of_square_roundtrips(n in node()) {
        let Some(e) = build(&n) else { return Ok(()); };
        let sq = &e * &e;
        let r = sq.sqrt_exact().expect("square has a root");
        prop_assert!(r == e || r == -&e);
    }
}

// Zero testing agrees with 200 random evaluations of the unsimplified tree.
#[test]
fn zero_test_agrees_with_random_evaluation() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let identities = [
        "(x1 + exp(x2))^2 - x1^2 - 2*x1*exp(x2) - exp(2*x2)",
        "1/(1+exp(x1)) + exp(x1)/(1+exp(x1)) - 1",
        "a/(x1-x2) - a/(x2-x1) - 2*a*(x1-x2)/(x1-x2)^2",
    ];
    for src in identities {
        assert!(parse_expression(src, &ctx()).unwrap().is_zero(), "{src}");
    }
    for _ in 0..64 {
        let n = node().new_tree(&mut runner).unwrap().current();
        let Some(e) = build(&n) else { continue };
        let mut nonzero_seen = false;
        let mut samples = 0;
        while samples < 200 {
            let at = random_point(&mut rng);
            let Some(v) = eval_tree(&n, &at) else { continue };
            samples += 1;
            nonzero_seen |= v != RBig::ZERO;
        }
        assert_eq!(e.is_zero(), !nonzero_seen, "{:?}", n);
    }
}

fn assert_canonical(e: &Expr) {
    let g = pseudosym_expr::gcd::gcd(e.numerator(), e.denominator());
    assert!(g.is_one(), "not reduced: {e:?}");
    assert!(!e.denominator().leading_sign_negative(), "negative lead: {e:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn results_stay_canonical((a, b) in pair()) {
        let mut all = vec![&a + &b, &a - &b, &a * &b, a.differentiate(0), b.differentiate(1)];
        if !a.is_zero() {
            all.push(a.powi(-2));
        }
        for e in all {
            if !e.is_zero() {
                assert_canonical(&e);
            }
        }
        if let Ok(q) = a.div_ref(&b) {
            if !q.is_zero() {
                assert_canonical(&q);
            }
        }
    }
}
