mod common;

use common::{random_lambda, sample_point};
use lambda_calc::search::enumerate_simple_chains;
use lambda_calc::sweep::{closure_sweep, factorization_sweep};
use lambda_calc::{compose_chain, LambdaP, PiecewisePower};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use valuation_core::{int, Exec, LogValue, Prime, Rational};

const PRIMES: [u64; 3] = [2, 3, 5];

fn suite(seed: u64, count: usize, max_n: usize) -> Vec<LambdaP> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let p = PRIMES[rng.gen_range(0..3)];
            let n = rng.gen_range(0..=max_n);
            random_lambda(&mut rng, p, n)
        })
        .collect()
}

/// `max_i a_i r^{p^{α_{i-1}}}` with `a_i` recomputed from the product formula.
fn max_form(f: &LambdaP, r: &LogValue) -> LogValue {
    let p = f.p().get() as i64;
    let deg = |a: u32| p.pow(a);
    let n = f.n_breaks();
    let mut best = LogValue::zero();
    for i in 0..=n {
        let mut a = Rational::from_integer(0.into());
        for j in i..n {
            a += int(deg(f.alphas()[j + 1]) - deg(f.alphas()[j])) * f.breaks()[j].v().unwrap();
        }
        let term = LogValue::from_v(a).mul(&r.pow(&int(deg(f.alphas()[i]))).unwrap());
        best = best.max(term);
    }
    best
}

#[test]
fn max_form_agrees_with_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for f in suite(1, 100, 4) {
        for _ in 0..20 {
            let r = sample_point(&mut rng, &f);
            assert_eq!(f.eval(&r).unwrap(), max_form(&f, &r), "{f:?} at {r:?}");
        }
    }
}

#[test]
fn composition_is_closed_and_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut pairs = Vec::new();
    for _ in 0..500 {
        let p = PRIMES[rng.gen_range(0..3)];
        let (n1, n2) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        pairs.push((random_lambda(&mut rng, p, n1), random_lambda(&mut rng, p, n2)));
    }
    assert!(closure_sweep(&pairs, Exec::Parallel).into_iter().all(|ok| ok));
    for (f, g) in pairs.iter().take(100) {
        let h = f.compose(g).unwrap();
        for _ in 0..10 {
            let r = sample_point(&mut rng, g);
            assert_eq!(h.eval(&r).unwrap(), f.eval(&g.eval(&r).unwrap()).unwrap());
        }
    }
}

#[test]
fn identity_laws_and_double_inverse() {
    for f in suite(2, 50, 4) {
        let id = LambdaP::identity(f.p());
        assert_eq!(id.compose(&f).unwrap(), f);
        assert_eq!(f.compose(&id).unwrap(), f);
        let inv = f.invert();
        assert_eq!(inv.invert(), *f.func());
        let round = f.func().compose(&inv).unwrap();
        assert_eq!(round, PiecewisePower::identity(LogValue::zero(), LogValue::one()).unwrap());
        let back = inv.compose(f.func()).unwrap();
        assert_eq!(back, PiecewisePower::identity(LogValue::zero(), LogValue::one()).unwrap());
    }
}

#[test]
fn inverse_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f = lambda_calc::make_lambda(Prime::new(2).unwrap(), vec![LogValue::from_v(int(1))], vec![0, 1]).unwrap();
    let g = f.invert();
    for _ in 0..10 {
        let r = sample_point(&mut rng, &f);
        assert_eq!(f.eval(&g.eval(&r).unwrap()).unwrap(), r);
    }
}

#[test]
fn factorization_recomposes() {
    let cases = suite(3, 500, 4);
    let seq = factorization_sweep(&cases, Exec::Sequential);
    let par = factorization_sweep(&cases, Exec::Parallel);
    assert_eq!(seq, par);
    assert!(seq.iter().all(|o| o.passed()));
}

#[test]
fn factorization_is_unique_among_chains() {
    for f in suite(4, 60, 3).into_iter().filter(|f| f.n_breaks() >= 2) {
        let chains = enumerate_simple_chains(&f, true).unwrap();
        assert_eq!(chains, vec![f.canonical_factorization()], "{f:?}");
    }
}

#[test]
fn chain_condition_is_what_makes_it_unique() {
    // without the chain condition some inputs admit other recomposing chains
    let mut extra = 0;
    for f in suite(5, 40, 3).into_iter().filter(|f| f.n_breaks() >= 2) {
        let all = enumerate_simple_chains(&f, false).unwrap();
        assert!(all.contains(&f.canonical_factorization()));
        for c in &all {
            assert_eq!(compose_chain(f.p(), c).unwrap(), f);
        }
        extra += all.len() - 1;
    }
    assert!(extra > 0);
}

#[test]
fn trivial_factorizations() {
    let p = Prime::new(3).unwrap();
    assert!(LambdaP::identity(p).canonical_factorization().is_empty());
    let f = lambda_calc::make_lambda(p, vec![LogValue::from_v(int(2))], vec![0, 2]).unwrap();
    assert_eq!(f.canonical_factorization(), vec![f.clone()]);
    assert!(!LambdaP::identity(p).is_simple());
}
