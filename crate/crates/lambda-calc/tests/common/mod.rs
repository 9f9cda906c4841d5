use lambda_calc::{make_lambda, LambdaP};
use rand::Rng;
use valuation_core::{rat, LogValue, Prime};

/// Random element of `Λ_p` with `n` breaks; consecutive α differ by 1 or 2.
#[allow(dead_code)]
pub fn random_lambda<R: Rng>(rng: &mut R, p: u64, n: usize) -> LambdaP {
    let p = Prime::new(p).unwrap();
    let mut vs: Vec<(i64, i64)> = Vec::new();
    while vs.len() < n {
        let cand = (rng.gen_range(1..40), rng.gen_range(1..7));
        let q = rat(cand.0, cand.1);
        if !vs.iter().any(|&(a, b)| rat(a, b) == q) {
            vs.push(cand);
        }
    }
    let mut breaks: Vec<LogValue> = vs.into_iter().map(|(a, b)| LogValue::from_v(rat(a, b))).collect();
    breaks.sort();
    let mut alphas = vec![0u32];
    for _ in 0..n {
        let step = rng.gen_range(1..=2);
        alphas.push(alphas.last().unwrap() + step);
    }
    make_lambda(p, breaks, alphas).unwrap()
}

/// A sample point in `[0,1]`, including the ends and the breaks of `f`.
#[allow(dead_code)]
pub fn sample_point<R: Rng>(rng: &mut R, f: &LambdaP) -> LogValue {
    match rng.gen_range(0..10) {
        0 => LogValue::zero(),
        1 => LogValue::one(),
        2 if f.n_breaks() > 0 => f.breaks()[rng.gen_range(0..f.n_breaks())].clone(),
        _ => LogValue::from_v(rat(rng.gen_range(1..200), rng.gen_range(1..9))),
    }
}
