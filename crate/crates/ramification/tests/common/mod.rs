#![allow(dead_code)]

use ramification::subgroup::chief_series;
use ramification::{make_filtration_inertia, FiniteGroup, InertiaFunction, Subgroup};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use valuation_core::{rat, LogValue, Prime};

pub struct FiltrationCase {
    pub group: usize,
    pub p: Prime,
    pub chain: Vec<Subgroup>,
    pub inertia: InertiaFunction,
    /// Every jump below 1 happens inside a p-group.
    pub admissible: bool,
}

fn is_p_power(n: usize, p: u64) -> bool {
    Prime::new(p).unwrap().log_exact(n as u64).is_some()
}

pub fn prime_divisors(n: usize) -> Vec<u64> {
    (2..=n as u64).filter(|&d| (n as u64).is_multiple_of(d) && (2..d).all(|q| d % q != 0)).collect()
}

/// `k` strictly increasing values in `(0, 1]`; the last is 1 when `top_is_one`.
pub fn random_values(rng: &mut ChaCha8Rng, k: usize, top_is_one: bool) -> Vec<LogValue> {
    loop {
        let mut vs: Vec<_> = (0..k).map(|_| rat(rng.gen_range(1..=30), rng.gen_range(1..=4))).collect();
        if top_is_one {
            *vs.last_mut().unwrap() = rat(0, 1);
        }
        vs.sort();
        vs.dedup();
        if vs.len() == k && (top_is_one || vs[0] > rat(0, 1)) {
            return vs.into_iter().rev().map(LogValue::from_v).collect();
        }
    }
}

/// At most `cap` series spread evenly over the sorted list.
pub fn spread<T: Clone>(all: &[T], cap: usize) -> Vec<T> {
    if all.len() <= cap {
        return all.to_vec();
    }
    (0..cap).map(|k| all[k * all.len() / cap].clone()).collect()
}

/// For every group, every chief series (at most `max_series` of them) and
/// every prime dividing the order, `assignments` random value choices. The
/// top value is forced to 1 when the group is not a p-group, otherwise it
/// is 1 for the first choice only.
pub fn filtration_suite(
    groups: &[FiniteGroup],
    rng: &mut ChaCha8Rng,
    assignments: usize,
    max_series: usize,
) -> Vec<FiltrationCase> {
    let mut out = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        for series in spread(&chief_series(g), max_series) {
            let k = series.len() - 1;
            for p in prime_divisors(g.order()) {
                let p_group = is_p_power(g.order(), p);
                let below_top = &series[series.len().saturating_sub(2)];
                for a in 0..assignments {
                    let top_is_one = !p_group || a == 0;
                    let values = random_values(rng, k, top_is_one);
                    let inertia = make_filtration_inertia(g, &series, &values).expect("valid filtration");
                    let admissible = p_group || is_p_power(below_top.len(), p);
                    out.push(FiltrationCase {
                        group: gi,
                        p: Prime::new(p).unwrap(),
                        chain: series.clone(),
                        inertia,
                        admissible,
                    });
                }
            }
        }
    }
    out
}
