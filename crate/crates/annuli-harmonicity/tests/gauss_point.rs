//! Directions at `η_{0,1}`: per-direction data against exact recentering and
//! polynomial reversal, Riemann–Hurwitz, and the layer identities.

use std::collections::BTreeMap;

use annuli_harmonicity::{
    critical_residues, direction_data, gauss_harmonicity, AnnulusError, Convention, Direction, HarmonicityReport,
};
use disc_morphisms::{profile_at_point, QPoly, ValuedSeries};
use lambda_calc::Monomial;
use num_bigint::BigInt;
use num_traits::Zero;
use valuation_core::{int, padic_valuation, rat, Exec, LogValue, Prime, Rational};

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn skeleton(p: u64, terms: &[(u32, Rational)]) -> ValuedSeries {
    ValuedSeries::skeleton(prime(p), LogValue::one(), terms.iter().cloned().collect()).unwrap()
}

fn exact(p: u64, terms: &[(u32, i64)]) -> ValuedSeries {
    ValuedSeries::exact(prime(p), LogValue::one(), QPoly::new(terms.iter().map(|(k, c)| (*k, int(*c))))).unwrap()
}

fn suite(p: u64) -> Vec<(String, ValuedSeries)> {
    let q = p as u32;
    let mut out: Vec<(String, ValuedSeries)> =
        (1..=6).map(|d| (format!("T^{d}"), skeleton(p, &[(d, int(0))]))).collect();
    out.push(("T^p".into(), skeleton(p, &[(q, int(0))])));
    out.push(("T^p + cT".into(), skeleton(p, &[(q, int(0)), (1, rat(1, 2))])));
    for (v1, v2) in [(rat(1, 4), rat(1, 2)), (rat(1, 3), rat(3, 4)), (rat(1, 8), rat(1, 2))] {
        let f = skeleton(p, &[(q * q, int(0)), (q, v1.clone()), (1, v2.clone())]);
        out.push((format!("T^p² + c₁T^p + c₂T, v = {v1}, {v2}"), f));
    }
    out
}

fn report(f: &ValuedSeries) -> HarmonicityReport {
    gauss_harmonicity(f, Convention::Plus, Exec::Parallel).unwrap()
}

// ------------------------------------------------------------ oracles

/// `(index, valuation)` dominating near `|U| → 1⁻`, ties to the smaller index.
fn dominant_inside(terms: &BTreeMap<u32, Rational>) -> (u32, Rational) {
    terms.iter().map(|(k, v)| (*k, v.clone())).min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0))).unwrap()
}

fn valuations(q: &QPoly, p: Prime) -> BTreeMap<u32, Rational> {
    q.coeffs().iter().map(|(k, c)| (*k, int(padic_valuation(c, p).unwrap()))).collect()
}

/// `f(r + U) − f(r)` by binomial expansion.
fn recenter(q: &QPoly, r: i64) -> QPoly {
    let mut out: BTreeMap<u32, Rational> = BTreeMap::new();
    for (k, c) in q.coeffs() {
        for i in 1..=*k {
            let b = num_integer::binomial(BigInt::from(*k), BigInt::from(i));
            *out.entry(i).or_insert_with(Rational::zero) += c * Rational::from(b) * int(r).pow((k - i) as i32);
        }
    }
    QPoly::new(out)
}

/// `(d_r, σ_r)` for the residue direction through `r`.
fn residue_oracle(q: &QPoly, r: i64, p: Prime) -> (u64, i64) {
    let g = recenter(q, r);
    let (d, _) = dominant_inside(&valuations(&g, p));
    let (s, _) = dominant_inside(&valuations(&g.derivative(), p));
    (u64::from(d), i64::from(s))
}

/// `(d_∞, σ_∞)` from `V = 1/f(1/U) = U^n / F(U)` and
/// `dV/dU = U^{n−1}·G(U) / F(U)²`, with `F`, `G` the reversals of `f`, `f'`.
fn infinity_oracle(vals: &BTreeMap<u32, Rational>, p: Prime) -> (u64, i64) {
    let n = *vals.keys().max().unwrap();
    let reversed: BTreeMap<u32, Rational> = vals.iter().map(|(k, v)| (n - k, v.clone())).collect();
    let derivative_reversed: BTreeMap<u32, Rational> = vals
        .iter()
        .filter(|(k, _)| **k > 0)
        .map(|(k, v)| (n - k, v + int(padic_valuation(&int(i64::from(*k)), p).unwrap())))
        .collect();
    let (f_dom, _) = dominant_inside(&reversed);
    let (g_dom, _) = dominant_inside(&derivative_reversed);
    (u64::from(n - f_dom), i64::from(n - 1 + g_dom) - 2 * i64::from(f_dom))
}

// ------------------------------------------------------- direction data

#[test]
fn direction_examples() {
    let f = skeleton(2, &[(2, int(0)), (1, rat(1, 2))]);
    let t = direction_data(&f, &Direction::residue(int(1))).unwrap();
    assert_eq!((t.degree, t.sigma), (2, 0));
    assert_eq!(t.flows.flows.len(), 1);
    assert_eq!(t.flows.flows[0].pieces().last().unwrap(), &Monomial::new(rat(1, 2), int(-1)));

    let square = skeleton(2, &[(2, int(0))]);
    let inf = direction_data(&square, &Direction::Infinity).unwrap();
    assert_eq!((inf.degree, inf.sigma), (2, 1));

    for center in [Direction::residue(int(0)), Direction::residue(int(1)), Direction::Infinity] {
        let id = direction_data(&skeleton(3, &[(1, int(0))]), &center).unwrap();
        assert_eq!((id.degree, id.sigma), (1, 0));
        assert!(id.flows.flows.is_empty());
    }
}

#[test]
fn direction_errors() {
    let f = exact(3, &[(2, 1)]);
    assert!(matches!(direction_data(&f, &Direction::residue(rat(1, 3))), Err(AnnulusError::NotOnUnitCircle(_))));
    assert!(matches!(
        direction_data(&exact(3, &[(2, 3)]), &Direction::Infinity),
        Err(AnnulusError::NonFiniteAtGaussPoint(_))
    ));
    assert!(gauss_harmonicity(
        &exact(3, &[(2, 1), (1, 9)]).with_radius(LogValue::one()).unwrap(),
        Convention::Plus,
        Exec::Sequential
    )
    .is_ok());
    // a² + a + 1 divides the reduction of T³ + T² + T and has no root in F_2
    assert!(matches!(
        critical_residues(&exact(2, &[(3, 1), (2, 1), (1, 1)])),
        Err(AnnulusError::ResidueRootsOutsideFp { index: 0 })
    ));
    // the zeros of 5T⁴ + 5 have residues with a⁴ = −1, outside F_5
    assert!(matches!(
        critical_residues(&exact(5, &[(5, 1), (1, 5)])),
        Err(AnnulusError::ResidueRootsOutsideFp { index: 1 })
    ));
    // a skeleton whose reduction at a generic unit is not a monomial
    let tie = skeleton(3, &[(2, int(0)), (1, int(0))]);
    assert!(matches!(critical_residues(&tie), Err(AnnulusError::SkeletonTie { .. })));
}

/// Polynomials whose critical classes all lie in `F_p`.
fn exact_examples() -> Vec<(u64, Vec<(u32, i64)>)> {
    vec![
        (2, vec![(2, 1), (1, 1)]),
        (2, vec![(2, 1), (1, 2)]),
        (2, vec![(4, 1), (2, 2)]),
        (3, vec![(3, 1), (1, -1)]),
        (3, vec![(3, 1), (2, 3), (1, 3)]),
        (3, vec![(2, 1), (1, 1)]),
        (5, vec![(5, 1), (1, -5)]),
        (5, vec![(3, 1), (2, 3)]),
    ]
}

#[test]
fn exact_directions_match_recentering_and_reversal() {
    for (p, cs) in exact_examples() {
        let f = exact(p, &cs);
        let q = f.exact_poly().unwrap().clone();
        let critical = critical_residues(&f).unwrap();
        for r in 0..p {
            let data = direction_data(&f, &Direction::residue(int(r as i64))).unwrap();
            let (d, s) = residue_oracle(&q, r as i64, prime(p));
            assert_eq!((data.degree, data.sigma), (d, s), "p = {p}, {cs:?}, r = {r}");
            if !critical.contains(&r) {
                assert_eq!(s, 0, "p = {p}, {cs:?}: non-critical class {r} ramifies");
            }
        }
        let inf = direction_data(&f, &Direction::Infinity).unwrap();
        assert_eq!((inf.degree, inf.sigma), infinity_oracle(&valuations(&q, prime(p)), prime(p)), "p = {p}, {cs:?}");
    }
}

// ------------------------------------------------------------------ RH

#[test]
fn riemann_hurwitz_on_exact_polynomials() {
    for (p, cs) in exact_examples() {
        let f = exact(p, &cs);
        let q = f.exact_poly().unwrap().clone();
        let r = report(&f);
        assert!(r.riemann_hurwitz.holds, "p = {p}, {cs:?}: {:?}", r.riemann_hurwitz);
        // every class of F_p plus ∞, by the oracles alone
        let total: i64 = (0..p as i64).map(|a| residue_oracle(&q, a, prime(p)).1).sum::<i64>()
            + infinity_oracle(&valuations(&q, prime(p)), prime(p)).1;
        assert_eq!(total, 2 * i64::from(q.degree().unwrap()) - 2, "p = {p}, {cs:?}");
    }
}

#[test]
fn riemann_hurwitz_on_the_suite() {
    for p in [2u64, 3] {
        for (name, f) in suite(p) {
            let r = report(&f);
            let vals = f.valuations();
            let (_, s_inf) = infinity_oracle(&vals, prime(p));
            let (s0, _) = dominant_inside(
                &vals
                    .iter()
                    .map(|(k, v)| (k - 1, v + int(padic_valuation(&int(i64::from(*k)), prime(p)).unwrap())))
                    .collect(),
            );
            assert_eq!(r.riemann_hurwitz.sigma_sum, i64::from(s0) + s_inf, "p = {p}, {name}");
            assert_eq!(r.riemann_hurwitz.generic_sigma, 0);
            assert!(r.riemann_hurwitz.holds, "p = {p}, {name}: {:?}", r.riemann_hurwitz);
        }
    }
}

#[test]
fn riemann_hurwitz_examples() {
    let id = report(&skeleton(2, &[(1, int(0))]));
    assert_eq!(id.riemann_hurwitz.lhs, 0);
    assert!(id.directions.iter().all(|d| d.sigma == 0));

    let square = report(&skeleton(2, &[(2, int(0))]));
    let sigmas: Vec<(Direction, i64)> = square.directions.iter().map(|d| (d.direction.clone(), d.sigma)).collect();
    assert_eq!(sigmas, vec![(Direction::residue(int(0)), 1), (Direction::Infinity, 1)]);
    assert_eq!(square.generic.data.sigma, 0);
    assert_eq!(square.riemann_hurwitz.lhs, 2);
}

// ------------------------------------------------------------ layers

#[test]
fn layer_example_selects_plus() {
    let f = skeleton(2, &[(2, int(0)), (1, rat(1, 2))]);
    let r = report(&f);
    let slopes: Vec<Vec<Rational>> = r.directions.iter().map(|d| d.slopes.clone()).collect();
    assert_eq!(slopes, vec![vec![int(-1)], vec![int(1)]]);
    assert_eq!(r.generic.data.slopes, vec![int(-1)]);
    let plus = &r.conventions[0];
    assert_eq!(plus.convention, Convention::Plus);
    assert_eq!(
        (plus.layers[1].lhs.clone(), plus.layers[1].rhs.clone(), plus.layers[1].generic.clone()),
        (int(2), int(2), int(0))
    );
    assert_eq!((plus.layers[0].lhs.clone(), plus.layers[0].rhs.clone()), (int(0), int(0)));
    let minus = &r.conventions[1];
    assert_eq!(minus.layers[1].generic, int(-2));
    assert!(!minus.holds);
    assert_eq!(r.consistent, Some(Convention::Plus));
    assert!(r.passed());
    let asked_minus = gauss_harmonicity(&f, Convention::Minus, Exec::Sequential).unwrap();
    assert!(!asked_minus.passed());
}

#[test]
fn one_convention_across_the_suite() {
    let mut named = Vec::new();
    for p in [2u64, 3] {
        for (name, f) in suite(p) {
            let r = report(&f);
            assert!(r.unmatched_flows.is_empty(), "p = {p}, {name}: {:?}", r.unmatched_flows);
            let holding: Vec<Convention> = r.conventions.iter().filter(|c| c.holds).map(|c| c.convention).collect();
            assert!(holding.contains(&Convention::Plus), "p = {p}, {name}: {:?}", r.conventions);
            if r.gauss_profile.breaks().is_empty() {
                // no layer above 0, so the sign never enters
                assert_eq!(holding.len(), 2, "p = {p}, {name}");
            } else {
                assert_eq!(r.consistent, Some(Convention::Plus), "p = {p}, {name}");
                named.push(name);
            }
        }
    }
    assert!(named.len() >= 8);
}

#[test]
fn exact_polynomials_satisfy_the_layers() {
    for (p, cs) in exact_examples() {
        let r = report(&exact(p, &cs));
        assert!(r.passed(), "p = {p}, {cs:?}: {:?} {:?}", r.conventions, r.unmatched_flows);
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    for p in [2u64, 3] {
        for (_, f) in suite(p) {
            let a = gauss_harmonicity(&f, Convention::Plus, Exec::Sequential).unwrap();
            let b = gauss_harmonicity(&f, Convention::Plus, Exec::Parallel).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }
}

// --------------------------------------------------- generic directions

/// Valuations of `f(a + U) − f(a)` at a unit `a` for generic skeleton
/// coefficients whose recentered norms have a unique dominant term.
fn generic_recentered(f: &ValuedSeries, p: Prime) -> BTreeMap<u32, Rational> {
    let vals = f.valuations();
    let top = *vals.keys().max().unwrap();
    (1..=top)
        .filter_map(|i| {
            vals.iter()
                .filter(|(k, _)| **k >= i)
                .map(|(k, v)| {
                    let b = num_integer::binomial(BigInt::from(*k), BigInt::from(i));
                    v + int(padic_valuation(&Rational::from(b), p).unwrap())
                })
                .min()
                .map(|w| (i, w))
        })
        .collect()
}

#[test]
fn generic_flows_are_breaks_over_rho() {
    for p in [2u64, 3] {
        for (name, f) in suite(p) {
            let r = report(&f);
            let breaks: Vec<Rational> =
                r.gauss_profile.breaks().iter().map(|b| b.finite_v().unwrap().clone()).collect();
            assert!(r.generic.matches_closed_form, "p = {p}, {name}");
            assert_eq!(r.generic.representative, Some(int(1)));
            let data = &r.generic.data;
            assert_eq!(data.flows.flows.len(), breaks.len());
            for (flow, b) in data.flows.flows.iter().zip(&breaks) {
                assert_eq!(flow.pieces().last().unwrap(), &Monomial::new(b.clone(), int(-1)), "p = {p}, {name}");
            }
            assert!(data.slopes.iter().all(|s| *s == int(-1)));
            // pointwise: profile of the recentered series at radius ρ
            let g = ValuedSeries::skeleton(prime(p), LogValue::one(), generic_recentered(&f, prime(p))).unwrap();
            let inner = breaks.last().cloned().unwrap_or(int(2));
            let inner = data.flows.window_lo.v().cloned().map_or(inner.clone(), |w| w.min(inner));
            for k in 1..6 {
                let x = &inner * rat(k, 6);
                let prof = profile_at_point(&g, &LogValue::from_v(x.clone())).unwrap();
                let got: Vec<Rational> = prof.breaks().iter().map(|b| b.finite_v().unwrap().clone()).collect();
                let want: Vec<Rational> = breaks.iter().map(|b| b - &x).collect();
                assert_eq!(got, want, "p = {p}, {name}, v(ρ) = {x}");
            }
        }
    }
}

#[test]
fn closed_form_is_used_when_every_class_is_critical() {
    let r = report(&exact(3, &[(3, 1), (1, -1)]));
    assert_eq!(critical_residues(&exact(3, &[(3, 1), (1, -1)])).unwrap(), vec![0, 1, 2]);
    assert_eq!(r.generic.representative, None);
    assert!(r.generic.matches_closed_form);
    assert!(r.passed());
}

#[test]
fn report_json_is_stable() {
    let r = report(&skeleton(2, &[(2, int(0)), (1, rat(1, 2))]));
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"consistent\":\"plus\""), "{text}");
    assert_eq!(text, serde_json::to_string(&report(&skeleton(2, &[(2, int(0)), (1, rat(1, 2))]))).unwrap());
    for (s, c) in [("plus", Convention::Plus), ("minus", Convention::Minus)] {
        assert_eq!(s.parse::<Convention>().unwrap(), c);
        assert_eq!(c.to_string(), s);
    }
    assert!("Plus".parse::<Convention>().is_err());
}
