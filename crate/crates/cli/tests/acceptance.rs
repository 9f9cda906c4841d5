//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero when any fails. Every comparison is exact.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use annuli_harmonicity::{different_identity_check, gauss_harmonicity, AnnulusMorphism, Convention};
use disc_morphisms::radial::Verdict;
use disc_morphisms::{classify_radiality, profile, radial_arithmetic_check, taylor_recenter, QPoly, ValuedSeries};
use lambda_calc::search::enumerate_simple_chains;
use lambda_calc::sweep::factorization_sweep;
use lambda_calc::{compose_chain, make_lambda, LambdaP};
use ramification::catalog::groups_up_to_16;
use ramification::subgroup::{all_subgroups, chief_series};
use ramification::sweep::{herbrand_sweep, tower_sweep, HerbrandCase, HerbrandOutcome, TowerCase};
use ramification::{
    canonical_tower, herbrand_galois, herbrand_relative, make_filtration_inertia, verify_tower, FiniteGroup,
    InertiaFunction, Subgroup,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use valuation_core::{int, rat, Exec, LogValue, Prime, Rational};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn lv(v: Rational) -> LogValue {
    LogValue::from_v(v)
}

// ------------------------------------------------------------------- 1

fn random_lambda(rng: &mut ChaCha8Rng, p: u64, n: usize) -> LambdaP {
    let mut vs: Vec<Rational> = Vec::new();
    while vs.len() < n {
        let q = rat(rng.gen_range(1..40), rng.gen_range(1..7));
        if !vs.contains(&q) {
            vs.push(q);
        }
    }
    let mut breaks: Vec<LogValue> = vs.into_iter().map(LogValue::from_v).collect();
    breaks.sort();
    let mut alphas = vec![0u32];
    for _ in 0..n {
        alphas.push(alphas.last().unwrap() + rng.gen_range(1..=2));
    }
    make_lambda(prime(p), breaks, alphas).unwrap()
}

fn factorization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cases: Vec<LambdaP> = (0..500)
        .map(|k| {
            let n = rng.gen_range(0..=4);
            random_lambda(&mut rng, [2, 3, 5][k % 3], n)
        })
        .collect();
    let outcomes = factorization_sweep(&cases, Exec::Parallel);
    if let Some((f, o)) = cases.iter().zip(&outcomes).find(|(_, o)| !o.passed()) {
        return Err(format!("{} fails: {o:?}", serde_json::to_string(f).unwrap()));
    }
    let identities: Vec<&LambdaP> = cases.iter().filter(|f| f.n_breaks() == 0).collect();
    ensure(identities.iter().all(|f| f.is_identity() && f.canonical_factorization().is_empty()), || {
        "an element without breaks has a non-empty factorization".into()
    })?;
    // the search only yields non-empty chains, so the identity is checked above
    let mut unique = 0;
    for f in cases.iter().filter(|f| (1..=3).contains(&f.n_breaks())) {
        let chains = enumerate_simple_chains(f, true).map_err(|e| e.to_string())?;
        ensure(chains == vec![f.canonical_factorization()], || {
            format!("{} has {} admissible chains", serde_json::to_string(f).unwrap(), chains.len())
        })?;
        unique += 1;
    }
    Ok(format!(
        "500 elements recompose from simple factors; {unique} with 1 to 3 breaks have a unique chain; {} identities factor as the empty chain",
        identities.len()
    ))
}

// --------------------------------------------------------------- 2, 3

struct Case {
    group: usize,
    p: Prime,
    inertia: InertiaFunction,
    admissible: bool,
}

fn is_p_power(n: usize, p: u64) -> bool {
    prime(p).log_exact(n as u64).is_some()
}

fn prime_divisors(n: usize) -> Vec<u64> {
    (2..=n as u64).filter(|&d| (n as u64).is_multiple_of(d) && (2..d).all(|q| d % q != 0)).collect()
}

/// `k` strictly increasing values in `(0, 1]`, the top forced to 1 when asked.
fn random_values(rng: &mut ChaCha8Rng, k: usize, top_is_one: bool) -> Vec<LogValue> {
    loop {
        let mut vs: Vec<Rational> = (0..k).map(|_| rat(rng.gen_range(1..=30), rng.gen_range(1..=4))).collect();
        if top_is_one {
            *vs.last_mut().unwrap() = int(0);
        }
        vs.sort();
        vs.dedup();
        if vs.len() == k {
            return vs.into_iter().rev().map(LogValue::from_v).collect();
        }
    }
}

/// Every group, chief series and prime divisor, with `assignments` value
/// choices each. Non-p-groups carry value 1 on the top layer.
fn filtration_cases(groups: &[FiniteGroup], rng: &mut ChaCha8Rng, assignments: usize, max_series: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let all = chief_series(g);
        let picked: Vec<&Vec<Subgroup>> = if all.len() <= max_series {
            all.iter().collect()
        } else {
            (0..max_series).map(|k| &all[k * all.len() / max_series]).collect()
        };
        for series in picked {
            for p in prime_divisors(g.order()) {
                let p_group = is_p_power(g.order(), p);
                let below_top = &series[series.len() - 2];
                for a in 0..assignments {
                    let values = random_values(rng, series.len() - 1, !p_group || a == 0);
                    out.push(Case {
                        group: gi,
                        p: prime(p),
                        inertia: make_filtration_inertia(g, series, &values).unwrap(),
                        admissible: p_group || is_p_power(below_top.len(), p),
                    });
                }
            }
        }
    }
    out
}

fn catalog() -> Vec<FiniteGroup> {
    groups_up_to_16().unwrap().into_iter().map(|(_, g)| g).collect()
}

fn herbrand_in_lambda() -> Check {
    let groups = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cases = filtration_cases(&groups, &mut rng, 3, usize::MAX);
    let sweep: Vec<HerbrandCase> =
        cases.iter().map(|c| HerbrandCase { group: &groups[c.group], inertia: c.inertia.clone(), p: c.p }).collect();
    let outcomes = herbrand_sweep(&sweep, Exec::Parallel);
    let mut admissible = 0;
    for (c, o) in cases.iter().zip(&outcomes) {
        if c.admissible {
            admissible += 1;
            ensure(matches!(o, HerbrandOutcome::Lambda { degrees_match: true, .. }), || {
                format!("group of order {} at p = {}: {o:?}", groups[c.group].order(), c.p.get())
            })?;
        } else {
            ensure(*o == HerbrandOutcome::PGroupViolation, || format!("inadmissible case gave {o:?}"))?;
        }
    }
    Ok(format!(
        "{} groups, {} filtrations: {admissible} in Λ_p with matching degrees, {} rejected as non-p jumps",
        groups.len(),
        cases.len(),
        cases.len() - admissible
    ))
}

fn towers() -> Check {
    let one = LogValue::one();
    let s3 = FiniteGroup::dihedral(3).unwrap();
    let s3_inertia =
        InertiaFunction::new(vec![LogValue::zero(), lv(int(1)), lv(int(1)), one.clone(), one.clone(), one]);
    for t in [3, 4, 5] {
        let h = Subgroup::from_elements(&s3, &[0, t]).unwrap();
        let tower = canonical_tower(&s3, &s3_inertia, &h, prime(3)).map_err(|e| e.to_string())?;
        let total = herbrand_relative(&s3, &s3_inertia, &h, prime(3)).map_err(|e| e.to_string())?;
        let step = tower.steps.first().ok_or("S3 tower has no step")?;
        ensure(tower.steps.len() == 1 && step.is_simple() && step.degree() == 3, || {
            format!("S3 steps {:?}", tower.steps)
        })?;
        ensure(step.breaks() == [lv(int(1))], || format!("S3 break {:?}", step.breaks()))?;
        ensure(verify_tower(&tower, &total).passed(), || "S3 tower report fails".into())?;
    }

    let v4 = FiniteGroup::elementary_abelian(2, 2).unwrap();
    let chain = vec![Subgroup::trivial(&v4), Subgroup::from_elements(&v4, &[0, 2]).unwrap(), Subgroup::whole(&v4)];
    let i = make_filtration_inertia(&v4, &chain, &[lv(int(2)), lv(int(1))]).unwrap();
    let tower = canonical_tower(&v4, &i, &Subgroup::trivial(&v4), prime(2)).map_err(|e| e.to_string())?;
    let total = herbrand_galois(&v4, &i, prime(2)).map_err(|e| e.to_string())?;
    ensure(tower.chain == chain, || "Klein chain differs".into())?;
    ensure(tower.steps.iter().all(|s| s.is_simple() && s.degree() == 2 && s.breaks() == [lv(int(2))]), || {
        format!("Klein steps {:?}", tower.steps)
    })?;
    ensure(compose_chain(prime(2), &tower.steps).ok() == Some(total.clone()), || {
        "Klein steps do not recompose".into()
    })?;
    ensure(verify_tower(&tower, &total).passed(), || "Klein tower report fails".into())?;

    let groups = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cases: Vec<Case> = filtration_cases(&groups, &mut rng, 1, 12).into_iter().filter(|c| c.admissible).collect();
    let subgroups: Vec<Vec<Subgroup>> = groups.iter().map(all_subgroups).collect();
    let sweep: Vec<TowerCase> = cases
        .iter()
        .flat_map(|c| {
            subgroups[c.group].iter().map(|h| TowerCase {
                group: &groups[c.group],
                inertia: c.inertia.clone(),
                subgroup: h.clone(),
                p: c.p,
            })
        })
        .collect();
    let reports = tower_sweep(&sweep, Exec::Parallel);
    for (c, r) in sweep.iter().zip(&reports) {
        let r = r.as_ref().map_err(|e| e.to_string())?;
        ensure(r.passed(), || {
            format!("subgroup {:?} of a group of order {}: {r:?}", c.subgroup.elements(), c.group.order())
        })?;
    }
    Ok(format!("S3 and Klein towers match; {} generated (filtration, subgroup) towers verified", sweep.len()))
}

// --------------------------------------------------------------- 4, 5

fn skeleton(p: u64, vs: &[(u32, Rational)]) -> ValuedSeries {
    ValuedSeries::skeleton(prime(p), LogValue::one(), vs.iter().cloned().collect()).unwrap()
}

fn exact(p: u64, q: QPoly) -> ValuedSeries {
    ValuedSeries::exact(prime(p), LogValue::one(), q).unwrap()
}

fn single_break_family() -> Check {
    let mut n = 0;
    for (p, alpha) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let d = p.pow(alpha) as u32;
        for v1 in [rat(1, 2), rat(1, 3), rat(9, 10)] {
            let f = skeleton(p, &[(1, v1.clone()), (d, int(0))]);
            let breaks = profile(&f).map_err(|e| e.to_string())?.breaks().to_vec();
            let want = lv(&v1 / int(i64::from(d) - 1));
            ensure(breaks == [want], || format!("p = {p}, d = {d}, v = {v1}: breaks {breaks:?}"))?;
            let cert = classify_radiality(&f).map_err(|e| e.to_string())?;
            ensure(cert.is_simple(), || format!("p = {p}, d = {d}: {:?}", cert.verdict))?;
            ensure(radial_arithmetic_check(&f, &cert).map_err(|e| e.to_string())?.passed(), || {
                "arithmetic check".into()
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} members have one break at |f_1|^(1/(d-1)) and are radial simple"))
}

fn translated_power() -> Check {
    let mut centers_checked = 0;
    for p in [2u64, 3, 5] {
        let q = QPoly::new([(0, int(1)), (1, int(1))]).pow(p as u32).sub(&QPoly::constant(int(1)));
        let f = exact(p, q);
        let cert = classify_radiality(&f).map_err(|e| e.to_string())?;
        ensure(cert.is_simple(), || format!("p = {p}: {:?}", cert.verdict))?;
        ensure(cert.breaks == [lv(rat(1, p as i64 - 1))], || format!("p = {p}: breaks {:?}", cert.breaks))?;
        let base = profile(&f).map_err(|e| e.to_string())?;
        let centers: Vec<Rational> = (0..24)
            .map(|k| {
                let num = k * p as i64 + 1 + (k % (p as i64 - 1).max(1));
                let den = (k % 5) * p as i64 + 1;
                rat(num, den) * int(p.pow(1 + (k % 3) as u32) as i64)
            })
            .collect();
        let profiles = Exec::Parallel.map(&centers, |a| taylor_recenter(&f, a).and_then(|g| profile(&g)));
        for (a, pr) in centers.iter().zip(profiles) {
            ensure(pr.map_err(|e| e.to_string())? == base, || format!("p = {p}: profile moves at center {a}"))?;
            centers_checked += 1;
        }
    }
    let weak = [skeleton(3, &[(1, rat(1, 2)), (6, int(0))]), exact(3, QPoly::new([(1, int(3)), (6, int(1))]))];
    for f in &weak {
        let v = classify_radiality(f).map_err(|e| e.to_string())?.verdict;
        ensure(v == Verdict::WeaklyRadial { n: 1, radial_up_to: 0 }, || format!("αT + T^6 gave {v:?}"))?;
    }
    Ok(format!(
        "(T+1)^p - 1 radial simple with break |p|^(1/(p-1)) for p = 2, 3, 5; profile fixed at {centers_checked} centers; αT + T^6 weakly 1-radial, not 1-radial"
    ))
}

// ------------------------------------------------------------ 6, 7, 8

fn suite(p: u64) -> Vec<(String, Vec<(u32, Rational)>)> {
    let q = p as u32;
    let mut out: Vec<(String, Vec<(u32, Rational)>)> = (1..=6).map(|d| (format!("T^{d}"), vec![(d, int(0))])).collect();
    out.push(("T^p".into(), vec![(q, int(0))]));
    out.push(("T^p + cT".into(), vec![(q, int(0)), (1, rat(1, 2))]));
    for (v1, v2) in [(rat(1, 4), rat(1, 2)), (rat(1, 3), rat(3, 4)), (rat(1, 8), rat(1, 2))] {
        out.push((format!("T^p² + c1 T^p + c2 T ({v1}, {v2})"), vec![(q * q, int(0)), (q, v1), (1, v2)]));
    }
    out
}

fn different_identity() -> Check {
    let mut n = 0;
    for p in [2u64, 3] {
        for (name, terms) in suite(p) {
            let vals: BTreeMap<i64, Rational> = terms.iter().map(|(k, v)| (i64::from(*k), v.clone())).collect();
            let f = AnnulusMorphism::skeleton(prime(p), LogValue::zero(), vals)
                .and_then(|f| f.germ())
                .map_err(|e| format!("p = {p}, {name}: {e}"))?;
            let r = different_identity_check(&f).map_err(|e| format!("p = {p}, {name}: {e}"))?;
            ensure(r.passed(), || format!("p = {p}, {name}: {:?}", r.violation))?;
            n += 1;
        }
    }
    Ok(format!("multiplicative and differentiated forms hold on {n} annulus germs"))
}

fn riemann_hurwitz() -> Check {
    let mut n = 0;
    for p in [2u64, 3, 5] {
        for (name, terms) in suite(p).into_iter().filter(|(n, _)| n.starts_with("T^p")) {
            let f = skeleton(p, &terms);
            let r =
                gauss_harmonicity(&f, Convention::Plus, Exec::Parallel).map_err(|e| format!("p = {p}, {name}: {e}"))?;
            let rh = &r.riemann_hurwitz;
            ensure(rh.holds, || format!("p = {p}, {name}: {rh:?}"))?;
            n += 1;
        }
    }
    Ok(format!("2d - 2 equals the sum of σ over directions in all {n} cases (p = 2, 3, 5)"))
}

fn single_convention() -> Check {
    let mut decided = 0;
    let mut both = 0;
    for p in [2u64, 3] {
        for (name, terms) in suite(p) {
            let r = gauss_harmonicity(&skeleton(p, &terms), Convention::Plus, Exec::Parallel)
                .map_err(|e| format!("p = {p}, {name}: {e}"))?;
            ensure(r.unmatched_flows.is_empty(), || format!("p = {p}, {name}: unmatched {:?}", r.unmatched_flows))?;
            let holding: Vec<Convention> = r.conventions.iter().filter(|c| c.holds).map(|c| c.convention).collect();
            if r.gauss_profile.breaks().is_empty() {
                ensure(holding.len() == 2, || format!("p = {p}, {name}: {holding:?} without breaks"))?;
                both += 1;
            } else {
                ensure(r.consistent == Some(Convention::Plus), || format!("p = {p}, {name}: {holding:?}"))?;
                decided += 1;
            }
        }
    }
    ensure(decided > 0, || "no case separates the conventions".into())?;
    Ok(format!("plus is the only consistent sign on {decided} cases with breaks; {both} break-free cases fit either"))
}

// ------------------------------------------------------------------- 9

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn ramicalc(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ramicalc")).args(args).env_remove("RAMICALC_P").output().unwrap()
}

fn determinism_and_schema() -> Check {
    let commands = [
        "lambda-factor",
        "lambda-compose",
        "herbrand",
        "tower",
        "polygon",
        "profile",
        "radial",
        "sigma",
        "different-check",
        "harmonicity",
    ];
    for cmd in commands {
        let input = fixtures().join("fixtures").join(format!("{cmd}.json"));
        let input = input.to_str().unwrap();
        let (a, b) = (ramicalc(&[cmd, input]), ramicalc(&[cmd, input]));
        ensure(a.status.code() == Some(0), || format!("{cmd} exits {:?}", a.status.code()))?;
        ensure(a.stdout == b.stdout, || format!("{cmd} output differs between runs"))?;
        let golden = std::fs::read(fixtures().join("golden").join(format!("{cmd}.json"))).map_err(|e| e.to_string())?;
        ensure(a.stdout == golden, || format!("{cmd} differs from its golden file"))?;
        let echo = serde_json::from_slice::<Value>(&a.stdout).map_err(|e| e.to_string())?["input"].to_string();
        ensure(ramicalc(&[cmd, &echo]).stdout == a.stdout, || format!("{cmd} echo does not reproduce the report"))?;
    }
    let bad = [
        ("polygon", "{\"p\":2,"),
        ("polygon", r#"{"p":4,"coeffs":{"1":"1"}}"#),
        ("lambda-factor", r#"{"p":2,"breaks_v":["1"],"alphas":[0,1],"extra":1}"#),
        ("herbrand", r#"{"p":2,"group":"Nope","inertia_v":["inf"]}"#),
    ];
    for (cmd, text) in bad {
        let out = ramicalc(&[cmd, text]);
        ensure(out.status.code() == Some(2) && out.stdout.is_empty(), || {
            format!("{cmd} {text} exits {:?}", out.status.code())
        })?;
    }
    Ok(format!(
        "{} subcommands byte-identical across runs and to golden files; {} malformed inputs exit 2",
        commands.len(),
        bad.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("canonical factorization in Λ_p", factorization),
        ("Herbrand functions of small groups", herbrand_in_lambda),
        ("canonical towers", towers),
        ("single-break profile family", single_break_family),
        ("translated p-th power and weak radiality", translated_power),
        ("different identity on annuli", different_identity),
        ("Riemann-Hurwitz at the Gauss point", riemann_hurwitz),
        ("one sign convention", single_convention),
        ("CLI determinism and schema errors", determinism_and_schema),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({ms} ms)", k + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {reason} ({ms} ms)", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} passed in {:.1} s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
