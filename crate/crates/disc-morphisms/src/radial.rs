//! Deciding (weak) n-radiality of a disc morphism from exact valuations.
//!
//! Let `P` be the profile on `[0, R]` with dominating indices
//! `i_1 < … < i_m` and breaks `r_1 < … < r_{m-1}` (`r_0 = 0`, `r_m = R`).
//! For a center of norm `τ`, the coefficient of `U^i` after recentering has
//! norm at most `max_j |C(i+j, j)|·τ^j·|f_{i+j}|`, with equality at generic
//! centers. Letting `τ → R`, the recentered profiles all agree with `P` on
//! `(s, R)` exactly when no monomial `|C(i+j, j)|·|f_{i+j}|·R^j·s^i` with
//! `j ≥ 1` exceeds `P` there. With `s*` the supremum of the radii where one
//! does, `f` is k-radial iff `s* < r_{m-k+1}`, its border is
//! `max(s*, r_{m-k})`, and `f` is radial iff `s* = 0`.
//!
//! Weak n-radiality additionally needs the coefficient of the n-th index
//! from the top to have constant norm, and the top n dominating indices of
//! the generic recentered profile to be those of `P` for every `τ < R`. The
//! second condition is checked on all events of a [`Sheet`] in `v(τ)`.

use lambda_calc::Monomial;
use num_traits::Zero;
use serde::Serialize;
use valuation_core::logvalue::v_string;
use valuation_core::{binomial_valuation, int, rational, LogValue, Rational};

use crate::sheet::Sheet;
use crate::{profile, DiscError, ValuedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// Every recentered profile equals the profile.
    Radial { characteristic: usize },
    /// Weakly `n`-radial and `radial_up_to`-radial, with `n` maximal.
    WeaklyRadial { n: usize, radial_up_to: usize },
}

/// A center norm `τ` and radius `s < τ` at which the monomial of index `i`
/// coming from `f_{i+j}` exceeds the profile, so generic centers of norm
/// `τ` change the profile at `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: u32,
    pub shift: u32,
    #[serde(with = "v_string")]
    pub center_radius: LogValue,
    #[serde(with = "v_string")]
    pub radius: LogValue,
    #[serde(with = "v_string")]
    pub monomial: LogValue,
    #[serde(with = "v_string")]
    pub profile: LogValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum WeakFailure {
    /// `|C(k, i)·f_k|·R^{k-i} > |f_i|` for the index `i` that has to stay fixed.
    CoefficientNotInvariant { index: u32, from: u32 },
    /// At generic centers of this norm the top dominating indices change.
    TopIndicesMove {
        #[serde(with = "v_string")]
        center_radius: LogValue,
        top: Vec<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialityCertificate {
    pub verdict: Verdict,
    pub dominating: Vec<u32>,
    #[serde(with = "valuation_core::logvalue::vec_v_string")]
    pub breaks: Vec<LogValue>,
    /// `s*`, zero when no monomial ever exceeds the profile.
    #[serde(with = "v_string")]
    pub exceed_sup: LogValue,
    /// `(k, border of k-radiality)` for each k-radiality that holds with a
    /// nonzero border.
    pub borders: Vec<(usize, Border)>,
    pub witness: Option<Witness>,
    /// Why weak `(radial_up_to + 1)`-radiality fails, when it is checked.
    pub weak_failure: Option<WeakFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Border(#[serde(with = "v_string")] pub LogValue);

impl RadialityCertificate {
    pub fn is_radial(&self) -> bool {
        matches!(self.verdict, Verdict::Radial { .. })
    }

    pub fn is_simple(&self) -> bool {
        self.verdict == Verdict::Radial { characteristic: 2 }
    }

    /// The indices the verdict fixes: all of them when radial, the top `n`
    /// when weakly n-radial.
    pub fn fixed_indices(&self) -> &[u32] {
        match self.verdict {
            Verdict::Radial { .. } => &self.dominating,
            Verdict::WeaklyRadial { n, .. } => &self.dominating[self.dominating.len() - n..],
        }
    }
}

struct Exceed {
    lo: Rational,
    hi: Option<Rational>,
    index: u32,
    shift: u32,
    line: Monomial,
    profile_piece: Monomial,
}

pub fn classify_radiality(f: &ValuedSeries) -> Result<RadialityCertificate, DiscError> {
    let p = f.p();
    let vals = f.valuations();
    let prof = profile(f)?;
    let m = prof.dominating.len();
    let v_r = f.radius().v().expect("nonzero radius").clone();
    // pieces of the profile in y = v(s), from s near R down to s near 0
    let mut ends: Vec<Option<Rational>> = vec![Some(v_r.clone())];
    ends.extend(prof.breaks().iter().rev().map(|b| b.v().cloned()));
    ends.push(None);
    let pieces: Vec<(Rational, Option<Rational>, &Monomial)> = prof
        .func
        .pieces()
        .iter()
        .rev()
        .zip(ends.windows(2))
        .map(|(mono, w)| (w[0].clone().expect("finite"), w[1].clone(), mono))
        .collect();

    let mut exceeds: Vec<Exceed> = Vec::new();
    for (&k, vk) in &vals {
        for i in 1..k {
            let j = k - i;
            let c = vk + int(i64::from(binomial_valuation(u64::from(k), u64::from(i), p)?)) + int(i64::from(j)) * &v_r;
            let line = Monomial::new(c, int(i64::from(i)));
            for (lo, hi, piece) in &pieces {
                let alpha = &line.coef_v - &piece.coef_v;
                let beta = &line.exp - &piece.exp;
                let (a, b) = if beta.is_zero() {
                    if alpha < Rational::zero() {
                        (lo.clone(), hi.clone())
                    } else {
                        continue;
                    }
                } else {
                    let root = -&alpha / &beta;
                    if beta > Rational::zero() {
                        (lo.clone(), Some(hi.clone().map_or(root.clone(), |h| h.min(root))))
                    } else {
                        (lo.clone().max(root), hi.clone())
                    }
                };
                if b.as_ref().is_none_or(|b| *b > a) {
                    exceeds.push(Exceed {
                        lo: a,
                        hi: b,
                        index: i,
                        shift: j,
                        line: line.clone(),
                        profile_piece: (*piece).clone(),
                    });
                }
            }
        }
    }
    let top_exceed = exceeds.iter().min_by(|a, b| a.lo.cmp(&b.lo));
    let exceed_sup = top_exceed.map_or_else(LogValue::zero, |e| LogValue::from_v(e.lo.clone()));
    let witness = top_exceed.map(|e| witness_for(e, &v_r));

    // r_0 = 0, r_1..r_{m-1} the breaks, r_m = R
    let r = |q: usize| -> LogValue {
        match q {
            0 => LogValue::zero(),
            q if q == m => f.radius().clone(),
            q => prof.breaks()[q - 1].clone(),
        }
    };
    let radial_up_to = (0..=m).rev().find(|&k| k == 0 || exceed_sup < r(m - k + 1)).expect("k = 0 qualifies");
    let borders = (1..=radial_up_to)
        .map(|k| (k, Border(exceed_sup.clone().max(r(m - k)))))
        .filter(|(_, b)| !b.0.is_zero())
        .collect();

    if exceed_sup.is_zero() {
        return Ok(RadialityCertificate {
            verdict: Verdict::Radial { characteristic: m },
            dominating: prof.dominating.clone(),
            breaks: prof.breaks().to_vec(),
            exceed_sup,
            borders,
            witness,
            weak_failure: None,
        });
    }
    let n = radial_up_to + 1;
    let weak_failure = if n > m { None } else { weak_check(f, &prof.dominating, prof.breaks(), n)? };
    let weak_n = if n <= m && weak_failure.is_none() { n } else { radial_up_to };
    Ok(RadialityCertificate {
        verdict: Verdict::WeaklyRadial { n: weak_n, radial_up_to },
        dominating: prof.dominating.clone(),
        breaks: prof.breaks().to_vec(),
        exceed_sup,
        borders,
        witness,
        weak_failure,
    })
}

fn witness_for(e: &Exceed, v_r: &Rational) -> Witness {
    let y = match &e.hi {
        Some(h) => (&e.lo + h) / int(2),
        None => &e.lo + int(1),
    };
    let gap = e.profile_piece.at_x(&y) - e.line.at_x(&y);
    let j = int(i64::from(e.shift));
    let step = (&gap / (int(2) * &j)).min((&y - v_r) / int(2));
    let x_tau = v_r + &step;
    let monomial = e.line.at_x(&y) + &j * &step;
    Witness {
        index: e.index,
        shift: e.shift,
        center_radius: LogValue::from_v(x_tau),
        radius: LogValue::from_v(y.clone()),
        monomial: LogValue::from_v(monomial),
        profile: LogValue::from_v(e.profile_piece.at_x(&y)),
    }
}

fn weak_check(
    f: &ValuedSeries,
    dominating: &[u32],
    breaks: &[LogValue],
    n: usize,
) -> Result<Option<WeakFailure>, DiscError> {
    let p = f.p();
    let vals = f.valuations();
    let v_r = f.radius().v().expect("nonzero").clone();
    let m = dominating.len();
    let target = &dominating[m - n..];
    let i = target[0];
    let vi = &vals[&i];
    for (&k, vk) in vals.range(i + 1..) {
        let c = vk + int(i64::from(binomial_valuation(u64::from(k), u64::from(i), p)?)) + int(i64::from(k - i)) * &v_r;
        if c < *vi {
            return Ok(Some(WeakFailure::CoefficientNotInvariant { index: i, from: k }));
        }
    }
    let sheet = Sheet::generic_norms(&vals, p, 1);
    let break_vs: Vec<Rational> = breaks.iter().map(|b| b.v().expect("interior").clone()).collect();
    for x in sheet.sample_points(&v_r, None, &break_vs) {
        let mut labels = sheet.structure_at(&x)?.labels;
        // profile pieces above τ: piece q lives below r_q (r_m = R)
        for (q, idx) in dominating.iter().enumerate() {
            let upper = break_vs.get(q).unwrap_or(&v_r);
            if *upper < x && labels.last() != Some(idx) {
                labels.push(*idx);
            }
        }
        let top: Vec<u32> = labels[labels.len().saturating_sub(n)..].to_vec();
        if top != target {
            return Ok(Some(WeakFailure::TopIndicesMove { center_radius: LogValue::from_v(x), top }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticReport {
    pub checks: Vec<ArithmeticCheck>,
}

impl ArithmeticReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Divisibility and norm inequalities the fixed dominating indices of a
/// (weakly) radial morphism must satisfy, evaluated at the domain radius.
pub fn radial_arithmetic_check(f: &ValuedSeries, cert: &RadialityCertificate) -> Result<ArithmeticReport, DiscError> {
    let p = f.p();
    let vals = f.valuations();
    let v_r = f.radius().v().expect("nonzero").clone();
    let at_r = |k: u32| -> Option<Rational> { vals.get(&k).map(|v| v + int(i64::from(k)) * &v_r) };
    let fixed = cert.fixed_indices();
    let mut checks = Vec::new();
    for &i in fixed {
        checks.push(ArithmeticCheck {
            name: "power_of_p".into(),
            passed: p.log_exact(u64::from(i)).is_some(),
            detail: format!("index {i}"),
        });
    }
    for w in fixed.windows(2) {
        checks.push(ArithmeticCheck {
            name: "divides_next".into(),
            passed: w[1] % w[0] == 0,
            detail: format!("{} | {}", w[0], w[1]),
        });
    }
    for &i in fixed {
        let Some(vi) = at_r(i) else {
            checks.push(ArithmeticCheck { name: "supported".into(), passed: false, detail: format!("f_{i} = 0") });
            continue;
        };
        for (&j, _) in vals.range(i + 1..) {
            let vj = at_r(j).expect("in support");
            if vj <= vi {
                let c = int(i64::from(binomial_valuation(u64::from(j), u64::from(i), p)?));
                checks.push(ArithmeticCheck {
                    name: "large_term".into(),
                    passed: j % i == 0 && &vj + &c >= vi,
                    detail: format!(
                        "i = {i}, j = {j}: |f_j|R^j ≥ |f_i|R^i needs i | j and |C(j,i)|·|f_j|R^j ≤ |f_i|R^i"
                    ),
                });
            }
            if j % i == 0 {
                let mult = j / i;
                let vm = int(valuation_core::padic_valuation(&Rational::from_integer(mult.into()), p)?);
                checks.push(ArithmeticCheck {
                    name: "multiple_bound".into(),
                    passed: &vj + &vm >= vi,
                    detail: format!(
                        "|{mult}|·|f_{j}|·R^{j} ≤ |f_{i}|·R^{i}: {} vs {}",
                        rational::fmt_rational(&(&vj + &vm)),
                        rational::fmt_rational(&vi)
                    ),
                });
            }
        }
    }
    Ok(ArithmeticReport { checks })
}
