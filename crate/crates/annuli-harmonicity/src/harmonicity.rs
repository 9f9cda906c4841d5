//! Riemann–Hurwitz and the layered harmonicity identities at the Gauss
//! point `y = η_{0,1}` of the line, with `g(y) = 0`.

use std::fmt;
use std::str::FromStr;

use disc_morphisms::{profile_at_point, ValuedSeries};
use lambda_calc::LambdaP;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use valuation_core::logvalue::fmt_v;
use valuation_core::rational::as_string;
use valuation_core::{int, Exec, LogValue, Rational};

use crate::directions::{critical_residues, generic_closed_form, unit_gauss_series};
use crate::{direction_data, AnnulusError, Direction, DirectionData};

/// The sign in `(∂b ± 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Plus,
    Minus,
}

impl Convention {
    pub const ALL: [Convention; 2] = [Convention::Plus, Convention::Minus];

    fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Plus => "plus",
            Convention::Minus => "minus",
        })
    }
}

impl FromStr for Convention {
    type Err = AnnulusError;

    fn from_str(s: &str) -> Result<Self, AnnulusError> {
        match s {
            "plus" => Ok(Convention::Plus),
            "minus" => Ok(Convention::Minus),
            _ => Err(AnnulusError::Schema(format!("convention must be plus or minus, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerCheck {
    pub layer: usize,
    #[serde(with = "as_string")]
    pub lhs: Rational,
    /// Sum over the enumerated directions.
    #[serde(with = "as_string")]
    pub rhs: Rational,
    /// Contribution of each generic direction; nonzero means the sum over
    /// all directions diverges.
    #[serde(with = "as_string")]
    pub generic: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionReport {
    pub convention: Convention,
    pub layers: Vec<LayerCheck>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhCheck {
    pub lhs: i64,
    pub sigma_sum: i64,
    pub generic_sigma: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericDirection {
    /// A residue of `F_p` outside every critical class, if one exists.
    #[serde(with = "opt_rational")]
    pub representative: Option<Rational>,
    /// Data at the representative, or the closed form when there is none.
    pub data: DirectionData,
    pub closed_form: DirectionData,
    pub matches_closed_form: bool,
}

mod opt_rational {
    use serde::Serializer;
    use valuation_core::{fmt_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&fmt_rational(q)),
            None => s.serialize_none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicityReport {
    pub p: u64,
    pub degree: u64,
    pub gauss_profile: LambdaP,
    pub directions: Vec<DirectionData>,
    pub generic: GenericDirection,
    pub riemann_hurwitz: RhCheck,
    pub requested: Convention,
    pub conventions: Vec<ConventionReport>,
    /// The single convention under which every layer holds, if exactly one does.
    pub consistent: Option<Convention>,
    pub unmatched_flows: Vec<String>,
}

impl HarmonicityReport {
    pub fn passed(&self) -> bool {
        let requested_holds = self.conventions.iter().any(|c| c.convention == self.requested && c.holds);
        self.riemann_hurwitz.holds && requested_holds && self.unmatched_flows.is_empty()
    }
}

/// Layer index of each flow: `0` if its limit is 1, `i` if it tends to the
/// `i`-th break of the Gauss profile.
fn classify_flows(data: &DirectionData, gauss_breaks: &[LogValue]) -> Result<Vec<usize>, String> {
    data.limits
        .iter()
        .map(|l| {
            if l.is_one() {
                return Ok(0);
            }
            gauss_breaks.iter().position(|b| b == l).map(|i| i + 1).ok_or_else(|| {
                format!("{:?}: flow limit {} is not a break of the Gauss profile", data.direction, fmt_v(l))
            })
        })
        .collect()
}

/// Contribution of one direction to every layer `0..=n`.
fn contributions(data: &DirectionData, classes: &[usize], n: usize, sign: i64) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n + 1];
    for ((class, slope), jump) in classes.iter().zip(&data.slopes).zip(data.flows.jumps()) {
        out[*class] += int(jump as i64) * (slope + int(sign));
    }
    let top = *data.flows.local_degrees.last().expect("nonempty");
    out[0] += int(data.degree as i64 - top as i64);
    out
}

fn same_germ(a: &DirectionData, b: &DirectionData) -> bool {
    let last = |d: &DirectionData| d.flows.flows.iter().map(|f| f.pieces().last().cloned()).collect::<Vec<_>>();
    a.degree == b.degree
        && a.sigma == b.sigma
        && a.eps_norm == b.eps_norm
        && a.flows.local_degrees == b.flows.local_degrees
        && last(a) == last(b)
}

/// Enumerates the residue classes of `F_p` holding zeros of coordinate
/// functions, the class of 0 and `∞`, plus one generic direction, and
/// checks RH and the layer identities under both sign conventions.
pub fn gauss_harmonicity(
    f: &ValuedSeries,
    convention: Convention,
    exec: Exec,
) -> Result<HarmonicityReport, AnnulusError> {
    let p = f.p();
    let unit = unit_gauss_series(f)?;
    let gauss = profile_at_point(&unit, &LogValue::one())?;
    let degree = {
        let vals = unit.valuations();
        *vals.iter().filter(|(_, v)| v.is_zero()).map(|(k, _)| k).max().expect("unit coefficient") as u64
    };
    let critical = critical_residues(&unit)?;
    let mut directions: Vec<Direction> = critical.iter().map(|r| Direction::residue(int(*r as i64))).collect();
    directions.push(Direction::Infinity);
    let representative = (1..p.get()).find(|r| !critical.contains(r)).map(|r| int(r as i64));
    let data: Vec<DirectionData> =
        exec.map(&directions, |d| direction_data(&unit, d)).into_iter().collect::<Result<_, _>>()?;
    let closed_form = generic_closed_form(&unit)?;
    let generic_data = match &representative {
        Some(r) => direction_data(&unit, &Direction::residue(r.clone()))?,
        None => closed_form.clone(),
    };
    let generic = GenericDirection {
        representative,
        matches_closed_form: same_germ(&generic_data, &closed_form),
        data: generic_data,
        closed_form,
    };

    let sigma_sum: i64 = data.iter().map(|d| d.sigma).sum();
    let lhs = 2 * degree as i64 - 2;
    let riemann_hurwitz = RhCheck {
        lhs,
        sigma_sum,
        generic_sigma: generic.data.sigma,
        holds: lhs == sigma_sum && generic.data.sigma == 0,
    };

    let n = gauss.n_breaks();
    let gd = gauss.local_degrees();
    let mut unmatched = Vec::new();
    let mut classes = Vec::new();
    for d in data.iter().chain(std::iter::once(&generic.data)) {
        match classify_flows(d, gauss.breaks()) {
            Ok(c) => classes.push(c),
            Err(msg) => {
                unmatched.push(msg);
                classes.push(Vec::new());
            }
        }
    }
    let conventions = Convention::ALL
        .iter()
        .map(|&c| {
            let mut rhs = vec![Rational::zero(); n + 1];
            for (d, cl) in data.iter().zip(&classes) {
                if cl.len() == d.flows.flows.len() {
                    for (acc, x) in rhs.iter_mut().zip(contributions(d, cl, n, c.sign())) {
                        *acc += x;
                    }
                }
            }
            let generic_terms = contributions(&generic.data, classes.last().expect("generic"), n, c.sign());
            let layers: Vec<LayerCheck> = (0..=n)
                .map(|i| {
                    let lhs = if i == 0 {
                        int(2 * degree as i64 - 2 * gd[n] as i64)
                    } else {
                        int(2 * (gd[i] as i64 - gd[i - 1] as i64))
                    };
                    let holds = lhs == rhs[i] && generic_terms[i].is_zero();
                    LayerCheck { layer: i, lhs, rhs: rhs[i].clone(), generic: generic_terms[i].clone(), holds }
                })
                .collect();
            let holds = layers.iter().all(|l| l.holds);
            ConventionReport { convention: c, layers, holds }
        })
        .collect::<Vec<_>>();
    let holding: Vec<Convention> = conventions.iter().filter(|c| c.holds).map(|c| c.convention).collect();
    Ok(HarmonicityReport {
        p: p.get(),
        degree,
        gauss_profile: gauss,
        directions: data,
        generic,
        riemann_hurwitz,
        requested: convention,
        consistent: (holding.len() == 1).then(|| holding[0]),
        conventions,
        unmatched_flows: unmatched,
    })
}
