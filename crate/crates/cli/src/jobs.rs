//! Typed inputs, one per subcommand, and the reports they produce.

use annuli_harmonicity::{
    annulus_degree, break_flows, different_identity_check, gauss_harmonicity, sigma_composition_check, sigma_epsilon,
    AnnulusMorphism, Convention, DifferentReport, DirectionData, Flows, HarmonicityReport, SigmaCompositionReport,
};
use disc_morphisms::{
    classify_radiality, newton_polygon, profile, profile_at_point, radial::ArithmeticReport, radial_arithmetic_check,
    residual_degrees, NewtonPolygon, Profile, RadialityCertificate, ResidualDegrees, ValuedSeries,
};
use lambda_calc::{chain_condition_holds, compose_chain, LambdaP};
use ramification::{
    canonical_tower, catalog, herbrand_galois, herbrand_relative, make_filtration_inertia, ramification_filtration,
    verify_tower, FiniteGroup, InertiaFunction, Subgroup, Tower, TowerReport,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use valuation_core::logvalue::{fmt_v, parse_v, v_string, vec_v_string};
use valuation_core::{Exec, LogValue, Prime};

use crate::CliError;

fn schema(msg: impl std::fmt::Display) -> CliError {
    CliError::Schema(msg.to_string())
}

/// Parses `text` as a JSON object, fills a missing `p` (top level and in
/// the listed nested objects) with `default_p`, and decodes it as `T`.
pub fn decode<T: DeserializeOwned>(text: &str, default_p: u64, nested: &[&str]) -> Result<T, CliError> {
    let mut v: Value = serde_json::from_str(text).map_err(schema)?;
    let obj = v.as_object_mut().ok_or_else(|| schema("input must be a JSON object"))?;
    let p = obj.entry("p").or_insert_with(|| Value::from(default_p)).clone();
    for key in nested {
        if let Some(Value::Object(inner)) = obj.get_mut(*key) {
            inner.entry("p").or_insert_with(|| p.clone());
        }
    }
    serde_json::from_value(v).map_err(schema)
}

fn same_prime(p: Prime, others: &[Prime]) -> Result<(), CliError> {
    match others.iter().find(|q| **q != p) {
        Some(q) => Err(schema(format!("nested prime {} differs from p = {}", q.get(), p.get()))),
        None => Ok(()),
    }
}

/// Result of running a job: whether its checks passed, and the payload.
pub struct Outcome<R> {
    pub passed: bool,
    pub result: R,
}

fn pass<R>(result: R) -> Outcome<R> {
    Outcome { passed: true, result }
}

// ---------------------------------------------------------------- lambda

#[derive(Serialize)]
pub struct FactorResult {
    pub factors: Vec<LambdaP>,
    pub all_simple: bool,
    pub chain_condition: bool,
    pub recomposes: bool,
}

pub fn lambda_factor(f: &LambdaP) -> Outcome<FactorResult> {
    let factors = f.canonical_factorization();
    let all_simple = factors.iter().all(LambdaP::is_simple);
    let chain_condition = chain_condition_holds(&factors);
    let recomposes = compose_chain(f.p(), &factors).is_ok_and(|g| g == *f);
    Outcome {
        passed: all_simple && chain_condition && recomposes,
        result: FactorResult { factors, all_simple, chain_condition, recomposes },
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeInput {
    pub p: Prime,
    pub f: LambdaP,
    pub g: LambdaP,
}

impl ComposeInput {
    pub fn check(&self) -> Result<(), CliError> {
        same_prime(self.p, &[self.f.p(), self.g.p()])
    }
}

#[derive(Serialize)]
pub struct PointCheck {
    #[serde(with = "v_string")]
    pub r: LogValue,
    #[serde(with = "v_string")]
    pub composite: LogValue,
    #[serde(with = "v_string")]
    pub f_of_g: LogValue,
}

#[derive(Serialize)]
pub struct ComposeResult {
    pub composite: LambdaP,
    pub degree: u64,
    /// `f∘g` against `f(g(r))` at every break of `f`, `g` and the composite.
    pub pointwise: Vec<PointCheck>,
}

pub fn lambda_compose(input: &ComposeInput) -> Result<Outcome<ComposeResult>, String> {
    let composite = input.f.compose(&input.g).map_err(|e| e.to_string())?;
    let mut points: Vec<LogValue> =
        input.f.breaks().iter().chain(input.g.breaks()).chain(composite.breaks()).cloned().collect();
    points.sort();
    points.dedup();
    let pointwise = points
        .into_iter()
        .map(|r| {
            let outer = input.g.eval(&r).and_then(|y| input.f.eval(&y));
            Ok(PointCheck { composite: composite.eval(&r)?, f_of_g: outer?, r })
        })
        .collect::<Result<Vec<_>, lambda_calc::LambdaError>>()
        .map_err(|e| e.to_string())?;
    let passed = pointwise.iter().all(|c| c.composite == c.f_of_g);
    Ok(Outcome { passed, result: ComposeResult { degree: composite.degree(), composite, pointwise } })
}

// ---------------------------------------------------------- ramification

/// A catalog name, a Cayley table, or permutation generators.
#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table { table: Vec<Vec<usize>> },
    Permutations { permutations: Vec<Vec<usize>> },
}

impl GroupSpec {
    fn build(&self) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSpec::Name(n) => {
                catalog::by_name(n).map_err(schema)?.ok_or_else(|| schema(format!("unknown group {n:?}")))
            }
            GroupSpec::Table { table } => FiniteGroup::from_table(table.clone()).map_err(schema),
            GroupSpec::Permutations { permutations } => FiniteGroup::from_permutations(permutations).map_err(schema),
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Filtration {
    /// Normal subgroups from `{e}` to `G`, as element lists.
    pub chain: Vec<Vec<usize>>,
    #[serde(with = "vec_v_string")]
    pub values_v: Vec<LogValue>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub p: Prime,
    pub group: GroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia_v: Option<InertiaFunction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub filtration: Option<Filtration>,
    /// Tower only: elements of `H`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<usize>>,
}

pub struct GroupJob {
    pub group: FiniteGroup,
    pub inertia: InertiaFunction,
    pub subgroup: Option<Subgroup>,
}

impl GroupInput {
    pub fn resolve(&self, needs_subgroup: bool) -> Result<GroupJob, CliError> {
        let group = self.group.build()?;
        let inertia = match (&self.inertia_v, &self.filtration) {
            (Some(i), None) => i.clone(),
            (None, Some(f)) => {
                let chain = f
                    .chain
                    .iter()
                    .map(|els| Subgroup::from_elements(&group, els))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(schema)?;
                make_filtration_inertia(&group, &chain, &f.values_v).map_err(schema)?
            }
            _ => return Err(schema("give exactly one of inertia_v and filtration")),
        };
        let subgroup = match (&self.subgroup, needs_subgroup) {
            (Some(els), true) => Some(Subgroup::from_elements(&group, els).map_err(schema)?),
            (None, true) => return Err(schema("tower needs a subgroup")),
            (Some(_), false) => return Err(schema("subgroup is only used by tower")),
            (None, false) => None,
        };
        Ok(GroupJob { group, inertia, subgroup })
    }
}

#[derive(Serialize)]
pub struct Level {
    #[serde(with = "v_string")]
    pub r: LogValue,
    pub order: usize,
    pub elements: Vec<usize>,
}

#[derive(Serialize)]
pub struct HerbrandResult {
    pub herbrand: LambdaP,
    pub filtration: Vec<Level>,
    pub local_degrees: Vec<u64>,
    /// Local degree of each piece against the order of the group at its
    /// lower end.
    pub degrees_match: bool,
}

pub fn herbrand(p: Prime, job: &GroupJob) -> Result<Outcome<HerbrandResult>, String> {
    let f = herbrand_galois(&job.group, &job.inertia, p).map_err(|e| e.to_string())?;
    let filtration: Vec<Level> = ramification_filtration(&job.group, &job.inertia, p)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(r, s)| Level { r, order: s.len(), elements: s.elements() })
        .collect();
    let one = LogValue::one();
    let orders: Vec<u64> = filtration.iter().filter(|l| l.r < one).map(|l| l.order as u64).collect();
    let local_degrees = f.local_degrees();
    let degrees_match = local_degrees == orders;
    Ok(Outcome {
        passed: degrees_match,
        result: HerbrandResult { herbrand: f, filtration, local_degrees, degrees_match },
    })
}

#[derive(Serialize)]
pub struct TowerResult {
    pub tower: Tower,
    pub total: LambdaP,
    pub report: TowerReport,
}

pub fn tower(p: Prime, job: &GroupJob) -> Result<Outcome<TowerResult>, String> {
    let h = job.subgroup.as_ref().expect("resolved with a subgroup");
    let tower = canonical_tower(&job.group, &job.inertia, h, p).map_err(|e| e.to_string())?;
    let total = herbrand_relative(&job.group, &job.inertia, h, p).map_err(|e| e.to_string())?;
    let report = verify_tower(&tower, &total);
    Ok(Outcome { passed: report.passed(), result: TowerResult { tower, total, report } })
}

// ----------------------------------------------------------------- discs

#[derive(Serialize)]
pub struct PolygonResult {
    pub polygon: NewtonPolygon,
    pub profile: Profile,
}

pub fn polygon(f: &ValuedSeries) -> Result<Outcome<PolygonResult>, String> {
    let prof = profile(f).map_err(|e| e.to_string())?;
    Ok(pass(PolygonResult { polygon: newton_polygon(f), profile: prof }))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileInput {
    pub p: Prime,
    pub series: ValuedSeries,
    /// The point `ρ`; the series' own radius when absent.
    #[serde(default, with = "opt_v", skip_serializing_if = "Option::is_none")]
    pub rho_v: Option<LogValue>,
}

impl ProfileInput {
    pub fn check(&self) -> Result<(), CliError> {
        same_prime(self.p, &[self.series.p()])
    }
}

mod opt_v {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<LogValue>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(fmt_v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<LogValue>, D::Error> {
        Option::<String>::deserialize(d)?.map(|s| parse_v(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

#[derive(Serialize)]
pub struct ProfileResult {
    #[serde(with = "v_string")]
    pub rho: LogValue,
    /// Normalized to the unit disc.
    pub profile: LambdaP,
    pub residual_degrees: ResidualDegrees,
}

pub fn profile_job(input: &ProfileInput) -> Result<Outcome<ProfileResult>, String> {
    let rho = input.rho_v.clone().unwrap_or_else(|| input.series.radius().clone());
    let pf = profile_at_point(&input.series, &rho).map_err(|e| e.to_string())?;
    let rd = residual_degrees(&input.series, &rho).map_err(|e| e.to_string())?;
    Ok(pass(ProfileResult { rho, profile: pf, residual_degrees: rd }))
}

#[derive(Serialize)]
pub struct RadialResult {
    pub certificate: RadialityCertificate,
    pub arithmetic: ArithmeticReport,
}

pub fn radial(f: &ValuedSeries) -> Result<Outcome<RadialResult>, String> {
    let certificate = classify_radiality(f).map_err(|e| e.to_string())?;
    let arithmetic = radial_arithmetic_check(f, &certificate).map_err(|e| e.to_string())?;
    Ok(Outcome { passed: arithmetic.passed(), result: RadialResult { certificate, arithmetic } })
}

// --------------------------------------------------------------- annuli

/// An annulus from raw JSON; without `inner_v` the germ at the outer
/// boundary is used, and the echo carries the resulting radius.
pub fn annulus_from(v: Value) -> Result<AnnulusMorphism, CliError> {
    let has_inner = v.get("inner_v").is_some();
    let f: AnnulusMorphism = serde_json::from_value(v).map_err(schema)?;
    if has_inner {
        Ok(f)
    } else {
        f.germ().map_err(schema)
    }
}

#[derive(Serialize)]
pub struct SigmaInput {
    pub p: Prime,
    pub f: AnnulusMorphism,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<AnnulusMorphism>,
}

impl SigmaInput {
    pub fn decode(text: &str, default_p: u64) -> Result<Self, CliError> {
        let mut raw: Map<String, Value> = decode(text, default_p, &["f", "g"])?;
        let p: Prime = serde_json::from_value(raw.remove("p").expect("injected")).map_err(schema)?;
        let f = annulus_from(raw.remove("f").ok_or_else(|| schema("sigma needs f"))?)?;
        let g = raw.remove("g").map(annulus_from).transpose()?;
        if let Some(k) = raw.keys().next() {
            return Err(schema(format!("unknown field {k:?}")));
        }
        let mut primes = vec![f.p()];
        primes.extend(g.as_ref().map(AnnulusMorphism::p));
        same_prime(p, &primes)?;
        Ok(SigmaInput { p, f, g })
    }
}

#[derive(Serialize)]
pub struct SigmaResult {
    pub degree: u64,
    pub sigma: i64,
    #[serde(with = "v_string")]
    pub eps_norm: LogValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition: Option<SigmaCompositionReport>,
}

pub fn sigma(input: &SigmaInput) -> Result<Outcome<SigmaResult>, String> {
    let degree = annulus_degree(&input.f).map_err(|e| e.to_string())?;
    let (sigma, eps_norm) = sigma_epsilon(&input.f).map_err(|e| e.to_string())?;
    let composition = match &input.g {
        Some(g) => Some(sigma_composition_check(&input.f, g).map_err(|e| e.to_string())?),
        None => None,
    };
    let passed = composition.as_ref().is_none_or(|c| c.holds);
    Ok(Outcome { passed, result: SigmaResult { degree, sigma, eps_norm, composition } })
}

#[derive(Serialize)]
pub struct DifferentResult {
    pub flows: Flows,
    pub report: DifferentReport,
}

pub fn different(f: &AnnulusMorphism) -> Result<Outcome<DifferentResult>, String> {
    let flows = break_flows(f).map_err(|e| e.to_string())?;
    let report = different_identity_check(f).map_err(|e| e.to_string())?;
    Ok(Outcome { passed: report.passed(), result: DifferentResult { flows, report } })
}

pub fn harmonicity(f: &ValuedSeries, convention: Convention, exec: Exec) -> Result<Outcome<HarmonicityReport>, String> {
    let r = gauss_harmonicity(f, convention, exec).map_err(|e| e.to_string())?;
    Ok(Outcome { passed: r.passed(), result: r })
}

/// Every enumerated direction of a report, then the generic stand-in.
pub fn plot_directions(r: &HarmonicityReport) -> Vec<DirectionData> {
    let mut out = r.directions.clone();
    out.push(r.generic.data.clone());
    out
}
