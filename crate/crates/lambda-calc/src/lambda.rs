//! The class `Λ_p` and its canonical factorization into simple functions.

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use valuation_core::logvalue::{fmt_v, vec_v_string};
use valuation_core::{int, LogValue, Prime, Rational};

use crate::{LambdaError, Monomial, PiecewisePower};

/// An element of `Λ_p`: breaks `b_1 < … < b_n` in `(0,1)` and local degree
/// exponents `0 = α_0 < … < α_n`, with the derived coefficients `a_i` and
/// the function itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaP {
    p: Prime,
    breaks: Vec<LogValue>,
    alphas: Vec<u32>,
    coefficients: Vec<LogValue>,
    func: PiecewisePower,
}

fn p_pow(p: Prime, a: u32) -> Rational {
    int(i64::try_from(p.pow(a)).expect("degree fits i64"))
}

/// Builds the `Λ_p` element with the given breaks and exponents.
pub fn make_lambda(p: Prime, breaks: Vec<LogValue>, alphas: Vec<u32>) -> Result<LambdaP, LambdaError> {
    if alphas.first() != Some(&0) {
        return Err(LambdaError::AlphaZeroNonzero);
    }
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LambdaError::NonIncreasingAlphas);
    }
    if alphas.len() != breaks.len() + 1 {
        return Err(LambdaError::LengthMismatch {
            breaks: breaks.len(),
            alphas: alphas.len(),
            expected: breaks.len() + 1,
        });
    }
    if breaks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(LambdaError::NonMonotoneBreaks);
    }
    if let Some(b) = breaks.iter().find(|b| b.is_zero() || **b >= LogValue::one()) {
        return Err(LambdaError::BreakOutOfRange(fmt_v(b)));
    }
    let n = breaks.len();
    // v(a_i) = Σ_{j ≥ i} (p^{α_j} − p^{α_{j−1}})·v(b_j); a_{n+1} = 1
    let mut coef_v = vec![Rational::from_integer(0.into()); n + 1];
    for i in (0..n).rev() {
        let jump = p_pow(p, alphas[i + 1]) - p_pow(p, alphas[i]);
        coef_v[i] = &coef_v[i + 1] + jump * breaks[i].v().expect("nonzero break");
    }
    let pieces: Vec<Monomial> = (0..=n).map(|i| Monomial::new(coef_v[i].clone(), p_pow(p, alphas[i]))).collect();
    let func = PiecewisePower::from_parts(LogValue::zero(), LogValue::one(), breaks.clone(), pieces)?;
    if func.breaks() != breaks.as_slice() {
        return Err(LambdaError::NotLambda("pieces merged across a declared break".into()));
    }
    Ok(LambdaP { p, breaks, alphas, coefficients: coef_v.into_iter().map(LogValue::from_v).collect(), func })
}

impl LambdaP {
    pub fn identity(p: Prime) -> Self {
        make_lambda(p, vec![], vec![0]).expect("identity is valid")
    }

    /// Validates an arbitrary piecewise function as an element of `Λ_p`.
    pub fn from_piecewise(p: Prime, f: &PiecewisePower) -> Result<Self, LambdaError> {
        if *f.lo() != LogValue::zero() || *f.hi() != LogValue::one() {
            return Err(LambdaError::NotLambda("domain is not [0,1]".into()));
        }
        if !f.eval(&LogValue::one())?.is_one() {
            return Err(LambdaError::NotLambda("f(1) != 1".into()));
        }
        let mut alphas = Vec::with_capacity(f.pieces().len());
        for m in f.pieces() {
            let e = &m.exp;
            let deg = if e.is_integer() { u64::try_from(e.to_integer()).ok() } else { None };
            let a = deg
                .and_then(|d| p.log_exact(d))
                .ok_or_else(|| LambdaError::NotLambda(format!("exponent {e} is not a power of {p}")))?;
            alphas.push(a);
        }
        if alphas[0] != 0 {
            return Err(LambdaError::NotLambda("first exponent is not 1".into()));
        }
        if alphas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LambdaError::NotLambda("exponents not strictly increasing".into()));
        }
        let lam = make_lambda(p, f.breaks().to_vec(), alphas)?;
        if lam.func != *f {
            return Err(LambdaError::NotLambda("coefficients disagree with break data".into()));
        }
        Ok(lam)
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn breaks(&self) -> &[LogValue] {
        &self.breaks
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    /// `a_1, …, a_{n+1}`.
    pub fn coefficients(&self) -> &[LogValue] {
        &self.coefficients
    }

    pub fn func(&self) -> &PiecewisePower {
        &self.func
    }

    pub fn n_breaks(&self) -> usize {
        self.breaks.len()
    }

    pub fn degree(&self) -> u64 {
        self.p.pow(*self.alphas.last().expect("α_0 exists"))
    }

    /// Local degrees `p^{α_0}, …, p^{α_n}`.
    pub fn local_degrees(&self) -> Vec<u64> {
        self.alphas.iter().map(|&a| self.p.pow(a)).collect()
    }

    pub fn is_simple(&self) -> bool {
        self.breaks.len() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.breaks.is_empty()
    }

    pub fn eval(&self, r: &LogValue) -> Result<LogValue, LambdaError> {
        self.func.eval(r)
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &LambdaP) -> Result<LambdaP, LambdaError> {
        if self.p != g.p {
            return Err(LambdaError::PrimeMismatch);
        }
        LambdaP::from_piecewise(self.p, &self.func.compose(&g.func)?)
    }

    pub fn invert(&self) -> PiecewisePower {
        self.func.invert()
    }

    /// The simple factors `f_1, …, f_n` with `f = f_n ∘ … ∘ f_1`; empty for
    /// the identity.
    pub fn canonical_factorization(&self) -> Vec<LambdaP> {
        (0..self.breaks.len())
            .map(|i| {
                let lift = p_pow(self.p, self.alphas[i]);
                let c = self.breaks[i].pow(&lift).expect("nonzero break");
                make_lambda(self.p, vec![c], vec![0, self.alphas[i + 1] - self.alphas[i]])
                    .expect("factor data is valid")
            })
            .collect()
    }
}

/// `factors[last] ∘ … ∘ factors[0]`; the identity for an empty list.
pub fn compose_chain(p: Prime, factors: &[LambdaP]) -> Result<LambdaP, LambdaError> {
    factors.iter().try_fold(LambdaP::identity(p), |acc, f| f.compose(&acc))
}

/// `f_i(b_{f_i}) < b_{f_{i+1}}` for consecutive simple factors.
pub fn chain_condition_holds(factors: &[LambdaP]) -> bool {
    factors.windows(2).all(|w| {
        let (f, g) = (&w[0], &w[1]);
        match (f.breaks.first(), g.breaks.first()) {
            (Some(bf), Some(bg)) => f.eval(bf).map(|y| y < *bg).unwrap_or(false),
            _ => false,
        }
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LambdaRepr {
    p: Prime,
    #[serde(with = "vec_v_string")]
    breaks_v: Vec<LogValue>,
    alphas: Vec<u32>,
}

impl Serialize for LambdaP {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LambdaRepr { p: self.p, breaks_v: self.breaks.clone(), alphas: self.alphas.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LambdaP {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = LambdaRepr::deserialize(d)?;
        make_lambda(r.p, r.breaks_v, r.alphas).map_err(serde::de::Error::custom)
    }
}
