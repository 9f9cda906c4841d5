//! General piecewise-monomial functions `r ↦ c_k·r^{e_k}` on `[lo, hi]`.
//!
//! Exponents may be any rational, including zero and negative ones, since
//! intermediate quantities such as `|c|/ρ` decrease. Breaks and pieces are
//! stored in increasing order of value. Construction merges adjacent
//! identical pieces, so derived equality coincides with pointwise equality.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use valuation_core::logvalue::{fmt_v, parse_v};
use valuation_core::{fmt_rational, parse_rational, LogValue, Rational};

use crate::LambdaError;

/// `c·r^e`, stored as `(v(c), e)`; in exponent coordinates `x ↦ v(c) + e·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef_v: Rational,
    pub exp: Rational,
}

impl Monomial {
    pub fn new(coef_v: Rational, exp: Rational) -> Self {
        Monomial { coef_v, exp }
    }

    pub fn identity() -> Self {
        Monomial::new(Rational::zero(), Rational::one())
    }

    pub fn at_x(&self, x: &Rational) -> Rational {
        &self.coef_v + &self.exp * x
    }

    pub fn eval(&self, r: &LogValue) -> Result<LogValue, LambdaError> {
        match r.v() {
            Some(x) => Ok(LogValue::from_v(self.at_x(x))),
            None if self.exp.is_positive() => Ok(LogValue::zero()),
            None if self.exp.is_zero() => Ok(LogValue::from_v(self.coef_v.clone())),
            None => Err(LambdaError::OutOfDomain("0".into())),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Monomial) -> Monomial {
        Monomial::new(&self.coef_v + &self.exp * &inner.coef_v, &self.exp * &inner.exp)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(&self.coef_v + &other.coef_v, &self.exp + &other.exp)
    }

    pub fn pow(&self, q: &Rational) -> Monomial {
        Monomial::new(&self.coef_v * q, &self.exp * q)
    }

    /// Compositional inverse; requires a nonzero exponent.
    pub fn inverse(&self) -> Monomial {
        let e = Rational::one() / &self.exp;
        Monomial::new(-&self.coef_v * &e, e)
    }

    /// `x` where the monomial takes the exponent `y`.
    pub fn solve_x(&self, y: &Rational) -> Rational {
        (y - &self.coef_v) / &self.exp
    }
}

/// An exponent coordinate strictly between the values `a < b` (`b` nonzero).
pub fn x_between(a: &LogValue, b: &LogValue) -> Rational {
    let xb = b.v().expect("upper end is nonzero");
    match a.v() {
        Some(xa) => (xa + xb) / Rational::from_integer(2.into()),
        None => xb + Rational::one(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseMonomial {
    lo: LogValue,
    hi: LogValue,
    breaks: Vec<LogValue>,
    pieces: Vec<Monomial>,
}

impl PiecewiseMonomial {
    /// Validates the domain, break order and continuity, then merges
    /// identical neighbours.
    pub fn new(lo: LogValue, hi: LogValue, breaks: Vec<LogValue>, pieces: Vec<Monomial>) -> Result<Self, LambdaError> {
        if hi.is_zero() || lo >= hi {
            return Err(LambdaError::EmptyDomain);
        }
        if pieces.len() != breaks.len() + 1 {
            return Err(LambdaError::PieceCount);
        }
        if breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LambdaError::NonMonotoneBreaks);
        }
        for b in &breaks {
            if *b <= lo || *b >= hi {
                return Err(LambdaError::BreakNotInterior(fmt_v(b)));
            }
        }
        if lo.is_zero() && pieces[0].exp.is_negative() {
            return Err(LambdaError::NegativeExponentAtZero);
        }
        for (k, b) in breaks.iter().enumerate() {
            if pieces[k].eval(b)? != pieces[k + 1].eval(b)? {
                return Err(LambdaError::Discontinuous(fmt_v(b)));
            }
        }
        let mut out_breaks = Vec::with_capacity(breaks.len());
        let mut out_pieces = vec![pieces[0].clone()];
        for (b, m) in breaks.into_iter().zip(pieces.into_iter().skip(1)) {
            if out_pieces.last() != Some(&m) {
                out_breaks.push(b);
                out_pieces.push(m);
            }
        }
        Ok(PiecewiseMonomial { lo, hi, breaks: out_breaks, pieces: out_pieces })
    }

    pub fn monomial(lo: LogValue, hi: LogValue, m: Monomial) -> Result<Self, LambdaError> {
        Self::new(lo, hi, vec![], vec![m])
    }

    pub fn identity(lo: LogValue, hi: LogValue) -> Result<Self, LambdaError> {
        Self::monomial(lo, hi, Monomial::identity())
    }

    pub fn lo(&self) -> &LogValue {
        &self.lo
    }

    pub fn hi(&self) -> &LogValue {
        &self.hi
    }

    pub fn breaks(&self) -> &[LogValue] {
        &self.breaks
    }

    pub fn pieces(&self) -> &[Monomial] {
        &self.pieces
    }

    /// Exponent of the piece adjacent to the upper end of the domain.
    pub fn last_exponent(&self) -> &Rational {
        &self.pieces.last().expect("at least one piece").exp
    }

    pub fn is_increasing(&self) -> bool {
        self.pieces.iter().all(|m| m.exp.is_positive())
    }

    pub fn contains(&self, r: &LogValue) -> bool {
        *r >= self.lo && *r <= self.hi
    }

    /// Sub-intervals `(lower end, upper end)` of each piece.
    pub fn intervals(&self) -> Vec<(LogValue, LogValue)> {
        let mut ends = vec![self.lo.clone()];
        ends.extend(self.breaks.iter().cloned());
        ends.push(self.hi.clone());
        ends.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect()
    }

    fn piece_index(&self, r: &LogValue) -> usize {
        self.breaks.iter().take_while(|b| *b < r).count()
    }

    pub fn piece_at(&self, r: &LogValue) -> Result<&Monomial, LambdaError> {
        if !self.contains(r) {
            return Err(LambdaError::OutOfDomain(fmt_v(r)));
        }
        Ok(&self.pieces[self.piece_index(r)])
    }

    pub fn eval(&self, r: &LogValue) -> Result<LogValue, LambdaError> {
        self.piece_at(r)?.eval(r)
    }

    /// Rebuilds a function on `[lo, hi]` from candidate interior breaks,
    /// choosing each piece by `piece_for(x)` at an interior representative.
    fn assemble<F>(lo: LogValue, hi: LogValue, mut cuts: Vec<LogValue>, mut piece_for: F) -> Result<Self, LambdaError>
    where
        F: FnMut(&Rational) -> Result<Monomial, LambdaError>,
    {
        cuts.retain(|b| *b > lo && *b < hi);
        cuts.sort();
        cuts.dedup();
        let mut ends = vec![lo.clone()];
        ends.extend(cuts.iter().cloned());
        ends.push(hi.clone());
        let pieces = ends.windows(2).map(|w| piece_for(&x_between(&w[0], &w[1]))).collect::<Result<Vec<_>, _>>()?;
        Self::new(lo, hi, cuts, pieces)
    }

    fn piece_at_x(&self, x: &Rational) -> &Monomial {
        &self.pieces[self.piece_index(&LogValue::from_v(x.clone()))]
    }

    /// Pointwise maximum of monomials over `[lo, hi]`.
    pub fn envelope(lo: LogValue, hi: LogValue, monos: &[Monomial]) -> Result<Self, LambdaError> {
        if monos.is_empty() {
            return Err(LambdaError::PieceCount);
        }
        let mut cuts = Vec::new();
        for (i, a) in monos.iter().enumerate() {
            for b in &monos[i + 1..] {
                if a.exp != b.exp {
                    let x = (&b.coef_v - &a.coef_v) / (&a.exp - &b.exp);
                    cuts.push(LogValue::from_v(x));
                }
            }
        }
        Self::assemble(lo, hi, cuts, |x| {
            Ok(monos.iter().min_by(|a, b| a.at_x(x).cmp(&b.at_x(x))).expect("nonempty").clone())
        })
    }

    /// `self ∘ g`. `g` must be increasing with range inside the domain of `self`.
    pub fn compose(&self, g: &PiecewiseMonomial) -> Result<Self, LambdaError> {
        if !g.is_increasing() {
            return Err(LambdaError::NotIncreasing);
        }
        if g.eval(&g.lo)? < self.lo || g.eval(&g.hi)? > self.hi {
            return Err(LambdaError::DomainMismatch);
        }
        let mut cuts = g.breaks.clone();
        let g_ends: Vec<LogValue> = std::iter::once(g.lo.clone())
            .chain(g.breaks.iter().cloned())
            .chain(std::iter::once(g.hi.clone()))
            .collect();
        for b in &self.breaks {
            for (k, m) in g.pieces.iter().enumerate() {
                let (a, c) = (m.eval(&g_ends[k])?, m.eval(&g_ends[k + 1])?);
                if a < *b && *b <= c {
                    cuts.push(LogValue::from_v(m.solve_x(b.v().expect("interior break"))));
                    break;
                }
            }
        }
        Self::assemble(g.lo.clone(), g.hi.clone(), cuts, |x| {
            let inner = g.piece_at_x(x);
            let outer = self.piece_at_x(&inner.at_x(x));
            Ok(outer.compose(inner))
        })
    }

    /// Compositional inverse of an increasing function.
    pub fn invert(&self) -> Result<Self, LambdaError> {
        if !self.is_increasing() {
            return Err(LambdaError::NotIncreasing);
        }
        let breaks = self.breaks.iter().map(|b| self.eval(b)).collect::<Result<Vec<_>, _>>()?;
        Self::new(
            self.eval(&self.lo)?,
            self.eval(&self.hi)?,
            breaks,
            self.pieces.iter().map(Monomial::inverse).collect(),
        )
    }

    /// Pointwise product of two functions with the same domain.
    pub fn mul(&self, other: &Self) -> Result<Self, LambdaError> {
        if self.lo != other.lo || self.hi != other.hi {
            return Err(LambdaError::DomainMismatch);
        }
        let mut cuts = self.breaks.clone();
        cuts.extend(other.breaks.iter().cloned());
        Self::assemble(self.lo.clone(), self.hi.clone(), cuts, |x| Ok(self.piece_at_x(x).mul(other.piece_at_x(x))))
    }

    pub fn pow(&self, q: &Rational) -> Result<Self, LambdaError> {
        Self::new(self.lo.clone(), self.hi.clone(), self.breaks.clone(), self.pieces.iter().map(|m| m.pow(q)).collect())
    }

    /// `r ↦ c·f(r)` for a nonzero constant `c`.
    pub fn scale(&self, c: &LogValue) -> Result<Self, LambdaError> {
        let cv = c.finite_v()?;
        Self::new(
            self.lo.clone(),
            self.hi.clone(),
            self.breaks.clone(),
            self.pieces.iter().map(|m| Monomial::new(&m.coef_v + cv, m.exp.clone())).collect(),
        )
    }

    /// `t ↦ f(λ·t)` on `[lo/λ, hi/λ]` for a nonzero `λ`.
    pub fn rescale_domain(&self, lambda: &LogValue) -> Result<Self, LambdaError> {
        let lv = lambda.finite_v()?;
        let shift = |b: &LogValue| b.div(lambda).map_err(LambdaError::from);
        Self::new(
            shift(&self.lo)?,
            shift(&self.hi)?,
            self.breaks.iter().map(shift).collect::<Result<_, _>>()?,
            self.pieces.iter().map(|m| Monomial::new(&m.coef_v + &m.exp * lv, m.exp.clone())).collect(),
        )
    }

    /// The restriction to a sub-interval `[lo, hi]`.
    pub fn restrict(&self, lo: LogValue, hi: LogValue) -> Result<Self, LambdaError> {
        if lo < self.lo || hi > self.hi {
            return Err(LambdaError::DomainMismatch);
        }
        let cuts = self.breaks.clone();
        Self::assemble(lo, hi, cuts, |x| Ok(self.piece_at_x(x).clone()))
    }
}

/// Same functions, possibly different representations; kept for API
/// symmetry with callers that hold two arbitrary functions.
pub fn pw_equals(f: &PiecewiseMonomial, g: &PiecewiseMonomial) -> bool {
    f == g
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceRepr {
    from_v: String,
    to_v: String,
    coef_v: String,
    exp: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PiecewiseRepr {
    pieces: Vec<PieceRepr>,
}

impl Serialize for PiecewiseMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pieces = self
            .intervals()
            .into_iter()
            .zip(&self.pieces)
            .map(|((a, b), m)| PieceRepr {
                from_v: fmt_v(&a),
                to_v: fmt_v(&b),
                coef_v: fmt_rational(&m.coef_v),
                exp: fmt_rational(&m.exp),
            })
            .collect();
        PiecewiseRepr { pieces }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = PiecewiseRepr::deserialize(d)?;
        let parse = |r: &PieceRepr| -> Result<(LogValue, LogValue, Monomial), String> {
            Ok((
                parse_v(&r.from_v).map_err(|e| e.to_string())?,
                parse_v(&r.to_v).map_err(|e| e.to_string())?,
                Monomial::new(
                    parse_rational(&r.coef_v).map_err(|e| e.to_string())?,
                    parse_rational(&r.exp).map_err(|e| e.to_string())?,
                ),
            ))
        };
        let parsed = repr.pieces.iter().map(parse).collect::<Result<Vec<_>, _>>().map_err(D::Error::custom)?;
        if parsed.is_empty() {
            return Err(D::Error::custom("no pieces"));
        }
        for w in parsed.windows(2) {
            if w[0].1 != w[1].0 {
                return Err(D::Error::custom("pieces do not tile the domain"));
            }
        }
        let lo = parsed[0].0.clone();
        let hi = parsed.last().expect("nonempty").1.clone();
        let breaks = parsed[1..].iter().map(|t| t.0.clone()).collect();
        let pieces = parsed.into_iter().map(|t| t.2).collect();
        PiecewiseMonomial::new(lo, hi, breaks, pieces).map_err(D::Error::custom)
    }
}
