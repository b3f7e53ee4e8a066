//! Order-by-order solution of combinatorial Dyson–Schwinger equations
//!
//! ```text
//! X = 1 + Σ_terms w · α^a · B₊(X^m)
//! ```
//!
//! in the tree Hopf algebra, with `X = Σ_k c_k α^k` truncated at a fixed
//! order. Every term must carry at least one power of `α`, so `c_k` only
//! depends on `c_0 … c_{k-1}`.

use std::fmt;

use num::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hopf::{bplus, product, unit, HckElem};
use crate::linear::{int, Rational};

/// Largest truncation order accepted by [`solve`].
pub const MAX_ORDER: usize = 10;

/// One summand `coeff · α^alpha_power · B₊(X^x_power)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DseTerm {
    pub alpha_power: usize,
    pub coeff: Rational,
    pub x_power: usize,
}

impl DseTerm {
    pub fn new(alpha_power: usize, coeff: Rational, x_power: usize) -> Self {
        DseTerm {
            alpha_power,
            coeff,
            x_power,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DseSpec {
    pub terms: Vec<DseTerm>,
    pub order: usize,
}

impl DseSpec {
    /// `X = 1 + α B₊(X)`.
    pub fn linear(order: usize) -> Self {
        DseSpec {
            terms: vec![DseTerm::new(1, int(1), 1)],
            order,
        }
    }

    /// `X = 1 + α B₊(X²)`.
    pub fn quadratic(order: usize) -> Self {
        DseSpec {
            terms: vec![DseTerm::new(1, int(1), 2)],
            order,
        }
    }

    /// `X = 1 + Σ_{n≥1} α^n B₊(X^{n+1})`, keeping the terms that can
    /// contribute up to `order`.
    pub fn geometric(order: usize) -> Self {
        DseSpec {
            terms: (1..=order.max(1)).map(|n| DseTerm::new(n, int(1), n + 1)).collect(),
            order,
        }
    }

    /// Looks up a built-in equation by name.
    pub fn builtin(name: &str, order: usize) -> Option<Self> {
        match name {
            "linear" => Some(Self::linear(order)),
            "quadratic" => Some(Self::quadratic(order)),
            "geometric" => Some(Self::geometric(order)),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.order > MAX_ORDER {
            return Err(Error::SizeLimit {
                what: "truncation order",
                requested: self.order,
                limit: MAX_ORDER,
            });
        }
        if let Some(t) = self.terms.iter().find(|t| t.alpha_power == 0) {
            return Err(Error::InvalidSpec(format!(
                "term with coefficient {} and X-exponent {} has alpha_power 0",
                t.coeff, t.x_power
            )));
        }
        Ok(())
    }

    /// Parses the JSON document form:
    /// `{"terms": [{"alpha_power": 1, "coeff": "1", "x_power": 2}], "order": 4}`.
    /// `coeff` may be an integer or a string such as `"-3/2"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: SpecDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let terms = doc
            .terms
            .into_iter()
            .map(|t| {
                Ok(DseTerm {
                    alpha_power: t.alpha_power,
                    coeff: t.coeff.into_rational()?,
                    x_power: t.x_power,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DseSpec {
            terms,
            order: doc.order,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    terms: Vec<TermDoc>,
    order: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    alpha_power: usize,
    coeff: CoeffDoc,
    x_power: usize,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffDoc {
    Int(i64),
    Text(String),
}

impl CoeffDoc {
    fn into_rational(self) -> Result<Rational> {
        match self {
            CoeffDoc::Int(n) => Ok(int(n)),
            CoeffDoc::Text(s) => s
                .trim()
                .parse::<Rational>()
                .map_err(|e| Error::InvalidSpec(format!("bad coefficient {s:?}: {e}"))),
        }
    }
}

/// A truncated series `c_0 + c_1 α + … + c_N α^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<HckElem>,
}

impl Series {
    pub fn new(coeffs: Vec<HckElem>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least c_0");
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[HckElem] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Result<&HckElem> {
        self.coeffs.get(k).ok_or(Error::OrderExceeded {
            index: k,
            order: self.order(),
        })
    }

    /// `[α^j] X^m`.
    pub fn power_coefficient(&self, m: usize, j: usize) -> Result<HckElem> {
        if j > self.order() {
            return Err(Error::OrderExceeded {
                index: j,
                order: self.order(),
            });
        }
        let mut powers = PowerTable::new(m);
        for c in &self.coeffs[..=j] {
            powers.push(c);
        }
        Ok(powers.get(m, j).clone())
    }

    pub fn to_doc(&self) -> SeriesDoc {
        SeriesDoc {
            order: self.order(),
            coefficients: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| CoefficientDoc {
                    k,
                    text: c.to_string(),
                    terms: c
                        .iter()
                        .map(|(f, q)| TermValueDoc {
                            forest: f.to_string(),
                            coeff: q.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// One line per order, `c_k = <element>`.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "c_{k} = {c}")?;
        }
        Ok(())
    }
}

/// Machine-readable form of a solved series.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesDoc {
    pub order: usize,
    pub coefficients: Vec<CoefficientDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientDoc {
    pub k: usize,
    pub text: String,
    pub terms: Vec<TermValueDoc>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermValueDoc {
    pub forest: String,
    pub coeff: String,
}

/// `[α^j] X^m` for every `m ≤ max_power`, filled in as coefficients of `X`
/// arrive: `table[m][j] = Σ_i c_i · table[m-1][j-i]`.
struct PowerTable {
    coeffs: Vec<HckElem>,
    table: Vec<Vec<HckElem>>,
}

impl PowerTable {
    fn new(max_power: usize) -> Self {
        PowerTable {
            coeffs: Vec::new(),
            table: vec![Vec::new(); max_power + 1],
        }
    }

    fn push(&mut self, c: &HckElem) {
        self.coeffs.push(c.clone());
        let j = self.coeffs.len() - 1;
        self.table[0].push(if j == 0 { unit() } else { HckElem::zero() });
        for m in 1..self.table.len() {
            let mut acc = HckElem::zero();
            for i in 0..=j {
                if self.coeffs[i].is_zero() || self.table[m - 1][j - i].is_zero() {
                    continue;
                }
                acc.add_scaled(&product(&self.coeffs[i], &self.table[m - 1][j - i]), &Rational::one());
            }
            self.table[m].push(acc);
        }
    }

    fn get(&self, m: usize, j: usize) -> &HckElem {
        &self.table[m][j]
    }
}

/// Solves `spec` through its truncation order.
pub fn solve(spec: &DseSpec) -> Result<Series> {
    spec.validate()?;
    let max_power = spec.terms.iter().map(|t| t.x_power).max().unwrap_or(0);
    let mut powers = PowerTable::new(max_power);
    powers.push(&unit());
    let mut coeffs = vec![unit()];
    for k in 1..=spec.order {
        let mut ck = HckElem::zero();
        for term in &spec.terms {
            if term.alpha_power > k {
                continue;
            }
            let inner = powers.get(term.x_power, k - term.alpha_power);
            ck.add_scaled(&bplus(inner), &term.coeff);
        }
        powers.push(&ck);
        coeffs.push(ck);
    }
    Ok(Series { coeffs })
}

/// `[α^k] (X − 1 − Σ w α^a B₊(X^m))` for `k = 0..=N`, computed directly from
/// the series. A solution has every entry zero.
pub fn fixpoint_residual(spec: &DseSpec, x: &Series) -> Result<Vec<HckElem>> {
    let mut out = Vec::with_capacity(x.order() + 1);
    for k in 0..=x.order() {
        let mut r = x.coefficient(k)?.clone();
        if k == 0 {
            r.add_scaled(&unit(), &-Rational::one());
        }
        for term in &spec.terms {
            if term.alpha_power > k {
                continue;
            }
            let inner = x.power_coefficient(term.x_power, k - term.alpha_power)?;
            r.add_scaled(&bplus(&inner), &-term.coeff.clone());
        }
        out.push(r);
    }
    Ok(out)
}
