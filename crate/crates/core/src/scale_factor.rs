//! The sphere radius `R(eta)` and its analytic derivatives.
//!
//! Every model has a closed-form derivative table, so `R'` and `R''` are
//! exact.  Generic callers obtain `R` at a dual-valued time through
//! [`ScaleFactor::radius`], which threads the derivative table through the
//! dual number tower.

use std::fmt;
use std::str::FromStr;

use crate::dual::Scalar;
use crate::error::GeometryError;
use crate::Result;

/// Closed-form models of the scale factor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// `R = r0`.
    Constant(f64),
    /// `R = a + b eta`.
    Linear(f64, f64),
    /// `R = a cosh(eta)`.
    Cosh(f64),
    /// `R = c0 + c1 eta + c2 eta^2 + c3 eta^3`.
    Polynomial([f64; 4]),
}

/// Scale factor: a model plus the time interval on which it is used.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaleFactor {
    model: Model,
    domain: (f64, f64),
}

/// Radius with its first two time derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusJet {
    pub r: f64,
    pub dr: f64,
    pub ddr: f64,
}

impl ScaleFactor {
    /// Constant radius; rejects `r0 <= 0` immediately.
    pub fn constant(r0: f64) -> Result<Self> {
        if r0.is_nan() || r0 <= 0.0 || !r0.is_finite() {
            return Err(GeometryError::ScaleDomain(format!("constant radius must be positive, got {r0}")));
        }
        Ok(Self::from_model(Model::Constant(r0)))
    }

    pub fn linear(a: f64, b: f64) -> Self {
        Self::from_model(Model::Linear(a, b))
    }

    /// `a cosh(eta)`; rejects `a <= 0`, which is negative everywhere.
    pub fn cosh(a: f64) -> Result<Self> {
        if a.is_nan() || a <= 0.0 || !a.is_finite() {
            return Err(GeometryError::ScaleDomain(format!("cosh amplitude must be positive, got {a}")));
        }
        Ok(Self::from_model(Model::Cosh(a)))
    }

    pub fn polynomial(c: [f64; 4]) -> Self {
        Self::from_model(Model::Polynomial(c))
    }

    fn from_model(model: Model) -> Self {
        Self { model, domain: (f64::NEG_INFINITY, f64::INFINITY) }
    }

    /// Restricts the admissible time interval (closed bounds).
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Parses `const:<R0>`, `linear:<a>,<b>`, `cosh:<a>` or
    /// `poly:<c0>,<c1>,<c2>,<c3>`.
    pub fn parse_spec(text: &str) -> Result<Self> {
        let text = text.trim();
        let (kind, args) =
            text.split_once(':').ok_or_else(|| GeometryError::Parse(format!("missing ':' in '{text}'")))?;
        let nums = args
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| GeometryError::Parse(format!("bad number '{tok}'")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let arity = |n: usize| -> Result<()> {
            if nums.len() == n {
                Ok(())
            } else {
                Err(GeometryError::Parse(format!("'{kind}' takes {n} argument(s), got {} in '{args}'", nums.len())))
            }
        };
        match kind.trim() {
            "const" => {
                arity(1)?;
                Self::constant(nums[0])
            }
            "linear" => {
                arity(2)?;
                Ok(Self::linear(nums[0], nums[1]))
            }
            "cosh" => {
                arity(1)?;
                Self::cosh(nums[0])
            }
            "poly" => {
                arity(4)?;
                Ok(Self::polynomial([nums[0], nums[1], nums[2], nums[3]]))
            }
            other => Err(GeometryError::Parse(format!("unknown model '{other}'"))),
        }
    }

    /// `n`-th time derivative of the model at `eta`, no domain check.
    pub fn derivative(&self, n: usize, eta: f64) -> f64 {
        match self.model {
            Model::Constant(r0) => {
                if n == 0 {
                    r0
                } else {
                    0.0
                }
            }
            Model::Linear(a, b) => match n {
                0 => a + b * eta,
                1 => b,
                _ => 0.0,
            },
            Model::Cosh(a) => {
                if n.is_multiple_of(2) {
                    a * eta.cosh()
                } else {
                    a * eta.sinh()
                }
            }
            Model::Polynomial(c) => {
                let mut acc = 0.0;
                for (k, ck) in c.iter().enumerate().skip(n) {
                    let falling: f64 = ((k - n + 1)..=k).map(|v| v as f64).product();
                    acc += ck * falling * eta.powi((k - n) as i32);
                }
                acc
            }
        }
    }

    fn check(&self, eta: f64) -> Result<()> {
        if !eta.is_finite() || eta < self.domain.0 || eta > self.domain.1 {
            return Err(GeometryError::ScaleDomain(format!(
                "time {eta} outside [{}, {}]",
                self.domain.0, self.domain.1
            )));
        }
        let r = self.derivative(0, eta);
        if r.is_nan() || r <= 0.0 {
            return Err(GeometryError::ScaleDomain(format!("R({eta}) = {r} is not positive")));
        }
        Ok(())
    }

    /// `(R, R', R'')` at `eta`.
    pub fn evaluate(&self, eta: f64) -> Result<RadiusJet> {
        self.check(eta)?;
        Ok(RadiusJet { r: self.derivative(0, eta), dr: self.derivative(1, eta), ddr: self.derivative(2, eta) })
    }

    /// `R` at a possibly dual-valued time.
    pub fn radius<T: Scalar>(&self, eta: T) -> Result<T> {
        self.check(eta.value())?;
        Ok(eta.lift_nth(&|n, x| self.derivative(n, x), 0))
    }
}

impl FromStr for ScaleFactor {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_spec(s)
    }
}

impl fmt::Display for ScaleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::Constant(r0) => write!(f, "const:{r0}"),
            Model::Linear(a, b) => write!(f, "linear:{a},{b}"),
            Model::Cosh(a) => write!(f, "cosh:{a}"),
            Model::Polynomial(c) => write!(f, "poly:{},{},{},{}", c[0], c[1], c[2], c[3]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::Dual;
    use proptest::prelude::*;

    #[test]
    fn closed_form_examples() {
        let jet = ScaleFactor::constant(2.0).unwrap().evaluate(1.0).unwrap();
        assert_eq!((jet.r, jet.dr, jet.ddr), (2.0, 0.0, 0.0));
        let jet = ScaleFactor::linear(1.0, 3.0).evaluate(2.0).unwrap();
        assert_eq!((jet.r, jet.dr, jet.ddr), (7.0, 3.0, 0.0));
        let jet = ScaleFactor::cosh(1.0).unwrap().evaluate(0.0).unwrap();
        assert_eq!((jet.r, jet.dr, jet.ddr), (1.0, 0.0, 1.0));
        let jet = ScaleFactor::polynomial([1.0, 2.0, 3.0, 4.0]).evaluate(1.0).unwrap();
        assert_eq!((jet.r, jet.dr, jet.ddr), (10.0, 20.0, 30.0));
    }

    #[test]
    fn grammar() {
        assert_eq!(ScaleFactor::parse_spec("const:2.0").unwrap(), ScaleFactor::constant(2.0).unwrap());
        assert_eq!(ScaleFactor::parse_spec("linear:1,3").unwrap(), ScaleFactor::linear(1.0, 3.0));
        assert!(matches!(ScaleFactor::parse_spec("const:-1"), Err(GeometryError::ScaleDomain(_))));
        let err = ScaleFactor::parse_spec("poly:1,2,x,4").unwrap_err();
        assert!(err.to_string().contains("'x'"), "{err}");
        assert!(ScaleFactor::parse_spec("sinh:1").is_err());
        assert!(ScaleFactor::parse_spec("linear:1").is_err());
        assert!(ScaleFactor::parse_spec("cosh:0").is_err());
        for s in ["const:2", "linear:1,3", "cosh:1.5", "poly:1,0,0.5,0"] {
            let sf = ScaleFactor::parse_spec(s).unwrap();
            assert_eq!(ScaleFactor::parse_spec(&sf.to_string()).unwrap(), sf);
        }
    }

    #[test]
    fn evaluation_time_rejection() {
        let sf = ScaleFactor::linear(1.0, 1.0);
        assert!(sf.evaluate(-2.0).is_err());
        assert!(sf.evaluate(0.0).is_ok());
        let sf = ScaleFactor::constant(1.0).unwrap().with_domain(0.0, 1.0);
        assert!(sf.evaluate(1.5).is_err());
    }

    #[test]
    fn nested_dual_reproduces_jet() {
        let sf = ScaleFactor::polynomial([2.0, 0.3, -0.2, 0.05]);
        let eta = 0.6;
        let t = Dual::new(Dual::variable(eta), Dual::from_f64(1.0));
        let r = sf.radius(t).unwrap();
        let jet = sf.evaluate(eta).unwrap();
        assert_eq!(r.re.re, jet.r);
        assert!((r.eps.re - jet.dr).abs() < 1e-15);
        assert!((r.eps.eps - jet.ddr).abs() < 1e-15);
    }

    fn models() -> impl Strategy<Value = ScaleFactor> {
        prop_oneof![
            (0.1..5.0f64).prop_map(|r| ScaleFactor::constant(r).unwrap()),
            (2.0..5.0f64, -1.0..1.0f64).prop_map(|(a, b)| ScaleFactor::linear(a, b)),
            (0.1..5.0f64).prop_map(|a| ScaleFactor::cosh(a).unwrap()),
            (3.0..5.0f64, -1.0..1.0f64, -1.0..1.0f64, -0.5..0.5f64)
                .prop_map(|(a, b, c, d)| ScaleFactor::polynomial([a, b, c, d])),
        ]
    }

    proptest! {
        #[test]
        fn finite_differences_agree(sf in models(), eta in -1.0..1.0f64) {
            let h = 1e-5;
            let jet = sf.evaluate(eta).unwrap();
            let rp = sf.evaluate(eta + h).unwrap();
            let rm = sf.evaluate(eta - h).unwrap();
            let d1 = (rp.r - rm.r) / (2.0 * h);
            let d2 = (rp.dr - rm.dr) / (2.0 * h);
            let rel = |fd: f64, exact: f64| (fd - exact).abs() / exact.abs().max(1.0);
            prop_assert!(rel(d1, jet.dr) <= 1e-7);
            prop_assert!(rel(d2, jet.ddr) <= 1e-7);
            prop_assert!(jet.r > 0.0);
        }
    }
}
