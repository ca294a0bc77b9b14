use crate::error::{Error, Result};

/// Which random-walk kernel a scalar component uses, and therefore which
/// constraint its values must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleType {
    /// Unconstrained: y = x + sZ.
    Linear,
    /// Positive: y = x·exp(sZ).
    Log,
    /// In (0,1): y = logit⁻¹(logit(x) + sZ).
    Logit,
}

impl ScaleType {
    fn admits(self, v: f64) -> bool {
        match self {
            ScaleType::Linear => v.is_finite(),
            ScaleType::Log => v.is_finite() && v > 0.0,
            ScaleType::Logit => v > 0.0 && v < 1.0,
        }
    }
}

/// A named vector of scalar parameters. Each component carries its own scale
/// type and current proposal step size.
#[derive(Debug, Clone)]
pub struct ParameterState {
    name: String,
    values: Vec<f64>,
    scales: Vec<ScaleType>,
    step_sizes: Vec<f64>,
}

impl ParameterState {
    pub fn new(
        name: impl Into<String>,
        values: Vec<f64>,
        scales: Vec<ScaleType>,
        step_sizes: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if values.is_empty() || values.len() != scales.len() || values.len() != step_sizes.len() {
            return Err(Error::structural(format!(
                "parameter '{name}': values/scales/step_sizes must have identical non-zero length"
            )));
        }
        for (i, (&v, &sc)) in values.iter().zip(&scales).enumerate() {
            if !sc.admits(v) {
                return Err(Error::structural(format!(
                    "parameter '{name}' component {i}: value {v} violates {sc:?} constraint"
                )));
            }
        }
        if step_sizes.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(Error::structural(format!(
                "parameter '{name}': every step size must be positive and finite"
            )));
        }
        Ok(ParameterState {
            name,
            values,
            scales,
            step_sizes,
        })
    }

    /// Single scalar component with a uniform shorthand.
    pub fn scalar(name: impl Into<String>, value: f64, scale: ScaleType, step: f64) -> Result<Self> {
        ParameterState::new(name, vec![value], vec![scale], vec![step])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// Raw write; chain moves may pass through states the model scores as
    /// zero-density, so no constraint check here — rejection handles support.
    pub fn set_value(&mut self, i: usize, v: f64) {
        self.values[i] = v;
    }

    pub fn scale(&self, i: usize) -> ScaleType {
        self.scales[i]
    }

    pub fn step_size(&self, i: usize) -> f64 {
        self.step_sizes[i]
    }

    pub fn set_step_size(&mut self, i: usize, s: f64) {
        assert!(s > 0.0 && s.is_finite(), "step size must be positive");
        self.step_sizes[i] = s;
    }

    /// Display name for one slot: bare parameter name when scalar, indexed
    /// otherwise. These names key `.tun` lines and trace CSV headers.
    pub fn component_name(&self, i: usize) -> String {
        if self.values.len() == 1 {
            self.name.clone()
        } else {
            format!("{}[{}]", self.name, i)
        }
    }
}

/// A full parameter configuration: the ordered collection of parameter
/// states a model is evaluated on.
#[derive(Debug, Clone)]
pub struct Config {
    params: Vec<ParameterState>,
}

impl Config {
    pub fn new(params: Vec<ParameterState>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for p in &params {
            if !seen.insert(p.name().to_string()) {
                return Err(Error::structural(format!(
                    "duplicate parameter name '{}'",
                    p.name()
                )));
            }
        }
        Ok(Config { params })
    }

    pub fn params(&self) -> &[ParameterState] {
        &self.params
    }

    pub fn param(&self, i: usize) -> &ParameterState {
        &self.params[i]
    }

    pub fn param_mut(&mut self, i: usize) -> &mut ParameterState {
        &mut self.params[i]
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name() == name)
    }

    pub fn by_name(&self, name: &str) -> Option<&ParameterState> {
        self.params.iter().find(|p| p.name() == name)
    }
}

/// Log posterior density evaluator. Implementations must be deterministic and
/// return −∞ (never an error, NaN, or +∞) outside the support.
pub trait TargetModel {
    /// Declared parameter layout: (name, component count) in configuration
    /// order.
    fn shape(&self) -> Vec<(String, usize)>;

    /// Log density of the full configuration; −∞ outside support.
    fn log_density(&self, config: &Config) -> f64;
}

/// Shape-checked evaluation. Guards the trait contract: a NaN or +∞ from an
/// implementation is a model bug, not a rejectable state.
pub fn log_density(model: &dyn TargetModel, config: &Config) -> Result<f64> {
    let shape = model.shape();
    if shape.len() != config.len() {
        return Err(Error::structural(format!(
            "model expects {} parameters, configuration has {}",
            shape.len(),
            config.len()
        )));
    }
    for ((name, len), param) in shape.iter().zip(config.params()) {
        if name != param.name() || *len != param.len() {
            return Err(Error::structural(format!(
                "model expects parameter '{name}' with {len} components, found '{}' with {}",
                param.name(),
                param.len()
            )));
        }
    }
    let v = model.log_density(config);
    if v.is_nan() || v == f64::INFINITY {
        return Err(Error::InvalidState(format!(
            "model returned non-real log density {v}"
        )));
    }
    Ok(v)
}

pub const LN_2PI: f64 = 1.8378770664093453;

/// log N(x; mean, sd²)
pub fn log_normal_pdf(x: f64, mean: f64, sd: f64) -> f64 {
    let z = (x - mean) / sd;
    -0.5 * LN_2PI - sd.ln() - 0.5 * z * z
}

/// log Gamma(x; shape, scale) — mean shape·scale; −∞ for x ≤ 0.
pub fn log_gamma_pdf(x: f64, shape: f64, scale: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    (shape - 1.0) * x.ln() - x / scale - shape * scale.ln() - libm::lgamma(shape)
}

/// Scalar target families used by the validation suite and the slope
/// measurements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetFamily {
    /// N(0, 1)
    Normal,
    /// Exponential(1)
    Exponential,
    /// Student t with 2 degrees of freedom
    T2,
    /// Beta(2, 2)
    Beta22,
}

impl TargetFamily {
    pub fn log_density_at(self, x: f64) -> f64 {
        match self {
            TargetFamily::Normal => -0.5 * LN_2PI - 0.5 * x * x,
            TargetFamily::Exponential => {
                if x > 0.0 {
                    -x
                } else {
                    f64::NEG_INFINITY
                }
            }
            // t with 2 df: (1 + x²/2)^(−3/2) / (2·√2)
            TargetFamily::T2 => -(2.0 * std::f64::consts::SQRT_2).ln()
                - 1.5 * (1.0 + x * x / 2.0).ln(),
            // Beta(2,2): 6·x·(1−x)
            TargetFamily::Beta22 => {
                if x > 0.0 && x < 1.0 {
                    6.0f64.ln() + x.ln() + (1.0 - x).ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// A point of positive density to start chains from.
    pub fn typical_start(self) -> f64 {
        match self {
            TargetFamily::Normal | TargetFamily::T2 => 0.0,
            TargetFamily::Exponential => 1.0,
            TargetFamily::Beta22 => 0.5,
        }
    }

    pub fn natural_scale(self) -> ScaleType {
        match self {
            TargetFamily::Normal | TargetFamily::T2 => ScaleType::Linear,
            TargetFamily::Exponential => ScaleType::Log,
            TargetFamily::Beta22 => ScaleType::Logit,
        }
    }
}

/// Single scalar parameter named "x" with the given kernel scale.
pub struct ScalarTarget {
    pub family: TargetFamily,
    pub scale: ScaleType,
}

impl ScalarTarget {
    pub fn new(family: TargetFamily, scale: ScaleType) -> Self {
        ScalarTarget { family, scale }
    }

    pub fn initial_config(&self, step: f64) -> Config {
        let st = ParameterState::scalar("x", self.family.typical_start(), self.scale, step)
            .expect("valid scalar state");
        Config::new(vec![st]).expect("valid config")
    }
}

impl TargetModel for ScalarTarget {
    fn shape(&self) -> Vec<(String, usize)> {
        vec![("x".to_string(), 1)]
    }

    fn log_density(&self, config: &Config) -> f64 {
        self.family.log_density_at(config.param(0).value(0))
    }
}

/// Dirichlet(α) on the K-simplex, stored as all K coordinates (which must sum
/// to one). Sampled with the sum-to-one rescaling move.
pub struct DirichletTarget {
    pub alpha: Vec<f64>,
}

impl DirichletTarget {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.len() < 2 || alpha.iter().any(|&a| !(a > 0.0)) {
            return Err(Error::structural(
                "Dirichlet needs K >= 2 strictly positive concentrations",
            ));
        }
        Ok(DirichletTarget { alpha })
    }

    pub fn initial_config(&self, step: f64) -> Config {
        let k = self.alpha.len();
        let st = ParameterState::new(
            "p",
            vec![1.0 / k as f64; k],
            vec![ScaleType::Logit; k],
            vec![step; k],
        )
        .expect("valid simplex state");
        Config::new(vec![st]).expect("valid config")
    }
}

impl TargetModel for DirichletTarget {
    fn shape(&self) -> Vec<(String, usize)> {
        vec![("p".to_string(), self.alpha.len())]
    }

    fn log_density(&self, config: &Config) -> f64 {
        let p = config.param(0).values();
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-9 || p.iter().any(|&v| v <= 0.0 || v >= 1.0) {
            return f64::NEG_INFINITY;
        }
        self.alpha
            .iter()
            .zip(p)
            .map(|(&a, &v)| (a - 1.0) * v.ln())
            .sum()
    }
}

/// Two strongly coupled location parameters: mu is weakly identified, theta
/// sits tightly around mu. Posterior is bivariate normal with known moments —
/// the classic case where a common-shift block move fixes mixing.
pub struct CoupledPairTarget {
    /// sd of mu's marginal prior
    pub tau: f64,
    /// sd of theta around mu
    pub delta: f64,
}

impl CoupledPairTarget {
    pub fn new(tau: f64, delta: f64) -> Self {
        CoupledPairTarget { tau, delta }
    }

    /// (Var(theta), Cov(theta, mu)) under the joint Gaussian.
    pub fn theta_moments(&self) -> (f64, f64) {
        (
            self.tau * self.tau + self.delta * self.delta,
            self.tau * self.tau,
        )
    }

    pub fn initial_config(&self, step: f64) -> Config {
        let theta = ParameterState::scalar("theta", 0.0, ScaleType::Linear, step).unwrap();
        let mu = ParameterState::scalar("mu", 0.0, ScaleType::Linear, step).unwrap();
        Config::new(vec![theta, mu]).unwrap()
    }
}

impl TargetModel for CoupledPairTarget {
    fn shape(&self) -> Vec<(String, usize)> {
        vec![("theta".to_string(), 1), ("mu".to_string(), 1)]
    }

    fn log_density(&self, config: &Config) -> f64 {
        let theta = config.param(0).value(0);
        let mu = config.param(1).value(0);
        log_normal_pdf(mu, 0.0, self.tau) + log_normal_pdf(theta, mu, self.delta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_state_rejects_mismatched_lengths() {
        let r = ParameterState::new(
            "x",
            vec![1.0, 2.0],
            vec![ScaleType::Linear],
            vec![0.1, 0.2],
        );
        assert!(matches!(r, Err(Error::Structural(_))));
    }

    #[test]
    fn parameter_state_rejects_constraint_violations() {
        assert!(ParameterState::scalar("s", -1.0, ScaleType::Log, 0.1).is_err());
        assert!(ParameterState::scalar("p", 1.5, ScaleType::Logit, 0.1).is_err());
        assert!(ParameterState::scalar("x", 0.5, ScaleType::Logit, 0.0).is_err());
    }

    #[test]
    fn standard_normal_density_values() {
        let m = ScalarTarget::new(TargetFamily::Normal, ScaleType::Linear);
        let mut cfg = m.initial_config(1.0);
        let half_ln_2pi = 0.9189385332046727;
        assert!((m.log_density(&cfg) + half_ln_2pi).abs() < 1e-15);
        cfg.param_mut(0).set_value(0, 1.0);
        assert!((m.log_density(&cfg) + half_ln_2pi + 0.5).abs() < 1e-15);
    }

    #[test]
    fn checked_eval_catches_shape_mismatch() {
        let m = ScalarTarget::new(TargetFamily::Normal, ScaleType::Linear);
        let cfg = Config::new(vec![
            ParameterState::scalar("y", 0.0, ScaleType::Linear, 1.0).unwrap()
        ])
        .unwrap();
        assert!(matches!(log_density(&m, &cfg), Err(Error::Structural(_))));
    }

    #[test]
    fn gamma_pdf_outside_support_is_neg_infinity() {
        assert_eq!(log_gamma_pdf(-0.5, 2.0, 1.0), f64::NEG_INFINITY);
        assert_eq!(log_gamma_pdf(0.0, 2.0, 1.0), f64::NEG_INFINITY);
    }
}
