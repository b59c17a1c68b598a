//! Verification settings: a TOML key-value file, then command-line overrides.
//!
//! ```toml
//! seed = 0
//! trials = 20            # optional, replaces every suite's default trial count
//! threads = 0            # 0 = rayon default
//! suites = ["ft_jackson", "bailey"]   # optional; omitted = all, [] = none
//!
//! [tolerance]
//! ft_jackson = 1e-9
//!
//! [sampling]
//! p_max = 0.5            # |p| is drawn from [0, p_max)
//! q_min = 0.4            # |q| is drawn from [q_min, q_max]
//! q_max = 0.9
//! q_arg_max = 3.14159    # arg q is drawn from [−q_arg_max, q_arg_max]
//! spectral_min = 0.5     # moduli of spectral and free parameters
//! spectral_max = 2.0
//! lambda_box = 1.0       # Re λ and Im λ are drawn from [−lambda_box, lambda_box]
//!
//! [caps]
//! domain_wall_n = 4
//! sixj_size = 2
//! biortho_n1 = 4
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use crate::UsageError;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Sampling {
    pub p_max: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub q_arg_max: f64,
    pub spectral_min: f64,
    pub spectral_max: f64,
    pub lambda_box: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Self {
            p_max: 0.5,
            q_min: 0.4,
            q_max: 0.9,
            q_arg_max: std::f64::consts::PI,
            spectral_min: 0.5,
            spectral_max: 2.0,
            lambda_box: 1.0,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest `n` of the domain-wall comparison (`n × n` lattice).
    pub domain_wall_n: usize,
    /// Largest `M` and `N` of the exhaustive 6j comparisons.
    pub sixj_size: usize,
    /// Largest `N` of the one-variable biorthogonality grids.
    pub biortho_n1: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            domain_wall_n: 4,
            sixj_size: 2,
            biortho_n1: 4,
        }
    }
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub trials: Option<usize>,
    pub threads: usize,
    pub suites: Option<Vec<String>>,
    pub tolerance: BTreeMap<String, f64>,
    pub sampling: Sampling,
    pub caps: Caps,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: None,
            threads: 0,
            suites: None,
            tolerance: BTreeMap::new(),
            sampling: Sampling::default(),
            caps: Caps::default(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, UsageError> {
        toml::from_str(text).map_err(|e| UsageError(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Parses an `ID=VALUE` tolerance override and records it.
    pub fn set_tolerance(&mut self, spec: &str) -> Result<(), UsageError> {
        let (id, value) = spec
            .split_once('=')
            .ok_or_else(|| UsageError(format!("tolerance override {spec:?} is not ID=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("tolerance {value:?} is not a number")))?;
        self.tolerance.insert(id.trim().to_string(), value);
        Ok(())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        let known = crate::suites::ids();
        for (id, tol) in &self.tolerance {
            if !known.contains(&id.as_str()) {
                return Err(UsageError(format!(
                    "tolerance given for unknown suite {id:?}"
                )));
            }
            if !(*tol > 0.0) || !tol.is_finite() {
                return Err(UsageError(format!(
                    "tolerance for {id} must be positive and finite"
                )));
            }
        }
        if let Some(list) = &self.suites {
            for id in list {
                if !known.contains(&id.as_str()) {
                    return Err(UsageError(format!("unknown suite {id:?}")));
                }
            }
        }
        if self.trials == Some(0) {
            return Err(UsageError("trials must be at least 1".into()));
        }
        let s = &self.sampling;
        let ok = s.p_max >= 0.0
            && s.p_max < 1.0
            && s.q_min > 0.0
            && s.q_min <= s.q_max
            && s.q_max.is_finite()
            && s.q_arg_max >= 0.0
            && s.spectral_min > 0.0
            && s.spectral_min <= s.spectral_max
            && s.spectral_max.is_finite()
            && s.lambda_box >= 0.0
            && s.lambda_box.is_finite();
        if !ok {
            return Err(UsageError("sampling ranges are invalid".into()));
        }
        let c = &self.caps;
        if !(1..=5).contains(&c.domain_wall_n) {
            return Err(UsageError("caps.domain_wall_n must lie in 1..=5".into()));
        }
        if !(1..=2).contains(&c.sixj_size) {
            return Err(UsageError(
                "caps.sixj_size must lie in 1..=2 (lattice oracle limit)".into(),
            ));
        }
        if !(1..=6).contains(&c.biortho_n1) {
            return Err(UsageError("caps.biortho_n1 must lie in 1..=6".into()));
        }
        Ok(())
    }

    /// The suites to run, in canonical order.
    pub fn selected(&self) -> Vec<&'static crate::suites::Suite> {
        match &self.suites {
            None => crate::suites::SUITES.iter().collect(),
            Some(list) => crate::suites::SUITES
                .iter()
                .filter(|s| list.iter().any(|id| id == s.id))
                .collect(),
        }
    }
}
