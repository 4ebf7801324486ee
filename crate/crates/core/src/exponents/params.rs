use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One instance of the damped semilinear wave problem
///
/// ```text
/// v_tt - Δv + μ/(1+t) v_t + ν/(1+t)² v = |v|^p,   v(0) = 0,   v_t(0) = ε g,
/// g(r) = M (1+r)^-(k̄+1)
/// ```
///
/// Fields are validated once in [`ModelParams::new`] and are read-only afterwards.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ModelParams {
    n: u32,
    mu: f64,
    nu: f64,
    p: f64,
    kbar: f64,
    amplitude: f64,
    eps: f64,
}

#[derive(Deserialize)]
struct RawParams {
    n: u32,
    mu: f64,
    nu: f64,
    p: f64,
    kbar: f64,
    amplitude: f64,
    eps: f64,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = Error;

    fn try_from(r: RawParams) -> Result<Self> {
        ModelParams::new(r.n, r.mu, r.nu, r.p, r.kbar, r.amplitude, r.eps)
    }
}

impl ModelParams {
    pub fn new(n: u32, mu: f64, nu: f64, p: f64, kbar: f64, amplitude: f64, eps: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::field("n", format!("space dimension must be >= 2, got {n}")));
        }
        if !mu.is_finite() {
            return Err(Error::field("mu", "must be finite"));
        }
        if !nu.is_finite() {
            return Err(Error::field("nu", "must be finite"));
        }
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::field("p", format!("nonlinearity power must be > 1, got {p}")));
        }
        if !(kbar.is_finite() && kbar > -1.0) {
            return Err(Error::field("kbar", format!("decay parameter must be > -1, got {kbar}")));
        }
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::field("amplitude", format!("must be > 0, got {amplitude}")));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::field("eps", format!("data size must be > 0, got {eps}")));
        }
        Ok(Self { n, mu, nu, p, kbar, amplitude, eps })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn kbar(&self) -> f64 {
        self.kbar
    }

    /// Data amplitude `M`.
    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `m = floor(n/2)`.
    pub fn m(&self) -> u32 {
        self.n / 2
    }

    /// The shift `k̄ + μ/2` entering the modified Fujita exponent.
    pub fn fujita_shift(&self) -> f64 {
        self.kbar + 0.5 * self.mu
    }

    /// `(μ/2)(μ/2 - 1)`, the mass value that makes the Liouville potential vanish.
    pub fn critical_mass(&self) -> f64 {
        let h = 0.5 * self.mu;
        h * (h - 1.0)
    }

    /// Coefficient of `u/(1+t)²` after the Liouville transform.
    pub fn potential_coefficient(&self) -> f64 {
        self.critical_mass() - self.nu
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Self::new(self.n, self.mu, self.nu, self.p, self.kbar, self.amplitude, eps)
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Result<Self> {
        Self::new(self.n, self.mu, self.nu, self.p, self.kbar, amplitude, self.eps)
    }

    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(self.n, self.mu, self.nu, p, self.kbar, self.amplitude, self.eps)
    }

    pub fn with_kbar(&self, kbar: f64) -> Result<Self> {
        Self::new(self.n, self.mu, self.nu, self.p, kbar, self.amplitude, self.eps)
    }

    pub fn with_damping(&self, mu: f64, nu: f64) -> Result<Self> {
        Self::new(self.n, mu, nu, self.p, self.kbar, self.amplitude, self.eps)
    }
}
