//! Radial PGFL profiles, stored as ω = 1 − v.

/// A radially symmetric PGFL argument v(x) = 1 − ω(|x|) with 0 ≤ ω ≤ 1.
pub trait Profile: Sync {
    fn omega(&self, rho: f64) -> f64;

    /// Below this radius ω vanishes.
    fn exclusion(&self) -> f64 {
        0.0
    }

    /// Radius where ω changes from ≈1 to its tail; used to place breakpoints.
    fn scale(&self) -> f64;
}

/// ω(ρ) = 1 − (1 + g ρ^{−α})^{−n} for ρ > r₀ and 0 inside the exclusion disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirProfile {
    pub n: u32,
    pub gain: f64,
    pub alpha: f64,
    pub exclusion: f64,
}

impl SirProfile {
    pub fn new(n: u32, gain: f64, alpha: f64, exclusion: f64) -> Self {
        Self {
            n,
            gain,
            alpha,
            exclusion,
        }
    }
}

impl Profile for SirProfile {
    fn omega(&self, rho: f64) -> f64 {
        if rho < self.exclusion || self.gain == 0.0 {
            return 0.0;
        }
        let x = self.gain * rho.powf(-self.alpha);
        -(-(self.n as f64) * x.ln_1p()).exp_m1()
    }

    fn exclusion(&self) -> f64 {
        self.exclusion
    }

    fn scale(&self) -> f64 {
        self.gain.powf(1.0 / self.alpha).max(self.exclusion)
    }
}

/// v ≡ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitProfile;

impl Profile for UnitProfile {
    fn omega(&self, _: f64) -> f64 {
        0.0
    }

    fn scale(&self) -> f64 {
        1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sir_profile_shape() {
        let p = SirProfile::new(2, 16.0, 4.0, 1.0);
        assert_eq!(p.omega(0.5), 0.0);
        assert!((p.omega(2.0) - 0.75).abs() < 1e-15);
        assert!(p.omega(1e6) < 1e-20);
        let q = SirProfile::new(1, 1.0, 4.0, 0.0);
        assert_eq!(q.omega(0.0), 1.0);
        assert_eq!(q.scale(), 1.0);
    }
}
