//! Cluster-process parameters, windows and realized point patterns.

use std::io::Write;

use crate::csvfmt::g9;
use crate::error::{Error, Result};

/// Matérn cluster process: PPP parents with Poisson daughters uniform in a disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatClusterSpec {
    /// λ_M°, parents per unit area.
    pub parent_density: f64,
    /// c_M.
    pub mean_points: f64,
    /// R_M.
    pub radius: f64,
}

impl MatClusterSpec {
    pub fn new(parent_density: f64, mean_points: f64, radius: f64) -> Result<Self> {
        let s = Self {
            parent_density,
            mean_points,
            radius,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.parent_density > 0.0 && self.mean_points >= 0.0 && self.radius > 0.0)
            || !(self.parent_density.is_finite()
                && self.mean_points.is_finite()
                && self.radius.is_finite())
        {
            return Err(Error::Config(format!(
                "invalid Matérn cluster parameters {self:?}"
            )));
        }
        Ok(())
    }

    /// λ_M = λ_M° c_M.
    pub fn density(&self) -> f64 {
        self.parent_density * self.mean_points
    }
}

/// Second-order cluster process.
///
/// Parents spawn first-order points at a reverse-Gaussian distance, each of
/// which spawns daughters uniform in a disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SocpSpec {
    /// λ_S°.
    pub parent_density: f64,
    /// c_S′.
    pub first_order_mean: f64,
    /// R_S′.
    pub first_order_radius: f64,
    pub sigma: f64,
    /// c_S.
    pub second_order_mean: f64,
    /// R_S.
    pub second_order_radius: f64,
}

impl SocpSpec {
    pub fn new(
        parent_density: f64,
        first_order_mean: f64,
        first_order_radius: f64,
        sigma: f64,
        second_order_mean: f64,
        second_order_radius: f64,
    ) -> Result<Self> {
        let s = Self {
            parent_density,
            first_order_mean,
            first_order_radius,
            sigma,
            second_order_mean,
            second_order_radius,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let v = [
            self.parent_density,
            self.first_order_mean,
            self.first_order_radius,
            self.sigma,
            self.second_order_mean,
            self.second_order_radius,
        ];
        let radii_ok = self.parent_density > 0.0
            && self.first_order_radius > 0.0
            && self.sigma > 0.0
            && self.second_order_radius > 0.0;
        if !radii_ok || v.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Config(format!(
                "invalid second-order cluster parameters {self:?}"
            )));
        }
        Ok(())
    }

    /// λ_S = λ_S° c_S′ c_S.
    pub fn density(&self) -> f64 {
        self.parent_density * self.first_order_mean * self.second_order_mean
    }

    /// Normalizing area ∫(1 − e^{−|y|²/2σ²}) dy over the disk of radius R_S′.
    pub fn first_order_norm(&self) -> f64 {
        let r = self.first_order_radius;
        let s2 = self.sigma * self.sigma;
        std::f64::consts::PI * r * r
            - 2.0 * std::f64::consts::PI * s2 * (-(-r * r / (2.0 * s2)).exp_m1())
    }
}

/// Disk-shaped observation window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub center: [f64; 2],
    pub radius: f64,
}

impl Window {
    pub fn new(center: [f64; 2], radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::Config("window radius must be positive".into()));
        }
        Ok(Self { center, radius })
    }

    pub fn centered(radius: f64) -> Result<Self> {
        Self::new([0.0, 0.0], radius)
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        dx * dx + dy * dy <= self.radius * self.radius
    }

    pub fn dilated(&self, by: f64) -> Self {
        Self {
            center: self.center,
            radius: self.radius + by,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    Mbs,
    Sbs,
}

impl Tier {
    pub fn name(&self) -> &'static str {
        match self {
            Tier::Mbs => "MBS",
            Tier::Sbs => "SBS",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Site {
    pub pos: [f64; 2],
    pub tier: Tier,
    pub parent: Option<u32>,
    pub first_order: Option<u32>,
}

/// Realized points with tier and cluster tags.
///
/// `parents` and `first_order` hold the (possibly unretained) cluster
/// centres that the tags index into.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PointPattern {
    pub sites: Vec<Site>,
    pub parents: Vec<[f64; 2]>,
    pub first_order: Vec<[f64; 2]>,
}

impl PointPattern {
    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.sites.iter().map(|s| s.pos)
    }

    /// Appends `other`, shifting its cluster tags past ours.
    pub fn extend(&mut self, other: PointPattern) {
        let po = self.parents.len() as u32;
        let fo = self.first_order.len() as u32;
        self.sites.extend(other.sites.into_iter().map(|mut s| {
            s.parent = s.parent.map(|p| p + po);
            s.first_order = s.first_order.map(|f| f + fo);
            s
        }));
        self.parents.extend(other.parents);
        self.first_order.extend(other.first_order);
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,y,tier,parent_id,first_order_id")?;
        for s in &self.sites {
            let p = s.parent.map(|v| v.to_string()).unwrap_or_default();
            let f = s.first_order.map(|v| v.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{}",
                g9(s.pos[0]),
                g9(s.pos[1]),
                s.tier.name(),
                p,
                f
            )?;
        }
        Ok(())
    }
}
