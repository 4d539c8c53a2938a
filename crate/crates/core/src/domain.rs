//! Planar domains with circular boundary: an outer disc minus finitely many
//! pairwise-disjoint closed subdiscs.
//!
//! The subharmonic defining function is
//! `psi(z) = max(|z - c0|/R0, max_j r_j/|z - z_j|) - 1`,
//! negative exactly on the domain. Membership is reported as a trichotomy
//! with an explicit margin band so floating-point boundary decisions stay
//! visible to the caller.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{Contour, Curve};
use crate::error::{Error, Result};

/// One boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Circle {
    /// Center, serialized as `[re, im]`.
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Circle { center, radius }
    }
}

/// A circular-boundary domain. Validated on construction; immutable after.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDomainSpec", into = "RawDomainSpec")]
pub struct DomainSpec {
    outer: Circle,
    holes: Vec<Circle>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDomainSpec {
    outer: Circle,
    #[serde(default)]
    holes: Vec<Circle>,
}

impl TryFrom<RawDomainSpec> for DomainSpec {
    type Error = Error;
    fn try_from(raw: RawDomainSpec) -> Result<Self> {
        DomainSpec::new(raw.outer, raw.holes)
    }
}

impl From<DomainSpec> for RawDomainSpec {
    fn from(d: DomainSpec) -> Self {
        RawDomainSpec {
            outer: d.outer,
            holes: d.holes,
        }
    }
}

/// Membership trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Inside,
    BoundaryBand,
    Outside,
}

impl DomainSpec {
    /// Validates the circle configuration: every closed hole strictly inside
    /// the open outer disc, closed holes pairwise disjoint.
    pub fn new(outer: Circle, holes: Vec<Circle>) -> Result<Self> {
        if !(outer.radius > 0.0 && outer.radius.is_finite()) {
            return Err(Error::BadRadius {
                which: "outer".into(),
                value: outer.radius,
            });
        }
        if !outer.center.re.is_finite() || !outer.center.im.is_finite() {
            return Err(Error::NonFiniteInput {
                context: "outer circle center",
            });
        }
        for (j, h) in holes.iter().enumerate() {
            if !(h.radius > 0.0 && h.radius.is_finite()) {
                return Err(Error::BadRadius {
                    which: format!("hole {j}"),
                    value: h.radius,
                });
            }
            if !h.center.re.is_finite() || !h.center.im.is_finite() {
                return Err(Error::NonFiniteInput {
                    context: "hole center",
                });
            }
            let reach = (h.center - outer.center).norm() + h.radius;
            if reach >= outer.radius {
                return Err(Error::HoleNotInsideOuter {
                    index: j,
                    reach,
                    outer_radius: outer.radius,
                });
            }
        }
        for i in 0..holes.len() {
            for j in i + 1..holes.len() {
                let dist = (holes[i].center - holes[j].center).norm();
                let radius_sum = holes[i].radius + holes[j].radius;
                if dist <= radius_sum {
                    return Err(Error::HolesNotDisjoint {
                        first: i,
                        second: j,
                        dist,
                        radius_sum,
                    });
                }
            }
        }
        Ok(DomainSpec { outer, holes })
    }

    /// The open unit disc.
    pub fn unit_disc() -> Self {
        DomainSpec {
            outer: Circle::new(Complex64::new(0.0, 0.0), 1.0),
            holes: Vec::new(),
        }
    }

    pub fn outer(&self) -> Circle {
        self.outer
    }

    pub fn holes(&self) -> &[Circle] {
        &self.holes
    }

    /// Parses and validates the JSON form
    /// `{"outer": {"center": [re, im], "radius": r}, "holes": [...]}`.
    pub fn from_json_str(json: &str) -> Result<Self> {
        let d: DomainSpec = serde_json::from_str(json)?;
        Ok(d)
    }

    pub fn from_json_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// The defining function `psi`: negative exactly on the domain,
    /// continuous and subharmonic away from hole centers.
    ///
    /// Errors at a hole center, where the formula has a pole.
    pub fn psi(&self, z: Complex64) -> Result<f64> {
        let mut value = (z - self.outer.center).norm() / self.outer.radius;
        for h in &self.holes {
            let dist = (z - h.center).norm();
            if dist == 0.0 {
                return Err(Error::PoleAtHoleCenter { z });
            }
            value = value.max(h.radius / dist);
        }
        Ok(value - 1.0)
    }

    /// Membership with an explicit margin band: `Inside` iff `psi < -margin`,
    /// `Outside` iff `psi > margin`.
    pub fn contains_point(&self, z: Complex64, margin: f64) -> Result<Membership> {
        let psi = self.psi(z)?;
        Ok(if psi < -margin {
            Membership::Inside
        } else if psi > margin {
            Membership::Outside
        } else {
            Membership::BoundaryBand
        })
    }

    /// Signed distance to the nearest boundary circle: positive inside.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        let mut d = self.outer.radius - (z - self.outer.center).norm();
        for h in &self.holes {
            d = d.min((z - h.center).norm() - h.radius);
        }
        d
    }

    /// The positively oriented boundary contour: outer circle
    /// counterclockwise, holes clockwise, `nodes_per_curve` equispaced
    /// parameter nodes each. Orientation is carried as a sign per curve;
    /// node derivative values are per unit parameter on `[0,1)`.
    pub fn boundary_contour(&self, nodes_per_curve: usize) -> Result<Contour> {
        if nodes_per_curve < 16 {
            return Err(Error::InvalidInput(format!(
                "nodes_per_curve must be >= 16, got {nodes_per_curve}"
            )));
        }
        let mut curves = Vec::with_capacity(1 + self.holes.len());
        curves.push(Curve::circle(self.outer, nodes_per_curve, 1.0));
        for h in &self.holes {
            curves.push(Curve::circle(*h, nodes_per_curve, -1.0));
        }
        Ok(Contour::new(curves, nodes_per_curve))
    }
}
